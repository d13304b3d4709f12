//! `--monoid` arguments.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use prefmon::text::parse_relation;
use prefmon::{Canonical, ClosedMonoid, ElementSet, GroundSet, Relation};

use crate::CliError;

/// A closed monoid named on the command line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MonoidSpec {
    Reflexive,
    Surjective,
    Total,
    BetaBoth,
    Universal,
    Dictator(String),
    Filter(Vec<String>),
    Atom(String),
    /// Reflexive relations plus supersets of the idempotent relation in the file.
    Idempotent(PathBuf),
    /// Closure of the relations in the given files.
    Generators(Vec<PathBuf>),
}

pub const SPEC_HELP: &str = "pareto | reflexive | beta | surjective | dual-beta | total | beta-both | universal | \
dictator=Y | filter=Y1,Y2,... | atom=Y | idempotent=FILE | gens=FILE[,FILE...]";

impl FromStr for MonoidSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let list = |v: &str| -> Result<Vec<String>, String> {
            let items: Vec<String> = v.split(',').map(str::trim).map(String::from).collect();
            if items.iter().any(String::is_empty) {
                Err(format!("empty item in `{s}`"))
            } else {
                Ok(items)
            }
        };
        match s.split_once('=') {
            None => match s {
                "pareto" | "reflexive" => Ok(MonoidSpec::Reflexive),
                "beta" | "surjective" => Ok(MonoidSpec::Surjective),
                "dual-beta" | "total" => Ok(MonoidSpec::Total),
                "beta-both" => Ok(MonoidSpec::BetaBoth),
                "universal" => Ok(MonoidSpec::Universal),
                _ => Err(format!("unknown monoid `{s}`; expected {SPEC_HELP}")),
            },
            Some((key, value)) if !value.is_empty() => match key {
                "dictator" => Ok(MonoidSpec::Dictator(value.into())),
                "filter" => Ok(MonoidSpec::Filter(list(value)?)),
                "atom" => Ok(MonoidSpec::Atom(value.into())),
                "idempotent" => Ok(MonoidSpec::Idempotent(value.into())),
                "gens" => Ok(MonoidSpec::Generators(list(value)?.into_iter().map(PathBuf::from).collect())),
                _ => Err(format!("unknown monoid `{key}=`; expected {SPEC_HELP}")),
            },
            Some(_) => Err(format!("missing value in `{s}`")),
        }
    }
}

impl fmt::Display for MonoidSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let paths = |ps: &[PathBuf]| ps.iter().map(|p| p.display().to_string()).collect::<Vec<_>>().join(",");
        match self {
            MonoidSpec::Reflexive => f.write_str("pareto"),
            MonoidSpec::Surjective => f.write_str("beta"),
            MonoidSpec::Total => f.write_str("dual-beta"),
            MonoidSpec::BetaBoth => f.write_str("beta-both"),
            MonoidSpec::Universal => f.write_str("universal"),
            MonoidSpec::Dictator(y) => write!(f, "dictator={y}"),
            MonoidSpec::Filter(ys) => write!(f, "filter={}", ys.join(",")),
            MonoidSpec::Atom(y) => write!(f, "atom={y}"),
            MonoidSpec::Idempotent(p) => write!(f, "idempotent={}", p.display()),
            MonoidSpec::Generators(ps) => write!(f, "gens={}", paths(ps)),
        }
    }
}

fn read_relation(path: &PathBuf, states: &GroundSet) -> Result<Relation, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_relation(&text, states).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

impl MonoidSpec {
    pub fn resolve(&self, states: &GroundSet) -> Result<ClosedMonoid, CliError> {
        let state = |label: &str| states.index_of(label).map_err(CliError::from);
        let kind = match self {
            MonoidSpec::Reflexive => Canonical::Reflexive,
            MonoidSpec::Surjective => Canonical::Surjective,
            MonoidSpec::Total => Canonical::Total,
            MonoidSpec::BetaBoth => Canonical::BetaBoth,
            MonoidSpec::Universal => Canonical::Universal,
            MonoidSpec::Dictator(y) => Canonical::Dictator(state(y)?),
            MonoidSpec::Atom(y) => Canonical::Atom(state(y)?),
            MonoidSpec::Filter(ys) => {
                let base = ElementSet::from_labels(states, ys)?;
                Canonical::Filter(base)
            }
            MonoidSpec::Idempotent(path) => Canonical::Idempotent(read_relation(path, states)?),
            MonoidSpec::Generators(paths) => {
                let gens = paths
                    .iter()
                    .map(|p| read_relation(p, states))
                    .collect::<Result<Vec<_>, _>>()?;
                return Ok(ClosedMonoid::closure(states, &gens)?);
            }
        };
        Ok(ClosedMonoid::canonical(states, &kind)?)
    }
}
