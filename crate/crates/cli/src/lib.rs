//! The `prefmon` command line.
//!
//! Exit codes: 0 when everything passes, 1 when a verdict or assertion fails,
//! 2 on invalid input.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use prefmon::lattice::DEFAULT_MONOID_CAP;
use prefmon::text::{parse_dmp, parse_morphism, ParseError};
use prefmon::{
    enumerate_generated, preference_census, ClosedMonoid, Dmp, GroundSet, MonoidLattice, Preference, Relation,
};

pub mod anomalies;
pub mod fixtures;
pub mod spec;

pub use spec::MonoidSpec;

#[derive(Debug)]
pub enum CliError {
    /// Bad files, labels or arguments.
    Input(String),
}

impl CliError {
    fn io(path: &Path, e: std::io::Error) -> Self {
        CliError::Input(format!("{}: {e}", path.display()))
    }

    fn parse(path: &Path, e: ParseError) -> Self {
        CliError::Input(format!("{}: {e}", path.display()))
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(m) => f.write_str(m),
        }
    }
}

impl From<prefmon::Error> for CliError {
    fn from(e: prefmon::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

/// Text to print and whether every verdict passed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub text: String,
    pub passed: bool,
}

impl Report {
    fn ok(text: String) -> Self {
        Report { text, passed: true }
    }

    pub fn exit_code(&self) -> u8 {
        if self.passed {
            0
        } else {
            1
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "prefmon", version, about = "Derived preferences for decision problems with ordered outcomes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the preference a closed monoid derives on a problem.
    Derive {
        #[arg(long)]
        dmp: PathBuf,
        #[arg(long, help = spec::SPEC_HELP)]
        monoid: MonoidSpec,
        /// Also print the equivalence classes.
        #[arg(long)]
        quotient: bool,
    },
    /// Run the built-in anomaly scenarios.
    Anomalies,
    /// Enumerate closed monoids and their inclusion lattice.
    Lattice {
        #[arg(long, default_value_t = 2)]
        states: usize,
        /// Add the preference census of this problem (its states are used).
        #[arg(long)]
        dmp: Option<PathBuf>,
        /// Write the Hasse diagram as DOT.
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Close subsets of all relations instead of exhaustive search.
        #[arg(long)]
        generated: bool,
        #[arg(long, default_value_t = 1, requires = "generated")]
        max_gens: usize,
        #[arg(long, default_value_t = DEFAULT_MONOID_CAP, requires = "generated")]
        cap: usize,
    },
    /// Check the preference axioms for a problem and monoid.
    Check {
        #[arg(long)]
        dmp: PathBuf,
        #[arg(long, help = spec::SPEC_HELP)]
        monoid: MonoidSpec,
        /// Morphism file; adds the inclusion check along the morphism.
        #[arg(long)]
        morphism: Option<PathBuf>,
    },
    /// Parse and validate a problem file.
    Validate {
        #[arg(long)]
        dmp: PathBuf,
    },
}

pub fn run(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Derive { dmp, monoid, quotient } => derive(dmp, monoid, *quotient),
        Command::Anomalies => Ok(anomalies_report()),
        Command::Lattice {
            states,
            dmp,
            dot,
            generated,
            max_gens,
            cap,
        } => lattice(*states, dmp.as_deref(), dot.as_deref(), generated.then_some((*max_gens, *cap))),
        Command::Check { dmp, monoid, morphism } => check(dmp, monoid, morphism.as_deref()),
        Command::Validate { dmp } => validate(dmp),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

pub fn load_dmp(path: &Path) -> Result<Dmp, CliError> {
    parse_dmp(&read(path)?).map_err(|e| CliError::parse(path, e))
}

fn pair_list(p: &Relation, names: &GroundSet) -> String {
    let pairs: Vec<String> = p
        .pairs()
        .map(|(a, b)| format!("({},{})", names.label(a), names.label(b)))
        .collect();
    pairs.join(" ")
}

fn name_list(names: &GroundSet, xs: &[usize]) -> String {
    if xs.is_empty() {
        return "none".into();
    }
    let v: Vec<&str> = xs.iter().map(|&x| names.label(x)).collect();
    v.join(", ")
}

/// Rows are `x₁`, columns `x₂`; a 1 means `x₂` is at least as good as `x₁`.
fn matrix(p: &Preference) -> String {
    let g = p.ground();
    let width = g.labels().iter().map(String::len).max().unwrap_or(1);
    let mut out = format!("{:width$}", "");
    for l in g.labels() {
        let _ = write!(out, " {l:>width$}");
    }
    out.push('\n');
    for i in 0..g.len() {
        let _ = write!(out, "{:width$}", g.label(i));
        for j in 0..g.len() {
            let _ = write!(out, " {:>width$}", u8::from(p.prefers(i, j)));
        }
        out.push('\n');
    }
    out
}

fn suitability_line(dmp: &Dmp, p: &Preference) -> Result<(String, bool), CliError> {
    let s = dmp.is_suitable(p)?;
    let x = dmp.strategies();
    Ok(match s.witness {
        None => ("suitable: yes".into(), true),
        Some((a, b)) => (
            format!(
                "suitable: no ({} strictly dominates {} but {} is ranked at least as high)",
                x.label(a),
                x.label(b),
                x.label(b)
            ),
            false,
        ),
    })
}

fn monoid_line(monoid: &ClosedMonoid, spec: &MonoidSpec) -> String {
    format!("monoid: {spec} with minimal members {}", monoid.signature())
}

fn derive(path: &Path, spec: &MonoidSpec, quotient: bool) -> Result<Report, CliError> {
    let dmp = load_dmp(path)?;
    let monoid = spec.resolve(dmp.states())?;
    let p = dmp.derive(&monoid)?;
    let x = dmp.strategies();
    let mut out = String::new();
    let _ = writeln!(out, "{}", monoid_line(&monoid, spec));
    let _ = writeln!(out, "preference (row x1, column x2: 1 when x2 is at least as good as x1):");
    out.push_str(&matrix(&p));
    let _ = writeln!(out, "pairs: {}", pair_list(p.relation(), x));
    let _ = writeln!(out, "maximal: {}", name_list(x, &p.maximal()));
    let _ = writeln!(out, "greatest: {}", name_list(x, &p.greatest()));
    if quotient {
        let classes: Vec<String> = p
            .classes()
            .iter()
            .map(|c| format!("{{{}}}", name_list(x, c)))
            .collect();
        let _ = writeln!(out, "classes: {}", classes.join(" "));
    }
    let (line, _) = suitability_line(&dmp, &p)?;
    let _ = writeln!(out, "{line}");
    Ok(Report::ok(out))
}

pub fn anomalies_report() -> Report {
    let scenarios = anomalies::run_all();
    Report {
        text: anomalies::render(&scenarios),
        passed: scenarios.iter().all(anomalies::Scenario::passed),
    }
}

fn lattice(
    states: usize,
    dmp_path: Option<&Path>,
    dot: Option<&Path>,
    generated: Option<(usize, usize)>,
) -> Result<Report, CliError> {
    let dmp = dmp_path.map(load_dmp).transpose()?;
    let ground = match &dmp {
        Some(d) if d.states().len() != states => {
            return Err(CliError::Input(format!(
                "--states {states} but the problem has {} states",
                d.states().len()
            )))
        }
        Some(d) => d.states().clone(),
        None => GroundSet::numbered("y", states)?,
    };
    let lattice = match generated {
        None => MonoidLattice::enumerate_exhaustive(&ground).map_err(|e| {
            CliError::Input(format!("{e} (pass --generated [--max-gens K])"))
        })?,
        Some((max_gens, cap)) => {
            let pool: Vec<Relation> = Relation::all(&ground)?.collect();
            let found = enumerate_generated(&ground, &pool, max_gens, cap)?;
            MonoidLattice::from_elements(&ground, found)?
        }
    };

    let mut out = String::new();
    let _ = writeln!(out, "states: {}", ground.labels().join(" "));
    let _ = writeln!(
        out,
        "mode: {}",
        match generated {
            None => "exhaustive".to_string(),
            Some((k, _)) => format!("generated (at most {k} generators)"),
        }
    );
    let _ = writeln!(out, "closed monoids: {}", lattice.len());
    let _ = writeln!(out, "hasse edges: {}", lattice.hasse_edges().len());
    let named = |i: Option<usize>| i.map_or("none".to_string(), |i| lattice.name(i));
    let _ = writeln!(out, "least: {}", named(lattice.least()));
    let _ = writeln!(out, "greatest: {}", named(lattice.greatest()));
    let sorted_names = |xs: &[usize]| {
        let mut v: Vec<String> = xs.iter().map(|&i| lattice.name(i)).collect();
        v.sort();
        v.join(", ")
    };
    let _ = writeln!(out, "atoms: {}", sorted_names(lattice.atoms()));
    let _ = writeln!(out, "dual atoms: {}", sorted_names(lattice.dual_atoms()));
    let _ = writeln!(out, "elements:");
    for i in 0..lattice.len() {
        let _ = writeln!(out, "  {i:>3}  {}", lattice.name(i));
    }

    if let Some(d) = &dmp {
        let census = preference_census(d, &lattice)?;
        if let Some((i, j)) = census.monotonicity_violation(&lattice) {
            return Err(CliError::Input(format!("census not monotone between {i} and {j}")));
        }
        let _ = writeln!(out, "census: {} distinct preferences", census.preferences.len());
        let _ = writeln!(out, "  {:>3}  {:<40}  monoids", "id", "pairs");
        for (id, p) in census.preferences.iter().enumerate() {
            let ids: Vec<String> = census.monoids_of(id).iter().map(ToString::to_string).collect();
            let _ = writeln!(
                out,
                "  {id:>3}  {:<40}  {}",
                pair_list(p.relation(), d.strategies()),
                ids.join(",")
            );
        }
        let _ = writeln!(out, "records:");
        out.push_str(&census.records());
    }

    if let Some(path) = dot {
        std::fs::write(path, lattice.to_dot()).map_err(|e| CliError::io(path, e))?;
        let _ = writeln!(out, "wrote {}", path.display());
    }
    Ok(Report::ok(out))
}

fn check(path: &Path, spec: &MonoidSpec, morphism: Option<&Path>) -> Result<Report, CliError> {
    let dmp = load_dmp(path)?;
    let monoid = spec.resolve(dmp.states())?;
    let p = dmp.derive(&monoid)?;
    let x = dmp.strategies();
    let mut out = String::new();
    let mut passed = true;
    let mut verdict = |out: &mut String, ok: bool, line: String| {
        passed &= ok;
        let _ = writeln!(out, "[{}] {line}", if ok { "PASS" } else { "FAIL" });
    };
    let _ = writeln!(out, "{}", monoid_line(&monoid, spec));
    verdict(&mut out, p.relation().is_preorder(), "preference is a preorder".into());
    verdict(
        &mut out,
        dmp.pareto().is_subset(&p)?,
        "preference contains Pareto domination".into(),
    );
    if let Some(mpath) = morphism {
        let m = parse_morphism(&read(mpath)?, &dmp).map_err(|e| CliError::parse(mpath, e))?;
        match m.check_functoriality(&monoid)? {
            None => verdict(&mut out, true, "preference grows along the morphism".into()),
            Some((a, b)) => verdict(
                &mut out,
                false,
                format!(
                    "preference grows along the morphism: ({},{}) is lost",
                    x.label(a),
                    x.label(b)
                ),
            ),
        }
    }
    let (line, ok) = suitability_line(&dmp, &p)?;
    verdict(&mut out, ok, line);
    Ok(Report { text: out, passed })
}

fn validate(path: &Path) -> Result<Report, CliError> {
    let dmp = load_dmp(path)?;
    let text = format!(
        "valid: {} strategies, {} states, {} outcomes ({} strict comparabilities)\n",
        dmp.strategies().len(),
        dmp.states().len(),
        dmp.outcomes().len(),
        dmp.outcomes().strict_part().len()
    );
    Ok(Report::ok(text))
}
