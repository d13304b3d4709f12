//! Decision problems `G = (X, Y, A, ω, F)` and the preferences derived from them.
//!
//! Orientation: a pair `(x₁, x₂)` in any preference relation means "`x₂` is at
//! least as preferable as `x₁`", the same direction as `F(x₁, y) ≤ F(x₂, y)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::monoid::ClosedMonoid;
use crate::order::{pullback, Mode, OutcomeMap, PartialOrder};
use crate::relation::{ElementSet, GroundSet, Relation};

/// A decision problem: strategies, states, ordered outcomes and the
/// realization table `F(x, y)`.
#[derive(Clone, PartialEq, Eq)]
pub struct Dmp {
    strategies: GroundSet,
    states: GroundSet,
    outcomes: PartialOrder,
    table: Vec<usize>,
}

impl Dmp {
    /// `table` is row-major: `table[x * |Y| + y] = F(x, y)`.
    pub fn new(
        strategies: GroundSet,
        states: GroundSet,
        outcomes: PartialOrder,
        table: Vec<usize>,
    ) -> Result<Self> {
        let expected = strategies.len() * states.len();
        if table.len() != expected {
            return Err(Error::Shape(format!(
                "table has {} cells, expected {expected}",
                table.len()
            )));
        }
        for &a in &table {
            outcomes.ground().check_index(a)?;
        }
        Ok(Dmp {
            strategies,
            states,
            outcomes,
            table,
        })
    }

    /// Builds the table from outcome labels, one row per strategy.
    pub fn from_rows<S: AsRef<str>>(
        strategies: GroundSet,
        states: GroundSet,
        outcomes: PartialOrder,
        rows: &[Vec<S>],
    ) -> Result<Self> {
        if rows.len() != strategies.len() {
            return Err(Error::Shape(format!(
                "{} rows for {} strategies",
                rows.len(),
                strategies.len()
            )));
        }
        let mut table = Vec::with_capacity(strategies.len() * states.len());
        for row in rows {
            if row.len() != states.len() {
                return Err(Error::Shape(format!(
                    "row has {} entries for {} states",
                    row.len(),
                    states.len()
                )));
            }
            for label in row {
                table.push(outcomes.ground().index_of(label.as_ref())?);
            }
        }
        Self::new(strategies, states, outcomes, table)
    }

    pub fn strategies(&self) -> &GroundSet {
        &self.strategies
    }

    pub fn states(&self) -> &GroundSet {
        &self.states
    }

    pub fn outcomes(&self) -> &PartialOrder {
        &self.outcomes
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn outcome(&self, x: usize, y: usize) -> usize {
        self.table[x * self.states.len() + y]
    }

    pub fn outcome_label(&self, x: usize, y: usize) -> &str {
        self.outcomes.ground().label(self.outcome(x, y))
    }

    fn leq(&self, a: usize, b: usize) -> bool {
        self.outcomes.leq(a, b)
    }

    fn row(&self, x: usize) -> &[usize] {
        let n = self.states.len();
        &self.table[x * n..(x + 1) * n]
    }

    fn row_set(&self, x: usize) -> ElementSet {
        ElementSet::from_indices(self.outcomes.ground(), self.row(x).iter().copied())
            .expect("validated table")
    }

    fn column_set(&self, y: usize) -> ElementSet {
        let col = (0..self.strategies.len()).map(|x| self.outcome(x, y));
        ElementSet::from_indices(self.outcomes.ground(), col).expect("validated table")
    }

    /// The row of `x` as a map from states to outcomes.
    pub fn f_star(&self, x: usize) -> Result<OutcomeMap> {
        self.strategies.check_index(x)?;
        OutcomeMap::new(&self.states, self.outcomes.ground(), self.row(x).to_vec())
    }

    pub fn f_star_by_label(&self, x: &str) -> Result<OutcomeMap> {
        self.f_star(self.strategies.index_of(x)?)
    }

    /// Pareto domination: `(x₁, x₂)` iff `F(x₁, y) ≤ F(x₂, y)` for every state.
    pub fn pareto(&self) -> Preference {
        self.quantified(|x1, x2| {
            (0..self.states.len()).all(|y| self.leq(self.outcome(x1, y), self.outcome(x2, y)))
        })
    }

    /// Strong Pareto domination: every inequality strict.
    pub fn strict_pareto(&self) -> Relation {
        let mut rel = Relation::empty(&self.strategies);
        for x1 in 0..self.strategies.len() {
            for x2 in 0..self.strategies.len() {
                if (0..self.states.len())
                    .all(|y| self.outcomes.lt(self.outcome(x1, y), self.outcome(x2, y)))
                {
                    rel.insert(x1, x2);
                }
            }
        }
        rel
    }

    /// `ρ_G(x₁, x₂) = {(y₁, y₂) | F(x₁, y₁) ≤ F(x₂, y₂)}`.
    pub fn state_preference(&self, x1: usize, x2: usize) -> Result<Relation> {
        pullback(&self.f_star(x1)?, &self.f_star(x2)?, &self.outcomes)
    }

    /// The preference induced by a closed monoid on the states: `(x₁, x₂)`
    /// iff the state preference `ρ_G(x₁, x₂)` is a member.
    pub fn derive(&self, monoid: &ClosedMonoid) -> Result<Preference> {
        self.states.ensure_same(monoid.ground())?;
        let n = self.strategies.len();
        let mut rel = Relation::empty(&self.strategies);
        for x1 in 0..n {
            for x2 in 0..n {
                if monoid.contains_unchecked(&self.state_preference(x1, x2)?) {
                    rel.insert(x1, x2);
                }
            }
        }
        debug_assert!(rel.is_preorder());
        Ok(Preference { rel })
    }

    /// β-domination: `∀y₁ ∃y₂ F(x₁, y₂) ≤ F(x₂, y₁)`.
    pub fn beta_explicit(&self) -> Preference {
        let ys = 0..self.states.len();
        self.quantified(|x1, x2| {
            ys.clone()
                .all(|y1| ys.clone().any(|y2| self.leq(self.outcome(x1, y2), self.outcome(x2, y1))))
        })
    }

    /// Dual β-domination: `∀y₁ ∃y₂ F(x₁, y₁) ≤ F(x₂, y₂)`.
    pub fn dual_beta_explicit(&self) -> Preference {
        let ys = 0..self.states.len();
        self.quantified(|x1, x2| {
            ys.clone()
                .all(|y1| ys.clone().any(|y2| self.leq(self.outcome(x1, y1), self.outcome(x2, y2))))
        })
    }

    /// Both quantifier conditions at once.
    pub fn beta_both_explicit(&self) -> Preference {
        let ys = 0..self.states.len();
        self.quantified(|x1, x2| {
            let forward = ys
                .clone()
                .all(|y1| ys.clone().any(|y2| self.leq(self.outcome(x1, y1), self.outcome(x2, y2))));
            let backward = ys
                .clone()
                .all(|y2| ys.clone().any(|y1| self.leq(self.outcome(x1, y1), self.outcome(x2, y2))));
            forward && backward
        })
    }

    fn quantified(&self, holds: impl Fn(usize, usize) -> bool) -> Preference {
        let n = self.strategies.len();
        let mut rel = Relation::empty(&self.strategies);
        for x1 in 0..n {
            for x2 in 0..n {
                if holds(x1, x2) {
                    rel.insert(x1, x2);
                }
            }
        }
        Preference { rel }
    }

    /// Guaranteed outcome sets `V_x` and α-domination (`V_{x₁} ⊆ V_{x₂}`).
    ///
    /// α-domination is not induced by any closed monoid.
    pub fn alpha(&self) -> Alpha {
        let guaranteed: Vec<ElementSet> = (0..self.strategies.len())
            .map(|x| {
                self.outcomes
                    .down_set(&self.row_set(x), Mode::Common)
                    .expect("same ground")
            })
            .collect();
        let preference = self.quantified(|x1, x2| guaranteed[x1].is_subset(&guaranteed[x2]));
        Alpha {
            guaranteed,
            preference,
        }
    }

    /// Lower characteristic set `V = ∪ V_x` and upper `U = ∩ U_y`, where
    /// `U_y` collects everything below some outcome in column `y`.
    pub fn characteristic_sets(&self) -> CharacteristicSets {
        let alpha = self.alpha();
        let per_state: Vec<ElementSet> = (0..self.states.len())
            .map(|y| {
                self.outcomes
                    .down_set(&self.column_set(y), Mode::Union)
                    .expect("same ground")
            })
            .collect();
        let ground = self.outcomes.ground();
        let lower = alpha
            .guaranteed
            .iter()
            .fold(ElementSet::empty(ground), |acc, v| acc.union(v));
        let upper = per_state
            .iter()
            .fold(ElementSet::full(ground), |acc, u| acc.intersection(u));
        CharacteristicSets {
            per_strategy: alpha.guaranteed,
            per_state,
            lower,
            upper,
        }
    }

    /// Situations `(x₀, y₀)` with `F(x, y₀) ≤ F(x₀, y₀) ≤ F(x₀, y)` for all `x, y`.
    pub fn saddle_points(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for x0 in 0..self.strategies.len() {
            for y0 in 0..self.states.len() {
                let v = self.outcome(x0, y0);
                let column_ok = (0..self.strategies.len()).all(|x| self.leq(self.outcome(x, y0), v));
                let row_ok = (0..self.states.len()).all(|y| self.leq(v, self.outcome(x0, y)));
                if column_ok && row_ok {
                    out.push((x0, y0));
                }
            }
        }
        out
    }

    /// The problem seen by the other player: players swap roles and the order
    /// is reversed.
    pub fn dualize(&self) -> Dmp {
        let (nx, ny) = (self.strategies.len(), self.states.len());
        let mut table = Vec::with_capacity(nx * ny);
        for y in 0..ny {
            for x in 0..nx {
                table.push(self.outcome(x, y));
            }
        }
        Dmp {
            strategies: self.states.clone(),
            states: self.strategies.clone(),
            outcomes: self.outcomes.dual(),
            table,
        }
    }

    /// Pushes the problem forward along an isotone map `A → B`.
    pub fn apply_morphism(&self, map: Vec<usize>, target: PartialOrder) -> Result<Morphism> {
        check_isotone(&self.outcomes, &map, &target)?;
        let table = self.table.iter().map(|&a| map[a]).collect();
        let image = Dmp::new(self.strategies.clone(), self.states.clone(), target, table)?;
        Ok(Morphism {
            source: self.clone(),
            target: image,
            map,
        })
    }

    /// Whether `pref` never ranks a strategy at least as high as one that
    /// strictly Pareto-dominates it. Returns the first offending pair
    /// `(x₁, x₂) ∈ pref` with `x₁` strictly dominating `x₂`.
    pub fn is_suitable(&self, pref: &Preference) -> Result<Suitability> {
        self.strategies.ensure_same(pref.ground())?;
        let strict = self.strict_pareto();
        let witness = pref.rel.pairs().find(|&(x1, x2)| strict.contains(x2, x1));
        Ok(Suitability { witness })
    }
}

impl fmt::Debug for Dmp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Dmp {{")?;
        writeln!(f, "  outcomes: {:?}", self.outcomes)?;
        writeln!(f, "  states: {:?}", self.states)?;
        for x in 0..self.strategies.len() {
            let row: Vec<&str> = (0..self.states.len()).map(|y| self.outcome_label(x, y)).collect();
            writeln!(f, "  {}: {}", self.strategies.label(x), row.join(" "))?;
        }
        write!(f, "}}")
    }
}

fn check_isotone(source: &PartialOrder, map: &[usize], target: &PartialOrder) -> Result<()> {
    if map.len() != source.len() {
        return Err(Error::Shape(format!(
            "map has {} values for {} outcomes",
            map.len(),
            source.len()
        )));
    }
    for &b in map {
        target.ground().check_index(b)?;
    }
    for (lo, hi) in source.relation().pairs() {
        if !target.leq(map[lo], map[hi]) {
            return Err(Error::NonIsotone {
                lo: source.ground().label(lo).into(),
                hi: source.ground().label(hi).into(),
                lo_image: target.ground().label(map[lo]).into(),
                hi_image: target.ground().label(map[hi]).into(),
            });
        }
    }
    Ok(())
}

/// A preorder on strategies.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Preference {
    rel: Relation,
}

impl Preference {
    pub fn new(rel: Relation) -> Result<Self> {
        if !rel.is_reflexive() {
            return Err(Error::NotPreorder("not reflexive"));
        }
        if !rel.is_transitive() {
            return Err(Error::NotPreorder("not transitive"));
        }
        Ok(Preference { rel })
    }

    pub fn relation(&self) -> &Relation {
        &self.rel
    }

    pub fn ground(&self) -> &GroundSet {
        self.rel.ground()
    }

    /// Whether `x₂` is at least as preferable as `x₁`.
    pub fn prefers(&self, x1: usize, x2: usize) -> bool {
        self.rel.contains(x1, x2)
    }

    pub fn equivalent(&self, x1: usize, x2: usize) -> bool {
        self.prefers(x1, x2) && self.prefers(x2, x1)
    }

    /// Strategies at least as good as every other.
    pub fn greatest(&self) -> Vec<usize> {
        let n = self.rel.size();
        (0..n).filter(|&x| (0..n).all(|o| self.prefers(o, x))).collect()
    }

    /// Strategies not strictly beaten by any other.
    pub fn maximal(&self) -> Vec<usize> {
        let n = self.rel.size();
        (0..n)
            .filter(|&x| (0..n).all(|o| !self.prefers(x, o) || self.prefers(o, x)))
            .collect()
    }

    /// Equivalence classes, ordered by their smallest member.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let n = self.rel.size();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for x in 0..n {
            if seen[x] {
                continue;
            }
            let class: Vec<usize> = (x..n).filter(|&o| self.equivalent(x, o)).collect();
            for &o in &class {
                seen[o] = true;
            }
            out.push(class);
        }
        out
    }

    pub fn is_subset(&self, other: &Preference) -> Result<bool> {
        self.rel.is_subset(&other.rel)
    }
}

impl fmt::Debug for Preference {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Preference{}", self.rel)
    }
}

/// Guaranteed outcome sets and the α-domination preorder.
#[derive(Debug, Clone)]
pub struct Alpha {
    /// `V_x` per strategy.
    pub guaranteed: Vec<ElementSet>,
    pub preference: Preference,
}

impl Alpha {
    pub fn greatest(&self) -> Vec<usize> {
        self.preference.greatest()
    }

    pub fn incomparable(&self, x1: usize, x2: usize) -> bool {
        !self.preference.prefers(x1, x2) && !self.preference.prefers(x2, x1)
    }
}

#[derive(Debug, Clone)]
pub struct CharacteristicSets {
    /// `V_x` per strategy.
    pub per_strategy: Vec<ElementSet>,
    /// `U_y` per state.
    pub per_state: Vec<ElementSet>,
    /// `V`.
    pub lower: ElementSet,
    /// `U`.
    pub upper: ElementSet,
}

impl CharacteristicSets {
    pub fn has_generalized_value(&self) -> bool {
        self.lower == self.upper
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Suitability {
    pub witness: Option<(usize, usize)>,
}

impl Suitability {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

/// An isotone map of outcome orders that carries one realization table onto
/// another.
#[derive(Debug, Clone)]
pub struct Morphism {
    source: Dmp,
    target: Dmp,
    map: Vec<usize>,
}

impl Morphism {
    pub fn new(source: Dmp, target: Dmp, map: Vec<usize>) -> Result<Self> {
        source.strategies.ensure_same(&target.strategies)?;
        source.states.ensure_same(&target.states)?;
        check_isotone(&source.outcomes, &map, &target.outcomes)?;
        for x in 0..source.strategies.len() {
            for y in 0..source.states.len() {
                let expected = map[source.outcome(x, y)];
                let found = target.outcome(x, y);
                if expected != found {
                    let b = target.outcomes.ground();
                    return Err(Error::TableMismatch {
                        strategy: source.strategies.label(x).into(),
                        state: source.states.label(y).into(),
                        expected: b.label(expected).into(),
                        found: b.label(found).into(),
                    });
                }
            }
        }
        Ok(Morphism {
            source,
            target,
            map,
        })
    }

    pub fn identity(dmp: &Dmp) -> Self {
        Morphism {
            source: dmp.clone(),
            target: dmp.clone(),
            map: (0..dmp.outcomes.len()).collect(),
        }
    }

    pub fn source(&self) -> &Dmp {
        &self.source
    }

    pub fn target(&self) -> &Dmp {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    /// Checks that the derived preference only grows along the morphism.
    /// Returns a pair preferred in the source but not in the target, if any.
    pub fn check_functoriality(&self, monoid: &ClosedMonoid) -> Result<Option<(usize, usize)>> {
        let before = self.source.derive(monoid)?;
        let after = self.target.derive(monoid)?;
        let witness = before.rel.pairs().find(|&(x1, x2)| !after.prefers(x1, x2));
        Ok(witness)
    }
}

/// Outcome of a regularity check between two strategy pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Regularity {
    /// The two state preferences are equal.
    pub premise: bool,
    /// Membership of the two pairs agrees (vacuously true without the premise).
    pub holds: bool,
}

/// Equal state preferences must give equal verdicts.
pub fn check_regularity(
    g: &Dmp,
    pair: (usize, usize),
    h: &Dmp,
    other: (usize, usize),
    monoid: &ClosedMonoid,
) -> Result<Regularity> {
    g.states.ensure_same(&h.states)?;
    let rho = g.state_preference(pair.0, pair.1)?;
    let sigma = h.state_preference(other.0, other.1)?;
    if rho != sigma {
        return Ok(Regularity {
            premise: false,
            holds: true,
        });
    }
    let lhs = g.derive(monoid)?.prefers(pair.0, pair.1);
    let rhs = h.derive(monoid)?.prefers(other.0, other.1);
    Ok(Regularity {
        premise: true,
        holds: lhs == rhs,
    })
}
