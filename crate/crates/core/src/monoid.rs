//! Closed submonoids of the monoid of binary relations on a state set.
//!
//! A closed submonoid contains `Δ`, is closed under composition and is
//! upward closed under inclusion. Being an up-set, it is determined by its
//! antichain of inclusion-minimal members, which is what [`ClosedMonoid`]
//! stores. Because composition is monotone in both arguments, every product
//! of members contains a product of minimal members, so composition closure
//! only has to be checked (and computed) on the antichain.

use std::fmt;

use crate::error::{Error, Result};
use crate::relation::{ElementSet, GroundSet, Relation};

/// Largest state set for which the surjective and total monoids are
/// materialised (their antichains have `n^n` members).
pub const MAX_FUNCTION_GRAPH_STATES: usize = 6;

/// Largest state set for the meet of the surjective and total monoids.
pub const MAX_BETA_BOTH_STATES: usize = 4;

/// A failed closed-submonoid axiom, with witnesses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// `Δ` is not a member.
    MissingIdentity,
    /// Two members whose product `then ∘ first` is not a member.
    NotComposable {
        first: Relation,
        then: Relation,
        product: Relation,
    },
    /// A member with a superset outside the family.
    NotUpClosed { member: Relation, superset: Relation },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::MissingIdentity => f.write_str("identity relation is not a member"),
            Violation::NotComposable {
                first,
                then,
                product,
            } => write!(
                f,
                "composition of members {first} then {then} gives {product}, which is not a member"
            ),
            Violation::NotUpClosed { member, superset } => {
                write!(f, "{superset} contains member {member} but is not a member")
            }
        }
    }
}

/// The named families of closed monoids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Canonical {
    /// All reflexive relations; derives Pareto domination.
    Reflexive,
    /// Relations whose second projection is everything; derives β-domination.
    Surjective,
    /// Relations whose first projection is everything; derives dual β-domination.
    Total,
    /// Relations that are both surjective and total.
    BetaBoth,
    /// Relations whose fixed points include the given base set.
    Filter(ElementSet),
    /// Relations with the given state as a fixed point.
    Dictator(usize),
    /// Reflexive relations and supersets of an idempotent relation.
    Idempotent(Relation),
    /// Reflexive relations and `Y × Y ∖ {(y₀, y₀)}`.
    Atom(usize),
    /// Every relation.
    Universal,
}

impl Canonical {
    /// Short name used in reports and DOT labels.
    pub fn name(&self, states: &GroundSet) -> String {
        match self {
            Canonical::Reflexive => "pareto".into(),
            Canonical::Surjective => "beta".into(),
            Canonical::Total => "dual-beta".into(),
            Canonical::BetaBoth => "beta-both".into(),
            Canonical::Filter(base) => format!("filter:{}", base.labels().join(",")),
            Canonical::Dictator(y) => format!("dictator:{}", states.label(*y)),
            Canonical::Idempotent(s) => format!("idempotent:{s}"),
            Canonical::Atom(y) => format!("atom:{}", states.label(*y)),
            Canonical::Universal => "universal".into(),
        }
    }
}

/// A closed submonoid, stored as its sorted antichain of minimal members.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClosedMonoid {
    ground: GroundSet,
    minimal: Vec<Relation>,
}

/// Keeps the inclusion-minimal relations, deduplicated and sorted.
pub fn minimize(mut relations: Vec<Relation>) -> Vec<Relation> {
    relations.sort();
    relations.dedup();
    let mut kept: Vec<Relation> = Vec::with_capacity(relations.len());
    // sorted by cardinality, so any proper subset was seen earlier
    for r in relations {
        if !kept.iter().any(|k| k.is_subset_unchecked(&r)) {
            kept.push(r);
        }
    }
    kept
}

impl ClosedMonoid {
    /// Builds the monoid with the given minimal members, checking the axioms.
    pub fn from_antichain(ground: &GroundSet, relations: Vec<Relation>) -> Result<Self> {
        match validate_antichain(ground, &relations)? {
            Some(v) => Err(Error::NotClosed(v)),
            None => Ok(ClosedMonoid {
                ground: ground.clone(),
                minimal: minimize(relations),
            }),
        }
    }

    fn trusted(ground: &GroundSet, relations: Vec<Relation>) -> Self {
        let m = ClosedMonoid {
            ground: ground.clone(),
            minimal: minimize(relations),
        };
        debug_assert!(validate_antichain(ground, &m.minimal).unwrap().is_none());
        m
    }

    /// The least closed monoid containing every generator.
    pub fn closure(ground: &GroundSet, generators: &[Relation]) -> Result<Self> {
        for g in generators {
            ground.ensure_same(g.ground())?;
        }
        let mut seed: Vec<Relation> = generators.iter().map(|g| g.with_ground(ground)).collect();
        seed.push(Relation::identity(ground));
        let mut antichain = minimize(seed);
        loop {
            let mut candidates = antichain.clone();
            for a in &antichain {
                for b in &antichain {
                    candidates.push(Relation::compose_unchecked(a, b));
                }
            }
            let next = minimize(candidates);
            if next == antichain {
                break;
            }
            antichain = next;
        }
        Ok(ClosedMonoid {
            ground: ground.clone(),
            minimal: antichain,
        })
    }

    pub fn reflexive(ground: &GroundSet) -> Self {
        Self::trusted(ground, vec![Relation::identity(ground)])
    }

    pub fn universal(ground: &GroundSet) -> Self {
        Self::trusted(ground, vec![Relation::empty(ground)])
    }

    pub fn canonical(ground: &GroundSet, kind: &Canonical) -> Result<Self> {
        let n = ground.len();
        Ok(match kind {
            Canonical::Reflexive => Self::reflexive(ground),
            Canonical::Universal => Self::universal(ground),
            Canonical::Surjective => {
                let graphs = function_graphs(ground)?;
                Self::trusted(ground, graphs.iter().map(Relation::inverse).collect())
            }
            Canonical::Total => Self::trusted(ground, function_graphs(ground)?),
            Canonical::BetaBoth => {
                if n > MAX_BETA_BOTH_STATES {
                    return Err(Error::Unsupported(format!(
                        "beta-both monoid is materialised for at most {MAX_BETA_BOTH_STATES} states, got {n}"
                    )));
                }
                let s = Self::canonical(ground, &Canonical::Surjective)?;
                let t = Self::canonical(ground, &Canonical::Total)?;
                s.meet(&t)?
            }
            Canonical::Filter(base) => {
                ground.ensure_same(base.ground())?;
                if base.is_empty() {
                    return Err(Error::EmptyFilter);
                }
                let diag = Relation::from_index_pairs(ground, base.iter().map(|y| (y, y)))?;
                Self::trusted(ground, vec![diag])
            }
            Canonical::Dictator(y) => {
                let base = ElementSet::from_indices(ground, [*y])?;
                Self::canonical(ground, &Canonical::Filter(base))?
            }
            Canonical::Idempotent(sigma) => {
                ground.ensure_same(sigma.ground())?;
                if !sigma.is_idempotent() {
                    return Err(Error::NotIdempotent(sigma.to_string()));
                }
                Self::trusted(ground, vec![Relation::identity(ground), sigma.with_ground(ground)])
            }
            Canonical::Atom(y) => {
                ground.check_index(*y)?;
                if n < 2 {
                    return Err(Error::Unsupported(
                        "atom monoids need at least two states".into(),
                    ));
                }
                let mut rho = Relation::full(ground);
                rho.remove(*y, *y);
                Self::trusted(ground, vec![Relation::identity(ground), rho])
            }
        })
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    /// The inclusion-minimal members, sorted.
    pub fn minimal(&self) -> &[Relation] {
        &self.minimal
    }

    pub fn contains(&self, rho: &Relation) -> Result<bool> {
        self.ground.ensure_same(rho.ground())?;
        Ok(self.contains_unchecked(rho))
    }

    pub(crate) fn contains_unchecked(&self, rho: &Relation) -> bool {
        self.minimal.iter().any(|m| m.is_subset_unchecked(rho))
    }

    /// Monoid inclusion `self ⊆ other`.
    pub fn is_submonoid_of(&self, other: &ClosedMonoid) -> Result<bool> {
        self.ground.ensure_same(&other.ground)?;
        Ok(self.minimal.iter().all(|m| other.contains_unchecked(m)))
    }

    /// Intersection of the two monoids.
    pub fn meet(&self, other: &ClosedMonoid) -> Result<ClosedMonoid> {
        self.ground.ensure_same(&other.ground)?;
        let mut unions = Vec::with_capacity(self.minimal.len() * other.minimal.len());
        for a in &self.minimal {
            for b in &other.minimal {
                unions.push(a.union(b)?);
            }
        }
        Ok(Self::trusted(&self.ground, unions))
    }

    /// Least closed monoid containing both.
    pub fn join(&self, other: &ClosedMonoid) -> Result<ClosedMonoid> {
        self.ground.ensure_same(&other.ground)?;
        let gens: Vec<Relation> = self.minimal.iter().chain(&other.minimal).cloned().collect();
        Self::closure(&self.ground, &gens)
    }

    /// The monoid of inverses.
    pub fn dual(&self) -> ClosedMonoid {
        Self::trusted(&self.ground, self.minimal.iter().map(Relation::inverse).collect())
    }

    pub fn is_self_dual(&self) -> bool {
        self.dual() == *self
    }

    pub fn is_universal(&self) -> bool {
        self.minimal.iter().any(Relation::is_empty)
    }

    pub fn is_reflexive_monoid(&self) -> bool {
        self.minimal.len() == 1 && self.minimal[0] == Relation::identity(&self.ground)
    }

    /// Whether every member has a fixed point. Fixed points survive taking
    /// supersets, so it suffices to look at the minimal members.
    pub fn all_have_fixed_point(&self) -> bool {
        self.minimal.iter().all(Relation::has_fixed_point)
    }

    /// Every member, in code order. Requires at most 4 states.
    pub fn members(&self) -> Result<Vec<Relation>> {
        Ok(Relation::all(&self.ground)?
            .filter(|r| self.contains_unchecked(r))
            .collect())
    }

    /// Compact rendering of the antichain, e.g. `[{(y1,y1), (y2,y2)}]`.
    pub fn signature(&self) -> String {
        let parts: Vec<String> = self.minimal.iter().map(ToString::to_string).collect();
        format!("[{}]", parts.join(" "))
    }
}

impl fmt::Debug for ClosedMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ClosedMonoid{}", self.signature())
    }
}

/// Graphs `{(y, g(y))}` of all maps `g: Y → Y`.
fn function_graphs(ground: &GroundSet) -> Result<Vec<Relation>> {
    let n = ground.len();
    if n > MAX_FUNCTION_GRAPH_STATES {
        return Err(Error::Unsupported(format!(
            "function-graph monoids are materialised for at most {MAX_FUNCTION_GRAPH_STATES} states, got {n}"
        )));
    }
    let count = n.pow(n as u32);
    let mut out = Vec::with_capacity(count);
    for mut code in 0..count {
        let mut r = Relation::empty(ground);
        for y in 0..n {
            r.insert(y, code % n);
            code /= n;
        }
        out.push(r);
    }
    Ok(out)
}

/// Checks the closed-monoid axioms for the up-set generated by `antichain`.
/// Up-closure holds by construction.
pub fn validate_antichain(ground: &GroundSet, antichain: &[Relation]) -> Result<Option<Violation>> {
    for r in antichain {
        ground.ensure_same(r.ground())?;
    }
    let member = |r: &Relation| antichain.iter().any(|m| m.is_subset_unchecked(r));
    if !member(&Relation::identity(ground)) {
        return Ok(Some(Violation::MissingIdentity));
    }
    for first in antichain {
        for then in antichain {
            let product = Relation::compose_unchecked(first, then);
            if !member(&product) {
                return Ok(Some(Violation::NotComposable {
                    first: first.clone(),
                    then: then.clone(),
                    product,
                }));
            }
        }
    }
    Ok(None)
}

/// Checks the axioms for an arbitrary membership predicate by enumerating
/// every relation. Requires at most 3 states.
pub fn validate_predicate(
    ground: &GroundSet,
    is_member: impl Fn(&Relation) -> bool,
) -> Result<Option<Violation>> {
    let n = ground.len();
    if n > 3 {
        return Err(Error::Unsupported(format!(
            "predicate validation enumerates all relations and needs at most 3 states, got {n}"
        )));
    }
    let members: Vec<Relation> = Relation::all(ground)?.filter(|r| is_member(r)).collect();
    if !is_member(&Relation::identity(ground)) {
        return Ok(Some(Violation::MissingIdentity));
    }
    for member in &members {
        for (i, j) in (0..n).flat_map(|i| (0..n).map(move |j| (i, j))) {
            if !member.contains(i, j) {
                let mut superset = member.clone();
                superset.insert(i, j);
                if !is_member(&superset) {
                    return Ok(Some(Violation::NotUpClosed {
                        member: member.clone(),
                        superset,
                    }));
                }
            }
        }
    }
    for first in &members {
        for then in &members {
            let product = Relation::compose_unchecked(first, then);
            if !is_member(&product) {
                return Ok(Some(Violation::NotComposable {
                    first: first.clone(),
                    then: then.clone(),
                    product,
                }));
            }
        }
    }
    Ok(None)
}
