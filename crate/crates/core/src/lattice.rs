//! The lattice of closed monoids on a small state set.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::dmp::{Dmp, Preference};
use crate::error::{Error, Result};
use crate::monoid::{Canonical, ClosedMonoid};
use crate::order::{OutcomeMap, PartialOrder};
use crate::relation::{GroundSet, Relation};

/// Default resource guard for [`enumerate_generated`].
pub const DEFAULT_MONOID_CAP: usize = 100_000;

/// Upper bound on the number of generator subsets tried by [`enumerate_generated`].
pub const MAX_GENERATOR_SUBSETS: usize = 2_000_000;

/// A family of closed monoids ordered by inclusion.
#[derive(Debug, Clone)]
pub struct MonoidLattice {
    ground: GroundSet,
    elements: Vec<ClosedMonoid>,
    /// `below[i]` has bit `j` set when element `j ⊆` element `i`.
    below: Vec<Vec<u64>>,
    hasse_edges: Vec<(usize, usize)>,
    atoms: Vec<usize>,
    dual_atoms: Vec<usize>,
}

impl MonoidLattice {
    /// Every closed monoid on a two-element state set, by brute force over
    /// all `2^16` families of relations.
    pub fn enumerate_exhaustive(ground: &GroundSet) -> Result<Self> {
        if ground.len() != 2 {
            return Err(Error::Unsupported(format!(
                "exhaustive enumeration needs exactly 2 states, got {}; use generated mode instead",
                ground.len()
            )));
        }
        let relations: Vec<Relation> = Relation::all(ground)?.collect();
        let mut compose = [[0u8; 16]; 16];
        for (a, ra) in relations.iter().enumerate() {
            for (b, rb) in relations.iter().enumerate() {
                compose[a][b] = Relation::compose_unchecked(ra, rb).code() as u8;
            }
        }
        let identity = Relation::identity(ground).code() as usize;

        let families: Vec<u32> = (0u32..1 << 16)
            .into_par_iter()
            .filter(|&fam| is_closed_family(fam, identity, &compose))
            .collect();

        let elements = families
            .into_iter()
            .map(|fam| {
                let minimal = (0..16)
                    .filter(|&c| fam >> c & 1 == 1)
                    .filter(|&c| (0..16).all(|bit| c >> bit & 1 == 0 || fam >> (c & !(1 << bit)) & 1 == 0))
                    .map(|c| relations[c].clone())
                    .collect();
                ClosedMonoid::from_antichain(ground, minimal)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_elements(ground, elements)
    }

    /// Orders the given monoids by inclusion. Duplicates are dropped.
    pub fn from_elements(ground: &GroundSet, elements: Vec<ClosedMonoid>) -> Result<Self> {
        for m in &elements {
            ground_check(ground, m)?;
        }
        let mut elements = elements;
        elements.sort();
        elements.dedup();
        let n = elements.len();
        let words = n.div_ceil(64).max(1);

        let mut leq = vec![vec![false; n]; n];
        for i in 0..n {
            for j in 0..n {
                leq[i][j] = elements[i].is_submonoid_of(&elements[j])?;
            }
        }
        // the number of elements below is a linear extension of inclusion
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| ((0..n).filter(|&j| leq[j][i]).count(), i));
        let elements: Vec<ClosedMonoid> = order.iter().map(|&i| elements[i].clone()).collect();
        let leq: Vec<Vec<bool>> = order
            .iter()
            .map(|&i| order.iter().map(|&j| leq[i][j]).collect())
            .collect();

        let mut below = vec![vec![0u64; words]; n];
        let mut above = vec![vec![0u64; words]; n];
        for i in 0..n {
            for j in 0..n {
                if i != j && leq[j][i] {
                    below[i][j / 64] |= 1 << (j % 64);
                    above[j][i / 64] |= 1 << (i % 64);
                }
            }
        }
        let mut hasse_edges = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j && leq[i][j] {
                    let between = above[i].iter().zip(&below[j]).any(|(a, b)| a & b != 0);
                    if !between {
                        hasse_edges.push((i, j));
                    }
                }
            }
        }
        for (i, row) in below.iter_mut().enumerate() {
            row[i / 64] |= 1 << (i % 64);
        }

        let mut lattice = MonoidLattice {
            ground: ground.clone(),
            elements,
            below,
            hasse_edges,
            atoms: Vec::new(),
            dual_atoms: Vec::new(),
        };
        if let Some(bottom) = lattice.least() {
            lattice.atoms = lattice.upper_covers(bottom);
        }
        if let Some(top) = lattice.greatest() {
            lattice.dual_atoms = lattice.lower_covers(top);
        }
        Ok(lattice)
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    /// Elements in a linear extension of inclusion.
    pub fn elements(&self) -> &[ClosedMonoid] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Covering pairs `(lower, upper)`.
    pub fn hasse_edges(&self) -> &[(usize, usize)] {
        &self.hasse_edges
    }

    /// Elements covering the least element.
    pub fn atoms(&self) -> &[usize] {
        &self.atoms
    }

    /// Elements covered by the greatest element.
    pub fn dual_atoms(&self) -> &[usize] {
        &self.dual_atoms
    }

    /// Whether element `i ⊆` element `j`.
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.below[j][i / 64] >> (i % 64) & 1 == 1
    }

    pub fn least(&self) -> Option<usize> {
        (0..self.len()).find(|&i| (0..self.len()).all(|j| self.leq(i, j)))
    }

    pub fn greatest(&self) -> Option<usize> {
        (0..self.len()).find(|&i| (0..self.len()).all(|j| self.leq(j, i)))
    }

    pub fn index_of(&self, monoid: &ClosedMonoid) -> Option<usize> {
        self.elements.iter().position(|m| m == monoid)
    }

    pub fn upper_covers(&self, i: usize) -> Vec<usize> {
        self.hasse_edges.iter().filter(|e| e.0 == i).map(|e| e.1).collect()
    }

    pub fn lower_covers(&self, i: usize) -> Vec<usize> {
        self.hasse_edges.iter().filter(|e| e.1 == i).map(|e| e.0).collect()
    }

    /// The greatest lower bound of two elements within this family.
    pub fn meet_index(&self, i: usize, j: usize) -> Option<usize> {
        let lower: Vec<usize> = (0..self.len()).filter(|&k| self.leq(k, i) && self.leq(k, j)).collect();
        lower
            .iter()
            .copied()
            .find(|&k| lower.iter().all(|&l| self.leq(l, k)))
    }

    /// The least upper bound of two elements within this family.
    pub fn join_index(&self, i: usize, j: usize) -> Option<usize> {
        let upper: Vec<usize> = (0..self.len()).filter(|&k| self.leq(i, k) && self.leq(j, k)).collect();
        upper
            .iter()
            .copied()
            .find(|&k| upper.iter().all(|&l| self.leq(k, l)))
    }

    /// Display name: a canonical name when the element matches one, else its
    /// antichain signature.
    pub fn name(&self, i: usize) -> String {
        let m = &self.elements[i];
        canonical_catalog(&self.ground)
            .into_iter()
            .find(|(_, c)| c == m)
            .map(|(name, _)| name)
            .unwrap_or_else(|| m.signature())
    }

    /// Deterministic DOT rendering of the Hasse diagram, least element at the bottom.
    pub fn to_dot(&self) -> String {
        let names: Vec<String> = (0..self.len()).map(|i| self.name(i)).collect();
        let mut out = String::from("digraph monoids {\n  rankdir=BT;\n  node [shape=box];\n");
        for (i, name) in names.iter().enumerate() {
            let _ = writeln!(out, "  m{i} [label=\"{}\"];", name.replace('"', "\\\""));
        }
        for &(lo, hi) in &self.hasse_edges {
            let _ = writeln!(out, "  m{lo} -> m{hi};");
        }
        out.push_str("}\n");
        out
    }
}

fn ground_check(ground: &GroundSet, m: &ClosedMonoid) -> Result<()> {
    if ground != m.ground() {
        return Err(Error::GroundMismatch {
            left: ground.labels().join(" "),
            right: m.ground().labels().join(" "),
        });
    }
    Ok(())
}

fn is_closed_family(fam: u32, identity: usize, compose: &[[u8; 16]; 16]) -> bool {
    if fam >> identity & 1 == 0 {
        return false;
    }
    for c in 0..16 {
        if fam >> c & 1 == 0 {
            continue;
        }
        for bit in 0..4 {
            if fam >> (c | 1 << bit) & 1 == 0 {
                return false;
            }
        }
    }
    for (a, row) in compose.iter().enumerate() {
        if fam >> a & 1 == 0 {
            continue;
        }
        for (b, &ab) in row.iter().enumerate() {
            if fam >> b & 1 == 1 && fam >> ab & 1 == 0 {
                return false;
            }
        }
    }
    true
}

/// Named monoids in labelling precedence order. Families too large to
/// materialise for this ground set are skipped.
pub fn canonical_catalog(ground: &GroundSet) -> Vec<(String, ClosedMonoid)> {
    let n = ground.len();
    let mut kinds = vec![Canonical::Reflexive, Canonical::Universal];
    kinds.extend((0..n).map(Canonical::Dictator));
    kinds.extend([Canonical::Surjective, Canonical::Total, Canonical::BetaBoth]);
    if n >= 2 {
        kinds.extend((0..n).map(Canonical::Atom));
    }
    kinds
        .into_iter()
        .filter_map(|k| {
            ClosedMonoid::canonical(ground, &k)
                .ok()
                .map(|m| (k.name(ground), m))
        })
        .collect()
}

/// Closures of every subset of `pool` with at most `max_generators` members,
/// deduplicated and sorted. Fails once more than `cap` distinct monoids appear.
pub fn enumerate_generated(
    ground: &GroundSet,
    pool: &[Relation],
    max_generators: usize,
    cap: usize,
) -> Result<Vec<ClosedMonoid>> {
    for r in pool {
        if r.ground() != ground {
            return Err(Error::GroundMismatch {
                left: ground.labels().join(" "),
                right: r.ground().labels().join(" "),
            });
        }
    }
    let mut found = std::collections::BTreeSet::new();
    found.insert(ClosedMonoid::reflexive(ground));
    let mut tried = 0usize;
    let mut level: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..max_generators.min(pool.len()) {
        let next: Vec<Vec<usize>> = level
            .iter()
            .flat_map(|s| {
                let start = s.last().map_or(0, |&l| l + 1);
                (start..pool.len()).map(move |i| {
                    let mut t = s.clone();
                    t.push(i);
                    t
                })
            })
            .collect();
        tried += next.len();
        if tried > MAX_GENERATOR_SUBSETS {
            return Err(Error::Limit {
                what: "generator subsets",
                limit: MAX_GENERATOR_SUBSETS,
            });
        }
        let closures = next
            .par_iter()
            .map(|s| {
                let gens: Vec<Relation> = s.iter().map(|&i| pool[i].clone()).collect();
                ClosedMonoid::closure(ground, &gens)
            })
            .collect::<Result<Vec<_>>>()?;
        for m in closures {
            found.insert(m);
            if found.len() > cap {
                return Err(Error::Limit {
                    what: "distinct monoids",
                    limit: cap,
                });
            }
        }
        level = next;
    }
    Ok(found.into_iter().collect())
}

/// The minimal nontrivial closed monoids, one per state `y₀`, each generated
/// by `Y × Y ∖ {(y₀, y₀)}`.
pub fn atoms(ground: &GroundSet) -> Result<Vec<ClosedMonoid>> {
    if ground.len() < 2 {
        return Err(Error::Unsupported("atom monoids need at least two states".into()));
    }
    (0..ground.len())
        .map(|y0| {
            let mut rho = Relation::full(ground);
            rho.remove(y0, y0);
            ClosedMonoid::closure(ground, &[rho])
        })
        .collect()
}

/// Distinct derived preferences of one problem across a lattice.
#[derive(Debug, Clone)]
pub struct Census {
    /// Distinct preferences, in order of first appearance along the lattice.
    pub preferences: Vec<Preference>,
    /// Preference id for each lattice element.
    pub assignment: Vec<usize>,
}

impl Census {
    /// Lattice elements that derive preference `id`.
    pub fn monoids_of(&self, id: usize) -> Vec<usize> {
        (0..self.assignment.len()).filter(|&i| self.assignment[i] == id).collect()
    }

    /// A pair of elements `i ⊆ j` whose preferences are not nested, if any.
    pub fn monotonicity_violation(&self, lattice: &MonoidLattice) -> Option<(usize, usize)> {
        let n = self.assignment.len();
        for i in 0..n {
            for j in 0..n {
                if lattice.leq(i, j) {
                    let lo = &self.preferences[self.assignment[i]];
                    let hi = &self.preferences[self.assignment[j]];
                    if !lo.is_subset(hi).unwrap_or(false) {
                        return Some((i, j));
                    }
                }
            }
        }
        None
    }

    /// One `pref_id<TAB>monoid_ids` line per distinct preference.
    pub fn records(&self) -> String {
        let mut out = String::new();
        for id in 0..self.preferences.len() {
            let ids: Vec<String> = self.monoids_of(id).iter().map(ToString::to_string).collect();
            let _ = writeln!(out, "{id}\t{}", ids.join(","));
        }
        out
    }
}

pub fn preference_census(dmp: &Dmp, lattice: &MonoidLattice) -> Result<Census> {
    if dmp.states() != lattice.ground() {
        return Err(Error::GroundMismatch {
            left: dmp.states().labels().join(" "),
            right: lattice.ground().labels().join(" "),
        });
    }
    let mut ids: BTreeMap<Preference, usize> = BTreeMap::new();
    let mut preferences = Vec::new();
    let mut assignment = Vec::with_capacity(lattice.len());
    for m in lattice.elements() {
        let p = dmp.derive(m)?;
        let id = *ids.entry(p.clone()).or_insert_with(|| {
            preferences.push(p);
            preferences.len() - 1
        });
        assignment.push(id);
    }
    Ok(Census {
        preferences,
        assignment,
    })
}

/// Realizes `σ` as a state preference: outcomes are two disjoint copies of
/// the states, ordered only by `φ(y₁) < ψ(y₂)` for `(y₁, y₂) ∈ σ`, so that
/// the pullback of the order along `φ, ψ` is `σ` again.
pub fn represent_relation(sigma: &Relation) -> Result<(PartialOrder, OutcomeMap, OutcomeMap)> {
    let y = sigma.ground();
    let n = y.len();
    let labels = (1..=2).flat_map(|copy| y.labels().iter().map(move |l| format!("{l}.{copy}")));
    let a = GroundSet::new(labels)?;
    let omega = PartialOrder::from_index_pairs(&a, sigma.pairs().map(|(i, j)| (i, n + j)))?;
    let phi = OutcomeMap::new(y, &a, (0..n).collect())?;
    let psi = OutcomeMap::new(y, &a, (n..2 * n).collect())?;
    Ok((omega, phi, psi))
}
