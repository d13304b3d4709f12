//! Partial orders on outcome sets and maps from states into them.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};
use crate::relation::{iter_bits, ElementSet, GroundSet, Relation};

/// How [`PartialOrder::down_set`] and [`PartialOrder::up_set`] combine the
/// principal sets of the given elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Elements below (above) *every* member: the common bounds.
    Common,
    /// Elements below (above) *some* member.
    Union,
}

/// A reflexive, transitive, antisymmetric relation.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PartialOrder {
    leq: Relation,
}

impl PartialOrder {
    /// Closes the given comparabilities `u < v` reflexively and transitively.
    pub fn from_comparabilities<S: AsRef<str>>(
        ground: &GroundSet,
        pairs: impl IntoIterator<Item = (S, S)>,
    ) -> Result<Self> {
        Self::from_generators(Relation::from_pairs(ground, pairs)?)
    }

    pub fn from_index_pairs(
        ground: &GroundSet,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        Self::from_generators(Relation::from_index_pairs(ground, pairs)?)
    }

    fn from_generators(generators: Relation) -> Result<Self> {
        let leq = generators.reflexive_transitive_closure();
        let n = leq.size();
        for i in 0..n {
            for j in i + 1..n {
                if leq.contains(i, j) && leq.contains(j, i) {
                    return Err(Error::Cycle(find_cycle(&generators, i, j)));
                }
            }
        }
        Ok(PartialOrder { leq })
    }

    /// Wraps a relation that must already be a partial order.
    pub fn from_relation(leq: Relation) -> Result<Self> {
        if !leq.is_reflexive() {
            return Err(Error::NotPartialOrder("not reflexive"));
        }
        if !leq.is_transitive() {
            return Err(Error::NotPartialOrder("not transitive"));
        }
        if !leq.is_antisymmetric() {
            return Err(Error::NotPartialOrder("not antisymmetric"));
        }
        Ok(PartialOrder { leq })
    }

    /// The trivial order `Δ`.
    pub fn trivial(ground: &GroundSet) -> Self {
        PartialOrder {
            leq: Relation::identity(ground),
        }
    }

    /// The chain in label order.
    pub fn chain(ground: &GroundSet) -> Self {
        let n = ground.len();
        let leq = Relation::from_index_pairs(ground, (0..n).flat_map(|i| (i..n).map(move |j| (i, j))))
            .expect("indices in range");
        PartialOrder { leq }
    }

    pub fn ground(&self) -> &GroundSet {
        self.leq.ground()
    }

    pub fn len(&self) -> usize {
        self.leq.size()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn relation(&self) -> &Relation {
        &self.leq
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq.contains(a, b)
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq.contains(a, b)
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    /// `ω_str = ω ∖ Δ`.
    pub fn strict_part(&self) -> Relation {
        self.leq
            .difference(&Relation::identity(self.ground()))
            .expect("same ground")
    }

    /// The opposite order `ω⁻¹`.
    pub fn dual(&self) -> PartialOrder {
        PartialOrder {
            leq: self.leq.inverse(),
        }
    }

    /// Componentwise order on `A × B`, with elements labelled `(a,b)` in
    /// row-major order.
    pub fn product(&self, other: &PartialOrder) -> Result<PartialOrder> {
        let (na, nb) = (self.len(), other.len());
        let labels = self
            .ground()
            .labels()
            .iter()
            .flat_map(|a| other.ground().labels().iter().map(move |b| format!("({a},{b})")));
        let ground = GroundSet::new(labels)?;
        let mut leq = Relation::empty(&ground);
        for a1 in 0..na {
            for b1 in 0..nb {
                for a2 in 0..na {
                    for b2 in 0..nb {
                        if self.leq(a1, a2) && other.leq(b1, b2) {
                            leq.insert(a1 * nb + b1, a2 * nb + b2);
                        }
                    }
                }
            }
        }
        PartialOrder::from_relation(leq)
    }

    /// The induced order on a subset, keeping the subset's label order.
    pub fn restrict(&self, subset: &ElementSet) -> Result<PartialOrder> {
        self.ground().ensure_same(subset.ground())?;
        let keep: Vec<usize> = subset.iter().collect();
        let ground = GroundSet::new(keep.iter().map(|&i| self.ground().label(i).to_string()))?;
        let mut leq = Relation::empty(&ground);
        for (p, &i) in keep.iter().enumerate() {
            for (q, &j) in keep.iter().enumerate() {
                if self.leq(i, j) {
                    leq.insert(p, q);
                }
            }
        }
        Ok(PartialOrder { leq })
    }

    pub fn principal_down(&self, a: usize) -> ElementSet {
        self.leq.inverse().row(a)
    }

    pub fn principal_up(&self, a: usize) -> ElementSet {
        self.leq.row(a)
    }

    pub fn down_set(&self, set: &ElementSet, mode: Mode) -> Result<ElementSet> {
        self.ground().ensure_same(set.ground())?;
        let below = self.leq.inverse();
        Ok(combine(self.ground(), set, mode, |s| below.row_bits(s)))
    }

    pub fn up_set(&self, set: &ElementSet, mode: Mode) -> Result<ElementSet> {
        self.ground().ensure_same(set.ground())?;
        Ok(combine(self.ground(), set, mode, |s| self.leq.row_bits(s)))
    }

    /// Number of elements in a longest chain.
    pub fn longest_chain(&self) -> usize {
        // longest path in the strict DAG, visiting elements in a linear extension
        let order = self.linear_extension();
        let mut height = vec![1usize; self.len()];
        for &b in &order {
            for a in 0..self.len() {
                if self.lt(a, b) {
                    height[b] = height[b].max(height[a] + 1);
                }
            }
        }
        height.into_iter().max().unwrap_or(0)
    }

    /// Whether some chain `a₁ < … < a_k` exists.
    pub fn has_strict_chain(&self, k: usize) -> bool {
        k <= self.longest_chain()
    }

    /// Elements sorted so that every element comes after everything below it;
    /// ties broken by index.
    pub fn linear_extension(&self) -> Vec<usize> {
        let n = self.len();
        let mut placed = vec![false; n];
        let mut out = Vec::with_capacity(n);
        while out.len() < n {
            let next = (0..n)
                .find(|&b| !placed[b] && (0..n).all(|a| placed[a] || !self.lt(a, b)))
                .expect("partial orders are acyclic");
            placed[next] = true;
            out.push(next);
        }
        out
    }

    /// Covering pairs `a ⋖ b`.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if self.lt(a, b) && !(0..n).any(|c| self.lt(a, c) && self.lt(c, b)) {
                    out.push((a, b));
                }
            }
        }
        out
    }
}

fn combine(ground: &GroundSet, set: &ElementSet, mode: Mode, principal: impl Fn(usize) -> u64) -> ElementSet {
    let bits = match mode {
        Mode::Common => set.iter().fold(ground.full_mask(), |acc, s| acc & principal(s)),
        Mode::Union => set.iter().fold(0, |acc, s| acc | principal(s)),
    };
    ElementSet::from_bits(ground, bits)
}

fn find_cycle(generators: &Relation, from: usize, to: usize) -> Vec<String> {
    let g = generators.ground();
    let mut path = shortest_path(generators, from, to);
    let back = shortest_path(generators, to, from);
    path.extend(back.into_iter().skip(1));
    path.into_iter().map(|i| g.label(i).to_string()).collect()
}

fn shortest_path(r: &Relation, from: usize, to: usize) -> Vec<usize> {
    let n = r.size();
    let mut prev = vec![usize::MAX; n];
    let mut queue = VecDeque::from([from]);
    prev[from] = from;
    while let Some(a) = queue.pop_front() {
        if a == to && a != from {
            break;
        }
        for b in iter_bits(r.row_bits(a)) {
            if prev[b] == usize::MAX {
                prev[b] = a;
                queue.push_back(b);
            }
        }
    }
    let mut path = vec![to];
    let mut cur = to;
    while cur != from {
        cur = prev[cur];
        path.push(cur);
    }
    path.reverse();
    path
}

impl fmt::Debug for PartialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = self.ground();
        let covers: Vec<String> = self
            .covers()
            .into_iter()
            .map(|(a, b)| format!("{}<{}", g.label(a), g.label(b)))
            .collect();
        write!(f, "PartialOrder({:?}; {})", g, covers.join(" "))
    }
}

/// A map `Y → A` given by its values.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OutcomeMap {
    domain: GroundSet,
    codomain: GroundSet,
    values: Vec<usize>,
}

impl OutcomeMap {
    pub fn new(domain: &GroundSet, codomain: &GroundSet, values: Vec<usize>) -> Result<Self> {
        if values.len() != domain.len() {
            return Err(Error::Shape(format!(
                "map has {} values for a domain of {}",
                values.len(),
                domain.len()
            )));
        }
        for &v in &values {
            codomain.check_index(v)?;
        }
        Ok(OutcomeMap {
            domain: domain.clone(),
            codomain: codomain.clone(),
            values,
        })
    }

    pub fn from_labels<S: AsRef<str>>(
        domain: &GroundSet,
        codomain: &GroundSet,
        labels: impl IntoIterator<Item = S>,
    ) -> Result<Self> {
        let values = labels
            .into_iter()
            .map(|l| codomain.index_of(l.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(domain, codomain, values)
    }

    pub fn domain(&self) -> &GroundSet {
        &self.domain
    }

    pub fn codomain(&self) -> &GroundSet {
        &self.codomain
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn get(&self, y: usize) -> usize {
        self.values[y]
    }

    pub fn image(&self) -> ElementSet {
        ElementSet::from_indices(&self.codomain, self.values.iter().copied()).expect("validated")
    }

    fn check_pair(&self, other: &OutcomeMap, order: &PartialOrder) -> Result<()> {
        self.domain.ensure_same(&other.domain)?;
        self.codomain.ensure_same(&other.codomain)?;
        self.codomain.ensure_same(order.ground())
    }
}

impl fmt::Debug for OutcomeMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .values
            .iter()
            .enumerate()
            .map(|(y, &a)| format!("{}↦{}", self.domain.label(y), self.codomain.label(a)))
            .collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// `φ ≤ ψ` pointwise in `ω`.
pub fn pointwise_leq(phi: &OutcomeMap, psi: &OutcomeMap, order: &PartialOrder) -> Result<bool> {
    phi.check_pair(psi, order)?;
    Ok(phi
        .values
        .iter()
        .zip(&psi.values)
        .all(|(&a, &b)| order.leq(a, b)))
}

/// `ψ⁻¹ ∘ ω ∘ φ = {(y₁, y₂) | φ(y₁) ≤ ψ(y₂)}`.
pub fn pullback(phi: &OutcomeMap, psi: &OutcomeMap, order: &PartialOrder) -> Result<Relation> {
    phi.check_pair(psi, order)?;
    let mut out = Relation::empty(&phi.domain);
    for (y1, &a) in phi.values.iter().enumerate() {
        let above = order.relation().row_bits(a);
        for (y2, &b) in psi.values.iter().enumerate() {
            if above >> b & 1 == 1 {
                out.insert(y1, y2);
            }
        }
    }
    Ok(out)
}
