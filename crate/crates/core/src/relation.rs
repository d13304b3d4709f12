//! Finite binary relations on an indexed ground set.
//!
//! A [`Relation`] is a dense boolean matrix stored as one `u64` bit row per
//! element, so composition and inclusion tests run a word at a time. Ground
//! sets are capped at [`MAX_GROUND`] elements for that reason.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported ground set.
pub const MAX_GROUND: usize = 64;

#[derive(Debug)]
struct GroundInner {
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

/// An ordered list of distinct labels. Cloning is cheap.
///
/// Two ground sets are equal when their label lists are equal, whether or not
/// they share an allocation.
#[derive(Clone)]
pub struct GroundSet(Arc<GroundInner>);

impl GroundSet {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::EmptyGround);
        }
        if labels.len() > MAX_GROUND {
            return Err(Error::TooLarge {
                size: labels.len(),
                max: MAX_GROUND,
            });
        }
        let mut index = HashMap::with_capacity(labels.len());
        for (i, label) in labels.iter().enumerate() {
            if label.is_empty() || label.chars().any(char::is_whitespace) {
                return Err(Error::BadLabel(label.clone()));
            }
            if index.insert(label.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        Ok(GroundSet(Arc::new(GroundInner { labels, index })))
    }

    /// `prefix1 .. prefixN`, e.g. `y1, y2, y3`.
    pub fn numbered(prefix: &str, n: usize) -> Result<Self> {
        Self::new((1..=n).map(|i| format!("{prefix}{i}")))
    }

    pub fn len(&self) -> usize {
        self.0.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn labels(&self) -> &[String] {
        &self.0.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.0.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.0
            .index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn check_index(&self, index: usize) -> Result<usize> {
        if index < self.len() {
            Ok(index)
        } else {
            Err(Error::IndexOutOfRange {
                index,
                size: self.len(),
            })
        }
    }

    pub(crate) fn same_as(&self, other: &GroundSet) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.labels == other.0.labels
    }

    pub(crate) fn ensure_same(&self, other: &GroundSet) -> Result<()> {
        if self.same_as(other) {
            Ok(())
        } else {
            Err(Error::GroundMismatch {
                left: self.0.labels.join(" "),
                right: other.0.labels.join(" "),
            })
        }
    }

    /// Bit mask with one bit per element.
    pub(crate) fn full_mask(&self) -> u64 {
        mask_of(self.len())
    }
}

pub(crate) fn mask_of(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl PartialEq for GroundSet {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl Eq for GroundSet {}

impl PartialOrd for GroundSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GroundSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.labels.cmp(&other.0.labels)
    }
}

impl Hash for GroundSet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.labels.hash(state);
    }
}

impl fmt::Debug for GroundSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.labels.iter()).finish()
    }
}

/// A subset of a ground set.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementSet {
    ground: GroundSet,
    bits: u64,
}

impl ElementSet {
    pub fn empty(ground: &GroundSet) -> Self {
        ElementSet {
            ground: ground.clone(),
            bits: 0,
        }
    }

    pub fn full(ground: &GroundSet) -> Self {
        ElementSet {
            ground: ground.clone(),
            bits: ground.full_mask(),
        }
    }

    pub(crate) fn from_bits(ground: &GroundSet, bits: u64) -> Self {
        debug_assert_eq!(bits & !ground.full_mask(), 0);
        ElementSet {
            ground: ground.clone(),
            bits,
        }
    }

    pub fn from_indices(ground: &GroundSet, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut bits = 0;
        for i in indices {
            bits |= 1 << ground.check_index(i)?;
        }
        Ok(Self::from_bits(ground, bits))
    }

    pub fn from_labels<S: AsRef<str>>(
        ground: &GroundSet,
        labels: impl IntoIterator<Item = S>,
    ) -> Result<Self> {
        let mut bits = 0;
        for l in labels {
            bits |= 1 << ground.index_of(l.as_ref())?;
        }
        Ok(Self::from_bits(ground, bits))
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn contains(&self, i: usize) -> bool {
        i < 64 && self.bits >> i & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn is_full(&self) -> bool {
        self.bits == self.ground.full_mask()
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        Self::from_bits(&self.ground, self.bits & other.bits)
    }

    pub fn union(&self, other: &ElementSet) -> ElementSet {
        Self::from_bits(&self.ground, self.bits | other.bits)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        iter_bits(self.bits)
    }

    pub fn labels(&self) -> Vec<&str> {
        self.iter().map(|i| self.ground.label(i)).collect()
    }
}

impl fmt::Display for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.labels().join(", "))
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub(crate) fn iter_bits(mut bits: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if bits == 0 {
            None
        } else {
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(i)
        }
    })
}

/// Truth values of the structural predicates of a relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Classification {
    pub reflexive: bool,
    pub transitive: bool,
    pub antisymmetric: bool,
    pub preorder: bool,
    pub partial_order: bool,
    pub idempotent: bool,
    pub surjective: bool,
    pub total: bool,
}

/// First, second and reflexive projections of a relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Projections {
    pub first: ElementSet,
    pub second: ElementSet,
    pub diagonal: ElementSet,
}

/// A binary relation on a [`GroundSet`]: row `i` holds the set `{j | (i, j) ∈ ρ}`.
#[derive(Clone)]
pub struct Relation {
    ground: GroundSet,
    rows: Box<[u64]>,
}

impl Relation {
    pub fn empty(ground: &GroundSet) -> Self {
        Relation {
            ground: ground.clone(),
            rows: vec![0; ground.len()].into_boxed_slice(),
        }
    }

    /// The diagonal `Δ`.
    pub fn identity(ground: &GroundSet) -> Self {
        let mut r = Self::empty(ground);
        for i in 0..ground.len() {
            r.rows[i] = 1 << i;
        }
        r
    }

    /// `Y × Y`.
    pub fn full(ground: &GroundSet) -> Self {
        let mut r = Self::empty(ground);
        let m = ground.full_mask();
        r.rows.iter_mut().for_each(|row| *row = m);
        r
    }

    pub fn from_index_pairs(
        ground: &GroundSet,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let mut r = Self::empty(ground);
        for (i, j) in pairs {
            ground.check_index(i)?;
            ground.check_index(j)?;
            r.rows[i] |= 1 << j;
        }
        Ok(r)
    }

    pub fn from_pairs<S: AsRef<str>>(
        ground: &GroundSet,
        pairs: impl IntoIterator<Item = (S, S)>,
    ) -> Result<Self> {
        let mut r = Self::empty(ground);
        for (a, b) in pairs {
            let i = ground.index_of(a.as_ref())?;
            let j = ground.index_of(b.as_ref())?;
            r.rows[i] |= 1 << j;
        }
        Ok(r)
    }

    /// Builds the relation whose `(i, j)` cell is bit `i * n + j` of `code`.
    ///
    /// Only meaningful for `n * n <= 64`; used to enumerate all relations on
    /// small ground sets.
    pub fn from_code(ground: &GroundSet, code: u64) -> Self {
        let n = ground.len();
        assert!(n * n <= 64, "relation codes need n*n <= 64");
        let mut r = Self::empty(ground);
        let m = ground.full_mask();
        for i in 0..n {
            r.rows[i] = (code >> (i * n)) & m;
        }
        r
    }

    pub fn code(&self) -> u64 {
        let n = self.size();
        assert!(n * n <= 64, "relation codes need n*n <= 64");
        self.rows
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &row)| acc | row << (i * n))
    }

    /// Every relation on `ground`, in code order. Requires `|ground| <= 4`.
    pub fn all(ground: &GroundSet) -> Result<impl Iterator<Item = Relation> + '_> {
        let n = ground.len();
        if n > 4 {
            return Err(Error::Unsupported(format!(
                "enumerating all relations needs at most 4 elements, got {n}"
            )));
        }
        Ok((0..1u64 << (n * n)).map(move |c| Relation::from_code(ground, c)))
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.rows[i] >> j & 1 == 1
    }

    pub fn contains_labels(&self, a: &str, b: &str) -> Result<bool> {
        Ok(self.contains(self.ground.index_of(a)?, self.ground.index_of(b)?))
    }

    pub fn insert(&mut self, i: usize, j: usize) {
        self.rows[i] |= 1 << j;
    }

    pub fn remove(&mut self, i: usize, j: usize) {
        self.rows[i] &= !(1 << j);
    }

    pub fn row(&self, i: usize) -> ElementSet {
        ElementSet::from_bits(&self.ground, self.rows[i])
    }

    pub(crate) fn row_bits(&self, i: usize) -> u64 {
        self.rows[i]
    }

    pub fn len(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.iter().all(|&r| r == 0)
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, &row)| iter_bits(row).map(move |j| (i, j)))
    }

    /// `then ∘ first`: pairs `(a, c)` with some `b` such that `(a, b) ∈ first`
    /// and `(b, c) ∈ then`.
    pub fn compose(first: &Relation, then: &Relation) -> Result<Relation> {
        first.ground.ensure_same(&then.ground)?;
        Ok(Self::compose_unchecked(first, then))
    }

    pub(crate) fn compose_unchecked(first: &Relation, then: &Relation) -> Relation {
        let rows = first
            .rows
            .iter()
            .map(|&row| iter_bits(row).fold(0, |acc, j| acc | then.rows[j]))
            .collect();
        Relation {
            ground: first.ground.clone(),
            rows,
        }
    }

    pub fn inverse(&self) -> Relation {
        let mut r = Self::empty(&self.ground);
        for (i, j) in self.pairs() {
            r.rows[j] |= 1 << i;
        }
        r
    }

    pub fn union(&self, other: &Relation) -> Result<Relation> {
        self.zip_rows(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &Relation) -> Result<Relation> {
        self.zip_rows(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &Relation) -> Result<Relation> {
        self.zip_rows(other, |a, b| a & !b)
    }

    fn zip_rows(&self, other: &Relation, op: impl Fn(u64, u64) -> u64) -> Result<Relation> {
        self.ground.ensure_same(&other.ground)?;
        Ok(Relation {
            ground: self.ground.clone(),
            rows: self
                .rows
                .iter()
                .zip(other.rows.iter())
                .map(|(&a, &b)| op(a, b))
                .collect(),
        })
    }

    pub fn is_subset(&self, other: &Relation) -> Result<bool> {
        self.ground.ensure_same(&other.ground)?;
        Ok(self.is_subset_unchecked(other))
    }

    pub(crate) fn is_subset_unchecked(&self, other: &Relation) -> bool {
        self.rows
            .iter()
            .zip(other.rows.iter())
            .all(|(&a, &b)| a & !b == 0)
    }

    pub fn projections(&self) -> Projections {
        Projections {
            first: self.first_projection(),
            second: self.second_projection(),
            diagonal: self.diagonal(),
        }
    }

    pub fn first_projection(&self) -> ElementSet {
        let bits = self
            .rows
            .iter()
            .enumerate()
            .filter(|(_, &row)| row != 0)
            .fold(0, |acc, (i, _)| acc | 1 << i);
        ElementSet::from_bits(&self.ground, bits)
    }

    pub fn second_projection(&self) -> ElementSet {
        ElementSet::from_bits(&self.ground, self.rows.iter().fold(0, |acc, &r| acc | r))
    }

    /// Elements `y` with `(y, y)` in the relation.
    pub fn diagonal(&self) -> ElementSet {
        let bits = self
            .rows
            .iter()
            .enumerate()
            .filter(|(i, &row)| row >> i & 1 == 1)
            .fold(0, |acc, (i, _)| acc | 1 << i);
        ElementSet::from_bits(&self.ground, bits)
    }

    pub fn has_fixed_point(&self) -> bool {
        !self.diagonal().is_empty()
    }

    pub fn is_reflexive(&self) -> bool {
        self.diagonal().is_full()
    }

    pub fn is_transitive(&self) -> bool {
        Self::compose_unchecked(self, self).is_subset_unchecked(self)
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.pairs().all(|(i, j)| i == j || !self.contains(j, i))
    }

    pub fn is_symmetric(&self) -> bool {
        self.pairs().all(|(i, j)| self.contains(j, i))
    }

    pub fn is_idempotent(&self) -> bool {
        Self::compose_unchecked(self, self) == *self
    }

    pub fn is_preorder(&self) -> bool {
        self.is_reflexive() && self.is_transitive()
    }

    pub fn is_partial_order(&self) -> bool {
        self.is_preorder() && self.is_antisymmetric()
    }

    pub fn classify(&self) -> Classification {
        let square = Self::compose_unchecked(self, self);
        let reflexive = self.is_reflexive();
        let transitive = square.is_subset_unchecked(self);
        let antisymmetric = self.is_antisymmetric();
        Classification {
            reflexive,
            transitive,
            antisymmetric,
            preorder: reflexive && transitive,
            partial_order: reflexive && transitive && antisymmetric,
            idempotent: square == *self,
            surjective: self.second_projection().is_full(),
            total: self.first_projection().is_full(),
        }
    }

    /// Least transitive relation containing `self`.
    pub fn transitive_closure(&self) -> Relation {
        // Warshall, on bit rows.
        let mut r = self.clone();
        let n = r.size();
        for k in 0..n {
            let row_k = r.rows[k];
            for i in 0..n {
                if r.rows[i] >> k & 1 == 1 {
                    r.rows[i] |= row_k;
                }
            }
        }
        r
    }

    pub fn reflexive_transitive_closure(&self) -> Relation {
        let mut r = self.clone();
        for i in 0..r.size() {
            r.rows[i] |= 1 << i;
        }
        r.transitive_closure()
    }

    /// `ρ^k` under composition; `ρ^0 = Δ`.
    pub fn power(&self, k: usize) -> Relation {
        (0..k).fold(Self::identity(&self.ground), |acc, _| {
            Self::compose_unchecked(&acc, self)
        })
    }

    pub(crate) fn with_ground(&self, ground: &GroundSet) -> Relation {
        debug_assert_eq!(ground.len(), self.size());
        Relation {
            ground: ground.clone(),
            rows: self.rows.clone(),
        }
    }
}

impl PartialEq for Relation {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.ground == other.ground
    }
}

impl Eq for Relation {}

impl Hash for Relation {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.rows.hash(state);
    }
}

impl PartialOrd for Relation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by cardinality first, then by bit rows; ground sets break ties.
impl Ord for Relation {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.rows.cmp(&other.rows))
            .then_with(|| self.ground.cmp(&other.ground))
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, (i, j)) in self.pairs().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "({},{})", self.ground.label(i), self.ground.label(j))?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
