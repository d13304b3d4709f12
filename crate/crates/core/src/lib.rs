//! Derived preference relations for decision problems whose outcomes are only
//! partially ordered.
//!
//! A decision problem assigns an outcome `F(x, y)` to every strategy `x` and
//! state `y`. For a pair of strategies, the *state preference* is the relation
//! on states `{(y₁, y₂) | F(x₁, y₁) ≤ F(x₂, y₂)}`. Fixing a closed submonoid of
//! the monoid of relations on the states and asking whether the state
//! preference belongs to it yields a preorder on strategies; every regular
//! way of deriving preferences arises like this. Pareto domination,
//! β-domination, filter and dictator preferences are all special cases.
//!
//! Modules, bottom-up:
//!
//! * [`relation`]: finite binary relations as bit matrices.
//! * [`order`]: partial orders, outcome maps and the state-preference pullback.
//! * [`monoid`]: closed submonoids stored as antichains of minimal members.
//! * [`dmp`]: decision problems, derived preferences, α/β-domination and the
//!   axiom checkers.
//! * [`lattice`]: enumeration of the lattice of closed monoids, preference
//!   census, and the two-copies representation of an arbitrary relation.
//! * [`text`]: the line-oriented file formats.

pub mod dmp;
pub mod error;
pub mod lattice;
pub mod monoid;
pub mod order;
pub mod relation;
pub mod text;

pub use dmp::{check_regularity, Alpha, CharacteristicSets, Dmp, Morphism, Preference, Regularity, Suitability};
pub use error::{Error, Result};
pub use lattice::{atoms, canonical_catalog, enumerate_generated, preference_census, represent_relation, Census, MonoidLattice};
pub use monoid::{Canonical, ClosedMonoid, Violation};
pub use order::{pointwise_leq, pullback, Mode, OutcomeMap, PartialOrder};
pub use relation::{Classification, ElementSet, GroundSet, Relation};
