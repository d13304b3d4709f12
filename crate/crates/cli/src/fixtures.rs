//! The embedded anomaly corpus.

pub const EXAMPLE1: &str = include_str!("../fixtures/example1.dmp");
pub const EXAMPLE2: &str = include_str!("../fixtures/example2.dmp");
pub const EXAMPLE2_SUM: &str = include_str!("../fixtures/example2-sum.morph");
pub const EXAMPLE3: &str = include_str!("../fixtures/example3.dmp");
pub const EXAMPLE4: &str = include_str!("../fixtures/example4.dmp");
pub const EXAMPLE4_EXTENDED: &str = include_str!("../fixtures/example4-extended.dmp");
pub const CYCLE: &str = include_str!("../fixtures/cycle.dmp");
