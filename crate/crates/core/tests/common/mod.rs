#![allow(dead_code)]

use prefmon::{Dmp, GroundSet, PartialOrder, Relation};
use rand::Rng;

pub fn states(n: usize) -> GroundSet {
    GroundSet::numbered("y", n).unwrap()
}

/// Small posets: chain, antichain, diamond, V (one bottom) and Λ (one top).
pub fn catalog() -> Vec<(&'static str, PartialOrder)> {
    let g3 = GroundSet::new(["p", "q", "r"]).unwrap();
    let g4 = GroundSet::new(["0", "a", "b", "1"]).unwrap();
    vec![
        ("chain", PartialOrder::chain(&g3)),
        ("antichain", PartialOrder::trivial(&g3)),
        (
            "diamond",
            PartialOrder::from_comparabilities(&g4, [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")]).unwrap(),
        ),
        ("V", PartialOrder::from_comparabilities(&g3, [("p", "q"), ("p", "r")]).unwrap()),
        ("Λ", PartialOrder::from_comparabilities(&g3, [("p", "r"), ("q", "r")]).unwrap()),
    ]
}

/// A random order on `n` labelled points, generated by forward edges.
pub fn random_order(rng: &mut impl Rng, n: usize) -> PartialOrder {
    let g = GroundSet::numbered("a", n).unwrap();
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(0.35) {
                pairs.push((i, j));
            }
        }
    }
    PartialOrder::from_index_pairs(&g, pairs).unwrap()
}

pub fn random_dmp(rng: &mut impl Rng, nx: usize, ny: usize, order: &PartialOrder) -> Dmp {
    let table = (0..nx * ny).map(|_| rng.gen_range(0..order.len())).collect();
    Dmp::new(
        GroundSet::numbered("x", nx).unwrap(),
        states(ny),
        order.clone(),
        table,
    )
    .unwrap()
}

/// Every table of shape `nx × ny` over the given order.
pub fn all_dmps(nx: usize, ny: usize, order: &PartialOrder) -> impl Iterator<Item = Dmp> + '_ {
    let cells = nx * ny;
    let k = order.len();
    let total = k.pow(cells as u32);
    let xs = GroundSet::numbered("x", nx).unwrap();
    let ys = states(ny);
    (0..total).map(move |mut code| {
        let table = (0..cells)
            .map(|_| {
                let v = code % k;
                code /= k;
                v
            })
            .collect();
        Dmp::new(xs.clone(), ys.clone(), order.clone(), table).unwrap()
    })
}

/// Composition straight from the definition: `(a, c)` when some `b` links them.
pub fn compose_oracle(first: &Relation, then: &Relation) -> Relation {
    let g = first.ground();
    let n = g.len();
    let mut out = Relation::empty(g);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if first.contains(a, b) && then.contains(b, c) {
                    out.insert(a, c);
                }
            }
        }
    }
    out
}

/// `{(y₁, y₂) | F(x₁, y₁) ≤ F(x₂, y₂)}`, cell by cell.
pub fn state_preference_oracle(g: &Dmp, x1: usize, x2: usize) -> Relation {
    let n = g.states().len();
    let mut out = Relation::empty(g.states());
    for y1 in 0..n {
        for y2 in 0..n {
            if g.outcomes().leq(g.outcome(x1, y1), g.outcome(x2, y2)) {
                out.insert(y1, y2);
            }
        }
    }
    out
}

/// Derived preference with monoid membership given as a predicate.
pub fn derive_oracle(g: &Dmp, member: impl Fn(&Relation) -> bool) -> Relation {
    let n = g.strategies().len();
    let mut out = Relation::empty(g.strategies());
    for x1 in 0..n {
        for x2 in 0..n {
            if member(&state_preference_oracle(g, x1, x2)) {
                out.insert(x1, x2);
            }
        }
    }
    out
}
