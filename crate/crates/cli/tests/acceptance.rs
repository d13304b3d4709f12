//! Acceptance suite. Runs without the libtest harness so that every
//! criterion prints exactly one PASS or FAIL line.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use prefmon::text::{parse_dmp, parse_morphism};
use prefmon::{
    canonical_catalog, check_regularity, pullback, represent_relation, Canonical, ClosedMonoid, Dmp, ElementSet,
    GroundSet, MonoidLattice, OutcomeMap, PartialOrder, Relation,
};
use prefmon_cli::fixtures;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 0x5eed_2024;
const CLOSED_MONOIDS_ON_TWO_STATES: usize = 16;

type Outcome = Result<String, String>;
type Criterion = (&'static str, &'static str, fn() -> Outcome);
type Cell<'a> = (&'a str, prefmon::Preference, &'a dyn Fn(usize, usize) -> bool);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

// ---------------------------------------------------------------- oracles

fn leq(g: &Dmp, a: usize, b: usize) -> bool {
    g.outcomes().relation().contains(a, b)
}

fn lt(g: &Dmp, a: usize, b: usize) -> bool {
    a != b && leq(g, a, b)
}

fn nx(g: &Dmp) -> usize {
    g.strategies().len()
}

fn ny(g: &Dmp) -> usize {
    g.states().len()
}

fn na(g: &Dmp) -> usize {
    g.outcomes().len()
}

/// `V_x = {a | a ≤ F(x, y) for every y}`.
fn guaranteed(g: &Dmp) -> Vec<BTreeSet<usize>> {
    (0..nx(g))
        .map(|x| (0..na(g)).filter(|&a| (0..ny(g)).all(|y| leq(g, a, g.outcome(x, y)))).collect())
        .collect()
}

/// Player 2 wants small outcomes: `V*_y = {a | F(x, y) ≤ a for every x}`.
fn guaranteed_dual(g: &Dmp) -> Vec<BTreeSet<usize>> {
    (0..ny(g))
        .map(|y| (0..na(g)).filter(|&a| (0..nx(g)).all(|x| leq(g, g.outcome(x, y), a))).collect())
        .collect()
}

fn greatest_by_inclusion(sets: &[BTreeSet<usize>]) -> Vec<usize> {
    (0..sets.len())
        .filter(|&i| sets.iter().all(|s| s.is_subset(&sets[i])))
        .collect()
}

fn labels(g: &Dmp, set: &BTreeSet<usize>) -> BTreeSet<String> {
    set.iter().map(|&a| g.outcomes().ground().label(a).to_string()).collect()
}

fn label_set(items: &[&str]) -> BTreeSet<String> {
    items.iter().map(|s| s.to_string()).collect()
}

fn union(sets: &[BTreeSet<usize>]) -> BTreeSet<usize> {
    sets.iter().flatten().copied().collect()
}

fn intersection(sets: &[BTreeSet<usize>], universe: usize) -> BTreeSet<usize> {
    (0..universe).filter(|a| sets.iter().all(|s| s.contains(a))).collect()
}

fn pareto_oracle(g: &Dmp, x1: usize, x2: usize) -> bool {
    (0..ny(g)).all(|y| leq(g, g.outcome(x1, y), g.outcome(x2, y)))
}

fn strict_pareto_oracle(g: &Dmp, x1: usize, x2: usize) -> bool {
    (0..ny(g)).all(|y| lt(g, g.outcome(x1, y), g.outcome(x2, y)))
}

/// `∀y ∃y'  F(x₁, y') ≤ F(x₂, y)`.
fn beta_oracle(g: &Dmp, x1: usize, x2: usize) -> bool {
    (0..ny(g)).all(|y| (0..ny(g)).any(|y1| leq(g, g.outcome(x1, y1), g.outcome(x2, y))))
}

/// `∀y ∃y'  F(x₁, y) ≤ F(x₂, y')`.
fn dual_beta_oracle(g: &Dmp, x1: usize, x2: usize) -> bool {
    (0..ny(g)).all(|y| (0..ny(g)).any(|y2| leq(g, g.outcome(x1, y), g.outcome(x2, y2))))
}

/// Pareto, or `F(x₁, y₁) ≤ F(x₂, y₂)` along every pair of `σ`.
fn idempotent_oracle(g: &Dmp, sigma: &Relation, x1: usize, x2: usize) -> bool {
    pareto_oracle(g, x1, x2) || sigma.pairs().all(|(y1, y2)| leq(g, g.outcome(x1, y1), g.outcome(x2, y2)))
}

/// Every derived pair `(x₁, x₂)` where `x₁` strictly dominates `x₂`.
fn suitability_oracle(g: &Dmp, prefers: impl Fn(usize, usize) -> bool) -> Option<(usize, usize)> {
    (0..nx(g))
        .flat_map(|a| (0..nx(g)).map(move |b| (a, b)))
        .find(|&(a, b)| prefers(a, b) && strict_pareto_oracle(g, b, a))
}

fn preorder_oracle(r: &Relation) -> bool {
    let n = r.size();
    (0..n).all(|i| r.contains(i, i))
        && (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| !(r.contains(i, j) && r.contains(j, k)) || r.contains(i, k))))
}

// ---------------------------------------------------------------- inputs

fn catalog() -> Vec<(&'static str, PartialOrder)> {
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

fn states(n: usize) -> GroundSet {
    GroundSet::numbered("y", n).unwrap()
}

fn all_tables(nx: usize, ny: usize, order: &PartialOrder) -> impl Iterator<Item = Dmp> + '_ {
    let cells = nx * ny;
    let k = order.len();
    let xs = GroundSet::numbered("x", nx).unwrap();
    let ys = states(ny);
    (0..k.pow(cells as u32)).map(move |mut code| {
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

fn random_order(rng: &mut impl Rng, n: usize, density: f64) -> PartialOrder {
    let g = GroundSet::numbered("a", n).unwrap();
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                pairs.push((i, j));
            }
        }
    }
    // relabel so that the generating edges do not always point upward by index
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    PartialOrder::from_index_pairs(&g, pairs.into_iter().map(|(i, j)| (perm[i], perm[j]))).unwrap()
}

fn random_dmp(rng: &mut impl Rng, nx: usize, ny: usize, order: &PartialOrder) -> Dmp {
    let table = (0..nx * ny).map(|_| rng.gen_range(0..order.len())).collect();
    Dmp::new(GroundSet::numbered("x", nx).unwrap(), states(ny), order.clone(), table).unwrap()
}

/// An isotone map out of `source` into a random order: the target order is
/// generated by the images of the source comparabilities plus random extras.
fn random_isotone(rng: &mut impl Rng, source: &PartialOrder) -> (Vec<usize>, PartialOrder) {
    let n = source.len();
    for _ in 0..50 {
        let m = rng.gen_range(1..=5);
        let map: Vec<usize> = (0..n).map(|_| rng.gen_range(0..m)).collect();
        let mut pairs: Vec<(usize, usize)> = source
            .relation()
            .pairs()
            .filter(|&(a, b)| map[a] != map[b])
            .map(|(a, b)| (map[a], map[b]))
            .collect();
        for i in 0..m {
            for j in 0..m {
                if i != j && rng.gen_bool(0.15) {
                    pairs.push((i, j));
                }
            }
        }
        let target = GroundSet::numbered("b", m).unwrap();
        if let Ok(order) = PartialOrder::from_index_pairs(&target, pairs) {
            return (map, order);
        }
    }
    let target = GroundSet::numbered("b", 1).unwrap();
    (vec![0; n], PartialOrder::trivial(&target))
}

// ---------------------------------------------------------------- criteria

fn coordinates(label: &str) -> (i64, i64) {
    let inner = label.trim_start_matches('(').trim_end_matches(')');
    let (p, q) = inner.split_once(',').unwrap();
    (p.parse().unwrap(), q.parse().unwrap())
}

/// The fixture order must be the componentwise order of the plane.
fn componentwise(g: &Dmp) -> Result<(), String> {
    let names = g.outcomes().ground();
    for a in 0..na(g) {
        for b in 0..na(g) {
            let (pa, qa) = coordinates(names.label(a));
            let (pb, qb) = coordinates(names.label(b));
            let expected = pa <= pb && qa <= qb;
            ensure!(
                leq(g, a, b) == expected,
                "fixture order disagrees with the plane at {} <= {}",
                names.label(a),
                names.label(b)
            );
        }
    }
    Ok(())
}

fn criterion_1a() -> Outcome {
    let g = parse_dmp(fixtures::EXAMPLE1).map_err(|e| e.to_string())?;
    let v = guaranteed(&g);
    ensure!(greatest_by_inclusion(&v).contains(&0), "x1 is not alpha-greatest");
    ensure!(g.alpha().greatest().contains(&0), "engine: x1 is not alpha-greatest");

    let v_star = guaranteed_dual(&g);
    ensure!(greatest_by_inclusion(&v_star) == [0], "y1 is not the alpha-greatest reply");
    ensure!(g.dualize().alpha().greatest() == [0], "engine: dualized alpha-greatest is not y1");

    let lower = union(&v);
    let u_y: Vec<BTreeSet<usize>> = (0..ny(&g))
        .map(|y| (0..na(&g)).filter(|&a| (0..nx(&g)).any(|x| leq(&g, a, g.outcome(x, y)))).collect())
        .collect();
    let upper = intersection(&u_y, na(&g));
    ensure!(labels(&g, &lower) == label_set(&["0"]), "V = {:?}", labels(&g, &lower));
    ensure!(labels(&g, &upper) == label_set(&["0"]), "U = {:?}", labels(&g, &upper));
    let cs = g.characteristic_sets();
    ensure!(cs.lower.iter().collect::<BTreeSet<_>>() == lower, "engine V differs");
    ensure!(cs.upper.iter().collect::<BTreeSet<_>>() == upper, "engine U differs");

    let saddles: Vec<(usize, usize)> = (0..nx(&g))
        .flat_map(|x| (0..ny(&g)).map(move |y| (x, y)))
        .filter(|&(x0, y0)| {
            let v = g.outcome(x0, y0);
            (0..nx(&g)).all(|x| leq(&g, g.outcome(x, y0), v)) && (0..ny(&g)).all(|y| leq(&g, v, g.outcome(x0, y)))
        })
        .collect();
    ensure!(saddles.is_empty(), "saddle points {saddles:?}");
    ensure!(g.saddle_points().is_empty(), "engine found saddle points");

    // the dual game: V* = ∪ V*_y, U* = ∩ U*_x with U*_x = {a | F(x, y) ≤ a for some y}
    let lower_star = union(&v_star);
    let u_star: Vec<BTreeSet<usize>> = (0..nx(&g))
        .map(|x| (0..na(&g)).filter(|&a| (0..ny(&g)).any(|y| leq(&g, g.outcome(x, y), a))).collect())
        .collect();
    let upper_star = intersection(&u_star, na(&g));
    ensure!(lower_star != upper_star, "V* = U*");
    ensure!(!g.dualize().characteristic_sets().has_generalized_value(), "engine: V* = U*");
    Ok(format!(
        "V = U = {{0}}, no saddle point, V* = {:?} differs from U* = {:?}",
        labels(&g, &lower_star),
        labels(&g, &upper_star)
    ))
}

fn criterion_1b() -> Outcome {
    let g = parse_dmp(fixtures::EXAMPLE2).map_err(|e| e.to_string())?;
    componentwise(&g)?;
    let before = greatest_by_inclusion(&guaranteed(&g));
    ensure!(before == [0], "alpha-greatest before: {before:?}");
    ensure!(g.alpha().greatest() == [0], "engine disagrees before");

    let m = parse_morphism(fixtures::EXAMPLE2_SUM, &g).map_err(|e| e.to_string())?;
    for a in 0..na(&g) {
        let (p, q) = coordinates(g.outcomes().ground().label(a));
        let image = m.target().outcomes().ground().label(m.map()[a]);
        ensure!(image == (p + q).to_string(), "map sends {a} to {image}, not p+q");
    }
    let h = m.target();
    let after = greatest_by_inclusion(&guaranteed(h));
    ensure!(after == [1], "alpha-greatest after: {after:?}");
    ensure!(h.alpha().greatest() == [1], "engine disagrees after");
    Ok("x1 alpha-greatest before p+q, only x2 after".into())
}

fn criterion_1c() -> Outcome {
    let g = parse_dmp(fixtures::EXAMPLE3).map_err(|e| e.to_string())?;
    componentwise(&g)?;
    let v = guaranteed(&g);
    ensure!(v[0] == v[1], "V_x1 = {:?}, V_x2 = {:?}", labels(&g, &v[0]), labels(&g, &v[1]));
    ensure!(strict_pareto_oracle(&g, 0, 1), "x2 does not strictly dominate x1");
    ensure!(g.strict_pareto().contains(0, 1), "engine strict Pareto lacks (x1,x2)");
    let alpha = g.alpha();
    ensure!(alpha.preference.prefers(1, 0), "alpha does not rank x1 with x2");
    ensure!(
        suitability_oracle(&g, |a, b| v[a].is_subset(&v[b])).is_some(),
        "oracle finds alpha suitable"
    );
    ensure!(!g.is_suitable(&alpha.preference).unwrap().holds(), "engine finds alpha suitable");
    Ok(format!("V_x1 = V_x2 = {:?} with x2 strictly dominating x1", labels(&g, &v[0])))
}

fn criterion_1d() -> Outcome {
    let g = parse_dmp(fixtures::EXAMPLE4).map_err(|e| e.to_string())?;
    ensure!(greatest_by_inclusion(&guaranteed(&g)) == [0], "x1 not alpha-greatest in G");
    ensure!(g.alpha().greatest() == [0], "engine: x1 not alpha-greatest in G");

    let ext = parse_dmp(fixtures::EXAMPLE4_EXTENDED).map_err(|e| e.to_string())?;
    let v = guaranteed(&ext);
    let shown: Vec<BTreeSet<String>> = v.iter().map(|s| labels(&ext, s)).collect();
    ensure!(shown[0] == label_set(&["0", "h", "b"]), "V_x1 = {:?}", shown[0]);
    ensure!(shown[1] == label_set(&["0", "g"]), "V_x2 = {:?}", shown[1]);
    ensure!(shown[2] == label_set(&["0"]), "V_x3 = {:?}", shown[2]);
    ensure!(!v[0].is_subset(&v[1]) && !v[1].is_subset(&v[0]), "x1 and x2 comparable");
    ensure!(ext.alpha().incomparable(0, 1), "engine: x1 and x2 comparable");
    Ok(format!("extended V sets {shown:?}; x1, x2 incomparable"))
}

fn criterion_2() -> Outcome {
    let mut problems = 0usize;
    let mut comparisons = 0usize;
    for ny in 1..=3 {
        let ys = states(ny);
        let reflexive = ClosedMonoid::canonical(&ys, &Canonical::Reflexive).unwrap();
        let surjective = ClosedMonoid::canonical(&ys, &Canonical::Surjective).unwrap();
        let total = ClosedMonoid::canonical(&ys, &Canonical::Total).unwrap();
        let both = ClosedMonoid::canonical(&ys, &Canonical::BetaBoth).unwrap();
        let idempotents: Vec<(Relation, ClosedMonoid)> = if ny == 2 {
            Relation::all(&ys)
                .unwrap()
                .filter(|s| Relation::compose(s, s).unwrap() == *s)
                .map(|s| {
                    let m = ClosedMonoid::canonical(&ys, &Canonical::Idempotent(s.clone())).unwrap();
                    (s, m)
                })
                .collect()
        } else {
            Vec::new()
        };
        for (name, order) in catalog() {
            for g in all_tables(2, ny, &order) {
                problems += 1;
                let checks: [Cell; 8] = [
                    ("reflexive", g.derive(&reflexive).unwrap(), &|a, b| pareto_oracle(&g, a, b)),
                    ("pareto", g.pareto(), &|a, b| pareto_oracle(&g, a, b)),
                    ("surjective", g.derive(&surjective).unwrap(), &|a, b| beta_oracle(&g, a, b)),
                    ("beta formula", g.beta_explicit(), &|a, b| beta_oracle(&g, a, b)),
                    ("total", g.derive(&total).unwrap(), &|a, b| dual_beta_oracle(&g, a, b)),
                    ("dual beta formula", g.dual_beta_explicit(), &|a, b| dual_beta_oracle(&g, a, b)),
                    ("beta-both", g.derive(&both).unwrap(), &|a, b| {
                        beta_oracle(&g, a, b) && dual_beta_oracle(&g, a, b)
                    }),
                    ("beta-both formula", g.beta_both_explicit(), &|a, b| {
                        beta_oracle(&g, a, b) && dual_beta_oracle(&g, a, b)
                    }),
                ];
                for (what, pref, oracle) in &checks {
                    for a in 0..2 {
                        for b in 0..2 {
                            comparisons += 1;
                            ensure!(
                                pref.prefers(a, b) == oracle(a, b),
                                "{what} on {name}, |Y| = {ny}, table {:?}, pair ({a},{b})",
                                g.table()
                            );
                        }
                    }
                }
                for (sigma, monoid) in &idempotents {
                    let pref = g.derive(monoid).unwrap();
                    for a in 0..2 {
                        for b in 0..2 {
                            comparisons += 1;
                            ensure!(
                                pref.prefers(a, b) == idempotent_oracle(&g, sigma, a, b),
                                "idempotent {sigma:?} on {name}, table {:?}, pair ({a},{b})",
                                g.table()
                            );
                        }
                    }
                }
            }
        }
    }
    Ok(format!("{problems} problems, {comparisons} cells, 0 mismatches"))
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut pools: Vec<Vec<ClosedMonoid>> = Vec::new();
    for n in 2..=3 {
        let ys = states(n);
        let mut pool: Vec<ClosedMonoid> = if n == 2 {
            MonoidLattice::enumerate_exhaustive(&ys).unwrap().elements().to_vec()
        } else {
            canonical_catalog(&ys).into_iter().map(|(_, m)| m).collect()
        };
        if n == 3 {
            for _ in 0..8 {
                let code = rng.gen_range(0..1u64 << 9);
                pool.push(ClosedMonoid::closure(&ys, &[Relation::from_code(&ys, code)]).unwrap());
            }
        }
        pools.push(pool);
    }

    const CASES: usize = 1200;
    let mut premises = 0usize;
    for case in 0..CASES {
        let ny = rng.gen_range(2..=3);
        let monoid = pools[ny - 2].choose(&mut rng).unwrap();
        let (n_out, n_str) = (rng.gen_range(1..=5), rng.gen_range(2..=4));
        let order = random_order(&mut rng, n_out, 0.4);
        let g = random_dmp(&mut rng, n_str, ny, &order);

        let pref = g.derive(monoid).unwrap();
        ensure!(preorder_oracle(pref.relation()), "case {case}: not a preorder");
        for a in 0..nx(&g) {
            for b in 0..nx(&g) {
                ensure!(
                    !pareto_oracle(&g, a, b) || pref.prefers(a, b),
                    "case {case}: Pareto pair ({a},{b}) missing"
                );
            }
        }

        let (map, target) = random_isotone(&mut rng, &order);
        let morphism = g.apply_morphism(map, target).unwrap();
        let witness = morphism.check_functoriality(monoid).unwrap();
        ensure!(witness.is_none(), "case {case}: preference shrinks along a morphism at {witness:?}");
        let after = morphism.target().derive(monoid).unwrap();
        ensure!(pref.is_subset(&after).unwrap(), "case {case}: inclusion fails");

        // a second problem realizing the same state preference on fresh outcomes
        let (x1, x2) = (rng.gen_range(0..nx(&g)), rng.gen_range(0..nx(&g)));
        let sigma = g.state_preference(x1, x2).unwrap();
        let (omega, phi, psi) = represent_relation(&sigma).unwrap();
        let table: Vec<usize> = phi.values().iter().chain(psi.values()).copied().collect();
        let h = Dmp::new(GroundSet::numbered("x", 2).unwrap(), g.states().clone(), omega, table).unwrap();
        let reg = check_regularity(&g, (x1, x2), &h, (0, 1), monoid).unwrap();
        ensure!(reg.premise, "case {case}: constructed instance has a different state preference");
        ensure!(reg.holds, "case {case}: regularity fails");
        premises += 1;
    }
    Ok(format!("{CASES} cases, {premises} regularity instances, 0 counterexamples"))
}

fn criterion_4() -> Outcome {
    let mut counts = Vec::new();
    for n in 2..=3 {
        let ys = states(n);
        let mut count = 0;
        for sigma in Relation::all(&ys).unwrap() {
            let (omega, phi, psi) = represent_relation(&sigma).unwrap();
            ensure!(omega.relation().is_partial_order(), "omega not a partial order for {sigma:?}");
            let back = pullback(&phi, &psi, &omega).unwrap();
            ensure!(back == sigma, "round trip of {sigma:?} gave {back:?}");
            // the pullback read off cell by cell
            for y1 in 0..n {
                for y2 in 0..n {
                    let direct = omega.relation().contains(phi.get(y1), psi.get(y2));
                    ensure!(direct == sigma.contains(y1, y2), "cell ({y1},{y2}) of {sigma:?}");
                }
            }
            count += 1;
        }
        counts.push(count);
    }
    ensure!(counts == [16, 512], "relation counts {counts:?}");
    Ok("16 + 512 relations recovered exactly".into())
}

fn criterion_5() -> Outcome {
    let ys = states(2);
    let start = Instant::now();
    let lattice = MonoidLattice::enumerate_exhaustive(&ys).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure!(
        lattice.len() == CLOSED_MONOIDS_ON_TWO_STATES,
        "{} closed monoids, expected {CLOSED_MONOIDS_ON_TWO_STATES}",
        lattice.len()
    );
    let canon = |k: Canonical| ClosedMonoid::canonical(&ys, &k).unwrap();
    let least = lattice.least().ok_or("no least element")?;
    let greatest = lattice.greatest().ok_or("no greatest element")?;
    ensure!(lattice.elements()[least] == canon(Canonical::Reflexive), "least is not reflexive");
    ensure!(lattice.elements()[greatest] == canon(Canonical::Universal), "greatest is not universal");

    let dual_atoms: BTreeSet<&ClosedMonoid> = lattice.dual_atoms().iter().map(|&i| &lattice.elements()[i]).collect();
    let expected = [
        canon(Canonical::Surjective),
        canon(Canonical::Total),
        canon(Canonical::Dictator(0)),
        canon(Canonical::Dictator(1)),
    ];
    ensure!(
        dual_atoms == expected.iter().collect::<BTreeSet<_>>(),
        "dual atoms {:?}",
        lattice.dual_atoms().iter().map(|&i| lattice.name(i)).collect::<Vec<_>>()
    );
    // brute force: dual atoms are exactly the elements covered by universal
    for i in 0..lattice.len() {
        let coatom = i != greatest
            && (0..lattice.len()).all(|j| j == i || j == greatest || !(lattice.leq(i, j) && i != j));
        ensure!(coatom == lattice.dual_atoms().contains(&i), "coatom mismatch at {}", lattice.name(i));
    }
    for y in 0..2 {
        let atom = canon(Canonical::Atom(y));
        let i = lattice.index_of(&atom).ok_or("atom missing")?;
        ensure!(lattice.lower_covers(i) == [least], "atom {y} does not cover the least element");
        ensure!(lattice.atoms().contains(&i), "atom {y} not listed");
    }
    ensure!(lattice.atoms().len() == 2, "{} atoms", lattice.atoms().len());
    ensure!(elapsed < Duration::from_secs(5), "enumeration took {elapsed:?}");
    Ok(format!("{} closed monoids in {elapsed:.2?}", lattice.len()))
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 6);

    for case in 0..500 {
        let ny = rng.gen_range(1..=4);
        let ys = states(ny);
        let mut base: Vec<usize> = (0..ny).filter(|_| rng.gen_bool(0.5)).collect();
        if base.is_empty() {
            base.push(rng.gen_range(0..ny));
        }
        let monoid = ClosedMonoid::canonical(&ys, &Canonical::Filter(ElementSet::from_indices(&ys, base.clone()).unwrap()))
            .unwrap();
        let (n_out, n_str) = (rng.gen_range(1..=6), rng.gen_range(2..=5));
        let order = random_order(&mut rng, n_out, 0.5);
        let g = random_dmp(&mut rng, n_str, ny, &order);
        let pref = g.derive(&monoid).unwrap();
        let found = suitability_oracle(&g, |a, b| pref.prefers(a, b));
        ensure!(found.is_none(), "filter {base:?}, case {case}: unsuitable at {found:?}");
        ensure!(g.is_suitable(&pref).unwrap().holds(), "engine: filter {base:?} case {case}");
    }

    let ys = states(2);
    let lattice = MonoidLattice::enumerate_exhaustive(&ys).unwrap();
    let non_universal: Vec<&ClosedMonoid> = lattice.elements().iter().filter(|m| !m.is_universal()).collect();
    ensure!(non_universal.len() == CLOSED_MONOIDS_ON_TWO_STATES - 1, "non-universal count");
    let mut tested = 0;
    for case in 0..300 {
        let (n_out, n_str) = (rng.gen_range(1..=7), rng.gen_range(2..=5));
        let order = random_order(&mut rng, n_out, 0.5);
        let g = random_dmp(&mut rng, n_str, 2, &order);
        for m in &non_universal {
            let pref = g.derive(m).unwrap();
            let found = suitability_oracle(&g, |a, b| pref.prefers(a, b));
            ensure!(found.is_none(), "{} on case {case}: unsuitable at {found:?}", m.signature());
            ensure!(g.is_suitable(&pref).unwrap().holds(), "engine: {} on case {case}", m.signature());
            tested += 1;
        }
    }

    let mut descents = 0;
    // the chain argument: with longest chain of k elements, k strict steps never exist
    for case in 0..300 {
        let n_out = rng.gen_range(1..=7);
        let order = random_order(&mut rng, n_out, 0.5);
        let k = order.longest_chain();
        let strict = order.strict_part();
        ensure!(!strict.power(k - 1).is_empty(), "case {case}: chain of {k} not realized");
        let steps = strict.power(k);
        ensure!(steps.is_empty(), "case {case}: strict^{k} non-empty");
        let ny = rng.gen_range(1..=3);
        let ys = states(ny);
        let a = order.ground();
        let phi = OutcomeMap::new(&ys, a, (0..ny).map(|_| rng.gen_range(0..order.len())).collect()).unwrap();
        let psi = OutcomeMap::new(&ys, a, (0..ny).map(|_| rng.gen_range(0..order.len())).collect()).unwrap();
        let pattern: Vec<(usize, usize)> = (0..ny)
            .flat_map(|y1| (0..ny).map(move |y2| (y1, y2)))
            .filter(|&(y1, y2)| steps.contains(phi.get(y1), psi.get(y2)))
            .collect();
        ensure!(pattern.is_empty(), "case {case}: pattern {pattern:?}");

        // a pointwise strictly smaller ψ is never accepted by a non-universal monoid
        if ny == 2 {
            let below: Vec<Vec<usize>> = (0..2)
                .map(|y| (0..order.len()).filter(|&b| order.lt(b, phi.get(y))).collect())
                .collect();
            if below.iter().all(|v| !v.is_empty()) {
                let lower: Vec<usize> = below.iter().map(|v| *v.choose(&mut rng).unwrap()).collect();
                let psi = OutcomeMap::new(&ys, a, lower).unwrap();
                let rho = pullback(&phi, &psi, &order).unwrap();
                descents += 1;
                for m in &non_universal {
                    ensure!(!m.contains(&rho).unwrap(), "case {case}: {} accepts a strict descent", m.signature());
                }
            }
        }
    }
    ensure!(descents > 0, "no strict descents sampled");
    Ok(format!(
        "500 filter cases, {tested} monoid-problem pairs, 300 chain checks, {descents} strict descents rejected"
    ))
}

fn criterion_7() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_prefmon");
    let out = Command::new(bin).arg("anomalies").output().map_err(|e| e.to_string())?;
    let text = String::from_utf8_lossy(&out.stdout);
    ensure!(out.status.code() == Some(0), "anomalies exit {:?}", out.status.code());
    ensure!(text.contains("4/4 scenarios pass"), "anomalies output:\n{text}");

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut bytes = Vec::new();
    for run in 0..2 {
        let path = dir.path().join(format!("run{run}.dot"));
        let out = Command::new(bin)
            .args(["lattice", "--states", "2", "--dot"])
            .arg(&path)
            .output()
            .map_err(|e| e.to_string())?;
        ensure!(out.status.code() == Some(0), "lattice exit {:?}", out.status.code());
        bytes.push(std::fs::read(&path).map_err(|e| e.to_string())?);
    }
    ensure!(!bytes[0].is_empty() && bytes[0] == bytes[1], "DOT output differs between runs");

    let cycle = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/cycle.dmp");
    let out = Command::new(bin).args(["validate", "--dmp", cycle]).output().map_err(|e| e.to_string())?;
    ensure!(out.status.code() == Some(2), "validate exit {:?}", out.status.code());
    ensure!(
        String::from_utf8_lossy(&out.stderr).contains("cycle"),
        "validate stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    Ok(format!("anomalies 4/4, DOT stable ({} bytes), cycle rejected with 2", bytes[0].len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("1a", "example 1 golden values", criterion_1a),
        ("1b", "example 2 convolution", criterion_1b),
        ("1c", "example 3 alpha not suitable", criterion_1c),
        ("1d", "example 4 extension", criterion_1d),
        ("2", "monoid formulas, exhaustive", criterion_2),
        ("3", "functor properties, randomized", criterion_3),
        ("4", "relation representation, exhaustive", criterion_4),
        ("5", "lattice on two states", criterion_5),
        ("6", "suitability results", criterion_6),
        ("7", "command line contract", criterion_7),
    ];
    let mut failed = 0;
    for (id, title, run) in criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS criterion {id} ({title}): {detail} [{secs:.2}s]"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {id} ({title}): {why} [{secs:.2}s]");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
