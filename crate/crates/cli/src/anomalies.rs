//! Four problems on which guaranteed-outcome reasoning misbehaves.

use std::fmt::Write as _;

use prefmon::text::{parse_dmp, parse_morphism};
use prefmon::{Dmp, ElementSet};

use crate::fixtures;

#[derive(Debug, Clone)]
pub struct Check {
    pub claim: String,
    pub pass: bool,
}

#[derive(Debug, Clone)]
pub struct Scenario {
    pub name: &'static str,
    pub notes: Vec<String>,
    pub checks: Vec<Check>,
}

impl Scenario {
    fn new(name: &'static str) -> Self {
        Scenario {
            name,
            notes: Vec::new(),
            checks: Vec::new(),
        }
    }

    fn check(&mut self, claim: impl Into<String>, pass: bool) {
        self.checks.push(Check {
            claim: claim.into(),
            pass,
        });
    }

    fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

fn parse(text: &str) -> Dmp {
    parse_dmp(text).expect("embedded fixture parses")
}

fn labels(dmp: &Dmp, xs: &[usize]) -> String {
    let names: Vec<&str> = xs.iter().map(|&x| dmp.strategies().label(x)).collect();
    format!("{{{}}}", names.join(", "))
}

fn guaranteed(dmp: &Dmp) -> String {
    let alpha = dmp.alpha();
    let parts: Vec<String> = alpha
        .guaranteed
        .iter()
        .enumerate()
        .map(|(x, v)| format!("V_{} = {v}", dmp.strategies().label(x)))
        .collect();
    parts.join(", ")
}

fn set(dmp: &Dmp, labels: &[&str]) -> ElementSet {
    ElementSet::from_labels(dmp.outcomes().ground(), labels).expect("fixture labels")
}

pub fn example1() -> Scenario {
    let mut s = Scenario::new("example 1: no saddle point, value not self-dual");
    let g = parse(fixtures::EXAMPLE1);
    s.note(guaranteed(&g));
    let greatest = g.alpha().greatest();
    s.note(format!("alpha-greatest for player 1: {}", labels(&g, &greatest)));
    s.check("x1 is alpha-greatest for player 1", greatest.contains(&0));

    let d = g.dualize();
    let dual_greatest = d.alpha().greatest();
    s.note(format!("alpha-greatest for player 2: {}", labels(&d, &dual_greatest)));
    s.check("y1 is alpha-greatest for player 2", dual_greatest == [0]);

    let cs = g.characteristic_sets();
    s.note(format!("V = {}, U = {}", cs.lower, cs.upper));
    let zero = set(&g, &["0"]);
    s.check("V = U = {0}", cs.lower == zero && cs.upper == zero);

    let saddles = g.saddle_points();
    if saddles.is_empty() {
        s.note("no saddle points");
    }
    s.check("no saddle points", saddles.is_empty());

    let dcs = d.characteristic_sets();
    s.note(format!("V* = {}, U* = {}", dcs.lower, dcs.upper));
    s.check("V* != U*", !dcs.has_generalized_value());
    s
}

pub fn example2() -> Scenario {
    let mut s = Scenario::new("example 2: alpha-optimality not preserved by a homomorphic image");
    let g = parse(fixtures::EXAMPLE2);
    s.note(guaranteed(&g));
    let before = g.alpha().greatest();
    s.check("x1 is the alpha-greatest strategy before convolution", before == [0]);

    let m = parse_morphism(fixtures::EXAMPLE2_SUM, &g).expect("embedded morphism parses");
    let h = m.target();
    s.note(format!("after (p,q) -> p+q: {}", guaranteed(h)));
    let after = h.alpha().greatest();
    s.check("x2 is the alpha-greatest strategy after convolution", after == [1]);
    s
}

pub fn example3() -> Scenario {
    let mut s = Scenario::new("example 3: alpha-equivalence despite strict domination");
    let g = parse(fixtures::EXAMPLE3);
    s.note(guaranteed(&g));
    let alpha = g.alpha();
    s.check("V_x1 = V_x2", alpha.guaranteed[0] == alpha.guaranteed[1]);
    s.check("x2 strictly Pareto-dominates x1", g.strict_pareto().contains(0, 1));
    let suit = g.is_suitable(&alpha.preference).expect("same strategies");
    if let Some((x1, x2)) = suit.witness {
        s.note(format!(
            "alpha ranks {} at least as high as {}, which strictly dominates it",
            g.strategies().label(x2),
            g.strategies().label(x1)
        ));
    }
    s.check("alpha-domination is not suitable", !suit.holds());
    s
}

pub fn example4() -> Scenario {
    let mut s = Scenario::new("example 4: alpha-optimality lost by adding unrealized outcomes");
    let g = parse(fixtures::EXAMPLE4);
    s.note(guaranteed(&g));
    s.check("x1 is the alpha-greatest strategy", g.alpha().greatest() == [0]);

    let ext = parse(fixtures::EXAMPLE4_EXTENDED);
    let alpha = ext.alpha();
    s.note(format!("extended: {}", guaranteed(&ext)));
    let incomparable = alpha.incomparable(0, 1);
    if incomparable {
        s.note("x1 and x2 are incomparable with respect to alpha-domination");
    }
    s.check("x1 and x2 are alpha-incomparable in the extension", incomparable);
    s.check("no alpha-greatest strategy in the extension", alpha.greatest().is_empty());
    s
}

pub fn run_all() -> Vec<Scenario> {
    vec![example1(), example2(), example3(), example4()]
}

pub fn render(scenarios: &[Scenario]) -> String {
    let mut out = String::new();
    for s in scenarios {
        let _ = writeln!(out, "[{}] {}", if s.passed() { "PASS" } else { "FAIL" }, s.name);
        for n in &s.notes {
            let _ = writeln!(out, "    {n}");
        }
        for c in &s.checks {
            let _ = writeln!(out, "    {} {}", if c.pass { "ok  " } else { "FAIL" }, c.claim);
        }
    }
    let passed = scenarios.iter().filter(|s| s.passed()).count();
    let _ = writeln!(out, "{passed}/{} scenarios pass", scenarios.len());
    out
}
