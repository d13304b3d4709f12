//! Line-oriented text formats for decision problems, relations and morphisms.
//!
//! A problem file:
//!
//! ```text
//! # five-element lattice
//! outcomes: 0 a b c 1
//! order: 0<a 0<b 0<c a<1 b<1 c<1
//! strategies: x1 x2
//! states: y1 y2 y3
//! row x1: b c 0
//! row x2: 0 a 1
//! ```
//!
//! `#` starts a comment. List sections may continue on following lines. An
//! order item `u<v<w` is shorthand for `u<v v<w`; the reflexive-transitive
//! closure is taken. A relation file has one `yi yj` pair per line. A morphism
//! file has the target `outcomes:` and `order:` sections, one `map a -> b` line
//! per source outcome, and optionally the image table as `row` lines.

use std::collections::HashMap;
use std::fmt::{self, Write as _};

use crate::dmp::{Dmp, Morphism};
use crate::error::Error;
use crate::order::PartialOrder;
use crate::relation::{GroundSet, Relation};

/// A diagnostic, anchored to a 1-based line when one applies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: Option<usize>,
    pub message: String,
}

impl ParseError {
    fn at(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line: Some(line),
            message: message.into(),
        }
    }

    fn global(message: impl Into<String>) -> Self {
        ParseError {
            line: None,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(l) => write!(f, "line {l}: {}", self.message),
            None => f.write_str(&self.message),
        }
    }
}

impl std::error::Error for ParseError {}

type Parsed<T> = std::result::Result<T, ParseError>;

fn anchor(line: usize) -> impl Fn(Error) -> ParseError {
    move |e| ParseError::at(line, e.to_string())
}

#[derive(Debug, Clone)]
struct Token {
    text: String,
    line: usize,
}

#[derive(Debug)]
struct Section {
    line: usize,
    items: Vec<Token>,
}

#[derive(Debug)]
struct Row {
    line: usize,
    name: String,
    entries: Vec<Token>,
}

#[derive(Debug)]
struct MapLine {
    line: usize,
    from: String,
    to: String,
}

#[derive(Debug, Default)]
struct Document {
    sections: HashMap<&'static str, Section>,
    rows: Vec<Row>,
    maps: Vec<MapLine>,
}

impl Document {
    fn scan(text: &str, allowed: &[&'static str], allow_maps: bool) -> Parsed<Self> {
        let mut doc = Document::default();
        let mut open: Option<&'static str> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("");
            let mut tokens = content.split_whitespace();
            let Some(first) = tokens.next() else { continue };
            let rest = |tokens: std::str::SplitWhitespace<'_>| {
                tokens
                    .map(|t| Token {
                        text: t.to_string(),
                        line,
                    })
                    .collect::<Vec<_>>()
            };
            if first == "row" {
                let name = tokens
                    .next()
                    .and_then(|t| t.strip_suffix(':'))
                    .filter(|t| !t.is_empty())
                    .ok_or_else(|| ParseError::at(line, "expected `row <strategy>: <outcomes>`"))?;
                doc.rows.push(Row {
                    line,
                    name: name.to_string(),
                    entries: rest(tokens),
                });
                open = None;
            } else if first == "map" {
                if !allow_maps {
                    return Err(ParseError::at(line, "`map` lines belong in morphism files"));
                }
                let parts: Vec<&str> = tokens.collect();
                match parts.as_slice() {
                    [from, "->", to] => doc.maps.push(MapLine {
                        line,
                        from: from.to_string(),
                        to: to.to_string(),
                    }),
                    _ => return Err(ParseError::at(line, "expected `map <outcome> -> <outcome>`")),
                }
                open = None;
            } else if let Some(name) = first.strip_suffix(':') {
                let key = allowed
                    .iter()
                    .copied()
                    .find(|k| *k == name)
                    .ok_or_else(|| ParseError::at(line, format!("unknown section `{name}:`")))?;
                if let Some(prev) = doc.sections.get(key) {
                    return Err(ParseError::at(
                        line,
                        format!("duplicate section `{key}:` (first on line {})", prev.line),
                    ));
                }
                doc.sections.insert(
                    key,
                    Section {
                        line,
                        items: rest(tokens),
                    },
                );
                open = Some(key);
            } else if let Some(key) = open {
                let section = doc.sections.get_mut(key).expect("open section exists");
                section.items.push(Token {
                    text: first.to_string(),
                    line,
                });
                section.items.extend(rest(tokens));
            } else {
                return Err(ParseError::at(line, format!("unexpected `{first}` outside a section")));
            }
        }
        Ok(doc)
    }

    fn section(&self, key: &str) -> Parsed<&Section> {
        self.sections
            .get(key)
            .ok_or_else(|| ParseError::global(format!("missing section `{key}:`")))
    }

    fn ground(&self, key: &str) -> Parsed<GroundSet> {
        let s = self.section(key)?;
        for t in &s.items {
            if t.text.contains('<') || t.text.contains(':') {
                return Err(ParseError::at(t.line, format!("label `{}` may not contain `<` or `:`", t.text)));
            }
        }
        if let Some(dup) = s
            .items
            .iter()
            .enumerate()
            .find(|(i, t)| s.items[..*i].iter().any(|u| u.text == t.text))
        {
            return Err(ParseError::at(dup.1.line, format!("duplicate label `{}`", dup.1.text)));
        }
        GroundSet::new(s.items.iter().map(|t| t.text.as_str())).map_err(anchor(s.line))
    }

    fn order(&self, outcomes: &GroundSet) -> Parsed<PartialOrder> {
        let s = self.section("order")?;
        let mut pairs = Vec::new();
        for t in &s.items {
            let parts: Vec<&str> = t.text.split('<').collect();
            if parts.len() < 2 || parts.iter().any(|p| p.is_empty()) {
                return Err(ParseError::at(t.line, format!("bad order item `{}`, expected `u<v`", t.text)));
            }
            for w in parts.windows(2) {
                let lo = outcomes.index_of(w[0]).map_err(anchor(t.line))?;
                let hi = outcomes.index_of(w[1]).map_err(anchor(t.line))?;
                pairs.push((lo, hi));
            }
        }
        PartialOrder::from_index_pairs(outcomes, pairs).map_err(anchor(s.line))
    }

    /// Table rows in strategy order, each checked for arity and labels.
    fn table(&self, strategies: &GroundSet, states: &GroundSet, outcomes: &GroundSet) -> Parsed<Vec<usize>> {
        let mut by_strategy: Vec<Option<&Row>> = vec![None; strategies.len()];
        for row in &self.rows {
            let x = strategies.index_of(&row.name).map_err(anchor(row.line))?;
            if let Some(prev) = by_strategy[x] {
                return Err(ParseError::at(
                    row.line,
                    format!("duplicate row for `{}` (first on line {})", row.name, prev.line),
                ));
            }
            if row.entries.len() != states.len() {
                return Err(ParseError::at(
                    row.line,
                    format!(
                        "row `{}` has {} entries, expected {} (one per state)",
                        row.name,
                        row.entries.len(),
                        states.len()
                    ),
                ));
            }
            by_strategy[x] = Some(row);
        }
        let mut table = Vec::with_capacity(strategies.len() * states.len());
        for (x, row) in by_strategy.iter().enumerate() {
            let row = row.ok_or_else(|| {
                ParseError::at(
                    self.sections["strategies"].line,
                    format!("missing row for strategy `{}`", strategies.label(x)),
                )
            })?;
            for t in &row.entries {
                table.push(outcomes.index_of(&t.text).map_err(anchor(t.line))?);
            }
        }
        Ok(table)
    }
}

const DMP_SECTIONS: &[&str] = &["outcomes", "order", "strategies", "states"];
const MORPHISM_SECTIONS: &[&str] = &["outcomes", "order"];

/// Parses a decision problem.
pub fn parse_dmp(text: &str) -> Parsed<Dmp> {
    let doc = Document::scan(text, DMP_SECTIONS, false)?;
    for key in DMP_SECTIONS {
        doc.section(key)?;
    }
    let outcomes = doc.ground("outcomes")?;
    let order = doc.order(&outcomes)?;
    let strategies = doc.ground("strategies")?;
    let states = doc.ground("states")?;
    let table = doc.table(&strategies, &states, &outcomes)?;
    Dmp::new(strategies, states, order, table).map_err(|e| ParseError::global(e.to_string()))
}

/// Renders a problem in the format read by [`parse_dmp`]. The order is written
/// as its covering pairs.
pub fn render_dmp(dmp: &Dmp) -> String {
    let a = dmp.outcomes().ground();
    let mut out = String::new();
    let _ = writeln!(out, "outcomes: {}", a.labels().join(" "));
    let covers: Vec<String> = dmp
        .outcomes()
        .covers()
        .into_iter()
        .map(|(lo, hi)| format!("{}<{}", a.label(lo), a.label(hi)))
        .collect();
    if covers.is_empty() {
        out.push_str("order:\n");
    } else {
        let _ = writeln!(out, "order: {}", covers.join(" "));
    }
    let _ = writeln!(out, "strategies: {}", dmp.strategies().labels().join(" "));
    let _ = writeln!(out, "states: {}", dmp.states().labels().join(" "));
    for x in 0..dmp.strategies().len() {
        let row: Vec<&str> = (0..dmp.states().len()).map(|y| dmp.outcome_label(x, y)).collect();
        let _ = writeln!(out, "row {}: {}", dmp.strategies().label(x), row.join(" "));
    }
    out
}

/// Parses `yi yj` pair lines over the given states.
pub fn parse_relation(text: &str, states: &GroundSet) -> Parsed<Relation> {
    let mut rel = Relation::empty(states);
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        match tokens.as_slice() {
            [] => {}
            [a, b] => {
                let i = states.index_of(a).map_err(anchor(line))?;
                let j = states.index_of(b).map_err(anchor(line))?;
                rel.insert(i, j);
            }
            _ => return Err(ParseError::at(line, "expected a pair `<state> <state>`")),
        }
    }
    Ok(rel)
}

pub fn render_relation(rel: &Relation) -> String {
    let g = rel.ground();
    let mut out = String::new();
    for (i, j) in rel.pairs() {
        let _ = writeln!(out, "{} {}", g.label(i), g.label(j));
    }
    out
}

/// Parses a morphism out of `source`. Without `row` lines the image table is
/// computed; with them it must agree with the map.
pub fn parse_morphism(text: &str, source: &Dmp) -> Parsed<Morphism> {
    let doc = Document::scan(text, MORPHISM_SECTIONS, true)?;
    for key in MORPHISM_SECTIONS {
        doc.section(key)?;
    }
    let target_ground = doc.ground("outcomes")?;
    let target = doc.order(&target_ground)?;
    let src = source.outcomes().ground();

    let mut map: Vec<Option<(usize, usize)>> = vec![None; src.len()];
    for m in &doc.maps {
        let a = src.index_of(&m.from).map_err(anchor(m.line))?;
        let b = target_ground.index_of(&m.to).map_err(anchor(m.line))?;
        if let Some((_, prev)) = map[a] {
            return Err(ParseError::at(
                m.line,
                format!("`{}` is mapped twice (first on line {prev})", m.from),
            ));
        }
        map[a] = Some((b, m.line));
    }
    let mut values = Vec::with_capacity(src.len());
    for (a, entry) in map.iter().enumerate() {
        match entry {
            Some((b, _)) => values.push(*b),
            None => return Err(ParseError::global(format!("no `map` line for outcome `{}`", src.label(a)))),
        }
    }

    let morphism = source
        .apply_morphism(values.clone(), target.clone())
        .map_err(|e| ParseError::global(e.to_string()))?;
    if doc.rows.is_empty() {
        return Ok(morphism);
    }
    let table = doc.table(source.strategies(), source.states(), &target_ground)?;
    let image = Dmp::new(source.strategies().clone(), source.states().clone(), target, table)
        .map_err(|e| ParseError::global(e.to_string()))?;
    Morphism::new(source.clone(), image, values).map_err(|e| {
        let line = match &e {
            Error::TableMismatch { strategy, .. } => doc.rows.iter().find(|r| &r.name == strategy).map(|r| r.line),
            _ => None,
        };
        ParseError {
            line,
            message: e.to_string(),
        }
    })
}
