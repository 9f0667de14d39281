//! DOT and JSON pictures of a window of the AR quiver.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

use serde::Serialize;

use crate::error::Result;
use crate::gentle::GldimClass;
use crate::strings::word_text;

use super::{ArCoordinate, Chart, Family, Hammocks};

impl Chart {
    /// Name of the AR component containing `c`, e.g. `X^0`, `X^1_inf`, `Z~^0` for a ladder.
    pub fn component(&self, c: &ArCoordinate) -> String {
        let k = c.k;
        let ladder = self.regime() == GldimClass::Infinite;
        match c.family {
            Family::X => format!("X^{k}"),
            Family::Y => format!("Y^{k}"),
            Family::Z => format!("Z^{k}"),
            Family::Xinf if ladder => format!("Z~^{k}"),
            Family::ZLadder => format!("Z~^{k}"),
            Family::Xinf => format!("X^{k}_inf"),
            Family::XminusInf => format!("X^{k}_-inf"),
            Family::Yinf => format!("Y^{k}_inf"),
            Family::YminusInf => format!("Y^{k}_-inf"),
            Family::Zinf => format!("Z^{k}_inf"),
        }
    }

    /// Irreducible maps between members of `window`: mesh arrows, and the arrows along
    /// the components of linear type.
    pub fn arrows(&self, window: &[ArCoordinate]) -> BTreeSet<(ArCoordinate, ArCoordinate)> {
        let inside: BTreeSet<ArCoordinate> = window.iter().copied().collect();
        let mut out = BTreeSet::new();
        for c in window {
            if let Ok(m) = self.mesh(c) {
                for t in &m.targets {
                    out.insert((*c, *t));
                    out.insert((*t, m.third));
                }
            }
            let next = match c.family {
                Family::Xinf => Some(ArCoordinate::x_inf(c.k, c.i + 1)),
                Family::XminusInf => Some(ArCoordinate::x_minus_inf(c.k, c.j + 1)),
                Family::Yinf => Some(ArCoordinate::y_inf(c.k, c.j + 1)),
                Family::YminusInf => Some(ArCoordinate::y_minus_inf(c.k, c.i + 1)),
                _ => None,
            };
            if let Some(n) = next {
                out.insert((*c, n));
            }
        }
        out.retain(|(a, b)| inside.contains(a) && inside.contains(b));
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NodeJson {
    pub id: String,
    pub component: String,
    pub word: String,
    pub offset: i64,
    pub compact: bool,
    /// Member of the shaded hammock, if one was requested.
    pub shaded: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuiverJson {
    pub algebra: String,
    pub chart: String,
    pub bound: i64,
    pub hammock_of: Option<String>,
    pub nodes: Vec<NodeJson>,
    pub arrows: Vec<(String, String)>,
}

fn shading(hammocks: Option<(&Hammocks, ArCoordinate)>, window: &[ArCoordinate]) -> Result<BTreeSet<ArCoordinate>> {
    match hammocks {
        Some((h, a)) => h.window(&a, window),
        None => Ok(BTreeSet::new()),
    }
}

/// The window with indices in `[−bound, bound]` as a JSON adjacency list.
pub fn window_json(chart: &Chart, bound: i64, hammock: Option<(&Hammocks, ArCoordinate)>) -> Result<QuiverJson> {
    let window = chart.window(bound);
    let shaded = shading(hammock, &window)?;
    let mut nodes = Vec::with_capacity(window.len());
    for c in &window {
        let p = chart.place(c)?;
        nodes.push(NodeJson {
            id: c.to_string(),
            component: chart.component(c),
            word: word_text(chart.pres(), &p.word),
            offset: p.offset,
            compact: chart.is_compact(c),
            shaded: shaded.contains(c),
        });
    }
    let arrows = chart.arrows(&window).into_iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
    Ok(QuiverJson {
        algebra: chart.pres().params().to_string(),
        chart: chart.strategy().name().to_string(),
        bound,
        hammock_of: hammock.map(|(_, a)| a.to_string()),
        nodes,
        arrows,
    })
}

/// The same window as a DOT graph, one cluster per component; the hammock of the
/// given object is filled grey and the object itself is drawn bold.
pub fn window_dot(chart: &Chart, bound: i64, hammock: Option<(&Hammocks, ArCoordinate)>) -> Result<String> {
    let window = chart.window(bound);
    let shaded = shading(hammock, &window)?;
    let mut clusters: BTreeMap<String, Vec<ArCoordinate>> = BTreeMap::new();
    for c in &window {
        clusters.entry(chart.component(c)).or_default().push(*c);
    }
    let mut s = String::new();
    writeln!(s, "digraph ar_quiver {{").unwrap();
    writeln!(s, "  label=\"{} {} |i|,|j| <= {}\";", chart.pres().params(), chart.strategy().name(), bound).unwrap();
    writeln!(s, "  rankdir=LR;").unwrap();
    writeln!(s, "  node [shape=plaintext, fontsize=10];").unwrap();
    for (n, (name, members)) in clusters.iter().enumerate() {
        writeln!(s, "  subgraph cluster_{n} {{").unwrap();
        writeln!(s, "    label=\"{name}\";").unwrap();
        for c in members {
            let mut attrs = Vec::new();
            if shaded.contains(c) {
                attrs.push("style=filled".to_string());
                attrs.push("fillcolor=gray80".to_string());
            }
            if hammock.is_some_and(|(_, a)| a == *c) {
                attrs.push("fontname=\"bold\"".to_string());
            }
            if !chart.is_compact(c) {
                attrs.push("fontcolor=gray30".to_string());
            }
            if attrs.is_empty() {
                writeln!(s, "    \"{c}\";").unwrap();
            } else {
                writeln!(s, "    \"{c}\" [{}];", attrs.join(", ")).unwrap();
            }
        }
        writeln!(s, "  }}").unwrap();
    }
    for (a, b) in chart.arrows(&window) {
        writeln!(s, "  \"{a}\" -> \"{b}\";").unwrap();
    }
    writeln!(s, "}}").unwrap();
    Ok(s)
}
