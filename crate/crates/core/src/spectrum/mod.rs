//! Points of the Ziegler spectrum of `K(Proj-Λ)`: their Cantor–Bendixson ranks, the
//! 1-simple morphisms and the open sets `(F_f)` cut out by finitely presented functors.
//!
//! `F_f` for `f : C → B` is the cokernel of `(f, −) : (B, −) → (C, −)`, so `F_f(N) ≠ 0`
//! exactly when some map `C → N` does not factor through `f`.

// index bounds are kept in the `x - 1` form the tables use
#![allow(clippy::int_plus_one)]

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::Serialize;

use crate::arquiver::{mesh_map, ArCoordinate, Chart, Family, Hammocks};
use crate::complexes::{ChainMap, Complex, StringComplex, SumComplex};
use crate::error::{Error, Result};
use crate::gentle::GldimClass;
use crate::homlab::Oracle;

#[cfg(test)]
mod tests;

/// Cantor–Bendixson rank of a point, read off its component.
pub fn cb_rank(c: &ArCoordinate) -> u8 {
    match c.family {
        Family::X | Family::Y | Family::Z => 0,
        Family::Zinf => 2,
        _ => 1,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpectrumPoint {
    pub coordinate: ArCoordinate,
    pub component: String,
    pub rank: u8,
    pub compact: bool,
}

/// Every point of the window with its rank, ordered by rank and then coordinate.
pub fn strata(chart: &Chart, bound: i64) -> Vec<SpectrumPoint> {
    let mut out: Vec<SpectrumPoint> = chart
        .window(bound)
        .into_iter()
        .map(|c| SpectrumPoint { coordinate: c, component: chart.component(&c), rank: cb_rank(&c), compact: chart.is_compact(&c) })
        .collect();
    out.sort_by_key(|p| (p.rank, p.coordinate));
    out
}

/// The families of 1-simple morphisms `C → B_1 ⊕ B_2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Shape {
    /// `X_{i,j} → X_{i+1,j} ⊕ Z_{i,t}`
    X,
    /// `Y_{i,j} → Y_{i,j+1} ⊕ Z_{t,j}`
    Y,
    /// `Z^k_{i,j} → Z^k_{i+1,j} ⊕ X^{k+1}_{t,i′−1}`
    ZToX,
    /// `Z^k_{i,j} → Z^k_{i,j+1} ⊕ Y^{k+1}_{j″−1,t}`
    ZToY,
    /// `X_{i,j} → X_{i+1,j} ⊕ Z_i` on a ladder
    LadderX,
    /// `Z^k_j → Z^k_{j+1} ⊕ X^{k+1}_{i,j′−1}` on a ladder
    LadderZ,
}

/// Equivalence class of a 1-simple morphism: the shape, the component of the source,
/// and the index shared by the line through the source and the line through the
/// second target.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ClassKey {
    pub shape: Shape,
    pub k: i64,
    pub line: i64,
}

impl std::fmt::Display for ClassKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?}^{}[{}]", self.shape, self.k, self.line)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct OneSimple {
    pub shape: Shape,
    pub source: ArCoordinate,
    pub first: ArCoordinate,
    pub second: ArCoordinate,
}

impl OneSimple {
    pub fn key(&self) -> ClassKey {
        let line = match self.shape {
            Shape::X | Shape::ZToX | Shape::LadderX | Shape::LadderZ => self.source.i,
            Shape::Y | Shape::ZToY => self.source.j,
        };
        ClassKey { shape: self.shape, k: self.source.k, line }
    }

    pub fn targets(&self) -> [ArCoordinate; 2] {
        [self.first, self.second]
    }

    /// `h ∼ g`.
    pub fn equivalent(&self, other: &OneSimple) -> bool {
        self.key() == other.key()
    }
}

impl std::fmt::Display for OneSimple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} -> {} + {}", self.source, self.first, self.second)
    }
}

/// Shapes that occur in the chart's regime.
pub fn shapes(chart: &Chart) -> &'static [Shape] {
    match chart.regime() {
        GldimClass::Finite => &[Shape::X, Shape::Y, Shape::ZToX, Shape::ZToY],
        GldimClass::Infinite => &[Shape::LadderX, Shape::LadderZ],
    }
}

/// Candidate members of a class with every index in `[−bound, bound]`, before the
/// nonvanishing of the two components is checked.
pub fn class_candidates(chart: &Chart, key: &ClassKey, bound: i64) -> Vec<OneSimple> {
    let inside = |x: i64| -bound <= x && x <= bound;
    let (k, a) = (key.k, key.line);
    let k1 = (k + 1).rem_euclid(chart.r());
    let pr = chart.primes();
    let mut out = Vec::new();
    if !inside(a) {
        return out;
    }
    let range = -bound..=bound;
    match key.shape {
        Shape::X => {
            for j in a + 1..=bound {
                for t in range.clone() {
                    out.push(OneSimple {
                        shape: key.shape,
                        source: ArCoordinate::x(k, a, j),
                        first: ArCoordinate::x(k, a + 1, j),
                        second: ArCoordinate::z(k, a, t),
                    });
                }
            }
        }
        Shape::Y => {
            for i in a + 1..=bound {
                for t in range.clone() {
                    out.push(OneSimple {
                        shape: key.shape,
                        source: ArCoordinate::y(k, i, a),
                        first: ArCoordinate::y(k, i, a + 1),
                        second: ArCoordinate::z(k, t, a),
                    });
                }
            }
        }
        Shape::ZToX => {
            let top = pr.prime(a, k) - 1;
            if a + 1 <= bound && inside(top) {
                for j in range.clone() {
                    for t in -bound..=top {
                        out.push(OneSimple {
                            shape: key.shape,
                            source: ArCoordinate::z(k, a, j),
                            first: ArCoordinate::z(k, a + 1, j),
                            second: ArCoordinate::x(k1, t, top),
                        });
                    }
                }
            }
        }
        Shape::ZToY => {
            let top = pr.double_prime(a, k) - 1;
            if a + 1 <= bound && inside(top) {
                for i in range.clone() {
                    for t in -bound..=top {
                        out.push(OneSimple {
                            shape: key.shape,
                            source: ArCoordinate::z(k, i, a),
                            first: ArCoordinate::z(k, i, a + 1),
                            second: ArCoordinate::y(k1, top, t),
                        });
                    }
                }
            }
        }
        Shape::LadderX => {
            for j in a + 1..=bound {
                out.push(OneSimple {
                    shape: key.shape,
                    source: ArCoordinate::x(k, a, j),
                    first: ArCoordinate::x(k, a + 1, j),
                    second: ArCoordinate::z_ladder(k, a),
                });
            }
        }
        Shape::LadderZ => {
            let top = pr.prime(a, k) - 1;
            if a + 1 <= bound && inside(top) {
                for i in -bound..=top {
                    out.push(OneSimple {
                        shape: key.shape,
                        source: ArCoordinate::z_ladder(k, a),
                        first: ArCoordinate::z_ladder(k, a + 1),
                        second: ArCoordinate::x(k1, i, top),
                    });
                }
            }
        }
    }
    out
}

/// Every class key whose line index lies in `[−bound, bound]`.
pub fn class_keys(chart: &Chart, bound: i64) -> Vec<ClassKey> {
    let mut out = Vec::new();
    for &shape in shapes(chart) {
        for k in 0..chart.r() {
            for line in -bound..=bound {
                out.push(ClassKey { shape, k, line });
            }
        }
    }
    out
}

fn both_nonzero(h: &Hammocks, m: &OneSimple) -> Result<bool> {
    Ok(h.forward_member(&m.source, &m.first)? && h.forward_member(&m.source, &m.second)?)
}

/// The 1-simple morphisms with every index in `[−bound, bound]`, grouped by `∼`.
pub fn enumerate_one_simples(chart: &Chart, oracle: &Oracle, bound: i64) -> Result<BTreeMap<ClassKey, Vec<OneSimple>>> {
    let h = Hammocks::new(chart, oracle);
    let mut out = BTreeMap::new();
    for key in class_keys(chart, bound) {
        let mut members = Vec::new();
        for m in class_candidates(chart, &key, bound) {
            if both_nonzero(&h, &m)? {
                members.push(m);
            }
        }
        if !members.is_empty() {
            out.insert(key, members);
        }
    }
    Ok(out)
}

/// Up to `limit` members of a class, in candidate order.
pub fn class_members(chart: &Chart, oracle: &Oracle, key: &ClassKey, bound: i64, limit: usize) -> Result<Vec<OneSimple>> {
    let h = Hammocks::new(chart, oracle);
    let mut out = Vec::new();
    for m in class_candidates(chart, key, bound) {
        if out.len() == limit {
            break;
        }
        if both_nonzero(&h, &m)? {
            out.push(m);
        }
    }
    Ok(out)
}

/// Degrees on which maps out of unbounded sources are solved, enough for every Hom
/// comparison against the listed points.
pub fn degree_span(chart: &Chart, points: &[ArCoordinate]) -> Result<(i64, i64)> {
    let mut lo = i64::MAX;
    let mut hi = i64::MIN;
    for p in points {
        let (a, b) = chart.complex(p)?.core_span();
        lo = lo.min(a);
        hi = hi.max(b);
    }
    let pad = 12 * chart.r() + 4;
    Ok((lo - pad, hi + pad))
}

/// The open set `(F_f)` of a map `f : C → B_1 ⊕ ⋯ ⊕ B_n`.
pub struct OpenSet {
    pub source: ArCoordinate,
    pub targets: Vec<ArCoordinate>,
    source_cx: StringComplex,
    sum: SumComplex,
    map: ChainMap,
    /// Degrees on which `map` is known, for sources unbounded on some side.
    covered: Option<(i64, i64)>,
}

impl OpenSet {
    fn build(chart: &Chart, source: ArCoordinate, targets: Vec<ArCoordinate>, maps: &[ChainMap], covered: Option<(i64, i64)>) -> Result<Self> {
        let source_cx = chart.complex(&source)?;
        let parts: Vec<Arc<dyn Complex>> =
            targets.iter().map(|t| chart.complex(t).map(|c| Arc::new(c) as Arc<dyn Complex>)).collect::<Result<_>>()?;
        let stack: Vec<(&ChainMap, &dyn Complex)> = maps.iter().zip(&parts).map(|(m, p)| (m, p.as_ref())).collect();
        let map = ChainMap::stacked(&stack, &source_cx);
        let bounded = source_cx.lower().is_some() && source_cx.upper().is_some();
        Ok(Self { source, targets, source_cx, sum: SumComplex { parts }, map, covered: if bounded { None } else { covered } })
    }

    /// `f = 0`, so `F_f = (C, −)`.
    pub fn representable(chart: &Chart, source: ArCoordinate) -> Result<Self> {
        Self::build(chart, source, Vec::new(), &[], None)
    }

    /// `f = id_C`, so `F_f = 0`.
    pub fn identity(chart: &Chart, source: ArCoordinate, span: (i64, i64)) -> Result<Self> {
        let c = chart.complex(&source)?;
        let id = ChainMap::identity(chart.pres(), &c, span.0, span.1);
        Self::build(chart, source, vec![source], &[id], Some(span))
    }

    /// `f` with the given components.
    pub fn from_maps(chart: &Chart, source: ArCoordinate, targets: Vec<ArCoordinate>, maps: &[ChainMap], covered: Option<(i64, i64)>) -> Result<Self> {
        if maps.len() != targets.len() {
            return Err(Error::Parameter(format!("{} maps for {} targets", maps.len(), targets.len())));
        }
        Self::build(chart, source, targets, maps, covered)
    }

    /// Every map `C → ⊕ B_i` built from Hom bases: each component runs over the basis
    /// maps and, when `Hom(C, B_i)` is 2-dimensional, their sum and difference too.
    pub fn candidates(chart: &Chart, oracle: &Oracle, source: ArCoordinate, targets: &[ArCoordinate], span: (i64, i64)) -> Result<Vec<Self>> {
        let c = chart.complex(&source)?;
        let mut per_target: Vec<Vec<ChainMap>> = Vec::new();
        let mut covered = (i64::MIN, i64::MAX);
        for t in targets {
            let b = chart.complex(t)?;
            let basis = oracle.hom_basis_covering(&c, &b, span)?;
            // maps into a bounded target are exact
            if b.lower().is_none() || b.upper().is_none() {
                covered = (covered.0.max(basis.window.0), covered.1.min(basis.window.1));
            }
            let mut maps = basis.maps.clone();
            if maps.len() == 2 {
                maps.push(maps[0].plus(&maps[1]));
                maps.push(maps[0].plus(&maps[1].scaled(-1)));
            }
            per_target.push(maps);
        }
        let mut combos: Vec<Vec<ChainMap>> = vec![Vec::new()];
        for maps in &per_target {
            combos = combos.into_iter().flat_map(|prefix| maps.iter().map(move |m| [prefix.clone(), vec![m.clone()]].concat())).collect();
        }
        combos.into_iter().map(|maps| Self::build(chart, source, targets.to_vec(), &maps, Some(covered))).collect()
    }

    /// `F_f(N) ≠ 0`.
    pub fn contains(&self, chart: &Chart, oracle: &Oracle, n: &ArCoordinate) -> Result<bool> {
        let cn = chart.complex(n)?;
        if oracle.hom_dim(&self.source_cx, &cn)?.hom_dim == 0 {
            return Ok(false);
        }
        if let (Some(cov), Some(span)) = (self.covered, oracle.comparison_span(&self.source_cx, &cn)?) {
            if span.0 < cov.0 || span.1 > cov.1 {
                return Err(Error::Contract(format!(
                    "map out of {} known on [{}, {}] but {} needs [{}, {}]",
                    self.source, cov.0, cov.1, n, span.0, span.1
                )));
            }
        }
        Ok(!oracle.all_factor_through(&self.source_cx, &self.sum, &cn, &self.map)?)
    }

    /// The members of `points` lying in `(F_f)`.
    pub fn members(&self, chart: &Chart, oracle: &Oracle, points: &[ArCoordinate]) -> Result<Vec<ArCoordinate>> {
        let mut out = Vec::new();
        for n in points {
            if self.contains(chart, oracle, n)? {
                out.push(*n);
            }
        }
        Ok(out)
    }
}

/// A functor and the points of the swept window it does not kill.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Isolation {
    pub functor: String,
    pub open_set: Vec<ArCoordinate>,
    pub ok: bool,
}

/// A `∼` class, its sampled representatives and what their functors leave among
/// points of rank at least one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassIsolation {
    pub key: ClassKey,
    pub representatives: Vec<String>,
    /// Candidate map index that gave a singleton, per representative.
    pub choices: Vec<Option<usize>>,
    pub open_set: Vec<ArCoordinate>,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DerivativeReport {
    pub algebra: String,
    pub regime: String,
    pub bound: i64,
    pub points: usize,
    /// Rank 0: the AR-triangle functor of each compact point.
    pub stage0: Vec<Isolation>,
    /// Rank 1: one entry per class of 1-simple morphisms.
    pub stage1: Vec<ClassIsolation>,
    /// Rank-1 points of the window no class isolated.
    pub unexhausted: Vec<ArCoordinate>,
    /// Rank 2: the representable functor of a `Z` object, swept over rank-2 points.
    pub stage2: Vec<Isolation>,
    /// Points of the window not isolated at any stage.
    pub residual: Vec<ArCoordinate>,
    /// Points isolated at a stage other than their tabulated rank.
    pub mismatches: Vec<(ArCoordinate, u8, u8)>,
    pub cb_rank: Option<u8>,
}

impl DerivativeReport {
    pub fn ok(&self) -> bool {
        self.cb_rank == Some(2)
    }
}

/// Recomputes the rank strata of the window `[−bound, bound]` operationally.
pub fn derivative_report(chart: &Chart, oracle: &Oracle, bound: i64) -> Result<DerivativeReport> {
    let params = chart.pres().params();
    let pad = params.ri() + params.mi() + params.ni() + 1;
    let window = chart.window(bound);
    let wide = chart.window(bound + 2 * pad);
    let span = degree_span(chart, &wide)?;
    let mut derived: BTreeMap<ArCoordinate, u8> = BTreeMap::new();

    let mut stage0 = Vec::new();
    for p in window.iter().filter(|p| cb_rank(p) == 0) {
        let mesh = chart.mesh(p)?;
        let (open_set, functor) = match mesh_map(chart, oracle, &mesh)? {
            Some(maps) => {
                let f = OpenSet::from_maps(chart, *p, mesh.targets.clone(), &maps, None)?;
                let names: Vec<String> = mesh.targets.iter().map(|t| t.to_string()).collect();
                (f.members(chart, oracle, &window)?, format!("F({p} -> {})", names.join(" + ")))
            }
            None => (Vec::new(), format!("no almost split map out of {p}")),
        };
        let ok = open_set == [*p];
        if ok {
            derived.insert(*p, 0);
        }
        stage0.push(Isolation { functor, open_set, ok });
    }

    let upper: Vec<ArCoordinate> = wide.iter().copied().filter(|p| cb_rank(p) >= 1).collect();
    let mut stage1 = Vec::new();
    for key in class_keys(chart, bound + pad) {
        let members = class_members(chart, oracle, &key, bound + pad, 2)?;
        if members.is_empty() {
            continue;
        }
        let reps = members;
        let mut sets = Vec::new();
        let mut choices = Vec::new();
        for m in &reps {
            let mut found = None;
            let mut first_set = None;
            for (n, f) in OpenSet::candidates(chart, oracle, m.source, &m.targets(), span)?.iter().enumerate() {
                let set = f.members(chart, oracle, &upper)?;
                if set.len() == 1 {
                    found = Some((n, set));
                    break;
                }
                first_set.get_or_insert(set);
            }
            match found {
                Some((n, set)) => {
                    choices.push(Some(n));
                    sets.push(set);
                }
                None => {
                    choices.push(None);
                    sets.push(first_set.unwrap_or_default());
                }
            }
        }
        let open_set = sets[0].clone();
        let ok = choices.iter().all(Option::is_some) && sets.iter().all(|s| *s == open_set) && cb_rank(&open_set[0]) == 1;
        if ok {
            derived.entry(open_set[0]).or_insert(1);
        }
        stage1.push(ClassIsolation { key, representatives: reps.iter().map(|m| m.to_string()).collect(), choices, open_set, ok });
    }
    let unexhausted: Vec<ArCoordinate> =
        window.iter().copied().filter(|p| cb_rank(p) == 1 && derived.get(p) != Some(&1)).collect();

    let top: Vec<ArCoordinate> = window.iter().copied().filter(|p| cb_rank(p) == 2).collect();
    let mut stage2 = Vec::new();
    for k in 0..chart.r() {
        let z = match chart.regime() {
            GldimClass::Finite => ArCoordinate::z(k, 0, 0),
            GldimClass::Infinite => ArCoordinate::z_ladder(k, 0),
        };
        let open_set = OpenSet::representable(chart, z)?.members(chart, oracle, &top)?;
        let ok = open_set.len() == 1;
        if ok {
            derived.entry(open_set[0]).or_insert(2);
        }
        stage2.push(Isolation { functor: format!("({z}, -)"), open_set, ok });
    }

    let residual: Vec<ArCoordinate> = window.iter().copied().filter(|p| !derived.contains_key(p)).collect();
    let inside: BTreeSet<ArCoordinate> = window.iter().copied().collect();
    let mismatches: Vec<(ArCoordinate, u8, u8)> = derived
        .iter()
        .filter(|(p, &d)| inside.contains(p) && cb_rank(p) != d)
        .map(|(p, &d)| (*p, cb_rank(p), d))
        .collect();
    let all_ok = stage0.iter().all(|s| s.ok) && stage1.iter().all(|s| s.ok) && stage2.iter().all(|s| s.ok);
    let cb_rank = (all_ok && unexhausted.is_empty() && residual.is_empty() && mismatches.is_empty()).then_some(2);
    Ok(DerivativeReport {
        algebra: params.to_string(),
        regime: format!("{:?}", chart.regime()),
        bound,
        points: window.len(),
        stage0,
        stage1,
        unexhausted,
        stage2,
        residual,
        mismatches,
        cb_rank,
    })
}
