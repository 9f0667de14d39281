//! From coordinates to string complexes.
//!
//! Every string object is a stretch of the line with its two ends dressed up. A
//! left end is the line itself, an inverse `a`-letter in front of a phase-0
//! position, a proper prefix `b_{t−1}⋯b_0` of the long letter (a *cut*), or a
//! tail; right ends likewise, with the long letter extended by `a_{−1}⋯a_{−j}`
//! or cut down to `b_{n−r}⋯b_t`. The `X` indices walk through the ends built
//! from the line and the `a`-arm, the `Y` indices through the cuts.
//!
//! An object in component `k` puts line position `p` in degree `p − k`.

use std::sync::Arc;

use crate::complexes::StringComplex;
use crate::error::{Error, Result};
use crate::gentle::{GentlePresentation, GldimClass, Path};
use crate::strings::{validate, HomotopyWord, Letter, Line};

use super::hammock::{self, Decision};
use super::{ArCoordinate, Family, PrimedIndex};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LeftEnd {
    Tail,
    /// starts at a line position
    Line(i64),
    /// phase-0 position `q` preceded by the inverse letter `a_{−1}⋯a_{−j}`
    Arm(i64, i64),
    /// phase-0 position `P` preceded by `b_{t−1}⋯b_0`
    Cut(i64, i64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RightEnd {
    Tail,
    Line(i64),
    /// phase-0 position `p` reached by `b_{n−r}⋯b_0 a_{−1}⋯a_{−j}` from `p − 1`
    Arm(i64, i64),
    /// phase-0 position `p` reached by `b_{n−r}⋯b_t` from `p − 1`
    Cut(i64, i64),
}

/// The end-point builder shared by all chart strategies.
#[derive(Debug, Clone)]
pub struct EndPoints {
    pub primes: PrimedIndex,
    line: Line,
    b_long: Path,
    arm_paths: Vec<Path>,
    pres: Arc<GentlePresentation>,
}

impl EndPoints {
    pub fn new(pres: Arc<GentlePresentation>) -> Self {
        let p = pres.params();
        let primes = PrimedIndex { r: p.ri(), n: p.ni(), m: p.mi() };
        let line = Line::new(&pres);
        let b_long = pres.b_composite();
        let arm_paths = (0..=p.mi()).map(|j| Self::arm_path(&pres, 0, j)).collect();
        Self { primes, line, b_long, arm_paths, pres }
    }

    pub fn r(&self) -> i64 {
        self.primes.r
    }

    /// `r + m`: number of `X` indices per period of the line.
    pub fn x_period(&self) -> i64 {
        self.primes.r + self.primes.m
    }

    /// `n − r`: number of cuts per period of the line.
    pub fn cuts(&self) -> i64 {
        self.primes.n - self.primes.r
    }

    fn arm_path(pres: &GentlePresentation, j0: i64, j1: i64) -> Path {
        // a_{−(j0+1)} ⋯ a_{−j1}: from −j1 to −j0
        if j1 == j0 {
            return Path::trivial(-(j0 as i32));
        }
        let arrows: Vec<_> = ((j0 + 1)..=j1).rev().map(|i| pres.tail_arrow(i as i32)).collect();
        pres.path_from_arrows(&arrows).expect("arm segment is a path")
    }

    fn cycle_path(&self, t0: i64, t1: i64) -> Path {
        // b_{t1−1} ⋯ b_{t0}: from t0 to t1
        let arrows: Vec<_> = (t0..t1).map(|t| self.pres.cycle_arrow(t as i32)).collect();
        self.pres.path_from_arrows(&arrows).expect("cycle segment is a path")
    }

    fn long_with_arm(&self, j: i64) -> Path {
        self.pres.compose(&self.b_long, &self.arm_paths[j as usize]).expect("long letter is nonzero")
    }

    /// Right end of `X` index `a`; indices increase leftwards along the line.
    pub fn x_right(&self, a: i64) -> RightEnd {
        let (q, s) = (a.div_euclid(self.x_period()), a.rem_euclid(self.x_period()));
        let p0 = -q * self.r();
        let m = self.primes.m;
        if s == 0 {
            RightEnd::Line(p0)
        } else if s <= m {
            RightEnd::Arm(p0, s)
        } else {
            RightEnd::Line(p0 - (s - m))
        }
    }

    /// Left end of `X` index `b`.
    pub fn x_left(&self, b: i64) -> LeftEnd {
        let (q, s) = (b.div_euclid(self.x_period()), b.rem_euclid(self.x_period()));
        let p0 = -q * self.r();
        let m = self.primes.m;
        if s < m {
            LeftEnd::Arm(p0, s + 1)
        } else {
            LeftEnd::Line(p0 - (s - m))
        }
    }

    /// The cut with index `kappa`: phase-0 position and the vertex `t ∈ 1..=n−r`.
    /// Cuts move rightwards as `kappa` grows.
    pub fn cut(&self, kappa: i64) -> Result<(i64, i64)> {
        let d = self.cuts();
        if d == 0 {
            return Err(Error::Parameter("the long letter is a single arrow, so there are no cuts".into()));
        }
        let (u, w) = (kappa.div_euclid(d), kappa.rem_euclid(d));
        Ok((u * self.r(), d - w))
    }

    /// The word between two ends, with the degree of its leftmost core position
    /// in component 0; `None` when the ends do not bound a homotopy string.
    pub fn build(&self, left: LeftEnd, right: RightEnd) -> Option<(HomotopyWord, i64)> {
        let (start, prefix, first) = match left {
            LeftEnd::Tail => (None, None, None),
            LeftEnd::Line(q) => (Some(q), None, Some(q)),
            LeftEnd::Arm(q, j) => (Some(q), Some(Letter::inverse(self.arm_paths[j as usize].clone())), Some(q + 1)),
            LeftEnd::Cut(p, t) => (Some(p), Some(Letter::direct(self.cycle_path(0, t))), Some(p - 1)),
        };
        let (end, suffix) = match right {
            RightEnd::Tail => (None, None),
            RightEnd::Line(p) => (Some(p), None),
            RightEnd::Arm(p, j) => (Some(p - 1), Some(Letter::direct(self.long_with_arm(j)))),
            RightEnd::Cut(p, t) => (Some(p - 1), Some(Letter::direct(self.cycle_path(t, self.cuts() + 1)))),
        };
        if let (Some(s), Some(e)) = (start, end) {
            if s > e {
                return self.short_word(left, right);
            }
        }
        let (from, to) = match (start, end) {
            (Some(s), Some(e)) => (s, e),
            (Some(s), None) => (s, s),
            (None, Some(e)) => (e, e),
            (None, None) => return Some((HomotopyWord { left_tail: true, right_tail: true, core: Vec::new(), anchor: 0 }, 0)),
        };
        let mut core: Vec<Letter> = prefix.into_iter().collect();
        core.extend((from..to).map(|p| Letter::direct(self.line.letter(p).clone())));
        core.extend(suffix);
        let word = HomotopyWord {
            left_tail: start.is_none(),
            right_tail: end.is_none(),
            anchor: core.first().map(Letter::left_vertex).unwrap_or_else(|| self.line.vertex(from)),
            core,
        };
        validate(&self.pres, &word).ok()?;
        Some((word, first.unwrap_or(from)))
    }

    /// Ends that overlap by one position.
    fn short_word(&self, left: LeftEnd, right: RightEnd) -> Option<(HomotopyWord, i64)> {
        let word = |l: Letter| HomotopyWord::finite(vec![l]).ok();
        let out = match (left, right) {
            (LeftEnd::Line(q), RightEnd::Arm(p, j)) if q == p => (HomotopyWord::stalk(-(j as i32)), p),
            (LeftEnd::Arm(q, j1), RightEnd::Arm(p, j)) if q == p && j1 > j => {
                (word(Letter::inverse(Self::arm_path(&self.pres, j, j1)))?, p + 1)
            }
            (LeftEnd::Cut(q, t1), RightEnd::Cut(p, t)) if q == p && t1 > t => (word(Letter::direct(self.cycle_path(t, t1)))?, p - 1),
            (LeftEnd::Cut(q, t1), RightEnd::Arm(p, j)) if q == p => {
                let path = self.pres.compose(&self.cycle_path(0, t1), &self.arm_paths[j as usize])?;
                (word(Letter::direct(path))?, p - 1)
            }
            _ => return None,
        };
        validate(&self.pres, &out.0).ok()?;
        Some(out)
    }
}

/// Where a coordinate sits: its word and the degree of the leftmost core position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Placement {
    pub word: HomotopyWord,
    pub offset: i64,
}

/// A calibrated chart for one global-dimension regime, with that regime's hammock formulas.
pub trait ChartStrategy: Send + Sync {
    fn name(&self) -> &'static str;
    fn regime(&self) -> GldimClass;
    fn families(&self) -> &'static [Family];
    fn is_compact(&self, c: &ArCoordinate) -> bool;
    fn place(&self, ends: &EndPoints, c: &ArCoordinate) -> Result<Placement>;
    fn suspend(&self, ends: &EndPoints, c: &ArCoordinate) -> ArCoordinate;
    /// How to decide `B ∈ H⁺(A)`.
    fn forward(&self, ends: &EndPoints, a: &ArCoordinate, b: &ArCoordinate) -> Result<Decision>;
    /// How to decide `B ∈ H⁻(A)`.
    fn backward(&self, ends: &EndPoints, a: &ArCoordinate, b: &ArCoordinate) -> Result<Decision> {
        self.forward(ends, b, a)
    }
}

fn placed(found: Option<(HomotopyWord, i64)>, c: &ArCoordinate, class: i64) -> Result<Placement> {
    let (word, first) = found.ok_or_else(|| Error::Parameter(format!("{c} does not name a string object")))?;
    Ok(Placement { word, offset: first - class })
}

fn unavailable(c: &ArCoordinate, name: &str) -> Error {
    Error::Parameter(format!("{c} is not a coordinate of the {name} chart"))
}

/// Finite global dimension: eight families per component.
#[derive(Debug, Clone, Copy, Default)]
pub struct FiniteChart;

impl FiniteChart {
    const FAMILIES: [Family; 8] = [
        Family::X,
        Family::Y,
        Family::Z,
        Family::Xinf,
        Family::XminusInf,
        Family::Yinf,
        Family::YminusInf,
        Family::Zinf,
    ];
}

impl ChartStrategy for FiniteChart {
    fn name(&self) -> &'static str {
        "finite"
    }

    fn regime(&self) -> GldimClass {
        GldimClass::Finite
    }

    fn families(&self) -> &'static [Family] {
        &Self::FAMILIES
    }

    fn is_compact(&self, c: &ArCoordinate) -> bool {
        matches!(c.family, Family::X | Family::Y | Family::Z)
    }

    fn place(&self, e: &EndPoints, c: &ArCoordinate) -> Result<Placement> {
        c.check(e.r())?;
        let k = c.k;
        let cut_left = |kappa: i64| e.cut(kappa).map(|(p, t)| LeftEnd::Cut(p, t));
        let cut_right = |kappa: i64| e.cut(kappa).map(|(p, t)| RightEnd::Cut(p, t));
        match c.family {
            Family::X => placed(e.build(e.x_left(c.j), e.x_right(c.i)), c, k),
            Family::Xinf => placed(e.build(LeftEnd::Tail, e.x_right(c.i)), c, k),
            Family::XminusInf => placed(e.build(e.x_left(c.j), RightEnd::Tail), c, k),
            Family::Y => placed(e.build(cut_left(c.j - 1)?, cut_right(c.i)?), c, k),
            Family::Yinf => placed(e.build(cut_left(c.j - 1)?, RightEnd::Tail), c, k),
            Family::YminusInf => placed(e.build(LeftEnd::Tail, cut_right(c.i)?), c, k),
            Family::Z => {
                let (p, t) = e.cut(c.j - 1)?;
                if let Some(found) = e.build(LeftEnd::Cut(p, t), e.x_right(c.i)) {
                    return placed(Some(found), c, k);
                }
                if let Some(found) = e.build(e.x_left(c.i - 1), RightEnd::Cut(p, t)) {
                    return placed(Some(found), c, k + 1);
                }
                placed(Some((HomotopyWord::stalk(t as i32), p - 1)), c, k)
            }
            Family::Zinf => placed(e.build(LeftEnd::Tail, RightEnd::Tail), c, k),
            Family::ZLadder => Err(unavailable(c, self.name())),
        }
    }

    fn suspend(&self, e: &EndPoints, c: &ArCoordinate) -> ArCoordinate {
        let r = e.r();
        if c.k + 1 < r {
            return ArCoordinate { k: c.k + 1, ..*c };
        }
        let (px, py) = (e.x_period(), -e.cuts());
        let (i, j) = match c.family {
            Family::X => (c.i + px, c.j + px),
            Family::Xinf => (c.i + px, 0),
            Family::XminusInf => (0, c.j + px),
            Family::Y => (c.i + py, c.j + py),
            Family::Yinf => (0, c.j + py),
            Family::YminusInf => (c.i + py, 0),
            Family::Z => (c.i + px, c.j + py),
            Family::Zinf | Family::ZLadder => (c.i, c.j),
        };
        ArCoordinate { k: 0, i, j, ..*c }
    }

    fn forward(&self, e: &EndPoints, a: &ArCoordinate, b: &ArCoordinate) -> Result<Decision> {
        hammock::finite_forward(self, e, a, b)
    }
}

/// Infinite global dimension: perfect `X`, the ladders `X^k_{i,∞}`, `Z^k_i`, and `Z^k_∞`.
#[derive(Debug, Clone, Copy, Default)]
pub struct InfiniteChart;

impl InfiniteChart {
    const FAMILIES: [Family; 4] = [Family::X, Family::Xinf, Family::ZLadder, Family::Zinf];
}

impl ChartStrategy for InfiniteChart {
    fn name(&self) -> &'static str {
        "infinite"
    }

    fn regime(&self) -> GldimClass {
        GldimClass::Infinite
    }

    fn families(&self) -> &'static [Family] {
        &Self::FAMILIES
    }

    fn is_compact(&self, c: &ArCoordinate) -> bool {
        matches!(c.family, Family::X | Family::ZLadder)
    }

    fn place(&self, e: &EndPoints, c: &ArCoordinate) -> Result<Placement> {
        c.check(e.r())?;
        match c.family {
            Family::X => placed(e.build(e.x_left(c.j), e.x_right(c.i)), c, c.k),
            Family::Xinf => placed(e.build(LeftEnd::Tail, e.x_right(c.i)), c, c.k),
            // one degree below component k, like the `Z` objects ending in a cut
            Family::ZLadder => placed(e.build(e.x_left(c.i - 1), RightEnd::Tail), c, c.k + 1),
            Family::Zinf => placed(e.build(LeftEnd::Tail, RightEnd::Tail), c, c.k),
            _ => Err(unavailable(c, self.name())),
        }
    }

    fn suspend(&self, e: &EndPoints, c: &ArCoordinate) -> ArCoordinate {
        if c.k + 1 < e.r() {
            return ArCoordinate { k: c.k + 1, ..*c };
        }
        let px = e.x_period();
        match c.family {
            Family::X => ArCoordinate { k: 0, i: c.i + px, j: c.j + px, ..*c },
            Family::Xinf | Family::ZLadder => ArCoordinate { k: 0, i: c.i + px, ..*c },
            _ => ArCoordinate { k: 0, ..*c },
        }
    }

    fn forward(&self, e: &EndPoints, a: &ArCoordinate, b: &ArCoordinate) -> Result<Decision> {
        hammock::infinite_forward(self, e, a, b)
    }

    fn backward(&self, e: &EndPoints, a: &ArCoordinate, b: &ArCoordinate) -> Result<Decision> {
        hammock::infinite_backward(self, e, a, b)
    }
}

/// Names accepted by [`chart_strategy`].
pub fn strategy_names() -> &'static [&'static str] {
    &["finite", "infinite"]
}

pub fn chart_strategy(name: &str) -> Result<Arc<dyn ChartStrategy>> {
    match name {
        "finite" => Ok(Arc::new(FiniteChart)),
        "infinite" => Ok(Arc::new(InfiniteChart)),
        other => Err(Error::Parameter(format!("unknown chart `{other}` (expected one of {:?})", strategy_names()))),
    }
}

/// A chart bound to an algebra.
#[derive(Clone)]
pub struct Chart {
    pres: Arc<GentlePresentation>,
    ends: EndPoints,
    strategy: Arc<dyn ChartStrategy>,
}

impl Chart {
    /// The chart matching the algebra's global dimension.
    pub fn new(pres: Arc<GentlePresentation>) -> Self {
        let name = match pres.gldim_class() {
            GldimClass::Finite => "finite",
            GldimClass::Infinite => "infinite",
        };
        Self::with_strategy(pres, chart_strategy(name).unwrap())
    }

    /// A chart with an explicit strategy, which need not match the algebra.
    pub fn with_strategy(pres: Arc<GentlePresentation>, strategy: Arc<dyn ChartStrategy>) -> Self {
        let ends = EndPoints::new(pres.clone());
        Self { pres, ends, strategy }
    }

    pub fn pres(&self) -> &GentlePresentation {
        &self.pres
    }

    pub fn strategy(&self) -> &dyn ChartStrategy {
        self.strategy.as_ref()
    }

    pub fn ends(&self) -> &EndPoints {
        &self.ends
    }

    pub fn r(&self) -> i64 {
        self.ends.r()
    }

    pub fn regime(&self) -> GldimClass {
        self.strategy.regime()
    }

    pub fn primes(&self) -> PrimedIndex {
        self.ends.primes
    }

    pub fn is_compact(&self, c: &ArCoordinate) -> bool {
        self.strategy.is_compact(c)
    }

    pub fn has_family(&self, f: Family) -> bool {
        self.strategy.families().contains(&f)
    }

    pub fn place(&self, c: &ArCoordinate) -> Result<Placement> {
        self.strategy.place(&self.ends, c)
    }

    /// The string complex at `c`.
    pub fn complex(&self, c: &ArCoordinate) -> Result<StringComplex> {
        let p = self.place(c)?;
        StringComplex::realize(&self.pres, &p.word, p.offset)
    }

    pub fn suspend(&self, c: &ArCoordinate) -> ArCoordinate {
        self.strategy.suspend(&self.ends, c)
    }

    /// `Σ^t` for any integer `t`.
    pub fn suspend_by(&self, c: &ArCoordinate, t: i64) -> ArCoordinate {
        let mut out = *c;
        if t >= 0 {
            for _ in 0..t {
                out = self.suspend(&out);
            }
        } else {
            for _ in 0..(-t) {
                out = self.desuspend(&out);
            }
        }
        out
    }

    /// `Σ^{−1}`.
    pub fn desuspend(&self, c: &ArCoordinate) -> ArCoordinate {
        // Σ from the last component is a translation, read off from one probe
        let r = self.r();
        if c.k > 0 {
            return ArCoordinate { k: c.k - 1, ..*c };
        }
        let probe = ArCoordinate { k: r - 1, ..*c };
        let image = self.suspend(&probe);
        ArCoordinate { k: r - 1, i: c.i - (image.i - probe.i), j: c.j - (image.j - probe.j), ..*c }
    }

    /// Every coordinate of the chart with finite indices in `[-bound, bound]`.
    pub fn window(&self, bound: i64) -> Vec<ArCoordinate> {
        let mut out = Vec::new();
        let range = -bound..=bound;
        for k in 0..self.r() {
            for &f in self.strategy.families() {
                match f {
                    Family::X => {
                        for i in range.clone() {
                            for j in i..=bound {
                                out.push(ArCoordinate::x(k, i, j));
                            }
                        }
                    }
                    Family::Y => {
                        for i in range.clone() {
                            for j in -bound..=i {
                                out.push(ArCoordinate::y(k, i, j));
                            }
                        }
                    }
                    Family::Z => {
                        for i in range.clone() {
                            for j in range.clone() {
                                out.push(ArCoordinate::z(k, i, j));
                            }
                        }
                    }
                    Family::Xinf => out.extend(range.clone().map(|i| ArCoordinate::x_inf(k, i))),
                    Family::XminusInf => out.extend(range.clone().map(|j| ArCoordinate::x_minus_inf(k, j))),
                    Family::Yinf => out.extend(range.clone().map(|j| ArCoordinate::y_inf(k, j))),
                    Family::YminusInf => out.extend(range.clone().map(|i| ArCoordinate::y_minus_inf(k, i))),
                    Family::ZLadder => out.extend(range.clone().map(|i| ArCoordinate::z_ladder(k, i))),
                    Family::Zinf => out.push(ArCoordinate::z_inf(k)),
                }
            }
        }
        out.sort();
        out
    }

    /// How to decide `B ∈ H⁺(A)`.
    pub fn forward_decision(&self, a: &ArCoordinate, b: &ArCoordinate) -> Result<Decision> {
        self.strategy.forward(&self.ends, a, b)
    }

    /// How to decide `B ∈ H⁻(A)`.
    pub fn backward_decision(&self, a: &ArCoordinate, b: &ArCoordinate) -> Result<Decision> {
        self.strategy.backward(&self.ends, a, b)
    }
}
