//! Hom spaces in the homotopy category by exact linear algebra.
//!
//! A degree window `[L, H]` gives the finite system `Hom(σ≥L A, σ≤H B)`: unknowns are
//! the path coefficients of `f^d` for `L ≤ d ≤ H`, equations are the commutativity
//! conditions in degrees `L ≤ d < H`, and null-homotopic maps are the images of
//! `h^d : A^d → B^(d−1)` for `L ≤ d ≤ H + 1`.
//!
//! When the overlap of `A` and `B` is bounded the window is chosen so that the system
//! is exact. Otherwise the true space is the inverse limit over ever larger windows;
//! it is computed as the image of the restriction from window `e + 1` to window `e`,
//! and accepted once that image has the same dimension for two consecutive `e`.

mod reduce;

pub use reduce::{minimize, read_word, window_words, WindowWord};

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::complexes::{ChainMap, Complex, PathMatrix, StringComplex};
use crate::error::{Error, Result};
use crate::gentle::{GentlePresentation, PathId, Vertex};
use crate::linalg::{ExactBackend, LinearBackend, SparseVec};
use crate::strings::WordKey;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomReport {
    pub dim_chain_maps: usize,
    pub dim_null_homotopic: usize,
    pub hom_dim: usize,
    /// Degree window `[lo, hi]` of the maps that were solved for.
    pub window: (i64, i64),
    pub stabilized: bool,
    pub escalations: usize,
}

impl HomReport {
    pub fn zero() -> Self {
        Self { dim_chain_maps: 0, dim_null_homotopic: 0, hom_dim: 0, window: (0, -1), stabilized: true, escalations: 0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WindowConfig {
    /// Extra degrees beyond the cores on a side that has to be cut.
    pub margin: i64,
    /// Growth per escalation.
    pub step: i64,
    pub max_escalations: usize,
}

impl WindowConfig {
    pub fn for_period(r: i64) -> Self {
        Self { margin: 2 * r, step: r, max_escalations: 8 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Var {
    d: i64,
    row: u32,
    col: u32,
    path: PathId,
}

/// How the window depends on the escalation level.
#[derive(Debug, Clone, Copy)]
enum Plan {
    Empty,
    Exact(i64, i64),
    Cut { lo: Option<i64>, hi: Option<i64>, lo0: i64, hi0: i64 },
}

impl Plan {
    fn window(&self, e: usize, step: i64) -> (i64, i64) {
        match *self {
            Plan::Empty => (0, -1),
            Plan::Exact(l, h) => (l, h),
            Plan::Cut { lo, hi, lo0, hi0 } => {
                let grow = step * e as i64;
                (lo.unwrap_or(lo0 - grow), hi.unwrap_or(hi0 + grow))
            }
        }
    }
}

fn plan(a: &dyn Complex, b: &dyn Complex, cfg: &WindowConfig) -> Plan {
    if a.is_zero() || b.is_zero() {
        return Plan::Empty;
    }
    let lo = match (a.lower(), b.lower()) {
        (Some(x), Some(y)) => Some(x.max(y - 1)),
        (Some(x), None) => Some(x),
        (None, Some(y)) => Some(y - 1),
        (None, None) => None,
    };
    let hi = match (a.upper(), b.upper()) {
        (Some(x), Some(y)) => Some(y.min(x + 1)),
        (None, Some(y)) => Some(y),
        (Some(x), None) => Some(x + 1),
        (None, None) => None,
    };
    match (lo, hi) {
        (Some(l), Some(h)) if l > h => Plan::Empty,
        (Some(l), Some(h)) => Plan::Exact(l, h),
        _ => {
            let (alo, ahi) = a.core_span();
            let (blo, bhi) = b.core_span();
            let mut lo0 = alo.min(blo) - cfg.margin;
            let mut hi0 = ahi.max(bhi) + cfg.margin;
            if let Some(l) = lo {
                hi0 = hi0.max(l + cfg.margin);
            }
            if let Some(h) = hi {
                lo0 = lo0.min(h - cfg.margin);
            }
            Plan::Cut { lo, hi, lo0, hi0 }
        }
    }
}

/// The linear system of one window.
struct WindowSystem {
    lo: i64,
    hi: i64,
    vars: Vec<Var>,
    index: HashMap<Var, u32>,
    equations: Vec<SparseVec>,
    homotopies: Vec<SparseVec>,
    a_terms: Vec<Vec<Vertex>>,
    b_terms: Vec<Vec<Vertex>>,
}

/// Equation rows keyed by (degree, row, column, path).
type Rows = HashMap<(i64, u32, u32, PathId), Vec<(u32, i64)>>;

fn accumulate(target: &mut Rows, key: (i64, u32, u32, PathId), var: u32, c: i64) {
    target.entry(key).or_default().push((var, c));
}

fn finish_rows(rows: Rows) -> Vec<SparseVec> {
    let mut keyed: Vec<_> = rows.into_iter().collect();
    keyed.sort_by_key(|x| x.0);
    keyed
        .into_iter()
        .filter_map(|(_, mut v)| {
            v.sort_by_key(|e| e.0);
            let mut out: SparseVec = Vec::with_capacity(v.len());
            for (c, x) in v {
                match out.last_mut() {
                    Some(last) if last.0 == c => last.1 += x,
                    _ => out.push((c, x)),
                }
            }
            out.retain(|e| e.1 != 0);
            (!out.is_empty()).then_some(out)
        })
        .collect()
}

impl WindowSystem {
    fn build(pres: &GentlePresentation, a: &dyn Complex, b: &dyn Complex, lo: i64, hi: i64) -> Self {
        // terms from lo−1 to hi+1
        let a_terms: Vec<Vec<Vertex>> = (lo - 1..=hi + 1).map(|d| a.term(d)).collect();
        let b_terms: Vec<Vec<Vertex>> = (lo - 1..=hi + 1).map(|d| b.term(d)).collect();
        let at = |d: i64| &a_terms[(d - lo + 1) as usize];
        let bt = |d: i64| &b_terms[(d - lo + 1) as usize];
        let da: HashMap<i64, PathMatrix> = (lo - 1..=hi).map(|d| (d, a.differential(d))).collect();
        let db: HashMap<i64, PathMatrix> = (lo - 1..=hi).map(|d| (d, b.differential(d))).collect();

        let mut vars = Vec::new();
        for d in lo..=hi {
            for (z, &w) in bt(d).iter().enumerate() {
                for (u, &v) in at(d).iter().enumerate() {
                    for &p in pres.hom_basis(v, w) {
                        vars.push(Var { d, row: z as u32, col: u as u32, path: p });
                    }
                }
            }
        }
        let index: HashMap<Var, u32> = vars.iter().enumerate().map(|(i, v)| (*v, i as u32)).collect();

        // incoming differential entries per target summand, outgoing per source summand
        let mut eq_rows = HashMap::new();
        for (i, var) in vars.iter().enumerate() {
            let i = i as u32;
            let d = var.d;
            if d < hi {
                // (d_B f)^d: f^d then d_B^d
                for (&(z2, z), q) in &db[&d].entries {
                    if z as u32 != var.row {
                        continue;
                    }
                    for &(qp, c) in &q.0 {
                        if let Some(pq) = pres.compose_ids(var.path, qp) {
                            accumulate(&mut eq_rows, (d, z2 as u32, var.col, pq), i, c);
                        }
                    }
                }
            }
            if d > lo {
                // (f d_A)^(d−1): d_A^(d−1) then f^d
                for (&(u, u2), q) in &da[&(d - 1)].entries {
                    if u as u32 != var.col {
                        continue;
                    }
                    for &(qp, c) in &q.0 {
                        if let Some(qf) = pres.compose_ids(qp, var.path) {
                            accumulate(&mut eq_rows, (d - 1, var.row, u2 as u32, qf), i, -c);
                        }
                    }
                }
            }
        }
        let equations = finish_rows(eq_rows);

        let mut homotopies = Vec::new();
        for d in lo..=hi + 1 {
            for (z, &w) in bt(d - 1).iter().enumerate() {
                for (u, &v) in at(d).iter().enumerate() {
                    for &p in pres.hom_basis(v, w) {
                        let mut img: Vec<(u32, i64)> = Vec::new();
                        if d <= hi {
                            for (&(z2, zz), q) in &db[&(d - 1)].entries {
                                if zz != z {
                                    continue;
                                }
                                for &(qp, c) in &q.0 {
                                    if let Some(pq) = pres.compose_ids(p, qp) {
                                        let key = Var { d, row: z2 as u32, col: u as u32, path: pq };
                                        img.push((index[&key], c));
                                    }
                                }
                            }
                        }
                        if d > lo {
                            for (&(uu, u2), q) in &da[&(d - 1)].entries {
                                if uu != u {
                                    continue;
                                }
                                for &(qp, c) in &q.0 {
                                    if let Some(qf) = pres.compose_ids(qp, p) {
                                        let key = Var { d: d - 1, row: z as u32, col: u2 as u32, path: qf };
                                        img.push((index[&key], c));
                                    }
                                }
                            }
                        }
                        img.sort_by_key(|e| e.0);
                        let mut out: SparseVec = Vec::new();
                        for (c, x) in img {
                            match out.last_mut() {
                                Some(last) if last.0 == c => last.1 += x,
                                _ => out.push((c, x)),
                            }
                        }
                        out.retain(|e| e.1 != 0);
                        if !out.is_empty() {
                            homotopies.push(out);
                        }
                    }
                }
            }
        }
        Self { lo, hi, vars, index, equations, homotopies, a_terms, b_terms }
    }

    fn terms(&self, d: i64) -> (usize, usize) {
        let i = (d - self.lo + 1) as usize;
        (self.b_terms[i].len(), self.a_terms[i].len())
    }

    fn to_map(&self, v: &SparseVec) -> ChainMap {
        let mut components: Vec<PathMatrix> = (self.lo..=self.hi)
            .map(|d| {
                let (rows, cols) = self.terms(d);
                PathMatrix::zero(rows, cols)
            })
            .collect();
        for &(i, c) in v {
            let var = self.vars[i as usize];
            components[(var.d - self.lo) as usize].add(var.row as usize, var.col as usize, var.path, c);
        }
        ChainMap { lo: self.lo, degree: 0, components }
    }

    /// Coordinates of `f` restricted to this window.
    fn coordinates(&self, f: &ChainMap) -> SparseVec {
        let mut out = Vec::new();
        for (i, m) in f.components.iter().enumerate() {
            let d = f.lo + i as i64;
            if d < self.lo || d > self.hi {
                continue;
            }
            for (&(row, col), lc) in &m.entries {
                for &(p, c) in &lc.0 {
                    if let Some(&ix) = self.index.get(&Var { d, row: row as u32, col: col as u32, path: p }) {
                        out.push((ix, c));
                    }
                }
            }
        }
        out.sort_by_key(|e| e.0);
        out
    }

    /// Re-expresses a vector of a larger window in this window's coordinates.
    fn restrict(&self, other: &WindowSystem, v: &SparseVec) -> SparseVec {
        let mut out: SparseVec = v
            .iter()
            .filter_map(|&(i, c)| self.index.get(&other.vars[i as usize]).map(|&j| (j, c)))
            .collect();
        out.sort_by_key(|e| e.0);
        out
    }
}

struct Solved {
    sys: WindowSystem,
    kernel: Vec<SparseVec>,
    rank_h: usize,
}

impl Solved {
    fn new(backend: &dyn LinearBackend, sys: WindowSystem) -> Result<Self> {
        let kernel = if sys.equations.is_empty() {
            (0..sys.vars.len() as u32).map(|i| vec![(i, 1)]).collect()
        } else {
            backend.kernel(&sys.equations, sys.vars.len())?
        };
        let rank_h = backend.rank(&sys.homotopies)?;
        Ok(Self { sys, kernel, rank_h })
    }
}

/// Chain maps representing a basis of `Hom_K(A, B)`, given on a degree window.
#[derive(Debug, Clone)]
pub struct HomBasis {
    pub maps: Vec<ChainMap>,
    pub window: (i64, i64),
    pub report: HomReport,
}

type CacheKey = (WordKey, i64, WordKey, i64);

/// The Hom oracle: a linear backend, a window policy and a memo of string-complex results.
pub struct Oracle {
    pres: Arc<GentlePresentation>,
    backend: Arc<dyn LinearBackend>,
    config: WindowConfig,
    cache: Mutex<HashMap<CacheKey, HomReport>>,
}

impl Oracle {
    pub fn new(pres: Arc<GentlePresentation>) -> Self {
        Self::with_backend(pres, Arc::new(ExactBackend))
    }

    pub fn with_backend(pres: Arc<GentlePresentation>, backend: Arc<dyn LinearBackend>) -> Self {
        let config = WindowConfig::for_period(pres.params().ri());
        Self { pres, backend, config, cache: Mutex::new(HashMap::new()) }
    }

    pub fn with_config(mut self, config: WindowConfig) -> Self {
        self.config = config;
        self
    }

    pub fn pres(&self) -> &GentlePresentation {
        &self.pres
    }

    pub fn pres_arc(&self) -> Arc<GentlePresentation> {
        self.pres.clone()
    }

    pub fn backend_name(&self) -> String {
        self.backend.name()
    }

    fn solve(&self, a: &dyn Complex, b: &dyn Complex, window: (i64, i64)) -> Result<Solved> {
        Solved::new(self.backend.as_ref(), WindowSystem::build(&self.pres, a, b, window.0, window.1))
    }

    /// Walks the escalation ladder; returns the stabilization level and the solved windows `e`, `e + 1`.
    fn stabilize(&self, a: &dyn Complex, b: &dyn Complex, plan: Plan) -> Result<(usize, Solved, Solved, usize, usize)> {
        let step = self.config.step;
        let mut inner = self.solve(a, b, plan.window(0, step))?;
        let mut outer = self.solve(a, b, plan.window(1, step))?;
        let mut prev: Option<usize> = None;
        for e in 0..=self.config.max_escalations {
            let restricted: Vec<SparseVec> = outer.kernel.iter().map(|v| inner.sys.restrict(&outer.sys, v)).collect();
            let image = self.backend.independent_modulo(&inner.sys.homotopies, &restricted)?.len();
            if prev == Some(image) {
                let total = image + inner.rank_h;
                return Ok((e, inner, outer, total, image));
            }
            prev = Some(image);
            if e == self.config.max_escalations {
                break;
            }
            inner = outer;
            outer = self.solve(a, b, plan.window(e + 2, step))?;
        }
        let (lo, hi) = plan.window(self.config.max_escalations, step);
        Err(Error::UnstableWindow {
            escalations: self.config.max_escalations,
            lo,
            hi,
            detail: "restricted Hom dimension kept changing".into(),
        })
    }

    /// `Hom_K(A, B)` for arbitrary complexes.
    pub fn hom(&self, a: &dyn Complex, b: &dyn Complex) -> Result<HomReport> {
        match plan(a, b, &self.config) {
            Plan::Empty => Ok(HomReport::zero()),
            Plan::Exact(lo, hi) => {
                let s = self.solve(a, b, (lo, hi))?;
                let z = s.kernel.len();
                Ok(HomReport {
                    dim_chain_maps: z,
                    dim_null_homotopic: s.rank_h,
                    hom_dim: z - s.rank_h,
                    window: (lo, hi),
                    stabilized: true,
                    escalations: 0,
                })
            }
            p @ Plan::Cut { .. } => {
                let (e, inner, _, total, image) = self.stabilize(a, b, p)?;
                Ok(HomReport {
                    dim_chain_maps: total,
                    dim_null_homotopic: inner.rank_h,
                    hom_dim: image,
                    window: (inner.sys.lo, inner.sys.hi),
                    stabilized: true,
                    escalations: e,
                })
            }
        }
    }

    fn key(&self, a: &StringComplex, b: &StringComplex) -> CacheKey {
        let (wa, oa) = a.normalized(&self.pres);
        let (wb, ob) = b.normalized(&self.pres);
        let r = self.pres.params().ri();
        let (oa, ob) = match (wa.left_tail && wa.right_tail, wb.left_tail && wb.right_tail) {
            (true, true) => (0, (ob - oa).rem_euclid(r)),
            (true, false) => ((oa - ob).rem_euclid(r), 0),
            (false, true) => (0, (ob - oa).rem_euclid(r)),
            (false, false) => (0, ob - oa),
        };
        (WordKey::of(&self.pres, &wa), oa, WordKey::of(&self.pres, &wb), ob)
    }

    /// `Hom_K(A, B)` for string complexes, memoized up to simultaneous shift.
    pub fn hom_dim(&self, a: &StringComplex, b: &StringComplex) -> Result<HomReport> {
        let key = self.key(a, b);
        if let Some(r) = self.cache.lock().unwrap().get(&key) {
            return Ok(r.clone());
        }
        let report = self.hom(a, b)?;
        self.cache.lock().unwrap().insert(key, report.clone());
        Ok(report)
    }

    pub fn cache_len(&self) -> usize {
        self.cache.lock().unwrap().len()
    }

    /// Representatives of a basis of `Hom_K(A, B)`. For infinite overlaps the maps are
    /// given on a window `extra` escalation steps beyond the stable one.
    pub fn hom_basis(&self, a: &dyn Complex, b: &dyn Complex, extra: usize) -> Result<HomBasis> {
        match plan(a, b, &self.config) {
            Plan::Empty => Ok(HomBasis { maps: Vec::new(), window: (0, -1), report: HomReport::zero() }),
            Plan::Exact(lo, hi) => {
                let s = self.solve(a, b, (lo, hi))?;
                let picks = self.backend.independent_modulo(&s.sys.homotopies, &s.kernel)?;
                let maps = picks.iter().map(|&i| s.sys.to_map(&s.kernel[i])).collect::<Vec<_>>();
                let report = HomReport {
                    dim_chain_maps: s.kernel.len(),
                    dim_null_homotopic: s.rank_h,
                    hom_dim: maps.len(),
                    window: (lo, hi),
                    stabilized: true,
                    escalations: 0,
                };
                Ok(HomBasis { maps, window: (lo, hi), report })
            }
            p @ Plan::Cut { .. } => {
                let (e, inner, outer, total, image) = self.stabilize(a, b, p)?;
                let source = if extra == 0 { outer } else { self.solve(a, b, p.window(e + 1 + extra, self.config.step))? };
                let restricted: Vec<SparseVec> = source.kernel.iter().map(|v| inner.sys.restrict(&source.sys, v)).collect();
                let picks = self.backend.independent_modulo(&inner.sys.homotopies, &restricted)?;
                let maps = picks.iter().map(|&i| source.sys.to_map(&source.kernel[i])).collect();
                let report = HomReport {
                    dim_chain_maps: total,
                    dim_null_homotopic: inner.rank_h,
                    hom_dim: image,
                    window: (inner.sys.lo, inner.sys.hi),
                    stabilized: true,
                    escalations: e,
                };
                Ok(HomBasis { maps, window: (source.sys.lo, source.sys.hi), report })
            }
        }
    }

    /// Like [`Oracle::hom_basis`], with the maps given on at least `span` wherever the
    /// overlap of `A` and `B` is infinite.
    pub fn hom_basis_covering(&self, a: &dyn Complex, b: &dyn Complex, span: (i64, i64)) -> Result<HomBasis> {
        let p = plan(a, b, &self.config);
        let Plan::Cut { lo, hi, .. } = p else { return self.hom_basis(a, b, 0) };
        let (e, ..) = self.stabilize(a, b, p)?;
        let mut extra = 0;
        loop {
            let (wl, wh) = p.window(e + 1 + extra, self.config.step);
            if (lo.is_some() || wl <= span.0) && (hi.is_some() || wh >= span.1) {
                break;
            }
            extra += 1;
        }
        self.hom_basis(a, b, extra)
    }

    /// The degree window on which [`Oracle::is_null_homotopic`] inspects maps `A → B`.
    pub fn comparison_span(&self, a: &dyn Complex, b: &dyn Complex) -> Result<Option<(i64, i64)>> {
        Ok(self.comparison_window(a, b)?.map(|(p, e)| p.window(e, self.config.step)))
    }

    /// Window on which classes of maps `A → B` are compared.
    fn comparison_window(&self, a: &dyn Complex, b: &dyn Complex) -> Result<Option<(Plan, usize)>> {
        match plan(a, b, &self.config) {
            Plan::Empty => Ok(None),
            p @ Plan::Exact(..) => Ok(Some((p, 0))),
            p @ Plan::Cut { .. } => {
                let (e, ..) = self.stabilize(a, b, p)?;
                Ok(Some((p, e)))
            }
        }
    }

    /// Whether the class of `f : A → B` vanishes.
    pub fn is_null_homotopic(&self, a: &dyn Complex, b: &dyn Complex, f: &ChainMap) -> Result<bool> {
        let Some((p, e)) = self.comparison_window(a, b)? else { return Ok(true) };
        let s = self.solve(a, b, p.window(e, self.config.step))?;
        let v = s.sys.coordinates(f);
        if v.is_empty() {
            return Ok(true);
        }
        self.backend.solve_modulo(&s.sys.homotopies, &[], &v)
    }

    /// Whether `[g] ∈ Hom_K(B, C) ∘ [f]` for `g : A → C` and `f : A → B`.
    ///
    /// `f` must be given on at least the window the oracle uses for `Hom(A, C)`.
    pub fn factors_through(
        &self,
        a: &dyn Complex,
        b: &dyn Complex,
        c: &dyn Complex,
        g: &ChainMap,
        f: &ChainMap,
    ) -> Result<bool> {
        let Some((p, e)) = self.comparison_window(a, c)? else { return Ok(true) };
        let ac = self.solve(a, c, p.window(e, self.config.step))?;
        let target = ac.sys.coordinates(g);
        if target.is_empty() || self.backend.solve_modulo(&ac.sys.homotopies, &[], &target)? {
            return Ok(true);
        }
        if f.is_zero() {
            return Ok(false);
        }
        let composites = self.composites_through(&ac, b, c, f)?;
        self.backend.solve_modulo(&ac.sys.homotopies, &composites, &target)
    }

    /// Whether every map `A → C` factors through `f : A → B` up to homotopy.
    pub fn all_factor_through(&self, a: &dyn Complex, b: &dyn Complex, c: &dyn Complex, f: &ChainMap) -> Result<bool> {
        let (ac, classes) = match plan(a, c, &self.config) {
            Plan::Empty => return Ok(true),
            Plan::Exact(lo, hi) => {
                let s = self.solve(a, c, (lo, hi))?;
                let k = s.kernel.clone();
                (s, k)
            }
            p @ Plan::Cut { .. } => {
                let (_, inner, outer, ..) = self.stabilize(a, c, p)?;
                let restricted: Vec<SparseVec> = outer.kernel.iter().map(|v| inner.sys.restrict(&outer.sys, v)).collect();
                (inner, restricted)
            }
        };
        let mut base = ac.sys.homotopies.clone();
        if !f.is_zero() {
            base.extend(self.composites_through(&ac, b, c, f)?);
        }
        Ok(self.backend.independent_modulo(&base, &classes)?.is_empty())
    }

    /// Coordinates on the `A → C` window of `g ∘ f` for every chain map `g : B → C`.
    fn composites_through(&self, ac: &Solved, b: &dyn Complex, c: &dyn Complex, f: &ChainMap) -> Result<Vec<SparseVec>> {
        let (alo, ahi) = (ac.sys.lo, ac.sys.hi);
        let pad = 2 * self.config.step;
        let bc_lo = match (b.lower(), c.lower()) {
            (Some(x), Some(y)) => x.max(y - 1),
            (Some(x), None) => x,
            (None, Some(y)) => y - 1,
            // far enough out to hold every bounded summand of `B` whole
            (None, None) => (alo - pad).min(b.core_span().0 - pad),
        };
        let bc_hi = match (b.upper(), c.upper()) {
            (Some(x), Some(y)) => y.min(x + 1),
            (None, Some(y)) => y,
            (Some(x), None) => x + 1,
            (None, None) => (ahi + pad).max(b.core_span().1 + pad),
        };
        if bc_lo > bc_hi {
            return Ok(Vec::new());
        }
        let bc = self.solve(b, c, (bc_lo, bc_hi))?;
        Ok(bc.kernel.iter().map(|v| ac.sys.coordinates(&f.then(&self.pres, &bc.sys.to_map(v), b, c))).collect())
    }

    /// Whether the composite of a chain of maps is nonzero in `Hom_K(first, last)`.
    pub fn composite_nonzero(&self, objects: &[&dyn Complex], maps: &[ChainMap]) -> Result<bool> {
        assert_eq!(objects.len(), maps.len() + 1);
        let mut comp = maps[0].clone();
        for (i, m) in maps.iter().enumerate().skip(1) {
            comp = comp.then(&self.pres, m, objects[i], objects[i + 1]);
        }
        Ok(!self.is_null_homotopic(objects[0], objects[objects.len() - 1], &comp)?)
    }

    /// Isomorphism of string complexes: equal normal forms.
    pub fn is_isomorphic(&self, a: &StringComplex, b: &StringComplex) -> bool {
        same_string(&self.pres, a, b)
    }

    /// Isomorphism through the oracle: some map between them has a contractible cone.
    pub fn isomorphic_by_cone(&self, a: &crate::complexes::BoundedComplex, b: &crate::complexes::BoundedComplex) -> Result<bool> {
        if a.is_zero() || b.is_zero() {
            return Ok(a.is_zero() && b.is_zero());
        }
        let basis = self.hom_basis(a, b, 0)?;
        let n = basis.maps.len();
        // all 0/±1 combinations of at most two basis maps
        let mut candidates: Vec<ChainMap> = basis.maps.clone();
        for i in 0..n {
            for j in i + 1..n {
                candidates.push(basis.maps[i].plus(&basis.maps[j]));
                candidates.push(basis.maps[i].plus(&basis.maps[j].scaled(-1)));
            }
        }
        for f in candidates {
            let cone = crate::complexes::mapping_cone(&self.pres, a, b, &f)?;
            if self.hom(&cone, &cone)?.hom_dim == 0 {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// Equal normal forms, with two-sided offsets compared modulo the period.
pub fn same_string(pres: &GentlePresentation, a: &StringComplex, b: &StringComplex) -> bool {
    let (wa, oa) = a.normalized(pres);
    let (wb, ob) = b.normalized(pres);
    wa == wb && oa == ob
}

/// Normal form and offset of a string complex, for use as a map key.
pub fn string_key(pres: &GentlePresentation, c: &StringComplex) -> (WordKey, i64) {
    let (w, o) = c.normalized(pres);
    (WordKey::of(pres, &w), o)
}

#[cfg(test)]
mod tests;
