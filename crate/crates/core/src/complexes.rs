//! Complexes of indecomposable projectives and maps between them.
//!
//! A map `P_u → P_w` is a linear combination of paths from `w` to `u` acting by
//! right multiplication; the composite of `·p` followed by `·q` is `·(pq)`.
//! Complexes are cohomological and may be infinite in either direction; they are
//! only ever inspected one degree at a time through [`Complex`].

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gentle::{GentlePresentation, PathId, Vertex};
use crate::strings::{normalize, validate, HomotopyWord, Line};

pub type Coef = i64;

/// A linear combination of paths, sorted by path id, without zero coefficients.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinComb(pub Vec<(PathId, Coef)>);

impl LinComb {
    pub fn single(p: PathId) -> Self {
        LinComb(vec![(p, 1)])
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add_term(&mut self, p: PathId, c: Coef) {
        match self.0.binary_search_by_key(&p, |t| t.0) {
            Ok(i) => {
                self.0[i].1 += c;
                if self.0[i].1 == 0 {
                    self.0.remove(i);
                }
            }
            Err(i) => {
                if c != 0 {
                    self.0.insert(i, (p, c));
                }
            }
        }
    }

    pub fn scaled(&self, c: Coef) -> Self {
        if c == 0 {
            return LinComb::default();
        }
        LinComb(self.0.iter().map(|&(p, x)| (p, x * c)).collect())
    }

    /// `second ∘ first` for maps given by these combinations.
    pub fn then(&self, pres: &GentlePresentation, second: &LinComb) -> LinComb {
        let mut out = LinComb::default();
        for &(p, a) in &self.0 {
            for &(q, b) in &second.0 {
                if let Some(pq) = pres.compose_ids(p, q) {
                    out.add_term(pq, a * b);
                }
            }
        }
        out
    }
}

/// Matrix of path combinations; entry `(row, col)` maps source summand `col` to target summand `row`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PathMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: BTreeMap<(usize, usize), LinComb>,
}

impl PathMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.values().all(LinComb::is_zero)
    }

    pub fn get(&self, row: usize, col: usize) -> Option<&LinComb> {
        self.entries.get(&(row, col))
    }

    pub fn add(&mut self, row: usize, col: usize, p: PathId, c: Coef) {
        let e = self.entries.entry((row, col)).or_default();
        e.add_term(p, c);
        if e.is_zero() {
            self.entries.remove(&(row, col));
        }
    }

    pub fn scaled(&self, c: Coef) -> Self {
        let mut out = Self::zero(self.rows, self.cols);
        for (&k, v) in &self.entries {
            let s = v.scaled(c);
            if !s.is_zero() {
                out.entries.insert(k, s);
            }
        }
        out
    }

    pub fn plus(&self, other: &PathMatrix) -> Self {
        let mut out = self.clone();
        for (&(r, c), v) in &other.entries {
            for &(p, x) in &v.0 {
                out.add(r, c, p, x);
            }
        }
        out
    }

    /// `second ∘ self`.
    pub fn then(&self, pres: &GentlePresentation, second: &PathMatrix) -> PathMatrix {
        let mut out = PathMatrix::zero(second.rows, self.cols);
        for (&(mid, col), a) in &self.entries {
            for (&(row, mid2), b) in &second.entries {
                if mid2 != mid {
                    continue;
                }
                let prod = a.then(pres, b);
                for &(p, x) in &prod.0 {
                    out.add(row, col, p, x);
                }
            }
        }
        out
    }
}

/// Read-only view of a complex, degree by degree.
pub trait Complex: Send + Sync {
    /// Summand vertices in degree `d`.
    fn term(&self, d: i64) -> Vec<Vertex>;
    /// Differential `term(d) → term(d + 1)`.
    fn differential(&self, d: i64) -> PathMatrix;
    /// Lowest nonzero degree, `None` if unbounded below.
    fn lower(&self) -> Option<i64>;
    /// Highest nonzero degree, `None` if unbounded above.
    fn upper(&self) -> Option<i64>;
    /// Degrees outside which the complex is a periodic copy of the line.
    fn core_span(&self) -> (i64, i64);

    fn is_zero(&self) -> bool {
        matches!((self.lower(), self.upper()), (Some(l), Some(h)) if l > h)
    }
}

/// A homotopy word placed in degrees: the leftmost core position sits in degree `offset`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StringComplex {
    pub word: HomotopyWord,
    pub offset: i64,
    period: i64,
    core_degrees: Vec<i64>,
    line_vertices: Vec<Vertex>,
    line_letters: Vec<PathId>,
    core_letters: Vec<PathId>,
    left_phase: i64,
    right_phase: i64,
}

impl StringComplex {
    /// Realizes `word` with its leftmost core position in degree `offset`.
    pub fn realize(pres: &GentlePresentation, word: &HomotopyWord, offset: i64) -> Result<Self> {
        validate(pres, word)?;
        let line = Line::new(pres);
        let period = line.period();
        let mut core_degrees = vec![offset];
        for l in &word.core {
            let last = *core_degrees.last().unwrap();
            core_degrees.push(if l.inverse { last - 1 } else { last + 1 });
        }
        let line_vertices = (0..period).map(|s| line.vertex(s)).collect();
        let line_letters = (0..period).map(|s| pres.path_id(line.letter(s)).unwrap()).collect();
        let core_letters = word.core.iter().map(|l| pres.path_id(&l.path).unwrap()).collect();
        let left_phase = line.phase_of_vertex(word.first_vertex()).unwrap_or(0);
        let right_phase = line.phase_of_vertex(word.last_vertex()).unwrap_or(0);
        let c = Self {
            word: word.clone(),
            offset,
            period,
            core_degrees,
            line_vertices,
            line_letters,
            core_letters,
            left_phase,
            right_phase,
        };
        c.check_d_squared(pres)?;
        Ok(c)
    }

    /// The same complex written with a normalized word; two-sided offsets are reduced modulo `r`.
    pub fn normalized(&self, pres: &GentlePresentation) -> (HomotopyWord, i64) {
        let (w, shift) = normalize(pres, &self.word);
        let mut offset = self.offset + shift;
        if w.left_tail && w.right_tail {
            offset = offset.rem_euclid(self.period);
        }
        (w, offset)
    }

    /// `Σ^t`: every degree drops by `t`.
    pub fn shift(&self, t: i64) -> Self {
        let mut c = self.clone();
        c.offset -= t;
        for d in &mut c.core_degrees {
            *d -= t;
        }
        c
    }

    fn len(&self) -> i64 {
        self.word.core.len() as i64
    }

    fn vertex_of(&self, x: i64) -> Vertex {
        if x < 0 {
            self.line_vertices[(self.left_phase + x).rem_euclid(self.period) as usize]
        } else if x > self.len() {
            self.line_vertices[(self.right_phase + x - self.len()).rem_euclid(self.period) as usize]
        } else if x == 0 {
            self.word.first_vertex()
        } else {
            self.word.core[x as usize - 1].right_vertex()
        }
    }

    fn position_exists(&self, x: i64) -> bool {
        (0..=self.len()).contains(&x) || (x < 0 && self.word.left_tail) || (x > self.len() && self.word.right_tail)
    }

    /// Letter between positions `x` and `x + 1`: its path and whether it maps `x → x+1`.
    fn letter_after(&self, x: i64) -> Option<(PathId, bool)> {
        if !self.position_exists(x) || !self.position_exists(x + 1) {
            return None;
        }
        if x < 0 {
            let phase = (self.left_phase + x).rem_euclid(self.period);
            Some((self.line_letters[phase as usize], true))
        } else if x >= self.len() {
            let phase = (self.right_phase + x - self.len()).rem_euclid(self.period);
            Some((self.line_letters[phase as usize], true))
        } else {
            let l = &self.word.core[x as usize];
            Some((self.core_letters[x as usize], !l.inverse))
        }
    }

    fn positions_at(&self, d: i64) -> Vec<i64> {
        let mut out = Vec::new();
        if self.word.left_tail {
            let x = d - self.core_degrees[0];
            if x < 0 {
                out.push(x);
            }
        }
        for (i, &deg) in self.core_degrees.iter().enumerate() {
            if deg == d {
                out.push(i as i64);
            }
        }
        if self.word.right_tail {
            let x = self.len() + (d - self.core_degrees[self.len() as usize]);
            if x > self.len() {
                out.push(x);
            }
        }
        out
    }

    pub fn check_d_squared(&self, pres: &GentlePresentation) -> Result<()> {
        let (lo, hi) = self.core_span();
        for d in (lo - 2 * self.period - 1)..=(hi + 2 * self.period) {
            let sq = self.differential(d).then(pres, &self.differential(d + 1));
            if !sq.is_zero() {
                return Err(Error::Consistency(format!("d∘d ≠ 0 at degree {d}")));
            }
        }
        Ok(())
    }
}

impl Complex for StringComplex {
    fn term(&self, d: i64) -> Vec<Vertex> {
        self.positions_at(d).into_iter().map(|x| self.vertex_of(x)).collect()
    }

    fn differential(&self, d: i64) -> PathMatrix {
        let from = self.positions_at(d);
        let to = self.positions_at(d + 1);
        let mut m = PathMatrix::zero(to.len(), from.len());
        for (col, &x) in from.iter().enumerate() {
            let mut add = |y: i64, p: PathId| {
                if let Some(row) = to.iter().position(|&t| t == y) {
                    m.add(row, col, p, 1);
                }
            };
            if let Some((p, forward)) = self.letter_after(x) {
                if forward {
                    add(x + 1, p);
                }
            }
            if let Some((p, forward)) = self.letter_after(x - 1) {
                if !forward {
                    add(x - 1, p);
                }
            }
        }
        m
    }

    fn lower(&self) -> Option<i64> {
        if self.word.left_tail {
            None
        } else {
            self.core_degrees.iter().min().copied()
        }
    }

    fn upper(&self) -> Option<i64> {
        if self.word.right_tail {
            None
        } else {
            self.core_degrees.iter().max().copied()
        }
    }

    fn core_span(&self) -> (i64, i64) {
        let lo = *self.core_degrees.iter().min().unwrap();
        let hi = *self.core_degrees.iter().max().unwrap();
        (lo, hi)
    }
}

/// A complex with finitely many nonzero terms, stored explicitly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundedComplex {
    pub lo: i64,
    pub terms: Vec<Vec<Vertex>>,
    /// `diffs[i]` maps degree `lo + i` to `lo + i + 1`.
    pub diffs: Vec<PathMatrix>,
}

impl BoundedComplex {
    pub fn zero() -> Self {
        Self { lo: 0, terms: Vec::new(), diffs: Vec::new() }
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.terms.len() as i64 - 1
    }

    /// Copies degrees `[lo, hi]` of any complex, dropping differentials that leave the window.
    pub fn from_window(c: &dyn Complex, lo: i64, hi: i64) -> Self {
        if lo > hi {
            return Self::zero();
        }
        let terms: Vec<Vec<Vertex>> = (lo..=hi).map(|d| c.term(d)).collect();
        let mut diffs: Vec<PathMatrix> = (lo..hi).map(|d| c.differential(d)).collect();
        diffs.push(PathMatrix::zero(0, terms.last().map_or(0, Vec::len)));
        Self { lo, terms, diffs }.trimmed()
    }

    fn trimmed(mut self) -> Self {
        while self.terms.last().is_some_and(Vec::is_empty) {
            self.terms.pop();
            self.diffs.pop();
        }
        while self.terms.first().is_some_and(Vec::is_empty) {
            self.terms.remove(0);
            self.diffs.remove(0);
            self.lo += 1;
        }
        if self.terms.is_empty() {
            return Self::zero();
        }
        if let Some(last) = self.diffs.last_mut() {
            *last = PathMatrix::zero(0, self.terms.last().unwrap().len());
        }
        self
    }

    /// `Σ^t`: degrees drop by `t` and differentials change sign for odd `t`.
    pub fn shift(&self, t: i64) -> Self {
        let sign = if t.rem_euclid(2) == 1 { -1 } else { 1 };
        Self {
            lo: self.lo - t,
            terms: self.terms.clone(),
            diffs: self.diffs.iter().map(|m| m.scaled(sign)).collect(),
        }
    }

    pub fn check_d_squared(&self, pres: &GentlePresentation) -> Result<()> {
        for w in self.diffs.windows(2) {
            if !w[0].then(pres, &w[1]).is_zero() {
                return Err(Error::Consistency("d∘d ≠ 0 in bounded complex".into()));
            }
        }
        Ok(())
    }

    pub fn to_json(&self, pres: &GentlePresentation) -> BoundedComplexJson {
        let mut differentials = Vec::new();
        for (i, m) in self.diffs.iter().enumerate() {
            for (&(row, col), v) in &m.entries {
                differentials.push(DifferentialEntryJson {
                    degree: self.lo + i as i64,
                    source: col,
                    target: row,
                    terms: v.0.iter().map(|&(p, c)| (pres.path_label(pres.path(p)), c)).collect(),
                });
            }
        }
        BoundedComplexJson {
            schema: "kproj.complex/v1".into(),
            lo: self.lo,
            hi: self.hi(),
            summands: self.terms.clone(),
            differentials,
        }
    }
}

impl Complex for BoundedComplex {
    fn term(&self, d: i64) -> Vec<Vertex> {
        let i = d - self.lo;
        if i < 0 || i >= self.terms.len() as i64 {
            Vec::new()
        } else {
            self.terms[i as usize].clone()
        }
    }

    fn differential(&self, d: i64) -> PathMatrix {
        let i = d - self.lo;
        if i < 0 || i >= self.diffs.len() as i64 {
            PathMatrix::zero(self.term(d + 1).len(), self.term(d).len())
        } else {
            let mut m = self.diffs[i as usize].clone();
            m.rows = self.term(d + 1).len();
            m
        }
    }

    fn lower(&self) -> Option<i64> {
        Some(if self.terms.is_empty() { 1 } else { self.lo })
    }

    fn upper(&self) -> Option<i64> {
        Some(if self.terms.is_empty() { 0 } else { self.hi() })
    }

    fn core_span(&self) -> (i64, i64) {
        if self.terms.is_empty() {
            (0, 0)
        } else {
            (self.lo, self.hi())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DifferentialEntryJson {
    pub degree: i64,
    pub source: usize,
    pub target: usize,
    pub terms: Vec<(String, Coef)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundedComplexJson {
    pub schema: String,
    pub lo: i64,
    pub hi: i64,
    pub summands: Vec<Vec<Vertex>>,
    pub differentials: Vec<DifferentialEntryJson>,
}

/// Brutal truncation to degrees `[lo, hi]`.
pub fn truncate(c: &dyn Complex, lo: i64, hi: i64) -> BoundedComplex {
    BoundedComplex::from_window(c, lo, hi)
}

/// Degreewise maps of a fixed degree between two complexes, nonzero on finitely many degrees.
///
/// `components[i]` maps `source^(lo+i)` to `target^(lo+i+degree)`; `degree` is 0 for
/// chain maps and −1 for homotopies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainMap {
    pub lo: i64,
    pub degree: i64,
    pub components: Vec<PathMatrix>,
}

impl ChainMap {
    pub fn zero() -> Self {
        Self { lo: 0, degree: 0, components: Vec::new() }
    }

    pub fn component(&self, d: i64, rows: usize, cols: usize) -> PathMatrix {
        let i = d - self.lo;
        if i < 0 || i >= self.components.len() as i64 {
            PathMatrix::zero(rows, cols)
        } else {
            let mut m = self.components[i as usize].clone();
            m.rows = rows;
            m.cols = cols;
            m
        }
    }

    pub fn support(&self) -> Option<(i64, i64)> {
        let nz: Vec<i64> = self
            .components
            .iter()
            .enumerate()
            .filter(|(_, m)| !m.is_zero())
            .map(|(i, _)| self.lo + i as i64)
            .collect();
        Some((*nz.first()?, *nz.last()?))
    }

    pub fn is_zero(&self) -> bool {
        self.support().is_none()
    }

    /// Identity of `c` on degrees `[lo, hi]`.
    pub fn identity(pres: &GentlePresentation, c: &dyn Complex, lo: i64, hi: i64) -> Self {
        let components = (lo..=hi)
            .map(|d| {
                let t = c.term(d);
                let mut m = PathMatrix::zero(t.len(), t.len());
                for (i, &v) in t.iter().enumerate() {
                    let e = pres.path_id(&crate::gentle::Path::trivial(v)).unwrap();
                    m.add(i, i, e, 1);
                }
                m
            })
            .collect();
        Self { lo, degree: 0, components }
    }

    pub fn scaled(&self, c: Coef) -> Self {
        Self { lo: self.lo, degree: self.degree, components: self.components.iter().map(|m| m.scaled(c)).collect() }
    }

    pub fn plus(&self, other: &ChainMap) -> Self {
        if self.components.is_empty() {
            return other.clone();
        }
        if other.components.is_empty() {
            return self.clone();
        }
        let lo = self.lo.min(other.lo);
        let hi = (self.lo + self.components.len() as i64).max(other.lo + other.components.len() as i64);
        let components = (lo..hi)
            .map(|d| {
                let a = self.components.get((d - self.lo) as usize).filter(|_| d >= self.lo);
                let b = other.components.get((d - other.lo) as usize).filter(|_| d >= other.lo);
                match (a, b) {
                    (Some(x), Some(y)) => {
                        let mut s = x.plus(y);
                        s.rows = x.rows.max(y.rows);
                        s.cols = x.cols.max(y.cols);
                        s
                    }
                    (Some(x), None) => x.clone(),
                    (None, Some(y)) => y.clone(),
                    (None, None) => PathMatrix::zero(0, 0),
                }
            })
            .collect();
        Self { lo, degree: self.degree, components }
    }

    /// `second ∘ self` for chain maps `A → B → C` (both of degree 0).
    pub fn then(&self, pres: &GentlePresentation, second: &ChainMap, b: &dyn Complex, c: &dyn Complex) -> ChainMap {
        let (Some((lo1, hi1)), Some((lo2, hi2))) = (self.support(), second.support()) else {
            return ChainMap::zero();
        };
        let lo = lo1.max(lo2);
        let hi = hi1.min(hi2);
        if lo > hi {
            return ChainMap::zero();
        }
        let components = (lo..=hi)
            .map(|d| {
                let f = &self.components[(d - self.lo) as usize];
                let g = second.component(d, c.term(d).len(), b.term(d).len());
                f.then(pres, &g)
            })
            .collect();
        Self { lo, degree: 0, components }
    }

    /// The components in degrees `[lo, hi]` only.
    pub fn restricted(&self, lo: i64, hi: i64) -> ChainMap {
        if lo > hi {
            return ChainMap::zero();
        }
        let components = (lo..=hi)
            .map(|d| match self.components.get((d - self.lo) as usize).filter(|_| d >= self.lo) {
                Some(m) => m.clone(),
                None => PathMatrix::zero(0, 0),
            })
            .collect();
        Self { lo, degree: self.degree, components }
    }

    /// `(f_1, …, f_n) : A → B_1 ⊕ ⋯ ⊕ B_n` for maps `f_i : A → B_i`.
    pub fn stacked(parts: &[(&ChainMap, &dyn Complex)], source: &dyn Complex) -> ChainMap {
        let supports: Vec<(i64, i64)> = parts.iter().filter_map(|(f, _)| f.support()).collect();
        let (Some(lo), Some(hi)) = (supports.iter().map(|s| s.0).min(), supports.iter().map(|s| s.1).max()) else {
            return ChainMap::zero();
        };
        let components = (lo..=hi)
            .map(|d| {
                let cols = source.term(d).len();
                let sizes: Vec<usize> = parts.iter().map(|(_, b)| b.term(d).len()).collect();
                let mut m = PathMatrix::zero(sizes.iter().sum(), cols);
                let mut offset = 0;
                for ((f, _), &rows) in parts.iter().zip(&sizes) {
                    for (&(r, c), v) in &f.component(d, rows, cols).entries {
                        for &(p, x) in &v.0 {
                            m.add(offset + r, c, p, x);
                        }
                    }
                    offset += rows;
                }
                m
            })
            .collect();
        Self { lo, degree: 0, components }
    }

    /// Checks `d_B f = f d_A` in every degree where either side can be nonzero.
    pub fn verify(&self, pres: &GentlePresentation, a: &dyn Complex, b: &dyn Complex) -> Result<()> {
        let Some((lo, hi)) = self.support() else { return Ok(()) };
        for d in (lo - 1)..=hi {
            let fd = self.component(d, b.term(d).len(), a.term(d).len());
            let fd1 = self.component(d + 1, b.term(d + 1).len(), a.term(d + 1).len());
            let left = fd.then(pres, &b.differential(d));
            let right = a.differential(d).then(pres, &fd1);
            if left != right {
                return Err(Error::Contract(format!("not a chain map: commutativity fails at degree {d}")));
            }
        }
        Ok(())
    }
}

/// Mapping cone of a chain map with finite support: `Cone^d = A^{d+1} ⊕ B^d`
/// with differential `[[−d_A, 0], [f, d_B]]`.
pub struct ConeComplex {
    pres: Arc<GentlePresentation>,
    a: Arc<dyn Complex>,
    b: Arc<dyn Complex>,
    f: ChainMap,
}

impl ConeComplex {
    pub fn new(pres: Arc<GentlePresentation>, a: Arc<dyn Complex>, b: Arc<dyn Complex>, f: ChainMap) -> Result<Self> {
        f.verify(&pres, a.as_ref(), b.as_ref())?;
        let c = Self { pres, a, b, f };
        let (lo, hi) = c.core_span();
        for d in (lo - 2)..=(hi + 1) {
            if !c.differential(d).then(&c.pres, &c.differential(d + 1)).is_zero() {
                return Err(Error::Consistency(format!("cone differential does not square to zero at {d}")));
            }
        }
        Ok(c)
    }
}

impl Complex for ConeComplex {
    fn term(&self, d: i64) -> Vec<Vertex> {
        let mut t = self.a.term(d + 1);
        t.extend(self.b.term(d));
        t
    }

    fn differential(&self, d: i64) -> PathMatrix {
        let na1 = self.a.term(d + 1).len();
        let nb0 = self.b.term(d).len();
        let na2 = self.a.term(d + 2).len();
        let nb1 = self.b.term(d + 1).len();
        let mut m = PathMatrix::zero(na2 + nb1, na1 + nb0);
        for (&(r, c), v) in &self.a.differential(d + 1).entries {
            for &(p, x) in &v.0 {
                m.add(r, c, p, -x);
            }
        }
        for (&(r, c), v) in &self.f.component(d + 1, nb1, na1).entries {
            for &(p, x) in &v.0 {
                m.add(na2 + r, c, p, x);
            }
        }
        for (&(r, c), v) in &self.b.differential(d).entries {
            for &(p, x) in &v.0 {
                m.add(na2 + r, na1 + c, p, x);
            }
        }
        m
    }

    fn lower(&self) -> Option<i64> {
        match (self.a.lower(), self.b.lower()) {
            (Some(x), Some(y)) => Some((x - 1).min(y)),
            _ => None,
        }
    }

    fn upper(&self) -> Option<i64> {
        match (self.a.upper(), self.b.upper()) {
            (Some(x), Some(y)) => Some((x - 1).max(y)),
            _ => None,
        }
    }

    fn core_span(&self) -> (i64, i64) {
        let (alo, ahi) = self.a.core_span();
        let (blo, bhi) = self.b.core_span();
        let mut lo = (alo - 1).min(blo);
        let mut hi = (ahi - 1).max(bhi);
        if let Some((flo, fhi)) = self.f.support() {
            lo = lo.min(flo - 1);
            hi = hi.max(fhi);
        }
        (lo, hi)
    }
}

/// Mapping cone of a chain map between bounded complexes.
pub fn mapping_cone(
    pres: &GentlePresentation,
    a: &BoundedComplex,
    b: &BoundedComplex,
    f: &ChainMap,
) -> Result<BoundedComplex> {
    let cone = ConeComplex::new(
        Arc::new(pres.clone()),
        Arc::new(a.clone()),
        Arc::new(b.clone()),
        f.clone(),
    )?;
    let lo = cone.lower().unwrap();
    let hi = cone.upper().unwrap();
    let out = BoundedComplex::from_window(&cone, lo, hi);
    out.check_d_squared(pres)?;
    Ok(out)
}

/// Direct sum of complexes, summands in the given order within each degree.
pub struct SumComplex {
    pub parts: Vec<Arc<dyn Complex>>,
}

impl Complex for SumComplex {
    fn term(&self, d: i64) -> Vec<Vertex> {
        self.parts.iter().flat_map(|c| c.term(d)).collect()
    }

    fn differential(&self, d: i64) -> PathMatrix {
        let blocks: Vec<PathMatrix> = self.parts.iter().map(|c| c.differential(d)).collect();
        let mut m = PathMatrix::zero(blocks.iter().map(|b| b.rows).sum(), blocks.iter().map(|b| b.cols).sum());
        let (mut r0, mut c0) = (0, 0);
        for b in &blocks {
            for (&(r, c), v) in &b.entries {
                for &(p, x) in &v.0 {
                    m.add(r0 + r, c0 + c, p, x);
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    fn lower(&self) -> Option<i64> {
        let mut out = i64::MAX;
        for c in self.parts.iter().filter(|c| !c.is_zero()) {
            out = out.min(c.lower()?);
        }
        Some(out)
    }

    fn upper(&self) -> Option<i64> {
        let mut out = i64::MIN;
        for c in self.parts.iter().filter(|c| !c.is_zero()) {
            out = out.max(c.upper()?);
        }
        Some(out)
    }

    fn core_span(&self) -> (i64, i64) {
        let spans: Vec<(i64, i64)> = self.parts.iter().filter(|c| !c.is_zero()).map(|c| c.core_span()).collect();
        match (spans.iter().map(|s| s.0).min(), spans.iter().map(|s| s.1).max()) {
            (Some(lo), Some(hi)) => (lo, hi),
            _ => (0, -1),
        }
    }
}

/// `Σ^t` of an arbitrary complex: degrees drop by `t`, differentials change sign for odd `t`.
pub struct ShiftedComplex {
    pub inner: Arc<dyn Complex>,
    pub t: i64,
}

impl Complex for ShiftedComplex {
    fn term(&self, d: i64) -> Vec<Vertex> {
        self.inner.term(d + self.t)
    }

    fn differential(&self, d: i64) -> PathMatrix {
        let m = self.inner.differential(d + self.t);
        if self.t.rem_euclid(2) == 1 {
            m.scaled(-1)
        } else {
            m
        }
    }

    fn lower(&self) -> Option<i64> {
        self.inner.lower().map(|x| x - self.t)
    }

    fn upper(&self) -> Option<i64> {
        self.inner.upper().map(|x| x - self.t)
    }

    fn core_span(&self) -> (i64, i64) {
        let (lo, hi) = self.inner.core_span();
        (lo - self.t, hi - self.t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gentle::AlgebraParams;
    use crate::strings::{master_words, parse_word};

    fn alg(r: u32, n: u32, m: u32) -> GentlePresentation {
        GentlePresentation::build(AlgebraParams::new(r, n, m).unwrap()).unwrap()
    }

    #[test]
    fn realize_single_loop_letter() {
        let p = alg(1, 1, 0);
        let w = parse_word(&p, "(b0)").unwrap();
        let c = StringComplex::realize(&p, &w, 0).unwrap();
        assert_eq!(c.term(0), vec![0]);
        assert_eq!(c.term(1), vec![0]);
        assert!(c.term(2).is_empty());
        let d = c.differential(0);
        let b0 = p.path_id(&p.parse_path_label("b0").unwrap()).unwrap();
        assert_eq!(d.get(0, 0), Some(&LinComb::single(b0)));
        assert_eq!((c.lower(), c.upper()), (Some(0), Some(1)));
    }

    #[test]
    fn stalk_at_offset() {
        let p = alg(1, 1, 0);
        let c = StringComplex::realize(&p, &HomotopyWord::stalk(0), 5).unwrap();
        assert_eq!(c.term(5), vec![0]);
        assert_eq!((c.lower(), c.upper()), (Some(5), Some(5)));
    }

    #[test]
    fn peak_has_two_outgoing_components() {
        let p = alg(2, 3, 1);
        let w = parse_word(&p, "[a^-1 | (c2) | (b1*b0)]").unwrap();
        let c = StringComplex::realize(&p, &w, 0).unwrap();
        // positions: −1 at degree 0, 0 at degree −1, 2 at degree 0, 0 at degree 1
        assert_eq!(c.term(-1), vec![0]);
        assert_eq!(c.term(0).len(), 2);
        let d = c.differential(-1);
        assert_eq!(d.entries.len(), 2);
    }

    #[test]
    fn truncate_two_sided_loop() {
        let p = alg(1, 1, 0);
        let c = StringComplex::realize(&p, &master_words(&p).two_sided(), 0).unwrap();
        let t = truncate(&c, 0, 2);
        assert_eq!(t.terms, vec![vec![0], vec![0], vec![0]]);
        assert!(!t.diffs[0].is_zero() && !t.diffs[1].is_zero());
        assert!(t.diffs[2].is_zero());
        assert_eq!(truncate(&c, 3, 2), BoundedComplex::zero());
    }

    #[test]
    fn truncating_a_bounded_complex_to_a_superset_is_identity() {
        let p = alg(2, 3, 1);
        let w = master_words(&p).finite(1);
        let c = StringComplex::realize(&p, &w, 0).unwrap();
        let t1 = truncate(&c, -10, 10);
        let t2 = truncate(&t1, -20, 20);
        assert_eq!(t1, t2);
    }

    #[test]
    fn shifts_compose() {
        let p = alg(2, 3, 0);
        let c = StringComplex::realize(&p, &parse_word(&p, "v").unwrap(), 0).unwrap();
        let t = truncate(&c, -5, 5);
        assert_eq!(t.shift(1).shift(-1), t);
        let stalk = truncate(&StringComplex::realize(&p, &HomotopyWord::stalk(0), 0).unwrap(), -1, 1);
        assert_eq!(stalk.shift(1).lo, -1);
        assert_eq!(c.shift(1).shift(-1), c);
    }

    #[test]
    fn cone_of_zero_map_is_a_sum() {
        let p = alg(1, 1, 0);
        let a = truncate(&StringComplex::realize(&p, &parse_word(&p, "(b0)").unwrap(), 0).unwrap(), -5, 5);
        let b = truncate(&StringComplex::realize(&p, &HomotopyWord::stalk(0), 0).unwrap(), -5, 5);
        let cone = mapping_cone(&p, &a, &b, &ChainMap::zero()).unwrap();
        let sa = a.shift(1);
        assert_eq!(cone.term(-1), sa.term(-1));
        assert_eq!(cone.term(0), [sa.term(0), b.term(0)].concat());
    }

    #[test]
    fn non_chain_map_is_rejected() {
        let p = alg(1, 1, 0);
        let a = truncate(&StringComplex::realize(&p, &parse_word(&p, "(b0)").unwrap(), 0).unwrap(), -5, 5);
        // identity in degree 0 only does not commute with b0
        let mut f = ChainMap::identity(&p, &a, 0, 0);
        f.lo = 0;
        assert!(matches!(mapping_cone(&p, &a, &a, &f), Err(Error::Contract(_))));
    }
}
