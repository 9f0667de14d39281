//! Bound-quiver presentation of the derived-discrete algebras `Λ(r, n, m)`.
//!
//! The quiver has a cycle `0 → 1 → … → n−1 → 0` and a linear tail
//! `−m → … → −1 → 0` attached at vertex 0. Cycle arrows `t → t+1` are named
//! `b_t` for `t ≤ n−r` and `c_t` otherwise; tail arrows `a_{−i} : −i → −i+1`.
//! The `r` zero relations are the consecutive cycle pairs passing through the
//! vertices `n−r+1, …, n−1, 0`.
//!
//! Path products follow the convention that in `pq` the path `q` is traversed
//! first. A morphism `P_u → P_w` between indecomposable projectives is right
//! multiplication by a path from `w` to `u`, so `Hom(P_u, P_w)` has the basis
//! of nonzero paths with source `w` and target `u`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vertex = i32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AlgebraParams {
    pub r: u32,
    pub n: u32,
    pub m: u32,
}

impl AlgebraParams {
    pub fn new(r: u32, n: u32, m: u32) -> Result<Self> {
        if r < 1 {
            return Err(Error::Parameter(format!("r must be at least 1, got {r}")));
        }
        if r > n {
            return Err(Error::Parameter(format!("r must not exceed n, got r={r}, n={n}")));
        }
        Ok(Self { r, n, m })
    }

    /// Parses `r,n,m`.
    pub fn parse(text: &str) -> Result<Self> {
        let parts: Vec<&str> = text.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(Error::Parameter(format!("expected `r,n,m`, got `{text}`")));
        }
        let mut vals = [0u32; 3];
        for (slot, part) in vals.iter_mut().zip(&parts) {
            *slot = part
                .parse()
                .map_err(|_| Error::Parameter(format!("`{part}` is not a non-negative integer")))?;
        }
        Self::new(vals[0], vals[1], vals[2])
    }

    pub fn ri(&self) -> i64 {
        self.r as i64
    }
    pub fn ni(&self) -> i64 {
        self.n as i64
    }
    pub fn mi(&self) -> i64 {
        self.m as i64
    }
}

impl fmt::Display for AlgebraParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.r, self.n, self.m)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ArrowId(pub u16);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub id: ArrowId,
    pub label: String,
    pub source: Vertex,
    pub target: Vertex,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quiver {
    pub vertices: Vec<Vertex>,
    pub arrows: Vec<Arrow>,
}

/// A nonzero path, stored as its arrows in traversal order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub source: Vertex,
    pub target: Vertex,
    pub arrows: Vec<ArrowId>,
}

impl Path {
    pub fn trivial(v: Vertex) -> Self {
        Self { source: v, target: v, arrows: Vec::new() }
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn first_arrow(&self) -> Option<ArrowId> {
        self.arrows.first().copied()
    }

    pub fn last_arrow(&self) -> Option<ArrowId> {
        self.arrows.last().copied()
    }
}

/// Index into the table of nonzero paths of a presentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PathId(pub u32);

/// Shape of a minimal projective resolution of a simple module.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionSummary {
    pub vertex: Vertex,
    /// Vertices of the projective covers of the syzygies `Ω¹, Ω², …`.
    pub syzygy_vertices: Vec<Vec<Vertex>>,
    pub periodic: bool,
    /// Number of steps after which the resolution stopped (all syzygies zero).
    pub terminated_at: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GldimClass {
    Finite,
    Infinite,
}

#[derive(Debug, Clone)]
pub struct GentlePresentation {
    params: AlgebraParams,
    quiver: Quiver,
    /// `(first, second)` meaning the path "first, then second" is zero.
    relations: Vec<(ArrowId, ArrowId)>,
    paths: Vec<Path>,
    path_index: HashMap<Vec<ArrowId>, Vec<(Vertex, PathId)>>,
    /// `between[(from, to)]`: nonzero paths with that source and target.
    between: HashMap<(Vertex, Vertex), Vec<PathId>>,
    compose_table: Vec<Option<PathId>>,
}

impl GentlePresentation {
    pub fn build(params: AlgebraParams) -> Result<Self> {
        let params = AlgebraParams::new(params.r, params.n, params.m)?;
        let (r, n, m) = (params.r as i32, params.n as i32, params.m as i32);

        let mut vertices: Vec<Vertex> = (-m..n).collect();
        vertices.sort();

        let mut arrows = Vec::new();
        for t in 0..n {
            let label = if t <= n - r { format!("b{t}") } else { format!("c{t}") };
            arrows.push(Arrow {
                id: ArrowId(arrows.len() as u16),
                label,
                source: t,
                target: (t + 1) % n,
            });
        }
        for i in 1..=m {
            arrows.push(Arrow {
                id: ArrowId(arrows.len() as u16),
                label: format!("a-{i}"),
                source: -i,
                target: -i + 1,
            });
        }

        // α_{t+1}·α_t = 0 for t = n−r, …, n−1 (indices mod n).
        let mut relations = Vec::new();
        for t in (n - r)..n {
            let first = ArrowId(t as u16);
            let second = ArrowId(((t + 1) % n) as u16);
            relations.push((first, second));
        }

        let quiver = Quiver { vertices, arrows };
        let mut pres = Self {
            params,
            quiver,
            relations,
            paths: Vec::new(),
            path_index: HashMap::new(),
            between: HashMap::new(),
            compose_table: Vec::new(),
        };
        pres.enumerate_paths()?;
        pres.validate()?;
        Ok(pres)
    }

    fn enumerate_paths(&mut self) -> Result<()> {
        let limit = 4 * (self.quiver.arrows.len() + 2);
        let mut paths = Vec::new();
        for &v in &self.quiver.vertices {
            let mut stack = vec![Path::trivial(v)];
            while let Some(p) = stack.pop() {
                if p.len() > limit {
                    return Err(Error::Consistency(format!(
                        "path from vertex {v} exceeds {limit} arrows; algebra is not finite-dimensional"
                    )));
                }
                for a in self.arrows_from(p.target) {
                    if let Some(last) = p.last_arrow() {
                        if self.is_relation(last, a.id) {
                            continue;
                        }
                    }
                    let mut next = p.clone();
                    next.arrows.push(a.id);
                    next.target = a.target;
                    stack.push(next);
                }
                paths.push(p);
            }
        }
        paths.sort_by(|a, b| (a.source, a.len(), &a.arrows).cmp(&(b.source, b.len(), &b.arrows)));

        for (i, p) in paths.iter().enumerate() {
            let id = PathId(i as u32);
            self.path_index.entry(p.arrows.clone()).or_default().push((p.source, id));
            self.between.entry((p.source, p.target)).or_default().push(id);
        }
        let count = paths.len();
        self.paths = paths;
        let mut table = vec![None; count * count];
        for (i, p) in self.paths.iter().enumerate() {
            for (j, q) in self.paths.iter().enumerate() {
                if let Some(pq) = self.compose(p, q) {
                    table[i * count + j] = Some(self.path_id(&pq).expect("composite is enumerated"));
                }
            }
        }
        self.compose_table = table;
        Ok(())
    }

    fn validate(&self) -> Result<()> {
        let r = self.params.r as usize;
        if self.relations.len() != r {
            return Err(Error::Consistency(format!(
                "expected {r} relations, built {}",
                self.relations.len()
            )));
        }
        for &v in &self.quiver.vertices {
            let outs = self.arrows_from(v).count();
            let ins = self.quiver.arrows.iter().filter(|a| a.target == v).count();
            if outs > 2 || ins > 2 {
                return Err(Error::Consistency(format!("vertex {v} has too many arrows")));
            }
        }
        if self.long_path().is_none() {
            return Err(Error::Consistency("the long letter is a zero path".into()));
        }
        Ok(())
    }

    pub fn params(&self) -> AlgebraParams {
        self.params
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &[(ArrowId, ArrowId)] {
        &self.relations
    }

    pub fn arrow(&self, id: ArrowId) -> &Arrow {
        &self.quiver.arrows[id.0 as usize]
    }

    pub fn arrow_by_label(&self, label: &str) -> Option<&Arrow> {
        self.quiver.arrows.iter().find(|a| a.label == label)
    }

    pub fn arrows_from(&self, v: Vertex) -> impl Iterator<Item = &Arrow> {
        self.quiver.arrows.iter().filter(move |a| a.source == v)
    }

    pub fn has_vertex(&self, v: Vertex) -> bool {
        self.quiver.vertices.contains(&v)
    }

    /// Cycle arrow `t → t+1`.
    pub fn cycle_arrow(&self, t: i32) -> ArrowId {
        let n = self.params.n as i32;
        ArrowId(t.rem_euclid(n) as u16)
    }

    /// Tail arrow `a_{−i}` for `1 ≤ i ≤ m`.
    pub fn tail_arrow(&self, i: i32) -> ArrowId {
        debug_assert!(i >= 1 && i <= self.params.m as i32);
        ArrowId((self.params.n as i32 + i - 1) as u16)
    }

    pub fn is_relation(&self, first: ArrowId, second: ArrowId) -> bool {
        self.relations.contains(&(first, second))
    }

    /// Builds the path traversing `arrows` in order, or `None` if it is not composable or zero.
    pub fn path_from_arrows(&self, arrows: &[ArrowId]) -> Option<Path> {
        let first = self.arrow(*arrows.first()?);
        let mut p = Path::trivial(first.source);
        for &id in arrows {
            let a = self.arrow(id);
            if a.source != p.target {
                return None;
            }
            if let Some(last) = p.last_arrow() {
                if self.is_relation(last, id) {
                    return None;
                }
            }
            p.arrows.push(id);
            p.target = a.target;
        }
        Some(p)
    }

    /// The product `pq` (`q` traversed first), or `None` when it is zero or not composable.
    pub fn compose(&self, p: &Path, q: &Path) -> Option<Path> {
        if q.target != p.source {
            return None;
        }
        if let (Some(last), Some(first)) = (q.last_arrow(), p.first_arrow()) {
            if self.is_relation(last, first) {
                return None;
            }
        }
        let mut arrows = q.arrows.clone();
        arrows.extend_from_slice(&p.arrows);
        Some(Path { source: q.source, target: p.target, arrows })
    }

    pub fn path_count(&self) -> usize {
        self.paths.len()
    }

    pub fn path(&self, id: PathId) -> &Path {
        &self.paths[id.0 as usize]
    }

    pub fn path_id(&self, p: &Path) -> Option<PathId> {
        self.path_index
            .get(&p.arrows)?
            .iter()
            .find(|(s, _)| *s == p.source)
            .map(|&(_, id)| id)
    }

    pub fn compose_ids(&self, p: PathId, q: PathId) -> Option<PathId> {
        self.compose_table[p.0 as usize * self.paths.len() + q.0 as usize]
    }

    /// Nonzero paths from `from` to `to`.
    pub fn paths_between(&self, from: Vertex, to: Vertex) -> &[PathId] {
        self.between.get(&(from, to)).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Basis of `Hom(P_u, P_w)`: paths from `w` to `u`.
    pub fn hom_basis(&self, u: Vertex, w: Vertex) -> &[PathId] {
        self.paths_between(w, u)
    }

    /// Basis of the indecomposable projective at `v`: all nonzero paths with source `v`.
    pub fn projective_basis(&self, v: Vertex) -> Result<Vec<Path>> {
        if !self.has_vertex(v) {
            return Err(Error::Parameter(format!("vertex {v} is not in the quiver")));
        }
        Ok(self.paths.iter().filter(|p| p.source == v).cloned().collect())
    }

    /// `b_{n−r} ⋯ b_0`: the maximal path from 0 along the cycle.
    pub fn b_composite(&self) -> Path {
        let r = self.params.r as i32;
        let n = self.params.n as i32;
        let arrows: Vec<ArrowId> = (0..=(n - r)).map(|t| self.cycle_arrow(t)).collect();
        self.path_from_arrows(&arrows).expect("b-composite is a nonzero path")
    }

    /// `a_{−1} ⋯ a_{−m}` (traversed from `−m` to `0`); trivial at 0 when `m = 0`.
    pub fn a_composite(&self) -> Path {
        let m = self.params.m as i32;
        if m == 0 {
            return Path::trivial(0);
        }
        let arrows: Vec<ArrowId> = (1..=m).rev().map(|i| self.tail_arrow(i)).collect();
        self.path_from_arrows(&arrows).expect("tail path is nonzero")
    }

    /// `b_{n−r} ⋯ b_0 a_{−1} ⋯ a_{−m}`.
    pub fn long_path(&self) -> Option<Path> {
        self.compose(&self.b_composite(), &self.a_composite())
    }

    /// The `r` letters of the period `v = (c_{n−1}, …, c_{n−r+1}, b_{n−r}⋯b_0)` as paths.
    pub fn period_paths(&self) -> Vec<Path> {
        let r = self.params.r as i32;
        let n = self.params.n as i32;
        let mut out = Vec::with_capacity(r as usize);
        for t in ((n - r + 1)..n).rev() {
            out.push(self.path_from_arrows(&[self.cycle_arrow(t)]).expect("single arrow"));
        }
        out.push(self.b_composite());
        out
    }

    pub fn path_label(&self, p: &Path) -> String {
        if p.is_trivial() {
            return format!("e{}", p.source);
        }
        p.arrows
            .iter()
            .rev()
            .map(|&a| self.arrow(a).label.as_str())
            .collect::<Vec<_>>()
            .join("*")
    }

    /// Parses a composition-order label such as `b1*b0` or `e-1`.
    pub fn parse_path_label(&self, label: &str) -> Result<Path> {
        let label = label.trim();
        if let Some(rest) = label.strip_prefix('e') {
            if let Ok(v) = rest.parse::<Vertex>() {
                if !self.has_vertex(v) {
                    return Err(Error::Parameter(format!("vertex {v} is not in the quiver")));
                }
                return Ok(Path::trivial(v));
            }
        }
        let mut arrows = Vec::new();
        for part in label.split('*').rev() {
            let a = self
                .arrow_by_label(part.trim())
                .ok_or_else(|| Error::Parameter(format!("unknown arrow `{part}`")))?;
            arrows.push(a.id);
        }
        self.path_from_arrows(&arrows)
            .ok_or_else(|| Error::Parameter(format!("`{label}` is not a nonzero path")))
    }

    /// Minimal projective resolution of the simple at `v`, tracked combinatorially.
    ///
    /// For a monomial algebra every syzygy of a simple is a sum of modules `Λα`
    /// generated by single arrows, and `Ω(Λα) = Λβ` for the unique arrow `β` with
    /// `βα` a relation (zero if none).
    pub fn resolve_simple(&self, v: Vertex, depth: usize) -> Result<ResolutionSummary> {
        if !self.has_vertex(v) {
            return Err(Error::Parameter(format!("vertex {v} is not in the quiver")));
        }
        let depth = depth.max(1);
        let mut current: Vec<ArrowId> = self.arrows_from(v).map(|a| a.id).collect();
        let mut seen: Vec<ArrowId> = Vec::new();
        let mut syzygy_vertices = Vec::new();
        let mut periodic = false;
        let mut terminated_at = None;
        for step in 0..depth {
            if current.is_empty() {
                terminated_at = Some(step);
                break;
            }
            let mut tops: Vec<Vertex> = current.iter().map(|&a| self.arrow(a).target).collect();
            tops.sort();
            syzygy_vertices.push(tops);
            if current.iter().any(|a| seen.contains(a)) {
                periodic = true;
            }
            seen.extend(current.iter().copied());
            current = current
                .iter()
                .flat_map(|&a| {
                    self.relations.iter().filter(move |(first, _)| *first == a).map(|&(_, second)| second)
                })
                .collect();
        }
        if terminated_at.is_none() && current.is_empty() {
            terminated_at = Some(depth);
        }
        Ok(ResolutionSummary { vertex: v, syzygy_vertices, periodic, terminated_at })
    }

    /// Computed from syzygy periodicity; any repeat within `arrows + 1` steps is detected.
    pub fn gldim_class(&self) -> GldimClass {
        let depth = self.quiver.arrows.len() + 2;
        let periodic = self
            .quiver
            .vertices
            .iter()
            .any(|&v| self.resolve_simple(v, depth).map(|s| s.periodic).unwrap_or(false));
        if periodic {
            GldimClass::Infinite
        } else {
            GldimClass::Finite
        }
    }

    pub fn to_json(&self) -> PresentationJson {
        PresentationJson {
            schema: "kproj.presentation/v1".into(),
            params: self.params,
            vertices: self.quiver.vertices.clone(),
            arrows: self
                .quiver
                .arrows
                .iter()
                .map(|a| ArrowJson {
                    id: a.id.0,
                    label: a.label.clone(),
                    source: a.source,
                    target: a.target,
                })
                .collect(),
            relations: self.relations.iter().map(|&(f, s)| vec![f.0, s.0]).collect(),
            relation_labels: self
                .relations
                .iter()
                .map(|&(f, s)| format!("{}*{}", self.arrow(s).label, self.arrow(f).label))
                .collect(),
            gldim: self.gldim_class(),
            projective_dimensions: self
                .quiver
                .vertices
                .iter()
                .map(|&v| (v, self.paths.iter().filter(|p| p.source == v).count()))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowJson {
    pub id: u16,
    pub label: String,
    pub source: Vertex,
    pub target: Vertex,
}

/// Canonical JSON document; relations are arrow-id lists in traversal order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationJson {
    pub schema: String,
    pub params: AlgebraParams,
    pub vertices: Vec<Vertex>,
    pub arrows: Vec<ArrowJson>,
    pub relations: Vec<Vec<u16>>,
    pub relation_labels: Vec<String>,
    pub gldim: GldimClass,
    pub projective_dimensions: BTreeMap<Vertex, usize>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(r: u32, n: u32, m: u32) -> GentlePresentation {
        GentlePresentation::build(AlgebraParams::new(r, n, m).unwrap()).unwrap()
    }

    fn labels(p: &GentlePresentation, rels: &[(ArrowId, ArrowId)]) -> Vec<String> {
        let mut out: Vec<String> = rels
            .iter()
            .map(|&(f, s)| format!("{}*{}", p.arrow(s).label, p.arrow(f).label))
            .collect();
        out.sort();
        out
    }

    #[test]
    fn build_230() {
        let p = alg(2, 3, 0);
        assert_eq!(p.quiver().vertices, vec![0, 1, 2]);
        let arrows: Vec<(&str, i32, i32)> =
            p.quiver().arrows.iter().map(|a| (a.label.as_str(), a.source, a.target)).collect();
        assert_eq!(arrows, vec![("b0", 0, 1), ("b1", 1, 2), ("c2", 2, 0)]);
        assert_eq!(labels(&p, p.relations()), vec!["b0*c2", "c2*b1"]);
    }

    #[test]
    fn build_110_loop() {
        let p = alg(1, 1, 0);
        assert_eq!(p.quiver().vertices, vec![0]);
        assert_eq!(p.quiver().arrows.len(), 1);
        assert_eq!(p.quiver().arrows[0].label, "b0");
        assert_eq!(labels(&p, p.relations()), vec!["b0*b0"]);
    }

    #[test]
    fn degenerate_r_equals_one_and_n() {
        let p = alg(1, 3, 0);
        assert_eq!(labels(&p, p.relations()), vec!["b0*b2"]);
        let q = alg(3, 3, 1);
        assert_eq!(labels(&q, q.relations()), vec!["b0*c2", "c1*b0", "c2*c1"]);
        assert_eq!(q.period_paths().len(), 3);
        assert_eq!(q.path_label(&q.b_composite()), "b0");
    }

    #[test]
    fn zero_r_rejected() {
        assert!(matches!(AlgebraParams::new(0, 1, 0), Err(Error::Parameter(_))));
        assert!(matches!(AlgebraParams::new(3, 2, 0), Err(Error::Parameter(_))));
    }

    #[test]
    fn compose_examples() {
        let p = alg(2, 3, 0);
        let b0 = p.parse_path_label("b0").unwrap();
        let b1 = p.parse_path_label("b1").unwrap();
        let c2 = p.parse_path_label("c2").unwrap();
        let b1b0 = p.compose(&b1, &b0).unwrap();
        assert_eq!(p.path_label(&b1b0), "b1*b0");
        assert_eq!((b1b0.source, b1b0.target), (0, 2));
        assert!(p.compose(&c2, &b1).is_none());
        let e = Path::trivial(0);
        assert_eq!(p.compose(&e, &e), Some(e.clone()));
    }

    #[test]
    fn projective_bases() {
        let p = alg(2, 3, 0);
        let basis: Vec<String> = p.projective_basis(0).unwrap().iter().map(|x| p.path_label(x)).collect();
        assert_eq!(basis, vec!["e0", "b0", "b1*b0"]);
        let q = alg(1, 1, 0);
        assert_eq!(q.projective_basis(0).unwrap().len(), 2);
        let t = alg(1, 1, 1);
        let basis: Vec<String> = t.projective_basis(-1).unwrap().iter().map(|x| t.path_label(x)).collect();
        assert!(basis.contains(&"e-1".to_string()));
        assert!(basis.contains(&"a-1".to_string()));
        assert!(t.projective_basis(5).is_err());
    }

    #[test]
    fn resolutions() {
        let p = alg(1, 1, 0);
        let s = p.resolve_simple(0, 10).unwrap();
        assert!(s.periodic);
        assert_eq!(s.syzygy_vertices[0], vec![0]);
        assert_eq!(s.syzygy_vertices[1], vec![0]);
        let q = alg(1, 2, 0);
        for v in [0, 1] {
            let s = q.resolve_simple(v, 10).unwrap();
            assert!(!s.periodic);
            assert!(s.terminated_at.is_some());
        }
        // depth 1: the radical of P_v, generated by the arrows out of v
        let t = alg(2, 3, 1);
        let s = t.resolve_simple(-1, 1).unwrap();
        assert_eq!(s.syzygy_vertices, vec![vec![0]]);
    }

    #[test]
    fn gldim_examples() {
        assert_eq!(alg(1, 1, 0).gldim_class(), GldimClass::Infinite);
        assert_eq!(alg(2, 3, 1).gldim_class(), GldimClass::Finite);
        assert_eq!(alg(2, 2, 0).gldim_class(), GldimClass::Infinite);
    }

    #[test]
    fn gldim_infinite_exactly_when_r_equals_n() {
        for n in 1..=5 {
            for r in 1..=n {
                for m in 0..=2 {
                    let p = alg(r, n, m);
                    let expect = if r == n { GldimClass::Infinite } else { GldimClass::Finite };
                    assert_eq!(p.gldim_class(), expect, "({r},{n},{m})");
                }
            }
        }
    }

    #[test]
    fn compose_is_associative_and_unital() {
        let p = alg(2, 4, 2);
        let all: Vec<Path> = (0..p.path_count()).map(|i| p.path(PathId(i as u32)).clone()).collect();
        for a in &all {
            let ea = Path::trivial(a.target);
            let eb = Path::trivial(a.source);
            assert_eq!(p.compose(&ea, a).as_ref(), Some(a));
            assert_eq!(p.compose(a, &eb).as_ref(), Some(a));
            for b in &all {
                for c in &all {
                    let left = p.compose(a, b).and_then(|ab| p.compose(&ab, c));
                    let right = p.compose(b, c).and_then(|bc| p.compose(a, &bc));
                    assert_eq!(left, right);
                }
            }
        }
    }

    #[test]
    fn presentation_json_is_stable() {
        let p = alg(2, 3, 0);
        let json = serde_json::to_string(&p.to_json()).unwrap();
        let again = serde_json::to_string(&alg(2, 3, 0).to_json()).unwrap();
        assert_eq!(json, again);
        assert!(json.contains("\"relation_labels\":[\"c2*b1\",\"b0*c2\"]"));
    }
}
