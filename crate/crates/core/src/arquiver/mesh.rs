//! Meshes, extended rays and corays, and the boundary triangles, with oracle checks
//! that the listed maps and cones are what they claim to be.

use std::sync::Arc;

use serde::Serialize;

use crate::complexes::{mapping_cone, BoundedComplex, ChainMap, Complex, SumComplex};
use crate::error::{Error, Result};
use crate::gentle::GldimClass;
use crate::homlab::{minimize, read_word, window_words, Oracle};
use crate::strings::WordKey;

use super::{ArCoordinate, Chart, Family};

/// A degree window `[lo, hi]`.
type Span = (i64, i64);
/// Words read off a minimized cone, with their offsets.
type ConeWords = Option<Vec<(WordKey, i64)>>;

/// The almost split triangle starting at a compact object: `source → ⊕ targets → third`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mesh {
    pub source: ArCoordinate,
    pub targets: Vec<ArCoordinate>,
    pub third: ArCoordinate,
}

/// `first → second → third → Σ first`; the first map is any nonzero map the oracle finds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Triangle {
    pub first: ArCoordinate,
    pub second: ArCoordinate,
    pub third: ArCoordinate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TriangleCheck {
    pub triangle: Triangle,
    pub hom_dim: usize,
    /// Some map `first → second` has the third object as its cone.
    pub cone_matches: bool,
    /// Degrees on which the cone was compared.
    pub window: (i64, i64),
}

impl Chart {
    fn require(&self, c: &ArCoordinate) -> Result<()> {
        c.check(self.r())?;
        if !self.has_family(c.family) {
            return Err(Error::Parameter(format!("{c}: no such family for this algebra")));
        }
        Ok(())
    }

    /// Targets of the left almost split map out of `c`, and the third term. Defined for
    /// compact `c` of the tube-free components, and for the left beam of a ladder, whose
    /// meshes end on the compact right beam.
    pub fn mesh(&self, c: &ArCoordinate) -> Result<Mesh> {
        self.require(c)?;
        let ladder = c.family == Family::Xinf && self.regime() == GldimClass::Infinite;
        if !ladder && !self.is_compact(c) {
            return Err(Error::Parameter(format!("{c} is not compact")));
        }
        let (k, i, j) = (c.k, c.i, c.j);
        let (targets, third) = match c.family {
            Family::X => {
                let mut t = Vec::new();
                if i < j {
                    t.push(ArCoordinate::x(k, i + 1, j));
                }
                t.push(ArCoordinate::x(k, i, j + 1));
                (t, ArCoordinate::x(k, i + 1, j + 1))
            }
            Family::Y => {
                let mut t = vec![ArCoordinate::y(k, i + 1, j)];
                if j < i {
                    t.push(ArCoordinate::y(k, i, j + 1));
                }
                (t, ArCoordinate::y(k, i + 1, j + 1))
            }
            Family::Z => (vec![ArCoordinate::z(k, i + 1, j), ArCoordinate::z(k, i, j + 1)], ArCoordinate::z(k, i + 1, j + 1)),
            Family::Xinf => (
                vec![ArCoordinate::x_inf(k, i + 1), ArCoordinate::z_ladder(k, i)],
                ArCoordinate::z_ladder(k, i + 1),
            ),
            Family::ZLadder => return Err(Error::Parameter(format!("{c}: no mesh of the ladder starts on its right beam"))),
            _ => return Err(Error::Parameter(format!("{c}: no mesh rule"))),
        };
        Ok(Mesh { source: *c, targets, third })
    }

    /// The extended ray through `c`, cut to `length` objects. Infinite runs are sampled by
    /// their first two or last two members.
    pub fn extended_ray(&self, c: &ArCoordinate, length: usize) -> Result<Vec<ArCoordinate>> {
        self.require(c)?;
        let (k, i) = (c.k, c.i);
        let seq = match c.family {
            Family::X if c.i == c.j => {
                let mut s = vec![ArCoordinate::x(k, i, i), ArCoordinate::x(k, i, i + 1), ArCoordinate::x_inf(k, i)];
                if self.regime() == GldimClass::Finite {
                    s.extend([ArCoordinate::z(k, i, i - 1), ArCoordinate::z(k, i, i), ArCoordinate::z(k, i, i + 1)]);
                    s.extend(
                        [ArCoordinate::x_minus_inf(k, i - 1), ArCoordinate::x(k, i - 2, i - 1), ArCoordinate::x(k, i - 1, i - 1)]
                            .iter()
                            .map(|x| self.suspend(x)),
                    );
                }
                s
            }
            Family::XminusInf => {
                let j = c.j;
                vec![
                    ArCoordinate::x_minus_inf(k, j),
                    ArCoordinate::x_minus_inf(k, j + 1),
                    ArCoordinate::z_inf(k),
                    ArCoordinate::y_inf(k, j),
                    ArCoordinate::y_inf(k, j + 1),
                ]
            }
            _ => return Err(Error::Parameter(format!("{c} does not start an extended ray"))),
        };
        Ok(seq.into_iter().take(length).collect())
    }

    /// The extended coray through `c`, sampled like [`Chart::extended_ray`].
    pub fn extended_coray(&self, c: &ArCoordinate, length: usize) -> Result<Vec<ArCoordinate>> {
        self.require(c)?;
        let (k, i) = (c.k, c.i);
        let seq = match c.family {
            Family::Y if c.i == c.j => {
                let mut s = vec![ArCoordinate::y(k, i, i), ArCoordinate::y(k, i + 1, i), ArCoordinate::y_inf(k, i)];
                s.extend([ArCoordinate::z(k, i - 1, i), ArCoordinate::z(k, i, i), ArCoordinate::z(k, i + 1, i)]);
                s.extend(
                    [ArCoordinate::y_minus_inf(k, i - 1), ArCoordinate::y(k, i - 1, i - 2), ArCoordinate::y(k, i - 1, i - 1)]
                        .iter()
                        .map(|x| self.suspend(x)),
                );
                s
            }
            Family::YminusInf => vec![
                ArCoordinate::y_minus_inf(k, i),
                ArCoordinate::y_minus_inf(k, i + 1),
                ArCoordinate::z_inf(k),
                ArCoordinate::x_inf(k, i),
                ArCoordinate::x_inf(k, i + 1),
            ],
            _ => return Err(Error::Parameter(format!("{c} does not start an extended coray"))),
        };
        Ok(seq.into_iter().take(length).collect())
    }

    /// The boundary triangles at `(k, a)`, and at `b` for the two-sided rows.
    pub fn boundary_triangles(&self, k: i64, a: i64, b: i64) -> Result<Vec<Triangle>> {
        let r = self.r();
        if !(0..r).contains(&k) {
            return Err(Error::Parameter(format!("k must lie in 0..{r}")));
        }
        let t = |first, second, third| Triangle { first, second, third };
        let mut out = vec![t(ArCoordinate::x(k, a, a), ArCoordinate::x_inf(k, a), ArCoordinate::x_inf(k, a + 1))];
        if self.regime() == GldimClass::Infinite {
            return Ok(out);
        }
        let pr = self.primes();
        let k1 = (k + 1) % r;
        let (a1, a2) = (pr.prime(a, k), pr.double_prime(a, k));
        out.extend([
            t(ArCoordinate::x(k, a, a), ArCoordinate::x_minus_inf(k1, a1 - 1), ArCoordinate::x_minus_inf(k1, a1)),
            t(ArCoordinate::y(k, a, a), ArCoordinate::y_inf(k, a), ArCoordinate::y_inf(k, a + 1)),
            t(ArCoordinate::y(k, a, a), ArCoordinate::y_minus_inf(k1, a2 - 1), ArCoordinate::y_minus_inf(k1, a2)),
            t(ArCoordinate::x_minus_inf(k, b), ArCoordinate::z_inf(k), ArCoordinate::x_inf(k, b + 1)),
            t(ArCoordinate::y_minus_inf(k, a), ArCoordinate::z_inf(k), ArCoordinate::y_inf(k, a + 1)),
        ]);
        Ok(out)
    }
}

/// A map `A → B` known to be a chain map on `window` wherever both are unbounded.
pub struct WindowedMap {
    pub target: Arc<dyn Complex>,
    pub map: ChainMap,
    pub window: (i64, i64),
}

/// The cone of `A → ⊕ B_i` read as words on a window inside the maps' windows.
///
/// Returns the window and the words, `None` for the words if the minimal cone is not a
/// sum of strings there.
pub fn cone_window_words(
    oracle: &Oracle,
    a: &Arc<dyn Complex>,
    parts: &[WindowedMap],
    hull: (i64, i64),
) -> Result<(Span, ConeWords)> {
    let pres = oracle.pres();
    let g = 2 * pres.params().ri() + 2;
    let mut cut_lo: Option<i64> = None;
    let mut cut_hi: Option<i64> = None;
    for p in parts {
        if a.lower().is_none() && p.target.lower().is_none() {
            cut_lo = Some(cut_lo.map_or(p.window.0, |x| x.max(p.window.0)));
        }
        if a.upper().is_none() && p.target.upper().is_none() {
            cut_hi = Some(cut_hi.map_or(p.window.1, |x| x.min(p.window.1)));
        }
    }
    let lo = cut_lo.map_or(hull.0 - g, |x| x + g);
    let hi = cut_hi.map_or(hull.1 + g, |x| x - g);
    if lo > hi {
        return Err(Error::Consistency(format!("cone window [{lo}, {hi}] is empty")));
    }
    let (wl, wh) = (cut_lo.unwrap_or(lo - g), cut_hi.unwrap_or(hi + g));
    let source = BoundedComplex::from_window(a.as_ref(), wl, wh);
    let targets: Vec<Arc<dyn Complex>> =
        parts.iter().map(|p| Arc::new(BoundedComplex::from_window(p.target.as_ref(), wl, wh)) as Arc<dyn Complex>).collect();
    let maps: Vec<ChainMap> = parts.iter().map(|p| p.map.restricted(wl, wh)).collect();
    let stack: Vec<(&ChainMap, &dyn Complex)> = maps.iter().zip(&targets).map(|(m, t)| (m, t.as_ref())).collect();
    let f = ChainMap::stacked(&stack, &source);
    let sum = SumComplex { parts: targets.clone() };
    let sum = BoundedComplex::from_window(&sum, wl, wh);
    let cone = mapping_cone(pres, &source, &sum, &f)?;
    let min = minimize(pres, &cone)?;
    let inner = BoundedComplex::from_window(&min, lo, hi);
    let words = read_word(pres, &inner).map(|ws| ws.iter().map(|w| w.normalized(pres)).collect());
    Ok(((lo, hi), words))
}

/// Degrees spanned by the cores of the given complexes, the source counted one lower.
fn core_hull(a: &dyn Complex, others: &[&dyn Complex]) -> (i64, i64) {
    let (alo, ahi) = a.core_span();
    let mut hull = (alo - 1, ahi);
    for c in others {
        let (lo, hi) = c.core_span();
        hull = (hull.0.min(lo), hull.1.max(hi));
    }
    hull
}

/// Up to `cap` maps from a basis: the basis itself, then sums and differences of pairs.
fn candidates(maps: &[ChainMap], cap: usize) -> Vec<ChainMap> {
    let mut out: Vec<ChainMap> = maps.to_vec();
    for i in 0..maps.len() {
        for j in i + 1..maps.len() {
            out.push(maps[i].plus(&maps[j]));
            out.push(maps[i].plus(&maps[j].scaled(-1)));
        }
    }
    out.truncate(cap);
    out
}

/// Looks for a map `A → ⊕ B_i`, each component nonzero, whose cone is `expected`;
/// returns its components and the window the cone was compared on.
pub fn find_cone(
    oracle: &Oracle,
    a: Arc<dyn Complex>,
    targets: &[Arc<dyn Complex>],
    expected: &dyn Complex,
) -> Result<(Option<Vec<ChainMap>>, Span)> {
    let pres = oracle.pres();
    let others: Vec<&dyn Complex> = targets.iter().map(|t| t.as_ref()).chain(std::iter::once(expected)).collect();
    let hull = core_hull(a.as_ref(), &others);
    let mut options: Vec<Vec<ChainMap>> = Vec::new();
    let mut windows = Vec::new();
    for t in targets {
        let basis = oracle.hom_basis(a.as_ref(), t.as_ref(), 2)?;
        if basis.maps.is_empty() {
            return Ok((None, hull));
        }
        windows.push(basis.window);
        options.push(candidates(&basis.maps, 6));
    }
    let total: usize = options.iter().map(Vec::len).product();
    let mut window = hull;
    for n in 0..total {
        let mut rest = n;
        let parts: Vec<WindowedMap> = options
            .iter()
            .zip(targets)
            .zip(&windows)
            .map(|((opts, t), &w)| {
                let pick = &opts[rest % opts.len()];
                rest /= opts.len();
                WindowedMap { target: t.clone(), map: pick.clone(), window: w }
            })
            .collect();
        let (w, words) = cone_window_words(oracle, &a, &parts, hull)?;
        window = w;
        let expect = window_words(pres, expected, w.0, w.1, 2 * pres.params().ri() + 2)?;
        if words.is_some() && words == expect {
            return Ok((Some(parts.into_iter().map(|p| p.map).collect()), w));
        }
    }
    Ok((None, window))
}

fn arc(c: crate::complexes::StringComplex) -> Arc<dyn Complex> {
    Arc::new(c)
}

/// Whether the mesh's map has the listed third term as its cone.
pub fn check_mesh(chart: &Chart, oracle: &Oracle, mesh: &Mesh) -> Result<bool> {
    Ok(mesh_map(chart, oracle, mesh)?.is_some())
}

/// Components of a map out of the mesh's source whose cone is the third term.
pub fn mesh_map(chart: &Chart, oracle: &Oracle, mesh: &Mesh) -> Result<Option<Vec<ChainMap>>> {
    let a = arc(chart.complex(&mesh.source)?);
    let targets = mesh.targets.iter().map(|t| chart.complex(t).map(arc)).collect::<Result<Vec<_>>>()?;
    let third = chart.complex(&mesh.third)?;
    Ok(find_cone(oracle, a, &targets, &third)?.0)
}

pub fn check_triangle(chart: &Chart, oracle: &Oracle, t: &Triangle) -> Result<TriangleCheck> {
    let a = chart.complex(&t.first)?;
    let b = chart.complex(&t.second)?;
    let c = chart.complex(&t.third)?;
    let hom_dim = oracle.hom_dim(&a, &b)?.hom_dim;
    let (found, window) = find_cone(oracle, arc(a), &[arc(b)], &c)?;
    Ok(TriangleCheck { triangle: *t, hom_dim, cone_matches: found.is_some(), window })
}

/// Fixed maps along a sequence (the sum of a Hom basis at each step) and the check that
/// every composite of at most `max_len` consecutive maps is nonzero. Returns the first
/// failing stretch as index pairs.
pub fn check_chain(chart: &Chart, oracle: &Oracle, seq: &[ArCoordinate], max_len: usize) -> Result<Vec<(usize, usize)>> {
    let objects = seq.iter().map(|c| chart.complex(c)).collect::<Result<Vec<_>>>()?;
    let n = objects.len();
    let mut span: Option<(i64, i64)> = None;
    for s in 0..n {
        for e in s + 1..n.min(s + max_len + 1) {
            if let Some(w) = oracle.comparison_span(&objects[s], &objects[e])? {
                span = Some(span.map_or(w, |x| (x.0.min(w.0), x.1.max(w.1))));
            }
        }
    }
    let Some(span) = span else { return Ok((0..n.saturating_sub(1)).map(|s| (s, s + 1)).collect()) };
    let mut maps = Vec::new();
    for s in 0..n.saturating_sub(1) {
        let basis = oracle.hom_basis_covering(&objects[s], &objects[s + 1], span)?;
        let f = basis.maps.iter().fold(ChainMap::zero(), |acc, m| acc.plus(m));
        maps.push(f);
    }
    let mut bad = Vec::new();
    for s in 0..n {
        for e in s + 1..n.min(s + max_len + 1) {
            let objs: Vec<&dyn Complex> = objects[s..=e].iter().map(|c| c as &dyn Complex).collect();
            if maps[s..e].iter().any(ChainMap::is_zero) || !oracle.composite_nonzero(&objs, &maps[s..e])? {
                bad.push((s, e));
            }
        }
    }
    Ok(bad)
}
