//! Minimal complexes by Gaussian elimination, and reading a string back off a complex.

use std::collections::BTreeMap;

use crate::complexes::{BoundedComplex, Complex, LinComb, PathMatrix};
use crate::error::{Error, Result};
use crate::gentle::{GentlePresentation, PathId};
use crate::strings::{normalize, validate, HomotopyWord, Letter};

/// A finite word read off a complex, with the degree of its leftmost position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindowWord {
    pub word: HomotopyWord,
    pub offset: i64,
}

impl WindowWord {
    pub fn normalized(&self, pres: &GentlePresentation) -> (crate::strings::WordKey, i64) {
        let (w, s) = normalize(pres, &self.word);
        (crate::strings::WordKey::of(pres, &w), self.offset + s)
    }
}

fn unit_part(pres: &GentlePresentation, lc: &LinComb) -> Option<i64> {
    lc.0.iter().find(|(p, _)| pres.path(*p).is_trivial()).map(|&(_, c)| c)
}

/// Inverse of an endomorphism `c·e + n` of an indecomposable projective, `c = ±1`.
fn invert(pres: &GentlePresentation, lc: &LinComb) -> Result<LinComb> {
    let c = unit_part(pres, lc).ok_or_else(|| Error::Consistency("inverting a radical map".into()))?;
    if c.abs() != 1 {
        return Err(Error::Consistency(format!("unit coefficient {c} is not ±1")));
    }
    let e = lc.0.iter().find(|(p, _)| pres.path(*p).is_trivial()).unwrap().0;
    // φ = c(e + m) with m radical, φ⁻¹ = c Σ (−m)^k
    let mut m = LinComb::default();
    for &(p, x) in &lc.0 {
        if p != e {
            m.add_term(p, x * c);
        }
    }
    let neg_m = m.scaled(-1);
    let mut sum = LinComb::single(e);
    let mut power = LinComb::single(e);
    loop {
        power = power.then(pres, &neg_m);
        if power.is_zero() {
            break;
        }
        for &(p, x) in &power.0 {
            sum.add_term(p, x);
        }
    }
    Ok(sum.scaled(c))
}

fn remove_row(m: &PathMatrix, row: usize) -> PathMatrix {
    let mut out = PathMatrix::zero(m.rows - 1, m.cols);
    for (&(r, c), v) in &m.entries {
        if r != row {
            out.entries.insert((if r > row { r - 1 } else { r }, c), v.clone());
        }
    }
    out
}

fn remove_col(m: &PathMatrix, col: usize) -> PathMatrix {
    let mut out = PathMatrix::zero(m.rows, m.cols - 1);
    for (&(r, c), v) in &m.entries {
        if c != col {
            out.entries.insert((r, if c > col { c - 1 } else { c }), v.clone());
        }
    }
    out
}

/// Removes every contractible summand `P →(iso) P`, giving a homotopy-equivalent minimal complex.
pub fn minimize(pres: &GentlePresentation, c: &BoundedComplex) -> Result<BoundedComplex> {
    let mut terms = c.terms.clone();
    let mut diffs: Vec<PathMatrix> = (0..terms.len()).map(|i| c.differential(c.lo + i as i64)).collect();
    loop {
        let mut found = None;
        'search: for (i, m) in diffs.iter().enumerate() {
            for (&(y, x), v) in &m.entries {
                if unit_part(pres, v).is_some_and(|u| u.abs() == 1) {
                    found = Some((i, y, x));
                    break 'search;
                }
            }
        }
        let Some((i, y, x)) = found else { break };
        let m = &diffs[i];
        let inv = invert(pres, &m.entries[&(y, x)])?;
        let mut next = m.clone();
        for (&(y2, x2), beta) in &m.entries {
            if y2 != y || x2 == x {
                continue;
            }
            // β : x2 → y, then φ⁻¹ : y → x, then γ : x → y'
            let through = beta.then(pres, &inv);
            for (&(y3, xx), gamma) in &m.entries {
                if xx != x || y3 == y {
                    continue;
                }
                let corr = through.then(pres, gamma);
                for &(p, k) in &corr.0 {
                    next.add(y3, x2, p, -k);
                }
            }
        }
        let next = remove_col(&remove_row(&next, y), x);
        diffs[i] = next;
        if i > 0 {
            diffs[i - 1] = remove_row(&diffs[i - 1], x);
        }
        if i + 1 < diffs.len() {
            diffs[i + 1] = remove_col(&diffs[i + 1], y);
        }
        terms[i].remove(x);
        terms[i + 1].remove(y);
    }
    let mut out = BoundedComplex { lo: c.lo, terms, diffs };
    // drop empty ends
    while out.terms.last().is_some_and(Vec::is_empty) {
        out.terms.pop();
        out.diffs.pop();
    }
    while out.terms.first().is_some_and(Vec::is_empty) {
        out.terms.remove(0);
        out.diffs.remove(0);
        out.lo += 1;
    }
    if out.terms.is_empty() {
        return Ok(BoundedComplex::zero());
    }
    out.check_d_squared(pres)?;
    Ok(out)
}

/// Reads the indecomposable summands of a minimal bounded complex as finite words.
///
/// Returns `None` when some summand is not a string complex (a branching or a
/// differential entry that is not a single path).
pub fn read_word(pres: &GentlePresentation, c: &BoundedComplex) -> Option<Vec<WindowWord>> {
    // nodes are (degree, index); edges carry (path, from lower degree node)
    type Node = (i64, usize);
    let mut adj: BTreeMap<Node, Vec<(Node, PathId)>> = BTreeMap::new();
    for (i, t) in c.terms.iter().enumerate() {
        for k in 0..t.len() {
            adj.insert((c.lo + i as i64, k), Vec::new());
        }
    }
    for (i, m) in c.diffs.iter().enumerate() {
        let d = c.lo + i as i64;
        for (&(y, x), v) in &m.entries {
            if v.0.len() != 1 {
                return None;
            }
            let p = v.0[0].0;
            adj.get_mut(&(d, x))?.push(((d + 1, y), p));
            adj.get_mut(&(d + 1, y))?.push(((d, x), p));
        }
    }
    if adj.values().any(|e| e.len() > 2) {
        return None;
    }
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    let starts: Vec<(i64, usize)> = adj.keys().copied().collect();
    for pass in 0..2 {
        for &s in &starts {
            if seen.contains(&s) || (pass == 0 && adj[&s].len() > 1) {
                continue;
            }
            if pass == 1 {
                // only cycles remain
                return None;
            }
            let vertex_of = |n: (i64, usize)| c.terms[(n.0 - c.lo) as usize][n.1];
            let mut core = Vec::new();
            let mut prev = None;
            let mut cur = s;
            seen.insert(cur);
            loop {
                let next = adj[&cur].iter().find(|(n, _)| Some(*n) != prev).copied();
                let Some((n, p)) = next else { break };
                if seen.contains(&n) {
                    return None;
                }
                let path = pres.path(p).clone();
                core.push(if n.0 > cur.0 { Letter::direct(path) } else { Letter::inverse(path) });
                seen.insert(n);
                prev = Some(cur);
                cur = n;
            }
            let word = if core.is_empty() {
                HomotopyWord::stalk(vertex_of(s))
            } else {
                HomotopyWord { left_tail: false, right_tail: false, anchor: vertex_of(s), core }
            };
            if validate(pres, &word).is_ok() {
                out.push(WindowWord { word, offset: s.0 });
            } else {
                let rev = word.reversed();
                validate(pres, &rev).ok()?;
                out.push(WindowWord { offset: s.0 + word.degree_span(), word: rev });
            }
        }
    }
    out.sort_by_key(|w| w.normalized(pres));
    Some(out)
}

/// Reads the complex in degrees `[lo, hi]` after minimizing on a window `margin` degrees wider.
pub fn window_words(
    pres: &GentlePresentation,
    c: &dyn Complex,
    lo: i64,
    hi: i64,
    margin: i64,
) -> Result<Option<Vec<(crate::strings::WordKey, i64)>>> {
    let wide = BoundedComplex::from_window(c, lo - margin, hi + margin);
    let min = minimize(pres, &wide)?;
    let inner = BoundedComplex::from_window(&min, lo, hi);
    Ok(read_word(pres, &inner).map(|ws| ws.iter().map(|w| w.normalized(pres)).collect()))
}
