use std::collections::BTreeSet;

use rand::rngs::StdRng;
use rand::{RngExt, SeedableRng};

use crate::arquiver::{chart_strategy, check_chain, check_triangle, ArCoordinate, Chart, Decision};
use crate::complexes::{ChainMap, Complex, StringComplex};
use crate::error::Result;
use crate::gentle::GldimClass;
use crate::homlab::Oracle;
use crate::spectrum::derivative_report;
use crate::strings::{master_words, word_text, HomotopyWord};

use super::{Session, Sweep, Tally};

fn perfect(c: &StringComplex) -> bool {
    c.lower().is_some() && c.upper().is_some()
}

pub(super) fn sweep(chart: &Chart, oracle: &Oracle, bound: i64) -> Sweep {
    let window = chart.window(bound);
    let complexes: Vec<Option<StringComplex>> = window.iter().map(|c| chart.complex(c).ok()).collect();
    let mut dims = Vec::with_capacity(window.len() * window.len());
    let mut errors = Vec::new();
    for (x, a) in window.iter().zip(&complexes) {
        for (y, b) in window.iter().zip(&complexes) {
            let d = match (a, b) {
                (Some(a), Some(b)) => match oracle.hom_dim(a, b) {
                    Ok(r) => Some(r.hom_dim),
                    Err(e) => {
                        errors.push(format!("Hom({x}, {y}): {e}"));
                        None
                    }
                },
                _ => {
                    errors.push(format!("Hom({x}, {y}): no complex"));
                    None
                }
            };
            dims.push(d);
        }
    }
    Sweep { window, dims, errors }
}

pub(super) fn fragments(s: &Session, t: &mut Tally) {
    for lab in &s.labs {
        let pres = &lab.pres;
        let p = lab.params();
        let mw = master_words(pres);
        let ell = 12 / mw.period.len() + 2;
        let letters = mw.finite(ell).core;
        let mut seen = BTreeSet::new();
        for len in 1..=12.min(letters.len()) {
            for start in 0..=letters.len() - len {
                let w = match HomotopyWord::finite(letters[start..start + len].to_vec()) {
                    Ok(w) => w,
                    Err(e) => {
                        t.fail(format!("{p}: fragment at {start} of length {len}: {e}"));
                        continue;
                    }
                };
                let text = word_text(pres, &w);
                if !seen.insert(text.clone()) {
                    continue;
                }
                let ok = StringComplex::realize(pres, &w, 0).and_then(|c| c.check_d_squared(pres));
                t.check(ok.is_ok(), || format!("{p}: {text}: {}", ok.unwrap_err()));
            }
        }
        let long = pres.long_path();
        let closing = mw.closing.last().map(|l| l.path.clone());
        t.check(long.is_some() && long == closing && long.as_ref().is_some_and(|l| pres.path_id(l).is_some()), || {
            format!("{p}: long letter is not a nonzero path")
        });
    }
}

pub(super) fn hom_bounds(s: &Session, t: &mut Tally) {
    for (n, lab) in s.labs.iter().enumerate() {
        let p = lab.params();
        let sw = s.sweep(n, false);
        for e in &sw.errors {
            t.fail(format!("{p}: {e}"));
        }
        let perfect: Vec<bool> = sw.window.iter().map(|c| lab.chart.complex(c).map(|x| perfect(&x)).unwrap_or(false)).collect();
        let len = sw.window.len();
        for a in 0..len {
            for b in 0..len {
                let Some(d) = sw.dim(a, b) else { continue };
                let limit = if !perfect[a] || !perfect[b] || p.r > 1 { 1 } else { 2 };
                t.check(d <= limit, || format!("{p}: dim Hom({}, {}) = {d} > {limit}", sw.window[a], sw.window[b]));
                if a == b && !perfect[a] {
                    t.check(d == 1, || format!("{p}: dim End({}) = {d}", sw.window[a]));
                }
            }
        }
    }
}

/// Pairs of the window on which a printed hammock clause disagrees with the oracle,
/// stopping after `stop_after` disagreements; returns the number of clauses checked.
pub fn hammock_disagreements(chart: &Chart, oracle: &Oracle, bound: i64, stop_after: usize) -> (usize, Vec<String>) {
    let window = chart.window(bound);
    let mut checks = 0;
    let mut bad = Vec::new();
    let dim = |a: &ArCoordinate, b: &ArCoordinate| -> Result<usize> {
        Ok(oracle.hom_dim(&chart.complex(a)?, &chart.complex(b)?)?.hom_dim)
    };
    for a in &window {
        for b in &window {
            if bad.len() >= stop_after {
                return (checks, bad);
            }
            for (backward, decision) in [(false, chart.forward_decision(a, b)), (true, chart.backward_decision(a, b))] {
                let x = match decision {
                    Ok(Decision::Formula(x)) => x,
                    Ok(Decision::Oracle(..)) => continue,
                    Err(e) => {
                        checks += 1;
                        bad.push(format!("{a}, {b}: {e}"));
                        continue;
                    }
                };
                checks += 1;
                let (src, dst) = if backward { (b, a) } else { (a, b) };
                match dim(src, dst) {
                    Ok(d) if (d > 0) == x => {}
                    Ok(d) => {
                        let side = if backward { "H-" } else { "H+" };
                        bad.push(format!("{dst} in {side}({a}) is {x} by the formula, dim Hom({src}, {dst}) = {d}"));
                    }
                    Err(e) => bad.push(format!("Hom({src}, {dst}): {e}")),
                }
            }
        }
    }
    (checks, bad)
}

pub(super) fn hammocks(s: &Session, t: &mut Tally) {
    for (n, lab) in s.labs.iter().enumerate() {
        // fills the oracle's memo in the same order as the bounds check
        let _ = s.sweep(n, false);
        let (checks, bad) = hammock_disagreements(&lab.chart, &lab.oracle, s.config.bound, usize::MAX);
        t.checks += checks - bad.len();
        let p = lab.params();
        t.note(format!("{p}: {checks} printed clauses, {} disagreements", bad.len()));
        for b in bad {
            t.checks += 1;
            t.fail(format!("{p}: {b}"));
        }
    }
}

pub(super) fn suspension(s: &Session, t: &mut Tally) {
    let mut rng = StdRng::seed_from_u64(s.config.seed);
    for lab in &s.labs {
        let p = lab.params();
        let window = lab.chart.window(s.config.bound);
        let picks = rand::seq::index::sample(&mut rng, window.len(), s.config.suspensions.min(window.len())).into_vec();
        for i in picks {
            let c = window[i];
            let x = lab.chart.suspend(&c);
            let ok = match (lab.chart.complex(&x), lab.chart.complex(&c)) {
                (Ok(a), Ok(b)) => lab.oracle.is_isomorphic(&a, &b.shift(1)),
                _ => false,
            };
            t.check(ok, || format!("{p}: suspension of {c} is {x}, not the shifted complex"));
        }
        let table: &[(&str, &str)] = match (p.r, p.n, p.m) {
            (2, 3, 1) => &[("X:1:0:0", "X:0:3:3"), ("Y:1:0:0", "Y:0:-1:-1")],
            (1, 1, 0) => &[("Z:0:-2", "Z:0:-1"), ("Z:0:0", "Z:0:1"), ("Z:0:3", "Z:0:4")],
            _ => &[],
        };
        for (a, b) in table {
            let a: ArCoordinate = a.parse().unwrap();
            let b: ArCoordinate = b.parse().unwrap();
            let got = lab.chart.suspend(&a);
            t.check(got == b, || format!("{p}: suspension of {a} is {got}, expected {b}"));
        }
    }
}

pub(super) fn triangles(s: &Session, t: &mut Tally) {
    let range = s.config.triangle_range;
    for lab in &s.labs {
        let p = lab.params();
        for k in 0..lab.chart.r() {
            for a in -range..=range {
                let tris = match lab.chart.boundary_triangles(k, a, a) {
                    Ok(x) => x,
                    Err(e) => {
                        t.fail(format!("{p}: k = {k}, a = {a}: {e}"));
                        continue;
                    }
                };
                for tri in tris {
                    let what = format!("{p}: {} -> {} -> {}", tri.first, tri.second, tri.third);
                    match check_triangle(&lab.chart, &lab.oracle, &tri) {
                        Ok(c) => t.check(c.cone_matches, || format!("{what}: cone differs")),
                        Err(e) => t.fail(format!("{what}: {e}")),
                    }
                }
            }
        }
    }
}

/// Basis maps `A → C` that factor through no map `A → B` built from a Hom basis (each
/// basis map, and their sum and difference when `Hom(A, B)` is 2-dimensional).
pub fn unfactored_basis_maps(oracle: &Oracle, a: &StringComplex, b: &StringComplex, c: &StringComplex, pad: i64) -> Result<usize> {
    let Some(span) = oracle.comparison_span(a, c)? else { return Ok(0) };
    let wide = (span.0 - pad, span.1 + pad);
    let mut candidates = oracle.hom_basis_covering(a, b, wide)?.maps;
    if candidates.len() == 2 {
        candidates.push(candidates[0].plus(&candidates[1]));
        candidates.push(candidates[0].plus(&candidates[1].scaled(-1)));
    }
    if candidates.is_empty() {
        candidates.push(ChainMap::zero());
    }
    let mut missing = 0;
    for g in oracle.hom_basis_covering(a, c, wide)?.maps {
        let mut ok = false;
        for f in &candidates {
            if oracle.factors_through(a, b, c, &g, f)? {
                ok = true;
                break;
            }
        }
        missing += usize::from(!ok);
    }
    Ok(missing)
}

/// Whether every composite `A → B → C` of basis maps is null-homotopic.
fn composites_vanish(oracle: &Oracle, a: &StringComplex, b: &StringComplex, c: &StringComplex, pad: i64) -> Result<bool> {
    let Some(span) = oracle.comparison_span(a, c)? else { return Ok(true) };
    let wide = (span.0 - pad, span.1 + pad);
    let first = oracle.hom_basis_covering(a, b, wide)?.maps;
    let second = oracle.hom_basis_covering(b, c, wide)?.maps;
    let objects: [&dyn Complex; 3] = [a, b, c];
    for f in &first {
        for g in &second {
            if oracle.composite_nonzero(&objects, &[f.clone(), g.clone()])? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub(super) fn factorization(s: &Session, t: &mut Tally) {
    let mut rng = StdRng::seed_from_u64(s.config.seed ^ 0x6);
    for (n, lab) in s.labs.iter().enumerate() {
        let p = lab.params();
        let sw = s.sweep(n, false);
        let len = sw.window.len();
        let nonzero = |x: usize, y: usize| sw.dim(x, y).is_some_and(|d| d > 0);
        let after: Vec<Vec<usize>> = (0..len).map(|x| (0..len).filter(|&y| nonzero(x, y)).collect()).collect();
        let mut triples = BTreeSet::new();
        let mut attempts = 0;
        while triples.len() < s.config.triples && attempts < 200 * s.config.triples {
            attempts += 1;
            let a = rng.random_range(0..len);
            if after[a].is_empty() {
                continue;
            }
            let b = after[a][rng.random_range(0..after[a].len())];
            let cs: Vec<usize> = after[a].iter().copied().filter(|&c| nonzero(b, c)).collect();
            if cs.is_empty() {
                continue;
            }
            triples.insert((a, b, cs[rng.random_range(0..cs.len())]));
        }
        t.check(triples.len() >= s.config.triples, || format!("{p}: only {} admissible triples", triples.len()));
        let pad = 2 * lab.chart.r();
        let (mut failed, mut identities, mut arrows, mut vanishing) = (0, 0, 0, 0);
        for (a, b, c) in triples {
            let (x, y, z) = (sw.window[a], sw.window[b], sw.window[c]);
            let ok = (|| -> Result<(usize, bool)> {
                let (ca, cb, cc) = (lab.chart.complex(&x)?, lab.chart.complex(&y)?, lab.chart.complex(&z)?);
                let v = unfactored_basis_maps(&lab.oracle, &ca, &cb, &cc, pad)?;
                Ok((v, v > 0 && composites_vanish(&lab.oracle, &ca, &cb, &cc, pad)?))
            })();
            match ok {
                Ok((v, zero)) => {
                    if v > 0 {
                        failed += 1;
                        vanishing += usize::from(zero);
                        if x == z {
                            identities += 1;
                        } else if lab.chart.mesh(&x).is_ok_and(|m| m.targets.contains(&z)) {
                            arrows += 1;
                        }
                    }
                    t.check(v == 0, || {
                        let why = if zero { ", every composite being null" } else { "" };
                        format!("{p}: {v} basis maps {x} -> {z} do not factor through {y}{why}")
                    })
                }
                Err(e) => t.fail(format!("{p}: {x} -> {y} -> {z}: {e}")),
            }
        }
        if failed > 0 {
            // an identity or an irreducible map cannot factor through a third indecomposable
            t.note(format!(
                "{p}: {failed} triples fail; {identities} with A = C, {arrows} with A -> C an almost split arrow, \
                 {vanishing} where every composite A -> B -> C is null"
            ));
        }
    }
}

pub(super) fn rays(s: &Session, t: &mut Tally) {
    let max = s.config.chain_length;
    for lab in &s.labs {
        let p = lab.params();
        let ch = &lab.chart;
        let finite = ch.regime() == GldimClass::Finite;
        for k in 0..ch.r() {
            for i in -2..=2 {
                let mut seqs = vec![ch.extended_ray(&ArCoordinate::x(k, i, i), 16)];
                if finite {
                    seqs.push(ch.extended_ray(&ArCoordinate::x_minus_inf(k, i), 16));
                    seqs.push(ch.extended_coray(&ArCoordinate::y(k, i, i), 16));
                    seqs.push(ch.extended_coray(&ArCoordinate::y_minus_inf(k, i), 16));
                }
                for seq in seqs {
                    let seq = match seq {
                        Ok(x) => x,
                        Err(e) => {
                            t.fail(format!("{p}: {e}"));
                            continue;
                        }
                    };
                    let n = seq.len();
                    let total: usize = (0..n).map(|s| (n - s - 1).min(max)).sum();
                    match check_chain(ch, &lab.oracle, &seq, max) {
                        Ok(bad) => {
                            t.checks += total - bad.len();
                            for (a, b) in bad {
                                t.checks += 1;
                                t.fail(format!("{p}: composite {} -> {} along the sequence from {} vanishes", seq[a], seq[b], seq[0]));
                            }
                        }
                        Err(e) => t.fail(format!("{p}: sequence from {}: {e}", seq[0])),
                    }
                }
            }
        }
    }
}

pub(super) fn strata(s: &Session, t: &mut Tally) {
    for lab in &s.labs {
        let p = lab.params();
        let rep = match derivative_report(&lab.chart, &lab.oracle, s.config.bound) {
            Ok(r) => r,
            Err(e) => {
                t.fail(format!("{p}: {e}"));
                continue;
            }
        };
        for st in &rep.stage0 {
            t.check(st.ok, || format!("{p}: stage 0: {} leaves {:?}", st.functor, names(&st.open_set)));
        }
        for st in &rep.stage1 {
            t.check(st.ok, || format!("{p}: stage 1: class {} leaves {:?}", st.key, names(&st.open_set)));
        }
        t.check(rep.unexhausted.is_empty(), || format!("{p}: rank-1 points not isolated: {:?}", names(&rep.unexhausted)));
        for st in &rep.stage2 {
            t.check(st.ok, || format!("{p}: stage 2: {} leaves {:?}", st.functor, names(&st.open_set)));
        }
        let tops: BTreeSet<ArCoordinate> = rep.stage2.iter().filter(|x| x.ok).map(|x| x.open_set[0]).collect();
        let expected: BTreeSet<ArCoordinate> = (0..lab.chart.r()).map(ArCoordinate::z_inf).collect();
        t.check(tops == expected, || format!("{p}: rank-2 points {:?}", names(&tops.iter().copied().collect::<Vec<_>>())));
        t.check(rep.residual.is_empty(), || format!("{p}: residual {:?}", names(&rep.residual)));
        t.check(rep.mismatches.is_empty(), || format!("{p}: rank mismatches {:?}", rep.mismatches));
        t.check(rep.cb_rank == Some(2), || format!("{p}: CB rank {:?}", rep.cb_rank));
        t.note(format!(
            "{p}: {} points, {} rank-0 isolations, {} classes of 1-simple maps, CB = {}",
            rep.points,
            rep.stage0.len(),
            rep.stage1.len(),
            rep.cb_rank.map_or("undetermined".to_string(), |r| r.to_string())
        ));
    }
}

fn names(v: &[ArCoordinate]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

pub(super) fn regimes(s: &Session, t: &mut Tally) {
    for lab in &s.labs {
        let p = lab.params();
        let pres = &lab.pres;
        let depth = pres.quiver().arrows.len() + 2;
        let periodic = pres.quiver().vertices.iter().any(|&v| pres.resolve_simple(v, depth).map(|r| r.periodic).unwrap_or(false));
        let class = pres.gldim_class();
        t.check((class == GldimClass::Infinite) == periodic, || format!("{p}: class {class:?} but periodic = {periodic}"));
        t.check((class == GldimClass::Infinite) == (p.n == p.r), || format!("{p}: class {class:?} against n = r"));
        let (own, other) = match class {
            GldimClass::Finite => ("finite", "infinite"),
            GldimClass::Infinite => ("infinite", "finite"),
        };
        let name = lab.chart.strategy().name();
        t.check(name == own, || format!("{p}: {class:?} global dimension took the {name} chart"));
        t.note(format!("{p}: {class:?} global dimension, {name} chart"));

        let (checks, bad) = hammock_disagreements(&lab.chart, &lab.oracle, s.config.bound, usize::MAX);
        t.check(bad.is_empty(), || format!("{p}: {} of {checks} hammock clauses disagree under the {own} chart", bad.len()));
        let wrong = Chart::with_strategy(lab.pres.clone(), chart_strategy(other).unwrap());
        let (_, bad) = hammock_disagreements(&wrong, &lab.oracle, 2, 1);
        t.check(!bad.is_empty(), || format!("{p}: the {other} chart also agrees with the oracle"));
    }
}

pub(super) fn colimits(s: &Session, t: &mut Tally) {
    let bound = s.config.bound;
    for lab in &s.labs {
        let p = lab.params();
        let ch = &lab.chart;
        let reach = 2 * (bound + p.ri() + p.ni() + p.mi());
        let compact: Vec<ArCoordinate> = ch.window(bound).into_iter().filter(|c| ch.is_compact(c)).collect();
        let mut worst = 0;
        for k in 0..ch.r() {
            for a in -bound..=bound {
                let ends: Vec<ArCoordinate> = (a..=a + reach).map(|j| ArCoordinate::x(k, a, j)).collect();
                let limit = ArCoordinate::x_inf(k, a);
                for c in &compact {
                    let dims = (|| -> Result<(Vec<usize>, usize)> {
                        let cc = ch.complex(c)?;
                        let mut v = Vec::with_capacity(ends.len());
                        for x in &ends {
                            v.push(lab.oracle.hom_dim(&cc, &ch.complex(x)?)?.hom_dim);
                        }
                        Ok((v, lab.oracle.hom_dim(&cc, &ch.complex(&limit)?)?.hom_dim))
                    })();
                    let (v, inf) = match dims {
                        Ok(x) => x,
                        Err(e) => {
                            t.fail(format!("{p}: {c} against {limit}: {e}"));
                            continue;
                        }
                    };
                    let last = *v.last().unwrap();
                    let threshold = v.iter().rposition(|&d| d != last).map_or(0, |i| i + 1);
                    worst = worst.max(threshold as i64);
                    let settled = threshold + (p.ri() as usize) < v.len();
                    t.check(settled && inf == last, || {
                        format!("{p}: dim Hom({c}, {limit}) = {inf}, dim Hom({c}, X:{k}:{a}:j) settles at {last} from j = {}", a + threshold as i64)
                    });
                }
            }
        }
        t.note(format!("{p}: dimensions settle at most {worst} steps past a"));
    }
}

pub(super) fn prime_field(s: &Session, t: &mut Tally) {
    for n in 0..s.labs.len() {
        let p = s.labs[n].params();
        let exact = s.sweep(n, false);
        let prime = s.sweep(n, true);
        let len = exact.window.len();
        for a in 0..len {
            for b in 0..len {
                let (x, y) = (exact.dim(a, b), prime.dim(a, b));
                t.check(x.is_some() && x == y, || format!("{p}: dim Hom({}, {}) is {x:?} exactly, {y:?} mod {}", exact.window[a], exact.window[b], s.config.prime));
            }
        }
    }
}
