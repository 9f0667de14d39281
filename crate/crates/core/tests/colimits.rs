//! `X_{a,∞}` seen from compact objects: Hom into it is the eventual Hom into
//! `X_{a,j}` as `j` grows.

use std::sync::Arc;

use kproj_core::arquiver::{ArCoordinate, Chart, Hammocks};
use kproj_core::gentle::{AlgebraParams, GentlePresentation};
use kproj_core::homlab::Oracle;

fn check(r: u32, n: u32, m: u32, bound: i64) {
    let pres = Arc::new(GentlePresentation::build(AlgebraParams::new(r, n, m).unwrap()).unwrap());
    let chart = Chart::new(pres.clone());
    let oracle = Oracle::new(pres);
    let h = Hammocks::new(&chart, &oracle);
    let compact: Vec<ArCoordinate> = chart.window(bound).into_iter().filter(|c| chart.is_compact(c)).collect();
    let reach = 2 * (bound + (r + n + m) as i64);
    for k in 0..chart.r() {
        for a in -bound..=bound {
            let limit = ArCoordinate::x_inf(k, a);
            for c in &compact {
                let target = h.hom_dim(c, &limit).unwrap();
                let tail: Vec<usize> = (a + reach..a + reach + chart.r() + 1)
                    .map(|j| h.hom_dim(c, &ArCoordinate::x(k, a, j)).unwrap())
                    .collect();
                assert!(tail.iter().all(|&d| d == target), "({r},{n},{m}) {c} -> {limit}: {tail:?} vs {target}");
            }
        }
    }
}

#[test]
fn finite_global_dimension() {
    check(2, 3, 1, 2);
}

#[test]
fn infinite_global_dimension() {
    check(1, 1, 0, 2);
}
