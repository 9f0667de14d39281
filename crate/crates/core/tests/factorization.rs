//! How maps factor through a third string complex.

use std::sync::Arc;

use kproj_core::arquiver::{ArCoordinate, Chart};
use kproj_core::complexes::{ChainMap, StringComplex};
use kproj_core::gentle::{AlgebraParams, GentlePresentation};
use kproj_core::homlab::Oracle;

fn setup(r: u32, n: u32, m: u32) -> (Chart, Oracle) {
    let pres = Arc::new(GentlePresentation::build(AlgebraParams::new(r, n, m).unwrap()).unwrap());
    (Chart::new(pres.clone()), Oracle::new(pres))
}

fn cx(chart: &Chart, s: &str) -> StringComplex {
    chart.complex(&s.parse::<ArCoordinate>().unwrap()).unwrap()
}

fn basis(oracle: &Oracle, a: &StringComplex, b: &StringComplex) -> Vec<ChainMap> {
    let span = oracle.comparison_span(a, b).unwrap().unwrap_or((0, 0));
    oracle.hom_basis_covering(a, b, (span.0 - 12, span.1 + 12)).unwrap().maps
}

#[test]
fn maps_along_a_ray_factor_through_the_middle() {
    let (chart, oracle) = setup(2, 3, 1);
    for (a, b, c) in [("X:0:0:0", "X:0:0:1", "X:0:0:3"), ("X:1:-1:0", "X:1:0:0", "X:1:1:1"), ("Y:0:2:0", "Y:0:3:0", "Y:0:4:0")] {
        let (ca, cb, cc) = (cx(&chart, a), cx(&chart, b), cx(&chart, c));
        let f = &basis(&oracle, &ca, &cb)[0];
        for g in basis(&oracle, &ca, &cc) {
            assert!(oracle.factors_through(&ca, &cb, &cc, &g, f).unwrap(), "{a} -> {b} -> {c}");
        }
        assert!(oracle.all_factor_through(&ca, &cb, &cc, f).unwrap());
    }
}

#[test]
fn compact_into_the_infinite_ray_end() {
    // X_{0,0} → X_{0,∞} passes through X_{0,2}
    let (chart, oracle) = setup(2, 3, 1);
    let (ca, cb, cc) = (cx(&chart, "X:0:0:0"), cx(&chart, "X:0:0:2"), cx(&chart, "X:0:0:inf"));
    let f = &basis(&oracle, &ca, &cb)[0];
    assert!(oracle.all_factor_through(&ca, &cb, &cc, f).unwrap());
}

#[test]
fn identities_do_not_factor_through_other_objects() {
    // both Homs are nonzero, yet A is not a summand of B
    let (chart, oracle) = setup(1, 1, 0);
    let (ca, cb) = (cx(&chart, "X:0:2:2"), cx(&chart, "X:0:0:2"));
    assert!(!basis(&oracle, &ca, &cb).is_empty() && !basis(&oracle, &cb, &ca).is_empty());
    let id = ChainMap::identity(oracle.pres(), &ca, -20, 20);
    for f in basis(&oracle, &ca, &cb) {
        assert!(!oracle.factors_through(&ca, &cb, &ca, &id, &f).unwrap());
    }
}

#[test]
fn irreducible_maps_do_not_factor_through_distant_objects() {
    let (chart, oracle) = setup(1, 1, 0);
    let (ca, cb, cc) = (cx(&chart, "X:0:-4:-4"), cx(&chart, "X:0:-4:2"), cx(&chart, "X:0:-4:-3"));
    let g = &basis(&oracle, &ca, &cc)[0];
    let fs = basis(&oracle, &ca, &cb);
    assert!(!fs.is_empty() && !basis(&oracle, &cb, &cc).is_empty());
    assert!(fs.iter().all(|f| !oracle.factors_through(&ca, &cb, &cc, g, f).unwrap()));
}

#[test]
fn zero_maps_factor_through_anything() {
    let (chart, oracle) = setup(2, 3, 1);
    let (ca, cb, cc) = (cx(&chart, "X:0:0:0"), cx(&chart, "Y:1:0:0"), cx(&chart, "X:0:0:2"));
    assert!(oracle.factors_through(&ca, &cb, &cc, &ChainMap::zero(), &ChainMap::zero()).unwrap());
}
