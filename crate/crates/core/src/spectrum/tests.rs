use std::collections::BTreeSet;
use std::sync::Arc;

use super::*;
use crate::gentle::{AlgebraParams, GentlePresentation};

fn setup(r: u32, n: u32, m: u32) -> (Chart, Oracle) {
    let pres = Arc::new(GentlePresentation::build(AlgebraParams::new(r, n, m).unwrap()).unwrap());
    (Chart::new(pres.clone()), Oracle::new(pres))
}

fn c(s: &str) -> ArCoordinate {
    s.parse().unwrap()
}

fn names(v: &[ArCoordinate]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

#[test]
fn ranks_by_component() {
    for s in ["X:0:1:3", "Y:1:2:-1", "Z:0:3:-3"] {
        assert_eq!(cb_rank(&c(s)), 0, "{s}");
    }
    for s in ["X:0:1:inf", "X:0:-inf:1", "Y:0:inf:1", "Y:0:1:-inf", "Z:1:4"] {
        assert_eq!(cb_rank(&c(s)), 1, "{s}");
    }
    assert_eq!(cb_rank(&c("Z:1:inf")), 2);
}

#[test]
fn strata_sizes() {
    let (chart, _) = setup(2, 3, 1);
    let s = strata(&chart, 2);
    let count = |r: u8| s.iter().filter(|p| p.rank == r).count();
    // per k: 15 X, 15 Y, 25 Z; four lines of 5; one Z_inf
    assert_eq!((count(0), count(1), count(2)), (110, 40, 2));
    assert!(s.windows(2).all(|w| w[0].rank <= w[1].rank));

    let (chart, _) = setup(1, 1, 0);
    let s = strata(&chart, 2);
    let count = |r: u8| s.iter().filter(|p| p.rank == r).count();
    assert_eq!((count(0), count(1), count(2)), (15, 10, 1));
    assert!(s.iter().filter(|p| p.coordinate.family == Family::ZLadder).all(|p| p.compact && p.rank == 1));
}

#[test]
fn one_simples_have_both_components() {
    let (chart, oracle) = setup(2, 3, 1);
    let h = Hammocks::new(&chart, &oracle);
    let classes = enumerate_one_simples(&chart, &oracle, 2).unwrap();
    assert!(!classes.is_empty());
    for (key, members) in &classes {
        for m in members {
            assert_eq!(m.key(), *key);
            assert!(h.nonzero(&m.source, &m.first).unwrap() && h.nonzero(&m.source, &m.second).unwrap(), "{m}");
            assert!(members.iter().all(|o| o.equivalent(m)));
        }
    }
    let shapes: BTreeSet<Shape> = classes.keys().map(|k| k.shape).collect();
    assert_eq!(shapes.len(), 4);
}

#[test]
fn ladder_one_simples() {
    // with one class, j′ − 1 = j
    let (chart, oracle) = setup(1, 1, 0);
    let classes = enumerate_one_simples(&chart, &oracle, 2).unwrap();
    let key = ClassKey { shape: Shape::LadderZ, k: 0, line: 0 };
    let members = &classes[&key];
    assert!(!members.is_empty());
    for m in members {
        assert_eq!(m.source, c("Z:0:0"));
        assert_eq!(m.first, c("Z:0:1"));
        assert_eq!((m.second.family, m.second.j), (Family::X, 0));
        assert!(m.second.i <= 0);
    }
}

#[test]
fn trivial_open_sets() {
    let (chart, oracle) = setup(2, 3, 1);
    let window = chart.window(2);
    let h = Hammocks::new(&chart, &oracle);
    for s in ["X:0:0:1", "Z:1:0:0"] {
        let p = c(s);
        let rep = OpenSet::representable(&chart, p).unwrap();
        let expected: Vec<ArCoordinate> = window.iter().copied().filter(|n| h.nonzero(&p, n).unwrap()).collect();
        assert_eq!(rep.members(&chart, &oracle, &window).unwrap(), expected);
        let span = degree_span(&chart, &window).unwrap();
        let id = OpenSet::identity(&chart, p, span).unwrap();
        assert!(id.members(&chart, &oracle, &window).unwrap().is_empty());
    }
}

#[test]
fn almost_split_map_isolates_its_source() {
    for (r, n, m) in [(2, 3, 1), (1, 1, 0)] {
        let (chart, oracle) = setup(r, n, m);
        let window = chart.window(2);
        for s in ["X:0:0:1", "X:0:1:1"] {
            let p = c(s);
            let mesh = chart.mesh(&p).unwrap();
            let maps = mesh_map(&chart, &oracle, &mesh).unwrap().unwrap();
            let f = OpenSet::from_maps(&chart, p, mesh.targets.clone(), &maps, None).unwrap();
            assert_eq!(f.members(&chart, &oracle, &window).unwrap(), vec![p], "{s} on ({r},{n},{m})");
        }
    }
}

#[test]
fn one_simple_isolates_a_rank_one_point() {
    let (chart, oracle) = setup(2, 3, 1);
    let window = chart.window(6);
    let upper: Vec<ArCoordinate> = window.iter().copied().filter(|p| cb_rank(p) >= 1).collect();
    let span = degree_span(&chart, &window).unwrap();
    let cases = [
        (ClassKey { shape: Shape::X, k: 0, line: 0 }, "X:0:0:inf"),
        (ClassKey { shape: Shape::Y, k: 1, line: -1 }, "Y:1:inf:-1"),
    ];
    for (key, point) in cases {
        let members = class_members(&chart, &oracle, &key, 3, 2).unwrap();
        assert_eq!(members.len(), 2);
        for m in members {
            let f = &OpenSet::candidates(&chart, &oracle, m.source, &m.targets(), span).unwrap()[0];
            assert_eq!(names(&f.members(&chart, &oracle, &upper).unwrap()), [point], "{m}");
        }
    }
}

#[test]
fn ray_arrow_is_not_one_simple() {
    // maps along a ray kill every point of positive rank
    let (chart, oracle) = setup(2, 3, 1);
    let window = chart.window(5);
    let upper: Vec<ArCoordinate> = window.iter().copied().filter(|p| cb_rank(p) >= 1).collect();
    let span = degree_span(&chart, &window).unwrap();
    for (a, b) in [("X:0:0:1", "X:0:0:2"), ("X:1:-1:1", "X:1:-1:3"), ("Y:0:1:0", "Y:0:2:0")] {
        let f = &OpenSet::candidates(&chart, &oracle, c(a), &[c(b)], span).unwrap()[0];
        assert!(f.members(&chart, &oracle, &upper).unwrap().is_empty(), "{a} -> {b}");
    }
}

#[test]
fn derivative_report_reaches_rank_two() {
    for (r, n, m) in [(1, 2, 0), (1, 1, 0), (2, 2, 0)] {
        let (chart, oracle) = setup(r, n, m);
        let rep = derivative_report(&chart, &oracle, 2).unwrap();
        assert!(rep.ok(), "({r},{n},{m}): {:?} {:?}", rep.residual, rep.unexhausted);
        assert_eq!(rep.stage2.len(), r as usize);
        let tops: BTreeSet<ArCoordinate> = rep.stage2.iter().map(|s| s.open_set[0]).collect();
        assert_eq!(tops.len(), r as usize);
    }
}
