use std::collections::BTreeSet;
use std::sync::Arc;

use super::*;
use crate::gentle::{AlgebraParams, GentlePresentation, GldimClass};
use crate::homlab::{same_string, Oracle};
use crate::strings::Species;

fn chart(r: u32, n: u32, m: u32) -> Chart {
    Chart::new(Arc::new(GentlePresentation::build(AlgebraParams::new(r, n, m).unwrap()).unwrap()))
}

fn c(s: &str) -> ArCoordinate {
    s.parse().unwrap()
}

const ALGEBRAS: [(u32, u32, u32); 5] = [(1, 2, 0), (2, 3, 0), (2, 3, 1), (1, 1, 0), (2, 2, 0)];

#[test]
fn coordinate_text_round_trip() {
    for s in ["X:0:2:5", "X:1:-3:inf", "X:0:-inf:4", "Y:1:3:-2", "Y:0:inf:2", "Y:0:1:-inf", "Z:1:-1:4", "Z:0:inf", "Z:1:7"] {
        assert_eq!(c(s).to_string(), s);
    }
    assert_eq!(c("X:0:1:+inf"), ArCoordinate::x_inf(0, 1));
    for bad in ["X:0:1", "W:0:1:2", "X:a:1:2", "Z:0:-inf", "Y:0:-inf:2", "X:0:1:2:3", "X:0:inf:inf"] {
        assert!(bad.parse::<ArCoordinate>().is_err(), "{bad}");
    }
}

#[test]
fn index_shape_is_checked() {
    assert!(c("X:0:2:1").check(2).is_err());
    assert!(c("Y:0:1:2").check(2).is_err());
    assert!(c("Z:2:1:2").check(2).is_err());
    assert!(c("Z:1:5:-5").check(2).is_ok());
    assert!(Index::NegInf < Index::Fin(i64::MIN) && Index::Fin(i64::MAX) < Index::PosInf);
}

#[test]
fn primed_indices() {
    let p = PrimedIndex { r: 2, n: 3, m: 1 };
    assert_eq!((p.prime(5, 0), p.prime(5, 1)), (5, 8));
    assert_eq!((p.double_prime(5, 0), p.double_prime(5, 1)), (5, 4));
    assert_eq!((p.bar(5, 0), p.bar(5, 1)), (2, 5));
}

#[test]
fn suspension_table_entries() {
    let ch = chart(2, 3, 1);
    assert_eq!(ch.suspend(&c("X:1:0:0")), c("X:0:3:3"));
    assert_eq!(ch.suspend(&c("Y:1:0:0")), c("Y:0:-1:-1"));
    assert_eq!(ch.suspend(&c("X:0:2:5")), c("X:1:2:5"));
    assert_eq!(ch.suspend(&c("Z:1:0:0")), c("Z:0:3:-1"));
    assert_eq!(ch.suspend(&c("Z:1:inf")), c("Z:0:inf"));
    let ch = chart(1, 1, 0);
    for b in -3..=3 {
        assert_eq!(ch.suspend(&ArCoordinate::z_ladder(0, b)), ArCoordinate::z_ladder(0, b + 1));
    }
}

#[test]
fn suspension_is_the_shift_of_complexes() {
    for (r, n, m) in ALGEBRAS {
        let ch = chart(r, n, m);
        for x in ch.window(2) {
            let s = ch.suspend(&x);
            assert_eq!(ch.desuspend(&s), x);
            let shifted = ch.complex(&x).unwrap().shift(1);
            assert!(same_string(ch.pres(), &ch.complex(&s).unwrap(), &shifted), "({r},{n},{m}) {x} ↦ {s}");
        }
    }
}

#[test]
fn suspension_power_translates_indices() {
    let ch = chart(2, 3, 1);
    assert_eq!(ch.suspend_by(&c("X:0:1:2"), 2), c("X:0:4:5"));
    assert_eq!(ch.suspend_by(&c("Y:0:1:0"), 2), c("Y:0:0:-1"));
    assert_eq!(ch.suspend_by(&c("X:0:4:5"), -2), c("X:0:1:2"));
}

#[test]
fn species_by_family() {
    use Species::*;
    let fin = chart(2, 3, 1);
    for (s, sp) in [
        ("X:0:0:1", Finite),
        ("Y:1:1:0", Finite),
        ("Z:0:0:0", Finite),
        ("X:0:0:inf", LeftInfinite),
        ("Y:0:0:-inf", LeftInfinite),
        ("X:1:-inf:0", RightInfinite),
        ("Y:1:inf:0", RightInfinite),
        ("Z:1:inf", TwoSided),
    ] {
        assert_eq!(fin.place(&c(s)).unwrap().word.species(), sp, "{s}");
    }
    let inf = chart(2, 2, 0);
    for (s, sp) in [("X:0:0:1", Finite), ("X:1:0:inf", LeftInfinite), ("Z:0:3", RightInfinite), ("Z:1:inf", TwoSided)] {
        assert_eq!(inf.place(&c(s)).unwrap().word.species(), sp, "{s}");
    }
    assert!(inf.place(&c("Y:0:0:0")).is_err());
    assert!(inf.is_compact(&c("Z:0:3")) && !inf.is_compact(&c("X:0:0:inf")));
    assert!(fin.is_compact(&c("Z:0:0:3")) && !fin.is_compact(&c("Y:0:inf:0")));
}

#[test]
fn component_counts() {
    for (r, n, m) in ALGEBRAS {
        let ch = chart(r, n, m);
        let names: BTreeSet<String> = ch.window(1).iter().map(|x| ch.component(x)).collect();
        let per = if ch.regime() == GldimClass::Finite { 8 } else { 3 };
        assert_eq!(names.len() as u32, per * r, "({r},{n},{m})");
    }
}

#[test]
fn distinct_coordinates_give_distinct_objects() {
    for (r, n, m) in ALGEBRAS {
        let ch = chart(r, n, m);
        let mut seen = BTreeSet::new();
        for x in ch.window(3) {
            let p = ch.place(&x).unwrap();
            let key = crate::homlab::string_key(ch.pres(), &ch.complex(&x).unwrap());
            assert!(seen.insert(key), "({r},{n},{m}) {x} repeats {:?}", p.word);
        }
    }
}

fn formula(ch: &Chart, a: &str, b: &str) -> bool {
    match ch.forward_decision(&c(a), &c(b)).unwrap() {
        Decision::Formula(x) => x,
        d => panic!("{a} {b}: {d:?}"),
    }
}

#[test]
fn finite_hammock_clauses() {
    let ch = chart(2, 3, 1);
    for i in -2..=7 {
        assert_eq!(formula(&ch, "X:0:2:5", &format!("X:0:{i}:inf")), (2..=5).contains(&i), "{i}");
        assert_eq!(formula(&ch, "X:0:2:5", &format!("X:1:-inf:{i}")), (1..=4).contains(&i), "{i}");
    }
    let z = c("Z:1:inf");
    let hammock: BTreeSet<Family> = ch
        .window(2)
        .iter()
        .filter(|b| formula(&ch, "Z:1:inf", &b.to_string()))
        .inspect(|b| assert_eq!(b.k, 1))
        .map(|b| b.family)
        .collect();
    assert_eq!(hammock, BTreeSet::from([Family::Z, Family::Xinf, Family::Yinf, Family::Zinf]));
    assert!(ch.forward_decision(&z, &c("X:1:0:0")).is_ok());
    assert!(matches!(ch.forward_decision(&c("X:0:0:1"), &c("Z:0:0:0")).unwrap(), Decision::Oracle(..)));
}

#[test]
fn infinite_hammock_clauses() {
    let ch = chart(1, 1, 0);
    for a in -2..=2 {
        for i in -4..=4 {
            let b = format!("X:0:{i}:inf");
            assert_eq!(formula(&ch, &format!("Z:0:{a}"), &b), i <= a);
            let back = ch.backward_decision(&c(&format!("Z:0:{a}")), &c(&b)).unwrap();
            assert_eq!(back, Decision::Formula(i <= a));
        }
    }
}

#[test]
fn finite_hammocks_agree_with_the_oracle() {
    for (r, n, m) in [(2, 3, 1), (1, 2, 0)] {
        let ch = chart(r, n, m);
        let oracle = Oracle::new(Arc::new(ch.pres().clone()));
        let h = Hammocks::new(&ch, &oracle);
        let win = ch.window(1);
        for a in &win {
            for b in &win {
                let truth = h.nonzero(a, b).unwrap();
                assert_eq!(h.forward_member(a, b).unwrap(), truth, "({r},{n},{m}) {b} ∈ H⁺({a})");
                assert_eq!(h.backward_member(b, a).unwrap(), truth, "({r},{n},{m}) {a} ∈ H⁻({b})");
            }
        }
    }
}

#[test]
fn printed_infinite_clauses_that_the_oracle_refutes() {
    let ch = chart(2, 2, 0);
    let oracle = Oracle::new(Arc::new(ch.pres().clone()));
    let h = Hammocks::new(&ch, &oracle);
    // Z^{k+1}_∞ is listed in H⁺(X^k_{a,∞}); no shift of it receives a map
    for t in -3..=3 {
        let b = ch.complex(&c("Z:1:inf")).unwrap().shift(t);
        let a = ch.complex(&c("X:0:0:inf")).unwrap();
        assert_eq!(oracle.hom_dim(&a, &b).unwrap().hom_dim, 0);
    }
    assert!(h.forward_member(&c("X:0:0:inf"), &c("Z:1:inf")).unwrap());
    // Z^k_∞ is listed in H⁻(Z^k_a)
    assert!(h.backward_member(&c("Z:0:0"), &c("Z:0:inf")).unwrap());
    assert!(!h.nonzero(&c("Z:0:inf"), &c("Z:0:0")).unwrap());
    // H⁻(X^k_{a,∞}) read through Z^{k−1}_ā omits X^k_{a,∞} itself
    assert!(h.nonzero(&c("X:1:0:inf"), &c("X:1:0:inf")).unwrap());
    assert!(!h.backward_member(&c("X:1:0:inf"), &c("X:1:0:inf")).unwrap());
}

#[test]
fn finite_meshes_are_almost_split() {
    let ch = chart(2, 3, 1);
    let oracle = Oracle::new(Arc::new(ch.pres().clone()));
    assert_eq!(ch.mesh(&c("X:0:1:1")).unwrap().targets, vec![c("X:0:1:2")]);
    assert_eq!(ch.mesh(&c("Z:0:1:1")).unwrap().targets, vec![c("Z:0:2:1"), c("Z:0:1:2")]);
    assert!(ch.mesh(&c("X:0:1:inf")).is_err());
    for x in ch.window(1).iter().filter(|x| ch.is_compact(x)) {
        let m = ch.mesh(x).unwrap();
        assert!(check_mesh(&ch, &oracle, &m).unwrap(), "{x}");
    }
}

#[test]
fn ladder_meshes() {
    let ch = chart(2, 2, 0);
    let oracle = Oracle::new(Arc::new(ch.pres().clone()));
    let m = ch.mesh(&c("X:1:0:inf")).unwrap();
    assert_eq!(m.targets, vec![c("X:1:1:inf"), c("Z:1:0")]);
    assert_eq!(m.third, c("Z:1:1"));
    assert!(check_mesh(&ch, &oracle, &m).unwrap());
    assert!(ch.mesh(&c("Z:1:0")).is_err());
    // a wrong third term is rejected
    let wrong = Mesh { third: c("Z:1:2"), ..m };
    assert!(!check_mesh(&ch, &oracle, &wrong).unwrap());
}

#[test]
fn boundary_triangle_cones() {
    for (r, n, m) in [(2, 3, 1), (1, 1, 0)] {
        let ch = chart(r, n, m);
        let oracle = Oracle::new(Arc::new(ch.pres().clone()));
        for k in 0..ch.r() {
            let ts = ch.boundary_triangles(k, 1, 0).unwrap();
            assert_eq!(ts.len(), if ch.regime() == GldimClass::Finite { 6 } else { 1 });
            for t in ts {
                let got = check_triangle(&ch, &oracle, &t).unwrap();
                assert!(got.cone_matches && got.hom_dim > 0, "({r},{n},{m}) {t:?}");
            }
        }
    }
    let ch = chart(2, 3, 1);
    let oracle = Oracle::new(Arc::new(ch.pres().clone()));
    let shifted = Triangle { first: c("X:0:0:0"), second: c("X:0:0:inf"), third: c("X:0:2:inf") };
    assert!(!check_triangle(&ch, &oracle, &shifted).unwrap().cone_matches);
}

#[test]
fn extended_rays_pass_the_infinite_objects() {
    let ch = chart(2, 3, 1);
    let ray = ch.extended_ray(&c("X:0:2:2"), 20).unwrap();
    assert_eq!(&ray[..3], &[c("X:0:2:2"), c("X:0:2:3"), c("X:0:2:inf")]);
    assert!(ray.contains(&c("Z:0:2:2")));
    assert_eq!(ray.last(), Some(&ch.suspend(&c("X:0:1:1"))));
    let coray = ch.extended_coray(&c("Y:1:0:0"), 4).unwrap();
    assert_eq!(coray, vec![c("Y:1:0:0"), c("Y:1:1:0"), c("Y:1:inf:0"), c("Z:1:-1:0")]);
    assert!(ch.extended_ray(&c("Y:0:0:0"), 3).is_err());
    assert!(ch.extended_coray(&c("X:0:0:1"), 3).is_err());
    let oracle = Oracle::new(Arc::new(ch.pres().clone()));
    for seq in [ray, ch.extended_coray(&c("Y:1:0:0"), 20).unwrap(), ch.extended_ray(&c("X:1:-inf:0"), 9).unwrap()] {
        assert!(check_chain(&ch, &oracle, &seq, 6).unwrap().is_empty(), "{seq:?}");
    }
    // consecutive maps of a triangle compose to zero
    let tri = [c("X:0:0:0"), c("X:0:0:inf"), c("X:0:1:inf")];
    assert_eq!(check_chain(&ch, &oracle, &tri, 2).unwrap(), vec![(0, 2)]);
}

#[test]
fn dot_output_is_deterministic() {
    let ch = chart(1, 2, 0);
    let oracle = Oracle::new(Arc::new(ch.pres().clone()));
    let h = Hammocks::new(&ch, &oracle);
    let a = Some((&h, c("X:0:0:1")));
    let one = window_dot(&ch, 1, a).unwrap();
    assert_eq!(one, window_dot(&ch, 1, a).unwrap());
    assert!(one.starts_with("digraph ar_quiver {"));
    assert!(one.contains("\"X:0:0:0\" -> \"X:0:0:1\";"));
    assert!(one.contains("\"X:0:0:inf\" [style=filled, fillcolor=gray80, fontcolor=gray30];"));
    let json = window_json(&ch, 1, None).unwrap();
    assert_eq!(json.nodes.len(), ch.window(1).len());
    assert!(json.nodes.iter().all(|n| !n.shaded));
    assert!(json.arrows.contains(&("Z:0:0:0".into(), "Z:0:1:0".into())));
}
