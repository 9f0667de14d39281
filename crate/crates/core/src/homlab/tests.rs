use std::sync::Arc;

use super::*;
use crate::complexes::{mapping_cone, BoundedComplex, ConeComplex};
use crate::gentle::AlgebraParams;
use crate::linalg::backend;
use crate::strings::parse_word;

fn oracle(r: u32, n: u32, m: u32) -> Oracle {
    let p = GentlePresentation::build(AlgebraParams::new(r, n, m).unwrap()).unwrap();
    Oracle::new(Arc::new(p))
}

fn sc(o: &Oracle, text: &str, offset: i64) -> StringComplex {
    let w = parse_word(o.pres(), text).unwrap();
    StringComplex::realize(o.pres(), &w, offset).unwrap()
}

#[test]
fn loop_letter_endomorphisms() {
    let o = oracle(1, 1, 0);
    let a = sc(&o, "(b0)", 0);
    let rep = o.hom_dim(&a, &a).unwrap();
    assert_eq!((rep.dim_chain_maps, rep.dim_null_homotopic, rep.hom_dim), (3, 1, 2));
    let basis = o.hom_basis(&a, &a, 0).unwrap();
    assert_eq!(basis.maps.len(), 2);
    for f in &basis.maps {
        f.verify(o.pres(), &a, &a).unwrap();
    }
}

#[test]
fn zero_complex_has_no_maps() {
    let o = oracle(2, 3, 0);
    let a = sc(&o, "(c2)", 0);
    let z = BoundedComplex::zero();
    assert_eq!(o.hom(&z, &a).unwrap().hom_dim, 0);
    assert_eq!(o.hom(&a, &z).unwrap().hom_dim, 0);
}

#[test]
fn nonperfect_complexes_have_one_dimensional_endomorphisms() {
    for (r, n, m, words) in [
        (1, 1, 0, vec!["[v^inf | e0]", "[e0 | v^inf]", "[v^inf | v^inf]"]),
        (2, 3, 1, vec!["[a^-1 | v^inf]", "[v^inf | (c2)]", "[v^inf | v^inf]", "[(b1*b0) | v^inf]"]),
        (2, 2, 0, vec!["[v^inf | v^inf]", "[(c1) | v^inf]"]),
    ] {
        let o = oracle(r, n, m);
        for t in words {
            let a = sc(&o, t, 0);
            let rep = o.hom_dim(&a, &a).unwrap();
            assert_eq!(rep.hom_dim, 1, "({r},{n},{m}) {t}: {rep:?}");
            assert!(rep.stabilized);
        }
    }
}

#[test]
fn simultaneous_shift_invariance() {
    let o = oracle(2, 3, 1);
    let words = ["(c2)", "a^-1 (c2)", "(b1*b0)", "[a^-1 | v^inf]", "[v^inf | (c2)]"];
    for x in words {
        for y in words {
            for off in -2..=2 {
                let a = sc(&o, x, 0);
                let b = sc(&o, y, off);
                let base = o.hom(&a, &b).unwrap().hom_dim;
                let shifted = o.hom(&a.shift(3), &b.shift(3)).unwrap().hom_dim;
                assert_eq!(base, shifted, "{x} {y} {off}");
            }
        }
    }
}

#[test]
fn prime_field_agrees() {
    let exact = oracle(2, 3, 1);
    let prime = Oracle::with_backend(exact.pres_arc(), backend("prime").unwrap());
    let words = ["(c2)", "a^-1 (c2)", "(b1*b0)", "a^-1 v", "[a^-1 | v^inf]", "[v^inf | v^inf]"];
    for x in words {
        for y in words {
            for off in -3..=3 {
                let a = sc(&exact, x, 0);
                let b = sc(&exact, y, off);
                assert_eq!(exact.hom(&a, &b).unwrap(), prime.hom(&a, &b).unwrap(), "{x} {y} {off}");
            }
        }
    }
}

#[test]
fn cone_of_identity_is_contractible() {
    let o = oracle(2, 3, 1);
    let a = sc(&o, "a^-1 v", 0);
    let b = BoundedComplex::from_window(&a, -5, 5);
    let id = ChainMap::identity(o.pres(), &b, b.lo, b.hi());
    let cone = mapping_cone(o.pres(), &b, &b, &id).unwrap();
    assert_eq!(o.hom(&cone, &cone).unwrap().hom_dim, 0);
    assert!(minimize(o.pres(), &cone).unwrap().is_zero());
    assert!(o.isomorphic_by_cone(&b, &b).unwrap());
}

#[test]
fn read_back_realized_words() {
    let o = oracle(2, 3, 1);
    for t in ["(c2)", "a^-1 (c2)", "a^-1 v v", "e-1", "(b1*b0)(c2)"] {
        let a = sc(&o, t, 4);
        let b = BoundedComplex::from_window(&a, 0, 12);
        let words = read_word(o.pres(), &b).unwrap();
        assert_eq!(words.len(), 1);
        assert_eq!(words[0].normalized(o.pres()), string_key(o.pres(), &a), "{t}");
    }
}

#[test]
fn factoring_through_identity_and_zero() {
    let o = oracle(1, 1, 0);
    let a = sc(&o, "(b0)", 0);
    let basis = o.hom_basis(&a, &a, 0).unwrap();
    let id = ChainMap::identity(o.pres(), &a, 0, 1);
    for g in &basis.maps {
        assert!(o.factors_through(&a, &a, &a, g, &id).unwrap());
    }
    assert!(o.factors_through(&a, &a, &a, &ChainMap::zero(), &ChainMap::zero()).unwrap());
    assert!(!o.factors_through(&a, &a, &a, &id, &ChainMap::zero()).unwrap());
}

#[test]
fn cone_of_stalk_into_right_infinite_word() {
    // the only map P_0 → (P_0 → P_0 → ⋯) is b0 in degree 0, so the cone prepends a letter
    let o = oracle(1, 1, 0);
    let a = sc(&o, "e0", 0);
    let b = sc(&o, "[e0 | v^inf]", 0);
    let basis = o.hom_basis(&a, &b, 0).unwrap();
    assert_eq!(basis.maps.len(), 1);
    let pres = o.pres_arc();
    let cone = ConeComplex::new(pres.clone(), Arc::new(a), Arc::new(b.clone()), basis.maps[0].clone()).unwrap();
    let got = window_words(&pres, &cone, -3, 8, 3).unwrap().unwrap();
    let expect = window_words(&pres, &b.shift(1), -3, 8, 3).unwrap().unwrap();
    assert_eq!(got, expect);
}
