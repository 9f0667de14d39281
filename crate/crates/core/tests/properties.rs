//! Structural invariants, checked on random inputs.

use std::collections::BTreeSet;
use std::sync::{Arc, OnceLock};

use proptest::prelude::*;

use kproj_core::arquiver::{ArCoordinate, Chart, Family, Hammocks};
use kproj_core::complexes::StringComplex;
use kproj_core::gentle::{AlgebraParams, GentlePresentation, GldimClass, PathId};
use kproj_core::homlab::Oracle;
use kproj_core::spectrum::{cb_rank, strata};
use kproj_core::strings::{canonical_form, classify, enumerate_words, master_words, validate, WordClass};

const SMALL: [(u32, u32, u32); 4] = [(1, 1, 0), (1, 2, 0), (2, 2, 0), (2, 3, 1)];

struct Lab {
    pres: Arc<GentlePresentation>,
    chart: Chart,
    oracle: Oracle,
    window: Vec<ArCoordinate>,
}

fn lab(i: usize) -> &'static Lab {
    static LABS: OnceLock<Vec<Lab>> = OnceLock::new();
    &LABS.get_or_init(|| {
        SMALL
            .iter()
            .map(|&(r, n, m)| {
                let pres = Arc::new(GentlePresentation::build(AlgebraParams::new(r, n, m).unwrap()).unwrap());
                let chart = Chart::new(pres.clone());
                let window = chart.window(3);
                Lab { oracle: Oracle::new(pres.clone()), chart, window, pres }
            })
            .collect()
    })[i]
}

fn params() -> impl Strategy<Value = AlgebraParams> {
    (1u32..5, 0u32..4, 0u32..4).prop_map(|(r, extra, m)| AlgebraParams::new(r, r + extra, m).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn one_relation_per_cycle_step(p in params()) {
        let pres = GentlePresentation::build(p).unwrap();
        prop_assert_eq!(pres.relations().len(), p.r as usize);
        let long = pres.long_path();
        prop_assert!(long.is_some_and(|l| !l.is_empty()));
    }

    #[test]
    fn projectives_are_finite(p in params()) {
        let pres = GentlePresentation::build(p).unwrap();
        for &v in &pres.quiver().vertices {
            let basis = pres.projective_basis(v).unwrap();
            prop_assert!(!basis.is_empty() && basis.len() <= pres.path_count());
        }
    }

    #[test]
    fn global_dimension_from_resolutions(p in params()) {
        let pres = GentlePresentation::build(p).unwrap();
        let depth = pres.quiver().arrows.len() + 2;
        let periodic = pres.quiver().vertices.iter().any(|&v| pres.resolve_simple(v, depth).unwrap().periodic);
        prop_assert_eq!(pres.gldim_class() == GldimClass::Infinite, periodic);
        prop_assert_eq!(periodic, p.r == p.n);
    }

    #[test]
    fn composition_associative(p in params(), a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let pres = GentlePresentation::build(p).unwrap();
        let k = pres.path_count() as u32;
        let (x, y, z) = (PathId(a % k), PathId(b % k), PathId(c % k));
        let left = pres.compose_ids(x, y).and_then(|xy| pres.compose_ids(xy, z));
        let right = pres.compose_ids(y, z).and_then(|yz| pres.compose_ids(x, yz));
        prop_assert_eq!(left, right);
    }

    #[test]
    fn master_word_letters_compose_to_zero(p in params(), ell in 1usize..6) {
        let pres = GentlePresentation::build(p).unwrap();
        let w = master_words(&pres).finite(ell);
        prop_assert!(validate(&pres, &w).is_ok());
        for pair in w.core.windows(2) {
            if !pair[0].inverse && !pair[1].inverse {
                prop_assert!(pres.compose(&pair[0].path, &pair[1].path).is_none());
            }
        }
    }
}

#[test]
fn enumerated_words_are_canonical_and_distinct() {
    for i in 0..SMALL.len() {
        let pres = &lab(i).pres;
        let words = enumerate_words(pres, 4);
        let mut seen = BTreeSet::new();
        for w in &words {
            validate(pres, w).unwrap();
            assert_eq!(&canonical_form(pres, w), w);
            assert!(seen.insert(format!("{w:?}")), "duplicate {w:?}");
            // the one inverse letter, if any, comes first
            let inverses: Vec<usize> = w.core.iter().enumerate().filter(|(_, l)| l.inverse).map(|(n, _)| n).collect();
            assert!(inverses.len() <= 1 && inverses.iter().all(|&n| n == 0), "{w:?}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn realization_offsets_are_shifts(i in 0..SMALL.len(), pick in any::<prop::sample::Index>(), o in -5i64..5) {
        let l = lab(i);
        let c = *pick.get(&l.window);
        let base = l.chart.complex(&c).unwrap();
        let word = base.word.clone();
        let at_zero = StringComplex::realize(&l.pres, &word, 0).unwrap();
        let at_o = StringComplex::realize(&l.pres, &word, o).unwrap();
        prop_assert_eq!(at_o, at_zero.shift(-o));
        prop_assert_eq!(classify(&word), classify(&base.shift(3).word));
    }

    #[test]
    fn hom_invariant_under_common_shift(i in 0..SMALL.len(), a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>(), t in -3i64..4) {
        let l = lab(i);
        let (ca, cb) = (l.chart.complex(a.get(&l.window)).unwrap(), l.chart.complex(b.get(&l.window)).unwrap());
        let d = l.oracle.hom_dim(&ca, &cb).unwrap().hom_dim;
        prop_assert_eq!(l.oracle.hom_dim(&ca.shift(t), &cb.shift(t)).unwrap().hom_dim, d);
        let nonperfect = classify(&ca.word) != WordClass::Perfect || classify(&cb.word) != WordClass::Perfect;
        let cap = if nonperfect || l.chart.r() > 1 { 1 } else { 2 };
        prop_assert!(d <= cap);
    }

    #[test]
    fn suspension_is_invertible(i in 0..SMALL.len(), pick in any::<prop::sample::Index>(), t in -4i64..5) {
        let l = lab(i);
        let c = *pick.get(&l.window);
        prop_assert_eq!(l.chart.desuspend(&l.chart.suspend(&c)), c);
        let there = l.chart.suspend_by(&c, t);
        prop_assert_eq!(l.chart.suspend_by(&there, -t), c);
        prop_assert_eq!(there.family, c.family);
    }

    #[test]
    fn suspension_realizes_as_shift(i in 0..SMALL.len(), pick in any::<prop::sample::Index>()) {
        let l = lab(i);
        let c = *pick.get(&l.window);
        let up = l.chart.complex(&l.chart.suspend(&c)).unwrap();
        prop_assert!(l.oracle.is_isomorphic(&up, &l.chart.complex(&c).unwrap().shift(1)));
    }

    #[test]
    fn finite_hammocks_match_oracle(i in prop::sample::select(vec![1usize, 3]), a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        // B ∈ H⁺(A) and A ∈ H⁻(B) both say Hom(A, B) ≠ 0
        let l = lab(i);
        let h = Hammocks::new(&l.chart, &l.oracle);
        let (x, y) = (*a.get(&l.window), *b.get(&l.window));
        let nonzero = h.hom_dim(&x, &y).unwrap() > 0;
        prop_assert_eq!(h.forward_member(&x, &y).unwrap(), nonzero);
        prop_assert_eq!(h.backward_member(&y, &x).unwrap(), nonzero);
    }
}

#[test]
fn rank_table_is_total() {
    for i in 0..SMALL.len() {
        let l = lab(i);
        for p in strata(&l.chart, 3) {
            assert!(p.rank <= 2);
            assert_eq!(p.rank, cb_rank(&p.coordinate));
            let expected = match p.coordinate.family {
                Family::X | Family::Y | Family::Z => 0,
                Family::Zinf => 2,
                _ => 1,
            };
            assert_eq!(p.rank, expected, "{}", p.coordinate);
        }
    }
}
