mod common;

use common::presentation;
use proptest::prelude::*;
use transval::matroid::maximal_presentation_of;
use transval::presentation::{
    class_counts, compute_dapx, decomposition, is_minimal, is_presentation, minimize,
};
use transval::ElementSet;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn rows_lie_in_the_linear_space(p in presentation(4, 7)) {
        for row in p.matrix().rows() {
            prop_assert!(p.mu().in_tropical_linear_space(row).member);
        }
    }

    #[test]
    fn dapx_support_is_the_maximal_presentation(p in presentation(4, 6)) {
        let apx = compute_dapx(&p).unwrap();
        let mut got: Vec<ElementSet> = apx.apices.supports();
        got.sort();
        prop_assert_eq!(got, maximal_presentation_of(p.mu().underlying()).unwrap().sorted_sets());
        prop_assert!(is_presentation(&apx.apices, p.mu()));
    }

    #[test]
    fn multiplicities_are_t_of_m(p in presentation(4, 6)) {
        let dec = decomposition(&p).unwrap();
        prop_assert_eq!(dec.total_multiplicity(), p.rank());
        for (c, rows) in class_counts(&dec) {
            let class = &dec.classes[c];
            prop_assert!(class.matroid.t_of().unwrap() >= 0);
            prop_assert_eq!(class.matroid.t_of().unwrap(), class.multiplicity as i64);
            prop_assert_eq!(rows, class.multiplicity);
        }
    }

    #[test]
    fn dapx_is_stable(p in presentation(3, 6)) {
        let apx = compute_dapx(&p).unwrap();
        let q = transval::Presentation::of(apx.apices.clone(), p.mu().clone()).unwrap();
        prop_assert_eq!(compute_dapx(&q).unwrap().apices, apx.apices);
    }

    #[test]
    fn minimize_gives_a_minimal_presentation(p in presentation(4, 6)) {
        let m = minimize(&p, None).unwrap();
        prop_assert!(is_presentation(m.matrix(), p.mu()));
        prop_assert!(is_minimal(&m).unwrap());
        prop_assert!(m.matrix().supports().iter().all(|&s| p.mu().underlying().is_cocircuit(s)));
        prop_assert_eq!(minimize(&m, None).unwrap(), m);
    }
}
