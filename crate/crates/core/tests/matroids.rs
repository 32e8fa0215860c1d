mod common;

use common::presenting_system;
use proptest::prelude::*;
use transval::matroid::{maximal_presentation, minimal_refinement, transversal_from_system};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn complements_of_presentation_sets_are_flats((m, s) in presenting_system(4, 6)) {
        for &a in s.sets() {
            prop_assert!(m.is_flat(m.ground().difference(a)), "{:?} in {:?}", a, s);
        }
    }

    #[test]
    fn minimal_refinement_gives_cocircuits((m, s) in presenting_system(4, 6)) {
        let r = minimal_refinement(&m, &s, None, None).unwrap();
        prop_assert!(r.sets().iter().all(|&c| m.is_cocircuit(c)));
        prop_assert!(r.leq(&s));
        prop_assert_eq!(transversal_from_system(&r).unwrap(), m);
    }

    #[test]
    fn maximal_presentation_is_a_fixpoint_above_everything((m, s) in presenting_system(4, 6)) {
        let max = maximal_presentation(&m, &s).unwrap();
        prop_assert_eq!(transversal_from_system(&max).unwrap(), m.clone());
        prop_assert!(s.leq(&max));
        let again = maximal_presentation(&m, &max).unwrap();
        prop_assert!(again.same_multiset(&max));
        let min = minimal_refinement(&m, &s, None, None).unwrap();
        prop_assert!(maximal_presentation(&m, &min).unwrap().same_multiset(&max));
    }

    #[test]
    fn moebius_recursion((m, _s) in presenting_system(4, 6)) {
        prop_assert!(m.cyclic_flats().moebius_recursion_holds());
    }
}
