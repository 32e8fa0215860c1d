mod common;

use common::{entry, matrix};
use proptest::prelude::*;
use transval::trop::{all_maximal_minors, tropical_minor, tropical_minor_enumerate};
use transval::{ElementSet, Rational, Trop, TropMatrix};

proptest! {
    #[test]
    fn oplus_is_commutative_and_associative(a in entry(), b in entry(), c in entry()) {
        prop_assert_eq!(a.oplus(&b), b.oplus(&a));
        prop_assert_eq!(a.oplus(&b).oplus(&c), a.oplus(&b.oplus(&c)));
    }

    #[test]
    fn otimes_is_commutative_and_associative(a in entry(), b in entry(), c in entry()) {
        prop_assert_eq!(a.otimes(&b), b.otimes(&a));
        prop_assert_eq!(a.otimes(&b).otimes(&c), a.otimes(&b.otimes(&c)));
    }

    #[test]
    fn otimes_distributes_over_oplus(a in entry(), b in entry(), c in entry()) {
        prop_assert_eq!(a.otimes(&b.oplus(&c)), a.otimes(&b).oplus(&a.otimes(&c)));
    }

    #[test]
    fn identities_and_absorption(a in entry()) {
        prop_assert_eq!(a.oplus(&Trop::Inf), a.clone());
        prop_assert_eq!(a.otimes(&Trop::zero()), a.clone());
        prop_assert_eq!(a.otimes(&Trop::Inf), Trop::Inf);
        prop_assert_eq!(a.oplus(&a), a);
    }

    #[test]
    fn text_round_trip(a in entry()) {
        prop_assert_eq!(Trop::<Rational>::parse(&a.to_text()).unwrap(), a);
    }
}

fn dims() -> impl Strategy<Value = TropMatrix<Rational>> {
    (1usize..=4)
        .prop_flat_map(|d| (Just(d), d..=6))
        .prop_flat_map(|(d, n)| matrix(d, n))
}

proptest! {
    #[test]
    fn dp_matches_enumeration(a in dims()) {
        let rows = a.all_rows();
        for cols in ElementSet::full(a.ncols()).k_subsets(a.nrows()) {
            prop_assert_eq!(
                tropical_minor(&a, &rows, cols).unwrap(),
                tropical_minor_enumerate(&a, &rows, cols).unwrap()
            );
        }
    }

    #[test]
    fn minors_ignore_row_order(a in dims(), seed in any::<u64>()) {
        let d = a.nrows();
        let mut perm: Vec<usize> = (0..d).collect();
        let mut s = seed;
        for i in (1..d).rev() {
            perm.swap(i, (s % (i as u64 + 1)) as usize);
            s /= i as u64 + 1;
        }
        let permuted = TropMatrix::from_vectors(perm.iter().map(|&i| a.row(i).clone()).collect()).unwrap();
        prop_assert_eq!(all_maximal_minors(&a).unwrap(), all_maximal_minors(&permuted).unwrap());
    }

    #[test]
    fn minors_follow_column_relabelling(a in dims()) {
        let n = a.ncols();
        let reversed = TropMatrix::new(
            a.rows().iter().map(|r| r.entries().iter().rev().cloned().collect()).collect(),
        ).unwrap();
        let flip = |s: ElementSet| ElementSet::from_elements(s.iter().map(|e| n - 1 - e));
        let m = all_maximal_minors(&a).unwrap();
        let r = all_maximal_minors(&reversed).unwrap();
        for (s, v) in &m {
            prop_assert_eq!(&r[&flip(*s)], v);
        }
    }

    #[test]
    fn row_shift_shifts_every_minor(a in dims(), i in 0usize..4, c in -6i64..6) {
        let i = i % a.nrows();
        let c = Rational::from_integer(c.into());
        let shifted = a.with_row(i, a.row(i).shift(&c));
        let before = all_maximal_minors(&a).unwrap();
        let after = all_maximal_minors(&shifted).unwrap();
        for (s, v) in &before {
            prop_assert_eq!(&after[s], &v.shift(&c));
        }
    }
}
