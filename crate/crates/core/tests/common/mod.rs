#![allow(dead_code)]

use proptest::prelude::*;
use transval::extension::ExtensionColumn;
use transval::matroid::{transversal_from_system, SetSystem};
use transval::{ElementSet, Matroid, Presentation, Rational, Trop, TropMatrix, TropVector};

/// Halves in `[-2, 3]`, or `Inf` about a third of the time.
pub fn entry() -> impl Strategy<Value = Trop<Rational>> {
    prop_oneof![
        1 => Just(Trop::Inf),
        2 => (-4i64..=6).prop_map(|k| Trop::Fin(Rational::new(k.into(), 2.into()))),
    ]
}

pub fn finite_entry() -> impl Strategy<Value = Trop<Rational>> {
    (-4i64..=6).prop_map(|k| Trop::Fin(Rational::new(k.into(), 2.into())))
}

pub fn matrix(d: usize, n: usize) -> impl Strategy<Value = TropMatrix<Rational>> {
    prop::collection::vec(prop::collection::vec(entry(), n), d)
        .prop_map(|rows| TropMatrix::new(rows).expect("rectangular"))
}

/// Presentations with `1 ≤ d ≤ max_d`, `d ≤ n ≤ max_n`.
pub fn presentation(max_d: usize, max_n: usize) -> impl Strategy<Value = Presentation<Rational>> {
    (1..=max_d)
        .prop_flat_map(move |d| (Just(d), d..=max_n.max(d)))
        .prop_flat_map(|(d, n)| matrix(d, n))
        .prop_filter_map("some maximal minor is finite", |a| {
            Presentation::new(a).ok()
        })
}

pub fn column(d: usize) -> impl Strategy<Value = ExtensionColumn<Rational>> {
    prop::collection::vec(entry(), d).prop_map(ExtensionColumn::from_trops)
}

pub fn vector(n: usize) -> impl Strategy<Value = TropVector<Rational>> {
    prop::collection::vec(entry(), n).prop_map(TropVector::new)
}

/// A set system on `[n]` with `d` nonempty sets that presents some matroid
/// of rank `d`.
pub fn presenting_system(
    max_d: usize,
    max_n: usize,
) -> impl Strategy<Value = (Matroid, SetSystem)> {
    (1..=max_d)
        .prop_flat_map(move |d| (Just(d), d..=max_n.max(d)))
        .prop_flat_map(|(d, n)| (Just(n), prop::collection::vec(1u32..(1 << n), d)))
        .prop_filter_map("system has a transversal of full size", |(n, masks)| {
            let sets = masks
                .into_iter()
                .map(|m| ElementSet::from_elements((0..n).filter(|e| m >> e & 1 == 1)))
                .collect();
            let s = SetSystem::new(ElementSet::full(n), sets).ok()?;
            let m = transversal_from_system(&s)?;
            Some((m, s))
        })
}
