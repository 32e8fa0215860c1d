//! The tropical semifield `(Q ∪ {∞}, min, +)`, vectors and matrices over it,
//! and tropical minors (min-weight perfect matchings).

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::set::{check_ground, ElementSet};

/// An element of the tropical semifield: a finite value or `Inf`.
///
/// `Inf` sorts above every finite value, so `min` on `Trop` is tropical
/// addition.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Trop<T> {
    Fin(T),
    Inf,
}

impl<T: Scalar> Trop<T> {
    pub fn zero() -> Self {
        Trop::Fin(T::zero())
    }

    pub fn int(v: i64) -> Self {
        Trop::Fin(T::from_i64(v))
    }

    pub fn is_inf(&self) -> bool {
        matches!(self, Trop::Inf)
    }

    pub fn is_finite(&self) -> bool {
        !self.is_inf()
    }

    pub fn finite(&self) -> Option<&T> {
        match self {
            Trop::Fin(v) => Some(v),
            Trop::Inf => None,
        }
    }

    /// Tropical sum: `min(a, b)`.
    pub fn oplus(&self, other: &Self) -> Self {
        if self <= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    /// Tropical product: `a + b`, absorbing at `Inf`.
    pub fn otimes(&self, other: &Self) -> Self {
        match (self, other) {
            (Trop::Fin(a), Trop::Fin(b)) => Trop::Fin(a.clone() + b.clone()),
            _ => Trop::Inf,
        }
    }

    /// Adds a finite constant.
    pub fn shift(&self, c: &T) -> Self {
        match self {
            Trop::Fin(a) => Trop::Fin(a.clone() + c.clone()),
            Trop::Inf => Trop::Inf,
        }
    }

    /// `self - other` when both are finite.
    pub fn finite_diff(&self, other: &Self) -> Option<T> {
        match (self, other) {
            (Trop::Fin(a), Trop::Fin(b)) => Some(a.clone() - b.clone()),
            _ => None,
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("inf") || t == "∞" {
            return Ok(Trop::Inf);
        }
        T::parse_text(t)
            .map(Trop::Fin)
            .ok_or_else(|| Error::Parse(format!("invalid tropical scalar {s:?}")))
    }

    pub fn to_text(&self) -> String {
        match self {
            Trop::Fin(v) => v.to_text(),
            Trop::Inf => "inf".to_string(),
        }
    }
}

impl<T: Scalar> fmt::Debug for Trop<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl<T: Scalar> fmt::Display for Trop<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// `+` is tropical addition (min).
impl<T: Scalar> Add for Trop<T> {
    type Output = Trop<T>;
    fn add(self, rhs: Self) -> Self {
        std::cmp::min(self, rhs)
    }
}

/// `*` is tropical multiplication (ordinary +).
impl<T: Scalar> Mul for Trop<T> {
    type Output = Trop<T>;
    fn mul(self, rhs: Self) -> Self {
        self.otimes(&rhs)
    }
}

impl<T: Scalar> From<T> for Trop<T> {
    fn from(v: T) -> Self {
        Trop::Fin(v)
    }
}

pub fn trop_add<T: Scalar>(a: &Trop<T>, b: &Trop<T>) -> Trop<T> {
    a.oplus(b)
}

pub fn trop_mul<T: Scalar>(a: &Trop<T>, b: &Trop<T>) -> Trop<T> {
    a.otimes(b)
}

/// True iff the minimum of `values` is attained at least twice, or every
/// value is `Inf`.
pub fn min_attained_twice<T: Scalar>(values: &[Trop<T>]) -> bool {
    let mut best: Option<&Trop<T>> = None;
    let mut count = 0;
    for v in values {
        match best.map(|b| v.cmp(b)) {
            None | Some(Ordering::Less) => {
                best = Some(v);
                count = 1;
            }
            Some(Ordering::Equal) => count += 1,
            Some(Ordering::Greater) => {}
        }
    }
    match best {
        None | Some(Trop::Inf) => true,
        Some(_) => count >= 2,
    }
}

/// A vector in `T^n` with its support cached.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TropVector<T> {
    entries: Vec<Trop<T>>,
    support: ElementSet,
}

impl<T: Scalar> TropVector<T> {
    pub fn new(entries: Vec<Trop<T>>) -> Self {
        let support = ElementSet::from_elements(
            entries
                .iter()
                .enumerate()
                .filter(|(_, v)| v.is_finite())
                .map(|(j, _)| j),
        );
        TropVector { entries, support }
    }

    pub fn constant(n: usize, v: Trop<T>) -> Self {
        Self::new(vec![v; n])
    }

    /// The vector `c * e_j`: `c` at `j`, `0` elsewhere.
    pub fn unit_bump(n: usize, j: usize, c: Trop<T>) -> Self {
        let mut entries = vec![Trop::zero(); n];
        entries[j] = c;
        Self::new(entries)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn support(&self) -> ElementSet {
        self.support
    }

    pub fn entries(&self) -> &[Trop<T>] {
        &self.entries
    }

    pub fn get(&self, j: usize) -> &Trop<T> {
        &self.entries[j]
    }

    pub fn with_entry(&self, j: usize, v: Trop<T>) -> Self {
        let mut entries = self.entries.clone();
        entries[j] = v;
        Self::new(entries)
    }

    /// Coordinatewise tropical sum.
    pub fn oplus(&self, other: &Self) -> Self {
        Self::new(
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.oplus(b))
                .collect(),
        )
    }

    /// Adds `c` to every finite coordinate.
    pub fn shift(&self, c: &T) -> Self {
        Self::new(self.entries.iter().map(|v| v.shift(c)).collect())
    }

    /// Keeps coordinates in `keep`, sets the rest to `Inf`.
    pub fn restrict(&self, keep: ElementSet) -> Self {
        Self::new(
            self.entries
                .iter()
                .enumerate()
                .map(|(j, v)| {
                    if keep.contains(j) {
                        v.clone()
                    } else {
                        Trop::Inf
                    }
                })
                .collect(),
        )
    }

    pub fn into_entries(self) -> Vec<Trop<T>> {
        self.entries
    }
}

impl<T: Scalar> fmt::Debug for TropVector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.entries.iter()).finish()
    }
}

/// A `d × n` tropical matrix. Row `i` is the vector `A_i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TropMatrix<T> {
    rows: Vec<TropVector<T>>,
    ncols: usize,
}

impl<T: Scalar> TropMatrix<T> {
    pub fn new(rows: Vec<Vec<Trop<T>>>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::Shape("matrix needs at least one row".into()));
        }
        let ncols = rows[0].len();
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::Shape("rows have different lengths".into()));
        }
        check_ground(ncols)?;
        Ok(TropMatrix {
            rows: rows.into_iter().map(TropVector::new).collect(),
            ncols,
        })
    }

    pub fn from_vectors(rows: Vec<TropVector<T>>) -> Result<Self> {
        Self::new(rows.into_iter().map(TropVector::into_entries).collect())
    }

    /// Convenience constructor from integers, `None` meaning `Inf`.
    pub fn from_ints(rows: &[&[Option<i64>]]) -> Result<Self> {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|v| v.map_or(Trop::Inf, Trop::int)).collect())
                .collect(),
        )
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[TropVector<T>] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &TropVector<T> {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> &Trop<T> {
        self.rows[i].get(j)
    }

    pub fn with_entry(&self, i: usize, j: usize, v: Trop<T>) -> Self {
        let mut rows = self.rows.clone();
        rows[i] = rows[i].with_entry(j, v);
        TropMatrix {
            rows,
            ncols: self.ncols,
        }
    }

    pub fn with_row(&self, i: usize, row: TropVector<T>) -> Self {
        let mut rows = self.rows.clone();
        rows[i] = row;
        TropMatrix {
            rows,
            ncols: self.ncols,
        }
    }

    pub fn column(&self, j: usize) -> Vec<Trop<T>> {
        self.rows.iter().map(|r| r.get(j).clone()).collect()
    }

    /// `(A | x)`: appends `x` as a new last column.
    pub fn append_column(&self, x: &[Trop<T>]) -> Result<Self> {
        if x.len() != self.nrows() {
            return Err(Error::Shape(format!(
                "column of length {} for a matrix with {} rows",
                x.len(),
                self.nrows()
            )));
        }
        Self::new(
            self.rows
                .iter()
                .zip(x)
                .map(|(r, v)| {
                    let mut e = r.entries().to_vec();
                    e.push(v.clone());
                    e
                })
                .collect(),
        )
    }

    /// Drops the last column.
    pub fn drop_last_column(&self) -> Result<Self> {
        if self.ncols == 0 {
            return Err(Error::Shape("no column to drop".into()));
        }
        Self::new(
            self.rows
                .iter()
                .map(|r| r.entries()[..self.ncols - 1].to_vec())
                .collect(),
        )
    }

    pub fn all_rows(&self) -> Vec<usize> {
        (0..self.nrows()).collect()
    }

    /// The multiset of row supports, in row order.
    pub fn supports(&self) -> Vec<ElementSet> {
        self.rows.iter().map(TropVector::support).collect()
    }

    pub fn finite_entry_count(&self) -> usize {
        self.rows.iter().map(|r| r.support().len()).sum()
    }
}

impl<T: Scalar> fmt::Debug for TropMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows.iter()).finish()
    }
}

/// The tropical minor of `a` on `rows × cols`: the minimum over bijections
/// `cols → rows` of the summed entries, `Inf` if no bijection is finite.
///
/// Computed by dynamic programming over subsets of rows, which is exact and
/// agrees with permutation enumeration.
pub fn tropical_minor<T: Scalar>(
    a: &TropMatrix<T>,
    rows: &[usize],
    cols: ElementSet,
) -> Result<Trop<T>> {
    if rows.len() != cols.len() {
        return Err(Error::NonSquareMinor {
            rows: rows.len(),
            cols: cols.len(),
        });
    }
    Ok(minor_dp(a, rows, cols))
}

pub(crate) fn minor_dp<T: Scalar>(a: &TropMatrix<T>, rows: &[usize], cols: ElementSet) -> Trop<T> {
    let k = rows.len();
    if k == 0 {
        return Trop::zero();
    }
    let cols: Vec<usize> = cols.iter().collect();
    // best[mask]: min weight matching columns cols[..popcount(mask)] onto rows in mask.
    let mut best: Vec<Option<T>> = vec![None; 1 << k];
    best[0] = Some(T::zero());
    for mask in 0usize..(1 << k) {
        let Some(base) = best[mask].clone() else {
            continue;
        };
        let t = mask.count_ones() as usize;
        if t == k {
            continue;
        }
        let col = cols[t];
        for (r, &row) in rows.iter().enumerate() {
            if mask >> r & 1 == 1 {
                continue;
            }
            if let Trop::Fin(w) = a.get(row, col) {
                let cand = base.clone() + w.clone();
                let slot = &mut best[mask | 1 << r];
                if slot.as_ref().is_none_or(|cur| cand < *cur) {
                    *slot = Some(cand);
                }
            }
        }
    }
    best[(1 << k) - 1].clone().map_or(Trop::Inf, Trop::Fin)
}

/// Reference implementation: enumerate all `k!` bijections.
pub fn tropical_minor_enumerate<T: Scalar>(
    a: &TropMatrix<T>,
    rows: &[usize],
    cols: ElementSet,
) -> Result<Trop<T>> {
    if rows.len() != cols.len() {
        return Err(Error::NonSquareMinor {
            rows: rows.len(),
            cols: cols.len(),
        });
    }
    let cols: Vec<usize> = cols.iter().collect();
    let mut perm: Vec<usize> = rows.to_vec();
    let mut best = Trop::Inf;
    permute(&mut perm, 0, &mut |p| {
        let w = p
            .iter()
            .zip(&cols)
            .fold(Trop::zero(), |acc, (&r, &c)| acc.otimes(a.get(r, c)));
        best = best.oplus(&w);
    });
    Ok(best)
}

fn permute<F: FnMut(&[usize])>(v: &mut Vec<usize>, k: usize, f: &mut F) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute(v, k + 1, f);
        v.swap(k, i);
    }
}

/// Every maximal minor `B ↦ minor(A, all rows, B)` over `d`-subsets of the columns.
pub fn all_maximal_minors<T: Scalar>(a: &TropMatrix<T>) -> Result<BTreeMap<ElementSet, Trop<T>>> {
    let d = a.nrows();
    let n = a.ncols();
    if d > n {
        return Err(Error::RankExceedsGround { rank: d, n });
    }
    let rows = a.all_rows();
    Ok(ElementSet::full(n)
        .k_subsets(d)
        .into_iter()
        .map(|b| {
            let v = minor_dp(a, &rows, b);
            (b, v)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    type T = Trop<Rational>;

    fn q(s: &str) -> T {
        T::parse(s).unwrap()
    }

    #[test]
    fn scalar_ops() {
        assert_eq!(trop_add(&q("3"), &q("5")), q("3"));
        assert_eq!(trop_add(&q("inf"), &q("7/2")), q("7/2"));
        assert_eq!(trop_add(&q("inf"), &q("inf")), q("inf"));
        assert_eq!(trop_mul(&q("3"), &q("5")), q("8"));
        assert_eq!(trop_mul(&q("inf"), &q("0")), q("inf"));
        assert_eq!(trop_mul(&q("-1/2"), &q("1/2")), q("0"));
        assert_eq!(q("2") + q("1"), q("1"));
        assert_eq!(q("2") * q("1"), q("3"));
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(q("INF").to_text(), "inf");
        assert_eq!(q("0.5").to_text(), "1/2");
        assert!(T::parse("in f").is_err());
    }

    #[test]
    fn attained_twice() {
        assert!(min_attained_twice(&[q("0"), q("0"), q("1")]));
        assert!(!min_attained_twice(&[q("1"), q("1"), q("0")]));
        assert!(min_attained_twice::<Rational>(&[q("inf"), q("inf")]));
        assert!(!min_attained_twice(&[q("inf"), q("3")]));
    }

    fn m(rows: &[&[Option<i64>]]) -> TropMatrix<Rational> {
        TropMatrix::from_ints(rows).unwrap()
    }

    #[test]
    fn minor_examples() {
        let zero = m(&[&[Some(0), Some(0)], &[Some(0), Some(0)]]);
        assert_eq!(
            tropical_minor(&zero, &[0, 1], ElementSet::full(2)).unwrap(),
            q("0")
        );

        let u = m(&[
            &[Some(1), Some(0), Some(0), None],
            &[Some(0), Some(0), Some(0), Some(0)],
        ]);
        let cols = ElementSet::from_elements([0, 3]);
        assert_eq!(tropical_minor(&u, &[0, 1], cols).unwrap(), q("1"));

        let dead = m(&[&[None, Some(0)], &[None, Some(0)]]);
        assert_eq!(
            tropical_minor(&dead, &[0, 1], ElementSet::full(2)).unwrap(),
            q("inf")
        );

        assert!(matches!(
            tropical_minor(&u, &[0], cols),
            Err(Error::NonSquareMinor { rows: 1, cols: 2 })
        ));
    }

    #[test]
    fn maximal_minor_examples() {
        let z = m(&[&[Some(0); 3], &[Some(0); 3]]);
        assert!(all_maximal_minors(&z)
            .unwrap()
            .values()
            .all(|v| *v == q("0")));

        let a = m(&[&[Some(0), Some(0), None], &[Some(0), None, Some(0)]]);
        let mm = all_maximal_minors(&a).unwrap();
        assert_eq!(mm.len(), 3);
        assert!(mm.values().all(|v| *v == q("0")));

        let u = m(&[
            &[Some(1), Some(0), Some(0), None],
            &[Some(0), Some(0), Some(0), Some(0)],
        ]);
        for (b, v) in all_maximal_minors(&u).unwrap() {
            let expect = if b == ElementSet::from_elements([0, 3]) {
                q("1")
            } else {
                q("0")
            };
            assert_eq!(v, expect, "{b}");
        }

        let tall = m(&[&[Some(0)], &[Some(0)]]);
        assert!(matches!(
            all_maximal_minors(&tall),
            Err(Error::RankExceedsGround { .. })
        ));
    }

    #[test]
    fn float_scalars_work_for_plain_minors() {
        use ordered_float::OrderedFloat;
        let a: TropMatrix<OrderedFloat<f64>> = TropMatrix::new(vec![
            vec![Trop::Fin(OrderedFloat(1.5)), Trop::Fin(OrderedFloat(0.0))],
            vec![Trop::Fin(OrderedFloat(0.0)), Trop::Inf],
        ])
        .unwrap();
        assert_eq!(
            tropical_minor(&a, &[0, 1], ElementSet::full(2)).unwrap(),
            Trop::Fin(OrderedFloat(0.0))
        );
    }

    #[test]
    fn append_and_drop_column() {
        let a = m(&[&[Some(0), Some(0), None], &[Some(0), None, Some(0)]]);
        let ax = a.append_column(&[q("1"), q("inf")]).unwrap();
        assert_eq!(ax.ncols(), 4);
        assert_eq!(ax.get(0, 3), &q("1"));
        assert_eq!(ax.drop_last_column().unwrap(), a);
        assert!(a.append_column(&[q("1")]).is_err());
    }
}
