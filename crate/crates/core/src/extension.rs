//! Single-element transversal extensions `Stiefel(A|x)`.
//!
//! The new element `*` is always the last column, index `n`.

use std::collections::BTreeMap;

use rand::Rng;

use crate::corpus::{instance_rng, random_column};
use crate::error::{Error, Result};
use crate::presentation::{decomposition, is_minimal, minimize, non_hyperplane_rows, Presentation};
use crate::scalar::Scalar;
use crate::set::ElementSet;
use crate::trop::{all_maximal_minors, minor_dp, Trop, TropMatrix, TropVector};
use crate::valuated::ValuatedMatroid;
use crate::Rational;

/// A column `x ∈ 𝕋^d` appended to a presentation as the element `*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionColumn<T: Scalar> {
    pub x: TropVector<T>,
}

impl<T: Scalar> ExtensionColumn<T> {
    pub fn new(x: TropVector<T>) -> Self {
        ExtensionColumn { x }
    }

    pub fn from_trops(x: Vec<Trop<T>>) -> Self {
        ExtensionColumn {
            x: TropVector::new(x),
        }
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn get(&self, i: usize) -> &Trop<T> {
        self.x.get(i)
    }

    pub fn min(&self, other: &Self) -> Self {
        ExtensionColumn {
            x: self.x.oplus(&other.x),
        }
    }
}

/// A representative of an extension whose `*`-free values are those of a
/// fixed reference representative `μ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizedExtension<T: Scalar> {
    reference: ValuatedMatroid<T>,
    extension: ValuatedMatroid<T>,
}

impl<T: Scalar> NormalizedExtension<T> {
    /// Checks that `extension` lives on `E ∪ {*}` and restricts to `reference`.
    pub fn new(reference: ValuatedMatroid<T>, extension: ValuatedMatroid<T>) -> Result<Self> {
        let n = reference.ground().len();
        if reference.ground() != ElementSet::full(n)
            || extension.ground() != ElementSet::full(n + 1)
            || extension.rank() != reference.rank()
        {
            return Err(Error::Shape(
                "extension must live on E ∪ {*} with the same rank".into(),
            ));
        }
        let agrees = reference
            .values()
            .iter()
            .all(|(b, v)| extension.value(*b) == *v);
        if !agrees {
            return Err(Error::ReferenceMismatch);
        }
        Ok(NormalizedExtension {
            reference,
            extension,
        })
    }

    pub fn reference(&self) -> &ValuatedMatroid<T> {
        &self.reference
    }

    pub fn valuated(&self) -> &ValuatedMatroid<T> {
        &self.extension
    }

    pub fn star(&self) -> usize {
        self.reference.ground().len()
    }

    pub fn value(&self, b: ElementSet) -> Trop<T> {
        self.extension.value(b)
    }

    pub fn values(&self) -> &BTreeMap<ElementSet, Trop<T>> {
        self.extension.values()
    }
}

/// `(A|x)`.
pub fn augmented<T: Scalar>(a: &TropMatrix<T>, x: &ExtensionColumn<T>) -> Result<TropMatrix<T>> {
    if x.len() != a.nrows() {
        return Err(Error::Shape(format!(
            "column has {} entries, matrix has {} rows",
            x.len(),
            a.nrows()
        )));
    }
    a.append_column(x.x.entries())
}

/// `Stiefel(A|x)`, with the `*`-containing values computed as
/// `min_j (A_{[d]∖j, J} + x_j)` and cross-checked against direct minors.
pub fn extend<T: Scalar>(
    p: &Presentation<T>,
    x: &ExtensionColumn<T>,
) -> Result<NormalizedExtension<T>> {
    let a = p.matrix();
    let ax = augmented(a, x)?;
    let d = a.nrows();
    let n = a.ncols();
    let direct = all_maximal_minors(&ax)?;
    let mut values = BTreeMap::new();
    for (b, v) in p.mu().values() {
        values.insert(*b, v.clone());
    }
    let rows: Vec<Vec<usize>> = (0..d)
        .map(|j| (0..d).filter(|&k| k != j).collect())
        .collect();
    for jset in ElementSet::full(n).k_subsets(d - 1) {
        let v = (0..d)
            .map(|j| minor_dp(a, &rows[j], jset).otimes(x.get(j)))
            .min()
            .expect("d ≥ 1");
        values.insert(jset.insert(n), v);
    }
    if values != direct {
        return Err(Error::Violation(
            "expansion along * disagrees with direct minors".into(),
        ));
    }
    if values.values().all(Trop::is_inf) {
        return Err(Error::ConstantInfinity);
    }
    let extension = ValuatedMatroid::new(ElementSet::full(n + 1), d, values)?;
    NormalizedExtension::new(p.mu().clone(), extension)
}

/// A `d`-set `B ∋ *` on which `Stiefel(A|x)_B = a + x_row` for every `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateBasis<T: Scalar> {
    pub row: usize,
    pub basis: ElementSet,
    pub a: Trop<T>,
}

impl<T: Scalar> CertificateBasis<T> {
    /// Reads `x_row` back from an extension.
    pub fn recover(&self, ext: &NormalizedExtension<T>) -> Trop<T> {
        let Trop::Fin(a) = &self.a else {
            return Trop::Inf;
        };
        match ext.value(self.basis) {
            Trop::Fin(v) => Trop::Fin(v - a.clone()),
            Trop::Inf => Trop::Inf,
        }
    }
}

/// For minimal `A`, one basis per row: `B_i = J_i ∪ H_i ∪ {*}` where
/// `H_i = E(M_i) ∖ supp(A_i)`, `F_i = E ∖ E(M_i)` and `J_i` is the
/// lexicographically least basis of `μ̲|F_i`.
pub fn certificate_bases<T: Scalar>(p: &Presentation<T>) -> Result<Vec<CertificateBasis<T>>> {
    if !is_minimal(p)? {
        return Err(Error::Precondition(
            "certificate bases need a minimal presentation".into(),
        ));
    }
    let dec = decomposition(p)?;
    let a = p.matrix();
    let d = p.rank();
    let n = p.ncols();
    let mut out = Vec::with_capacity(d);
    for i in 0..d {
        let m = dec.matroid_of_row(i);
        let h = m.ground().difference(a.row(i).support());
        let f = p.mu().ground().difference(m.ground());
        let j = p.mu().underlying().lex_least_basis_of(f);
        let b = j.union(h);
        if b.len() != d - 1 || !j.is_disjoint(h) {
            return Err(Error::Violation(format!(
                "row {}: certificate basis {b} has the wrong size",
                i + 1
            )));
        }
        let others: Vec<usize> = (0..d).filter(|&k| k != i).collect();
        let value = minor_dp(a, &others, b);
        if value.is_inf() {
            return Err(Error::Violation(format!(
                "row {}: {b} has no matching avoiding the row",
                i + 1
            )));
        }
        for k in (0..d).filter(|&k| k != i) {
            let rest: Vec<usize> = (0..d).filter(|&r| r != k).collect();
            if minor_dp(a, &rest, b).is_finite() {
                return Err(Error::Violation(format!(
                    "row {}: {b} ∪ {{*}} can match * to row {}",
                    i + 1,
                    k + 1
                )));
            }
        }
        out.push(CertificateBasis {
            row: i,
            basis: b.insert(n),
            a: value,
        });
    }
    Ok(out)
}

/// Reads `x` back from `extend(A, x)` through certificate bases.
pub fn recover_column<T: Scalar>(
    certs: &[CertificateBasis<T>],
    ext: &NormalizedExtension<T>,
) -> ExtensionColumn<T> {
    let mut x = vec![Trop::Inf; certs.len()];
    for c in certs {
        x[c.row] = c.recover(ext);
    }
    ExtensionColumn::from_trops(x)
}

/// Two columns with equal extensions, obtained by raising one coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Collision<T: Scalar> {
    pub row: usize,
    pub threshold: T,
    pub x: ExtensionColumn<T>,
    pub y: ExtensionColumn<T>,
}

/// For non-minimal `A`: picks a row `i` whose complement in `E(M_i)` is not
/// a hyperplane; every `*`-value of `extend(A, t·e_i)` is `min(a + t, b)`,
/// so all of them are constant beyond `t* = max (b − a)`.
pub fn nonminimal_collision<T: Scalar>(p: &Presentation<T>) -> Result<Collision<T>> {
    let dec = decomposition(p)?;
    let rows = non_hyperplane_rows(p, &dec);
    let Some(&i) = rows.first() else {
        return Err(Error::Precondition("presentation is minimal".into()));
    };
    let a = p.matrix();
    let d = p.rank();
    let without = |k: usize| -> Vec<usize> { (0..d).filter(|&r| r != k).collect() };
    let mut threshold: Option<T> = None;
    for jset in ElementSet::full(p.ncols()).k_subsets(d - 1) {
        let slope = minor_dp(a, &without(i), jset);
        let flat = (0..d)
            .filter(|&k| k != i)
            .map(|k| minor_dp(a, &without(k), jset))
            .min()
            .unwrap_or(Trop::Inf);
        match (slope, flat) {
            (Trop::Fin(s), Trop::Fin(f)) => {
                let gap = f - s;
                if threshold.as_ref().is_none_or(|t| gap > *t) {
                    threshold = Some(gap);
                }
            }
            (Trop::Fin(_), Trop::Inf) => {
                return Err(Error::Violation(format!(
                    "row {}: value on {} ∪ {{*}} grows without bound",
                    i + 1,
                    jset
                )));
            }
            _ => {}
        }
    }
    let threshold = threshold.unwrap_or_else(T::zero);
    let column = |t: T| {
        let mut x = vec![Trop::zero(); d];
        x[i] = Trop::Fin(t);
        ExtensionColumn::from_trops(x)
    };
    let x = column(threshold.clone() + T::one());
    let y = column(threshold.clone() + T::one() + T::one());
    if extend(p, &x)? != extend(p, &y)? {
        return Err(Error::Violation(format!(
            "row {}: extensions differ beyond the threshold",
            i + 1
        )));
    }
    Ok(Collision {
        row: i,
        threshold,
        x,
        y,
    })
}

/// Outcome of the injectivity dichotomy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InjectivityVerdict<T: Scalar> {
    Injective {
        certificates: Vec<CertificateBasis<T>>,
        trials: usize,
    },
    Collision(Collision<T>),
}

impl<T: Scalar> InjectivityVerdict<T> {
    pub fn label(&self) -> &'static str {
        match self {
            InjectivityVerdict::Injective { .. } => "INJECTIVE",
            InjectivityVerdict::Collision(_) => "COLLISION",
        }
    }
}

/// Minimal `A`: certificate bases plus `trials` sampled pairs `x ≠ y`
/// whose extensions must differ and whose columns must be recovered.
/// Otherwise: a verified collision.
pub fn extensions_injective(
    p: &Presentation<Rational>,
    trials: usize,
    seed: u64,
    grid: &[Rational],
) -> Result<InjectivityVerdict<Rational>> {
    if !is_minimal(p)? {
        return Ok(InjectivityVerdict::Collision(nonminimal_collision(p)?));
    }
    let certificates = certificate_bases(p)?;
    let mut rng = instance_rng(seed, 0);
    let d = p.rank();
    let mut done = 0;
    while done < trials {
        let x = ExtensionColumn::new(random_column(&mut rng, d, grid));
        let y = ExtensionColumn::new(random_column(&mut rng, d, grid));
        if x == y || x.x.support().is_empty() && y.x.support().is_empty() {
            continue;
        }
        let ex = extend(p, &x)?;
        let ey = extend(p, &y)?;
        if ex == ey {
            return Err(Error::Violation(format!(
                "distinct columns {:?} and {:?} give equal extensions",
                x.x, y.x
            )));
        }
        if recover_column(&certificates, &ex) != x || recover_column(&certificates, &ey) != y {
            return Err(Error::Violation(
                "certificate readout does not recover the column".into(),
            ));
        }
        done += 1;
    }
    Ok(InjectivityVerdict::Injective {
        certificates,
        trials,
    })
}

/// Samples a pair of distinct columns; exposed for suites that need the
/// same stream as [`extensions_injective`].
pub fn sample_pair<R: Rng>(
    rng: &mut R,
    d: usize,
    grid: &[Rational],
) -> (ExtensionColumn<Rational>, ExtensionColumn<Rational>) {
    loop {
        let x = ExtensionColumn::new(random_column(rng, d, grid));
        let y = ExtensionColumn::new(random_column(rng, d, grid));
        if x != y {
            return (x, y);
        }
    }
}

/// Rewrites a presentation `B` of `μ′` on `E ∪ {*}` as `(A|x)` with `A` a
/// minimal presentation of `μ′ ∖ *`.
pub fn present_extension_minimally<T: Scalar>(
    mu_prime: &ValuatedMatroid<T>,
    b: &Presentation<T>,
) -> Result<(Presentation<T>, ExtensionColumn<T>)> {
    let n1 = mu_prime.ground().len();
    if n1 < 2 || mu_prime.ground() != ElementSet::full(n1) {
        return Err(Error::Shape(
            "extension needs a ground set E ∪ {*} with E nonempty".into(),
        ));
    }
    let star = n1 - 1;
    if !b.mu().representatives_equal(mu_prime) {
        return Err(Error::Precondition("matrix does not present μ′".into()));
    }
    if mu_prime.underlying().coloops().contains(star) {
        return Err(Error::ColoopExtension);
    }
    let min = minimize(b, Some(star))?;
    let a = min.matrix().drop_last_column()?;
    let x = ExtensionColumn::from_trops(min.matrix().column(star));
    let deleted = mu_prime.delete(ElementSet::singleton(star))?;
    let a = Presentation::of(a, deleted)?;
    if !is_minimal(&a)? {
        return Err(Error::Violation("A is not minimal for μ′ ∖ *".into()));
    }
    let back = extend(&a, &x)?;
    if !back.valuated().representatives_equal(mu_prime) {
        return Err(Error::Violation("Stiefel(A|x) differs from μ′".into()));
    }
    Ok((a, x))
}

/// `extend(A, min(x, y))`, verified to be the pointwise minimum of the two
/// extensions.
pub fn meet<T: Scalar>(
    p: &Presentation<T>,
    x: &ExtensionColumn<T>,
    y: &ExtensionColumn<T>,
) -> Result<NormalizedExtension<T>> {
    let out = extend(p, &x.min(y))?;
    let pointwise = pointwise_min(&extend(p, x)?, &extend(p, y)?)?;
    if *out.values() != pointwise {
        return Err(Error::Violation(
            "extension of min(x, y) is not the pointwise minimum".into(),
        ));
    }
    Ok(out)
}

/// Coordinatewise minimum of two extensions of the same reference.
pub fn pointwise_min<T: Scalar>(
    a: &NormalizedExtension<T>,
    b: &NormalizedExtension<T>,
) -> Result<BTreeMap<ElementSet, Trop<T>>> {
    if !a.reference.representatives_equal(&b.reference) {
        return Err(Error::ReferenceMismatch);
    }
    Ok(a.values()
        .iter()
        .map(|(s, v)| (*s, v.clone().min(b.value(*s))))
        .collect())
}

/// `μ′ ≤ μ″` coordinatewise.
pub fn poset_leq<T: Scalar>(
    a: &NormalizedExtension<T>,
    b: &NormalizedExtension<T>,
) -> Result<bool> {
    if !a.reference.representatives_equal(&b.reference) {
        return Err(Error::ReferenceMismatch);
    }
    Ok(a.values().iter().all(|(s, v)| *v <= b.value(*s)))
}
