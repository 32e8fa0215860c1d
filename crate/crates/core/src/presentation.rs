//! Matrix presentations of transversal valuated matroids: the tropical
//! Stiefel map, the distinguished apices `dapx(μ)`, the decomposition of a
//! presentation against them, and minimality.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::matroid::{
    extends_to_presentation, maximal_presentation, maximal_presentation_of, minimal_refinement,
    Matroid, SetSystem,
};
use crate::scalar::{is_positive, Scalar};
use crate::set::ElementSet;
use crate::trop::{all_maximal_minors, minor_dp, Trop, TropMatrix, TropVector};
use crate::valuated::ValuatedMatroid;

/// The valuated matroid of tropical maximal minors of `a`.
pub fn stiefel<T: Scalar>(a: &TropMatrix<T>) -> Result<ValuatedMatroid<T>> {
    let minors = all_maximal_minors(a)?;
    if minors.values().all(Trop::is_inf) {
        return Err(Error::ConstantInfinity);
    }
    ValuatedMatroid::new(ElementSet::full(a.ncols()), a.nrows(), minors)
        .map_err(|e| Error::Violation(format!("tropical Stiefel image failed validation: {e}")))
}

/// `stiefel(a) == mu` as representative functions.
pub fn is_presentation<T: Scalar>(a: &TropMatrix<T>, mu: &ValuatedMatroid<T>) -> bool {
    if a.ncols() != mu.ground().len()
        || a.nrows() != mu.rank()
        || mu.ground() != ElementSet::full(a.ncols())
    {
        return false;
    }
    let rows = a.all_rows();
    mu.values()
        .iter()
        .all(|(b, v)| minor_dp(a, &rows, *b) == *v)
}

/// A matrix together with the exact representative it presents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation<T: Scalar> {
    matrix: TropMatrix<T>,
    mu: ValuatedMatroid<T>,
}

impl<T: Scalar> Presentation<T> {
    pub fn new(matrix: TropMatrix<T>) -> Result<Self> {
        if let Some(i) = matrix.rows().iter().position(|r| r.support().is_empty()) {
            return Err(Error::Precondition(format!(
                "row {} is identically inf",
                i + 1
            )));
        }
        let mu = stiefel(&matrix)?;
        Ok(Presentation { matrix, mu })
    }

    /// Checks that `matrix` presents exactly `mu`.
    pub fn of(matrix: TropMatrix<T>, mu: ValuatedMatroid<T>) -> Result<Self> {
        let p = Self::new(matrix)?;
        if !p.mu.representatives_equal(&mu) {
            return Err(Error::Precondition(
                "matrix does not present the given representative".into(),
            ));
        }
        Ok(p)
    }

    pub fn matrix(&self) -> &TropMatrix<T> {
        &self.matrix
    }

    pub fn mu(&self) -> &ValuatedMatroid<T> {
        &self.mu
    }

    pub fn rank(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn ncols(&self) -> usize {
        self.matrix.ncols()
    }

    pub fn into_matrix(self) -> TropMatrix<T> {
        self.matrix
    }
}

/// The least value of `A[i, j]` that leaves `stiefel(A)` unchanged.
///
/// For each `d`-set `B ∋ j`, let `w_B` be the minor of `A` on rows `[d] ∖ i`
/// and columns `B ∖ j`. The bound is `max (μ_B − w_B)` over `B` with finite
/// `w_B`, and `Inf` if there is no such `B` or some such `B` has `μ_B = Inf`.
pub fn entry_lower_bound<T: Scalar>(p: &Presentation<T>, i: usize, j: usize) -> Trop<T> {
    lower_bound(&p.matrix, &p.mu, i, j)
}

fn lower_bound<T: Scalar>(
    a: &TropMatrix<T>,
    mu: &ValuatedMatroid<T>,
    i: usize,
    j: usize,
) -> Trop<T> {
    let others: Vec<usize> = (0..a.nrows()).filter(|&r| r != i).collect();
    let rest = ElementSet::full(a.ncols()).remove(j);
    let mut best: Option<T> = None;
    for c in rest.k_subsets(a.nrows() - 1) {
        let Trop::Fin(w) = minor_dp(a, &others, c) else {
            continue;
        };
        match mu.value(c.insert(j)) {
            Trop::Inf => return Trop::Inf,
            Trop::Fin(m) => {
                let cand = m - w;
                if best.as_ref().is_none_or(|b| cand > *b) {
                    best = Some(cand);
                }
            }
        }
    }
    best.map_or(Trop::Inf, Trop::Fin)
}

/// One row of a presentation written against a distinguished apex:
/// `row = apex + λ·1 + Σ_{j∈J} α_j e_j` with every `α_j > 0` (possibly `Inf`).
///
/// When `M` is disconnected (it has coloops) the apex is only determined up
/// to a shift on each component, and `shifts` records one `λ_C` per
/// component meeting the row's support.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApexRow<T: Scalar> {
    /// Index of the apex (a row of [`ApexDecomposition::apices`]).
    pub apex: usize,
    /// Index into [`ApexDecomposition::classes`].
    pub class: usize,
    /// `F(M)`: the cyclic flat where the apex is infinite.
    pub flat: ElementSet,
    /// The least of the component shifts.
    pub lambda: T,
    pub shifts: Vec<(ElementSet, T)>,
    /// `J` with its coefficients.
    pub bumps: Vec<(usize, Trop<T>)>,
}

impl<T: Scalar> ApexRow<T> {
    pub fn bump_set(&self) -> ElementSet {
        ElementSet::from_elements(self.bumps.iter().map(|(j, _)| *j))
    }
}

/// A distinguished matroid `M` with its multiplicity `t(M)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistinguishedClass {
    pub matroid: Matroid,
    pub multiplicity: usize,
}

/// A presentation split along the distinguished matroids of `μ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApexDecomposition<T: Scalar> {
    /// `dapx(μ)`, one apex per row, with a fixed choice of shifts.
    pub apices: TropMatrix<T>,
    /// Distinguished class of each apex.
    pub apex_class: Vec<usize>,
    pub classes: Vec<DistinguishedClass>,
    /// One entry per row of the decomposed presentation.
    pub rows: Vec<ApexRow<T>>,
}

impl<T: Scalar> ApexDecomposition<T> {
    pub fn matroid_of_row(&self, i: usize) -> &Matroid {
        &self.classes[self.rows[i].class].matroid
    }

    pub fn total_multiplicity(&self) -> usize {
        self.classes.iter().map(|c| c.multiplicity).sum()
    }
}

const MAX_SWEEPS: usize = 64;

/// Computes `dapx(μ)` from any presentation by lowering each entry to its
/// [`entry_lower_bound`] until nothing changes, then verifies the result:
///
/// 1. it presents the same representative;
/// 2. its support is the maximal presentation of the underlying matroid;
/// 3. every row lies in the tropical linear space;
/// 4. the initial matroids `M_i` of `μ / F_i` at the rows occur with
///    multiplicity `t(M_i)`, totalling `d`.
pub fn compute_dapx<T: Scalar>(p: &Presentation<T>) -> Result<ApexDecomposition<T>> {
    let mu = &p.mu;
    let d = p.rank();
    let n = p.ncols();
    let mut q = p.matrix.clone();
    lower_to_fixpoint(&mut q, mu)?;
    // Entries left at Inf with an Inf bound do not enter any minor. Where the
    // maximal support needs them (coloops of the complement), fill one at a
    // time with the row minimum and lower again.
    for _ in 0..d * n {
        let current = SetSystem::new(mu.ground(), q.supports())?;
        let target = maximal_presentation(mu.underlying(), &current)
            .map_err(|e| Error::DapxFailed(format!("maximal presentation: {e}")))?;
        let missing = (0..d).find_map(|i| {
            target.sets()[i]
                .difference(current.sets()[i])
                .min_element()
                .map(|j| (i, j))
        });
        let Some((i, j)) = missing else { break };
        let fill = q
            .row(i)
            .entries()
            .iter()
            .min()
            .cloned()
            .unwrap_or(Trop::zero());
        q = q.with_entry(i, j, fill);
        lower_to_fixpoint(&mut q, mu)?;
    }

    let (classes, apex_class, _) = classify(&q, mu)?;
    align_classes(&mut q, mu, &apex_class, classes.len());
    lower_to_fixpoint(&mut q, mu)?;

    if !is_presentation(&q, mu) {
        return Err(Error::DapxFailed(
            "lowered matrix no longer presents μ".into(),
        ));
    }
    let support = SetSystem::new(mu.ground(), q.supports())?;
    let start = SetSystem::new(mu.ground(), p.matrix.supports())?;
    let maximal = maximal_presentation(mu.underlying(), &start)
        .map_err(|e| Error::DapxFailed(format!("maximal presentation: {e}")))?;
    if !support.same_multiset(&maximal) {
        return Err(Error::DapxFailed(format!(
            "support {:?} differs from the maximal presentation {:?}",
            support.sorted_sets(),
            maximal.sorted_sets()
        )));
    }
    if let Some(i) = q
        .rows()
        .iter()
        .position(|r| !mu.in_tropical_linear_space(r).member)
    {
        return Err(Error::DapxFailed(format!(
            "row {} is not in the tropical linear space",
            i + 1
        )));
    }

    let (classes, apex_class, flats) = classify(&q, mu)?;
    for (c, class) in classes.iter().enumerate() {
        let members: Vec<usize> = (0..d).filter(|&i| apex_class[i] == c).collect();
        if members.len() != class.multiplicity {
            return Err(Error::DapxFailed(format!(
                "distinguished matroid {:?} occurs {} times but t(M) = {}",
                class.matroid,
                members.len(),
                class.multiplicity
            )));
        }
        let first = q.row(members[0]);
        if members
            .iter()
            .any(|&k| constant_offset(q.row(k), first).is_none())
        {
            return Err(Error::DapxFailed(format!(
                "apices for {:?} are not translates",
                class.matroid
            )));
        }
    }
    let rows = (0..d)
        .map(|i| ApexRow {
            apex: i,
            class: apex_class[i],
            flat: flats[i],
            lambda: T::zero(),
            shifts: classes[apex_class[i]]
                .matroid
                .components()
                .into_iter()
                .map(|c| (c, T::zero()))
                .collect(),
            bumps: Vec::new(),
        })
        .collect();
    Ok(ApexDecomposition {
        apices: q,
        apex_class,
        classes,
        rows,
    })
}

type Classes = (Vec<DistinguishedClass>, Vec<usize>, Vec<ElementSet>);

/// Distinguished matroid of each row: the initial matroid of `μ / F` at the
/// row, where `F` is the (cyclic) flat on which the row is infinite.
fn classify<T: Scalar>(q: &TropMatrix<T>, mu: &ValuatedMatroid<T>) -> Result<Classes> {
    let cyclic = mu.underlying().cyclic_flats();
    let mut classes: Vec<DistinguishedClass> = Vec::new();
    let mut apex_class = Vec::with_capacity(q.nrows());
    let mut flats = Vec::with_capacity(q.nrows());
    for (i, row) in q.rows().iter().enumerate() {
        let flat = mu.ground().difference(row.support());
        if !cyclic.flats().contains(&flat) {
            return Err(Error::DapxFailed(format!(
                "row {}: {flat} is not a cyclic flat",
                i + 1
            )));
        }
        let contracted = mu.contract_set(flat)?;
        let m = contracted.initial_matroid(&negated(row))?.matroid;
        if !m.loops().is_empty() {
            return Err(Error::DapxFailed(format!(
                "row {}: initial matroid has loops",
                i + 1
            )));
        }
        let class = match classes.iter().position(|c| c.matroid == m) {
            Some(c) => c,
            None => {
                let t = m
                    .t_of()
                    .map_err(|e| Error::DapxFailed(format!("row {}: {e}", i + 1)))?;
                classes.push(DistinguishedClass {
                    matroid: m,
                    multiplicity: t as usize,
                });
                classes.len() - 1
            }
        };
        apex_class.push(class);
        flats.push(flat);
    }
    Ok((classes, apex_class, flats))
}

/// Entries with an `Inf` bound take part in no finite matching, so they can
/// be moved without changing `μ`. Rows of one class are made translates of
/// the class's first row by moving such entries.
fn align_classes<T: Scalar>(
    q: &mut TropMatrix<T>,
    mu: &ValuatedMatroid<T>,
    apex_class: &[usize],
    nclasses: usize,
) {
    for c in 0..nclasses {
        let members: Vec<usize> = (0..q.nrows()).filter(|&i| apex_class[i] == c).collect();
        let r = members[0];
        for &k in &members[1..] {
            let support = q.row(r).support();
            if support != q.row(k).support() {
                continue;
            }
            let free = |q: &TropMatrix<T>, i: usize, j: usize| lower_bound(q, mu, i, j).is_inf();
            let Some(shift) = support
                .iter()
                .find(|&j| !free(q, r, j) && !free(q, k, j))
                .map(|j| {
                    q.get(k, j)
                        .finite_diff(q.get(r, j))
                        .expect("finite on support")
                })
            else {
                continue;
            };
            for j in support.iter() {
                let want_k = q.get(r, j).shift(&shift);
                if *q.get(k, j) == want_k {
                    continue;
                }
                if free(q, k, j) {
                    *q = q.with_entry(k, j, want_k);
                } else if free(q, r, j) {
                    let want_r = q.get(k, j).shift(&-shift.clone());
                    *q = q.with_entry(r, j, want_r);
                }
            }
        }
    }
}

fn lower_to_fixpoint<T: Scalar>(q: &mut TropMatrix<T>, mu: &ValuatedMatroid<T>) -> Result<()> {
    for _ in 0..MAX_SWEEPS {
        let mut changed = false;
        for i in 0..q.nrows() {
            for j in 0..q.ncols() {
                let v = lower_bound(q, mu, i, j);
                if v < *q.get(i, j) {
                    *q = q.with_entry(i, j, v);
                    changed = true;
                }
            }
        }
        if !changed {
            return Ok(());
        }
    }
    Err(Error::DapxFailed(format!(
        "no fixpoint after {MAX_SWEEPS} sweeps"
    )))
}

/// `-x` on the support of `x`; `Inf` stays `Inf`.
fn negated<T: Scalar>(x: &TropVector<T>) -> TropVector<T> {
    TropVector::new(
        x.entries()
            .iter()
            .map(|v| match v {
                Trop::Fin(a) => Trop::Fin(-a.clone()),
                Trop::Inf => Trop::Inf,
            })
            .collect(),
    )
}

/// `Some(c)` when `a = b + c·1` with equal supports.
fn constant_offset<T: Scalar>(a: &TropVector<T>, b: &TropVector<T>) -> Option<T> {
    if a.support() != b.support() {
        return None;
    }
    let mut c: Option<T> = None;
    for j in a.support().iter() {
        let diff = a.get(j).finite_diff(b.get(j))?;
        match &c {
            None => c = Some(diff),
            Some(x) if *x == diff => {}
            Some(_) => return None,
        }
    }
    c.or_else(|| Some(T::zero()))
}

type Written<T> = (T, Vec<(ElementSet, T)>, Vec<(usize, Trop<T>)>);

/// Writes `row` as `apex + Σ_C λ_C·1_C + Σ α_j e_j`, with one shift per
/// connected component `C` of `m`, when the bump set is an independent flat
/// of `m`. For connected `m` this is the single shift `λ·1`.
fn write_against<T: Scalar>(
    row: &TropVector<T>,
    apex: &TropVector<T>,
    m: &Matroid,
) -> Option<Written<T>> {
    let e = apex.support();
    if row.support().is_empty() || !row.support().is_subset(e) {
        return None;
    }
    let diff = |j: usize| row.get(j).finite_diff(apex.get(j));
    let mut shifts = Vec::new();
    let mut bumps = Vec::new();
    for comp in m.components() {
        let lambda = comp
            .intersection(row.support())
            .iter()
            .filter_map(diff)
            .min();
        for j in comp.iter() {
            match (diff(j), &lambda) {
                (Some(v), Some(l)) => {
                    let alpha = v - l.clone();
                    if is_positive(&alpha) {
                        bumps.push((j, Trop::Fin(alpha)));
                    }
                }
                _ => bumps.push((j, Trop::Inf)),
            }
        }
        if let Some(l) = lambda {
            shifts.push((comp, l));
        }
    }
    bumps.sort_by_key(|(j, _)| *j);
    let j_set = ElementSet::from_elements(bumps.iter().map(|(j, _)| *j));
    let lambda = shifts.iter().map(|(_, l)| l.clone()).min()?;
    (m.is_independent(j_set) && m.is_flat(j_set)).then_some((lambda, shifts, bumps))
}

/// Decomposes a presentation of `μ` against `apx = compute_dapx(..)`.
///
/// Rows are matched to apices through admissible pairs (see the
/// [`ApexRow`] form). The assignment of each row to a distinguished matroid
/// must be the same in every perfect matching; otherwise this is reported
/// as a violation.
pub fn decompose<T: Scalar>(
    p: &Presentation<T>,
    apx: &ApexDecomposition<T>,
) -> Result<ApexDecomposition<T>> {
    let d = p.rank();
    if apx.apices.nrows() != d || apx.apices.ncols() != p.ncols() {
        return Err(Error::Shape(
            "apices and presentation have different shapes".into(),
        ));
    }
    let mut admissible: Vec<Vec<Option<Written<T>>>> = Vec::with_capacity(d);
    for row in p.matrix.rows() {
        admissible.push(
            (0..d)
                .map(|a| {
                    write_against(
                        row,
                        apx.apices.row(a),
                        &apx.classes[apx.apex_class[a]].matroid,
                    )
                })
                .collect(),
        );
    }
    let adj: Vec<Vec<bool>> = admissible
        .iter()
        .map(|r| r.iter().map(Option::is_some).collect())
        .collect();
    let matching = bipartite_perfect(&adj, None).ok_or_else(|| {
        Error::NotDecomposition("no admissible assignment of rows to apices".into())
    })?;

    for i in 0..d {
        let mut reachable: Vec<usize> = Vec::new();
        for a in 0..d {
            let class = apx.apex_class[a];
            if adj[i][a]
                && !reachable.contains(&class)
                && bipartite_perfect(&adj, Some((i, a))).is_some()
            {
                reachable.push(class);
            }
        }
        if reachable.len() > 1 {
            return Err(Error::Violation(format!(
                "row {} can be assigned to {} different distinguished matroids",
                i + 1,
                reachable.len()
            )));
        }
    }

    let mut rows = Vec::with_capacity(d);
    for (i, &a) in matching.iter().enumerate() {
        let (lambda, shifts, bumps) = admissible[i][a]
            .clone()
            .expect("matched pairs are admissible");
        let flat = p.mu.ground().difference(apx.apices.row(a).support());
        rows.push(ApexRow {
            apex: a,
            class: apx.apex_class[a],
            flat,
            lambda,
            shifts,
            bumps,
        });
    }

    for (c, class) in apx.classes.iter().enumerate() {
        let e = class.matroid.ground();
        let partial: Vec<ElementSet> = rows
            .iter()
            .filter(|r| r.class == c)
            .map(|r| e.difference(r.bump_set()))
            .collect();
        let maximal = maximal_presentation_of(&class.matroid)?;
        if !extends_to_presentation(&class.matroid, &maximal, &partial) {
            return Err(Error::NotDecomposition(format!(
                "supports {partial:?} are not contained in a presentation of {:?}",
                class.matroid
            )));
        }
    }
    Ok(ApexDecomposition {
        apices: apx.apices.clone(),
        apex_class: apx.apex_class.clone(),
        classes: apx.classes.clone(),
        rows,
    })
}

/// Perfect matching rows → columns of a square 0/1 matrix, optionally
/// forcing one edge. Returns the column for each row.
fn bipartite_perfect(adj: &[Vec<bool>], forced: Option<(usize, usize)>) -> Option<Vec<usize>> {
    let d = adj.len();
    let allowed = |i: usize, a: usize| -> bool {
        adj[i][a]
            && match forced {
                Some((fi, fa)) => (i == fi) == (a == fa),
                None => true,
            }
    };
    let mut owner: Vec<Option<usize>> = vec![None; d];
    fn try_row(
        i: usize,
        d: usize,
        allowed: &dyn Fn(usize, usize) -> bool,
        owner: &mut [Option<usize>],
        seen: &mut [bool],
    ) -> bool {
        for a in 0..d {
            if seen[a] || !allowed(i, a) {
                continue;
            }
            seen[a] = true;
            if owner[a].is_none_or(|k| try_row(k, d, allowed, owner, seen)) {
                owner[a] = Some(i);
                return true;
            }
        }
        false
    }
    for i in 0..d {
        let mut seen = vec![false; d];
        if !try_row(i, d, &allowed, &mut owner, &mut seen) {
            return None;
        }
    }
    let mut out = vec![0; d];
    for (a, o) in owner.iter().enumerate() {
        out[o.expect("perfect")] = a;
    }
    Some(out)
}

/// Decomposes `p` against its own apices.
pub fn decomposition<T: Scalar>(p: &Presentation<T>) -> Result<ApexDecomposition<T>> {
    let apx = compute_dapx(p)?;
    decompose(p, &apx)
}

/// Rows `i` whose complement `E(M_i) ∖ supp(A_i)` is not a hyperplane of `M_i`.
pub fn non_hyperplane_rows<T: Scalar>(
    p: &Presentation<T>,
    dec: &ApexDecomposition<T>,
) -> Vec<usize> {
    (0..p.rank())
        .filter(|&i| {
            let m = dec.matroid_of_row(i);
            !m.is_hyperplane(m.ground().difference(p.matrix.row(i).support()))
        })
        .collect()
}

/// Minimality, computed two ways: through the decomposition (each
/// `E(M_i) ∖ supp(A_i)` is a hyperplane of `M_i`) and through supports
/// (each row support is a cocircuit of the underlying matroid).
pub fn is_minimal<T: Scalar>(p: &Presentation<T>) -> Result<bool> {
    let dec = decomposition(p)?;
    let by_decomposition = non_hyperplane_rows(p, &dec).is_empty();
    let by_support = p
        .matrix
        .supports()
        .iter()
        .all(|&s| p.mu.underlying().is_cocircuit(s));
    if by_decomposition != by_support {
        return Err(Error::Violation(format!(
            "minimality criteria disagree: decomposition says {by_decomposition}, supports say {by_support}"
        )));
    }
    Ok(by_decomposition)
}

/// A minimal presentation of the same representative, obtained by
/// restricting the apices to a minimal refinement of their supports.
///
/// Each distinguished block is refined inside the maximal presentation of
/// its matroid. `keep` pins the membership of one column in every row
/// support relative to the apices. Without `keep`, already-minimal input is
/// returned unchanged.
pub fn minimize<T: Scalar>(p: &Presentation<T>, keep: Option<usize>) -> Result<Presentation<T>> {
    if keep.is_none() && is_minimal(p)? {
        return Ok(p.clone());
    }
    minimize_from_apices(p, keep, None)
}

/// Always refines from the apices, visiting elements in `order` (ascending
/// when `None`) during greedy removal. Different orders can give different
/// minimal presentations of the same representative.
pub fn minimize_from_apices<T: Scalar>(
    p: &Presentation<T>,
    keep: Option<usize>,
    order: Option<&[usize]>,
) -> Result<Presentation<T>> {
    let apx = compute_dapx(p)?;
    let mut new_rows: Vec<Option<TropVector<T>>> = vec![None; p.rank()];
    for (c, class) in apx.classes.iter().enumerate() {
        let m = &class.matroid;
        let block: Vec<usize> = (0..p.rank()).filter(|&i| apx.apex_class[i] == c).collect();
        let maximal = maximal_presentation_of(m)?;
        let mut rest = maximal.sets().to_vec();
        for _ in &block {
            let pos = rest.iter().position(|&s| s == m.ground()).ok_or_else(|| {
                Error::Violation(format!(
                    "maximal presentation of {m:?} has fewer than t(M) full sets"
                ))
            })?;
            rest.remove(pos);
        }
        let mut sets = vec![m.ground(); block.len()];
        sets.extend(rest);
        let system = SetSystem::new(m.ground(), sets)?;
        let block_order: Option<Vec<usize>> = order.map(|o| {
            o.iter()
                .copied()
                .filter(|&e| m.ground().contains(e))
                .collect()
        });
        let refined = minimal_refinement(
            m,
            &system,
            keep.filter(|&k| m.ground().contains(k)),
            block_order.as_deref(),
        )?;
        for (k, &i) in block.iter().enumerate() {
            new_rows[i] = Some(apx.apices.row(i).restrict(refined.sets()[k]));
        }
    }
    let matrix = TropMatrix::from_vectors(
        new_rows
            .into_iter()
            .map(|r| r.expect("every row is in a block"))
            .collect(),
    )?;
    if !is_presentation(&matrix, &p.mu) {
        return Err(Error::Violation(
            "minimized matrix does not present μ".into(),
        ));
    }
    let out = Presentation {
        matrix,
        mu: p.mu.clone(),
    };
    if !is_minimal(&out)? {
        return Err(Error::Violation("minimized matrix is not minimal".into()));
    }
    Ok(out)
}

/// Per-class multiplicity table `M ↦ |A_M|` of a decomposition.
pub fn class_counts<T: Scalar>(dec: &ApexDecomposition<T>) -> BTreeMap<usize, usize> {
    let mut out = BTreeMap::new();
    for r in &dec.rows {
        *out.entry(r.class).or_insert(0) += 1;
    }
    out
}
