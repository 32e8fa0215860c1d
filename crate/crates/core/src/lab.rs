//! Search for transversal realizations of candidate extensions, used to
//! probe whether pointwise minima of transversal extensions of one `μ`
//! (taken from different presentations) are again transversal extensions.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use serde_json::{json, Value};

use crate::corpus::{default_grid, instance_rng, random_column, random_presentation};
use crate::error::{Error, Result};
use crate::extension::{extend, pointwise_min, ExtensionColumn, NormalizedExtension};
use crate::fm::{solve, Affine, Reduced};
use crate::io::{column_to_json, matrix_to_json, values_to_json, Labels};
use crate::matroid::{minimal_presentations, transversal_from_system, Matroid, SetSystem};
use crate::presentation::{minimize, minimize_from_apices, Presentation};
use crate::set::ElementSet;
use crate::trop::{all_maximal_minors, Trop, TropMatrix};
use crate::valuated::{check_pluecker, ValuatedMatroid};
use crate::{Rational, Scalar};

pub const LAB_MAX_N: usize = 5;
pub const LAB_MAX_D: usize = 3;

/// A function on the `d`-subsets of `E ∪ {*}`; absent sets are `Inf`.
pub type Candidate = BTreeMap<ElementSet, Trop<Rational>>;

fn check_caps(n: usize, d: usize) -> Result<()> {
    if n > LAB_MAX_N || d > LAB_MAX_D {
        return Err(Error::LabSizeCap { n, d });
    }
    Ok(())
}

/// Pointwise minimum of two normalized extensions of the same `μ`.
pub fn min_of_extensions(
    a: &NormalizedExtension<Rational>,
    b: &NormalizedExtension<Rational>,
) -> Result<Candidate> {
    pointwise_min(a, b)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValuatedCheck {
    pub valuated: bool,
    pub reason: Option<String>,
}

/// Plücker relations plus validity of the support as a matroid.
pub fn check_valuated(candidate: &Candidate, ground: usize, d: usize) -> Result<ValuatedCheck> {
    let full: Candidate = ElementSet::full(ground)
        .k_subsets(d)
        .into_iter()
        .map(|b| (b, candidate.get(&b).cloned().unwrap_or(Trop::Inf)))
        .collect();
    let check = check_pluecker(ElementSet::full(ground), d, &full)?;
    if let Some((s, quad)) = check.witness {
        let quad: Vec<usize> = quad.iter().map(|e| e + 1).collect();
        return Ok(ValuatedCheck {
            valuated: false,
            reason: Some(format!("three-term relation fails at {s} with {quad:?}")),
        });
    }
    let support: Vec<ElementSet> = full
        .iter()
        .filter(|(_, v)| v.is_finite())
        .map(|(b, _)| *b)
        .collect();
    if support.is_empty() {
        return Ok(ValuatedCheck {
            valuated: false,
            reason: Some("identically inf".into()),
        });
    }
    if let Err(e) = Matroid::new(ElementSet::full(ground), d, support) {
        return Ok(ValuatedCheck {
            valuated: false,
            reason: Some(format!("support is not a matroid: {e}")),
        });
    }
    Ok(ValuatedCheck {
        valuated: true,
        reason: None,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Slot {
    Inf,
    Known(Rational),
    Var(usize),
}

/// Counters for the exhaustive search.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Support patterns that passed the matroid filter.
    pub patterns: usize,
    /// Tight-matching choices explored.
    pub assignments: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Realizability {
    Realizable { witness: TropMatrix<Rational> },
    NotRealizable,
}

impl Realizability {
    pub fn label(&self) -> &'static str {
        match self {
            Realizability::Realizable { .. } => "REALIZABLE",
            Realizability::NotRealizable => "NOT_REALIZABLE",
        }
    }

    pub fn witness(&self) -> Option<&TropMatrix<Rational>> {
        match self {
            Realizability::Realizable { witness } => Some(witness),
            Realizability::NotRealizable => None,
        }
    }
}

struct Pattern {
    rows: Vec<Vec<Slot>>,
    nvars: usize,
}

impl Pattern {
    fn ncols(&self) -> usize {
        self.rows[0].len()
    }

    fn matrix(&self, vars: &[Rational]) -> Result<TropMatrix<Rational>> {
        TropMatrix::new(
            self.rows
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|s| match s {
                            Slot::Inf => Trop::Inf,
                            Slot::Known(v) => Trop::Fin(v.clone()),
                            Slot::Var(k) => Trop::Fin(vars[*k].clone()),
                        })
                        .collect()
                })
                .collect(),
        )
    }

    /// Weights of all matchings of `b` with finite slots, as affine forms.
    fn matchings(&self, b: ElementSet) -> Vec<Affine> {
        let cols = b.to_vec();
        let d = self.rows.len();
        let mut out = BTreeSet::new();
        let mut perm: Vec<usize> = (0..d).collect();
        permutations(&mut perm, 0, &mut |p| {
            let mut f = Affine::zero(self.nvars);
            for (k, &c) in cols.iter().enumerate() {
                match &self.rows[p[k]][c] {
                    Slot::Inf => return,
                    Slot::Known(v) => f.constant += v,
                    Slot::Var(j) => f.add_var(*j, &Rational::from_i64(1)),
                }
            }
            out.insert(f);
        });
        out.into_iter().collect()
    }
}

fn permutations(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, f);
        p.swap(k, i);
    }
}

const PRUNE_FREE: usize = 3;

/// Decides whether the slots can be filled so that the tropical maximal
/// minors equal `target`, by choosing one tight matching per finite value.
fn realize(
    pattern: &Pattern,
    target: &Candidate,
    stats: &mut SearchStats,
) -> Result<Option<TropMatrix<Rational>>> {
    let d = pattern.rows.len();
    let mut tasks: Vec<Vec<Affine>> = Vec::new();
    let mut ineqs: Vec<Affine> = Vec::new();
    for b in ElementSet::full(pattern.ncols()).k_subsets(d) {
        let forms = pattern.matchings(b);
        match target.get(&b).cloned().unwrap_or(Trop::Inf) {
            Trop::Inf => {
                if !forms.is_empty() {
                    return Ok(None);
                }
            }
            Trop::Fin(t) => {
                if forms.is_empty() {
                    return Ok(None);
                }
                let shifted: Vec<Affine> = forms
                    .into_iter()
                    .map(|mut f| {
                        f.constant -= &t;
                        f
                    })
                    .collect();
                ineqs.extend(shifted.iter().cloned());
                tasks.push(shifted);
            }
        }
    }
    tasks.sort_by_key(Vec::len);
    let eqs = Reduced::new(pattern.nvars);
    if solve(&eqs, &ineqs).is_none() {
        return Ok(None);
    }
    let Some(vars) = dfs(&tasks, 0, eqs, &ineqs, stats) else {
        return Ok(None);
    };
    let witness = pattern.matrix(&vars)?;
    let minors = all_maximal_minors(&witness)?;
    let agrees = minors
        .iter()
        .all(|(b, v)| target.get(b).cloned().unwrap_or(Trop::Inf) == *v);
    if !agrees {
        return Err(Error::Violation(
            "realization witness does not reproduce the candidate".into(),
        ));
    }
    Ok(Some(witness))
}

fn dfs(
    tasks: &[Vec<Affine>],
    k: usize,
    eqs: Reduced,
    ineqs: &[Affine],
    stats: &mut SearchStats,
) -> Option<Vec<Rational>> {
    if k == tasks.len() {
        return solve(&eqs, ineqs);
    }
    // A form already forced tight dominates every other choice.
    if tasks[k].iter().any(|f| {
        let r = eqs.reduce(f);
        r.is_constant() && r.constant == Rational::from_i64(0)
    }) {
        return dfs(tasks, k + 1, eqs, ineqs, stats);
    }
    for f in &tasks[k] {
        let mut next = eqs.clone();
        if !next.add(f) {
            continue;
        }
        stats.assignments += 1;
        if next.free_count() <= PRUNE_FREE && solve(&next, ineqs).is_none() {
            continue;
        }
        if let Some(v) = dfs(tasks, k + 1, next, ineqs, stats) {
            return Some(v);
        }
    }
    None
}

fn star_is_coloop(candidate: &Candidate, star: usize) -> bool {
    candidate
        .iter()
        .all(|(b, v)| v.is_inf() || b.contains(star))
}

fn restricts_to(candidate: &Candidate, mu: &ValuatedMatroid<Rational>) -> bool {
    mu.ground()
        .k_subsets(mu.rank())
        .into_iter()
        .all(|b| candidate.get(&b).cloned().unwrap_or(Trop::Inf) == mu.value(b))
}

fn candidate_support(candidate: &Candidate) -> BTreeSet<ElementSet> {
    candidate
        .iter()
        .filter(|(_, v)| v.is_finite())
        .map(|(b, _)| *b)
        .collect()
}

/// Is `candidate` (on `E ∪ {*}`) equal to `Stiefel(A|x)` for some
/// presentation `A` of `μ`? Searches all minimal presentations of `μ̲`,
/// all `*`-column supports, and all tight-matching choices.
pub fn is_transversal_extension(
    candidate: &Candidate,
    mu: &ValuatedMatroid<Rational>,
) -> Result<(Realizability, SearchStats)> {
    let n = mu.ground().len();
    let d = mu.rank();
    check_caps(n, d)?;
    if !restricts_to(candidate, mu) {
        return Err(Error::Precondition(
            "candidate does not restrict to μ".into(),
        ));
    }
    if star_is_coloop(candidate, n) {
        return Err(Error::ColoopExtension);
    }
    let support = candidate_support(candidate);
    let mut stats = SearchStats::default();
    let mut seen: BTreeSet<Vec<ElementSet>> = BTreeSet::new();
    for s in minimal_presentations(mu.underlying()) {
        for z in ElementSet::full(d).subsets() {
            let supports: Vec<ElementSet> = (0..d)
                .map(|i| {
                    if z.contains(i) {
                        s.sets()[i].insert(n)
                    } else {
                        s.sets()[i]
                    }
                })
                .collect();
            let mut key = supports.clone();
            key.sort();
            if !seen.insert(key) {
                continue;
            }
            let system = SetSystem::new(ElementSet::full(n + 1), supports.clone())?;
            let Some(m) = transversal_from_system(&system) else {
                continue;
            };
            if m.bases().iter().copied().collect::<BTreeSet<_>>() != support {
                continue;
            }
            stats.patterns += 1;
            let mut nvars = 0;
            let rows: Vec<Vec<Slot>> = supports
                .iter()
                .enumerate()
                .map(|(i, sup)| {
                    let gauge = if i + 1 < d { sup.min_element() } else { None };
                    (0..=n)
                        .map(|j| {
                            if !sup.contains(j) {
                                Slot::Inf
                            } else if Some(j) == gauge {
                                Slot::Known(Rational::from_i64(0))
                            } else {
                                nvars += 1;
                                Slot::Var(nvars - 1)
                            }
                        })
                        .collect()
                })
                .collect();
            if let Some(witness) = realize(&Pattern { rows, nvars }, candidate, &mut stats)? {
                return Ok((Realizability::Realizable { witness }, stats));
            }
        }
    }
    Ok((Realizability::NotRealizable, stats))
}

/// Is `candidate = Stiefel(A|x)` for this fixed `A` and some column `x`?
pub fn is_extension_of_matrix(
    a: &Presentation<Rational>,
    candidate: &Candidate,
) -> Result<(Option<ExtensionColumn<Rational>>, SearchStats)> {
    let n = a.ncols();
    let d = a.rank();
    check_caps(n, d)?;
    let mut stats = SearchStats::default();
    if !restricts_to(candidate, a.mu()) {
        return Ok((None, stats));
    }
    for z in ElementSet::full(d).subsets() {
        stats.patterns += 1;
        let mut nvars = 0;
        let rows: Vec<Vec<Slot>> = (0..d)
            .map(|i| {
                let mut row: Vec<Slot> = a
                    .matrix()
                    .row(i)
                    .entries()
                    .iter()
                    .map(|v| match v {
                        Trop::Fin(q) => Slot::Known(q.clone()),
                        Trop::Inf => Slot::Inf,
                    })
                    .collect();
                row.push(if z.contains(i) {
                    nvars += 1;
                    Slot::Var(nvars - 1)
                } else {
                    Slot::Inf
                });
                row
            })
            .collect();
        if let Some(w) = realize(&Pattern { rows, nvars }, candidate, &mut stats)? {
            return Ok((Some(ExtensionColumn::from_trops(w.column(n))), stats));
        }
    }
    Ok((None, stats))
}

/// `μ^{i,λ}` on `{1,2,3,*}`: zero except `λ` on `{i,*}` (`i` zero-based).
pub fn u23_family(i: usize, lambda: Trop<Rational>) -> Candidate {
    ElementSet::full(4)
        .k_subsets(2)
        .into_iter()
        .map(|b| {
            (
                b,
                if b == ElementSet::from_elements([i, 3]) {
                    lambda.clone()
                } else {
                    Trop::zero()
                },
            )
        })
        .collect()
}

/// One trial of the open-question probe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabReport {
    pub trial: usize,
    pub seed: u64,
    pub mu: ValuatedMatroid<Rational>,
    pub first: TropMatrix<Rational>,
    pub second: TropMatrix<Rational>,
    pub x: ExtensionColumn<Rational>,
    pub y: ExtensionColumn<Rational>,
    pub first_extension: Candidate,
    pub second_extension: Candidate,
    pub min: Candidate,
    pub valuated: ValuatedCheck,
    pub transversal: Option<Realizability>,
    pub stats: SearchStats,
}

impl LabReport {
    /// Both extensions come from the same presentation (up to row order).
    pub fn same_presentation(&self) -> bool {
        let mut a = self.first.rows().to_vec();
        let mut b = self.second.rows().to_vec();
        a.sort_by_key(|r| r.entries().to_vec());
        b.sort_by_key(|r| r.entries().to_vec());
        a == b
    }

    /// Counterexample candidate: not valuated, or valuated but not realizable.
    pub fn flagged(&self) -> bool {
        !self.valuated.valuated || matches!(self.transversal, Some(Realizability::NotRealizable))
    }

    pub fn to_json(&self) -> Value {
        let n = self.mu.ground().len();
        let labels = Labels::numbered(n);
        let star = labels.with_star().expect("numbered labels");
        json!({
            "trial": self.trial,
            "seed": self.seed,
            "n": n,
            "d": self.mu.rank(),
            "labels": star.to_json(),
            "mu": values_to_json(self.mu.values(), &labels),
            "first_presentation": matrix_to_json(&self.first),
            "second_presentation": matrix_to_json(&self.second),
            "same_presentation": self.same_presentation(),
            "x": column_to_json(&self.x)["x"],
            "y": column_to_json(&self.y)["x"],
            "first_extension": values_to_json(&self.first_extension, &star),
            "second_extension": values_to_json(&self.second_extension, &star),
            "min": values_to_json(&self.min, &star),
            "is_valuated": self.valuated.valuated,
            "valuated_reason": self.valuated.reason,
            "transversal": self.transversal.as_ref().map_or("NOT_CHECKED", Realizability::label),
            "witness": self.transversal.as_ref().and_then(Realizability::witness).map(matrix_to_json),
            "patterns": self.stats.patterns,
            "assignments": self.stats.assignments,
            "flagged": self.flagged(),
        })
    }
}

fn run_probe(
    trial: usize,
    seed: u64,
    mu: ValuatedMatroid<Rational>,
    first: &Presentation<Rational>,
    second: &Presentation<Rational>,
    x: ExtensionColumn<Rational>,
    y: ExtensionColumn<Rational>,
) -> Result<LabReport> {
    let e1 = extend(first, &x)?;
    let e2 = extend(second, &y)?;
    let min = min_of_extensions(&e1, &e2)?;
    let n = mu.ground().len();
    let valuated = check_valuated(&min, n + 1, mu.rank())?;
    let (transversal, stats) = if valuated.valuated {
        let (v, s) = is_transversal_extension(&min, &mu)?;
        (Some(v), s)
    } else {
        (None, SearchStats::default())
    };
    Ok(LabReport {
        trial,
        seed,
        mu,
        first: first.matrix().clone(),
        second: second.matrix().clone(),
        x,
        y,
        first_extension: e1.values().clone(),
        second_extension: e2.values().clone(),
        min,
        valuated,
        transversal,
        stats,
    })
}

/// Extends two minimal presentations of a random `μ` by random columns and
/// tests their pointwise minimum. The second presentation comes from a
/// shuffled refinement order.
pub fn open_question_search(
    n: usize,
    d: usize,
    trials: usize,
    seed: u64,
) -> Result<Vec<LabReport>> {
    search(n, d, trials, seed, false)
}

/// As [`open_question_search`] but both columns extend the same minimal
/// presentation, so no report should ever be flagged.
pub fn single_presentation_search(
    n: usize,
    d: usize,
    trials: usize,
    seed: u64,
) -> Result<Vec<LabReport>> {
    search(n, d, trials, seed, true)
}

fn search(n: usize, d: usize, trials: usize, seed: u64, single: bool) -> Result<Vec<LabReport>> {
    check_caps(n, d)?;
    if d == 0 || d > n {
        return Err(Error::RankExceedsGround { rank: d, n });
    }
    let grid = default_grid();
    (0..trials)
        .map(|k| {
            let mut rng = instance_rng(seed, k as u64);
            let p = random_presentation(&mut rng, d, n, (1, 3), &grid)?;
            let first = minimize(&p, None)?;
            let mut order: Vec<usize> = (0..n).collect();
            order.shuffle(&mut rng);
            let second = if single {
                first.clone()
            } else {
                minimize_from_apices(&p, None, Some(&order))?
            };
            let x = ExtensionColumn::new(random_column(&mut rng, d, &grid));
            let y = ExtensionColumn::new(random_column(&mut rng, d, &grid));
            run_probe(k, seed, p.mu().clone(), &first, &second, x, y)
        })
        .collect()
}

/// The pinned instance: `μ^{1,1}` and `μ^{2,1}` over the trivial `U_{2,3}`.
pub fn pinned_u23_report() -> Result<LabReport> {
    let first = Presentation::new(TropMatrix::from_ints(&[
        &[Some(1), Some(0), Some(0)],
        &[Some(0); 3],
    ])?)?;
    let second = Presentation::new(TropMatrix::from_ints(&[
        &[Some(0), Some(1), Some(0)],
        &[Some(0); 3],
    ])?)?;
    let x = ExtensionColumn::from_trops(vec![Trop::Inf, Trop::zero()]);
    run_probe(0, 0, first.mu().clone(), &first, &second, x.clone(), x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u23() -> Presentation<Rational> {
        Presentation::new(
            TropMatrix::from_ints(&[&[Some(0), Some(0), None], &[Some(0), None, Some(0)]]).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn u23_family_min_is_trivial() {
        let a = u23_family(0, Trop::int(1));
        let b = u23_family(1, Trop::int(1));
        let min: Candidate = a
            .iter()
            .map(|(s, v)| (*s, v.clone().min(b[s].clone())))
            .collect();
        assert!(min.values().all(|v| *v == Trop::zero()));
        assert!(check_valuated(&min, 4, 2).unwrap().valuated);
    }

    #[test]
    fn plucker_violator_is_rejected() {
        let mut c = u23_family(0, Trop::int(0));
        c.insert(ElementSet::from_elements([0, 1]), Trop::int(-1));
        c.insert(ElementSet::from_elements([2, 3]), Trop::int(-1));
        assert!(!check_valuated(&c, 4, 2).unwrap().valuated);
    }

    #[test]
    fn mu_11_is_realizable() {
        let target = u23_family(0, Trop::int(1));
        let (v, stats) = is_transversal_extension(&target, u23().mu()).unwrap();
        let w = v.witness().expect("realizable");
        let minors = all_maximal_minors(w).unwrap();
        assert!(minors.iter().all(|(b, x)| target[b] == *x));
        assert!(stats.patterns > 0);
    }

    #[test]
    fn self_witness() {
        let x = ExtensionColumn::from_trops(vec![Trop::int(2), Trop::int(-1)]);
        let e = extend(&u23(), &x).unwrap();
        let (v, _) = is_transversal_extension(e.values(), u23().mu()).unwrap();
        assert_eq!(v.label(), "REALIZABLE");
        let (col, _) = is_extension_of_matrix(&u23(), e.values()).unwrap();
        assert_eq!(col, Some(x));
    }

    #[test]
    fn fixed_matrix_reaches_two_of_three() {
        let realizable: Vec<usize> = (0..3)
            .filter(|&i| {
                is_extension_of_matrix(&u23(), &u23_family(i, Trop::int(1)))
                    .unwrap()
                    .0
                    .is_some()
            })
            .collect();
        assert_eq!(realizable, vec![1, 2]);
    }

    #[test]
    fn caps_are_enforced() {
        assert_eq!(
            open_question_search(6, 2, 1, 1),
            Err(Error::LabSizeCap { n: 6, d: 2 })
        );
    }

    #[test]
    fn search_is_reproducible() {
        let a: Vec<Value> = open_question_search(3, 2, 6, 1)
            .unwrap()
            .iter()
            .map(LabReport::to_json)
            .collect();
        let b: Vec<Value> = open_question_search(3, 2, 6, 1)
            .unwrap()
            .iter()
            .map(LabReport::to_json)
            .collect();
        assert_eq!(a, b);
        assert_eq!(a.len(), 6);
    }

    #[test]
    fn pinned_instance_runs() {
        let r = pinned_u23_report().unwrap();
        assert!(r.valuated.valuated);
        assert!(r.min.values().all(|v| *v == Trop::zero()));
        assert!(r.transversal.is_some());
    }
}
