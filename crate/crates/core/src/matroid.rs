//! Matroids given by explicit basis lists, set-system presentations of
//! transversal matroids, and cyclic flats with their Möbius function.
//!
//! Every computation is brute force over subsets of the ground set, which is
//! capped at 16 elements.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::set::{check_ground, ElementSet};

/// A matroid on a subset `ground` of `{0, .., 15}`, stored by its bases.
///
/// Element indices are global: a restriction or contraction keeps the labels
/// of the surviving elements.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matroid {
    ground: ElementSet,
    rank: usize,
    bases: Vec<ElementSet>,
}

impl Matroid {
    /// Builds a matroid and validates the basis exchange axiom.
    pub fn new(ground: ElementSet, rank: usize, mut bases: Vec<ElementSet>) -> Result<Self> {
        check_ground(ground.iter().last().map_or(0, |e| e + 1))?;
        bases.sort();
        bases.dedup();
        if bases.is_empty() {
            return Err(Error::InvalidMatroid("no bases".into()));
        }
        if let Some(b) = bases
            .iter()
            .find(|b| b.len() != rank || !b.is_subset(ground))
        {
            return Err(Error::InvalidMatroid(format!(
                "basis {b} is not a {rank}-subset of the ground set {ground}"
            )));
        }
        let m = Matroid {
            ground,
            rank,
            bases,
        };
        m.check_exchange()?;
        Ok(m)
    }

    /// Builds from one-based basis lists on ground set `{1..n}`.
    pub fn from_one_based(n: usize, rank: usize, bases: &[&[usize]]) -> Result<Self> {
        let bases = bases
            .iter()
            .map(|b| ElementSet::from_one_based(b))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ElementSet::full(n), rank, bases)
    }

    pub fn uniform(rank: usize, n: usize) -> Result<Self> {
        Self::uniform_on(ElementSet::full(n), rank)
    }

    pub fn uniform_on(ground: ElementSet, rank: usize) -> Result<Self> {
        if rank > ground.len() {
            return Err(Error::RankExceedsGround {
                rank,
                n: ground.len(),
            });
        }
        Self::new(ground, rank, ground.k_subsets(rank))
    }

    fn check_exchange(&self) -> Result<()> {
        for &b1 in &self.bases {
            for &b2 in &self.bases {
                for x in b1.difference(b2).iter() {
                    let ok = b2
                        .difference(b1)
                        .iter()
                        .any(|y| self.is_basis(b1.remove(x).insert(y)));
                    if !ok {
                        return Err(Error::InvalidMatroid(format!(
                            "exchange fails for {b1}, {b2} at element {}",
                            x + 1
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn ground(&self) -> ElementSet {
        self.ground
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn bases(&self) -> &[ElementSet] {
        &self.bases
    }

    pub fn is_basis(&self, s: ElementSet) -> bool {
        self.bases.binary_search(&s).is_ok()
    }

    pub fn rank_of(&self, s: ElementSet) -> usize {
        self.bases
            .iter()
            .map(|b| b.intersection(s).len())
            .max()
            .unwrap_or(0)
    }

    pub fn corank(&self, s: ElementSet) -> usize {
        self.rank - self.rank_of(s)
    }

    pub fn is_independent(&self, s: ElementSet) -> bool {
        self.bases.iter().any(|b| s.is_subset(*b))
    }

    pub fn is_spanning(&self, s: ElementSet) -> bool {
        self.rank_of(s) == self.rank
    }

    pub fn closure(&self, s: ElementSet) -> ElementSet {
        let r = self.rank_of(s);
        self.ground
            .difference(s)
            .iter()
            .filter(|&e| self.rank_of(s.insert(e)) == r)
            .fold(s, |acc, e| acc.insert(e))
    }

    pub fn is_flat(&self, s: ElementSet) -> bool {
        s.is_subset(self.ground) && self.closure(s) == s
    }

    pub fn flats(&self) -> Vec<ElementSet> {
        sorted(self.ground.subsets().filter(|&s| self.is_flat(s)))
    }

    pub fn hyperplanes(&self) -> Vec<ElementSet> {
        sorted(
            self.flats()
                .into_iter()
                .filter(|&f| self.rank_of(f) + 1 == self.rank),
        )
    }

    pub fn is_hyperplane(&self, s: ElementSet) -> bool {
        self.rank > 0 && self.is_flat(s) && self.rank_of(s) + 1 == self.rank
    }

    pub fn cocircuits(&self) -> Vec<ElementSet> {
        sorted(
            self.hyperplanes()
                .into_iter()
                .map(|h| self.ground.difference(h)),
        )
    }

    pub fn is_cocircuit(&self, s: ElementSet) -> bool {
        s.is_subset(self.ground) && self.is_hyperplane(self.ground.difference(s))
    }

    pub fn circuits(&self) -> Vec<ElementSet> {
        sorted(self.ground.subsets().filter(|&s| {
            !s.is_empty()
                && !self.is_independent(s)
                && s.iter().all(|e| self.is_independent(s.remove(e)))
        }))
    }

    pub fn loops(&self) -> ElementSet {
        self.ground.difference(
            self.bases
                .iter()
                .fold(ElementSet::EMPTY, |a, b| a.union(*b)),
        )
    }

    pub fn coloops(&self) -> ElementSet {
        self.bases
            .iter()
            .fold(self.ground, |a, b| a.intersection(*b))
    }

    /// Flats `F` such that the restriction to `F` has no coloops.
    pub fn cyclic_flats(&self) -> CyclicFlatLattice {
        let flats: Vec<ElementSet> = self
            .flats()
            .into_iter()
            .filter(|&f| {
                let r = self.rank_of(f);
                f.iter().all(|e| self.rank_of(f.remove(e)) == r)
            })
            .collect();
        CyclicFlatLattice::new(flats)
    }

    /// `t(M) = Σ_{F cyclic} μ(∅, F) · cork(F)`, or `0` when `M` has loops.
    pub fn t_of(&self) -> Result<i64> {
        if !self.loops().is_empty() {
            return Ok(0);
        }
        let lattice = self.cyclic_flats();
        let t: i64 = lattice
            .flats
            .iter()
            .zip(&lattice.moebius)
            .map(|(&f, &m)| m * self.corank(f) as i64)
            .sum();
        if t < 0 {
            return Err(Error::NegativeMultiplicity(t));
        }
        Ok(t)
    }

    /// Connected iff no proper nonempty `S` has `r(S) + r(E∖S) = r(E)`.
    pub fn is_connected(&self) -> bool {
        self.ground.subsets().all(|s| {
            s.is_empty()
                || s == self.ground
                || self.rank_of(s) + self.rank_of(self.ground.difference(s)) != self.rank
        })
    }

    /// Connected components: the minimal nonempty separators, in order of
    /// least element.
    pub fn components(&self) -> Vec<ElementSet> {
        let separators: Vec<ElementSet> = self
            .ground
            .subsets()
            .filter(|&s| {
                !s.is_empty()
                    && self.rank_of(s) + self.rank_of(self.ground.difference(s)) == self.rank
            })
            .collect();
        let mut out: Vec<ElementSet> = Vec::new();
        for e in self.ground.iter() {
            if out.iter().any(|c| c.contains(e)) {
                continue;
            }
            let comp = separators
                .iter()
                .filter(|s| s.contains(e))
                .fold(self.ground, |acc, &s| acc.intersection(s));
            out.push(comp);
        }
        out
    }

    /// `M ∖ S`, requiring `E ∖ S` to be spanning.
    pub fn delete(&self, s: ElementSet) -> Result<Self> {
        let rest = self.ground.difference(s);
        if !self.is_spanning(rest) {
            return Err(Error::Precondition(format!(
                "deletion of {s}: complement is not spanning"
            )));
        }
        Self::new(
            rest,
            self.rank,
            self.bases
                .iter()
                .copied()
                .filter(|b| b.is_disjoint(s))
                .collect(),
        )
    }

    /// `M | S` for any `S`; the rank drops to `r(S)`.
    pub fn restrict(&self, s: ElementSet) -> Self {
        let s = s.intersection(self.ground);
        let r = self.rank_of(s);
        let bases = sorted(
            self.bases
                .iter()
                .map(|b| b.intersection(s))
                .filter(|b| b.len() == r)
                .collect::<HashSet<_>>(),
        );
        Matroid {
            ground: s,
            rank: r,
            bases,
        }
    }

    /// `M / S`, requiring `S` independent.
    pub fn contract(&self, s: ElementSet) -> Result<Self> {
        if !s.is_subset(self.ground) || !self.is_independent(s) {
            return Err(Error::Precondition(format!(
                "contraction of {s}: set is not independent"
            )));
        }
        Self::new(
            self.ground.difference(s),
            self.rank - s.len(),
            self.bases
                .iter()
                .filter(|b| s.is_subset(**b))
                .map(|b| b.difference(s))
                .collect(),
        )
    }

    /// `M / S` for an arbitrary subset `S`: contract a basis of `S`, delete the rest.
    pub fn contract_set(&self, s: ElementSet) -> Self {
        let s = s.intersection(self.ground);
        let r = self.rank_of(s);
        let bases = sorted(
            self.bases
                .iter()
                .filter(|b| b.intersection(s).len() == r)
                .map(|b| b.difference(s))
                .collect::<HashSet<_>>(),
        );
        Matroid {
            ground: self.ground.difference(s),
            rank: self.rank - r,
            bases,
        }
    }

    pub fn direct_sum(&self, other: &Matroid) -> Result<Self> {
        if !self.ground.is_disjoint(other.ground) {
            return Err(Error::Precondition(
                "direct sum of matroids with overlapping ground sets".into(),
            ));
        }
        let bases = self
            .bases
            .iter()
            .flat_map(|a| other.bases.iter().map(move |b| a.union(*b)))
            .collect();
        Self::new(
            self.ground.union(other.ground),
            self.rank + other.rank,
            bases,
        )
    }

    /// Relabels element `e` to `e + offset`.
    pub fn shifted(&self, offset: usize) -> Result<Self> {
        let sh = |s: ElementSet| ElementSet(s.0 << offset);
        Self::new(
            sh(self.ground),
            self.rank,
            self.bases.iter().map(|&b| sh(b)).collect(),
        )
    }

    /// Lexicographically least basis of `M | S`.
    pub fn lex_least_basis_of(&self, s: ElementSet) -> ElementSet {
        let mut out = ElementSet::EMPTY;
        for e in s.intersection(self.ground).iter() {
            if self.is_independent(out.insert(e)) {
                out = out.insert(e);
            }
        }
        out
    }
}

/// Weak order at equal rank: `M ≤ N` iff every basis of `M` is a basis of `N`.
pub fn weak_order_leq(m: &Matroid, n: &Matroid) -> Result<bool> {
    if m.ground != n.ground || m.rank != n.rank {
        return Err(Error::Precondition(
            "weak order needs equal ground sets and ranks".into(),
        ));
    }
    Ok(m.bases.iter().all(|b| n.is_basis(*b)))
}

fn sorted<I: IntoIterator<Item = ElementSet>>(it: I) -> Vec<ElementSet> {
    let mut v: Vec<_> = it.into_iter().collect();
    v.sort();
    v
}

impl fmt::Debug for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Matroid(rank {} on {}, bases {:?})",
            self.rank, self.ground, self.bases
        )
    }
}

/// Cyclic flats ordered by inclusion, with `μ(bottom, F)` for each.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicFlatLattice {
    flats: Vec<ElementSet>,
    moebius: Vec<i64>,
}

impl CyclicFlatLattice {
    fn new(mut flats: Vec<ElementSet>) -> Self {
        flats.sort_by_key(|f| (f.len(), f.bits()));
        let mut moebius: Vec<i64> = Vec::with_capacity(flats.len());
        for (k, &f) in flats.iter().enumerate() {
            let below: i64 = (0..k)
                .filter(|&j| flats[j].is_subset(f))
                .map(|j| moebius[j])
                .sum();
            moebius.push(if k == 0 { 1 } else { -below });
        }
        CyclicFlatLattice { flats, moebius }
    }

    pub fn flats(&self) -> &[ElementSet] {
        &self.flats
    }

    pub fn bottom(&self) -> ElementSet {
        self.flats[0]
    }

    pub fn moebius(&self, f: ElementSet) -> Option<i64> {
        self.flats
            .iter()
            .position(|&g| g == f)
            .map(|k| self.moebius[k])
    }

    pub fn leq(&self, a: ElementSet, b: ElementSet) -> bool {
        a.is_subset(b)
    }

    /// `Σ_{G ≤ F} μ(bottom, G) = [F = bottom]` for every stored `F`.
    pub fn moebius_recursion_holds(&self) -> bool {
        self.flats.iter().enumerate().all(|(k, &f)| {
            let s: i64 = (0..=k)
                .filter(|&j| self.flats[j].is_subset(f))
                .map(|j| self.moebius[j])
                .sum();
            s == i64::from(k == 0)
        })
    }
}

/// A multiset of subsets `A_1, .., A_d` of a ground set: the neighbourhoods
/// of a bipartite graph. Rows keep their order; comparisons that should be
/// order-insensitive go through [`SetSystem::sorted_sets`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SetSystem {
    ground: ElementSet,
    sets: Vec<ElementSet>,
}

impl SetSystem {
    pub fn new(ground: ElementSet, sets: Vec<ElementSet>) -> Result<Self> {
        if let Some(s) = sets.iter().find(|s| !s.is_subset(ground)) {
            return Err(Error::Shape(format!(
                "set {s} leaves the ground set {ground}"
            )));
        }
        Ok(SetSystem { ground, sets })
    }

    pub fn from_one_based(n: usize, sets: &[&[usize]]) -> Result<Self> {
        let sets = sets
            .iter()
            .map(|s| ElementSet::from_one_based(s))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ElementSet::full(n), sets)
    }

    pub fn ground(&self) -> ElementSet {
        self.ground
    }

    pub fn sets(&self) -> &[ElementSet] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn sorted_sets(&self) -> Vec<ElementSet> {
        sorted(self.sets.iter().copied())
    }

    /// Multiset equality.
    pub fn same_multiset(&self, other: &SetSystem) -> bool {
        self.sorted_sets() == other.sorted_sets()
    }

    pub fn with_set(&self, i: usize, s: ElementSet) -> Self {
        let mut sets = self.sets.clone();
        sets[i] = s;
        SetSystem {
            ground: self.ground,
            sets,
        }
    }

    /// True iff `b` has a system of distinct representatives in these sets.
    pub fn matches(&self, b: ElementSet) -> bool {
        perfect_matching(&self.sets, b).is_some()
    }

    /// `A ≤ A'`: some bijection sends each set into a superset.
    pub fn leq(&self, other: &SetSystem) -> bool {
        self.len() == other.len() && injects_into(&self.sets, &other.sets)
    }
}

impl fmt::Debug for SetSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SetSystem{:?}", self.sets)
    }
}

/// Matches every element of `b` to a distinct set containing it. Returns the
/// set index for each element of `b` in increasing element order.
pub fn perfect_matching(sets: &[ElementSet], b: ElementSet) -> Option<Vec<usize>> {
    let elems: Vec<usize> = b.iter().collect();
    if elems.len() > sets.len() {
        return None;
    }
    let mut owner: Vec<Option<usize>> = vec![None; sets.len()];
    for (k, &e) in elems.iter().enumerate() {
        let mut seen = vec![false; sets.len()];
        if !augment(sets, &elems, k, e, &mut owner, &mut seen) {
            return None;
        }
    }
    let mut out = vec![0; elems.len()];
    for (row, o) in owner.iter().enumerate() {
        if let Some(k) = o {
            out[*k] = row;
        }
    }
    Some(out)
}

fn augment(
    sets: &[ElementSet],
    elems: &[usize],
    k: usize,
    e: usize,
    owner: &mut [Option<usize>],
    seen: &mut [bool],
) -> bool {
    for (row, s) in sets.iter().enumerate() {
        if !s.contains(e) || seen[row] {
            continue;
        }
        seen[row] = true;
        let free = match owner[row] {
            None => true,
            Some(k2) => augment(sets, elems, k2, elems[k2], owner, seen),
        };
        if free {
            owner[row] = Some(k);
            return true;
        }
    }
    false
}

/// Is there an injection `f` from `small` into `big` with `X ⊆ f(X)`?
pub(crate) fn injects_into(small: &[ElementSet], big: &[ElementSet]) -> bool {
    let n = small.len();
    let mut owner: Vec<Option<usize>> = vec![None; big.len()];
    for k in 0..n {
        let mut seen = vec![false; big.len()];
        if !augment_sets(small, big, k, &mut owner, &mut seen) {
            return false;
        }
    }
    true
}

fn augment_sets(
    small: &[ElementSet],
    big: &[ElementSet],
    k: usize,
    owner: &mut [Option<usize>],
    seen: &mut [bool],
) -> bool {
    for j in 0..big.len() {
        if seen[j] || !small[k].is_subset(big[j]) {
            continue;
        }
        seen[j] = true;
        if owner[j].is_none_or(|k2| augment_sets(small, big, k2, owner, seen)) {
            owner[j] = Some(k);
            return true;
        }
    }
    false
}

/// The transversal matroid of a set system, or `None` when no `d`-subset
/// has a perfect matching.
pub fn transversal_from_system(s: &SetSystem) -> Option<Matroid> {
    let d = s.len();
    let union = s.sets.iter().fold(ElementSet::EMPTY, |a, b| a.union(*b));
    let bases: Vec<ElementSet> = union
        .k_subsets(d)
        .into_iter()
        .filter(|&b| s.matches(b))
        .collect();
    if bases.is_empty() {
        return None;
    }
    let mut bases = bases;
    bases.sort();
    // Transversal basis families always satisfy exchange; skip re-validation.
    Some(Matroid {
        ground: s.ground,
        rank: d,
        bases,
    })
}

fn presents(m: &Matroid, s: &SetSystem) -> bool {
    s.len() == m.rank && s.ground == m.ground && transversal_from_system(s).as_ref() == Some(m)
}

fn require_presents(m: &Matroid, s: &SetSystem) -> Result<()> {
    if presents(m, s) {
        Ok(())
    } else {
        Err(Error::Precondition(format!("{s:?} does not present {m:?}")))
    }
}

/// The unique maximal presentation: each `A_i` gains the coloops of `M ∖ A_i`.
///
/// Cross-checked against greedy single-element insertion.
pub fn maximal_presentation(m: &Matroid, s: &SetSystem) -> Result<SetSystem> {
    require_presents(m, s)?;
    let by_rule: Vec<ElementSet> = s
        .sets
        .iter()
        .map(|&a| a.union(m.restrict(m.ground.difference(a)).coloops()))
        .collect();
    let by_rule = SetSystem {
        ground: s.ground,
        sets: by_rule,
    };

    let mut greedy = s.clone();
    loop {
        let mut changed = false;
        for i in 0..greedy.len() {
            for e in m.ground.difference(greedy.sets[i]).iter() {
                let cand = greedy.with_set(i, greedy.sets[i].insert(e));
                if presents(m, &cand) {
                    greedy = cand;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    if !by_rule.same_multiset(&greedy) {
        return Err(Error::Violation(format!(
            "maximal presentation: coloop rule {by_rule:?} disagrees with greedy {greedy:?}"
        )));
    }
    Ok(by_rule)
}

/// The maximal presentation computed from `M` alone: `E ∖ F` with
/// multiplicity `t(M / F)` for every cyclic flat `F`. Fails unless the
/// result has `rank` sets and presents `M`, i.e. unless `M` is transversal.
pub fn maximal_presentation_of(m: &Matroid) -> Result<SetSystem> {
    let mut sets = Vec::new();
    for &f in m.cyclic_flats().flats() {
        let t = m.contract_set(f).t_of()?;
        sets.extend(std::iter::repeat_n(m.ground.difference(f), t as usize));
    }
    let sys = SetSystem {
        ground: m.ground,
        sets,
    };
    if !presents(m, &sys) {
        return Err(Error::Precondition(format!(
            "{m:?} is not transversal (cyclic-flat system {sys:?})"
        )));
    }
    Ok(sys)
}

/// Refines a presentation to one whose sets are cocircuits, with each
/// `S'_i ⊆ S_i`. When `keep` is given, `keep ∈ S'_i` iff `keep ∈ S_i`.
///
/// Greedy removal visits rows in index order and elements in the order
/// given by `order` (ascending when `None`), repeating until nothing can be
/// removed. If the greedy result is not made of cocircuits, an exhaustive
/// search over cocircuit choices is used instead.
pub fn minimal_refinement(
    m: &Matroid,
    s: &SetSystem,
    keep: Option<usize>,
    order: Option<&[usize]>,
) -> Result<SetSystem> {
    require_presents(m, s)?;
    let order: Vec<usize> = match order {
        Some(o) => o.to_vec(),
        None => m.ground.iter().collect(),
    };
    let mut cur = s.clone();
    loop {
        let mut changed = false;
        for i in 0..cur.len() {
            for &e in &order {
                if Some(e) == keep || !cur.sets[i].contains(e) {
                    continue;
                }
                let cand = cur.with_set(i, cur.sets[i].remove(e));
                if presents(m, &cand) {
                    cur = cand;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    if cur.sets.iter().all(|&c| m.is_cocircuit(c)) {
        return Ok(cur);
    }
    exhaustive_refinement(m, s, keep).ok_or_else(|| {
        Error::Violation(format!(
            "no cocircuit refinement of {s:?} preserving {keep:?}"
        ))
    })
}

fn exhaustive_refinement(m: &Matroid, s: &SetSystem, keep: Option<usize>) -> Option<SetSystem> {
    let cocircuits = m.cocircuits();
    let choices: Vec<Vec<ElementSet>> = s
        .sets
        .iter()
        .map(|&a| {
            cocircuits
                .iter()
                .copied()
                .filter(|c| c.is_subset(a) && keep.is_none_or(|k| c.contains(k) == a.contains(k)))
                .collect()
        })
        .collect();
    let mut pick = Vec::with_capacity(s.len());
    search_product(&choices, &mut pick, &mut |sets| {
        let cand = SetSystem {
            ground: s.ground,
            sets: sets.to_vec(),
        };
        presents(m, &cand).then_some(cand)
    })
}

fn search_product<R>(
    choices: &[Vec<ElementSet>],
    pick: &mut Vec<ElementSet>,
    f: &mut impl FnMut(&[ElementSet]) -> Option<R>,
) -> Option<R> {
    if pick.len() == choices.len() {
        return f(pick);
    }
    for &c in &choices[pick.len()] {
        pick.push(c);
        if let Some(r) = search_product(choices, pick, f) {
            return Some(r);
        }
        pick.pop();
    }
    None
}

/// All minimal presentations of `M`: multisets of `rank` cocircuits that
/// present `M`, each listed once with sets in sorted order.
pub fn minimal_presentations(m: &Matroid) -> Vec<SetSystem> {
    let cocircuits = m.cocircuits();
    let mut out = Vec::new();
    let mut pick: Vec<usize> = Vec::new();
    multisets(cocircuits.len(), m.rank, 0, &mut pick, &mut |idx| {
        let sys = SetSystem {
            ground: m.ground,
            sets: idx.iter().map(|&k| cocircuits[k]).collect(),
        };
        if presents(m, &sys) {
            out.push(sys);
        }
    });
    out
}

fn multisets(
    k: usize,
    len: usize,
    from: usize,
    pick: &mut Vec<usize>,
    f: &mut impl FnMut(&[usize]),
) {
    if pick.len() == len {
        f(pick);
        return;
    }
    for c in from..k {
        pick.push(c);
        multisets(k, len, c, pick, f);
        pick.pop();
    }
}

/// Does some presentation of `M` contain `partial` as a submultiset?
///
/// Every presentation lies below the maximal one, and any system between a
/// presentation and the maximal presentation presents `M`, so it suffices to
/// try injections of `partial` into the maximal presentation and fill the
/// remaining rows from it.
pub fn extends_to_presentation(m: &Matroid, maximal: &SetSystem, partial: &[ElementSet]) -> bool {
    let big = &maximal.sets;
    if partial.len() > big.len() {
        return false;
    }
    let mut used = vec![false; big.len()];
    let mut assign: Vec<usize> = Vec::new();
    try_injections(partial, big, &mut used, &mut assign, &mut |assign| {
        let mut sets: Vec<ElementSet> = partial.to_vec();
        sets.extend(
            (0..big.len())
                .filter(|j| !assign.contains(j))
                .map(|j| big[j]),
        );
        presents(
            m,
            &SetSystem {
                ground: m.ground,
                sets,
            },
        )
    })
}

fn try_injections(
    partial: &[ElementSet],
    big: &[ElementSet],
    used: &mut [bool],
    assign: &mut Vec<usize>,
    f: &mut impl FnMut(&[usize]) -> bool,
) -> bool {
    if assign.len() == partial.len() {
        return f(assign);
    }
    let x = partial[assign.len()];
    let mut tried: Vec<ElementSet> = Vec::new();
    for j in 0..big.len() {
        if used[j] || !x.is_subset(big[j]) || tried.contains(&big[j]) {
            continue;
        }
        tried.push(big[j]);
        used[j] = true;
        assign.push(j);
        let ok = try_injections(partial, big, used, assign, f);
        assign.pop();
        used[j] = false;
        if ok {
            return true;
        }
    }
    false
}

/// Multiplicity table of a multiset of matroids.
pub fn multiplicities<'a, I: IntoIterator<Item = &'a Matroid>>(
    ms: I,
) -> BTreeMap<Vec<u32>, (Matroid, usize)> {
    let mut out: BTreeMap<Vec<u32>, (Matroid, usize)> = BTreeMap::new();
    for m in ms {
        let mut key = vec![m.ground.bits(), m.rank as u32];
        key.extend(m.bases.iter().map(|b| b.bits()));
        out.entry(key).or_insert_with(|| (m.clone(), 0)).1 += 1;
    }
    out
}
