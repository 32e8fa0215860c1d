//! Valuated matroids as explicit representative functions on `d`-subsets.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::scalar::Scalar;
use crate::set::ElementSet;
use crate::trop::{min_attained_twice, Trop, TropVector};

/// A representative function `μ : C(ground, d) → Q ∪ {∞}` satisfying the
/// valuated matroid axioms.
///
/// Equality (`==`) is equality of representatives. Use
/// [`ValuatedMatroid::equivalent`] for equality up to a global shift.
#[derive(Clone, PartialEq, Eq)]
pub struct ValuatedMatroid<T> {
    ground: ElementSet,
    rank: usize,
    values: BTreeMap<ElementSet, Trop<T>>,
    underlying: Matroid,
}

/// Result of a 3-term Plücker check. `witness` is `(S, [i, j, k, l])` for the
/// first failing relation in enumeration order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlueckerCheck {
    pub holds: bool,
    pub witness: Option<(ElementSet, [usize; 4])>,
}

/// Membership in a tropical linear space, with the first failing
/// `(d+1)`-set when the point is outside.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Membership {
    pub member: bool,
    pub witness: Option<ElementSet>,
}

/// The initial matroid of `μ` at a finite point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InitialMatroidResult<T: Scalar> {
    pub matroid: Matroid,
    pub point: TropVector<T>,
    pub min_value: Trop<T>,
}

fn lookup<T>(values: &BTreeMap<ElementSet, Trop<T>>, s: ElementSet) -> Result<&Trop<T>> {
    values
        .get(&s)
        .ok_or_else(|| Error::InvalidValuated(format!("missing value for {s}")))
}

/// Checks every 3-term Plücker relation of a candidate function on
/// `C(ground, d)`. A relation whose three terms are all `Inf` holds.
pub fn check_pluecker<T: Scalar>(
    ground: ElementSet,
    rank: usize,
    values: &BTreeMap<ElementSet, Trop<T>>,
) -> Result<PlueckerCheck> {
    for s in ground.k_subsets(rank) {
        lookup(values, s)?;
    }
    if rank < 2 {
        return Ok(PlueckerCheck {
            holds: true,
            witness: None,
        });
    }
    for s in ground.k_subsets(rank - 2) {
        let rest: Vec<usize> = ground.difference(s).iter().collect();
        for quad in ElementSet::from_elements(rest.iter().copied()).k_subsets(4) {
            let v: Vec<usize> = quad.iter().collect();
            let (i, j, k, l) = (v[0], v[1], v[2], v[3]);
            let pair = |a: usize, b: usize, c: usize, e: usize| -> Result<Trop<T>> {
                let x = lookup(values, s.insert(a).insert(b))?;
                let y = lookup(values, s.insert(c).insert(e))?;
                Ok(x.otimes(y))
            };
            let terms = [pair(i, j, k, l)?, pair(i, k, j, l)?, pair(i, l, j, k)?];
            if !min_attained_twice(&terms) {
                return Ok(PlueckerCheck {
                    holds: false,
                    witness: Some((s, [i, j, k, l])),
                });
            }
        }
    }
    Ok(PlueckerCheck {
        holds: true,
        witness: None,
    })
}

impl<T: Scalar> ValuatedMatroid<T> {
    /// Validates matroid support and the Plücker relations.
    pub fn new(
        ground: ElementSet,
        rank: usize,
        values: BTreeMap<ElementSet, Trop<T>>,
    ) -> Result<Self> {
        if rank > ground.len() {
            return Err(Error::RankExceedsGround {
                rank,
                n: ground.len(),
            });
        }
        let expected = ground.k_subsets(rank);
        if let Some(extra) = values
            .keys()
            .find(|s| s.len() != rank || !s.is_subset(ground))
        {
            return Err(Error::InvalidValuated(format!(
                "value given for {extra}, not a {rank}-subset of {ground}"
            )));
        }
        if let Some(missing) = expected.iter().find(|s| !values.contains_key(s)) {
            return Err(Error::InvalidValuated(format!(
                "missing value for {missing}"
            )));
        }
        let support: Vec<ElementSet> = values
            .iter()
            .filter(|(_, v)| v.is_finite())
            .map(|(s, _)| *s)
            .collect();
        if support.is_empty() {
            return Err(Error::ConstantInfinity);
        }
        let underlying = Matroid::new(ground, rank, support)
            .map_err(|e| Error::InvalidValuated(format!("support is not a matroid: {e}")))?;
        let check = check_pluecker(ground, rank, &values)?;
        if let Some((s, q)) = check.witness {
            return Err(Error::InvalidValuated(format!(
                "Plücker relation fails at S = {s}, {{{},{},{},{}}}",
                q[0] + 1,
                q[1] + 1,
                q[2] + 1,
                q[3] + 1
            )));
        }
        Ok(ValuatedMatroid {
            ground,
            rank,
            values,
            underlying,
        })
    }

    /// Builds from a value function given on some subsets; the rest are `Inf`.
    pub fn from_partial(
        ground: ElementSet,
        rank: usize,
        given: BTreeMap<ElementSet, Trop<T>>,
    ) -> Result<Self> {
        let mut values: BTreeMap<ElementSet, Trop<T>> = ground
            .k_subsets(rank)
            .into_iter()
            .map(|s| (s, Trop::Inf))
            .collect();
        for (s, v) in given {
            if !values.contains_key(&s) {
                return Err(Error::InvalidValuated(format!(
                    "value given for {s}, not a {rank}-subset of {ground}"
                )));
            }
            values.insert(s, v);
        }
        Self::new(ground, rank, values)
    }

    /// The trivial valuation: `0` on every basis of `m`.
    pub fn trivial(m: &Matroid) -> Self {
        let values = m
            .ground()
            .k_subsets(m.rank())
            .into_iter()
            .map(|s| {
                (
                    s,
                    if m.is_basis(s) {
                        Trop::zero()
                    } else {
                        Trop::Inf
                    },
                )
            })
            .collect();
        ValuatedMatroid {
            ground: m.ground(),
            rank: m.rank(),
            values,
            underlying: m.clone(),
        }
    }

    pub fn ground(&self) -> ElementSet {
        self.ground
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn values(&self) -> &BTreeMap<ElementSet, Trop<T>> {
        &self.values
    }

    /// `μ_B`; `Inf` for sets outside `C(ground, d)`.
    pub fn value(&self, b: ElementSet) -> Trop<T> {
        self.values.get(&b).cloned().unwrap_or(Trop::Inf)
    }

    pub fn underlying(&self) -> &Matroid {
        &self.underlying
    }

    /// Adds `c` to every finite value.
    pub fn shifted(&self, c: &T) -> Self {
        let values = self.values.iter().map(|(s, v)| (*s, v.shift(c))).collect();
        ValuatedMatroid {
            ground: self.ground,
            rank: self.rank,
            values,
            underlying: self.underlying.clone(),
        }
    }

    /// `μ ∖ F`: restriction to `C(E ∖ F, d)`; needs `E ∖ F` spanning.
    pub fn delete(&self, f: ElementSet) -> Result<Self> {
        let rest = self.ground.difference(f);
        if !self.underlying.is_spanning(rest) {
            return Err(Error::Precondition(format!(
                "deleting {f}: E \\ F is not spanning"
            )));
        }
        let values: BTreeMap<_, _> = self
            .values
            .iter()
            .filter(|(s, _)| s.is_disjoint(f))
            .map(|(s, v)| (*s, v.clone()))
            .collect();
        let underlying = self.underlying.delete(f)?;
        Ok(ValuatedMatroid {
            ground: rest,
            rank: self.rank,
            values,
            underlying,
        })
    }

    /// `μ / F`: `B ↦ μ(B ∪ F)`; needs `F` independent.
    pub fn contract(&self, f: ElementSet) -> Result<Self> {
        if !f.is_subset(self.ground) || !self.underlying.is_independent(f) {
            return Err(Error::Precondition(format!(
                "contracting {f}: F is not independent"
            )));
        }
        let rest = self.ground.difference(f);
        let rank = self.rank - f.len();
        let values: BTreeMap<_, _> = rest
            .k_subsets(rank)
            .into_iter()
            .map(|b| (b, self.value(b.union(f))))
            .collect();
        let underlying = self.underlying.contract(f)?;
        Ok(ValuatedMatroid {
            ground: rest,
            rank,
            values,
            underlying,
        })
    }

    /// Contraction by an arbitrary set: contract its lexicographically least
    /// basis `I`, then delete the remaining elements (loops after contracting `I`).
    pub fn contract_set(&self, f: ElementSet) -> Result<Self> {
        let i = self.underlying.lex_least_basis_of(f);
        let c = self.contract(i)?;
        c.delete(f.difference(i))
    }

    /// Whether `x` lies in the tropical linear space of `μ`.
    pub fn in_tropical_linear_space(&self, x: &TropVector<T>) -> Membership {
        for t in self.ground.k_subsets(self.rank + 1) {
            let terms: Vec<Trop<T>> = t
                .iter()
                .map(|i| self.value(t.remove(i)).otimes(x.get(i)))
                .collect();
            if !min_attained_twice(&terms) {
                return Membership {
                    member: false,
                    witness: Some(t),
                };
            }
        }
        Membership {
            member: true,
            witness: None,
        }
    }

    /// The matroid of `d`-sets minimizing `μ_S + Σ_{i∈S} x_i`.
    pub fn initial_matroid(&self, x: &TropVector<T>) -> Result<InitialMatroidResult<T>> {
        if let Some(j) = self.ground.iter().find(|&j| x.get(j).is_inf()) {
            return Err(Error::Precondition(format!(
                "initial matroid needs a finite point (coordinate {})",
                j + 1
            )));
        }
        let weighted: Vec<(ElementSet, Trop<T>)> = self
            .values
            .iter()
            .map(|(s, v)| (*s, s.iter().fold(v.clone(), |acc, i| acc.otimes(x.get(i)))))
            .collect();
        let min_value = weighted
            .iter()
            .map(|(_, w)| w.clone())
            .min()
            .unwrap_or(Trop::Inf);
        let bases: Vec<ElementSet> = weighted
            .iter()
            .filter(|(_, w)| *w == min_value)
            .map(|(s, _)| *s)
            .collect();
        let matroid = Matroid::new(self.ground, self.rank, bases)
            .map_err(|e| Error::Violation(format!("initial matroid is not a matroid: {e}")))?;
        Ok(InitialMatroidResult {
            matroid,
            point: x.clone(),
            min_value,
        })
    }

    /// Exact equality of representative functions.
    pub fn representatives_equal(&self, other: &Self) -> bool {
        self.ground == other.ground && self.rank == other.rank && self.values == other.values
    }

    /// Equality up to a global finite shift.
    pub fn equivalent(&self, other: &Self) -> bool {
        if self.ground != other.ground || self.rank != other.rank {
            return false;
        }
        let mut shift: Option<T> = None;
        for (s, v) in &self.values {
            let w = other.value(*s);
            match (v, &w) {
                (Trop::Inf, Trop::Inf) => {}
                (Trop::Fin(a), Trop::Fin(b)) => {
                    let d = b.clone() - a.clone();
                    match &shift {
                        None => shift = Some(d),
                        Some(t) if *t == d => {}
                        Some(_) => return false,
                    }
                }
                _ => return false,
            }
        }
        true
    }

    /// Shifts this representative so that it agrees with `reference` on `b0`.
    pub fn normalized_against(&self, reference: &Self, b0: ElementSet) -> Result<Self> {
        let c = reference
            .value(b0)
            .finite_diff(&self.value(b0))
            .ok_or_else(|| Error::Precondition(format!("{b0} is not a basis of both functions")))?;
        Ok(self.shifted(&c))
    }
}

impl<T: Scalar> fmt::Debug for ValuatedMatroid<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Valuated(rank {} on {}: ", self.rank, self.ground)?;
        f.debug_map()
            .entries(self.values.iter().filter(|(_, v)| v.is_finite()))
            .finish()?;
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    type V = ValuatedMatroid<Rational>;

    fn set(e: &[usize]) -> ElementSet {
        ElementSet::from_one_based(e).unwrap()
    }

    fn vals(
        n: usize,
        d: usize,
        f: impl Fn(ElementSet) -> Option<i64>,
    ) -> BTreeMap<ElementSet, Trop<Rational>> {
        ElementSet::full(n)
            .k_subsets(d)
            .into_iter()
            .map(|s| (s, f(s).map_or(Trop::Inf, Trop::int)))
            .collect()
    }

    /// `μ^{1,1}`: `1` on `{1,4}`, `0` elsewhere on `C([4], 2)`.
    fn mu11() -> V {
        V::new(
            ElementSet::full(4),
            2,
            vals(4, 2, |s| Some(i64::from(s == set(&[1, 4])))),
        )
        .unwrap()
    }

    fn trivial_u23() -> V {
        V::trivial(&Matroid::uniform(2, 3).unwrap())
    }

    #[test]
    fn pluecker_examples() {
        let zero = vals(4, 2, |_| Some(0));
        assert!(check_pluecker(ElementSet::full(4), 2, &zero).unwrap().holds);

        let bad = vals(4, 2, |s| {
            Some(i64::from(s == set(&[1, 2]) || s == set(&[1, 3])))
        });
        let c = check_pluecker(ElementSet::full(4), 2, &bad).unwrap();
        assert!(!c.holds);
        assert_eq!(c.witness, Some((ElementSet::EMPTY, [0, 1, 2, 3])));
        assert!(V::new(ElementSet::full(4), 2, bad).is_err());

        let good = vals(4, 2, |s| Some(i64::from(s == set(&[1, 4]))));
        assert!(check_pluecker(ElementSet::full(4), 2, &good).unwrap().holds);

        let mut missing = zero.clone();
        missing.remove(&set(&[1, 2]));
        assert!(check_pluecker(ElementSet::full(4), 2, &missing).is_err());
    }

    #[test]
    fn underlying_examples() {
        assert_eq!(trivial_u23().underlying(), &Matroid::uniform(2, 3).unwrap());
        assert_eq!(mu11().underlying(), &Matroid::uniform(2, 4).unwrap());
        let only12 = V::new(
            ElementSet::full(3),
            2,
            vals(3, 2, |s| (s == set(&[1, 2])).then_some(0)),
        )
        .unwrap();
        assert_eq!(only12.underlying().bases(), &[set(&[1, 2])]);
    }

    #[test]
    fn deletion_contraction_examples() {
        let d = mu11().delete(set(&[4])).unwrap();
        assert!(d.representatives_equal(&trivial_u23()));

        let c = trivial_u23().contract(set(&[1])).unwrap();
        assert_eq!(c.ground(), set(&[2, 3]));
        assert_eq!(c.rank(), 1);
        assert!(c.values().values().all(|v| *v == Trop::zero()));

        let c = mu11().contract(set(&[4])).unwrap();
        assert_eq!(c.value(set(&[1])), Trop::int(1));
        assert_eq!(c.value(set(&[2])), Trop::int(0));
        assert_eq!(c.value(set(&[3])), Trop::int(0));

        assert!(trivial_u23().delete(set(&[1, 2])).is_err());
        assert!(trivial_u23().contract(set(&[1, 2, 3])).is_err());
    }

    #[test]
    fn linear_space_membership() {
        let mu = trivial_u23();
        let x0 = TropVector::new(vec![Trop::int(0); 3]);
        assert!(mu.in_tropical_linear_space(&x0).member);
        let x = TropVector::new(vec![Trop::int(0), Trop::int(1), Trop::int(2)]);
        let m = mu.in_tropical_linear_space(&x);
        assert!(!m.member);
        assert_eq!(m.witness, Some(set(&[1, 2, 3])));
    }

    #[test]
    fn initial_matroid_examples() {
        let mu = trivial_u23();
        let r = mu
            .initial_matroid(&TropVector::new(vec![Trop::int(0); 3]))
            .unwrap();
        assert_eq!(r.matroid, Matroid::uniform(2, 3).unwrap());
        let r = mu
            .initial_matroid(&TropVector::new(vec![
                Trop::int(0),
                Trop::int(0),
                Trop::int(1),
            ]))
            .unwrap();
        assert_eq!(r.matroid.bases(), &[set(&[1, 2])]);
        assert_eq!(r.min_value, Trop::int(0));

        let r = mu11()
            .initial_matroid(&TropVector::new(vec![Trop::int(0); 4]))
            .unwrap();
        let expect: Vec<ElementSet> = ElementSet::full(4)
            .k_subsets(2)
            .into_iter()
            .filter(|&s| s != set(&[1, 4]))
            .collect();
        assert_eq!(r.matroid.bases(), expect.as_slice());

        let bad = TropVector::new(vec![Trop::int(0), Trop::Inf, Trop::int(0)]);
        assert!(mu.initial_matroid(&bad).is_err());
    }

    #[test]
    fn equality_notions() {
        let mu = mu11();
        assert!(mu.representatives_equal(&mu) && mu.equivalent(&mu));
        let five = Rational::from_i64(5);
        let sh = mu.shifted(&five);
        assert!(!mu.representatives_equal(&sh));
        assert!(mu.equivalent(&sh));
        let other = V::new(
            ElementSet::full(3),
            2,
            vals(3, 2, |s| Some(i64::from(s == set(&[1, 2])))),
        )
        .unwrap();
        assert!(!trivial_u23().representatives_equal(&other));
        assert!(!trivial_u23().equivalent(&other));
        let back = sh.normalized_against(&mu, set(&[1, 2])).unwrap();
        assert!(back.representatives_equal(&mu));
    }

    #[test]
    fn contract_set_handles_dependent_sets() {
        // Contracting all of U_{2,3} leaves the rank-0 matroid on nothing.
        let c = trivial_u23().contract_set(set(&[1, 2, 3])).unwrap();
        assert_eq!(c.rank(), 0);
        assert_eq!(c.value(ElementSet::EMPTY), Trop::zero());
    }
}
