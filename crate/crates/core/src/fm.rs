//! Exact linear feasibility over the rationals: incremental row reduction
//! for equalities and Fourier–Motzkin elimination for `≥` constraints.

use num_traits::{One, Signed, Zero};

use crate::Rational;

/// `Σ coeffs[j]·v_j + constant`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Affine {
    pub coeffs: Vec<Rational>,
    pub constant: Rational,
}

impl Affine {
    pub fn zero(nvars: usize) -> Self {
        Affine {
            coeffs: vec![Rational::zero(); nvars],
            constant: Rational::zero(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn add_var(&mut self, j: usize, c: &Rational) {
        self.coeffs[j] += c;
    }

    pub fn eval(&self, v: &[Rational]) -> Rational {
        self.coeffs
            .iter()
            .zip(v)
            .fold(self.constant.clone(), |acc, (c, x)| acc + c * x)
    }

    fn scaled(&self, k: &Rational) -> Affine {
        Affine {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
            constant: &self.constant * k,
        }
    }

    fn plus(&self, other: &Affine) -> Affine {
        Affine {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
            constant: &self.constant + &other.constant,
        }
    }

    /// Replaces `v_j` by `expr` (which must not mention `v_j`).
    fn substitute(&self, j: usize, expr: &Affine) -> Affine {
        if self.coeffs[j].is_zero() {
            return self.clone();
        }
        let k = self.coeffs[j].clone();
        let mut out = self.clone();
        out.coeffs[j] = Rational::zero();
        out.plus(&expr.scaled(&k))
    }

    /// Scales so the first nonzero coefficient has absolute value one.
    fn normalized(&self) -> Affine {
        match self.coeffs.iter().find(|c| !c.is_zero()) {
            Some(c) => self.scaled(&(Rational::one() / c.abs())),
            None => self.clone(),
        }
    }
}

/// Equalities `expr = 0` kept in reduced row echelon form: every pivot
/// variable is expressed through non-pivot variables.
#[derive(Clone, Debug, Default)]
pub struct Reduced {
    nvars: usize,
    /// `(pivot, expr)` meaning `v_pivot = expr`.
    pivots: Vec<(usize, Affine)>,
}

impl Reduced {
    pub fn new(nvars: usize) -> Self {
        Reduced {
            nvars,
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn free_count(&self) -> usize {
        self.nvars - self.pivots.len()
    }

    /// Rewrites `e` in the free variables only.
    pub fn reduce(&self, e: &Affine) -> Affine {
        self.pivots
            .iter()
            .fold(e.clone(), |acc, (p, expr)| acc.substitute(*p, expr))
    }

    /// Adds `e = 0`. Returns `false` (leaving `self` unchanged) if the
    /// system becomes inconsistent.
    pub fn add(&mut self, e: &Affine) -> bool {
        let r = self.reduce(e);
        let Some(p) = r.coeffs.iter().position(|c| !c.is_zero()) else {
            return r.constant.is_zero();
        };
        let k = -Rational::one() / &r.coeffs[p];
        let mut expr = r.scaled(&k);
        expr.coeffs[p] = Rational::zero();
        for (_, other) in &mut self.pivots {
            *other = other.substitute(p, &expr);
        }
        self.pivots.push((p, expr));
        true
    }

    /// Values for all variables given values of the free ones.
    pub fn complete(&self, free_values: &[Rational]) -> Vec<Rational> {
        let mut v = free_values.to_vec();
        for (p, expr) in &self.pivots {
            v[*p] = expr.eval(free_values);
        }
        v
    }
}

/// Fourier–Motzkin feasibility of `{ e ≥ 0 : e ∈ ineqs }`. Returns a
/// satisfying point if one exists.
pub fn feasible_point(nvars: usize, ineqs: &[Affine]) -> Option<Vec<Rational>> {
    let mut levels: Vec<Vec<Affine>> = Vec::with_capacity(nvars + 1);
    let mut cur = prune(ineqs.to_vec())?;
    for j in 0..nvars {
        levels.push(cur.clone());
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for e in cur {
            if e.coeffs[j].is_positive() {
                pos.push(e);
            } else if e.coeffs[j].is_negative() {
                neg.push(e);
            } else {
                rest.push(e);
            }
        }
        for p in &pos {
            for q in &neg {
                let a = p.scaled(&(Rational::one() / &p.coeffs[j]));
                let b = q.scaled(&(Rational::one() / -&q.coeffs[j]));
                let mut c = a.plus(&b);
                c.coeffs[j] = Rational::zero();
                rest.push(c);
            }
        }
        cur = prune(rest)?;
    }
    let mut v = vec![Rational::zero(); nvars];
    for j in (0..nvars).rev() {
        let mut lo: Option<Rational> = None;
        let mut hi: Option<Rational> = None;
        for e in &levels[j] {
            let c = e.coeffs[j].clone();
            if c.is_zero() {
                continue;
            }
            let mut rest = e.clone();
            rest.coeffs[j] = Rational::zero();
            let bound = -rest.eval(&v) / &c;
            if c.is_positive() {
                if lo.as_ref().is_none_or(|l| bound > *l) {
                    lo = Some(bound);
                }
            } else if hi.as_ref().is_none_or(|h| bound < *h) {
                hi = Some(bound);
            }
        }
        v[j] = match (lo, hi) {
            (Some(l), Some(h)) => {
                debug_assert!(l <= h);
                if l <= Rational::zero() && Rational::zero() <= h {
                    Rational::zero()
                } else {
                    l
                }
            }
            (Some(l), None) => l.max(Rational::zero()),
            (None, Some(h)) => h.min(Rational::zero()),
            (None, None) => Rational::zero(),
        };
    }
    debug_assert!(ineqs.iter().all(|e| !e.eval(&v).is_negative()));
    Some(v)
}

/// Drops trivially true and duplicate constraints; `None` if one is
/// trivially false.
fn prune(ineqs: Vec<Affine>) -> Option<Vec<Affine>> {
    let mut out: Vec<Affine> = Vec::with_capacity(ineqs.len());
    for e in ineqs {
        if e.is_constant() {
            if e.constant.is_negative() {
                return None;
            }
            continue;
        }
        out.push(e.normalized());
    }
    out.sort();
    // Among constraints with equal coefficients keep the tightest one.
    out.dedup_by(|later, earlier| {
        if later.coeffs == earlier.coeffs {
            if later.constant < earlier.constant {
                earlier.constant = later.constant.clone();
            }
            true
        } else {
            false
        }
    });
    Some(out)
}

/// Feasibility of equalities plus `≥ 0` constraints; returns a full point.
pub fn solve(eqs: &Reduced, ineqs: &[Affine]) -> Option<Vec<Rational>> {
    let n = eqs.nvars;
    let reduced: Vec<Affine> = ineqs.iter().map(|e| eqs.reduce(e)).collect();
    let free = feasible_point(n, &reduced)?;
    Some(eqs.complete(&free))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Scalar;

    fn q(s: &str) -> Rational {
        Rational::parse_text(s).unwrap()
    }

    fn aff(c: &[&str], k: &str) -> Affine {
        Affine {
            coeffs: c.iter().map(|s| q(s)).collect(),
            constant: q(k),
        }
    }

    #[test]
    fn interval_and_empty() {
        // x ≥ 1, x ≤ 3
        let p = feasible_point(1, &[aff(&["1"], "-1"), aff(&["-1"], "3")]).unwrap();
        assert_eq!(p, vec![q("1")]);
        // x ≥ 2, x ≤ 1
        assert!(feasible_point(1, &[aff(&["1"], "-2"), aff(&["-1"], "1")]).is_none());
    }

    #[test]
    fn two_variables() {
        // x + y ≥ 1, x − y ≥ 0, x ≤ 1/2  ⇒ x = 1/2, y = 1/2
        let ineqs = [
            aff(&["1", "1"], "-1"),
            aff(&["1", "-1"], "0"),
            aff(&["-1", "0"], "1/2"),
        ];
        let p = feasible_point(2, &ineqs).unwrap();
        assert!(ineqs.iter().all(|e| e.eval(&p) >= q("0")));
        assert!(feasible_point(2, &[aff(&["1", "1"], "-1"), aff(&["-1", "-1"], "0")]).is_none());
    }

    #[test]
    fn equalities_reduce() {
        let mut r = Reduced::new(3);
        assert!(r.add(&aff(&["1", "-1", "0"], "0"))); // x = y
        assert!(r.add(&aff(&["0", "1", "1"], "-2"))); // y + z = 2
        assert!(!r.add(&aff(&["1", "0", "1"], "-3"))); // x + z = 3 contradicts
        assert!(r.add(&aff(&["1", "0", "1"], "-2"))); // implied
        assert_eq!(r.rank(), 2);
        let v = solve(&r, &[aff(&["0", "0", "1"], "-5")]).unwrap();
        assert_eq!(v[0], v[1]);
        assert_eq!(&v[1] + &v[2], q("2"));
        assert!(v[2] >= q("5"));
    }
}
