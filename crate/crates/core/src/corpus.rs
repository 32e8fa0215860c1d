//! Seeded random instances.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::scalar::Scalar;
use crate::set::check_ground;
use crate::trop::{Trop, TropMatrix, TropVector};
use crate::Rational;

/// Parameters of a random presentation corpus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusSpec {
    pub n: usize,
    pub d: usize,
    pub count: usize,
    pub seed: u64,
    /// Probability that an entry is `Inf`, as `(numerator, denominator)`.
    pub inf_probability: (u32, u32),
    pub value_grid: Vec<Rational>,
}

impl CorpusSpec {
    pub fn new(n: usize, d: usize, count: usize, seed: u64) -> Result<Self> {
        let spec = CorpusSpec {
            n,
            d,
            count,
            seed,
            inf_probability: (1, 3),
            value_grid: default_grid(),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        check_ground(self.n)?;
        if self.d == 0 || self.d > self.n {
            return Err(Error::RankExceedsGround {
                rank: self.d,
                n: self.n,
            });
        }
        let (a, b) = self.inf_probability;
        if b == 0 || a >= b {
            return Err(Error::Precondition(
                "inf probability must lie in [0, 1)".into(),
            ));
        }
        if self.value_grid.is_empty() {
            return Err(Error::Precondition("value grid is empty".into()));
        }
        Ok(())
    }

    /// The `count` presentations of this corpus, each drawn from its own
    /// stream so that instance `k` does not depend on `count`.
    pub fn presentations(&self) -> Result<Vec<Presentation<Rational>>> {
        (0..self.count).map(|k| self.instance(k)).collect()
    }

    pub fn instance(&self, k: usize) -> Result<Presentation<Rational>> {
        self.validate()?;
        let mut rng = instance_rng(self.seed, k as u64);
        random_presentation(
            &mut rng,
            self.d,
            self.n,
            self.inf_probability,
            &self.value_grid,
        )
    }
}

/// `{-2, -1, -1/2, 0, 1/2, 1, 2, 3}`.
pub fn default_grid() -> Vec<Rational> {
    ["-2", "-1", "-1/2", "0", "1/2", "1", "2", "3"]
        .iter()
        .map(|s| Rational::parse_text(s).expect("grid literal"))
        .collect()
}

/// A generator for the `k`-th task derived from a base seed.
pub fn instance_rng(seed: u64, k: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(k);
    rng
}

fn draw<R: Rng>(rng: &mut R, inf: (u32, u32), grid: &[Rational]) -> Trop<Rational> {
    if rng.gen_ratio(inf.0, inf.1) {
        Trop::Inf
    } else {
        Trop::Fin(grid.choose(rng).expect("non-empty grid").clone())
    }
}

/// A random `d × n` presentation with no all-`Inf` row and a finite maximal
/// minor, redrawn until both hold.
pub fn random_presentation<R: Rng>(
    rng: &mut R,
    d: usize,
    n: usize,
    inf: (u32, u32),
    grid: &[Rational],
) -> Result<Presentation<Rational>> {
    loop {
        let rows: Vec<Vec<Trop<Rational>>> = (0..d)
            .map(|_| (0..n).map(|_| draw(rng, inf, grid)).collect())
            .collect();
        if rows.iter().any(|r| r.iter().all(Trop::is_inf)) {
            continue;
        }
        match Presentation::new(TropMatrix::new(rows)?) {
            Ok(p) => return Ok(p),
            Err(Error::ConstantInfinity) => continue,
            Err(e) => return Err(e),
        }
    }
}

/// A random extension column: grid values, `Inf` with probability `1/(d+2)`.
pub fn random_column<R: Rng>(rng: &mut R, d: usize, grid: &[Rational]) -> TropVector<Rational> {
    TropVector::new((0..d).map(|_| draw(rng, (1, d as u32 + 2), grid)).collect())
}

/// A random column that is not all `Inf`.
pub fn random_finite_column<R: Rng>(
    rng: &mut R,
    d: usize,
    grid: &[Rational],
) -> TropVector<Rational> {
    loop {
        let x = random_column(rng, d, grid);
        if !x.support().is_empty() {
            return x;
        }
    }
}
