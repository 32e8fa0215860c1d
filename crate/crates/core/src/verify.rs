//! Invariant suites run over a seeded corpus.

use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::corpus::{instance_rng, random_column, CorpusSpec};
use crate::error::{Error, Result};
use crate::extension::{
    extend, extensions_injective, meet, pointwise_min, present_extension_minimally, ExtensionColumn,
};
use crate::io::matrix_to_json;
use crate::matroid::maximal_presentation_of;
use crate::presentation::{class_counts, compute_dapx, decomposition, is_minimal, Presentation};
use crate::set::ElementSet;
use crate::Rational;

/// Pairs sampled per minimal instance by the `different` suite.
pub const INJECTIVITY_TRIALS: usize = 100;

const COLUMN_SALT: u64 = 0x9e37_79b9_7f4a_7c15;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Different,
    Minimal,
    Join,
    FoMaximal,
    Decompose,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Different,
        Suite::Minimal,
        Suite::Join,
        Suite::FoMaximal,
        Suite::Decompose,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Different => "different",
            Suite::Minimal => "minimal",
            Suite::Join => "join",
            Suite::FoMaximal => "fo-maximal",
            Suite::Decompose => "decompose",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

/// Result on one corpus instance.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub index: usize,
    pub label: String,
    /// `None` when the instance passed.
    pub failure: Option<String>,
    pub matrix: Value,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub spec: CorpusSpec,
    pub outcomes: Vec<Outcome>,
}

impl SuiteReport {
    pub fn passed(&self) -> usize {
        self.outcomes.iter().filter(|o| o.failure.is_none()).count()
    }

    pub fn all_passed(&self) -> bool {
        self.passed() == self.outcomes.len()
    }

    /// Summary with labels per instance and full inputs for failures.
    pub fn to_json(&self) -> Value {
        let failures: Vec<Value> = self
            .outcomes
            .iter()
            .filter_map(|o| {
                o.failure
                    .as_ref()
                    .map(|f| json!({"instance": o.index, "error": f, "matrix": o.matrix}))
            })
            .collect();
        json!({
            "suite": self.suite.name(),
            "n": self.spec.n,
            "d": self.spec.d,
            "count": self.spec.count,
            "seed": self.spec.seed,
            "status": if self.all_passed() { "PASS" } else { "FAIL" },
            "passed": self.passed(),
            "total": self.outcomes.len(),
            "verdicts": self.outcomes.iter().map(|o| o.label.clone()).collect::<Vec<_>>(),
            "failures": failures,
        })
    }
}

pub fn run_suite(suite: Suite, spec: &CorpusSpec) -> Result<SuiteReport> {
    spec.validate()?;
    let mut outcomes = Vec::with_capacity(spec.count);
    for k in 0..spec.count {
        let p = spec.instance(k)?;
        let (label, failure) = match check(suite, spec, k, &p) {
            Ok(label) => (label, None),
            Err(e) => ("ERROR".to_string(), Some(e.to_string())),
        };
        outcomes.push(Outcome {
            index: k,
            label,
            failure,
            matrix: matrix_to_json(p.matrix()),
        });
    }
    Ok(SuiteReport {
        suite,
        spec: spec.clone(),
        outcomes,
    })
}

fn columns(spec: &CorpusSpec, k: usize, count: usize) -> Vec<ExtensionColumn<Rational>> {
    let mut rng = instance_rng(spec.seed ^ COLUMN_SALT, k as u64);
    (0..count)
        .map(|_| ExtensionColumn::new(random_column(&mut rng, spec.d, &spec.value_grid)))
        .collect()
}

fn check(suite: Suite, spec: &CorpusSpec, k: usize, p: &Presentation<Rational>) -> Result<String> {
    match suite {
        Suite::Different => {
            let minimal = is_minimal(p)?;
            let seed = spec.seed ^ COLUMN_SALT.rotate_left(17);
            let verdict = extensions_injective(
                p,
                INJECTIVITY_TRIALS,
                seed.wrapping_add(k as u64),
                &spec.value_grid,
            )?;
            let expected = if minimal { "INJECTIVE" } else { "COLLISION" };
            if verdict.label() != expected {
                return Err(Error::Violation(format!(
                    "verdict {} but is_minimal = {minimal}",
                    verdict.label()
                )));
            }
            Ok(expected.to_string())
        }
        Suite::Minimal => {
            let star = p.ncols() - 1;
            if p.ncols() < 2 || p.mu().underlying().coloops().contains(star) {
                return Ok("SKIPPED_COLOOP".to_string());
            }
            present_extension_minimally(p.mu(), p)?;
            Ok("PASS".to_string())
        }
        Suite::Join => {
            let cols = columns(spec, k, 3);
            let (x, y, z) = (&cols[0], &cols[1], &cols[2]);
            let xy = meet(p, x, y)?;
            let same = |a: &ExtensionColumn<Rational>,
                        b: &ExtensionColumn<Rational>|
             -> Result<bool> { Ok(extend(p, a)? == extend(p, b)?) };
            if *meet(p, x, x)?.values() != *extend(p, x)?.values() {
                return Err(Error::Violation("meet is not idempotent".into()));
            }
            if meet(p, y, x)? != xy {
                return Err(Error::Violation("meet is not commutative".into()));
            }
            let left = pointwise_min(&xy, &extend(p, z)?)?;
            let right = pointwise_min(&extend(p, x)?, &meet(p, y, z)?)?;
            if left != right || !same(&x.min(y).min(z), &x.min(&y.min(z)))? {
                return Err(Error::Violation("meet is not associative".into()));
            }
            Ok("PASS".to_string())
        }
        Suite::FoMaximal => {
            let apx = compute_dapx(p)?;
            let maximal = maximal_presentation_of(p.mu().underlying())?;
            let mut got: Vec<ElementSet> = apx.apices.supports();
            got.sort();
            if got != maximal.sorted_sets() {
                return Err(Error::Violation(
                    "dapx support differs from the maximal presentation".into(),
                ));
            }
            Ok("PASS".to_string())
        }
        Suite::Decompose => {
            let dec = decomposition(p)?;
            if dec.total_multiplicity() != p.rank() {
                return Err(Error::Violation(format!(
                    "multiplicities sum to {}",
                    dec.total_multiplicity()
                )));
            }
            for (c, n) in class_counts(&dec) {
                let class = &dec.classes[c];
                let t = class.matroid.t_of()?;
                if t != class.multiplicity as i64 || n != class.multiplicity {
                    return Err(Error::Violation(format!(
                        "class {} has {n} rows, multiplicity {}, t(M) = {t}",
                        c + 1,
                        class.multiplicity
                    )));
                }
            }
            Ok("PASS".to_string())
        }
    }
}
