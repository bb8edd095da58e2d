//! Deterministic verification harness: configuration, seeded positive
//! sampling, symbolic-versus-sampled mode selection, and replayable
//! reports.
//!
//! Every check is replayable from (identity name, seed): the per-identity
//! stream is seeded with `seed ^ fnv1a(identity)` and each sample index
//! derives its own generator, so reports are independent of thread
//! scheduling and identical across runs. Reports deliberately carry no
//! timestamps or timings; equal configurations must produce byte-identical
//! output.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use crate::error::Result;
use crate::ratfunc::{RationalFunction, RationalPoint, VarTable};

/// Output format for CLI-facing rendering.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Dot,
    Text,
}

/// Run configuration shared by all verification suites.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Config {
    /// Master seed; each identity derives an independent stream from it.
    pub seed: u64,
    /// Number of sample points for sampled checks.
    pub samples: u32,
    /// Sampled rationals are p/q with 1 <= p, q <= coeff_bound.
    pub coeff_bound: u64,
    /// Maximum number of term products allowed for a symbolic certificate;
    /// identities that would exceed it are checked at samples instead.
    pub term_budget: u64,
    /// Rendering format for CLI output.
    pub output_format: OutputFormat,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            seed: 0,
            samples: 100,
            coeff_bound: 1000,
            term_budget: 2_000_000,
            output_format: OutputFormat::Json,
        }
    }
}

/// 64-bit FNV-1a hash, used to derive per-identity sample streams.
pub fn fnv1a(s: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in s.as_bytes() {
        h ^= u64::from(*b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

/// Generator for sample index `k` of the named identity. Indexing by
/// sample keeps parallel runs deterministic.
pub fn rng_for(config: &Config, identity: &str, k: u32) -> ChaCha8Rng {
    let base = config.seed ^ fnv1a(identity);
    ChaCha8Rng::seed_from_u64(
        base.wrapping_add((u64::from(k) + 1).wrapping_mul(0x9e37_79b9_7f4a_7c15)),
    )
}

/// A strictly positive rational p/q with 1 <= p, q <= coeff_bound.
pub fn sample_positive_rational(rng: &mut ChaCha8Rng, coeff_bound: u64) -> BigRational {
    let b = coeff_bound.max(1);
    let p = rng.gen_range(1..=b);
    let q = rng.gen_range(1..=b);
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// A strictly positive point covering every variable of the table.
pub fn sample_point(rng: &mut ChaCha8Rng, vars: &VarTable, coeff_bound: u64) -> RationalPoint {
    let mut p = RationalPoint::new();
    for n in vars.names() {
        p.set(n, sample_positive_rational(rng, coeff_bound));
    }
    p
}

/// Number of distinct values p/q with 1 <= p, q <= bound: the size of the
/// sample value space entering the identity-testing margin. Exact via a
/// totient sieve for moderate bounds, and a (6/pi^2)b^2 lower estimate
/// beyond that.
pub fn distinct_positive_rationals(bound: u64) -> u64 {
    if bound == 0 {
        return 0;
    }
    if bound <= 1_000_000 {
        let b = bound as usize;
        let mut phi: Vec<u64> = (0..=b as u64).collect();
        for i in 2..=b {
            if phi[i] == i as u64 {
                let mut j = i;
                while j <= b {
                    phi[j] -= phi[j] / i as u64;
                    j += i;
                }
            }
        }
        // Distinct fractions in lowest terms: 2*sum(phi(k), k<=b) - 1.
        2 * phi[1..=b].iter().sum::<u64>() - 1
    } else {
        ((0.6079 * (bound as f64) * (bound as f64)) as u64).max(1)
    }
}

/// How a report's verdict was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Exact certificate: polynomial identity after cross-multiplication.
    Symbolic,
    /// Exact evaluation at seeded positive rational points.
    Sampled,
}

/// A point where the two sides disagreed, with both rendered values.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Counterexample {
    pub point: BTreeMap<String, String>,
    pub lhs: String,
    pub rhs: String,
}

const COUNTEREXAMPLE_CAP: usize = 5;

/// Replayable outcome of one identity check.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerificationReport {
    pub identity: String,
    pub mode: Mode,
    /// Number of sample points used (0 for a symbolic certificate).
    pub samples: u32,
    pub seed: u64,
    pub passed: bool,
    pub counterexamples: Vec<Counterexample>,
    /// Sampled mode only: total degree bound of the cleared difference.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree_bound: Option<i64>,
    /// Sampled mode only: stated identity-testing margin.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub margin: Option<String>,
    /// Free-form notes (recorded conventions, finding summaries).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<String>,
}

impl VerificationReport {
    pub fn symbolic(identity: &str, seed: u64, passed: bool) -> Self {
        VerificationReport {
            identity: identity.to_string(),
            mode: Mode::Symbolic,
            samples: 0,
            seed,
            passed,
            counterexamples: Vec::new(),
            degree_bound: None,
            margin: None,
            details: None,
        }
    }

    pub fn with_details(mut self, details: impl Into<String>) -> Self {
        self.details = Some(details.into());
        self
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serialization cannot fail")
    }

    /// One-line text rendering used by the CLI text format.
    pub fn to_line(&self) -> String {
        let mode = match self.mode {
            Mode::Symbolic => "symbolic".to_string(),
            Mode::Sampled => format!("sampled n={}", self.samples),
        };
        format!(
            "{} {} [{}]{}",
            if self.passed { "PASS" } else { "FAIL" },
            self.identity,
            mode,
            match &self.details {
                Some(d) => format!(" ({d})"),
                None => String::new(),
            }
        )
    }
}

fn margin_text(degree_bound: i64, coeff_bound: u64, samples: u32) -> String {
    let space = distinct_positive_rationals(coeff_bound);
    format!(
        "value space {} distinct positive rationals; per-sample false-pass bound \
         degree/space = {}/{}; {} independent samples",
        space, degree_bound, space, samples
    )
}

/// Sampled check of a pointwise predicate. The closure receives a strictly
/// positive point over `vars` and returns Ok(None) on agreement,
/// Ok(Some((lhs, rhs))) on disagreement, or Err for an unlucky evaluation
/// (pole); unlucky points are redrawn from the same per-index stream.
pub fn sampled_report<F>(
    config: &Config,
    identity: &str,
    vars: &VarTable,
    degree_bound: i64,
    f: F,
) -> VerificationReport
where
    F: Fn(&RationalPoint) -> Result<Option<(String, String)>> + Sync,
{
    let outcomes: Vec<Option<Counterexample>> = (0..config.samples)
        .into_par_iter()
        .map(|k| {
            let mut rng = rng_for(config, identity, k);
            for _attempt in 0..64 {
                let point = sample_point(&mut rng, vars, config.coeff_bound);
                match f(&point) {
                    Ok(None) => return None,
                    Ok(Some((lhs, rhs))) => {
                        return Some(Counterexample {
                            point: point.display_map(),
                            lhs,
                            rhs,
                        })
                    }
                    Err(_) => continue,
                }
            }
            Some(Counterexample {
                point: BTreeMap::new(),
                lhs: "evaluation failed at 64 redraws".into(),
                rhs: String::new(),
            })
        })
        .collect();
    let mut counterexamples: Vec<Counterexample> = outcomes.into_iter().flatten().collect();
    let passed = counterexamples.is_empty();
    counterexamples.truncate(COUNTEREXAMPLE_CAP);
    VerificationReport {
        identity: identity.to_string(),
        mode: Mode::Sampled,
        samples: config.samples,
        seed: config.seed,
        passed,
        counterexamples,
        degree_bound: Some(degree_bound),
        margin: Some(margin_text(
            degree_bound,
            config.coeff_bound,
            config.samples,
        )),
        details: None,
    }
}

/// Check `lhs == rhs` as rational functions: symbolically when the
/// cross-multiplication stays within the term budget, otherwise at
/// samples.
pub fn check_rf_identity(
    config: &Config,
    identity: &str,
    lhs: &RationalFunction,
    rhs: &RationalFunction,
) -> VerificationReport {
    let cost = lhs.equiv_cost(rhs);
    if cost <= config.term_budget {
        let passed = lhs.equiv(rhs).unwrap_or(false);
        let mut report = VerificationReport::symbolic(identity, config.seed, passed);
        if !passed {
            // Render one disagreeing point for the record.
            for k in 0..config.samples.max(1) {
                let mut rng = rng_for(config, identity, k);
                let point = sample_point(&mut rng, lhs.vars(), config.coeff_bound);
                if let (Ok(a), Ok(b)) = (lhs.eval(&point), rhs.eval(&point)) {
                    if a != b {
                        report.counterexamples.push(Counterexample {
                            point: point.display_map(),
                            lhs: a.to_string(),
                            rhs: b.to_string(),
                        });
                        break;
                    }
                }
            }
        }
        report
    } else {
        let degree_bound = lhs.equiv_degree_bound(rhs);
        sampled_report(config, identity, lhs.vars(), degree_bound, |point| {
            let a = lhs.eval(point)?;
            let b = rhs.eval(point)?;
            if a == b {
                Ok(None)
            } else {
                Ok(Some((a.to_string(), b.to_string())))
            }
        })
    }
}

/// Aggregate of one verification suite run.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    pub reports: Vec<VerificationReport>,
    /// Documented observations that are findings rather than failures.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub findings: Option<serde_json::Value>,
}

impl SuiteReport {
    pub fn new(suite: &str, reports: Vec<VerificationReport>) -> Self {
        let passed = reports.iter().all(|r| r.passed);
        SuiteReport {
            suite: suite.to_string(),
            passed,
            reports,
            findings: None,
        }
    }

    pub fn with_findings(mut self, findings: serde_json::Value) -> Self {
        self.findings = Some(findings);
        self
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("suite serialization cannot fail")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfunc::mono;
    use num_traits::One;

    #[test]
    fn test_fnv1a_known_values() {
        // Standard FNV-1a test vectors.
        assert_eq!(fnv1a(""), 0xcbf29ce484222325);
        assert_eq!(fnv1a("a"), 0xaf63dc4c8601ec8c);
        assert_eq!(fnv1a("foobar"), 0x85944171f73967e8);
    }

    #[test]
    fn test_sampling_is_replayable() {
        let cfg = Config::default();
        let mut a = rng_for(&cfg, "demo", 3);
        let mut b = rng_for(&cfg, "demo", 3);
        for _ in 0..10 {
            assert_eq!(
                sample_positive_rational(&mut a, cfg.coeff_bound),
                sample_positive_rational(&mut b, cfg.coeff_bound)
            );
        }
        let mut c = rng_for(&cfg, "demo", 4);
        let va = sample_positive_rational(&mut rng_for(&cfg, "demo", 3), cfg.coeff_bound);
        let vc = sample_positive_rational(&mut c, cfg.coeff_bound);
        assert_ne!((va, 3), (vc, 3), "distinct indices give distinct streams");
    }

    #[test]
    fn test_sampled_values_positive_and_bounded() {
        let cfg = Config::default();
        let mut rng = rng_for(&cfg, "bounds", 0);
        for _ in 0..200 {
            let v = sample_positive_rational(&mut rng, cfg.coeff_bound);
            assert!(v > BigRational::from(BigInt::from(0)));
            assert!(v.numer() <= &BigInt::from(1000) && v.denom() <= &BigInt::from(1000));
        }
    }

    #[test]
    fn test_value_space_size() {
        // 1 <= p, q <= 3 gives {1/3, 1/2, 2/3, 1, 3/2, 2, 3}: seven values.
        assert_eq!(distinct_positive_rationals(3), 7);
        let s = distinct_positive_rationals(1000);
        assert!(
            s >= 600_000,
            "default value space must clear the stated margin, got {s}"
        );
    }

    #[test]
    fn test_check_rf_identity_symbolic_modes() {
        let cfg = Config::default();
        let t = VarTable::x_chart();
        let lhs = RationalFunction::new(
            &mono(&t, 1, &[("x0", 2)]) - &mono(&t, 1, &[]),
            &mono(&t, 1, &[("x0", 1)]) + &mono(&t, 1, &[]),
        )
        .unwrap();
        let rhs = RationalFunction::from_poly(&mono(&t, 1, &[("x0", 1)]) - &mono(&t, 1, &[]));
        let r = check_rf_identity(&cfg, "difference-quotient", &lhs, &rhs);
        assert!(r.passed);
        assert_eq!(r.mode, Mode::Symbolic);

        let bad = RationalFunction::from_poly(mono(&t, 1, &[("x1", 1)]));
        let r = check_rf_identity(&cfg, "mismatch", &lhs, &bad);
        assert!(!r.passed);
        assert!(!r.counterexamples.is_empty());
    }

    #[test]
    fn test_check_rf_identity_sampled_mode() {
        let cfg = Config {
            term_budget: 1,
            ..Config::default()
        };
        let t = VarTable::x_chart();
        let lhs = RationalFunction::new(
            &mono(&t, 1, &[("x0", 2)]) - &mono(&t, 1, &[("x1", 2)]),
            &mono(&t, 1, &[("x0", 1)]) + &mono(&t, 1, &[("x1", 1)]),
        )
        .unwrap();
        let rhs =
            RationalFunction::from_poly(&mono(&t, 1, &[("x0", 1)]) - &mono(&t, 1, &[("x1", 1)]));
        let r = check_rf_identity(&cfg, "sampled-difference-quotient", &lhs, &rhs);
        assert!(r.passed);
        assert_eq!(r.mode, Mode::Sampled);
        assert_eq!(r.samples, 100);
        assert!(r.margin.is_some() && r.degree_bound.is_some());
    }

    #[test]
    fn test_reports_are_deterministic() {
        let cfg = Config {
            term_budget: 1,
            ..Config::default()
        };
        let t = VarTable::x_chart();
        let one = RationalFunction::one(&t);
        let f = RationalFunction::new(
            &mono(&t, 1, &[("x2", 1)]) + &mono(&t, 1, &[("x3", 1)]),
            &mono(&t, 1, &[("x3", 1)]) + &mono(&t, 1, &[("x2", 1)]),
        )
        .unwrap();
        assert!(f.num().leading().unwrap().1.is_one());
        let a = check_rf_identity(&cfg, "self-over-self", &f, &one).to_json();
        let b = check_rf_identity(&cfg, "self-over-self", &f, &one).to_json();
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }
}
