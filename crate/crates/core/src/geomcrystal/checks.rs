//! Verification suites for the geometric-crystal layer: the thirty chart
//! coefficient identities, the chart-change suites, the operator
//! cross-checks, the crystal axioms with the empirically resolved index
//! convention, and the Verma composition relations.

use num_rational::BigRational;
use num_traits::One;
use serde_json::json;

use super::formulas;
use super::operators::{self, apply_composition, apply_explicit, fixes_at_one};
use super::sigma;
use super::{build_v, CrystalChart};
use crate::error::Result;
use crate::g2module::{CartanMatrix, BASIS};
use crate::ratfunc::{rat_pow, RationalFunction, RationalPoint, VarTable};
use crate::report::{
    check_rf_identity, rng_for, sample_point, sampled_report, Config, SuiteReport,
    VerificationReport,
};

/// The thirty coefficient identities: each basis coefficient of the two
/// expanded chart products equals its closed form, certified by exact
/// symbolic equality.
pub fn lemma_suite(config: &Config) -> SuiteReport {
    let mut reports = Vec::with_capacity(30);
    let v1 = build_v(&CrystalChart::w1());
    for b in BASIS {
        let name = format!("lemma51.X{}", b.label());
        reports.push(check_rf_identity(
            config,
            &name,
            v1.get(b),
            &formulas::x_named(b),
        ));
    }
    let v2 = build_v(&CrystalChart::w2());
    for b in BASIS {
        let name = format!("lemma51.Y{}", b.label());
        reports.push(check_rf_identity(
            config,
            &name,
            v2.get(b),
            &formulas::y_named(b),
        ));
    }
    SuiteReport::new("lemma51", reports)
}

/// The chart-change suite: the defining proportionality equation, the
/// inverse round trip, and the recorded discrepancy of the printed sixth
/// coordinate (a finding, not a failure, since the solved coordinate is
/// what the library uses).
pub fn sigma_suite(config: &Config) -> SuiteReport {
    let reports = vec![
        sigma::check_defining_equation(config),
        sigma::check_inverse(config),
    ];
    let xt = VarTable::x_chart();
    let sig = sigma::sigma_symbolic();
    let stored = &sig[5];
    // The printed form is evaluated factor by factor at sampled points;
    // normalizing it into a single fraction is far more expensive than
    // every other formula and buys nothing here.  The check passes when
    // the printed and solved coordinates disagree at every sample: two
    // rational functions that agreed at random points would be equal, so
    // a recorded coincidence would mean the discrepancy is not real.
    let parts_bound = formulas::a_formula().cleared_degree()
        + formulas::m_formula().cleared_degree()
        + formulas::n_formula().cleared_degree()
        + formulas::x2().cleared_degree()
        + sig[1].cleared_degree()
        + 2 * sig[3].cleared_degree()
        + 3 * sig[4].cleared_degree()
        + stored.cleared_degree()
        + 6;
    let discrepancy_report = sampled_report(
        config,
        "sigma.y5_printed_differs_from_solved",
        &xt,
        parts_bound,
        |p| {
            let printed = sigma::sigma_y5_printed_at(p)?;
            let solved = stored.eval(p)?;
            if printed == solved {
                return Ok(Some((printed.to_string(), solved.to_string())));
            }
            Ok(None)
        },
    );
    let ones = RationalPoint::all_ones(&xt);
    let findings = json!({
        "y5_printed": {
            "printed_at_all_ones": sigma::sigma_y5_printed_at(&ones)
                .expect("no pole at ones")
                .to_string(),
            "solved_at_all_ones": stored.eval(&ones).expect("no pole at ones").to_string(),
            "note": "the printed sixth coordinate does not satisfy the defining \
                     proportionality equation; the library uses the coordinate solved \
                     from the one component equation that is linear in it",
            "discrepancy_check": discrepancy_report.to_json(),
        }
    });
    SuiteReport::new("sigma", reports).with_findings(findings)
}

fn symbolic_report(identity: &str, seed: u64, outcomes: &[(String, bool)]) -> VerificationReport {
    let passed = outcomes.iter().all(|(_, ok)| *ok);
    let mut rep = VerificationReport::symbolic(identity, seed, passed);
    if !passed {
        let failed: Vec<&str> = outcomes
            .iter()
            .filter(|(_, ok)| !ok)
            .map(|(n, _)| n.as_str())
            .collect();
        rep = rep.with_details(format!("failed: {}", failed.join(", ")));
    }
    rep
}

fn max_cleared(fs: &[RationalFunction]) -> i64 {
    fs.iter()
        .map(RationalFunction::cleared_degree)
        .max()
        .unwrap_or(0)
}

/// Cross-checks of the operator layer: closed-form index-1 and index-2
/// updates against the general prefix-monomial action, the closed-form
/// affine update against transport through the chart change, and the
/// symbolic pullbacks of the affine invariants.
pub fn operator_reports(config: &Config) -> Vec<VerificationReport> {
    let w1 = CrystalChart::w1();
    let mut reports = Vec::new();

    for i in [1usize, 2] {
        let general = operators::schubert_action(&w1, i).expect("index occurs in the word");
        let explicit = operators::explicit_cached(i);
        let outcomes: Vec<(String, bool)> = (0..6)
            .map(|k| {
                (
                    format!("x{k}"),
                    explicit[k].equiv(&general[k]).unwrap_or(false),
                )
            })
            .collect();
        reports.push(
            symbolic_report(
                &format!("operators.e{i}_matches_schubert"),
                config.seed,
                &outcomes,
            )
            .with_details("6 coordinate identities, exact cross-multiplication"),
        );
    }

    let invariant_outcomes = vec![
        (
            "eps1".to_string(),
            operators::schubert_eps(&w1, 1)
                .and_then(|f| f.equiv(&formulas::eps1()))
                .unwrap_or(false),
        ),
        (
            "eps2".to_string(),
            operators::schubert_eps(&w1, 2)
                .and_then(|f| f.equiv(&formulas::eps2()))
                .unwrap_or(false),
        ),
        (
            "gamma0".to_string(),
            operators::schubert_gamma(&w1, 0)
                .equiv(&formulas::gamma0())
                .unwrap_or(false),
        ),
        (
            "gamma1".to_string(),
            operators::schubert_gamma(&w1, 1)
                .equiv(&formulas::gamma1())
                .unwrap_or(false),
        ),
        (
            "gamma2".to_string(),
            operators::schubert_gamma(&w1, 2)
                .equiv(&formulas::gamma2())
                .unwrap_or(false),
        ),
    ];
    reports.push(symbolic_report(
        "operators.invariants_match_schubert",
        config.seed,
        &invariant_outcomes,
    ));

    // Affine invariants pulled back through the chart change.
    let subst: std::collections::BTreeMap<String, RationalFunction> = sigma::sigma_symbolic()
        .iter()
        .enumerate()
        .map(|(k, f)| (format!("y{k}"), f.clone()))
        .collect();
    let w2 = CrystalChart::w2();
    let eps0_pull = operators::schubert_eps(&w2, 0)
        .expect("index occurs in the word")
        .substitute(&subst)
        .expect("chart change has nonzero denominators");
    let gamma0_pull = operators::schubert_gamma(&w2, 0)
        .substitute(&subst)
        .expect("chart change has nonzero denominators");
    let ones = RationalPoint::all_ones(&VarTable::x_chart());
    let eps0_at_ones = formulas::eps0().eval(&ones).expect("no pole at ones");
    reports.push(
        symbolic_report(
            "operators.eps0_pullback",
            config.seed,
            &[(
                "eps0".to_string(),
                eps0_pull.equiv(&formulas::eps0()).unwrap_or(false)
                    && eps0_at_ones == BigRational::from_integer(12.into()),
            )],
        )
        .with_details("matches E/(x0^3 x2^3 x3); value 12 at the all-ones point"),
    );
    reports.push(symbolic_report(
        "operators.gamma0_pullback",
        config.seed,
        &[(
            "gamma0".to_string(),
            gamma0_pull.equiv(&formulas::gamma0()).unwrap_or(false),
        )],
    ));

    // Closed-form affine update versus transport, at sampled points with
    // a sampled positive parameter.
    let explicit0 = operators::explicit_cached(0);
    let d_expl = max_cleared(explicit0);
    let d_sig = max_cleared(sigma::sigma_symbolic());
    let d_inv = max_cleared(sigma::sigma_inv_symbolic());
    reports.push(sampled_report(
        config,
        "operators.e0_matches_conjugation",
        &VarTable::x_chart_c(),
        d_expl + d_inv * (d_sig + 1),
        |p| {
            let c = p.get("c").expect("sampled table includes c").clone();
            let lhs = apply_explicit(0, &c, p)?;
            let rhs = operators::e0_via_sigma(&c, p)?;
            for k in 0..6 {
                let name = format!("x{k}");
                let l = lhs.get(&name).expect("set by apply");
                let r = rhs.get(&name).expect("set by transport");
                if l != r {
                    return Ok(Some((format!("{name}: {l}"), r.to_string())));
                }
            }
            Ok(None)
        },
    ));

    reports
}

/// How the axiom exponent is read from the Cartan matrix: acting index
/// as the row, or acting index as the column.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExponentConvention {
    ActingRow,
    ActingColumn,
}

impl ExponentConvention {
    pub fn exponent(self, acting: usize, observed: usize) -> i64 {
        match self {
            ExponentConvention::ActingRow => CartanMatrix::entry(acting, observed),
            ExponentConvention::ActingColumn => CartanMatrix::entry(observed, acting),
        }
    }
}

/// Resolves the exponent convention empirically on the asymmetric pair
/// (acting 1, observed 2), where the two readings differ (-1 vs -3):
/// gamma_2 picks up exactly one of c^-1, c^-3 under the index-1 action.
pub fn resolve_convention(config: &Config) -> (Option<ExponentConvention>, String) {
    let t = VarTable::x_chart_c();
    let gamma2 = formulas::gamma2();
    for k in 0..64 {
        let mut rng = rng_for(config, "axioms.convention", k);
        let p = sample_point(&mut rng, &t, config.coeff_bound);
        let c = p.get("c").expect("table includes c").clone();
        if c.is_one() {
            continue;
        }
        let moved = match apply_explicit(1, &c, &p) {
            Ok(m) => m,
            Err(_) => continue,
        };
        let before = match gamma2.eval(&p) {
            Ok(v) => v,
            Err(_) => continue,
        };
        let after = match gamma2.eval(&moved) {
            Ok(v) => v,
            Err(_) => continue,
        };
        let ratio = after / before;
        let row =
            rat_pow(&c, ExponentConvention::ActingRow.exponent(1, 2)).expect("positive parameter");
        let col = rat_pow(&c, ExponentConvention::ActingColumn.exponent(1, 2))
            .expect("positive parameter");
        if ratio == row {
            return (
                Some(ExponentConvention::ActingRow),
                "gamma_j(e_i^c x) = c^{a_ij} gamma_j(x) with the acting index i as \
                 the Cartan row; observed c^-1 on (acting 1, observed 2)"
                    .to_string(),
            );
        }
        if ratio == col {
            return (
                Some(ExponentConvention::ActingColumn),
                "gamma_j(e_i^c x) = c^{a_ji} gamma_j(x) with the acting index i as \
                 the Cartan column; observed c^-3 on (acting 1, observed 2)"
                    .to_string(),
            );
        }
        return (
            None,
            format!("neither Cartan reading matches: observed ratio {ratio}"),
        );
    }
    (None, "could not draw a usable probe point".to_string())
}

fn gamma_formula(j: usize) -> RationalFunction {
    match j {
        0 => formulas::gamma0(),
        1 => formulas::gamma1(),
        _ => formulas::gamma2(),
    }
}

fn eps_formula(i: usize) -> RationalFunction {
    match i {
        0 => formulas::eps0(),
        1 => formulas::eps1(),
        _ => formulas::eps2(),
    }
}

/// The crystal-axiom suite: character shifts under every operator with
/// the resolved exponent convention, the inverse scaling of eps under
/// its own operator, and the multiplicative one-parameter action laws.
pub fn axioms_suite(config: &Config) -> SuiteReport {
    let mut reports = operator_reports(config);
    let (convention, details) = resolve_convention(config);
    reports.push(
        VerificationReport::symbolic("axioms.convention", config.seed, convention.is_some())
            .with_details(details),
    );
    let convention = convention.unwrap_or(ExponentConvention::ActingRow);

    let txc = VarTable::x_chart_c();
    for i in 0..3usize {
        let ops = operators::explicit_cached(i);
        let d_op = max_cleared(ops);
        for j in 0..3usize {
            let gamma = gamma_formula(j);
            let exp = convention.exponent(i, j);
            let bound = gamma.cleared_degree() * d_op + exp.abs() + gamma.cleared_degree();
            reports.push(sampled_report(
                config,
                &format!("axioms.gamma_shift_e{i}_gamma{j}"),
                &txc,
                bound,
                |p| {
                    let c = p.get("c").expect("table includes c").clone();
                    let moved = apply_explicit(i, &c, p)?;
                    let lhs = gamma.eval(&moved)?;
                    let rhs = rat_pow(&c, exp)? * gamma.eval(p)?;
                    if lhs != rhs {
                        return Ok(Some((lhs.to_string(), rhs.to_string())));
                    }
                    Ok(None)
                },
            ));
        }

        let eps = eps_formula(i);
        let bound = eps.cleared_degree() * d_op + 1 + eps.cleared_degree();
        reports.push(sampled_report(
            config,
            &format!("axioms.eps_scale_e{i}"),
            &txc,
            bound,
            |p| {
                let c = p.get("c").expect("table includes c").clone();
                let moved = apply_explicit(i, &c, p)?;
                let lhs = eps.eval(&moved)? * &c;
                let rhs = eps.eval(p)?;
                if lhs != rhs {
                    return Ok(Some((format!("{lhs} (times c)"), rhs.to_string())));
                }
                Ok(None)
            },
        ));
    }

    // One-parameter action laws: identity at c = 1 and multiplicativity.
    let t2 = VarTable::new(&["x0", "x1", "x2", "x3", "x4", "x5", "c1", "c2"])
        .expect("allowed variable names");
    for i in 0..3usize {
        let d_op = max_cleared(operators::explicit_cached(i));
        reports.push(sampled_report(
            config,
            &format!("axioms.group_law_e{i}"),
            &t2,
            d_op * d_op + d_op,
            |p| {
                if !fixes_at_one(i, p)? {
                    return Ok(Some((
                        "e^1 moved the point".to_string(),
                        "identity".to_string(),
                    )));
                }
                let c1 = p.get("c1").expect("table includes c1").clone();
                let c2 = p.get("c2").expect("table includes c2").clone();
                let two_step = apply_explicit(i, &c1, &apply_explicit(i, &c2, p)?)?;
                let one_step = apply_explicit(i, &(&c1 * &c2), p)?;
                for k in 0..6 {
                    let name = format!("x{k}");
                    let l = two_step.get(&name).expect("set by apply");
                    let r = one_step.get(&name).expect("set by apply");
                    if l != r {
                        return Ok(Some((format!("{name}: {l}"), r.to_string())));
                    }
                }
                Ok(None)
            },
        ));
    }

    SuiteReport::new("axioms", reports)
}

/// Which published form of the composition relation to test: the one in
/// the source under verification, or the role-swapped form matching the
/// earlier literature.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VermaVariant {
    Paper,
    Literature,
}

impl VermaVariant {
    pub fn label(self) -> &'static str {
        match self {
            VermaVariant::Paper => "paper",
            VermaVariant::Literature => "literature",
        }
    }
}

/// The two sides of a Verma relation as (operator index, c1 exponent,
/// c2 exponent) sequences, read left to right with the rightmost factor
/// acting first.
type VermaSide = Vec<(usize, u32, u32)>;

pub fn verma_sides(pair: (usize, usize), variant: VermaVariant) -> Option<(VermaSide, VermaSide)> {
    let (i, j) = match variant {
        VermaVariant::Paper => pair,
        VermaVariant::Literature => (pair.1, pair.0),
    };
    let (aij, aji) = (CartanMatrix::entry(i, j), CartanMatrix::entry(j, i));
    let sides: (VermaSide, VermaSide) = match (aij, aji) {
        (0, 0) => (vec![(i, 1, 0), (j, 0, 1)], vec![(j, 0, 1), (i, 1, 0)]),
        (-1, -1) => (
            vec![(i, 1, 0), (j, 1, 1), (i, 0, 1)],
            vec![(j, 0, 1), (i, 1, 1), (j, 1, 0)],
        ),
        // Length-six pattern stated for Cartan entries (-3, -1); under the
        // literature variant the role swap makes the entries (-1, -3), and
        // the same exponent pattern is evaluated as published there.
        (-3, -1) | (-1, -3) => (
            vec![
                (i, 1, 0),
                (j, 3, 1),
                (i, 2, 1),
                (j, 3, 2),
                (i, 1, 1),
                (j, 0, 1),
            ],
            vec![
                (j, 0, 1),
                (i, 1, 1),
                (j, 3, 2),
                (i, 2, 1),
                (j, 3, 1),
                (i, 1, 0),
            ],
        ),
        _ => return None,
    };
    Some(sides)
}

fn instantiate(
    side: &[(usize, u32, u32)],
    c1: &BigRational,
    c2: &BigRational,
) -> Result<Vec<(usize, BigRational)>> {
    side.iter()
        .map(|&(op, e1, e2)| {
            Ok((
                op,
                rat_pow(c1, i64::from(e1))? * rat_pow(c2, i64::from(e2))?,
            ))
        })
        .collect()
}

/// Samples one Verma relation: both composition orders applied to random
/// positive points with random positive parameters must agree exactly.
pub fn verma_report(
    config: &Config,
    pair: (usize, usize),
    variant: VermaVariant,
) -> VerificationReport {
    let identity = format!("verma.{}_{}.{}", pair.0, pair.1, variant.label());
    let Some((lhs_side, rhs_side)) = verma_sides(pair, variant) else {
        return VerificationReport::symbolic(&identity, config.seed, false)
            .with_details("no relation pattern for this pair");
    };
    let t = VarTable::new(&["x0", "x1", "x2", "x3", "x4", "x5", "c1", "c2"])
        .expect("allowed variable names");
    let step_bound: i64 = lhs_side
        .iter()
        .map(|&(op, _, _)| max_cleared(operators::explicit_cached(op)))
        .product();
    sampled_report(config, &identity, &t, step_bound.max(1), move |p| {
        let c1 = p.get("c1").expect("table includes c1").clone();
        let c2 = p.get("c2").expect("table includes c2").clone();
        let lhs_seq = instantiate(&lhs_side, &c1, &c2)?;
        let rhs_seq = instantiate(&rhs_side, &c1, &c2)?;
        let lhs = apply_composition(&lhs_seq, p)?;
        let rhs = apply_composition(&rhs_seq, p)?;
        for k in 0..6 {
            let name = format!("x{k}");
            let l = lhs.get(&name).expect("set by apply");
            let r = rhs.get(&name).expect("set by apply");
            if l != r {
                return Ok(Some((format!("{name}: {l}"), r.to_string())));
            }
        }
        Ok(None)
    })
}

/// The Verma suite: the commuting pair, the length-three relation, and
/// the length-six relation in the published form, with the earlier
/// literature variant evaluated and recorded as a finding that does not
/// gate the suite.
pub fn verma_suite(config: &Config) -> SuiteReport {
    let reports = vec![
        verma_report(config, (0, 2), VermaVariant::Paper),
        verma_report(config, (0, 1), VermaVariant::Paper),
        verma_report(config, (2, 1), VermaVariant::Paper),
    ];
    let literature = verma_report(config, (2, 1), VermaVariant::Literature);
    let findings = json!({
        "verma_literature_2_1": {
            "note": "role-swapped length-six pattern from the earlier literature, \
                     evaluated for the record; its outcome does not gate this suite",
            "report": literature.to_json(),
        }
    });
    SuiteReport::new("verma", reports).with_findings(findings)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_config() -> Config {
        Config {
            samples: 4,
            coeff_bound: 12,
            ..Config::default()
        }
    }

    // ---- coefficient identities ----

    #[test]
    fn test_lemma_suite_passes_symbolically() {
        let suite = lemma_suite(&Config::default());
        assert!(suite.passed);
        assert_eq!(suite.reports.len(), 30);
        for r in &suite.reports {
            assert_eq!(r.samples, 0, "{} should certify symbolically", r.identity);
        }
    }

    // ---- operator cross-checks ----

    #[test]
    fn test_operator_reports_pass() {
        let reports = operator_reports(&small_config());
        for r in &reports {
            assert!(r.passed, "{} failed: {:?}", r.identity, r.counterexamples);
        }
    }

    // ---- axioms ----

    #[test]
    fn test_convention_resolves_to_acting_row() {
        let (convention, details) = resolve_convention(&Config::default());
        assert_eq!(convention, Some(ExponentConvention::ActingRow), "{details}");
    }

    #[test]
    fn test_axioms_suite_passes() {
        let suite = axioms_suite(&small_config());
        for r in &suite.reports {
            assert!(r.passed, "{} failed: {:?}", r.identity, r.counterexamples);
        }
    }

    // ---- verma ----

    #[test]
    fn test_verma_commuting_and_length_three_pass() {
        let config = small_config();
        let r02 = verma_report(&config, (0, 2), VermaVariant::Paper);
        assert!(r02.passed, "{:?}", r02.counterexamples);
        let r01 = verma_report(&config, (0, 1), VermaVariant::Paper);
        assert!(r01.passed, "{:?}", r01.counterexamples);
    }

    #[test]
    fn test_verma_length_six_paper_variant_passes() {
        let config = Config {
            samples: 2,
            coeff_bound: 8,
            ..Config::default()
        };
        let r = verma_report(&config, (2, 1), VermaVariant::Paper);
        assert!(r.passed, "{:?}", r.counterexamples);
    }

    #[test]
    fn test_verma_literature_variant_is_recorded_not_gating() {
        let config = Config {
            samples: 2,
            coeff_bound: 8,
            ..Config::default()
        };
        let suite = verma_suite(&config);
        assert!(suite.passed, "paper-variant relations must gate the suite");
        let findings = suite.findings.expect("literature outcome recorded");
        assert!(findings["verma_literature_2_1"]["report"]["passed"].is_boolean());
    }
}
