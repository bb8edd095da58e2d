//! Unipotent crystal operators on the two torus charts: the general
//! prefix-monomial (Schubert-cell) action together with its invariants,
//! the closed-form coordinate updates, and the affine operator obtained
//! by transport through the chart change.
//!
//! For a chart with word (i_1, ..., i_k) and coordinates c_1, ..., c_k the
//! prefix monomials are P_m = c_1^{a_{i_1, i}} ... c_{m-1}^{a_{i_{m-1}, i}} c_m,
//! where a_{r,s} is the Cartan entry with row r and column s. The action
//! with parameter c multiplies c_j by a ratio of two sums over the
//! positions carrying the acting index; the invariants are
//! eps_i = sum 1/P_m and gamma_i = prod c_k^{a_{i_k, i}}.

use std::sync::OnceLock;

use num_rational::BigRational;
use num_traits::One;

use super::formulas;
use super::sigma;
use super::CrystalChart;
use crate::error::{Error, Result};
use crate::ratfunc::{mono, LaurentPolynomial, RationalFunction, RationalPoint, VarTable};

/// Exponent vectors of the prefix monomials P_1..P_k of a chart for the
/// acting index, as (coordinate name, exponent) lists.
fn prefix_exponents(chart: &CrystalChart, i: usize) -> Vec<Vec<(&'static str, i64)>> {
    let a = crate::g2module::CartanMatrix::entry;
    (0..chart.len())
        .map(|m| {
            let mut exps: Vec<(&'static str, i64)> = Vec::new();
            for l in 0..m {
                let e = a(chart.word.0[l], i);
                if e != 0 {
                    exps.push((chart.coords[l], e));
                }
            }
            exps.push((chart.coords[m], 1));
            exps
        })
        .collect()
}

fn occurrences(chart: &CrystalChart, i: usize) -> Vec<usize> {
    (0..chart.len()).filter(|&m| chart.word.0[m] == i).collect()
}

/// 1/P_m as a Laurent monomial over the given table.
fn inverse_prefix(t: &VarTable, exps: &[(&'static str, i64)]) -> LaurentPolynomial {
    let negated: Vec<(&str, i64)> = exps.iter().map(|&(n, e)| (n, -e)).collect();
    mono(t, 1, &negated)
}

/// The function eps_i of the chart: the sum of the reciprocal prefix
/// monomials over the positions carrying index i.
pub fn schubert_eps(chart: &CrystalChart, i: usize) -> Result<RationalFunction> {
    let occ = occurrences(chart, i);
    if occ.is_empty() {
        return Err(Error::IndexNotInWord(i));
    }
    let t = chart.vars();
    let prefixes = prefix_exponents(chart, i);
    let mut sum = LaurentPolynomial::zero(&t);
    for m in occ {
        sum = &sum + &inverse_prefix(&t, &prefixes[m]);
    }
    Ok(RationalFunction::from_poly(sum))
}

/// The character gamma_i of the chart: the monomial with exponent
/// a_{i_k, i} in each coordinate.
pub fn schubert_gamma(chart: &CrystalChart, i: usize) -> RationalFunction {
    let t = chart.vars();
    let a = crate::g2module::CartanMatrix::entry;
    let exps: Vec<(&str, i64)> = (0..chart.len())
        .map(|k| (chart.coords[k], a(chart.word.0[k], i)))
        .filter(|&(_, e)| e != 0)
        .collect();
    RationalFunction::from_poly(mono(&t, 1, &exps))
}

/// The action with parameter c as symbolic coordinate updates, in the
/// chart's own coordinate order, over the chart variables extended by c.
pub fn schubert_action(chart: &CrystalChart, i: usize) -> Result<Vec<RationalFunction>> {
    let occ = occurrences(chart, i);
    if occ.is_empty() {
        return Err(Error::IndexNotInWord(i));
    }
    let t = chart.vars_c();
    let prefixes = prefix_exponents(chart, i);
    let mut out = Vec::with_capacity(chart.len());
    for j in 0..chart.len() {
        let coord = RationalFunction::var(&t, chart.coords[j]);
        if chart.word.0[j] != i {
            out.push(coord);
            continue;
        }
        // Numerator: parameter weight on positions m <= j, none after;
        // denominator: parameter weight on positions m < j, none from j on.
        let mut num = LaurentPolynomial::zero(&t);
        let mut den = LaurentPolynomial::zero(&t);
        for &m in &occ {
            let inv = inverse_prefix(&t, &prefixes[m]);
            let weighted = &inv * &mono(&t, 1, &[("c", 1)]);
            num = &num + if m <= j { &weighted } else { &inv };
            den = &den + if m < j { &weighted } else { &inv };
        }
        let ratio = RationalFunction::new(num, den)?;
        out.push(ratio.mul(&coord)?);
    }
    Ok(out)
}

/// The closed-form coordinate updates on the first chart, cached.
pub fn explicit_cached(i: usize) -> &'static [RationalFunction] {
    static OPS: OnceLock<[Vec<RationalFunction>; 3]> = OnceLock::new();
    &OPS.get_or_init(|| {
        [
            formulas::explicit_update(0),
            formulas::explicit_update(1),
            formulas::explicit_update(2),
        ]
    })[i]
}

fn point_with_c(p: &RationalPoint, c: &BigRational) -> RationalPoint {
    let mut q = p.clone();
    q.set("c", c.clone());
    q
}

/// Numeric application of the closed-form operator e_i^c to a
/// first-chart point.
pub fn apply_explicit(i: usize, c: &BigRational, p: &RationalPoint) -> Result<RationalPoint> {
    let ext = point_with_c(p, c);
    let mut out = RationalPoint::new();
    for (k, f) in explicit_cached(i).iter().enumerate() {
        out.set(&format!("x{k}"), f.eval(&ext)?);
    }
    Ok(out)
}

/// Numeric application of a composition given as (index, parameter)
/// pairs read left to right; the rightmost factor acts first.
pub fn apply_composition(seq: &[(usize, BigRational)], p: &RationalPoint) -> Result<RationalPoint> {
    let mut cur = p.clone();
    for (i, c) in seq.iter().rev() {
        cur = apply_explicit(*i, c, &cur)?;
    }
    Ok(cur)
}

/// The affine operator on the first chart defined by transport: move to
/// the second chart, scale the fifth-position coordinate by c (the
/// one-occurrence action there), and come back.
pub fn e0_via_sigma(c: &BigRational, p: &RationalPoint) -> Result<RationalPoint> {
    let mut img = sigma::sigma_at(p)?;
    let y0 = img.get("y0").expect("set by sigma_at").clone();
    img.set("y0", y0 * c);
    sigma::sigma_inv_at(&img)
}

/// True when e_i^1 fixes the point, checked coordinatewise.
pub fn fixes_at_one(i: usize, p: &RationalPoint) -> Result<bool> {
    let one = BigRational::one();
    let moved = apply_explicit(i, &one, p)?;
    for k in 0..6 {
        let name = format!("x{k}");
        if moved.get(&name) != p.get(&name) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn int(n: i64) -> BigRational {
        BigRational::from(BigInt::from(n))
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    // ---- prefix data on the first chart ----

    #[test]
    fn test_schubert_eps_matches_closed_forms_on_first_chart() {
        let w1 = CrystalChart::w1();
        assert!(schubert_eps(&w1, 1)
            .unwrap()
            .equiv(&formulas::eps1())
            .unwrap());
        assert!(schubert_eps(&w1, 2)
            .unwrap()
            .equiv(&formulas::eps2())
            .unwrap());
    }

    #[test]
    fn test_schubert_gamma_matches_closed_forms_on_first_chart() {
        let w1 = CrystalChart::w1();
        assert!(schubert_gamma(&w1, 0).equiv(&formulas::gamma0()).unwrap());
        assert!(schubert_gamma(&w1, 1).equiv(&formulas::gamma1()).unwrap());
        assert!(schubert_gamma(&w1, 2).equiv(&formulas::gamma2()).unwrap());
    }

    // ---- second chart: the single-occurrence affine index ----

    #[test]
    fn test_second_chart_affine_action_scales_one_coordinate() {
        let w2 = CrystalChart::w2();
        let action = schubert_action(&w2, 0).unwrap();
        let t = w2.vars_c();
        // Coordinates in word order: y2, y1, y4, y3, y0, y5. Only the
        // fifth position carries index 0 and picks up the factor c.
        for (j, name) in ["y2", "y1", "y4", "y3", "y0", "y5"].iter().enumerate() {
            let var = RationalFunction::var(&t, name);
            let expect = if *name == "y0" {
                var.mul(&RationalFunction::var(&t, "c")).unwrap()
            } else {
                var
            };
            assert!(action[j].equiv(&expect).unwrap(), "coordinate {name}");
        }
        let eps = schubert_eps(&w2, 0).unwrap();
        let expect = RationalFunction::new(
            mono(&w2.vars(), 1, &[("y1", 1), ("y3", 1)]),
            mono(&w2.vars(), 1, &[("y0", 1)]),
        )
        .unwrap();
        assert!(eps.equiv(&expect).unwrap());
    }

    #[test]
    fn test_index_missing_from_word_is_an_error() {
        let chart = CrystalChart {
            word: super::super::ReducedWord(vec![1, 2]),
            coords: vec!["x0", "x1"],
        };
        assert!(matches!(
            schubert_eps(&chart, 0),
            Err(Error::IndexNotInWord(0))
        ));
    }

    // ---- transported operator ----

    #[test]
    fn test_e0_via_sigma_at_one_is_identity() {
        let ones = RationalPoint::all_ones(&VarTable::x_chart());
        let moved = e0_via_sigma(&int(1), &ones).unwrap();
        for k in 0..6 {
            assert_eq!(moved.get(&format!("x{k}")).unwrap(), &int(1));
        }
    }

    #[test]
    fn test_e0_explicit_matches_conjugation_at_reference_point() {
        let ones = RationalPoint::all_ones(&VarTable::x_chart());
        let c = int(2);
        let explicit = apply_explicit(0, &c, &ones).unwrap();
        let transported = e0_via_sigma(&c, &ones).unwrap();
        let expect = [
            rat(25, 24),
            rat(11, 12),
            rat(3, 4),
            rat(175, 528),
            rat(25, 36),
            rat(25, 28),
        ];
        for (k, want) in expect.iter().enumerate() {
            let name = format!("x{k}");
            assert_eq!(explicit.get(&name).unwrap(), want, "{name} explicit");
            assert_eq!(transported.get(&name).unwrap(), want, "{name} transported");
        }
    }

    #[test]
    fn test_identity_parameter_fixes_points() {
        let ones = RationalPoint::all_ones(&VarTable::x_chart());
        for i in 0..3 {
            assert!(fixes_at_one(i, &ones).unwrap(), "operator {i}");
        }
    }

    #[test]
    fn test_composition_applies_rightmost_first() {
        let ones = RationalPoint::all_ones(&VarTable::x_chart());
        let seq = vec![(1usize, int(3)), (2usize, int(2))];
        let composed = apply_composition(&seq, &ones).unwrap();
        let stepwise =
            apply_explicit(1, &int(3), &apply_explicit(2, &int(2), &ones).unwrap()).unwrap();
        for k in 0..6 {
            let name = format!("x{k}");
            assert_eq!(composed.get(&name).unwrap(), stepwise.get(&name).unwrap());
        }
    }
}
