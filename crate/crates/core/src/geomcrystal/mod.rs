//! The two torus charts on the 15-dimensional module, the unipotent group
//! elements generating them, the birational chart change and its inverse,
//! the crystal actions in general and closed form, and the verification
//! suites certifying every identity.
//!
//! Chart one applies the word (0,1,2,1,2,1) with parameters x0..x5 to the
//! highest basis vector; chart two applies (2,1,2,1,0,1) with parameters
//! y2,y1,y4,y3,y0,y5 (in word-position order) to the barred partner of
//! basis vector 2. The chart change sigma solves the proportionality of
//! the two resulting module vectors and transports the affine crystal
//! action from the second chart to the first.

pub mod checks;
pub mod formulas;
pub mod operators;
pub mod sigma;

use num_rational::BigRational;
use num_traits::One;

use crate::error::Result;
use crate::g2module::{coroot_pairing, weight_of};
use crate::g2module::{BasisVector, Gen, ModuleVector, Scalar, BASIS};
use crate::ratfunc::{RationalFunction, VarTable};

/// A word in the generator indices {0,1,2}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedWord(pub Vec<usize>);

/// A torus chart: a word together with the ordered coordinate names
/// attached to its positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrystalChart {
    pub word: ReducedWord,
    pub coords: Vec<&'static str>,
}

impl CrystalChart {
    /// First chart: word (0,1,2,1,2,1), coordinates x0..x5, seed basis 1.
    pub fn w1() -> Self {
        CrystalChart {
            word: ReducedWord(vec![0, 1, 2, 1, 2, 1]),
            coords: vec!["x0", "x1", "x2", "x3", "x4", "x5"],
        }
    }

    /// Second chart: word (2,1,2,1,0,1), coordinates y2,y1,y4,y3,y0,y5 in
    /// word-position order, seed basis 2-bar.
    pub fn w2() -> Self {
        CrystalChart {
            word: ReducedWord(vec![2, 1, 2, 1, 0, 1]),
            coords: vec!["y2", "y1", "y4", "y3", "y0", "y5"],
        }
    }

    pub fn len(&self) -> usize {
        self.word.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.0.is_empty()
    }

    pub fn seed(&self) -> BasisVector {
        if self.word.0 == [0, 1, 2, 1, 2, 1] {
            BasisVector::B1
        } else {
            BasisVector::B2Bar
        }
    }

    /// Variable table of the chart coordinates in canonical name order.
    pub fn vars(&self) -> VarTable {
        if self.coords.first() == Some(&"x0") {
            VarTable::x_chart()
        } else {
            VarTable::y_chart()
        }
    }

    /// Chart coordinates extended by the action parameter c.
    pub fn vars_c(&self) -> VarTable {
        if self.coords.first() == Some(&"x0") {
            VarTable::x_chart_c()
        } else {
            VarTable::y_chart_c()
        }
    }
}

/// Cocharacter action of the torus: scale the coefficient of each basis
/// vector b by c^(pairing of the i-th coroot with the weight of b).
pub fn torus_act<S: Scalar>(i: usize, c: &S, v: &ModuleVector<S>) -> ModuleVector<S> {
    let mut out = v.clone();
    // The pairings lie in -3..=3; cache the needed powers of c.
    let mut cache: std::collections::BTreeMap<i64, S> = std::collections::BTreeMap::new();
    for b in BASIS {
        let p = coroot_pairing(i, weight_of(b));
        if p == 0 {
            continue;
        }
        let idx = b.index();
        if out.coeffs[idx].is_zero() {
            continue;
        }
        let cp = cache.entry(p).or_insert_with(|| c.pow_int(p));
        out.coeffs[idx] = out.coeffs[idx].mul(cp);
    }
    out
}

/// Unipotent group element applied to a vector: the torus action followed
/// by the truncated lowering series 1 + f/c + f^2/(2c^2) (+ f^3/(6c^3) for
/// the long-root index 2, whose fourth power vanishes).
pub fn y_act<S: Scalar>(i: usize, c: &S, v: &ModuleVector<S>) -> ModuleVector<S> {
    let w = torus_act(i, c, v);
    let mut acc = w.clone();
    let mut chain = w;
    let max_order = if i == 2 { 3 } else { 2 };
    let mut factorial = 1i64;
    for k in 1..=max_order {
        chain = chain.apply_gen(Gen::F, i);
        if chain.is_zero() {
            break;
        }
        factorial *= k as i64;
        let coeff = BigRational::new(1.into(), factorial.into());
        let term = chain.scale(&c.pow_int(-(k as i64))).scale_rat(&coeff);
        acc = acc.add(&term);
    }
    acc
}

/// 15x15 matrix of a unipotent group element over rational functions.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupElementMatrix(pub Vec<Vec<RationalFunction>>);

impl GroupElementMatrix {
    pub fn apply(&self, v: &ModuleVector<RationalFunction>) -> ModuleVector<RationalFunction> {
        let proto = &v.coeffs[0];
        let mut out = ModuleVector::zero_like(proto);
        for (col, coeff) in v.coeffs.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            for row in 0..15 {
                if self.0[row][col].is_zero() {
                    continue;
                }
                let term = Scalar::mul(&self.0[row][col], coeff);
                out.coeffs[row] = Scalar::add(&out.coeffs[row], &term);
            }
        }
        out
    }
}

/// Matrix of the unipotent element with parameter c, built column by
/// column from the basis action.
pub fn y_matrix(i: usize, c: &RationalFunction) -> GroupElementMatrix {
    let one = RationalFunction::one(c.vars());
    let mut cols: Vec<Vec<RationalFunction>> = Vec::with_capacity(15);
    for b in BASIS {
        let col = y_act(i, c, &ModuleVector::basis(b, &one));
        cols.push(col.coeffs);
    }
    // Transpose: columns were built per input basis vector.
    let rows = (0..15)
        .map(|r| (0..15).map(|cj| cols[cj][r].clone()).collect())
        .collect();
    GroupElementMatrix(rows)
}

/// The chart's module vector: the word's unipotent elements applied right
/// to left to the seed basis vector, with the chart coordinates as
/// parameters.
pub fn build_v(chart: &CrystalChart) -> ModuleVector<RationalFunction> {
    let vars = chart.vars();
    let one = RationalFunction::one(&vars);
    let mut v = ModuleVector::basis(chart.seed(), &one);
    for (idx, name) in chart.word.0.iter().zip(&chart.coords).rev() {
        let c = RationalFunction::var(&vars, name);
        v = y_act(*idx, &c, &v);
    }
    v
}

/// Numeric variant of [`build_v`]: same product evaluated at an exact
/// positive point.
pub fn build_v_at(
    chart: &CrystalChart,
    point: &crate::ratfunc::RationalPoint,
) -> Result<ModuleVector<BigRational>> {
    let one = BigRational::one();
    let mut v = ModuleVector::basis(chart.seed(), &one);
    for (idx, name) in chart.word.0.iter().zip(&chart.coords).rev() {
        let c = point
            .get(name)
            .cloned()
            .ok_or_else(|| crate::error::Error::MissingVariable(name.to_string()))?;
        v = y_act(*idx, &c, &v);
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::g2module::BasisVector::*;
    use crate::ratfunc::{mono, RationalPoint};

    #[test]
    fn test_torus_act_examples() {
        let t = VarTable::x_chart();
        let c = RationalFunction::var(&t, "x0");
        let one = RationalFunction::one(&t);
        // Basis 1 has pairing -2 with the 0-th coroot.
        let v = torus_act(0, &c, &ModuleVector::basis(B1, &one));
        assert_eq!(
            v.get(B1),
            &RationalFunction::from_poly(mono(&t, 1, &[("x0", -2)]))
        );
        // Weight-zero vectors are fixed.
        let w = torus_act(1, &c, &ModuleVector::basis(Phi, &one));
        assert_eq!(w.get(Phi), &one);
        // Basis 3 has pairing +1 with the 2nd coroot.
        let u = torus_act(2, &c, &ModuleVector::basis(B3, &one));
        assert_eq!(u.get(B3), &c);
    }

    #[test]
    fn test_y_act_at_one_fixes_killed_weight_zero_vector() {
        // At parameter 1, a weight-zero basis vector annihilated by the
        // lowering generator is fixed: phi has weight 0 and no i=2 entry.
        let t = VarTable::x_chart();
        let one = RationalFunction::one(&t);
        let c = RationalFunction::one(&t);
        let v = y_act(2, &c, &ModuleVector::basis(Phi, &one));
        assert_eq!(v, ModuleVector::basis(Phi, &one));
    }

    #[test]
    fn test_y_matrix_columns_match_vector_action() {
        let t = VarTable::x_chart();
        let c = RationalFunction::var(&t, "x2");
        let m = y_matrix(2, &c);
        let one = RationalFunction::one(&t);
        for b in BASIS {
            let via_vec = y_act(2, &c, &ModuleVector::basis(b, &one));
            let via_mat = m.apply(&ModuleVector::basis(b, &one));
            assert_eq!(via_vec, via_mat, "column mismatch at {}", b.label());
        }
    }

    #[test]
    fn test_y2_series_reaches_cube_depth() {
        // The third-order term must hit the chains where the triple
        // lowering is nonzero, e.g. starting from basis 2.
        let t = VarTable::x_chart();
        let c = RationalFunction::var(&t, "x4");
        let one = RationalFunction::one(&t);
        let v = y_act(2, &c, &ModuleVector::basis(B2, &one));
        // Chain: 2 -> 3 -> 2*4 -> 6*6; torus factor c^3 on basis 2, then
        // f^3/(6c^3) contributes 6/(6c^3) * c^3 = 1 on basis 6.
        assert_eq!(v.get(B6), &one);
        assert!(!v.get(B4).is_zero() && !v.get(B3).is_zero());
    }

    #[test]
    fn test_build_v_known_coefficients() {
        let v1 = build_v(&CrystalChart::w1());
        let t = VarTable::x_chart();
        assert_eq!(
            v1.get(Phi),
            &RationalFunction::var(&t, "x0"),
            "empty-set coefficient of the first chart vector"
        );
        assert_eq!(
            v1.get(Zero1),
            &RationalFunction::from_poly(mono(&t, 1, &[("x2", 1), ("x4", 1)]))
        );
        let v2 = build_v(&CrystalChart::w2());
        let ty = VarTable::y_chart();
        assert_eq!(
            v2.get(B5),
            &RationalFunction::from_poly(mono(&ty, 1, &[("y2", 2), ("y4", 1)]))
        );
    }

    #[test]
    fn test_build_v_at_matches_symbolic_eval() {
        let chart = CrystalChart::w1();
        let v = build_v(&chart);
        let mut p = RationalPoint::all_ones(&chart.vars());
        p.set("x2", BigRational::new(3.into(), 2.into()));
        p.set("x5", BigRational::new(2.into(), 5.into()));
        let numeric = build_v_at(&chart, &p).unwrap();
        let symbolic = v.eval(&p).unwrap();
        assert_eq!(numeric, symbolic);
    }
}
