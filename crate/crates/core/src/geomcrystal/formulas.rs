//! Closed-form coefficient and operator formulas over the two charts,
//! transcribed term by term, plus a name registry for CLI lookup.
//!
//! Every body here is subtraction-free: a ratio of Laurent polynomials
//! with positive coefficients. The transcriptions are certified elsewhere
//! against independently computed quantities (the expanded unipotent
//! products, the chart-change defining equation, and the general
//! Schubert-cell action), so a typo here cannot survive the test suites.

use std::collections::BTreeMap;
use std::sync::{Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::g2module::BasisVector;
use crate::ratfunc::{mono, LaurentPolynomial, RationalFunction, VarTable};

/// Incremental builder for sums of integer-coefficient Laurent monomials.
pub struct Sum {
    t: VarTable,
    p: LaurentPolynomial,
}

impl Sum {
    pub fn new(t: &VarTable) -> Self {
        Sum {
            t: t.clone(),
            p: LaurentPolynomial::zero(t),
        }
    }

    pub fn term(mut self, c: i64, pows: &[(&str, i64)]) -> Self {
        self.p = &self.p + &mono(&self.t, c, pows);
        self
    }

    pub fn poly(self) -> LaurentPolynomial {
        self.p
    }

    pub fn rf(self) -> RationalFunction {
        RationalFunction::from_poly(self.p)
    }
}

fn xt() -> VarTable {
    VarTable::x_chart()
}

fn yt() -> VarTable {
    VarTable::y_chart()
}

fn xct() -> VarTable {
    VarTable::x_chart_c()
}

// ---- first-chart coefficients ----

pub fn x1() -> RationalFunction {
    let t = xt();
    Sum::new(&t)
        .term(1, &[])
        .term(1, &[("x3", 1), ("x0", -1)])
        .term(1, &[("x1", 1), ("x3", 2), ("x0", -1), ("x2", -3)])
        .term(
            3,
            &[("x1", 1), ("x3", 1), ("x4", 1), ("x0", -1), ("x2", -2)],
        )
        .term(3, &[("x1", 1), ("x4", 2), ("x0", -1), ("x2", -1)])
        .term(1, &[("x1", 1), ("x4", 3), ("x0", -1), ("x3", -1)])
        .term(1, &[("x1", 1), ("x5", 1), ("x0", -1)])
        .term(1, &[("x1", 1), ("x3", 1), ("x5", 1), ("x0", -2)])
        .rf()
}

pub fn x2() -> RationalFunction {
    let t = xt();
    Sum::new(&t)
        .term(1, &[("x2", 3), ("x1", -2)])
        .term(1, &[("x3", 2), ("x2", -3)])
        .term(3, &[("x3", 1), ("x4", 1), ("x2", -2)])
        .term(3, &[("x4", 2), ("x2", -1)])
        .term(1, &[("x4", 3), ("x3", -1)])
        .term(1, &[("x5", 1)])
        .term(1, &[("x3", 1), ("x5", 1), ("x0", -1)])
        .term(2, &[("x3", 1), ("x1", -1)])
        .term(3, &[("x2", 1), ("x4", 1), ("x1", -1)])
        .term(
            1,
            &[("x2", 3), ("x4", 3), ("x0", -1), ("x1", -1), ("x3", -1)],
        )
        .term(1, &[("x2", 3), ("x5", 1), ("x0", -1), ("x1", -1)])
        .rf()
}

pub fn x3() -> RationalFunction {
    let t = xt();
    Sum::new(&t)
        .term(1, &[("x2", 2), ("x1", -1)])
        .term(1, &[("x3", 1), ("x2", -1)])
        .term(1, &[("x4", 1)])
        .term(1, &[("x2", 1), ("x4", 2), ("x0", -1)])
        .term(1, &[("x2", 2), ("x4", 3), ("x0", -1), ("x3", -1)])
        .term(1, &[("x2", 2), ("x5", 1), ("x0", -1)])
        .rf()
}

pub fn x4() -> RationalFunction {
    let t = xt();
    Sum::new(&t)
        .term(1, &[("x2", 1)])
        .term(
            1,
            &[("x1", 1), ("x3", 1), ("x4", 1), ("x0", -1), ("x2", -1)],
        )
        .term(2, &[("x1", 1), ("x4", 2), ("x0", -1)])
        .term(
            1,
            &[("x1", 1), ("x2", 1), ("x4", 3), ("x0", -1), ("x3", -1)],
        )
        .term(1, &[("x1", 1), ("x2", 1), ("x5", 1), ("x0", -1)])
        .rf()
}

pub fn x5() -> RationalFunction {
    let t = xt();
    Sum::new(&t)
        .term(1, &[("x2", 2), ("x4", 1), ("x1", -1)])
        .term(1, &[("x3", 1), ("x4", 1), ("x2", -1)])
        .term(2, &[("x4", 2)])
        .term(1, &[("x2", 1), ("x4", 3), ("x3", -1)])
        .term(1, &[("x2", 1), ("x5", 1)])
        .rf()
}

pub fn x6() -> RationalFunction {
    let t = xt();
    Sum::new(&t)
        .term(1, &[("x1", 1)])
        .term(1, &[("x1", 2), ("x3", 2), ("x0", -1), ("x2", -3)])
        .term(
            3,
            &[("x1", 2), ("x3", 1), ("x4", 1), ("x0", -1), ("x2", -2)],
        )
        .term(3, &[("x1", 2), ("x4", 2), ("x0", -1), ("x2", -1)])
        .term(1, &[("x1", 2), ("x4", 3), ("x0", -1), ("x3", -1)])
        .term(1, &[("x1", 2), ("x5", 1), ("x0", -1)])
        .rf()
}

pub fn x01() -> RationalFunction {
    Sum::new(&xt()).term(1, &[("x2", 1), ("x4", 1)]).rf()
}

pub fn x02() -> RationalFunction {
    let t = xt();
    Sum::new(&t)
        .term(1, &[("x3", 1)])
        .term(1, &[("x1", 1), ("x3", 2), ("x2", -3)])
        .term(3, &[("x1", 1), ("x3", 1), ("x4", 1), ("x2", -2)])
        .term(3, &[("x1", 1), ("x4", 2), ("x2", -1)])
        .term(1, &[("x1", 1), ("x4", 3), ("x3", -1)])
        .term(1, &[("x1", 1), ("x5", 1)])
        .rf()
}

pub fn x6b() -> RationalFunction {
    let t = xt();
    Sum::new(&t)
        .term(1, &[("x0", 1), ("x2", 3), ("x1", -2)])
        .term(1, &[("x0", 1), ("x3", 2), ("x2", -3)])
        .term(3, &[("x0", 1), ("x3", 1), ("x4", 1), ("x2", -2)])
        .term(3, &[("x0", 1), ("x4", 2), ("x2", -1)])
        .term(1, &[("x0", 1), ("x4", 3), ("x3", -1)])
        .term(2, &[("x0", 1), ("x3", 1), ("x1", -1)])
        .term(3, &[("x0", 1), ("x2", 1), ("x4", 1), ("x1", -1)])
        .term(1, &[("x0", 1), ("x5", 1)])
        .rf()
}

pub fn x5b() -> RationalFunction {
    let t = xt();
    Sum::new(&t)
        .term(1, &[("x1", 1), ("x3", 1), ("x2", -1)])
        .term(1, &[("x1", 1), ("x4", 1)])
        .rf()
}

pub fn x4b() -> RationalFunction {
    let t = xt();
    Sum::new(&t)
        .term(1, &[("x0", 1), ("x2", 2), ("x1", -1)])
        .term(1, &[("x0", 1), ("x3", 1), ("x2", -1)])
        .term(1, &[("x0", 1), ("x4", 1)])
        .rf()
}

pub fn x3b() -> RationalFunction {
    Sum::new(&xt()).term(1, &[("x0", 1), ("x2", 1)]).rf()
}

pub fn x2b() -> RationalFunction {
    Sum::new(&xt()).term(1, &[("x0", 1), ("x1", 1)]).rf()
}

pub fn x1b() -> RationalFunction {
    Sum::new(&xt()).term(1, &[("x0", 2)]).rf()
}

pub fn xphi() -> RationalFunction {
    Sum::new(&xt()).term(1, &[("x0", 1)]).rf()
}

// ---- second-chart coefficients ----

pub fn y1() -> RationalFunction {
    Sum::new(&yt()).term(1, &[("y1", 1), ("y3", 1)]).rf()
}

pub fn y2() -> RationalFunction {
    let t = yt();
    Sum::new(&t)
        .term(1, &[("y2", 3), ("y3", 1)])
        .term(1, &[("y2", 3), ("y4", 3), ("y1", -1)])
        .rf()
}

pub fn y3() -> RationalFunction {
    let t = yt();
    Sum::new(&t)
        .term(1, &[("y2", 2), ("y3", 1)])
        .term(1, &[("y2", 1), ("y4", 2)])
        .term(1, &[("y2", 2), ("y4", 3), ("y1", -1)])
        .rf()
}

pub fn y4() -> RationalFunction {
    let t = yt();
    Sum::new(&t)
        .term(1, &[("y2", 1), ("y3", 1)])
        .term(1, &[("y1", 1), ("y4", 1), ("y2", -1)])
        .term(2, &[("y4", 2)])
        .term(1, &[("y2", 1), ("y4", 3), ("y1", -1)])
        .rf()
}

pub fn y5() -> RationalFunction {
    Sum::new(&yt()).term(1, &[("y2", 2), ("y4", 1)]).rf()
}

pub fn y6() -> RationalFunction {
    let t = yt();
    Sum::new(&t)
        .term(1, &[("y3", 1)])
        .term(3, &[("y1", 1), ("y4", 1), ("y2", -2)])
        .term(3, &[("y4", 2), ("y2", -1)])
        .term(1, &[("y4", 3), ("y1", -1)])
        .term(1, &[("y1", 2), ("y2", -3)])
        .term(
            1,
            &[("y1", 2), ("y3", 2), ("y5", 1), ("y2", -3), ("y4", -3)],
        )
        .rf()
}

pub fn y01() -> RationalFunction {
    Sum::new(&yt()).term(1, &[("y2", 1), ("y4", 1)]).rf()
}

pub fn y02() -> RationalFunction {
    let t = yt();
    Sum::new(&t)
        .term(1, &[("y1", 1)])
        .term(1, &[("y3", 1), ("y5", 1)])
        .term(1, &[("y1", 1), ("y3", 2), ("y5", 1), ("y4", -3)])
        .rf()
}

pub fn y6b() -> RationalFunction {
    let t = yt();
    Sum::new(&t)
        .term(1, &[("y2", 3)])
        .term(1, &[("y0", 1), ("y2", 3), ("y1", -1)])
        .term(
            1,
            &[("y0", 1), ("y2", 3), ("y4", 3), ("y1", -2), ("y3", -1)],
        )
        .term(2, &[("y2", 3), ("y3", 1), ("y5", 1), ("y1", -1)])
        .term(1, &[("y2", 3), ("y3", 2), ("y5", 1), ("y4", -3)])
        .term(1, &[("y2", 3), ("y4", 3), ("y5", 1), ("y1", -2)])
        .rf()
}

pub fn y5b() -> RationalFunction {
    let t = yt();
    Sum::new(&t)
        .term(1, &[("y1", 1), ("y2", -1)])
        .term(1, &[("y4", 1)])
        .term(1, &[("y3", 1), ("y5", 1), ("y2", -1)])
        .term(
            1,
            &[("y1", 1), ("y3", 1), ("y5", 1), ("y2", -2), ("y4", -1)],
        )
        .term(
            1,
            &[("y1", 1), ("y3", 2), ("y5", 1), ("y2", -1), ("y4", -3)],
        )
        .rf()
}

pub fn y4b() -> RationalFunction {
    let t = yt();
    Sum::new(&t)
        .term(1, &[("y2", 2)])
        .term(1, &[("y0", 1), ("y2", 2), ("y1", -1)])
        .term(
            1,
            &[("y0", 1), ("y2", 1), ("y4", 2), ("y1", -1), ("y3", -1)],
        )
        .term(
            1,
            &[("y0", 1), ("y2", 2), ("y4", 3), ("y1", -2), ("y3", -1)],
        )
        .term(2, &[("y2", 2), ("y3", 1), ("y5", 1), ("y1", -1)])
        .term(1, &[("y2", 1), ("y3", 1), ("y5", 1), ("y4", -1)])
        .term(1, &[("y2", 2), ("y3", 2), ("y5", 1), ("y4", -3)])
        .term(1, &[("y2", 1), ("y4", 2), ("y5", 1), ("y1", -1)])
        .term(1, &[("y2", 2), ("y4", 3), ("y5", 1), ("y1", -2)])
        .rf()
}

pub fn y3b() -> RationalFunction {
    let t = yt();
    Sum::new(&t)
        .term(1, &[("y2", 1)])
        .term(1, &[("y0", 1), ("y2", 1), ("y1", -1)])
        .term(1, &[("y0", 1), ("y4", 1), ("y2", -1), ("y3", -1)])
        .term(2, &[("y0", 1), ("y4", 2), ("y1", -1), ("y3", -1)])
        .term(
            1,
            &[("y0", 1), ("y2", 1), ("y4", 3), ("y1", -2), ("y3", -1)],
        )
        .term(2, &[("y2", 1), ("y3", 1), ("y5", 1), ("y1", -1)])
        .term(2, &[("y3", 1), ("y5", 1), ("y4", -1)])
        .term(1, &[("y2", 1), ("y3", 2), ("y5", 1), ("y4", -3)])
        .term(1, &[("y4", 1), ("y5", 1), ("y2", -1)])
        .term(2, &[("y4", 2), ("y5", 1), ("y1", -1)])
        .term(1, &[("y2", 1), ("y4", 3), ("y5", 1), ("y1", -2)])
        .rf()
}

pub fn y2b() -> RationalFunction {
    let t = yt();
    Sum::new(&t)
        .term(1, &[])
        .term(1, &[("y0", 1), ("y1", -1)])
        .term(1, &[("y0", 1), ("y1", 1), ("y2", -3), ("y3", -1)])
        .term(3, &[("y0", 1), ("y4", 1), ("y2", -2), ("y3", -1)])
        .term(
            3,
            &[("y0", 1), ("y4", 2), ("y1", -1), ("y2", -1), ("y3", -1)],
        )
        .term(1, &[("y0", 1), ("y4", 3), ("y1", -2), ("y3", -1)])
        .term(1, &[("y1", 1), ("y5", 1), ("y2", -3)])
        .term(2, &[("y3", 1), ("y5", 1), ("y1", -1)])
        .term(3, &[("y3", 1), ("y5", 1), ("y2", -1), ("y4", -1)])
        .term(
            1,
            &[
                ("y0", 1),
                ("y1", 1),
                ("y3", 1),
                ("y5", 1),
                ("y2", -3),
                ("y4", -3),
            ],
        )
        .term(1, &[("y3", 2), ("y5", 1), ("y4", -3)])
        .term(3, &[("y4", 1), ("y5", 1), ("y2", -2)])
        .term(3, &[("y4", 2), ("y5", 1), ("y1", -1), ("y2", -1)])
        .term(1, &[("y4", 3), ("y5", 1), ("y1", -2)])
        .rf()
}

pub fn y1b() -> RationalFunction {
    let t = yt();
    Sum::new(&t)
        .term(1, &[("y0", 2), ("y1", -1), ("y3", -1)])
        .term(1, &[("y5", 1)])
        .term(1, &[("y0", 1), ("y3", -1)])
        .term(1, &[("y0", 1), ("y5", 1), ("y1", -1)])
        .term(1, &[("y0", 1), ("y3", 1), ("y5", 1), ("y4", -3)])
        .rf()
}

pub fn yphi() -> RationalFunction {
    Sum::new(&yt()).term(1, &[("y0", 1)]).rf()
}

/// First-chart coefficient formula of a basis vector.
pub fn x_named(b: BasisVector) -> RationalFunction {
    use BasisVector::*;
    match b {
        B1 => x1(),
        B2 => x2(),
        B3 => x3(),
        B4 => x4(),
        B5 => x5(),
        B6 => x6(),
        B1Bar => x1b(),
        B2Bar => x2b(),
        B3Bar => x3b(),
        B4Bar => x4b(),
        B5Bar => x5b(),
        B6Bar => x6b(),
        Phi => xphi(),
        Zero1 => x01(),
        Zero2 => x02(),
    }
}

/// Second-chart coefficient formula of a basis vector.
pub fn y_named(b: BasisVector) -> RationalFunction {
    use BasisVector::*;
    match b {
        B1 => y1(),
        B2 => y2(),
        B3 => y3(),
        B4 => y4(),
        B5 => y5(),
        B6 => y6(),
        B1Bar => y1b(),
        B2Bar => y2b(),
        B3Bar => y3b(),
        B4Bar => y4b(),
        B5Bar => y5b(),
        B6Bar => y6b(),
        Phi => yphi(),
        Zero1 => y01(),
        Zero2 => y02(),
    }
}

// ---- chart-change scalars ----

pub fn m_formula() -> RationalFunction {
    let t = xt();
    Sum::new(&t)
        .term(1, &[("x3", 1), ("x4", 2), ("x0", -1), ("x2", -1)])
        .term(3, &[("x4", 3), ("x0", -1)])
        .term(1, &[("x3", 1), ("x5", 1), ("x2", -1), ("x4", -1)])
        .term(3, &[("x2", 1), ("x4", 4), ("x0", -1), ("x3", -1)])
        .term(3, &[("x2", 1), ("x4", 1), ("x5", 1), ("x0", -1)])
        .term(1, &[("x2", 2), ("x4", 2), ("x0", -1), ("x1", -1)])
        .term(1, &[("x2", 2), ("x4", 2), ("x1", -1), ("x3", -1)])
        .term(1, &[("x2", 2), ("x4", 5), ("x0", -1), ("x3", -2)])
        .term(1, &[("x2", 2), ("x5", 1), ("x1", -1), ("x4", -1)])
        .term(
            2,
            &[("x2", 2), ("x4", 2), ("x5", 1), ("x0", -1), ("x3", -1)],
        )
        .term(1, &[("x2", 2), ("x5", 2), ("x0", -1), ("x4", -1)])
        .rf()
}

pub fn n_formula() -> RationalFunction {
    let t = xt();
    Sum::new(&t)
        .term(3, &[("x1", 1), ("x3", 1), ("x2", -3)])
        .term(1, &[("x2", 1), ("x3", 1), ("x1", -1), ("x4", -2)])
        .term(2, &[("x3", 2), ("x2", -2), ("x4", -2)])
        .term(1, &[("x1", 1), ("x3", 3), ("x2", -5), ("x4", -2)])
        .term(3, &[("x3", 1), ("x2", -1), ("x4", -1)])
        .term(3, &[("x1", 1), ("x3", 2), ("x2", -4), ("x4", -1)])
        .term(1, &[("x1", 1), ("x4", 1), ("x2", -2)])
        .term(1, &[("x2", 1), ("x4", 1), ("x0", -1)])
        .term(
            1,
            &[("x1", 1), ("x3", 1), ("x5", 1), ("x2", -2), ("x4", -2)],
        )
        .term(
            1,
            &[("x2", 1), ("x3", 1), ("x5", 1), ("x0", -1), ("x4", -2)],
        )
        .term(
            1,
            &[
                ("x1", 1),
                ("x3", 2),
                ("x5", 1),
                ("x0", -1),
                ("x2", -2),
                ("x4", -2),
            ],
        )
        .rf()
}

/// The proportionality scalar of the chart change.
pub fn a_formula() -> RationalFunction {
    let t = xt();
    let m = m_formula();
    let sq = RationalFunction::from_poly(mono(&t, 1, &[("x2", 2), ("x4", 2)]));
    m.div(&sq).expect("monomial denominators never vanish")
}

pub fn p_formula() -> RationalFunction {
    let t = yt();
    Sum::new(&t)
        .term(1, &[("y0", 1)])
        .term(1, &[("y1", 1)])
        .term(1, &[("y0", 1), ("y1", 1), ("y5", 1), ("y2", -3)])
        .term(2, &[("y3", 1), ("y5", 1)])
        .term(2, &[("y0", 1), ("y3", 1), ("y5", 1), ("y1", -1)])
        .term(1, &[("y0", 1), ("y3", 2), ("y5", 1), ("y4", -3)])
        .term(2, &[("y1", 1), ("y3", 2), ("y5", 1), ("y4", -3)])
        .term(
            3,
            &[("y0", 1), ("y3", 1), ("y5", 1), ("y2", -1), ("y4", -1)],
        )
        .term(
            3,
            &[("y1", 1), ("y3", 1), ("y5", 1), ("y2", -1), ("y4", -1)],
        )
        .term(3, &[("y0", 1), ("y4", 1), ("y5", 1), ("y2", -2)])
        .term(
            3,
            &[("y0", 1), ("y4", 2), ("y5", 1), ("y1", -1), ("y2", -1)],
        )
        .term(1, &[("y0", 1), ("y4", 3), ("y5", 1), ("y1", -2)])
        .term(1, &[("y1", 1), ("y3", 1), ("y5", 2), ("y2", -3)])
        .term(3, &[("y3", 2), ("y5", 2), ("y1", -1)])
        .term(1, &[("y1", 1), ("y3", 4), ("y5", 2), ("y4", -6)])
        .term(
            3,
            &[("y1", 1), ("y3", 3), ("y5", 2), ("y2", -1), ("y4", -4)],
        )
        .term(3, &[("y3", 3), ("y5", 2), ("y4", -3)])
        .term(
            3,
            &[("y1", 1), ("y3", 2), ("y5", 2), ("y2", -2), ("y4", -2)],
        )
        .term(6, &[("y3", 2), ("y5", 2), ("y2", -1), ("y4", -1)])
        .term(3, &[("y3", 1), ("y4", 1), ("y5", 2), ("y2", -2)])
        .term(
            3,
            &[("y3", 1), ("y4", 2), ("y5", 2), ("y1", -1), ("y2", -1)],
        )
        .term(1, &[("y3", 1), ("y4", 3), ("y5", 2), ("y1", -2)])
        .rf()
}

// ---- closed-form action coefficients ----

/// The three reciprocal prefix monomials entering the index-1 action:
/// x0/x1, x0*x2^3/(x1^2*x3), x0*x2^3*x4^3/(x1^2*x3^2*x5).
fn eps1_terms(t: &VarTable) -> [LaurentPolynomial; 3] {
    [
        mono(t, 1, &[("x0", 1), ("x1", -1)]),
        mono(t, 1, &[("x0", 1), ("x2", 3), ("x1", -2), ("x3", -1)]),
        mono(
            t,
            1,
            &[
                ("x0", 1),
                ("x2", 3),
                ("x4", 3),
                ("x1", -2),
                ("x3", -2),
                ("x5", -1),
            ],
        ),
    ]
}

/// The two reciprocal prefix monomials entering the index-2 action:
/// x1/x2, x1*x3/(x2^2*x4).
fn eps2_terms(t: &VarTable) -> [LaurentPolynomial; 2] {
    [
        mono(t, 1, &[("x1", 1), ("x2", -1)]),
        mono(t, 1, &[("x1", 1), ("x3", 1), ("x2", -2), ("x4", -1)]),
    ]
}

pub fn eps1() -> RationalFunction {
    let t = xt();
    let [a, b, c] = eps1_terms(&t);
    RationalFunction::from_poly(&(&a + &b) + &c)
}

pub fn eps2() -> RationalFunction {
    let t = xt();
    let [a, b] = eps2_terms(&t);
    RationalFunction::from_poly(&a + &b)
}

pub fn eps0() -> RationalFunction {
    let t = xt();
    let e = e_poly_in(&t, false);
    let den = mono(&t, 1, &[("x0", 3), ("x2", 3), ("x3", 1)]);
    RationalFunction::new(e, den).expect("monomial denominator")
}

pub fn gamma1() -> RationalFunction {
    let t = xt();
    RationalFunction::from_poly(mono(
        &t,
        1,
        &[
            ("x1", 2),
            ("x3", 2),
            ("x5", 2),
            ("x0", -1),
            ("x2", -3),
            ("x4", -3),
        ],
    ))
}

pub fn gamma2() -> RationalFunction {
    let t = xt();
    RationalFunction::from_poly(mono(
        &t,
        1,
        &[("x2", 2), ("x4", 2), ("x1", -1), ("x3", -1), ("x5", -1)],
    ))
}

pub fn gamma0() -> RationalFunction {
    let t = xt();
    RationalFunction::from_poly(mono(
        &t,
        1,
        &[("x0", 2), ("x1", -1), ("x3", -1), ("x5", -1)],
    ))
}

fn cvar(t: &VarTable) -> LaurentPolynomial {
    mono(t, 1, &[("c", 1)])
}

/// C1, C3, C5 scale the odd coordinates under the index-1 action.
pub fn c1_factor() -> RationalFunction {
    let t = xct();
    let [a, b, d] = eps1_terms(&t);
    let c = cvar(&t);
    RationalFunction::new(&(&(&c * &a) + &b) + &d, &(&a + &b) + &d).unwrap()
}

pub fn c3_factor() -> RationalFunction {
    let t = xct();
    let [a, b, d] = eps1_terms(&t);
    let c = cvar(&t);
    RationalFunction::new(&(&(&c * &a) + &(&c * &b)) + &d, &(&(&c * &a) + &b) + &d).unwrap()
}

pub fn c5_factor() -> RationalFunction {
    let t = xct();
    let [a, b, d] = eps1_terms(&t);
    let c = cvar(&t);
    RationalFunction::new(&c * &(&(&a + &b) + &d), &(&(&c * &a) + &(&c * &b)) + &d).unwrap()
}

/// C2, C4 scale coordinates two and four under the index-2 action.
pub fn c2_factor() -> RationalFunction {
    let t = xct();
    let [a, b] = eps2_terms(&t);
    let c = cvar(&t);
    RationalFunction::new(&(&c * &a) + &b, &a + &b).unwrap()
}

pub fn c4_factor() -> RationalFunction {
    let t = xct();
    let [a, b] = eps2_terms(&t);
    let c = cvar(&t);
    RationalFunction::new(&c * &(&a + &b), &(&c * &a) + &b).unwrap()
}

/// Shared polynomial core of the affine action coefficients: with
/// `with_c` the D-variant (parameter on the first and length-3 blocks),
/// without it the parameter-free E-variant.
fn e_poly_in(t: &VarTable, with_c: bool) -> LaurentPolynomial {
    let c = |pows: &[(&str, i64)], coef: i64, carries_c: bool| -> LaurentPolynomial {
        if with_c && carries_c {
            let mut p: Vec<(&str, i64)> = pows.to_vec();
            p.push(("c", 1));
            mono(t, coef, &p)
        } else {
            mono(t, coef, pows)
        }
    };
    // c^2 block only in the D-variant; assemble term by term.
    let lead = if with_c {
        mono(t, 1, &[("x0", 2), ("x2", 3), ("x3", 1), ("c", 2)])
    } else {
        mono(t, 1, &[("x0", 2), ("x2", 3), ("x3", 1)])
    };
    let mut p = lead;
    p = &p + &mono(t, 1, &[("x1", 1), ("x2", 3), ("x3", 2), ("x5", 1)]);
    p = &p + &c(&[("x0", 1), ("x1", 1), ("x3", 3)], 1, true);
    p = &p
        + &c(
            &[("x0", 1), ("x1", 1), ("x2", 1), ("x3", 2), ("x4", 1)],
            3,
            true,
        );
    p = &p
        + &c(
            &[("x0", 1), ("x1", 1), ("x2", 2), ("x3", 1), ("x4", 2)],
            3,
            true,
        );
    p = &p + &c(&[("x0", 1), ("x2", 3), ("x3", 2)], 1, true);
    p = &p + &c(&[("x0", 1), ("x1", 1), ("x2", 3), ("x4", 3)], 1, true);
    p = &p
        + &c(
            &[("x0", 1), ("x1", 1), ("x2", 3), ("x3", 1), ("x5", 1)],
            1,
            true,
        );
    p
}

pub fn d_big() -> RationalFunction {
    RationalFunction::from_poly(e_poly_in(&xct(), true))
}

pub fn e_big() -> RationalFunction {
    RationalFunction::from_poly(e_poly_in(&xct(), false))
}

pub fn f_big() -> RationalFunction {
    let t = xct();
    Sum::new(&t)
        .term(1, &[("c", 1), ("x0", 2), ("x2", 3), ("x3", 1)])
        .term(1, &[("x1", 1), ("x2", 3), ("x3", 2), ("x5", 1)])
        .term(1, &[("c", 1), ("x0", 1), ("x1", 1), ("x3", 3)])
        .term(
            3,
            &[
                ("c", 1),
                ("x0", 1),
                ("x1", 1),
                ("x2", 1),
                ("x3", 2),
                ("x4", 1),
            ],
        )
        .term(
            3,
            &[
                ("c", 1),
                ("x0", 1),
                ("x1", 1),
                ("x2", 2),
                ("x3", 1),
                ("x4", 2),
            ],
        )
        .term(1, &[("x0", 1), ("x2", 3), ("x3", 2)])
        .term(1, &[("c", 1), ("x0", 1), ("x1", 1), ("x2", 3), ("x4", 3)])
        .term(
            1,
            &[
                ("c", 1),
                ("x0", 1),
                ("x1", 1),
                ("x2", 3),
                ("x3", 1),
                ("x5", 1),
            ],
        )
        .rf()
}

pub fn g_big() -> RationalFunction {
    let t = xct();
    Sum::new(&t)
        .term(1, &[("c", 1), ("x0", 2), ("x2", 3), ("x3", 1)])
        .term(1, &[("x1", 1), ("x2", 3), ("x3", 2), ("x5", 1)])
        .term(1, &[("x0", 1), ("x1", 1), ("x3", 3)])
        .term(2, &[("x0", 1), ("x1", 1), ("x2", 1), ("x3", 2), ("x4", 1)])
        .term(
            1,
            &[
                ("c", 1),
                ("x0", 1),
                ("x1", 1),
                ("x2", 1),
                ("x3", 2),
                ("x4", 1),
            ],
        )
        .term(1, &[("x0", 1), ("x1", 1), ("x2", 2), ("x3", 1), ("x4", 2)])
        .term(
            2,
            &[
                ("c", 1),
                ("x0", 1),
                ("x1", 1),
                ("x2", 2),
                ("x3", 1),
                ("x4", 2),
            ],
        )
        .term(1, &[("x0", 1), ("x2", 3), ("x3", 2)])
        .term(1, &[("c", 1), ("x0", 1), ("x1", 1), ("x2", 3), ("x4", 3)])
        .term(
            1,
            &[
                ("c", 1),
                ("x0", 1),
                ("x1", 1),
                ("x2", 3),
                ("x3", 1),
                ("x5", 1),
            ],
        )
        .rf()
}

pub fn h_big() -> RationalFunction {
    let t = xct();
    Sum::new(&t)
        .term(1, &[("c", 1), ("x0", 2), ("x2", 3), ("x3", 1)])
        .term(1, &[("x1", 1), ("x2", 3), ("x3", 2), ("x5", 1)])
        .term(1, &[("x0", 1), ("x1", 1), ("x3", 3)])
        .term(3, &[("x0", 1), ("x1", 1), ("x2", 1), ("x3", 2), ("x4", 1)])
        .term(3, &[("x0", 1), ("x1", 1), ("x2", 2), ("x3", 1), ("x4", 2)])
        .term(1, &[("x0", 1), ("x2", 3), ("x3", 2)])
        .term(1, &[("x0", 1), ("x1", 1), ("x2", 3), ("x4", 3)])
        .term(
            1,
            &[
                ("c", 1),
                ("x0", 1),
                ("x1", 1),
                ("x2", 3),
                ("x3", 1),
                ("x5", 1),
            ],
        )
        .rf()
}

/// Explicit update of the six chart coordinates under e_i^c, over the
/// chart variables extended by c.
pub fn explicit_update(i: usize) -> Vec<RationalFunction> {
    let t = xct();
    let var = |n: &str| RationalFunction::var(&t, n);
    match i {
        1 => vec![
            var("x0"),
            c1_factor().mul(&var("x1")).unwrap(),
            var("x2"),
            c3_factor().mul(&var("x3")).unwrap(),
            var("x4"),
            c5_factor().mul(&var("x5")).unwrap(),
        ],
        2 => vec![
            var("x0"),
            var("x1"),
            c2_factor().mul(&var("x2")).unwrap(),
            var("x3"),
            c4_factor().mul(&var("x4")).unwrap(),
            var("x5"),
        ],
        0 => {
            let (d, e, f, g, h) = (d_big(), e_big(), f_big(), g_big(), h_big());
            let c = var("c");
            let ce = c.mul(&e).unwrap();
            vec![
                RationalFunction::product(&[(&d, 1), (&ce, -1), (&var("x0"), 1)]).unwrap(),
                RationalFunction::product(&[(&f, 1), (&ce, -1), (&var("x1"), 1)]).unwrap(),
                RationalFunction::product(&[(&g, 1), (&ce, -1), (&var("x2"), 1)]).unwrap(),
                RationalFunction::product(&[
                    (&d, 1),
                    (&h, 1),
                    (&c, -2),
                    (&e, -1),
                    (&f, -1),
                    (&var("x3"), 1),
                ])
                .unwrap(),
                RationalFunction::product(&[(&d, 1), (&c, -1), (&g, -1), (&var("x4"), 1)]).unwrap(),
                RationalFunction::product(&[(&d, 1), (&c, -1), (&h, -1), (&var("x5"), 1)]).unwrap(),
            ]
        }
        _ => panic!("operator index out of range: {i}"),
    }
}

// ---- registry ----

const SCALAR_NAMES: [&str; 20] = [
    "M", "N", "P", "a", "C1", "C2", "C3", "C4", "C5", "D", "E", "F", "G", "H", "eps0", "eps1",
    "eps2", "gamma0", "gamma1", "gamma2",
];

fn build_by_name(name: &str) -> Result<RationalFunction> {
    for b in crate::g2module::BASIS {
        if name == format!("X{}", b.label()) {
            return Ok(x_named(b));
        }
        if name == format!("Y{}", b.label()) {
            return Ok(y_named(b));
        }
    }
    for i in 0..3 {
        for k in 0..6 {
            if name == format!("e{i}_x{k}") {
                return Ok(explicit_update(i).swap_remove(k));
            }
        }
    }
    for k in 0..6 {
        if name == format!("sigma_y{k}") {
            return Ok(super::sigma::sigma_symbolic()[k].clone());
        }
        if name == format!("sigmainv_x{k}") {
            return Ok(super::sigma::sigma_inv_symbolic()[k].clone());
        }
    }
    let built = match name {
        "M" => m_formula(),
        "N" => n_formula(),
        "P" => p_formula(),
        "a" => a_formula(),
        "C1" => c1_factor(),
        "C2" => c2_factor(),
        "C3" => c3_factor(),
        "C4" => c4_factor(),
        "C5" => c5_factor(),
        "D" => d_big(),
        "E" => e_big(),
        "F" => f_big(),
        "G" => g_big(),
        "H" => h_big(),
        "eps0" => eps0(),
        "eps1" => eps1(),
        "eps2" => eps2(),
        "gamma0" => gamma0(),
        "gamma1" => gamma1(),
        "gamma2" => gamma2(),
        "sigma_y5_printed" => super::sigma::sigma_y5_printed(),
        _ => return Err(Error::UnknownFormula(name.to_string())),
    };
    Ok(built)
}

/// Looks up a formula by name, building and caching it on first use.
///
/// Construction is deferred per name because the sizes are wildly uneven:
/// most entries normalize in microseconds, while the uncorrected
/// `sigma_y5_printed` transcription expands to tens of thousands of terms.
/// Deferring keeps commands that never touch it fast.
pub fn lookup(name: &str) -> Result<RationalFunction> {
    static CACHE: OnceLock<Mutex<BTreeMap<String, RationalFunction>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(BTreeMap::new()));
    if let Some(found) = cache.lock().unwrap().get(name) {
        return Ok(found.clone());
    }
    let built = build_by_name(name)?;
    cache
        .lock()
        .unwrap()
        .insert(name.to_string(), built.clone());
    Ok(built)
}

/// Every name accepted by `lookup`, in sorted order.
pub fn formula_names() -> Vec<String> {
    let mut names: Vec<String> = Vec::new();
    for b in crate::g2module::BASIS {
        names.push(format!("X{}", b.label()));
        names.push(format!("Y{}", b.label()));
    }
    names.extend(SCALAR_NAMES.iter().map(|s| s.to_string()));
    for i in 0..3 {
        for k in 0..6 {
            names.push(format!("e{i}_x{k}"));
        }
    }
    for k in 0..6 {
        names.push(format!("sigma_y{k}"));
        names.push(format!("sigmainv_x{k}"));
    }
    names.push("sigma_y5_printed".to_string());
    names.sort();
    names
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfunc::{Positivity, RationalPoint};
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn int(n: i64) -> BigRational {
        BigRational::from(BigInt::from(n))
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn test_x_formulas_at_all_ones() {
        let p = RationalPoint::all_ones(&VarTable::x_chart());
        let expect: [(fn() -> RationalFunction, i64); 8] = [
            (x1, 12),
            (x2, 18),
            (x3, 6),
            (x4, 6),
            (x5, 6),
            (x6, 10),
            (x01, 1),
            (x02, 10),
        ];
        for (f, v) in expect {
            assert_eq!(f().eval(&p).unwrap(), int(v));
        }
        let barred: [(fn() -> RationalFunction, i64); 7] = [
            (x6b, 15),
            (x5b, 2),
            (x4b, 3),
            (x3b, 1),
            (x2b, 1),
            (x1b, 1),
            (xphi, 1),
        ];
        for (f, v) in barred {
            assert_eq!(f().eval(&p).unwrap(), int(v));
        }
    }

    #[test]
    fn test_scalars_at_all_ones() {
        let p = RationalPoint::all_ones(&VarTable::x_chart());
        assert_eq!(m_formula().eval(&p).unwrap(), int(18));
        assert_eq!(n_formula().eval(&p).unwrap(), int(18));
        assert_eq!(a_formula().eval(&p).unwrap(), int(18));
        assert_eq!(eps1().eval(&p).unwrap(), int(3));
        assert_eq!(eps2().eval(&p).unwrap(), int(2));
        assert_eq!(eps0().eval(&p).unwrap(), int(12));
        assert_eq!(gamma0().eval(&p).unwrap(), int(1));
    }

    #[test]
    fn test_affine_blocks_at_reference_point() {
        let mut p = RationalPoint::all_ones(&VarTable::x_chart_c());
        p.set("c", int(2));
        assert_eq!(d_big().eval(&p).unwrap(), int(25));
        assert_eq!(e_big().eval(&p).unwrap(), int(12));
        assert_eq!(f_big().eval(&p).unwrap(), int(22));
        assert_eq!(g_big().eval(&p).unwrap(), int(18));
        assert_eq!(h_big().eval(&p).unwrap(), int(14));
    }

    #[test]
    fn test_affine_update_at_reference_point() {
        let mut p = RationalPoint::all_ones(&VarTable::x_chart_c());
        p.set("c", int(2));
        let coords = explicit_update(0);
        let got: Vec<BigRational> = coords.iter().map(|f| f.eval(&p).unwrap()).collect();
        let expect = [
            rat(25, 24),
            rat(11, 12),
            rat(3, 4),
            rat(175, 528),
            rat(25, 36),
            rat(25, 28),
        ];
        assert_eq!(got, expect.to_vec());
    }

    #[test]
    fn test_index2_factors_telescope() {
        // The product of the two scaling factors of the index-2 action
        // collapses to the bare parameter.
        let t = VarTable::x_chart_c();
        let c = RationalFunction::var(&t, "c");
        let prod = c2_factor().mul(&c4_factor()).unwrap();
        assert!(prod.equiv(&c).unwrap());
        // Likewise the three index-1 factors.
        let prod1 = c1_factor()
            .mul(&c3_factor())
            .unwrap()
            .mul(&c5_factor())
            .unwrap();
        assert!(prod1.equiv(&c).unwrap());
    }

    #[test]
    fn test_all_registered_formulas_are_positive() {
        for name in formula_names() {
            let f = lookup(&name).unwrap();
            assert_eq!(
                f.positivity(),
                Positivity::VerifiedPositive,
                "{name} is not subtraction-free as stored"
            );
        }
    }

    #[test]
    fn test_lookup_unknown_name_errors() {
        assert!(lookup("gamma1").is_ok());
        assert!(lookup("nonsense").is_err());
    }
}
