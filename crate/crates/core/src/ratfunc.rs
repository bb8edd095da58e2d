//! Exact arithmetic over multivariate Laurent polynomials and their
//! quotients.
//!
//! Coefficients are arbitrary-precision rationals, exponents are signed
//! integers (negative powers are first-class), and every value carries a
//! fixed, ordered variable table. Polynomials are canonical by
//! construction: a term map under the graded-lexicographic order with no
//! zero coefficients stored, so structural equality is semantic equality.
//! Quotients are normalized but deliberately *not* reduced to lowest terms:
//! equality of quotients is decided by cross-multiplication, never by
//! multivariate gcd.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Variable names any table may draw from: the two six-variable torus
/// charts, the action parameters, and the valuation variable.
pub const ALLOWED_VARS: [&str; 16] = [
    "x0", "x1", "x2", "x3", "x4", "x5", "y0", "y1", "y2", "y3", "y4", "y5", "c", "c1", "c2", "t",
];

/// An ordered list of distinct variable names, fixed for the lifetime of
/// every expression built over it.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarTable(Arc<Vec<String>>);

impl VarTable {
    pub fn new(names: &[&str]) -> Result<Self> {
        let mut seen = Vec::new();
        for n in names {
            if !ALLOWED_VARS.contains(n) {
                return Err(Error::InvalidVarName((*n).to_string()));
            }
            if seen.contains(n) {
                return Err(Error::DuplicateVarName((*n).to_string()));
            }
            seen.push(n);
        }
        Ok(VarTable(Arc::new(
            names.iter().map(|s| s.to_string()).collect(),
        )))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    /// Fast sameness test: pointer equality first, contents second.
    pub fn same(&self, other: &VarTable) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }

    /// The x-side torus chart (x0..x5).
    pub fn x_chart() -> Self {
        static T: OnceLock<VarTable> = OnceLock::new();
        T.get_or_init(|| VarTable::new(&["x0", "x1", "x2", "x3", "x4", "x5"]).unwrap())
            .clone()
    }

    /// The y-side torus chart (y0..y5).
    pub fn y_chart() -> Self {
        static T: OnceLock<VarTable> = OnceLock::new();
        T.get_or_init(|| VarTable::new(&["y0", "y1", "y2", "y3", "y4", "y5"]).unwrap())
            .clone()
    }

    /// x-chart extended by the action parameter c.
    pub fn x_chart_c() -> Self {
        static T: OnceLock<VarTable> = OnceLock::new();
        T.get_or_init(|| VarTable::new(&["x0", "x1", "x2", "x3", "x4", "x5", "c"]).unwrap())
            .clone()
    }

    /// y-chart extended by the action parameter c.
    pub fn y_chart_c() -> Self {
        static T: OnceLock<VarTable> = OnceLock::new();
        T.get_or_init(|| VarTable::new(&["y0", "y1", "y2", "y3", "y4", "y5", "c"]).unwrap())
            .clone()
    }

    fn mismatch(&self, other: &VarTable) -> Error {
        Error::VarTableMismatch(self.names().join(","), other.names().join(","))
    }
}

/// Exponent vector of a Laurent monomial, ordered graded-lexicographically:
/// first by total degree (the sum, which may be negative), then by the
/// exponent vector itself.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<i64>);

impl Monomial {
    pub fn grade(&self) -> i64 {
        self.0.iter().sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.0.len(), other.0.len());
        self.grade()
            .cmp(&other.grade())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Exact power with signed exponent; requires a nonzero base for negative
/// exponents.
pub fn rat_pow(v: &BigRational, e: i64) -> Result<BigRational> {
    if e == 0 {
        return Ok(BigRational::one());
    }
    if v.is_zero() {
        if e > 0 {
            return Ok(BigRational::zero());
        }
        return Err(Error::DivisionByZero);
    }
    let mut base = if e > 0 { v.clone() } else { v.recip() };
    let mut k = e.unsigned_abs();
    let mut acc = BigRational::one();
    while k > 0 {
        if k & 1 == 1 {
            acc *= &base;
        }
        k >>= 1;
        if k > 0 {
            base = &base * &base;
        }
    }
    Ok(acc)
}

/// A multivariate Laurent polynomial in canonical form: a finite map from
/// exponent vectors to nonzero rational coefficients.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct LaurentPolynomial {
    vars: VarTable,
    terms: BTreeMap<Monomial, BigRational>,
}

impl LaurentPolynomial {
    pub fn zero(vars: &VarTable) -> Self {
        LaurentPolynomial {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(vars: &VarTable) -> Self {
        Self::constant(vars, BigRational::one())
    }

    pub fn constant(vars: &VarTable, c: BigRational) -> Self {
        let mut p = Self::zero(vars);
        p.insert_term(Monomial(vec![0; vars.len()]), c);
        p
    }

    /// Single term `coef * prod var^exp` given as (name, exponent) pairs.
    /// Repeated names accumulate their exponents.
    pub fn monomial(vars: &VarTable, coef: BigRational, pows: &[(&str, i64)]) -> Self {
        let mut e = vec![0i64; vars.len()];
        for (name, exp) in pows {
            let i = vars
                .index_of(name)
                .unwrap_or_else(|| panic!("variable {name:?} not in table"));
            e[i] += exp;
        }
        let mut p = Self::zero(vars);
        p.insert_term(Monomial(e), coef);
        p
    }

    pub fn var(vars: &VarTable, name: &str) -> Self {
        Self::monomial(vars, BigRational::one(), &[(name, 1)])
    }

    pub fn vars(&self) -> &VarTable {
        &self.vars
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, BigRational> {
        &self.terms
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn insert_term(&mut self, m: Monomial, c: BigRational) {
        debug_assert_eq!(m.0.len(), self.vars.len());
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Leading term under the graded-lexicographic order.
    pub fn leading(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        if k.is_zero() {
            return Self::zero(&self.vars);
        }
        LaurentPolynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    /// Per-variable minimum exponent over all terms; None for the zero
    /// polynomial.
    pub fn min_exps(&self) -> Option<Vec<i64>> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        let mut m = first.0.clone();
        for mon in it {
            for (a, b) in m.iter_mut().zip(&mon.0) {
                if *b < *a {
                    *a = *b;
                }
            }
        }
        Some(m)
    }

    /// Multiply by the monomial with exponent vector `-shift` (i.e. lower
    /// every term's exponents by `shift`).
    pub fn shifted_down(&self, shift: &[i64]) -> Self {
        LaurentPolynomial {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let e = m.0.iter().zip(shift).map(|(a, s)| a - s).collect();
                    (Monomial(e), c.clone())
                })
                .collect(),
        }
    }

    /// Total degree of the polynomial after clearing Laurent denominators:
    /// max over terms of the exponent sum relative to the per-variable
    /// minimum. Zero polynomial reports 0.
    pub fn effective_total_degree(&self) -> i64 {
        match self.min_exps() {
            None => 0,
            Some(mins) => self
                .terms
                .keys()
                .map(|m| m.0.iter().zip(&mins).map(|(e, mn)| e - mn).sum::<i64>())
                .max()
                .unwrap_or(0),
        }
    }

    /// True when every stored coefficient is strictly positive (and the
    /// polynomial is nonzero).
    pub fn all_coeffs_positive(&self) -> bool {
        !self.terms.is_empty() && self.terms.values().all(|c| c.is_positive())
    }

    /// Exact evaluation; `values` is aligned with the variable table.
    /// Negative exponents require nonzero values.
    pub fn eval_slice(&self, values: &[BigRational]) -> Result<BigRational> {
        debug_assert_eq!(values.len(), self.vars.len());
        let mut acc = BigRational::zero();
        for (m, coef) in &self.terms {
            let mut t = coef.clone();
            for (e, v) in m.0.iter().zip(values) {
                if *e != 0 {
                    t *= rat_pow(v, *e)?;
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    pub fn eval(&self, p: &RationalPoint) -> Result<BigRational> {
        let values = p.values_for(&self.vars)?;
        self.eval_slice(&values)
    }

    fn assert_same_vars(&self, other: &Self) {
        assert!(
            self.vars.same(&other.vars),
            "variable tables differ: [{}] vs [{}]",
            self.vars.names().join(","),
            other.vars.names().join(",")
        );
    }
}

impl fmt::Debug for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let mut parts = Vec::new();
            for (name, e) in self.vars.names().iter().zip(&m.0) {
                match e {
                    0 => {}
                    1 => parts.push(name.clone()),
                    _ => parts.push(format!("{name}^{e}")),
                }
            }
            let body = parts.join("*");
            let lead = if first { "" } else { " + " };
            if body.is_empty() {
                write!(f, "{lead}{c}")?;
            } else if c.is_one() {
                write!(f, "{lead}{body}")?;
            } else {
                write!(f, "{lead}{c}*{body}")?;
            }
            first = false;
        }
        Ok(())
    }
}

impl std::ops::Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        self.assert_same_vars(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.insert_term(m.clone(), c.clone());
        }
        out
    }
}

impl std::ops::Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        self.assert_same_vars(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.insert_term(m.clone(), -c.clone());
        }
        out
    }
}

impl std::ops::Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        self.assert_same_vars(rhs);
        let mut out = LaurentPolynomial::zero(&self.vars);
        // Iterate the smaller operand outermost: fewer map rebuilds.
        let (small, big) = if self.terms.len() <= rhs.terms.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        for (ma, ca) in &small.terms {
            for (mb, cb) in &big.terms {
                let e = ma.0.iter().zip(&mb.0).map(|(a, b)| a + b).collect();
                out.insert_term(Monomial(e), ca * cb);
            }
        }
        out
    }
}

impl std::ops::Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        self.scale(&-BigRational::one())
    }
}

impl std::ops::Add for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: LaurentPolynomial) -> LaurentPolynomial {
        &self + &rhs
    }
}

impl std::ops::Sub for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: LaurentPolynomial) -> LaurentPolynomial {
        &self - &rhs
    }
}

impl std::ops::Mul for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: LaurentPolynomial) -> LaurentPolynomial {
        &self * &rhs
    }
}

/// Assignment of exact rational values to variable names.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RationalPoint(pub BTreeMap<String, BigRational>);

impl RationalPoint {
    pub fn new() -> Self {
        RationalPoint(BTreeMap::new())
    }

    pub fn from_pairs(pairs: &[(&str, BigRational)]) -> Self {
        RationalPoint(
            pairs
                .iter()
                .map(|(n, v)| (n.to_string(), v.clone()))
                .collect(),
        )
    }

    /// All listed variables set to 1.
    pub fn all_ones(vars: &VarTable) -> Self {
        RationalPoint(
            vars.names()
                .iter()
                .map(|n| (n.clone(), BigRational::one()))
                .collect(),
        )
    }

    pub fn get(&self, name: &str) -> Option<&BigRational> {
        self.0.get(name)
    }

    pub fn set(&mut self, name: &str, v: BigRational) {
        self.0.insert(name.to_string(), v);
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.0.values().all(|v| v.is_positive())
    }

    /// Values aligned with a variable table; every variable must be covered.
    pub fn values_for(&self, vars: &VarTable) -> Result<Vec<BigRational>> {
        vars.names()
            .iter()
            .map(|n| {
                self.0
                    .get(n)
                    .cloned()
                    .ok_or_else(|| Error::MissingVariable(n.clone()))
            })
            .collect()
    }

    /// Restriction used in reports: variable -> decimal rational string.
    pub fn display_map(&self) -> BTreeMap<String, String> {
        self.0
            .iter()
            .map(|(k, v)| (k.clone(), v.to_string()))
            .collect()
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(k, v)| format!("{k}={v}")).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Positivity witness outcome: `VerifiedPositive` means the stored canonical
/// numerator and denominator both have all-positive coefficients. This is a
/// sufficient witness only; no search over alternative representations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Positivity {
    VerifiedPositive,
    NotVerified,
}

/// A quotient of Laurent polynomials, normalized so that the common monomial
/// content of numerator and denominator is cancelled and the denominator's
/// graded-lexicographic leading coefficient is +1. Zero is 0/1.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct RationalFunction {
    num: LaurentPolynomial,
    den: LaurentPolynomial,
}

impl RationalFunction {
    pub fn new(num: LaurentPolynomial, den: LaurentPolynomial) -> Result<Self> {
        if !num.vars.same(&den.vars) {
            return Err(num.vars.mismatch(&den.vars));
        }
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(RationalFunction {
                den: LaurentPolynomial::one(&num.vars),
                num,
            });
        }
        // Cancel the common monomial content.
        let nm = num.min_exps().unwrap();
        let dm = den.min_exps().unwrap();
        let joint: Vec<i64> = nm.iter().zip(&dm).map(|(a, b)| *a.min(b)).collect();
        let (mut num, mut den) = if joint.iter().any(|e| *e != 0) {
            (num.shifted_down(&joint), den.shifted_down(&joint))
        } else {
            (num, den)
        };
        // Monic denominator.
        let lc = den.leading().unwrap().1.clone();
        if !lc.is_one() {
            let inv = lc.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Ok(RationalFunction { num, den })
    }

    pub fn from_poly(p: LaurentPolynomial) -> Self {
        let one = LaurentPolynomial::one(&p.vars);
        // A polynomial over 1 never violates the constructor preconditions.
        RationalFunction::new(p, one).unwrap()
    }

    pub fn zero(vars: &VarTable) -> Self {
        Self::from_poly(LaurentPolynomial::zero(vars))
    }

    pub fn one(vars: &VarTable) -> Self {
        Self::from_poly(LaurentPolynomial::one(vars))
    }

    pub fn constant(vars: &VarTable, c: BigRational) -> Self {
        Self::from_poly(LaurentPolynomial::constant(vars, c))
    }

    pub fn var(vars: &VarTable, name: &str) -> Self {
        Self::from_poly(LaurentPolynomial::var(vars, name))
    }

    pub fn num(&self) -> &LaurentPolynomial {
        &self.num
    }

    pub fn den(&self) -> &LaurentPolynomial {
        &self.den
    }

    pub fn vars(&self) -> &VarTable {
        &self.num.vars
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.vars().same(other.vars()) {
            Ok(())
        } else {
            Err(self.vars().mismatch(other.vars()))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        if self.den == other.den {
            return RationalFunction::new(&self.num + &other.num, self.den.clone());
        }
        let num = &(&self.num * &other.den) + &(&other.num * &self.den);
        RationalFunction::new(num, &self.den * &other.den)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        if self.den == other.den {
            return RationalFunction::new(&self.num - &other.num, self.den.clone());
        }
        let num = &(&self.num * &other.den) - &(&other.num * &self.den);
        RationalFunction::new(num, &self.den * &other.den)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        Self::product(&[(self, 1), (other, 1)])
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::product(&[(self, 1), (other, -1)])
    }

    pub fn neg(&self) -> Self {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    /// Multiply by an exact rational scalar; preserves normalization.
    pub fn scale_rat(&self, k: &BigRational) -> Self {
        if k.is_zero() {
            return Self::zero(self.vars());
        }
        RationalFunction {
            num: self.num.scale(k),
            den: self.den.clone(),
        }
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RationalFunction::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        if e == 0 {
            return Ok(Self::one(self.vars()));
        }
        if self.is_zero() {
            if e > 0 {
                return Ok(self.clone());
            }
            return Err(Error::DivisionByZero);
        }
        Self::product(&[(self, e)])
    }

    /// Product of factors with signed multiplicities.
    ///
    /// Each factor is split into rational scalar x Laurent monomial x monic
    /// primitive part; primitive parts that appear on both sides of the
    /// fraction cancel by structural equality before anything is expanded.
    /// This is the only cancellation the library performs beyond the
    /// normalization in `new` (no gcd).
    pub fn product(factors: &[(&RationalFunction, i64)]) -> Result<Self> {
        let vars = match factors.first() {
            None => panic!("product of an empty factor list has no variable table"),
            Some((f, _)) => f.vars().clone(),
        };
        let mut scalar = BigRational::one();
        let mut shift = vec![0i64; vars.len()];
        // Primitive part -> net multiplicity (num side positive).
        let mut prims: BTreeMap<LaurentPolynomial, i64> = BTreeMap::new();
        for (f, mult) in factors {
            if !f.vars().same(&vars) {
                return Err(vars.mismatch(f.vars()));
            }
            if *mult == 0 {
                continue;
            }
            if f.num.is_zero() {
                if *mult > 0 {
                    return Ok(Self::zero(&vars));
                }
                return Err(Error::DivisionByZero);
            }
            for (poly, side) in [(&f.num, 1i64), (&f.den, -1i64)] {
                let m = *mult * side;
                let mins = poly.min_exps().unwrap();
                let prim = poly.shifted_down(&mins);
                let lc = prim.leading().unwrap().1.clone();
                let prim = if lc.is_one() {
                    prim
                } else {
                    prim.scale(&lc.recip())
                };
                scalar *= rat_pow(&lc, m)?;
                for (s, e) in shift.iter_mut().zip(&mins) {
                    *s += e * m;
                }
                if prim.term_count() > 1 {
                    *prims.entry(prim).or_insert(0) += m;
                }
                // A one-term primitive is the constant 1: absorbed above.
            }
        }
        let mut num = LaurentPolynomial::monomial(&vars, scalar, &[]);
        num = num.shifted_down(&shift.iter().map(|e| -e).collect::<Vec<_>>());
        let mut den = LaurentPolynomial::one(&vars);
        for (prim, m) in &prims {
            for _ in 0..m.unsigned_abs() {
                if *m > 0 {
                    num = &num * prim;
                } else {
                    den = &den * prim;
                }
            }
        }
        RationalFunction::new(num, den)
    }

    /// Exact equality as rational functions, decided deterministically by
    /// cross-multiplication: a.num*b.den == b.num*a.den as canonical
    /// polynomials.
    pub fn equiv(&self, other: &Self) -> Result<bool> {
        self.check_same(other)?;
        Ok(&self.num * &other.den == &other.num * &self.den)
    }

    /// Upper bound on the term products a cross-multiplied equality check
    /// would perform; used against the term budget.
    pub fn equiv_cost(&self, other: &Self) -> u64 {
        (self.num.term_count() as u64) * (other.den.term_count() as u64)
            + (other.num.term_count() as u64) * (self.den.term_count() as u64)
    }

    /// Total degree bound of the cross-multiplied difference, after clearing
    /// Laurent denominators.
    pub fn equiv_degree_bound(&self, other: &Self) -> i64 {
        let a = self.num.effective_total_degree() + other.den.effective_total_degree();
        let b = other.num.effective_total_degree() + self.den.effective_total_degree();
        a.max(b)
    }

    /// Cleared total degree of the quotient itself (numerator plus
    /// denominator), a conservative per-step bound for composition checks.
    pub fn cleared_degree(&self) -> i64 {
        self.num.effective_total_degree() + self.den.effective_total_degree()
    }

    /// Composite `self(subst)`: every variable of the table must be mapped;
    /// all images must share one variable table.
    pub fn substitute(&self, subst: &BTreeMap<String, RationalFunction>) -> Result<Self> {
        let target = match subst.values().next() {
            None => return Err(Error::MissingVariable("<empty substitution>".into())),
            Some(f) => f.vars().clone(),
        };
        for f in subst.values() {
            if !f.vars().same(&target) {
                return Err(target.mismatch(f.vars()));
            }
        }
        let images: Vec<&RationalFunction> = self
            .vars()
            .names()
            .iter()
            .map(|n| {
                subst
                    .get(n)
                    .ok_or_else(|| Error::MissingVariable(n.clone()))
            })
            .collect::<Result<_>>()?;
        // Every monomial of both sides is cleared against one shared
        // denominator prod_k den_k^{pos_k} num_k^{neg_k}, where pos_k and
        // neg_k are the extreme exponents of variable k across the whole
        // quotient. The shared denominator cancels between the two sides,
        // so it is never materialized: each side becomes a single
        // polynomial sum of cleared terms. Summing term quotients instead
        // would stack up pairwise denominator products whose term count
        // grows geometrically with the number of monomials.
        let nvars = self.vars().len();
        let mut pos = vec![0i64; nvars];
        let mut neg = vec![0i64; nvars];
        for mon in self.num.terms.keys().chain(self.den.terms.keys()) {
            for (k, e) in mon.0.iter().enumerate() {
                pos[k] = pos[k].max(*e);
                neg[k] = neg[k].max(-*e);
            }
        }
        for (k, img) in images.iter().enumerate() {
            if neg[k] > 0 && img.is_zero() {
                return Err(Error::DivisionByZero);
            }
        }
        let power_table = |base: &LaurentPolynomial, up_to: i64| -> Vec<LaurentPolynomial> {
            let mut table = vec![LaurentPolynomial::one(&target)];
            for j in 1..=up_to as usize {
                table.push(&table[j - 1] * base);
            }
            table
        };
        let num_pows: Vec<Vec<LaurentPolynomial>> = images
            .iter()
            .enumerate()
            .map(|(k, img)| power_table(img.num(), pos[k] + neg[k]))
            .collect();
        let den_pows: Vec<Vec<LaurentPolynomial>> = images
            .iter()
            .enumerate()
            .map(|(k, img)| power_table(img.den(), pos[k] + neg[k]))
            .collect();
        let cleared = |poly: &LaurentPolynomial| -> LaurentPolynomial {
            let mut acc = LaurentPolynomial::zero(&target);
            'terms: for (mon, coef) in &poly.terms {
                let mut term = LaurentPolynomial::constant(&target, coef.clone());
                for (k, e) in mon.0.iter().enumerate() {
                    let num_power = e + neg[k];
                    let den_power = pos[k] - e;
                    if num_power > 0 {
                        if images[k].is_zero() {
                            continue 'terms;
                        }
                        term = &term * &num_pows[k][num_power as usize];
                    }
                    if den_power > 0 {
                        term = &term * &den_pows[k][den_power as usize];
                    }
                }
                acc = &acc + &term;
            }
            acc
        };
        let num = cleared(&self.num);
        let den = cleared(&self.den);
        if den.is_zero() {
            return Err(Error::SubstitutionZeroDenominator(format!("{self}")));
        }
        RationalFunction::new(num, den)
    }

    /// Exact evaluation at a point covering all variables.
    pub fn eval(&self, p: &RationalPoint) -> Result<BigRational> {
        let values = p.values_for(self.vars())?;
        let dv = self
            .den
            .eval_slice(&values)
            .map_err(|_| Error::EvalAtPole(p.to_string()))?;
        if dv.is_zero() {
            return Err(Error::EvalAtPole(p.to_string()));
        }
        let nv = self
            .num
            .eval_slice(&values)
            .map_err(|_| Error::EvalAtPole(p.to_string()))?;
        Ok(nv / dv)
    }

    /// Subtraction-freeness witness on the stored canonical representation.
    pub fn positivity(&self) -> Positivity {
        if self.num.all_coeffs_positive() && self.den.all_coeffs_positive() {
            Positivity::VerifiedPositive
        } else {
            Positivity::NotVerified
        }
    }

    // ---- expression JSON ----

    /// Serialize as `{"vars":[...], "num":[{"coef":"p/q","exp":[...]}], "den":[...]}`
    /// with terms in descending graded-lexicographic order. Round-trips
    /// bit-exactly.
    pub fn to_expression_json(&self) -> serde_json::Value {
        let poly = |p: &LaurentPolynomial| -> serde_json::Value {
            serde_json::Value::Array(
                p.terms
                    .iter()
                    .rev()
                    .map(|(m, c)| {
                        serde_json::json!({
                            "coef": c.to_string(),
                            "exp": m.0.clone(),
                        })
                    })
                    .collect(),
            )
        };
        serde_json::json!({
            "vars": self.vars().names(),
            "num": poly(&self.num),
            "den": poly(&self.den),
        })
    }

    pub fn from_expression_json(v: &serde_json::Value) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Expr("expected an object".into()))?;
        let names: Vec<&str> = obj
            .get("vars")
            .and_then(|x| x.as_array())
            .ok_or_else(|| Error::Expr("missing \"vars\" array".into()))?
            .iter()
            .map(|x| {
                x.as_str()
                    .ok_or_else(|| Error::Expr("non-string var".into()))
            })
            .collect::<Result<_>>()?;
        let vars = VarTable::new(&names)?;
        let parse_poly = |key: &str| -> Result<LaurentPolynomial> {
            let arr = obj
                .get(key)
                .and_then(|x| x.as_array())
                .ok_or_else(|| Error::Expr(format!("missing {key:?} array")))?;
            let mut p = LaurentPolynomial::zero(&vars);
            for t in arr {
                let coef_s = t
                    .get("coef")
                    .and_then(|x| x.as_str())
                    .ok_or_else(|| Error::Expr("term without \"coef\" string".into()))?;
                let coef = BigRational::from_str(coef_s)
                    .map_err(|e| Error::Expr(format!("bad coefficient {coef_s:?}: {e}")))?;
                let exp: Vec<i64> = t
                    .get("exp")
                    .and_then(|x| x.as_array())
                    .ok_or_else(|| Error::Expr("term without \"exp\" array".into()))?
                    .iter()
                    .map(|x| {
                        x.as_i64()
                            .ok_or_else(|| Error::Expr("non-integer exponent".into()))
                    })
                    .collect::<Result<_>>()?;
                if exp.len() != vars.len() {
                    return Err(Error::Expr(format!(
                        "exponent vector length {} does not match {} variables",
                        exp.len(),
                        vars.len()
                    )));
                }
                p.insert_term(Monomial(exp), coef);
            }
            Ok(p)
        };
        RationalFunction::new(parse_poly("num")?, parse_poly("den")?)
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.term_count() == 1 && self.den == LaurentPolynomial::one(self.vars()) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl std::ops::Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        self.add(rhs).expect("rational function addition failed")
    }
}

impl std::ops::Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self.sub(rhs).expect("rational function subtraction failed")
    }
}

impl std::ops::Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        self.mul(rhs).expect("rational function product failed")
    }
}

impl std::ops::Div for &RationalFunction {
    type Output = RationalFunction;
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        self.div(rhs).expect("rational function quotient failed")
    }
}

/// Convenience constructor used throughout the formula transcriptions:
/// integer-coefficient monomial over `vars`.
pub fn mono(vars: &VarTable, coef: i64, pows: &[(&str, i64)]) -> LaurentPolynomial {
    LaurentPolynomial::monomial(vars, rat(coef, 1), pows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xt() -> VarTable {
        VarTable::x_chart()
    }

    // ---- polynomial arithmetic ----

    #[test]
    fn test_difference_of_squares() {
        let t = xt();
        let a = &mono(&t, 1, &[("x0", 1)]) + &mono(&t, 1, &[]);
        let b = &mono(&t, 1, &[("x0", 1)]) - &mono(&t, 1, &[]);
        let expect = &mono(&t, 1, &[("x0", 2)]) - &mono(&t, 1, &[]);
        assert_eq!(&a * &b, expect);
    }

    #[test]
    fn test_add_zero_is_identity() {
        let t = xt();
        let p = &mono(&t, 3, &[("x1", 2), ("x3", -1)]) + &mono(&t, 5, &[]);
        assert_eq!(&p + &LaurentPolynomial::zero(&t), p);
    }

    #[test]
    fn test_monomial_product() {
        let t = xt();
        let m = mono(&t, 1, &[("x2", 1), ("x4", 1)]);
        assert_eq!(&m * &m, mono(&t, 1, &[("x2", 2), ("x4", 2)]));
    }

    #[test]
    fn test_cancellation_removes_term() {
        let t = xt();
        let p = mono(&t, 2, &[("x0", 1)]);
        let q = mono(&t, -2, &[("x0", 1)]);
        assert!((&p + &q).is_zero());
    }

    // ---- graded-lex order ----

    #[test]
    fn test_grlex_leading_term() {
        let t = xt();
        // x0^3 outranks x1^2 (degree), x0*x1 outranks x0*x2 (lex at equal degree).
        let p = &mono(&t, 1, &[("x1", 2)]) + &mono(&t, 1, &[("x0", 3)]);
        assert_eq!(p.leading().unwrap().0, &Monomial(vec![3, 0, 0, 0, 0, 0]));
        let q = &mono(&t, 1, &[("x0", 1), ("x2", 1)]) + &mono(&t, 1, &[("x0", 1), ("x1", 1)]);
        assert_eq!(q.leading().unwrap().0, &Monomial(vec![1, 1, 0, 0, 0, 0]));
    }

    // ---- rational function arithmetic ----

    #[test]
    fn test_common_denominator_add() {
        let t = xt();
        let a = RationalFunction::new(mono(&t, 1, &[]), mono(&t, 1, &[("x0", 1)])).unwrap();
        let b =
            RationalFunction::new(mono(&t, 1, &[("x3", 1)]), mono(&t, 1, &[("x0", 1)])).unwrap();
        let s = a.add(&b).unwrap();
        let expect = RationalFunction::new(
            &mono(&t, 1, &[]) + &mono(&t, 1, &[("x3", 1)]),
            mono(&t, 1, &[("x0", 1)]),
        )
        .unwrap();
        assert_eq!(s, expect);
    }

    #[test]
    fn test_self_division_is_one() {
        let t = xt();
        let p = &mono(&t, 2, &[("x1", 1)]) + &mono(&t, 3, &[("x2", -2)]);
        let a = RationalFunction::from_poly(p);
        let q = a.div(&a).unwrap();
        assert!(q.equiv(&RationalFunction::one(&t)).unwrap());
        // Structural cancellation makes this exact, not just equivalent.
        assert_eq!(q, RationalFunction::one(&t));
    }

    #[test]
    fn test_cross_multiplication_add() {
        let t = xt();
        let a =
            RationalFunction::new(mono(&t, 1, &[("x2", 1)]), mono(&t, 1, &[("x1", 1)])).unwrap();
        let b =
            RationalFunction::new(mono(&t, 1, &[("x3", 1)]), mono(&t, 1, &[("x2", 2)])).unwrap();
        let s = a.add(&b).unwrap();
        let expect = RationalFunction::new(
            &mono(&t, 1, &[("x2", 3)]) + &mono(&t, 1, &[("x1", 1), ("x3", 1)]),
            mono(&t, 1, &[("x1", 1), ("x2", 2)]),
        )
        .unwrap();
        assert!(s.equiv(&expect).unwrap());
    }

    #[test]
    fn test_equiv_after_monomial_cancellation() {
        let t = xt();
        let a =
            RationalFunction::new(mono(&t, 1, &[("x0", 2)]), mono(&t, 1, &[("x0", 1)])).unwrap();
        let b = RationalFunction::var(&t, "x0");
        assert!(a.equiv(&b).unwrap());
        assert_eq!(a, b); // monomial content is normalized away
        let x1 = RationalFunction::var(&t, "x1");
        assert!(!b.equiv(&x1).unwrap());
    }

    #[test]
    fn test_division_by_zero_function() {
        let t = xt();
        let a = RationalFunction::var(&t, "x0");
        assert!(matches!(
            a.div(&RationalFunction::zero(&t)),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn test_product_cancels_structural_factors() {
        let t = xt();
        let p =
            RationalFunction::from_poly(&mono(&t, 1, &[("x0", 1)]) + &mono(&t, 2, &[("x1", 1)]));
        let q =
            RationalFunction::from_poly(&mono(&t, 1, &[("x2", 1)]) + &mono(&t, 1, &[("x3", 1)]));
        // (p*q) / (q*p) collapses to 1 without any gcd.
        let a = p.mul(&q).unwrap();
        let b = q.mul(&p).unwrap();
        let r = a.div(&b).unwrap();
        assert_eq!(r, RationalFunction::one(&t));
        // (3*p) / p collapses to the scalar 3.
        let r2 = RationalFunction::product(&[
            (&p, 1),
            (&RationalFunction::constant(&t, rat(3, 1)), 1),
            (&p, -1),
        ])
        .unwrap();
        assert_eq!(r2, RationalFunction::constant(&t, rat(3, 1)));
    }

    #[test]
    fn test_normalization_monic_denominator() {
        let t = xt();
        // 1/(2 x0^2 + 2): denominator leading coefficient scaled to 1.
        let den = &mono(&t, 2, &[("x0", 2)]) + &mono(&t, 2, &[]);
        let f = RationalFunction::new(mono(&t, 1, &[]), den).unwrap();
        assert_eq!(f.den().leading().unwrap().1, &BigRational::one());
        assert_eq!(f.num(), &mono(&t, 1, &[]).scale(&rat(1, 2)));
    }

    // ---- substitution and evaluation ----

    #[test]
    fn test_substitute_scaling() {
        let xc = VarTable::x_chart_c();
        let f = RationalFunction::var(&xc, "x0");
        let mut map = BTreeMap::new();
        for n in xc.names() {
            map.insert(n.clone(), RationalFunction::var(&xc, n));
        }
        map.insert(
            "x0".into(),
            RationalFunction::from_poly(mono(&xc, 1, &[("c", 1), ("x0", 1)])),
        );
        let g = f.substitute(&map).unwrap();
        assert_eq!(
            g,
            RationalFunction::from_poly(mono(&xc, 1, &[("c", 1), ("x0", 1)]))
        );
    }

    #[test]
    fn test_eval_and_pole_detection() {
        let t = xt();
        let f = RationalFunction::new(
            mono(&t, 1, &[("x2", 1)]),
            &mono(&t, 1, &[("x0", 1)]) - &mono(&t, 1, &[("x1", 1)]),
        )
        .unwrap();
        let mut p = RationalPoint::all_ones(&t);
        p.set("x2", rat(7, 2));
        assert!(matches!(f.eval(&p), Err(Error::EvalAtPole(_))));
        p.set("x0", rat(3, 1));
        assert_eq!(f.eval(&p).unwrap(), rat(7, 4));
    }

    #[test]
    fn test_eval_homomorphism_spot() {
        let t = xt();
        let a = RationalFunction::new(
            &mono(&t, 1, &[("x0", 1)]) + &mono(&t, 2, &[]),
            mono(&t, 1, &[("x1", 1)]),
        )
        .unwrap();
        let b =
            RationalFunction::new(mono(&t, 5, &[("x2", -1)]), mono(&t, 1, &[("x3", 2)])).unwrap();
        let mut p = RationalPoint::all_ones(&t);
        p.set("x0", rat(2, 3));
        p.set("x2", rat(5, 7));
        let s = a.add(&b).unwrap();
        assert_eq!(
            s.eval(&p).unwrap(),
            a.eval(&p).unwrap() + b.eval(&p).unwrap()
        );
        let m = a.mul(&b).unwrap();
        assert_eq!(
            m.eval(&p).unwrap(),
            a.eval(&p).unwrap() * b.eval(&p).unwrap()
        );
    }

    // ---- positivity ----

    #[test]
    fn test_positivity_witness() {
        let t = xt();
        let m = RationalFunction::from_poly(mono(&t, 1, &[("x2", 1), ("x4", 1)]));
        assert_eq!(m.positivity(), Positivity::VerifiedPositive);
        let f = RationalFunction::from_poly(&mono(&t, 1, &[("x0", 2)]) - &mono(&t, 1, &[]));
        assert_eq!(f.positivity(), Positivity::NotVerified);
        assert_eq!(
            RationalFunction::zero(&t).positivity(),
            Positivity::NotVerified
        );
    }

    #[test]
    fn test_positivity_closed_under_arith() {
        let t = xt();
        let a = RationalFunction::new(
            &mono(&t, 1, &[("x0", 1)]) + &mono(&t, 2, &[("x1", -1)]),
            mono(&t, 3, &[("x2", 1)]),
        )
        .unwrap();
        let b = RationalFunction::new(
            mono(&t, 1, &[("x3", 2)]),
            &mono(&t, 1, &[("x4", 1)]) + &mono(&t, 1, &[("x5", 1)]),
        )
        .unwrap();
        for f in [a.add(&b).unwrap(), a.mul(&b).unwrap(), a.div(&b).unwrap()] {
            assert_eq!(f.positivity(), Positivity::VerifiedPositive);
        }
    }

    // ---- expression JSON ----

    #[test]
    fn test_expression_json_round_trip_bit_exact() {
        let t = xt();
        let f = RationalFunction::new(
            &mono(&t, -3, &[("x0", 2), ("x5", -1)]) + &mono(&t, 7, &[("x1", 1)]),
            &mono(&t, 2, &[("x2", 1)]) + &mono(&t, 5, &[("x3", -2)]),
        )
        .unwrap();
        let j = f.to_expression_json();
        let s1 = serde_json::to_string(&j).unwrap();
        let g = RationalFunction::from_expression_json(&j).unwrap();
        assert_eq!(f, g);
        let s2 = serde_json::to_string(&g.to_expression_json()).unwrap();
        assert_eq!(s1, s2);
    }

    #[test]
    fn test_expression_json_rejects_garbage() {
        let v = serde_json::json!({"vars": ["x0"], "num": [{"coef": "nope", "exp": [1]}], "den": [{"coef":"1","exp":[0]}]});
        assert!(RationalFunction::from_expression_json(&v).is_err());
        let v = serde_json::json!({"vars": ["x0", "x0"], "num": [], "den": []});
        assert!(RationalFunction::from_expression_json(&v).is_err());
    }

    #[test]
    fn test_var_table_validation() {
        assert!(VarTable::new(&["x0", "z9"]).is_err());
        assert!(VarTable::new(&["x0", "x0"]).is_err());
        assert!(VarTable::new(&["x0", "c", "t"]).is_ok());
    }
}
