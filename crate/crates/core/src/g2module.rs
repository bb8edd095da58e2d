//! The 15-dimensional fundamental module with explicit Chevalley
//! generator actions, classical weights, and representation-consistency
//! checks.
//!
//! The basis is ordered (1..6, 1b..6b, phi, 01, 02) for all matrix I/O,
//! where "kb" denotes the barred partner of k, "phi" the extra weight-zero
//! vector paired with the affine generators, and 01, 02 the two remaining
//! weight-zero vectors. Generator matrices have integer entries drawn only
//! from {0,1,2,3}. Weights are classical: coefficients of the three
//! fundamental weights with the null-root coefficient dropped, so the
//! weight-shift law holds uniformly for the affine index as well.

use num_rational::BigRational;
use num_traits::Zero;
use serde_json::json;

use crate::ratfunc::{RationalFunction, VarTable};
use crate::report::{Config, Counterexample, VerificationReport};

/// One of the 15 basis vectors, in the fixed matrix order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BasisVector {
    B1,
    B2,
    B3,
    B4,
    B5,
    B6,
    B1Bar,
    B2Bar,
    B3Bar,
    B4Bar,
    B5Bar,
    B6Bar,
    Phi,
    Zero1,
    Zero2,
}

use BasisVector::*;

pub const BASIS: [BasisVector; 15] = [
    B1, B2, B3, B4, B5, B6, B1Bar, B2Bar, B3Bar, B4Bar, B5Bar, B6Bar, Phi, Zero1, Zero2,
];

impl BasisVector {
    pub fn index(self) -> usize {
        BASIS.iter().position(|b| *b == self).unwrap()
    }

    pub fn label(self) -> &'static str {
        match self {
            B1 => "1",
            B2 => "2",
            B3 => "3",
            B4 => "4",
            B5 => "5",
            B6 => "6",
            B1Bar => "1b",
            B2Bar => "2b",
            B3Bar => "3b",
            B4Bar => "4b",
            B5Bar => "5b",
            B6Bar => "6b",
            Phi => "phi",
            Zero1 => "01",
            Zero2 => "02",
        }
    }
}

/// The 3x3 generalized Cartan matrix, indices 0..3.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CartanMatrix;

impl CartanMatrix {
    pub const A: [[i64; 3]; 3] = [[2, -1, 0], [-1, 2, -1], [0, -3, 2]];

    pub fn entry(i: usize, j: usize) -> i64 {
        Self::A[i][j]
    }

    /// Classical simple root as a weight: column j of the matrix, i.e. the
    /// fundamental-weight coefficients of the j-th simple root.
    pub fn simple_root(j: usize) -> Weight {
        Weight([Self::A[0][j], Self::A[1][j], Self::A[2][j]])
    }
}

/// Classical weight: integer coefficients of the three fundamental
/// weights.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Weight(pub [i64; 3]);

impl Weight {
    pub const ZERO: Weight = Weight([0, 0, 0]);
}

impl std::ops::Add for Weight {
    type Output = Weight;

    fn add(self, o: Weight) -> Weight {
        Weight([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
    }
}

impl std::ops::Sub for Weight {
    type Output = Weight;

    fn sub(self, o: Weight) -> Weight {
        Weight([self.0[0] - o.0[0], self.0[1] - o.0[1], self.0[2] - o.0[2]])
    }
}

impl std::ops::Neg for Weight {
    type Output = Weight;

    fn neg(self) -> Weight {
        Weight([-self.0[0], -self.0[1], -self.0[2]])
    }
}

/// Coefficient of the i-th fundamental weight: the simple-coroot pairing.
pub fn coroot_pairing(i: usize, w: Weight) -> i64 {
    w.0[i]
}

/// Classical weight of a basis vector.
pub fn weight_of(b: BasisVector) -> Weight {
    let unbarred = |b: BasisVector| match b {
        B1 => Weight([-2, 1, 0]),
        B2 => Weight([-1, -1, 3]),
        B3 => Weight([-1, 0, 1]),
        B4 => Weight([-1, 1, -1]),
        B5 => Weight([0, -1, 2]),
        B6 => Weight([-1, 2, -3]),
        _ => unreachable!(),
    };
    match b {
        B1 | B2 | B3 | B4 | B5 | B6 => unbarred(b),
        B1Bar => -unbarred(B1),
        B2Bar => -unbarred(B2),
        B3Bar => -unbarred(B3),
        B4Bar => -unbarred(B4),
        B5Bar => -unbarred(B5),
        B6Bar => -unbarred(B6),
        Phi | Zero1 | Zero2 => Weight::ZERO,
    }
}

/// Raising or lowering Chevalley generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gen {
    E,
    F,
}

impl Gen {
    pub fn label(self, i: usize) -> String {
        match self {
            Gen::E => format!("e{i}"),
            Gen::F => format!("f{i}"),
        }
    }
}

/// Action of a Chevalley generator on a basis vector: the printed tables.
/// Unlisted actions are zero (empty list). Every listed image is a single
/// basis vector with coefficient in {1,2,3}.
pub fn apply_chevalley(gen: Gen, i: usize, b: BasisVector) -> Vec<(BasisVector, i64)> {
    assert!(i < 3, "generator index out of range: {i}");
    let hit = match (gen, i, b) {
        // f0
        (Gen::F, 0, Zero2) => Some((B1, 1)),
        (Gen::F, 0, B6Bar) => Some((B2, 1)),
        (Gen::F, 0, B4Bar) => Some((B3, 1)),
        (Gen::F, 0, B3Bar) => Some((B4, 1)),
        (Gen::F, 0, B2Bar) => Some((B6, 1)),
        (Gen::F, 0, B1Bar) => Some((Phi, 1)),
        (Gen::F, 0, Phi) => Some((B1, 2)),
        // e0
        (Gen::E, 0, B1) => Some((Phi, 1)),
        (Gen::E, 0, B2) => Some((B6Bar, 1)),
        (Gen::E, 0, B3) => Some((B4Bar, 1)),
        (Gen::E, 0, B4) => Some((B3Bar, 1)),
        (Gen::E, 0, B6) => Some((B2Bar, 1)),
        (Gen::E, 0, Zero2) => Some((B1Bar, 1)),
        (Gen::E, 0, Phi) => Some((B1Bar, 2)),
        // f1
        (Gen::F, 1, B1) => Some((B2, 1)),
        (Gen::F, 1, B4) => Some((B5, 1)),
        (Gen::F, 1, B6) => Some((Zero2, 1)),
        (Gen::F, 1, Zero1) => Some((B6Bar, 3)),
        (Gen::F, 1, Zero2) => Some((B6Bar, 2)),
        (Gen::F, 1, B5Bar) => Some((B4Bar, 1)),
        (Gen::F, 1, B2Bar) => Some((B1Bar, 1)),
        (Gen::F, 1, Phi) => Some((B6Bar, 1)),
        // e1
        (Gen::E, 1, B2) => Some((B1, 1)),
        (Gen::E, 1, B5) => Some((B4, 1)),
        (Gen::E, 1, Zero1) => Some((B6, 3)),
        (Gen::E, 1, Zero2) => Some((B6, 2)),
        (Gen::E, 1, B6Bar) => Some((Zero2, 1)),
        (Gen::E, 1, B4Bar) => Some((B5Bar, 1)),
        (Gen::E, 1, B1Bar) => Some((B2Bar, 1)),
        (Gen::E, 1, Phi) => Some((B6, 1)),
        // f2
        (Gen::F, 2, B2) => Some((B3, 1)),
        (Gen::F, 2, B3) => Some((B4, 2)),
        (Gen::F, 2, B4) => Some((B6, 3)),
        (Gen::F, 2, B5) => Some((Zero1, 1)),
        (Gen::F, 2, Zero1) => Some((B5Bar, 2)),
        (Gen::F, 2, Zero2) => Some((B5Bar, 1)),
        (Gen::F, 2, B6Bar) => Some((B4Bar, 1)),
        (Gen::F, 2, B4Bar) => Some((B3Bar, 2)),
        (Gen::F, 2, B3Bar) => Some((B2Bar, 3)),
        // e2
        (Gen::E, 2, B3) => Some((B2, 3)),
        (Gen::E, 2, B4) => Some((B3, 2)),
        (Gen::E, 2, B6) => Some((B4, 1)),
        (Gen::E, 2, Zero1) => Some((B5, 2)),
        (Gen::E, 2, Zero2) => Some((B5, 1)),
        (Gen::E, 2, B5Bar) => Some((Zero1, 1)),
        (Gen::E, 2, B4Bar) => Some((B6Bar, 3)),
        (Gen::E, 2, B3Bar) => Some((B4Bar, 2)),
        (Gen::E, 2, B2Bar) => Some((B3Bar, 1)),
        _ => None,
    };
    hit.into_iter().collect()
}

/// 15x15 integer matrix; entry [r][c] is the coefficient of output basis
/// vector r in the image of input basis vector c.
pub type Mat = [[i64; 15]; 15];

pub fn chevalley_matrix(gen: Gen, i: usize) -> Mat {
    let mut m = [[0i64; 15]; 15];
    for b in BASIS {
        for (img, k) in apply_chevalley(gen, i, b) {
            m[img.index()][b.index()] += k;
        }
    }
    m
}

pub fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let mut m = [[0i64; 15]; 15];
    for r in 0..15 {
        for k in 0..15 {
            if a[r][k] == 0 {
                continue;
            }
            for c in 0..15 {
                m[r][c] += a[r][k] * b[k][c];
            }
        }
    }
    m
}

pub fn mat_sub(a: &Mat, b: &Mat) -> Mat {
    let mut m = [[0i64; 15]; 15];
    for r in 0..15 {
        for c in 0..15 {
            m[r][c] = a[r][c] - b[r][c];
        }
    }
    m
}

pub fn mat_is_zero(a: &Mat) -> bool {
    a.iter().all(|row| row.iter().all(|x| *x == 0))
}

fn mat_pow(a: &Mat, e: u32) -> Mat {
    let mut m = *a;
    for _ in 1..e {
        m = mat_mul(&m, a);
    }
    m
}

fn commutator(a: &Mat, b: &Mat) -> Mat {
    mat_sub(&mat_mul(a, b), &mat_mul(b, a))
}

fn column_string(m: &Mat, c: usize) -> String {
    let parts: Vec<String> = BASIS
        .iter()
        .filter(|b| m[b.index()][c] != 0)
        .map(|b| format!("{}*{}", m[b.index()][c], b.label()))
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// Full representation-consistency suite over exact integer matrices:
/// (a) third powers of the two short-root generator pairs and fourth
///     powers of the remaining pair vanish;
/// (b) [e_i, f_i] acts on each basis vector by its coroot pairing;
/// (c) [e_i, f_j] = 0 for i != j;
/// (d) every nonzero generator image shifts the weight by the matching
///     simple root.
pub fn verify_representation(config: &Config) -> VerificationReport {
    let e: Vec<Mat> = (0..3).map(|i| chevalley_matrix(Gen::E, i)).collect();
    let f: Vec<Mat> = (0..3).map(|i| chevalley_matrix(Gen::F, i)).collect();
    let mut failures: Vec<Counterexample> = Vec::new();
    let mut fail = |check: &str, gen: String, basis: &str, lhs: String, rhs: String| {
        let mut point = std::collections::BTreeMap::new();
        point.insert("check".to_string(), check.to_string());
        point.insert("generator".to_string(), gen);
        point.insert("basis".to_string(), basis.to_string());
        failures.push(Counterexample { point, lhs, rhs });
    };

    // (a) nilpotency orders.
    for (i, order) in [(0usize, 3u32), (1, 3), (2, 4)] {
        for (name, m) in [(Gen::E.label(i), &e[i]), (Gen::F.label(i), &f[i])] {
            let p = mat_pow(m, order);
            if !mat_is_zero(&p) {
                fail(
                    "nilpotency",
                    name,
                    "*",
                    format!("power {order} nonzero"),
                    "0".into(),
                );
            }
        }
    }

    // (b) [e_i, f_i] is the coroot-pairing diagonal.
    for i in 0..3 {
        let h = commutator(&e[i], &f[i]);
        for b in BASIS {
            let c = b.index();
            let expect = coroot_pairing(i, weight_of(b));
            let ok = (0..15).all(|r| h[r][c] == if r == c { expect } else { 0 });
            if !ok {
                fail(
                    "coroot-diagonal",
                    format!("[e{i},f{i}]"),
                    b.label(),
                    column_string(&h, c),
                    format!("{}*{}", expect, b.label()),
                );
            }
        }
    }

    // (c) mixed commutators vanish.
    for (i, ei) in e.iter().enumerate() {
        for (j, fj) in f.iter().enumerate() {
            if i == j {
                continue;
            }
            let h = commutator(ei, fj);
            if !mat_is_zero(&h) {
                fail(
                    "mixed-commutator",
                    format!("[e{i},f{j}]"),
                    "*",
                    "nonzero".into(),
                    "0".into(),
                );
            }
        }
    }

    // (d) weight shifts by the simple roots.
    for i in 0..3 {
        let root = CartanMatrix::simple_root(i);
        for b in BASIS {
            for (gen, shift) in [(Gen::E, root), (Gen::F, -root)] {
                for (img, _) in apply_chevalley(gen, i, b) {
                    let got = weight_of(img);
                    let expect = weight_of(b) + shift;
                    if got != expect {
                        fail(
                            "weight-shift",
                            gen.label(i),
                            b.label(),
                            format!("{:?}", got.0),
                            format!("{:?}", expect.0),
                        );
                    }
                }
            }
        }
    }

    let mut report =
        VerificationReport::symbolic("module.representation", config.seed, failures.is_empty());
    report.counterexamples = failures;
    report.counterexamples.truncate(5);
    report.with_details(
        "nilpotency, coroot diagonal, mixed commutators, weight shifts over exact \
         integer matrices",
    )
}

/// JSON dump: six 15x15 integer matrices keyed by generator name.
pub fn dump_module_json() -> serde_json::Value {
    let mut obj = serde_json::Map::new();
    for (gen, tag) in [(Gen::E, "e"), (Gen::F, "f")] {
        for i in 0..3 {
            let m = chevalley_matrix(gen, i);
            let rows: Vec<serde_json::Value> = m.iter().map(|row| json!(row.to_vec())).collect();
            obj.insert(format!("{tag}{i}"), serde_json::Value::Array(rows));
        }
    }
    json!({
        "basis": BASIS.iter().map(|b| b.label()).collect::<Vec<_>>(),
        "matrices": serde_json::Value::Object(obj),
    })
}

/// Coefficient ring abstraction for module vectors: exact rationals for
/// numeric work, rational functions for symbolic work. The `zero_like`
/// constructor carries the variable-table context a bare zero cannot.
pub trait Scalar: Clone + PartialEq + std::fmt::Debug + Send + Sync {
    fn zero_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn mul_int(&self, k: i64) -> Self;
    fn mul_rat(&self, k: &BigRational) -> Self;
    /// Integer power; negative exponents require invertibility.
    fn pow_int(&self, e: i64) -> Self;
}

impl Scalar for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn mul_int(&self, k: i64) -> Self {
        self * BigRational::from(num_bigint::BigInt::from(k))
    }
    fn mul_rat(&self, k: &BigRational) -> Self {
        self * k
    }
    fn pow_int(&self, e: i64) -> Self {
        crate::ratfunc::rat_pow(self, e).expect("integer power of zero scalar")
    }
}

impl Scalar for RationalFunction {
    fn zero_like(&self) -> Self {
        RationalFunction::zero(self.vars())
    }
    fn is_zero(&self) -> bool {
        RationalFunction::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        RationalFunction::add(self, other).expect("module coefficient addition failed")
    }
    fn mul(&self, other: &Self) -> Self {
        RationalFunction::mul(self, other).expect("module coefficient product failed")
    }
    fn mul_int(&self, k: i64) -> Self {
        self.scale_rat(&BigRational::from(num_bigint::BigInt::from(k)))
    }
    fn mul_rat(&self, k: &BigRational) -> Self {
        self.scale_rat(k)
    }
    fn pow_int(&self, e: i64) -> Self {
        RationalFunction::pow(self, e).expect("integer power of zero coefficient")
    }
}

/// A module element: 15 coefficients in the fixed basis order.
#[derive(Clone, Debug, PartialEq)]
pub struct ModuleVector<S: Scalar> {
    pub coeffs: Vec<S>,
}

impl<S: Scalar> ModuleVector<S> {
    pub fn zero_like(proto: &S) -> Self {
        ModuleVector {
            coeffs: vec![proto.zero_like(); 15],
        }
    }

    pub fn basis(b: BasisVector, one: &S) -> Self {
        let mut v = Self::zero_like(one);
        v.coeffs[b.index()] = one.clone();
        v
    }

    pub fn get(&self, b: BasisVector) -> &S {
        &self.coeffs[b.index()]
    }

    pub fn set(&mut self, b: BasisVector, s: S) {
        self.coeffs[b.index()] = s;
    }

    pub fn add(&self, other: &Self) -> Self {
        ModuleVector {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn scale(&self, k: &S) -> Self {
        ModuleVector {
            coeffs: self.coeffs.iter().map(|a| a.mul(k)).collect(),
        }
    }

    pub fn scale_rat(&self, k: &BigRational) -> Self {
        ModuleVector {
            coeffs: self.coeffs.iter().map(|a| a.mul_rat(k)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|a| a.is_zero())
    }

    /// Linear extension of the generator tables.
    pub fn apply_gen(&self, gen: Gen, i: usize) -> Self {
        let proto = &self.coeffs[0];
        let mut out = Self::zero_like(proto);
        for b in BASIS {
            let c = &self.coeffs[b.index()];
            if c.is_zero() {
                continue;
            }
            for (img, k) in apply_chevalley(gen, i, b) {
                let j = img.index();
                out.coeffs[j] = out.coeffs[j].add(&c.mul_int(k));
            }
        }
        out
    }

    /// Support restricted to a single weight, if any.
    pub fn weight(&self) -> Option<Weight> {
        let mut w = None;
        for b in BASIS {
            if !self.coeffs[b.index()].is_zero() {
                let wb = weight_of(b);
                match w {
                    None => w = Some(wb),
                    Some(prev) if prev == wb => {}
                    Some(_) => return None,
                }
            }
        }
        w
    }
}

impl ModuleVector<RationalFunction> {
    pub fn zero_over(vars: &VarTable) -> Self {
        ModuleVector {
            coeffs: vec![RationalFunction::zero(vars); 15],
        }
    }

    /// Exact evaluation of every coefficient at a point.
    pub fn eval(
        &self,
        p: &crate::ratfunc::RationalPoint,
    ) -> crate::error::Result<ModuleVector<BigRational>> {
        Ok(ModuleVector {
            coeffs: self
                .coeffs
                .iter()
                .map(|f| {
                    if f.is_zero() {
                        Ok(BigRational::zero())
                    } else {
                        f.eval(p)
                    }
                })
                .collect::<crate::error::Result<_>>()?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    // ---- printed tables ----

    #[test]
    fn test_table_spot_checks() {
        assert_eq!(apply_chevalley(Gen::F, 1, B1), vec![(B2, 1)]);
        assert_eq!(apply_chevalley(Gen::F, 0, Phi), vec![(B1, 2)]);
        assert_eq!(apply_chevalley(Gen::F, 2, Zero1), vec![(B5Bar, 2)]);
        assert_eq!(apply_chevalley(Gen::E, 2, B3), vec![(B2, 3)]);
        assert_eq!(apply_chevalley(Gen::E, 1, B1), vec![]);
    }

    #[test]
    fn test_matrix_entries_within_printed_range() {
        for gen in [Gen::E, Gen::F] {
            for i in 0..3 {
                let m = chevalley_matrix(gen, i);
                for row in &m {
                    for x in row {
                        assert!(
                            (0..=3).contains(x),
                            "{} has entry {x} outside 0..=3",
                            gen.label(i)
                        );
                    }
                }
            }
        }
    }

    // ---- weights ----

    #[test]
    fn test_weight_spot_checks() {
        assert_eq!(weight_of(B1), Weight([-2, 1, 0]));
        assert_eq!(weight_of(Zero2), Weight::ZERO);
        for (b, bb) in [
            (B1, B1Bar),
            (B2, B2Bar),
            (B3, B3Bar),
            (B4, B4Bar),
            (B5, B5Bar),
            (B6, B6Bar),
        ] {
            assert_eq!(weight_of(bb), -weight_of(b));
        }
        assert_eq!(coroot_pairing(1, weight_of(B1)), 1);
        assert_eq!(coroot_pairing(0, weight_of(B1)), -2);
        assert_eq!(coroot_pairing(2, Weight::ZERO), 0);
    }

    #[test]
    fn test_weight_shift_example() {
        // wt(f1 . 1) equals wt(2).
        let shifted = weight_of(B1) - CartanMatrix::simple_root(1);
        assert_eq!(shifted, weight_of(B2));
        assert_eq!(shifted, Weight([-1, -1, 3]));
    }

    // ---- representation suite ----

    #[test]
    fn test_verify_representation_passes() {
        let r = verify_representation(&Config::default());
        assert!(r.passed, "counterexamples: {:?}", r.counterexamples);
    }

    #[test]
    fn test_nilpotency_orders_are_sharp() {
        let f2 = chevalley_matrix(Gen::F, 2);
        assert!(
            !mat_is_zero(&mat_pow(&f2, 3)),
            "cube of f2 is still nonzero"
        );
        assert!(mat_is_zero(&mat_pow(&f2, 4)));
        let f1 = chevalley_matrix(Gen::F, 1);
        assert!(!mat_is_zero(&mat_pow(&f1, 2)));
        assert!(mat_is_zero(&mat_pow(&f1, 3)));
        let e0 = chevalley_matrix(Gen::E, 0);
        assert!(mat_is_zero(&mat_pow(&e0, 3)));
    }

    #[test]
    fn test_commutator_trace_identity() {
        for i in 0..3 {
            let h = commutator(&chevalley_matrix(Gen::E, i), &chevalley_matrix(Gen::F, i));
            let trace: i64 = (0..15).map(|k| h[k][k]).sum();
            let expect: i64 = BASIS.iter().map(|b| coroot_pairing(i, weight_of(*b))).sum();
            assert_eq!(trace, expect);
        }
    }

    #[test]
    fn test_coroot_diagonal_example() {
        // [e1, f1] fixes basis 1 with eigenvalue +1.
        let h = commutator(&chevalley_matrix(Gen::E, 1), &chevalley_matrix(Gen::F, 1));
        let c = B1.index();
        for (r, row) in h.iter().enumerate() {
            assert_eq!(row[c], if r == c { 1 } else { 0 });
        }
    }

    // ---- linear extension ----

    #[test]
    fn test_apply_gen_commutes_with_scalars() {
        let t = VarTable::x_chart();
        let one = RationalFunction::one(&t);
        let k = RationalFunction::var(&t, "x3");
        let mut v = ModuleVector::basis(B2, &one);
        v.set(B5, RationalFunction::var(&t, "x1"));
        let lhs = v.scale(&k).apply_gen(Gen::F, 2);
        let rhs = v.apply_gen(Gen::F, 2).scale(&k);
        assert_eq!(lhs, rhs);
        // f2 sends 2 -> 3 and 5 -> 01 per the table.
        assert!(!lhs.get(B3).is_zero() && !lhs.get(Zero1).is_zero());
    }

    #[test]
    fn test_module_vector_weight() {
        let one = BigRational::one();
        let v = ModuleVector::basis(B4, &one);
        assert_eq!(v.weight(), Some(weight_of(B4)));
        let mixed = v.add(&ModuleVector::basis(B1, &one));
        assert_eq!(mixed.weight(), None);
        let zeros = ModuleVector::basis(Phi, &one).add(&ModuleVector::basis(Zero1, &one));
        assert_eq!(zeros.weight(), Some(Weight::ZERO));
    }

    // ---- dump ----

    #[test]
    fn test_dump_shape_and_determinism() {
        let d = dump_module_json();
        let m = d["matrices"].as_object().unwrap();
        assert_eq!(m.len(), 6);
        for key in ["e0", "e1", "e2", "f0", "f1", "f2"] {
            let rows = m[key].as_array().unwrap();
            assert_eq!(rows.len(), 15);
            for row in rows {
                assert_eq!(row.as_array().unwrap().len(), 15);
            }
        }
        assert_eq!(
            serde_json::to_string(&d).unwrap(),
            serde_json::to_string(&dump_module_json()).unwrap()
        );
    }
}
