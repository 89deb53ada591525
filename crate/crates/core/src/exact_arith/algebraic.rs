use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::approx::{self, RootApprox};
use super::Rational;
use crate::error::{Error, Result};
use crate::poly::Poly;

/// A monic squarefree polynomial with nonzero constant term, standing for
/// the formal root (`label`) that ranges over its zeros.
#[derive(Clone)]
pub struct FactorHandle(Arc<HandleInner>);

struct HandleInner {
    modulus: Poly,
    label: String,
    // p_0 .. p_{deg-1}
    power_sums: Vec<Rational>,
}

impl FactorHandle {
    pub fn new(modulus: Poly, label: impl Into<String>) -> Result<Self> {
        let invalid = |reason| Error::InvalidModulus { modulus: modulus.to_string(), reason };
        let deg = match modulus.degree() {
            Some(d) if d >= 1 => d,
            _ => return Err(invalid("degree must be at least 1")),
        };
        if !modulus.is_monic() {
            return Err(invalid("not monic"));
        }
        if modulus.coeff(0).is_zero() {
            return Err(invalid("zero is a root"));
        }
        if !Poly::gcd(&modulus, &modulus.derivative())?.is_one() {
            return Err(invalid("not squarefree"));
        }
        let power_sums = modulus.power_sums(deg - 1);
        Ok(FactorHandle(Arc::new(HandleInner { modulus, label: label.into(), power_sums })))
    }

    pub fn modulus(&self) -> &Poly {
        &self.0.modulus
    }

    pub fn label(&self) -> &str {
        &self.0.label
    }

    pub fn degree(&self) -> usize {
        self.0.power_sums.len()
    }

    /// The single root when the modulus is linear.
    pub fn rational_root(&self) -> Option<Rational> {
        (self.degree() == 1).then(|| -self.modulus().coeff(0))
    }

    fn trace_of(&self, residue: &Poly) -> Rational {
        residue.coeffs().iter().zip(&self.0.power_sums).map(|(r, p)| r * p).sum()
    }

    fn check_same(&self, other: &FactorHandle) -> Result<()> {
        if Arc::ptr_eq(&self.0, &other.0) || self == other {
            Ok(())
        } else {
            Err(Error::HandleMismatch { left: self.modulus().to_string(), right: other.modulus().to_string() })
        }
    }

    /// Residue of `1/θ`: with `f = x·g + c0`, `θ·g(θ) = -c0`.
    fn theta_inverse(&self) -> Poly {
        let c0 = self.modulus().coeff(0);
        self.modulus().shift_down(1).scale(&(-c0.recip()))
    }

    /// High-precision approximations of all roots, sorted by (real, imaginary).
    pub fn approximate_roots(&self, digits: u32) -> Vec<RootApprox> {
        approx::roots(self.modulus(), digits)
    }
}

impl PartialEq for FactorHandle {
    fn eq(&self, other: &Self) -> bool {
        self.0.modulus == other.0.modulus && self.0.label == other.0.label
    }
}

impl Eq for FactorHandle {}

impl fmt::Debug for FactorHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RootOf({}, {})", self.modulus().display_in("_Z"), self.label())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlgOp {
    Add,
    Sub,
    Mul,
}

/// An element of `Q[x]/(modulus)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgValue {
    handle: FactorHandle,
    residue: Poly,
}

impl AlgValue {
    pub fn new(handle: &FactorHandle, residue: Poly) -> Self {
        let residue = residue.rem(handle.modulus()).expect("modulus is nonzero");
        AlgValue { handle: handle.clone(), residue }
    }

    pub fn from_rational(handle: &FactorHandle, value: Rational) -> Self {
        AlgValue::new(handle, Poly::constant(value))
    }

    /// The formal root itself.
    pub fn theta(handle: &FactorHandle) -> Self {
        AlgValue::new(handle, Poly::x())
    }

    pub fn handle(&self) -> &FactorHandle {
        &self.handle
    }

    pub fn residue(&self) -> &Poly {
        &self.residue
    }

    pub fn is_zero(&self) -> bool {
        self.residue.is_zero()
    }

    pub fn arith(&self, other: &AlgValue, op: AlgOp) -> Result<AlgValue> {
        self.handle.check_same(&other.handle)?;
        let residue = match op {
            AlgOp::Add => &self.residue + &other.residue,
            AlgOp::Sub => &self.residue - &other.residue,
            AlgOp::Mul => self.residue.mul_mod(&other.residue, self.handle.modulus())?,
        };
        Ok(AlgValue { handle: self.handle.clone(), residue })
    }

    pub fn add(&self, other: &AlgValue) -> Result<AlgValue> {
        self.arith(other, AlgOp::Add)
    }

    pub fn sub(&self, other: &AlgValue) -> Result<AlgValue> {
        self.arith(other, AlgOp::Sub)
    }

    pub fn mul(&self, other: &AlgValue) -> Result<AlgValue> {
        self.arith(other, AlgOp::Mul)
    }

    pub fn scale(&self, by: &Rational) -> AlgValue {
        AlgValue { handle: self.handle.clone(), residue: self.residue.scale(by) }
    }

    /// `self · θ^k`; negative `k` uses the inverse of θ, which exists since
    /// the modulus has a nonzero constant term.
    pub fn mul_theta_pow(&self, k: i64) -> AlgValue {
        let modulus = self.handle.modulus();
        if let Some(root) = self.handle.rational_root() {
            let residue = Poly::constant(self.residue.coeff(0) * root.pow(k as i32));
            return AlgValue { handle: self.handle.clone(), residue };
        }
        let base = if k >= 0 {
            Poly::x_pow_mod(k as u64, modulus)
        } else {
            pow_mod(&self.handle.theta_inverse(), k.unsigned_abs(), modulus)
        }
        .expect("modulus is nonzero");
        let residue = self.residue.mul_mod(&base, modulus).expect("modulus is nonzero");
        AlgValue { handle: self.handle.clone(), residue }
    }

    /// Sum of the residue evaluated at every root of the modulus.
    pub fn trace(&self) -> Rational {
        self.handle.trace_of(&self.residue)
    }

    /// Explicit `u + v·sqrt(disc)` at the root `(-b + sqrt(b²-4c))/2` of a
    /// quadratic modulus `x² + bx + c`.
    pub fn to_surd(&self) -> Result<SurdValue> {
        let m = self.handle.modulus();
        if m.degree() != Some(2) {
            return Err(Error::Usage(format!("surd form needs a quadratic modulus, got {}", m.display_in("_Z"))));
        }
        let (b, c) = (m.coeff(1), m.coeff(0));
        let two = Rational::from_integer(2.into());
        let disc = &b * &b - Rational::from_integer(4.into()) * &c;
        // sqrt(disc) = scale * sqrt(core) with core a squarefree integer
        let (core, scale) = squarefree_split(&disc);
        let (r0, r1) = (self.residue.coeff(0), self.residue.coeff(1));
        let u = &r0 - &r1 * &b / &two;
        let v = &r1 * scale / &two;
        if v.is_zero() || core.is_one() {
            let rational_part = if core.is_one() { &u + &v } else { u };
            return Ok(SurdValue::Rational(rational_part));
        }
        Ok(SurdValue::Surd(SurdForm { u, v, disc: core }))
    }

    /// Value of the residue at the `root_index`-th root of the modulus, roots
    /// ordered by (real part, imaginary part).
    pub fn approx(&self, root_index: usize, digits: u32) -> Result<RootApprox> {
        let deg = self.handle.degree();
        if root_index >= deg {
            return Err(Error::Usage(format!("root index {root_index} out of range for degree {deg}")));
        }
        Ok(approx::evaluate_at_root(self.handle.modulus(), &self.residue, root_index, digits))
    }
}

pub fn alg_arith(a: &AlgValue, b: &AlgValue, op: AlgOp) -> Result<AlgValue> {
    a.arith(b, op)
}

fn pow_mod(base: &Poly, mut e: u64, modulus: &Poly) -> Result<Poly> {
    let mut result = Poly::one().rem(modulus)?;
    let mut base = base.rem(modulus)?;
    while e > 0 {
        if e & 1 == 1 {
            result = result.mul_mod(&base, modulus)?;
        }
        e >>= 1;
        if e > 0 {
            base = base.mul_mod(&base, modulus)?;
        }
    }
    Ok(result)
}

/// Writes `sqrt(r) = scale · sqrt(core)` with `core` a squarefree integer
/// (sign kept inside the root).
fn squarefree_split(r: &Rational) -> (BigInt, Rational) {
    // r = n/d  =>  sqrt(r) = sqrt(n·d)/d
    let nd = r.numer() * r.denom();
    let mut core = if nd.is_negative() { -BigInt::one() } else { BigInt::one() };
    let mut square_root = BigInt::one();
    let mut m = nd.abs();
    let mut p = BigInt::from(2);
    while &p * &p <= m {
        let pp = &p * &p;
        while (&m % &pp).is_zero() {
            m /= &pp;
            square_root *= &p;
        }
        if (&m % &p).is_zero() {
            m /= &p;
            core *= &p;
        }
        p += 1;
    }
    // what is left is 1 or a prime
    core *= m;
    (core, Rational::new(square_root, r.denom().clone()))
}

/// `u + v·sqrt(disc)`, `disc` a squarefree non-square integer, `v ≠ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurdForm {
    pub u: Rational,
    pub v: Rational,
    pub disc: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SurdValue {
    Rational(Rational),
    Surd(SurdForm),
}

impl SurdForm {
    /// The value at the other root of the quadratic.
    pub fn conjugate(&self) -> SurdForm {
        SurdForm { u: self.u.clone(), v: -self.v.clone(), disc: self.disc.clone() }
    }

    /// `(re, im)` in double precision.
    pub fn to_f64(&self) -> (f64, f64) {
        let u = self.u.to_f64().unwrap_or(f64::NAN);
        let v = self.v.to_f64().unwrap_or(f64::NAN);
        let d = self.disc.to_f64().unwrap_or(f64::NAN);
        if d >= 0.0 {
            (u + v * d.sqrt(), 0.0)
        } else {
            (u, v * (-d).sqrt())
        }
    }

    /// Single-term surds with a nonzero rational part are sums and need
    /// parentheses when multiplied.
    pub fn is_sum(&self) -> bool {
        !self.u.is_zero()
    }
}

impl SurdValue {
    pub fn conjugate(&self) -> SurdValue {
        match self {
            SurdValue::Rational(r) => SurdValue::Rational(r.clone()),
            SurdValue::Surd(s) => SurdValue::Surd(s.conjugate()),
        }
    }

    pub fn to_f64(&self) -> (f64, f64) {
        match self {
            SurdValue::Rational(r) => (r.to_f64().unwrap_or(f64::NAN), 0.0),
            SurdValue::Surd(s) => s.to_f64(),
        }
    }
}

impl fmt::Display for SurdForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.u.is_zero() {
            write!(f, "{}", self.u)?;
            write!(f, " {} ", if self.v.is_negative() { '-' } else { '+' })?;
        } else if self.v.is_negative() {
            write!(f, "-")?;
        }
        let num = self.v.numer().abs();
        if !num.is_one() {
            write!(f, "{num}*")?;
        }
        write!(f, "sqrt({})", self.disc)?;
        if !self.v.denom().is_one() {
            write!(f, "/{}", self.v.denom())?;
        }
        Ok(())
    }
}

impl fmt::Display for SurdValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurdValue::Rational(r) => write!(f, "{r}"),
            SurdValue::Surd(s) => write!(f, "{s}"),
        }
    }
}
