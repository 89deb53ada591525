//! Dense univariate polynomials over the rationals.
//!
//! Coefficients are stored lowest degree first and the vector never carries
//! trailing zeros, so the zero polynomial is the empty vector and equality
//! is structural.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact_arith::Rational;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn x() -> Self {
        Poly::monomial(Rational::one(), 1)
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    /// `c * x^deg`
    pub fn monomial(c: Rational, deg: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); deg + 1];
        coeffs[deg] = c;
        Poly::new(coeffs)
    }

    /// The monic linear polynomial `x - root`.
    pub fn linear(root: &Rational) -> Self {
        Poly::new(vec![-root.clone(), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    /// Index of the lowest nonzero coefficient.
    pub fn ldegree(&self) -> Result<usize> {
        self.coeffs.iter().position(|c| !c.is_zero()).ok_or(Error::ZeroPolynomial)
    }

    pub fn eval(&self, at: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * at + c)
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * Rational::from_integer(i.into())).collect())
    }

    pub fn scale(&self, by: &Rational) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * by).collect())
    }

    /// Divides by the leading coefficient. The zero polynomial is returned as is.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            Some(lc) if !lc.is_one() => self.scale(&lc.recip()),
            _ => self.clone(),
        }
    }

    /// Divides by `x^d`, dropping the `d` lowest coefficients.
    pub fn shift_down(&self, d: usize) -> Poly {
        Poly::new(self.coeffs.iter().skip(d).cloned().collect())
    }

    pub fn divrem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        let dd = divisor.degree().ok_or(Error::ZeroDivisor)?;
        let lc_inv = divisor.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let q = &rem[i + dd] * &lc_inv;
            if q.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &q * d;
            }
            quot[i] = q;
        }
        rem.truncate(dd);
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        self.divrem(divisor).map(|(_, r)| r)
    }

    /// Quotient of a division known to be exact.
    fn exact_div(&self, divisor: &Poly) -> Poly {
        let (q, r) = self.divrem(divisor).expect("nonzero divisor");
        debug_assert!(r.is_zero(), "inexact division");
        q
    }

    /// Monic greatest common divisor.
    pub fn gcd(f: &Poly, g: &Poly) -> Result<Poly> {
        if f.is_zero() && g.is_zero() {
            return Err(Error::ZeroGcd);
        }
        let (mut a, mut b) = (f.clone(), g.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r.monic();
        }
        Ok(a.monic())
    }

    /// Yun's squarefree decomposition of the monic normalization of `self`.
    ///
    /// Returns pairwise coprime monic squarefree factors with their
    /// multiplicities, in increasing multiplicity. Constants yield an empty list.
    pub fn squarefree_decompose(&self) -> Vec<(Poly, usize)> {
        let f = self.monic();
        if f.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let df = f.derivative();
        let a0 = Poly::gcd(&f, &df).expect("f is nonzero");
        let mut b = f.exact_div(&a0);
        let mut c = df.exact_div(&a0);
        let mut d = &c - &b.derivative();
        let mut out = Vec::new();
        let mut mult = 1;
        while b.degree().unwrap_or(0) > 0 {
            let a = Poly::gcd(&b, &d).expect("b is nonzero");
            b = b.exact_div(&a);
            c = d.exact_div(&a);
            d = &c - &b.derivative();
            if a.degree().unwrap_or(0) > 0 {
                out.push((a, mult));
            }
            mult += 1;
        }
        out
    }

    /// Splits off every rational root.
    ///
    /// Candidates come from the rational-root theorem on the integer-scaled
    /// polynomial, tried in order of absolute value (positive first). Each root
    /// found is divided out once, so the input is expected to be squarefree.
    /// The remainder is monic.
    pub fn extract_rational_roots(&self) -> (Vec<Rational>, Poly) {
        let mut rest = self.monic();
        let mut roots = Vec::new();
        if rest.degree().unwrap_or(0) == 0 {
            return (roots, rest);
        }
        if rest.coeffs[0].is_zero() {
            roots.push(Rational::zero());
            rest = rest.shift_down(1);
        }
        let ints = rest.integer_coefficients();
        let lead = ints.last().expect("nonconstant").magnitude().clone();
        let constant = ints[0].magnitude().clone();
        if constant.is_zero() {
            return (roots, rest);
        }

        let mut candidates: Vec<Rational> = Vec::new();
        for p in divisors(&constant) {
            for q in divisors(&lead) {
                let c = Rational::new(BigInt::from(p.clone()), BigInt::from(q));
                if !candidates.contains(&c) {
                    candidates.push(c);
                }
            }
        }
        candidates.sort();

        for c in candidates {
            for cand in [c.clone(), -c] {
                if rest.degree().unwrap_or(0) == 0 {
                    break;
                }
                if rest.eval(&cand).is_zero() {
                    rest = rest.exact_div(&Poly::linear(&cand));
                    roots.push(cand);
                }
            }
        }
        (roots, rest)
    }

    /// Primitive integer multiple of `self` (positive leading coefficient).
    pub fn integer_coefficients(&self) -> Vec<BigInt> {
        let lcm = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let scaled: Vec<BigInt> =
            self.coeffs.iter().map(|c| (c * Rational::from_integer(lcm.clone())).to_integer()).collect();
        let g = scaled.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let sign = if self.leading().is_some_and(|l| l.is_negative()) { -BigInt::one() } else { BigInt::one() };
        if g.is_zero() {
            return scaled;
        }
        scaled.into_iter().map(|c| c / &g * &sign).collect()
    }

    /// Power sums `p_0 ..= p_upto` of the roots of a monic polynomial, from
    /// Newton's identities.
    pub fn power_sums(&self, upto: usize) -> Vec<Rational> {
        let n = self.degree().unwrap_or(0);
        // a[i] = coefficient of x^(n-i) for i = 1..=n
        let a: Vec<Rational> = (0..=n).map(|i| self.coeff(n - i.min(n))).collect();
        let mut p = Vec::with_capacity(upto + 1);
        p.push(Rational::from_integer(n.into()));
        for j in 1..=upto {
            let mut s = Rational::zero();
            for i in 1..j.min(n + 1) {
                s += &a[i] * &p[j - i];
            }
            if j <= n {
                s += &a[j] * Rational::from_integer(j.into());
            }
            p.push(-s);
        }
        p
    }

    /// `(self * other) mod modulus`
    pub fn mul_mod(&self, other: &Poly, modulus: &Poly) -> Result<Poly> {
        (self * other).rem(modulus)
    }

    /// `x^k mod modulus` by binary exponentiation.
    pub fn x_pow_mod(k: u64, modulus: &Poly) -> Result<Poly> {
        if modulus.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        let mut result = Poly::one().rem(modulus)?;
        let mut base = Poly::x().rem(modulus)?;
        let mut e = k;
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

    /// Renders with the given variable name, highest degree first.
    pub fn display_in<'a>(&'a self, var: &'a str) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, var }
    }
}

/// Positive divisors by trial division, ascending.
fn divisors(n: &BigUint) -> Vec<BigUint> {
    let mut primes: Vec<(BigUint, u32)> = Vec::new();
    let mut m = n.clone();
    let mut p = BigUint::from(2u32);
    while &p * &p <= m {
        let mut e = 0;
        while (&m % &p).is_zero() {
            m /= &p;
            e += 1;
        }
        if e > 0 {
            primes.push((p.clone(), e));
        }
        p += 1u32;
    }
    if m > BigUint::one() {
        primes.push((m, 1));
    }
    let mut divs = vec![BigUint::one()];
    for (p, e) in primes {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = BigUint::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    divs
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

pub struct PolyDisplay<'a> {
    poly: &'a Poly,
    var: &'a str,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.poly.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    write!(f, "{}", self.var)?;
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display_in("x").fmt(f)
    }
}
