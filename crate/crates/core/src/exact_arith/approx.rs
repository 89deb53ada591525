//! Display-only numeric approximation of residues at the roots of their modulus.
//!
//! Starting points come from an Aberth iteration in double precision; each
//! root is then polished with Newton steps in exact dyadic rationals. An
//! inclusion radius (a root lies within `n·|f(z)/f'(z)|` of `z`) bounds the
//! error, and real roots are confirmed by an exact sign change.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use super::Rational;
use crate::poly::Poly;

const MAX_DIGITS: u32 = 280;

/// Closed interval with exact rational endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecimalInterval {
    lo: Rational,
    hi: Rational,
}

impl DecimalInterval {
    pub fn exact(value: Rational) -> Self {
        DecimalInterval { lo: value.clone(), hi: value }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(2.into())
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn to_f64(&self) -> f64 {
        self.midpoint().to_f64().unwrap_or(f64::NAN)
    }

    /// Midpoint rounded to `digits` decimals.
    pub fn to_decimal(&self, digits: u32) -> String {
        decimal_string(&self.midpoint(), digits)
    }
}

/// Approximation of a complex value: real and imaginary enclosures.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootApprox {
    pub re: DecimalInterval,
    pub im: DecimalInterval,
    pub digits: u32,
}

impl RootApprox {
    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    pub fn is_real(&self) -> bool {
        self.im.lo.is_zero() && self.im.hi.is_zero()
    }
}

impl fmt::Display for RootApprox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.re.to_decimal(self.digits))?;
        if !self.is_real() {
            let im = self.im.midpoint();
            let sign = if im.is_negative() { '-' } else { '+' };
            write!(f, " {sign} {}*I", decimal_string(&im.abs(), self.digits))?;
        }
        Ok(())
    }
}

fn decimal_string(x: &Rational, digits: u32) -> String {
    let scale = BigInt::from(10).pow(digits);
    let scaled = (x * Rational::from_integer(scale.clone())).round().to_integer();
    let neg = scaled.is_negative();
    let mag = scaled.abs().to_string();
    let d = digits as usize;
    let padded = if mag.len() <= d { format!("{}{}", "0".repeat(d + 1 - mag.len()), mag) } else { mag };
    let (int, frac) = padded.split_at(padded.len() - d);
    let sign = if neg { "-" } else { "" };
    if d == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac}")
    }
}

#[derive(Clone, Debug)]
struct CQ {
    re: Rational,
    im: Rational,
}

impl CQ {
    fn real(re: Rational) -> Self {
        CQ { re, im: Rational::zero() }
    }

    fn add(&self, o: &CQ) -> CQ {
        CQ { re: &self.re + &o.re, im: &self.im + &o.im }
    }

    fn sub(&self, o: &CQ) -> CQ {
        CQ { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    fn mul(&self, o: &CQ) -> CQ {
        CQ { re: &self.re * &o.re - &self.im * &o.im, im: &self.re * &o.im + &self.im * &o.re }
    }

    fn div(&self, o: &CQ) -> CQ {
        let den = &o.re * &o.re + &o.im * &o.im;
        CQ { re: (&self.re * &o.re + &self.im * &o.im) / &den, im: (&self.im * &o.re - &self.re * &o.im) / &den }
    }

    fn abs_f64(&self) -> f64 {
        let (a, b) = (self.re.to_f64().unwrap_or(f64::INFINITY), self.im.to_f64().unwrap_or(f64::INFINITY));
        a.hypot(b)
    }

    fn round(&self, bits: u32) -> CQ {
        CQ { re: round_dyadic(&self.re, bits), im: round_dyadic(&self.im, bits) }
    }
}

fn round_dyadic(x: &Rational, bits: u32) -> Rational {
    let scale = Rational::from_integer(BigInt::one() << bits);
    (x * &scale).round() / scale
}

fn eval_complex(p: &Poly, z: &CQ) -> CQ {
    p.coeffs().iter().rev().fold(CQ::real(Rational::zero()), |acc, c| acc.mul(z).add(&CQ::real(c.clone())))
}

/// Aberth-Ehrlich simultaneous iteration in double precision; unverified.
pub(crate) fn aberth(p: &Poly) -> Vec<Complex64> {
    let c: Vec<f64> = p.coeffs().iter().map(|r| r.to_f64().unwrap_or(0.0)).collect();
    let n = c.len() - 1;
    let lead = c[n];
    let monic: Vec<f64> = c.iter().map(|x| x / lead).collect();
    let eval = |z: Complex64| {
        let mut v = Complex64::new(0.0, 0.0);
        let mut d = Complex64::new(0.0, 0.0);
        for &a in monic.iter().rev() {
            d = d * z + v;
            v = v * z + a;
        }
        (v, d)
    };
    let bound = 1.0 + monic[..n].iter().fold(0.0f64, |m, a| m.max(a.abs()));
    let radius = bound.min(monic[0].abs().powf(1.0 / n as f64).max(0.5));
    let mut z: Vec<Complex64> =
        (0..n).map(|j| Complex64::from_polar(radius, std::f64::consts::TAU * j as f64 / n as f64 + 0.4)).collect();
    for _ in 0..1000 {
        let mut max_step = 0.0f64;
        for i in 0..n {
            let (v, d) = eval(z[i]);
            if v.norm() == 0.0 {
                continue;
            }
            let ratio = if d.norm() == 0.0 { Complex64::new(1e-8, 1e-8) } else { v / d };
            let repulsion: Complex64 = (0..n).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.is_finite() {
                z[i] -= step;
                max_step = max_step.max(step.norm() / (1.0 + z[i].norm()));
            }
        }
        if max_step < 1e-15 {
            break;
        }
    }
    z
}

struct Refined {
    z: CQ,
    radius: f64,
    real: bool,
}

/// Polishes each double-precision root to about `bits` bits.
fn refine(p: &Poly, bits: u32) -> Vec<Refined> {
    let n = p.degree().unwrap_or(0);
    if n == 0 {
        return Vec::new();
    }
    if n == 1 {
        let root = -p.coeff(0) / p.coeff(1);
        return vec![Refined { z: CQ::real(root), radius: 0.0, real: true }];
    }
    let dp = p.derivative();
    let nf = n as f64;
    let mut out: Vec<Refined> = aberth(p)
        .into_iter()
        .map(|start| {
            if start.im.abs() <= 1e-7 * (1.0 + start.norm()) {
                if let Some(r) = refine_real(p, &dp, start.re, bits) {
                    return r;
                }
            }
            let mut z = CQ {
                re: Rational::from_float(start.re).unwrap_or_else(Rational::zero),
                im: Rational::from_float(start.im).unwrap_or_else(Rational::zero),
            };
            let mut radius = f64::INFINITY;
            for _ in 0..200 {
                let fz = eval_complex(p, &z);
                let dfz = eval_complex(&dp, &z);
                if dfz.re.is_zero() && dfz.im.is_zero() {
                    break;
                }
                let step = fz.div(&dfz);
                let step_abs = step.abs_f64();
                radius = nf * step_abs * 1.01;
                if fz.re.is_zero() && fz.im.is_zero() {
                    radius = 0.0;
                    break;
                }
                if step_abs < (-(bits as f64)).exp2() {
                    break;
                }
                z = z.sub(&step).round(bits);
            }
            Refined { z, radius, real: false }
        })
        .collect();
    out.sort_by(|a, b| match a.z.re.cmp(&b.z.re) {
        Ordering::Equal => a.z.im.cmp(&b.z.im),
        o => o,
    });
    out
}

fn refine_real(p: &Poly, dp: &Poly, start: f64, bits: u32) -> Option<Refined> {
    let mut x = Rational::from_float(start)?;
    for _ in 0..200 {
        let fx = p.eval(&x);
        if fx.is_zero() {
            return Some(Refined { z: CQ::real(x), radius: 0.0, real: true });
        }
        let dfx = dp.eval(&x);
        if dfx.is_zero() {
            return None;
        }
        let step = fx / dfx;
        let small = step.abs().to_f64().unwrap_or(f64::INFINITY) < (-(bits as f64)).exp2();
        x = round_dyadic(&(&x - &step), bits);
        if small {
            break;
        }
    }
    let fx = p.eval(&x);
    let dfx = dp.eval(&x);
    let newton = if dfx.is_zero() { Rational::zero() } else { (fx / dfx).abs() };
    let n = Rational::from_integer(p.degree().unwrap_or(1).into());
    let delta = Rational::from_integer(2.into()) * n * newton
        + Rational::new(BigInt::one(), BigInt::one() << bits.saturating_sub(4));
    let left = p.eval(&(&x - &delta));
    let right = p.eval(&(&x + &delta));
    if left.is_zero() || right.is_zero() || left.is_negative() != right.is_negative() {
        let radius = delta.to_f64().unwrap_or(f64::INFINITY);
        Some(Refined { z: CQ::real(x), radius, real: true })
    } else {
        None
    }
}

/// Upper bound on |r'(w)| for |w - z| <= radius.
fn lipschitz(residue: &Poly, z_abs: f64, radius: f64) -> f64 {
    let reach = z_abs + radius;
    residue
        .coeffs()
        .iter()
        .enumerate()
        .skip(1)
        .map(|(e, c)| c.abs().to_f64().unwrap_or(f64::INFINITY) * e as f64 * reach.powi(e as i32 - 1))
        .sum::<f64>()
        * (1.0 + 1e-9)
}

fn enclose(center: &Rational, err: f64, digits: u32) -> DecimalInterval {
    if err == 0.0 {
        return DecimalInterval::exact(center.clone());
    }
    let err = Rational::from_float(err).unwrap_or_else(Rational::zero);
    let scale = Rational::from_integer(BigInt::from(10).pow(digits + 2));
    let lo = ((center - &err) * &scale).floor() / &scale;
    let hi = ((center + &err) * &scale).ceil() / &scale;
    DecimalInterval { lo, hi }
}

pub(super) fn evaluate_at_root(modulus: &Poly, residue: &Poly, index: usize, digits: u32) -> RootApprox {
    let digits = digits.min(MAX_DIGITS);
    let target = 0.25 * 10f64.powi(-(digits as i32));
    let mut bits = 64 + digits * 4;
    loop {
        let roots = refine(modulus, bits);
        let root = &roots[index];
        let value = eval_complex(residue, &root.z);
        let err = lipschitz(residue, root.z.abs_f64(), root.radius) * root.radius;
        if err <= target || bits > 64 * MAX_DIGITS {
            let re = enclose(&value.re, err, digits);
            let im = if root.real { DecimalInterval::exact(Rational::zero()) } else { enclose(&value.im, err, digits) };
            return RootApprox { re, im, digits };
        }
        bits *= 2;
    }
}

pub(super) fn roots(modulus: &Poly, digits: u32) -> Vec<RootApprox> {
    let n = modulus.degree().unwrap_or(0);
    (0..n).map(|i| evaluate_at_root(modulus, &Poly::x(), i, digits)).collect()
}
