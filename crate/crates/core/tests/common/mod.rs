//! Test-only oracles: an interpreter for the plain closed-form grammar,
//! numeric roots through nalgebra, and a cofactor-expansion determinant.

#![allow(dead_code)]

use kpower::charpoly::Matrix;
use kpower::poly::Poly;
use kpower::Rational;
use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};
use proptest::prelude::*;

#[derive(Clone, Debug)]
pub enum Expr {
    Num(Rational),
    Var(String),
    Neg(Box<Expr>),
    Bin(char, Box<Expr>, Box<Expr>),
    Sqrt(Box<Expr>),
    /// `sum(var = RootOf(poly in _Z), body)`
    RootSum(String, Box<Expr>, Box<Expr>),
}

struct Parser<'a> {
    s: &'a [u8],
    i: usize,
}

impl<'a> Parser<'a> {
    fn ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.i).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) {
        assert!(self.eat(c), "expected '{}' at {} in {:?}", c as char, self.i, String::from_utf8_lossy(self.s));
    }

    fn ident(&mut self) -> String {
        self.ws();
        let start = self.i;
        while self.i < self.s.len() && (self.s[self.i].is_ascii_alphanumeric() || self.s[self.i] == b'_') {
            self.i += 1;
        }
        String::from_utf8_lossy(&self.s[start..self.i]).into_owned()
    }

    fn expr(&mut self) -> Expr {
        let mut lhs = self.term();
        loop {
            if self.eat(b'+') {
                lhs = Expr::Bin('+', Box::new(lhs), Box::new(self.term()));
            } else if self.eat(b'-') {
                lhs = Expr::Bin('-', Box::new(lhs), Box::new(self.term()));
            } else {
                return lhs;
            }
        }
    }

    fn term(&mut self) -> Expr {
        let mut lhs = self.unary();
        loop {
            if self.eat(b'*') {
                lhs = Expr::Bin('*', Box::new(lhs), Box::new(self.unary()));
            } else if self.eat(b'/') {
                lhs = Expr::Bin('/', Box::new(lhs), Box::new(self.unary()));
            } else {
                return lhs;
            }
        }
    }

    fn unary(&mut self) -> Expr {
        if self.eat(b'-') {
            Expr::Neg(Box::new(self.unary()))
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Expr {
        let base = self.atom();
        if self.eat(b'^') {
            Expr::Bin('^', Box::new(base), Box::new(self.unary()))
        } else {
            base
        }
    }

    fn atom(&mut self) -> Expr {
        match self.peek() {
            Some(b'(') => {
                self.i += 1;
                let e = self.expr();
                self.expect(b')');
                e
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.i;
                while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
                    self.i += 1;
                }
                let digits = std::str::from_utf8(&self.s[start..self.i]).unwrap();
                Expr::Num(Rational::from_integer(digits.parse().unwrap()))
            }
            Some(_) => {
                let name = self.ident();
                assert!(!name.is_empty(), "unexpected input at {} in {:?}", self.i, String::from_utf8_lossy(self.s));
                match name.as_str() {
                    "sqrt" => {
                        self.expect(b'(');
                        let e = self.expr();
                        self.expect(b')');
                        Expr::Sqrt(Box::new(e))
                    }
                    "sum" => {
                        self.expect(b'(');
                        let var = self.ident();
                        self.expect(b'=');
                        assert_eq!(self.ident(), "RootOf");
                        self.expect(b'(');
                        let poly = self.expr();
                        self.expect(b')');
                        self.expect(b',');
                        let body = self.expr();
                        self.expect(b')');
                        Expr::RootSum(var, Box::new(poly), Box::new(body))
                    }
                    _ => Expr::Var(name),
                }
            }
            None => panic!("unexpected end of {:?}", String::from_utf8_lossy(self.s)),
        }
    }
}

pub fn parse_expr(text: &str) -> Expr {
    let mut p = Parser { s: text.as_bytes(), i: 0 };
    let e = p.expr();
    p.ws();
    assert_eq!(p.i, text.len(), "trailing input in {text:?}");
    e
}

type Env<'a, T> = &'a [(&'a str, T)];

fn lookup<T: Clone>(env: Env<T>, name: &str) -> T {
    env.iter().rev().find(|(n, _)| *n == name).unwrap_or_else(|| panic!("unbound {name}")).1.clone()
}

/// Floating evaluation over the complex numbers.
pub fn eval_complex(e: &Expr, env: Env<Complex64>) -> Complex64 {
    eval_scaled(e, env).0
}

/// Value together with the magnitude its rounding error scales with
/// (the sum of absolute values of everything added along the way).
pub fn eval_scaled(e: &Expr, env: Env<Complex64>) -> (Complex64, f64) {
    match e {
        Expr::Num(r) => {
            let v = r.to_f64().unwrap();
            (Complex64::new(v, 0.0), v.abs())
        }
        Expr::Var(v) => {
            let z = lookup(env, v);
            (z, z.norm())
        }
        Expr::Neg(a) => {
            let (x, m) = eval_scaled(a, env);
            (-x, m)
        }
        Expr::Sqrt(a) => {
            let (x, m) = eval_scaled(a, env);
            (x.sqrt(), m.sqrt())
        }
        Expr::Bin(op, a, b) => {
            let ((x, mx), (y, my)) = (eval_scaled(a, env), eval_scaled(b, env));
            match op {
                '+' => (x + y, mx + my),
                '-' => (x - y, mx + my),
                '*' => (x * y, mx * my),
                '/' => (x / y, mx / y.norm()),
                '^' => {
                    assert!(y.im.abs() < 1e-12 && (y.re - y.re.round()).abs() < 1e-12, "non-integer exponent {y}");
                    let e = y.re.round() as i32;
                    let base = if e < 0 { x.norm() } else { mx };
                    (x.powi(e), base.powi(e))
                }
                _ => unreachable!(),
            }
        }
        Expr::RootSum(var, poly, body) => {
            let coeffs = poly_coefficients(poly);
            numeric_roots_f64(&coeffs)
                .into_iter()
                .map(|root| {
                    let mut inner: Vec<(&str, Complex64)> = env.to_vec();
                    inner.push((var.as_str(), root));
                    eval_scaled(body, &inner)
                })
                .fold((Complex64::new(0.0, 0.0), 0.0), |(s, m), (v, vm)| (s + v, m + vm))
        }
    }
}

/// `got` within `rel` of `want`, relative to `scale` (at least 1 and |want|).
pub fn close_scaled(got: Complex64, want: &Rational, rel: f64, scale: f64) -> bool {
    let w = want.to_f64().unwrap();
    let tol = rel * scale.max(w.abs()).max(1.0);
    (got.re - w).abs() <= tol && got.im.abs() <= tol
}

/// Coefficients of a univariate `_Z` expression, recovered by sampling on
/// the unit circle and an inverse DFT (degree below 32).
fn poly_coefficients(poly: &Expr) -> Vec<f64> {
    const N: usize = 32;
    let samples: Vec<Complex64> = (0..N)
        .map(|j| {
            let z = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * j as f64 / N as f64);
            eval_complex(poly, &[("_Z", z)])
        })
        .collect();
    let mut coeffs: Vec<f64> = (0..N)
        .map(|m| {
            let s: Complex64 = samples
                .iter()
                .enumerate()
                .map(|(j, v)| v * Complex64::from_polar(1.0, -2.0 * std::f64::consts::PI * (j * m) as f64 / N as f64))
                .sum();
            s.re / N as f64
        })
        .collect();
    while coeffs.last().is_some_and(|c| c.abs() < 1e-9) {
        coeffs.pop();
    }
    coeffs
}

/// Roots of `c0 + c1 x + ... + cm x^m` as companion-matrix eigenvalues.
/// Unshifted QR can stall on symmetric spectra (x^4 + 1), so on failure the
/// polynomial is re-centred at a few shifts.
pub fn numeric_roots_f64(coeffs: &[f64]) -> Vec<Complex64> {
    for shift in [0.0, 0.3711, -0.5279, 1.1173] {
        if let Some(roots) = companion_eigenvalues(&taylor_shift(coeffs, shift)) {
            return roots.into_iter().map(|z| z + shift).collect();
        }
    }
    panic!("no convergent shift for {coeffs:?}");
}

/// Coefficients of p(x + s).
fn taylor_shift(coeffs: &[f64], s: f64) -> Vec<f64> {
    let mut c = coeffs.to_vec();
    let m = c.len();
    for i in 0..m {
        for j in (i..m - 1).rev() {
            c[j] += s * c[j + 1];
        }
    }
    c
}

fn companion_eigenvalues(coeffs: &[f64]) -> Option<Vec<Complex64>> {
    let m = coeffs.len() - 1;
    let lead = coeffs[m];
    let companion = DMatrix::<f64>::from_fn(m, m, |i, j| {
        if j == m - 1 {
            -coeffs[i] / lead
        } else if i == j + 1 {
            1.0
        } else {
            0.0
        }
    });
    let schur = nalgebra::linalg::Schur::try_new(companion, 1e-15, 5_000)?;
    Some(schur.complex_eigenvalues().iter().copied().collect())
}

pub fn numeric_roots(p: &Poly) -> Vec<Complex64> {
    let c: Vec<f64> = p.coeffs().iter().map(|c| c.to_f64().unwrap()).collect();
    numeric_roots_f64(&c)
}

/// Exact evaluation; `None` when the expression leaves the rationals
/// (square roots, root sums, non-integer exponents).
pub fn eval_exact(e: &Expr, env: Env<Rational>) -> Option<Rational> {
    match e {
        Expr::Num(r) => Some(r.clone()),
        Expr::Var(v) => Some(lookup(env, v)),
        Expr::Neg(a) => eval_exact(a, env).map(|x| -x),
        Expr::Sqrt(_) | Expr::RootSum(..) => None,
        Expr::Bin(op, a, b) => {
            let (x, y) = (eval_exact(a, env)?, eval_exact(b, env)?);
            Some(match op {
                '+' => x + y,
                '-' => x - y,
                '*' => x * y,
                '/' => x / y,
                '^' => {
                    if !y.is_integer() {
                        return None;
                    }
                    x.pow(y.to_integer().to_i32()?)
                }
                _ => unreachable!(),
            })
        }
    }
}

pub fn uses_surds(e: &Expr) -> bool {
    match e {
        Expr::Num(_) | Expr::Var(_) => false,
        Expr::Neg(a) => uses_surds(a),
        Expr::Sqrt(_) | Expr::RootSum(..) => true,
        Expr::Bin(_, a, b) => uses_surds(a) || uses_surds(b),
    }
}

/// Parses the `[i,j] = expr` lines of a plain closed-form rendering.
pub fn plain_entries(text: &str) -> Vec<((usize, usize), Expr)> {
    text.lines()
        .filter(|l| l.starts_with('['))
        .map(|l| {
            let (lhs, rhs) = l.split_once(" = ").expect("entry line");
            let (i, j) = lhs.trim_matches(|c| c == '[' || c == ']').split_once(',').unwrap();
            ((i.parse::<usize>().unwrap() - 1, j.parse::<usize>().unwrap() - 1), parse_expr(rhs))
        })
        .collect()
}

pub fn close(got: Complex64, want: &Rational, rel: f64) -> bool {
    let w = want.to_f64().unwrap();
    (got.re - w).abs() <= rel * w.abs().max(1.0) && got.im.abs() <= rel * w.abs().max(1.0)
}

/// Laplace expansion along the first row.
pub fn cofactor_det(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    if n == 0 {
        return Rational::one();
    }
    let mut total = Rational::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Rational>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, v)| v.clone()).collect())
            .collect();
        let term = &m[0][j] * cofactor_det(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// det(xI - A) by cofactor expansion over polynomial entries.
pub fn cofactor_charpoly(a: &Matrix) -> Poly {
    fn det(m: &[Vec<Poly>]) -> Poly {
        let n = m.len();
        if n == 0 {
            return Poly::one();
        }
        let mut total = Poly::zero();
        for j in 0..n {
            let minor: Vec<Vec<Poly>> = m[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, v)| v.clone()).collect())
                .collect();
            let term = &m[0][j] * &det(&minor);
            total = if j % 2 == 0 { &total + &term } else { &total - &term };
        }
        total
    }
    let n = a.dim();
    let m: Vec<Vec<Poly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = Poly::constant(-a[(i, j)].clone());
                    if i == j {
                        &Poly::x() + &c
                    } else {
                        c
                    }
                })
                .collect()
        })
        .collect();
    det(&m)
}

pub fn rows(a: &Matrix) -> Vec<Vec<Rational>> {
    a.rows().map(|r| r.to_vec()).collect()
}

pub fn int_matrix(rows: &[&[i64]]) -> Matrix {
    Matrix::from_i64_rows(rows).unwrap()
}

pub fn eig223() -> Matrix {
    int_matrix(&[&[4, -2, 2], &[-5, 7, -5], &[-6, 6, -4]])
}

pub fn eig223_inverse() -> Matrix {
    let r = |p: i64, q: i64| Rational::new(p.into(), q.into());
    Matrix::from_rows(vec![
        vec![r(1, 6), r(1, 3), r(-1, 3)],
        vec![r(5, 6), r(-1, 3), r(5, 6)],
        vec![r(1, 1), r(-1, 1), r(3, 2)],
    ])
    .unwrap()
}

pub fn surd17() -> Matrix {
    int_matrix(&[&[0, 0, 1, 0, 1], &[1, 0, 0, 0, 1], &[0, 0, 0, 1, 1], &[0, 1, 0, 0, 1], &[1, 1, 1, 1, 0]])
}

pub fn nilpotent4() -> Matrix {
    int_matrix(&[&[0, 2, 1, 3], &[0, 0, -2, 4], &[0, 0, 0, 5], &[0, 0, 0, 0]])
}

pub fn plus_minus_two() -> Matrix {
    int_matrix(&[&[1, 1, 1, 0], &[1, 1, 1, -1], &[0, 0, -1, 1], &[0, 0, 1, -1]])
}

/// Square integer matrices of size 1..=4 with entries in [-3, 3].
pub fn small_matrix() -> impl Strategy<Value = Matrix> {
    (1usize..=4).prop_flat_map(|n| {
        proptest::collection::vec(-3i64..=3, n * n).prop_map(move |v| {
            Matrix::new(n, v.into_iter().map(|x| Rational::from_integer(x.into())).collect()).unwrap()
        })
    })
}

/// Evaluates a polynomial at a matrix by Horner's rule.
pub fn poly_at_matrix(p: &Poly, a: &Matrix) -> Matrix {
    let n = a.dim();
    let mut acc = Matrix::zeros(n);
    for c in p.coeffs().iter().rev() {
        let shifted = &acc * a;
        let entries = shifted
            .entries()
            .iter()
            .enumerate()
            .map(|(idx, v)| if idx % (n + 1) == 0 { v + c } else { v.clone() })
            .collect();
        acc = Matrix::new(n, entries).unwrap();
    }
    acc
}
