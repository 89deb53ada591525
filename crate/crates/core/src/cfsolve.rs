//! Closed forms of C-finite sequences.
//!
//! A sequence annihilated by `x^d · R(x)` with `R(0) ≠ 0` is, from index `d`
//! on, a sum of terms `k^t · Tr(c · θ^k)` where `θ` runs over the roots of a
//! squarefree factor of `R`, `t` is below that factor's multiplicity and `c`
//! is a residue modulo the factor. The trace keeps every value rational, so
//! the coefficients are fitted with one rational linear system.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{FromPrimitive, One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact_arith::{float_roots, AlgValue, FactorHandle, Rational};
use crate::poly::Poly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub handle: FactorHandle,
    pub multiplicity: usize,
}

/// Nonzero-root structure of a monic polynomial `x^d · R(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralBasis {
    low_degree: usize,
    blocks: Vec<Block>,
    source: Poly,
}

impl SpectralBasis {
    pub fn low_degree(&self) -> usize {
        self.low_degree
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn source(&self) -> &Poly {
        &self.source
    }

    /// Recurrence order `Σ multiplicity · degree`.
    pub fn order(&self) -> usize {
        self.blocks.iter().map(|b| b.multiplicity * b.handle.degree()).sum()
    }
}

/// Strips `x^d`, runs a squarefree decomposition on the rest and splits each
/// squarefree factor into its rational roots, rational quadratic factors and
/// whatever is left.
pub fn build_spectral_basis(p: &Poly) -> Result<SpectralBasis> {
    match p.degree() {
        Some(d) if d >= 1 => {}
        _ => return Err(Error::Usage(format!("spectral basis needs a nonconstant polynomial, got {p}"))),
    }
    let source = p.monic();
    let low_degree = source.ldegree()?;
    let rest = source.shift_down(low_degree);

    let mut blocks = Vec::new();
    for (factor, multiplicity) in rest.squarefree_decompose() {
        let (roots, remainder) = factor.extract_rational_roots();
        for r in roots {
            blocks.push(Block { handle: FactorHandle::new(Poly::linear(&r), "_R")?, multiplicity });
        }
        if remainder.degree().unwrap_or(0) > 0 {
            for part in split_quadratics(remainder)? {
                blocks.push(Block { handle: FactorHandle::new(part, "_R")?, multiplicity });
            }
        }
    }
    blocks.sort_by_cached_key(|b| block_key(b.handle.modulus()));
    Ok(SpectralBasis { low_degree, blocks, source })
}

/// Splits rational quadratic factors off a squarefree monic polynomial of
/// degree at least 4 with no rational roots. Candidates come from pairing
/// approximate roots and are kept only if they divide exactly; whatever is
/// left stays as one block.
fn split_quadratics(f: Poly) -> Result<Vec<Poly>> {
    let deg = f.degree().unwrap_or(0);
    if deg < 4 {
        return Ok(vec![f]);
    }
    // roots of the monic integer polynomial D^m f(y/D) are D times those of f
    let scale = f.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let scale_f = scale.to_f64().unwrap_or(f64::INFINITY);
    let roots: Vec<Complex64> = float_roots(&f).into_iter().map(|z| z * scale_f).collect();
    let mut used = vec![false; roots.len()];
    let mut rest = f;
    let mut parts = Vec::new();
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            if used[i] || used[j] || rest.degree().unwrap_or(0) <= 2 {
                continue;
            }
            let (s, p) = (roots[i] + roots[j], roots[i] * roots[j]);
            let near = |z: Complex64| {
                let r = z.re.round();
                (z.im.abs() < 1e-6 && (z.re - r).abs() < 1e-6 * r.abs().max(1.0)).then_some(r)
            };
            let (Some(s), Some(p)) = (near(s), near(p)) else { continue };
            let (Some(s), Some(p)) = (BigInt::from_f64(s), BigInt::from_f64(p)) else { continue };
            let quad =
                Poly::new(vec![Rational::new(p, &scale * &scale), Rational::new(-s, scale.clone()), Rational::one()]);
            let (q, r) = rest.divrem(&quad)?;
            if r.is_zero() {
                used[i] = true;
                used[j] = true;
                parts.push(quad);
                rest = q;
            }
        }
    }
    if rest.degree().unwrap_or(0) > 0 {
        parts.push(rest);
    }
    Ok(parts)
}

/// Blocks order by modulus degree, then by negated coefficients (lowest
/// first), which puts linear factors in increasing root order.
fn block_key(m: &Poly) -> (usize, Vec<Rational>) {
    (m.degree().unwrap_or(0), m.coeffs().iter().map(|c| -c).collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InitialConditions {
    pub start_index: usize,
    pub values: Vec<Rational>,
}

impl InitialConditions {
    pub fn new(start_index: usize, values: Vec<Rational>) -> Self {
        InitialConditions { start_index, values }
    }
}

/// `k^kpower · Tr(coeff · θ^k)` summed over the roots of `coeff`'s modulus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub kpower: usize,
    pub coeff: AlgValue,
}

impl Term {
    pub fn handle(&self) -> &FactorHandle {
        self.coeff.handle()
    }

    pub fn eval(&self, k: i64) -> Rational {
        let kt = Rational::from_integer(k.into()).pow(self.kpower as i32);
        if kt.is_zero() {
            return kt;
        }
        self.coeff.mul_theta_pow(k).trace() * kt
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedFormSeq {
    threshold: usize,
    terms: Vec<Term>,
    index_symbol: String,
    invertible: bool,
}

impl ClosedFormSeq {
    pub fn new(threshold: usize, terms: Vec<Term>) -> Self {
        ClosedFormSeq { threshold, terms, index_symbol: "k".into(), invertible: false }
    }

    pub fn threshold(&self) -> usize {
        self.threshold
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn index_symbol(&self) -> &str {
        &self.index_symbol
    }

    pub fn with_index_symbol(mut self, symbol: impl Into<String>) -> Self {
        self.index_symbol = symbol.into();
        self
    }

    pub fn is_invertible(&self) -> bool {
        self.invertible
    }

    /// Admits every integer index, negative ones included. Only sound when
    /// the sequence comes from powers of an invertible matrix.
    pub fn mark_invertible(mut self) -> Self {
        self.invertible = true;
        self
    }

    pub fn is_identically_zero(&self) -> bool {
        self.terms.iter().all(|t| t.coeff.is_zero())
    }

    /// Drops terms whose coefficient is exactly zero.
    pub fn simplified(mut self) -> Self {
        self.terms.retain(|t| !t.coeff.is_zero());
        self
    }

    /// Coefficient of `k^kpower · θ^k` for the block with this modulus, if present.
    pub fn coefficient(&self, modulus: &Poly, kpower: usize) -> Option<&AlgValue> {
        self.terms.iter().find(|t| t.kpower == kpower && t.handle().modulus() == modulus).map(|t| &t.coeff)
    }

    pub fn eval(&self, k: i64) -> Result<Rational> {
        if k < self.threshold as i64 && !self.invertible {
            return Err(Error::BelowThreshold { k, threshold: self.threshold });
        }
        Ok(self.terms.iter().map(|t| t.eval(k)).sum())
    }
}

pub fn eval_closed_form(cf: &ClosedFormSeq, k: i64) -> Result<Rational> {
    cf.eval(k)
}

/// Fits the closed form to `init.values` at indices `start_index ..`.
///
/// Unknowns are the rational coordinates of each block's residue
/// coefficients; the equation at index `k` reads
/// `Σ c_{b,t,e} · k^t · p_b(k + e) = f(k)` with `p_b` the power sums of the
/// block's modulus.
pub fn solve_cfinite(basis: &SpectralBasis, init: &InitialConditions) -> Result<ClosedFormSeq> {
    let order = basis.order();
    if init.values.len() != order {
        return Err(Error::Usage(format!(
            "{} initial values supplied for a recurrence of order {order}",
            init.values.len()
        )));
    }
    if init.start_index < basis.low_degree {
        return Err(Error::Usage(format!(
            "initial values start at {} but the recurrence only holds from {}",
            init.start_index, basis.low_degree
        )));
    }
    let threshold = basis.low_degree;
    if order == 0 {
        return Ok(ClosedFormSeq::new(threshold, Vec::new()));
    }

    let last_index = init.start_index + order - 1;
    // (block, kpower, exponent) per unknown
    let mut unknowns = Vec::with_capacity(order);
    let mut sums = Vec::with_capacity(basis.blocks.len());
    for (b, block) in basis.blocks.iter().enumerate() {
        let deg = block.handle.degree();
        sums.push(block.handle.modulus().power_sums(last_index + deg));
        for t in 0..block.multiplicity {
            for e in 0..deg {
                unknowns.push((b, t, e));
            }
        }
    }

    let rows: Vec<Vec<Rational>> = (init.start_index..=last_index)
        .map(|k| {
            let kr = Rational::from_integer(k.into());
            unknowns.iter().map(|&(b, t, e)| kr.pow(t as i32) * &sums[b][k + e]).collect()
        })
        .collect();
    let solution = solve_linear(rows, init.values.clone())
        .ok_or_else(|| Error::Internal(format!("singular fitting system for {}", basis.source)))?;

    let mut terms = Vec::new();
    let mut idx = 0;
    for block in &basis.blocks {
        let deg = block.handle.degree();
        for t in 0..block.multiplicity {
            let residue = Poly::new(solution[idx..idx + deg].to_vec());
            idx += deg;
            terms.push(Term { kpower: t, coeff: AlgValue::new(&block.handle, residue) });
        }
    }
    Ok(ClosedFormSeq::new(threshold, terms))
}

/// Gauss-Jordan elimination over the rationals; `None` when singular.
fn solve_linear(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = a[col][col].recip();
        for v in &mut a[col][col..] {
            *v *= &inv;
        }
        b[col] *= &inv;
        let pivot_row = a[col].clone();
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for (v, p) in a[r][col..].iter_mut().zip(&pivot_row[col..]) {
                *v -= &factor * p;
            }
            let delta = &factor * &b[col];
            b[r] -= delta;
        }
    }
    debug_assert!((0..n).all(|i| a[i][i].is_one()));
    Some(b)
}
