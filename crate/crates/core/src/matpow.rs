//! `A^k` for integer and symbolic `k`.
//!
//! Every entry sequence `k ↦ (A^k)[i][j]` is annihilated by the
//! characteristic polynomial `x^d · R(x)` from index `d` on, so all `n²`
//! entries share one spectral basis and differ only in their initial values
//! `(A^r)[i][j]`, `r = d+1 ..= n`.

use crate::cfsolve::{build_spectral_basis, solve_cfinite, ClosedFormSeq, InitialConditions, SpectralBasis};
use crate::charpoly::Matrix;
use crate::error::{Error, Result};
use crate::exact_arith::Rational;
use num_traits::Zero;

#[derive(Clone, Debug)]
pub struct ClosedFormMatrix {
    dim: usize,
    threshold: usize,
    paper_threshold: usize,
    invertible: bool,
    reciprocal_bases: bool,
    basis: SpectralBasis,
    entries: Vec<ClosedFormSeq>,
    source: Matrix,
}

impl ClosedFormMatrix {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Guaranteed validity bound `d`, the lowest degree of the characteristic polynomial.
    pub fn threshold(&self) -> usize {
        self.threshold
    }

    /// The conservative bound `n`.
    pub fn paper_threshold(&self) -> usize {
        self.paper_threshold
    }

    pub fn is_invertible(&self) -> bool {
        self.invertible
    }

    /// Set on the inverse route: bases are reciprocals of the source
    /// matrix's eigenvalues and render as `m^(-k)`.
    pub fn has_reciprocal_bases(&self) -> bool {
        self.reciprocal_bases
    }

    pub fn basis(&self) -> &SpectralBasis {
        &self.basis
    }

    /// The matrix whose powers the closed forms describe.
    pub fn source(&self) -> &Matrix {
        &self.source
    }

    pub fn entry(&self, i: usize, j: usize) -> &ClosedFormSeq {
        &self.entries[i * self.dim + j]
    }

    pub fn entries(&self) -> &[ClosedFormSeq] {
        &self.entries
    }

    pub fn is_identically_zero(&self) -> bool {
        self.entries.iter().all(ClosedFormSeq::is_identically_zero)
    }

    pub fn with_index_symbol(mut self, symbol: &str) -> Self {
        self.entries = self.entries.into_iter().map(|e| e.with_index_symbol(symbol)).collect();
        self
    }

    /// Evaluates every entry at `k`.
    pub fn eval(&self, k: i64) -> Result<Matrix> {
        let values = self.entries.iter().map(|e| e.eval(k)).collect::<Result<Vec<Rational>>>()?;
        Matrix::new(self.dim, values)
    }
}

pub fn power_matrix_symbolic(a: &Matrix) -> Result<ClosedFormMatrix> {
    let n = a.dim();
    let info = a.faddeev_leverrier();
    let basis = build_spectral_basis(&info.charpoly)?;
    let d = basis.low_degree();
    if d + basis.order() != n {
        return Err(Error::Internal(format!(
            "spectral basis of order {} with low degree {d} does not match dimension {n}",
            basis.order()
        )));
    }
    let invertible = !info.determinant.is_zero();

    // A^(d+1) ..= A^n, shared by all entries
    let mut powers = Vec::with_capacity(n - d);
    if d < n {
        let mut p = a.pow(d as u64 + 1);
        for _ in d..n {
            let next = &p * a;
            powers.push(p);
            p = next;
        }
    }

    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let init = InitialConditions::new(d + 1, powers.iter().map(|p| p[(i, j)].clone()).collect());
            let mut cf = solve_cfinite(&basis, &init)?.simplified();
            if invertible {
                cf = cf.mark_invertible();
            }
            entries.push(cf);
        }
    }
    Ok(ClosedFormMatrix {
        dim: n,
        threshold: d,
        paper_threshold: n,
        invertible,
        reciprocal_bases: false,
        basis,
        entries,
        source: a.clone(),
    })
}

/// Exact `A^k`; negative `k` goes through the exact inverse.
pub fn power_matrix_integer(a: &Matrix, k: i64) -> Result<Matrix> {
    if k >= 0 {
        Ok(a.pow(k as u64))
    } else {
        Ok(a.inverse()?.pow(k.unsigned_abs()))
    }
}

/// Closed form of `A^(-k)`, built from the inverse matrix's own spectrum.
pub fn power_matrix_inverse_symbolic(a: &Matrix) -> Result<ClosedFormMatrix> {
    let inverse = a.inverse()?;
    let mut cf = power_matrix_symbolic(&inverse)?;
    cf.reciprocal_bases = true;
    Ok(cf)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleReport {
    pub kmin: i64,
    pub kmax: i64,
    /// `(k, all entries equal)` for every checked index, negative ones last.
    pub checks: Vec<(i64, bool)>,
    /// First mismatch as `(i, j, k)`, zero-based entry indices.
    pub first_failure: Option<(usize, usize, i64)>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// Compares the closed form against repeated multiplication for
/// `k = threshold ..= kmax` and, for invertible matrices, `k = -1 ..= -5`
/// against powers of the exact inverse.
pub fn check_against_oracle(a: &Matrix, kmax: i64) -> Result<OracleReport> {
    let cf = power_matrix_symbolic(a)?;
    check_closed_form(&cf, a, kmax)
}

/// Oracle check of an already computed closed form of `a`'s powers.
pub fn check_closed_form(cf: &ClosedFormMatrix, a: &Matrix, kmax: i64) -> Result<OracleReport> {
    let kmin = cf.threshold() as i64;
    if kmax < kmin {
        return Err(Error::Usage(format!("kmax {kmax} is below the validity threshold {kmin}")));
    }
    let mut report = OracleReport { kmin, kmax, checks: Vec::new(), first_failure: None };
    let record = |k: i64, expected: &Matrix, report: &mut OracleReport| -> Result<()> {
        let got = cf.eval(k)?;
        let mismatch = (0..a.dim())
            .flat_map(|i| (0..a.dim()).map(move |j| (i, j)))
            .find(|&(i, j)| got[(i, j)] != expected[(i, j)]);
        report.checks.push((k, mismatch.is_none()));
        if let (Some((i, j)), None) = (mismatch, report.first_failure) {
            report.first_failure = Some((i, j, k));
        }
        Ok(())
    };

    let mut power = a.pow(kmin as u64);
    for k in kmin..=kmax {
        record(k, &power, &mut report)?;
        power = &power * a;
    }
    if cf.is_invertible() {
        let inverse = a.inverse()?;
        let mut power = inverse.clone();
        for k in 1..=5 {
            record(-k, &power, &mut report)?;
            power = &power * &inverse;
        }
    }
    Ok(report)
}
