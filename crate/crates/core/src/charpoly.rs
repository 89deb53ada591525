//! Exact square matrices over the rationals and the Faddeev-LeVerrier
//! recursion, which yields the characteristic polynomial, determinant and
//! adjugate in one pass.

use std::ops::{Index, Mul};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact_arith::Rational;
use crate::poly::Poly;

/// Dense `dim × dim` rational matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    dim: usize,
    entries: Vec<Rational>,
}

impl Matrix {
    pub fn new(dim: usize, entries: Vec<Rational>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Dimension("matrix must have at least one row".into()));
        }
        if entries.len() != dim * dim {
            return Err(Error::Dimension(format!("{} entries do not form a {dim}x{dim} matrix", entries.len())));
        }
        Ok(Matrix { dim, entries })
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let dim = rows.len();
        if let Some((i, row)) = rows.iter().enumerate().find(|(_, r)| r.len() != dim) {
            return Err(Error::Dimension(format!(
                "row {} has {} entries but the matrix has {dim} rows",
                i + 1,
                row.len()
            )));
        }
        Matrix::new(dim, rows.into_iter().flatten().collect())
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect()).collect())
    }

    pub fn identity(dim: usize) -> Self {
        Matrix::scalar(dim, Rational::one())
    }

    pub fn zeros(dim: usize) -> Self {
        Matrix { dim, entries: vec![Rational::zero(); dim * dim] }
    }

    pub fn scalar(dim: usize, c: Rational) -> Self {
        let mut m = Matrix::zeros(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = c.clone();
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Rational]> {
        self.entries.chunks(self.dim)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn trace(&self) -> Rational {
        (0..self.dim).map(|i| &self[(i, i)]).sum()
    }

    pub fn scale(&self, c: &Rational) -> Matrix {
        Matrix { dim: self.dim, entries: self.entries.iter().map(|x| x * c).collect() }
    }

    fn add_diagonal(&mut self, c: &Rational) {
        for i in 0..self.dim {
            self.entries[i * self.dim + i] += c;
        }
    }

    /// `self^e` by repeated squaring; `self^0` is the identity.
    pub fn pow(&self, e: u64) -> Matrix {
        let mut result = Matrix::identity(self.dim);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Characteristic polynomial `det(xI - A)`, determinant and adjugate.
    ///
    /// With `M_1 = I`, `c_{n-1} = -tr(A)` and for `k = 2..n`
    /// `M_k = A·M_{k-1} + c_{n-k+1}·I`, `c_{n-k} = -tr(A·M_k)/k`.
    /// Then `adj(A) = (-1)^(n-1)·M_n` and `det(A) = (-1)^n·c_0`.
    pub fn faddeev_leverrier(&self) -> CharInfo {
        let n = self.dim;
        let mut coeffs = vec![Rational::zero(); n + 1];
        coeffs[n] = Rational::one();
        let mut m = Matrix::identity(n);
        let mut am = self.clone();
        coeffs[n - 1] = -am.trace();
        for k in 2..=n {
            m = am;
            m.add_diagonal(&coeffs[n - k + 1]);
            am = self * &m;
            coeffs[n - k] = -am.trace() / Rational::from_integer(k.into());
        }
        let odd = n % 2 == 1;
        let determinant = if odd { -coeffs[0].clone() } else { coeffs[0].clone() };
        // adj = (-1)^(n-1) M_n
        let adjugate = if odd { m } else { m.scale(&-Rational::one()) };
        CharInfo { charpoly: Poly::new(coeffs), determinant, adjugate }
    }

    pub fn charpoly(&self) -> Poly {
        self.faddeev_leverrier().charpoly
    }

    pub fn determinant(&self) -> Rational {
        self.faddeev_leverrier().determinant
    }

    pub fn inverse(&self) -> Result<Matrix> {
        let info = self.faddeev_leverrier();
        if info.determinant.is_zero() {
            return Err(Error::Singular);
        }
        Ok(info.adjugate.scale(&info.determinant.recip()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharInfo {
    pub charpoly: Poly,
    pub determinant: Rational,
    pub adjugate: Matrix,
}

/// Lowest degree `d` of a characteristic polynomial: zero exactly when the
/// matrix is invertible, `n` exactly when it is nilpotent.
pub fn low_degree(p: &Poly) -> Result<usize> {
    p.ldegree()
}

impl Index<(usize, usize)> for Matrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.entries[i * self.dim + j]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let n = self.dim;
        let mut out = vec![Rational::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] += a * &rhs.entries[k * n + j];
                }
            }
        }
        Matrix { dim: n, entries: out }
    }
}
