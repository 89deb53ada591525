//! JSON forms of matrices, polynomials and closed forms. Rationals are
//! always strings (`"-3"`, `"5/16"`).

use serde::{Deserialize, Serialize};

use crate::cfsolve::{ClosedFormSeq, Term};
use crate::charpoly::Matrix;
use crate::error::{Error, Result};
use crate::exact_arith::{parse_rational, AlgValue, FactorHandle, Rational};
use crate::matpow::ClosedFormMatrix;
use crate::poly::Poly;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    /// Monic modulus, lowest coefficient first.
    pub modulus: Vec<String>,
    pub kpow: usize,
    /// Residue coordinates `r_0 .. r_{m-1}`.
    pub coeff: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedFormJson {
    pub dim: usize,
    pub threshold: usize,
    pub paper_threshold: usize,
    pub invertible: bool,
    pub entries: Vec<Vec<Vec<TermJson>>>,
}

fn strings(values: &[Rational]) -> Vec<String> {
    values.iter().map(ToString::to_string).collect()
}

fn term_json(t: &Term) -> TermJson {
    let m = t.handle().modulus();
    let deg = m.degree().unwrap_or(0);
    let coeff = (0..deg).map(|i| t.coeff.residue().coeff(i).to_string()).collect();
    TermJson { modulus: strings(m.coeffs()), kpow: t.kpower, coeff }
}

impl ClosedFormJson {
    pub fn from_closed_form(cf: &ClosedFormMatrix) -> Self {
        let n = cf.dim();
        let entries =
            (0..n).map(|i| (0..n).map(|j| cf.entry(i, j).terms().iter().map(term_json).collect()).collect()).collect();
        ClosedFormJson {
            dim: n,
            threshold: cf.threshold(),
            paper_threshold: cf.paper_threshold(),
            invertible: cf.is_invertible(),
            entries,
        }
    }

    /// Rebuilds evaluable sequences, one per entry in row-major order.
    pub fn to_sequences(&self) -> Result<Vec<ClosedFormSeq>> {
        if self.entries.len() != self.dim || self.entries.iter().any(|r| r.len() != self.dim) {
            return Err(Error::Dimension(format!("closed form entries are not {0}x{0}", self.dim)));
        }
        let parse_all = |v: &[String]| v.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>();
        let mut handles: Vec<FactorHandle> = Vec::new();
        let mut out = Vec::with_capacity(self.dim * self.dim);
        for terms in self.entries.iter().flatten() {
            let mut seq_terms = Vec::with_capacity(terms.len());
            for t in terms {
                let modulus = Poly::new(parse_all(&t.modulus)?);
                let handle = match handles.iter().find(|h| h.modulus() == &modulus) {
                    Some(h) => h.clone(),
                    None => {
                        let h = FactorHandle::new(modulus, "_R")?;
                        handles.push(h.clone());
                        h
                    }
                };
                if t.coeff.len() > handle.degree() {
                    return Err(Error::Parse(format!(
                        "residue with {} coordinates for a modulus of degree {}",
                        t.coeff.len(),
                        handle.degree()
                    )));
                }
                let coeff = AlgValue::new(&handle, Poly::new(parse_all(&t.coeff)?));
                seq_terms.push(Term { kpower: t.kpow, coeff });
            }
            let seq = ClosedFormSeq::new(self.threshold, seq_terms);
            out.push(if self.invertible { seq.mark_invertible() } else { seq });
        }
        Ok(out)
    }

    pub fn eval(&self, k: i64) -> Result<Matrix> {
        let values = self.to_sequences()?.iter().map(|s| s.eval(k)).collect::<Result<Vec<_>>>()?;
        Matrix::new(self.dim, values)
    }
}

pub fn closed_form_to_json(cf: &ClosedFormMatrix) -> String {
    let json = ClosedFormJson::from_closed_form(cf);
    format!("{}\n", serde_json::to_string(&json).expect("serializable"))
}

pub fn parse_closed_form_json(text: &str) -> Result<ClosedFormJson> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("invalid closed-form JSON: {e}")))
}

pub fn matrix_to_json(m: &Matrix) -> String {
    let rows: Vec<Vec<String>> = m.rows().map(strings).collect();
    format!("{}\n", serde_json::json!({ "entries": rows }))
}

pub fn poly_to_json(p: &Poly) -> String {
    let low = p.ldegree().unwrap_or(0);
    format!("{}\n", serde_json::json!({ "coefficients": strings(p.coeffs()), "low_degree": low }))
}
