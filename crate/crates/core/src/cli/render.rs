//! Plain-text and LaTeX rendering of closed forms and matrices.
//!
//! Each term is first lowered to a [`Piece`], a signed product of display
//! factors, and the two output syntaxes only differ in how they print those
//! factors.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{Format, RenderStyle};
use crate::cfsolve::{ClosedFormSeq, Term};
use crate::charpoly::Matrix;
use crate::exact_arith::{AlgValue, Rational, SurdForm, SurdValue};
use crate::matpow::ClosedFormMatrix;
use crate::poly::Poly;

enum Coef {
    One,
    Rat(Rational),
    Surd(SurdForm),
}

enum Factor {
    KPow(usize),
    /// `(-1)^k`
    Sign,
    /// `base^(k + offset)`, or `base^(offset - k)` when `reciprocal`.
    Power {
        base: Rational,
        offset: i64,
        reciprocal: bool,
    },
    SurdPower(SurdValue),
    RootSum {
        modulus: Poly,
        label: String,
        coeff: Poly,
    },
}

struct Piece {
    negative: bool,
    coef: Coef,
    factors: Vec<Factor>,
}

/// Largest `s ≠ 0` with `|c| = base^s`, for an integer `base ≥ 2`.
fn exact_log(c: &Rational, base: &BigInt) -> Option<i64> {
    let c = c.abs();
    let (target, sign) = if c.denom().is_one() {
        (c.numer().clone(), 1)
    } else if c.numer().is_one() {
        (c.denom().clone(), -1)
    } else {
        return None;
    };
    let mut acc = BigInt::one();
    let mut s = 0i64;
    while acc < target {
        acc *= base;
        s += 1;
    }
    (acc == target && s > 0).then_some(sign * s)
}

fn linear_piece(term: &Term, root: Rational, reciprocal: bool) -> Piece {
    let c = term.coeff.residue().coeff(0);
    let negative = c.is_negative();
    let mut coef = Coef::Rat(c.abs());
    let mut factors = Vec::new();
    if term.kpower > 0 {
        factors.push(Factor::KPow(term.kpower));
    }
    if root.is_negative() {
        factors.push(Factor::Sign);
    }
    let m = root.abs();
    if !m.is_one() {
        let (base, reciprocal) = if reciprocal && m.numer().is_one() {
            (m.denom().clone(), true)
        } else if m.is_integer() {
            (m.numer().clone(), false)
        } else {
            (BigInt::zero(), false)
        };
        if base.is_zero() {
            factors.push(Factor::Power { base: m, offset: 0, reciprocal: false });
        } else {
            let offset = match exact_log(&c, &base) {
                Some(s) => {
                    coef = Coef::One;
                    s
                }
                None => 0,
            };
            factors.push(Factor::Power { base: Rational::from_integer(base), offset, reciprocal });
        }
    }
    if matches!(&coef, Coef::Rat(r) if r.is_one()) {
        coef = Coef::One;
    }
    Piece { negative, coef, factors }
}

fn surd_coef(v: SurdValue) -> (bool, Coef) {
    match v {
        SurdValue::Rational(r) if r.is_one() || (-r.clone()).is_one() => (r.is_negative(), Coef::One),
        SurdValue::Rational(r) => (r.is_negative(), Coef::Rat(r.abs())),
        SurdValue::Surd(s) if s.is_sum() => (false, Coef::Surd(s)),
        SurdValue::Surd(s) => (s.v.is_negative(), Coef::Surd(SurdForm { v: s.v.abs(), ..s })),
    }
}

fn term_pieces(term: &Term, reciprocal: bool) -> Vec<Piece> {
    let handle = term.handle();
    let kpow = || (term.kpower > 0).then_some(Factor::KPow(term.kpower));
    match handle.degree() {
        1 => vec![linear_piece(term, handle.rational_root().expect("linear"), reciprocal)],
        2 => {
            let coef = term.coeff.to_surd().expect("quadratic");
            let base = AlgValue::theta(handle).to_surd().expect("quadratic");
            [(coef.clone(), base.clone()), (coef.conjugate(), base.conjugate())]
                .into_iter()
                .map(|(c, b)| {
                    let (negative, coef) = surd_coef(c);
                    let factors = kpow().into_iter().chain([Factor::SurdPower(b)]).collect();
                    Piece { negative, coef, factors }
                })
                .collect()
        }
        _ => {
            let sum = Factor::RootSum {
                modulus: handle.modulus().clone(),
                label: handle.label().to_string(),
                coeff: term.coeff.residue().clone(),
            };
            vec![Piece { negative: false, coef: Coef::One, factors: kpow().into_iter().chain([sum]).collect() }]
        }
    }
}

fn exponent(k: &str, offset: i64, reciprocal: bool) -> String {
    match (reciprocal, offset) {
        (false, 0) => k.to_string(),
        (false, s) if s > 0 => format!("{k}+{s}"),
        (false, s) => format!("{k}-{}", -s),
        (true, 0) => format!("-{k}"),
        (true, s) => format!("{s}-{k}"),
    }
}

fn plain_rational_atom(r: &Rational) -> String {
    if r.is_integer() {
        r.to_string()
    } else {
        format!("({r})")
    }
}

fn plain_factor(f: &Factor, k: &str) -> String {
    match f {
        Factor::KPow(1) => k.to_string(),
        Factor::KPow(t) => format!("{k}^{t}"),
        Factor::Sign => format!("(-1)^{k}"),
        Factor::Power { base, offset, reciprocal } => {
            let e = exponent(k, *offset, *reciprocal);
            let e = if e == k { e } else { format!("({e})") };
            format!("{}^{e}", plain_rational_atom(base))
        }
        Factor::SurdPower(v) => format!("({v})^{k}"),
        Factor::RootSum { modulus, label, coeff } => {
            format!("sum({label} = RootOf({}), ({})*{label}^{k})", modulus.display_in("_Z"), coeff.display_in(label))
        }
    }
}

fn plain_piece(p: &Piece, k: &str) -> String {
    let factors: Vec<String> = p.factors.iter().map(|f| plain_factor(f, k)).collect();
    let coef = match &p.coef {
        Coef::One if factors.is_empty() => Some("1".to_string()),
        Coef::One => None,
        Coef::Rat(r) => Some(r.to_string()),
        Coef::Surd(s) if s.is_sum() => Some(format!("({s})")),
        Coef::Surd(s) => Some(s.to_string()),
    };
    match coef {
        Some(c) if factors.is_empty() => c,
        Some(c) => format!("{c}*{}", factors.join(" * ")),
        None => factors.join(" * "),
    }
}

fn latex_rational(r: &Rational) -> String {
    let sign = if r.is_negative() { "-" } else { "" };
    if r.is_integer() {
        format!("{r}")
    } else {
        format!("{sign}\\frac{{{}}}{{{}}}", r.numer().abs(), r.denom())
    }
}

fn latex_surd(s: &SurdForm) -> String {
    let mut out = String::new();
    if !s.u.is_zero() {
        out.push_str(&latex_rational(&s.u));
        out.push_str(if s.v.is_negative() { " - " } else { " + " });
    } else if s.v.is_negative() {
        out.push('-');
    }
    let num = s.v.numer().abs();
    let root = format!("{}\\sqrt{{{}}}", if num.is_one() { String::new() } else { num.to_string() }, s.disc);
    if s.v.denom().is_one() {
        out.push_str(&root);
    } else {
        out.push_str(&format!("\\frac{{{root}}}{{{}}}", s.v.denom()));
    }
    out
}

fn latex_surd_value(v: &SurdValue) -> String {
    match v {
        SurdValue::Rational(r) => latex_rational(r),
        SurdValue::Surd(s) => latex_surd(s),
    }
}

fn latex_poly(p: &Poly, var: &str) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        let mag = c.abs();
        if i == 0 || !mag.is_one() {
            out.push_str(&latex_rational(&mag));
        }
        match i {
            0 => {}
            1 => out.push_str(var),
            _ => out.push_str(&format!("{var}^{{{i}}}")),
        }
    }
    out
}

fn latex_factor(f: &Factor, k: &str) -> String {
    match f {
        Factor::KPow(1) => k.to_string(),
        Factor::KPow(t) => format!("{k}^{{{t}}}"),
        Factor::Sign => format!("(-1)^{{{k}}}"),
        Factor::Power { base, offset, reciprocal } => {
            let e = exponent(k, *offset, *reciprocal);
            if base.is_integer() {
                format!("{base}^{{{e}}}")
            } else {
                format!("\\left({}\\right)^{{{e}}}", latex_rational(base))
            }
        }
        Factor::SurdPower(v) => format!("\\left({}\\right)^{{{k}}}", latex_surd_value(v)),
        Factor::RootSum { modulus, label, coeff } => {
            let label = label.replace('_', "\\_");
            format!(
                "\\sum_{{{label} = \\operatorname{{RootOf}}({})}} \\left({}\\right) {label}^{{{k}}}",
                latex_poly(modulus, "\\_Z"),
                latex_poly(coeff, &label)
            )
        }
    }
}

fn latex_piece(p: &Piece, k: &str) -> String {
    let factors: Vec<String> = p.factors.iter().map(|f| latex_factor(f, k)).collect();
    let coef = match &p.coef {
        Coef::One if factors.is_empty() => Some("1".to_string()),
        Coef::One => None,
        Coef::Rat(r) => Some(latex_rational(r)),
        Coef::Surd(s) if s.is_sum() => Some(format!("\\left({}\\right)", latex_surd(s))),
        Coef::Surd(s) => Some(latex_surd(s)),
    };
    let mut parts: Vec<String> = coef.into_iter().collect();
    parts.extend(factors);
    parts.join(" \\cdot ")
}

fn join_pieces(pieces: &[Piece], render: impl Fn(&Piece) -> String) -> String {
    if pieces.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, p) in pieces.iter().enumerate() {
        match (i, p.negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&render(p));
    }
    out
}

fn pieces(seq: &ClosedFormSeq, reciprocal: bool) -> Vec<Piece> {
    seq.terms().iter().filter(|t| !t.coeff.is_zero()).flat_map(|t| term_pieces(t, reciprocal)).collect()
}

/// One entry as a plain-text expression in `k`.
pub fn render_entry_plain(seq: &ClosedFormSeq, reciprocal: bool, k: &str) -> String {
    join_pieces(&pieces(seq, reciprocal), |p| plain_piece(p, k))
}

pub fn render_entry_latex(seq: &ClosedFormSeq, reciprocal: bool, k: &str) -> String {
    join_pieces(&pieces(seq, reciprocal), |p| latex_piece(p, k))
}

/// The validity message printed ahead of singular results.
pub fn threshold_message(cf: &ClosedFormMatrix, k: &str) -> String {
    format!(
        "The {k}-th power of the matrix, valid for {k} >= {} (paper bound {}):",
        cf.threshold(),
        cf.paper_threshold()
    )
}

pub fn render_closed_form(cf: &ClosedFormMatrix, style: &RenderStyle) -> String {
    let k = style.index_symbol.as_str();
    let n = cf.dim();
    let reciprocal = cf.has_reciprocal_bases();
    match style.format {
        Format::Json => super::json::closed_form_to_json(cf),
        Format::Plain => {
            let mut out = String::new();
            if !cf.is_invertible() {
                out.push_str(&threshold_message(cf, k));
                out.push('\n');
            }
            for i in 0..n {
                for j in 0..n {
                    let expr = render_entry_plain(cf.entry(i, j), reciprocal, k);
                    out.push_str(&format!("[{},{}] = {expr}\n", i + 1, j + 1));
                }
            }
            out
        }
        Format::Latex => {
            let mut out = String::new();
            if !cf.is_invertible() {
                out.push_str(&format!(
                    "\\text{{The }} {k}\\text{{-th power of the matrix, valid for }} {k} \\geq {} \\text{{ (paper bound {}):}}\n",
                    cf.threshold(),
                    cf.paper_threshold()
                ));
            }
            let rows: Vec<String> = (0..n)
                .map(|i| {
                    (0..n).map(|j| render_entry_latex(cf.entry(i, j), reciprocal, k)).collect::<Vec<_>>().join(" & ")
                })
                .collect();
            out.push_str("\\begin{bmatrix}\n");
            out.push_str(&rows.join(" \\\\\n"));
            out.push_str("\n\\end{bmatrix}\n");
            out
        }
    }
}

pub fn render_matrix(m: &Matrix, format: Format) -> String {
    match format {
        Format::Json => super::json::matrix_to_json(m),
        Format::Plain => {
            let cells: Vec<Vec<String>> = m.rows().map(|r| r.iter().map(ToString::to_string).collect()).collect();
            let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
            let mut out = String::new();
            for row in cells {
                let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
                out.push_str(&line.join(" "));
                out.push('\n');
            }
            out
        }
        Format::Latex => {
            let rows: Vec<String> =
                m.rows().map(|r| r.iter().map(latex_rational).collect::<Vec<_>>().join(" & ")).collect();
            format!("\\begin{{bmatrix}}\n{}\n\\end{{bmatrix}}\n", rows.join(" \\\\\n"))
        }
    }
}

pub fn render_poly(p: &Poly, format: Format) -> String {
    match format {
        Format::Json => super::json::poly_to_json(p),
        Format::Plain => format!("{p}\n"),
        Format::Latex => format!("{}\n", latex_poly(p, "x")),
    }
}

pub fn render_rational(r: &Rational, format: Format) -> String {
    match format {
        Format::Json => format!("{}\n", serde_json::json!({ "determinant": r.to_string() })),
        Format::Plain => format!("{r}\n"),
        Format::Latex => format!("{}\n", latex_rational(r)),
    }
}
