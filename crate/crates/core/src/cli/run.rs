use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use super::{parse_matrix_input, render_closed_form, render_matrix, render_poly, render_rational, Format, RenderStyle};
use crate::charpoly::{low_degree, Matrix};
use crate::error::Error;
use crate::matpow::{check_against_oracle, power_matrix_integer, power_matrix_inverse_symbolic, power_matrix_symbolic};

#[derive(Debug, Parser)]
#[command(name = "kpower", version, about = "Exact closed forms for the k-th power of a rational matrix")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct MatrixArg {
    /// Matrix file: JSON {"entries": [[...]]} or whitespace-separated rows; `-` reads stdin
    #[arg(long, value_name = "FILE")]
    matrix: PathBuf,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// A^k for a given integer k, or the closed form in a symbolic k
    Power {
        #[command(flatten)]
        input: MatrixArg,
        /// Integer exponent (may be negative for invertible matrices)
        #[arg(long, allow_negative_numbers = true, conflicts_with = "symbolic")]
        k: Option<i64>,
        /// Closed form in the index symbol (the default when --k is absent)
        #[arg(long)]
        symbolic: bool,
        /// Work with A^(-k) instead of A^k
        #[arg(long)]
        inverse: bool,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
        /// Name of the index symbol in rendered closed forms
        #[arg(long, default_value = "k")]
        symbol: String,
    },
    /// Evaluates the closed form at k, cross-checked against direct powering
    Eval {
        #[command(flatten)]
        input: MatrixArg,
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
    /// Compares the closed form with repeated multiplication up to kmax
    Check {
        #[command(flatten)]
        input: MatrixArg,
        #[arg(long, allow_negative_numbers = true)]
        kmax: i64,
    },
    /// Exact determinant
    Det {
        #[command(flatten)]
        input: MatrixArg,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
    /// Characteristic polynomial det(xI - A)
    Charpoly {
        #[command(flatten)]
        input: MatrixArg,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
}

enum Failure {
    Io(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

/// Process exit status for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::Usage(_) => 2,
        Error::Dimension(_) => 3,
        Error::Singular | Error::BelowThreshold { .. } => 4,
        _ => 5,
    }
}

/// Runs the CLI on `args` (program name first) and returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(Failure::Io(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
        Err(Failure::Lib(e)) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn load(path: &Path) -> Result<Matrix, Failure> {
    let mut bytes = Vec::new();
    if path == Path::new("-") {
        std::io::stdin().read_to_end(&mut bytes).map_err(|e| Failure::Io(format!("stdin: {e}")))?;
    } else {
        bytes = std::fs::read(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    }
    Ok(parse_matrix_input(&bytes)?)
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes()).map_err(|e| Failure::Io(format!("stdout: {e}")))
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Power { input, k, symbolic: _, inverse, format, symbol } => {
            let a = load(&input.matrix)?;
            match k {
                Some(k) => {
                    let k = if inverse {
                        k.checked_neg().ok_or_else(|| Error::Usage(format!("cannot negate k = {k}")))?
                    } else {
                        k
                    };
                    emit(out, &render_matrix(&power_matrix_integer(&a, k)?, format))?;
                }
                None => {
                    let cf = if inverse { power_matrix_inverse_symbolic(&a)? } else { power_matrix_symbolic(&a)? };
                    let style = RenderStyle { format, index_symbol: symbol.clone() };
                    emit(out, &render_closed_form(&cf.with_index_symbol(&symbol), &style))?;
                }
            }
            Ok(0)
        }
        Command::Eval { input, k, format } => {
            let a = load(&input.matrix)?;
            let cf = power_matrix_symbolic(&a)?;
            let value = cf.eval(k)?;
            let direct = power_matrix_integer(&a, k)?;
            if value != direct {
                return Err(Error::Internal(format!("closed form disagrees with direct powering at k = {k}")).into());
            }
            emit(out, &render_matrix(&value, format))?;
            Ok(0)
        }
        Command::Check { input, kmax } => {
            let a = load(&input.matrix)?;
            let report = check_against_oracle(&a, kmax)?;
            let negatives = if report.checks.iter().any(|&(k, _)| k < 0) { " and k = -5..-1" } else { "" };
            match report.first_failure {
                None => {
                    emit(
                        out,
                        &format!(
                            "PASS: closed form equals A^k for k = {}..{}{negatives} ({} checks)\n",
                            report.kmin,
                            report.kmax,
                            report.checks.len()
                        ),
                    )?;
                    Ok(0)
                }
                Some((i, j, k)) => {
                    let failed = report.checks.iter().filter(|c| !c.1).count();
                    emit(
                        out,
                        &format!(
                            "FAIL: entry [{},{}] differs at k = {k} ({failed} of {} checks failed)\n",
                            i + 1,
                            j + 1,
                            report.checks.len()
                        ),
                    )?;
                    Ok(5)
                }
            }
        }
        Command::Det { input, format } => {
            let a = load(&input.matrix)?;
            emit(out, &render_rational(&a.determinant(), format))?;
            Ok(0)
        }
        Command::Charpoly { input, format } => {
            let a = load(&input.matrix)?;
            let p = a.charpoly();
            let mut text = render_poly(&p, format);
            if format == Format::Plain {
                text.push_str(&format!("low degree: {}\n", low_degree(&p)?));
            }
            emit(out, &text)?;
            Ok(0)
        }
    }
}
