use std::path::{Path, PathBuf};

use clap::Subcommand;
use serde_json::json;
use ulrich_core::clifford::{
    expected_char_poly, generate_diagonal_rep, irreducible, presentation_matrix, ulrich_rank,
    verify_rep, GCARep, VerifyReport,
};
use ulrich_core::exactalg::{format_field_elem, format_poly, parse_field_elem, CycloField};

use crate::formats::{MatrixFile, RepFile};
use crate::{read_json, write_or_print, CmdResult, Ctx, Failure};

#[derive(Subcommand)]
pub enum GcaCommand {
    /// Checks (sum x_i A_i)^d = f I.
    Verify { file: PathBuf },
    /// Builds the clock-and-shift representation of sum c_i^d x_i^d.
    Generate {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        n: usize,
        /// Comma-separated roots c_i (default all 1).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        roots: Vec<String>,
        /// Cyclotomic order of the coefficient field (default d).
        #[arg(long)]
        field: Option<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decides whether the matrices generate the full matrix algebra.
    Irreducible {
        file: PathBuf,
        /// Longest word considered (default m^2).
        #[arg(long)]
        max_word_len: Option<usize>,
    },
    /// Writes the linear presentation w I - sum x_i A_i.
    Presentation {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Checks det(w I - sum x_i A_i) = (w^d - f)^(m/d).
    Charpoly { file: PathBuf },
}

fn load(path: &Path) -> Result<GCARep, Failure> {
    let file: RepFile = read_json(path)?;
    file.to_rep()
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn require_verified(rep: &GCARep) -> CmdResult {
    match verify_rep(rep).first_discrepancy {
        None => Ok(()),
        Some(_) => Err(Failure::Check(
            "representation does not satisfy the defining identity".into(),
        )),
    }
}

fn report_verify(ctx: &Ctx, report: &VerifyReport) {
    let disc = report.first_discrepancy.as_ref();
    if ctx.json() {
        ctx.emit_json(&json!({
            "pass": report.pass(),
            "first_discrepancy": disc.map(|d| json!({
                "row": d.row,
                "col": d.col,
                "exponents": d.exponents,
                "expected": format_field_elem(&d.expected),
                "actual": format_field_elem(&d.actual),
            })),
        }));
    } else if let Some(d) = disc {
        println!(
            "FAIL entry ({}, {}) exponents {:?}: expected {}, found {}",
            d.row,
            d.col,
            d.exponents,
            format_field_elem(&d.expected),
            format_field_elem(&d.actual)
        );
    } else {
        println!("PASS");
    }
}

pub fn run(ctx: &Ctx, cmd: GcaCommand) -> CmdResult {
    match cmd {
        GcaCommand::Verify { file } => {
            let rep = load(&file)?;
            let report = verify_rep(&rep);
            report_verify(ctx, &report);
            if report.pass() {
                Ok(())
            } else {
                Err(Failure::Check("defining identity fails".into()))
            }
        }
        GcaCommand::Generate {
            d,
            n,
            roots,
            field,
            out,
        } => {
            let k = CycloField::new(field.unwrap_or(d)).map_err(|e| Failure::Input(e.to_string()))?;
            let roots = if roots.is_empty() {
                vec!["1".to_string(); n]
            } else {
                roots
            };
            let roots = roots
                .iter()
                .map(|s| parse_field_elem(s, &k).map_err(|e| Failure::Input(e.to_string())))
                .collect::<Result<Vec<_>, _>>()?;
            let rep =
                generate_diagonal_rep(d, n, &roots).map_err(|e| Failure::Input(e.to_string()))?;
            let text = serde_json::to_string_pretty(&RepFile::from_rep(&rep)).expect("plain data");
            write_or_print(out.as_ref(), &text)?;
            require_verified(&rep)
        }
        GcaCommand::Irreducible { file, max_word_len } => {
            let rep = load(&file)?;
            require_verified(&rep)?;
            let m = rep.m();
            let report = irreducible(&rep, max_word_len.unwrap_or(m * m));
            match report {
                Ok(r) => {
                    if ctx.json() {
                        ctx.emit_json(&json!({
                            "algebra_dimension": r.algebra_dimension,
                            "irreducible": r.irreducible,
                            "word_length_reached": r.word_length_reached,
                        }));
                    } else {
                        println!(
                            "{} (algebra dimension {} of {}, word length {})",
                            if r.irreducible { "irreducible" } else { "reducible" },
                            r.algebra_dimension,
                            m * m,
                            r.word_length_reached
                        );
                    }
                    if r.irreducible {
                        Ok(())
                    } else {
                        Err(Failure::Check("representation is reducible".into()))
                    }
                }
                Err(e) => Err(Failure::Check(e.to_string())),
            }
        }
        GcaCommand::Presentation { file, out } => {
            let rep = load(&file)?;
            let pres = presentation_matrix(&rep).map_err(|e| Failure::Check(e.to_string()))?;
            let text =
                serde_json::to_string_pretty(&MatrixFile::from_matrix(&pres)).expect("plain data");
            write_or_print(out.as_ref(), &text)
        }
        GcaCommand::Charpoly { file } => {
            let rep = load(&file)?;
            let pres = presentation_matrix(&rep).map_err(|e| Failure::Check(e.to_string()))?;
            let det = pres.determinant();
            let expected = expected_char_poly(&rep);
            let holds = det == expected;
            if ctx.json() {
                ctx.emit_json(&json!({
                    "determinant": format_poly(&det),
                    "expected": format_poly(&expected),
                    "rank": ulrich_rank(&rep),
                    "holds": holds,
                }));
            } else {
                println!("det = {}", format_poly(&det));
                println!(
                    "{} (w = x{}, r = {})",
                    if holds { "PASS" } else { "FAIL" },
                    rep.n() + 1,
                    ulrich_rank(&rep)
                );
            }
            if holds {
                Ok(())
            } else {
                Err(Failure::Check("determinant differs from (w^d - f)^r".into()))
            }
        }
    }
}
