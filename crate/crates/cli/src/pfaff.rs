use std::path::PathBuf;

use clap::Subcommand;
use serde_json::json;
use ulrich_core::exactalg::{format_poly, nondegenerate, parse_poly, CycloField, Nondegeneracy};

use crate::formats::MatrixFile;
use crate::{read_json, CmdResult, Ctx, Failure};

#[derive(Subcommand)]
pub enum PfaffCommand {
    /// Pfaffian of a skew-symmetric matrix file.
    Pfaffian { file: PathBuf },
    /// Determinant of a matrix file.
    Det { file: PathBuf },
    /// Whether a ternary form has no singular point.
    Nondegenerate {
        /// The form in the polynomial text format, in x1, x2, x3.
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        /// Cyclotomic order of the coefficient field.
        #[arg(long, default_value_t = 1)]
        field: u32,
    },
}

fn print_poly(ctx: &Ctx, key: &str, text: String) {
    if ctx.json() {
        ctx.emit_json(&json!({ key: text }));
    } else {
        println!("{text}");
    }
}

pub fn run(ctx: &Ctx, cmd: PfaffCommand) -> CmdResult {
    match cmd {
        PfaffCommand::Pfaffian { file } => {
            let m = read_json::<MatrixFile>(&file)?
                .to_matrix()
                .map_err(Failure::Input)?;
            let pf = m.pfaffian().map_err(|e| Failure::Input(e.to_string()))?;
            print_poly(ctx, "pfaffian", format_poly(&pf));
            Ok(())
        }
        PfaffCommand::Det { file } => {
            let m = read_json::<MatrixFile>(&file)?
                .to_matrix()
                .map_err(Failure::Input)?;
            print_poly(ctx, "determinant", format_poly(&m.determinant()));
            Ok(())
        }
        PfaffCommand::Nondegenerate { poly, field } => {
            let k = CycloField::new(field).map_err(|e| Failure::Input(e.to_string()))?;
            let f = parse_poly(&poly, &k, 3).map_err(|e| Failure::Input(e.to_string()))?;
            let verdict = nondegenerate(&f).map_err(|e| Failure::Input(e.to_string()))?;
            let (label, value) = match &verdict {
                Nondegeneracy::Nondegenerate => ("nondegenerate", json!({"verdict": "nondegenerate"})),
                Nondegeneracy::Degenerate { witness } => (
                    "degenerate",
                    json!({"verdict": "degenerate", "witness": witness}),
                ),
                Nondegeneracy::Inconclusive { rank, columns } => (
                    "inconclusive",
                    json!({"verdict": "inconclusive", "rank": rank, "columns": columns}),
                ),
            };
            if ctx.json() {
                ctx.emit_json(&value);
            } else {
                match &verdict {
                    Nondegeneracy::Degenerate { witness } => {
                        println!("degenerate: singular point {witness:?}")
                    }
                    Nondegeneracy::Inconclusive { rank, columns } => {
                        println!("inconclusive: Macaulay rank {rank} of {columns}")
                    }
                    Nondegeneracy::Nondegenerate => println!("nondegenerate"),
                }
            }
            match verdict {
                Nondegeneracy::Nondegenerate => Ok(()),
                _ => Err(Failure::Check(format!("form is {label}"))),
            }
        }
    }
}
