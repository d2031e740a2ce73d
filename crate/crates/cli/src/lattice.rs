use std::path::PathBuf;
use std::sync::Arc;

use clap::{Subcommand, ValueEnum};
use serde_json::json;
use ulrich_core::lattice::{
    conic_classes, delpezzo_minus_one_curves, hyperplane, pair, prop46_control_search,
    prop46_search, DivisorClass, IntLattice, PROP46_CONTROL_PRESET, PROP46_PRESET,
};

use crate::{write_or_print, CmdResult, Ctx, Failure};

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Surface {
    Delpezzo2,
    Cliffk3,
}

impl Surface {
    fn lattice(self) -> Arc<IntLattice> {
        match self {
            Surface::Delpezzo2 => IntLattice::delpezzo2(),
            Surface::Cliffk3 => IntLattice::cliffk3(),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    #[value(name = "prop-4.6")]
    Prop46,
    #[value(name = "prop-4.6-control")]
    Prop46Control,
}

#[derive(Subcommand)]
pub enum LatticeCommand {
    /// Exhaustive search of a preset box, with a certificate.
    Search {
        #[arg(long, value_enum)]
        preset: Preset,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Intersection number of two classes given by coefficients on e_0..e_7.
    Pair {
        #[arg(long, value_enum)]
        lattice: Surface,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        d1: Vec<i64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        d2: Vec<i64>,
    },
    /// The 56 (-1)-curves on the del Pezzo surface or the 56 conics on the quartic.
    Classes {
        #[arg(long, value_enum)]
        surface: Surface,
    },
}

fn class(lattice: &Arc<IntLattice>, coeffs: Vec<i64>) -> Result<DivisorClass, Failure> {
    DivisorClass::new(lattice, coeffs).map_err(|e| Failure::Input(e.to_string()))
}

pub fn run(ctx: &Ctx, cmd: LatticeCommand) -> CmdResult {
    match cmd {
        LatticeCommand::Search { preset, out } => {
            let cert = match preset {
                Preset::Prop46 => prop46_search(),
                Preset::Prop46Control => prop46_control_search(),
            };
            let json_text = cert.to_json();
            if out.is_some() || ctx.json() {
                write_or_print(out.as_ref(), &json_text)?;
            }
            if !ctx.json() {
                println!(
                    "{}: {} candidates, {} solutions",
                    cert.preset.as_deref().unwrap_or("search"),
                    cert.candidates_checked,
                    cert.solutions.len()
                );
                for s in &cert.solutions {
                    println!("  a = {}, b = {:?}", s.a, s.b);
                }
            }
            let expected = match preset {
                Preset::Prop46 => cert.solutions.is_empty(),
                Preset::Prop46Control => {
                    cert.solution_classes(&IntLattice::cliffk3()) == vec![hyperplane()]
                }
            };
            if expected {
                Ok(())
            } else {
                let name = match preset {
                    Preset::Prop46 => PROP46_PRESET,
                    Preset::Prop46Control => PROP46_CONTROL_PRESET,
                };
                Err(Failure::Check(format!("{name}: unexpected solution set")))
            }
        }
        LatticeCommand::Pair { lattice, d1, d2 } => {
            let l = lattice.lattice();
            let a = class(&l, d1)?;
            let b = class(&l, d2)?;
            let v = pair(&a, &b).map_err(|e| Failure::Input(e.to_string()))?;
            if ctx.json() {
                ctx.emit_json(&json!({ "pairing": v }));
            } else {
                println!("{v}");
            }
            Ok(())
        }
        LatticeCommand::Classes { surface } => {
            let classes = match surface {
                Surface::Delpezzo2 => delpezzo_minus_one_curves(),
                Surface::Cliffk3 => conic_classes(),
            };
            if ctx.json() {
                let rows: Vec<_> = classes.iter().map(|c| c.coeffs().to_vec()).collect();
                ctx.emit_json(&json!({
                    "lattice": surface.lattice().label(),
                    "classes": rows,
                }));
            } else {
                let lines: Vec<String> = classes
                    .iter()
                    .map(|c| {
                        let coeffs: Vec<String> =
                            c.coeffs().iter().map(|x| x.to_string()).collect();
                        format!("{:>3}  [{}]", c.self_intersection(), coeffs.join(", "))
                    })
                    .collect();
                println!("{}", lines.join("\n"));
            }
            Ok(())
        }
    }
}
