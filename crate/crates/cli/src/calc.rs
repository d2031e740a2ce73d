use clap::{Subcommand, ValueEnum};
use serde_json::{json, Value};
use ulrich_core::geomcalc::{
    adjunction_genus, aprodu_farkas_bound, basili_gonality, brill_noether_rho, k3_euler_char,
    martens_bound, mukai_moduli_dim, riemann_hurwitz_double_cover, serre_residual,
    ulrich_hilbert_poly, BNQuery, ChernData, CliffordIndex, CurveClass, GeomError,
};

use crate::{CmdResult, Ctx, Failure};

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Class {
    Hyperelliptic,
    Nonhyperelliptic,
    GenericNonspecial,
}

#[derive(Subcommand)]
#[command(rename_all = "kebab-case")]
pub enum CalcCommand {
    /// Brill-Noether number rho(g, r, d).
    Rho {
        #[arg(long)]
        g: i64,
        #[arg(long)]
        r: i64,
        #[arg(long)]
        d: i64,
    },
    /// Genus of a curve on a K3 surface from its self-intersection.
    Genus {
        #[arg(long, allow_hyphen_values = true)]
        selfint: i64,
    },
    /// Euler characteristic of a sheaf on a K3 surface.
    Chi {
        #[arg(long)]
        rank: i64,
        #[arg(long, allow_hyphen_values = true)]
        c1sq: i64,
        #[arg(long, allow_hyphen_values = true)]
        c2: i64,
    },
    /// Moduli dimension of simple sheaves from the Mukai vector.
    Mukai {
        #[arg(long)]
        rank: i64,
        #[arg(long, allow_hyphen_values = true)]
        c1sq: i64,
        #[arg(long, allow_hyphen_values = true)]
        c2: i64,
    },
    /// Gonality and Clifford index of a space curve.
    Gonality {
        #[arg(long)]
        degree: i64,
        #[arg(long)]
        collinear: i64,
    },
    /// Residual series (d', r') under Serre duality.
    Residual {
        #[arg(long)]
        g: i64,
        #[arg(long)]
        r: i64,
        #[arg(long)]
        d: i64,
    },
    /// Tiered bound on dim W^r_d.
    Martens {
        #[arg(long)]
        g: i64,
        #[arg(long)]
        r: i64,
        #[arg(long)]
        d: i64,
        #[arg(long, value_enum)]
        class: Class,
    },
    /// Bound on dim W^1_d of a k-gonal curve.
    AfBound {
        #[arg(long)]
        g: i64,
        #[arg(long)]
        k: i64,
        #[arg(long)]
        d: i64,
    },
    /// Genus of a double cover.
    Rh {
        #[arg(long)]
        base_genus: i64,
        #[arg(long)]
        branch: i64,
    },
    /// Hilbert polynomial of an Ulrich sheaf.
    Hilbert {
        #[arg(long)]
        d: i64,
        #[arg(long)]
        r: i64,
        #[arg(long)]
        n: i64,
    },
}

fn geom(e: GeomError) -> Failure {
    match e {
        GeomError::Precondition(clause) => Failure::Check(format!("hypothesis fails: {clause}")),
        other => Failure::Input(other.to_string()),
    }
}

fn emit(ctx: &Ctx, text: String, value: Value) -> CmdResult {
    if ctx.json() {
        ctx.emit_json(&value);
    } else {
        println!("{text}");
    }
    Ok(())
}

pub fn run(ctx: &Ctx, cmd: CalcCommand) -> CmdResult {
    match cmd {
        CalcCommand::Rho { g, r, d } => {
            let q = BNQuery::new(g, r, d).map_err(geom)?;
            let v = brill_noether_rho(&q);
            emit(ctx, v.to_string(), json!({ "rho": v }))
        }
        CalcCommand::Genus { selfint } => {
            let v = adjunction_genus(selfint).map_err(geom)?;
            emit(ctx, v.to_string(), json!({ "genus": v }))
        }
        CalcCommand::Chi { rank, c1sq, c2 } => {
            let cd = ChernData::new(rank, c1sq, c2).map_err(geom)?;
            let v = k3_euler_char(&cd).map_err(geom)?;
            emit(ctx, v.to_string(), json!({ "chi": v }))
        }
        CalcCommand::Mukai { rank, c1sq, c2 } => {
            let cd = ChernData::new(rank, c1sq, c2).map_err(geom)?;
            let v = mukai_moduli_dim(&cd).map_err(geom)?;
            emit(
                ctx,
                format!("{} (chi(E (x) E^dual) = {})", v.moduli_dim, v.chi_end),
                json!({ "moduli_dim": v.moduli_dim, "chi_end": v.chi_end }),
            )
        }
        CalcCommand::Gonality { degree, collinear } => {
            let v = basili_gonality(degree, collinear).map_err(geom)?;
            let (cliff_text, cliff) = match v.clifford_index {
                CliffordIndex::Value(c) => (c.to_string(), json!(c)),
                CliffordIndex::Unsupported => ("unsupported".to_string(), json!("unsupported")),
            };
            emit(
                ctx,
                format!("gonality {}, Clifford index {cliff_text}", v.gonality),
                json!({ "gonality": v.gonality, "clifford_index": cliff }),
            )
        }
        CalcCommand::Residual { g, r, d } => {
            let (d2, r2) = serre_residual(g, r, d).map_err(geom)?;
            emit(
                ctx,
                format!("W^{r}_{d} = W^{r2}_{d2}"),
                json!({ "d": d2, "r": r2 }),
            )
        }
        CalcCommand::Martens { g, r, d, class } => {
            let class = match class {
                Class::Hyperelliptic => CurveClass::Hyperelliptic,
                Class::Nonhyperelliptic => CurveClass::Nonhyperelliptic,
                Class::GenericNonspecial => CurveClass::GenericNonspecial,
            };
            let v = martens_bound(g, r, d, class).map_err(geom)?;
            emit(ctx, v.to_string(), json!({ "bound": v }))
        }
        CalcCommand::AfBound { g, k, d } => {
            let v = aprodu_farkas_bound(g, k, d).map_err(geom)?;
            emit(ctx, v.to_string(), json!({ "bound": v }))
        }
        CalcCommand::Rh { base_genus, branch } => {
            let v = riemann_hurwitz_double_cover(base_genus, branch).map_err(geom)?;
            emit(ctx, v.to_string(), json!({ "genus": v }))
        }
        CalcCommand::Hilbert { d, r, n } => {
            let coeffs = ulrich_hilbert_poly(d, r, n).map_err(geom)?;
            let strs: Vec<String> = coeffs.iter().map(|c| c.to_string()).collect();
            let text = strs
                .iter()
                .enumerate()
                .rev()
                .map(|(k, c)| match k {
                    0 => c.clone(),
                    1 => format!("{c}*t"),
                    _ => format!("{c}*t^{k}"),
                })
                .collect::<Vec<_>>()
                .join(" + ");
            emit(ctx, text, json!({ "coefficients": strs }))
        }
    }
}
