//! JSON file formats.
//!
//! Representation files hold `{"d", "n", "m", "f", "matrices"}` with an
//! optional `"field"` (the cyclotomic order, default `d`). `f` is a list of
//! terms and `matrices` a list of `m x m` row lists, all in the polynomial
//! text format. Matrix files hold `{"field", "nvars", "size", "entries"}`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use ulrich_core::clifford::GCARep;
use ulrich_core::exactalg::{
    format_field_elem, format_poly, format_term, parse_field_elem, parse_poly, CycloField,
    FieldMatrix, MultiPoly, PolyMatrix,
};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepFile {
    pub d: u32,
    pub n: usize,
    pub m: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<u32>,
    pub f: Vec<String>,
    pub matrices: Vec<Vec<Vec<String>>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    #[serde(default = "rational_field")]
    pub field: u32,
    pub nvars: usize,
    pub size: usize,
    pub entries: Vec<Vec<String>>,
}

fn rational_field() -> u32 {
    1
}

fn field(order: u32) -> Result<Arc<CycloField>, String> {
    CycloField::new(order).map_err(|e| e.to_string())
}

impl RepFile {
    pub fn from_rep(rep: &GCARep) -> Self {
        let field = rep.field().order();
        let m = rep.m();
        RepFile {
            d: rep.d(),
            n: rep.n(),
            m,
            field: (field != rep.d()).then_some(field),
            f: rep.form().terms().rev().map(|(t, c)| format_term(t, c)).collect(),
            matrices: rep
                .matrices()
                .iter()
                .map(|a| {
                    (0..m)
                        .map(|i| (0..m).map(|j| format_field_elem(a.get(i, j))).collect())
                        .collect()
                })
                .collect(),
        }
    }

    pub fn to_rep(&self) -> Result<GCARep, String> {
        let k = field(self.field.unwrap_or(self.d))?;
        let mut form = MultiPoly::zero(&k, self.n);
        for t in &self.f {
            form = &form + &parse_poly(t, &k, self.n).map_err(|e| e.to_string())?;
        }
        if self.matrices.len() != self.n {
            return Err(format!(
                "{} matrices for n = {}",
                self.matrices.len(),
                self.n
            ));
        }
        let mut mats = Vec::with_capacity(self.n);
        for (idx, rows) in self.matrices.iter().enumerate() {
            if rows.len() != self.m || rows.iter().any(|r| r.len() != self.m) {
                return Err(format!("matrix {idx} is not {0}x{0}", self.m));
            }
            let rows = rows
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|s| parse_field_elem(s, &k).map_err(|e| e.to_string()))
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()?;
            mats.push(FieldMatrix::from_rows(&k, rows).map_err(|e| e.to_string())?);
        }
        GCARep::new(self.d, form, mats).map_err(|e| e.to_string())
    }
}

impl MatrixFile {
    pub fn from_matrix(m: &PolyMatrix) -> Self {
        let n = m.size();
        MatrixFile {
            field: m.field().order(),
            nvars: m.nvars(),
            size: n,
            entries: (0..n)
                .map(|i| (0..n).map(|j| format_poly(m.get(i, j))).collect())
                .collect(),
        }
    }

    pub fn to_matrix(&self) -> Result<PolyMatrix, String> {
        let k = field(self.field)?;
        if self.entries.len() != self.size || self.entries.iter().any(|r| r.len() != self.size) {
            return Err(format!("entries do not form a {0}x{0} matrix", self.size));
        }
        let rows = self
            .entries
            .iter()
            .map(|r| {
                r.iter()
                    .map(|s| parse_poly(s, &k, self.nvars).map_err(|e| e.to_string()))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        PolyMatrix::from_rows(&k, self.nvars, rows).map_err(|e| e.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ulrich_core::clifford::generate_diagonal_rep;
    use ulrich_core::exactalg::FieldElem;

    #[test]
    fn rep_roundtrip() {
        let k = CycloField::new(4).unwrap();
        let roots = [FieldElem::one(&k), FieldElem::omega(&k)];
        let rep = generate_diagonal_rep(4, 2, &roots).unwrap();
        let file = RepFile::from_rep(&rep);
        let text = serde_json::to_string(&file).unwrap();
        let back: RepFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_rep().unwrap(), rep);
    }

    #[test]
    fn matrix_roundtrip() {
        let q = CycloField::rationals();
        let x = |i| MultiPoly::var(&q, 3, i);
        let m = PolyMatrix::from_rows(&q, 3, vec![vec![x(0), x(1)], vec![-&x(1), x(2)]]).unwrap();
        let file = MatrixFile::from_matrix(&m);
        assert_eq!(file.entries[1][0], "-1 * x2");
        assert_eq!(file.to_matrix().unwrap(), m);
    }

    #[test]
    fn rejects_bad_shapes() {
        let file: RepFile = serde_json::from_str(
            r#"{"d":2,"n":2,"m":2,"f":["x1^2","x2^2"],"matrices":[[["0","1"],["1","0"]]]}"#,
        )
        .unwrap();
        assert!(file.to_rep().is_err());
        let file: MatrixFile =
            serde_json::from_str(r#"{"nvars":1,"size":2,"entries":[["x1"]]}"#).unwrap();
        assert!(file.to_matrix().is_err());
    }
}
