//! JSON description of an algebra (`AlgebraSpec`).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    pub dimension: usize,
    pub parities: Vec<u8>,
    pub labels: Vec<String>,
    /// `[i, j, k, "p/q"]`: `e_i · e_j` has coefficient `p/q` on `e_k`.
    pub multiplication: Vec<(usize, usize, usize, String)>,
    /// `[i, j, "p/q"]`: `Q(e_j)` has coefficient `p/q` on `e_i`.
    #[serde(rename = "Q")]
    pub q: Vec<(usize, usize, String)>,
    #[serde(rename = "Gminus")]
    pub gminus: Vec<(usize, usize, String)>,
    pub h0: Vec<usize>,
    /// `[e, Qe, G₋e, QG₋e]`.
    pub blocks: Vec<[usize; 4]>,
    pub integral: Vec<String>,
}

impl AlgebraSpec {
    pub fn from_json(text: &str) -> Result<AlgebraSpec> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("line {} column {}: {}", e.line(), e.column(), e)))
    }

    pub fn to_json(&self) -> String {
        let mut out = String::from("{\n");
        let q = |s: &str| serde_json::to_string(s).unwrap();
        out += &format!("  \"dimension\": {},\n", self.dimension);
        out += &format!("  \"parities\": {},\n", serde_json::to_string(&self.parities).unwrap());
        out += &format!("  \"labels\": {},\n", serde_json::to_string(&self.labels).unwrap());
        let rows: Vec<String> = self.multiplication.iter().map(|(i, j, k, c)| format!("    [{i}, {j}, {k}, {}]", q(c))).collect();
        out += &format!("  \"multiplication\": [\n{}\n  ],\n", rows.join(",\n"));
        for (name, ent) in [("Q", &self.q), ("Gminus", &self.gminus)] {
            let rows: Vec<String> = ent.iter().map(|(i, j, c)| format!("[{i}, {j}, {}]", q(c))).collect();
            out += &format!("  \"{name}\": [{}],\n", rows.join(", "));
        }
        out += &format!("  \"h0\": {},\n", serde_json::to_string(&self.h0).unwrap());
        out += &format!("  \"blocks\": {},\n", serde_json::to_string(&self.blocks).unwrap());
        out += &format!("  \"integral\": {}\n}}\n", serde_json::to_string(&self.integral).unwrap());
        out
    }

    pub(crate) fn rational(field: &str, idx: usize, s: &str) -> Result<Scalar> {
        scalar::parse(s).map_err(|e| Error::Parse(format!("{field}[{idx}]: {e}")))
    }
}
