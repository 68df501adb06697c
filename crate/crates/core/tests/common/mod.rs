#![allow(dead_code)]

use std::path::PathBuf;

use chgraph::algebra::AlgebraSpec;
use chgraph::ChAlgebra;

pub const FIXTURES: [&str; 5] = ["frobenius2", "block8", "odd8", "broken12", "broken_twelfth"];
pub const CERTIFIED: [&str; 3] = ["frobenius2", "block8", "odd8"];

pub fn path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(format!("{name}.json"))
}

pub fn spec(name: &str) -> AlgebraSpec {
    AlgebraSpec::from_json(&std::fs::read_to_string(path(name)).unwrap()).unwrap()
}

pub fn fixture(name: &str) -> ChAlgebra {
    ChAlgebra::load(&path(name)).unwrap()
}
