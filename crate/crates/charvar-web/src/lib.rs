//! WebAssembly bindings for three operations of the browser page: the
//! census summary of a monodromy word, its twisted Alexander data and the
//! trace polynomial of a free-group word. Every operation returns JSON.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use charvar::alexander::{bending_parameters, charpoly, BendingParameter};
use charvar::census::{census_row, CensusRow};
use charvar::free_group::FreeWord;
use charvar::ideal_engine::DEFAULT_MAX_STEPS;
use charvar::monodromy::{invariants, parse_word, word_matrix, MonodromyInvariants};
use charvar::trace_poly::trace_polynomial;
use charvar::{Error, Result};

#[derive(Serialize)]
struct Summary {
    word: String,
    matrix: [i64; 4],
    invariants: MonodromyInvariants,
    row: Option<CensusRow>,
}

#[derive(Serialize)]
struct Alexander {
    word: String,
    charpoly: String,
    bending: Vec<BendingParameter>,
}

#[derive(Serialize)]
struct Trace {
    word: String,
    polynomial: String,
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("reports serialize to json")
}

/// Monodromy matrix, invariants and, for hyperbolic words, the census row.
pub fn summary_json(word: &str, budget: u64) -> Result<String> {
    let w = parse_word(word)?;
    let inv = invariants(&w);
    let row = if inv.hyperbolic { Some(census_row(&w, budget)?) } else { None };
    Ok(to_json(&Summary { word: w.to_string(), matrix: word_matrix(&w).entries_i64(), invariants: inv, row }))
}

/// Characteristic polynomial and bending parameters at the reducible
/// characters with eigenvalues `±1`.
pub fn alexander_json(word: &str) -> Result<String> {
    let w = parse_word(word)?;
    let bending = bending_parameters(&w)?;
    Ok(to_json(&Alexander { word: w.to_string(), charpoly: charpoly(&w).display("m"), bending }))
}

/// Trace polynomial in `x = tr a`, `y = tr b`, `z = tr ab` of a word in
/// `a, b, A = a⁻¹, B = b⁻¹`.
pub fn trace_json(word: &str) -> Result<String> {
    let w = FreeWord::parse(word)
        .ok_or_else(|| Error::Parse { pos: 0, msg: format!("'{word}' is not a word in a, b, A, B") })?;
    Ok(to_json(&Trace { word: w.to_string(), polynomial: trace_polynomial(&w).to_string() }))
}

fn js(r: Result<String>) -> std::result::Result<String, JsError> {
    r.map_err(|e| JsError::new(&e.to_string()))
}

#[wasm_bindgen]
pub fn summary(word: &str) -> std::result::Result<String, JsError> {
    js(summary_json(word, DEFAULT_MAX_STEPS))
}

#[wasm_bindgen]
pub fn alexander(word: &str) -> std::result::Result<String, JsError> {
    js(alexander_json(word))
}

#[wasm_bindgen]
pub fn trace(word: &str) -> std::result::Result<String, JsError> {
    js(trace_json(word))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn summary_of_census_word() {
        let v: serde_json::Value = serde_json::from_str(&summary_json("A^2*B^-3", DEFAULT_MAX_STEPS).unwrap()).unwrap();
        assert_eq!(v["matrix"], serde_json::json!([7, 2, 3, 1]));
        assert_eq!(v["row"]["components"], 1);
        assert_eq!(v["row"]["genera"], serde_json::json!([1]));
    }

    #[test]
    fn summary_of_non_hyperbolic_word() {
        let v: serde_json::Value = serde_json::from_str(&summary_json("A*B", DEFAULT_MAX_STEPS).unwrap()).unwrap();
        assert!(v["row"].is_null());
        assert_eq!(v["invariants"]["hyperbolic"], false);
    }

    #[test]
    fn alexander_of_figure_eight() {
        let v: serde_json::Value = serde_json::from_str(&alexander_json("A*B^-1").unwrap()).unwrap();
        assert_eq!(v["charpoly"], "m^2 - 3*m + 1");
        assert_eq!(v["bending"].as_array().unwrap().len(), 1);
        assert!(alexander_json("A*B").is_err());
    }

    #[test]
    fn trace_of_commutator() {
        let v: serde_json::Value = serde_json::from_str(&trace_json("abAB").unwrap()).unwrap();
        let p = charvar::poly::Poly::parse(v["polynomial"].as_str().unwrap()).unwrap();
        assert_eq!(p, charvar::poly::Poly::parse("x^2 + y^2 + z^2 - x*y*z - 2").unwrap());
        assert!(trace_json("abc").is_err());
    }
}
