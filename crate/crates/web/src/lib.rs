//! Browser bindings for `ptc-core`.
//!
//! The plain functions return `Result<String, String>` so they can be tested
//! natively; the `#[wasm_bindgen]` wrappers turn errors into JS exceptions.

use ptc_core::{enumerate_basis, eval_str, poincare_polynomial, verify_theorem, Space, SpaceSpec};
use serde::Serialize;
use wasm_bindgen::prelude::*;

fn spec(n: u32, m: u32, k: u32, space: &str) -> Result<SpaceSpec, String> {
    let space: Space = space.parse().map_err(|e: ptc_core::Error| e.to_string())?;
    SpaceSpec::new(n, m, k, space).map_err(|e| e.to_string())
}

/// Certificate JSON for the fibre product ring.
pub fn verify_json(n: u32, m: u32, k: u32) -> Result<String, String> {
    let spec = spec(n, m, k, "ebe")?;
    verify_theorem(&spec).map(|c| c.to_json()).map_err(|e| e.to_string())
}

/// Normal form of an expression.
pub fn evaluate_expr(expr: &str, n: u32, m: u32, k: u32, space: &str) -> Result<String, String> {
    let spec = spec(n, m, k, space)?;
    eval_str(expr, &spec).map(|x| x.to_string()).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct Ranks {
    base: Vec<u64>,
    total: Vec<u64>,
    fibre: Vec<u64>,
    fibre_product: Vec<u64>,
    /// First few basis monomials of the fibre product per grade.
    samples: Vec<Vec<String>>,
}

/// Ranks per grade for all four rings, plus sample basis monomials.
pub fn ranks_json(n: u32, m: u32, k: u32, samples_per_grade: usize) -> Result<String, String> {
    let ranks = |space| spec(n, m, k, space).map(|s| poincare_polynomial(&s).coefficients().to_vec());
    let ebe = spec(n, m, k, "ebe")?;
    let fibre_product = poincare_polynomial(&ebe).coefficients().to_vec();
    let samples = (0..fibre_product.len() as u32)
        .map(|g| {
            if samples_per_grade == 0 || fibre_product[g as usize] > 50_000 {
                return Vec::new();
            }
            enumerate_basis(&ebe, g).iter().take(samples_per_grade).map(|m| m.to_string()).collect()
        })
        .collect();
    let out = Ranks { base: ranks("b")?, total: ranks("e")?, fibre: ranks("x")?, fibre_product, samples };
    serde_json::to_string(&out).map_err(|e| e.to_string())
}

#[wasm_bindgen]
pub fn verify(n: u32, m: u32, k: u32) -> Result<String, JsValue> {
    verify_json(n, m, k).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn evaluate(expr: &str, n: u32, m: u32, k: u32, space: &str) -> Result<String, JsValue> {
    evaluate_expr(expr, n, m, k, space).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn ranks(n: u32, m: u32, k: u32, samples_per_grade: usize) -> Result<String, JsValue> {
    ranks_json(n, m, k, samples_per_grade).map_err(|e| JsValue::from_str(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verify_reports_certificate() {
        let v: serde_json::Value = serde_json::from_str(&verify_json(1, 2, 3).unwrap()).unwrap();
        assert_eq!(v["tc_exact"], 3);
        assert!(verify_json(1, 2, 4).unwrap_err().contains("even k"));
        assert!(verify_json(1, 1, 3).is_err());
    }

    #[test]
    fn evaluates() {
        assert_eq!(evaluate_expr("w(1,2)^2", 1, 2, 3, "ebe").unwrap(), "0");
        assert_eq!(evaluate_expr("w(3,1)", 1, 2, 3, "e").unwrap(), "-w(1,3)");
        assert!(evaluate_expr("w(1,", 1, 2, 3, "ebe").unwrap_err().contains("offset 4"));
        assert!(evaluate_expr("w(1,2)", 1, 2, 3, "nope").is_err());
    }

    #[test]
    fn ranks_for_smallest_case() {
        let v: serde_json::Value = serde_json::from_str(&ranks_json(1, 2, 3, 2).unwrap()).unwrap();
        assert_eq!(v["fibre_product"], serde_json::json!([1, 5, 8, 4]));
        assert_eq!(v["base"], serde_json::json!([1, 1]));
        assert_eq!(v["total"], serde_json::json!([1, 3, 2]));
        assert_eq!(v["fibre"], serde_json::json!([1, 2]));
        assert_eq!(v["samples"][0], serde_json::json!(["1"]));
        assert_eq!(v["samples"][3].as_array().unwrap().len(), 2);
    }
}
