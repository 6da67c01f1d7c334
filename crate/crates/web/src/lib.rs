//! wasm-bindgen entry points for the browser demo in `www/`.
//!
//! Every export returns a JSON string; failures come back as `{"error": ...}`
//! so the page never has to catch exceptions.

use mldlab::bounds_lab::value_set;
use mldlab::discrepancy::{lct, log_discrepancy, monomialized_upper_bound};
use mldlab::parse::{parse_multiideal, parse_scalar};
use mldlab::report;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Largest staircase box the page may ask for; bigger sweeps belong in the CLI.
pub const MAX_DEMO_BOX: u32 = 4;

fn finish(r: Result<Value, String>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e }).to_string(),
    }
}

/// Fan, mld and lct of a multiideal in the CLI syntax.
#[wasm_bindgen]
pub fn analyze(text: &str, characteristic: u32) -> String {
    finish((|| {
        let p = parse_multiideal(text, u64::from(characteristic)).map_err(|e| e.to_string())?;
        let m = p.monomialized();
        let lct = match lct(&m) {
            Ok(r) => report::lct_json(&r),
            Err(e) => json!({ "error": e.to_string() }),
        };
        Ok(json!({
            "fan": report::fan_json(&m),
            "mld": report::mld_bound_json(&monomialized_upper_bound(&p), !p.is_monomial()),
            "lct": lct,
        }))
    })())
}

/// Log discrepancy a(p) of the monomialized input at one weight.
#[wasm_bindgen]
pub fn discrepancy_at(text: &str, characteristic: u32, p1: i32, p2: i32) -> String {
    finish((|| {
        let m = parse_multiideal(text, u64::from(characteristic)).map_err(|e| e.to_string())?.monomialized();
        let a = log_discrepancy([i64::from(p1), i64::from(p2)], &m).map_err(|e| e.to_string())?;
        Ok(json!({ "p": [p1, p2], "a": report::scalar_json(&a), "text": a.to_string(), "approx": a.to_f64() }))
    })())
}

/// mld values over all staircase tuples in a small box; exponents are `;`-separated.
#[wasm_bindgen]
pub fn values(exponents: &str, boxes: u32) -> String {
    finish((|| {
        if boxes > MAX_DEMO_BOX {
            return Err(format!("box {boxes} is too large for the demo (max {MAX_DEMO_BOX})"));
        }
        let e = exponents
            .split(';')
            .map(|s| parse_scalar(s.trim()).map_err(|e| e.to_string()))
            .collect::<Result<Vec<_>, _>>()?;
        let r = value_set(&e, boxes).map_err(|e| e.to_string())?;
        let text: Vec<String> = r.values.iter().map(ToString::to_string).collect();
        let mut v = report::value_set_json(&r);
        v["text"] = json!(text);
        Ok(v)
    })())
}
