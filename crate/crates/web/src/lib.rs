//! WebAssembly bindings for the demo page in `www/`.
//!
//! Every export takes text and returns a JSON string. The `*_json` functions
//! hold the logic and run natively too.

use hyperzagreb::io::{parse_auto, to_hg};
use hyperzagreb::verify::{self, ScanOptions, SearchSpace};
use hyperzagreb::{cross_check, edge_contributions, generate, hm1, hm2, FamilySpec};
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Subset budget for scans started from the page.
pub const BROWSER_CAP: u64 = 1 << 20;

pub fn indices_json(text: &str) -> Result<String, String> {
    let h = parse_auto(text).map_err(|e| e.to_string())?;
    let out = json!({
        "n": h.n(),
        "m": h.edge_count(),
        "hm1": hm1(&h),
        "hm2": hm2(&h),
        "edges": edge_contributions(&h),
    });
    Ok(out.to_string())
}

pub fn family_json(spec: &str) -> Result<String, String> {
    let spec: FamilySpec = spec
        .parse()
        .map_err(|e: hyperzagreb::families::FamilyError| e.to_string())?;
    let h = generate(&spec).map_err(|e| e.to_string())?;
    let report = cross_check(&spec).map_err(|e| e.to_string())?;
    let out = json!({
        "spec": spec.to_string(),
        "hg": to_hg(&h),
        "structural_hm1": report.structural_hm1,
        "structural_hm2": report.structural_hm2,
        "verdicts": report.verdicts,
    });
    Ok(out.to_string())
}

pub fn scan_json(space: &str, witnesses: usize) -> Result<String, String> {
    let space: SearchSpace = space.parse().map_err(|e: verify::VerifyError| e.to_string())?;
    let opts = ScanOptions {
        cap: BROWSER_CAP,
        max_witnesses: witnesses,
        ..ScanOptions::default()
    };
    let r = verify::scan(&space, &opts).map_err(|e| e.to_string())?;
    serde_json::to_string(&r).map_err(|e| e.to_string())
}

fn to_js(r: Result<String, String>) -> Result<String, JsValue> {
    r.map_err(|e| JsValue::from_str(&e))
}

/// Index values and per-edge terms of a hypergraph in `.hg` or JSON form.
#[wasm_bindgen]
pub fn indices(text: &str) -> Result<String, JsValue> {
    to_js(indices_json(text))
}

/// Generated edge list and closed-form comparison for a family spec such as `path:m=3,k=3`.
#[wasm_bindgen]
pub fn family(spec: &str) -> Result<String, JsValue> {
    to_js(family_json(spec))
}

/// Exhaustive extremal scan of a small search space such as `connected:n=4`.
#[wasm_bindgen]
pub fn scan(space: &str, witnesses: usize) -> Result<String, JsValue> {
    to_js(scan_json(space, witnesses))
}
