//! Browser bindings: a few entry points taking arrangement JSON and
//! returning plain text.

use wasm_bindgen::prelude::*;

use mvideal::focal::rank_test_point;
use mvideal::multiview::{multiview_ideal, multiview_ideal_auto, verify as verify_thm, Method, TheoremId, VerifyOptions};
use mvideal::{Arrangement, Rational};

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// Minimal generators of the multiview ideal, one per line. `method` is
/// `elimination`, `focal_sum` or empty for automatic choice.
pub fn multiview_text(arrangement: &str, method: &str) -> Result<String, String> {
    let arr = Arrangement::from_json(arrangement).map_err(err)?;
    let ctx = arr.context().map_err(err)?;
    let m = if method.trim().is_empty() {
        multiview_ideal_auto(&arr, &ctx)
    } else {
        multiview_ideal(&arr, &ctx, method.parse::<Method>().map_err(err)?)
    }
    .map_err(err)?;
    let lines: Vec<String> = m.ideal.minimal_generators().iter().map(|g| g.canonical().to_string()).collect();
    Ok(lines.join("\n"))
}

/// Rank test for image points written `((1,2,3),(2,2,4))`.
pub fn check_point_text(arrangement: &str, points: &str) -> Result<String, String> {
    let arr = Arrangement::from_json(arrangement).map_err(err)?;
    let mut pts: Vec<Vec<Rational>> = Vec::new();
    let cleaned: String = points.chars().filter(|c| !c.is_whitespace()).collect();
    for group in cleaned.split(')').map(|g| g.trim_start_matches([',', '('])).filter(|g| !g.is_empty()) {
        pts.push(group.split(',').map(str::parse).collect::<Result<_, _>>().map_err(err)?);
    }
    let t = rank_test_point(&arr, &pts).map_err(err)?;
    Ok(match t.kernel {
        Some(k) if t.member => {
            let k: Vec<String> = k.iter().map(|c| c.to_string()).collect();
            format!("consistent image tuple\nkernel ({})", k.join(","))
        }
        _ => format!("not a consistent image tuple\nrank {}", t.rank),
    })
}

/// Human-readable verification report for one theorem id.
pub fn verify_text(arrangement: &str, theorem: &str, seed: u64) -> Result<String, String> {
    let arr = Arrangement::from_json(arrangement).map_err(err)?;
    let id: TheoremId = theorem.parse().map_err(err)?;
    Ok(verify_thm(&arr, id, &VerifyOptions { seed, ..Default::default() }).render())
}

#[wasm_bindgen]
pub fn multiview(arrangement: &str, method: &str) -> Result<String, JsValue> {
    multiview_text(arrangement, method).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = checkPoint)]
pub fn check_point(arrangement: &str, points: &str) -> Result<String, JsValue> {
    check_point_text(arrangement, points).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn verify(arrangement: &str, theorem: &str, seed: u32) -> Result<String, JsValue> {
    verify_text(arrangement, theorem, seed as u64).map_err(|e| JsValue::from_str(&e))
}
