//! Browser bindings for the demo page in `www/`. Every export returns a JSON
//! string; the plain functions are usable (and tested) natively.

use cyclic_gv::autocyclic::enumerate_auto_cyclic;
use cyclic_gv::bounds::{binary_entropy, gv_rate, lemma1_log2_bound, lemma1_size_condition};
use cyclic_gv::packing::{greedy_pack, verify_rate_bound};
use cyclic_gv::{auto_cyclic_distance, hamming, Codeword, DistanceThreshold, Real};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

pub const MAX_CURVE_N: usize = 2000;
pub const MAX_PROFILE_N: usize = 4096;
pub const MAX_PACK_N: usize = 16;
/// Packed codes up to this size are listed word by word.
pub const MAX_LISTED_WORDS: usize = 512;

fn threshold(p: u32, q: u32) -> Result<DistanceThreshold, String> {
    DistanceThreshold::new(p.into(), q.into()).map_err(|e| e.to_string())
}

fn real(x: &Real) -> Value {
    Value::String(x.to_string())
}

/// `log2` of the tail bound and the size condition for `n = 2..=n_max`.
pub fn bound_curve(p: u32, q: u32, n_max: usize) -> Result<String, String> {
    let delta = threshold(p, q)?.for_construction().map_err(|e| e.to_string())?;
    if !(2..=MAX_CURVE_N).contains(&n_max) {
        return Err(format!("n_max must lie in 2..={MAX_CURVE_N}"));
    }
    let mut points = Vec::with_capacity(n_max - 1);
    for n in 2..=n_max {
        let log2b = lemma1_log2_bound(n, &delta).map_err(|e| e.to_string())?;
        points.push(json!({
            "n": n,
            "log2_bound": log2b.to_f64(),
            "size_condition": lemma1_size_condition(n, &delta).map_err(|e| e.to_string())?,
        }));
    }
    let out = json!({
        "delta": delta.to_string(),
        "entropy": real(&binary_entropy(&delta)),
        "gv_rate": real(&gv_rate(&delta).map_err(|e| e.to_string())?),
        "points": points,
    });
    Ok(out.to_string())
}

/// Distance from `word` to each of its shifts, and the auto-cyclic verdict.
pub fn auto_cyclic_profile(word: &str, p: u32, q: u32) -> Result<String, String> {
    let delta = threshold(p, q)?;
    let x: Codeword = word.trim().parse().map_err(|e: cyclic_gv::Error| e.to_string())?;
    let n = x.len();
    if n > MAX_PROFILE_N {
        return Err(format!("words longer than {MAX_PROFILE_N} bits are not profiled"));
    }
    let shifts: Vec<Value> = (1..n)
        .map(|i| {
            let s = x.shift(i);
            let d = hamming(&x, &s).expect("same length");
            json!({ "shift": i, "count": d.count(), "fixed": s == x, "meets": s == x || d.meets(&delta) })
        })
        .collect();
    let ac = auto_cyclic_distance(&x);
    let out = json!({
        "word": x.to_string(),
        "n": n,
        "delta": delta.to_string(),
        "period": x.period(),
        "canonical": x.canonical().to_string(),
        "auto_cyclic": ac.to_string(),
        "member": ac.meets(&delta),
        "shifts": shifts,
    });
    Ok(out.to_string())
}

/// Enumerates `C'` at `(n, delta)` and packs it.
pub fn pack_small(n: usize, p: u32, q: u32) -> Result<String, String> {
    let delta = threshold(p, q)?.for_construction().map_err(|e| e.to_string())?;
    if !(2..=MAX_PACK_N).contains(&n) {
        return Err(format!("n must lie in 2..={MAX_PACK_N}"));
    }
    let cprime = enumerate_auto_cyclic(n, delta).map_err(|e| e.to_string())?;
    let (code, trace) = greedy_pack(&cprime, delta).map_err(|e| e.to_string())?;
    let size = code.len() as u64;
    let rate = cyclic_gv::bounds::code_rate_u64(size, n).ok();
    let steps: Vec<Value> = trace
        .records()
        .into_iter()
        .map(|r| json!({ "representative": r.representative.to_string(), "removed": r.removed }))
        .collect();
    let words: Option<Vec<String>> =
        (code.len() <= MAX_LISTED_WORDS).then(|| code.iter().map(|w| w.to_string()).collect());
    let out = json!({
        "n": n,
        "delta": delta.to_string(),
        "cprime_size": cprime.len(),
        "size": size,
        "rate": rate.as_ref().map(real),
        "gv_rate": real(&gv_rate(&delta).map_err(|e| e.to_string())?),
        "rate_bound_holds": verify_rate_bound(cprime.len() as u64, size, n, delta),
        "steps": steps,
        "words": words,
    });
    Ok(out.to_string())
}

fn js<T>(r: Result<T, String>) -> Result<T, JsValue> {
    r.map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = boundCurve)]
pub fn bound_curve_js(p: u32, q: u32, n_max: u32) -> Result<String, JsValue> {
    js(bound_curve(p, q, n_max as usize))
}

#[wasm_bindgen(js_name = autoCyclicProfile)]
pub fn auto_cyclic_profile_js(word: &str, p: u32, q: u32) -> Result<String, JsValue> {
    js(auto_cyclic_profile(word, p, q))
}

#[wasm_bindgen(js_name = packSmall)]
pub fn pack_small_js(n: u32, p: u32, q: u32) -> Result<String, JsValue> {
    js(pack_small(n as usize, p, q))
}
