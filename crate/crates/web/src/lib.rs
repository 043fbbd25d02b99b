//! Browser bindings. Each export takes plain strings and numbers and returns
//! a JSON string: `{"ok": true, ...}` or `{"ok": false, "error": "..."}`.

use gwpt::poset::{enumerate_4valent_curves, ConstraintCase};
use gwpt::series::{correspondence_check, principal_gw, principal_pt};
use gwpt::stars::{multiplicity_and_normalize, Star};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn reply(r: Result<Value, String>) -> String {
    match r {
        Ok(Value::Object(mut m)) => {
            m.insert("ok".into(), Value::Bool(true));
            Value::Object(m).to_string()
        }
        Ok(other) => json!({ "ok": true, "value": other }).to_string(),
        Err(e) => json!({ "ok": false, "error": e }).to_string(),
    }
}

/// Both principal series for multiplicity `n` and the correspondence check
/// with `d = n + 2`, `sigma = 1 - n`.
#[wasm_bindgen]
pub fn principal_pair(n: u32, order: i32) -> String {
    reply((|| {
        if n == 0 || n > 40 {
            return Err("multiplicity must be between 1 and 40".to_string());
        }
        if !(4..=60).contains(&order) {
            return Err("order must be between 4 and 60".to_string());
        }
        let (n, order) = (n as u64, order as i64);
        let pt = principal_pt(n).map_err(|e| e.to_string())?;
        let gw = principal_gw(n, order).map_err(|e| e.to_string())?;
        let (d, sigma) = (n as i64 + 2, 1 - n as i64);
        let check = correspondence_check(&pt, &gw, d, sigma, order).map_err(|e| e.to_string())?;
        Ok(json!({
            "pt": pt.form().to_string(),
            "gw": gw.series.to_string(),
            "d": d,
            "sigma": sigma,
            "pass": check.pass,
            "first_mismatch_exponent": check.first_mismatch_exponent,
        }))
    })())
}

/// Multiplicity, balancing and visibility of a star given as JSON.
#[wasm_bindgen]
pub fn star_summary(star_json: &str) -> String {
    reply((|| {
        let s: Star = serde_json::from_str(star_json).map_err(|e| format!("bad star: {e}"))?;
        let mut out = json!({ "balanced": s.is_balanced(), "visible": s.is_visible(), "valence": s.valence() });
        match multiplicity_and_normalize(&s) {
            Ok(m) => {
                out["n"] = m.n.into();
                out["m"] = m.m.into();
                out["N"] = m.big_n.into();
                out["transform"] = m.transform.to_string().into();
            }
            Err(e) => out["multiplicity"] = e.to_string().into(),
        }
        Ok(out)
    })())
}

/// Rigid curves for the 4-valent star with parameter `n`; `case` is `I` or `II`.
#[wasm_bindgen]
pub fn four_valent_curves(n: i32, case: &str) -> String {
    reply((|| {
        if !(1..=200).contains(&n) {
            return Err("n must be between 1 and 200".to_string());
        }
        let case: ConstraintCase = case.parse()?;
        let curves = enumerate_4valent_curves(n as i64, case).map_err(|e| e.to_string())?;
        let items: Vec<Value> = curves
            .iter()
            .map(|c| {
                let positions: Vec<String> = c.vertices().iter().map(|v| v.position.to_string()).collect();
                json!({ "vertices": positions, "edges": c.edges().len(), "visible": c.is_visible(), "complex": c })
            })
            .collect();
        Ok(json!({ "count": curves.len(), "curves": items }))
    })())
}
