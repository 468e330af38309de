//! WebAssembly bindings behind the static demo page in `www/`.
//!
//! Each export takes plain strings and returns a JSON document; the
//! `*_json` functions hold the logic so they can be tested natively.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use flagcoh::blowup::{eta_table, p_poly, SignVector};
use flagcoh::cartan::LieType;
use flagcoh::cohomology::integral_cohomology_with_cap;
use flagcoh::toda_flow::{flow_report, SpectralData, DEFAULT_SAMPLES};

/// Largest Weyl group the page will enumerate (E6 and F4 fit).
pub const BLOWUP_CAP: usize = 60_000;
/// Largest group for the Smith normal form computations.
pub const COHOMOLOGY_CAP: usize = 2_000;

fn parse_type(s: &str) -> Result<LieType, String> {
    s.trim().parse().map_err(|e: flagcoh::Error| e.to_string())
}

fn parse_signs(s: &str, t: LieType) -> Result<SignVector, String> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(SignVector::all_minus(t.rank()));
    }
    let eps: SignVector = s.parse().map_err(|e: flagcoh::Error| e.to_string())?;
    eps.check_rank(t.rank()).map_err(|e| e.to_string())?;
    Ok(eps)
}

/// Blow-up table summary: `η` histogram and the alternating sum `p_ε(q)`.
pub fn blowups_json(lie_type: &str, eps: &str) -> Result<String, String> {
    let t = parse_type(lie_type)?;
    let eps = parse_signs(eps, t)?;
    let (group, table) = eta_table(t, eps, BLOWUP_CAP).map_err(|e| e.to_string())?;
    let mut histogram = vec![0usize; table.max() as usize + 1];
    for &v in table.values() {
        histogram[v as usize] += 1;
    }
    let p = p_poly(&group, eps).map_err(|e| e.to_string())?;
    let poly: Vec<Value> = p.to_pairs().into_iter().map(|(e, c)| json!([e, c])).collect();
    Ok(json!({
        "lie_type": t,
        "eps": eps,
        "order": group.order(),
        "eta_longest": table.value(group.longest()),
        "eta_histogram": histogram,
        "poly": poly,
        "text": p.to_string(),
        "factored": p.factored_string(),
    })
    .to_string())
}

/// Integral cohomology of the incidence complex for one sign vector.
pub fn cohomology_json(lie_type: &str, eps: &str) -> Result<String, String> {
    let t = parse_type(lie_type)?;
    let eps = parse_signs(eps, t)?;
    let g = integral_cohomology_with_cap(t, eps, COHOMOLOGY_CAP).map_err(|e| e.to_string())?;
    Ok(json!({
        "lie_type": g.lie_type,
        "eps": g.eps,
        "summary": g.summary(),
        "betti": g.betti(),
        "mod2": g.mod2,
        "warnings": g.warnings,
    })
    .to_string())
}

/// Blow-up count of the `A_l` Toda flow for a comma-separated spectrum,
/// shifted to zero sum.
pub fn toda_json(spectrum: &str) -> Result<String, String> {
    let values = spectrum
        .split(',')
        .map(|v| v.trim().parse::<f64>().map_err(|_| format!("not a number: {:?}", v.trim())))
        .collect::<Result<Vec<f64>, String>>()?;
    let spec = SpectralData::centered(values).map_err(|e| e.to_string())?;
    let report = flow_report(&spec, None, DEFAULT_SAMPLES, None).map_err(|e| e.to_string())?;
    serde_json::to_string(&report).map_err(|e| e.to_string())
}

#[wasm_bindgen]
pub fn blowups(lie_type: &str, eps: &str) -> Result<String, JsError> {
    blowups_json(lie_type, eps).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn cohomology(lie_type: &str, eps: &str) -> Result<String, JsError> {
    cohomology_json(lie_type, eps).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn toda(spectrum: &str) -> Result<String, JsError> {
    toda_json(spectrum).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parsed(s: Result<String, String>) -> Value {
        serde_json::from_str(&s.unwrap()).unwrap()
    }

    #[test]
    fn blowups_for_g2() {
        let v = parsed(blowups_json("G2", ""));
        assert_eq!(v["order"], 12);
        assert_eq!(v["eta_longest"], 4);
        assert_eq!(v["eta_histogram"], json!([1, 4, 2, 4, 1]));
        assert_eq!(v["factored"], "(q^2-1)^2");
    }

    #[test]
    fn blowups_off_all_minus_vanish() {
        let v = parsed(blowups_json("A3", "+-+"));
        assert_eq!(v["poly"], json!([]));
    }

    #[test]
    fn cohomology_of_a2() {
        let v = parsed(cohomology_json("A2", "-+"));
        assert_eq!(v["summary"], json!(["0", "Z/2", "Z/2", "Z/2"]));
    }

    #[test]
    fn toda_rank_three() {
        let v = parsed(toda_json("-3, -1, 1, 3"));
        assert_eq!(v["total"], 4);
        assert_eq!(v["match"], true);
    }

    #[test]
    fn errors_are_messages() {
        assert!(blowups_json("Q7", "").is_err());
        assert!(blowups_json("A2", "---").is_err());
        assert!(blowups_json("E8", "").unwrap_err().contains("cap"));
        assert!(cohomology_json("E6", "").is_err());
        assert!(toda_json("1, x").is_err());
        assert!(toda_json("1, 1").is_err());
    }
}
