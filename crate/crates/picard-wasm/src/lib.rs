//! Browser bindings for the interactive demo page. Three operations are
//! exposed, each taking simple string/number arguments and returning a JSON
//! string (`{"error": ...}` on failure), so the page needs no glue beyond
//! `JSON.parse`.

use num_complex::Complex64;
use serde_json::json;
use wasm_bindgen::prelude::*;

use picard::exhaustion::{enumerate_isotropic, f_exhaustion, named_family, FamilyName};
use picard::horoball::HoroPoint;
use picard::round12;

fn err_json(msg: impl std::fmt::Display) -> String {
    json!({ "error": msg.to_string() }).to_string()
}

/// Classify the isotropy class of a point "y,beta,r": reduction into the
/// Siegel strip, the stabilizer, and the class Gamma_1..Gamma_9 or trivial.
#[wasm_bindgen]
pub fn classify(point: &str) -> String {
    let z = match HoroPoint::parse(point) {
        Ok(z) => z,
        Err(e) => return err_json(e),
    };
    match picard::classify_point(&z) {
        Ok(c) => c.to_json().to_string(),
        Err(e) => err_json(e),
    }
}

/// First-contact point of a named family (I2_1, I3_1, I3_2, I2_2, I8):
/// where the family's exhaustion functions all meet.
#[wasm_bindgen]
pub fn first_contact(family: &str) -> String {
    let name = match FamilyName::parse(family) {
        Some(n) => n,
        None => return err_json(format!("unknown family {family:?}")),
    };
    let fam = named_family(name);
    let init = HoroPoint::new(1.0, Complex64::new(0.0, 0.0), 0.0);
    let z = match picard::first_contact(&fam, &init) {
        Ok(z) => z,
        Err(e) => return err_json(e),
    };
    let values: std::collections::BTreeMap<String, f64> = fam
        .reps()
        .iter()
        .map(|p| (p.to_string(), round12(f_exhaustion(p, &z))))
        .collect();
    json!({
        "name": name.as_str(),
        "point": z.to_json(),
        "values": values,
    })
    .to_string()
}

/// Samples max_P f_P(z) / y on an n-by-n grid of beta over [-1,1]^2 at fixed
/// y and r, over all cusps of entry-norm height <= `height`. A ratio >= 1
/// means some cusp other than P_0 has caught up: the point lies on or past
/// the spine. The page renders the field on a canvas.
#[wasm_bindgen]
pub fn height_field(y: f64, r: f64, n: usize, height: i64) -> String {
    if !y.is_finite() || y <= 0.0 || !r.is_finite() {
        return err_json("y must be positive and coordinates finite");
    }
    if !(2..=512).contains(&n) {
        return err_json("grid size must be between 2 and 512");
    }
    let reps = match enumerate_isotropic(height) {
        Ok(r) => r,
        Err(e) => return err_json(e),
    };
    let base = picard::ParabolicRep::base();
    let mut values = Vec::with_capacity(n * n);
    for row in 0..n {
        let im = -1.0 + 2.0 * row as f64 / (n - 1) as f64;
        for col in 0..n {
            let re = -1.0 + 2.0 * col as f64 / (n - 1) as f64;
            let z = HoroPoint::new(y, Complex64::new(re, im), r);
            let best = reps
                .iter()
                .filter(|p| p.vector() != base.vector())
                .map(|p| f_exhaustion(p, &z))
                .fold(f64::NEG_INFINITY, f64::max);
            values.push(round12(best / y));
        }
    }
    json!({ "n": n, "r": r, "values": values, "y": y }).to_string()
}
