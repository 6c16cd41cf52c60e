//! Browser bindings. Every export takes text and returns a JSON string, or
//! throws an `Error` carrying the message.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use foxcover::covers::{cover_homology, parse_rep, reidemeister_schreier};
use foxcover::families::{analyze_all, FamilyInstance};
use foxcover::intlinalg::{abelian_group_from_presentation_matrix, AbelianGroup};
use foxcover::presentation::Presentation;

/// Largest parameter accepted by [`scan_json`]; keeps the page responsive.
pub const SCAN_LIMIT: i64 = 40;

fn group(g: &AbelianGroup) -> Value {
    json!({
        "free_rank": g.free_rank(),
        "torsion": g.torsion().iter().map(ToString::to_string).collect::<Vec<_>>(),
        "two_avoiding": g.is_two_avoiding(),
        "text": g.to_string(),
    })
}

fn parse(text: &str) -> Result<Presentation, String> {
    text.parse().map_err(|e: foxcover::presentation::ParseError| e.to_string())
}

pub fn h1_json(presentation: &str) -> Result<String, String> {
    let p = parse(presentation)?;
    let h = abelian_group_from_presentation_matrix(&p.abelianized_relator_matrix());
    let mut v = group(&h);
    v["presentation"] = json!(p.to_string());
    v["proper_powers"] = json!(p.proper_power_relators().iter().map(|(j, e)| json!([j + 1, e])).collect::<Vec<_>>());
    Ok(v.to_string())
}

pub fn cover_json(presentation: &str, rep: &str) -> Result<String, String> {
    let p = parse(presentation)?;
    let rep = parse_rep(&p, rep).map_err(|e| e.to_string())?;
    let h = cover_homology(&p, &rep).map_err(|e| e.to_string())?;
    Ok(json!({
        "rep": rep.display(p.generator_names()).to_string(),
        "fox": group(&h.fox),
        "rs": group(&h.rs),
        "chain": group(&h.chain),
        "agree": h.agree(),
        "subgroup": reidemeister_schreier(&p, &rep).to_string(),
    })
    .to_string())
}

/// Members of a family with `|m - n| = 2` (or the all-even Meskin tuples with
/// gcd 2) up to `limit`, one row each.
pub fn scan_json(family: &str, limit: i64) -> Result<String, String> {
    if !(1..=SCAN_LIMIT).contains(&limit) {
        return Err(format!("limit must lie in 1..={SCAN_LIMIT}"));
    }
    let mut instances = Vec::new();
    match family {
        "bs" | "bstrebel" | "bgersten" => {
            for m in 1..=limit {
                for n in [m - 2, m + 2].into_iter().filter(|n| (1..=limit).contains(n)) {
                    instances.push(match family {
                        "bs" => FamilyInstance::baumslag_solitar(m, n),
                        "bstrebel" => FamilyInstance::baumslag_strebel(m, n, 3),
                        _ => FamilyInstance::baumslag_gersten(m, n),
                    });
                }
            }
        }
        "meskin" => {
            for a in (2..=limit).step_by(2) {
                for b in (a..=limit).step_by(2) {
                    instances.push(FamilyInstance::meskin(vec![a, b]));
                }
            }
        }
        other => return Err(format!("unknown family `{other}`")),
    }
    let instances = instances.into_iter().collect::<Result<Vec<_>, _>>().map_err(|e| e.to_string())?;
    let instances: Vec<_> = instances.into_iter().filter(foxcover::families::has_reference_case).collect();
    let rows = analyze_all(&instances).map_err(|e| e.to_string())?;
    let rows: Vec<Value> = rows
        .iter()
        .map(|r| {
            json!({
                "instance": r.instance.to_string(),
                "h1": r.h1.to_string(),
                "theta": r.theta,
                "kernel": r.kernel_h1_fox.as_ref().map(ToString::to_string),
                "agree": r.methods_agree,
                "kernel_two_avoiding": r.kernel_two_avoiding,
                "reference_claim": r.reference_claim.as_ref().map(ToString::to_string),
                "matches_reference": r.matches_reference.to_string(),
            })
        })
        .collect();
    Ok(Value::Array(rows).to_string())
}

#[wasm_bindgen]
pub fn h1(presentation: &str) -> Result<String, JsError> {
    h1_json(presentation).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn cover(presentation: &str, rep: &str) -> Result<String, JsError> {
    cover_json(presentation, rep).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn scan(family: &str, limit: i32) -> Result<String, JsError> {
    scan_json(family, limit as i64).map_err(|e| JsError::new(&e))
}
