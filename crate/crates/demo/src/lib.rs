//! Browser bindings. Every entry point returns a JSON string; the plain
//! functions are usable natively and the `#[wasm_bindgen]` wrappers turn
//! their errors into JavaScript exceptions.

use std::sync::Arc;

use serde_json::{json, Value};
use tannaka_core::catalog;
use tannaka_core::exactla::Fp;
use tannaka_core::groups::{check_splitting_prime, splitting_prime, FiniteGroup, GroupFile, RetractionPair};
use tannaka_core::pipeline::{compare_sections, reconstruct, Options, Reconstruction};
use tannaka_core::reptheory::irreducibles;
use wasm_bindgen::prelude::*;

/// Preset names accepted by [`reconstruct_preset_json`].
pub const PRESETS: [&str; 10] = ["section-1", "section-2", "Z6->Z2", "S3->Z2-sign", "Z4", "Z6", "S3", "D4", "Q8", "A4"];

fn preset(name: &str) -> Result<RetractionPair, String> {
    Ok(match name {
        "section-1" => catalog::two_sections(1),
        "section-2" => catalog::two_sections(2),
        "Z6->Z2" => catalog::z6_over_z2(),
        "S3->Z2-sign" => catalog::s3_sign(),
        other => {
            let (_, g) = catalog::peter_weyl_groups()
                .into_iter()
                .find(|(n, _)| *n == other)
                .ok_or_else(|| format!("unknown preset {other:?}"))?;
            RetractionPair::trivial_subgroup(g)
        }
    })
}

fn run(pair: RetractionPair, seed: u64) -> Result<Reconstruction, String> {
    let field = Fp::new(splitting_prime(pair.big(), 3).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    reconstruct(pair, field, Options { seed, ..Default::default() }).map_err(|e| e.to_string())
}

fn with_labels(r: &Reconstruction) -> Value {
    let mut report = serde_json::to_value(r.report()).expect("serializable");
    let big = r.setup.big();
    let witness: Vec<String> = r.kernel_iso.witness.iter().map(|&k| word_of(big, k)).collect();
    report["kernel_iso"]["witness_words"] = json!(witness);
    report["failures"] = json!(r.failures());
    report
}

/// Shortest word in the generator labels naming element `g`.
pub fn word_of(group: &FiniteGroup, g: usize) -> String {
    let n = group.order();
    let mut prev: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut queue = std::collections::VecDeque::from([0]);
    while let Some(x) = queue.pop_front() {
        for (i, &s) in group.generators().iter().enumerate() {
            let y = group.mul(x, s);
            if !seen[y] {
                seen[y] = true;
                prev[y] = Some((x, i));
                queue.push_back(y);
            }
        }
    }
    let mut letters = Vec::new();
    let mut cur = g;
    while let Some((x, i)) = prev[cur] {
        letters.push(group.labels()[i].clone());
        cur = x;
    }
    if letters.is_empty() {
        return "1".into();
    }
    letters.reverse();
    letters.join("*")
}

pub fn reconstruct_preset_json(name: &str, seed: u64) -> Result<String, String> {
    let r = run(preset(name)?, seed)?;
    Ok(with_labels(&r).to_string())
}

pub fn compare_sections_json(seed: u64) -> Result<String, String> {
    let r1 = run(catalog::two_sections(1), seed)?;
    let r2 = run(catalog::two_sections(2), seed)?;
    let cmp = compare_sections(&r1, &r2).map_err(|e| e.to_string())?;
    Ok(serde_json::to_string(&cmp).expect("serializable"))
}

/// Irreducible degrees and characters of a group given as a group-file JSON
/// document; `prime` is `"auto"` or an explicit splitting prime.
pub fn irreps_json(group_json: &str, prime: &str, seed: u64) -> Result<String, String> {
    let file: GroupFile = serde_json::from_str(group_json).map_err(|e| e.to_string())?;
    let group = Arc::new(file.build().map_err(|e| e.to_string())?);
    let field = if prime.trim() == "auto" {
        Fp::new(splitting_prime(&group, 3).map_err(|e| e.to_string())?)
    } else {
        let p: u64 = prime.trim().parse().map_err(|_| format!("bad prime {prime:?}"))?;
        check_splitting_prime(&group, p)
    }
    .map_err(|e| e.to_string())?;
    let irr = irreducibles(&group, field, seed).map_err(|e| e.to_string())?;
    let elements: Vec<String> = (0..group.order()).map(|g| word_of(&group, g)).collect();
    Ok(json!({
        "prime": field.p(),
        "order": group.order(),
        "degrees": irr.degrees(),
        "elements": elements,
        "characters": irr.irreps().iter().map(|r| r.character()).collect::<Vec<_>>(),
    })
    .to_string())
}

#[wasm_bindgen]
pub fn presets() -> String {
    json!(PRESETS).to_string()
}

#[wasm_bindgen]
pub fn reconstruct_preset(name: &str, seed: u32) -> Result<String, JsError> {
    reconstruct_preset_json(name, seed.into()).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn compare_two_sections(seed: u32) -> Result<String, JsError> {
    compare_sections_json(seed.into()).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn irreps(group_json: &str, prime: &str, seed: u32) -> Result<String, JsError> {
    irreps_json(group_json, prime, seed.into()).map_err(|e| JsError::new(&e))
}
