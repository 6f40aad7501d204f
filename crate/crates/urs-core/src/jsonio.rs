//! Deterministic JSON serialization of artifacts.
//!
//! All maps go through serde_json's default BTreeMap-backed object type, so
//! keys are emitted sorted; scalars are rendered in their canonical text
//! form; arrays follow the canonical basis orders.  Re-exporting a parsed
//! export is byte-identical.

use serde_json::{json, Value};

use crate::braiding::BraidMap;
use crate::cat_o::WeightModule;
use crate::error::Result;
use crate::pairing::Pairing;

/// Canonical bytes of a JSON value (sorted keys, two-space indentation,
/// trailing newline).
pub fn to_canonical_bytes(v: &Value) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(v).expect("serialization cannot fail");
    out.push(b'\n');
    out
}

/// Round-trip: parse and re-serialize.  Canonical inputs come back
/// byte-identical.
pub fn reexport(bytes: &[u8]) -> Result<Vec<u8>> {
    let v: Value = serde_json::from_slice(bytes)
        .map_err(|e| crate::error::UrsError::Domain(format!("invalid JSON: {e}")))?;
    Ok(to_canonical_bytes(&v))
}

fn word_tokens(prefix: &str, w: &[u8]) -> Vec<String> {
    w.iter().map(|j| format!("{prefix}{j}")).collect()
}

/// Graded basis and dual pair for one content.
pub fn dual_pair_value(ctx: &Pairing, zeta: &[i64]) -> Result<Value> {
    let g = ctx.graded(zeta)?;
    let gram: Vec<Vec<String>> = g
        .gram
        .iter()
        .map(|row| row.iter().map(|c| c.to_string()).collect())
        .collect();
    let d = ctx.dual_bases_cached(zeta)?;
    let u: Vec<Vec<String>> = g
        .reps_e
        .iter()
        .map(|&k| word_tokens("e", &g.words[k]))
        .collect();
    let v: Vec<Vec<Value>> = d
        .v
        .iter()
        .map(|vk| {
            vk.terms()
                .map(|(key, c)| json!([c.to_string(), word_tokens("f", &key.f)]))
                .collect()
        })
        .collect();
    Ok(json!({
        "zeta": zeta,
        "words": g.words.iter().map(|w| w.iter().map(|&x| x as i64).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "gram": gram,
        "rank": g.rank,
        "reps_e": g.reps_e,
        "reps_f": g.reps_f,
        "u": u,
        "v": v,
    }))
}

/// Theta_zeta as a list of [coefficient, F-word, E-word] terms.
pub fn theta_value(ctx: &Pairing, zeta: &[i64]) -> Result<Value> {
    let th = crate::braiding::theta(ctx, zeta)?;
    let terms: Vec<Value> = th
        .terms()
        .map(|(legs, c)| {
            json!([
                c.to_string(),
                word_tokens("f", &legs[0].f),
                word_tokens("e", &legs[1].e),
            ])
        })
        .collect();
    Ok(json!({ "zeta": zeta, "terms": terms }))
}

/// Truncated module export: basis words, weights, sparse action triplets.
pub fn module_value(m: &WeightModule) -> Result<Value> {
    let alg = m.algebra();
    let basis: Vec<Value> = m
        .basis
        .iter()
        .map(|b| {
            json!({
                "word": b.word.iter().map(|&x| x as i64).collect::<Vec<_>>(),
                "weight": b.weight.eps(),
            })
        })
        .collect();
    let mut action = serde_json::Map::new();
    let mut gens: Vec<crate::algebra::Gen> = Vec::new();
    for i in 1..alg.n {
        gens.push(crate::algebra::Gen::E(i));
        gens.push(crate::algebra::Gen::F(i));
    }
    gens.extend(alg.torus_gens());
    for g in gens {
        let mut triplets: Vec<Value> = Vec::new();
        for col in 0..m.dim() {
            let out = m.act_gen(g, 1, &m.basis_vector(col))?;
            for (row, c) in out {
                triplets.push(json!([row, col, c.to_string()]));
            }
        }
        action.insert(g.to_string(), Value::Array(triplets));
    }
    Ok(json!({
        "lambda": m.lambda.eps(),
        "depth": m.depth,
        "basis": basis,
        "action": Value::Object(action),
    }))
}

/// Braiding matrix export: basis pair descriptors plus sparse entries.
pub fn braid_map_value(map: &BraidMap) -> Value {
    let mut entries: Vec<Value> = Vec::new();
    for (ri, row) in map.matrix.iter().enumerate() {
        for (ci, c) in row.iter().enumerate() {
            if !c.is_zero() {
                entries.push(json!([ri, ci, c.to_string()]));
            }
        }
    }
    json!({
        "budget": map.budget,
        "rows": map.rows.iter().map(|&(a, b)| json!([a, b])).collect::<Vec<_>>(),
        "cols": map.cols.iter().map(|&(a, b)| json!([a, b])).collect::<Vec<_>>(),
        "entries": entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Algebra, Kind};
    use std::sync::Arc;

    #[test]
    fn theta_export_shape() {
        let ctx = Pairing::new(Arc::new(Algebra::generic(2, Kind::Sl).unwrap()), 4);
        let v = theta_value(&ctx, &[1]).unwrap();
        // single term (s-r) f (x) e with the canonical coefficient string
        assert_eq!(
            v["terms"],
            json!([["(-1*u^2+1*v^2)", ["f1"], ["e1"]]])
        );
    }

    #[test]
    fn reexport_is_byte_identical() {
        let ctx = Pairing::new(Arc::new(Algebra::generic(2, Kind::Sl).unwrap()), 4);
        let v = dual_pair_value(&ctx, &[1]).unwrap();
        let bytes = to_canonical_bytes(&v);
        assert_eq!(reexport(&bytes).unwrap(), bytes);
    }

    #[test]
    fn empty_report_is_stable() {
        let v = crate::report::CheckReport::from_failures("noop", Vec::new())
            .to_value(json!({}));
        let bytes = to_canonical_bytes(&v);
        assert_eq!(reexport(&bytes).unwrap(), bytes);
    }
}
