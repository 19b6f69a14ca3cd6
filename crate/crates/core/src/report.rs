//! JSON run reports for the command-line subcommands.
//!
//! Every report is a deterministic function of its inputs: maps are ordered
//! and no clock is read unless the caller adds timing itself.

use serde_json::{json, Value};

use crate::algebra::Field;
use crate::census::census;
use crate::error::{Error, Result};
use crate::euler::euler_data;
use crate::io::{serialize_spine, SpineFile};
use crate::moves::{apply_negative, apply_positive, apply_positive_variant, h_cycle_check, is_rigid, random_walk, walk_log, MoveInstance, WalkOptions};
use crate::spider::{
    build_complex, cyclic_representation, free_abelian_representation, presentation, rational_complex, trivial_representation, twisted_complex,
    CellComplexX, RepKind, Representation,
};
use crate::spine::{enumerate_branchings, BranchedSpine};
use crate::torsion::{auto_homology_basis, sign_refined_torsion, torsion, Strategy};

pub fn error_report(e: &Error) -> Value {
    json!({ "error": { "kind": e.kind(), "message": e.to_string() } })
}

pub fn summary(s: &BranchedSpine) -> Value {
    let cx = build_complex(s);
    let g = presentation(&cx);
    let (chi_p, chi_x) = s.euler_characteristics();
    let bd = s.boundary_components();
    json!({
        "tets": s.v(),
        "vertices": s.v(),
        "edges": s.f(),
        "regions": s.e(),
        "chi_p": chi_p,
        "chi_x": chi_x,
        "cw_euler_characteristic": cx.euler_characteristic(),
        "h1": g.describe(),
        "h1_torsion": g.torsion_orders().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "h1_free_rank": g.free_rank(),
        "boundary": bd.components,
        "rigid": is_rigid(s),
    })
}

pub fn validate(text: &str) -> Result<Value> {
    let s = crate::io::parse_spine(text)?;
    Ok(json!({ "valid": true, "tets": s.v() }))
}

/// All branchings of the file's triangulation, each as a spine file.
pub fn branchings(text: &str) -> Result<Value> {
    let f = SpineFile::parse(text)?;
    let tri = f.to_triangulation()?;
    let mut out = Vec::new();
    for dir in enumerate_branchings(&tri) {
        let s = BranchedSpine::new(tri.clone(), dir, f.orientation.clone())?;
        out.push(serialize_spine(&s));
    }
    Ok(json!({ "count": out.len(), "spines": out }))
}

fn move_json(m: &MoveInstance) -> Value {
    let h = h_cycle_check(m);
    json!({
        "kind": m.kind,
        "site": m.site,
        "variant": m.variant,
        "tets_before": m.before.v(),
        "tets_after": m.after.v(),
        "h_null": h.is_null,
        "h_total": h.total,
        "h_class": h.h_class,
        "after": serialize_spine(&m.after),
    })
}

/// `face` with optional `variant`, or `edge`.
pub fn do_move(s: &BranchedSpine, face: Option<usize>, variant: Option<u8>, edge: Option<usize>) -> Result<Value> {
    let ms = match (face, variant, edge) {
        (Some(k), Some(v), None) => vec![apply_positive_variant(s, k, v)?],
        (Some(k), None, None) => {
            let v = apply_positive(s, k)?;
            if v.is_empty() {
                return Err(Error::NotApplicable(format!("no branched 2-3 move across face class {k}")));
            }
            v
        }
        (None, None, Some(c)) => vec![apply_negative(s, c)?],
        _ => return Err(Error::Usage("give --face I [--variant K] or --edge J".into())),
    };
    Ok(json!({ "moves": ms.iter().map(move_json).collect::<Vec<_>>() }))
}

pub fn walk(s: &BranchedSpine, steps: usize, seed: u64, opts: &WalkOptions) -> Result<Value> {
    let w = random_walk(s, steps, seed, opts)?;
    let end = w.last().map(|m| &m.after).unwrap_or(s);
    Ok(json!({
        "seed": seed,
        "steps": w.iter().map(|m| json!({
            "kind": m.kind,
            "site": m.site,
            "variant": m.variant,
            "tets_after": m.after.v(),
            "h_null": h_cycle_check(m).is_null,
        })).collect::<Vec<_>>(),
        "log": walk_log(seed, &w).serialize(),
        "final": serialize_spine(end),
    }))
}

pub fn hcheck(s: &BranchedSpine, face: usize, variant: u8) -> Result<Value> {
    let m = apply_positive_variant(s, face, variant)?;
    let h = h_cycle_check(&m);
    let rows: Vec<Value> = h
        .rows
        .iter()
        .map(|r| json!({ "simplex": r.simplex, "dim": r.dim, "eps": r.eps, "end0": r.end0.to_string(), "end1": r.end1.to_string(), "boundary": r.boundary() }))
        .collect();
    Ok(json!({ "face": face, "variant": variant, "rows": rows, "total": h.total, "is_null": h.is_null, "h_class": h.h_class }))
}

fn torsion_with<F: Field>(cx: &CellComplexX, rep: &Representation<F>, sign_refined: bool, auto_basis: bool) -> Result<Value> {
    let tc = twisted_complex(cx, rep);
    let (_, betti) = crate::torsion::homology_dimensions(&tc);
    let acyclic = betti.iter().all(|&b| b == 0);
    let h = if auto_basis && !acyclic { Some(auto_homology_basis(&tc)) } else { None };
    let t = torsion(&tc, h.as_ref(), &Strategy::First)?;
    let mut v = json!({
        "acyclic": acyclic,
        "betti": betti,
        "torsion": tc.field.format(&t.value),
        "factors_through_h1": rep.factors_through,
    });
    if sign_refined {
        let qc = rational_complex(cx);
        let o = auto_homology_basis(&qc);
        let r = sign_refined_torsion(&tc, h.as_ref(), &qc, &o, &Strategy::First)?;
        v["sign_refined"] = json!(tc.field.format(&r.value));
    }
    Ok(v)
}

pub fn torsion_report(s: &BranchedSpine, kind: &RepKind, sign_refined: bool, auto_basis: bool) -> Result<Value> {
    let cx = build_complex(s);
    let g = presentation(&cx);
    let mut v = match kind {
        RepKind::Trivial => torsion_with(&cx, &trivial_representation(&g), sign_refined, auto_basis)?,
        RepKind::FreeAbelian => torsion_with(&cx, &free_abelian_representation(&g), sign_refined, auto_basis)?,
        RepKind::Cyclic { n, character } => {
            let rep = cyclic_representation(&g, *n, character.as_deref())?;
            torsion_with(&cx, &rep, sign_refined, auto_basis)?
        }
    };
    v["representation"] = json!(kind.label());
    Ok(v)
}

pub fn euler(s: &BranchedSpine) -> Result<Value> {
    let d = euler_data(s)?;
    let g = presentation(&build_complex(s));
    Ok(json!({ "h1": g.describe(), "euler": d }))
}

pub fn census_report(n: usize) -> Value {
    let all = census(n);
    json!({
        "tets": n,
        "count": all.len(),
        "spines": all.iter().map(|s| json!({
            "rigid": is_rigid(s),
            "boundary_components": s.boundary_components().components.len(),
            "file": serialize_spine(s),
        })).collect::<Vec<_>>(),
    })
}

/// h-null walk followed by the torsion comparison along it.
pub fn invariance(s: &BranchedSpine, steps: usize, seed: u64, kind: &RepKind, max_tets: Option<usize>) -> Result<Value> {
    let w = random_walk(s, steps, seed, &WalkOptions { h_null_only: true, max_tets })?;
    let r = crate::invariance::invariance_suite(s, &w, kind)?;
    Ok(json!({ "log": walk_log(seed, &w).serialize(), "report": r }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn census_one_report() {
        let v = census_report(1);
        assert_eq!(v["count"], 4);
    }

    #[test]
    fn empty_walk_keeps_torsion() {
        let s = census(2).remove(0);
        let w = walk(&s, 0, 3, &WalkOptions::default()).unwrap();
        let s2 = crate::io::parse_spine(w["final"].as_str().unwrap()).unwrap();
        let a = torsion_report(&s, &RepKind::FreeAbelian, true, true).unwrap();
        let b = torsion_report(&s2, &RepKind::FreeAbelian, true, true).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn move_usage_error() {
        let s = census(1).remove(0);
        assert!(matches!(do_move(&s, None, None, None), Err(Error::Usage(_))));
    }
}
