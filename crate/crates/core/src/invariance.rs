//! Transport of representations and homology bases across moves, and the
//! torsion invariance harness along a walk.

use num_rational::BigRational;
use serde::Serialize;

use crate::algebra::linalg::{self, Mat};
use crate::algebra::{Field, Rationals};
use crate::error::{Error, Result};
use crate::moves::{MoveInstance, D};
use crate::spider::{
    build_complex, cyclic_representation, free_abelian_representation, presentation, rational_complex,
    trivial_representation, twisted_complex, RepKind, Representation, TwistedComplex,
};
use crate::spine::BranchedSpine;
use crate::torsion::{auto_homology_basis, sign_refined_torsion, torsion, HomologyBasis, Strategy};

/// Images on the edge classes of `m.after`: surviving classes keep theirs,
/// new ones are solved from face relations.
pub fn transport_representation<F: Field>(m: &MoveInstance, rep: &Representation<F>) -> Result<Representation<F>> {
    let f = &rep.field;
    let n = m.after.e();
    let mut images: Vec<Option<F::Elem>> = vec![None; n];
    for (c, img) in m.edge_map.iter().enumerate() {
        if let Some(a) = img {
            images[*a] = Some(rep.images[c].clone());
        }
    }
    let cx = build_complex(&m.after);
    let mut progress = true;
    while progress && images.iter().any(|x| x.is_none()) {
        progress = false;
        for &[ab, bc, ac] in &cx.face_edges {
            let known = [&images[ab], &images[bc], &images[ac]];
            let missing = known.iter().filter(|x| x.is_none()).count();
            if missing != 1 {
                continue;
            }
            // φ(ab)·φ(bc) = φ(ac)
            if images[ab].is_none() {
                images[ab] = Some(f.div(images[ac].as_ref().unwrap(), images[bc].as_ref().unwrap()));
            } else if images[bc].is_none() {
                images[bc] = Some(f.div(images[ac].as_ref().unwrap(), images[ab].as_ref().unwrap()));
            } else {
                images[ac] = Some(f.mul(images[ab].as_ref().unwrap(), images[bc].as_ref().unwrap()));
            }
            progress = true;
        }
    }
    let images: Vec<F::Elem> = images
        .into_iter()
        .enumerate()
        .map(|(c, x)| x.ok_or_else(|| Error::TransportFailure(format!("no relation determines edge class {c}"))))
        .collect::<Result<_>>()?;
    Representation::new(f.clone(), images, &presentation(&cx))
}

fn cell_map(m: &MoveInstance, degree: usize) -> Vec<Option<usize>> {
    match degree {
        0 => vec![Some(0)],
        1 => m.edge_map.clone(),
        2 => m.face_map.clone(),
        _ => m.tet_map.clone(),
    }
}

/// Potentials of the bipyramid vertices: p(d) = 1 and p(y) = p(x)·φ(x→y).
fn potentials<F: Field>(m: &MoveInstance, after_side: bool, rep: &Representation<F>) -> [F::Elem; 5] {
    let f = &rep.field;
    let mut p: [F::Elem; 5] = std::array::from_fn(|_| f.one());
    for x in 0..5 {
        if x == D {
            continue;
        }
        let Some(c) = m.local_edge_class(after_side, x, D) else { continue };
        // x→d gives p(d) = p(x)·φ, so p(x) = φ⁻¹; d→x gives p(x) = φ.
        p[x] = if m.local_dir[x][D] { f.inv(&rep.images[c]) } else { rep.images[c].clone() };
    }
    p
}

/// Carry a cycle of `before` (degree `i`) to a homologous cycle of `after`.
pub fn transport_cycle<F: Field>(
    m: &MoveInstance,
    tc_before: &TwistedComplex<F>,
    rep_before: &Representation<F>,
    rep_after: &Representation<F>,
    i: usize,
    z: &[F::Elem],
) -> Result<Vec<F::Elem>> {
    let f = &tc_before.field;
    let map = cell_map(m, i);
    let n_after = match i {
        0 => 1,
        1 => m.after.e(),
        2 => m.after.f(),
        _ => m.after.v(),
    };
    let mut out = vec![f.zero(); n_after];
    if i == 3 {
        let p0 = potentials(m, false, rep_before);
        let p1 = potentials(m, true, rep_after);
        let sink = |st: &crate::moves::SiteTet, s: &BranchedSpine| st.local[s.order(st.tet)[3] as usize];
        let mut kappa: Option<F::Elem> = None;
        for st in &m.before_site {
            let k = f.div(&z[st.tet], &p0[sink(st, &m.before)]);
            match &kappa {
                None => kappa = Some(k),
                Some(k0) if *k0 == k => {}
                Some(_) => {
                    return Err(Error::TransportFailure("3-cycle is not a multiple of the bipyramid on the site".into()));
                }
            }
        }
        let kappa = kappa.unwrap_or_else(|| f.zero());
        for st in &m.after_site {
            out[st.tet] = f.mul(&kappa, &p1[sink(st, &m.after)]);
        }
        for (c, img) in map.iter().enumerate() {
            if let Some(a) = img {
                out[*a] = z[c].clone();
            }
        }
        return Ok(out);
    }
    let mut z = z.to_vec();
    if i > 0 {
        let internal: Vec<usize> = (0..map.len()).filter(|&c| map[c].is_none()).collect();
        if !internal.is_empty() {
            let up = &tc_before.d[i];
            let up_map = cell_map(m, i + 1);
            let internal_up: Vec<usize> = (0..up_map.len()).filter(|&c| up_map[c].is_none()).collect();
            let a = Mat::from_rows(
                internal.len(),
                internal_up.len(),
                internal.iter().map(|&r| internal_up.iter().map(|&c| up.get(r, c).clone()).collect()).collect(),
            );
            let rhs: Vec<F::Elem> = internal.iter().map(|&r| z[r].clone()).collect();
            let w = linalg::solve(f, &a, &rhs).ok_or_else(|| {
                Error::TransportFailure(format!("degree-{i} class cannot be pushed off the site"))
            })?;
            for r in 0..up.rows {
                let mut acc = z[r].clone();
                for (k, &c) in internal_up.iter().enumerate() {
                    acc = f.sub(&acc, &f.mul(up.get(r, c), &w[k]));
                }
                z[r] = acc;
            }
        }
    }
    for (c, img) in map.iter().enumerate() {
        if let Some(a) = img {
            out[*a] = z[c].clone();
        }
    }
    Ok(out)
}

pub fn transport_basis<F: Field>(
    m: &MoveInstance,
    tc_before: &TwistedComplex<F>,
    rep_before: &Representation<F>,
    rep_after: &Representation<F>,
    h: &HomologyBasis<F::Elem>,
) -> Result<HomologyBasis<F::Elem>> {
    h.iter()
        .enumerate()
        .map(|(i, vs)| vs.iter().map(|z| transport_cycle(m, tc_before, rep_before, rep_after, i, z)).collect())
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct StepReport {
    pub step: usize,
    pub tets: usize,
    pub acyclic: bool,
    pub chi_p: i64,
    pub torsion: String,
    pub sign_refined: Option<String>,
    pub note: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct InvarianceReport {
    pub representation: String,
    pub steps: Vec<StepReport>,
    pub equal_up_to_sign: bool,
    /// Exact equality of sign-refined values over the steps where h and o were transported.
    pub sign_refined_equal: bool,
    pub first_violation: Option<usize>,
    /// Steps where transport failed and bases were recomputed.
    pub transport_failures: Vec<usize>,
    /// Acyclic steps with χ(P) ≠ 0.
    pub acyclic_with_nonzero_chi_p: Vec<usize>,
    /// Acyclic steps with χ(X) ≠ 0; always empty, since an acyclic complex
    /// over a field has Euler characteristic 0.
    pub acyclic_with_nonzero_chi_x: Vec<usize>,
}

/// Torsion at every spine along the walk, with the representation and the
/// homology data carried across each move.
pub fn invariance_suite_with<F: Field>(
    start: &BranchedSpine,
    walk: &[MoveInstance],
    rep0: Representation<F>,
    label: &str,
) -> Result<InvarianceReport> {
    let mut rep = rep0;
    let mut spine = start.clone();
    let mut h: Option<HomologyBasis<F::Elem>> = None;
    let mut o: Option<HomologyBasis<BigRational>> = None;
    let mut steps = Vec::new();
    let mut failures = Vec::new();
    let mut bad_chi = Vec::new();
    let mut bad_chi_x = Vec::new();
    let mut chain_values: Vec<(F::Elem, Option<F::Elem>, bool)> = Vec::new();
    let f = rep.field.clone();
    for step in 0..=walk.len() {
        let cx = build_complex(&spine);
        let tc = twisted_complex(&cx, &rep);
        let qc = rational_complex(&cx);
        let (_, betti) = crate::torsion::homology_dimensions(&tc);
        let acyclic = betti.iter().all(|&b| b == 0);
        let (chi_p, chi_x) = spine.euler_characteristics();
        if acyclic && chi_p != 0 {
            bad_chi.push(step);
        }
        if acyclic && chi_x != 0 {
            bad_chi_x.push(step);
        }
        let restarted = h.is_none() && step > 0 && !acyclic || o.is_none() && step > 0;
        if h.is_none() && !acyclic {
            h = Some(auto_homology_basis(&tc));
        }
        if o.is_none() {
            o = Some(auto_homology_basis(&qc));
        }
        let hb = if acyclic { None } else { h.as_ref() };
        let t = torsion(&tc, hb, &Strategy::First)?;
        let r = sign_refined_torsion(&tc, hb, &qc, o.as_ref().unwrap(), &Strategy::First)?;
        steps.push(StepReport {
            step,
            tets: spine.v(),
            acyclic,
            chi_p,
            torsion: f.format(&t.value),
            sign_refined: Some(f.format(&r.value)),
            note: None,
        });
        chain_values.push((t.value.clone(), Some(r.value.clone()), restarted));
        if step == walk.len() {
            break;
        }
        let m = &walk[step];
        let rep_after = transport_representation(m, &rep)?;
        if let Some(hv) = &h {
            match transport_basis(m, &tc, &rep, &rep_after, hv) {
                Ok(x) => h = Some(x),
                Err(e) => {
                    steps.last_mut().unwrap().note = Some(e.to_string());
                    failures.push(step);
                    h = None;
                }
            }
        }
        let q_before = trivial_like(&rep, &spine);
        let q_after = trivial_like(&rep_after, &m.after);
        match transport_basis(m, &qc, &q_before, &q_after, o.as_ref().unwrap()) {
            Ok(x) => o = Some(x),
            Err(e) => {
                steps.last_mut().unwrap().note = Some(e.to_string());
                if failures.last() != Some(&step) {
                    failures.push(step);
                }
                o = None;
            }
        }
        rep = rep_after;
        spine = m.after.clone();
    }
    let mut equal = true;
    let mut refined_equal = true;
    let mut first_violation = None;
    for k in 1..chain_values.len() {
        let (ref a, ref ra, _) = chain_values[k - 1];
        let (ref b, ref rb, restarted) = chain_values[k];
        if a != b {
            equal = false;
            first_violation.get_or_insert(k - 1);
        }
        if !restarted && !failures.contains(&(k - 1)) && ra != rb {
            refined_equal = false;
            first_violation.get_or_insert(k - 1);
        }
    }
    Ok(InvarianceReport {
        representation: label.into(),
        steps,
        equal_up_to_sign: equal,
        sign_refined_equal: refined_equal,
        first_violation,
        transport_failures: failures,
        acyclic_with_nonzero_chi_p: bad_chi,
        acyclic_with_nonzero_chi_x: bad_chi_x,
    })
}

fn trivial_like<F: Field>(_rep: &Representation<F>, s: &BranchedSpine) -> Representation<Rationals> {
    trivial_representation(&presentation(&build_complex(s)))
}

/// The harness for a representation kind built on the starting spine.
pub fn invariance_suite(start: &BranchedSpine, walk: &[MoveInstance], kind: &RepKind) -> Result<InvarianceReport> {
    let g = presentation(&build_complex(start));
    let label = kind.label();
    match kind {
        RepKind::Trivial => invariance_suite_with(start, walk, trivial_representation(&g), &label),
        RepKind::FreeAbelian => invariance_suite_with(start, walk, free_abelian_representation(&g), &label),
        RepKind::Cyclic { n, character } => {
            let rep = cyclic_representation(&g, *n, character.as_deref())?;
            invariance_suite_with(start, walk, rep, &label)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::census;
    use crate::moves::{random_walk, WalkOptions};

    #[test]
    fn single_moves_preserve_torsion() {
        let mut checked = 0;
        for s in census(2) {
            for seed in 0..3 {
                let Ok(walk) = random_walk(&s, 1, seed, &WalkOptions { h_null_only: true, max_tets: None }) else {
                    continue;
                };
                for kind in [RepKind::Trivial, RepKind::FreeAbelian, RepKind::Cyclic { n: 5, character: None }] {
                    let Ok(r) = invariance_suite(&s, &walk, &kind) else { continue };
                    assert!(r.equal_up_to_sign, "{kind:?} {:#?}", r.steps);
                    assert!(r.sign_refined_equal, "{kind:?} {:#?}", r.steps);
                    assert!(r.acyclic_with_nonzero_chi_x.is_empty());
                    checked += 1;
                }
            }
        }
        assert!(checked > 0);
    }
}
