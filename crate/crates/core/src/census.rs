//! Enumeration of branched spines with a given number of vertices.
//!
//! Labelling every tetrahedron by its branching ranks forces each gluing to
//! be the order-preserving bijection between the two faces, so a branched
//! triangulation is just a perfect matching of the `4n` faces. Each
//! orientable connected matching carries two orientations.

use std::collections::BTreeMap;

use crate::spine::{rank_directions, BranchedSpine};
use crate::triangulation::{face_corners, Glue, Perm, Triangulation};

fn order_preserving(f: u8, g: u8) -> Perm {
    let (a, b) = (face_corners(f), face_corners(g));
    let mut p = [0u8; 4];
    for k in 0..3 {
        p[a[k] as usize] = b[k];
    }
    p[f as usize] = g;
    p
}

fn matchings(free: &mut Vec<bool>, pairs: &mut Vec<(usize, usize)>, out: &mut dyn FnMut(&[(usize, usize)])) {
    let Some(a) = free.iter().position(|&x| x) else {
        out(pairs);
        return;
    };
    free[a] = false;
    for b in a + 1..free.len() {
        if free[b] {
            free[b] = false;
            pairs.push((a, b));
            matchings(free, pairs, out);
            pairs.pop();
            free[b] = true;
        }
    }
    free[a] = true;
}

/// All branched spines with `n` vertices up to isomorphism, sorted by
/// canonical form.
pub fn census(n: usize) -> Vec<BranchedSpine> {
    assert!(n >= 1);
    let mut found: BTreeMap<Vec<u32>, BranchedSpine> = BTreeMap::new();
    let mut free = vec![true; 4 * n];
    let mut pairs = Vec::with_capacity(2 * n);
    matchings(&mut free, &mut pairs, &mut |pairs| {
        let mut glue = vec![[Glue { tet: 0, face: 0, perm: [0; 4] }; 4]; n];
        for &(a, b) in pairs {
            let (ta, fa, tb, fb) = (a / 4, (a % 4) as u8, b / 4, (b % 4) as u8);
            glue[ta][fa as usize] = Glue { tet: tb, face: fb, perm: order_preserving(fa, fb) };
            glue[tb][fb as usize] = Glue { tet: ta, face: fa, perm: order_preserving(fb, fa) };
        }
        let Ok(tri) = Triangulation::new(glue) else {
            return;
        };
        let Some(o) = tri.orientation() else {
            return;
        };
        let dir = rank_directions(&tri);
        for sign in [1i8, -1] {
            let orient = o.iter().map(|x| x * sign).collect();
            if let Ok(s) = BranchedSpine::new(tri.clone(), dir.clone(), Some(orient)) {
                found.entry(s.canonical_form()).or_insert(s);
            }
        }
    });
    found.into_values().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_vertex_census_has_four_spines() {
        let c = census(1);
        assert_eq!(c.len(), 4);
        let mut counts: Vec<usize> = c.iter().map(|s| s.boundary_components().components.len()).collect();
        counts.sort();
        assert_eq!(counts, vec![1, 1, 2, 2]);
    }
}
