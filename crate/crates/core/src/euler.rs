//! The Euler chain of the signed spider and the maw cochain.
//!
//! Every cell of X carries the oriented flow line from its source corner to
//! its sink corner; summed with the signs ε(c) this gives the integer 1-chain
//!
//!   Σ_R R̂  −  Σ_faces (source→sink edge)  +  Σ_tets (rank edge 0→3).
//!
//! Regions R of P are dual to edge classes, so R̂ is an edge generator.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::spider::{CellComplexX, GroupData, H1Class};
use crate::spine::BranchedSpine;
use crate::triangulation::edge_index;

/// Rank edges of a tetrahedron whose dual regions receive the maw
/// tangencies: the two routes 0→3 through the middle vertices, split as
/// (0→2, 1→3).
pub const TANGENT_RANK_EDGES: [(u8, u8); 2] = [(0, 2), (1, 3)];

/// Monotone edge paths from rank 0 to rank 3 inside a tetrahedron.
const TET_PATHS: [&[(u8, u8)]; 4] = [&[(0, 3)], &[(0, 1), (1, 3)], &[(0, 2), (2, 3)], &[(0, 1), (1, 2), (2, 3)]];

#[derive(Clone, Debug, Serialize)]
pub struct EulerData {
    #[serde(serialize_with = "ser_ints")]
    pub chain: Vec<BigInt>,
    pub chain_class: H1Class,
    pub tangency_counts: Vec<usize>,
    pub cochain: Vec<i64>,
}

fn ser_ints<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

fn path_chain(edges: usize, path: impl IntoIterator<Item = usize>) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); edges];
    for e in path {
        v[e] += 1;
    }
    v
}

/// Integer 1-chain of the signed spider, using the direct source→sink edge
/// in every face and tetrahedron.
pub fn euler_chain(cx: &CellComplexX) -> Vec<BigInt> {
    let mut c = vec![BigInt::from(1); cx.edges];
    for fe in &cx.face_edges {
        c[fe[2]] -= 1;
    }
    for es in &cx.tet_edges {
        c[es[edge_index(0, 3)]] += 1;
    }
    c
}

/// Checks that every admissible source→sink path in each face and
/// tetrahedron gives the same H₁ class as the direct edge.
pub fn check_path_independence(cx: &CellComplexX, g: &GroupData) -> Result<()> {
    let diff_zero = |a: &[BigInt], b: &[BigInt]| {
        let d: Vec<BigInt> = a.iter().zip(b).map(|(x, y)| x - y).collect();
        g.class_of(&d).is_zero()
    };
    for (k, fe) in cx.face_edges.iter().enumerate() {
        if !diff_zero(&path_chain(cx.edges, [fe[2]]), &path_chain(cx.edges, [fe[0], fe[1]])) {
            return Err(Error::InconsistentAnchor(format!("face {k}: boundary paths differ in homology")));
        }
    }
    for (t, es) in cx.tet_edges.iter().enumerate() {
        let direct = path_chain(cx.edges, [es[edge_index(0, 3)]]);
        for p in &TET_PATHS[1..] {
            let other = path_chain(cx.edges, p.iter().map(|&(i, j)| es[edge_index(i, j)]));
            if !diff_zero(&direct, &other) {
                return Err(Error::InconsistentAnchor(format!("tetrahedron {t}: boundary paths differ in homology")));
            }
        }
    }
    Ok(())
}

pub fn euler_chain_class(cx: &CellComplexX, g: &GroupData) -> Result<H1Class> {
    check_path_independence(cx, g)?;
    Ok(g.class_of(&euler_chain(cx)))
}

/// n(R) per region, counted with multiplicity over the spine vertices.
pub fn tangency_counts(cx: &CellComplexX) -> Vec<usize> {
    let mut n = vec![0usize; cx.edges];
    for es in &cx.tet_edges {
        for &(i, j) in &TANGENT_RANK_EDGES {
            n[es[edge_index(i, j)]] += 1;
        }
    }
    n
}

/// c_P(R) = 1 − n(R)/2. Fails if some n(R) is odd.
pub fn maw_cochain(cx: &CellComplexX) -> Result<Vec<i64>> {
    tangency_counts(cx)
        .into_iter()
        .enumerate()
        .map(|(r, n)| {
            if n % 2 == 1 {
                Err(Error::InconsistentAnchor(format!("region {r}: odd tangency count {n}")))
            } else {
                Ok(1 - (n / 2) as i64)
            }
        })
        .collect()
}

/// Whether Σ_R c_P(R)·R̂ equals the Euler chain as an integer chain.
pub fn cochain_matches_chain(cx: &CellComplexX, cochain: &[i64]) -> bool {
    let chain = euler_chain(cx);
    cochain.iter().zip(&chain).all(|(c, x)| BigInt::from(*c) == *x)
}

pub fn euler_data(s: &BranchedSpine) -> Result<EulerData> {
    let cx = crate::spider::build_complex(s);
    let g = crate::spider::presentation(&cx);
    let chain_class = euler_chain_class(&cx, &g)?;
    let cochain = maw_cochain(&cx)?;
    Ok(EulerData { chain: euler_chain(&cx), chain_class, tangency_counts: tangency_counts(&cx), cochain })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::census;
    use crate::spider::{build_complex, presentation};
    use proptest::prelude::*;

    #[test]
    fn corpus_coherence() {
        for n in 1..=3 {
            for s in census(n) {
                let cx = build_complex(&s);
                let g = presentation(&cx);
                check_path_independence(&cx, &g).unwrap();
                let c = maw_cochain(&cx).unwrap();
                assert!(cochain_matches_chain(&cx, &c));
                let d = euler_data(&s).unwrap();
                if g.describe() == "0" {
                    assert!(d.chain_class.is_zero());
                }
            }
        }
    }

    #[test]
    fn tangency_total_is_twice_vertex_count() {
        for s in census(2) {
            let cx = build_complex(&s);
            assert_eq!(tangency_counts(&cx).iter().sum::<usize>(), 2 * cx.tets);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn chain_is_relabelling_equivariant(idx in 0usize..1000, seed in any::<u64>()) {
            use rand::seq::SliceRandom;
            use rand::SeedableRng;
            let all = census(3);
            let s = &all[idx % all.len()];
            let mut perm: Vec<usize> = (0..s.v()).collect();
            perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
            let p = s.permute_tets(&perm);
            let (c0, c1) = (euler_chain(&build_complex(s)), euler_chain(&build_complex(&p)));
            let (t0, t1) = (s.triangulation(), p.triangulation());
            for cls in 0..t0.edge_class_count() {
                let r = t0.edge_rep(cls);
                prop_assert_eq!(&c0[cls], &c1[t1.edge_class_of(perm[r.tet], r.tail, r.head)]);
            }
            let (g0, g1) = (presentation(&build_complex(s)), presentation(&build_complex(&p)));
            prop_assert_eq!(g0.class_of(&c0).is_zero(), g1.class_of(&c1).is_zero());
        }
    }
}
