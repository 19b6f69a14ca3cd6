//! Branched spines, seen through their dual branched ideal triangulations.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::triangulation::{face_corners, perm_sign, Glue, Perm, Triangulation, EDGES};

/// A validated branched spine: triangulation, per-class edge directions and
/// per-tetrahedron orientation bits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchedSpine {
    tri: Triangulation,
    /// Per edge class: true when the class points along its representative.
    dir: Vec<bool>,
    orient: Vec<i8>,
    /// `rank[t][v]` is 0 at the source and 3 at the sink.
    rank: Vec<[u8; 4]>,
    /// Inverse of `rank`: `order[t][r]` is the vertex of rank `r`.
    order: Vec<[u8; 4]>,
}

/// Direction of every tetrahedron edge `i -> j` (`i < j`) implied by `dir`.
fn tet_tournament(tri: &Triangulation, dir: &[bool], t: usize) -> [[bool; 4]; 4] {
    let mut out = [[false; 4]; 4];
    for &(i, j) in &EDGES {
        let c = tri.edge_class_of(t, i, j);
        let forward = tri.edge_agrees(t, i, j) == dir[c];
        out[i as usize][j as usize] = forward;
        out[j as usize][i as usize] = !forward;
    }
    out
}

/// Ranks from out-degrees, or the first cyclic face.
fn ranks_of(points: &[[bool; 4]; 4]) -> std::result::Result<[u8; 4], u8> {
    for f in 0..4u8 {
        let [a, b, c] = face_corners(f);
        let (a, b, c) = (a as usize, b as usize, c as usize);
        if (points[a][b] && points[b][c] && points[c][a]) || (points[b][a] && points[c][b] && points[a][c]) {
            return Err(f);
        }
    }
    let mut rank = [0u8; 4];
    for v in 0..4 {
        let out = (0..4).filter(|&w| w != v && points[v][w]).count() as u8;
        rank[v] = 3 - out;
    }
    Ok(rank)
}

impl BranchedSpine {
    /// Validate a branching and orientation on `tri`. Without explicit bits the
    /// orientation with tetrahedron 0 positive is used.
    pub fn new(tri: Triangulation, dir: Vec<bool>, orient: Option<Vec<i8>>) -> Result<Self> {
        assert_eq!(dir.len(), tri.edge_class_count());
        let orient = match orient {
            Some(o) => {
                if tri.orientation().is_none() {
                    return Err(Error::NonOrientable("no orientation makes all gluings reversing".into()));
                }
                if !tri.orientation_compatible(&o) {
                    return Err(Error::NonOrientable("orientation bits are incompatible with the gluings".into()));
                }
                o
            }
            None => tri
                .orientation()
                .ok_or_else(|| Error::NonOrientable("no orientation makes all gluings reversing".into()))?,
        };
        let mut rank = Vec::with_capacity(tri.tet_count());
        let mut order = Vec::with_capacity(tri.tet_count());
        for t in 0..tri.tet_count() {
            let r = ranks_of(&tet_tournament(&tri, &dir, t)).map_err(|f| Error::CyclicTriangle { tet: t, face: f })?;
            let mut o = [0u8; 4];
            for v in 0..4 {
                o[r[v] as usize] = v as u8;
            }
            rank.push(r);
            order.push(o);
        }
        Ok(BranchedSpine { tri, dir, orient, rank, order })
    }

    pub fn triangulation(&self) -> &Triangulation {
        &self.tri
    }

    pub fn directions(&self) -> &[bool] {
        &self.dir
    }

    pub fn orientation(&self) -> &[i8] {
        &self.orient
    }

    /// Spine vertices (tetrahedra).
    pub fn v(&self) -> usize {
        self.tri.tet_count()
    }

    /// Spine edges (face classes).
    pub fn f(&self) -> usize {
        self.tri.face_class_count()
    }

    /// Spine regions (edge classes).
    pub fn e(&self) -> usize {
        self.tri.edge_class_count()
    }

    /// Whether edge `i -> j` of tetrahedron `t` follows the branching.
    pub fn points(&self, t: usize, i: u8, j: u8) -> bool {
        self.rank[t][i as usize] < self.rank[t][j as usize]
    }

    pub fn rank(&self, t: usize) -> [u8; 4] {
        self.rank[t]
    }

    pub fn order(&self, t: usize) -> [u8; 4] {
        self.order[t]
    }

    /// Ambient orientation of tetrahedron `t` read in rank order.
    pub fn tet_sign(&self, t: usize) -> i8 {
        self.orient[t] * perm_sign(&self.order[t])
    }

    /// Corners of face `f` of tetrahedron `t` from source to sink.
    pub fn face_order(&self, t: usize, f: u8) -> [u8; 3] {
        let mut c = face_corners(f);
        c.sort_by_key(|&v| self.rank[t][v as usize]);
        c
    }

    /// (source, sink) of a tetrahedron.
    pub fn tet_source_sink(&self, t: usize) -> (u8, u8) {
        (self.order[t][0], self.order[t][3])
    }

    /// (source, sink) of face `f` of tetrahedron `t`.
    pub fn face_source_sink(&self, t: usize, f: u8) -> (u8, u8) {
        let o = self.face_order(t, f);
        (o[0], o[2])
    }

    /// χ(P) and χ(X(P)).
    pub fn euler_characteristics(&self) -> (i64, i64) {
        let chi_p = self.e() as i64 - self.v() as i64;
        (chi_p, 1 - chi_p)
    }

    pub fn boundary_components(&self) -> BoundaryReport {
        let tri = &self.tri;
        let k = tri.vertex_class_count();
        let mut corners = vec![0i64; k];
        for t in 0..tri.tet_count() {
            for v in 0..4u8 {
                corners[tri.vertex_class_of(t, v)] += 1;
            }
        }
        // Each edge class contributes one link vertex at each of its ends.
        let mut link_vertices = vec![0i64; k];
        for c in 0..tri.edge_class_count() {
            let r = tri.edge_rep(c);
            link_vertices[tri.vertex_class_of(r.tet, r.tail)] += 1;
            link_vertices[tri.vertex_class_of(r.tet, r.head)] += 1;
        }
        let components = (0..k)
            .map(|i| {
                let chi = link_vertices[i] - 3 * corners[i] / 2 + corners[i];
                BoundaryComponent { triangles: corners[i] as usize, euler_characteristic: chi, genus: (2 - chi) / 2 }
            })
            .collect();
        BoundaryReport { components }
    }

    /// The spine relabelled so that every tetrahedron's vertex labels are its ranks.
    pub fn relabel_by_rank(&self) -> BranchedSpine {
        let n = self.v();
        let mut glue = Vec::with_capacity(n);
        for t in 0..n {
            let mut faces = [Glue { tet: 0, face: 0, perm: [0; 4] }; 4];
            for r in 0..4u8 {
                let old = self.tri.glue(t, self.order[t][r as usize]);
                let mut p: Perm = [0; 4];
                for s in 0..4u8 {
                    let v = self.order[t][s as usize];
                    p[s as usize] = self.rank[old.tet][old.perm[v as usize] as usize];
                }
                faces[r as usize] = Glue { tet: old.tet, face: p[r as usize], perm: p };
            }
            glue.push(faces);
        }
        let tri = Triangulation::new(glue).expect("relabelling preserves validity");
        let orient: Vec<i8> = (0..n).map(|t| self.tet_sign(t)).collect();
        let dir = rank_directions(&tri);
        BranchedSpine::new(tri, dir, Some(orient)).expect("relabelling preserves the branching")
    }

    /// Lexicographically least breadth-first encoding over all start
    /// tetrahedra; equal for isomorphic branched oriented spines.
    pub fn canonical_form(&self) -> Vec<u32> {
        let s = self.relabel_by_rank();
        (0..s.v()).map(|start| s.encode_from(start)).min().unwrap()
    }

    fn encode_from(&self, start: usize) -> Vec<u32> {
        let n = self.v();
        let mut new_of = vec![u32::MAX; n];
        let mut old_of = Vec::with_capacity(n);
        new_of[start] = 0;
        old_of.push(start);
        let mut out = Vec::with_capacity(n * 9);
        let mut i = 0;
        while i < old_of.len() {
            let t = old_of[i];
            out.push(if self.orient[t] > 0 { 1 } else { 0 });
            for f in 0..4u8 {
                let g = self.tri.glue(t, f);
                if new_of[g.tet] == u32::MAX {
                    new_of[g.tet] = old_of.len() as u32;
                    old_of.push(g.tet);
                }
                out.push(new_of[g.tet]);
                out.push(g.face as u32);
            }
            i += 1;
        }
        out
    }

    /// The same triangulation with every edge reversed.
    pub fn reversed(&self) -> BranchedSpine {
        let dir = self.dir.iter().map(|d| !d).collect();
        BranchedSpine::new(self.tri.clone(), dir, Some(self.orient.clone())).expect("reversal preserves validity")
    }

    /// Relabel tetrahedra by `perm` (old index -> new index).
    pub fn permute_tets(&self, perm: &[usize]) -> BranchedSpine {
        let n = self.v();
        let mut glue = vec![[Glue { tet: 0, face: 0, perm: [0; 4] }; 4]; n];
        let mut orient = vec![0i8; n];
        for t in 0..n {
            for f in 0..4 {
                let g = self.tri.gluings()[t][f];
                glue[perm[t]][f] = Glue { tet: perm[g.tet], ..g };
            }
            orient[perm[t]] = self.orient[t];
        }
        let tri = Triangulation::new(glue).expect("tetrahedron relabelling preserves validity");
        let dir = self.directions_on(&tri, |t| perm.iter().position(|&p| p == t).unwrap());
        BranchedSpine::new(tri, dir, Some(orient)).expect("tetrahedron relabelling preserves branching")
    }

    /// Edge-class directions on `tri`, read from this spine through a map
    /// from tetrahedra of `tri` to tetrahedra of `self` with identical labels.
    fn directions_on(&self, tri: &Triangulation, old_tet: impl Fn(usize) -> usize) -> Vec<bool> {
        (0..tri.edge_class_count())
            .map(|c| {
                let r = tri.edge_rep(c);
                self.points(old_tet(r.tet), r.tail, r.head)
            })
            .collect()
    }
}

/// Directions on a triangulation whose labels already are ranks.
pub(crate) fn rank_directions(tri: &Triangulation) -> Vec<bool> {
    (0..tri.edge_class_count())
        .map(|c| {
            let r = tri.edge_rep(c);
            r.tail < r.head
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundaryComponent {
    pub triangles: usize,
    pub euler_characteristic: i64,
    pub genus: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundaryReport {
    pub components: Vec<BoundaryComponent>,
}

impl BoundaryReport {
    pub fn total_euler_characteristic(&self) -> i64 {
        self.components.iter().map(|c| c.euler_characteristic).sum()
    }
}

/// All branchings of `tri` in binary counting order over edge classes
/// (class 0 is the least significant bit; a set bit reverses the class).
pub fn enumerate_branchings(tri: &Triangulation) -> Vec<Vec<bool>> {
    let e = tri.edge_class_count();
    assert!(e < 32, "too many edge classes to enumerate");
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << e) {
        let dir: Vec<bool> = (0..e).map(|c| mask >> c & 1 == 0).collect();
        if (0..tri.tet_count()).all(|t| ranks_of(&tet_tournament(tri, &dir, t)).is_ok()) {
            out.push(dir);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triangulation::perm_inverse;

    pub(crate) fn one_tet_spine(pairs: [(u8, u8, Perm); 2]) -> Triangulation {
        let mut g = [Glue { tet: 0, face: 0, perm: [0, 1, 2, 3] }; 4];
        for (f, f2, p) in pairs {
            g[f as usize] = Glue { tet: 0, face: f2, perm: p };
            g[f2 as usize] = Glue { tet: 0, face: f, perm: perm_inverse(&p) };
        }
        Triangulation::new(vec![g]).unwrap()
    }

    #[test]
    fn branchings_closed_under_reversal() {
        let tri = one_tet_spine([(0, 1, [1, 0, 2, 3]), (2, 3, [0, 1, 3, 2])]);
        let bs = enumerate_branchings(&tri);
        assert!(!bs.is_empty());
        for b in &bs {
            let rev: Vec<bool> = b.iter().map(|x| !x).collect();
            assert!(bs.contains(&rev));
            let s = BranchedSpine::new(tri.clone(), b.clone(), None).unwrap();
            let mut r = s.rank(0);
            r.sort();
            assert_eq!(r, [0, 1, 2, 3]);
        }
    }

    #[test]
    fn face_source_and_sink() {
        let tri = one_tet_spine([(0, 1, [1, 0, 2, 3]), (2, 3, [0, 1, 3, 2])]);
        let b = enumerate_branchings(&tri).remove(0);
        let s = BranchedSpine::new(tri, b, None).unwrap();
        let (src, snk) = s.tet_source_sink(0);
        for f in 0..4u8 {
            let (fs, fk) = s.face_source_sink(0, f);
            if f != snk {
                assert_eq!(fk, snk);
            }
            if f != src {
                assert_eq!(fs, src);
            }
        }
    }

    #[test]
    fn vertex_link_sum_matches_euler_characteristic() {
        let tri = one_tet_spine([(0, 1, [1, 0, 2, 3]), (2, 3, [0, 1, 3, 2])]);
        let b = enumerate_branchings(&tri).remove(0);
        let s = BranchedSpine::new(tri, b, None).unwrap();
        let (_, chi_x) = s.euler_characteristics();
        assert_eq!(s.boundary_components().total_euler_characteristic(), 2 * (1 - chi_x));
        assert_eq!(s.f(), 2 * s.v());
    }
}
