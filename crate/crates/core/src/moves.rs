//! Branched 2-3 and 3-2 moves, the h-cycle table, rigidity and seeded walks.
//!
//! Both moves rewrite a bipyramid with apexes `a`, `c` and equator `b`, `e`,
//! `d`. The equator is labelled by its branching order: `b` source, `e`
//! middle, `d` sink. On the two-tetrahedron side `a` is the apex of the
//! tetrahedron holding the first side of the equatorial face class.

use num_bigint::BigInt;
use num_traits::Zero;
use rand::RngCore;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::io::{MoveLog, MoveRecord};
use crate::spider::{build_complex, presentation, H1Class};
use crate::spine::BranchedSpine;
use crate::triangulation::{face_corners, perm_sign, Glue, Triangulation};

pub const A: usize = 0;
pub const B: usize = 1;
pub const C: usize = 2;
pub const D: usize = 3;
pub const E: usize = 4;
pub const LOCAL_NAMES: [char; 5] = ['a', 'b', 'c', 'd', 'e'];

pub type LocalDirs = [[bool; 5]; 5];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MoveKind {
    Positive,
    Negative,
}

/// A tetrahedron of the bipyramid: its index and local vertex per label.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SiteTet {
    pub tet: usize,
    pub local: [usize; 4],
}

impl SiteTet {
    fn label_of(&self, u: usize) -> Option<u8> {
        self.local.iter().position(|&x| x == u).map(|p| p as u8)
    }

    fn contains(&self, u: usize) -> bool {
        self.local.contains(&u)
    }
}

#[derive(Clone, Debug)]
pub struct MoveInstance {
    pub kind: MoveKind,
    /// Face class (positive) or edge class (negative) in `before`.
    pub site: usize,
    /// Positive moves: 0 when the new edge runs a→c, 1 when c→a.
    pub variant: Option<u8>,
    pub before: BranchedSpine,
    pub after: BranchedSpine,
    pub tet_map: Vec<Option<usize>>,
    pub face_map: Vec<Option<usize>>,
    pub edge_map: Vec<Option<usize>>,
    /// Branching among the five bipyramid vertices, central edge included.
    pub local_dir: LocalDirs,
    pub before_site: Vec<SiteTet>,
    pub after_site: Vec<SiteTet>,
}

impl MoveInstance {
    pub fn record(&self) -> MoveRecord {
        match self.kind {
            MoveKind::Positive => MoveRecord::Positive { face: self.site, variant: self.variant.unwrap_or(0) as usize },
            MoveKind::Negative => MoveRecord::Negative { edge: self.site },
        }
    }

    /// Site tetrahedra of the two-tetrahedron side and that spine.
    pub fn two_side(&self) -> (&BranchedSpine, &[SiteTet]) {
        match self.kind {
            MoveKind::Positive => (&self.before, &self.before_site),
            MoveKind::Negative => (&self.after, &self.after_site),
        }
    }

    pub fn three_side(&self) -> (&BranchedSpine, &[SiteTet]) {
        match self.kind {
            MoveKind::Positive => (&self.after, &self.after_site),
            MoveKind::Negative => (&self.before, &self.before_site),
        }
    }

    /// Edge class of the local pair `u`, `v` in `before` (`after_side` false)
    /// or in `after`, when some site tetrahedron contains both.
    pub fn local_edge_class(&self, after_side: bool, u: usize, v: usize) -> Option<usize> {
        let (s, site) = if after_side { (&self.after, &self.after_site) } else { (&self.before, &self.before_site) };
        site.iter().find(|t| t.contains(u) && t.contains(v)).map(|t| {
            s.triangulation().edge_class_of(t.tet, t.label_of(u).unwrap(), t.label_of(v).unwrap())
        })
    }
}

fn cyclic3(d: &LocalDirs, u: usize, v: usize, w: usize) -> bool {
    (d[u][v] && d[v][w] && d[w][u]) || (d[v][u] && d[w][v] && d[u][w])
}

/// Local vertices sorted from source to sink.
fn rank_sort(d: &LocalDirs, verts: [usize; 4]) -> [usize; 4] {
    let mut v = verts;
    v.sort_by_key(|&u| verts.iter().filter(|&&w| w != u && d[w][u]).count());
    v
}

/// Orientation of an ordered 4-tuple of local vertices inside a site tetrahedron.
fn tuple_orientation(s: &BranchedSpine, t: &SiteTet, tuple: [usize; 4]) -> i8 {
    let labels = tuple.map(|u| t.label_of(u).expect("vertex in tetrahedron"));
    s.orientation()[t.tet] * perm_sign(&labels)
}

/// Sign of the rearrangement taking `from` to `to` (same elements).
fn rearrangement_sign(from: [usize; 4], to: [usize; 4]) -> i8 {
    let p = to.map(|u| from.iter().position(|&x| x == u).expect("same elements") as u8);
    perm_sign(&p)
}

struct NewTet {
    verts: [usize; 4],
    orient: i8,
}

struct Rewrite {
    after: BranchedSpine,
    tet_map: Vec<Option<usize>>,
    face_map: Vec<Option<usize>>,
    edge_map: Vec<Option<usize>>,
    after_site: Vec<SiteTet>,
}

fn face_set(local: &[usize; 4], f: u8) -> [usize; 3] {
    let mut s = face_corners(f).map(|l| local[l as usize]);
    s.sort();
    s
}

/// Replace the site tetrahedra `old` by `new` (vertices in rank order).
fn rewrite(s: &BranchedSpine, old: &[SiteTet], new: &[NewTet]) -> Result<Rewrite> {
    let tri = s.triangulation();
    let n_old = tri.tet_count();
    let removed = |t: usize| old.iter().position(|o| o.tet == t);
    let mut tet_map = vec![None; n_old];
    let mut survivors = Vec::new();
    for t in 0..n_old {
        if removed(t).is_none() {
            tet_map[t] = Some(survivors.len());
            survivors.push(t);
        }
    }
    let base = survivors.len();
    let new_site: Vec<SiteTet> = new.iter().enumerate().map(|(k, n)| SiteTet { tet: base + k, local: n.verts }).collect();
    // Owner (new tet, face) of a sorted local vertex triple on the boundary.
    let owner = |set: &[usize; 3], except: Option<usize>| -> Option<(usize, u8)> {
        new_site.iter().enumerate().find_map(|(k, nt)| {
            if Some(k) == except {
                return None;
            }
            (0..4u8).find(|&f| face_set(&nt.local, f) == *set).map(|f| (k, f))
        })
    };
    let mut glue: Vec<[Glue; 4]> = Vec::with_capacity(base + new.len());
    for &t in &survivors {
        let mut row = tri.gluings()[t];
        for f in 0..4u8 {
            let g = tri.glue(t, f);
            if let Some(oi) = removed(g.tet) {
                let ot = &old[oi];
                let set = face_set(&ot.local, g.face);
                let (k, nf) = owner(&set, None).ok_or_else(|| Error::NotApplicable("boundary face lost".into()))?;
                let nt = &new_site[k];
                let mut perm = [0u8; 4];
                for l in 0..4u8 {
                    perm[l as usize] = if l == f { nf } else { nt.label_of(ot.local[g.perm[l as usize] as usize]).unwrap() };
                }
                row[f as usize] = Glue { tet: base + k, face: nf, perm };
            } else {
                row[f as usize] = Glue { tet: tet_map[g.tet].unwrap(), face: g.face, perm: g.perm };
            }
        }
        glue.push(row);
    }
    for (k, nt) in new_site.iter().enumerate() {
        let mut row = [Glue { tet: 0, face: 0, perm: [0, 1, 2, 3] }; 4];
        for f in 0..4u8 {
            let set = face_set(&nt.local, f);
            if let Some((k2, f2)) = owner(&set, Some(k)) {
                let other = &new_site[k2];
                let mut perm = [0u8; 4];
                for l in 0..4u8 {
                    perm[l as usize] = if l == f { f2 } else { other.label_of(nt.local[l as usize]).unwrap() };
                }
                row[f as usize] = Glue { tet: base + k2, face: f2, perm };
                continue;
            }
            let (ot, of) = old
                .iter()
                .find_map(|ot| (0..4u8).find(|&g| face_set(&ot.local, g) == set).map(|g| (ot, g)))
                .ok_or_else(|| Error::NotApplicable("new face has no old counterpart".into()))?;
            let g = tri.glue(ot.tet, of);
            let mut perm = [0u8; 4];
            let (ptet, pface);
            if let Some(pi) = removed(g.tet) {
                let pt = &old[pi];
                let pset = face_set(&pt.local, g.face);
                let (k2, f2) = owner(&pset, None).ok_or_else(|| Error::NotApplicable("boundary face lost".into()))?;
                let other = &new_site[k2];
                for l in 0..4u8 {
                    perm[l as usize] = if l == f {
                        f2
                    } else {
                        let x = ot.label_of(nt.local[l as usize]).unwrap();
                        other.label_of(pt.local[g.perm[x as usize] as usize]).unwrap()
                    };
                }
                ptet = base + k2;
                pface = f2;
            } else {
                for l in 0..4u8 {
                    perm[l as usize] = if l == f {
                        g.face
                    } else {
                        g.perm[ot.label_of(nt.local[l as usize]).unwrap() as usize]
                    };
                }
                ptet = tet_map[g.tet].unwrap();
                pface = g.face;
            }
            row[f as usize] = Glue { tet: ptet, face: pface, perm };
        }
        glue.push(row);
    }
    let new_tri = Triangulation::new(glue).map_err(|e| match e {
        Error::NonStandardDual { .. } => Error::ResultNonStandard(e.to_string()),
        other => Error::NotApplicable(format!("degenerate identifications: {other}")),
    })?;
    let mut orient: Vec<i8> = survivors.iter().map(|&t| s.orientation()[t]).collect();
    orient.extend(new.iter().map(|n| n.orient));
    let dir: Vec<bool> = (0..new_tri.edge_class_count())
        .map(|c| {
            let r = new_tri.edge_rep(c);
            if r.tet < base {
                s.points(survivors[r.tet], r.tail, r.head)
            } else {
                r.tail < r.head
            }
        })
        .collect();
    let after = BranchedSpine::new(new_tri, dir, Some(orient)).map_err(|e| Error::ResultNonStandard(e.to_string()))?;
    let at = after.triangulation();
    let face_map = (0..tri.face_class_count())
        .map(|k| {
            let (t, f) = tri.face_members(k)[0];
            match removed(t) {
                None => Some(at.face_class_of(tet_map[t].unwrap(), f)),
                Some(oi) => owner(&face_set(&old[oi].local, f), None).map(|(k2, f2)| at.face_class_of(base + k2, f2)),
            }
        })
        .collect();
    let edge_map = (0..tri.edge_class_count())
        .map(|c| {
            let r = tri.edge_rep(c);
            match removed(r.tet) {
                None => Some(at.edge_class_of(tet_map[r.tet].unwrap(), r.tail, r.head)),
                Some(oi) => {
                    let (u, v) = (old[oi].local[r.tail as usize], old[oi].local[r.head as usize]);
                    new_site
                        .iter()
                        .find(|n| n.contains(u) && n.contains(v))
                        .map(|n| at.edge_class_of(n.tet, n.label_of(u).unwrap(), n.label_of(v).unwrap()))
                }
            }
        })
        .collect();
    Ok(Rewrite { after, tet_map, face_map, edge_map, after_site: new_site })
}

/// Local directions among the vertices of the given site tetrahedra.
fn collect_dirs(s: &BranchedSpine, site: &[SiteTet]) -> (LocalDirs, [[bool; 5]; 5]) {
    let mut d = [[false; 5]; 5];
    let mut known = [[false; 5]; 5];
    for t in site {
        for i in 0..4u8 {
            for j in 0..4u8 {
                if i != j {
                    let (u, v) = (t.local[i as usize], t.local[j as usize]);
                    d[u][v] = s.points(t.tet, i, j);
                    known[u][v] = true;
                }
            }
        }
    }
    (d, known)
}

/// The two sides of face class `k`, labelled as a bipyramid.
fn two_side_labels(s: &BranchedSpine, k: usize) -> Result<[SiteTet; 2]> {
    let tri = s.triangulation();
    let [(t1, f1), (t2, f2)] = tri.face_members(k);
    if t1 == t2 {
        return Err(Error::SelfAdjacentFace(k));
    }
    let g = tri.glue(t1, f1);
    let [b1, e1, d1] = s.face_order(t1, f1);
    let mut l1 = [0usize; 4];
    l1[f1 as usize] = A;
    l1[b1 as usize] = B;
    l1[e1 as usize] = E;
    l1[d1 as usize] = D;
    let mut l2 = [0usize; 4];
    l2[f2 as usize] = C;
    for x in [b1, e1, d1] {
        l2[g.perm[x as usize] as usize] = l1[x as usize];
    }
    Ok([SiteTet { tet: t1, local: l1 }, SiteTet { tet: t2, local: l2 }])
}

fn positive_variant(s: &BranchedSpine, k: usize, site: &[SiteTet; 2], variant: u8) -> Result<MoveInstance> {
    let (mut d, _) = collect_dirs(s, site);
    d[A][C] = variant == 0;
    d[C][A] = variant != 0;
    if [B, D, E].iter().any(|&x| cyclic3(&d, A, C, x)) {
        return Err(Error::NotApplicable(format!("variant {variant} creates a cyclic triangle")));
    }
    let equator = [B, D, E];
    let new: Vec<NewTet> = equator
        .iter()
        .map(|&z| {
            let xy: Vec<usize> = equator.iter().copied().filter(|&w| w != z).collect();
            let (x, y) = (xy[0], xy[1]);
            let o = tuple_orientation(s, &site[0], [A, x, y, z]);
            let verts = rank_sort(&d, [A, C, x, y]);
            NewTet { verts, orient: o * rearrangement_sign([A, x, y, C], verts) }
        })
        .collect();
    let rw = rewrite(s, site, &new)?;
    Ok(MoveInstance {
        kind: MoveKind::Positive,
        site: k,
        variant: Some(variant),
        before: s.clone(),
        after: rw.after,
        tet_map: rw.tet_map,
        face_map: rw.face_map,
        edge_map: rw.edge_map,
        local_dir: d,
        before_site: site.to_vec(),
        after_site: rw.after_site,
    })
}

/// All branched 2→3 moves across face class `k`: zero, one or two variants.
pub fn apply_positive(s: &BranchedSpine, k: usize) -> Result<Vec<MoveInstance>> {
    if k >= s.f() {
        return Err(Error::NotApplicable(format!("no face class {k}")));
    }
    let site = two_side_labels(s, k)?;
    let mut out = Vec::new();
    for variant in 0..2u8 {
        match positive_variant(s, k, &site, variant) {
            Ok(m) => out.push(m),
            Err(Error::NotApplicable(_)) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

/// One positive variant, erroring when it is not valid.
pub fn apply_positive_variant(s: &BranchedSpine, k: usize, variant: u8) -> Result<MoveInstance> {
    if k >= s.f() {
        return Err(Error::NotApplicable(format!("no face class {k}")));
    }
    if variant > 1 {
        return Err(Error::NotApplicable(format!("variant must be 0 or 1, got {variant}")));
    }
    let site = two_side_labels(s, k)?;
    positive_variant(s, k, &site, variant)
}

/// The 3→2 move removing edge class `c`.
pub fn apply_negative(s: &BranchedSpine, c: usize) -> Result<MoveInstance> {
    let tri = s.triangulation();
    if c >= s.e() {
        return Err(Error::NotApplicable(format!("no edge class {c}")));
    }
    let members = tri.edge_members(c);
    if members.len() != 3 {
        return Err(Error::NotApplicable(format!("edge class {c} has valence {}", members.len())));
    }
    let tets: Vec<usize> = members.iter().map(|m| m.tet).collect();
    if tets[0] == tets[1] || tets[1] == tets[2] || tets[0] == tets[2] {
        return Err(Error::NotApplicable(format!("edge class {c} meets a tetrahedron twice")));
    }
    let m0 = members[0];
    let u0 = m0.tet;
    let others: Vec<u8> = (0..4u8).filter(|&l| l != m0.tail && l != m0.head).collect();
    let (p, q) = (others[0], others[1]);
    // Provisional names: tail → A, head → C, p → B, q → E, far vertex → D.
    let mut l0 = [0usize; 4];
    l0[m0.tail as usize] = A;
    l0[m0.head as usize] = C;
    l0[p as usize] = B;
    l0[q as usize] = E;
    let across = |from: &[usize; 4], t: usize, f: u8| -> SiteTet {
        let g = tri.glue(t, f);
        let mut l = [0usize; 4];
        for x in 0..4u8 {
            l[g.perm[x as usize] as usize] = if x == f { D } else { from[x as usize] };
        }
        SiteTet { tet: g.tet, local: l }
    };
    let s1 = across(&l0, u0, p);
    let s2 = across(&l0, u0, q);
    let s0 = SiteTet { tet: u0, local: l0 };
    let degenerate = || Error::NotApplicable(format!("edge class {c} is not surrounded by a bipyramid"));
    if s1.tet == u0 || s2.tet == u0 || s1.tet == s2.tet || !tets.contains(&s1.tet) || !tets.contains(&s2.tet) {
        return Err(degenerate());
    }
    // The third internal face must match the labels coming from both sides.
    let f12 = s1.label_of(E).ok_or_else(degenerate)?;
    let g = tri.glue(s1.tet, f12);
    if g.tet != s2.tet {
        return Err(degenerate());
    }
    for x in 0..4u8 {
        if x != f12 && s2.local[g.perm[x as usize] as usize] != s1.local[x as usize] {
            return Err(degenerate());
        }
    }
    let site = vec![s0, s1, s2];
    let (d0, _) = collect_dirs(s, &site);
    if cyclic3(&d0, B, E, D) {
        return Err(Error::NotApplicable("equator triangle is cyclic".into()));
    }
    // Rename the equator by branching order.
    let indeg = |u: usize| [B, E, D].iter().filter(|&&w| w != u && d0[w][u]).count();
    let mut eq = [B, E, D];
    eq.sort_by_key(|&u| indeg(u));
    let mut rename = [A, B, C, D, E];
    rename[eq[0]] = B;
    rename[eq[1]] = E;
    rename[eq[2]] = D;
    let relabel = |st: &SiteTet, rn: &[usize; 5]| SiteTet { tet: st.tet, local: st.local.map(|u| rn[u]) };
    let mut site: Vec<SiteTet> = site.iter().map(|st| relabel(st, &rename)).collect();
    let (mut d, _) = collect_dirs(s, &site);
    let build = |site: &[SiteTet], d: &LocalDirs| -> Result<Rewrite> {
        let u_ac = site.iter().find(|t| t.contains(B) && t.contains(E)).expect("tetrahedron over b e");
        let new: Vec<NewTet> = [A, C]
            .iter()
            .map(|&apex| {
                let other = if apex == A { C } else { A };
                let o = tuple_orientation(s, u_ac, [apex, B, E, other]);
                let verts = rank_sort(d, [apex, B, E, D]);
                NewTet { verts, orient: o * rearrangement_sign([apex, B, E, D], verts) }
            })
            .collect();
        rewrite(s, site, &new)
    };
    let mut rw = build(&site, &d)?;
    // `a` must be the apex on the first side of the new face class.
    let k_new = rw.after.triangulation().face_class_of(rw.after_site[0].tet, rw.after_site[0].label_of(A).unwrap());
    let first = rw.after.triangulation().face_members(k_new)[0].0;
    if first != rw.after_site[0].tet {
        let swap = [C, B, A, D, E];
        site = site.iter().map(|st| relabel(st, &swap)).collect();
        d = collect_dirs(s, &site).0;
        rw = build(&site, &d)?;
    }
    Ok(MoveInstance {
        kind: MoveKind::Negative,
        site: c,
        variant: None,
        before: s.clone(),
        after: rw.after,
        tet_map: rw.tet_map,
        face_map: rw.face_map,
        edge_map: rw.edge_map,
        local_dir: d,
        before_site: site,
        after_site: rw.after_site,
    })
}

/// True when no branched 2→3 move applies.
pub fn is_rigid(s: &BranchedSpine) -> bool {
    (0..s.f()).all(|k| !matches!(apply_positive(s, k), Ok(v) if !v.is_empty()))
}

/// Every applicable move, positive ones first by (face, variant), then
/// negative ones by edge class.
pub fn applicable_moves(s: &BranchedSpine) -> Vec<MoveInstance> {
    let mut out = Vec::new();
    for k in 0..s.f() {
        if let Ok(v) = apply_positive(s, k) {
            out.extend(v);
        }
    }
    for c in 0..s.e() {
        if let Ok(m) = apply_negative(s, c) {
            out.push(m);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HRow {
    pub simplex: String,
    pub dim: usize,
    pub eps: i8,
    pub end0: char,
    pub end1: char,
}

impl HRow {
    /// ε·(end₀ − end₁) as text.
    pub fn boundary(&self) -> String {
        if self.end0 == self.end1 {
            "0".into()
        } else if self.eps > 0 {
            format!("{}-{}", self.end0, self.end1)
        } else {
            format!("{}-{}", self.end1, self.end0)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HCycleReport {
    pub rows: Vec<HRow>,
    /// Coefficients of a..e in Σ ε(end₀ − end₁).
    pub total: [i64; 5],
    pub is_null: bool,
    /// Image in H₁ of the two-tetrahedron side.
    pub h_class: H1Class,
}

/// Vertex labels (besides v) of the 21 internal simplices of the common subdivision.
pub const SUBDIVISION: [&str; 21] = [
    "", "a", "b", "c", "d", "e", "ab", "ad", "ae", "cb", "cd", "ce", "be", "ed", "db", "abe", "aed", "adb", "cbe",
    "ced", "cdb",
];

fn local_index(ch: char) -> usize {
    LOCAL_NAMES.iter().position(|&x| x == ch).expect("local vertex name")
}

fn sink_of(d: &LocalDirs, verts: &[usize]) -> usize {
    *verts.iter().find(|&&u| verts.iter().all(|&w| w == u || d[w][u])).expect("acyclic simplex has a sink")
}

/// The 21-row table for a branching of the bipyramid. `end0` follows the
/// two-tetrahedron side, `end1` the three-tetrahedron side.
pub fn h_table(d: &LocalDirs) -> (Vec<HRow>, [i64; 5]) {
    let mut rows = Vec::with_capacity(21);
    let mut total = [0i64; 5];
    for s in SUBDIVISION {
        let set: Vec<usize> = s.chars().map(local_index).collect();
        let eps: i8 = if set.len().is_multiple_of(2) { 1 } else { -1 };
        let two: Vec<usize> = if set.contains(&A) {
            vec![A, B, D, E]
        } else if set.contains(&C) {
            vec![C, B, D, E]
        } else {
            vec![B, D, E]
        };
        let mut three = vec![A, C];
        three.extend(set.iter().copied().filter(|&u| u != A && u != C));
        let (e0, e1) = (sink_of(d, &two), sink_of(d, &three));
        total[e0] += eps as i64;
        total[e1] -= eps as i64;
        rows.push(HRow {
            simplex: format!("v{s}"),
            dim: set.len(),
            eps,
            end0: LOCAL_NAMES[e0],
            end1: LOCAL_NAMES[e1],
        });
    }
    (rows, total)
}

/// The h-cycle of a move, computed on the bipyramid branching.
pub fn h_cycle_check(m: &MoveInstance) -> HCycleReport {
    let (rows, total) = h_table(&m.local_dir);
    let is_null = total.iter().all(|&x| x == 0);
    // Lift: a path from x to d in the two-tetrahedron side has class ±[x d].
    let (two, site) = m.two_side();
    let cx = build_complex(two);
    let g = presentation(&cx);
    let mut chain = vec![BigInt::zero(); g.generators];
    for x in [A, B, C, E] {
        if total[x] == 0 {
            continue;
        }
        let t = site.iter().find(|t| t.contains(x) && t.contains(D)).expect("site tetrahedron");
        let (lx, ld) = (t.label_of(x).unwrap(), t.label_of(D).unwrap());
        let c = two.triangulation().edge_class_of(t.tet, lx, ld);
        let sign: i64 = if two.points(t.tet, lx, ld) { 1 } else { -1 };
        // Σ n_x·(path from x to d), with h = −Σ n_x·x lifted.
        chain[c] -= total[x] * sign;
    }
    HCycleReport { rows, total, is_null, h_class: g.class_of(&chain) }
}

/// Options for seeded walks.
#[derive(Clone, Debug, Default)]
pub struct WalkOptions {
    pub h_null_only: bool,
    pub max_tets: Option<usize>,
}

/// A seeded walk: at each step pick uniformly among the applicable moves
/// (after filtering) with `next_u64() % count` from ChaCha8 seeded by `seed`.
pub fn random_walk(s: &BranchedSpine, steps: usize, seed: u64, opts: &WalkOptions) -> Result<Vec<MoveInstance>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cur = s.clone();
    let mut out = Vec::with_capacity(steps);
    for step in 0..steps {
        let mut cands = applicable_moves(&cur);
        if let Some(mx) = opts.max_tets {
            cands.retain(|m| m.after.v() <= mx);
        }
        if opts.h_null_only {
            cands.retain(|m| h_cycle_check(m).is_null);
        }
        if cands.is_empty() {
            return Err(Error::Stuck(step));
        }
        let i = (rng.next_u64() % cands.len() as u64) as usize;
        let m = cands.swap_remove(i);
        cur = m.after.clone();
        out.push(m);
    }
    Ok(out)
}

pub fn walk_log(seed: u64, walk: &[MoveInstance]) -> MoveLog {
    MoveLog { seed, moves: walk.iter().map(|m| m.record()).collect() }
}

/// Replay a move log from `s`.
pub fn replay(s: &BranchedSpine, log: &MoveLog) -> Result<Vec<MoveInstance>> {
    let mut cur = s.clone();
    let mut out = Vec::new();
    for r in &log.moves {
        let m = match *r {
            MoveRecord::Positive { face, variant } => apply_positive_variant(&cur, face, variant.min(255) as u8)?,
            MoveRecord::Negative { edge } => apply_negative(&cur, edge)?,
        };
        cur = m.after.clone();
        out.push(m);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::census;

    #[test]
    fn one_vertex_spines_are_rigid() {
        for s in census(1) {
            assert!(is_rigid(&s));
        }
    }

    #[test]
    fn positive_then_negative_round_trips() {
        let mut count = 0;
        for s in census(2) {
            for k in 0..s.f() {
                let Ok(ms) = apply_positive(&s, k) else { continue };
                for m in ms {
                    count += 1;
                    assert_eq!(m.after.v(), s.v() + 1);
                    assert!(!is_rigid(&m.after));
                    let central = (0..m.after.e()).find(|c| !m.edge_map.contains(&Some(*c))).unwrap();
                    let back = apply_negative(&m.after, central).unwrap();
                    assert_eq!(back.after.canonical_form(), s.canonical_form());
                    // Same bipyramid branching from either side, up to swapping the apexes.
                    let swap = [C, B, A, D, E];
                    let mut swapped = [[false; 5]; 5];
                    for u in 0..5 {
                        for v in 0..5 {
                            swapped[swap[u]][swap[v]] = m.local_dir[u][v];
                        }
                    }
                    assert!(back.local_dir == m.local_dir || back.local_dir == swapped);
                    assert_eq!(h_cycle_check(&back).is_null, h_cycle_check(&m).is_null);
                }
            }
        }
        assert!(count > 0);
    }

    #[test]
    fn correspondence_preserves_directions() {
        for s in census(2) {
            for k in 0..s.f() {
                let Ok(ms) = apply_positive(&s, k) else { continue };
                for m in ms {
                    for (c, img) in m.edge_map.iter().enumerate() {
                        let img = img.expect("every old edge survives");
                        let r = s.triangulation().edge_rep(c);
                        let t = m.tet_map[r.tet];
                        if let Some(t) = t {
                            assert_eq!(m.after.triangulation().edge_class_of(t, r.tail, r.head), img);
                        }
                    }
                    assert_eq!(m.face_map.iter().filter(|x| x.is_none()).count(), 1);
                    assert_eq!(m.tet_map.iter().filter(|x| x.is_none()).count(), 2);
                }
            }
        }
    }

    #[test]
    fn table_has_21_rows_and_same_sink_is_null() {
        let mut d = [[false; 5]; 5];
        // Everything flows into d; a→c.
        for u in 0..5 {
            for w in 0..5 {
                if u != w {
                    d[u][w] = w == D || (u, w) == (A, C) || (u, w) == (B, E) || (u != D && w == C && u != A && false);
                }
            }
        }
        d[B][C] = true;
        d[E][C] = true;
        d[A][B] = true;
        d[A][E] = true;
        for u in 0..5 {
            for w in 0..5 {
                if u != w && !d[u][w] && !d[w][u] {
                    d[u][w] = u < w;
                }
            }
        }
        let (rows, total) = h_table(&d);
        assert_eq!(rows.len(), 21);
        assert_eq!(total, [0; 5]);
    }

    #[test]
    fn walks_are_deterministic() {
        let s = census(2).into_iter().find(|s| !is_rigid(s)).unwrap();
        let opts = WalkOptions { h_null_only: false, max_tets: Some(5) };
        let w1 = random_walk(&s, 5, 11, &opts).unwrap();
        let w2 = random_walk(&s, 5, 11, &opts).unwrap();
        assert_eq!(walk_log(11, &w1), walk_log(11, &w2));
        let replayed = replay(&s, &walk_log(11, &w1)).unwrap();
        assert_eq!(replayed.last().unwrap().after, w1.last().unwrap().after);
    }

    #[test]
    fn rigid_spine_walk_is_stuck() {
        let s = &census(1)[0];
        assert!(matches!(random_walk(s, 1, 0, &WalkOptions::default()), Err(Error::Stuck(0))));
    }
}
