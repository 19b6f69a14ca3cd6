//! Ideal triangulations: face gluings and the derived edge, vertex and face classes.
//!
//! Face `i` of a tetrahedron is the face opposite vertex `i`. A gluing of face
//! `f` of tetrahedron `t` is stored as a permutation `p` of all four vertex
//! labels with `p[f]` the face index on the other side.

use std::collections::VecDeque;

use crate::error::{Error, Result};

pub type Perm = [u8; 4];

/// Vertex pairs of the six edges of a tetrahedron, in index order.
pub const EDGES: [(u8, u8); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

pub fn edge_index(i: u8, j: u8) -> usize {
    let (a, b) = if i < j { (i, j) } else { (j, i) };
    match (a, b) {
        (0, 1) => 0,
        (0, 2) => 1,
        (0, 3) => 2,
        (1, 2) => 3,
        (1, 3) => 4,
        (2, 3) => 5,
        _ => panic!("not an edge: {i}{j}"),
    }
}

pub fn perm_sign(p: &Perm) -> i8 {
    let mut s = 1;
    for i in 0..4 {
        for j in i + 1..4 {
            if p[i] > p[j] {
                s = -s;
            }
        }
    }
    s
}

pub fn perm_inverse(p: &Perm) -> Perm {
    let mut q = [0u8; 4];
    for i in 0..4 {
        q[p[i] as usize] = i as u8;
    }
    q
}

pub fn is_perm(p: &Perm) -> bool {
    let mut seen = [false; 4];
    for &x in p {
        if x > 3 || seen[x as usize] {
            return false;
        }
        seen[x as usize] = true;
    }
    true
}

/// The three corners of face `f`, ascending.
pub fn face_corners(f: u8) -> [u8; 3] {
    let mut out = [0u8; 3];
    let mut k = 0;
    for v in 0..4u8 {
        if v != f {
            out[k] = v;
            k += 1;
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Glue {
    pub tet: usize,
    pub face: u8,
    pub perm: Perm,
}

/// One tetrahedron edge, oriented along its class representative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct EdgeInstance {
    pub tet: usize,
    pub tail: u8,
    pub head: u8,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangulation {
    glue: Vec<[Glue; 4]>,
    edge_class: Vec<[usize; 6]>,
    /// True when the instance `(t, lo, hi)` runs against its class representative.
    edge_flip: Vec<[bool; 6]>,
    /// Instances of each class in cyclic order around the edge.
    edge_members: Vec<Vec<EdgeInstance>>,
    vertex_class: Vec<[usize; 4]>,
    vertex_count: usize,
    face_class: Vec<[usize; 4]>,
    face_members: Vec<[(usize, u8); 2]>,
}

impl Triangulation {
    /// Validate pairings and connectivity and derive the class tables.
    pub fn new(glue: Vec<[Glue; 4]>) -> Result<Self> {
        let n = glue.len();
        if n == 0 {
            return Err(Error::Disconnected(0));
        }
        for (t, faces) in glue.iter().enumerate() {
            for f in 0..4u8 {
                let g = faces[f as usize];
                if g.tet >= n || !is_perm(&g.perm) || g.perm[f as usize] != g.face {
                    return Err(Error::UnpairedFace { tet: t, face: f, msg: "has a malformed gluing".into() });
                }
                if g.tet == t && g.face == f {
                    return Err(Error::UnpairedFace { tet: t, face: f, msg: "is glued to itself".into() });
                }
                let back = glue[g.tet][g.face as usize];
                if back.tet != t || back.face != f || back.perm != perm_inverse(&g.perm) {
                    return Err(Error::UnpairedFace { tet: t, face: f, msg: "has no matching partner".into() });
                }
            }
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(t) = queue.pop_front() {
            for g in &glue[t] {
                if !seen[g.tet] {
                    seen[g.tet] = true;
                    queue.push_back(g.tet);
                }
            }
        }
        if let Some(t) = seen.iter().position(|s| !s) {
            return Err(Error::Disconnected(t));
        }

        let mut tri = Triangulation {
            glue,
            edge_class: vec![[usize::MAX; 6]; n],
            edge_flip: vec![[false; 6]; n],
            edge_members: Vec::new(),
            vertex_class: vec![[usize::MAX; 4]; n],
            vertex_count: 0,
            face_class: vec![[usize::MAX; 4]; n],
            face_members: Vec::new(),
        };
        tri.build_edges()?;
        tri.build_vertices();
        tri.build_faces();
        Ok(tri)
    }

    /// Walk around each edge, assembling the dual region as a polygon and
    /// checking that it closes up into a disc.
    fn build_edges(&mut self) -> Result<()> {
        let n = self.glue.len();
        for t in 0..n {
            for (e, &(i, j)) in EDGES.iter().enumerate() {
                if self.edge_class[t][e] != usize::MAX {
                    continue;
                }
                let class = self.edge_members.len();
                let mut members = Vec::new();
                let start = EdgeInstance { tet: t, tail: i, head: j };
                let mut cur = start;
                // Leave through the face opposite the lower free vertex.
                let free = |a: u8, b: u8| -> [u8; 2] {
                    let mut out = [0u8; 2];
                    let mut k = 0;
                    for v in 0..4u8 {
                        if v != a && v != b {
                            out[k] = v;
                            k += 1;
                        }
                    }
                    out
                };
                let mut exit = free(i, j)[0];
                loop {
                    let ce = edge_index(cur.tail, cur.head);
                    if self.edge_class[cur.tet][ce] != usize::MAX {
                        return Err(Error::NonStandardDual {
                            edge_class: class,
                            msg: "boundary of the region is not embedded".into(),
                        });
                    }
                    self.edge_class[cur.tet][ce] = class;
                    self.edge_flip[cur.tet][ce] = cur.tail > cur.head;
                    members.push(cur);
                    let g = self.glue[cur.tet][exit as usize];
                    let next = EdgeInstance {
                        tet: g.tet,
                        tail: g.perm[cur.tail as usize],
                        head: g.perm[cur.head as usize],
                    };
                    let entry = g.face;
                    let fr = free(next.tail, next.head);
                    let next_exit = if fr[0] == entry { fr[1] } else { fr[0] };
                    if next.tet == start.tet && edge_index(next.tail, next.head) == e {
                        if next.tail != start.tail {
                            return Err(Error::NonStandardDual {
                                edge_class: class,
                                msg: "edge is identified with itself reversed".into(),
                            });
                        }
                        if next_exit != free(i, j)[0] {
                            return Err(Error::NonStandardDual {
                                edge_class: class,
                                msg: "boundary of the region is not embedded".into(),
                            });
                        }
                        break;
                    }
                    cur = next;
                    exit = next_exit;
                }
                self.edge_members.push(members);
            }
        }
        Ok(())
    }

    fn build_vertices(&mut self) {
        let n = self.glue.len();
        let mut parent: Vec<usize> = (0..4 * n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let nx = p[y];
                p[y] = r;
                y = nx;
            }
            r
        }
        for t in 0..n {
            for f in 0..4u8 {
                let g = self.glue[t][f as usize];
                for v in face_corners(f) {
                    let a = find(&mut parent, 4 * t + v as usize);
                    let b = find(&mut parent, 4 * g.tet + g.perm[v as usize] as usize);
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        let mut label = vec![usize::MAX; 4 * n];
        let mut count = 0;
        for x in 0..4 * n {
            let r = find(&mut parent, x);
            if label[r] == usize::MAX {
                label[r] = count;
                count += 1;
            }
            self.vertex_class[x / 4][x % 4] = label[r];
        }
        self.vertex_count = count;
    }

    fn build_faces(&mut self) {
        for t in 0..self.glue.len() {
            for f in 0..4u8 {
                if self.face_class[t][f as usize] != usize::MAX {
                    continue;
                }
                let g = self.glue[t][f as usize];
                let k = self.face_members.len();
                self.face_class[t][f as usize] = k;
                self.face_class[g.tet][g.face as usize] = k;
                self.face_members.push([(t, f), (g.tet, g.face)]);
            }
        }
    }

    pub fn tet_count(&self) -> usize {
        self.glue.len()
    }

    pub fn glue(&self, t: usize, f: u8) -> Glue {
        self.glue[t][f as usize]
    }

    pub fn gluings(&self) -> &[[Glue; 4]] {
        &self.glue
    }

    pub fn edge_class_count(&self) -> usize {
        self.edge_members.len()
    }

    pub fn face_class_count(&self) -> usize {
        self.face_members.len()
    }

    pub fn vertex_class_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_class_of(&self, t: usize, i: u8, j: u8) -> usize {
        self.edge_class[t][edge_index(i, j)]
    }

    /// Whether the oriented tetrahedron edge `i -> j` agrees with its class
    /// representative.
    pub fn edge_agrees(&self, t: usize, i: u8, j: u8) -> bool {
        let flip = self.edge_flip[t][edge_index(i, j)];
        (i < j) != flip
    }

    pub fn edge_members(&self, c: usize) -> &[EdgeInstance] {
        &self.edge_members[c]
    }

    /// Representative instance of an edge class (its first member).
    pub fn edge_rep(&self, c: usize) -> EdgeInstance {
        self.edge_members[c][0]
    }

    pub fn vertex_class_of(&self, t: usize, v: u8) -> usize {
        self.vertex_class[t][v as usize]
    }

    pub fn face_class_of(&self, t: usize, f: u8) -> usize {
        self.face_class[t][f as usize]
    }

    pub fn face_members(&self, k: usize) -> [(usize, u8); 2] {
        self.face_members[k]
    }

    /// Orientation bits making every gluing orientation-reversing, with
    /// tetrahedron 0 positive; `None` when none exist.
    pub fn orientation(&self) -> Option<Vec<i8>> {
        let n = self.glue.len();
        let mut o = vec![0i8; n];
        o[0] = 1;
        let mut queue = VecDeque::from([0usize]);
        while let Some(t) = queue.pop_front() {
            for g in &self.glue[t] {
                let want = -perm_sign(&g.perm) * o[t];
                if o[g.tet] == 0 {
                    o[g.tet] = want;
                    queue.push_back(g.tet);
                } else if o[g.tet] != want {
                    return None;
                }
            }
        }
        Some(o)
    }

    pub fn orientation_compatible(&self, o: &[i8]) -> bool {
        o.len() == self.glue.len()
            && (0..self.glue.len())
                .all(|t| self.glue[t].iter().all(|g| o[g.tet] == -perm_sign(&g.perm) * o[t]))
    }
}
