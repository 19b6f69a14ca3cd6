//! The one-vertex complex X(P), its fundamental group presentation, the
//! sink-anchored lifts of cells and the twisted chain complex.
//!
//! Cells of X: one vertex, one edge per edge class (oriented by the
//! branching), one triangle per face class (oriented by its branching order
//! source, middle, sink) and one tetrahedron per spine vertex (oriented by
//! the ambient orientation). Each cell's preferred lift in the cover is the
//! one whose head, sink corner or sink vertex is the base lift.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::algebra::linalg::{self, Mat};
use crate::algebra::ratfunc::{RatFunc, RationalFunctions};
use crate::algebra::smith::{smith, Smith};
use crate::algebra::{CyclotomicField, Domain, Field, Integers, Rationals};
use crate::error::{Error, Result};
use crate::spine::BranchedSpine;

/// A word in the edge generators: `(generator, ±1)` letters.
pub type Word = Vec<(usize, i8)>;

#[derive(Clone, Debug)]
pub struct CellComplexX {
    pub edges: usize,
    pub faces: usize,
    pub tets: usize,
    pub d1: Mat<BigInt>,
    pub d2: Mat<BigInt>,
    pub d3: Mat<BigInt>,
    /// Per face class: edge classes of (source→middle, middle→sink, source→sink).
    pub face_edges: Vec<[usize; 3]>,
    /// Per tetrahedron: face classes opposite rank 0, 1, 2, 3.
    pub tet_faces: Vec<[usize; 4]>,
    /// Per tetrahedron: edge class of the rank edge `i -> j`, indexed as `EDGES`.
    pub tet_edges: Vec<[usize; 6]>,
    pub tet_signs: Vec<i8>,
}

fn rank_edge(i: usize, j: usize) -> usize {
    crate::triangulation::edge_index(i as u8, j as u8)
}

pub fn build_complex(s: &BranchedSpine) -> CellComplexX {
    let tri = s.triangulation();
    let (e, f, v) = (s.e(), s.f(), s.v());
    let mut face_edges = Vec::with_capacity(f);
    for k in 0..f {
        let (t, fi) = tri.face_members(k)[0];
        let [a, b, c] = s.face_order(t, fi);
        face_edges.push([tri.edge_class_of(t, a, b), tri.edge_class_of(t, b, c), tri.edge_class_of(t, a, c)]);
    }
    let mut tet_faces = Vec::with_capacity(v);
    let mut tet_edges = Vec::with_capacity(v);
    for t in 0..v {
        let ord = s.order(t);
        let mut fs = [0usize; 4];
        for r in 0..4 {
            fs[r] = tri.face_class_of(t, ord[r]);
        }
        tet_faces.push(fs);
        let mut es = [0usize; 6];
        for (idx, &(i, j)) in crate::triangulation::EDGES.iter().enumerate() {
            es[idx] = tri.edge_class_of(t, ord[i as usize], ord[j as usize]);
        }
        tet_edges.push(es);
    }
    let tet_signs: Vec<i8> = (0..v).map(|t| s.tet_sign(t)).collect();
    let z = BigInt::zero;
    let d1 = Mat::filled(1, e, z());
    let mut d2 = Mat::filled(e, f, z());
    for (k, fe) in face_edges.iter().enumerate() {
        for (idx, sign) in [(0, 1), (1, 1), (2, -1)] {
            *d2.get_mut(fe[idx], k) += sign;
        }
    }
    let mut d3 = Mat::filled(f, v, z());
    for t in 0..v {
        for r in 0..4 {
            let sign = if r % 2 == 0 { 1 } else { -1 } * tet_signs[t] as i32;
            *d3.get_mut(tet_faces[t][r], t) += sign;
        }
    }
    CellComplexX { edges: e, faces: f, tets: v, d1, d2, d3, face_edges, tet_faces, tet_edges, tet_signs }
}

impl CellComplexX {
    /// 1 − E + F − V.
    pub fn euler_characteristic(&self) -> i64 {
        1 - self.edges as i64 + self.faces as i64 - self.tets as i64
    }

    pub fn boundaries_compose_to_zero(&self) -> bool {
        let zz = Integers;
        linalg::is_zero_mat(&zz, &linalg::mat_mul(&zz, &self.d2, &self.d3))
            && linalg::is_zero_mat(&zz, &linalg::mat_mul(&zz, &self.d1, &self.d2))
    }

    /// Rational Betti numbers of X.
    pub fn betti_numbers(&self) -> [usize; 4] {
        let q = Rationals;
        let to_q = |m: &Mat<BigInt>| m.map(|x| num_rational::BigRational::from_integer(x.clone()));
        let r2 = linalg::rank(&q, &to_q(&self.d2));
        let r3 = linalg::rank(&q, &to_q(&self.d3));
        [1, self.edges - r2, self.faces - r2 - r3, self.tets - r3]
    }
}

/// Presentation of π₁(X) and its abelianization.
#[derive(Clone, Debug)]
pub struct GroupData {
    pub generators: usize,
    /// Per face class: `ac⁻¹ · ab · bc`, read from the sink corner.
    pub relators: Vec<Word>,
    pub smith: Smith<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct H1Class {
    /// Coordinates in the cyclic factors, reduced.
    pub torsion: Vec<BigInt>,
    /// Coordinates in the free factors.
    pub free: Vec<BigInt>,
}

impl serde::Serialize for H1Class {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let strs = |v: &[BigInt]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        let mut st = ser.serialize_struct("H1Class", 2)?;
        st.serialize_field("torsion", &strs(&self.torsion))?;
        st.serialize_field("free", &strs(&self.free))?;
        st.end()
    }
}

impl H1Class {
    pub fn is_zero(&self) -> bool {
        self.torsion.iter().all(|x| x.is_zero()) && self.free.iter().all(|x| x.is_zero())
    }
}

pub fn presentation(cx: &CellComplexX) -> GroupData {
    let relators = cx
        .face_edges
        .iter()
        .map(|&[ab, bc, ac]| vec![(ac, -1), (ab, 1), (bc, 1)])
        .collect();
    GroupData { generators: cx.edges, relators, smith: smith(&cx.d2) }
}

impl GroupData {
    /// Number of nonzero invariant factors of ∂₂.
    pub fn rank_d2(&self) -> usize {
        self.smith.diag.len()
    }

    pub fn free_rank(&self) -> usize {
        self.generators - self.rank_d2()
    }

    /// Orders of the nontrivial cyclic factors.
    pub fn torsion_orders(&self) -> Vec<BigInt> {
        self.smith.diag.iter().filter(|d| !d.is_one()).cloned().collect()
    }

    /// H₁ as text, for example `Z^1 + Z/2`.
    pub fn describe(&self) -> String {
        let mut parts = Vec::new();
        if self.free_rank() > 0 {
            parts.push(format!("Z^{}", self.free_rank()));
        }
        for d in self.torsion_orders() {
            parts.push(format!("Z/{d}"));
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    /// Smith coordinates (all `E` of them, unreduced) of an integer 1-chain.
    pub fn raw_coords(&self, chain: &[BigInt]) -> Vec<BigInt> {
        linalg::mat_vec(&Integers, &self.smith.u, chain)
    }

    /// H₁ class of an integer 1-chain on the edge generators.
    pub fn class_of(&self, chain: &[BigInt]) -> H1Class {
        let c = self.raw_coords(chain);
        let s = self.rank_d2();
        let torsion = (0..s)
            .filter(|&i| !self.smith.diag[i].is_one())
            .map(|i| c[i].mod_floor(&self.smith.diag[i]))
            .collect();
        H1Class { torsion, free: c[s..].to_vec() }
    }

    pub fn generator_class(&self, g: usize) -> H1Class {
        let mut v = vec![BigInt::zero(); self.generators];
        v[g] = BigInt::one();
        self.class_of(&v)
    }

    pub fn abelianize(&self, w: &Word) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.generators];
        for &(g, e) in w {
            v[g] += e as i32;
        }
        v
    }

    /// Default character H₁ → ℤ/n on the edge generators: 1 on each free
    /// factor and the largest well-defined value n / gcd(n, d) on each
    /// cyclic factor of order d.
    pub fn default_character(&self, n: u32) -> Vec<i64> {
        let nb = BigInt::from(n);
        let s = self.rank_d2();
        let x: Vec<BigInt> = (0..self.generators)
            .map(|i| if i < s { &nb / nb.gcd(&self.smith.diag[i]) } else { BigInt::one() })
            .collect();
        (0..self.generators)
            .map(|g| {
                let mut acc = BigInt::zero();
                for i in 0..self.generators {
                    acc += &x[i] * self.smith.u.get(i, g);
                }
                acc.mod_floor(&nb).to_i64().unwrap()
            })
            .collect()
    }
}

/// Sink-anchored lift data. Anchors of all cells are trivial; what varies is
/// where the corners of a lifted face or tetrahedron sit relative to the
/// base lift.
#[derive(Clone, Debug)]
pub struct SpiderAnchors {
    /// Per face class: words locating corners (source, middle, sink).
    pub face_corners: Vec<[Word; 3]>,
    /// Per tetrahedron: words locating corners of rank 0..3.
    pub tet_corners: Vec<[Word; 4]>,
    /// ε(c) per cell of X by dimension of the dual cell of P: edges +1,
    /// faces −1, tetrahedra +1; the vertex is +1.
    pub eps: [i8; 4],
}

pub fn spider_anchors(cx: &CellComplexX, g: &GroupData) -> Result<SpiderAnchors> {
    let face_corners = cx
        .face_edges
        .iter()
        .map(|&[_, bc, ac]| [vec![(ac, -1)], vec![(bc, -1)], vec![]])
        .collect();
    let tet_corners: Vec<[Word; 4]> = cx
        .tet_edges
        .iter()
        .map(|es| [vec![(es[rank_edge(0, 3)], -1)], vec![(es[rank_edge(1, 3)], -1)], vec![(es[rank_edge(2, 3)], -1)], vec![]])
        .collect();
    // Within each tetrahedron, every path from a corner to the sink must
    // give the same class; check the two-step paths in H₁.
    for (t, es) in cx.tet_edges.iter().enumerate() {
        for k in 0..3 {
            for j in k + 1..3 {
                let direct = g.abelianize(&vec![(es[rank_edge(k, 3)], 1)]);
                let via = g.abelianize(&vec![(es[rank_edge(k, j)], 1), (es[rank_edge(j, 3)], 1)]);
                let diff: Vec<BigInt> = direct.iter().zip(&via).map(|(a, b)| a - b).collect();
                if !g.class_of(&diff).is_zero() {
                    return Err(Error::InconsistentAnchor(format!(
                        "tetrahedron {t}: paths {k}->3 and {k}->{j}->3 differ in homology"
                    )));
                }
            }
        }
    }
    Ok(SpiderAnchors { face_corners, tet_corners, eps: [1, 1, -1, 1] })
}

impl SpiderAnchors {
    /// Coefficient of x₀ in the boundary of the signed spider, Σ ε(c) over
    /// the cells of P, which must equal 1 − χ(X).
    pub fn spider_boundary_coefficient(&self, cx: &CellComplexX) -> i64 {
        cx.edges as i64 * self.eps[1] as i64 + cx.faces as i64 * self.eps[2] as i64 + cx.tets as i64 * self.eps[3] as i64
    }
}

/// Which representation to build.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RepKind {
    Trivial,
    FreeAbelian,
    /// ζ_n raised to `character[g]` on generator `g`; `None` uses the
    /// default character.
    Cyclic { n: u32, character: Option<Vec<i64>> },
}

impl RepKind {
    /// `trivial`, `free-abelian`, `cyclic:N` or `cyclic:N:C0,C1,...`.
    pub fn parse(s: &str) -> Result<RepKind> {
        match s {
            "trivial" => return Ok(RepKind::Trivial),
            "free-abelian" => return Ok(RepKind::FreeAbelian),
            _ => {}
        }
        let bad = || Error::Usage(format!("unknown representation `{s}`"));
        let rest = s.strip_prefix("cyclic:").ok_or_else(bad)?;
        let (n, ch) = match rest.split_once(':') {
            Some((n, ch)) => (n, Some(ch)),
            None => (rest, None),
        };
        let n: u32 = n.parse().map_err(|_| bad())?;
        if n < 2 {
            return Err(Error::Usage("cyclic order must be at least 2".into()));
        }
        let character = match ch {
            None | Some("auto") => None,
            Some(ch) => Some(ch.split(',').map(|x| x.parse::<i64>().map_err(|_| bad())).collect::<Result<Vec<_>>>()?),
        };
        Ok(RepKind::Cyclic { n, character })
    }

    pub fn label(&self) -> String {
        match self {
            RepKind::Trivial => "trivial".into(),
            RepKind::FreeAbelian => "free-abelian".into(),
            RepKind::Cyclic { n, character: None } => format!("cyclic:{n}"),
            RepKind::Cyclic { n, character: Some(c) } => {
                format!("cyclic:{n}:{}", c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
            }
        }
    }
}

/// A homomorphism from π₁(X) into the units of a field.
#[derive(Clone, Debug)]
pub struct Representation<F: Field> {
    pub field: F,
    pub images: Vec<F::Elem>,
    /// True when images depend only on H₁ classes (always, for the kinds built here).
    pub factors_through: bool,
}

impl<F: Field> Representation<F> {
    pub fn new(field: F, images: Vec<F::Elem>, g: &GroupData) -> Result<Self> {
        let rep = Representation { field, images, factors_through: true };
        for (k, w) in g.relators.iter().enumerate() {
            if !rep.field.is_one(&rep.word_image(w)) {
                return Err(Error::RelatorNotKilled(k));
            }
        }
        Ok(rep)
    }

    pub fn word_image(&self, w: &[(usize, i8)]) -> F::Elem {
        let f = &self.field;
        let mut acc = f.one();
        for &(g, e) in w {
            acc = f.mul(&acc, &f.pow_i64(&self.images[g], e as i64));
        }
        acc
    }
}

pub fn trivial_representation(g: &GroupData) -> Representation<Rationals> {
    let images = vec![Rationals.one(); g.generators];
    Representation::new(Rationals, images, g).expect("trivial representation kills every relator")
}

/// φ(g) = t₁^{a₁}⋯t_r^{a_r} with `a` the free Smith coordinates of g.
pub fn free_abelian_representation(g: &GroupData) -> Representation<RationalFunctions> {
    let field = RationalFunctions::new(g.free_rank());
    let images = (0..g.generators)
        .map(|j| {
            let c = g.generator_class(j);
            let exps: Vec<i64> = c.free.iter().map(|x| x.to_i64().expect("exponent fits")).collect();
            RatFunc::monomial(&exps)
        })
        .collect();
    Representation::new(field, images, g).expect("free part of H1 kills every relator")
}

pub fn cyclic_representation(g: &GroupData, n: u32, character: Option<&[i64]>) -> Result<Representation<CyclotomicField>> {
    let ch: Vec<i64> = match character {
        Some(c) => {
            if c.len() != g.generators {
                return Err(Error::Usage(format!(
                    "character has {} entries but there are {} generators",
                    c.len(),
                    g.generators
                )));
            }
            c.to_vec()
        }
        None => g.default_character(n),
    };
    for (k, w) in g.relators.iter().enumerate() {
        let s: i64 = w.iter().map(|&(gen, e)| ch[gen] * e as i64).sum();
        if s.rem_euclid(n as i64) != 0 {
            return Err(Error::RelatorNotKilled(k));
        }
    }
    let field = CyclotomicField::new(n);
    let images = ch.iter().map(|&k| field.zeta_pow(k)).collect();
    Representation::new(field, images, g)
}

/// Twisted boundary matrices `d[0] = D₁`, `d[1] = D₂`, `d[2] = D₃` with
/// respect to the preferred lifts.
#[derive(Clone, Debug)]
pub struct TwistedComplex<F: Field> {
    pub field: F,
    pub dims: [usize; 4],
    pub d: [Mat<F::Elem>; 3],
}

pub fn twisted_complex<F: Field>(cx: &CellComplexX, rep: &Representation<F>) -> TwistedComplex<F> {
    let f = &rep.field;
    let img_inv = |c: usize| f.inv(&rep.images[c]);
    let mut d1 = linalg::zeros(f, 1, cx.edges);
    for c in 0..cx.edges {
        d1.set(0, c, f.sub(&f.one(), &img_inv(c)));
    }
    let mut d2 = linalg::zeros(f, cx.edges, cx.faces);
    for (k, &[ab, bc, ac]) in cx.face_edges.iter().enumerate() {
        for (row, val) in [(ab, img_inv(bc)), (bc, f.one()), (ac, f.neg(&f.one()))] {
            let v = f.add(d2.get(row, k), &val);
            d2.set(row, k, v);
        }
    }
    let mut d3 = linalg::zeros(f, cx.faces, cx.tets);
    for t in 0..cx.tets {
        let s = f.from_i64(cx.tet_signs[t] as i64);
        let g23 = img_inv(cx.tet_edges[t][rank_edge(2, 3)]);
        let coeffs = [f.one(), f.neg(&f.one()), f.one(), f.neg(&g23)];
        for r in 0..4 {
            let v = f.add(d3.get(cx.tet_faces[t][r], t), &f.mul(&s, &coeffs[r]));
            d3.set(cx.tet_faces[t][r], t, v);
        }
    }
    TwistedComplex { field: f.clone(), dims: [1, cx.edges, cx.faces, cx.tets], d: [d1, d2, d3] }
}

impl<F: Field> TwistedComplex<F> {
    pub fn is_chain_complex(&self) -> bool {
        let f = &self.field;
        linalg::is_zero_mat(f, &linalg::mat_mul(f, &self.d[0], &self.d[1]))
            && linalg::is_zero_mat(f, &linalg::mat_mul(f, &self.d[1], &self.d[2]))
    }

    /// `D_i` for `i` in 1..=3; `None` outside that range (zero maps).
    pub fn boundary(&self, i: usize) -> Option<&Mat<F::Elem>> {
        (1..=3).contains(&i).then(|| &self.d[i - 1])
    }

    /// Permute the cells of each degree: `perms[i][old] = new`.
    pub fn permuted(&self, perms: &[Vec<usize>; 4]) -> TwistedComplex<F> {
        let mut d = self.d.clone();
        for i in 1..=3 {
            let m = &self.d[i - 1];
            let mut out = linalg::zeros(&self.field, m.rows, m.cols);
            for r in 0..m.rows {
                for c in 0..m.cols {
                    out.set(perms[i - 1][r], perms[i][c], m.get(r, c).clone());
                }
            }
            d[i - 1] = out;
        }
        TwistedComplex { field: self.field.clone(), dims: self.dims, d }
    }
}

/// The rational untwisted complex, identical to the trivial twisted one.
pub fn rational_complex(cx: &CellComplexX) -> TwistedComplex<Rationals> {
    let to_q = |m: &Mat<BigInt>| m.map(|x| num_rational::BigRational::from_integer(x.clone()));
    TwistedComplex { field: Rationals, dims: [1, cx.edges, cx.faces, cx.tets], d: [to_q(&cx.d1), to_q(&cx.d2), to_q(&cx.d3)] }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::census;

    #[test]
    fn untwisted_boundaries_compose_to_zero() {
        for n in 1..=2 {
            for s in census(n) {
                let cx = build_complex(&s);
                assert!(cx.boundaries_compose_to_zero());
                let b = cx.betti_numbers();
                let chi = b[0] as i64 - b[1] as i64 + b[2] as i64 - b[3] as i64;
                assert_eq!(chi, cx.euler_characteristic());
            }
        }
    }

    #[test]
    fn twisted_complexes_are_chain_complexes() {
        for n in 1..=2 {
            for s in census(n) {
                let cx = build_complex(&s);
                let g = presentation(&cx);
                spider_anchors(&cx, &g).unwrap();
                assert!(twisted_complex(&cx, &trivial_representation(&g)).is_chain_complex());
                assert!(twisted_complex(&cx, &free_abelian_representation(&g)).is_chain_complex());
                for m in [2u32, 3, 5] {
                    if let Ok(rep) = cyclic_representation(&g, m, None) {
                        assert!(twisted_complex(&cx, &rep).is_chain_complex());
                    }
                }
            }
        }
    }

    #[test]
    fn trivial_twist_is_the_integer_complex() {
        for s in census(2) {
            let cx = build_complex(&s);
            let g = presentation(&cx);
            let tw = twisted_complex(&cx, &trivial_representation(&g));
            let q = rational_complex(&cx);
            assert_eq!(tw.d[0], q.d[0]);
            assert_eq!(tw.d[1], q.d[1]);
            assert_eq!(tw.d[2], q.d[2]);
        }
    }

    #[test]
    fn spider_coefficient_matches_euler_characteristic() {
        for s in census(2) {
            let cx = build_complex(&s);
            let g = presentation(&cx);
            let a = spider_anchors(&cx, &g).unwrap();
            assert_eq!(a.spider_boundary_coefficient(&cx), 1 - cx.euler_characteristic());
        }
    }

    #[test]
    fn rep_kind_parsing() {
        assert_eq!(RepKind::parse("trivial").unwrap(), RepKind::Trivial);
        assert_eq!(RepKind::parse("cyclic:5").unwrap(), RepKind::Cyclic { n: 5, character: None });
        assert_eq!(
            RepKind::parse("cyclic:4:1,0,3").unwrap(),
            RepKind::Cyclic { n: 4, character: Some(vec![1, 0, 3]) }
        );
        assert!(RepKind::parse("cyclic:x").is_err());
        assert!(RepKind::parse("sl2").is_err());
    }
}
