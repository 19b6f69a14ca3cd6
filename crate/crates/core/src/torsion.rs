//! Torsion of a based chain complex over a field, with optional homology
//! bases, the sign refinement through the rational complex, and a Fox
//! calculus cross-check for one-variable characters.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::linalg::{self, Mat, PivotRule};
use crate::algebra::ratfunc::{RatFunc, RationalFunctions};
use crate::algebra::smith::smith;
use crate::algebra::upoly::{UPoly, UPolys};
use crate::algebra::{Field, Rationals};
use crate::error::{Error, Result};
use crate::spider::{CellComplexX, GroupData, Representation, TwistedComplex};

/// One list of vectors per degree 0..=3, each vector in cell coordinates.
pub type HomologyBasis<E> = Vec<Vec<Vec<E>>>;

/// How the subsets b_i and the elimination pivots are chosen.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Strategy {
    First,
    Random(u64),
}

impl Strategy {
    fn rng(&self) -> Option<ChaCha8Rng> {
        match self {
            Strategy::First => None,
            Strategy::Random(seed) => Some(ChaCha8Rng::seed_from_u64(*seed)),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TorsionValue<E> {
    pub value: E,
    pub sign_fixed: bool,
    pub acyclic: bool,
    pub betti: [usize; 4],
}

struct Engine {
    rng: Option<ChaCha8Rng>,
}

impl Engine {
    fn rule(&mut self) -> PivotRule {
        match &mut self.rng {
            None => PivotRule::First,
            Some(r) => PivotRule::Random(ChaCha8Rng::from_rng(r).expect("seeding from rng")),
        }
    }

    fn order(&mut self, n: usize) -> Vec<usize> {
        let mut o: Vec<usize> = (0..n).collect();
        if let Some(r) = &mut self.rng {
            o.shuffle(r);
        }
        o
    }
}

/// Ranks of D₁..D₃ and the Betti numbers of a twisted complex.
pub fn homology_dimensions<F: Field>(tc: &TwistedComplex<F>) -> ([usize; 5], [usize; 4]) {
    let mut r = [0usize; 5];
    for i in 1..=3 {
        r[i] = linalg::rank(&tc.field, &tc.d[i - 1]);
    }
    let mut betti = [0usize; 4];
    for i in 0..4 {
        betti[i] = tc.dims[i] - r[i] - r[i + 1];
    }
    (r, betti)
}

fn inversions(seq: &[usize]) -> usize {
    let mut n = 0;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                n += 1;
            }
        }
    }
    n
}

/// τ₀ for the current cell order: the alternating product over degrees of
/// det[(∂b_{i+1}) h_i b_i / cells_i].
pub fn tau0<F: Field>(tc: &TwistedComplex<F>, h: Option<&HomologyBasis<F::Elem>>, strategy: &Strategy) -> Result<(F::Elem, [usize; 4])> {
    let f = &tc.field;
    let mut eng = Engine { rng: strategy.rng() };
    // b[i] for i in 0..=4; b[0] and b[4] empty.
    let mut b: Vec<Vec<usize>> = vec![Vec::new(); 5];
    for i in 1..=3 {
        let m = &tc.d[i - 1];
        let cols = m.cols_vec();
        let order = eng.order(cols.len());
        let mut rule = eng.rule();
        b[i] = f.independent_subset(&cols, &order, &mut rule);
    }
    let mut betti = [0usize; 4];
    for i in 0..4 {
        betti[i] = tc.dims[i] - b[i].len() - b[i + 1].len();
    }
    match h {
        None => {
            if let Some(i) = (0..4).find(|&i| betti[i] > 0) {
                return Err(Error::NotAcyclicNoBasis(i));
            }
        }
        Some(h) => {
            for i in 0..4 {
                let got = h.get(i).map_or(0, |v| v.len());
                if got != betti[i] {
                    return Err(Error::BasisRankMismatch { degree: i, expected: betti[i], got });
                }
            }
        }
    }
    let mut tau = f.one();
    for i in 0..4 {
        let n = tc.dims[i];
        let mut cols: Vec<Vec<F::Elem>> = Vec::new();
        if i < 3 {
            let m = &tc.d[i];
            for &c in &b[i + 1] {
                cols.push(m.col(c));
            }
        }
        if let Some(h) = h {
            for v in &h[i] {
                if v.len() != n {
                    return Err(Error::BasisRankMismatch { degree: i, expected: n, got: v.len() });
                }
                cols.push(v.clone());
            }
        }
        let is_b: Vec<bool> = (0..n).map(|r| b[i].contains(&r)).collect();
        let keep: Vec<usize> = (0..n).filter(|&r| !is_b[r]).collect();
        let mut seq = keep.clone();
        seq.extend(&b[i]);
        let sign_neg = inversions(&seq) % 2 == 1;
        let sub = Mat::from_rows(
            keep.len(),
            cols.len(),
            keep.iter().map(|&r| cols.iter().map(|c| c[r].clone()).collect()).collect(),
        );
        let mut rule = eng.rule();
        let mut d = f.det_pivot(&sub, &mut rule);
        if f.is_zero(&d) {
            return Err(Error::Usage(format!(
                "homology basis in degree {i} is not independent modulo boundaries"
            )));
        }
        if sign_neg {
            d = f.neg(&d);
        }
        tau = if i % 2 == 0 { f.mul(&tau, &d) } else { f.div(&tau, &d) };
    }
    Ok((tau, betti))
}

/// Torsion up to sign, stored as its canonical representative.
pub fn torsion<F: Field>(tc: &TwistedComplex<F>, h: Option<&HomologyBasis<F::Elem>>, strategy: &Strategy) -> Result<TorsionValue<F::Elem>> {
    let (t, betti) = tau0(tc, h, strategy)?;
    Ok(TorsionValue {
        value: tc.field.canonical_up_to_sign(&t),
        sign_fixed: false,
        acyclic: betti.iter().all(|&b| b == 0),
        betti,
    })
}

/// Parity of N(C) = Σ_i α_i·β_i with α_i = Σ_{j≤i} dim C_j and
/// β_i = Σ_{j≤i} dim H_j.
pub fn dimension_parity(dims: [usize; 4], betti: [usize; 4]) -> bool {
    let (mut a, mut b, mut n) = (0usize, 0usize, 0usize);
    for i in 0..4 {
        a += dims[i];
        b += betti[i];
        n += a * b;
    }
    n % 2 == 1
}

/// (−1)^{N(qc)+N(tc)}·sgn(a)·τ₀ where `a` is the torsion of the rational
/// complex `qc` (same cell order as `tc`) based by the homological
/// orientation `o`. The parity factor makes the value invariant under
/// moves as well as under reordering of cells.
pub fn sign_refined_torsion<F: Field>(
    tc: &TwistedComplex<F>,
    h: Option<&HomologyBasis<F::Elem>>,
    qc: &TwistedComplex<Rationals>,
    o: &HomologyBasis<BigRational>,
    strategy: &Strategy,
) -> Result<TorsionValue<F::Elem>> {
    let (a, qbetti) = tau0(qc, Some(o), strategy)?;
    let (t, betti) = tau0(tc, h, strategy)?;
    let s = Rationals.sign(&a).expect("rational torsion is nonzero");
    let flip = (s < 0) ^ dimension_parity(qc.dims, qbetti) ^ dimension_parity(tc.dims, betti);
    let value = if flip { tc.field.neg(&t) } else { t };
    Ok(TorsionValue { value, sign_fixed: true, acyclic: betti.iter().all(|&b| b == 0), betti })
}

/// Cycles representing a basis of homology in each degree: kernel vectors
/// from the reduced echelon form, kept greedily when independent of the
/// boundaries and of those already kept.
pub fn auto_homology_basis<F: Field>(tc: &TwistedComplex<F>) -> HomologyBasis<F::Elem> {
    let f = &tc.field;
    let mut out = Vec::with_capacity(4);
    for i in 0..4 {
        let n = tc.dims[i];
        let kernel: Vec<Vec<F::Elem>> = if i == 0 {
            (0..n)
                .map(|k| (0..n).map(|j| if j == k { f.one() } else { f.zero() }).collect())
                .collect()
        } else {
            linalg::nullspace(f, &tc.d[i - 1])
        };
        let image: Vec<Vec<F::Elem>> = if i < 3 { tc.d[i].cols_vec() } else { Vec::new() };
        let mut vecs = image.clone();
        vecs.extend(kernel.iter().cloned());
        let order: Vec<usize> = (0..vecs.len()).collect();
        let chosen = f.independent_subset(&vecs, &order, &mut PivotRule::First);
        out.push(chosen.into_iter().filter(|&k| k >= image.len()).map(|k| vecs[k].clone()).collect());
    }
    out
}

/// A reordering of the cells of each degree: `perms[i][old] = new`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellOrder {
    pub perms: [Vec<usize>; 4],
}

impl CellOrder {
    pub fn identity(dims: [usize; 4]) -> CellOrder {
        CellOrder { perms: dims.map(|n| (0..n).collect()) }
    }

    pub fn random(dims: [usize; 4], rng: &mut ChaCha8Rng) -> CellOrder {
        CellOrder {
            perms: dims.map(|n| {
                let mut p: Vec<usize> = (0..n).collect();
                p.shuffle(rng);
                p
            }),
        }
    }

    pub fn apply_complex<F: Field>(&self, tc: &TwistedComplex<F>) -> TwistedComplex<F> {
        tc.permuted(&self.perms)
    }

    pub fn apply_basis<E: Clone>(&self, h: &HomologyBasis<E>) -> HomologyBasis<E> {
        h.iter()
            .enumerate()
            .map(|(i, vs)| {
                vs.iter()
                    .map(|v| {
                        let mut w = v.clone();
                        for (old, x) in v.iter().enumerate() {
                            w[self.perms[i][old]] = x.clone();
                        }
                        w
                    })
                    .collect()
            })
            .collect()
    }
}

/// A character H₁ → ℤ given by its values on the edge generators; the first
/// free Smith coordinate, when there is one.
pub fn first_free_character(g: &GroupData) -> Option<Vec<i64>> {
    if g.free_rank() == 0 {
        return None;
    }
    Some((0..g.generators).map(|j| g.generator_class(j).free[0].to_i64().expect("fits")).collect())
}

type Laurent = std::collections::BTreeMap<i64, BigInt>;

fn laurent_add(a: &mut Laurent, k: i64, c: BigInt) {
    let e = a.entry(k).or_insert_with(BigInt::zero);
    *e += c;
    if e.is_zero() {
        a.remove(&k);
    }
}

fn laurent_to_upoly(a: &Laurent, shift: i64) -> UPoly {
    let mut coeffs = Vec::new();
    for (&k, c) in a {
        let idx = (k + shift) as usize;
        if coeffs.len() <= idx {
            coeffs.resize(idx + 1, BigRational::zero());
        }
        coeffs[idx] = BigRational::from_integer(c.clone());
    }
    UPoly::from_coeffs(coeffs)
}

/// Fox Jacobian of the relators under `g ↦ t^{chi(g)}`, rows = relators,
/// cols = generators, shifted into ℚ[t].
pub fn fox_matrix(g: &GroupData, chi: &[i64]) -> Mat<UPoly> {
    let mut entries: Vec<Vec<Laurent>> = vec![vec![Laurent::new(); g.generators]; g.relators.len()];
    for (r, w) in g.relators.iter().enumerate() {
        let mut prefix = 0i64;
        for &(gen, e) in w {
            if e > 0 {
                laurent_add(&mut entries[r][gen], prefix, BigInt::from(1));
                prefix += chi[gen];
            } else {
                prefix -= chi[gen];
                laurent_add(&mut entries[r][gen], prefix, BigInt::from(-1));
            }
        }
    }
    let min = entries.iter().flatten().flat_map(|l| l.keys().next().copied()).min().unwrap_or(0);
    let rows = entries.iter().map(|row| row.iter().map(|l| laurent_to_upoly(l, -min)).collect()).collect();
    Mat::from_rows(g.relators.len(), g.generators, rows)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Generator of the first elementary ideal of the presentation under the
/// character: the gcd of all (E−1)-minors of the Fox Jacobian. A
/// presentation with one generator has only the empty minor, taken as 1.
pub fn fox_alexander(g: &GroupData, chi: &[i64]) -> UPoly {
    let m = fox_matrix(g, chi);
    let k = g.generators.saturating_sub(1);
    if k == 0 {
        return UPoly::one();
    }
    let ring = UPolys;
    let mut acc = UPoly::zero();
    for rows in combinations(m.rows, k) {
        for cols in combinations(m.cols, k) {
            let sub = Mat::from_rows(k, k, rows.iter().map(|&r| cols.iter().map(|&c| m.get(r, c).clone()).collect()).collect());
            let d = linalg::bareiss_det(&ring, &sub, &mut PivotRule::First);
            if d.degree().is_some() {
                acc = acc.gcd(&d);
                if acc.degree() == Some(0) {
                    return UPoly::one();
                }
            }
        }
    }
    acc
}

/// `g ↦ t^{chi(g)}` into ℚ(t).
pub fn character_representation(g: &GroupData, chi: &[i64]) -> Result<Representation<RationalFunctions>> {
    let images = chi.iter().map(|&k| RatFunc::monomial(&[k])).collect();
    Representation::new(RationalFunctions::new(1), images, g)
}

fn ratfunc_to_laurent(x: &RatFunc) -> Laurent {
    // Denominators of entries built from monomial images are monomials.
    let den: Vec<_> = x.den().terms().collect();
    assert!(den.len() == 1, "denominator is a monomial");
    let (de, dc) = den[0];
    let shift = de.first().copied().unwrap_or(0) as i64;
    let mut out = Laurent::new();
    for (e, c) in x.num().terms() {
        let k = e.first().copied().unwrap_or(0) as i64 - shift;
        assert!((c % dc).is_zero(), "integral coefficients");
        laurent_add(&mut out, k, c / dc);
    }
    out
}

/// Order of H₁ of the complex twisted by `g ↦ t^{chi(g)}`: the product of
/// the invariant factors of D₂ over ℚ[t] when its rank is E − 1, else 0.
pub fn twisted_h1_order(cx: &CellComplexX, g: &GroupData, chi: &[i64]) -> Result<UPoly> {
    let rep = character_representation(g, chi)?;
    let tc = crate::spider::twisted_complex(cx, &rep);
    let d2 = &tc.d[1];
    let mut cols = Vec::with_capacity(d2.cols);
    for c in 0..d2.cols {
        let col: Vec<Laurent> = (0..d2.rows).map(|r| ratfunc_to_laurent(d2.get(r, c))).collect();
        let min = col.iter().flat_map(|l| l.keys().next().copied()).min().unwrap_or(0);
        cols.push(col.iter().map(|l| laurent_to_upoly(l, -min)).collect::<Vec<_>>());
    }
    let m = Mat::from_cols(d2.rows, &cols);
    let s = smith(&m);
    if s.diag.len() + 1 != g.generators {
        return Ok(UPoly::zero());
    }
    Ok(s.diag.iter().fold(UPoly::one(), |acc, d| acc.mul(d)))
}

/// Normal form modulo units ±c·t^k of ℚ[t^{±1}].
pub fn alexander_normal_form(p: &UPoly) -> Vec<BigInt> {
    if p.degree().is_none() {
        return Vec::new();
    }
    p.strip_t().primitive_integer()
}

pub fn format_alexander(p: &UPoly) -> String {
    let c = alexander_normal_form(p);
    if c.is_empty() {
        return "0".into();
    }
    let q = UPoly::from_coeffs(c.into_iter().map(BigRational::from_integer).collect());
    q.format("t")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Domain;
    use crate::census::census;
    use crate::spider::*;

    fn corpus() -> Vec<crate::BranchedSpine> {
        let mut v = census(1);
        v.extend(census(2));
        v
    }

    #[test]
    fn strategies_agree_on_trivial_rep() {
        for s in corpus() {
            let cx = build_complex(&s);
            let qc = rational_complex(&cx);
            let h = auto_homology_basis(&qc);
            let base = tau0(&qc, Some(&h), &Strategy::First).unwrap().0;
            assert!(!Rationals.is_zero(&base));
            for seed in 0..5 {
                assert_eq!(tau0(&qc, Some(&h), &Strategy::Random(seed)).unwrap().0, base);
            }
        }
    }

    #[test]
    fn permutation_changes_sign_only() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for s in corpus() {
            let cx = build_complex(&s);
            let qc = rational_complex(&cx);
            let h = auto_homology_basis(&qc);
            let base = torsion(&qc, Some(&h), &Strategy::First).unwrap().value;
            let g = presentation(&cx);
            let rep = free_abelian_representation(&g);
            let tc = twisted_complex(&cx, &rep);
            let ht = auto_homology_basis(&tc);
            let tb = sign_refined_torsion(&tc, Some(&ht), &qc, &h, &Strategy::First).unwrap().value;
            for _ in 0..4 {
                let sigma = CellOrder::random(qc.dims, &mut rng);
                let pq = sigma.apply_complex(&qc);
                let ph = sigma.apply_basis(&h);
                assert_eq!(torsion(&pq, Some(&ph), &Strategy::First).unwrap().value, base);
                let pt = sigma.apply_complex(&tc);
                let pht = sigma.apply_basis(&ht);
                let v = sign_refined_torsion(&pt, Some(&pht), &pq, &ph, &Strategy::Random(3)).unwrap().value;
                assert_eq!(v, tb);
            }
        }
    }

    #[test]
    fn missing_basis_is_reported() {
        let s = &census(1)[0];
        let cx = build_complex(s);
        let qc = rational_complex(&cx);
        assert!(matches!(tau0(&qc, None, &Strategy::First), Err(Error::NotAcyclicNoBasis(0))));
        let empty: HomologyBasis<BigRational> = vec![vec![]; 4];
        assert!(matches!(tau0(&qc, Some(&empty), &Strategy::First), Err(Error::BasisRankMismatch { degree: 0, .. })));
    }

    #[test]
    fn flipping_one_basis_vector_negates() {
        for s in corpus() {
            let cx = build_complex(&s);
            let qc = rational_complex(&cx);
            let h = auto_homology_basis(&qc);
            let a = tau0(&qc, Some(&h), &Strategy::First).unwrap().0;
            let mut h2 = h.clone();
            h2[0][0] = h2[0][0].iter().map(|x| -x).collect();
            let b = tau0(&qc, Some(&h2), &Strategy::First).unwrap().0;
            assert_eq!(a, -b);
        }
    }

    #[test]
    fn fox_matches_twisted_order() {
        for s in corpus() {
            let cx = build_complex(&s);
            let g = presentation(&cx);
            if let Some(chi) = first_free_character(&g) {
                let fox = fox_alexander(&g, &chi);
                let tw = twisted_h1_order(&cx, &g, &chi).unwrap();
                assert_eq!(alexander_normal_form(&fox), alexander_normal_form(&tw));
            }
        }
    }

    #[test]
    fn fox_on_trefoil_group() {
        // ⟨x, y | xyx y⁻¹x⁻¹y⁻¹⟩, abelianized onto ℤ by x, y ↦ 1.
        let g = GroupData {
            generators: 2,
            relators: vec![vec![(0, 1), (1, 1), (0, 1), (1, -1), (0, -1), (1, -1)]],
            smith: smith(&Mat::from_rows(2, 1, vec![vec![BigInt::zero()], vec![BigInt::zero()]])),
        };
        let p = fox_alexander(&g, &[1, 1]);
        assert_eq!(alexander_normal_form(&p), vec![BigInt::from(1), BigInt::from(-1), BigInt::from(1)]);
        assert_eq!(format_alexander(&p), "t^2 - t + 1");
    }

    #[test]
    fn fox_degenerate_presentations() {
        let one_gen = GroupData {
            generators: 1,
            relators: vec![],
            smith: smith(&Mat::<BigInt>::filled(1, 0, BigInt::zero())),
        };
        assert_eq!(fox_alexander(&one_gen, &[1]), UPoly::one());
        // ⟨x | x⟩ is trivial.
        let trivial = GroupData {
            generators: 1,
            relators: vec![vec![(0, 1)]],
            smith: smith(&Mat::from_rows(1, 1, vec![vec![BigInt::from(1)]])),
        };
        assert_eq!(fox_alexander(&trivial, &[0]), UPoly::one());
    }
}
