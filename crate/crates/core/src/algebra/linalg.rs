//! Dense matrices and exact elimination routines.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{Domain, Field};

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mat<T> {
    pub rows: usize,
    pub cols: usize,
    data: Vec<T>,
}

impl<T: Clone> Mat<T> {
    pub fn filled(rows: usize, cols: usize, fill: T) -> Self {
        Mat { rows, cols, data: vec![fill; rows * cols] }
    }

    pub fn from_rows(rows: usize, cols: usize, r: Vec<Vec<T>>) -> Self {
        assert_eq!(r.len(), rows);
        let mut data = Vec::with_capacity(rows * cols);
        for row in r {
            assert_eq!(row.len(), cols);
            data.extend(row);
        }
        Mat { rows, cols, data }
    }

    pub fn from_cols(rows: usize, c: &[Vec<T>]) -> Self {
        let cols = c.len();
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for col in c {
                data.push(col[i].clone());
            }
        }
        Mat { rows, cols, data }
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut T {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn cols_vec(&self) -> Vec<Vec<T>> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn transpose(&self) -> Mat<T> {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Mat { rows: self.cols, cols: self.rows, data }
    }

    pub fn map<U, F: FnMut(&T) -> U>(&self, f: F) -> Mat<U> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }
}

pub fn zeros<D: Domain>(d: &D, rows: usize, cols: usize) -> Mat<D::Elem> {
    Mat::filled(rows, cols, d.zero())
}

pub fn mat_mul<D: Domain>(d: &D, a: &Mat<D::Elem>, b: &Mat<D::Elem>) -> Mat<D::Elem> {
    assert_eq!(a.cols, b.rows);
    let mut out = zeros(d, a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let x = a.get(i, k);
            if d.is_zero(x) {
                continue;
            }
            for j in 0..b.cols {
                let y = b.get(k, j);
                if !d.is_zero(y) {
                    let v = d.add(out.get(i, j), &d.mul(x, y));
                    out.set(i, j, v);
                }
            }
        }
    }
    out
}

pub fn mat_vec<D: Domain>(d: &D, a: &Mat<D::Elem>, v: &[D::Elem]) -> Vec<D::Elem> {
    assert_eq!(a.cols, v.len());
    (0..a.rows)
        .map(|i| {
            let mut s = d.zero();
            for (j, x) in v.iter().enumerate() {
                let y = a.get(i, j);
                if !d.is_zero(x) && !d.is_zero(y) {
                    s = d.add(&s, &d.mul(y, x));
                }
            }
            s
        })
        .collect()
}

pub fn is_zero_mat<D: Domain>(d: &D, a: &Mat<D::Elem>) -> bool {
    a.data.iter().all(|x| d.is_zero(x))
}

/// How elimination picks a pivot among admissible candidates.
pub enum PivotRule {
    First,
    Random(ChaCha8Rng),
}

impl PivotRule {
    pub fn choose(&mut self, candidates: &[usize]) -> usize {
        match self {
            PivotRule::First => candidates[0],
            PivotRule::Random(rng) => candidates[rng.gen_range(0..candidates.len())],
        }
    }
}

/// Fraction-free Gaussian elimination determinant (Bareiss).
pub fn bareiss_det<D: Domain>(d: &D, m: &Mat<D::Elem>, rule: &mut PivotRule) -> D::Elem {
    assert_eq!(m.rows, m.cols, "determinant of non-square matrix");
    let n = m.rows;
    if n == 0 {
        return d.one();
    }
    let mut a = m.clone();
    let mut prev = d.one();
    let mut negate = false;
    for k in 0..n {
        let cands: Vec<usize> = (k..n).filter(|&i| !d.is_zero(a.get(i, k))).collect();
        if cands.is_empty() {
            return d.zero();
        }
        let p = rule.choose(&cands);
        if p != k {
            a.swap_rows(p, k);
            negate = !negate;
        }
        let pivot = a.get(k, k).clone();
        for i in k + 1..n {
            let aik = a.get(i, k).clone();
            for j in k + 1..n {
                let t = d.sub(&d.mul(&pivot, a.get(i, j)), &d.mul(&aik, a.get(k, j)));
                let v = d.exact_div(&t, &prev).expect("Bareiss division is exact");
                a.set(i, j, v);
            }
            a.set(i, k, d.zero());
        }
        prev = pivot;
    }
    let det = a.get(n - 1, n - 1).clone();
    if negate {
        d.neg(&det)
    } else {
        det
    }
}

/// Laplace expansion along the first row. Exponential; for cross-checks only.
pub fn cofactor_det<D: Domain>(d: &D, m: &Mat<D::Elem>) -> D::Elem {
    assert_eq!(m.rows, m.cols);
    let n = m.rows;
    if n == 0 {
        return d.one();
    }
    let mut acc = d.zero();
    for j in 0..n {
        let x = m.get(0, j);
        if d.is_zero(x) {
            continue;
        }
        let minor_rows: Vec<Vec<D::Elem>> = (1..n)
            .map(|i| (0..n).filter(|&c| c != j).map(|c| m.get(i, c).clone()).collect())
            .collect();
        let minor = Mat::from_rows(n - 1, n - 1, minor_rows);
        let t = d.mul(x, &cofactor_det(d, &minor));
        acc = if j % 2 == 0 { d.add(&acc, &t) } else { d.sub(&acc, &t) };
    }
    acc
}

/// Scan `vectors` in `order` and keep those that increase the rank, using
/// incremental fraction-free elimination.
pub fn greedy_independent<D: Domain>(
    d: &D,
    vectors: &[Vec<D::Elem>],
    order: &[usize],
    rule: &mut PivotRule,
) -> Vec<usize> {
    let mut chosen = Vec::new();
    let mut rows: Vec<(Vec<D::Elem>, usize)> = Vec::new();
    for &idx in order {
        let mut v = vectors[idx].clone();
        let mut prev = d.one();
        for (row, p) in &rows {
            let dk = &row[*p];
            let vp = v[*p].clone();
            v = v
                .iter()
                .zip(row)
                .map(|(x, r)| {
                    let t = d.sub(&d.mul(dk, x), &d.mul(&vp, r));
                    d.exact_div(&t, &prev).expect("fraction-free step is exact")
                })
                .collect();
            prev = dk.clone();
        }
        let nz: Vec<usize> = (0..v.len()).filter(|&i| !d.is_zero(&v[i])).collect();
        if nz.is_empty() {
            continue;
        }
        let p = rule.choose(&nz);
        rows.push((v, p));
        chosen.push(idx);
    }
    chosen
}

pub fn rank<F: Field>(f: &F, m: &Mat<F::Elem>) -> usize {
    let cols = m.cols_vec();
    let order: Vec<usize> = (0..cols.len()).collect();
    f.independent_subset(&cols, &order, &mut PivotRule::First).len()
}

/// Reduced row echelon form; returns the matrix and its pivot columns.
pub fn rref<F: Field>(f: &F, m: &Mat<F::Elem>) -> (Mat<F::Elem>, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(p) = (r..a.rows).find(|&i| !f.is_zero(a.get(i, c))) else {
            continue;
        };
        a.swap_rows(p, r);
        let inv = f.inv(a.get(r, c));
        for j in c..a.cols {
            let v = f.mul(a.get(r, j), &inv);
            a.set(r, j, v);
        }
        for i in 0..a.rows {
            if i == r || f.is_zero(a.get(i, c)) {
                continue;
            }
            let factor = a.get(i, c).clone();
            for j in c..a.cols {
                if f.is_zero(a.get(r, j)) {
                    continue;
                }
                let v = f.sub(a.get(i, j), &f.mul(&factor, a.get(r, j)));
                a.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

/// Basis of the right kernel, one vector per free column, in column order.
pub fn nullspace<F: Field>(f: &F, m: &Mat<F::Elem>) -> Vec<Vec<F::Elem>> {
    let (r, pivots) = rref(f, m);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![f.zero(); m.cols];
            v[fc] = f.one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(r.get(i, fc));
            }
            v
        })
        .collect()
}

/// Some solution of `a x = b`, or `None` when inconsistent.
pub fn solve<F: Field>(f: &F, a: &Mat<F::Elem>, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
    assert_eq!(a.rows, b.len());
    let mut aug_rows = Vec::with_capacity(a.rows);
    for (i, bi) in b.iter().enumerate() {
        let mut row = a.row(i).to_vec();
        row.push(bi.clone());
        aug_rows.push(row);
    }
    let aug = Mat::from_rows(a.rows, a.cols + 1, aug_rows);
    let (r, pivots) = rref(f, &aug);
    if pivots.last() == Some(&a.cols) {
        return None;
    }
    let mut x = vec![f.zero(); a.cols];
    for (i, &pc) in pivots.iter().enumerate() {
        x[pc] = r.get(i, a.cols).clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::Rationals;
    use num_rational::BigRational;
    use proptest::prelude::*;
    use rand::SeedableRng;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn mat(n: usize, v: &[i64]) -> Mat<BigRational> {
        Mat::from_rows(n, n, v.chunks(n).map(|r| r.iter().map(|&x| q(x)).collect()).collect())
    }

    proptest! {
        #[test]
        fn bareiss_agrees_with_cofactor(n in 1usize..5, seed in any::<u64>(), entries in prop::collection::vec(-4i64..5, 16)) {
            let m = mat(n, &entries[..n * n]);
            let f = Rationals;
            let expected = cofactor_det(&f, &m);
            prop_assert_eq!(bareiss_det(&f, &m, &mut PivotRule::First), expected.clone());
            let mut rule = PivotRule::Random(ChaCha8Rng::seed_from_u64(seed));
            prop_assert_eq!(bareiss_det(&f, &m, &mut rule), expected);
        }

        #[test]
        fn kernel_vectors_are_killed(rows in 1usize..4, cols in 1usize..5, entries in prop::collection::vec(-2i64..3, 16)) {
            let f = Rationals;
            let m = Mat::from_rows(rows, cols, (0..rows).map(|i| (0..cols).map(|j| q(entries[i * cols + j])).collect()).collect());
            let ker = nullspace(&f, &m);
            prop_assert_eq!(ker.len() + rank(&f, &m), cols);
            for v in ker {
                prop_assert!(mat_vec(&f, &m, &v).iter().all(|x| f.is_zero(x)));
            }
        }
    }

    #[test]
    fn greedy_skips_dependent_vectors() {
        let f = Rationals;
        let vs = vec![vec![q(1), q(2)], vec![q(2), q(4)], vec![q(0), q(1)]];
        assert_eq!(greedy_independent(&f, &vs, &[0, 1, 2], &mut PivotRule::First), vec![0, 2]);
        assert_eq!(greedy_independent(&f, &vs, &[1, 0, 2], &mut PivotRule::First), vec![1, 2]);
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let f = Rationals;
        let a = mat(2, &[1, 1, 2, 2]);
        assert!(solve(&f, &a, &[q(1), q(3)]).is_none());
        let x = solve(&f, &a, &[q(1), q(2)]).unwrap();
        assert_eq!(mat_vec(&f, &a, &x), vec![q(1), q(2)]);
    }
}
