//! Smith normal form over Euclidean rings (the integers and ℚ[t]).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::linalg::Mat;
use super::upoly::UPoly;

pub trait Euclidean: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn divrem(&self, o: &Self) -> (Self, Self);
    /// Euclidean size; smaller means a better pivot.
    fn size(&self) -> BigInt;
    /// The canonical associate and the unit that produces it.
    fn normalize(&self) -> (Self, Self);
}

impl Euclidean for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn divrem(&self, o: &Self) -> (Self, Self) {
        self.div_mod_floor(o)
    }
    fn size(&self) -> BigInt {
        self.abs()
    }
    fn normalize(&self) -> (Self, Self) {
        if self.is_negative() {
            (-self, -<BigInt as One>::one())
        } else {
            (self.clone(), <BigInt as One>::one())
        }
    }
}

impl Euclidean for UPoly {
    fn zero() -> Self {
        UPoly::zero()
    }
    fn one() -> Self {
        UPoly::one()
    }
    fn is_zero(&self) -> bool {
        UPoly::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        UPoly::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        UPoly::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        UPoly::mul(self, o)
    }
    fn divrem(&self, o: &Self) -> (Self, Self) {
        UPoly::divrem(self, o)
    }
    fn size(&self) -> BigInt {
        BigInt::from(self.degree().map_or(0, |d| d + 1))
    }
    fn normalize(&self) -> (Self, Self) {
        if UPoly::is_zero(self) {
            return (self.clone(), UPoly::one());
        }
        let u = UPoly::constant(self.lc().recip());
        (UPoly::mul(self, &u), u)
    }
}

/// `U * A * V = D` with `D` diagonal, each entry dividing the next, and `U`,
/// `V` invertible.
#[derive(Clone, Debug)]
pub struct Smith<R> {
    pub u: Mat<R>,
    pub v: Mat<R>,
    pub diag: Vec<R>,
}

fn identity<R: Euclidean>(n: usize) -> Mat<R> {
    let mut m = Mat::filled(n, n, R::zero());
    for i in 0..n {
        m.set(i, i, R::one());
    }
    m
}

/// row_a += k * row_b
fn row_axpy<R: Euclidean>(m: &mut Mat<R>, a: usize, b: usize, k: &R) {
    for j in 0..m.cols {
        let x = m.get(b, j);
        if !x.is_zero() {
            let v = m.get(a, j).add(&k.mul(x));
            m.set(a, j, v);
        }
    }
}

/// col_a += k * col_b
fn col_axpy<R: Euclidean>(m: &mut Mat<R>, a: usize, b: usize, k: &R) {
    for i in 0..m.rows {
        let x = m.get(i, b);
        if !x.is_zero() {
            let v = m.get(i, a).add(&k.mul(x));
            m.set(i, a, v);
        }
    }
}

fn swap_cols<R: Clone>(m: &mut Mat<R>, a: usize, b: usize) {
    if a != b {
        for i in 0..m.rows {
            let x = m.get(i, a).clone();
            let y = m.get(i, b).clone();
            m.set(i, a, y);
            m.set(i, b, x);
        }
    }
}

fn scale_row<R: Euclidean>(m: &mut Mat<R>, a: usize, k: &R) {
    for j in 0..m.cols {
        let v = m.get(a, j).mul(k);
        m.set(a, j, v);
    }
}

pub fn smith<R: Euclidean>(a: &Mat<R>) -> Smith<R> {
    let (rows, cols) = (a.rows, a.cols);
    let mut m = a.clone();
    let mut u = identity::<R>(rows);
    let mut v = identity::<R>(cols);
    let mut diag = Vec::new();
    let neg_one = R::zero().sub(&R::one());
    for t in 0..rows.min(cols) {
        loop {
            // Smallest nonzero entry of the trailing block goes to (t, t).
            let mut best: Option<(usize, usize, BigInt)> = None;
            for i in t..rows {
                for j in t..cols {
                    let x = m.get(i, j);
                    if !x.is_zero() {
                        let s = x.size();
                        if best.as_ref().is_none_or(|b| s < b.2) {
                            best = Some((i, j, s));
                        }
                    }
                }
            }
            let Some((pi, pj, _)) = best else {
                return finish(u, v, diag);
            };
            m.swap_rows(pi, t);
            u.swap_rows(pi, t);
            swap_cols(&mut m, pj, t);
            swap_cols(&mut v, pj, t);
            let p = m.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..rows {
                if m.get(i, t).is_zero() {
                    continue;
                }
                let (q, r) = m.get(i, t).divrem(&p);
                let k = neg_one.mul(&q);
                row_axpy(&mut m, i, t, &k);
                row_axpy(&mut u, i, t, &k);
                if !r.is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if m.get(t, j).is_zero() {
                    continue;
                }
                let (q, r) = m.get(t, j).divrem(&p);
                let k = neg_one.mul(&q);
                col_axpy(&mut m, j, t, &k);
                col_axpy(&mut v, j, t, &k);
                if !r.is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // Enforce divisibility of the trailing block by the pivot.
            let mut fixed = true;
            'outer: for i in t + 1..rows {
                for j in t + 1..cols {
                    if !m.get(i, j).divrem(&p).1.is_zero() {
                        row_axpy(&mut m, t, i, &R::one());
                        row_axpy(&mut u, t, i, &R::one());
                        fixed = false;
                        break 'outer;
                    }
                }
            }
            if fixed {
                break;
            }
        }
        let (norm, unit) = m.get(t, t).normalize();
        scale_row(&mut m, t, &unit);
        scale_row(&mut u, t, &unit);
        diag.push(norm);
    }
    finish(u, v, diag)
}

fn finish<R: Euclidean>(u: Mat<R>, v: Mat<R>, diag: Vec<R>) -> Smith<R> {
    Smith { u, v, diag }
}

/// Invariant factors of an integer matrix, omitting zeros.
pub fn invariant_factors(a: &Mat<BigInt>) -> Vec<BigInt> {
    smith(a).diag
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::linalg::mat_mul;
    use crate::algebra::rational::Integers as Z;
    use proptest::prelude::*;

    fn int_mat(rows: usize, cols: usize, v: &[i64]) -> Mat<BigInt> {
        Mat::from_rows(rows, cols, v.chunks(cols).map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    #[test]
    fn known_invariants() {
        let a = int_mat(2, 2, &[2, 4, 6, 8]);
        assert_eq!(invariant_factors(&a), vec![BigInt::from(2), BigInt::from(4)]);
        let b = int_mat(3, 2, &[1, 1, 1, -1, 0, 0]);
        assert_eq!(invariant_factors(&b), vec![BigInt::from(1), BigInt::from(2)]);
    }

    proptest! {
        #[test]
        fn transforms_reproduce_diagonal(rows in 1usize..5, cols in 1usize..5, v in prop::collection::vec(-6i64..7, 16)) {
            let a = int_mat(rows, cols, &v[..rows * cols]);
            let s = smith(&a);
            let d = mat_mul(&Z, &mat_mul(&Z, &s.u, &a), &s.v);
            for i in 0..rows {
                for j in 0..cols {
                    let expect = if i == j && i < s.diag.len() { s.diag[i].clone() } else { BigInt::from(0) };
                    prop_assert_eq!(d.get(i, j).clone(), expect);
                }
            }
            for w in s.diag.windows(2) {
                prop_assert!(Zero::is_zero(&(&w[1] % &w[0])));
            }
            // Brute-force oracle: the first invariant factor is the gcd of all entries.
            let g = v[..rows * cols].iter().fold(BigInt::from(0), |g, &x| g.gcd(&BigInt::from(x)));
            if !Zero::is_zero(&g) {
                prop_assert_eq!(s.diag[0].clone(), g);
            }
        }
    }

    #[test]
    fn polynomial_smith() {
        // diag(t-1, (t-1)(t+1)) after mixing.
        let p = |c: &[i64]| UPoly::from_ints(c);
        let a = Mat::from_rows(2, 2, vec![vec![p(&[-1, 1]), p(&[-1, 1])], vec![p(&[0]), p(&[-1, 0, 1])]]);
        let s = smith(&a);
        assert_eq!(s.diag, vec![p(&[-1, 1]), p(&[-1, 0, 1])]);
    }
}
