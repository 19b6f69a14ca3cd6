//! Exact coefficient rings and the linear algebra built on them.
//!
//! Rings are passed around as explicit context objects (a [`Domain`] or
//! [`Field`] value) rather than through operator overloading, because the
//! cyclotomic field and the rational function field both carry runtime
//! parameters (the order `n`, the number of variables).

pub mod cyclotomic;
pub mod linalg;
pub mod poly;
pub mod rational;
pub mod ratfunc;
pub mod smith;
pub mod upoly;

use std::fmt::Debug;

pub use cyclotomic::{CyclotomicField, CyclotomicElem};
pub use linalg::Mat;
pub use poly::Poly;
pub use rational::{Integers, Rationals};
pub use ratfunc::{RatFunc, RationalFunctions};

/// An integral domain in which exact division can be attempted.
pub trait Domain: Clone + Debug {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// `a / b` when `b` divides `a`; `None` otherwise.
    fn exact_div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem>;
    fn from_i64(&self, n: i64) -> Self::Elem;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }
}

/// A field with exact arithmetic.
pub trait Field: Domain {
    fn inv(&self, a: &Self::Elem) -> Self::Elem;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.inv(b))
    }

    /// Canonical text form of an element.
    fn format(&self, a: &Self::Elem) -> String;

    /// The representative of `{a, -a}` used when comparing up to sign.
    fn canonical_up_to_sign(&self, a: &Self::Elem) -> Self::Elem;

    /// Sign of a nonzero element when the field is ordered (rationals only).
    fn sign(&self, _a: &Self::Elem) -> Option<i32> {
        None
    }

    /// Determinant of a square matrix. Fields with expensive normalisation
    /// override this with a fraction-free route.
    fn det(&self, m: &Mat<Self::Elem>) -> Self::Elem {
        self.det_pivot(m, &mut linalg::PivotRule::First)
    }

    fn det_pivot(&self, m: &Mat<Self::Elem>, rule: &mut linalg::PivotRule) -> Self::Elem {
        linalg::bareiss_det(self, m, rule)
    }

    /// Indices of a maximal independent subset of `vectors`, scanning them in
    /// `order`. Fields override this to run the scan in a cheaper domain.
    fn independent_subset(
        &self,
        vectors: &[Vec<Self::Elem>],
        order: &[usize],
        rule: &mut linalg::PivotRule,
    ) -> Vec<usize> {
        linalg::greedy_independent(self, vectors, order, rule)
    }

    fn pow_i64(&self, a: &Self::Elem, e: i64) -> Self::Elem {
        let base = if e < 0 { self.inv(a) } else { a.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = self.one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &sq);
            }
            e >>= 1;
            if e > 0 {
                sq = self.mul(&sq, &sq);
            }
        }
        acc
    }
}
