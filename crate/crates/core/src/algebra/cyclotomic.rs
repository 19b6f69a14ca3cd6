//! The cyclotomic field ℚ(ζ_n), elements stored as reduced residues modulo Φ_n.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::upoly::{format_dense, UPoly};
use super::{Domain, Field};

/// Coefficients of a residue in ascending degree, always of length φ(n).
pub type CyclotomicElem = Vec<BigRational>;

#[derive(Clone, Debug)]
pub struct CyclotomicField {
    n: u32,
    phi: UPoly,
    deg: usize,
}

/// Φ_n as a polynomial, by dividing `x^n - 1` by Φ_d for proper divisors d.
pub fn cyclotomic_polynomial(n: u32) -> UPoly {
    assert!(n >= 1);
    let mut p = UPoly::monomial(n as usize).sub(&UPoly::one());
    for d in 1..n {
        if n.is_multiple_of(d) {
            let (q, r) = p.divrem(&cyclotomic_polynomial(d));
            debug_assert!(r.is_zero());
            p = q;
        }
    }
    p
}

impl CyclotomicField {
    pub fn new(n: u32) -> Self {
        let phi = cyclotomic_polynomial(n);
        let deg = phi.degree().unwrap();
        CyclotomicField { n, phi, deg }
    }

    pub fn order(&self) -> u32 {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.deg
    }

    fn reduce(&self, p: &UPoly) -> CyclotomicElem {
        let r = p.divrem(&self.phi).1;
        (0..self.deg).map(|k| r.coeff(k)).collect()
    }

    fn lift(&self, a: &CyclotomicElem) -> UPoly {
        UPoly::from_coeffs(a.clone())
    }

    /// ζ_n^k for any integer k.
    pub fn zeta_pow(&self, k: i64) -> CyclotomicElem {
        let e = k.rem_euclid(self.n as i64) as usize;
        self.reduce(&UPoly::monomial(e))
    }

    pub fn from_rational(&self, q: BigRational) -> CyclotomicElem {
        let mut v = vec![BigRational::zero(); self.deg];
        v[0] = q;
        v
    }
}

impl Domain for CyclotomicField {
    type Elem = CyclotomicElem;

    fn zero(&self) -> CyclotomicElem {
        vec![BigRational::zero(); self.deg]
    }
    fn one(&self) -> CyclotomicElem {
        self.from_rational(BigRational::one())
    }
    fn is_zero(&self, a: &CyclotomicElem) -> bool {
        a.iter().all(|x| x.is_zero())
    }
    fn add(&self, a: &CyclotomicElem, b: &CyclotomicElem) -> CyclotomicElem {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }
    fn sub(&self, a: &CyclotomicElem, b: &CyclotomicElem) -> CyclotomicElem {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }
    fn mul(&self, a: &CyclotomicElem, b: &CyclotomicElem) -> CyclotomicElem {
        self.reduce(&self.lift(a).mul(&self.lift(b)))
    }
    fn neg(&self, a: &CyclotomicElem) -> CyclotomicElem {
        a.iter().map(|x| -x).collect()
    }
    fn exact_div(&self, a: &CyclotomicElem, b: &CyclotomicElem) -> Option<CyclotomicElem> {
        if self.is_zero(b) {
            None
        } else {
            Some(self.mul(a, &self.inv(b)))
        }
    }
    fn from_i64(&self, n: i64) -> CyclotomicElem {
        self.from_rational(BigRational::from_integer(BigInt::from(n)))
    }
}

impl Field for CyclotomicField {
    fn inv(&self, a: &CyclotomicElem) -> CyclotomicElem {
        let (g, s, _) = self.lift(a).ext_gcd(&self.phi);
        assert!(g == UPoly::one(), "inverse of zero in cyclotomic field");
        self.reduce(&s)
    }

    fn format(&self, a: &CyclotomicElem) -> String {
        format_dense(a, "z")
    }

    fn canonical_up_to_sign(&self, a: &CyclotomicElem) -> CyclotomicElem {
        match a.iter().rev().find(|x| !x.is_zero()) {
            Some(x) if x.is_negative() => self.neg(a),
            _ => a.clone(),
        }
    }

    fn sign(&self, a: &CyclotomicElem) -> Option<i32> {
        // Only rational elements carry a sign.
        if a.iter().skip(1).all(|x| x.is_zero()) {
            Some(if a[0].is_negative() {
                -1
            } else if a[0].is_zero() {
                0
            } else {
                1
            })
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), UPoly::from_ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), UPoly::from_ints(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(6), UPoly::from_ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(12), UPoly::from_ints(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn zeta_has_order_n() {
        for n in [2u32, 3, 5, 6, 8] {
            let f = CyclotomicField::new(n);
            let z = f.zeta_pow(1);
            assert_eq!(f.pow_i64(&z, n as i64), f.one());
            for k in 1..n {
                assert_ne!(f.zeta_pow(k as i64), f.one());
            }
            assert_eq!(f.mul(&z, &f.zeta_pow(-1)), f.one());
        }
    }

    #[test]
    fn inverse_of_one_minus_zeta() {
        let f = CyclotomicField::new(5);
        let x = f.sub(&f.one(), &f.zeta_pow(1));
        let y = f.inv(&x);
        assert_eq!(f.mul(&x, &y), f.one());
    }
}
