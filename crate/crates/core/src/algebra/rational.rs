use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Domain, Field};

/// The field of rational numbers.
#[derive(Clone, Debug, Default)]
pub struct Rationals;

impl Domain for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn exact_div(&self, a: &BigRational, b: &BigRational) -> Option<BigRational> {
        if b.is_zero() {
            None
        } else {
            Some(a / b)
        }
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
}

impl Field for Rationals {
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }

    fn format(&self, a: &BigRational) -> String {
        a.to_string()
    }

    fn canonical_up_to_sign(&self, a: &BigRational) -> BigRational {
        a.abs()
    }

    fn sign(&self, a: &BigRational) -> Option<i32> {
        Some(if a.is_negative() {
            -1
        } else if a.is_zero() {
            0
        } else {
            1
        })
    }
}

/// The ring of integers, used for the untwisted cellular matrices.
#[derive(Clone, Debug, Default)]
pub struct Integers;

impl Domain for Integers {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn exact_div(&self, a: &BigInt, b: &BigInt) -> Option<BigInt> {
        (!b.is_zero() && (a % b).is_zero()).then(|| a / b)
    }
    fn from_i64(&self, n: i64) -> BigInt {
        BigInt::from(n)
    }
}
