//! Rational functions ℚ(t₁,…,t_r), stored as reduced fractions of integer polynomials.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::linalg::{self, Mat, PivotRule};
use super::poly::{IntPolys, Poly};
use super::{Domain, Field};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let n = num.nvars();
        if num.is_zero() {
            return RatFunc { num, den: Poly::one(n) };
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g).unwrap(), den.exact_div(&g).unwrap())
        };
        if den.leading_coeff().is_negative() {
            num = num.neg();
            den = den.neg();
        }
        RatFunc { num, den }
    }

    pub fn from_poly(p: Poly) -> Self {
        let n = p.nvars();
        RatFunc { num: p, den: Poly::one(n) }
    }

    /// The Laurent monomial t^e.
    pub fn monomial(exps: &[i64]) -> Self {
        let pos: Vec<u32> = exps.iter().map(|&e| e.max(0) as u32).collect();
        let neg: Vec<u32> = exps.iter().map(|&e| (-e).max(0) as u32).collect();
        RatFunc {
            num: Poly::monomial(pos, BigInt::one()),
            den: Poly::monomial(neg, BigInt::one()),
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }
}

#[derive(Clone, Debug)]
pub struct RationalFunctions {
    pub nvars: usize,
}

impl RationalFunctions {
    pub fn new(nvars: usize) -> Self {
        RationalFunctions { nvars }
    }

    pub fn var_names(&self) -> Vec<String> {
        (1..=self.nvars).map(|i| format!("t{i}")).collect()
    }

    /// Multiply `v` by the lcm of its denominators; returns the integer
    /// polynomial vector and the multiplier.
    fn clear_denominators(&self, v: &[RatFunc]) -> (Vec<Poly>, Poly) {
        let mut l = Poly::one(self.nvars);
        for x in v {
            if !x.den.is_one() {
                let g = l.gcd(&x.den);
                l = l.mul(&x.den.exact_div(&g).unwrap());
            }
        }
        let out = v
            .iter()
            .map(|x| x.num.mul(&l.exact_div(&x.den).unwrap()))
            .collect();
        (out, l)
    }
}

impl Domain for RationalFunctions {
    type Elem = RatFunc;

    fn zero(&self) -> RatFunc {
        RatFunc::from_poly(Poly::zero(self.nvars))
    }
    fn one(&self) -> RatFunc {
        RatFunc::from_poly(Poly::one(self.nvars))
    }
    fn is_zero(&self, a: &RatFunc) -> bool {
        a.num.is_zero()
    }
    fn add(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        if a.den == b.den {
            return RatFunc::new(a.num.add(&b.num), a.den.clone());
        }
        RatFunc::new(a.num.mul(&b.den).add(&b.num.mul(&a.den)), a.den.mul(&b.den))
    }
    fn sub(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        self.add(a, &self.neg(b))
    }
    fn mul(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        if a.num.is_zero() || b.num.is_zero() {
            return self.zero();
        }
        RatFunc::new(a.num.mul(&b.num), a.den.mul(&b.den))
    }
    fn neg(&self, a: &RatFunc) -> RatFunc {
        RatFunc { num: a.num.neg(), den: a.den.clone() }
    }
    fn exact_div(&self, a: &RatFunc, b: &RatFunc) -> Option<RatFunc> {
        if b.num.is_zero() {
            None
        } else {
            Some(self.div(a, b))
        }
    }
    fn from_i64(&self, n: i64) -> RatFunc {
        RatFunc::from_poly(Poly::constant(self.nvars, BigInt::from(n)))
    }
}

impl Field for RationalFunctions {
    fn inv(&self, a: &RatFunc) -> RatFunc {
        assert!(!a.num.is_zero(), "inverse of zero rational function");
        RatFunc::new(a.den.clone(), a.num.clone())
    }

    fn format(&self, a: &RatFunc) -> String {
        let names = self.var_names();
        if a.den.is_one() {
            a.num.format(&names)
        } else {
            format!("({})/({})", a.num.format(&names), a.den.format(&names))
        }
    }

    fn canonical_up_to_sign(&self, a: &RatFunc) -> RatFunc {
        if !a.num.is_zero() && a.num.leading_coeff().is_negative() {
            self.neg(a)
        } else {
            a.clone()
        }
    }

    fn sign(&self, a: &RatFunc) -> Option<i32> {
        if a.num.is_constant() && a.den.is_constant() {
            let c = a.num.constant_term();
            Some(if c.is_negative() {
                -1
            } else if c.is_zero() {
                0
            } else {
                1
            })
        } else {
            None
        }
    }

    fn det_pivot(&self, m: &Mat<RatFunc>, rule: &mut PivotRule) -> RatFunc {
        assert_eq!(m.rows, m.cols);
        let ring = IntPolys { nvars: self.nvars };
        let mut scale = Poly::one(self.nvars);
        let mut rows = Vec::with_capacity(m.rows);
        for i in 0..m.rows {
            let (r, l) = self.clear_denominators(m.row(i));
            scale = scale.mul(&l);
            rows.push(r);
        }
        let pm = Mat::from_rows(m.rows, m.cols, rows);
        let d = linalg::bareiss_det(&ring, &pm, rule);
        RatFunc::new(d, scale)
    }

    fn independent_subset(&self, vectors: &[Vec<RatFunc>], order: &[usize], rule: &mut PivotRule) -> Vec<usize> {
        let ring = IntPolys { nvars: self.nvars };
        let cleared: Vec<Vec<Poly>> = vectors.iter().map(|v| self.clear_denominators(v).0).collect();
        linalg::greedy_independent(&ring, &cleared, order, rule)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_normalizes() {
        let f = RationalFunctions::new(1);
        let t = RatFunc::monomial(&[1]);
        let tinv = RatFunc::monomial(&[-1]);
        assert_eq!(f.mul(&t, &tinv), f.one());
        // (t - 1)/(t^2 - 1) = 1/(t + 1)
        let one = f.one();
        let a = f.div(&f.sub(&t, &one), &f.sub(&f.mul(&t, &t), &one));
        assert_eq!(a, f.inv(&f.add(&t, &one)));
        assert_eq!(f.format(&a), "(1)/(t1 + 1)");
    }

    #[test]
    fn det_matches_cofactor() {
        let f = RationalFunctions::new(2);
        let t = RatFunc::monomial(&[1, 0]);
        let s = RatFunc::monomial(&[0, -1]);
        let one = f.one();
        let m = Mat::from_rows(
            3,
            3,
            vec![
                vec![t.clone(), one.clone(), f.zero()],
                vec![s.clone(), f.sub(&one, &t), one.clone()],
                vec![one.clone(), f.mul(&t, &s), f.add(&s, &one)],
            ],
        );
        assert_eq!(f.det(&m), linalg::cofactor_det(&f, &m));
    }
}
