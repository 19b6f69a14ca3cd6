//! Dense univariate polynomials with rational coefficients.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::Domain;

/// Coefficients in ascending degree; no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct UPoly {
    c: Vec<BigRational>,
}

impl UPoly {
    pub fn zero() -> Self {
        UPoly { c: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(a: BigRational) -> Self {
        Self::from_coeffs(vec![a])
    }

    /// `t^k`.
    pub fn monomial(k: usize) -> Self {
        let mut c = vec![BigRational::zero(); k + 1];
        c[k] = BigRational::one();
        UPoly { c }
    }

    pub fn from_coeffs(mut c: Vec<BigRational>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UPoly { c }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::from_coeffs(c.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lc(&self) -> BigRational {
        self.c.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.c.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, o: &UPoly) -> UPoly {
        let n = self.c.len().max(o.c.len());
        Self::from_coeffs((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &UPoly) -> UPoly {
        let n = self.c.len().max(o.c.len());
        Self::from_coeffs((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn neg(&self) -> UPoly {
        UPoly { c: self.c.iter().map(|x| -x).collect() }
    }

    pub fn scale(&self, a: &BigRational) -> UPoly {
        Self::from_coeffs(self.c.iter().map(|x| x * a).collect())
    }

    pub fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut c = vec![BigRational::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Self::from_coeffs(c)
    }

    pub fn divrem(&self, d: &UPoly) -> (UPoly, UPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (UPoly::zero(), self.clone());
        }
        let lc = d.lc();
        let mut q = vec![BigRational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let f = &r[k + dd] / &lc;
            if !f.is_zero() {
                for (j, dj) in d.c.iter().enumerate() {
                    r[k + j] -= &f * dj;
                }
            }
            q[k] = f;
        }
        r.truncate(dd);
        (Self::from_coeffs(q), Self::from_coeffs(r))
    }

    pub fn monic(&self) -> UPoly {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lc().recip();
        self.scale(&l)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s*self + t*o = g`, `g` monic.
    pub fn ext_gcd(&self, o: &UPoly) -> (UPoly, UPoly, UPoly) {
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (UPoly::one(), UPoly::zero());
        let (mut t0, mut t1) = (UPoly::zero(), UPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let l = r0.lc().recip();
        (r0.scale(&l), s0.scale(&l), t0.scale(&l))
    }

    /// Multiplicity of `t` as a factor.
    pub fn t_valuation(&self) -> usize {
        self.c.iter().position(|x| !x.is_zero()).unwrap_or(0)
    }

    /// Divide out the largest power of `t`.
    pub fn strip_t(&self) -> UPoly {
        let v = self.t_valuation();
        UPoly { c: self.c[v..].to_vec() }
    }

    /// Integer primitive polynomial with positive leading coefficient that is
    /// a rational multiple of `self`.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let mut den = BigInt::one();
        for x in &self.c {
            den = den.lcm(x.denom());
        }
        let ints: Vec<BigInt> = self.c.iter().map(|x| (x * &den).to_integer()).collect();
        let mut g = BigInt::zero();
        for x in &ints {
            g = g.gcd(x);
        }
        let s = if ints.last().unwrap().is_negative() { -g } else { g };
        ints.iter().map(|x| x / &s).collect()
    }

    pub fn format(&self, var: &str) -> String {
        format_dense(&self.c, var)
    }
}

/// Render ascending coefficients as a polynomial, highest degree first.
pub fn format_dense(c: &[BigRational], var: &str) -> String {
    let mut out = String::new();
    let mut first = true;
    for (k, a) in c.iter().enumerate().rev() {
        if a.is_zero() {
            continue;
        }
        let neg = a.is_negative();
        let abs = a.abs();
        if first {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        first = false;
        let mono = match k {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{k}"),
        };
        if mono.is_empty() {
            out.push_str(&abs.to_string());
        } else if abs.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{abs}*{mono}"));
        }
    }
    if first {
        out.push('0');
    }
    out
}

/// The ring ℚ[t].
#[derive(Clone, Debug, Default)]
pub struct UPolys;

impl Domain for UPolys {
    type Elem = UPoly;

    fn zero(&self) -> UPoly {
        UPoly::zero()
    }
    fn one(&self) -> UPoly {
        UPoly::one()
    }
    fn is_zero(&self, a: &UPoly) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &UPoly, b: &UPoly) -> UPoly {
        a.add(b)
    }
    fn sub(&self, a: &UPoly, b: &UPoly) -> UPoly {
        a.sub(b)
    }
    fn mul(&self, a: &UPoly, b: &UPoly) -> UPoly {
        a.mul(b)
    }
    fn neg(&self, a: &UPoly) -> UPoly {
        a.neg()
    }
    fn exact_div(&self, a: &UPoly, b: &UPoly) -> Option<UPoly> {
        if b.is_zero() {
            return None;
        }
        let (q, r) = a.divrem(b);
        r.is_zero().then_some(q)
    }
    fn from_i64(&self, n: i64) -> UPoly {
        UPoly::from_ints(&[n])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divrem_and_gcd() {
        let a = UPoly::from_ints(&[-1, 0, 1]); // t^2 - 1
        let b = UPoly::from_ints(&[1, 1]); // t + 1
        let (q, r) = a.divrem(&b);
        assert_eq!(q, UPoly::from_ints(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(a.gcd(&UPoly::from_ints(&[-1, 1]).mul(&UPoly::from_ints(&[3, 0, 1]))), UPoly::from_ints(&[-1, 1]));
    }

    #[test]
    fn ext_gcd_identity() {
        let a = UPoly::from_ints(&[1, 2, 0, 1]);
        let b = UPoly::from_ints(&[1, 0, 1]);
        let (g, s, t) = a.ext_gcd(&b);
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
        assert_eq!(g, UPoly::one());
    }

    #[test]
    fn primitive_form() {
        let p = UPoly::from_ints(&[0, 0, -2, 4]).scale(&BigRational::new(1.into(), 3.into()));
        assert_eq!(p.strip_t().primitive_integer(), vec![BigInt::from(-1), BigInt::from(2)]);
        assert_eq!(p.format("t"), "4/3*t^3 - 2/3*t^2");
    }
}
