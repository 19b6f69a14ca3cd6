//! Sparse multivariate polynomials over the integers.
//!
//! Terms are kept in a `BTreeMap` keyed by exponent vectors, so the last
//! entry is the leading term in lexicographic order with variable 0 most
//! significant. Zero coefficients are never stored.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Domain;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigInt::one())
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn monomial(exps: Vec<u32>, c: BigInt) -> Self {
        let mut p = Self::zero(exps.len());
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, BigInt::one())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().all(|(e, c)| c.is_one() && e.iter().all(|&x| x == 0))
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Vec<u32>, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Leading term in lex order. Panics on zero.
    pub fn leading(&self) -> (&Vec<u32>, &BigInt) {
        self.terms.iter().next_back().expect("leading term of zero polynomial")
    }

    pub fn leading_coeff(&self) -> BigInt {
        self.terms.values().next_back().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn constant_term(&self) -> BigInt {
        self.terms.get(&vec![0; self.nvars]).cloned().unwrap_or_else(BigInt::zero)
    }

    fn add_term(&mut self, e: Vec<u32>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut r = self.clone();
        for (e, c) in &other.terms {
            r.add_term(e.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut r = self.clone();
        for (e, c) in &other.terms {
            r.add_term(e.clone(), -c);
        }
        r
    }

    pub fn neg(&self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut r = Poly::zero(self.nvars);
        if self.is_zero() || other.is_zero() {
            return r;
        }
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                r.add_term(e, c1 * c2);
            }
        }
        r
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    pub fn pow(&self, mut n: u32) -> Poly {
        let mut acc = Poly::one(self.nvars);
        let mut sq = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&sq);
            }
            n >>= 1;
            if n > 0 {
                sq = sq.mul(&sq);
            }
        }
        acc
    }

    /// Multiply by the monomial with exponent vector `shift`.
    pub fn shift(&self, shift: &[u32]) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    /// Gcd of the integer coefficients, non-negative.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn div_int_exact(&self, c: &BigInt) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, x)| {
                    debug_assert!((x % c).is_zero());
                    (e.clone(), x / c)
                })
                .collect(),
        }
    }

    /// Exponent-wise minimum over all terms (the largest monomial divisor).
    pub fn min_exponents(&self) -> Vec<u32> {
        let mut m: Option<Vec<u32>> = None;
        for e in self.terms.keys() {
            m = Some(match m {
                None => e.clone(),
                Some(m) => m.iter().zip(e).map(|(a, b)| *a.min(b)).collect(),
            });
        }
        m.unwrap_or_else(|| vec![0; self.nvars])
    }

    /// Divide by a monomial that is known to divide every term.
    pub fn unshift(&self, shift: &[u32]) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a - b).collect(), c.clone()))
                .collect(),
        }
    }

    /// Exact division; `None` when `divisor` does not divide `self`.
    pub fn exact_div(&self, divisor: &Poly) -> Option<Poly> {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Poly::zero(self.nvars));
        }
        if divisor.terms.len() == 1 {
            let (de, dc) = divisor.leading();
            let mut q = Poly::zero(self.nvars);
            for (e, c) in &self.terms {
                if e.iter().zip(de).any(|(a, b)| a < b) || !(c % dc).is_zero() {
                    return None;
                }
                q.terms.insert(e.iter().zip(de).map(|(a, b)| a - b).collect(), c / dc);
            }
            return Some(q);
        }
        let (de, dc) = {
            let (e, c) = divisor.leading();
            (e.clone(), c.clone())
        };
        let mut r = self.clone();
        let mut q = Poly::zero(self.nvars);
        while !r.is_zero() {
            let (re, rc) = {
                let (e, c) = r.leading();
                (e.clone(), c.clone())
            };
            if re.iter().zip(&de).any(|(a, b)| a < b) || !(&rc % &dc).is_zero() {
                return None;
            }
            let te: Vec<u32> = re.iter().zip(&de).map(|(a, b)| a - b).collect();
            let tc = &rc / &dc;
            for (e, c) in &divisor.terms {
                let ee: Vec<u32> = e.iter().zip(&te).map(|(a, b)| a + b).collect();
                r.add_term(ee, -(c * &tc));
            }
            q.add_term(te, tc);
        }
        Some(q)
    }

    /// Highest-index variable that occurs with positive degree.
    fn main_var(&self) -> Option<usize> {
        let mut best = None;
        for e in self.terms.keys() {
            for (i, &x) in e.iter().enumerate().rev() {
                if x > 0 {
                    if best.is_none_or(|b| i > b) {
                        best = Some(i);
                    }
                    break;
                }
            }
        }
        best
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|e| e[var]).max().unwrap_or(0)
    }

    /// Coefficients with respect to `var`, index = degree.
    fn to_univariate(&self, var: usize) -> Vec<Poly> {
        let d = self.degree_in(var) as usize;
        let mut out = vec![Poly::zero(self.nvars); d + 1];
        for (e, c) in &self.terms {
            let k = e[var] as usize;
            let mut e2 = e.clone();
            e2[var] = 0;
            out[k].terms.insert(e2, c.clone());
        }
        out
    }

    fn from_univariate(nvars: usize, var: usize, coeffs: &[Poly]) -> Poly {
        let mut r = Poly::zero(nvars);
        for (k, c) in coeffs.iter().enumerate() {
            for (e, x) in &c.terms {
                let mut e2 = e.clone();
                e2[var] += k as u32;
                r.add_term(e2, x.clone());
            }
        }
        r
    }

    /// Flip the sign so that the leading coefficient is positive.
    pub fn normalize_sign(self) -> Poly {
        if !self.is_zero() && self.leading().1.is_negative() {
            self.neg()
        } else {
            self
        }
    }

    /// Greatest common divisor with positive leading coefficient.
    pub fn gcd(&self, other: &Poly) -> Poly {
        gcd(self, other)
    }

    pub fn format(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(i, &x)| if x == 1 { names[i].clone() } else { format!("{}^{}", names[i], x) })
                .collect();
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if mono.is_empty() {
                let _ = write!(s, "{abs}");
            } else {
                if !abs.is_one() {
                    let _ = write!(s, "{abs}*");
                }
                s.push_str(&mono.join("*"));
            }
        }
        s
    }
}

fn content_of(coeffs: &[Poly]) -> Poly {
    let mut g: Option<Poly> = None;
    for c in coeffs.iter().filter(|c| !c.is_zero()) {
        g = Some(match g {
            None => c.clone().normalize_sign(),
            Some(g) => gcd(&g, c),
        });
        if g.as_ref().is_some_and(|g| g.is_one()) {
            break;
        }
    }
    g.expect("content of zero polynomial")
}

fn trim(p: &mut Vec<Poly>) {
    while p.len() > 1 && p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn is_zero_uni(p: &[Poly]) -> bool {
    p.iter().all(|c| c.is_zero())
}

fn deg_uni(p: &[Poly]) -> usize {
    p.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
}

fn prem(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    let n = deg_uni(b);
    let lb = b[n].clone();
    let mut r: Vec<Poly> = a.to_vec();
    trim(&mut r);
    while !is_zero_uni(&r) && deg_uni(&r) >= n {
        let d = deg_uni(&r);
        let lr = r[d].clone();
        for c in r.iter_mut() {
            *c = c.mul(&lb);
        }
        for (i, bi) in b.iter().enumerate().take(n + 1) {
            let t = lr.mul(bi);
            r[i + d - n] = r[i + d - n].sub(&t);
        }
        trim(&mut r);
    }
    r
}

fn primitive_part(p: &[Poly]) -> Vec<Poly> {
    let c = content_of(p);
    p.iter().map(|x| x.exact_div(&c).expect("content divides coefficients")).collect()
}

fn gcd(a: &Poly, b: &Poly) -> Poly {
    let n = a.nvars;
    if a.is_zero() {
        return b.clone().normalize_sign();
    }
    if b.is_zero() {
        return a.clone().normalize_sign();
    }
    let var = match (a.main_var(), b.main_var()) {
        (None, None) => return Poly::constant(n, a.content().gcd(&b.content())),
        (x, y) => x.max(y).unwrap(),
    };
    let ua = a.to_univariate(var);
    let ub = b.to_univariate(var);
    let ca = content_of(&ua);
    let cb = content_of(&ub);
    let gc = gcd(&ca, &cb);
    let mut pa: Vec<Poly> = ua.iter().map(|x| x.exact_div(&ca).unwrap()).collect();
    let mut pb: Vec<Poly> = ub.iter().map(|x| x.exact_div(&cb).unwrap()).collect();
    trim(&mut pa);
    trim(&mut pb);
    if deg_uni(&pa) < deg_uni(&pb) {
        std::mem::swap(&mut pa, &mut pb);
    }
    while !is_zero_uni(&pb) {
        let r = prem(&pa, &pb);
        pa = pb;
        pb = if is_zero_uni(&r) { r } else { primitive_part(&r) };
    }
    let g = Poly::from_univariate(n, var, &primitive_part(&pa));
    g.mul(&gc).normalize_sign()
}

/// The ring of integer polynomials in a fixed number of variables.
#[derive(Clone, Debug)]
pub struct IntPolys {
    pub nvars: usize,
}

impl Domain for IntPolys {
    type Elem = Poly;

    fn zero(&self) -> Poly {
        Poly::zero(self.nvars)
    }
    fn one(&self) -> Poly {
        Poly::one(self.nvars)
    }
    fn is_zero(&self, a: &Poly) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Poly, b: &Poly) -> Poly {
        a.add(b)
    }
    fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        a.sub(b)
    }
    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        a.mul(b)
    }
    fn neg(&self, a: &Poly) -> Poly {
        a.neg()
    }
    fn exact_div(&self, a: &Poly, b: &Poly) -> Option<Poly> {
        a.exact_div(b)
    }
    fn from_i64(&self, n: i64) -> Poly {
        Poly::constant(self.nvars, BigInt::from(n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(nvars: usize, terms: &[(&[u32], i64)]) -> Poly {
        let mut r = Poly::zero(nvars);
        for (e, c) in terms {
            r = r.add(&Poly::monomial(e.to_vec(), BigInt::from(*c)));
        }
        r
    }

    #[test]
    fn exact_division_roundtrip() {
        let a = p(2, &[(&[1, 0], 1), (&[0, 1], -1), (&[0, 0], 3)]);
        let b = p(2, &[(&[2, 1], 2), (&[0, 0], -1)]);
        let ab = a.mul(&b);
        assert_eq!(ab.exact_div(&a).unwrap(), b);
        assert_eq!(ab.exact_div(&b).unwrap(), a);
        assert!(ab.add(&Poly::one(2)).exact_div(&a).is_none());
    }

    #[test]
    fn univariate_gcd() {
        // (t-1)(t+2) and (t-1)(t^2+1)
        let t1 = p(1, &[(&[1], 1), (&[0], -1)]);
        let a = t1.mul(&p(1, &[(&[1], 1), (&[0], 2)]));
        let b = t1.mul(&p(1, &[(&[2], 1), (&[0], 1)]));
        assert_eq!(a.gcd(&b), t1);
    }

    #[test]
    fn multivariate_gcd_with_content() {
        let x = Poly::var(3, 0);
        let y = Poly::var(3, 1);
        let z = Poly::var(3, 2);
        let g = x.mul(&y).sub(&z.pow(2)).scale(&BigInt::from(6));
        let a = g.mul(&x.add(&Poly::one(3)));
        let b = g.mul(&y.sub(&z)).scale(&BigInt::from(4));
        assert_eq!(a.gcd(&b), g.clone().normalize_sign());
        assert_eq!(a.gcd(&Poly::zero(3)), a.clone().normalize_sign());
    }

    #[test]
    fn coprime_gcd_is_one() {
        let a = p(2, &[(&[1, 0], 1), (&[0, 1], 1)]);
        let b = p(2, &[(&[1, 0], 1), (&[0, 1], -1)]);
        assert!(a.gcd(&b).is_one());
    }

    #[test]
    fn formatting() {
        let names = vec!["t1".to_string(), "t2".to_string()];
        let a = p(2, &[(&[2, 0], 1), (&[1, 1], -3), (&[0, 0], 1)]);
        assert_eq!(a.format(&names), "t1^2 - 3*t1*t2 + 1");
    }
}
