//! Dense univariate polynomials over a prime field F_p.
//!
//! Used as numerator/denominator storage for elements of the perfection of
//! F_p(t) and as the modulus arithmetic behind F_{p^n}.

use std::fmt;

/// Coefficients in ascending order, trimmed so the last entry is nonzero.
/// The zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct UniPoly {
    coeffs: Vec<u32>,
}

pub(crate) fn mod_inv(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p));
    mod_pow(a, (p - 2) as u64, p)
}

pub(crate) fn mod_pow(mut base: u32, mut exp: u64, p: u32) -> u32 {
    let m = p as u64;
    let mut acc = 1u64 % m;
    let mut b = base as u64 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    base = acc as u32;
    base
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly { coeffs: vec![1] }
    }

    pub fn constant(c: u32) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `s^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = 1;
        UniPoly { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<u32>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == 1
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn add(&self, other: &Self, p: u32) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).copied().unwrap_or(0);
            let b = other.coeffs.get(i).copied().unwrap_or(0);
            out.push((a + b) % p);
        }
        Self::from_coeffs(out)
    }

    pub fn neg(&self, p: u32) -> Self {
        UniPoly {
            coeffs: self.coeffs.iter().map(|&c| (p - c) % p).collect(),
        }
    }

    pub fn sub(&self, other: &Self, p: u32) -> Self {
        self.add(&other.neg(p), p)
    }

    pub fn scale(&self, c: u32, p: u32) -> Self {
        let c = c as u64;
        Self::from_coeffs(self.coeffs.iter().map(|&a| (a as u64 * c % p as u64) as u32).collect())
    }

    pub fn mul(&self, other: &Self, p: u32) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if other.coeffs.len() == 1 {
            return self.scale(other.coeffs[0], p);
        }
        if self.coeffs.len() == 1 {
            return other.scale(self.coeffs[0], p);
        }
        let m = p as u64;
        let mut acc = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                acc[i + j] = (acc[i + j] + a as u64 * b as u64) % m;
            }
        }
        Self::from_coeffs(acc.into_iter().map(|c| c as u32).collect())
    }

    /// Euclidean division. Panics if `divisor` is zero.
    pub fn div_rem(&self, divisor: &Self, p: u32) -> (Self, Self) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let inv_lead = mod_inv(divisor.leading(), p) as u64;
        let m = p as u64;
        let mut quot = vec![0u32; rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd] as u64 * inv_lead % m;
            quot[k] = c as u32;
            if c == 0 {
                continue;
            }
            for (i, &b) in divisor.coeffs.iter().enumerate() {
                let sub = c * b as u64 % m;
                rem[k + i] = ((rem[k + i] as u64 + m - sub) % m) as u32;
            }
        }
        rem.truncate(dd);
        (Self::from_coeffs(quot), Self::from_coeffs(rem))
    }

    pub fn rem(&self, divisor: &Self, p: u32) -> Self {
        self.div_rem(divisor, p).1
    }

    /// Scale so the leading coefficient is 1. Zero stays zero.
    pub fn monic(&self, p: u32) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(mod_inv(self.leading(), p), p)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self, p: u32) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b, p);
            a = b;
            b = r;
        }
        a.monic(p)
    }

    /// Returns `(g, x)` with `g = gcd(self, modulus)` monic and `x * self ≡ g (mod modulus)`.
    pub fn inverse_mod(&self, modulus: &Self, p: u32) -> Option<Self> {
        let (mut r0, mut r1) = (modulus.clone(), self.rem(modulus, p));
        let (mut s0, mut s1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1, p);
            let s2 = s0.sub(&q.mul(&s1, p), p);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
        }
        if r0.degree() != Some(0) {
            return None;
        }
        Some(s0.scale(mod_inv(r0.leading(), p), p))
    }

    /// Substitute `s -> s^k`.
    pub fn inflate(&self, k: usize) -> Self {
        if k == 1 || self.coeffs.len() <= 1 {
            return self.clone();
        }
        let mut out = vec![0u32; (self.coeffs.len() - 1) * k + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[i * k] = c;
        }
        UniPoly { coeffs: out }
    }

    /// True when every nonzero coefficient sits at an index divisible by `k`.
    pub fn is_inflated_by(&self, k: usize) -> bool {
        self.coeffs.iter().enumerate().all(|(i, &c)| c == 0 || i % k == 0)
    }

    /// Inverse of [`inflate`](Self::inflate); caller checks [`is_inflated_by`](Self::is_inflated_by).
    pub fn deflate(&self, k: usize) -> Self {
        Self::from_coeffs(self.coeffs.iter().step_by(k).copied().collect())
    }

    pub fn pow(&self, mut exp: u64, p: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base, p);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base, p);
            }
        }
        acc
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly{:?}", self.coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_of_products() {
        let p = 3;
        let a = UniPoly::from_coeffs(vec![1, 1]); // s + 1
        let b = UniPoly::from_coeffs(vec![2, 0, 1]); // s^2 + 2
        let c = UniPoly::from_coeffs(vec![0, 1]); // s
        let g = a.mul(&b, p).gcd(&a.mul(&c, p), p);
        assert_eq!(g, a);
    }

    #[test]
    fn div_rem_reassembles() {
        let p = 5;
        let a = UniPoly::from_coeffs(vec![3, 0, 4, 1, 2]);
        let b = UniPoly::from_coeffs(vec![1, 2, 3]);
        let (q, r) = a.div_rem(&b, p);
        assert_eq!(q.mul(&b, p).add(&r, p), a);
        assert!(r.degree() < b.degree());
    }

    #[test]
    fn inverse_mod_of_unit() {
        let p = 2;
        let m = UniPoly::from_coeffs(vec![1, 1, 1]);
        let w = UniPoly::monomial(1);
        let inv = w.inverse_mod(&m, p).unwrap();
        assert!(inv.mul(&w, p).rem(&m, p).is_one());
    }

    #[test]
    fn inflate_deflate() {
        let a = UniPoly::from_coeffs(vec![1, 2, 0, 1]);
        let b = a.inflate(3);
        assert!(b.is_inflated_by(3));
        assert_eq!(b.deflate(3), a);
        assert!(!a.is_inflated_by(3));
    }
}
