//! Dense univariate polynomials over F_p.
//!
//! Coefficients are stored lowest degree first and kept trimmed, so two
//! polynomials are equal exactly when their representations are.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::fp;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawPoly")]
pub struct Poly {
    p: u32,
    coeffs: Vec<u32>,
}

#[derive(Deserialize)]
struct RawPoly {
    p: u32,
    coeffs: Vec<i64>,
}

impl TryFrom<RawPoly> for Poly {
    type Error = Error;

    fn try_from(raw: RawPoly) -> Result<Self> {
        Poly::from_i64(raw.p, &raw.coeffs)
    }
}

impl Poly {
    /// Builds a polynomial from residues, reducing mod `p` and trimming.
    /// Panics when `p` is not prime; use [`Poly::from_i64`] on untrusted input.
    pub fn new(p: u32, coeffs: Vec<u32>) -> Self {
        assert!(fp::is_prime(p as u64), "{p} is not a prime");
        let mut poly = Poly {
            p,
            coeffs: coeffs.into_iter().map(|c| c % p).collect(),
        };
        poly.trim();
        poly
    }

    pub fn from_i64(p: u32, coeffs: &[i64]) -> Result<Self> {
        if !fp::is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        let mut poly = Poly {
            p,
            coeffs: coeffs.iter().map(|&c| fp::from_i64(c, p)).collect(),
        };
        poly.trim();
        Ok(poly)
    }

    pub fn zero(p: u32) -> Self {
        Poly { p, coeffs: vec![] }
    }

    pub fn one(p: u32) -> Self {
        Poly::constant(p, 1)
    }

    pub fn constant(p: u32, c: u32) -> Self {
        Poly::new(p, vec![c])
    }

    /// The variable `x`.
    pub fn x(p: u32) -> Self {
        Poly::new(p, vec![0, 1])
    }

    /// `c * x^deg`.
    pub fn monomial(p: u32, c: u32, deg: usize) -> Self {
        let mut coeffs = vec![0; deg + 1];
        coeffs[deg] = c;
        Poly::new(p, coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    fn raw(p: u32, coeffs: Vec<u32>) -> Self {
        let mut poly = Poly { p, coeffs };
        poly.trim();
        poly
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lead(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == 1
    }

    pub fn check_field(&self, other: &Poly) -> Result<()> {
        if self.p == other.p {
            Ok(())
        } else {
            Err(Error::CharacteristicMismatch(self.p, other.p))
        }
    }

    fn assert_field(&self, other: &Poly) {
        assert_eq!(
            self.p, other.p,
            "characteristic mismatch: {} vs {}",
            self.p, other.p
        );
    }

    pub fn scale(&self, c: u32) -> Poly {
        let p = self.p;
        Poly::raw(p, self.coeffs.iter().map(|&a| fp::mul(a, c % p, p)).collect())
    }

    /// Divides by the leading coefficient; the zero polynomial stays zero.
    pub fn monic(&self) -> Poly {
        match self.lead() {
            0 | 1 => self.clone(),
            lc => self.scale(fp::inv(lc, self.p)),
        }
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![0; k];
        coeffs.extend_from_slice(&self.coeffs);
        Poly { p: self.p, coeffs }
    }

    /// `x^n f(1/x)` for `n >= deg f`.
    pub fn reverse(&self, n: usize) -> Poly {
        assert!(self.is_zero() || self.deg() <= n);
        let mut coeffs = vec![0; n + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[n - i] = c;
        }
        Poly::raw(self.p, coeffs)
    }

    pub fn derivative(&self) -> Poly {
        let p = self.p;
        Poly::raw(
            p,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| fp::mul(c, (i as u64 % p as u64) as u32, p))
                .collect(),
        )
    }

    pub fn eval(&self, at: u32) -> u32 {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| fp::add(fp::mul(acc, at, self.p), c, self.p))
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut acc = Poly::one(self.p);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        self.assert_field(divisor);
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let p = self.p;
        let dd = divisor.deg();
        if self.is_zero() || self.deg() < dd {
            return (Poly::zero(p), self.clone());
        }
        let inv_lead = fp::inv(divisor.lead(), p);
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u32; self.deg() - dd + 1];
        for i in (0..quot.len()).rev() {
            let c = fp::mul(rem[i + dd], inv_lead, p);
            quot[i] = c;
            if c != 0 {
                for (j, &d) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] = fp::sub(rem[i + j], fp::mul(c, d, p), p);
                }
            }
        }
        (Poly::raw(p, quot), Poly::raw(p, rem))
    }

    pub fn checked_div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.check_field(divisor)?;
        if divisor.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(self.div_rem(divisor))
    }

    pub fn rem(&self, divisor: &Poly) -> Poly {
        self.div_rem(divisor).1
    }

    /// Exact quotient, `None` when `divisor` does not divide `self`.
    pub fn exact_div(&self, divisor: &Poly) -> Option<Poly> {
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Poly) -> bool {
        other.rem(self).is_zero()
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        self.assert_field(other);
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended gcd: returns `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        self.assert_field(other);
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(p), Poly::zero(p));
        let (mut t0, mut t1) = (Poly::zero(p), Poly::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.lead() {
            0 | 1 => (r0, s0, t0),
            lc => {
                let c = fp::inv(lc, p);
                (r0.scale(c), s0.scale(c), t0.scale(c))
            }
        }
    }

    pub fn mul_mod(&self, other: &Poly, modulus: &Poly) -> Poly {
        (self * other).rem(modulus)
    }

    pub fn pow_mod(&self, mut e: u64, modulus: &Poly) -> Poly {
        let mut acc = Poly::one(self.p).rem(modulus);
        let mut base = self.rem(modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(&base, modulus);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_mod(&base, modulus);
            }
        }
        acc
    }

    /// Inverse modulo `modulus`, `None` when not coprime.
    pub fn inv_mod(&self, modulus: &Poly) -> Option<Poly> {
        let (g, s, _) = self.rem(modulus).ext_gcd(modulus);
        g.is_one().then(|| s.rem(modulus))
    }

    /// Whether this is a p-th power, i.e. the derivative vanishes identically.
    /// Over the perfect field F_p both notions agree.
    pub fn is_pth_power(&self) -> bool {
        self.derivative().is_zero()
    }

    /// The p-th root of a polynomial whose derivative vanishes.
    pub fn pth_root(&self) -> Option<Poly> {
        if !self.is_pth_power() {
            return None;
        }
        let p = self.p as usize;
        // a^p = a on F_p, so the root just collects every p-th coefficient.
        Some(Poly::raw(
            self.p,
            self.coeffs.iter().step_by(p).copied().collect(),
        ))
    }

    /// Multiplicity of `factor` in `self`; `self` must be nonzero and `factor`
    /// non-constant.
    pub fn multiplicity(&self, factor: &Poly) -> u32 {
        assert!(!self.is_zero() && !factor.is_constant());
        let mut k = 0;
        let mut cur = self.clone();
        while let Some(q) = cur.exact_div(factor) {
            cur = q;
            k += 1;
        }
        k
    }
}

impl Ord for Poly {
    /// Degree first, then coefficients from the top down.
    fn cmp(&self, other: &Self) -> Ordering {
        self.p
            .cmp(&other.p)
            .then(self.coeffs.len().cmp(&other.coeffs.len()))
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, c) => write!(f, "{c}x")?,
                (i, 1) => write!(f, "x^{i}")?,
                (i, c) => write!(f, "{c}x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[F_{}]({})", self.p, self)
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        self.assert_field(rhs);
        let p = self.p;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::raw(
            p,
            (0..n)
                .map(|i| fp::add(self.coeff(i), rhs.coeff(i), p))
                .collect(),
        )
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        self.assert_field(rhs);
        let p = self.p;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::raw(
            p,
            (0..n)
                .map(|i| fp::sub(self.coeff(i), rhs.coeff(i), p))
                .collect(),
        )
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        self.assert_field(rhs);
        let p = self.p;
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(p);
        }
        let pp = p as u64;
        let mut acc = vec![0u64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                acc[i + j] = (acc[i + j] + a as u64 * b as u64) % pp;
            }
        }
        Poly::raw(p, acc.into_iter().map(|c| c as u32).collect())
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        let p = self.p;
        Poly::raw(p, self.coeffs.iter().map(|&c| fp::neg(c, p)).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl std::iter::Product for Poly {
    /// Panics on an empty iterator, which has no characteristic.
    fn product<I: Iterator<Item = Poly>>(mut iter: I) -> Poly {
        let first = iter.next().expect("product of an empty polynomial list");
        iter.fold(first, |acc, f| &acc * &f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(p: u32, c: &[u32]) -> Poly {
        Poly::new(p, c.to_vec())
    }

    #[test]
    fn trims_and_reduces() {
        let f = poly(3, &[3, 4, 0, 0]);
        assert_eq!(f.coeffs(), &[0, 1]);
        assert_eq!(f.degree(), Some(1));
        assert_eq!(Poly::zero(5).degree(), None);
    }

    #[test]
    fn frobenius_square() {
        // (x + 1)^2 = x^2 + 1 in characteristic 2
        let f = poly(2, &[1, 1]);
        assert_eq!(&f * &f, poly(2, &[1, 0, 1]));
    }

    #[test]
    fn division_identity() {
        let a = poly(5, &[1, 2, 3, 4, 1, 3]);
        let b = poly(5, &[2, 0, 3]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.deg() < b.deg());
    }

    #[test]
    fn ext_gcd_bezout() {
        let a = poly(7, &[1, 3, 0, 2]);
        let b = poly(7, &[6, 1, 1]);
        let (g, s, t) = a.ext_gcd(&b);
        assert_eq!(&(&s * &a) + &(&t * &b), g);
        assert_eq!(g, a.gcd(&b));
    }

    #[test]
    fn pth_roots() {
        let g = poly(3, &[2, 1, 1]);
        let f = g.pow(3);
        assert!(f.is_pth_power());
        assert_eq!(f.pth_root().unwrap(), g);
        assert!(poly(3, &[0, 1]).pth_root().is_none());
    }

    #[test]
    fn reverse_and_display() {
        let f = poly(2, &[0, 1, 0, 1]);
        assert_eq!(f.to_string(), "x^3 + x");
        assert_eq!(f.reverse(3), poly(2, &[1, 0, 1]));
        assert_eq!(poly(5, &[2, 0, 3]).to_string(), "3x^2 + 2");
    }

    #[test]
    #[should_panic(expected = "characteristic mismatch")]
    fn mixing_fields_panics() {
        let _ = &poly(2, &[1]) + &poly(3, &[1]);
    }

    #[test]
    fn json_shape() {
        let f = Poly::x(2);
        assert_eq!(serde_json::to_string(&f).unwrap(), r#"{"p":2,"coeffs":[0,1]}"#);
        let g: Poly = serde_json::from_str(r#"{"p":3,"coeffs":[-1,0,1]}"#).unwrap();
        assert_eq!(g, poly(3, &[2, 0, 1]));
        assert!(serde_json::from_str::<Poly>(r#"{"p":4,"coeffs":[1]}"#).is_err());
    }
}
