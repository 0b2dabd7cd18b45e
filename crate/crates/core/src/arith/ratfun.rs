use std::fmt;

use serde::{Deserialize, Serialize};

use super::place::Place;
use super::poly::Poly;
use crate::error::{Error, Result};

/// A rational function over F_p in lowest terms with monic denominator.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawRatFun")]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawRatFun {
    Fraction { num: Poly, den: Poly },
    Poly(Poly),
}

impl TryFrom<RawRatFun> for RatFun {
    type Error = Error;

    fn try_from(raw: RawRatFun) -> Result<Self> {
        match raw {
            RawRatFun::Fraction { num, den } => RatFun::new(num, den),
            RawRatFun::Poly(p) => Ok(RatFun::from(p)),
        }
    }
}

impl From<Poly> for RatFun {
    fn from(num: Poly) -> Self {
        let den = Poly::one(num.p());
        RatFun { num, den }
    }
}

impl RatFun {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        num.check_field(&den)?;
        if den.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: Poly, den: Poly) -> Self {
        let p = num.p();
        if num.is_zero() {
            return RatFun {
                num,
                den: Poly::one(p),
            };
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g).unwrap(), den.exact_div(&g).unwrap())
        };
        let lc = den.lead();
        if lc != 1 {
            let inv = super::fp::inv(lc, p);
            num = num.scale(inv);
            den = den.scale(inv);
        }
        RatFun { num, den }
    }

    pub fn zero(p: u32) -> Self {
        RatFun::from(Poly::zero(p))
    }

    pub fn one(p: u32) -> Self {
        RatFun::from(Poly::one(p))
    }

    pub fn p(&self) -> u32 {
        self.num.p()
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    pub fn to_poly(&self) -> Option<Poly> {
        self.is_poly().then(|| self.num.clone())
    }

    pub fn add(&self, other: &RatFun) -> RatFun {
        if self.den == other.den {
            return Self::reduced(&self.num + &other.num, self.den.clone());
        }
        Self::reduced(
            &(&self.num * &other.den) + &(&other.num * &self.den),
            &self.den * &other.den,
        )
    }

    pub fn sub(&self, other: &RatFun) -> RatFun {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RatFun {
        RatFun {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &RatFun) -> RatFun {
        if self.is_zero() || other.is_zero() {
            return RatFun::zero(self.p());
        }
        // cross-cancel first to keep intermediate degrees small
        let g1 = self.num.gcd(&other.den);
        let g2 = other.num.gcd(&self.den);
        let n1 = self.num.exact_div(&g1).unwrap();
        let d2 = other.den.exact_div(&g1).unwrap();
        let n2 = other.num.exact_div(&g2).unwrap();
        let d1 = self.den.exact_div(&g2).unwrap();
        Self::reduced(&n1 * &n2, &d1 * &d2)
    }

    pub fn mul_poly(&self, f: &Poly) -> RatFun {
        self.mul(&RatFun::from(f.clone()))
    }

    pub fn inv(&self) -> Result<RatFun> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        Ok(Self::reduced(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &RatFun) -> Result<RatFun> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<RatFun> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let k = e.unsigned_abs();
        Ok(RatFun {
            num: base.num.pow(k),
            den: base.den.pow(k),
        })
    }

    /// Valuation at a place: multiplicity at a finite place, and
    /// `deg(den) - deg(num)` at infinity.
    pub fn valuation(&self, place: &Place) -> Result<i64> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        Ok(match place {
            Place::Infinity => self.den.deg() as i64 - self.num.deg() as i64,
            Place::Finite(pi) => {
                self.num.multiplicity(pi) as i64 - self.den.multiplicity(pi) as i64
            }
        })
    }

    /// Substitutes `x = 1/u`.
    pub fn invert_variable(&self) -> RatFun {
        if self.is_zero() {
            return self.clone();
        }
        let (dn, dd) = (self.num.deg(), self.den.deg());
        let n = dn.max(dd);
        Self::reduced(self.num.reverse(dn).shift(n - dn), self.den.reverse(dd).shift(n - dd))
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFun[F_{}]({})", self.p(), self)
    }
}
