use std::fmt;

use serde::{Deserialize, Serialize};

use super::factor::is_irreducible;
use super::poly::Poly;
use crate::error::{Error, Result};

/// A closed point of the projective line over F_p: a monic irreducible
/// polynomial, or the point at infinity.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Deserialize)]
#[serde(try_from = "RawPlace")]
pub enum Place {
    Finite(Poly),
    Infinity,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum RawPlace {
    Finite { poly: Poly },
    Infinity,
}

impl TryFrom<RawPlace> for Place {
    type Error = Error;

    fn try_from(raw: RawPlace) -> Result<Self> {
        match raw {
            RawPlace::Finite { poly } => Place::finite(poly),
            RawPlace::Infinity => Ok(Place::Infinity),
        }
    }
}

impl Serialize for Place {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_raw().serialize(s)
    }
}

impl Place {
    fn to_raw(&self) -> RawPlace {
        match self {
            Place::Finite(poly) => RawPlace::Finite { poly: poly.clone() },
            Place::Infinity => RawPlace::Infinity,
        }
    }

    /// Checked constructor: the polynomial is made monic and must be irreducible.
    pub fn finite(poly: Poly) -> Result<Self> {
        let poly = poly.monic();
        if !is_irreducible(&poly) {
            return Err(Error::InvalidInput(format!("{poly} is not irreducible")));
        }
        Ok(Place::Finite(poly))
    }

    /// The place `x - a`.
    pub fn rational(p: u32, a: u32) -> Self {
        Place::Finite(Poly::new(p, vec![(p - a % p) % p, 1]))
    }

    pub fn degree(&self) -> u32 {
        match self {
            Place::Finite(pi) => pi.deg() as u32,
            Place::Infinity => 1,
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Place::Infinity)
    }

    pub fn poly(&self) -> Option<&Poly> {
        match self {
            Place::Finite(pi) => Some(pi),
            Place::Infinity => None,
        }
    }

    /// Valuation of a nonzero polynomial.
    pub fn valuation(&self, f: &Poly) -> Result<i64> {
        if f.is_zero() {
            return Err(Error::ZeroElement);
        }
        Ok(match self {
            Place::Finite(pi) => f.multiplicity(pi) as i64,
            Place::Infinity => -(f.deg() as i64),
        })
    }

    pub fn is_unit_at(&self, f: &Poly) -> bool {
        matches!(self.valuation(f), Ok(0))
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(pi) => write!(f, "{pi}"),
            Place::Infinity => write!(f, "∞"),
        }
    }
}

impl fmt::Debug for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}
