//! Formal divisors on the places of the base curve, plus named symbolic
//! places for divisors that live elsewhere (such as `[Δ]` on a matrix space).

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeSeq;
use serde::Serialize;

use crate::arith::Place;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum DivPlace {
    Curve(Place),
    Symbolic { name: String, degree: Option<u32> },
}

impl DivPlace {
    pub fn symbolic(name: &str, degree: Option<u32>) -> Self {
        DivPlace::Symbolic {
            name: name.to_string(),
            degree,
        }
    }

    pub fn degree(&self) -> Result<u32> {
        match self {
            DivPlace::Curve(v) => Ok(v.degree()),
            DivPlace::Symbolic { degree: Some(d), .. } => Ok(*d),
            DivPlace::Symbolic { name, degree: None } => Err(Error::UndeclaredSymbolicDegree(name.clone())),
        }
    }

    fn is_curve(&self) -> bool {
        matches!(self, DivPlace::Curve(_))
    }

    fn characteristic(&self) -> Option<u32> {
        match self {
            DivPlace::Curve(Place::Finite(pi)) => Some(pi.p()),
            _ => None,
        }
    }
}

impl From<Place> for DivPlace {
    fn from(v: Place) -> Self {
        DivPlace::Curve(v)
    }
}

impl fmt::Display for DivPlace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DivPlace::Curve(v) => write!(f, "{v}"),
            DivPlace::Symbolic { name, .. } => write!(f, "{name}"),
        }
    }
}

#[derive(Clone, Default, PartialEq, Eq)]
pub struct Divisor {
    terms: BTreeMap<DivPlace, i64>,
}

impl Divisor {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(place: impl Into<DivPlace>, mult: i64) -> Self {
        let mut d = Self::zero();
        if mult != 0 {
            d.terms.insert(place.into(), mult);
        }
        d
    }

    pub fn symbolic(name: &str, degree: Option<u32>, mult: i64) -> Self {
        Self::single(DivPlace::symbolic(name, degree), mult)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn mult(&self, place: &DivPlace) -> i64 {
        self.terms.get(place).copied().unwrap_or(0)
    }

    pub fn mult_at(&self, place: &Place) -> i64 {
        self.mult(&DivPlace::Curve(place.clone()))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&DivPlace, i64)> {
        self.terms.iter().map(|(v, &m)| (v, m))
    }

    pub fn support(&self) -> impl Iterator<Item = &DivPlace> {
        self.terms.keys()
    }

    fn compatible(&self, other: &Divisor) -> Result<()> {
        let mut all = self.terms.keys().chain(other.terms.keys());
        let Some(first) = all.next() else { return Ok(()) };
        let curve = first.is_curve();
        let p = self.terms.keys().chain(other.terms.keys()).find_map(DivPlace::characteristic);
        for v in self.terms.keys().chain(other.terms.keys()) {
            if v.is_curve() != curve {
                return Err(Error::ChartMismatch);
            }
            if let (Some(p), Some(q)) = (p, v.characteristic()) {
                if p != q {
                    return Err(Error::CharacteristicMismatch(p, q));
                }
            }
        }
        Ok(())
    }

    pub fn add(&self, other: &Divisor) -> Result<Divisor> {
        self.compatible(other)?;
        let mut terms = self.terms.clone();
        for (v, &m) in &other.terms {
            let e = terms.entry(v.clone()).or_insert(0);
            *e += m;
            if *e == 0 {
                terms.remove(v);
            }
        }
        Ok(Divisor { terms })
    }

    pub fn neg(&self) -> Divisor {
        Divisor {
            terms: self.terms.iter().map(|(v, &m)| (v.clone(), -m)).collect(),
        }
    }

    pub fn sub(&self, other: &Divisor) -> Result<Divisor> {
        self.add(&other.neg())
    }

    pub fn degree(&self) -> Result<i64> {
        self.terms
            .iter()
            .map(|(v, &m)| Ok(m * v.degree()? as i64))
            .sum()
    }

    /// Multiplies each multiplicity by the local index at its place.
    pub fn pullback(&self, ram_index: impl Fn(&DivPlace) -> Option<u64>) -> Result<Divisor> {
        let mut terms = BTreeMap::new();
        for (v, &m) in &self.terms {
            let e = ram_index(v).ok_or_else(|| Error::MissingIndex(v.to_string()))?;
            if e == 0 {
                return Err(Error::InvalidInput(format!("ramification index at {v} must be positive")));
            }
            terms.insert(v.clone(), m * e as i64);
        }
        Ok(Divisor { terms })
    }

    pub fn pullback_map(&self, ram_index: &BTreeMap<DivPlace, u64>) -> Result<Divisor> {
        self.pullback(|v| ram_index.get(v).copied())
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (v, m)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{m}[{v}]")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Divisor({self})")
    }
}

#[derive(Serialize)]
struct Term<'a> {
    place: TermPlace<'a>,
    mult: i64,
    degree: Option<u32>,
}

#[derive(Serialize)]
#[serde(untagged)]
enum TermPlace<'a> {
    Curve(&'a Place),
    Symbolic { kind: &'static str, name: &'a str },
}

impl Serialize for Divisor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (v, &mult) in &self.terms {
            let place = match v {
                DivPlace::Curve(pl) => TermPlace::Curve(pl),
                DivPlace::Symbolic { name, .. } => TermPlace::Symbolic {
                    kind: "symbolic",
                    name,
                },
            };
            seq.serialize_element(&Term {
                place,
                mult,
                degree: v.degree().ok(),
            })?;
        }
        seq.end()
    }
}
