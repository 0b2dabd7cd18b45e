//! Covering data: cocycles, Kummer normal forms, the cyclic structure
//! theorem, and the chart at infinity.

mod cocycle;
pub mod io;
mod kummer;
mod structure;

pub use cocycle::{torsor_at, CheckResult, Cocycle, ValidationReport};
pub use io::CoveringFile;
pub use kummer::{kummer_cocycle, twist, KummerData};
pub use structure::{
    canonical_infinity_degrees_cyclic, chart_at_infinity, cocycle_from_column, forward_decompose,
    CyclicDecomposition,
};

pub use crate::ramification::local::{fixed_ideal_valuation_at, FixedIdealData};

use crate::error::{Error, Result};
use crate::pgroup::PGroup;

/// A covering given either by a raw cocycle or by Kummer data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Covering {
    Cocycle(Cocycle),
    Kummer(KummerData),
}

impl Covering {
    pub fn group(&self) -> &PGroup {
        match self {
            Covering::Cocycle(c) => c.group(),
            Covering::Kummer(k) => k.group(),
        }
    }

    pub fn cocycle(&self) -> Result<Cocycle> {
        match self {
            Covering::Cocycle(c) => Ok(c.clone()),
            Covering::Kummer(k) => k.to_cocycle(),
        }
    }

    /// The library's suggested infinity-chart degrees, when one exists.
    pub fn canonical_infinity_degrees(&self) -> Result<Vec<i64>> {
        match self {
            Covering::Kummer(k) => Ok(k.canonical_infinity_degrees()),
            Covering::Cocycle(c) if c.group().is_cyclic() => canonical_infinity_degrees_cyclic(c),
            Covering::Cocycle(c) => Err(Error::MissingInfinityDegrees(format!(
                "no canonical chart for a raw cocycle on {}",
                c.group()
            ))),
        }
    }
}

impl From<Cocycle> for Covering {
    fn from(c: Cocycle) -> Self {
        Covering::Cocycle(c)
    }
}

impl From<KummerData> for Covering {
    fn from(k: KummerData) -> Self {
        Covering::Kummer(k)
    }
}
