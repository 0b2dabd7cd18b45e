use serde::Serialize;

use crate::arith::{Place, Poly};
use crate::error::{Error, Result};
use crate::pgroup::{GElt, PGroup};

/// A symmetric 2-cocycle `α: M x M -> F_p[x] \ {0}`, the multiplication table
/// `e_m e_n = α(m,n) e_{m+n}` of an M-graded covering algebra.
///
/// Entries are stored densely by canonical element index. Construction only
/// checks that entries are nonzero and share the group's characteristic; the
/// cocycle axioms are checked by [`Cocycle::validate`].
#[derive(Clone, PartialEq, Eq)]
pub struct Cocycle {
    group: PGroup,
    entries: Vec<Poly>,
}

impl Cocycle {
    pub fn from_fn(group: &PGroup, mut f: impl FnMut(usize, usize) -> Result<Poly>) -> Result<Self> {
        let n = group.order();
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let a = f(i, j)?;
                if a.p() != group.p() {
                    return Err(Error::CharacteristicMismatch(group.p(), a.p()));
                }
                if a.is_zero() {
                    return Err(Error::ZeroEntry {
                        m: group.element(i).to_string(),
                        n: group.element(j).to_string(),
                    });
                }
                entries.push(a);
            }
        }
        Ok(Cocycle {
            group: group.clone(),
            entries,
        })
    }

    /// All entries equal to 1: the split covering.
    pub fn trivial(group: &PGroup) -> Self {
        let one = Poly::one(group.p());
        Cocycle {
            group: group.clone(),
            entries: vec![one; group.order() * group.order()],
        }
    }

    pub fn group(&self) -> &PGroup {
        &self.group
    }

    pub fn p(&self) -> u32 {
        self.group.p()
    }

    /// Entry at canonical indices.
    pub fn at(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.group.order() + j]
    }

    pub fn get(&self, m: &GElt, n: &GElt) -> Result<&Poly> {
        Ok(self.at(self.group.index(m)?, self.group.index(n)?))
    }

    /// `α(m, -m)` for every `m`, by index.
    pub fn diagonal(&self) -> Vec<&Poly> {
        (0..self.group.order())
            .map(|m| self.at(m, self.group.neg_idx(m)))
            .collect()
    }

    /// `∏_l α(l, 1)` for a cyclic group; the Kummer function of the cocycle.
    pub fn kummer_function(&self) -> Result<Poly> {
        if !self.group.is_cyclic() {
            return Err(Error::UnsupportedGroup(self.group.to_string()));
        }
        let n = self.group.order();
        if n == 1 {
            return Ok(Poly::one(self.p()));
        }
        Ok((0..n).map(|l| self.at(l, 1).clone()).product())
    }

    /// Monic irreducible factors of all entries.
    pub fn support_polys(&self) -> Result<Vec<Poly>> {
        let mut seen: Vec<Poly> = Vec::new();
        let mut done: Vec<&Poly> = Vec::new();
        for a in &self.entries {
            if a.is_constant() || done.contains(&a) {
                continue;
            }
            done.push(a);
            for q in crate::arith::irreducible_factors(a)? {
                if !seen.contains(&q) {
                    seen.push(q);
                }
            }
        }
        seen.sort();
        Ok(seen)
    }

    /// Checks normalization, symmetry and the cocycle identity exhaustively.
    pub fn validate(&self) -> ValidationReport {
        let g = &self.group;
        let n = g.order();
        let elt = |i: usize| g.element(i);

        let normalization = (0..n)
            .find(|&m| !self.at(0, m).is_one() || !self.at(m, 0).is_one())
            .map_or(CheckResult::Pass, |m| CheckResult::Fail {
                witness: vec![g.zero(), elt(m)],
                detail: format!("α(0,{}) = {}, α({},0) = {}", elt(m), self.at(0, m), elt(m), self.at(m, 0)),
            });

        let symmetry = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .find(|&(i, j)| self.at(i, j) != self.at(j, i))
            .map_or(CheckResult::Pass, |(i, j)| CheckResult::Fail {
                witness: vec![elt(i), elt(j)],
                detail: format!("α(m,n) = {} but α(n,m) = {}", self.at(i, j), self.at(j, i)),
            });

        let mut associativity = CheckResult::Pass;
        'outer: for l in 0..n {
            for m in 0..n {
                let lm = g.add_idx(l, m);
                for k in 0..n {
                    let left = self.at(l, m) * self.at(lm, k);
                    let right = self.at(m, k) * self.at(l, g.add_idx(m, k));
                    if left != right {
                        associativity = CheckResult::Fail {
                            witness: vec![elt(l), elt(m), elt(k)],
                            detail: format!("α(l,m)α(l+m,n) = {left} but α(m,n)α(l,m+n) = {right}"),
                        };
                        break 'outer;
                    }
                }
            }
        }

        ValidationReport {
            normalization,
            symmetry,
            associativity,
        }
    }

    /// `true` iff every `α(m,-m)` is a unit at `v`.
    pub fn torsor_at(&self, v: &Place) -> bool {
        self.diagonal().into_iter().all(|a| v.is_unit_at(a))
    }
}

impl std::fmt::Debug for Cocycle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let n = self.group.order();
        write!(f, "Cocycle[{}]{{", self.group)?;
        for i in 1..n {
            for j in i..n {
                if !self.at(i, j).is_one() {
                    write!(f, " ({},{}): {};", self.group.element(i), self.group.element(j), self.at(i, j))?;
                }
            }
        }
        write!(f, " }}")
    }
}

/// `true` iff every `α(m,-m)` is a unit at `v`.
pub fn torsor_at(c: &Cocycle, v: &Place) -> bool {
    c.torsor_at(v)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum CheckResult {
    Pass,
    Fail { witness: Vec<GElt>, detail: String },
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        matches!(self, CheckResult::Pass)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub normalization: CheckResult,
    pub symmetry: CheckResult,
    pub associativity: CheckResult,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.normalization.passed() && self.symmetry.passed() && self.associativity.passed()
    }

    /// Turns the first failing check into an error.
    pub fn into_result(self) -> Result<()> {
        for (name, check) in [
            ("normalization", self.normalization),
            ("symmetry", self.symmetry),
            ("cocycle identity", self.associativity),
        ] {
            if let CheckResult::Fail { witness, detail } = check {
                return Err(Error::InvalidInput(format!(
                    "cocycle fails {name} at {witness:?}: {detail}"
                )));
            }
        }
        Ok(())
    }
}
