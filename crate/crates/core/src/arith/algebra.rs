//! Elements of the graded algebra `A = ⊕ A_0 e_m` with coefficients extended
//! to F_p(x), multiplied through a cocycle table `e_m e_n = α(m,n) e_{m+n}`.

use std::fmt;

use super::linalg;
use super::ratfun::RatFun;
use crate::covering::Cocycle;
use crate::error::{Error, Result};
use crate::pgroup::PGroup;

#[derive(Clone, PartialEq, Eq)]
pub struct AlgebraElt {
    group: PGroup,
    comps: Vec<RatFun>,
}

impl AlgebraElt {
    pub fn zero(group: &PGroup) -> Self {
        let p = group.p();
        AlgebraElt {
            group: group.clone(),
            comps: vec![RatFun::zero(p); group.order()],
        }
    }

    /// The unit `e_0`.
    pub fn one(group: &PGroup) -> Self {
        Self::basis(group, 0)
    }

    /// The basis element `e_m` for the element of canonical index `m`.
    pub fn basis(group: &PGroup, m: usize) -> Self {
        Self::monomial(group, m, RatFun::one(group.p()))
    }

    pub fn monomial(group: &PGroup, m: usize, coeff: RatFun) -> Self {
        let mut a = Self::zero(group);
        a.comps[m] = coeff;
        a
    }

    pub fn from_components(group: &PGroup, comps: Vec<RatFun>) -> Result<Self> {
        if comps.len() != group.order() {
            return Err(Error::GroupMismatch);
        }
        if let Some(c) = comps.iter().find(|c| c.p() != group.p()) {
            return Err(Error::CharacteristicMismatch(group.p(), c.p()));
        }
        Ok(AlgebraElt {
            group: group.clone(),
            comps,
        })
    }

    pub fn group(&self) -> &PGroup {
        &self.group
    }

    pub fn components(&self) -> &[RatFun] {
        &self.comps
    }

    pub fn component(&self, m: usize) -> &RatFun {
        &self.comps[m]
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(RatFun::is_zero)
    }

    pub fn support_len(&self) -> usize {
        self.comps.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn add(&self, other: &Self) -> Self {
        let comps = self.comps.iter().zip(&other.comps).map(|(a, b)| a.add(b)).collect();
        AlgebraElt {
            group: self.group.clone(),
            comps,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let comps = self.comps.iter().zip(&other.comps).map(|(a, b)| a.sub(b)).collect();
        AlgebraElt {
            group: self.group.clone(),
            comps,
        }
    }

    pub fn neg(&self) -> Self {
        AlgebraElt {
            group: self.group.clone(),
            comps: self.comps.iter().map(RatFun::neg).collect(),
        }
    }

    pub fn scale(&self, c: &RatFun) -> Self {
        AlgebraElt {
            group: self.group.clone(),
            comps: self.comps.iter().map(|a| a.mul(c)).collect(),
        }
    }

    /// Product through the multiplication table of `table`.
    pub fn mul(&self, other: &Self, table: &Cocycle) -> Self {
        assert_eq!(&self.group, table.group(), "algebra element and table disagree on the group");
        let mut out = Self::zero(&self.group);
        for (i, a) in self.comps.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.comps.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let k = self.group.add_idx(i, j);
                let term = a.mul(b).mul_poly(table.at(i, j));
                out.comps[k] = out.comps[k].add(&term);
            }
        }
        out
    }
}

/// Inverse in the generic-fibre algebra, by solving the `|M| x |M|` system of
/// left multiplication by `a`.
pub fn algebra_inverse(a: &AlgebraElt, table: &Cocycle) -> Result<AlgebraElt> {
    if a.is_zero() {
        return Err(Error::NotInvertible);
    }
    let group = a.group();
    let n = group.order();
    let p = group.p();
    // a single nonzero component inverts in closed form
    if a.support_len() == 1 {
        let i = a.comps.iter().position(|c| !c.is_zero()).unwrap();
        let j = group.neg_idx(i);
        let coeff = a.comps[i].mul_poly(table.at(i, j)).inv()?;
        return Ok(AlgebraElt::monomial(group, j, coeff));
    }
    // column j of the matrix holds the coordinates of a * e_j
    let mut matrix = vec![vec![RatFun::zero(p); n]; n];
    for (i, ai) in a.comps.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, _) in (0..n).enumerate() {
            let k = group.add_idx(i, j);
            matrix[k][j] = matrix[k][j].add(&ai.mul_poly(table.at(i, j)));
        }
    }
    let mut rhs = vec![RatFun::zero(p); n];
    rhs[0] = RatFun::one(p);
    let comps = linalg::solve(matrix, rhs)?;
    AlgebraElt::from_components(group, comps)
}

impl fmt::Display for AlgebraElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .comps
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| format!("({c})·e_{}", self.group.element(m)))
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl fmt::Debug for AlgebraElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgebraElt({self})")
    }
}
