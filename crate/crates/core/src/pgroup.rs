//! Finite abelian p-groups given by invariant factors.
//!
//! Elements are residue tuples `(a_1, ..., a_r)` with `0 <= a_i < p^{n_i}`.
//! The canonical element order is lexicographic on these tuples, which is also
//! the order of [`PGroup::index`].

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::fp::is_prime;
use crate::error::{Error, Result};

pub const MAX_ORDER: u64 = 1 << 16;

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawGroup")]
pub struct PGroup {
    p: u32,
    exponents: Vec<u32>,
    #[serde(skip)]
    moduli: Vec<u32>,
}

#[derive(Deserialize)]
struct RawGroup {
    p: u32,
    exponents: Vec<u32>,
}

impl TryFrom<RawGroup> for PGroup {
    type Error = Error;

    fn try_from(raw: RawGroup) -> Result<Self> {
        PGroup::new(raw.p, raw.exponents)
    }
}

/// A group element as a residue tuple.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GElt(pub Vec<u32>);

impl fmt::Display for GElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() == 1 {
            write!(f, "{}", self.0[0])
        } else {
            write!(f, "(")?;
            for (i, a) in self.0.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{a}")?;
            }
            write!(f, ")")
        }
    }
}

impl fmt::Debug for GElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl PGroup {
    /// Exponents may be given in any order and are sorted non-increasing.
    /// An empty exponent list is the trivial group.
    pub fn new(p: u32, mut exponents: Vec<u32>) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if exponents.contains(&0) {
            return Err(Error::InvalidGroup("invariant factor exponents must be >= 1".into()));
        }
        exponents.sort_unstable_by(|a, b| b.cmp(a));
        let mut order: u64 = 1;
        let mut moduli = Vec::with_capacity(exponents.len());
        for &n in &exponents {
            let m = (p as u64).checked_pow(n).filter(|&m| m <= MAX_ORDER);
            let m = m.ok_or_else(|| Error::InvalidGroup("order exceeds 2^16".into()))?;
            order *= m;
            if order > MAX_ORDER {
                return Err(Error::InvalidGroup("order exceeds 2^16".into()));
            }
            moduli.push(m as u32);
        }
        Ok(PGroup {
            p,
            exponents,
            moduli,
        })
    }

    /// `Z/p^n`; `n = 0` gives the trivial group.
    pub fn cyclic(p: u32, n: u32) -> Result<Self> {
        PGroup::new(p, if n == 0 { vec![] } else { vec![n] })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    /// `p^{n_i}` for each invariant factor.
    pub fn moduli(&self) -> &[u32] {
        &self.moduli
    }

    pub fn rank(&self) -> usize {
        self.exponents.len()
    }

    pub fn order(&self) -> usize {
        self.moduli.iter().map(|&m| m as usize).product()
    }

    pub fn is_cyclic(&self) -> bool {
        self.rank() <= 1
    }

    /// Exponent `n` of a cyclic group `Z/p^n` (0 for the trivial group).
    pub fn cyclic_exponent(&self) -> Option<u32> {
        match self.exponents.as_slice() {
            [] => Some(0),
            [n] => Some(*n),
            _ => None,
        }
    }

    pub fn zero(&self) -> GElt {
        GElt(vec![0; self.rank()])
    }

    pub fn contains(&self, a: &GElt) -> bool {
        a.0.len() == self.rank() && a.0.iter().zip(&self.moduli).all(|(x, m)| x < m)
    }

    pub fn check(&self, a: &GElt) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    /// Reduces an arbitrary integer tuple into the group.
    pub fn reduce(&self, residues: &[i64]) -> Result<GElt> {
        if residues.len() != self.rank() {
            return Err(Error::GroupMismatch);
        }
        Ok(GElt(
            residues
                .iter()
                .zip(&self.moduli)
                .map(|(&a, &m)| a.rem_euclid(m as i64) as u32)
                .collect(),
        ))
    }

    pub fn index(&self, a: &GElt) -> Result<usize> {
        self.check(a)?;
        Ok(a.0
            .iter()
            .zip(&self.moduli)
            .fold(0usize, |acc, (&x, &m)| acc * m as usize + x as usize))
    }

    pub fn element(&self, mut index: usize) -> GElt {
        assert!(index < self.order(), "element index out of range");
        let mut res = vec![0; self.rank()];
        for (slot, &m) in res.iter_mut().zip(&self.moduli).rev() {
            *slot = (index % m as usize) as u32;
            index /= m as usize;
        }
        GElt(res)
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = GElt> + '_ {
        (0..self.order()).map(|i| self.element(i))
    }

    pub fn add(&self, a: &GElt, b: &GElt) -> Result<GElt> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.add_unchecked(a, b))
    }

    fn add_unchecked(&self, a: &GElt, b: &GElt) -> GElt {
        GElt(
            a.0.iter()
                .zip(&b.0)
                .zip(&self.moduli)
                .map(|((&x, &y), &m)| ((x as u64 + y as u64) % m as u64) as u32)
                .collect(),
        )
    }

    pub fn neg(&self, a: &GElt) -> Result<GElt> {
        self.check(a)?;
        Ok(GElt(
            a.0.iter()
                .zip(&self.moduli)
                .map(|(&x, &m)| (m - x) % m)
                .collect(),
        ))
    }

    /// Index-level addition for hot loops.
    pub fn add_idx(&self, mut i: usize, mut j: usize) -> usize {
        let (mut out, mut place) = (0, 1);
        for &m in self.moduli.iter().rev() {
            let m = m as usize;
            out += ((i % m + j % m) % m) * place;
            i /= m;
            j /= m;
            place *= m;
        }
        out
    }

    pub fn neg_idx(&self, mut i: usize) -> usize {
        let (mut out, mut place) = (0, 1);
        for &m in self.moduli.iter().rev() {
            let m = m as usize;
            out += ((m - i % m) % m) * place;
            i /= m;
            place *= m;
        }
        out
    }

    /// Per-component carry of index-level addition.
    pub fn sigma_idx(&self, mut i: usize, mut j: usize) -> Vec<u32> {
        let mut out = vec![0; self.rank()];
        for (slot, &m) in out.iter_mut().zip(&self.moduli).rev() {
            let m = m as usize;
            *slot = (i % m + j % m >= m) as u32;
            i /= m;
            j /= m;
        }
        out
    }

    /// Additive order of an element.
    pub fn element_order(&self, a: &GElt) -> usize {
        a.0.iter()
            .zip(&self.moduli)
            .map(|(&x, &m)| {
                if x == 0 {
                    1
                } else {
                    (m / gcd(x, m)) as usize
                }
            })
            .max()
            .unwrap_or(1)
    }

    /// Canonical integer representative `s(a_i)` of each component.
    pub fn rep(&self, a: &GElt) -> Vec<u32> {
        a.0.clone()
    }

    /// Carry of component-wise addition: `(s(a) + s(b) - s(a+b)) / p^{n_i}`.
    pub fn sigma(&self, a: &GElt, b: &GElt) -> Result<Vec<u32>> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.sigma_unchecked(a, b))
    }

    pub(crate) fn sigma_unchecked(&self, a: &GElt, b: &GElt) -> Vec<u32> {
        a.0.iter()
            .zip(&b.0)
            .zip(&self.moduli)
            .map(|((&x, &y), &m)| ((x as u64 + y as u64) >= m as u64) as u32)
            .collect()
    }

    /// Smallest subgroup containing `gens`, by saturation.
    pub fn subgroup_generated(&self, gens: &[GElt]) -> Result<Subgroup> {
        for g in gens {
            self.check(g)?;
        }
        let mut members: BTreeSet<GElt> = BTreeSet::from([self.zero()]);
        let mut frontier: Vec<GElt> = vec![self.zero()];
        while let Some(a) = frontier.pop() {
            for g in gens {
                let b = self.add_unchecked(&a, g);
                if members.insert(b.clone()) {
                    frontier.push(b);
                }
            }
        }
        Ok(Subgroup {
            group: self.clone(),
            members: members.into_iter().collect(),
        })
    }
}

fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl fmt::Display for PGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.moduli.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.moduli.iter().map(|m| format!("Z/{m}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

impl fmt::Debug for PGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PGroup({self})")
    }
}

/// A subgroup, stored as its sorted member list.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Subgroup {
    #[serde(skip)]
    group: PGroup,
    members: Vec<GElt>,
}

impl Subgroup {
    /// Checks that `members` contains 0 and is closed under addition and negation.
    pub fn from_members(group: &PGroup, members: impl IntoIterator<Item = GElt>) -> Result<Self> {
        let set: BTreeSet<GElt> = members.into_iter().collect();
        for a in &set {
            group.check(a)?;
        }
        if !set.contains(&group.zero()) {
            return Err(Error::NotASubgroup);
        }
        for a in &set {
            if !set.contains(&group.neg(a)?) {
                return Err(Error::NotASubgroup);
            }
            for b in &set {
                if !set.contains(&group.add_unchecked(a, b)) {
                    return Err(Error::NotASubgroup);
                }
            }
        }
        Ok(Subgroup {
            group: group.clone(),
            members: set.into_iter().collect(),
        })
    }

    pub fn trivial(group: &PGroup) -> Self {
        Subgroup {
            group: group.clone(),
            members: vec![group.zero()],
        }
    }

    pub fn whole(group: &PGroup) -> Self {
        Subgroup {
            group: group.clone(),
            members: group.elements().collect(),
        }
    }

    pub fn group(&self) -> &PGroup {
        &self.group
    }

    pub fn members(&self) -> &[GElt] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn index_in_group(&self) -> usize {
        self.group.order() / self.order()
    }

    pub fn contains(&self, a: &GElt) -> bool {
        self.members.binary_search(a).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.order() == self.group.order()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(v: &[u32]) -> GElt {
        GElt(v.to_vec())
    }

    #[test]
    fn construction() {
        let g = PGroup::new(2, vec![1, 2]).unwrap();
        assert_eq!(g.exponents(), &[2, 1]);
        assert_eq!(g.order(), 8);
        assert!(PGroup::new(4, vec![1]).is_err());
        assert!(PGroup::new(2, vec![17]).is_err());
        assert!(PGroup::new(3, vec![6, 5]).is_err());
        assert_eq!(PGroup::cyclic(3, 0).unwrap().order(), 1);
    }

    #[test]
    fn index_roundtrip_is_lexicographic() {
        let g = PGroup::new(2, vec![2, 1]).unwrap();
        let all: Vec<GElt> = g.elements().collect();
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(all, sorted);
        for (i, a) in all.iter().enumerate() {
            assert_eq!(g.index(a).unwrap(), i);
        }
    }

    #[test]
    fn reps_and_carries() {
        let z4 = PGroup::cyclic(2, 2).unwrap();
        assert_eq!(z4.rep(&e(&[3])), vec![3]);
        assert_eq!(z4.rep(&e(&[0])), vec![0]);
        let g = PGroup::new(2, vec![2, 1]).unwrap();
        assert_eq!(g.rep(&e(&[3, 1])), vec![3, 1]);
        let z3 = PGroup::cyclic(3, 1).unwrap();
        assert_eq!(z3.sigma(&e(&[2]), &e(&[2])).unwrap(), vec![1]);
        assert_eq!(z4.sigma(&e(&[3]), &e(&[3])).unwrap(), vec![1]);
        for a in g.elements() {
            assert_eq!(g.sigma(&g.zero(), &a).unwrap(), vec![0, 0]);
        }
        assert_eq!(z4.sigma(&e(&[1]), &e(&[1, 0])), Err(Error::GroupMismatch));
    }

    #[test]
    fn generated_subgroups() {
        let z4 = PGroup::cyclic(2, 2).unwrap();
        assert_eq!(z4.subgroup_generated(&[]).unwrap().members(), &[e(&[0])]);
        assert_eq!(
            z4.subgroup_generated(&[e(&[2])]).unwrap().members(),
            &[e(&[0]), e(&[2])]
        );
        let g = PGroup::new(2, vec![2, 1]).unwrap();
        // stored as (Z/4 component, Z/2 component)
        let h = g.subgroup_generated(&[e(&[2, 1])]).unwrap();
        assert_eq!(h.members(), &[e(&[0, 0]), e(&[2, 1])]);
        assert!(Subgroup::from_members(&z4, [e(&[0]), e(&[1])]).is_err());
    }

    #[test]
    fn json_shape() {
        let g: PGroup = serde_json::from_str(r#"{"p":2,"exponents":[2]}"#).unwrap();
        assert_eq!(g, PGroup::cyclic(2, 2).unwrap());
        assert_eq!(serde_json::to_string(&g).unwrap(), r#"{"p":2,"exponents":[2]}"#);
        assert_eq!(serde_json::to_string(&e(&[1, 3])).unwrap(), "[1,3]");
    }
}
