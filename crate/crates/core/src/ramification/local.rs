//! Local models of cyclic coverings at a place: the local ring `A = O_{Y,y}`
//! with basis `e_m` and the valuations `v_A(e_m)` that certify normality.
//!
//! All models live on `Z/p^n` and write `e_m = z^{s(m)} / B_m` where
//! `z^{p^n} = F` is the Kummer generator of the generic fibre. With
//! `q = p^n`, `v = v_π(F)` and `c = v mod q`, the model is normal at `π` iff
//!
//! * `gcd(c, p) = 1` and `{v_A(e_m)} = {0, ..., q-1}`, or
//! * `c = 0`, every `v_A(e_m) = 0`, and the unit part `u = F / π^v` has
//!   derivative nonzero modulo `π` (then `z/π^{v/q} - r` is a uniformizer,
//!   where `r^q ≡ u mod π`).
//!
//! Here `v_A` is normalized so that `v_A(π) = q`.

use serde::Serialize;

use crate::arith::{Place, Poly, RatFun};
use crate::covering::{forward_decompose, Cocycle, KummerData};
use crate::error::{Error, Result};
use crate::pgroup::{GElt, PGroup, Subgroup};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "reason", rename_all = "snake_case")]
pub enum Normality {
    Verified,
    AssumedByCaller,
    /// The covering is generically a twist of the trivial one and a torsor
    /// at the place, so the multiplicity is 0 without a normal model.
    Split,
    Rejected(String),
}

impl Normality {
    pub fn is_rejected(&self) -> bool {
        matches!(self, Normality::Rejected(_))
    }
}

#[derive(Clone, Debug)]
pub struct LocalModel {
    group: PGroup,
    n: u32,
    place: Place,
    kummer: Option<Poly>,
    raw_exponent: i64,
    exponent: u64,
    twists: Vec<i64>,
    valuations: Vec<i64>,
    basis_den: Option<Vec<RatFun>>,
    cocycle: Option<Cocycle>,
    normality: Normality,
}

fn finite_poly(place: &Place) -> Result<&Poly> {
    place.poly().ok_or_else(|| {
        Error::InvalidInput("local models are built at finite places; use the chart at infinity".into())
    })
}

/// `u' mod π ≠ 0` for the unit part `u = f / π^{v_π(f)}`.
fn unit_part_regular(f: &Poly, pi: &Poly) -> bool {
    let v = f.multiplicity(pi);
    let u = f.exact_div(&pi.pow(v as u64)).expect("multiplicity divides");
    !u.derivative().rem(pi).is_zero()
}

impl LocalModel {
    fn assemble(
        group: PGroup,
        place: Place,
        kummer: Option<Poly>,
        raw_exponent: i64,
        valuations: Vec<i64>,
        basis_den: Option<Vec<RatFun>>,
        cocycle: Option<Cocycle>,
    ) -> Self {
        let n = group.cyclic_exponent().expect("local models are cyclic");
        let q = group.order() as i64;
        let exponent = raw_exponent.rem_euclid(q) as u64;
        let twists = valuations
            .iter()
            .enumerate()
            .map(|(m, &val)| (m as i64 * exponent as i64 - val).div_euclid(q))
            .collect();
        let mut model = LocalModel {
            group,
            n,
            place,
            kummer,
            raw_exponent,
            exponent,
            twists,
            valuations,
            basis_den,
            cocycle,
            normality: Normality::Verified,
        };
        model.normality = model.certify();
        model
    }

    fn certify(&self) -> Normality {
        let q = self.order() as i64;
        let p = self.group.p() as u64;
        if q == 1 {
            return Normality::Verified;
        }
        let c = self.exponent;
        if c != 0 && c.is_multiple_of(p) {
            return Normality::Rejected(format!("partial ramification: v(f) = {c} mod {q}"));
        }
        if c != 0 {
            let mut vals = self.valuations.clone();
            vals.sort_unstable();
            return if vals.iter().copied().eq(0..q) {
                Normality::Verified
            } else {
                Normality::Rejected(format!(
                    "basis valuations {:?} do not cover 0..{}",
                    self.valuations,
                    q - 1
                ))
            };
        }
        if self.valuations.iter().any(|&v| v != 0) {
            return Normality::Rejected(format!(
                "basis valuations {:?} are not all zero at an unramified exponent",
                self.valuations
            ));
        }
        match (&self.kummer, self.place.poly()) {
            (Some(f), Some(_)) if f.derivative().is_zero() => {
                Normality::Rejected(format!("{f} is a p-th power"))
            }
            (Some(f), Some(pi)) if !unit_part_regular(f, pi) => Normality::Rejected(format!(
                "derivative of the unit part of {f} vanishes modulo {pi}"
            )),
            (Some(_), Some(_)) => Normality::Verified,
            _ => Normality::Rejected("no Kummer function to test regularity".into()),
        }
    }

    /// The normalized model of `z^{p^n} = f` at `place`: twists
    /// `t(m) = floor(s(m) c / p^n)` after removing `p^n`-th powers of `π`.
    pub fn normalize(p: u32, n: u32, f: &Poly, place: &Place) -> Result<Self> {
        let group = PGroup::cyclic(p, n)?;
        if f.p() != p {
            return Err(Error::CharacteristicMismatch(p, f.p()));
        }
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if f.derivative().is_zero() {
            return Err(Error::NonIntegralModel(f.to_string()));
        }
        let pi = finite_poly(place)?;
        let q = group.order() as i64;
        let raw = f.multiplicity(pi) as i64;
        let c = raw % q;
        if c != 0 && c % p as i64 == 0 {
            return Err(Error::UnsupportedPartialRamification {
                place: place.to_string(),
                exponent: c,
                modulus: q as u64,
            });
        }
        let k = raw / q;
        // raw twist exponents T(m) = t(m) + s(m) k
        let big_t: Vec<i64> = (0..q).map(|s| s * c / q + s * k).collect();
        let valuations: Vec<i64> = (0..q).map(|s| s * raw - q * big_t[s as usize]).collect();
        let basis_den = big_t
            .iter()
            .map(|&t| RatFun::from(pi.pow(t as u64)))
            .collect();
        let cocycle = Cocycle::from_fn(&group, |i, j| {
            let e = big_t[group.add_idx(i, j)] - big_t[i] - big_t[j];
            let base = if i + j >= q as usize { f.clone() } else { Poly::one(p) };
            Ok(if e >= 0 {
                &base * &pi.pow(e as u64)
            } else {
                base.exact_div(&pi.pow((-e) as u64))
                    .ok_or_else(|| Error::Internal("normalized twist is not integral".into()))?
            })
        })?;
        let model = Self::assemble(group, place.clone(), Some(f.clone()), raw, valuations, Some(basis_den), Some(cocycle));
        match &model.normality {
            Normality::Rejected(reason) => Err(Error::NonNormalModel {
                place: place.to_string(),
                reason: reason.clone(),
            }),
            _ => Ok(model),
        }
    }

    /// The model `A_0[z]/(z^{p^n} - f)` with no twist. Normality is recorded,
    /// not enforced.
    pub fn untwisted(p: u32, n: u32, f: &Poly, place: &Place) -> Result<Self> {
        let group = PGroup::cyclic(p, n)?;
        if f.p() != p {
            return Err(Error::CharacteristicMismatch(p, f.p()));
        }
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let pi = finite_poly(place)?;
        let q = group.order() as i64;
        let raw = f.multiplicity(pi) as i64;
        let valuations = (0..q).map(|s| s * raw).collect();
        let cocycle = crate::covering::kummer_cocycle(&group, std::slice::from_ref(f))?;
        Ok(Self::assemble(
            group,
            place.clone(),
            Some(f.clone()),
            raw,
            valuations,
            Some(vec![RatFun::one(p); q as usize]),
            Some(cocycle),
        ))
    }

    /// The model given by a cyclic cocycle as it stands, with basis
    /// `e_m = z^{s(m)} / β_m` from the forward decomposition.
    pub fn from_cyclic_cocycle(c: &Cocycle, place: &Place) -> Result<Self> {
        let group = c.group().clone();
        let pi = finite_poly(place)?;
        let dec = forward_decompose(c)?;
        let q = group.order() as i64;
        if q > 1 && !dec.f.is_constant() && dec.f.derivative().is_zero() {
            return Err(Error::NonIntegralModel(dec.f.to_string()));
        }
        let raw = dec.f.multiplicity(pi) as i64;
        let valuations = dec
            .beta
            .iter()
            .enumerate()
            .map(|(s, b)| s as i64 * raw - q * b.multiplicity(pi) as i64)
            .collect();
        let model = Self::assemble(
            group,
            place.clone(),
            Some(dec.f),
            raw,
            valuations,
            Some(dec.beta.into_iter().map(RatFun::from).collect()),
            Some(c.clone()),
        );
        let cexp = model.exponent;
        if cexp != 0 && cexp % model.group.p() as u64 == 0 {
            return Err(Error::UnsupportedPartialRamification {
                place: place.to_string(),
                exponent: cexp as i64,
                modulus: q as u64,
            });
        }
        Ok(model)
    }

    /// A layer known only through the valuation of its Kummer generator, with
    /// normality inherited from an enclosing model. Twists are normalized.
    pub fn layer(p: u32, n: u32, place: &Place, raw_exponent: i64, normality: Normality) -> Result<Self> {
        let group = PGroup::cyclic(p, n)?;
        let q = group.order() as i64;
        let c = raw_exponent.rem_euclid(q);
        if c != 0 && c % p as i64 == 0 {
            return Err(Error::UnsupportedPartialRamification {
                place: place.to_string(),
                exponent: c,
                modulus: q as u64,
            });
        }
        let valuations = (0..q).map(|s| (s * c) % q).collect();
        let mut model = Self::assemble(group, place.clone(), None, raw_exponent, valuations, None, None);
        model.normality = normality;
        Ok(model)
    }

    pub fn group(&self) -> &PGroup {
        &self.group
    }

    pub fn p(&self) -> u32 {
        self.group.p()
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// `p^n`, which is also `v_A(π)`.
    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn place(&self) -> &Place {
        &self.place
    }

    pub fn kummer_function(&self) -> Option<&Poly> {
        self.kummer.as_ref()
    }

    /// `v_π(f)` before reduction.
    pub fn raw_exponent(&self) -> i64 {
        self.raw_exponent
    }

    /// `c = v_π(f) mod p^n`.
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    /// `t(m)` with `v_A(e_m) = s(m) c - p^n t(m)`.
    pub fn twists(&self) -> &[i64] {
        &self.twists
    }

    pub fn valuations(&self) -> &[i64] {
        &self.valuations
    }

    /// `B_m` with `e_m = z^{s(m)} / B_m`, when the basis is explicit.
    pub fn basis_denominators(&self) -> Option<&[RatFun]> {
        self.basis_den.as_deref()
    }

    /// Multiplication table of the model over `F_p[x]`.
    pub fn cocycle(&self) -> Option<&Cocycle> {
        self.cocycle.as_ref()
    }

    pub fn normality(&self) -> &Normality {
        &self.normality
    }

    pub fn assume_normal(mut self) -> Self {
        if self.normality.is_rejected() {
            self.normality = Normality::AssumedByCaller;
        }
        self
    }

    pub fn require_normal(&self) -> Result<()> {
        match &self.normality {
            Normality::Rejected(reason) => Err(Error::NonNormalModel {
                place: self.place.to_string(),
                reason: reason.clone(),
            }),
            _ => Ok(()),
        }
    }

    /// `N_y = {m : v_A(e_m) + v_A(e_{-m}) = 0}`, i.e. `α(m,-m)` a unit.
    pub fn stabilizer(&self) -> Result<Subgroup> {
        let g = &self.group;
        let members = (0..g.order())
            .filter(|&m| self.valuations[m] + self.valuations[g.neg_idx(m)] == 0)
            .map(|m| g.element(m));
        Subgroup::from_members(g, members)
    }

    pub fn multiplicity(&self) -> Result<i64> {
        Ok(self.stabilizer()?.index_in_group() as i64 - 1)
    }

    pub fn is_totally_ramified(&self) -> Result<bool> {
        Ok(self.stabilizer()?.is_trivial())
    }

    /// An index `d` with `v_A(e_d) = 1`, when the basis contains a uniformizer.
    pub fn uniformizer_index(&self) -> Option<usize> {
        self.valuations.iter().position(|&v| v == 1)
    }
}

/// The cyclic Kummer data `kd` normalized at `v`.
pub fn normalize_local_model(kd: &KummerData, v: &Place) -> Result<LocalModel> {
    let n = kd
        .group()
        .cyclic_exponent()
        .ok_or_else(|| Error::UnsupportedGroup(kd.group().to_string()))?;
    LocalModel::normalize(kd.group().p(), n, &kd.functions()[0], v)
}

/// Generators `e_m, m ≠ 0` of the fixed-point ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedIdealData {
    generators: Vec<GElt>,
}

impl FixedIdealData {
    pub fn new(group: &PGroup) -> Self {
        FixedIdealData {
            generators: group.elements().skip(1).collect(),
        }
    }

    pub fn generators(&self) -> &[GElt] {
        &self.generators
    }
}

/// `min_{m ≠ 0} v_A(e_m)`.
pub fn fixed_ideal_valuation_at(model: &LocalModel) -> Result<i64> {
    model.require_normal()?;
    model.valuations[1..]
        .iter()
        .copied()
        .min()
        .ok_or_else(|| Error::InvalidInput("the trivial group has an empty fixed-point ideal".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(p: u32, c: &[u32]) -> Poly {
        Poly::new(p, c.to_vec())
    }

    fn at_x(p: u32) -> Place {
        Place::rational(p, 0)
    }

    #[test]
    fn already_minimal() {
        let m = LocalModel::normalize(2, 1, &Poly::x(2), &at_x(2)).unwrap();
        assert_eq!(m.exponent(), 1);
        assert_eq!(m.twists(), &[0, 0]);
        assert_eq!(m.valuations(), &[0, 1]);
        assert_eq!(m.normality(), &Normality::Verified);
    }

    #[test]
    fn cube_over_z4() {
        let m = LocalModel::normalize(2, 2, &poly(2, &[0, 0, 0, 1]), &at_x(2)).unwrap();
        assert_eq!(m.twists(), &[0, 0, 1, 2]);
        assert_eq!(m.valuations(), &[0, 3, 2, 1]);
        assert_eq!(m.uniformizer_index(), Some(3));
        assert!(m.cocycle().unwrap().validate().passed());
        assert_eq!(fixed_ideal_valuation_at(&m).unwrap(), 1);
    }

    #[test]
    fn cusp_is_rejected() {
        let r = LocalModel::normalize(2, 1, &poly(2, &[1, 0, 0, 1]), &at_x(2));
        assert!(matches!(r, Err(Error::NonNormalModel { .. })));
    }

    #[test]
    fn pth_power_is_rejected() {
        let r = LocalModel::normalize(3, 1, &poly(3, &[1, 0, 0, 1]), &at_x(3));
        assert!(matches!(r, Err(Error::NonIntegralModel(_))));
    }

    #[test]
    fn partial_ramification_is_unsupported() {
        let r = LocalModel::normalize(2, 2, &poly(2, &[0, 0, 1, 1]), &at_x(2));
        assert!(matches!(r, Err(Error::UnsupportedPartialRamification { .. })));
    }

    #[test]
    fn untwisted_cube_is_not_normal() {
        let m = LocalModel::untwisted(2, 1, &poly(2, &[0, 0, 0, 1]), &at_x(2)).unwrap();
        assert!(m.normality().is_rejected());
        assert!(matches!(fixed_ideal_valuation_at(&m), Err(Error::NonNormalModel { .. })));
    }

    #[test]
    fn fixed_ideal_examples() {
        let m = LocalModel::normalize(2, 1, &Poly::x(2), &at_x(2)).unwrap();
        assert_eq!(fixed_ideal_valuation_at(&m).unwrap(), 1);
        let m = LocalModel::normalize(2, 1, &poly(2, &[0, 1, 1]), &at_x(2)).unwrap();
        assert_eq!(fixed_ideal_valuation_at(&m).unwrap(), 1);
    }

    #[test]
    fn unramified_exponent_with_regular_unit() {
        // f = x^2 (x + 1) over F_2: after removing x^2 the model is a torsor at x
        let m = LocalModel::normalize(2, 1, &poly(2, &[0, 0, 1, 1]), &at_x(2)).unwrap();
        assert_eq!(m.exponent(), 0);
        assert_eq!(m.multiplicity().unwrap(), 0);
        assert!(m.stabilizer().unwrap().is_whole());
    }

    #[test]
    fn cocycle_model_matches_kummer() {
        let g = PGroup::cyclic(3, 1).unwrap();
        let f = poly(3, &[0, 1, 1]);
        let c = crate::covering::kummer_cocycle(&g, std::slice::from_ref(&f)).unwrap();
        let m = LocalModel::from_cyclic_cocycle(&c, &at_x(3)).unwrap();
        assert_eq!(m.valuations(), &[0, 1, 2]);
        assert_eq!(m.normality(), &Normality::Verified);
        assert_eq!(m.multiplicity().unwrap(), 2);
    }
}
