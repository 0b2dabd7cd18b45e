//! Ramification of D(M)-coverings: stabilizers, multiplicities `|M/N_y| - 1`,
//! the ramification divisor, dévissage and the fixed-point ideal relation.

mod devissage;
mod gln;
pub mod local;

pub use devissage::{devissage_check, DevissagePlace, DevissageReport};
pub use gln::{gln_regression, GlnReport};
pub use local::{normalize_local_model, LocalModel, Normality};

use std::collections::BTreeSet;

use serde::Serialize;

use crate::arith::{irreducible_factors, Place, Poly};
use crate::covering::{chart_at_infinity, Cocycle, Covering};
use crate::divisor::Divisor;
use crate::error::{Error, Result};
use crate::pgroup::Subgroup;

const NON_CYCLIC: &str = "a non-cyclic covering of a curve over F_p has a non-reduced generic fibre, \
     since F_p(x)^{1/p} has degree p; normality can only be assumed";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NormalityPolicy {
    /// Certify a normal model at every place, rejecting otherwise.
    #[default]
    Verify,
    /// Take the given cocycle as the normal model.
    Assume,
}

#[derive(Clone, Debug, Default)]
pub struct RamOptions {
    pub include_infinity: bool,
    /// Degrees `d(m)` for the chart at infinity; canonical when absent.
    pub infinity_degrees: Option<Vec<i64>>,
    pub policy: NormalityPolicy,
}

impl RamOptions {
    pub fn affine() -> Self {
        Self::default()
    }

    pub fn projective() -> Self {
        RamOptions {
            include_infinity: true,
            ..Self::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Chart {
    Affine,
    Infinity { degrees: Vec<i64>, canonical: bool },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RamReport {
    pub place: Place,
    pub stabilizer: Subgroup,
    pub multiplicity: i64,
    pub totally_ramified: bool,
    pub torsor: bool,
    pub normality: Normality,
    pub chart: Chart,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub local_exponent: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basis_valuations: Option<Vec<i64>>,
}

impl RamReport {
    fn new(place: Place, stabilizer: Subgroup, normality: Normality, chart: Chart) -> Self {
        let multiplicity = stabilizer.index_in_group() as i64 - 1;
        RamReport {
            place,
            totally_ramified: stabilizer.is_trivial(),
            torsor: stabilizer.is_whole(),
            multiplicity,
            stabilizer,
            normality,
            chart,
            local_exponent: None,
            basis_valuations: None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RamificationResult {
    pub divisor: Divisor,
    pub degree: i64,
    pub reports: Vec<RamReport>,
}

/// `N = {m : α(m,-m) is a unit at v}`, checked to be a subgroup.
pub fn stabilizer_subgroup_at(c: &Cocycle, v: &Place) -> Result<Subgroup> {
    let g = c.group();
    let members = c
        .diagonal()
        .into_iter()
        .enumerate()
        .filter(|(_, a)| v.is_unit_at(a))
        .map(|(m, _)| g.element(m));
    Subgroup::from_members(g, members)
}

/// The chart cocycle at infinity, the degrees used, and whether they were
/// the canonical choice.
pub fn infinity_chart(cov: &Covering, degrees: Option<&[i64]>) -> Result<(Cocycle, Vec<i64>, bool)> {
    let (d, canonical) = match degrees {
        Some(d) => (d.to_vec(), false),
        None => (cov.canonical_infinity_degrees()?, true),
    };
    let c = chart_at_infinity(&cov.cocycle()?, &d)?;
    Ok((c, d, canonical))
}

fn relabel(e: Error, v: &Place) -> Error {
    match e {
        Error::NonNormalModel { reason, .. } => Error::NonNormalModel {
            place: v.to_string(),
            reason,
        },
        Error::UnsupportedPartialRamification { exponent, modulus, .. } => {
            Error::UnsupportedPartialRamification {
                place: v.to_string(),
                exponent,
                modulus,
            }
        }
        other => other,
    }
}

/// The certified local model of a cyclic covering at `v`. Untwisted Kummer
/// data is normalized; cocycles and twisted data are taken as given.
pub fn local_model_at(cov: &Covering, v: &Place, infinity_degrees: Option<&[i64]>) -> Result<LocalModel> {
    let g = cov.group();
    let n = g
        .cyclic_exponent()
        .ok_or_else(|| Error::NonNormalModel {
            place: v.to_string(),
            reason: NON_CYCLIC.into(),
        })?;
    let p = g.p();
    let (c, vp) = if v.is_infinity() {
        (infinity_chart(cov, infinity_degrees)?.0, Place::Finite(Poly::x(p)))
    } else {
        (cov.cocycle()?, v.clone())
    };
    let model = match cov {
        Covering::Kummer(kd) if kd.is_untwisted() => {
            let f = if v.is_infinity() { c.kummer_function()? } else { kd.functions()[0].clone() };
            LocalModel::normalize(p, n, &f, &vp)
        }
        _ => LocalModel::from_cyclic_cocycle(&c, &vp),
    };
    model.map_err(|e| relabel(e, v))
}

/// The cocycle on the chart containing `v`, and `v` on that chart.
fn chart_and_place(cov: &Covering, v: &Place, degrees: Option<&[i64]>) -> Result<(Cocycle, Place)> {
    if v.is_infinity() {
        Ok((infinity_chart(cov, degrees)?.0, Place::Finite(Poly::x(cov.group().p()))))
    } else {
        Ok((cov.cocycle()?, v.clone()))
    }
}

/// `f = c g^{p^n}` with `c` constant: the covering is generically a unit
/// twist of the trivial one.
fn is_power_up_to_constant(f: &Poly, n: u32) -> bool {
    let mut g = f.monic();
    for _ in 0..n {
        match g.pth_root() {
            Some(r) => g = r,
            None => return false,
        }
    }
    true
}

/// Full per-place report.
pub fn report_at(cov: &Covering, v: &Place, opts: &RamOptions) -> Result<RamReport> {
    let chart = if v.is_infinity() {
        let (_, degrees, canonical) = infinity_chart(cov, opts.infinity_degrees.as_deref())?;
        Chart::Infinity { degrees, canonical }
    } else {
        Chart::Affine
    };
    match opts.policy {
        NormalityPolicy::Assume => {
            let (c, vp) = chart_and_place(cov, v, opts.infinity_degrees.as_deref())?;
            let n = stabilizer_subgroup_at(&c, &vp)?;
            Ok(RamReport::new(v.clone(), n, Normality::AssumedByCaller, chart))
        }
        NormalityPolicy::Verify => {
            if let Some(n) = cov.group().cyclic_exponent() {
                let (c, vp) = chart_and_place(cov, v, opts.infinity_degrees.as_deref())?;
                if c.torsor_at(&vp) && is_power_up_to_constant(&c.kummer_function()?, n) {
                    let whole = Subgroup::whole(cov.group());
                    return Ok(RamReport::new(v.clone(), whole, Normality::Split, chart));
                }
            }
            let model = local_model_at(cov, v, opts.infinity_degrees.as_deref())?;
            model.require_normal().map_err(|e| relabel(e, v))?;
            let mut r = RamReport::new(v.clone(), model.stabilizer()?, model.normality().clone(), chart);
            r.local_exponent = Some(model.exponent());
            r.basis_valuations = Some(model.valuations().to_vec());
            Ok(r)
        }
    }
}

/// `|M/N_y| - 1` at `v`.
pub fn multiplicity_at(cov: &Covering, v: &Place, policy: NormalityPolicy) -> Result<i64> {
    let opts = RamOptions {
        policy,
        ..RamOptions::default()
    };
    Ok(report_at(cov, v, &opts)?.multiplicity)
}

fn factor_set(f: &Poly, into: &mut BTreeSet<Place>) -> Result<()> {
    if f.is_zero() || f.is_constant() {
        return Ok(());
    }
    for q in irreducible_factors(f)? {
        into.insert(Place::Finite(q));
    }
    Ok(())
}

/// Finite places where a model could be ramified or fail to be normal.
pub fn candidate_places(cov: &Covering, policy: NormalityPolicy) -> Result<Vec<Place>> {
    let mut places = BTreeSet::new();
    let cyclic = cov.group().is_cyclic();
    match (policy, cov) {
        (NormalityPolicy::Verify, Covering::Kummer(kd)) if cyclic && kd.is_untwisted() => {
            let f = &kd.functions()[0];
            factor_set(f, &mut places)?;
            factor_set(&f.derivative(), &mut places)?;
        }
        (NormalityPolicy::Verify, _) if cyclic => {
            let c = cov.cocycle()?;
            for q in c.support_polys()? {
                places.insert(Place::Finite(q));
            }
            factor_set(&c.kummer_function()?.derivative(), &mut places)?;
        }
        _ => {
            let c = cov.cocycle()?;
            for a in c.diagonal() {
                factor_set(a, &mut places)?;
            }
        }
    }
    Ok(places.into_iter().collect())
}

/// `R_G` place by place, with the infinity chart when requested.
pub fn ramification_divisor(cov: &Covering, opts: &RamOptions) -> Result<RamificationResult> {
    if opts.policy == NormalityPolicy::Verify && !cov.group().is_cyclic() {
        return Err(Error::NonNormalModel {
            place: "generic point".into(),
            reason: NON_CYCLIC.into(),
        });
    }
    let mut places = candidate_places(cov, opts.policy)?;
    if opts.include_infinity {
        places.push(Place::Infinity);
    }
    let mut divisor = Divisor::zero();
    let mut reports = Vec::with_capacity(places.len());
    for v in places {
        let r = report_at(cov, &v, opts)?;
        if r.multiplicity != 0 {
            divisor = divisor.add(&Divisor::single(v.clone(), r.multiplicity))?;
        }
        reports.push(r);
    }
    Ok(RamificationResult {
        degree: divisor.degree()?,
        divisor,
        reports,
    })
}

/// Valuation-level check of `O_Y(-R_G)_y = I_{G,y}^{|G|-1}` at a totally
/// ramified place.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixedIdealReport {
    pub place: Place,
    pub group_order: usize,
    pub fixed_ideal_valuation: i64,
    pub multiplicity: i64,
    pub holds: bool,
}

pub fn fixed_ideal_relation_check(model: &LocalModel) -> Result<FixedIdealReport> {
    model.require_normal()?;
    if !model.is_totally_ramified()? {
        return Err(Error::NotTotallyRamified(model.place().to_string()));
    }
    let v = local::fixed_ideal_valuation_at(model)?;
    let mult = model.multiplicity()?;
    let order = model.order();
    Ok(FixedIdealReport {
        place: model.place().clone(),
        group_order: order,
        fixed_ideal_valuation: v,
        multiplicity: mult,
        holds: v == 1 && mult == order as i64 - 1 && (order as i64 - 1) * v == mult,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covering::{kummer_cocycle, KummerData};
    use crate::pgroup::{GElt, PGroup};

    fn poly(p: u32, c: &[u32]) -> Poly {
        Poly::new(p, c.to_vec())
    }

    fn product_x_x1() -> Covering {
        let g = PGroup::new(2, vec![1, 1]).unwrap();
        Covering::Kummer(KummerData::new(&g, vec![Poly::x(2), poly(2, &[1, 1])], None).unwrap())
    }

    #[test]
    fn stabilizers() {
        let g = PGroup::cyclic(3, 1).unwrap();
        assert!(stabilizer_subgroup_at(&Cocycle::trivial(&g), &Place::rational(3, 0)).unwrap().is_whole());
        let c = kummer_cocycle(&g, &[Poly::x(3)]).unwrap();
        assert!(stabilizer_subgroup_at(&c, &Place::rational(3, 0)).unwrap().is_trivial());
        let c = product_x_x1().cocycle().unwrap();
        let n = stabilizer_subgroup_at(&c, &Place::rational(2, 0)).unwrap();
        assert_eq!(n.members(), &[GElt(vec![0, 0]), GElt(vec![0, 1])]);
    }

    #[test]
    fn multiplicities() {
        for p in [2, 3, 5, 7] {
            let cov = Covering::Kummer(KummerData::cyclic(p, 1, Poly::x(p)).unwrap());
            assert_eq!(multiplicity_at(&cov, &Place::rational(p, 0), NormalityPolicy::Verify).unwrap(), p as i64 - 1);
            assert_eq!(multiplicity_at(&cov, &Place::rational(p, 1), NormalityPolicy::Verify).unwrap(), 0);
        }
        let cov = product_x_x1();
        assert_eq!(multiplicity_at(&cov, &Place::rational(2, 0), NormalityPolicy::Assume).unwrap(), 1);
        assert!(matches!(
            multiplicity_at(&cov, &Place::rational(2, 0), NormalityPolicy::Verify),
            Err(Error::NonNormalModel { .. })
        ));
    }

    #[test]
    fn divisors() {
        let cov = Covering::Kummer(KummerData::cyclic(3, 1, Poly::x(3)).unwrap());
        let r = ramification_divisor(&cov, &RamOptions::affine()).unwrap();
        assert_eq!(r.divisor, Divisor::single(Place::rational(3, 0), 2));

        let cov = Covering::Kummer(KummerData::cyclic(2, 2, Poly::x(2)).unwrap());
        let opts = RamOptions {
            include_infinity: true,
            infinity_degrees: Some(vec![0, 1, 1, 1]),
            ..RamOptions::default()
        };
        let r = ramification_divisor(&cov, &opts).unwrap();
        let expected = Divisor::single(Place::rational(2, 0), 3).add(&Divisor::single(Place::Infinity, 3)).unwrap();
        assert_eq!(r.divisor, expected);

        let g = PGroup::cyclic(2, 2).unwrap();
        let r = ramification_divisor(&Covering::Cocycle(Cocycle::trivial(&g)), &RamOptions::affine()).unwrap();
        assert!(r.divisor.is_zero());
        let r = ramification_divisor(&Covering::Cocycle(Cocycle::trivial(&g)), &RamOptions::projective()).unwrap();
        assert!(r.divisor.is_zero());
        assert_eq!(r.reports[0].normality, Normality::Split);
    }

    #[test]
    fn cusp_at_infinity() {
        let cov = Covering::Kummer(KummerData::cyclic(2, 1, poly(2, &[0, 1, 0, 0, 1])).unwrap());
        let opts = RamOptions {
            include_infinity: true,
            infinity_degrees: Some(vec![0, 2]),
            ..RamOptions::default()
        };
        match ramification_divisor(&cov, &opts) {
            Err(Error::NonNormalModel { place, .. }) => assert_eq!(place, "∞"),
            other => panic!("expected rejection at infinity, got {other:?}"),
        }
    }

    #[test]
    fn fixed_ideal_relation() {
        for (p, n, f) in [(2, 1, Poly::x(2)), (3, 1, Poly::x(3)), (2, 2, poly(2, &[0, 0, 0, 1]))] {
            let m = LocalModel::normalize(p, n, &f, &Place::rational(p, 0)).unwrap();
            assert!(fixed_ideal_relation_check(&m).unwrap().holds);
        }
        let m = LocalModel::normalize(2, 1, &Poly::x(2), &Place::rational(2, 1)).unwrap();
        assert!(matches!(fixed_ideal_relation_check(&m), Err(Error::NotTotallyRamified(_))));
    }
}
