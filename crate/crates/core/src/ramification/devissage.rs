//! Dévissage through the subgroup `H` of order `p^{n-m}` of `Z/p^n`.
//!
//! With `z^{p^n} = f`, the quotient `Y = Z/H` is `w^{p^m} = f` over `X` and
//! `Z` is `z^{p^{n-m}} = w` over `Y`. Places of `X`, `Y` and `Z` correspond
//! bijectively, `v_Y(w) = v_π(f)`, and the check is
//! `R_G = R_H + e(Z/Y) R_{G/H}` with `e(Z/Y) = v_Z(π) / v_Y(π)`.

use std::collections::BTreeMap;

use serde::Serialize;

use super::local::LocalModel;
use super::{candidate_places, infinity_chart, NormalityPolicy};
use crate::arith::{Place, Poly};
use crate::covering::{Covering, KummerData};
use crate::divisor::{DivPlace, Divisor};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DevissagePlace {
    pub place: Place,
    pub r_g: i64,
    pub r_h: i64,
    pub r_quotient: i64,
    pub index: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct DevissageReport {
    pub p: u32,
    pub n: u32,
    pub m: u32,
    pub r_g: Divisor,
    pub r_h: Divisor,
    pub r_quotient: Divisor,
    pub pulled_back: Divisor,
    pub places: Vec<DevissagePlace>,
    pub equal: bool,
}

pub fn devissage_check(kd: &KummerData, m: u32, include_infinity: bool) -> Result<DevissageReport> {
    let g = kd.group();
    let n = g
        .cyclic_exponent()
        .ok_or_else(|| Error::UnsupportedGroup(format!("dévissage needs a cyclic group, got {g}")))?;
    if m == 0 || m >= n {
        return Err(Error::InvalidInput(format!("need 0 < m < n, got m = {m}, n = {n}")));
    }
    let p = g.p();
    let f = &kd.functions()[0];
    let plain = Covering::Kummer(KummerData::new(g, vec![f.clone()], None)?);

    let mut work: Vec<(Place, Place, Poly)> = candidate_places(&plain, NormalityPolicy::Verify)?
        .into_iter()
        .map(|v| (v.clone(), v, f.clone()))
        .collect();
    if include_infinity {
        let f_inf = infinity_chart(&plain, None)?.0.kummer_function()?;
        work.push((Place::Infinity, Place::Finite(Poly::x(p)), f_inf));
    }

    let mut r_g = Divisor::zero();
    let mut r_h = Divisor::zero();
    let mut r_quotient = Divisor::zero();
    let mut index = BTreeMap::new();
    let mut places = Vec::new();
    for (label, chart_place, fv) in work {
        let relabel = |e: Error| super::relabel(e, &label);
        let full = LocalModel::normalize(p, n, &fv, &chart_place).map_err(relabel)?;
        let quotient = LocalModel::normalize(p, m, &fv, &chart_place).map_err(relabel)?;
        let top = LocalModel::layer(p, n - m, &chart_place, full.raw_exponent(), full.normality().clone())
            .map_err(relabel)?;
        let e = (full.order() / quotient.order()) as u64;
        let entry = DevissagePlace {
            place: label.clone(),
            r_g: full.multiplicity()?,
            r_h: top.multiplicity()?,
            r_quotient: quotient.multiplicity()?,
            index: e,
        };
        r_g = r_g.add(&Divisor::single(label.clone(), entry.r_g))?;
        r_h = r_h.add(&Divisor::single(label.clone(), entry.r_h))?;
        r_quotient = r_quotient.add(&Divisor::single(label.clone(), entry.r_quotient))?;
        index.insert(DivPlace::Curve(label), e);
        places.push(entry);
    }
    let pulled_back = r_quotient.pullback_map(&index)?;
    let equal = r_g == r_h.add(&pulled_back)?;
    Ok(DevissageReport {
        p,
        n,
        m,
        r_g,
        r_h,
        r_quotient,
        pulled_back,
        places,
        equal,
    })
}
