//! Global assembly over the projective line: the degree of `R_G` over both
//! charts and the genus from `2g_Y - 2 = |G|(2g_X - 2) + deg R_G`.

use serde::Serialize;

use crate::arith::{Place, Poly};
use crate::covering::{Covering, CoveringFile};
use crate::divisor::Divisor;
use crate::error::{Error, Result};
use crate::gorenstein::{gorenstein_at, GorensteinVerdict};
use crate::ramification::{
    infinity_chart, local_model_at, ramification_divisor, stabilizer_subgroup_at, NormalityPolicy, RamOptions,
    RamReport, RamificationResult,
};

pub const BASE_FIELD_NOTE: &str = "computed over F_p, which is not algebraically closed; \
     multiplicities and degrees are unchanged by extending the base field";

#[derive(Clone, Debug)]
pub struct GlobalModel {
    pub covering: Covering,
    pub infinity_degrees: Option<Vec<i64>>,
    pub g_x: i64,
}

impl GlobalModel {
    pub fn new(covering: impl Into<Covering>) -> Self {
        GlobalModel {
            covering: covering.into(),
            infinity_degrees: None,
            g_x: 0,
        }
    }

    fn options(&self) -> RamOptions {
        RamOptions {
            include_infinity: true,
            infinity_degrees: self.infinity_degrees.clone(),
            policy: NormalityPolicy::Verify,
        }
    }
}

impl From<CoveringFile> for GlobalModel {
    fn from(f: CoveringFile) -> Self {
        GlobalModel {
            covering: f.covering,
            infinity_degrees: f.infinity_degrees,
            g_x: f.g_x,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ChartData {
    pub degrees: Vec<i64>,
    pub canonical: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct GenusReport {
    pub group_order: usize,
    pub g_x: i64,
    pub deg_r: i64,
    pub two_g_y_minus_2: i64,
    pub g_y: Option<i64>,
    pub non_integer: bool,
    pub divisor: Divisor,
    pub places: Vec<RamReport>,
    pub gorenstein: Vec<GorensteinVerdict>,
    pub infinity_chart: ChartData,
    pub notes: Vec<String>,
}

/// `R_G` and its degree, infinity included.
pub fn total_ram_degree(gm: &GlobalModel) -> Result<RamificationResult> {
    ramification_divisor(&gm.covering, &gm.options())
}

fn reversed_place(pi: &Poly) -> Result<Place> {
    Place::finite(pi.reverse(pi.deg()).monic())
}

/// Stabilizers on both charts agree at places away from `0` and `∞`: the
/// charts differ by powers of `u`, which are units there.
fn chart_overlap_failures(gm: &GlobalModel, places: &[Place]) -> Result<Vec<String>> {
    let c = gm.covering.cocycle()?;
    let (chart, _, _) = infinity_chart(&gm.covering, gm.infinity_degrees.as_deref())?;
    let p = c.p();
    let mut sample: Vec<Poly> = places.iter().filter_map(|v| v.poly().cloned()).collect();
    sample.extend((1..p.min(4)).map(|a| Poly::new(p, vec![a, 1])));
    let mut out = Vec::new();
    for pi in sample {
        if pi.coeff(0) == 0 {
            continue;
        }
        let affine = stabilizer_subgroup_at(&c, &Place::finite(pi.clone())?)?;
        let other = stabilizer_subgroup_at(&chart, &reversed_place(&pi)?)?;
        if affine != other {
            out.push(format!("chart overlap: stabilizers differ at {pi}"));
        }
    }
    Ok(out)
}

fn gorenstein_verdicts(gm: &GlobalModel, places: &[Place]) -> Result<Vec<GorensteinVerdict>> {
    let x = Place::Finite(Poly::x(gm.covering.group().p()));
    let mut out = Vec::new();
    for v in places {
        let model = local_model_at(&gm.covering, v, gm.infinity_degrees.as_deref())?;
        let c = model.cocycle().ok_or_else(|| Error::Internal("local model without a table".into()))?;
        let mut verdict = gorenstein_at(c, if v.is_infinity() { &x } else { v });
        verdict.place = v.clone();
        out.push(verdict);
    }
    Ok(out)
}

/// Solves for `g_Y` after checking the hypotheses: cyclic group, valid
/// cocycle, integral `Y`, normal models at every candidate place including
/// infinity, Gorenstein everywhere and consistent charts.
pub fn predict_genus(gm: &GlobalModel) -> Result<GenusReport> {
    let g = gm.covering.group().clone();
    if !g.is_cyclic() {
        return Err(Error::HypothesisFailure(vec![format!(
            "normality: models for the non-cyclic group {g} are not certified"
        )]));
    }
    let c = gm.covering.cocycle()?;
    let mut failures = Vec::new();
    if let Err(e) = c.validate().into_result() {
        failures.push(format!("validation: {e}"));
    }
    let f = c.kummer_function()?;
    if g.order() > 1 && f.derivative().is_zero() {
        failures.push(format!("Y is not integral: {f} is a p-th power"));
    }
    if !failures.is_empty() {
        return Err(Error::HypothesisFailure(failures));
    }
    let ram = match total_ram_degree(gm) {
        Ok(r) => r,
        Err(e) if e.is_model_rejection() => return Err(Error::HypothesisFailure(vec![e.to_string()])),
        Err(e) => return Err(e),
    };
    let places: Vec<Place> = ram.reports.iter().map(|r| r.place.clone()).collect();
    let gorenstein = gorenstein_verdicts(gm, &places)?;
    for v in gorenstein.iter().filter(|v| !v.gorenstein) {
        failures.push(format!("not Gorenstein at {}", v.place));
    }
    failures.extend(chart_overlap_failures(gm, &places)?);
    if !failures.is_empty() {
        return Err(Error::HypothesisFailure(failures));
    }
    let q = g.order() as i64;
    let rhs = q * (2 * gm.g_x - 2) + ram.degree;
    let g_y = (rhs % 2 == 0).then_some(rhs / 2 + 1);
    if let Some(gy) = g_y.filter(|&gy| gy < 0) {
        return Err(Error::Internal(format!("negative genus {gy} for an accepted model")));
    }
    let (_, degrees, canonical) = infinity_chart(&gm.covering, gm.infinity_degrees.as_deref())?;
    Ok(GenusReport {
        group_order: g.order(),
        g_x: gm.g_x,
        deg_r: ram.degree,
        two_g_y_minus_2: rhs,
        non_integer: g_y.is_none(),
        g_y,
        divisor: ram.divisor,
        places: ram.reports,
        gorenstein,
        infinity_chart: ChartData { degrees, canonical },
        notes: vec![BASE_FIELD_NOTE.into()],
    })
}
