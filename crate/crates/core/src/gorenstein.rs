//! Gorenstein locus of a covering, the dual generator `e_l^*`, and the
//! determinant of the trace-form matrix `M(φ) = (α(i,j) φ_{i+j})`.
//!
//! For cyclic `M` of order `q = p^n`,
//! `det M(φ) = ε Σ_l c_l φ_l^q` with `c_l = ∏_{i+j=l} α(i,j)` over ordered
//! pairs. The sign `ε` is derived by comparing against exact determinants
//! rather than taken from a closed form, since `(q-1)/2` is not an integer
//! for `p = 2` (where the sign is irrelevant anyway).

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use rand::Rng;
use serde::Serialize;

use crate::arith::linalg::det_bareiss;
use crate::arith::{Place, Poly};
use crate::covering::{cocycle_from_column, kummer_cocycle, twist, Cocycle, Covering};
use crate::error::{Error, Result};
use crate::gen;
use crate::pgroup::{GElt, PGroup};
use crate::ramification::{infinity_chart, LocalModel, Normality};

/// Largest group order for which determinants are expanded.
pub const DET_SIZE_LIMIT: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GorensteinVerdict {
    pub place: Place,
    pub gorenstein: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<GElt>,
}

/// `c_l = ∏_{i+j=l} α(i,j)` over ordered pairs, indexed by `l`.
pub fn diagonal_products(c: &Cocycle) -> Vec<Poly> {
    let g = c.group();
    let n = g.order();
    let mut out = vec![Poly::one(g.p()); n];
    for i in 0..n {
        for j in 0..n {
            let l = g.add_idx(i, j);
            out[l] = &out[l] * c.at(i, j);
        }
    }
    out
}

fn witness_index(c: &Cocycle, v: &Place) -> Option<usize> {
    let g = c.group();
    let n = g.order();
    (0..n).find(|&l| (0..n).all(|i| v.is_unit_at(c.at(i, g.add_idx(l, g.neg_idx(i))))))
}

/// Gorenstein at `v` iff some `l` has every `α(i, l-i)` a unit there; the
/// witness is the first such `l` in element order.
pub fn gorenstein_at(c: &Cocycle, v: &Place) -> GorensteinVerdict {
    let w = witness_index(c, v);
    GorensteinVerdict {
        place: v.clone(),
        gorenstein: w.is_some(),
        witness: w.map(|l| c.group().element(l)),
    }
}

fn indicator(p: u32, order: usize, l: usize) -> Vec<Poly> {
    (0..order).map(|m| if m == l { Poly::one(p) } else { Poly::zero(p) }).collect()
}

/// The index `l` with `e_l^*` generating the dual, after checking that
/// `M(e_l^*)` is monomial with unit determinant at `v`.
pub fn dual_generator(c: &Cocycle, v: &Place) -> Result<usize> {
    let l = witness_index(c, v).ok_or_else(|| Error::NotGorensteinHere(v.to_string()))?;
    let g = c.group();
    let n = g.order();
    let det = if n <= DET_SIZE_LIMIT {
        det_m_phi_bruteforce(c, &indicator(g.p(), n, l))?
    } else {
        diagonal_products(c).swap_remove(l)
    };
    if det.is_zero() || !v.is_unit_at(&det) {
        return Err(Error::Internal(format!("M(e_{l}^*) has determinant {det}, not a unit at {v}")));
    }
    Ok(l)
}

fn check_phi(c: &Cocycle, phi: &[Poly]) -> Result<()> {
    if phi.len() != c.group().order() {
        return Err(Error::InvalidInput(format!(
            "φ has {} values, group has {} elements",
            phi.len(),
            c.group().order()
        )));
    }
    match phi.iter().find(|f| f.p() != c.p()) {
        Some(f) => Err(Error::CharacteristicMismatch(c.p(), f.p())),
        None => Ok(()),
    }
}

/// Exact `det (α(i,j) φ_{i+j})` by fraction-free elimination.
pub fn det_m_phi_bruteforce(c: &Cocycle, phi: &[Poly]) -> Result<Poly> {
    let g = c.group();
    let n = g.order();
    if n > DET_SIZE_LIMIT {
        return Err(Error::SizeLimit(n, DET_SIZE_LIMIT));
    }
    check_phi(c, phi)?;
    let m = (0..n)
        .map(|i| (0..n).map(|j| c.at(i, j) * &phi[g.add_idx(i, j)]).collect())
        .collect();
    Ok(det_bareiss(m, g.p()))
}

fn unsigned_formula(c: &Cocycle, phi: &[Poly]) -> Poly {
    let q = c.group().order() as u64;
    diagonal_products(c)
        .iter()
        .zip(phi)
        .fold(Poly::zero(c.p()), |acc, (cl, fl)| &acc + &(cl * &fl.pow(q)))
}

/// `ε Σ_l c_l φ_l^{p^n}` for cyclic groups.
pub fn det_m_phi_formula(c: &Cocycle, phi: &[Poly]) -> Result<Poly> {
    let g = c.group();
    let n = g
        .cyclic_exponent()
        .ok_or_else(|| Error::UnsupportedGroup(format!("{g} is not cyclic")))?;
    check_phi(c, phi)?;
    let s = unsigned_formula(c, phi);
    Ok(if derive_sign(g.p(), n)? < 0 { -&s } else { s })
}

fn sign_cache() -> &'static Mutex<HashMap<(u32, u32), i8>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), i8>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn sign_samples(p: u32, n: u32) -> Result<Vec<(Cocycle, Vec<Poly>)>> {
    let g = PGroup::cyclic(p, n)?;
    let q = g.order();
    let mut cocycles = vec![Cocycle::trivial(&g), kummer_cocycle(&g, &[Poly::x(p)])?];
    let mut rng = gen::rng(0x5167 + 31 * p as u64 + n as u64);
    if q > 1 {
        cocycles.push(gen::cyclic_cocycle(&mut rng, p, n)?);
    }
    let mut out = Vec::new();
    for c in cocycles {
        for l in 0..q {
            out.push((c.clone(), indicator(p, q, l)));
        }
        for _ in 0..3 {
            let max_deg = rng.gen_range(0..=2);
            out.push((c.clone(), gen::phi(&mut rng, p, q, max_deg)));
        }
    }
    Ok(out)
}

/// The sign `ε` for `μ_{p^n}`: the unique choice agreeing with the exact
/// determinant on a fixed sample of cocycles and coefficient vectors,
/// including every indicator. `+1` when both signs agree (`p = 2`).
pub fn derive_sign(p: u32, n: u32) -> Result<i8> {
    if let Some(&s) = sign_cache().lock().expect("sign cache").get(&(p, n)) {
        return Ok(s);
    }
    let q = PGroup::cyclic(p, n)?.order();
    if q > DET_SIZE_LIMIT {
        return Err(Error::SizeLimit(q, DET_SIZE_LIMIT));
    }
    let (mut plus, mut minus) = (true, true);
    for (c, phi) in sign_samples(p, n)? {
        let exact = det_m_phi_bruteforce(&c, &phi)?;
        let s = unsigned_formula(&c, &phi);
        plus &= exact == s;
        minus &= exact == -&s;
    }
    let sign = match (plus, minus) {
        (true, _) => 1,
        (false, true) => -1,
        (false, false) => return Err(Error::NoConsistentSign { p, n }),
    };
    sign_cache().lock().expect("sign cache").insert((p, n), sign);
    Ok(sign)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignEntry {
    pub p: u32,
    pub n: u32,
    pub sign: i8,
}

/// Every sign derived so far in this process.
pub fn sign_table() -> Vec<SignEntry> {
    let mut t: Vec<SignEntry> = sign_cache()
        .lock()
        .expect("sign cache")
        .iter()
        .map(|(&(p, n), &sign)| SignEntry { p, n, sign })
        .collect();
    t.sort_by_key(|e| (e.p, e.n));
    t
}

#[derive(Clone, Debug, Serialize)]
pub struct GorensteinReport {
    pub verdicts: Vec<GorensteinVerdict>,
    pub non_gorenstein: Vec<Place>,
    pub signs: Vec<SignEntry>,
}

/// Verdicts at every place where some entry of the cocycle is not a unit,
/// and at infinity when requested. Elsewhere every entry is a unit and the
/// witness is `0`.
pub fn gorenstein_report(cov: &Covering, include_infinity: bool, infinity_degrees: Option<&[i64]>) -> Result<GorensteinReport> {
    let c = cov.cocycle()?;
    let mut verdicts: Vec<GorensteinVerdict> = c
        .support_polys()?
        .into_iter()
        .map(|pi| Ok(gorenstein_at(&c, &Place::finite(pi)?)))
        .collect::<Result<_>>()?;
    if include_infinity {
        let (chart, _, _) = infinity_chart(cov, infinity_degrees)?;
        let mut v = gorenstein_at(&chart, &Place::rational(c.p(), 0));
        v.place = Place::Infinity;
        verdicts.push(v);
    }
    let g = c.group();
    if let Some(n) = g.cyclic_exponent() {
        if g.order() <= DET_SIZE_LIMIT {
            derive_sign(g.p(), n)?;
        }
    }
    Ok(GorensteinReport {
        non_gorenstein: verdicts.iter().filter(|v| !v.gorenstein).map(|v| v.place.clone()).collect(),
        verdicts,
        signs: sign_table(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchHit {
    pub group: PGroup,
    pub entries: Vec<Vec<Poly>>,
    pub place: Place,
    pub normality: Normality,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchReport {
    pub seed: u64,
    pub tried: usize,
    pub integral: usize,
    pub hits: Vec<SearchHit>,
}

fn random_candidate<R: Rng>(rng: &mut R, g: &PGroup) -> Option<Cocycle> {
    let p = g.p();
    if g.is_cyclic() {
        return cocycle_from_column(g, &gen::free_column(rng, p, g.order(), 2)).ok();
    }
    let f: Vec<Poly> = (0..g.rank()).map(|_| gen::monic_up_to(rng, p, 1, 2)).collect();
    let b = (0..g.order())
        .map(|m| {
            let t = gen::monic_up_to(rng, p, 0, 1);
            if m == 0 {
                crate::arith::RatFun::one(p)
            } else if rng.gen_bool(0.5) {
                t.into()
            } else {
                crate::arith::RatFun::from(t).inv().expect("monic is nonzero")
            }
        })
        .collect::<Vec<_>>();
    twist(&kummer_cocycle(g, &f).ok()?, &b).ok()
}

/// Looks for integral cocycles with a non-Gorenstein place among random
/// columns (cyclic) or randomly twisted Kummer products, recording the
/// normality verdict of each hit.
pub fn gorenstein_search(group: &PGroup, seed: u64, count: usize) -> Result<SearchReport> {
    let mut rng = gen::rng(seed);
    let mut report = SearchReport { seed, tried: 0, integral: 0, hits: Vec::new() };
    for _ in 0..count {
        report.tried += 1;
        let Some(c) = random_candidate(&mut rng, group) else { continue };
        report.integral += 1;
        for pi in c.support_polys()? {
            let v = Place::finite(pi)?;
            if gorenstein_at(&c, &v).gorenstein {
                continue;
            }
            let normality = if group.is_cyclic() {
                match LocalModel::from_cyclic_cocycle(&c, &v) {
                    Ok(m) => m.normality().clone(),
                    Err(e) => Normality::Rejected(e.to_string()),
                }
            } else {
                Normality::Rejected("normality is not certified for non-cyclic groups".into())
            };
            let n = group.order();
            report.hits.push(SearchHit {
                group: group.clone(),
                entries: (0..n).map(|i| (0..n).map(|j| c.at(i, j).clone()).collect()).collect(),
                place: v,
                normality,
            });
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::RatFun;

    fn poly(p: u32, c: &[u32]) -> Poly {
        Poly::new(p, c.to_vec())
    }

    #[test]
    fn verdicts() {
        let g = PGroup::cyclic(3, 1).unwrap();
        let x = Place::rational(3, 0);
        let t = gorenstein_at(&Cocycle::trivial(&g), &x);
        assert_eq!(t.witness, Some(g.element(0)));
        let k = kummer_cocycle(&g, &[Poly::x(3)]).unwrap();
        assert_eq!(gorenstein_at(&k, &x).witness, Some(g.element(2)));
        assert_eq!(dual_generator(&k, &x).unwrap(), 2);
        let g4 = PGroup::cyclic(2, 2).unwrap();
        let k4 = kummer_cocycle(&g4, &[Poly::x(2)]).unwrap();
        assert_eq!(dual_generator(&k4, &Place::rational(2, 0)).unwrap(), 3);
        assert_eq!(dual_generator(&Cocycle::trivial(&g4), &Place::rational(2, 0)).unwrap(), 0);
    }

    #[test]
    fn twisted_product() {
        let g = PGroup::new(2, vec![1, 1]).unwrap();
        let c = kummer_cocycle(&g, &[Poly::x(2), Poly::x(2)]).unwrap();
        let mut b = vec![RatFun::one(2); 4];
        b[g.index(&GElt(vec![1, 0])).unwrap()] = Poly::x(2).into();
        let t = twist(&c, &b).unwrap();
        assert_eq!(gorenstein_at(&t, &Place::rational(2, 0)).witness, Some(GElt(vec![1, 0])));
    }

    #[test]
    fn small_determinants() {
        let g = PGroup::cyclic(2, 1).unwrap();
        let f = poly(2, &[1, 1, 1]);
        let c = kummer_cocycle(&g, std::slice::from_ref(&f)).unwrap();
        let phi = vec![poly(2, &[0, 1]), poly(2, &[1, 1])];
        let expected = &(&f * &phi[0].pow(2)) + &phi[1].pow(2);
        assert_eq!(det_m_phi_bruteforce(&c, &phi).unwrap(), expected);
        assert_eq!(det_m_phi_formula(&c, &phi).unwrap(), expected);

        // p = 3, f = x, φ = e_0^*: the matrix has 1 at (0,0) and x at (1,2), (2,1)
        let g = PGroup::cyclic(3, 1).unwrap();
        let c = kummer_cocycle(&g, &[Poly::x(3)]).unwrap();
        let phi = indicator(3, 3, 0);
        let minus_x2 = poly(3, &[0, 0, 2]);
        assert_eq!(det_m_phi_bruteforce(&c, &phi).unwrap(), minus_x2);
        assert_eq!(det_m_phi_formula(&c, &phi).unwrap(), minus_x2);
    }

    #[test]
    fn signs() {
        assert_eq!(derive_sign(2, 1).unwrap(), 1);
        assert_eq!(derive_sign(3, 1).unwrap(), -1);
        assert_eq!(derive_sign(5, 1).unwrap(), 1);
        assert!(sign_table().iter().any(|e| (e.p, e.n, e.sign) == (3, 1, -1)));
        assert_eq!(derive_sign(17, 1), Err(Error::SizeLimit(17, 16)));
    }

    #[test]
    fn non_cyclic_formula_is_unsupported() {
        let g = PGroup::new(2, vec![1, 1]).unwrap();
        let phi = vec![Poly::one(2); 4];
        assert!(matches!(
            det_m_phi_formula(&Cocycle::trivial(&g), &phi),
            Err(Error::UnsupportedGroup(_))
        ));
        assert_eq!(det_m_phi_bruteforce(&Cocycle::trivial(&g), &phi).unwrap(), Poly::zero(2));
    }

    #[test]
    fn search_runs() {
        let r = gorenstein_search(&PGroup::cyclic(3, 1).unwrap(), 3, 40).unwrap();
        assert_eq!(r.tried, 40);
        for h in &r.hits {
            assert!(!gorenstein_at(&cocycle_from_column(&h.group, &[h.entries[1][1].clone(), h.entries[2][1].clone()]).unwrap(), &h.place).gorenstein);
        }
    }
}
