//! Cyclic structure theory: reconstruction of a cocycle from its column
//! `α(·,1)`, the inverse decomposition into a coboundary and a Kummer part,
//! and transport to the chart at infinity.

use super::cocycle::Cocycle;
use crate::arith::{Poly, RatFun};
use crate::error::{Error, Result};
use crate::pgroup::PGroup;

/// Coboundary `β` and Kummer function `f` with
/// `α(i,j) = β_{i+j} β_i^{-1} β_j^{-1} f^{σ(i,j)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicDecomposition {
    pub beta: Vec<Poly>,
    pub f: Poly,
}

fn beta_from_column(p: u32, column: &[Poly]) -> Vec<Poly> {
    // β_0 = β_1 = 1, β_{k+1} = β_k α(k,1)
    let n = column.len() + 1;
    let mut beta = vec![Poly::one(p); n];
    for k in 1..n - 1 {
        beta[k + 1] = &beta[k] * &column[k - 1];
    }
    beta
}

/// Rebuilds the full cocycle on `Z/p^n` from `(α(1,1), ..., α(p^n-1,1))`.
pub fn cocycle_from_column(group: &PGroup, column: &[Poly]) -> Result<Cocycle> {
    if !group.is_cyclic() || group.order() < 2 {
        return Err(Error::UnsupportedGroup(format!("{group} is not cyclic of order >= 2")));
    }
    let n = group.order();
    if column.len() != n - 1 {
        return Err(Error::InvalidInput(format!(
            "column must have {} entries, got {}",
            n - 1,
            column.len()
        )));
    }
    let p = group.p();
    for (k, a) in column.iter().enumerate() {
        if a.p() != p {
            return Err(Error::CharacteristicMismatch(p, a.p()));
        }
        if a.is_zero() {
            return Err(Error::ZeroEntry {
                m: (k + 1).to_string(),
                n: "1".into(),
            });
        }
    }
    let beta = beta_from_column(p, column);
    let f: Poly = column.iter().cloned().product();
    Cocycle::from_fn(group, |i, j| {
        let k = (i + j) % n;
        let num = if i + j >= n { &beta[k] * &f } else { beta[k].clone() };
        let den = &beta[i] * &beta[j];
        num.exact_div(&den).ok_or_else(|| Error::NonIntegralCocycle {
            m: i.to_string(),
            n: j.to_string(),
            value: RatFun::new(num.clone(), den.clone())
                .map(|r| r.to_string())
                .unwrap_or_default(),
        })
    })
}

/// Splits a cyclic cocycle into coboundary and Kummer part.
pub fn forward_decompose(c: &Cocycle) -> Result<CyclicDecomposition> {
    let g = c.group();
    if !g.is_cyclic() {
        return Err(Error::UnsupportedDecomposition(format!(
            "{g} is not cyclic; supply Kummer data per factor instead"
        )));
    }
    let p = g.p();
    let n = g.order();
    if n == 1 {
        return Ok(CyclicDecomposition {
            beta: vec![Poly::one(p)],
            f: Poly::one(p),
        });
    }
    let column: Vec<Poly> = (1..n).map(|k| c.at(k, 1).clone()).collect();
    Ok(CyclicDecomposition {
        beta: beta_from_column(p, &column),
        f: c.kummer_function()?,
    })
}

/// Canonical infinity degrees for a cyclic cocycle,
/// `d(m) = ceil(s(m) deg f / p^n) - deg β_m`.
pub fn canonical_infinity_degrees_cyclic(c: &Cocycle) -> Result<Vec<i64>> {
    let dec = forward_decompose(c)?;
    let n = c.group().order() as i64;
    let df = dec.f.deg() as i64;
    Ok(dec
        .beta
        .iter()
        .enumerate()
        .map(|(m, b)| (m as u64 * df as u64).div_ceil(n as u64) as i64 - b.deg() as i64)
        .collect())
}

/// Substitutes `x = 1/u` and twists by `u^{d(m)}`:
/// `α'(m,n) = α(1/u) u^{d(m)+d(n)-d(m+n)}`, which must be a polynomial in `u`.
pub fn chart_at_infinity(c: &Cocycle, d: &[i64]) -> Result<Cocycle> {
    let g = c.group();
    if d.len() != g.order() {
        return Err(Error::InvalidInput(format!(
            "{} infinity degrees given for a group of order {}",
            d.len(),
            g.order()
        )));
    }
    if d[0] != 0 {
        return Err(Error::InvalidInput("infinity degree of 0 must be 0".into()));
    }
    Cocycle::from_fn(g, |i, j| {
        let a = c.at(i, j);
        let shift = d[i] + d[j] - d[g.add_idx(i, j)] - a.deg() as i64;
        let rev = a.reverse(a.deg());
        if shift < 0 {
            return Err(Error::NonIntegralCocycle {
                m: g.element(i).to_string(),
                n: g.element(j).to_string(),
                value: format!("({rev})/u^{}", -shift),
            });
        }
        Ok(rev.shift(shift as usize))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covering::kummer_cocycle;

    fn poly(p: u32, c: &[u32]) -> Poly {
        Poly::new(p, c.to_vec())
    }

    #[test]
    fn ones_column() {
        let g = PGroup::cyclic(2, 2).unwrap();
        let c = cocycle_from_column(&g, &vec![Poly::one(2); 3]).unwrap();
        assert_eq!(c, Cocycle::trivial(&g));
        let dec = forward_decompose(&c).unwrap();
        assert!(dec.f.is_one() && dec.beta.iter().all(Poly::is_one));
    }

    #[test]
    fn column_one_f() {
        let g = PGroup::cyclic(3, 1).unwrap();
        let f = poly(3, &[1, 1, 1, 1]);
        let c = cocycle_from_column(&g, &[Poly::one(3), f.clone()]).unwrap();
        assert!(c.at(1, 1).is_one());
        assert_eq!(c.at(1, 2), &f);
        assert_eq!(c.at(2, 2), &f);
        assert!(c.validate().passed());
    }

    #[test]
    fn column_f_one_is_not_integral() {
        let g = PGroup::cyclic(3, 1).unwrap();
        let r = cocycle_from_column(&g, &[Poly::x(3), Poly::one(3)]);
        assert!(matches!(r, Err(Error::NonIntegralCocycle { .. })));
    }

    #[test]
    fn kummer_decomposes_with_trivial_beta() {
        let g = PGroup::cyclic(3, 1).unwrap();
        let f = poly(3, &[2, 0, 1, 1]);
        let c = kummer_cocycle(&g, std::slice::from_ref(&f)).unwrap();
        let dec = forward_decompose(&c).unwrap();
        assert_eq!(dec.f, f);
        assert!(dec.beta.iter().all(Poly::is_one));
        let p2 = kummer_cocycle(&PGroup::cyclic(2, 1).unwrap(), &[poly(2, &[1, 1, 1])]).unwrap();
        assert_eq!(forward_decompose(&p2).unwrap().f, poly(2, &[1, 1, 1]));
    }

    #[test]
    fn non_cyclic_decomposition_is_unsupported() {
        let g = PGroup::new(2, vec![1, 1]).unwrap();
        assert!(matches!(
            forward_decompose(&Cocycle::trivial(&g)),
            Err(Error::UnsupportedDecomposition(_))
        ));
    }

    #[test]
    fn infinity_charts() {
        let g = PGroup::cyclic(2, 1).unwrap();
        let c = kummer_cocycle(&g, &[Poly::x(2)]).unwrap();
        assert_eq!(chart_at_infinity(&c, &[0, 1]).unwrap().at(1, 1), &Poly::x(2));
        let c = kummer_cocycle(&g, &[poly(2, &[0, 0, 0, 1])]).unwrap();
        assert_eq!(chart_at_infinity(&c, &[0, 2]).unwrap().at(1, 1), &Poly::x(2));
        assert!(matches!(chart_at_infinity(&c, &[0, 1]), Err(Error::NonIntegralCocycle { .. })));
        let t = Cocycle::trivial(&PGroup::cyclic(3, 1).unwrap());
        assert_eq!(chart_at_infinity(&t, &[0, 0, 0]).unwrap(), t);
    }
}
