use super::cocycle::Cocycle;
use crate::arith::{Poly, RatFun};
use crate::error::{Error, Result};
use crate::pgroup::PGroup;

/// Kummer normal form: one function `f_i` per invariant factor and an optional
/// twist `b`, giving `α(m,n) = ∏_i f_i^{σ_i(m,n)} · b(m)b(n)/b(m+n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KummerData {
    group: PGroup,
    f: Vec<Poly>,
    twist: Option<Vec<RatFun>>,
}

impl KummerData {
    /// Non-constant `f_i` must not be p-th powers. Constants are accepted and
    /// describe a factor that is split over every place.
    pub fn new(group: &PGroup, f: Vec<Poly>, twist: Option<Vec<RatFun>>) -> Result<Self> {
        if f.len() != group.rank() {
            return Err(Error::InvalidInput(format!(
                "expected {} Kummer functions for {group}, got {}",
                group.rank(),
                f.len()
            )));
        }
        for fi in &f {
            if fi.p() != group.p() {
                return Err(Error::CharacteristicMismatch(group.p(), fi.p()));
            }
            if fi.is_zero() {
                return Err(Error::ZeroPolynomial);
            }
            if !fi.is_constant() && fi.is_pth_power() {
                return Err(Error::NonIntegralModel(fi.to_string()));
            }
        }
        if let Some(b) = &twist {
            check_twist(group, b)?;
        }
        let kd = KummerData {
            group: group.clone(),
            f,
            twist,
        };
        if kd.twist.is_some() {
            kd.to_cocycle()?;
        }
        Ok(kd)
    }

    pub fn cyclic(p: u32, n: u32, f: Poly) -> Result<Self> {
        Self::new(&PGroup::cyclic(p, n)?, vec![f], None)
    }

    pub fn group(&self) -> &PGroup {
        &self.group
    }

    pub fn functions(&self) -> &[Poly] {
        &self.f
    }

    pub fn twist(&self) -> Option<&[RatFun]> {
        self.twist.as_deref()
    }

    pub fn is_untwisted(&self) -> bool {
        self.twist.as_ref().is_none_or(|b| b.iter().all(RatFun::is_one))
    }

    pub fn to_cocycle(&self) -> Result<Cocycle> {
        let c = kummer_cocycle(&self.group, &self.f)?;
        match &self.twist {
            Some(b) => twist(&c, b),
            None => Ok(c),
        }
    }

    /// Canonical infinity-chart degrees
    /// `d(m) = Σ_i ceil(s(m_i) deg f_i / p^{n_i}) + deg num b(m) - deg den b(m)`.
    pub fn canonical_infinity_degrees(&self) -> Vec<i64> {
        let g = &self.group;
        (0..g.order())
            .map(|m| {
                let e = g.element(m);
                let mut d: i64 = e
                    .0
                    .iter()
                    .zip(g.moduli())
                    .zip(&self.f)
                    .map(|((&s, &q), f)| (s as u64 * f.deg() as u64).div_ceil(q as u64) as i64)
                    .sum();
                if let Some(b) = &self.twist {
                    d += b[m].num().deg() as i64 - b[m].den().deg() as i64;
                }
                d
            })
            .collect()
    }
}

fn check_twist(group: &PGroup, b: &[RatFun]) -> Result<()> {
    if b.len() != group.order() {
        return Err(Error::InvalidInput(format!(
            "twist has {} values, group has {} elements",
            b.len(),
            group.order()
        )));
    }
    if let Some(x) = b.iter().find(|x| x.p() != group.p()) {
        return Err(Error::CharacteristicMismatch(group.p(), x.p()));
    }
    if !b[0].is_one() {
        return Err(Error::InvalidInput("twist must satisfy b(0) = 1".into()));
    }
    if b.iter().any(RatFun::is_zero) {
        return Err(Error::ZeroElement);
    }
    Ok(())
}

/// `α(m,n) = ∏_i f_i^{σ_i(m,n)}`.
pub fn kummer_cocycle(group: &PGroup, f: &[Poly]) -> Result<Cocycle> {
    if f.len() != group.rank() {
        return Err(Error::InvalidInput(format!(
            "expected {} Kummer functions, got {}",
            group.rank(),
            f.len()
        )));
    }
    if let Some(fi) = f.iter().find(|fi| fi.p() != group.p()) {
        return Err(Error::CharacteristicMismatch(group.p(), fi.p()));
    }
    let one = Poly::one(group.p());
    Cocycle::from_fn(group, |i, j| {
        Ok(group
            .sigma_idx(i, j)
            .iter()
            .zip(f)
            .filter(|(&s, _)| s == 1)
            .fold(one.clone(), |acc, (_, fi)| &acc * fi))
    })
}

/// Change of basis `e_m -> b(m) e_m`: `α'(m,n) = α(m,n) b(m) b(n) / b(m+n)`.
pub fn twist(c: &Cocycle, b: &[RatFun]) -> Result<Cocycle> {
    let g = c.group();
    check_twist(g, b)?;
    Cocycle::from_fn(g, |i, j| {
        let k = g.add_idx(i, j);
        let v = b[i].mul(&b[j]).div(&b[k])?.mul_poly(c.at(i, j));
        v.to_poly().ok_or_else(|| Error::NonIntegralCocycle {
            m: g.element(i).to_string(),
            n: g.element(j).to_string(),
            value: v.to_string(),
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(p: u32, c: &[u32]) -> Poly {
        Poly::new(p, c.to_vec())
    }

    #[test]
    fn kummer_cocycles_validate() {
        let g = PGroup::new(2, vec![1, 2]).unwrap();
        let c = kummer_cocycle(&g, &[poly(2, &[0, 1, 1]), poly(2, &[1, 0, 1, 1])]).unwrap();
        assert!(c.validate().passed());
        let g = PGroup::cyclic(3, 2).unwrap();
        let c = kummer_cocycle(&g, &[poly(3, &[2, 1, 0, 1])]).unwrap();
        assert!(c.validate().passed());
    }

    #[test]
    fn trivial_twist_is_identity() {
        let g = PGroup::cyclic(3, 1).unwrap();
        let c = kummer_cocycle(&g, &[Poly::x(3)]).unwrap();
        assert_eq!(twist(&c, &vec![RatFun::one(3); 3]).unwrap(), c);
    }

    #[test]
    fn square_cocycle_trivializes() {
        let g = PGroup::cyclic(2, 1).unwrap();
        let c = kummer_cocycle(&g, &[poly(2, &[0, 0, 1])]).unwrap();
        let inv_x = RatFun::new(Poly::one(2), Poly::x(2)).unwrap();
        let t = twist(&c, &[RatFun::one(2), inv_x.clone()]).unwrap();
        assert_eq!(t, Cocycle::trivial(&g));

        let c = kummer_cocycle(&g, &[Poly::x(2)]).unwrap();
        assert!(matches!(
            twist(&c, &[RatFun::one(2), inv_x]),
            Err(Error::NonIntegralCocycle { .. })
        ));
    }

    #[test]
    fn rejects_pth_power_functions() {
        assert!(matches!(
            KummerData::cyclic(2, 1, poly(2, &[1, 0, 1])),
            Err(Error::NonIntegralModel(_))
        ));
        assert!(KummerData::cyclic(2, 1, Poly::one(2)).is_ok());
    }

    #[test]
    fn canonical_degrees() {
        let kd = KummerData::cyclic(2, 2, Poly::x(2)).unwrap();
        assert_eq!(kd.canonical_infinity_degrees(), vec![0, 1, 1, 1]);
        let kd = KummerData::cyclic(3, 1, poly(3, &[0, 1, 0, 0, 1])).unwrap();
        assert_eq!(kd.canonical_infinity_degrees(), vec![0, 2, 3]);
    }
}
