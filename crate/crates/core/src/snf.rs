//! Length of the augmentation-ideal cokernel by elimination over the local
//! ring, an independent route to the multiplicity `|M/N_y| - 1`.
//!
//! # Presentation
//!
//! The stabilizer algebra is `A[M] / (e_m (X^m - 1))`. Its ideal is spanned
//! over `A` by `e_k X^l (X^k - 1) = e_k (w_{k+l} - w_l)` with `w_m = X^m - 1`
//! and `w_0 = 0`. Since `A[M] = A·1 ⊕ ⊕_{m≠0} A w_m`, the augmentation ideal
//! modulo that ideal is the cokernel of the matrix with rows `m ≠ 0` and a
//! column `(k, l)` for every pair, holding `+e_k` in row `k+l` and `-e_k` in
//! row `l` (rows indexed by 0 are dropped).
//!
//! # Valuations
//!
//! With `v_A(π) = p^n`, a sum `Σ a_m e_m` has valuation
//! `min_m (p^n v_π(a_m) + v_A(e_m))` whenever the `v_A(e_m)` are distinct
//! modulo `p^n`. At places with `v_π(f) ≡ 0 mod p^n` all basis elements are
//! units; there the element is expanded in powers of the uniformizer
//! `τ = z' - r` instead, where `z' = z / π^{v/p^n}` and `r^{p^n} ≡ u mod π`.

use std::collections::BTreeMap;

use crate::arith::{algebra_inverse, AlgebraElt, Place, Poly, RatFun};
use crate::covering::Cocycle;
use crate::error::{Error, Result};
use crate::pgroup::{GElt, PGroup};
use crate::ramification::{LocalModel, Normality};

#[derive(Clone, Debug)]
pub struct PresentationMatrix {
    group: PGroup,
    rows: Vec<GElt>,
    cols: Vec<(GElt, GElt)>,
    entries: Vec<Vec<AlgebraElt>>,
}

impl PresentationMatrix {
    /// A matrix with arbitrary labels, for direct use of [`snf_length`].
    pub fn from_entries(group: &PGroup, entries: Vec<Vec<AlgebraElt>>) -> Result<Self> {
        let width = entries.first().map_or(0, Vec::len);
        if entries.iter().any(|r| r.len() != width) {
            return Err(Error::InvalidInput("ragged presentation matrix".into()));
        }
        if entries.iter().flatten().any(|a| a.group() != group) {
            return Err(Error::GroupMismatch);
        }
        Ok(PresentationMatrix {
            group: group.clone(),
            rows: (0..entries.len()).map(|i| GElt(vec![i as u32])).collect(),
            cols: (0..width).map(|j| (GElt(vec![j as u32]), GElt(vec![]))).collect(),
            entries,
        })
    }

    pub fn group(&self) -> &PGroup {
        &self.group
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.entries.len(), self.cols.len())
    }

    pub fn row_labels(&self) -> &[GElt] {
        &self.rows
    }

    pub fn col_labels(&self) -> &[(GElt, GElt)] {
        &self.cols
    }

    pub fn entry(&self, r: usize, c: usize) -> &AlgebraElt {
        &self.entries[r][c]
    }

    /// Permutes rows and columns and scales rows by the given factors.
    pub fn transformed(&self, row_perm: &[usize], col_perm: &[usize], row_scale: &[RatFun]) -> Self {
        let entries = row_perm
            .iter()
            .zip(row_scale)
            .map(|(&r, s)| col_perm.iter().map(|&c| self.entries[r][c].scale(s)).collect())
            .collect();
        PresentationMatrix {
            group: self.group.clone(),
            rows: row_perm.iter().map(|&r| self.rows[r].clone()).collect(),
            cols: col_perm.iter().map(|&c| self.cols[c].clone()).collect(),
            entries,
        }
    }
}

/// The presentation of the augmentation-ideal cokernel of a normal model.
pub fn build_presentation(model: &LocalModel) -> Result<PresentationMatrix> {
    model.require_normal()?;
    let g = model.group();
    let n = g.order();
    let mut entries = vec![vec![AlgebraElt::zero(g); n * n]; n - 1];
    let mut cols = Vec::with_capacity(n * n);
    for k in 0..n {
        let ek = AlgebraElt::basis(g, k);
        for l in 0..n {
            let col = k * n + l;
            let kl = g.add_idx(k, l);
            if kl != 0 {
                entries[kl - 1][col] = entries[kl - 1][col].add(&ek);
            }
            if l != 0 {
                entries[l - 1][col] = entries[l - 1][col].sub(&ek);
            }
            cols.push((g.element(k), g.element(l)));
        }
    }
    Ok(PresentationMatrix {
        group: g.clone(),
        rows: (1..n).map(|m| g.element(m)).collect(),
        cols,
        entries,
    })
}

fn distinct_mod(vals: &[i64], q: i64) -> bool {
    let mut seen = vec![false; q as usize];
    vals.iter().all(|&v| !std::mem::replace(&mut seen[v.rem_euclid(q) as usize], true))
}

fn binomials_mod(n: usize, p: u32) -> Vec<Vec<u32>> {
    let mut c = vec![vec![0u32; n]; n];
    for s in 0..n {
        c[s][0] = 1;
        for j in 1..=s {
            c[s][j] = (c[s - 1][j - 1] + if j < s { c[s - 1][j] } else { 0 }) % p;
        }
    }
    c
}

/// `r` with `r^{p^n} ≡ u mod π`, by inverting Frobenius on `F_p[x]/(π)`.
fn residue_root(u: &Poly, pi: &Poly, n: u32) -> Poly {
    let p = pi.p() as u64;
    let d = pi.deg() as u32;
    let steps = n.div_ceil(d) * d - n;
    (0..steps).fold(u.rem(pi), |acc, _| acc.pow_mod(p, pi))
}

/// `v_A(a)` with `v_A(π) = p^n`.
pub fn algebra_valuation(a: &AlgebraElt, model: &LocalModel) -> Result<i64> {
    if a.is_zero() {
        return Err(Error::ZeroElement);
    }
    let q = model.order() as i64;
    let place = model.place();
    let vals = model.valuations();
    if distinct_mod(vals, q) {
        let mut best = i64::MAX;
        for (m, am) in a.components().iter().enumerate() {
            if !am.is_zero() {
                best = best.min(q * am.valuation(place)? + vals[m]);
            }
        }
        return Ok(best);
    }
    let regular = model.exponent() == 0 && *model.normality() == Normality::Verified;
    let (Some(f), Some(den), Some(pi)) = (model.kummer_function(), model.basis_denominators(), place.poly()) else {
        return Err(Error::CancellationRisk(q as u64));
    };
    if !regular {
        return Err(Error::CancellationRisk(q as u64));
    }
    let p = model.p();
    let k = model.raw_exponent() / q;
    let u = f.exact_div(&pi.pow((k * q) as u64)).expect("valuation divides");
    let r = RatFun::from(residue_root(&u, pi, model.n()));
    // b_s = a_s π^{k s} / B_s is the coefficient of z'^s
    let pi_k = RatFun::from(pi.pow(k as u64));
    let b: Vec<RatFun> = a
        .components()
        .iter()
        .enumerate()
        .map(|(s, am)| am.mul(&pi_k.pow(s as i64)?).div(&den[s]))
        .collect::<Result<_>>()?;
    let binom = binomials_mod(q as usize, p);
    let mut r_pows = vec![RatFun::one(p)];
    for i in 1..q as usize {
        r_pows.push(r_pows[i - 1].mul(&r));
    }
    let mut best = i64::MAX;
    for j in 0..q as usize {
        let mut cj = RatFun::zero(p);
        for s in j..q as usize {
            if b[s].is_zero() || binom[s][j] == 0 {
                continue;
            }
            let coeff = RatFun::from(Poly::constant(p, binom[s][j]));
            cj = cj.add(&b[s].mul(&coeff).mul(&r_pows[s - j]));
        }
        if !cj.is_zero() {
            best = best.min(q * cj.valuation(place)? + j as i64);
        }
    }
    Ok(best)
}

struct Entry {
    a: AlgebraElt,
    val: i64,
}

/// Length of the cokernel over the local ring of `model`, by pivoting on an
/// entry of minimal valuation and summing pivot valuations.
pub fn snf_length(m: &PresentationMatrix, model: &LocalModel) -> Result<i64> {
    if m.group() != model.group() {
        return Err(Error::GroupMismatch);
    }
    let table: &Cocycle = model
        .cocycle()
        .ok_or_else(|| Error::InvalidInput("model has no multiplication table".into()))?;
    let mut rows: Vec<BTreeMap<usize, Entry>> = Vec::with_capacity(m.entries.len());
    for row in &m.entries {
        let mut map = BTreeMap::new();
        for (c, a) in row.iter().enumerate() {
            if !a.is_zero() {
                map.insert(c, Entry { val: algebra_valuation(a, model)?, a: a.clone() });
            }
        }
        rows.push(map);
    }
    let mut total = 0;
    while !rows.is_empty() {
        if rows.iter().any(BTreeMap::is_empty) {
            return Err(Error::NotTorsion);
        }
        let (r, c) = rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(&c, e)| ((e.val, e.a.support_len()), r, c)))
            .min()
            .map(|(_, r, c)| (r, c))
            .unwrap();
        let pivot_row = rows.swap_remove(r);
        let pivot = &pivot_row[&c];
        let inv = algebra_inverse(&pivot.a, table)?;
        for row in rows.iter_mut() {
            let Some(e) = row.remove(&c) else { continue };
            let factor = e.a.mul(&inv, table);
            if algebra_valuation(&factor, model)? < 0 {
                return Err(Error::Internal("elimination factor left the local ring".into()));
            }
            for (&cj, pe) in &pivot_row {
                if cj == c {
                    continue;
                }
                let delta = factor.mul(&pe.a, table);
                let updated = match row.remove(&cj) {
                    Some(old) => old.a.sub(&delta),
                    None => delta.neg(),
                };
                if !updated.is_zero() {
                    let val = algebra_valuation(&updated, model)?;
                    row.insert(cj, Entry { a: updated, val });
                }
            }
        }
        total += pivot.val;
    }
    Ok(total)
}

/// `snf_length(build_presentation(model))`.
pub fn oracle_multiplicity(model: &LocalModel) -> Result<i64> {
    snf_length(&build_presentation(model)?, model)
}

/// The local model of the base itself (trivial group), a DVR with
/// uniformizer `π`.
pub fn base_model(place: &Place) -> Result<LocalModel> {
    let pi = place
        .poly()
        .ok_or_else(|| Error::InvalidInput("base model needs a finite place".into()))?;
    LocalModel::normalize(pi.p(), 0, pi, place)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ramification::LocalModel;

    fn poly(p: u32, c: &[u32]) -> Poly {
        Poly::new(p, c.to_vec())
    }

    #[test]
    fn presentation_shapes() {
        let x = Place::rational(2, 0);
        let m = LocalModel::normalize(2, 1, &Poly::x(2), &x).unwrap();
        let pm = build_presentation(&m).unwrap();
        assert_eq!(pm.shape(), (1, 4));
        let g = m.group();
        let e1 = AlgebraElt::basis(g, 1);
        assert!(pm.entry(0, 0).is_zero() && pm.entry(0, 1).is_zero());
        assert_eq!(pm.entry(0, 2), &e1);
        assert_eq!(pm.entry(0, 3), &e1.neg());

        let m3 = LocalModel::normalize(3, 1, &Poly::x(3), &Place::rational(3, 0)).unwrap();
        let pm = build_presentation(&m3).unwrap();
        assert_eq!(pm.shape(), (2, 9));
        let col = 3 + 1;
        assert_eq!(pm.entry(1, col), &AlgebraElt::basis(m3.group(), 1));
        assert_eq!(pm.entry(0, col), &AlgebraElt::basis(m3.group(), 1).neg());

        let base = base_model(&x).unwrap();
        assert_eq!(build_presentation(&base).unwrap().shape(), (0, 1));
    }

    /// Elements of `A[M]` as coefficient vectors over `X^0, ..., X^{N-1}`,
    /// rewritten in the basis `1, w_1, ..., w_{N-1}`.
    fn in_w_basis(elt: &[AlgebraElt]) -> (AlgebraElt, Vec<AlgebraElt>) {
        let one = elt.iter().skip(1).fold(elt[0].clone(), |acc, a| acc.add(a));
        (one, elt[1..].to_vec())
    }

    #[test]
    fn presentation_derivation() {
        for p in [2, 3] {
            let m = LocalModel::normalize(p, 1, &Poly::x(p), &Place::rational(p, 0)).unwrap();
            let g = m.group();
            let n = g.order();
            let pm = build_presentation(&m).unwrap();
            for k in 0..n {
                for l in 0..n {
                    // e_k X^l (X^k - 1)
                    let mut elt = vec![AlgebraElt::zero(g); n];
                    let ek = AlgebraElt::basis(g, k);
                    let hi = g.add_idx(k, l);
                    elt[hi] = elt[hi].add(&ek);
                    elt[l] = elt[l].sub(&ek);
                    let (free, w) = in_w_basis(&elt);
                    assert!(free.is_zero());
                    for r in 1..n {
                        assert_eq!(&w[r - 1], pm.entry(r - 1, k * n + l));
                    }
                    // multiplying by X gives the column (k, l+1)
                    let shifted: Vec<AlgebraElt> = (0..n).map(|i| elt[g.add_idx(i, n - 1)].clone()).collect();
                    let (_, w) = in_w_basis(&shifted);
                    let next = k * n + g.add_idx(l, 1);
                    for r in 1..n {
                        assert_eq!(&w[r - 1], pm.entry(r - 1, next));
                    }
                }
            }
        }
    }

    #[test]
    fn valuations() {
        let x = Place::rational(2, 0);
        let m = LocalModel::normalize(2, 1, &Poly::x(2), &x).unwrap();
        let g = m.group();
        assert_eq!(algebra_valuation(&AlgebraElt::one(g), &m).unwrap(), 0);
        let a = AlgebraElt::monomial(g, 0, RatFun::from(Poly::x(2))).add(&AlgebraElt::basis(g, 1));
        assert_eq!(algebra_valuation(&a, &m).unwrap(), 1);
        let m = LocalModel::normalize(2, 2, &poly(2, &[0, 0, 0, 1]), &x).unwrap();
        assert_eq!(algebra_valuation(&AlgebraElt::basis(m.group(), 3), &m).unwrap(), 1);
    }

    #[test]
    fn regular_unit_place_uses_tau() {
        // z^2 = x + 1 at x: τ = z - 1 has τ^2 = x, so v(e_0 + e_1) = 1
        let m = LocalModel::normalize(2, 1, &poly(2, &[1, 1]), &Place::rational(2, 0)).unwrap();
        let g = m.group();
        let a = AlgebraElt::one(g).add(&AlgebraElt::basis(g, 1));
        assert_eq!(algebra_valuation(&a, &m).unwrap(), 1);
        assert_eq!(algebra_valuation(&AlgebraElt::basis(g, 1), &m).unwrap(), 0);
        assert_eq!(oracle_multiplicity(&m).unwrap(), 0);
    }

    #[test]
    fn diagonal_dvr_length() {
        let x = Place::rational(3, 0);
        let base = base_model(&x).unwrap();
        let g = base.group().clone();
        let at = |f: Poly| AlgebraElt::monomial(&g, 0, RatFun::from(f));
        let zero = AlgebraElt::zero(&g);
        let mat = PresentationMatrix::from_entries(
            &g,
            vec![vec![at(Poly::x(3)), zero.clone()], vec![zero, at(poly(3, &[0, 0, 1]))]],
        )
        .unwrap();
        // v_A(π) = p^0 = 1 on the base
        assert_eq!(snf_length(&mat, &base).unwrap(), 3);
    }

    #[test]
    fn oracle_examples() {
        for (p, n, expected) in [(2, 1, 1), (3, 1, 2), (2, 2, 3)] {
            let m = LocalModel::normalize(p, n, &Poly::x(p), &Place::rational(p, 0)).unwrap();
            assert_eq!(oracle_multiplicity(&m).unwrap(), expected);
        }
    }

    #[test]
    fn not_torsion() {
        let x = Place::rational(2, 0);
        let base = base_model(&x).unwrap();
        let g = base.group().clone();
        let mat = PresentationMatrix::from_entries(&g, vec![vec![AlgebraElt::zero(&g)]]).unwrap();
        assert_eq!(snf_length(&mat, &base), Err(Error::NotTorsion));
    }
}
