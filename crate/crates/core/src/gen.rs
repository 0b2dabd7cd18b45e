//! Seeded random inputs for property tests, fuzzing and benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{irreducible_factors, Place, Poly};
use crate::covering::{cocycle_from_column, Cocycle};
use crate::error::Result;
use crate::pgroup::PGroup;

pub type GenRng = ChaCha8Rng;

pub fn rng(seed: u64) -> GenRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform polynomial of exact degree `deg`.
pub fn poly_of_degree<R: Rng>(rng: &mut R, p: u32, deg: usize, monic: bool) -> Poly {
    let mut c: Vec<u32> = (0..deg).map(|_| rng.gen_range(0..p)).collect();
    c.push(if monic { 1 } else { rng.gen_range(1..p) });
    Poly::new(p, c)
}

pub fn monic_up_to<R: Rng>(rng: &mut R, p: u32, min_deg: usize, max_deg: usize) -> Poly {
    let d = rng.gen_range(min_deg..=max_deg);
    poly_of_degree(rng, p, d, true)
}

/// A monic `f` of degree `1..=max_deg` that is not a p-th power, with the
/// places where `v_π(f)` is prime to `p` (at least one).
pub fn normal_kummer<R: Rng>(rng: &mut R, p: u32, max_deg: usize) -> Result<(Poly, Vec<Place>)> {
    loop {
        let f = monic_up_to(rng, p, 1, max_deg);
        if f.derivative().is_zero() {
            continue;
        }
        let mut places = Vec::new();
        for pi in irreducible_factors(&f)? {
            if !f.multiplicity(&pi).is_multiple_of(p) {
                places.push(Place::finite(pi)?);
            }
        }
        if !places.is_empty() {
            return Ok((f, places));
        }
    }
}

/// A column `c_1 | c_2 | ... | c_{N-1}`, which always gives an integral
/// cocycle.
pub fn chain_column<R: Rng>(rng: &mut R, p: u32, order: usize) -> Vec<Poly> {
    let mut col = Vec::with_capacity(order - 1);
    let mut cur = monic_up_to(rng, p, 0, 1);
    for _ in 1..order {
        col.push(cur.clone());
        if rng.gen_bool(0.3) {
            cur = &cur * &monic_up_to(rng, p, 1, 1);
        }
    }
    col
}

/// Independent monic entries of degree at most `max_deg`.
pub fn free_column<R: Rng>(rng: &mut R, p: u32, order: usize, max_deg: usize) -> Vec<Poly> {
    (1..order).map(|_| monic_up_to(rng, p, 0, max_deg)).collect()
}

pub fn cyclic_cocycle<R: Rng>(rng: &mut R, p: u32, n: u32) -> Result<Cocycle> {
    let g = PGroup::cyclic(p, n)?;
    cocycle_from_column(&g, &chain_column(rng, p, g.order()))
}

/// Arbitrary coefficients `φ_m`, zeros included.
pub fn phi<R: Rng>(rng: &mut R, p: u32, order: usize, max_deg: usize) -> Vec<Poly> {
    (0..order)
        .map(|_| {
            if rng.gen_bool(0.2) {
                Poly::zero(p)
            } else {
                let d = rng.gen_range(0..=max_deg);
                poly_of_degree(rng, p, d, false)
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_and_integral() {
        let a = cyclic_cocycle(&mut rng(7), 3, 2).unwrap();
        let b = cyclic_cocycle(&mut rng(7), 3, 2).unwrap();
        assert_eq!(a, b);
        assert!(a.validate().passed());
        let (f, places) = normal_kummer(&mut rng(1), 2, 6).unwrap();
        assert!(places.iter().all(|v| v.valuation(&f).unwrap() % 2 == 1));
    }
}
