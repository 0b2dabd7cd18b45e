//! Fixed inputs for the benchmarks.

use ramdiv::gen;
use ramdiv::{Cocycle, KummerData, Place, Poly};

/// Product of the first `k` monic linear and quadratic polynomials over F_p,
/// squared to give repeated factors.
pub fn factor_input(p: u32, k: usize) -> Poly {
    let mut f = Poly::one(p);
    let mut rng = gen::rng(k as u64);
    for i in 0..k {
        let g = gen::monic_up_to(&mut rng, p, 1 + i % 2, 1 + i % 2);
        f = &f * &g;
    }
    &f * &f
}

/// `z^{p^n} = x` at the origin.
pub fn frobenius(p: u32, n: u32) -> (KummerData, Place) {
    (KummerData::cyclic(p, n, Poly::x(p)).expect("x is not a p-th power"), Place::rational(p, 0))
}

pub fn cocycle_and_phi(p: u32, n: u32, seed: u64) -> (Cocycle, Vec<Poly>) {
    let mut rng = gen::rng(seed);
    let c = gen::cyclic_cocycle(&mut rng, p, n).expect("generated columns are integral");
    let phi = gen::phi(&mut rng, p, c.group().order(), 2);
    (c, phi)
}
