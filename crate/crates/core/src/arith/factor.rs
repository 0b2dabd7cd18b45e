//! Factorization over F_p: squarefree decomposition, distinct-degree
//! splitting and Cantor–Zassenhaus equal-degree splitting.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::poly::Poly;
use crate::error::{Error, Result};

/// Monic irreducible factors with multiplicities, sorted by factor.
///
/// The leading coefficient of `f` is dropped; `f` equals it times the product.
pub fn factor(f: &Poly) -> Result<Vec<(Poly, u32)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut out: Vec<(Poly, u32)> = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_fac7);
    for (part, mult) in squarefree(&f.monic()) {
        for (deg, block) in distinct_degree(&part) {
            for g in equal_degree(&block, deg, &mut rng) {
                out.push((g, mult));
            }
        }
    }
    out.sort();
    // merge: squarefree parts are coprime, so this only guards equal factors
    let mut merged: Vec<(Poly, u32)> = Vec::with_capacity(out.len());
    for (g, m) in out {
        match merged.last_mut() {
            Some((h, k)) if *h == g => *k += m,
            _ => merged.push((g, m)),
        }
    }
    Ok(merged)
}

/// Distinct monic irreducible factors of `f`.
pub fn irreducible_factors(f: &Poly) -> Result<Vec<Poly>> {
    Ok(factor(f)?.into_iter().map(|(g, _)| g).collect())
}

pub fn is_irreducible(f: &Poly) -> bool {
    if f.is_constant() {
        return false;
    }
    match factor(f) {
        Ok(fs) => fs.len() == 1 && fs[0].1 == 1,
        Err(_) => false,
    }
}

/// Squarefree decomposition of a monic polynomial: pairs `(g_i, i)` with
/// `f = prod g_i^i`, each `g_i` squarefree, monic and non-constant.
pub fn squarefree(f: &Poly) -> Vec<(Poly, u32)> {
    let p = f.p();
    let mut out = Vec::new();
    if f.is_constant() {
        return out;
    }
    let df = f.derivative();
    if df.is_zero() {
        let root = f.pth_root().expect("vanishing derivative means p-th power");
        for (g, m) in squarefree(&root) {
            out.push((g, m * p));
        }
        return out;
    }
    let mut c = f.gcd(&df);
    let mut w = f.exact_div(&c).expect("gcd divides");
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let z = w.exact_div(&y).expect("gcd divides");
        if !z.is_one() {
            out.push((z.monic(), i));
        }
        i += 1;
        w = y;
        c = c.exact_div(&w).expect("gcd divides");
    }
    if !c.is_one() {
        // what is left is a p-th power
        let root = c.pth_root().expect("remaining cofactor is a p-th power");
        for (g, m) in squarefree(&root) {
            out.push((g, m * p));
        }
    }
    out
}

/// Splits a squarefree monic polynomial into products of equal-degree factors.
fn distinct_degree(f: &Poly) -> Vec<(usize, Poly)> {
    let p = f.p();
    let x = Poly::x(p);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = x.rem(&rest);
    let mut d = 0;
    while rest.deg() >= 2 * (d + 1) {
        d += 1;
        h = h.pow_mod(p as u64, &rest);
        let g = (&h - &x).gcd(&rest);
        if !g.is_one() {
            rest = rest.exact_div(&g).expect("gcd divides");
            h = h.rem(&rest);
            out.push((d, g));
        }
    }
    if !rest.is_one() {
        out.push((rest.deg(), rest));
    }
    out
}

fn equal_degree(f: &Poly, d: usize, rng: &mut ChaCha8Rng) -> Vec<Poly> {
    if f.deg() == d {
        return vec![f.monic()];
    }
    let p = f.p();
    loop {
        let a = random_below(f, rng);
        if a.is_constant() {
            continue;
        }
        let g = a.gcd(f);
        if !g.is_one() && g.deg() < f.deg() {
            return split(f, &g, d, rng);
        }
        let b = if p == 2 {
            // trace map a + a^2 + ... + a^(2^(d-1))
            let mut t = a.clone();
            let mut acc = a.clone();
            for _ in 1..d {
                t = t.mul_mod(&t, f);
                acc = &acc + &t;
            }
            acc
        } else {
            // a^((p^d - 1)/2) = (a * a^p * ... * a^(p^(d-1)))^((p-1)/2)
            let mut t = a.clone();
            let mut norm = a.clone();
            for _ in 1..d {
                t = t.pow_mod(p as u64, f);
                norm = norm.mul_mod(&t, f);
            }
            &norm.pow_mod((p as u64 - 1) / 2, f) - &Poly::one(p)
        };
        let g = b.gcd(f);
        if !g.is_one() && g.deg() < f.deg() {
            return split(f, &g, d, rng);
        }
    }
}

fn split(f: &Poly, g: &Poly, d: usize, rng: &mut ChaCha8Rng) -> Vec<Poly> {
    let h = f.exact_div(g).expect("gcd divides");
    let mut out = equal_degree(g, d, rng);
    out.extend(equal_degree(&h, d, rng));
    out
}

fn random_below(f: &Poly, rng: &mut ChaCha8Rng) -> Poly {
    let p = f.p();
    let coeffs = (0..f.deg()).map(|_| rng.gen_range(0..p)).collect();
    Poly::new(p, coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(p: u32, c: &[u32]) -> Poly {
        Poly::new(p, c.to_vec())
    }

    fn expand(f: &[(Poly, u32)], p: u32) -> Poly {
        f.iter()
            .fold(Poly::one(p), |acc, (g, m)| &acc * &g.pow(*m as u64))
    }

    #[test]
    fn small_examples() {
        // x^2 + x = x (x + 1) over F_2
        assert_eq!(
            factor(&poly(2, &[0, 1, 1])).unwrap(),
            vec![(poly(2, &[0, 1]), 1), (poly(2, &[1, 1]), 1)]
        );
        // x^2 + 1 = (x + 1)^2 over F_2
        assert_eq!(factor(&poly(2, &[1, 0, 1])).unwrap(), vec![(poly(2, &[1, 1]), 2)]);
        // x^3 - x over F_3
        assert_eq!(
            factor(&poly(3, &[0, 2, 0, 1])).unwrap(),
            vec![
                (poly(3, &[0, 1]), 1),
                (poly(3, &[1, 1]), 1),
                (poly(3, &[2, 1]), 1)
            ]
        );
    }

    #[test]
    fn zero_is_rejected() {
        assert_eq!(factor(&Poly::zero(5)), Err(Error::ZeroPolynomial));
        assert!(factor(&Poly::constant(5, 3)).unwrap().is_empty());
    }

    #[test]
    fn mixed_powers() {
        // (x^2 + x + 1)^2 (x + 1)^3 x^4 over F_2, exercising p-th root extraction
        let p = 2;
        let f = &(&poly(p, &[1, 1, 1]).pow(2) * &poly(p, &[1, 1]).pow(3)) * &poly(p, &[0, 1]).pow(4);
        let fs = factor(&f).unwrap();
        assert_eq!(expand(&fs, p), f);
        assert_eq!(
            fs,
            vec![
                (poly(p, &[0, 1]), 4),
                (poly(p, &[1, 1]), 3),
                (poly(p, &[1, 1, 1]), 2)
            ]
        );
    }

    #[test]
    fn equal_degree_splitting_odd_and_even() {
        // x^4 + 1 over F_3 splits into two quadratics
        let f = poly(3, &[1, 0, 0, 0, 1]);
        let fs = factor(&f).unwrap();
        assert_eq!(fs.len(), 2);
        assert!(fs.iter().all(|(g, m)| g.deg() == 2 && *m == 1));
        // x^15 - 1 over F_2: 1 + 2 + 4 + 4 + 4 distinct-degree blocks
        let mut c = vec![0; 16];
        c[0] = 1;
        c[15] = 1;
        let fs = factor(&poly(2, &c)).unwrap();
        let degs: Vec<usize> = fs.iter().map(|(g, _)| g.deg()).collect();
        assert_eq!(degs, vec![1, 2, 4, 4, 4]);
    }

    #[test]
    fn leading_coefficient_dropped() {
        let f = poly(5, &[0, 3]);
        assert_eq!(factor(&f).unwrap(), vec![(Poly::x(5), 1)]);
    }
}
