//! Exact linear algebra over F_p[x] and F_p(x).

use super::poly::Poly;
use super::ratfun::RatFun;
use crate::error::{Error, Result};

/// Solves the square system `a * x = b` over F_p(x) by Gaussian elimination.
pub fn solve(mut a: Vec<Vec<RatFun>>, mut b: Vec<RatFun>) -> Result<Vec<RatFun>> {
    let n = b.len();
    assert!(a.len() == n && a.iter().all(|row| row.len() == n));
    for col in 0..n {
        // prefer the pivot of smallest total degree to limit growth
        let pivot = (col..n)
            .filter(|&r| !a[r][col].is_zero())
            .min_by_key(|&r| a[r][col].num().deg() + a[r][col].den().deg())
            .ok_or(Error::NotInvertible)?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = a[col][col].inv()?;
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].mul(&inv);
            for c in col..n {
                if !a[col][c].is_zero() {
                    a[r][c] = a[r][c].sub(&factor.mul(&a[col][c]));
                }
            }
            b[r] = b[r].sub(&factor.mul(&b[col]));
        }
    }
    (0..n).map(|i| b[i].div(&a[i][i])).collect()
}

/// Determinant over F_p[x] by fraction-free (Bareiss) elimination.
pub fn det_bareiss(mut m: Vec<Vec<Poly>>, p: u32) -> Poly {
    let n = m.len();
    assert!(m.iter().all(|row| row.len() == n));
    if n == 0 {
        return Poly::one(p);
    }
    let mut sign_flip = false;
    let mut prev = Poly::one(p);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign_flip = !sign_flip;
                }
                None => return Poly::zero(p),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = t.exact_div(&prev).expect("Bareiss division is exact");
            }
            m[i][k] = Poly::zero(p);
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign_flip {
        -&d
    } else {
        d
    }
}
