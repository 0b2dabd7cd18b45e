//! Divisor arithmetic of the Frobenius-kernel example on `GL_n`, where
//! `R_γ = (p^{nγ} - 1)[Δ]` and the pullback of `R_{γ-β}` is
//! `p^β (p^{n(γ-β)} - 1)[Δ]`.

use serde::Serialize;

use crate::divisor::Divisor;
use crate::error::{Error, Result};

pub const DELTA: &str = "Δ";

#[derive(Clone, Debug, Serialize)]
pub struct GlnReport {
    pub p: u32,
    pub n: u32,
    pub beta: u32,
    pub gamma: u32,
    pub r_gamma: Divisor,
    pub r_beta: Divisor,
    pub r_difference: Divisor,
    pub pullback_index: u64,
    pub pulled: Divisor,
    pub sum: Divisor,
    pub equal: bool,
    /// With `n = 1` the two sides agree for every `β < γ`.
    pub degenerate_n1: bool,
}

fn pow(p: u32, e: u32) -> Result<u64> {
    (p as u64)
        .checked_pow(e)
        .ok_or_else(|| Error::InvalidInput(format!("{p}^{e} overflows")))
}

pub fn gln_regression(p: u32, n: u32, beta: u32, gamma: u32) -> Result<GlnReport> {
    if !crate::arith::fp::is_prime(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    if n == 0 || beta == 0 || beta >= gamma {
        return Err(Error::InvalidInput(format!(
            "need n >= 1 and 0 < beta < gamma, got n = {n}, beta = {beta}, gamma = {gamma}"
        )));
    }
    let exp = |k: u32| -> Result<u32> {
        n.checked_mul(k).ok_or_else(|| Error::InvalidInput("exponent overflows".into()))
    };
    let delta = |m: u64| Divisor::symbolic(DELTA, Some(1), m as i64);
    let r_gamma = delta(pow(p, exp(gamma)?)? - 1);
    let r_beta = delta(pow(p, exp(beta)?)? - 1);
    let r_difference = delta(pow(p, exp(gamma - beta)?)? - 1);
    let pullback_index = pow(p, beta)?;
    let pulled = r_difference.pullback(|_| Some(pullback_index))?;
    let sum = r_beta.add(&pulled)?;
    Ok(GlnReport {
        p,
        n,
        beta,
        gamma,
        equal: r_gamma == sum,
        r_gamma,
        r_beta,
        r_difference,
        pullback_index,
        pulled,
        sum,
        degenerate_n1: n == 1,
    })
}
