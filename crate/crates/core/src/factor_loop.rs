//! Approximations of every irreducible factor to a prescribed p-adic
//! precision `N`.
//!
//! Each factor starts from its certificate `(T, φ)`. While
//! `⌈ν_T + h/e⌉ < N`, where `-h` is the slope of the length-one polygon of
//! `f` with respect to `φ`, the type is enlarged by `(φ; -h, ψ)` with `ψ` the
//! degree-one residual factor and `φ` is replaced by a representative of the
//! enlarged type. The slope strictly steepens at every step.

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::arith::{IntPoly, RatVal, ValuedContext};
use crate::error::{internal, Error, Result};
use crate::invariants::next_slope;
use crate::montes::{montes, OkutsuFactor};
use crate::types::{make_representative, residual_on_line, vi_of, OMType};

/// A factor refined to precision `N`.
#[derive(Clone, Debug)]
pub struct FactorResult {
    pub factor: OkutsuFactor,
    /// Monic, congruent to the p-adic factor modulo `p^N`.
    pub approximation: IntPoly,
    pub nu_t: RatVal,
    /// Certified precision; `∞` for an exact factor.
    pub nu: RatVal,
    pub requested_n: u32,
    /// The successive values of `h`, one per approximation.
    pub h_sequence: Vec<i64>,
}

impl FactorResult {
    pub fn iterations(&self) -> usize {
        self.h_sequence.len().saturating_sub(1)
    }

    pub fn is_exact(&self) -> bool {
        self.nu.is_infinite()
    }
}

/// One improvement step: returns a representative `φ'` of `T` enlarged by
/// `(φ; -h, ψ)` and the new slope `h'` of `f` with respect to `φ'`, or
/// `None` when `φ'` divides `f`. Fails unless `h' > h`.
pub fn improve(t: &OMType, phi: &IntPoly, f: &IntPoly, h: i64, seed: u64) -> Result<(IntPoly, Option<i64>)> {
    let level = t.order() + 1;
    let big_v = vi_of(phi, t, level)?;
    let res = residual_on_line(t, level, phi, big_v, f, h, 1)?;
    if res.s0 != 0 || res.s1 != 1 {
        return Err(internal!("residual of the improvement step is not of degree one"));
    }
    let k = t.field(level);
    let psi = k.poly_monic(&res.poly);
    let enlarged = t.extend(phi, h, 1, &psi)?;
    let next = make_representative(&enlarged, seed)?;
    let h_next = next_slope(t, &next, f)?;
    if let Some(hn) = h_next {
        if hn <= h {
            return Err(internal!("improvement did not steepen the slope: {hn} after {h}"));
        }
    }
    Ok((next, h_next))
}

fn refine_factor(factor: OkutsuFactor, f: &IntPoly, ctx: &ValuedContext, n: u32, seed: u64) -> Result<FactorResult> {
    let t = factor.omtype().clone();
    let nu_t = factor.nu_t();
    let e = factor.e();
    let mut phi = factor.representative().clone();
    let mut h_sequence = Vec::new();
    let mut current = next_slope(&t, &phi, f)?;
    let limit = n as usize * e as usize + 2;
    let nu = loop {
        let Some(h) = current else { break RatVal::Infinity };
        h_sequence.push(h);
        let nu = nu_t.clone() + RatVal::frac(h, e);
        if nu.ceil().expect("finite") >= BigInt::from(n) {
            break nu;
        }
        if h_sequence.len() > limit {
            return Err(internal!("precision loop did not reach {n} after {limit} steps"));
        }
        let (next, h_next) = improve(&t, &phi, f, h, seed)?;
        phi = next;
        current = h_next;
    };
    let approximation = if nu.is_infinite() { phi } else { phi.reduce_symmetric(&ctx.p_pow(n as u64 + 1)) };
    if !approximation.is_monic() {
        return Err(internal!("approximation lost monicity"));
    }
    Ok(FactorResult { factor, approximation, nu_t, nu, requested_n: n, h_sequence })
}

/// Factors `f` and refines every factor until its certified precision
/// reaches `n`. Approximations are reduced to the symmetric residue system
/// modulo `p^{n+1}`; exact factors are returned as they are.
///
/// ```
/// use okutsu::arith::{IntPoly, ValuedContext};
/// use okutsu::factor_loop::factor_to_precision;
/// use okutsu::oracle::check_product_congruence;
///
/// let ctx = ValuedContext::new(5u32, 20).unwrap();
/// let f = IntPoly::from_i64(&[25, 0, 1]);
/// let rs = factor_to_precision(&f, &ctx, 8, 0).unwrap();
/// let parts: Vec<IntPoly> = rs.iter().map(|r| r.approximation.clone()).collect();
/// assert!(check_product_congruence(&f, &parts, &ctx, 8));
/// ```
pub fn factor_to_precision(f: &IntPoly, ctx: &ValuedContext, n: u32, seed: u64) -> Result<Vec<FactorResult>> {
    if n == 0 {
        return Err(Error::BadPrecision);
    }
    let factors = montes(f, ctx, seed)?;
    factors.into_par_iter().map(|fac| refine_factor(fac, f, ctx, n, seed)).collect()
}
