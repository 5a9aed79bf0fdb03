//! Okutsu frames and the invariants read off a complete type.
//!
//! The frame polynomials themselves are not unique: other runs (other seeds)
//! may produce different ones. The degrees `m_i`, the ramification and
//! residue degrees, the frame-level slopes and the values `v(F_i(θ))` are the
//! same for every choice.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::arith::{phi_expand, IntPoly, RatVal};
use crate::error::{internal, Error, Result};
use crate::montes::OkutsuFactor;
use crate::polygon::principal_part;
use crate::types::{newton_with, OMType};

/// Slope and residual degree of one frame level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LevelData {
    pub h: i64,
    pub e: i64,
    pub f: i64,
}

/// An Okutsu frame `[F_1, …, F_r]` with its invariants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OkutsuFrame {
    pub polynomials: Vec<IntPoly>,
    /// `m_i = deg F_i`.
    pub degrees: Vec<usize>,
    pub levels: Vec<LevelData>,
    /// `v(F_i(θ))`.
    pub v_f: Vec<RatVal>,
    /// Degree of the factor.
    pub factor_degree: usize,
}

impl OkutsuFrame {
    pub fn depth(&self) -> usize {
        self.polynomials.len()
    }
}

/// The frame of a factor: `[φ_1, …, φ_r]` when `e_r f_r > 1`, otherwise
/// `[φ_1, …, φ_{r-1}]`.
pub fn frame_of(factor: &OkutsuFactor) -> OkutsuFrame {
    let t = factor.omtype();
    let depth = factor.depth();
    let levels: Vec<LevelData> =
        t.levels()[..depth].iter().map(|l| LevelData { h: l.h(), e: l.e(), f: l.f() }).collect();
    OkutsuFrame {
        polynomials: t.levels()[..depth].iter().map(|l| l.phi().clone()).collect(),
        degrees: t.levels()[..depth].iter().map(|l| l.m()).collect(),
        v_f: v_fi(&levels),
        levels,
        factor_degree: factor.degree(),
    }
}

/// `v(F_i(θ)) = Σ_{j ≤ i} (e_j f_j ⋯ e_{i-1} f_{i-1}) · h_j / (e_1 ⋯ e_j)`.
pub fn v_fi(levels: &[LevelData]) -> Vec<RatVal> {
    let mut out = Vec::with_capacity(levels.len());
    for i in 0..levels.len() {
        let mut acc = BigRational::from_integer(BigInt::from(0));
        let mut e_prefix = 1i64;
        for j in 0..=i {
            e_prefix *= levels[j].e;
            let tail: i64 = levels[j..i].iter().map(|l| l.e * l.f).product();
            acc += BigRational::new(BigInt::from(tail * levels[j].h), BigInt::from(e_prefix));
        }
        out.push(RatVal::Finite(acc));
    }
    out
}

/// `(e, f)` of the extension generated by a root of the factor.
pub fn ef_totals(factor: &OkutsuFactor) -> (i64, i64) {
    (factor.e(), factor.f())
}

/// The divisor polynomial `g_m = Π_{i=0}^{r} F_i^{a_i}` with `F_0 = x`, where
/// `m = Σ a_i m_i` is the greedy mixed-radix expansion in the base
/// `1 = m_0, m_1, …, m_r`.
pub fn divisor_polynomial(m: usize, frame: &OkutsuFrame, factor_degree: usize) -> Result<IntPoly> {
    if m >= factor_degree {
        return Err(Error::OutOfRange(format!("m = {m} must be below the degree {factor_degree}")));
    }
    let mut bases = vec![(1usize, IntPoly::x())];
    bases.extend(frame.degrees.iter().copied().zip(frame.polynomials.iter().cloned()));
    let mut rest = m;
    let mut g = IntPoly::one();
    for (mi, fi) in bases.iter().rev() {
        let a = rest / mi;
        rest %= mi;
        g = &g * &fi.pow(a);
    }
    Ok(g)
}

/// Slope `-h` of the one-sided length-one polygon of `f` at the level above
/// `t`, with respect to `φ`; `None` when `φ` divides `f`.
pub fn next_slope(t: &OMType, phi: &IntPoly, f: &IntPoly) -> Result<Option<i64>> {
    if phi_expand(f, phi)?.digit(0).is_zero() {
        return Ok(None);
    }
    let poly = newton_with(f, t, t.order() + 1, phi)?;
    match principal_part(&poly).as_slice() {
        [side] if side.width() == 1 && side.start.x == 0 => Ok(Some(side.h)),
        _ => Err(internal!("polygon of f with respect to {phi} is not one-sided of length one")),
    }
}

/// `ν_T` and the certified precision `ν = ν_T + h_{r+1}/e`, with `ν = ∞`
/// for an exact factor.
pub fn nu_and_precision(factor: &OkutsuFactor, f: &IntPoly) -> Result<(RatVal, RatVal)> {
    let nu_t = factor.nu_t();
    let nu = match next_slope(factor.omtype(), factor.representative(), f)? {
        None => RatVal::Infinity,
        Some(h) => nu_t.clone() + RatVal::frac(h, factor.e()),
    };
    Ok((nu_t, nu))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ValuedContext;
    use crate::montes::montes;

    fn ip(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    fn factors(c: &[i64], p: u64) -> Vec<OkutsuFactor> {
        montes(&ip(c), &ValuedContext::new(p, 20).unwrap(), 0).unwrap()
    }

    #[test]
    fn frames() {
        let fr = frame_of(&factors(&[9, 0, 1], 3)[0]);
        assert_eq!(fr.polynomials, vec![IntPoly::x()]);
        assert_eq!(fr.v_f, vec![RatVal::from_int(1)]);
        for fac in factors(&[25, 0, 1], 5) {
            assert_eq!(frame_of(&fac).depth(), 0);
        }
        // Irreducible mod p.
        let fac = &factors(&[1, 0, 1], 3)[0];
        assert_eq!(frame_of(fac).depth(), 0);
        assert_eq!(ef_totals(fac), (1, 2));
    }

    #[test]
    fn closed_formula() {
        let one = |h, e, f| LevelData { h, e, f };
        assert_eq!(v_fi(&[one(1, 5, 1)]), vec![RatVal::frac(1, 5)]);
        assert!(v_fi(&[]).is_empty());
        // Second term: e_1 f_1 h_1/e_1 + h_2/(e_1 e_2) = 2 + 1/2.
        assert_eq!(v_fi(&[one(1, 1, 2), one(1, 2, 1)])[1], RatVal::frac(5, 2));
    }

    #[test]
    fn divisor_polynomials() {
        let fr = frame_of(&factors(&[9, 0, 1], 3)[0]);
        assert_eq!(divisor_polynomial(1, &fr, 2).unwrap(), IntPoly::x());
        assert_eq!(divisor_polynomial(0, &fr, 2).unwrap(), IntPoly::one());
        assert!(divisor_polynomial(2, &fr, 2).is_err());
        let f1 = ip(&[3, 0, 1]);
        let fr = OkutsuFrame {
            polynomials: vec![f1.clone()],
            degrees: vec![2],
            levels: vec![LevelData { h: 1, e: 2, f: 1 }],
            v_f: vec![RatVal::frac(1, 2)],
            factor_degree: 6,
        };
        assert_eq!(divisor_polynomial(3, &fr, 6).unwrap(), &IntPoly::x() * &f1);
    }

    #[test]
    fn precision_certificates() {
        let fac = &factors(&[36, 0, 1], 3)[0];
        assert_eq!(fac.representative(), &ip(&[9, 0, 1]));
        let (nu_t, nu) = nu_and_precision(fac, &ip(&[36, 0, 1])).unwrap();
        assert_eq!((nu_t, nu), (RatVal::from_int(1), RatVal::from_int(2)));
        let fac = &factors(&[9, 0, 1], 3)[0];
        assert_eq!(nu_and_precision(fac, &ip(&[9, 0, 1])).unwrap().1, RatVal::Infinity);
        let fac = &factors(&[-3, 0, 0, 0, 0, 1], 3)[0];
        assert_eq!(nu_and_precision(fac, &ip(&[-3, 0, 0, 0, 0, 1])).unwrap().1, RatVal::Infinity);
    }
}
