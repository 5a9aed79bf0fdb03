//! Types of order `r` and the machinery attached to them: the valuations
//! `v_1, …, v_{r+1}`, Newton polygons of order `i`, residual polynomials and
//! representatives.
//!
//! Levels are numbered from 1. Level `i` carries `φ_i`, the slope
//! `λ_i = -h_i/e_i` and `ψ_i ∈ F_i[y]`. The fields are `F_0 = F_p`,
//! `F_1 = F_0[y]/(ψ_0)` and `F_{i+1} = F_i[y]/(ψ_i)`, so a type of order `r`
//! owns `r + 2` fields.

mod representative;
mod valuation;

use std::sync::Arc;

use num_integer::Integer;

use crate::arith::{IntPoly, ValuedContext};
use crate::error::{Error, Result};
use crate::ff::{ord_factor, tower_extend, FFPoly, TowerField};

pub use representative::{lift, make_representative};
pub use valuation::{
    newton_i, newton_points, newton_with, r0, residual_i, residual_on_line, valuation_data, vi_of, LineResidual,
};

/// One level `(φ_i; λ_i = -h_i/e_i, ψ_i)` of a type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeLevel {
    phi: IntPoly,
    h: i64,
    e: i64,
    psi: FFPoly,
    big_v: i64,
    ell: i64,
}

impl TypeLevel {
    pub fn phi(&self) -> &IntPoly {
        &self.phi
    }

    pub fn h(&self) -> i64 {
        self.h
    }

    pub fn e(&self) -> i64 {
        self.e
    }

    pub fn psi(&self) -> &FFPoly {
        &self.psi
    }

    /// Residual degree `f_i = deg ψ_i`.
    pub fn f(&self) -> i64 {
        self.psi.degree().unwrap() as i64
    }

    /// `v_i(φ_i)`.
    pub fn big_v(&self) -> i64 {
        self.big_v
    }

    /// The inverse of `h` modulo `e`, in `[0, e)`.
    pub fn ell(&self) -> i64 {
        self.ell
    }

    pub fn m(&self) -> usize {
        self.phi.degree().unwrap()
    }
}

/// A type of order `r` over the p-adic integers.
#[derive(Clone, Debug)]
pub struct OMType {
    ctx: ValuedContext,
    psi0: FFPoly,
    fields: Vec<Arc<TowerField>>,
    levels: Vec<TypeLevel>,
}

impl PartialEq for OMType {
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx && self.psi0 == other.psi0 && self.levels == other.levels
    }
}

impl Eq for OMType {}

fn inverse_mod(h: i64, e: i64) -> i64 {
    if e == 1 {
        return 0;
    }
    let g = h.extended_gcd(&e);
    g.x.rem_euclid(e)
}

impl OMType {
    /// The order-0 type of a monic irreducible `ψ_0 ∈ F_p[y]`.
    pub fn order0(ctx: &ValuedContext, psi0: FFPoly) -> Result<OMType> {
        let fp = TowerField::prime(ctx.p_u64());
        let f1 = tower_extend(&fp, &psi0)?;
        Ok(OMType { ctx: ctx.clone(), psi0, fields: vec![fp, f1], levels: Vec::new() })
    }

    pub fn ctx(&self) -> &ValuedContext {
        &self.ctx
    }

    pub fn order(&self) -> usize {
        self.levels.len()
    }

    pub fn psi0(&self) -> &FFPoly {
        &self.psi0
    }

    /// `f_0 = deg ψ_0`.
    pub fn f0(&self) -> i64 {
        self.psi0.degree().unwrap() as i64
    }

    pub fn levels(&self) -> &[TypeLevel] {
        &self.levels
    }

    /// Level `i` (1-based).
    pub fn level(&self, i: usize) -> &TypeLevel {
        &self.levels[i - 1]
    }

    pub fn last(&self) -> Option<&TypeLevel> {
        self.levels.last()
    }

    /// `F_i` for `0 ≤ i ≤ order + 1`.
    pub fn field(&self, i: usize) -> &Arc<TowerField> {
        &self.fields[i]
    }

    /// Degree of `φ_i`; `m_{r+1}` is the degree of the representative.
    pub fn m(&self, i: usize) -> usize {
        if i <= self.order() {
            self.level(i).m()
        } else if let Some(l) = self.last() {
            (l.e * l.f()) as usize * l.m()
        } else {
            self.f0() as usize
        }
    }

    /// Optimal when `deg φ_1 < … < deg φ_r`.
    pub fn is_optimal(&self) -> bool {
        self.levels.windows(2).all(|w| w[0].m() < w[1].m())
    }

    /// The type made of the first `k` levels.
    pub fn truncate(&self, k: usize) -> OMType {
        OMType {
            ctx: self.ctx.clone(),
            psi0: self.psi0.clone(),
            fields: self.fields[..k + 2].to_vec(),
            levels: self.levels[..k].to_vec(),
        }
    }

    /// Appends the level `(φ; -h/e, ψ)`.
    ///
    /// `φ` must be a representative of this type: monic of degree
    /// `e_r f_r m_r` (or `f_0` at order 0) whose residual polynomial of order
    /// `r` is `ψ_r` up to a unit. `ψ` must be monic irreducible over
    /// `F_{r+1}` and different from `y`.
    pub fn extend(&self, phi: &IntPoly, h: i64, e: i64, psi: &FFPoly) -> Result<OMType> {
        let r = self.order();
        if !phi.is_monic() {
            return Err(Error::NotMonic);
        }
        if phi.degree() != Some(self.m(r + 1)) {
            return Err(Error::InvalidType(format!(
                "representative has degree {:?}, expected {}",
                phi.degree(),
                self.m(r + 1)
            )));
        }
        if h <= 0 || e <= 0 || h.gcd(&e) != 1 {
            return Err(Error::InvalidType(format!("slope -{h}/{e} is not negative in lowest terms")));
        }
        let k = self.field(r + 1);
        if psi.degree().unwrap_or(0) == 0 || !k.poly_is_monic(psi) {
            return Err(Error::InvalidType("ψ must be monic of positive degree".into()));
        }
        if k.is_zero(&psi.coeffs()[0]) {
            return Err(Error::InvalidType("ψ = y is not allowed".into()));
        }
        self.check_representative(phi)?;
        let next = tower_extend(k, psi)?;
        let big_v =
            valuation::vi_raw(self, r + 1, phi).ok_or_else(|| Error::InvalidType("representative is zero".into()))?;
        let mut t = self.clone();
        t.levels.push(TypeLevel { phi: phi.clone(), h, e, psi: psi.clone(), big_v, ell: inverse_mod(h, e) });
        t.fields.push(next);
        Ok(t)
    }

    /// Replaces the last level, whose `e·f` must be 1, by `(φ; -h/e, ψ)` with
    /// a strictly steeper slope.
    pub fn refine(&self, phi: &IntPoly, h: i64, e: i64, psi: &FFPoly) -> Result<OMType> {
        let r = self.order();
        let last = self.last().ok_or_else(|| Error::InvalidType("order-0 types cannot be refined".into()))?;
        if last.e * last.f() != 1 {
            return Err(Error::InvalidType("refinement needs e·f = 1 at the last level".into()));
        }
        if h * last.e <= last.h * e {
            return Err(Error::InvalidType(format!(
                "refined slope -{h}/{e} is not steeper than -{}/{}",
                last.h, last.e
            )));
        }
        if phi.degree() != Some(last.m()) {
            return Err(Error::InvalidType("refined φ must keep the degree".into()));
        }
        self.check_representative(phi)?;
        self.truncate(r - 1).extend(phi, h, e, psi)
    }

    /// Fails unless `φ` has the polygon and residual of a representative.
    pub(crate) fn check_representative(&self, phi: &IntPoly) -> Result<()> {
        match self.last() {
            None => {
                let red = r0(phi, &self.ctx)?;
                if red != self.psi0 {
                    return Err(Error::InvalidType("φ_1 does not reduce to ψ_0".into()));
                }
            }
            Some(l) => {
                let r = self.order();
                let res = residual_on_line(self, r, &l.phi, l.big_v, phi, l.h, l.e)?;
                let width = (l.e * l.f()) as usize;
                let k = self.field(r);
                if res.s0 != 0 || res.s1 != width || k.poly_monic(&res.poly) != l.psi {
                    return Err(Error::InvalidType(format!("φ = {phi} is not a representative of the last level")));
                }
            }
        }
        Ok(())
    }

    /// `ord_{ψ_r}(R_r(g))`, the multiplicity with which the type divides `g`.
    pub fn ord(&self, g: &IntPoly) -> Result<usize> {
        if g.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        match self.last() {
            None => ord_factor(self.field(0), &r0(g, &self.ctx)?, &self.psi0),
            Some(l) => {
                let r = self.order();
                let res = residual_on_line(self, r, &l.phi, l.big_v, g, l.h, l.e)?;
                ord_factor(self.field(r), &res.poly, &l.psi)
            }
        }
    }

    /// The last residual factor divides the residual polynomial of `g`.
    pub fn divides(&self, g: &IntPoly) -> Result<bool> {
        Ok(self.ord(g)? >= 1)
    }

    /// The type singles out exactly one irreducible factor of `g`.
    pub fn is_complete(&self, g: &IntPoly) -> Result<bool> {
        Ok(self.ord(g)? == 1)
    }

    /// `Π e_i`.
    pub fn e_total(&self) -> i64 {
        self.levels.iter().map(|l| l.e).product()
    }

    /// `f_0 · Π f_i`.
    pub fn f_total(&self) -> i64 {
        self.f0() * self.levels.iter().map(TypeLevel::f).product::<i64>()
    }

    /// Short human-readable summary, e.g. `(x; -1/1, y^2 + 1)`.
    pub fn describe(&self) -> String {
        let k0 = self.field(0);
        let mut s = format!("[{}]", k0.fmt_poly(&self.psi0, "y"));
        for (i, l) in self.levels.iter().enumerate() {
            let k = self.field(i + 1);
            s.push_str(&format!(" ({}; -{}/{}, {})", l.phi, l.h, l.e, k.fmt_poly(&l.psi, "y")));
        }
        s
    }
}
