use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::arith::{phi_expand, IntPoly, RatVal, ValuedContext};
use crate::error::{internal, Error, Result};
use crate::ff::{FFElem, FFPoly};
use crate::polygon::{lower_hull, principal_part, LatticePoint, NewtonPolygon, Side};
use crate::types::OMType;

/// Reduction modulo `p` of `g / p^{v_1(g)}`.
pub fn r0(g: &IntPoly, ctx: &ValuedContext) -> Result<FFPoly> {
    let v = g.content_val(ctx.p()).ok_or(Error::ZeroPolynomial)?;
    let unit = g.div_exact_scalar(&ctx.p_pow(v)).expect("content divides every coefficient");
    Ok(reduce_mod_p(&unit, ctx))
}

pub(crate) fn reduce_mod_p(g: &IntPoly, ctx: &ValuedContext) -> FFPoly {
    FFPoly::new(
        g.coeffs().iter().map(|c| FFElem::Prime(c.mod_floor(ctx.p()).to_u64().expect("residue fits in u64"))).collect(),
    )
}

/// `(v_i(φ_i), e_1⋯e_{i-1})`: the cached value of the level polynomial and
/// the factor by which `v_i` rescales `v_p` on constants.
///
/// At `i = r + 1` the first entry is `v_{r+1}` of any representative,
/// `e_r f_r (e_r v_r(φ_r) + h_r)`.
pub fn valuation_data(t: &OMType, i: usize) -> Result<(i64, i64)> {
    let r = t.order();
    if i == 0 || i > r + 1 {
        return Err(Error::OutOfRange(format!("level {i} outside 1..={}", r + 1)));
    }
    let scale = t.levels()[..i - 1].iter().map(|l| l.e()).product();
    let big_v = if i <= r {
        t.level(i).big_v()
    } else {
        match t.last() {
            None => 0,
            Some(l) => l.e() * l.f() * (l.e() * l.big_v() + l.h()),
        }
    };
    Ok((big_v, scale))
}

/// `v_i(g)`, `None` for zero.
pub(crate) fn vi_raw(t: &OMType, i: usize, g: &IntPoly) -> Option<i64> {
    if i == 1 {
        return g.content_val(t.ctx().p()).map(|v| v as i64);
    }
    let l = t.level(i - 1);
    let exp = phi_expand(g, l.phi()).ok()?;
    exp.digits()
        .iter()
        .enumerate()
        .filter_map(|(s, a)| vi_raw(t, i - 1, a).map(|v| l.e() * (v + s as i64 * l.big_v()) + s as i64 * l.h()))
        .min()
}

/// `v_i(g)` for `1 ≤ i ≤ order + 1`.
pub fn vi_of(g: &IntPoly, t: &OMType, i: usize) -> Result<i64> {
    if i == 0 || i > t.order() + 1 {
        return Err(Error::OutOfRange(format!("level {i} outside 1..={}", t.order() + 1)));
    }
    vi_raw(t, i, g).ok_or(Error::ZeroPolynomial)
}

/// `(v_i(a), ρ_i(a))` for a nonzero `a` of degree below `m_i`; `ρ_i(a)` lies
/// in `F_i`.
///
/// `ρ_1(a)` is the reduction of `a/p^{v_1(a)}` modulo `(p, ψ_0)`. Above,
/// `ρ_{i+1}(a) = z_i^k · R_i(a)(z_i)` where `R_i(a)` is read from the first
/// contact abscissa `s_0` of the slope `λ_i` line and `k = (s_0 - ℓ_i v)/e_i`.
/// The twist by `z_i^k` makes `ρ` additive on values of equal valuation and
/// multiplicative.
pub(crate) fn initial(t: &OMType, i: usize, a: &IntPoly) -> Result<Option<(i64, FFElem)>> {
    if a.is_zero() {
        return Ok(None);
    }
    if i == 1 {
        let v = a.content_val(t.ctx().p()).unwrap() as i64;
        let red = r0(a, t.ctx())?;
        return Ok(Some((v, t.field(1).from_parent_poly(&red))));
    }
    let l = t.level(i - 1);
    let res = residual_on_line(t, i - 1, l.phi(), l.big_v(), a, l.h(), l.e())?;
    let num = res.s0 as i64 - l.ell() * res.value;
    if num % l.e() != 0 {
        return Err(internal!("twist exponent is not integral at level {i}"));
    }
    let k = t.field(i);
    let z = k.generator();
    let twist = k.pow_i64(&z, num / l.e()).ok_or_else(|| internal!("generator z_{} is zero", i - 1))?;
    Ok(Some((res.value, k.mul(&twist, &k.from_parent_poly(&res.poly)))))
}

/// Residual polynomial of `g` along the lowest line of slope `-h/e` touching
/// its order-`i` point cloud with respect to `φ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineResidual {
    /// First contact abscissa.
    pub s0: usize,
    /// Last contact abscissa.
    pub s1: usize,
    /// `min_s (e·y_s + s·h)`, which is `v_{i+1}(g)` when `φ = φ_i`.
    pub value: i64,
    /// Coefficients over `F_i`, indexed from `s0` in steps of `e`.
    pub poly: FFPoly,
}

/// Computes the residual polynomial of order `i` of `g` with respect to a key
/// polynomial `φ` with `v_i(φ) = big_v`, along the slope `-h/e`.
pub fn residual_on_line(
    t: &OMType,
    i: usize,
    phi: &IntPoly,
    big_v: i64,
    g: &IntPoly,
    h: i64,
    e: i64,
) -> Result<LineResidual> {
    if g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let exp = phi_expand(g, phi)?;
    let mut data = Vec::with_capacity(exp.len());
    for (s, a) in exp.digits().iter().enumerate() {
        if let Some((v, rho)) = initial(t, i, a)? {
            let w = e * (v + s as i64 * big_v) + s as i64 * h;
            data.push((s, w, rho));
        }
    }
    let value = data.iter().map(|d| d.1).min().unwrap();
    let on_line: Vec<&(usize, i64, FFElem)> = data.iter().filter(|d| d.1 == value).collect();
    let s0 = on_line.first().unwrap().0;
    let s1 = on_line.last().unwrap().0;
    if !(s1 - s0).is_multiple_of(e as usize) {
        return Err(internal!("contact points of a slope -{h}/{e} line are not e-spaced"));
    }
    let k = t.field(i);
    let mut coeffs = vec![k.zero(); (s1 - s0) / e as usize + 1];
    for (s, _, rho) in on_line {
        coeffs[(s - s0) / e as usize] = rho.clone();
    }
    Ok(LineResidual { s0, s1, value, poly: FFPoly::new(coeffs) })
}

/// Points `(s, v_i(a_s) + s·v_i(φ))` of the `φ`-adic expansion of `g`; zero
/// digits give infinite ordinates.
pub fn newton_points(t: &OMType, i: usize, phi: &IntPoly, g: &IntPoly) -> Result<Vec<LatticePoint>> {
    if i == 0 || i > t.order() + 1 {
        return Err(Error::OutOfRange(format!("level {i} outside 1..={}", t.order() + 1)));
    }
    if g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let big_v = vi_raw(t, i, phi).ok_or(Error::ZeroPolynomial)?;
    let exp = phi_expand(g, phi)?;
    Ok(exp
        .digits()
        .iter()
        .enumerate()
        .map(|(s, a)| {
            let y = match vi_raw(t, i, a) {
                Some(v) => RatVal::from_int(v + s as i64 * big_v),
                None => RatVal::Infinity,
            };
            LatticePoint::new(s, y)
        })
        .collect())
}

/// `N_i(g)` with respect to the level polynomial `φ_i`, `1 ≤ i ≤ order`.
pub fn newton_i(g: &IntPoly, t: &OMType, i: usize) -> Result<NewtonPolygon> {
    if i == 0 || i > t.order() {
        return Err(Error::OutOfRange(format!("level {i} outside 1..={}", t.order())));
    }
    newton_with(g, t, i, t.level(i).phi())
}

/// The order-`i` polygon of `g` with respect to an arbitrary monic `φ`
/// (a pending representative, or a refined level polynomial).
pub fn newton_with(g: &IntPoly, t: &OMType, i: usize, phi: &IntPoly) -> Result<NewtonPolygon> {
    lower_hull(&newton_points(t, i, phi, g)?)
}

/// `R_i(g)` on a side of the principal part of the order-`i` polygon of `g`
/// with respect to `φ`.
pub fn residual_i(g: &IntPoly, t: &OMType, i: usize, phi: &IntPoly, side: &Side) -> Result<FFPoly> {
    let poly = newton_with(g, t, i, phi)?;
    if !principal_part(&poly).contains(side) {
        return Err(Error::InvalidType("side does not belong to the principal part".into()));
    }
    let big_v = vi_raw(t, i, phi).ok_or(Error::ZeroPolynomial)?;
    let res = residual_on_line(t, i, phi, big_v, g, side.h, side.e)?;
    if res.s0 != side.start.x || res.s1 != side.end.x {
        return Err(internal!("residual contact range disagrees with the side"));
    }
    Ok(res.poly)
}
