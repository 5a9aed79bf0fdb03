//! Ground truth that does not go through types: resultant valuations,
//! product congruences and an order-one recount of factor degrees.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::arith::{resultant, symmetric_mod, IntPoly, RatVal, ValuedContext};
use crate::error::{Error, Result};
use crate::ff::{ff_factor, tower_extend, FFElem, FFPoly, TowerField};

/// `v(g(θ))` for a root `θ` of an irreducible `F`, as
/// `v_p(Res(F, g)) / deg F`. The caller vouches for the irreducibility of
/// `F`; a common factor is rejected.
pub fn v_theta(g: &IntPoly, big_f: &IntPoly, ctx: &ValuedContext) -> Result<RatVal> {
    if g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let n = big_f.degree().filter(|&d| d > 0).ok_or(Error::ConstantPolynomial)?;
    let res = resultant(big_f, g)?;
    let v = ctx.val(&res).ok_or_else(|| Error::InvalidType("g and F share a factor".into()))?;
    Ok(RatVal::Finite(BigRational::new(BigInt::from(v), BigInt::from(n))))
}

/// True when every coefficient of `f - Π parts` is divisible by `p^n`.
pub fn check_product_congruence(f: &IntPoly, parts: &[IntPoly], ctx: &ValuedContext, n: u32) -> bool {
    let prod = parts.iter().fold(IntPoly::one(), |acc, g| &acc * g);
    let modulus = ctx.p_pow(n as u64);
    (f - &prod).coeffs().iter().all(|c| c.is_multiple_of(&modulus))
}

/// One row of the order-one degree table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OreEntry {
    /// Irreducible factor of `f mod p`.
    pub psi0: String,
    /// `(h, e)` of the side; `None` when `ψ_0` is a simple factor and no
    /// polygon is needed, `Some((0, 0))` marks an exact factor.
    pub slope: Option<(i64, i64)>,
    /// Irreducible factor of the side's residual polynomial.
    pub residual_factor: String,
    /// Total degree of the p-adic factors attached to this row.
    pub weight: usize,
}

fn content_val(a: &IntPoly, p: &BigInt) -> Option<i64> {
    if a.is_zero() {
        return None;
    }
    let mut v = 0i64;
    let mut q = a.clone();
    while let Some(next) = q.div_exact_scalar(p) {
        q = next;
        v += 1;
    }
    Some(v)
}

/// Lower hull of finite points by gift wrapping: from each vertex take the
/// point of least slope, the farthest one on ties.
fn hull(points: &[(usize, i64)]) -> Vec<(usize, i64)> {
    let mut out = vec![points[0]];
    let mut cur = points[0];
    loop {
        let mut best: Option<((usize, i64), BigRational)> = None;
        for &q in points.iter().filter(|q| q.0 > cur.0) {
            let s = BigRational::new(BigInt::from(q.1 - cur.1), BigInt::from((q.0 - cur.0) as i64));
            if best.as_ref().is_none_or(|(_, b)| s <= *b) {
                best = Some((q, s));
            }
        }
        match best {
            Some((q, _)) => {
                out.push(q);
                cur = q;
            }
            None => return out,
        }
    }
}

fn reduce(a: &IntPoly, p: &BigInt, k0: &TowerField) -> FFPoly {
    k0.poly_from_ints(&a.coeffs().iter().map(|c| c.mod_floor(p).to_i64().expect("residue fits")).collect::<Vec<_>>())
}

/// Degree table read from order-one polygons only: for each `ψ_0 | f mod p`,
/// each side of the polygon with respect to a lift of `ψ_0` and each
/// irreducible factor `ψ` of the side's residual polynomial, the weight
/// `e · deg ψ · deg ψ_0 · mult`. The weights add up to `deg f`.
pub fn ore_shape(f: &IntPoly, ctx: &ValuedContext) -> Result<Vec<OreEntry>> {
    let p = ctx.p();
    let k0 = TowerField::prime(ctx.p_u64());
    let mut out = Vec::new();
    for (psi0, mult0) in ff_factor(&k0, &reduce(f, p, &k0), 0)? {
        let name = k0.fmt_poly(&psi0, "y");
        let deg0 = psi0.degree().unwrap();
        if mult0 == 1 {
            out.push(OreEntry { psi0: name, slope: None, residual_factor: String::new(), weight: deg0 });
            continue;
        }
        let phi = IntPoly::new(
            psi0.coeffs()
                .iter()
                .map(|c| match c {
                    FFElem::Prime(x) => symmetric_mod(&BigInt::from(*x), p),
                    FFElem::Ext(_) => unreachable!(),
                })
                .collect(),
        );
        let k1 = tower_extend(&k0, &psi0)?;
        let mut digits = Vec::new();
        let mut rest = f.clone();
        while !rest.is_zero() {
            let (q, r) = rest.divrem_monic(&phi)?;
            digits.push(r);
            rest = q;
        }
        let mut points: Vec<(usize, i64)> =
            digits.iter().enumerate().filter_map(|(s, a)| content_val(a, p).map(|v| (s, v))).collect();
        if digits[0].is_zero() {
            out.push(OreEntry {
                psi0: name.clone(),
                slope: Some((0, 0)),
                residual_factor: String::new(),
                weight: deg0,
            });
        }
        points.truncate(points.iter().position(|q| q.1 == 0).map_or(points.len(), |i| i + 1));
        for w in hull(&points).windows(2) {
            let (dx, dy) = ((w[1].0 - w[0].0) as i64, w[0].1 - w[1].1);
            if dy <= 0 {
                continue;
            }
            let g = dx.gcd(&dy);
            let (h, e) = (dy / g, dx / g);
            let coeffs: Vec<FFElem> = (0..=(g as usize))
                .map(|j| {
                    let s = w[0].0 + j * e as usize;
                    let a = &digits[s];
                    let y = w[0].1 - j as i64 * h;
                    match content_val(a, p) {
                        Some(v) if v == y => {
                            let unit = a.div_exact_scalar(&ctx.p_pow(y as u64)).unwrap();
                            k1.from_parent_poly(&k0.poly_rem(&reduce(&unit, p, &k0), &psi0))
                        }
                        _ => k1.zero(),
                    }
                })
                .collect();
            let res = FFPoly::new(coeffs);
            for (psi, m) in ff_factor(&k1, &res, 0)? {
                out.push(OreEntry {
                    psi0: name.clone(),
                    slope: Some((h, e)),
                    residual_factor: k1.fmt_poly(&psi, "y"),
                    weight: e as usize * psi.degree().unwrap() * deg0 * m,
                });
            }
        }
    }
    if out.iter().map(|e| e.weight).sum::<usize>() != f.degree().unwrap_or(0) {
        return Err(crate::error::internal!("order-one table does not account for every root"));
    }
    Ok(out)
}
