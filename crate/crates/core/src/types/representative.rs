use std::hash::{DefaultHasher, Hash, Hasher};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{symmetric_mod, IntPoly};
use crate::error::{internal, Error, Result};
use crate::ff::{FFElem, FFPoly};
use crate::types::OMType;

fn int_lift(c: &FFElem, p: &BigInt) -> BigInt {
    match c {
        FFElem::Prime(x) => symmetric_mod(&BigInt::from(*x), p),
        FFElem::Ext(_) => unreachable!("prime-field coefficient expected"),
    }
}

fn lift_prime_poly(a: &FFPoly, p: &BigInt) -> IntPoly {
    IntPoly::new(a.coeffs().iter().map(|c| int_lift(c, p)).collect())
}

/// Random multiple of `p` of degree below `m`, reproducible from the seed and
/// the lifting target. Seed 0 means no perturbation.
fn perturbation(t: &OMType, seed: u64, key: impl Hash, m: usize) -> IntPoly {
    if seed == 0 {
        return IntPoly::zero();
    }
    let mut hasher = DefaultHasher::new();
    (seed, key).hash(&mut hasher);
    let mut rng = ChaCha8Rng::seed_from_u64(hasher.finish());
    let p = t.ctx().p_u64();
    let coeffs = (0..m).map(|_| BigInt::from(rng.gen_range(0..p))).collect();
    IntPoly::new(coeffs).scale(t.ctx().p())
}

/// A polynomial `A` of degree below `m_i` with `v_i(A) = v` and
/// `ρ_i(A) = c`, for nonzero `c ∈ F_i`.
///
/// At level 1 this is `p^v` times an integer lift of `c`. Above, `A` is a
/// combination `Σ A_j φ_{i-1}^{s + j e_{i-1}}` whose points all lie on the
/// line of slope `λ_{i-1}` through value `v`, with each `A_j` a lift one level
/// down. Values that no polynomial of degree below `m_i` attains are an error.
pub fn lift(t: &OMType, i: usize, v: i64, c: &FFElem, seed: u64) -> Result<IntPoly> {
    let k = t.field(i);
    if k.is_zero(c) {
        return Ok(IntPoly::zero());
    }
    if v < 0 {
        return Err(internal!("cannot lift a residue to negative value {v} at level {i}"));
    }
    if i == 1 {
        let p = t.ctx().p();
        let base = lift_prime_poly(&k.to_parent_poly(c), p);
        let noise = perturbation(t, seed, (i, v, k.encode(c)), t.m(1));
        return Ok((&base + &noise).scale(&t.ctx().p_pow(v as u64)));
    }
    let l = t.level(i - 1);
    let (h, e, big_v, ell) = (l.h(), l.e(), l.big_v(), l.ell());
    let s = (ell * v).rem_euclid(e);
    let twist = (s - ell * v) / e;
    let z = k.generator();
    let zk = k.pow_i64(&z, -twist).ok_or_else(|| internal!("generator z_{} is zero", i - 1))?;
    let d = k.to_parent_poly(&k.mul(c, &zk));
    let mut acc = IntPoly::zero();
    for (j, dj) in d.coeffs().iter().enumerate() {
        if k.parent().unwrap().is_zero(dj) {
            continue;
        }
        let abscissa = s + j as i64 * e;
        let num = v - abscissa * (e * big_v + h);
        if num % e != 0 {
            return Err(internal!("non-integral digit value while lifting at level {i}"));
        }
        let a = lift(t, i - 1, num / e, dj, seed)?;
        acc = &acc + &(&a * &l.phi().pow(abscissa as usize));
    }
    Ok(acc)
}

/// A representative of the type: a monic polynomial of degree
/// `e_r f_r m_r` whose order-`r` polygon is one-sided of slope `λ_r` and whose
/// residual polynomial is `ψ_r`. At order 0 it is a monic lift of `ψ_0`.
///
/// The result is checked against its defining properties before it is
/// returned; a failed check is an internal error.
pub fn make_representative(t: &OMType, seed: u64) -> Result<IntPoly> {
    let phi = match t.last() {
        None => {
            let p = t.ctx().p();
            let base = lift_prime_poly(t.psi0(), p);
            let noise = perturbation(t, seed, ("psi0", t.field(0).poly_key(t.psi0())), t.m(1));
            &base + &noise
        }
        Some(l) => {
            let r = t.order();
            let (h, e, f, big_v) = (l.h(), l.e(), l.f(), l.big_v());
            let mut acc = l.phi().pow((e * f) as usize);
            for (j, b) in l.psi().coeffs().iter().enumerate().take(f as usize) {
                let a = lift(t, r, (f - j as i64) * (e * big_v + h), b, seed)?;
                acc = &acc + &(&a * &l.phi().pow(j * e as usize));
            }
            acc
        }
    };
    if !phi.is_monic() || phi.degree() != Some(t.m(t.order() + 1)) {
        return Err(internal!("representative {phi} has the wrong shape"));
    }
    t.check_representative(&phi).map_err(|err| match err {
        Error::InvalidType(msg) => internal!("representative self-check failed: {msg}"),
        other => other,
    })?;
    Ok(phi)
}
