use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ff::{FFPoly, TowerField};

/// Below this cardinality degree-1 factors are found by trying every element.
const ENUMERATION_LIMIT: u64 = 1 << 12;

/// Factorization into monic irreducibles with multiplicities, sorted by
/// [`TowerField::poly_key`].
///
/// Squarefree decomposition, then distinct-degree and equal-degree splitting.
/// The seed only drives the random splitter; the result does not depend on it.
pub fn ff_factor(k: &TowerField, h: &FFPoly, seed: u64) -> Result<Vec<(FFPoly, usize)>> {
    if h.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let h = k.poly_monic(h);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for (g, m) in squarefree(k, &h) {
        for (g2, d) in distinct_degree(k, &g) {
            for irr in equal_degree(k, &g2, d, &mut rng) {
                out.push((irr, m));
            }
        }
    }
    out.sort_by_key(|(g, _)| k.poly_key(g));
    Ok(out)
}

/// Largest `k` with `ψ^k | h`.
pub fn ord_factor(k: &TowerField, h: &FFPoly, psi: &FFPoly) -> Result<usize> {
    if h.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if psi.degree().unwrap_or(0) == 0 {
        return Err(Error::ConstantPolynomial);
    }
    let mut n = 0;
    let mut cur = h.clone();
    loop {
        let (q, r) = k.poly_divrem(&cur, psi);
        if !r.is_zero() {
            return Ok(n);
        }
        cur = q;
        n += 1;
    }
}

/// Ben-Or test: no factor of degree `≤ n/2`.
pub fn is_irreducible(k: &TowerField, h: &FFPoly) -> bool {
    let n = match h.degree() {
        Some(n) if n >= 1 => n,
        _ => return false,
    };
    let q = k.cardinality();
    let x = k.poly_x();
    let mut xp = k.poly_rem(&x, h);
    for _ in 1..=n / 2 {
        xp = k.poly_powmod(&xp, &q, h);
        if k.poly_gcd(h, &k.poly_sub(&xp, &x)).degree() != Some(0) {
            return false;
        }
    }
    true
}

/// The level `F[y]/(ψ)` above `base`, after checking that `ψ` is monic and
/// irreducible.
pub fn tower_extend(base: &Arc<TowerField>, psi: &FFPoly) -> Result<Arc<TowerField>> {
    match psi.degree() {
        None => return Err(Error::ZeroPolynomial),
        Some(0) => return Err(Error::ConstantPolynomial),
        _ => {}
    }
    if !base.poly_is_monic(psi) {
        return Err(Error::NotMonic);
    }
    if !is_irreducible(base, psi) {
        return Err(Error::Reducible(base.fmt_poly(psi, "y")));
    }
    Ok(TowerField::extend_unchecked(base, psi.clone()))
}

fn exact_div(k: &TowerField, a: &FFPoly, b: &FFPoly) -> FFPoly {
    let (q, r) = k.poly_divrem(a, b);
    debug_assert!(r.is_zero());
    q
}

fn is_unit(a: &FFPoly) -> bool {
    a.degree() == Some(0)
}

fn squarefree(k: &TowerField, f: &FFPoly) -> Vec<(FFPoly, usize)> {
    if f.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut c = k.poly_gcd(f, &k.poly_derivative(f));
    let mut w = exact_div(k, f, &c);
    let mut i = 1;
    while !is_unit(&w) {
        let y = k.poly_gcd(&w, &c);
        let fac = exact_div(k, &w, &y);
        if !is_unit(&fac) {
            out.push((fac, i));
        }
        c = exact_div(k, &c, &y);
        w = y;
        i += 1;
    }
    if !is_unit(&c) {
        let p = k.characteristic() as usize;
        let root = pth_root_poly(k, &c);
        out.extend(squarefree(k, &root).into_iter().map(|(g, e)| (g, e * p)));
    }
    out
}

/// `g` with `g^p = a`, for `a` whose derivative vanishes.
fn pth_root_poly(k: &TowerField, a: &FFPoly) -> FFPoly {
    let p = k.characteristic() as usize;
    FFPoly::new(a.coeffs().iter().step_by(p).map(|c| k.pth_root(c)).collect())
}

fn distinct_degree(k: &TowerField, f: &FFPoly) -> Vec<(FFPoly, usize)> {
    let q = k.cardinality();
    let x = k.poly_x();
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = k.poly_rem(&x, &rest);
    let mut i = 1;
    while rest.degree().unwrap() >= 2 * i {
        h = k.poly_powmod(&h, &q, &rest);
        let g = k.poly_gcd(&rest, &k.poly_sub(&h, &x));
        if !is_unit(&g) {
            rest = exact_div(k, &rest, &g);
            h = k.poly_rem(&h, &rest);
            out.push((g, i));
        }
        i += 1;
    }
    if !is_unit(&rest) {
        let d = rest.degree().unwrap();
        out.push((rest, d));
    }
    out
}

fn equal_degree(k: &TowerField, f: &FFPoly, d: usize, rng: &mut ChaCha8Rng) -> Vec<FFPoly> {
    let n = f.degree().unwrap();
    if n == d {
        return vec![f.clone()];
    }
    let q = k.cardinality();
    if d == 1 && q <= BigUint::from(ENUMERATION_LIMIT) {
        return k.elements().into_iter().filter(|e| k.is_zero(&k.poly_eval(f, e))).map(|e| k.linear(&e)).collect();
    }
    let odd = k.characteristic() != 2;
    loop {
        let a = FFPoly::new((0..n).map(|_| k.random(rng)).collect());
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = if odd {
            let e = (num_traits::pow(q.clone(), d) - BigUint::one()) / BigUint::from(2u8);
            k.poly_sub(&k.poly_powmod(&a, &e, f), &k.poly_one())
        } else {
            // Absolute trace down to F_2 of the degree-d residue algebra.
            let mut t = k.poly_rem(&a, f);
            let mut acc = t.clone();
            for _ in 1..k.abs_degree() * d {
                t = k.poly_rem(&k.poly_mul(&t, &t), f);
                acc = k.poly_add(&acc, &t);
            }
            acc
        };
        let g = k.poly_gcd(f, &b);
        let dg = g.degree().unwrap_or(0);
        if dg > 0 && dg < n {
            let other = exact_div(k, f, &g);
            let mut out = equal_degree(k, &g, d, rng);
            out.extend(equal_degree(k, &other, d, rng));
            return out;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::FFElem;
    use proptest::prelude::*;

    fn fp(p: u64) -> Arc<TowerField> {
        TowerField::prime(p)
    }

    /// Independent irreducibility check: no factor of degree ≤ n/2, found by
    /// trying every monic polynomial of that degree.
    fn brute_irreducible(k: &TowerField, h: &FFPoly) -> bool {
        let n = h.degree().unwrap();
        let elems = k.elements();
        for d in 1..=n / 2 {
            let mut tails: Vec<Vec<FFElem>> = vec![vec![]];
            for _ in 0..d {
                tails = tails
                    .into_iter()
                    .flat_map(|t| {
                        elems.iter().map(move |e| {
                            let mut t = t.clone();
                            t.push(e.clone());
                            t
                        })
                    })
                    .collect();
            }
            for mut t in tails {
                t.push(k.one());
                let g = FFPoly::new(t);
                if k.poly_rem(h, &g).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    fn product(k: &TowerField, fs: &[(FFPoly, usize)]) -> FFPoly {
        fs.iter().fold(k.poly_one(), |acc, (g, m)| k.poly_mul(&acc, &k.poly_pow(g, *m)))
    }

    #[test]
    fn y2_plus_1_over_f3_is_irreducible() {
        let k = fp(3);
        let h = k.poly_from_ints(&[1, 0, 1]);
        assert_eq!(ff_factor(&k, &h, 0).unwrap(), vec![(h.clone(), 1)]);
    }

    #[test]
    fn y2_plus_1_over_f5_splits() {
        let k = fp(5);
        let h = k.poly_from_ints(&[1, 0, 1]);
        let got = ff_factor(&k, &h, 0).unwrap();
        // Roots 2 and 3; y + 2 sorts before y + 3.
        assert_eq!(got, vec![(k.poly_from_ints(&[-3, 1]), 1), (k.poly_from_ints(&[-2, 1]), 1)]);
    }

    #[test]
    fn square_of_y() {
        for p in [2, 3, 7] {
            let k = fp(p);
            let got = ff_factor(&k, &k.poly_from_ints(&[0, 0, 1]), 1).unwrap();
            assert_eq!(got, vec![(k.poly_x(), 2)]);
        }
    }

    #[test]
    fn zero_rejected() {
        let k = fp(3);
        assert_eq!(ff_factor(&k, &FFPoly::zero(), 0), Err(Error::ZeroPolynomial));
        assert_eq!(ord_factor(&k, &FFPoly::zero(), &k.poly_x()), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn multiplicities() {
        let k3 = fp(3);
        let s = k3.poly_from_ints(&[1, 0, 1]);
        assert_eq!(ord_factor(&k3, &s, &s).unwrap(), 1);
        assert_eq!(ord_factor(&k3, &k3.poly_from_ints(&[1, 1]), &s).unwrap(), 0);
        let k5 = fp(5);
        let a = k5.poly_from_ints(&[-2, 1]);
        let h = k5.poly_mul(&k5.poly_pow(&a, 2), &k5.poly_from_ints(&[-3, 1]));
        assert_eq!(ord_factor(&k5, &h, &a).unwrap(), 2);
    }

    #[test]
    fn inseparable_input_char_3() {
        // (y^3 - y - 1)^3 has zero derivative over F_3.
        let k = fp(3);
        let g = k.poly_from_ints(&[-1, -1, 0, 1]);
        let h = k.poly_pow(&g, 3);
        assert_eq!(ff_factor(&k, &h, 7).unwrap(), vec![(g, 3)]);
    }

    #[test]
    fn extension_f9() {
        let k = fp(3);
        let f9 = tower_extend(&k, &k.poly_from_ints(&[1, 0, 1])).unwrap();
        assert_eq!(f9.cardinality(), BigUint::from(9u8));
        let z = f9.generator();
        assert_eq!(f9.mul(&z, &z), f9.from_int(-1));
        assert_eq!(f9.elements().len(), 9);
        // Every nonzero element is invertible.
        for e in f9.elements().iter().filter(|e| !f9.is_zero(e)) {
            assert!(f9.is_one(&f9.mul(e, &f9.inv(e).unwrap())));
        }
    }

    #[test]
    fn degree_one_extension() {
        let k = fp(5);
        let f = tower_extend(&k, &k.poly_from_ints(&[-2, 1])).unwrap();
        assert_eq!(f.cardinality(), BigUint::from(5u8));
        assert_eq!(f.generator(), f.from_int(2));
    }

    #[test]
    fn reducible_modulus_rejected() {
        let k = fp(5);
        assert!(matches!(tower_extend(&k, &k.poly_from_ints(&[1, 0, 1])), Err(Error::Reducible(_))));
        assert_eq!(tower_extend(&k, &k.poly_from_ints(&[1, 2])), Err(Error::NotMonic));
    }

    #[test]
    fn cubic_over_f9() {
        let k = fp(3);
        let f9 = tower_extend(&k, &k.poly_from_ints(&[1, 0, 1])).unwrap();
        let z = f9.generator();
        let psi = FFPoly::new(vec![f9.one(), z.clone(), f9.zero(), f9.one()]);
        let expected = brute_irreducible(&f9, &psi);
        assert_eq!(is_irreducible(&f9, &psi), expected);
        assert_eq!(tower_extend(&f9, &psi).is_ok(), expected);
        // Some cubic y^3 + a y + b over F_9 must be irreducible; check agreement
        // on all of them.
        let elems = f9.elements();
        let mut seen_irreducible = false;
        for a in &elems {
            for b in &elems {
                let g = FFPoly::new(vec![b.clone(), a.clone(), f9.zero(), f9.one()]);
                let bi = brute_irreducible(&f9, &g);
                assert_eq!(is_irreducible(&f9, &g), bi);
                seen_irreducible |= bi;
            }
        }
        assert!(seen_irreducible);
    }

    #[test]
    fn factor_over_f9_level() {
        let k = fp(3);
        let f9 = tower_extend(&k, &k.poly_from_ints(&[1, 0, 1])).unwrap();
        // y^2 + 1 splits over F_9 as (y - z)(y + z).
        let h = f9.poly_embed(&k.poly_from_ints(&[1, 0, 1]), 0);
        let got = ff_factor(&f9, &h, 3).unwrap();
        assert_eq!(got.len(), 2);
        assert_eq!(product(&f9, &got), h);
        // Degree-2 irreducibles over F_9 show up in y^81 - y.
        let mut big = vec![f9.zero(); 82];
        big[81] = f9.one();
        big[1] = f9.from_int(-1);
        let h = FFPoly::new(big);
        let got = ff_factor(&f9, &h, 11).unwrap();
        assert_eq!(got.iter().filter(|(g, _)| g.degree() == Some(1)).count(), 9);
        assert_eq!(got.iter().filter(|(g, _)| g.degree() == Some(2)).count(), 36);
        assert_eq!(product(&f9, &got), h);
    }

    #[test]
    fn large_prime_splitting() {
        // Beyond the enumeration limit the random splitter is used.
        let k = fp(1_000_003);
        let mut h = k.poly_one();
        for r in [5, 17, 999_999, 123_456] {
            h = k.poly_mul(&h, &k.poly_from_ints(&[-r, 1]));
        }
        let got = ff_factor(&k, &h, 42).unwrap();
        assert_eq!(got.len(), 4);
        assert!(got.iter().all(|(g, m)| g.degree() == Some(1) && *m == 1));
        assert_eq!(product(&k, &got), h);
    }

    #[test]
    fn char_two_splitting() {
        let k = fp(2);
        let f4 = tower_extend(&k, &k.poly_from_ints(&[1, 1, 1])).unwrap();
        let f16 = tower_extend(&f4, &FFPoly::new(vec![f4.generator(), f4.one(), f4.one()])).unwrap();
        let mut big = vec![f16.zero(); 257];
        big[256] = f16.one();
        big[1] = f16.one();
        let h = FFPoly::new(big);
        let got = ff_factor(&f16, &h, 5).unwrap();
        assert_eq!(got.iter().filter(|(g, _)| g.degree() == Some(1)).count(), 16);
        assert_eq!(got.iter().filter(|(g, _)| g.degree() == Some(2)).count(), 120);
        assert_eq!(product(&f16, &got), h);
    }

    fn arb_poly(p: u64, max_len: usize) -> impl Strategy<Value = Vec<u64>> {
        prop::collection::vec(0..p, 1..max_len)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn factor_remultiplies(c in arb_poly(5, 8), seed in any::<u64>()) {
            let k = fp(5);
            let h = FFPoly::new(c.iter().map(|&x| FFElem::Prime(x)).collect());
            prop_assume!(!h.is_zero());
            let got = ff_factor(&k, &h, seed).unwrap();
            prop_assert_eq!(product(&k, &got), k.poly_monic(&h));
            for (g, _) in &got {
                prop_assert!(k.poly_is_monic(g));
                prop_assert!(brute_irreducible(&k, g));
            }
            for w in got.windows(2) {
                prop_assert!(k.poly_key(&w[0].0) < k.poly_key(&w[1].0));
            }
        }

        #[test]
        fn factor_independent_of_seed(c in arb_poly(3, 9), s1 in any::<u64>(), s2 in any::<u64>()) {
            let k = fp(3);
            let h = FFPoly::new(c.iter().map(|&x| FFElem::Prime(x)).collect());
            prop_assume!(!h.is_zero());
            prop_assert_eq!(ff_factor(&k, &h, s1).unwrap(), ff_factor(&k, &h, s2).unwrap());
        }

        #[test]
        fn factor_over_f25(c in prop::collection::vec((0u64..5, 0u64..5), 1..5), seed in any::<u64>()) {
            let k = fp(5);
            let f25 = tower_extend(&k, &k.poly_from_ints(&[2, 0, 1])).unwrap();
            let h = FFPoly::new(c.iter().map(|&(a, b)| FFElem::Ext(vec![FFElem::Prime(a), FFElem::Prime(b)])).collect());
            prop_assume!(!h.is_zero());
            let got = ff_factor(&f25, &h, seed).unwrap();
            prop_assert_eq!(product(&f25, &got), f25.poly_monic(&h));
            for (g, _) in &got {
                prop_assert!(brute_irreducible(&f25, g));
            }
        }

        #[test]
        fn frobenius_is_a_ring_map(a in (0u64..3, 0u64..3, 0u64..3, 0u64..3), b in (0u64..3, 0u64..3, 0u64..3, 0u64..3)) {
            let k = fp(3);
            let f9 = tower_extend(&k, &k.poly_from_ints(&[1, 0, 1])).unwrap();
            let z9 = f9.generator();
            let psi = FFPoly::new(vec![f9.add(&z9, &f9.one()), f9.zero(), f9.one()]);
            prop_assume!(is_irreducible(&f9, &psi));
            let f81 = tower_extend(&f9, &psi).unwrap();
            let mk = |t: (u64, u64, u64, u64)| f81.decode(&[t.0, t.1, t.2, t.3]).unwrap();
            let (x, y) = (mk(a), mk(b));
            prop_assert_eq!(f81.frobenius(&f81.add(&x, &y)), f81.add(&f81.frobenius(&x), &f81.frobenius(&y)));
            prop_assert_eq!(f81.frobenius(&f81.mul(&x, &y)), f81.mul(&f81.frobenius(&x), &f81.frobenius(&y)));
            prop_assert!(f81.is_zero(&f81.poly_eval(&psi_lifted(&f81, &psi), &f81.generator())));
        }
    }

    fn psi_lifted(k: &TowerField, psi: &FFPoly) -> FFPoly {
        k.poly_embed(psi, k.level() - 1)
    }
}
