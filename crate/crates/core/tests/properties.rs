use okutsu::arith::{v1, IntPoly, RatVal, ValuedContext};
use okutsu::factor_loop::factor_to_precision;
use okutsu::invariants::{frame_of, v_fi};
use okutsu::montes::{certify, montes};
use okutsu::oracle::{check_product_congruence, v_theta};
use proptest::prelude::*;

fn ip(c: &[i64]) -> IntPoly {
    IntPoly::from_i64(c)
}

fn ctx(p: u64) -> ValuedContext {
    ValuedContext::new(p, 40).unwrap()
}

fn arb_poly(max_len: usize, bound: i64) -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(-bound..=bound, 1..=max_len)
        .prop_map(|c| IntPoly::from_i64(&c))
        .prop_filter("nonzero", |g| !g.is_zero())
}

/// Irreducible over the p-adics for an independent reason each.
fn irreducibles() -> Vec<(IntPoly, u64)> {
    vec![
        (ip(&[9, 0, 1]), 3),
        (ip(&[36, 0, 1]), 3),
        (ip(&[3, 0, 1]), 3),
        (ip(&[-3, 0, 0, 0, 0, 1]), 3),
        (ip(&[-5, 0, 0, 1]), 5),
        (ip(&[-27, 0, 0, 0, 1]), 3),
        (&ip(&[2, 1, 1]).pow(3) + &ip(&[3]), 3),
        (ip(&[9, 9, 6, 0, 1]), 3),
        (ip(&[2, 0, 1]), 5),
    ]
}

fn arb_irreducible() -> impl Strategy<Value = (IntPoly, u64)> {
    prop::sample::select(irreducibles())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gauss_valuation_is_additive(g in arb_poly(6, 500), h in arb_poly(6, 500), p in prop::sample::select(vec![2u64, 3, 5, 7])) {
        let c = ctx(p);
        prop_assert_eq!(v1(&(&g * &h), &c), &v1(&g, &c) + &v1(&h, &c));
    }

    #[test]
    fn resultant_valuation_is_multiplicative(g in arb_poly(5, 100), h in arb_poly(5, 100), (big_f, p) in arb_irreducible()) {
        let c = ctx(p);
        let (Ok(vg), Ok(vh)) = (v_theta(&g, &big_f, &c), v_theta(&h, &big_f, &c)) else {
            return Ok(());
        };
        prop_assert_eq!(v_theta(&(&g * &h), &big_f, &c).unwrap(), &vg + &vh);
    }

    #[test]
    fn frame_chains((big_f, p) in arb_irreducible(), seed in any::<u64>()) {
        let fs = montes(&big_f, &ctx(p), seed).unwrap();
        prop_assert_eq!(fs.len(), 1);
        let frame = frame_of(&fs[0]);
        // m_{i+1} = m_i e_i f_i, and the factor degree closes the chain.
        let mut m = frame.degrees.clone();
        m.push(frame.factor_degree);
        for (i, l) in frame.levels.iter().enumerate() {
            prop_assert_eq!(m[i + 1], m[i] * (l.e * l.f) as usize);
        }
        prop_assert!(frame.v_f.windows(2).all(|w| w[0] < w[1]));
        prop_assert_eq!(&frame.v_f, &v_fi(&frame.levels));
        for (fi, v) in frame.polynomials.iter().zip(&frame.v_f) {
            prop_assert_eq!(&v_theta(fi, &big_f, &ctx(p)).unwrap(), v);
        }
    }

    #[test]
    fn approximations_are_close_to_their_factor(i in 0usize..9, j in 0usize..9, n in 1u32..9) {
        let pool = irreducibles();
        let (a, p) = &pool[i];
        let (b, q) = &pool[j];
        prop_assume!(p == q && a != b);
        let f = a * b;
        let c = ctx(*p);
        let rs = factor_to_precision(&f, &c, n, 0).unwrap();
        let parts: Vec<IntPoly> = rs.iter().map(|r| r.approximation.clone()).collect();
        prop_assert!(check_product_congruence(&f, &parts, &c, n));
        for phi in &parts {
            if phi == a || phi == b {
                continue;
            }
            let closest = [a, b]
                .iter()
                .filter(|t| t.degree() == phi.degree())
                .filter_map(|t| v_theta(phi, t, &c).ok())
                .max()
                .unwrap();
            prop_assert!(closest >= RatVal::from_int(n as i64), "v(phi(theta)) = {} below {}", closest, n);
        }
        let factors: Vec<_> = rs.iter().map(|r| r.factor.clone()).collect();
        prop_assert!(certify(&factors, &f, &c).passed());
    }
}
