use num_bigint::BigUint;

use crate::ff::{FFElem, TowerField};

/// Polynomial over one tower level, lowest degree first, without trailing
/// zeros. The owning field is passed to every operation explicitly.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct FFPoly {
    coeffs: Vec<FFElem>,
}

fn elem_is_zero(e: &FFElem) -> bool {
    match e {
        FFElem::Prime(x) => *x == 0,
        FFElem::Ext(v) => v.iter().all(elem_is_zero),
    }
}

impl FFPoly {
    pub fn new(mut coeffs: Vec<FFElem>) -> Self {
        while coeffs.last().is_some_and(elem_is_zero) {
            coeffs.pop();
        }
        FFPoly { coeffs }
    }

    pub fn zero() -> Self {
        FFPoly { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[FFElem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Option<&FFElem> {
        self.coeffs.get(i)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&FFElem> {
        self.coeffs.last()
    }
}

impl TowerField {
    /// Builds a polynomial over the prime field from integer coefficients.
    pub fn poly_from_ints(&self, c: &[i64]) -> FFPoly {
        FFPoly::new(c.iter().map(|&a| self.from_int(a)).collect())
    }

    /// `y - a`.
    pub fn linear(&self, a: &FFElem) -> FFPoly {
        FFPoly::new(vec![self.neg(a), self.one()])
    }

    pub fn poly_x(&self) -> FFPoly {
        FFPoly::new(vec![self.zero(), self.one()])
    }

    pub fn poly_one(&self) -> FFPoly {
        FFPoly::new(vec![self.one()])
    }

    pub fn poly_constant(&self, c: FFElem) -> FFPoly {
        FFPoly::new(vec![c])
    }

    pub fn poly_is_monic(&self, a: &FFPoly) -> bool {
        a.leading().is_some_and(|c| self.is_one(c))
    }

    pub fn poly_add(&self, a: &FFPoly, b: &FFPoly) -> FFPoly {
        let n = a.coeffs.len().max(b.coeffs.len());
        let z = self.zero();
        FFPoly::new((0..n).map(|i| self.add(a.coeffs.get(i).unwrap_or(&z), b.coeffs.get(i).unwrap_or(&z))).collect())
    }

    pub fn poly_neg(&self, a: &FFPoly) -> FFPoly {
        FFPoly::new(a.coeffs.iter().map(|c| self.neg(c)).collect())
    }

    pub fn poly_sub(&self, a: &FFPoly, b: &FFPoly) -> FFPoly {
        self.poly_add(a, &self.poly_neg(b))
    }

    pub fn poly_scale(&self, a: &FFPoly, c: &FFElem) -> FFPoly {
        FFPoly::new(a.coeffs.iter().map(|x| self.mul(x, c)).collect())
    }

    pub fn poly_mul(&self, a: &FFPoly, b: &FFPoly) -> FFPoly {
        if a.is_zero() || b.is_zero() {
            return FFPoly::zero();
        }
        let mut out = vec![self.zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if self.is_zero(x) {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                out[i + j] = self.add(&out[i + j], &self.mul(x, y));
            }
        }
        FFPoly::new(out)
    }

    /// Division with remainder; panics on a zero divisor.
    pub fn poly_divrem(&self, a: &FFPoly, b: &FFPoly) -> (FFPoly, FFPoly) {
        let db = b.degree().expect("division by the zero polynomial");
        if a.coeffs.len() <= db {
            return (FFPoly::zero(), a.clone());
        }
        let lc_inv = self.inv(b.leading().unwrap()).unwrap();
        let mut rem = a.coeffs.clone();
        let mut quot = vec![self.zero(); rem.len() - db];
        for k in (db..rem.len()).rev() {
            if self.is_zero(&rem[k]) {
                continue;
            }
            let c = self.mul(&rem[k], &lc_inv);
            for (j, d) in b.coeffs.iter().enumerate() {
                rem[k - db + j] = self.sub(&rem[k - db + j], &self.mul(&c, d));
            }
            quot[k - db] = c;
        }
        rem.truncate(db);
        (FFPoly::new(quot), FFPoly::new(rem))
    }

    pub fn poly_rem(&self, a: &FFPoly, b: &FFPoly) -> FFPoly {
        self.poly_divrem(a, b).1
    }

    /// Scales to leading coefficient 1; the zero polynomial is returned as is.
    pub fn poly_monic(&self, a: &FFPoly) -> FFPoly {
        match a.leading() {
            None => FFPoly::zero(),
            Some(lc) => self.poly_scale(a, &self.inv(lc).unwrap()),
        }
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn poly_gcd(&self, a: &FFPoly, b: &FFPoly) -> FFPoly {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let r = self.poly_rem(&x, &y);
            x = y;
            y = r;
        }
        self.poly_monic(&x)
    }

    /// `(g, s, t)` with `s·a + t·b = g`; `g` is not normalized.
    pub fn poly_xgcd(&self, a: &FFPoly, b: &FFPoly) -> (FFPoly, FFPoly, FFPoly) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (self.poly_one(), FFPoly::zero());
        let (mut t0, mut t1) = (FFPoly::zero(), self.poly_one());
        while !r1.is_zero() {
            let (q, r) = self.poly_divrem(&r0, &r1);
            let s = self.poly_sub(&s0, &self.poly_mul(&q, &s1));
            let t = self.poly_sub(&t0, &self.poly_mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        (r0, s0, t0)
    }

    pub fn poly_pow(&self, a: &FFPoly, k: usize) -> FFPoly {
        let mut acc = self.poly_one();
        for _ in 0..k {
            acc = self.poly_mul(&acc, a);
        }
        acc
    }

    /// `a^e mod m` by square and multiply.
    pub fn poly_powmod(&self, a: &FFPoly, e: &BigUint, m: &FFPoly) -> FFPoly {
        let base = self.poly_rem(a, m);
        let mut acc = self.poly_rem(&self.poly_one(), m);
        for i in (0..e.bits()).rev() {
            acc = self.poly_rem(&self.poly_mul(&acc, &acc), m);
            if e.bit(i) {
                acc = self.poly_rem(&self.poly_mul(&acc, &base), m);
            }
        }
        acc
    }

    pub fn poly_derivative(&self, a: &FFPoly) -> FFPoly {
        FFPoly::new(
            a.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| self.mul(c, &self.from_int((i as u64 % self.characteristic()) as i64)))
                .collect(),
        )
    }

    pub fn poly_eval(&self, a: &FFPoly, x: &FFElem) -> FFElem {
        let mut acc = self.zero();
        for c in a.coeffs.iter().rev() {
            acc = self.add(&self.mul(&acc, x), c);
        }
        acc
    }

    /// Maps every coefficient from a lower level into this one.
    pub fn poly_embed(&self, a: &FFPoly, from: usize) -> FFPoly {
        FFPoly::new(a.coeffs.iter().map(|c| self.embed(c.clone(), from)).collect())
    }

    /// Canonical sort key: degree, then flattened coefficient digits from the
    /// leading term down.
    pub fn poly_key(&self, a: &FFPoly) -> (usize, Vec<u64>) {
        let mut digits = Vec::new();
        for c in a.coeffs.iter().rev() {
            digits.extend(self.encode(c));
        }
        (a.coeffs.len(), digits)
    }

    pub fn fmt_poly(&self, a: &FFPoly, var: &str) -> String {
        if a.is_zero() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for (k, c) in a.coeffs.iter().enumerate().rev() {
            if self.is_zero(c) {
                continue;
            }
            let cs = self.fmt_elem(c);
            let cs = if cs.contains(" + ") { format!("({cs})") } else { cs };
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            terms.push(match (k, self.is_one(c)) {
                (0, _) => cs,
                (_, true) => mono,
                _ => format!("{cs}*{mono}"),
            });
        }
        terms.join(" + ")
    }
}
