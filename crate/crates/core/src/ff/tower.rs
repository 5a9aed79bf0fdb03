use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use rand::Rng;

use crate::error::{Error, Result};
use crate::ff::FFPoly;

/// An element of a tower level.
///
/// Level-0 elements are residues in `[0, p)`. An element of `F_{i+1} =
/// F_i[y]/(ψ)` is its coefficient vector over `F_i`, padded to exactly
/// `deg ψ` entries so that equality is structural.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum FFElem {
    Prime(u64),
    Ext(Vec<FFElem>),
}

/// One level of the tower `F ⊂ F_1 ⊂ … ⊂ F_r`.
pub struct TowerField {
    level: usize,
    p: u64,
    parent: Option<Arc<TowerField>>,
    modulus: Option<FFPoly>,
    abs_degree: usize,
}

impl fmt::Debug for TowerField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TowerField")
            .field("level", &self.level)
            .field("p", &self.p)
            .field("abs_degree", &self.abs_degree)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for TowerField {
    fn eq(&self, other: &Self) -> bool {
        self.level == other.level
            && self.p == other.p
            && self.modulus == other.modulus
            && match (&self.parent, &other.parent) {
                (Some(a), Some(b)) => Arc::ptr_eq(a, b) || **a == **b,
                (None, None) => true,
                _ => false,
            }
    }
}

impl Eq for TowerField {}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    r
}

impl TowerField {
    /// The prime field with `p` elements. Primality is the caller's business
    /// (it is checked by [`crate::arith::ValuedContext`]).
    pub fn prime(p: u64) -> Arc<TowerField> {
        Arc::new(TowerField { level: 0, p, parent: None, modulus: None, abs_degree: 1 })
    }

    /// `F_{i+1} = F_i[y]/(ψ)` without checking irreducibility; see
    /// [`crate::ff::tower_extend`] for the checked constructor.
    pub(crate) fn extend_unchecked(base: &Arc<TowerField>, psi: FFPoly) -> Arc<TowerField> {
        let d = psi.degree().expect("modulus must be nonzero");
        Arc::new(TowerField {
            level: base.level + 1,
            p: base.p,
            parent: Some(base.clone()),
            abs_degree: base.abs_degree * d,
            modulus: Some(psi),
        })
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn parent(&self) -> Option<&Arc<TowerField>> {
        self.parent.as_ref()
    }

    pub fn modulus(&self) -> Option<&FFPoly> {
        self.modulus.as_ref()
    }

    /// Degree over the parent level (1 for the prime field).
    pub fn rel_degree(&self) -> usize {
        self.modulus.as_ref().map_or(1, |m| m.degree().unwrap())
    }

    /// Degree over the prime field.
    pub fn abs_degree(&self) -> usize {
        self.abs_degree
    }

    pub fn cardinality(&self) -> BigUint {
        num_traits::pow(BigUint::from(self.p), self.abs_degree)
    }

    fn parent_ref(&self) -> &TowerField {
        self.parent.as_deref().expect("extension level without parent")
    }

    pub fn zero(&self) -> FFElem {
        match self.level {
            0 => FFElem::Prime(0),
            _ => FFElem::Ext(vec![self.parent_ref().zero(); self.rel_degree()]),
        }
    }

    pub fn one(&self) -> FFElem {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> FFElem {
        match self.level {
            0 => FFElem::Prime(n.rem_euclid(self.p as i64) as u64),
            _ => self.from_parent(self.parent_ref().from_int(n)),
        }
    }

    /// The image of a parent-level element.
    pub fn from_parent(&self, c: FFElem) -> FFElem {
        let par = self.parent_ref();
        let mut v = vec![par.zero(); self.rel_degree()];
        v[0] = c;
        FFElem::Ext(v)
    }

    /// Embeds an element living at tower level `from` (≤ this level).
    pub fn embed(&self, e: FFElem, from: usize) -> FFElem {
        assert!(from <= self.level, "cannot embed downwards");
        if from == self.level {
            e
        } else {
            self.from_parent(self.parent_ref().embed(e, from))
        }
    }

    /// Reduces a polynomial over the parent modulo the defining polynomial,
    /// i.e. evaluates it at the canonical generator.
    pub fn from_parent_poly(&self, a: &FFPoly) -> FFElem {
        let par = self.parent_ref();
        let m = self.modulus.as_ref().unwrap();
        let r = par.poly_rem(a, m);
        let mut v = r.coeffs().to_vec();
        v.resize(self.rel_degree(), par.zero());
        FFElem::Ext(v)
    }

    /// Coefficients over the parent (length = relative degree).
    pub fn to_parent_poly(&self, e: &FFElem) -> FFPoly {
        match e {
            FFElem::Ext(v) => FFPoly::new(v.clone()),
            FFElem::Prime(_) => panic!("prime-field element has no parent coordinates"),
        }
    }

    /// The class `z` of `y` in `F_i[y]/(ψ)`.
    pub fn generator(&self) -> FFElem {
        let par = self.parent_ref();
        self.from_parent_poly(&FFPoly::new(vec![par.zero(), par.one()]))
    }

    pub fn is_zero(&self, a: &FFElem) -> bool {
        match a {
            FFElem::Prime(x) => *x == 0,
            FFElem::Ext(v) => {
                let par = self.parent_ref();
                v.iter().all(|c| par.is_zero(c))
            }
        }
    }

    pub fn is_one(&self, a: &FFElem) -> bool {
        *a == self.one()
    }

    pub fn add(&self, a: &FFElem, b: &FFElem) -> FFElem {
        match (a, b) {
            (FFElem::Prime(x), FFElem::Prime(y)) => {
                let s = *x as u128 + *y as u128;
                FFElem::Prime((s % self.p as u128) as u64)
            }
            (FFElem::Ext(x), FFElem::Ext(y)) => {
                let par = self.parent_ref();
                FFElem::Ext(x.iter().zip(y).map(|(u, v)| par.add(u, v)).collect())
            }
            _ => panic!("mismatched tower levels"),
        }
    }

    pub fn neg(&self, a: &FFElem) -> FFElem {
        match a {
            FFElem::Prime(x) => FFElem::Prime(if *x == 0 { 0 } else { self.p - x }),
            FFElem::Ext(v) => {
                let par = self.parent_ref();
                FFElem::Ext(v.iter().map(|c| par.neg(c)).collect())
            }
        }
    }

    pub fn sub(&self, a: &FFElem, b: &FFElem) -> FFElem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &FFElem, b: &FFElem) -> FFElem {
        match (a, b) {
            (FFElem::Prime(x), FFElem::Prime(y)) => FFElem::Prime(mul_mod(*x, *y, self.p)),
            (FFElem::Ext(_), FFElem::Ext(_)) => {
                let par = self.parent_ref();
                let prod = par.poly_mul(&self.to_parent_poly(a), &self.to_parent_poly(b));
                self.from_parent_poly(&prod)
            }
            _ => panic!("mismatched tower levels"),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: &FFElem) -> Option<FFElem> {
        if self.is_zero(a) {
            return None;
        }
        match a {
            FFElem::Prime(x) => Some(FFElem::Prime(pow_mod(*x, self.p - 2, self.p))),
            FFElem::Ext(_) => {
                let par = self.parent_ref();
                let m = self.modulus.as_ref().unwrap();
                let (g, s, _) = par.poly_xgcd(&self.to_parent_poly(a), m);
                // g is a nonzero constant because the modulus is irreducible.
                let c = par.inv(g.coeff(0)?)?;
                Some(self.from_parent_poly(&par.poly_scale(&s, &c)))
            }
        }
    }

    pub fn div(&self, a: &FFElem, b: &FFElem) -> Option<FFElem> {
        Some(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &FFElem, e: &BigUint) -> FFElem {
        let mut acc = self.one();
        let bits = e.bits();
        for i in (0..bits).rev() {
            acc = self.mul(&acc, &acc);
            if e.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    /// Integer power, negative exponents through the inverse.
    pub fn pow_i64(&self, a: &FFElem, e: i64) -> Option<FFElem> {
        let base = if e < 0 { self.inv(a)? } else { a.clone() };
        Some(self.pow(&base, &BigUint::from(e.unsigned_abs())))
    }

    /// `a^p`.
    pub fn frobenius(&self, a: &FFElem) -> FFElem {
        self.pow(a, &BigUint::from(self.p))
    }

    /// The unique `p`-th root.
    pub fn pth_root(&self, a: &FFElem) -> FFElem {
        // a^(q/p) is the inverse of Frobenius on a field of size q.
        let q = self.cardinality();
        self.pow(a, &(q / BigUint::from(self.p)))
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FFElem {
        match self.level {
            0 => FFElem::Prime(rng.gen_range(0..self.p)),
            _ => {
                let par = self.parent_ref();
                FFElem::Ext((0..self.rel_degree()).map(|_| par.random(rng)).collect())
            }
        }
    }

    /// Every element, in the order of [`Self::encode`]; only sensible for
    /// small fields.
    pub fn elements(&self) -> Vec<FFElem> {
        match self.level {
            0 => (0..self.p).map(FFElem::Prime).collect(),
            _ => {
                let base = self.parent_ref().elements();
                let mut out: Vec<Vec<FFElem>> = vec![vec![]];
                for _ in 0..self.rel_degree() {
                    let mut next = Vec::with_capacity(out.len() * base.len());
                    for prefix in &out {
                        for b in &base {
                            let mut v = prefix.clone();
                            v.push(b.clone());
                            next.push(v);
                        }
                    }
                    out = next;
                }
                out.into_iter().map(FFElem::Ext).collect()
            }
        }
    }

    /// Flattened base-field digits, used for canonical ordering and output.
    pub fn encode(&self, a: &FFElem) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.abs_degree);
        flatten(a, &mut out);
        out
    }

    /// Checks that an element has the shape this level expects.
    pub fn contains(&self, a: &FFElem) -> bool {
        match (self.level, a) {
            (0, FFElem::Prime(x)) => *x < self.p,
            (0, _) => false,
            (_, FFElem::Ext(v)) => v.len() == self.rel_degree() && v.iter().all(|c| self.parent_ref().contains(c)),
            _ => false,
        }
    }

    /// Builds an element from flattened digits (inverse of [`Self::encode`]).
    pub fn decode(&self, digits: &[u64]) -> Result<FFElem> {
        if digits.len() != self.abs_degree {
            return Err(Error::OutOfRange(format!("expected {} digits, got {}", self.abs_degree, digits.len())));
        }
        match self.level {
            0 => {
                if digits[0] >= self.p {
                    return Err(Error::OutOfRange(format!("digit {} not below p", digits[0])));
                }
                Ok(FFElem::Prime(digits[0]))
            }
            _ => {
                let par = self.parent_ref();
                let k = par.abs_degree;
                digits.chunks(k).map(|c| par.decode(c)).collect::<Result<Vec<_>>>().map(FFElem::Ext)
            }
        }
    }

    pub fn fmt_elem(&self, a: &FFElem) -> String {
        match a {
            FFElem::Prime(x) => x.to_string(),
            FFElem::Ext(v) => {
                let par = self.parent_ref();
                let var = format!("z{}", self.level - 1);
                let terms: Vec<String> = v
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !par.is_zero(c))
                    .map(|(k, c)| {
                        let cs = par.fmt_elem(c);
                        let cs = if cs.contains(['+', ' ']) { format!("({cs})") } else { cs };
                        match k {
                            0 => cs,
                            1 if par.is_one(c) => var.clone(),
                            1 => format!("{cs}*{var}"),
                            _ if par.is_one(c) => format!("{var}^{k}"),
                            _ => format!("{cs}*{var}^{k}"),
                        }
                    })
                    .collect();
                if terms.is_empty() {
                    "0".into()
                } else {
                    terms.join(" + ")
                }
            }
        }
    }
}

fn flatten(a: &FFElem, out: &mut Vec<u64>) {
    match a {
        FFElem::Prime(x) => out.push(*x),
        FFElem::Ext(v) => v.iter().for_each(|c| flatten(c, out)),
    }
}
