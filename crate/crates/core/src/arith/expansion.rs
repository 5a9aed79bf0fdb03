use crate::arith::IntPoly;
use crate::error::{Error, Result};

/// The φ-adic development `g = Σ a_j φ^j` with every digit of degree below
/// `deg φ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expansion {
    digits: Vec<IntPoly>,
    base: IntPoly,
}

impl Expansion {
    pub fn digits(&self) -> &[IntPoly] {
        &self.digits
    }

    pub fn base(&self) -> &IntPoly {
        &self.base
    }

    pub fn digit(&self, j: usize) -> &IntPoly {
        static ZERO: IntPoly = IntPoly::zero();
        self.digits.get(j).unwrap_or(&ZERO)
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// Rebuilds `Σ a_j φ^j` by Horner's rule.
    pub fn resum(&self) -> IntPoly {
        let mut acc = IntPoly::zero();
        for a in self.digits.iter().rev() {
            acc = &(&acc * &self.base) + a;
        }
        acc
    }
}

/// φ-adic expansion by repeated division with remainder.
///
/// The base must be monic of positive degree. The zero polynomial expands to
/// the empty digit list.
pub fn phi_expand(g: &IntPoly, phi: &IntPoly) -> Result<Expansion> {
    if !phi.is_monic() {
        return Err(Error::NotMonic);
    }
    if phi.degree() == Some(0) {
        return Err(Error::OutOfRange("expansion base must have positive degree".into()));
    }
    let mut digits = Vec::new();
    let mut rest = g.clone();
    while !rest.is_zero() {
        let (q, r) = rest.divrem_monic(phi)?;
        digits.push(r);
        rest = q;
    }
    Ok(Expansion { digits, base: phi.clone() })
}

/// Exact division by a monic divisor, `None` when the remainder is nonzero.
pub fn div_exact(g: &IntPoly, d: &IntPoly) -> Result<Option<IntPoly>> {
    let (q, r) = g.divrem_monic(d)?;
    Ok(if r.is_zero() { Some(q) } else { None })
}
