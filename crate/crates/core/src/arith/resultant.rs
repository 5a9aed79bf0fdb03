use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::IntPoly;
use crate::error::{Error, Result};

/// Resultant over the integers, `lc(f)^deg g · Π g(α)` over the roots α of f.
///
/// Computed as the determinant of the Sylvester matrix with fraction-free
/// (Bareiss) elimination, so every intermediate value is an exact integer.
pub fn resultant(f: &IntPoly, g: &IntPoly) -> Result<BigInt> {
    let (m, n) = match (f.degree(), g.degree()) {
        (Some(m), Some(n)) => (m, n),
        _ => return Err(Error::ZeroPolynomial),
    };
    let size = m + n;
    if size == 0 {
        return Ok(BigInt::one());
    }
    let mut mat = vec![vec![BigInt::zero(); size]; size];
    // Rows hold coefficients from the leading one down.
    for r in 0..n {
        for (k, c) in f.coeffs().iter().rev().enumerate() {
            mat[r][r + k] = c.clone();
        }
    }
    for r in 0..m {
        for (k, c) in g.coeffs().iter().rev().enumerate() {
            mat[n + r][r + k] = c.clone();
        }
    }
    Ok(bareiss_det(mat))
}

fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// `Res(f, f')` up to sign; zero exactly when `f` has a repeated root.
pub fn discriminant_core(f: &IntPoly) -> Result<BigInt> {
    resultant(f, &f.derivative())
}
