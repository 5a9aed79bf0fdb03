use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

/// An exact rational value or `∞`.
///
/// `∞` absorbs addition and is larger than every finite value; it is what
/// valuations return for zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RatVal {
    Finite(BigRational),
    Infinity,
}

impl RatVal {
    pub fn from_int(n: i64) -> Self {
        RatVal::Finite(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        RatVal::Finite(BigRational::from_integer(n))
    }

    /// `num/den`, reduced. Panics on a zero denominator.
    pub fn frac(num: i64, den: i64) -> Self {
        RatVal::Finite(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn zero() -> Self {
        RatVal::from_int(0)
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, RatVal::Infinity)
    }

    pub fn finite(&self) -> Option<&BigRational> {
        match self {
            RatVal::Finite(q) => Some(q),
            RatVal::Infinity => None,
        }
    }

    pub fn numer(&self) -> Option<&BigInt> {
        self.finite().map(|q| q.numer())
    }

    pub fn denom(&self) -> Option<&BigInt> {
        self.finite().map(|q| q.denom())
    }

    /// Smallest integer not below the value; `None` for `∞`.
    pub fn ceil(&self) -> Option<BigInt> {
        self.finite().map(|q| q.ceil().to_integer())
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            RatVal::Finite(q) => q.numer().to_f64().unwrap_or(f64::NAN) / q.denom().to_f64().unwrap_or(f64::NAN),
            RatVal::Infinity => f64::INFINITY,
        }
    }

    /// Parses `a`, `a/b`, `inf` or `∞`.
    pub fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        if s == "inf" || s == "∞" {
            return Some(RatVal::Infinity);
        }
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().ok()?;
                let d: BigInt = d.trim().parse().ok()?;
                if d.is_zero() {
                    return None;
                }
                Some(RatVal::Finite(BigRational::new(n, d)))
            }
            None => Some(RatVal::from_bigint(s.parse().ok()?)),
        }
    }

    /// Slope written as `-h/e` with the sign kept and the denominator always
    /// printed.
    pub fn slope_string(&self) -> String {
        match self {
            RatVal::Finite(q) => format!("{}/{}", q.numer(), q.denom()),
            RatVal::Infinity => "-inf".to_string(),
        }
    }
}

impl From<BigRational> for RatVal {
    fn from(q: BigRational) -> Self {
        RatVal::Finite(q)
    }
}

impl PartialOrd for RatVal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RatVal {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (RatVal::Infinity, RatVal::Infinity) => Ordering::Equal,
            (RatVal::Infinity, _) => Ordering::Greater,
            (_, RatVal::Infinity) => Ordering::Less,
            (RatVal::Finite(a), RatVal::Finite(b)) => a.cmp(b),
        }
    }
}

impl Add for &RatVal {
    type Output = RatVal;
    fn add(self, rhs: &RatVal) -> RatVal {
        match (self, rhs) {
            (RatVal::Finite(a), RatVal::Finite(b)) => RatVal::Finite(a + b),
            _ => RatVal::Infinity,
        }
    }
}

impl Add for RatVal {
    type Output = RatVal;
    fn add(self, rhs: RatVal) -> RatVal {
        &self + &rhs
    }
}

/// Subtraction of a finite value; `∞ - x = ∞`. Panics when subtracting `∞`.
impl Sub for &RatVal {
    type Output = RatVal;
    fn sub(self, rhs: &RatVal) -> RatVal {
        match (self, rhs) {
            (RatVal::Finite(a), RatVal::Finite(b)) => RatVal::Finite(a - b),
            (RatVal::Infinity, RatVal::Finite(_)) => RatVal::Infinity,
            (_, RatVal::Infinity) => panic!("cannot subtract infinity"),
        }
    }
}

impl fmt::Display for RatVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RatVal::Infinity => write!(f, "inf"),
            RatVal::Finite(q) if q.denom() == &BigInt::from(1) => write!(f, "{}", q.numer()),
            RatVal::Finite(q) => write!(f, "{}/{}", q.numer(), q.denom()),
        }
    }
}

/// `(num, den)` with `den > 0` and `gcd = 1`.
pub fn reduced(num: i64, den: i64) -> (i64, i64) {
    assert!(den != 0);
    let g = num.gcd(&den);
    let (n, d) = (num / g, den / g);
    if d < 0 {
        (-n, -d)
    } else {
        (n, d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_and_absorption() {
        let a = RatVal::frac(1, 2);
        let b = RatVal::from_int(3);
        assert!(a < b);
        assert!(b < RatVal::Infinity);
        assert_eq!(&a + &RatVal::Infinity, RatVal::Infinity);
        assert_eq!(&a + &b, RatVal::frac(7, 2));
        assert_eq!(RatVal::frac(4, -6), RatVal::frac(-2, 3));
    }

    #[test]
    fn ceil_and_text() {
        assert_eq!(RatVal::frac(5, 2).ceil(), Some(BigInt::from(3)));
        assert_eq!(RatVal::frac(-5, 2).ceil(), Some(BigInt::from(-2)));
        assert_eq!(RatVal::Infinity.ceil(), None);
        assert_eq!(RatVal::frac(1, 5).to_string(), "1/5");
        assert_eq!(RatVal::from_int(2).to_string(), "2");
        assert_eq!(RatVal::parse("3/6"), Some(RatVal::frac(1, 2)));
        assert_eq!(RatVal::parse("inf"), Some(RatVal::Infinity));
        assert_eq!(RatVal::parse("1/0"), None);
        assert_eq!(reduced(4, -6), (-2, 3));
    }
}
