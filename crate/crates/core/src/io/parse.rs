use num_bigint::BigInt;

use crate::arith::IntPoly;
use crate::error::{Error, Result};

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Lexer<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        Error::Parse { pos: self.pos, msg: msg.into() }
    }
}

/// Parses a sum of terms `c*x^k`.
///
/// The coefficient is a decimal integer and may be omitted (`x^2`), the `*`
/// may be omitted (`12x^2`) and `^k` may be omitted for `k = 1`. Whitespace
/// is ignored. Errors carry the byte offset at which parsing stopped.
///
/// ```
/// use okutsu::io::parse_poly;
/// use okutsu::arith::IntPoly;
///
/// assert_eq!(parse_poly("x^4 + 12x^2 + 27").unwrap(), IntPoly::from_i64(&[27, 0, 12, 0, 1]));
/// assert!(parse_poly("x^2 + 1/2").is_err());
/// ```
pub fn parse_poly(s: &str) -> Result<IntPoly> {
    let mut lx = Lexer { src: s.as_bytes(), pos: 0 };
    let mut coeffs: Vec<BigInt> = Vec::new();
    if lx.peek().is_none() {
        return Err(lx.error("empty polynomial"));
    }
    let mut first = true;
    while lx.peek().is_some() {
        let negative = if lx.eat(b'+') {
            false
        } else if lx.eat(b'-') {
            true
        } else if first {
            false
        } else {
            return Err(lx.error("expected '+' or '-'"));
        };
        first = false;
        let coeff = lx.digits().map(|d| d.parse::<BigInt>().unwrap());
        let has_star = coeff.is_some() && lx.eat(b'*');
        let exponent = if lx.eat(b'x') {
            if lx.eat(b'^') {
                let Some(d) = lx.digits() else {
                    return Err(lx.error("expected an exponent"));
                };
                d.parse::<usize>().map_err(|_| lx.error("exponent too large"))?
            } else {
                1
            }
        } else if has_star {
            return Err(lx.error("expected 'x' after '*'"));
        } else if coeff.is_none() {
            return Err(lx.error("expected a coefficient or 'x'"));
        } else {
            0
        };
        if matches!(lx.peek(), Some(c) if c != b'+' && c != b'-') {
            let msg = if lx.peek() == Some(b'/') || lx.peek() == Some(b'.') {
                "coefficients must be integers"
            } else {
                "unexpected character"
            };
            return Err(lx.error(msg));
        }
        let mut c = coeff.unwrap_or_else(|| BigInt::from(1));
        if negative {
            c = -c;
        }
        if coeffs.len() <= exponent {
            coeffs.resize(exponent + 1, BigInt::from(0));
        }
        coeffs[exponent] += c;
    }
    Ok(IntPoly::new(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ip(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn grammar() {
        assert_eq!(parse_poly("x^2+9").unwrap(), ip(&[9, 0, 1]));
        assert_eq!(parse_poly("x^4 + 12x^2 + 27").unwrap(), ip(&[27, 0, 12, 0, 1]));
        assert_eq!(parse_poly("x^2 - 3").unwrap(), ip(&[-3, 0, 1]));
        assert_eq!(parse_poly("-x + 2*x - 5 x").unwrap(), ip(&[0, -4]));
        assert_eq!(parse_poly("  x ^ 3 ").unwrap(), ip(&[0, 0, 0, 1]));
        assert_eq!(parse_poly("7").unwrap(), ip(&[7]));
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(
            parse_poly("x^2 + 1/2").unwrap_err(),
            Error::Parse { pos: 7, msg: "coefficients must be integers".into() }
        );
        assert!(matches!(parse_poly("x^"), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(parse_poly("x x"), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(parse_poly("3*"), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly(""), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!(parse_poly("x + y"), Err(Error::Parse { pos: 4, .. })));
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(c in prop::collection::vec(-1000i64..1000, 0..8)) {
            let g = ip(&c);
            prop_assert_eq!(parse_poly(&g.to_string()).unwrap(), g);
        }
    }
}
