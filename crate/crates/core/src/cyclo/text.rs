//! Scalar text syntax: a signed sum of terms `R`, `R*z^E`, `z^E` (and `z`, `R*z`),
//! where `R` is `a` or `a/b` and `E` a non-negative integer. Whitespace is ignored.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::CycScalar;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("at offset {offset}: expected {expected}")]
pub struct ScalarSyntaxError {
    /// Byte offset into the scalar text.
    pub offset: usize,
    pub expected: &'static str,
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn err(&self, expected: &'static str) -> ScalarSyntaxError {
        ScalarSyntaxError {
            offset: self.pos,
            expected,
        }
    }

    fn digits(&mut self, expected: &'static str) -> Result<BigUint, ScalarSyntaxError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err(expected));
        }
        let s = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("nonempty digit run"))
    }

    fn rational(&mut self) -> Result<BigRational, ScalarSyntaxError> {
        let n = self.digits("a number")?;
        if self.eat(b'/') {
            let at = self.pos;
            let d = self.digits("a denominator")?;
            if d.is_zero() {
                return Err(ScalarSyntaxError {
                    offset: at,
                    expected: "a nonzero denominator",
                });
            }
            Ok(BigRational::new(n.into(), d.into()))
        } else {
            Ok(BigRational::from(BigInt::from(n)))
        }
    }

    /// `z` or `z^E`, returning `E mod conductor`.
    fn power(&mut self, conductor: u32) -> Result<usize, ScalarSyntaxError> {
        if !self.eat(b'z') {
            return Err(self.err("'z'"));
        }
        if self.eat(b'^') {
            let e = self.digits("an exponent")?;
            Ok((e % conductor).to_usize().expect("reduced exponent fits"))
        } else {
            Ok(1 % conductor as usize)
        }
    }
}

/// Parses a scalar of `Q(ζ_conductor)`. The conductor must be valid.
pub fn parse_scalar(text: &str, conductor: u32) -> Result<CycScalar, ScalarSyntaxError> {
    let mut cur = Cursor {
        bytes: text.as_bytes(),
        pos: 0,
    };
    let n = conductor as usize;
    let mut raw = vec![BigRational::zero(); n];
    let mut first = true;
    loop {
        let negative = if cur.eat(b'-') {
            true
        } else if cur.eat(b'+') || first {
            false
        } else {
            return Err(cur.err("'+', '-' or end of scalar"));
        };
        first = false;
        match cur.peek() {
            Some(b'z') => {
                let e = cur.power(conductor)?;
                if negative {
                    raw[e] -= BigRational::from(BigInt::from(1));
                } else {
                    raw[e] += BigRational::from(BigInt::from(1));
                }
            }
            Some(b) if b.is_ascii_digit() => {
                let r = cur.rational()?;
                let e = if cur.eat(b'*') {
                    cur.power(conductor)?
                } else {
                    0
                };
                if negative {
                    raw[e] -= r;
                } else {
                    raw[e] += r;
                }
            }
            _ => return Err(cur.err("a number or 'z'")),
        }
        if cur.peek().is_none() {
            break;
        }
    }
    Ok(CycScalar::canonicalize(conductor, &raw).expect("conductor validated by caller"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_grammar_examples() {
        let x = parse_scalar("1/2*z^3 - z + 2", 8).unwrap();
        assert_eq!(x.to_string(), "1/2*z^3 - z + 2");
        let i = parse_scalar("z", 4).unwrap();
        assert_eq!(i, CycScalar::zeta(4, 1).unwrap());
        let m = parse_scalar(" z ^ 2 ", 4).unwrap();
        assert_eq!(m, CycScalar::from_int(-1));
        assert_eq!(parse_scalar("-3/6", 1).unwrap().to_string(), "-1/2");
        // exponents wrap modulo the conductor
        assert_eq!(
            parse_scalar("z^9", 4).unwrap(),
            CycScalar::zeta(4, 1).unwrap()
        );
    }

    #[test]
    fn rejects_with_offsets() {
        assert_eq!(parse_scalar("", 4).unwrap_err().offset, 0);
        assert_eq!(parse_scalar("1 +", 4).unwrap_err().offset, 3);
        assert_eq!(
            parse_scalar("1/0", 4).unwrap_err().expected,
            "a nonzero denominator"
        );
        assert_eq!(parse_scalar("2 z", 4).unwrap_err().offset, 2);
        assert_eq!(parse_scalar("z^", 4).unwrap_err().expected, "an exponent");
    }
}
