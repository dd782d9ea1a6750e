use std::fmt;

use super::McgError;

/// An integer matrix `(a b; c d)` with determinant 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SL2Z {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl SL2Z {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self, McgError> {
        let det = a as i128 * d as i128 - b as i128 * c as i128;
        if det != 1 {
            return Err(McgError::NotUnimodular { a, b, c, d });
        }
        Ok(SL2Z { a, b, c, d })
    }

    pub const IDENTITY: SL2Z = SL2Z {
        a: 1,
        b: 0,
        c: 0,
        d: 1,
    };
    /// Image of the letter `S`.
    pub const S: SL2Z = SL2Z {
        a: 0,
        b: -1,
        c: 1,
        d: 0,
    };
    /// Image of the letter `T`.
    pub const T: SL2Z = SL2Z {
        a: 1,
        b: 1,
        c: 0,
        d: 1,
    };
    /// Image of the letter `A`; `T·A·T = S⁻¹`.
    pub const A: SL2Z = SL2Z {
        a: 1,
        b: 0,
        c: -1,
        d: 1,
    };

    pub fn checked_mul(&self, o: &SL2Z) -> Option<SL2Z> {
        let entry =
            |x: i64, y: i64, z: i64, w: i64| x.checked_mul(y)?.checked_add(z.checked_mul(w)?);
        Some(SL2Z {
            a: entry(self.a, o.a, self.b, o.c)?,
            b: entry(self.a, o.b, self.b, o.d)?,
            c: entry(self.c, o.a, self.d, o.c)?,
            d: entry(self.c, o.b, self.d, o.d)?,
        })
    }

    pub fn inverse(&self) -> SL2Z {
        SL2Z {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    pub fn checked_pow(&self, e: i64) -> Option<SL2Z> {
        let base = if e < 0 { self.inverse() } else { *self };
        let mut out = SL2Z::IDENTITY;
        for _ in 0..e.unsigned_abs() {
            out = out.checked_mul(&base)?;
        }
        Some(out)
    }

    pub fn trace(&self) -> i64 {
        self.a + self.d
    }
}

impl fmt::Display for SL2Z {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{};{},{})", self.a, self.b, self.c, self.d)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    S,
    T,
    A,
}

impl Letter {
    pub fn matrix(self) -> SL2Z {
        match self {
            Letter::S => SL2Z::S,
            Letter::T => SL2Z::T,
            Letter::A => SL2Z::A,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Letter::S => "S",
            Letter::T => "T",
            Letter::A => "A",
        })
    }
}

/// A word in the genus-one generators, read left to right as a matrix product.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MCGWord {
    letters: Vec<(Letter, i64)>,
}

impl MCGWord {
    pub fn new() -> Self {
        MCGWord::default()
    }

    /// Builds a word, dropping zero exponents and merging repeated letters.
    pub fn from_letters(letters: impl IntoIterator<Item = (Letter, i64)>) -> Self {
        let mut w = MCGWord::new();
        for (l, e) in letters {
            w.push(l, e);
        }
        w
    }

    pub fn push(&mut self, letter: Letter, exp: i64) {
        if let Some((last, e)) = self.letters.last_mut() {
            if *last == letter {
                *e += exp;
                if letter == Letter::S {
                    *e = e.rem_euclid(4);
                }
                if *e == 0 {
                    self.letters.pop();
                }
                return;
            }
        }
        let exp = if letter == Letter::S {
            exp.rem_euclid(4)
        } else {
            exp
        };
        if exp != 0 {
            self.letters.push((letter, exp));
        }
    }

    pub fn letters(&self) -> &[(Letter, i64)] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The integral matrix of the word, or `None` on overflow.
    pub fn to_sl2z(&self) -> Option<SL2Z> {
        let mut m = SL2Z::IDENTITY;
        for &(l, e) in &self.letters {
            m = m.checked_mul(&l.matrix().checked_pow(e)?)?;
        }
        Some(m)
    }

    pub fn concat(&self, other: &MCGWord) -> MCGWord {
        let mut w = self.clone();
        for &(l, e) in &other.letters {
            w.push(l, e);
        }
        w
    }

    pub fn inverse(&self) -> MCGWord {
        MCGWord::from_letters(self.letters.iter().rev().map(|&(l, e)| (l, -e)))
    }

    /// Parses `"S T^3 A^-1"`: whitespace-separated letters with optional nonzero exponents.
    pub fn parse(text: &str) -> Result<MCGWord, McgError> {
        let mut word = MCGWord::new();
        let mut pos = 0;
        for tok in text.split_whitespace() {
            let at = pos + text[pos..].find(tok).expect("token comes from text");
            pos = at + tok.len();
            let err = |offset: usize, expected: &'static str| McgError::WordSyntax {
                offset: at + offset,
                expected,
            };
            let letter = match tok.as_bytes()[0] {
                b'S' => Letter::S,
                b'T' => Letter::T,
                b'A' => Letter::A,
                _ => return Err(err(0, "one of S, T, A")),
            };
            let exp = match tok[1..].strip_prefix('^') {
                None if tok.len() == 1 => 1,
                None => return Err(err(1, "`^` or whitespace")),
                Some(e) => match e.parse::<i64>() {
                    Ok(0) => return Err(err(2, "a nonzero exponent")),
                    Ok(n) if n.unsigned_abs() <= 1_000_000 => n,
                    _ => return Err(err(2, "an integer exponent of magnitude at most 10^6")),
                },
            };
            word.letters.push((letter, exp));
        }
        Ok(word)
    }
}

impl fmt::Display for MCGWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (idx, (l, e)) in self.letters.iter().enumerate() {
            if idx > 0 {
                f.write_str(" ")?;
            }
            if *e == 1 {
                write!(f, "{l}")?;
            } else {
                write!(f, "{l}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Writes `m` as a word in `S` and `T^{±k}` by the Euclidean algorithm on the first column.
///
/// The result re-multiplies to `m` exactly; `S⁻¹` appears as `S^3`.
pub fn decompose_sl2z(m: &SL2Z) -> MCGWord {
    // Left-multiply by T^-q and S until the lower-left entry vanishes:
    // ops_k ⋯ ops_1 · m = ±T^b, so m = ops_1⁻¹ ⋯ ops_k⁻¹ · (±T^b).
    let mut cur = *m;
    let mut word = MCGWord::new();
    while cur.c != 0 {
        let q = cur.a.div_euclid(cur.c);
        if q != 0 {
            cur = SL2Z {
                a: cur.a - q * cur.c,
                b: cur.b - q * cur.d,
                c: cur.c,
                d: cur.d,
            };
            word.push(Letter::T, q);
        }
        cur = SL2Z {
            a: -cur.c,
            b: -cur.d,
            c: cur.a,
            d: cur.b,
        };
        word.push(Letter::S, -1);
    }
    if cur.a == 1 {
        word.push(Letter::T, cur.b);
    } else {
        // -(1, -b; 0, 1) = S² T^{-b}
        word.push(Letter::S, 2);
        word.push(Letter::T, -cur.b);
    }
    debug_assert_eq!(word.to_sl2z(), Some(*m));
    word
}
