use std::collections::BTreeMap;
use std::fmt;

use super::RawCategoryFile;
use crate::cyclo::{parse_scalar, CycScalar, MAX_CONDUCTOR};
use crate::mtc::Label;

/// Largest rank accepted by the parser.
pub const MAX_RANK: usize = 256;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax { expected: String },
    DuplicateEntry { entry: String },
    MissingAssignment { entry: String },
    LabelOutOfRange { label: String, rank: usize },
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::Syntax { expected } => write!(f, "syntax-error: expected {expected}"),
            ParseErrorKind::DuplicateEntry { entry } => write!(f, "duplicate-entry: {entry}"),
            ParseErrorKind::MissingAssignment { entry } => {
                write!(f, "missing-assignment: {entry}")
            }
            ParseErrorKind::LabelOutOfRange { label, rank } => {
                write!(f, "label-out-of-range: {label} (rank {rank})")
            }
        }
    }
}

/// A parse failure at a 1-based line and column.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

/// One whitespace-delimited token and its byte offset in the line.
#[derive(Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    at: usize,
}

struct Line<'a> {
    number: usize,
    text: &'a str,
    tokens: Vec<Token<'a>>,
}

impl<'a> Line<'a> {
    fn new(number: usize, raw: &'a str) -> Self {
        let text = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        };
        let text = text.trim_end_matches('\r');
        let mut tokens = Vec::new();
        let mut start = None;
        for (i, ch) in text.char_indices() {
            match (ch.is_whitespace(), start) {
                (true, Some(s)) => {
                    tokens.push(Token {
                        text: &text[s..i],
                        at: s,
                    });
                    start = None;
                }
                (false, None) => start = Some(i),
                _ => {}
            }
        }
        if let Some(s) = start {
            tokens.push(Token {
                text: &text[s..],
                at: s,
            });
        }
        Line {
            number,
            text,
            tokens,
        }
    }

    fn error_at(&self, at: usize, kind: ParseErrorKind) -> ParseError {
        ParseError {
            line: self.number,
            column: self.text[..at.min(self.text.len())].chars().count() + 1,
            kind,
        }
    }

    fn syntax(&self, at: usize, expected: impl Into<String>) -> ParseError {
        self.error_at(
            at,
            ParseErrorKind::Syntax {
                expected: expected.into(),
            },
        )
    }

    fn end(&self) -> usize {
        self.text.trim_end().len()
    }

    fn token(&self, idx: usize, expected: &str) -> Result<Token<'a>, ParseError> {
        self.tokens
            .get(idx)
            .copied()
            .ok_or_else(|| self.syntax(self.end(), expected))
    }

    fn expect_count(&self, n: usize) -> Result<(), ParseError> {
        match self.tokens.get(n) {
            Some(t) => Err(self.syntax(t.at, "end of line")),
            None => Ok(()),
        }
    }

    /// Everything after token `idx`, trimmed, with its offset.
    fn rest_from(&self, idx: usize, expected: &str) -> Result<Token<'a>, ParseError> {
        let t = self.token(idx, expected)?;
        Ok(Token {
            text: self.text[t.at..].trim_end(),
            at: t.at,
        })
    }
}

fn parse_number<T: std::str::FromStr>(
    line: &Line<'_>,
    tok: Token<'_>,
    expected: &str,
) -> Result<T, ParseError> {
    if tok.text.is_empty() || !tok.text.bytes().all(|b| b.is_ascii_digit()) {
        return Err(line.syntax(tok.at, expected));
    }
    tok.text.parse().map_err(|_| line.syntax(tok.at, expected))
}

struct Header {
    name: Option<String>,
    conductor: Option<u32>,
    rank: Option<usize>,
}

#[derive(Default)]
struct Body {
    units: Option<Vec<Label>>,
    dual: BTreeMap<Label, Label>,
    fusion: BTreeMap<(Label, Label, Label), u32>,
    twist: BTreeMap<Label, CycScalar>,
    dim: BTreeMap<Label, CycScalar>,
    smatrix: BTreeMap<(Label, Label), CycScalar>,
}

struct Parser {
    header: Header,
    body: Body,
}

impl Parser {
    fn conductor(&self) -> u32 {
        self.header.conductor.expect("checked by require_header")
    }

    fn rank(&self) -> usize {
        self.header.rank.expect("checked by require_header")
    }

    fn require_header(&self, line: &Line<'_>) -> Result<(), ParseError> {
        if self.header.name.is_none()
            || self.header.conductor.is_none()
            || self.header.rank.is_none()
        {
            return Err(line.syntax(0, "the mtc, conductor and rank header lines first"));
        }
        Ok(())
    }

    fn label(&self, line: &Line<'_>, tok: Token<'_>) -> Result<Label, ParseError> {
        let label: Label = parse_number(line, tok, "a label")?;
        if label >= self.rank() {
            return Err(line.error_at(
                tok.at,
                ParseErrorKind::LabelOutOfRange {
                    label: tok.text.to_string(),
                    rank: self.rank(),
                },
            ));
        }
        Ok(label)
    }

    fn scalar(&self, line: &Line<'_>, tok: Token<'_>) -> Result<CycScalar, ParseError> {
        parse_scalar(tok.text, self.conductor())
            .map_err(|e| line.syntax(tok.at + e.offset, e.expected))
    }

    fn duplicate(line: &Line<'_>, entry: String) -> ParseError {
        line.error_at(0, ParseErrorKind::DuplicateEntry { entry })
    }

    fn line(&mut self, line: &Line<'_>) -> Result<(), ParseError> {
        let Some(keyword) = line.tokens.first().copied() else {
            return Ok(());
        };
        match keyword.text {
            "mtc" => {
                let name = line.token(1, "a category name")?;
                line.expect_count(2)?;
                if self.header.name.is_some() {
                    return Err(Self::duplicate(line, "mtc".into()));
                }
                self.header.name = Some(name.text.to_string());
            }
            "conductor" => {
                let tok = line.token(1, "a conductor")?;
                line.expect_count(2)?;
                let expected = format!("a conductor between 1 and {MAX_CONDUCTOR}");
                let n: u32 = parse_number(line, tok, &expected)?;
                if n == 0 || n > MAX_CONDUCTOR {
                    return Err(line.syntax(tok.at, expected));
                }
                if self.header.conductor.is_some() {
                    return Err(Self::duplicate(line, "conductor".into()));
                }
                self.header.conductor = Some(n);
            }
            "rank" => {
                let tok = line.token(1, "a rank")?;
                line.expect_count(2)?;
                let expected = format!("a rank between 1 and {MAX_RANK}");
                let n: usize = parse_number(line, tok, &expected)?;
                if n == 0 || n > MAX_RANK {
                    return Err(line.syntax(tok.at, expected));
                }
                if self.header.rank.is_some() {
                    return Err(Self::duplicate(line, "rank".into()));
                }
                self.header.rank = Some(n);
            }
            "unit" => {
                self.require_header(line)?;
                let rest = line.rest_from(1, "a unit label")?;
                let mut units = Vec::new();
                let mut offset = rest.at;
                for part in rest.text.split(',') {
                    let lead = part.len() - part.trim_start().len();
                    let tok = Token {
                        text: part.trim(),
                        at: offset + lead,
                    };
                    units.push(self.label(line, tok)?);
                    offset += part.len() + 1;
                }
                if self.body.units.is_some() {
                    return Err(Self::duplicate(line, "unit".into()));
                }
                self.body.units = Some(units);
            }
            "dual" => {
                self.require_header(line)?;
                let rest = line.rest_from(1, "i->j")?;
                let Some(arrow) = rest.text.find("->") else {
                    return Err(line.syntax(rest.at, "i->j"));
                };
                let lhs = &rest.text[..arrow];
                let rhs = &rest.text[arrow + 2..];
                let i = self.label(
                    line,
                    Token {
                        text: lhs.trim(),
                        at: rest.at,
                    },
                )?;
                let j = self.label(
                    line,
                    Token {
                        text: rhs.trim(),
                        at: rest.at + arrow + 2 + (rhs.len() - rhs.trim_start().len()),
                    },
                )?;
                if self.body.dual.insert(i, j).is_some() {
                    return Err(Self::duplicate(line, format!("dual {i}")));
                }
            }
            "fusion" => {
                self.require_header(line)?;
                let i = self.label(line, line.token(1, "a label")?)?;
                let j = self.label(line, line.token(2, "a label")?)?;
                let k = self.label(line, line.token(3, "a label")?)?;
                let m: u32 =
                    parse_number(line, line.token(4, "a multiplicity")?, "a multiplicity")?;
                line.expect_count(5)?;
                if self.body.fusion.insert((i, j, k), m).is_some() {
                    return Err(Self::duplicate(line, format!("fusion {i} {j} {k}")));
                }
            }
            "twist" | "dim" => {
                self.require_header(line)?;
                let i = self.label(line, line.token(1, "a label")?)?;
                let x = self.scalar(line, line.rest_from(2, "a scalar")?)?;
                let map = if keyword.text == "twist" {
                    &mut self.body.twist
                } else {
                    &mut self.body.dim
                };
                if map.insert(i, x).is_some() {
                    return Err(Self::duplicate(line, format!("{} {i}", keyword.text)));
                }
            }
            "smatrix" => {
                self.require_header(line)?;
                let i = self.label(line, line.token(1, "a label")?)?;
                let j = self.label(line, line.token(2, "a label")?)?;
                let x = self.scalar(line, line.rest_from(3, "a scalar")?)?;
                if self.body.smatrix.insert((i, j), x).is_some() {
                    return Err(Self::duplicate(line, format!("smatrix {i} {j}")));
                }
            }
            _ => {
                return Err(line.syntax(
                    keyword.at,
                    "one of mtc, conductor, rank, unit, dual, fusion, twist, dim, smatrix",
                ))
            }
        }
        Ok(())
    }

    fn finish(self, eof_line: usize) -> Result<RawCategoryFile, ParseError> {
        let missing = |entry: String| ParseError {
            line: eof_line,
            column: 1,
            kind: ParseErrorKind::MissingAssignment { entry },
        };
        let name = self.header.name.ok_or_else(|| missing("mtc".into()))?;
        let conductor = self
            .header
            .conductor
            .ok_or_else(|| missing("conductor".into()))?;
        let rank = self.header.rank.ok_or_else(|| missing("rank".into()))?;
        let units = self.body.units.ok_or_else(|| missing("unit".into()))?;
        let take = |map: BTreeMap<Label, CycScalar>, what: &str| {
            (0..rank)
                .map(|i| {
                    map.get(&i)
                        .cloned()
                        .ok_or_else(|| missing(format!("{what} {i}")))
                })
                .collect::<Result<Vec<_>, _>>()
        };
        let dual = (0..rank)
            .map(|i| {
                self.body
                    .dual
                    .get(&i)
                    .copied()
                    .ok_or_else(|| missing(format!("dual {i}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let twist = take(self.body.twist, "twist")?;
        let dim = take(self.body.dim, "dim")?;
        let smatrix = if self.body.smatrix.is_empty() {
            None
        } else {
            let mut s = Vec::with_capacity(rank * rank);
            for i in 0..rank {
                for j in 0..rank {
                    s.push(
                        self.body
                            .smatrix
                            .get(&(i, j))
                            .cloned()
                            .ok_or_else(|| missing(format!("smatrix {i} {j}")))?,
                    );
                }
            }
            Some(s)
        };
        let fusion = self
            .body
            .fusion
            .into_iter()
            .filter(|&(_, m)| m != 0)
            .map(|((i, j, k), m)| (i, j, k, m))
            .collect();
        Ok(RawCategoryFile {
            name,
            conductor,
            rank,
            units,
            dual,
            fusion,
            twist,
            dim,
            smatrix,
        })
    }
}

/// Parses a category file.
pub fn parse_category(text: &str) -> Result<RawCategoryFile, ParseError> {
    let mut parser = Parser {
        header: Header {
            name: None,
            conductor: None,
            rank: None,
        },
        body: Body::default(),
    };
    let mut last = 0;
    for (idx, raw) in text.lines().enumerate() {
        last = idx + 1;
        parser.line(&Line::new(idx + 1, raw))?;
    }
    parser.finish(last + 1)
}

/// Parses raw bytes, reporting invalid UTF-8 as a syntax error at its position.
pub fn parse_category_bytes(bytes: &[u8]) -> Result<RawCategoryFile, ParseError> {
    match std::str::from_utf8(bytes) {
        Ok(text) => parse_category(text),
        Err(e) => {
            let good = &bytes[..e.valid_up_to()];
            let line = good.iter().filter(|&&b| b == b'\n').count() + 1;
            let start = good.iter().rposition(|&b| b == b'\n').map_or(0, |p| p + 1);
            let prefix = std::str::from_utf8(&good[start..]).unwrap_or("");
            Err(ParseError {
                line,
                column: prefix.chars().count() + 1,
                kind: ParseErrorKind::Syntax {
                    expected: "valid UTF-8".into(),
                },
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SEMION: &str = "\
mtc semion
conductor 4
rank 2
unit 0
dual 0->0
dual 1->1
fusion 0 0 0 1
fusion 0 1 1 1
fusion 1 0 1 1
fusion 1 1 0 1
twist 0 1
twist 1 z
dim 0 1
dim 1 1
";

    #[test]
    fn parses_and_round_trips() {
        let raw = parse_category(SEMION).unwrap();
        assert_eq!(raw.rank, 2);
        assert_eq!(raw.twist[1], CycScalar::zeta(4, 1).unwrap());
        assert_eq!(raw.serialize(), SEMION);
        raw.to_category().unwrap();
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = format!(
            "# header\n\n{}",
            SEMION.replace("rank 2", "rank 2   # two labels")
        );
        assert_eq!(
            parse_category(&text).unwrap(),
            parse_category(SEMION).unwrap()
        );
    }

    #[test]
    fn missing_dual_points_past_end() {
        let text = SEMION.replace("dual 1->1\n", "");
        let err = parse_category(&text).unwrap_err();
        assert_eq!(err.line, text.lines().count() + 1);
        assert_eq!(
            err.kind,
            ParseErrorKind::MissingAssignment {
                entry: "dual 1".into()
            }
        );
    }

    #[test]
    fn duplicate_twist() {
        let text = format!("{SEMION}twist 1 -z\n");
        let err = parse_category(&text).unwrap_err();
        assert_eq!(err.line, 15);
        assert!(matches!(err.kind, ParseErrorKind::DuplicateEntry { .. }));
    }

    #[test]
    fn scalar_error_column() {
        let text = SEMION.replace("twist 1 z", "twist 1 z^^2");
        let err = parse_category(&text).unwrap_err();
        assert_eq!((err.line, err.column), (12, 11));
    }

    #[test]
    fn label_out_of_range() {
        let text = SEMION.replace("fusion 1 1 0 1", "fusion 1 1 2 1");
        let err = parse_category(&text).unwrap_err();
        assert_eq!((err.line, err.column), (10, 12));
        assert!(matches!(err.kind, ParseErrorKind::LabelOutOfRange { .. }));
    }

    #[test]
    fn entries_need_header() {
        let err = parse_category("mtc x\nunit 0\n").unwrap_err();
        assert_eq!((err.line, err.column), (2, 1));
    }

    #[test]
    fn rejects_huge_conductor_and_bad_utf8() {
        let err = parse_category("mtc x\nconductor 99999999\n").unwrap_err();
        assert_eq!((err.line, err.column), (2, 11));
        let err = parse_category_bytes(b"mtc x\nra\xffnk 2\n").unwrap_err();
        assert_eq!((err.line, err.column), (2, 3));
    }
}
