//! Tokenizer for the shared term syntax used by polynomials and dihedral
//! group ring elements: signed sums of `*`-separated factors, where a factor
//! is an integer, `t`, `t^k` (k possibly negative), `a` or `b`.

use num_bigint::BigInt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Factor {
    Int(BigInt),
    TPow(i64),
    A,
    B,
}

#[derive(Debug, Clone)]
pub(crate) struct Term {
    pub negative: bool,
    pub factors: Vec<(Factor, usize)>,
    pub pos: usize,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::parse(start, "expected integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digits parse as BigInt"))
    }

    fn small_integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        let negative = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let n = self.integer()?;
        let n: i64 = n
            .try_into()
            .map_err(|_| Error::parse(start, "exponent out of range"))?;
        Ok(if negative { -n } else { n })
    }

    fn factor(&mut self) -> Result<(Factor, usize)> {
        self.skip_ws();
        let pos = self.pos;
        match self.peek() {
            Some(c) if c.is_ascii_digit() => Ok((Factor::Int(self.integer()?), pos)),
            Some(b't') => {
                self.pos += 1;
                self.skip_ws();
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    Ok((Factor::TPow(self.small_integer()?), pos))
                } else {
                    Ok((Factor::TPow(1), pos))
                }
            }
            Some(b'a') => {
                self.pos += 1;
                Ok((Factor::A, pos))
            }
            Some(b'b') => {
                self.pos += 1;
                Ok((Factor::B, pos))
            }
            Some(c) => Err(Error::parse(
                pos,
                format!("unexpected character '{}'", c as char),
            )),
            None => Err(Error::parse(pos, "unexpected end of input")),
        }
    }

    fn term(&mut self, negative: bool) -> Result<Term> {
        self.skip_ws();
        let pos = self.pos;
        let mut factors = vec![self.factor()?];
        loop {
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
                factors.push(self.factor()?);
            } else {
                break;
            }
        }
        Ok(Term {
            negative,
            factors,
            pos,
        })
    }
}

/// Splits `src` into signed product terms.
pub(crate) fn parse_terms(src: &str) -> Result<Vec<Term>> {
    let mut lx = Lexer {
        src: src.as_bytes(),
        pos: 0,
    };
    let mut terms = Vec::new();
    lx.skip_ws();
    if lx.peek().is_none() {
        return Err(Error::parse(0, "empty expression"));
    }
    let mut negative = false;
    // A leading sign is allowed; `+-` and `-` both act as subtraction.
    loop {
        lx.skip_ws();
        match lx.peek() {
            Some(b'-') => {
                negative = !negative;
                lx.pos += 1;
                continue;
            }
            Some(b'+') if terms.is_empty() => {
                lx.pos += 1;
                continue;
            }
            _ => {}
        }
        terms.push(lx.term(negative)?);
        negative = false;
        lx.skip_ws();
        match lx.peek() {
            None => break,
            Some(b'+') => {
                lx.pos += 1;
                lx.skip_ws();
                while lx.peek() == Some(b'-') {
                    negative = !negative;
                    lx.pos += 1;
                    lx.skip_ws();
                }
            }
            Some(b'-') => {}
            Some(c) => {
                return Err(Error::parse(
                    lx.pos,
                    format!("expected '+' or '-', found '{}'", c as char),
                ))
            }
        }
    }
    Ok(terms)
}

/// Splits a bracketed matrix literal `[[x, y], [z, w]]` into entry strings.
pub(crate) fn split_matrix(src: &str) -> Result<Vec<Vec<String>>> {
    let s = src.trim();
    let inner = s
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| Error::parse(0, "matrix literal must be enclosed in [...]"))?;
    let mut rows = Vec::new();
    let mut depth = 0usize;
    let mut row_start = None;
    for (i, c) in inner.char_indices() {
        match c {
            '[' => {
                if depth == 0 {
                    row_start = Some(i + 1);
                }
                depth += 1;
            }
            ']' => {
                if depth == 0 {
                    return Err(Error::parse(i + 1, "unbalanced ']'"));
                }
                depth -= 1;
                if depth == 0 {
                    let start = row_start.take().expect("row start set");
                    let entries: Vec<String> = inner[start..i]
                        .split(',')
                        .map(|e| e.trim().to_string())
                        .collect();
                    rows.push(entries);
                }
            }
            ',' | ' ' | '\t' | '\n' if depth == 0 => {}
            _ if depth == 0 => return Err(Error::parse(i + 1, "unexpected text between rows")),
            _ => {}
        }
    }
    if depth != 0 {
        return Err(Error::parse(s.len(), "unbalanced '['"));
    }
    if let Some(first) = rows.first() {
        if rows.iter().any(|r| r.len() != first.len()) {
            return Err(Error::parse(0, "ragged matrix literal"));
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splits_signed_terms() {
        let terms = parse_terms("3*t^2 - t + 1").unwrap();
        assert_eq!(terms.len(), 3);
        assert!(terms[1].negative);
        assert_eq!(terms[0].factors[1].0, Factor::TPow(2));
    }

    #[test]
    fn plus_minus_is_subtraction() {
        let terms = parse_terms("2*t^1+-1*t^0").unwrap();
        assert!(terms[1].negative);
    }

    #[test]
    fn negative_exponents_and_letters() {
        let terms = parse_terms("2*t^-1*a + b").unwrap();
        assert_eq!(terms[0].factors[1].0, Factor::TPow(-1));
        assert_eq!(terms[0].factors[2].0, Factor::A);
        assert_eq!(terms[1].factors[0].0, Factor::B);
    }

    #[test]
    fn error_reports_position() {
        match parse_terms("t + x") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn matrix_literal() {
        let m = split_matrix("[[t^2*a + a, 0], [b, 2]]").unwrap();
        assert_eq!(m, vec![vec!["t^2*a + a", "0"], vec!["b", "2"]]);
        assert!(split_matrix("[[1,2],[3]]").is_err());
    }
}
