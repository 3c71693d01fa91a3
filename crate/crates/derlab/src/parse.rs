//! Expression grammar for polynomials and derivation declarations.
//!
//! Polynomials use the usual precedence grammar over `+ - * / ^` with
//! parentheses, integer and rational literals, and variables `x1..xn`.
//! Division is only defined by nonzero constants and `^` takes a literal
//! non-negative integer exponent. Derivation expressions are sums of terms
//! `[coefficient *] dxK`, where `dxK` stands for the partial derivative slot
//! of `xK`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::derivation::Derivation;
use crate::poly::Poly;
use crate::ring::RingSpec;
use crate::scalar::Scalar;

/// Parse failure with a 1-based column.
#[derive(Debug, Error, PartialEq, Eq)]
#[error("{message} at column {col}")]
pub struct ParseError {
    pub col: usize,
    pub message: String,
}

impl ParseError {
    fn new(col: usize, message: impl Into<String>) -> Self {
        ParseError {
            col,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Token {
    Int(BigInt),
    Var(usize),
    Dx(usize),
    Name(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Eq,
    Colon,
    Comma,
}

/// Tokenize one line. A `#` starts a comment running to the end of the line.
pub(crate) fn lex(text: &str) -> Result<Vec<(Token, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let col = i + 1;
        let b = bytes[i];
        match b {
            b' ' | b'\t' | b'\r' => i += 1,
            b'#' => break,
            b'+' => {
                toks.push((Token::Plus, col));
                i += 1;
            }
            b'-' => {
                toks.push((Token::Minus, col));
                i += 1;
            }
            b'*' => {
                toks.push((Token::Star, col));
                i += 1;
            }
            b'/' => {
                toks.push((Token::Slash, col));
                i += 1;
            }
            b'^' => {
                toks.push((Token::Caret, col));
                i += 1;
            }
            b'(' => {
                toks.push((Token::LParen, col));
                i += 1;
            }
            b')' => {
                toks.push((Token::RParen, col));
                i += 1;
            }
            b'=' => {
                toks.push((Token::Eq, col));
                i += 1;
            }
            b':' => {
                toks.push((Token::Colon, col));
                i += 1;
            }
            b',' => {
                toks.push((Token::Comma, col));
                i += 1;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let digits = &text[start..i];
                toks.push((Token::Int(digits.parse::<BigInt>().unwrap()), col));
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                let word = &text[start..i];
                toks.push((classify_word(word, col)?, col));
            }
            _ => {
                return Err(ParseError::new(
                    col,
                    format!("unexpected character {:?}", b as char),
                ));
            }
        }
    }
    Ok(toks)
}

fn classify_word(word: &str, col: usize) -> Result<Token, ParseError> {
    if let Some(idx) = variable_index(word, "x", col) {
        return Ok(Token::Var(idx?));
    }
    if let Some(idx) = variable_index(word, "dx", col) {
        return Ok(Token::Dx(idx?));
    }
    Ok(Token::Name(word.to_string()))
}

fn variable_index(word: &str, prefix: &str, col: usize) -> Option<Result<usize, ParseError>> {
    let rest = word.strip_prefix(prefix)?;
    if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    Some(
        rest.parse::<usize>()
            .map_err(|_| ParseError::new(col, "variable index too large")),
    )
}

pub(crate) struct Cursor<'a> {
    toks: &'a [(Token, usize)],
    i: usize,
    end_col: usize,
}

impl<'a> Cursor<'a> {
    pub(crate) fn new(toks: &'a [(Token, usize)], end_col: usize) -> Self {
        Cursor {
            toks,
            i: 0,
            end_col,
        }
    }

    pub(crate) fn peek(&self) -> Option<&Token> {
        self.toks.get(self.i).map(|(t, _)| t)
    }

    fn peek_second(&self) -> Option<&Token> {
        self.toks.get(self.i + 1).map(|(t, _)| t)
    }

    pub(crate) fn col(&self) -> usize {
        self.toks
            .get(self.i)
            .map(|(_, c)| *c)
            .unwrap_or(self.end_col)
    }

    pub(crate) fn bump(&mut self) -> Option<&'a Token> {
        let t = self.toks.get(self.i).map(|(t, _)| t);
        if t.is_some() {
            self.i += 1;
        }
        t
    }

    pub(crate) fn at_end(&self) -> bool {
        self.i >= self.toks.len()
    }

    pub(crate) fn expect_end(&self) -> Result<(), ParseError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(ParseError::new(self.col(), "unexpected trailing input"))
        }
    }
}

/// Parse a polynomial in the given ring. Series mode truncates as usual.
pub fn parse_poly(text: &str, ring: RingSpec) -> Result<Poly, ParseError> {
    let toks = lex(text)?;
    let mut cur = Cursor::new(&toks, text.len() + 1);
    let p = parse_expr(&mut cur, ring, false)?;
    cur.expect_end()?;
    Ok(p)
}

fn parse_expr(cur: &mut Cursor, ring: RingSpec, stop_before_dx: bool) -> Result<Poly, ParseError> {
    let mut acc = parse_term(cur, ring, stop_before_dx)?;
    loop {
        match cur.peek() {
            Some(Token::Plus) => {
                cur.bump();
                acc = &acc + &parse_term(cur, ring, stop_before_dx)?;
            }
            Some(Token::Minus) => {
                cur.bump();
                acc = &acc - &parse_term(cur, ring, stop_before_dx)?;
            }
            _ => return Ok(acc),
        }
    }
}

fn parse_term(cur: &mut Cursor, ring: RingSpec, stop_before_dx: bool) -> Result<Poly, ParseError> {
    let mut acc = parse_factor(cur, ring, stop_before_dx)?;
    loop {
        match cur.peek() {
            Some(Token::Star) => {
                if stop_before_dx && matches!(cur.peek_second(), Some(Token::Dx(_))) {
                    return Ok(acc);
                }
                cur.bump();
                acc = &acc * &parse_factor(cur, ring, stop_before_dx)?;
            }
            Some(Token::Slash) => {
                let col = cur.col();
                cur.bump();
                let rhs = parse_factor(cur, ring, stop_before_dx)?;
                let c = rhs.as_constant().ok_or_else(|| {
                    ParseError::new(col, "division is only defined by nonzero constants")
                })?;
                if c.is_zero() {
                    return Err(ParseError::new(col, "division by zero"));
                }
                acc = acc.scalar_mul(&(Scalar::one() / c));
            }
            _ => return Ok(acc),
        }
    }
}

fn parse_factor(cur: &mut Cursor, ring: RingSpec, stop_before_dx: bool) -> Result<Poly, ParseError> {
    if matches!(cur.peek(), Some(Token::Minus)) {
        cur.bump();
        return Ok(-&parse_factor(cur, ring, stop_before_dx)?);
    }
    parse_power(cur, ring, stop_before_dx)
}

fn parse_power(cur: &mut Cursor, ring: RingSpec, stop_before_dx: bool) -> Result<Poly, ParseError> {
    let mut acc = parse_atom(cur, ring, stop_before_dx)?;
    while matches!(cur.peek(), Some(Token::Caret)) {
        cur.bump();
        let col = cur.col();
        if matches!(cur.peek(), Some(Token::Minus)) {
            return Err(ParseError::new(col, "negative exponent"));
        }
        match cur.bump() {
            Some(Token::Int(n)) => {
                let e = u32::try_from(n).map_err(|_| ParseError::new(col, "exponent too large"))?;
                acc = acc.pow(e);
            }
            _ => return Err(ParseError::new(col, "exponent must be an integer literal")),
        }
    }
    Ok(acc)
}

fn parse_atom(cur: &mut Cursor, ring: RingSpec, stop_before_dx: bool) -> Result<Poly, ParseError> {
    let col = cur.col();
    match cur.bump() {
        Some(Token::LParen) => {
            let inner = parse_expr(cur, ring, stop_before_dx)?;
            match cur.bump() {
                Some(Token::RParen) => Ok(inner),
                _ => Err(ParseError::new(cur.col().max(col), "expected ')'")),
            }
        }
        Some(Token::Int(n)) => Ok(Poly::constant(ring, Scalar::from_integer(n.clone()))),
        Some(Token::Var(j)) => {
            if *j < 1 || *j > ring.nvars() {
                Err(ParseError::new(col, "variable index out of range"))
            } else {
                Ok(Poly::var(ring, *j))
            }
        }
        Some(Token::Dx(_)) => Err(ParseError::new(
            col,
            "dx references are not allowed inside a polynomial",
        )),
        Some(Token::Name(w)) => Err(ParseError::new(col, format!("unknown symbol {w:?}"))),
        Some(_) => Err(ParseError::new(col, "expected a term")),
        None => Err(ParseError::new(col, "unexpected end of expression")),
    }
}

/// Parse a derivation expression (the right-hand side of a `der` line):
/// a signed sum of `[coefficient *] dxK` terms.
pub(crate) fn parse_derivation_expr(
    cur: &mut Cursor,
    ring: RingSpec,
) -> Result<Derivation, ParseError> {
    // a bare 0 declares the zero derivation
    if matches!(cur.peek(), Some(Token::Int(v)) if v.is_zero()) && cur.peek_second().is_none() {
        cur.bump();
        return Ok(Derivation::zero(ring));
    }
    let n = ring.nvars();
    let mut coeffs = vec![Poly::zero(ring); n];
    loop {
        // leading or separating signs, any number of them
        let mut negative = false;
        let mut saw_sign = false;
        loop {
            match cur.peek() {
                Some(Token::Plus) => {
                    cur.bump();
                    saw_sign = true;
                }
                Some(Token::Minus) => {
                    cur.bump();
                    negative = !negative;
                    saw_sign = true;
                }
                _ => break,
            }
        }
        if cur.at_end() {
            if saw_sign {
                return Err(ParseError::new(cur.col(), "expected a derivation term"));
            }
            break;
        }
        let (slot, coeff) = parse_derivation_term(cur, ring)?;
        let coeff = if negative { -&coeff } else { coeff };
        coeffs[slot - 1] = &coeffs[slot - 1] + &coeff;
        match cur.peek() {
            Some(Token::Plus) | Some(Token::Minus) => continue,
            None => break,
            _ => {
                return Err(ParseError::new(
                    cur.col(),
                    "expected '+', '-', or end of declaration",
                ))
            }
        }
    }
    Ok(Derivation::new(ring, coeffs))
}

fn parse_derivation_term(cur: &mut Cursor, ring: RingSpec) -> Result<(usize, Poly), ParseError> {
    if let Some(Token::Dx(j)) = cur.peek() {
        let j = *j;
        let col = cur.col();
        cur.bump();
        check_dx_index(j, ring, col)?;
        return Ok((j, Poly::one(ring)));
    }
    let coeff = parse_expr(cur, ring, true)?;
    let col = cur.col();
    match cur.bump() {
        Some(Token::Star) => {}
        _ => return Err(ParseError::new(col, "expected '*' before dx")),
    }
    let col = cur.col();
    match cur.bump() {
        Some(Token::Dx(j)) => {
            check_dx_index(*j, ring, col)?;
            Ok((*j, coeff))
        }
        _ => Err(ParseError::new(col, "expected a dx reference")),
    }
}

fn check_dx_index(j: usize, ring: RingSpec, col: usize) -> Result<(), ParseError> {
    if j < 1 || j > ring.nvars() {
        Err(ParseError::new(col, "variable index out of range"))
    } else {
        Ok(())
    }
}

/// Parse a full derivation expression from text (used by tests and the
/// session loader).
pub fn parse_derivation(text: &str, ring: RingSpec) -> Result<Derivation, ParseError> {
    let toks = lex(text)?;
    let mut cur = Cursor::new(&toks, text.len() + 1);
    let d = parse_derivation_expr(&mut cur, ring)?;
    cur.expect_end()?;
    Ok(d)
}
