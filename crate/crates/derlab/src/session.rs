//! Session files: one ring declaration followed by named derivations and
//! families.
//!
//! ```text
//! ring poly 3
//! der d1 = dx1
//! der d2 = dx2
//! der d3 = (x3^2)*dx1 + x3*dx2 + 2*dx3
//! family D : d1, d2, d3
//! ```

use std::path::Path;

use thiserror::Error;

use crate::derivation::{Derivation, DerivationFamily};
use crate::parse::{self, ParseError, Token};
use crate::ring::RingSpec;

#[derive(Debug, Error)]
pub enum SessionError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("missing ring declaration")]
    MissingRing,
    #[error("duplicate ring declaration, line {line}")]
    DuplicateRing { line: usize },
    #[error("{message}, line {line}")]
    Declaration { line: usize, message: String },
    #[error("{source}, line {line}")]
    Expr { line: usize, source: ParseError },
}

impl SessionError {
    fn decl(line: usize, message: impl Into<String>) -> Self {
        SessionError::Declaration {
            line,
            message: message.into(),
        }
    }
}

/// A parsed and validated session: every derivation conforms to the single
/// declared ring and every family reference resolves.
#[derive(Debug, Clone)]
pub struct Session {
    pub ring: RingSpec,
    derivations: Vec<(String, Derivation)>,
    families: Vec<(String, DerivationFamily)>,
}

impl Session {
    pub fn load(path: &Path) -> Result<Session, SessionError> {
        let text = std::fs::read_to_string(path).map_err(|e| SessionError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        Session::parse_str(&text)
    }

    pub fn parse_str(text: &str) -> Result<Session, SessionError> {
        let mut ring: Option<RingSpec> = None;
        let mut derivations: Vec<(String, Derivation)> = Vec::new();
        let mut families: Vec<(String, DerivationFamily)> = Vec::new();

        for (idx, raw_line) in text.lines().enumerate() {
            let line = idx + 1;
            let toks = parse::lex(raw_line).map_err(|source| SessionError::Expr { line, source })?;
            if toks.is_empty() {
                continue;
            }
            let keyword = match &toks[0].0 {
                Token::Name(w) => w.as_str(),
                _ => return Err(SessionError::decl(line, "expected a declaration keyword")),
            };
            match keyword {
                "ring" => {
                    if ring.is_some() {
                        return Err(SessionError::DuplicateRing { line });
                    }
                    ring = Some(parse_ring_decl(&toks[1..], line)?);
                }
                "der" => {
                    let ring = ring.ok_or_else(|| {
                        SessionError::decl(line, "ring declaration must come first")
                    })?;
                    let (name, der) = parse_der_decl(&toks[1..], raw_line.len(), ring, line)?;
                    if derivations.iter().any(|(n, _)| *n == name) {
                        return Err(SessionError::decl(
                            line,
                            format!("duplicate derivation name {name:?}"),
                        ));
                    }
                    derivations.push((name, der));
                }
                "family" => {
                    let ring = ring.ok_or_else(|| {
                        SessionError::decl(line, "ring declaration must come first")
                    })?;
                    let (name, fam) = parse_family_decl(&toks[1..], &derivations, ring, line)?;
                    if families.iter().any(|(n, _)| *n == name) {
                        return Err(SessionError::decl(
                            line,
                            format!("duplicate family name {name:?}"),
                        ));
                    }
                    families.push((name, fam));
                }
                other => {
                    return Err(SessionError::decl(
                        line,
                        format!("unknown declaration {other:?} (expected ring, der, or family)"),
                    ))
                }
            }
        }
        let ring = ring.ok_or(SessionError::MissingRing)?;
        Ok(Session {
            ring,
            derivations,
            families,
        })
    }

    pub fn derivation(&self, name: &str) -> Option<&Derivation> {
        self.derivations
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, d)| d)
    }

    pub fn family(&self, name: &str) -> Option<&DerivationFamily> {
        self.families
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, f)| f)
    }

    pub fn derivations(&self) -> impl Iterator<Item = (&str, &Derivation)> {
        self.derivations.iter().map(|(n, d)| (n.as_str(), d))
    }

    pub fn families(&self) -> impl Iterator<Item = (&str, &DerivationFamily)> {
        self.families.iter().map(|(n, f)| (n.as_str(), f))
    }
}

fn parse_ring_decl(toks: &[(Token, usize)], line: usize) -> Result<RingSpec, SessionError> {
    let mode = match toks.first() {
        Some((Token::Name(w), _)) if w == "poly" || w == "series" => w.as_str(),
        _ => {
            return Err(SessionError::decl(
                line,
                "ring declaration needs 'poly' or 'series'",
            ))
        }
    };
    let nvars = match toks.get(1) {
        Some((Token::Int(n), _)) => match usize::try_from(n) {
            Ok(v) if v >= 1 => v,
            _ => return Err(SessionError::decl(line, "ring needs at least one variable")),
        },
        _ => return Err(SessionError::decl(line, "ring needs a variable count")),
    };
    match mode {
        "poly" => {
            if toks.len() > 2 {
                return Err(SessionError::decl(
                    line,
                    "polynomial ring takes no truncation clause",
                ));
            }
            Ok(RingSpec::polynomial(nvars))
        }
        _ => {
            match (toks.get(2), toks.get(3)) {
                (Some((Token::Name(w), _)), Some((Token::Int(t), _))) if w == "trunc" => {
                    if toks.len() > 4 {
                        return Err(SessionError::decl(line, "unexpected input after trunc"));
                    }
                    match u32::try_from(t) {
                        Ok(t) if t >= 1 => Ok(RingSpec::series(nvars, t)),
                        _ => Err(SessionError::decl(
                            line,
                            "series truncation order must be at least 1",
                        )),
                    }
                }
                _ => Err(SessionError::decl(
                    line,
                    "series ring needs 'trunc N'",
                )),
            }
        }
    }
}

fn parse_der_decl(
    toks: &[(Token, usize)],
    line_len: usize,
    ring: RingSpec,
    line: usize,
) -> Result<(String, Derivation), SessionError> {
    let name = match toks.first() {
        Some((Token::Name(w), _)) => w.clone(),
        _ => return Err(SessionError::decl(line, "der declaration needs a name")),
    };
    if !matches!(toks.get(1), Some((Token::Eq, _))) {
        return Err(SessionError::decl(line, "der declaration needs '='"));
    }
    let mut cur = parse::Cursor::new(&toks[2..], line_len + 1);
    let der = parse::parse_derivation_expr(&mut cur, ring)
        .and_then(|d| cur.expect_end().map(|_| d))
        .map_err(|source| SessionError::Expr { line, source })?;
    Ok((name, der))
}

fn parse_family_decl(
    toks: &[(Token, usize)],
    derivations: &[(String, Derivation)],
    ring: RingSpec,
    line: usize,
) -> Result<(String, DerivationFamily), SessionError> {
    let name = match toks.first() {
        Some((Token::Name(w), _)) => w.clone(),
        _ => return Err(SessionError::decl(line, "family declaration needs a name")),
    };
    if !matches!(toks.get(1), Some((Token::Colon, _))) {
        return Err(SessionError::decl(line, "family declaration needs ':'"));
    }
    let mut members: Vec<(String, Derivation)> = Vec::new();
    let mut expect_name = true;
    for (tok, _) in &toks[2..] {
        match (expect_name, tok) {
            (true, Token::Name(w)) => {
                let der = derivations
                    .iter()
                    .find(|(n, _)| n == w)
                    .map(|(_, d)| d.clone())
                    .ok_or_else(|| {
                        SessionError::decl(line, format!("unknown derivation name {w:?}"))
                    })?;
                if members.iter().any(|(n, _)| n == w) {
                    return Err(SessionError::decl(
                        line,
                        format!("duplicate family member {w:?}"),
                    ));
                }
                members.push((w.clone(), der));
                expect_name = false;
            }
            (false, Token::Comma) => expect_name = true,
            _ => {
                return Err(SessionError::decl(
                    line,
                    "family members must be comma-separated names",
                ))
            }
        }
    }
    if expect_name {
        return Err(SessionError::decl(line, "family needs at least one member"));
    }
    let fam = DerivationFamily::new(ring, members)
        .map_err(|e| SessionError::decl(line, e.to_string()))?;
    Ok((name, fam))
}
