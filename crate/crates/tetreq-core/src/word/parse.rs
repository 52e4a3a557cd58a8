//! Parsing of rendered letters, words, and equations.
//!
//! The inverse of the `Display` impls; used to read golden files back for
//! canonical comparison.

use alloc::string::ToString;
use alloc::vec::Vec;

use super::{LetterKind, OpLetter, OpWord, SpaceLabel, TetraEquation, WordError};

fn parse_label(s: &str) -> Result<(SpaceLabel, &str), WordError> {
    let rest = s
        .strip_prefix('(')
        .ok_or_else(|| WordError::Generation(alloc::format!("expected '(' in {s:?}")))?;
    let bytes = rest.as_bytes();
    if bytes.len() < 3 || bytes[2] != b')' {
        return Err(WordError::Generation(alloc::format!("malformed label in {s:?}")));
    }
    let digit = |b: u8| -> Result<u8, WordError> {
        if b.is_ascii_digit() {
            Ok(b - b'0')
        } else {
            Err(WordError::Generation(alloc::format!("bad digit in label {s:?}")))
        }
    };
    let label = SpaceLabel::new(digit(bytes[0])?, digit(bytes[1])?)?;
    Ok((label, &rest[3..]))
}

/// Parse one letter, e.g. `S(12)(13)(23)`, `S~(23)(13)(12)^-1`, `Q(12)(34)`.
pub fn parse_letter(token: &str) -> Result<OpLetter, WordError> {
    let (token, inverted) = match token.strip_suffix("^-1") {
        Some(t) => (t, true),
        None => (token, false),
    };
    let (kind, mut rest) = if let Some(r) = token.strip_prefix("S~") {
        (LetterKind::Stilde, r)
    } else if let Some(r) = token.strip_prefix('S') {
        (LetterKind::S, r)
    } else if let Some(r) = token.strip_prefix('Q') {
        (LetterKind::Q, r)
    } else {
        return Err(WordError::Generation(alloc::format!("unknown letter {token:?}")));
    };
    let mut labels = Vec::new();
    while !rest.is_empty() {
        let (label, tail) = parse_label(rest)?;
        labels.push(label);
        rest = tail;
    }
    let mut letter = match (kind, labels.as_slice()) {
        (LetterKind::S, [a, b, c]) => OpLetter::s(*a, *b, *c)?,
        (LetterKind::Stilde, [a, b, c]) => OpLetter::stilde(*a, *b, *c)?,
        (LetterKind::Q, [a, b]) => OpLetter::q(*a, *b)?,
        _ => {
            return Err(WordError::Generation(alloc::format!(
                "wrong label count for {token:?}"
            )))
        }
    };
    letter.inverted = inverted;
    Ok(letter)
}

/// Parse a whitespace-separated operator word.
pub fn parse_op_word(s: &str) -> Result<OpWord, WordError> {
    let letters = s
        .split_whitespace()
        .map(parse_letter)
        .collect::<Result<Vec<_>, _>>()?;
    Ok(OpWord(letters))
}

/// Parse a rendered equation `name: lhs = rhs`.
pub fn parse_equation(line: &str) -> Result<TetraEquation, WordError> {
    let (name, rest) = line
        .split_once(':')
        .ok_or_else(|| WordError::Generation("missing ':' in equation line".to_string()))?;
    let (lhs, rhs) = rest
        .split_once('=')
        .ok_or_else(|| WordError::Generation("missing '=' in equation line".to_string()))?;
    Ok(TetraEquation {
        name: name.trim().to_string(),
        lhs: parse_op_word(lhs)?,
        rhs: parse_op_word(rhs)?,
    })
}
