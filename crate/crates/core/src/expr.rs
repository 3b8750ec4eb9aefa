//! Parser for class expressions such as `3L - E1 - 2E2`.
//!
//! An expression is a signed sum of terms; a term is an optional decimal
//! coefficient (implicitly 1), an optional `*`, and a basis symbol. The bare
//! literal `0` denotes the zero class. Whitespace is ignored everywhere and the
//! Unicode minus sign `−` is accepted.

use std::sync::Arc;

use thiserror::Error;

use crate::lattice::{HClass, IntersectionLattice};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("empty class expression")]
    Empty,
    #[error("unknown symbol `{symbol}` (basis: {basis})")]
    UnknownSymbol { symbol: String, basis: String },
    #[error("malformed integer `{0}`")]
    MalformedInteger(String),
    #[error("unexpected `{found}` at offset {offset}")]
    Unexpected { found: char, offset: usize },
    #[error("expression ends after a sign or coefficient")]
    Truncated,
}

pub fn parse_class(lattice: &Arc<IntersectionLattice>, expr: &str) -> Result<HClass, ParseError> {
    // Whitespace is dropped, but a number or symbol never continues across it.
    let mut gap = Vec::new();
    let mut chars: Vec<(usize, char)> = Vec::new();
    let mut after_space = false;
    for (i, c) in expr.char_indices() {
        if c.is_whitespace() {
            after_space = true;
            continue;
        }
        chars.push((i, if c == '−' { '-' } else { c }));
        gap.push(after_space);
        after_space = false;
    }
    if chars.is_empty() {
        return Err(ParseError::Empty);
    }
    let mut coords = vec![0i64; lattice.rank()];
    let mut pos = 0;
    let mut first = true;
    while pos < chars.len() {
        let mut sign = 1i64;
        match chars[pos].1 {
            '+' | '-' => {
                if chars[pos].1 == '-' {
                    sign = -1;
                }
                pos += 1;
            }
            c if !first => return Err(ParseError::Unexpected { found: c, offset: chars[pos].0 }),
            _ => {}
        }
        first = false;
        if pos >= chars.len() {
            return Err(ParseError::Truncated);
        }

        let digits_start = pos;
        while pos < chars.len() && chars[pos].1.is_ascii_digit() && (pos == digits_start || !gap[pos]) {
            pos += 1;
        }
        let coefficient = if pos > digits_start {
            let text: String = chars[digits_start..pos].iter().map(|(_, c)| c).collect();
            Some(text.parse::<i64>().map_err(|_| ParseError::MalformedInteger(text))?)
        } else {
            None
        };
        if pos < chars.len() && chars[pos].1 == '*' {
            if coefficient.is_none() {
                return Err(ParseError::Unexpected { found: '*', offset: chars[pos].0 });
            }
            pos += 1;
        }

        let sym_start = pos;
        if pos < chars.len() && chars[pos].1.is_ascii_alphabetic() {
            pos += 1;
            while pos < chars.len() && !gap[pos] && (chars[pos].1.is_ascii_alphanumeric() || chars[pos].1 == '_') {
                pos += 1;
            }
        }
        if pos == sym_start {
            match (coefficient, chars.get(pos)) {
                // A bare zero contributes nothing.
                (Some(0), None) | (Some(0), Some((_, '+' | '-'))) => continue,
                (Some(_), Some(&(offset, found))) if found != '+' && found != '-' => {
                    return Err(ParseError::Unexpected { found, offset })
                }
                (Some(c), _) => return Err(ParseError::MalformedInteger(format!("{c} (missing symbol)"))),
                (None, Some(&(offset, found))) => return Err(ParseError::Unexpected { found, offset }),
                (None, None) => return Err(ParseError::Truncated),
            }
        }
        let symbol: String = chars[sym_start..pos].iter().map(|(_, c)| c).collect();
        let index = lattice.symbol_index(&symbol).ok_or_else(|| ParseError::UnknownSymbol {
            symbol: symbol.clone(),
            basis: lattice.symbols().join(", "),
        })?;
        coords[index] += sign * coefficient.unwrap_or(1);
    }
    Ok(HClass::new(lattice, coords).expect("coordinate vector has lattice rank"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Rational64;

    fn blowup(n: usize) -> Arc<IntersectionLattice> {
        let mut symbols = vec!["L".to_string()];
        symbols.extend((1..=n).map(|i| format!("E{i}")));
        let rank = n + 1;
        let mut gram = vec![vec![0; rank]; rank];
        gram[0][0] = 1;
        for i in 1..rank {
            gram[i][i] = -1;
        }
        let mut k = vec![1; rank];
        k[0] = -3;
        IntersectionLattice::new("b", symbols, gram, k, vec![Rational64::from_integer(1); rank], None).unwrap()
    }

    #[test]
    fn parses_combinations() {
        let lat = blowup(2);
        assert_eq!(parse_class(&lat, "3L").unwrap().coords(), &[3, 0, 0]);
        assert_eq!(parse_class(&lat, "L + 2E1").unwrap().coords(), &[1, 2, 0]);
        assert_eq!(parse_class(&lat, " 3 L-E1 - 2 *E2 ").unwrap().coords(), &[3, -1, -2]);
        assert_eq!(parse_class(&lat, "−E2").unwrap().coords(), &[0, 0, -1]);
        assert_eq!(parse_class(&lat, "0").unwrap().coords(), &[0, 0, 0]);
        assert_eq!(parse_class(&lat, "L + L - E1 + 0").unwrap().coords(), &[2, -1, 0]);
    }

    #[test]
    fn long_symbol_names() {
        let lat = blowup(12);
        assert_eq!(parse_class(&lat, "E12 - E1").unwrap().coords()[12], 1);
    }

    #[test]
    fn errors() {
        let lat = blowup(1);
        assert_eq!(parse_class(&lat, "  "), Err(ParseError::Empty));
        assert!(matches!(parse_class(&lat, "3Q"), Err(ParseError::UnknownSymbol { .. })));
        assert!(matches!(parse_class(&lat, "99999999999999999999L"), Err(ParseError::MalformedInteger(_))));
        assert!(matches!(parse_class(&lat, "L -"), Err(ParseError::Truncated)));
        assert!(matches!(parse_class(&lat, "L E1"), Err(ParseError::Unexpected { .. })));
        assert!(matches!(parse_class(&lat, "3"), Err(ParseError::MalformedInteger(_))));
        assert!(matches!(parse_class(&lat, "L + *E1"), Err(ParseError::Unexpected { .. })));
    }
}
