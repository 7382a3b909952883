//! Exact parsing of rational literals: `-3`, `-3/7`, `0.25`, `.5`.

use std::fmt;

use stw_core::series::int;
use stw_core::series::Rational;

use num_traits::Zero;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseRationalError {
    /// Byte offset of the offending character (the text length for
    /// truncated input).
    pub position: usize,
    pub kind: ParseRationalErrorKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParseRationalErrorKind {
    Empty,
    UnexpectedChar,
    MissingDigits,
    ZeroDenominator,
}

impl fmt::Display for ParseRationalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what = match self.kind {
            ParseRationalErrorKind::Empty => "empty input",
            ParseRationalErrorKind::UnexpectedChar => "unexpected character",
            ParseRationalErrorKind::MissingDigits => "expected a digit",
            ParseRationalErrorKind::ZeroDenominator => "zero denominator",
        };
        write!(f, "{what} at position {}", self.position)
    }
}

impl std::error::Error for ParseRationalError {}

fn err(position: usize, kind: ParseRationalErrorKind) -> ParseRationalError {
    ParseRationalError { position, kind }
}

/// Consumes a run of ASCII digits starting at `start`; returns the end index.
fn digits(bytes: &[u8], start: usize) -> usize {
    start + bytes[start..].iter().take_while(|b| b.is_ascii_digit()).count()
}

fn big(text: &str) -> Rational {
    Rational::from_integer(text.parse().expect("validated digits"))
}

/// Parses an optionally signed integer, a fraction `a/b`, or a finite
/// decimal. Decimals are exact: `"0.25"` is `1/4`.
pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    use ParseRationalErrorKind::*;
    let bytes = text.as_bytes();
    if bytes.is_empty() {
        return Err(err(0, Empty));
    }
    let negative = bytes[0] == b'-';
    let start = usize::from(matches!(bytes[0], b'-' | b'+'));
    let int_end = digits(bytes, start);
    let whole = &text[start..int_end];
    let value = match bytes.get(int_end) {
        None if whole.is_empty() => return Err(err(int_end, MissingDigits)),
        None => big(whole),
        Some(b'/') => {
            if whole.is_empty() {
                return Err(err(int_end, MissingDigits));
            }
            let den_end = digits(bytes, int_end + 1);
            if den_end == int_end + 1 {
                return Err(err(den_end, MissingDigits));
            }
            if den_end != bytes.len() {
                return Err(err(den_end, UnexpectedChar));
            }
            let den = big(&text[int_end + 1..den_end]);
            if den.is_zero() {
                return Err(err(int_end + 1, ZeroDenominator));
            }
            big(whole) / den
        }
        Some(b'.') => {
            let frac_end = digits(bytes, int_end + 1);
            if frac_end != bytes.len() {
                return Err(err(frac_end, UnexpectedChar));
            }
            let frac = &text[int_end + 1..frac_end];
            if whole.is_empty() && frac.is_empty() {
                return Err(err(frac_end, MissingDigits));
            }
            let scale = Rational::from_integer(num_traits::pow(10.into(), frac.len()));
            let whole = if whole.is_empty() { int(0) } else { big(whole) };
            let frac = if frac.is_empty() { int(0) } else { big(frac) / scale };
            whole + frac
        }
        Some(_) if whole.is_empty() => return Err(err(int_end, MissingDigits)),
        Some(_) => return Err(err(int_end, UnexpectedChar)),
    };
    Ok(if negative { -value } else { value })
}
