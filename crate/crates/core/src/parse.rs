//! Text parsers for command-line and document inputs.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rootsys::Weight;

const MAX_TOKEN_LEN: usize = 256;

/// Signature pattern over `{+,-}`; the Unicode minus sign is accepted. `true` is `+`.
pub fn parse_pattern(text: &str) -> Result<Vec<bool>> {
    let text = text.trim();
    if text.is_empty() {
        return Err(Error::InvalidPattern("empty pattern".into()));
    }
    text.chars()
        .map(|c| match c {
            '+' => Ok(true),
            '-' | '\u{2212}' => Ok(false),
            other => Err(Error::InvalidPattern(format!("unexpected character {:?}", other))),
        })
        .collect()
}

/// A single exact rational: `3`, `-1/2`, `+4/6`.
pub fn parse_rational(token: &str) -> Result<BigRational> {
    let token = token.trim();
    if token.is_empty() || token.len() > MAX_TOKEN_LEN {
        return Err(Error::Parse(format!("bad rational {:?}", token)));
    }
    let token = token.replace('\u{2212}', "-");
    let (num, den) = match token.split_once('/') {
        Some((n, d)) => (n, d),
        None => (token.as_str(), "1"),
    };
    let parse_int = |s: &str| -> Result<BigInt> {
        let s = s.trim();
        let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::Parse(format!("bad integer {:?}", s)));
        }
        s.parse::<BigInt>().map_err(|e| Error::Parse(e.to_string()))
    };
    let n = parse_int(num)?;
    let d = parse_int(den)?;
    if d.is_zero() {
        return Err(Error::Parse("zero denominator".into()));
    }
    Ok(BigRational::new(n, d))
}

/// Comma-separated rational coordinates, e.g. `-1/2,1/2`.
pub fn parse_weight(text: &str) -> Result<Weight> {
    let text = text.trim();
    let text = text.strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(text);
    if text.trim().is_empty() {
        return Err(Error::Parse("empty weight".into()));
    }
    let coords = text.split(',').map(parse_rational).collect::<Result<Vec<_>>>()?;
    Ok(Weight::new(coords))
}

/// A Weyl group element named by a word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WordSpec {
    Identity,
    LongElement,
    /// Zero-based simple reflection indices, multiplied left to right.
    Word(Vec<usize>),
}

/// Parses `id`, `w0`, or a dot-separated product like `s1.s2` (1-based indices).
pub fn parse_word(text: &str) -> Result<WordSpec> {
    let text = text.trim();
    match text {
        "id" | "e" | "" => return Ok(WordSpec::Identity),
        "w0" => return Ok(WordSpec::LongElement),
        _ => {}
    }
    if text.len() > 64 * 1024 {
        return Err(Error::Parse("word too long".into()));
    }
    let mut letters = Vec::new();
    for part in text.split('.') {
        let digits = part.strip_prefix('s').ok_or_else(|| Error::Parse(format!("expected s<i>, found {:?}", part)))?;
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::Parse(format!("expected s<i>, found {:?}", part)));
        }
        let i: usize = digits.parse().map_err(|_| Error::Parse(format!("index out of range in {:?}", part)))?;
        if i == 0 {
            return Err(Error::Parse("simple reflections are numbered from 1".into()));
        }
        letters.push(i - 1);
    }
    Ok(WordSpec::Word(letters))
}

/// Formats zero-based letters as `s1.s2`, or `id` for the empty word.
pub fn format_word(letters: &[usize]) -> String {
    if letters.is_empty() {
        return "id".to_string();
    }
    letters.iter().map(|i| format!("s{}", i + 1)).collect::<Vec<_>>().join(".")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("-1/2").unwrap(), BigRational::new((-1).into(), 2.into()));
        assert_eq!(parse_rational("4/6").unwrap(), BigRational::new(2.into(), 3.into()));
        assert_eq!(parse_rational(" 7 ").unwrap(), BigRational::from_integer(7.into()));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("1/").is_err());
        assert!(parse_rational("--1").is_err());
        assert!(parse_rational("1.5").is_err());
    }

    #[test]
    fn weights() {
        let w = parse_weight("-1,0,1").unwrap();
        assert_eq!(w, Weight::from_integers(&[-1, 0, 1]));
        assert_eq!(parse_weight("(1/2,-1/2)").unwrap().dim(), 2);
        assert!(parse_weight("").is_err());
        assert!(parse_weight("1,,2").is_err());
    }

    #[test]
    fn words() {
        assert_eq!(parse_word("id").unwrap(), WordSpec::Identity);
        assert_eq!(parse_word("w0").unwrap(), WordSpec::LongElement);
        assert_eq!(parse_word("s1.s2").unwrap(), WordSpec::Word(vec![0, 1]));
        assert!(parse_word("s0").is_err());
        assert!(parse_word("s1..s2").is_err());
        assert!(parse_word("t1").is_err());
        assert!(parse_word("s99999999999999999999999").is_err());
    }

    #[test]
    fn patterns() {
        assert_eq!(parse_pattern("+-+").unwrap(), vec![true, false, true]);
        assert_eq!(parse_pattern("+\u{2212}").unwrap(), vec![true, false]);
        assert!(parse_pattern("").is_err());
        assert!(parse_pattern("+0").is_err());
    }

    proptest! {
        #[test]
        fn word_format_round_trip(letters in proptest::collection::vec(0usize..12, 0..10)) {
            let text = format_word(&letters);
            let parsed = parse_word(&text).unwrap();
            if letters.is_empty() {
                prop_assert_eq!(parsed, WordSpec::Identity);
            } else {
                prop_assert_eq!(parsed, WordSpec::Word(letters));
            }
        }

        #[test]
        fn weight_display_round_trip(coords in proptest::collection::vec((-50i64..50, 1i64..20), 1..8)) {
            let w = Weight::new(coords.iter().map(|&(n, d)| BigRational::new(n.into(), d.into())).collect());
            let text = w.to_string();
            prop_assert_eq!(parse_weight(&text).unwrap(), w);
        }
    }
}
