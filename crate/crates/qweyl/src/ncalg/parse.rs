//! Parser for the surface word syntax: generators `v, x-, x+, vb` (or the
//! momentum spelling `kv, k-, k+, kvb`) joined by `*`, with optional integer
//! powers written `^n`.

use thiserror::Error;

use super::Letter;

/// Which quartet a word is written in. The algebra is the same; only the
/// printed names differ.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Alphabet {
    Coordinate,
    Momentum,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("coordinate and momentum generators mixed in one word")]
    MixedAlphabets,
    #[error("negative or malformed power `{0}`")]
    BadPower(String),
    #[error("empty factor in word expression")]
    EmptyFactor,
}

/// Parses e.g. `"x+ * x-"`, `"kv^2 * k- * kvb"`. Whitespace around `*` is
/// optional. Returns the letter sequence and the alphabet it was written in;
/// the empty string parses to the empty word in the coordinate alphabet.
pub fn parse_word(input: &str) -> Result<(Vec<Letter>, Alphabet), ParseError> {
    let mut letters = Vec::new();
    let mut alphabet: Option<Alphabet> = None;
    let trimmed = input.trim();
    if trimmed.is_empty() {
        return Ok((letters, Alphabet::Coordinate));
    }
    for factor in trimmed.split('*') {
        let factor = factor.trim();
        if factor.is_empty() {
            return Err(ParseError::EmptyFactor);
        }
        let (name, power) = match factor.split_once('^') {
            None => (factor, 1u32),
            Some((n, p)) => {
                let power: u32 = p
                    .trim()
                    .parse()
                    .map_err(|_| ParseError::BadPower(p.trim().to_string()))?;
                (n.trim(), power)
            }
        };
        let (letter, alpha) = match name {
            "v" => (Letter::V, Alphabet::Coordinate),
            "x-" => (Letter::Minus, Alphabet::Coordinate),
            "x+" => (Letter::Plus, Alphabet::Coordinate),
            "vb" => (Letter::Vbar, Alphabet::Coordinate),
            "kv" => (Letter::V, Alphabet::Momentum),
            "k-" => (Letter::Minus, Alphabet::Momentum),
            "k+" => (Letter::Plus, Alphabet::Momentum),
            "kvb" => (Letter::Vbar, Alphabet::Momentum),
            other => return Err(ParseError::UnknownGenerator(other.to_string())),
        };
        match alphabet {
            None => alphabet = Some(alpha),
            Some(a) if a != alpha => return Err(ParseError::MixedAlphabets),
            _ => {}
        }
        letters.extend(std::iter::repeat(letter).take(power as usize));
    }
    Ok((letters, alphabet.unwrap_or(Alphabet::Coordinate)))
}
