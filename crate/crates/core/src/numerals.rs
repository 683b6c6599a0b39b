//! Base-β digit expansions and their two textual forms.
//!
//! Digits are stored most-significant first. Bases up to 36 render with the
//! alphabet `0-9A-Z`; larger bases render as a parenthesized tuple of decimal
//! components, e.g. `(1,31)` for 181 in base 150.

use crate::error::{Error, Result};

/// Largest base rendered with single alphanumeric characters.
pub const MAX_ALPHANUMERIC_BASE: u64 = 36;

const ALPHABET: &[u8; 36] = b"0123456789ABCDEFGHIJKLMNOPQRSTUVWXYZ";

/// An integer together with its base-β expansion.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Numeral {
    value: u128,
    base: u64,
    digits: Vec<u64>,
}

impl Numeral {
    pub fn new(value: u128, base: u64) -> Result<Self> {
        let digits = to_digits(value, base)?;
        Ok(Self { value, base, digits })
    }

    pub fn from_digits(digits: &[u64], base: u64) -> Result<Self> {
        let value = from_digits(digits, base)?;
        Self::new(value, base)
    }

    pub fn value(&self) -> u128 {
        self.value
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl std::fmt::Display for Numeral {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&render(&self.digits, self.base))
    }
}

fn check_base(base: u64) -> Result<()> {
    if base < 2 {
        return Err(Error::InvalidBase(base));
    }
    Ok(())
}

/// Expansion of `n` in `base`, most-significant digit first. Zero is `[0]`.
pub fn to_digits(n: u128, base: u64) -> Result<Vec<u64>> {
    check_base(base)?;
    if n == 0 {
        return Ok(vec![0]);
    }
    let b = base as u128;
    let mut rest = n;
    let mut digits = Vec::new();
    while rest > 0 {
        digits.push((rest % b) as u64);
        rest /= b;
    }
    digits.reverse();
    Ok(digits)
}

/// Evaluates a most-significant-first digit sequence. Leading zeros are allowed.
pub fn from_digits(digits: &[u64], base: u64) -> Result<u128> {
    check_base(base)?;
    let b = base as u128;
    digits.iter().try_fold(0u128, |acc, &d| {
        if d >= base {
            return Err(Error::DigitOutOfRange { digit: d, base });
        }
        acc.checked_mul(b)
            .and_then(|v| v.checked_add(d as u128))
            .ok_or(Error::Overflow)
    })
}

/// Number of base-β digits of `n` (1 for zero).
pub fn digit_count(n: u128, base: u64) -> usize {
    debug_assert!(base >= 2);
    let b = base as u128;
    let mut count = 1;
    let mut rest = n / b;
    while rest > 0 {
        count += 1;
        rest /= b;
    }
    count
}

/// Textual form of a single digit.
pub fn render_digit(d: u64, base: u64) -> String {
    if base <= MAX_ALPHANUMERIC_BASE {
        (ALPHABET[d as usize] as char).to_string()
    } else {
        d.to_string()
    }
}

/// Renders a digit sequence: alphanumeric for base ≤ 36, decimal tuple above.
///
/// An empty slice renders as zero.
pub fn render(digits: &[u64], base: u64) -> String {
    let zero = [0];
    let digits = if digits.is_empty() { &zero[..] } else { digits };
    if base <= MAX_ALPHANUMERIC_BASE {
        digits
            .iter()
            .map(|&d| ALPHABET[d as usize] as char)
            .collect()
    } else {
        let parts: Vec<String> = digits.iter().map(u64::to_string).collect();
        format!("({})", parts.join(","))
    }
}

/// Renders `n` in `base`.
pub fn render_value(n: u128, base: u64) -> Result<String> {
    Ok(render(&to_digits(n, base)?, base))
}

/// Parses either render format.
///
/// Alphanumeric text is accepted only when `base ≤ 36`; tuple text in any
/// base. A trailing comma inside the tuple is tolerated.
pub fn parse(text: &str, base: u64) -> Result<Vec<u64>> {
    check_base(base)?;
    let text = text.trim();
    if let Some(inner) = text.strip_prefix('(') {
        let inner = inner
            .strip_suffix(')')
            .ok_or_else(|| Error::MalformedNumeral(text.to_string()))?;
        let inner = inner.trim();
        let inner = inner.strip_suffix(',').unwrap_or(inner);
        if inner.trim().is_empty() {
            return Err(Error::MalformedNumeral(text.to_string()));
        }
        return inner
            .split(',')
            .map(|part| {
                let d: u64 = part
                    .trim()
                    .parse()
                    .map_err(|_| Error::MalformedNumeral(text.to_string()))?;
                if d >= base {
                    Err(Error::DigitOutOfRange { digit: d, base })
                } else {
                    Ok(d)
                }
            })
            .collect();
    }
    if text.is_empty() || base > MAX_ALPHANUMERIC_BASE {
        return Err(Error::MalformedNumeral(text.to_string()));
    }
    text.chars()
        .map(|ch| {
            let d = ch
                .to_digit(36)
                .map(u64::from)
                .ok_or(Error::InvalidDigitChar { ch, base })?;
            if d >= base {
                Err(Error::InvalidDigitChar { ch, base })
            } else {
                Ok(d)
            }
        })
        .collect()
}

/// Parses a numeral and evaluates it.
pub fn parse_value(text: &str, base: u64) -> Result<u128> {
    from_digits(&parse(text, base)?, base)
}
