//! Exact decimal numbers.
//!
//! Attribute ranges and interval bounds rely on exact value identity:
//! two cells holding `2.50` and `2.5` must land on the same range entry,
//! and bound comparisons must never suffer float rounding. Values are
//! therefore kept as scaled integers (`mantissa * 10^-scale`) normalized
//! so that equal numbers have identical representations.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::ser::{Serialize, Serializer};

/// An exact decimal: `mantissa / 10^scale`, with no trailing zeros in the
/// fractional part (so `Eq`/`Hash` can be derived structurally).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Value {
    mantissa: i64,
    scale: u8,
}

/// Why a cell failed to parse as a decimal number.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseValueError {
    #[error("empty value")]
    Empty,
    #[error("invalid decimal number `{0}`")]
    Invalid(String),
    #[error("number `{0}` out of representable range")]
    OutOfRange(String),
}

const MAX_SCALE: u32 = 18;
const POW10: [i64; 19] = {
    let mut t = [1i64; 19];
    let mut i = 1;
    while i < 19 {
        t[i] = t[i - 1] * 10;
        i += 1;
    }
    t
};

impl Value {
    /// Builds a value from an integer.
    pub fn from_int(v: i64) -> Value {
        Value {
            mantissa: v,
            scale: 0,
        }
    }

    /// Builds `mantissa * 10^-scale`, normalizing trailing zeros away.
    pub fn from_scaled(mantissa: i64, scale: u32) -> Result<Value, ParseValueError> {
        if scale > MAX_SCALE {
            return Err(ParseValueError::OutOfRange(format!("{mantissa}e-{scale}")));
        }
        let mut m = mantissa;
        let mut s = scale;
        while s > 0 && m % 10 == 0 {
            m /= 10;
            s -= 1;
        }
        Ok(Value {
            mantissa: m,
            scale: s as u8,
        })
    }

    pub fn is_integer(&self) -> bool {
        self.scale == 0
    }

    /// Nearest `f64`; used only for reporting, never for comparisons.
    pub fn as_f64(&self) -> f64 {
        self.mantissa as f64 / POW10[self.scale as usize] as f64
    }

    fn widened(&self, to_scale: u8) -> i128 {
        debug_assert!(to_scale >= self.scale);
        self.mantissa as i128 * POW10[(to_scale - self.scale) as usize] as i128
    }
}

impl Ord for Value {
    fn cmp(&self, other: &Value) -> Ordering {
        let s = self.scale.max(other.scale);
        self.widened(s).cmp(&other.widened(s))
    }
}

impl PartialOrd for Value {
    fn partial_cmp(&self, other: &Value) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl FromStr for Value {
    type Err = ParseValueError;

    fn from_str(raw: &str) -> Result<Value, ParseValueError> {
        let text = raw.trim();
        if text.is_empty() {
            return Err(ParseValueError::Empty);
        }
        let invalid = || ParseValueError::Invalid(raw.to_string());
        let out_of_range = || ParseValueError::OutOfRange(raw.to_string());

        let (body, exp) = match text.find(['e', 'E']) {
            Some(pos) => {
                let exp: i32 = text[pos + 1..].parse().map_err(|_| invalid())?;
                (&text[..pos], exp)
            }
            None => (text, 0),
        };

        let (digits, negative) = match body.strip_prefix('-') {
            Some(rest) => (rest, true),
            None => (body.strip_prefix('+').unwrap_or(body), false),
        };
        let (int_part, frac_part) = match digits.find('.') {
            Some(pos) => (&digits[..pos], &digits[pos + 1..]),
            None => (digits, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(invalid());
        }
        if !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(invalid());
        }
        // Trailing fractional zeros carry no information; dropping them
        // early keeps the mantissa accumulator from overflowing on inputs
        // like `1.0000000000000000000`.
        let frac_part = frac_part.trim_end_matches('0');
        if !int_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(invalid());
        }

        let mut mantissa: i64 = 0;
        for b in int_part.bytes().chain(frac_part.bytes()) {
            mantissa = mantissa
                .checked_mul(10)
                .and_then(|m| m.checked_add((b - b'0') as i64))
                .ok_or_else(out_of_range)?;
        }
        if negative {
            mantissa = -mantissa;
        }

        // The decimal point sits frac_part.len() digits from the right;
        // the exponent shifts it the other way.
        let scale = frac_part.len() as i32 - exp;
        if scale > MAX_SCALE as i32 {
            // Representable only if the extra precision is all zeros.
            let excess = (scale - MAX_SCALE as i32) as u32;
            if excess > MAX_SCALE || mantissa % POW10[excess as usize] != 0 {
                return Err(out_of_range());
            }
            return Value::from_scaled(mantissa / POW10[excess as usize], MAX_SCALE);
        }
        if scale < 0 {
            let shift = (-scale) as u32;
            if shift > MAX_SCALE {
                return Err(out_of_range());
            }
            mantissa = mantissa
                .checked_mul(POW10[shift as usize])
                .ok_or_else(out_of_range)?;
            return Ok(Value::from_int(mantissa));
        }
        Value::from_scaled(mantissa, scale as u32)
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.scale == 0 {
            return write!(f, "{}", self.mantissa);
        }
        let sign = if self.mantissa < 0 { "-" } else { "" };
        let abs = self.mantissa.unsigned_abs();
        let pow = POW10[self.scale as usize] as u64;
        write!(
            f,
            "{sign}{}.{:0width$}",
            abs / pow,
            abs % pow,
            width = self.scale as usize
        )
    }
}

impl Serialize for Value {
    /// Integers serialize as JSON integers; fractional values as the
    /// nearest `f64` (shortest round-trip printing, so `2.5` stays `2.5`).
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        if self.scale == 0 {
            serializer.serialize_i64(self.mantissa)
        } else {
            serializer.serialize_f64(self.as_f64())
        }
    }
}

impl From<i64> for Value {
    fn from(v: i64) -> Value {
        Value::from_int(v)
    }
}
