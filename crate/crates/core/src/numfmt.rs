use std::f64::consts::LN_2;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

/// Unit for reported entropies. Computation is always in nats.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LogBase {
    #[default]
    Natural,
    Bits,
}

impl LogBase {
    /// Convert a natural-log quantity into this unit.
    pub fn convert(self, nats: f64) -> f64 {
        match self {
            LogBase::Natural => nats,
            LogBase::Bits => nats / LN_2,
        }
    }
}

impl fmt::Display for LogBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LogBase::Natural => "natural",
            LogBase::Bits => "bits",
        })
    }
}

impl FromStr for LogBase {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "natural" | "nats" | "e" => Ok(LogBase::Natural),
            "bits" | "2" => Ok(LogBase::Bits),
            other => Err(format!("unknown log base {other:?}")),
        }
    }
}

/// Decimal string with 15 significant digits. Magnitudes outside
/// `[1e-5, 1e15)` use scientific notation.
pub fn sig15(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    // exponent after rounding to 15 significant digits
    let sci = format!("{x:.14e}");
    let exp: i32 = sci[sci.find('e').expect("exponent") + 1..].parse().expect("integer exponent");
    if (-5..15).contains(&exp) {
        let decimals = (14 - exp).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        sci
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fifteen_significant_digits() {
        assert_eq!(sig15(0.4812118250596034), "0.481211825059603");
        assert_eq!(sig15(2f64.ln()), "0.693147180559945");
        assert_eq!(sig15(1.618033988749895), "1.61803398874989");
        assert_eq!(sig15(-3.0), "-3.00000000000000");
        assert_eq!(sig15(0.0), "0");
        assert_eq!(sig15(1.5e-9), "1.50000000000000e-9");
        assert_eq!(sig15(0.9999999999999999), "1.00000000000000");
        assert_eq!(sig15(123456.0), "123456.000000000");
    }

    #[test]
    fn bits_divides_by_ln2() {
        assert_eq!(LogBase::Bits.convert(2f64.ln()), 1.0);
        assert_eq!(LogBase::Natural.convert(0.25), 0.25);
        assert_eq!("bits".parse::<LogBase>().unwrap(), LogBase::Bits);
    }
}
