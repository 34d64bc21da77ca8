use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Minimum digit count accepted for arbitrary-precision mode.
pub const MIN_ARBITRARY_DIGITS: u32 = 30;

/// Digit count used when arbitrary precision is requested without a count.
pub const DEFAULT_ARBITRARY_DIGITS: u32 = 50;

/// Working precision for numeric evaluation.
///
/// `Machine` is IEEE double; `Arbitrary { digits }` is a software float
/// carrying at least `digits` significant decimal digits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Precision {
    Machine,
    Arbitrary { digits: u32 },
}

impl Precision {
    pub fn arbitrary(digits: u32) -> Result<Self> {
        if digits < MIN_ARBITRARY_DIGITS {
            return Err(Error::InvalidInput(format!(
                "arbitrary precision requires at least {MIN_ARBITRARY_DIGITS} digits, got {digits}"
            )));
        }
        Ok(Precision::Arbitrary { digits })
    }

    /// Decimal digits carried by values at this precision.
    pub fn digits10(self) -> u32 {
        match self {
            Precision::Machine => 15,
            Precision::Arbitrary { digits } => digits,
        }
    }

    pub fn is_machine(self) -> bool {
        matches!(self, Precision::Machine)
    }

    /// Mantissa bits for the software float backend, with guard bits.
    pub(crate) fn bits(self) -> u32 {
        match self {
            Precision::Machine => 53,
            // log2(10) = 3.3219...; 32 guard bits absorb rounding in long chains
            Precision::Arbitrary { digits } => (digits as f64 * 3.3219280948873626).ceil() as u32 + 32,
        }
    }
}

impl Default for Precision {
    fn default() -> Self {
        Precision::Machine
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arbitrary_rejects_low_digit_counts() {
        assert!(Precision::arbitrary(10).is_err());
        assert!(Precision::arbitrary(30).is_ok());
    }

    #[test]
    fn bits_cover_requested_digits() {
        let p = Precision::arbitrary(100).unwrap();
        assert!(p.bits() > 332);
    }
}
