//! Working-precision bookkeeping.
//!
//! Every operation in this crate computes internally at `digits + guard`
//! decimal digits and reports results at `digits`. The guard digits absorb
//! cancellation (the `sqrt(a^2+1) - a` steps lose several digits) and the
//! accumulated rounding of long series.

use crate::error::{Error, Result};
use rug::Float;
use rug::ops::Pow;

use std::f64::consts::LOG2_10;

/// Decimal working precision plus guard digits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrecisionCtx {
    /// Decimal digits of reported precision.
    pub digits: u32,
    /// Extra decimal digits carried internally.
    pub guard: u32,
}

impl PrecisionCtx {
    pub const MIN_DIGITS: u32 = 50;
    pub const MIN_GUARD: u32 = 20;
    pub const DEFAULT_GUARD: u32 = 50;

    pub fn new(digits: u32, guard: u32) -> Result<Self> {
        if digits < Self::MIN_DIGITS {
            return Err(Error::InvalidArgument(format!(
                "digits must be >= {}, got {digits}",
                Self::MIN_DIGITS
            )));
        }
        if guard < Self::MIN_GUARD {
            return Err(Error::InvalidArgument(format!(
                "guard must be >= {}, got {guard}",
                Self::MIN_GUARD
            )));
        }
        Ok(Self { digits, guard })
    }

    /// Context with the default guard of 50 digits.
    pub fn with_digits(digits: u32) -> Result<Self> {
        Self::new(digits, Self::DEFAULT_GUARD)
    }

    /// Internal decimal precision: digits + guard.
    pub fn working_digits(&self) -> u32 {
        self.digits + self.guard
    }

    /// Binary precision for the multiprecision layer, with a small margin
    /// so that `working_digits` decimal digits are always representable.
    pub fn bits(&self) -> u32 {
        (self.working_digits() as f64 * LOG2_10).ceil() as u32 + 16
    }

    /// Same context at double the reported digits (guard unchanged).
    pub fn doubled(&self) -> Self {
        Self {
            digits: self.digits * 2,
            guard: self.guard,
        }
    }

    /// 10^(-k) at this context's binary precision.
    pub fn pow10_neg(&self, k: i64) -> Float {
        pow10(self.bits(), -k)
    }

    /// The tail threshold 10^(-(digits+guard)) every series truncates at.
    pub fn tail_threshold(&self) -> Float {
        self.pow10_neg(self.working_digits() as i64)
    }
}

impl Default for PrecisionCtx {
    fn default() -> Self {
        Self {
            digits: 300,
            guard: Self::DEFAULT_GUARD,
        }
    }
}

/// 10^k as a Float at `bits` binary precision (k may be negative).
pub fn pow10(bits: u32, k: i64) -> Float {
    Float::with_val(bits, 10u32).pow(k as i32)
}
