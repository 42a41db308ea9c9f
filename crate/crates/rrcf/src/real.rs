//! Arbitrary-precision reals that remember the precision they were
//! computed at.

use crate::precision::PrecisionCtx;
use rug::Float;

/// A real value together with the decimal precision it was reported at.
///
/// Comparisons across different provenance precisions are made at the
/// smaller precision minus the guard, which is what
/// [`Real::agrees_with`] implements.
#[derive(Debug, Clone, PartialEq)]
pub struct Real {
    value: Float,
    at_digits: u32,
}

impl Real {
    pub fn new(value: Float, at_digits: u32) -> Self {
        Self { value, at_digits }
    }

    /// Wraps a freshly computed Float, stamping it with the context's
    /// reported digits.
    pub fn from_ctx(value: Float, ctx: &PrecisionCtx) -> Self {
        Self::new(value, ctx.digits)
    }

    pub fn value(&self) -> &Float {
        &self.value
    }

    pub fn into_value(self) -> Float {
        self.value
    }

    pub fn at_digits(&self) -> u32 {
        self.at_digits
    }

    pub fn to_f64(&self) -> f64 {
        self.value.to_f64()
    }

    /// |self - other| < 10^-(min(at_digits) - guard).
    pub fn agrees_with(&self, other: &Real, guard: u32) -> bool {
        let digits = self.at_digits.min(other.at_digits);
        let tol_exp = digits.saturating_sub(guard) as i64;
        let prec = self.value.prec().max(other.value.prec());
        let diff = Float::with_val(prec, &self.value - &other.value).abs();
        diff < crate::precision::pow10(prec, -tol_exp)
    }

    /// Decimal string with `digits` significant digits.
    pub fn to_decimal_string(&self, digits: u32) -> String {
        self.value.to_string_radix(10, Some(digits as usize))
    }
}

impl std::fmt::Display for Real {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_decimal_string(self.at_digits))
    }
}
