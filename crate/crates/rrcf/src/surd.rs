//! Exact rational arguments `r` designating the point q = e^(-pi*sqrt(r)).

use crate::error::{Error, Result};
use crate::precision::PrecisionCtx;
use rug::{Float, Rational};
use serde::de::Deserializer;
use serde::{Deserialize, Serialize, Serializer};
use std::fmt;
use std::str::FromStr;

/// A positive rational `num/den` in lowest terms. The associated nome is
/// q = e^(-pi*sqrt(num/den)) and the associated quadratic point is
/// tau = i*sqrt(num/den). Serializes as the pair [num, den].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SurdArg {
    num: u64,
    den: u64,
}

impl Serialize for SurdArg {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        (self.num, self.den).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SurdArg {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let (num, den) = <(u64, u64)>::deserialize(deserializer)?;
        SurdArg::new(num, den).map_err(serde::de::Error::custom)
    }
}

impl SurdArg {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if num == 0 || den == 0 {
            return Err(Error::InvalidArgument(format!(
                "surd argument must be positive, got {num}/{den}"
            )));
        }
        let g = gcd(num, den);
        Ok(Self {
            num: num / g,
            den: den / g,
        })
    }

    pub fn from_int(n: u64) -> Result<Self> {
        Self::new(n, 1)
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn as_rational(&self) -> Rational {
        Rational::from((self.num, self.den))
    }

    /// The argument scaled by an exact positive rational factor `a/b`.
    pub fn scaled(&self, a: u64, b: u64) -> Result<Self> {
        let num = self.num.checked_mul(a).ok_or_else(|| {
            Error::InvalidArgument("surd argument overflow".into())
        })?;
        let den = self.den.checked_mul(b).ok_or_else(|| {
            Error::InvalidArgument("surd argument overflow".into())
        })?;
        Self::new(num, den)
    }

    /// sqrt(num/den) at the context's working precision.
    pub fn sqrt(&self, ctx: &PrecisionCtx) -> Float {
        Float::with_val(ctx.bits(), self.as_rational()).sqrt()
    }

    /// The nome q = e^(-pi*sqrt(num/den)), always in (0, 1).
    pub fn nome(&self, ctx: &PrecisionCtx) -> Float {
        let pi = Float::with_val(ctx.bits(), rug::float::Constant::Pi);
        let exponent = -(pi * self.sqrt(ctx));
        exponent.exp()
    }
}

impl fmt::Display for SurdArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for SurdArg {
    type Err = Error;

    /// Parses "num/den" with the denominator optional (default 1).
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("cannot parse surd argument {s:?}"));
        match s.split_once('/') {
            Some((n, d)) => {
                let num = n.trim().parse::<u64>().map_err(|_| bad())?;
                let den = d.trim().parse::<u64>().map_err(|_| bad())?;
                Self::new(num, den)
            }
            None => {
                let num = s.trim().parse::<u64>().map_err(|_| bad())?;
                Self::new(num, 1)
            }
        }
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_to_lowest_terms() {
        let r = SurdArg::new(52, 10).unwrap();
        assert_eq!((r.num(), r.den()), (26, 5));
        assert_eq!(r.to_string(), "26/5");
    }

    #[test]
    fn rejects_zero() {
        assert!(SurdArg::new(0, 5).is_err());
        assert!(SurdArg::new(5, 0).is_err());
    }

    #[test]
    fn parses_with_optional_denominator() {
        assert_eq!("26/5".parse::<SurdArg>().unwrap(), SurdArg::new(26, 5).unwrap());
        assert_eq!("4".parse::<SurdArg>().unwrap(), SurdArg::new(4, 1).unwrap());
        assert!("0/3".parse::<SurdArg>().is_err());
        assert!("x/3".parse::<SurdArg>().is_err());
    }

    #[test]
    fn nome_is_in_unit_interval() {
        let ctx = PrecisionCtx::with_digits(60).unwrap();
        let q = SurdArg::new(4, 1).unwrap().nome(&ctx);
        assert!(q > 0u32);
        assert!(q < 1u32);
        // e^(-2pi) = 0.00186744...
        let approx = q.to_f64();
        assert!((approx - 0.0018674427317079888).abs() < 1e-18);
    }
}
