//! Radical expression trees: exact nested-radical closed forms that can
//! be evaluated to any requested precision.
//!
//! The catalog stores closed forms as these trees rather than as frozen
//! decimal strings, so a certificate at 2000 digits is as easy as one at
//! 200. All roots are principal real branches; evaluation fails on a
//! negative radicand rather than silently going complex.

use crate::error::{Error, Result};
use rug::{Float, Rational};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Radical {
    /// Exact rational leaf, as "num" or "num/den".
    Rat(String),
    Add(Vec<Radical>),
    Mul(Vec<Radical>),
    Neg(Box<Radical>),
    /// 1/x.
    Inv(Box<Radical>),
    Sqrt(Box<Radical>),
    /// base^(num/den), principal real branch (base > 0 unless den = 1).
    Pow {
        base: Box<Radical>,
        num: i64,
        den: u32,
    },
}

#[allow(clippy::should_implement_trait)] // tree builders, not operator impls
impl Radical {
    pub fn int(n: i64) -> Self {
        Radical::Rat(n.to_string())
    }

    pub fn rat(num: i64, den: u64) -> Self {
        Radical::Rat(format!("{num}/{den}"))
    }

    pub fn sqrt(x: Radical) -> Self {
        Radical::Sqrt(Box::new(x))
    }

    pub fn sqrt_int(n: i64) -> Self {
        Self::sqrt(Self::int(n))
    }

    pub fn pow(base: Radical, num: i64, den: u32) -> Self {
        Radical::Pow {
            base: Box::new(base),
            num,
            den,
        }
    }

    pub fn neg(x: Radical) -> Self {
        Radical::Neg(Box::new(x))
    }

    pub fn sub(a: Radical, b: Radical) -> Self {
        Radical::Add(vec![a, Self::neg(b)])
    }

    pub fn div(a: Radical, b: Radical) -> Self {
        Radical::Mul(vec![a, Radical::Inv(Box::new(b))])
    }

    /// c * sqrt(n) with rational c.
    pub fn rat_times_sqrt(num: i64, den: u64, radicand: i64) -> Self {
        Radical::Mul(vec![Self::rat(num, den), Self::sqrt_int(radicand)])
    }

    /// The golden ratio (1 + sqrt 5)/2.
    pub fn golden_ratio() -> Self {
        Radical::Mul(vec![
            Self::rat(1, 2),
            Radical::Add(vec![Self::int(1), Self::sqrt_int(5)]),
        ])
    }

    /// Evaluate at `bits` of binary precision.
    pub fn eval(&self, bits: u32) -> Result<Float> {
        match self {
            Radical::Rat(s) => {
                let r: Rational = s
                    .trim()
                    .parse()
                    .map_err(|_| Error::InvalidArgument(format!("bad rational leaf {s:?}")))?;
                Ok(Float::with_val(bits, r))
            }
            Radical::Add(terms) => {
                let mut acc = Float::with_val(bits, 0u32);
                for t in terms {
                    acc += t.eval(bits)?;
                }
                Ok(acc)
            }
            Radical::Mul(factors) => {
                let mut acc = Float::with_val(bits, 1u32);
                for f in factors {
                    acc *= f.eval(bits)?;
                }
                Ok(acc)
            }
            Radical::Neg(x) => Ok(-x.eval(bits)?),
            Radical::Inv(x) => {
                let v = x.eval(bits)?;
                if v == 0u32 {
                    return Err(Error::Singularity("1/0 in radical tree".into()));
                }
                Ok(v.recip())
            }
            Radical::Sqrt(x) => {
                let v = x.eval(bits)?;
                if v < 0u32 {
                    return Err(Error::Domain(format!(
                        "sqrt of negative value {} in radical tree",
                        v.to_f64()
                    )));
                }
                Ok(v.sqrt())
            }
            Radical::Pow { base, num, den } => {
                if *den == 0 {
                    return Err(Error::InvalidArgument("power with zero root index".into()));
                }
                let v = base.eval(bits)?;
                if *den > 1 && v <= 0u32 {
                    return Err(Error::Domain(format!(
                        "fractional power of non-positive value {}",
                        v.to_f64()
                    )));
                }
                if *den == 1 && v == 0u32 && *num < 0 {
                    return Err(Error::Singularity("0 to a negative power".into()));
                }
                let rooted = if *den == 1 { v } else { v.root(*den) };
                let e = i32::try_from(*num)
                    .map_err(|_| Error::InvalidArgument("power exponent too large".into()))?;
                use rug::ops::Pow;
                Ok(rooted.pow(e))
            }
        }
    }
}
