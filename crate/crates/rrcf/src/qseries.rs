//! Arbitrary-precision evaluation of the q-series primitives: Euler's
//! function f(-q) = (q;q)_inf, the Jacobi theta null values theta2 and
//! theta3, and the Rogers-Ramanujan continued fraction R(q) by two
//! independent methods (Rogers' product and backward recurrence).
//!
//! Every series truncates by an explicit tail inequality: the first
//! omitted term is below 10^-(digits+guard). Truncation indices are
//! derived from the term exponents, never guessed, so downstream
//! certificates can rely on the tails.

use crate::error::{Error, Result};
use crate::precision::PrecisionCtx;
use crate::real::Real;
use crate::surd::SurdArg;
use rug::{Float, Rational};

/// Hard cap on series terms / product factors / recurrence depth.
/// Beyond this the operation fails loudly instead of degrading.
pub const TERM_CAP: u64 = 10_000_000;

/// Where a nome comes from. `Surd` and `Exact` points can be re-evaluated
/// at any precision (recognition and certification escalate through this),
/// `Fixed` points carry their provenance precision and cannot escalate
/// past it.
#[derive(Debug, Clone)]
pub enum QPoint {
    /// q = e^(-pi*sqrt(r)).
    Surd(SurdArg),
    /// An exact rational q.
    Exact(Rational),
    /// An already-computed value.
    Fixed(Real),
}

impl QPoint {
    pub fn value(&self, ctx: &PrecisionCtx) -> Result<Float> {
        let q = match self {
            QPoint::Surd(r) => r.nome(ctx),
            QPoint::Exact(r) => Float::with_val(ctx.bits(), r),
            QPoint::Fixed(x) => {
                let mut v = x.value().clone();
                v.set_prec(ctx.bits().max(v.prec()));
                v
            }
        };
        check_unit_interval(&q)?;
        Ok(q)
    }

    /// Highest digits this point can honestly be evaluated at.
    pub fn max_digits(&self) -> Option<u32> {
        match self {
            QPoint::Surd(_) | QPoint::Exact(_) => None,
            QPoint::Fixed(x) => Some(x.at_digits()),
        }
    }
}

impl From<SurdArg> for QPoint {
    fn from(r: SurdArg) -> Self {
        QPoint::Surd(r)
    }
}

impl From<Rational> for QPoint {
    fn from(q: Rational) -> Self {
        QPoint::Exact(q)
    }
}

impl From<Real> for QPoint {
    fn from(x: Real) -> Self {
        QPoint::Fixed(x)
    }
}

fn check_unit_interval(q: &Float) -> Result<()> {
    if !q.is_finite() || *q <= 0u32 || *q >= 1u32 {
        return Err(Error::Domain(format!(
            "q must lie in (0,1), got {}",
            q.to_f64()
        )));
    }
    Ok(())
}

/// -log10(q) > 0 for q in (0,1), as f64. Used only to size truncation
/// indices; the series themselves run in full precision.
fn neg_log10(q: &Float) -> f64 {
    let l = Float::with_val(64, q.log10_ref());
    -l.to_f64()
}

/// Smallest n >= 1 with n(3n-1)/2 * L >= W, i.e. the pentagonal-number
/// truncation index for f(-q).
fn pentagonal_index(q: &Float, ctx: &PrecisionCtx) -> Result<u64> {
    let l = neg_log10(q);
    let w = ctx.working_digits() as f64;
    // 3n^2 - n - 2W/L >= 0
    let n = ((1.0 + (1.0 + 24.0 * w / l).sqrt()) / 6.0).ceil() as u64 + 1;
    cap_check(n, "f(-q) pentagonal series")
}

fn cap_check(n: u64, what: &str) -> Result<u64> {
    if n > TERM_CAP {
        Err(Error::Convergence(format!(
            "{what}: {n} terms needed, cap is {TERM_CAP}"
        )))
    } else {
        Ok(n.max(1))
    }
}

/// f(-q) = sum_{n in Z} (-1)^n q^(n(3n-1)/2) = (q;q)_inf.
pub fn eval_f_neg_q(q: &QPoint, ctx: &PrecisionCtx) -> Result<Real> {
    let qv = q.value(ctx)?;
    f_neg_q_kernel(&qv, ctx, 0).map(|v| Real::from_ctx(v, ctx))
}

/// Pentagonal-number-theorem kernel. `extra_terms` extends the sum past
/// the certified truncation index (the tail-bound tests recompute with
/// 10 extra terms and check the result moves by less than 10^-digits).
pub(crate) fn f_neg_q_kernel(q: &Float, ctx: &PrecisionCtx, extra_terms: u64) -> Result<Float> {
    check_unit_interval(q)?;
    let n_max = pentagonal_index(q, ctx)? + extra_terms;
    let prec = ctx.bits();

    let q2 = Float::with_val(prec, q * q);
    let q3 = Float::with_val(prec, &q2 * q);

    let mut sum = Float::with_val(prec, 1u32);
    // exponents n(3n-1)/2 and n(3n+1)/2 stepped incrementally
    let mut pw_plus = q.clone(); // q^(m(3m-1)/2) at m = 1
    let mut pw_minus = q2.clone(); // q^(m(3m+1)/2) at m = 1
    let mut q3m = q3.clone(); // q^(3m) at m = 1
    let mut sign_neg = true;

    for _ in 1..=n_max {
        let term = Float::with_val(prec, &pw_plus + &pw_minus);
        if sign_neg {
            sum -= term;
        } else {
            sum += term;
        }
        // step m -> m+1: exponents grow by 3m+1 and 3m+2
        pw_plus *= Float::with_val(prec, &q3m * q);
        pw_minus *= Float::with_val(prec, &q3m * &q2);
        q3m *= &q3;
        sign_neg = !sign_neg;
    }
    Ok(sum)
}

/// theta2(0,q) = 2 q^(1/4) sum_{n>=0} q^(n(n+1)).
pub fn eval_theta2(q: &QPoint, ctx: &PrecisionCtx) -> Result<Real> {
    let qv = q.value(ctx)?;
    theta2_kernel(&qv, ctx, 0).map(|v| Real::from_ctx(v, ctx))
}

pub(crate) fn theta2_kernel(q: &Float, ctx: &PrecisionCtx, extra_terms: u64) -> Result<Float> {
    check_unit_interval(q)?;
    let l = neg_log10(q);
    let w = ctx.working_digits() as f64;
    // smallest n with n(n+1) L >= W
    let n_max = cap_check(
        ((-1.0 + (1.0 + 4.0 * w / l).sqrt()) / 2.0).ceil() as u64 + 1,
        "theta2 series",
    )? + extra_terms;
    let prec = ctx.bits();

    let q2 = Float::with_val(prec, q * q);
    let mut sum = Float::with_val(prec, 1u32);
    let mut pw = Float::with_val(prec, 1u32); // q^(n(n+1))
    let mut step = q2.clone(); // q^(2(n+1)) at n = 0

    for _ in 1..=n_max {
        pw *= &step;
        sum += &pw;
        step *= &q2;
    }
    let prefactor = Float::with_val(prec, q.clone().root(4)) * 2u32;
    Ok(prefactor * sum)
}

/// theta3(0,q) = 1 + 2 sum_{n>=1} q^(n^2).
pub fn eval_theta3(q: &QPoint, ctx: &PrecisionCtx) -> Result<Real> {
    let qv = q.value(ctx)?;
    theta3_kernel(&qv, ctx, 0).map(|v| Real::from_ctx(v, ctx))
}

pub(crate) fn theta3_kernel(q: &Float, ctx: &PrecisionCtx, extra_terms: u64) -> Result<Float> {
    check_unit_interval(q)?;
    let l = neg_log10(q);
    let w = ctx.working_digits() as f64;
    let n_max = cap_check((w / l).sqrt().ceil() as u64 + 1, "theta3 series")? + extra_terms;
    let prec = ctx.bits();

    let q2 = Float::with_val(prec, q * q);
    let mut sum = Float::with_val(prec, 1u32);
    let mut pw = Float::with_val(prec, 1u32); // q^(n^2)
    let mut step = q.clone(); // q^(2n+1) at n = 0

    for _ in 1..=n_max {
        pw *= &step;
        sum += Float::with_val(prec, &pw * 2u32);
        step *= &q2;
    }
    Ok(sum)
}

/// Rogers' product:
/// R(q) = q^(1/5) prod_{n>=1} (1 - q^(5n-1))(1 - q^(5n-4)) / ((1 - q^(5n-2))(1 - q^(5n-3))).
pub fn eval_r_product(q: &QPoint, ctx: &PrecisionCtx) -> Result<Real> {
    let qv = q.value(ctx)?;
    r_product_kernel(&qv, ctx, 0).map(|v| Real::from_ctx(v, ctx))
}

pub(crate) fn r_product_kernel(q: &Float, ctx: &PrecisionCtx, extra_terms: u64) -> Result<Float> {
    check_unit_interval(q)?;
    let l = neg_log10(q);
    let w = ctx.working_digits() as f64;
    // the slowest factor in group n deviates from 1 by q^(5n-4)
    let n_max = cap_check(((w / l + 4.0) / 5.0).ceil() as u64 + 1, "R(q) product")? + extra_terms;
    let prec = ctx.bits();

    let q2 = Float::with_val(prec, q * q);
    let q3 = Float::with_val(prec, &q2 * q);
    let q4 = Float::with_val(prec, &q3 * q);
    let q5 = Float::with_val(prec, &q4 * q);

    let one = Float::with_val(prec, 1u32);
    let mut num = one.clone();
    let mut den = one.clone();
    let mut base = one.clone(); // q^(5(n-1))

    for _ in 1..=n_max {
        let p1 = Float::with_val(prec, &base * q); // q^(5n-4)
        let p2 = Float::with_val(prec, &base * &q2); // q^(5n-3)
        let p3 = Float::with_val(prec, &base * &q3); // q^(5n-2)
        let p4 = Float::with_val(prec, &base * &q4); // q^(5n-1)
        num *= Float::with_val(prec, &one - &p1);
        num *= Float::with_val(prec, &one - &p4);
        den *= Float::with_val(prec, &one - &p2);
        den *= Float::with_val(prec, &one - &p3);
        base *= &q5;
    }

    let r = Float::with_val(prec, q.clone().root(5)) * num / den;
    debug_assert!(r > 0u32 && r < 1u32);
    Ok(r)
}

/// R(q) by backward recurrence on the continued fraction
/// q^(1/5) / (1 + q/(1 + q^2/(1 + ...))), starting from a unit tail and
/// doubling the depth until two successive depths agree to
/// 10^-(digits + guard/2).
pub fn eval_r_cf(q: &QPoint, ctx: &PrecisionCtx) -> Result<Real> {
    let qv = q.value(ctx)?;
    r_cf_kernel(&qv, ctx).map(|v| Real::from_ctx(v, ctx))
}

pub(crate) fn r_cf_kernel(q: &Float, ctx: &PrecisionCtx) -> Result<Float> {
    check_unit_interval(q)?;
    let prec = ctx.bits();
    let tol = crate::precision::pow10(prec, -((ctx.digits + ctx.guard / 2) as i64));

    let mut depth: u64 = 32;
    let mut prev = cf_at_depth(q, prec, depth);
    loop {
        depth *= 2;
        if depth > TERM_CAP {
            return Err(Error::Convergence(format!(
                "continued fraction did not stabilize below depth {TERM_CAP}"
            )));
        }
        let cur = cf_at_depth(q, prec, depth);
        let diff = Float::with_val(prec, &cur - &prev).abs();
        if diff < tol {
            return Ok(cur);
        }
        prev = cur;
    }
}

/// q^(1/5) / (1 + q/(1 + q^2/(... 1 + q^depth/1))).
fn cf_at_depth(q: &Float, prec: u32, depth: u64) -> Float {
    let mut pw = q.clone().pow_u64(depth, prec); // q^k, k descending from depth
    let mut tail = Float::with_val(prec, 1u32);
    for _ in 0..depth {
        // tail <- 1 + q^k / tail
        let quot = Float::with_val(prec, &pw / &tail);
        tail = quot + 1u32;
        pw /= q;
    }
    Float::with_val(prec, q.clone().root(5)) / tail
}

/// Product over odd exponents prod_{j>=0} (1 + sign*q^(2j+1)), shared by
/// the class-invariant products.
pub(crate) fn odd_exponent_product(
    q: &Float,
    negative: bool,
    ctx: &PrecisionCtx,
    extra_terms: u64,
) -> Result<Float> {
    check_unit_interval(q)?;
    let l = neg_log10(q);
    let w = ctx.working_digits() as f64;
    let n_max = cap_check(((w / l + 1.0) / 2.0).ceil() as u64 + 1, "odd-exponent product")?
        + extra_terms;
    let prec = ctx.bits();

    let q2 = Float::with_val(prec, q * q);
    let one = Float::with_val(prec, 1u32);
    let mut prod = one.clone();
    let mut pw = q.clone(); // q^(2j+1)

    for _ in 0..n_max {
        if negative {
            prod *= Float::with_val(prec, &one - &pw);
        } else {
            prod *= Float::with_val(prec, &one + &pw);
        }
        pw *= &q2;
    }
    Ok(prod)
}

trait PowU64 {
    fn pow_u64(self, e: u64, prec: u32) -> Float;
}

impl PowU64 for Float {
    fn pow_u64(self, e: u64, prec: u32) -> Float {
        use rug::ops::Pow;
        let mut result = Float::with_val(prec, 1u32);
        let mut base = self;
        let mut e = e;
        if e <= u32::MAX as u64 {
            return base.pow(e as u32);
        }
        while e > 0 {
            if e & 1 == 1 {
                result *= &base;
            }
            base.square_mut();
            e >>= 1;
        }
        result
    }
}
