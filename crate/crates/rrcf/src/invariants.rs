//! The modular-function layer: the elliptic lambda function lambda*(r),
//! the modular lambda(tau), Klein's absolute invariant J, Ramanujan's
//! class invariants G_n and g_n, and the exact maps between them.
//!
//! Conventions: tau = i*sqrt(r), nome q = e^(-pi*sqrt(r)), and
//! theta_k(q) := theta_k(0, q). Every quantity here is a positive real
//! and all radicals take the principal branch.

use crate::error::{Error, Result};
use crate::precision::PrecisionCtx;
use crate::qseries::{self, QPoint};
use crate::real::Real;
use crate::surd::SurdArg;
use rug::Float;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InvariantKind {
    LambdaStar,
    Lambda,
    KleinJ,
    G,
    SmallG,
}

/// A named modular-invariant value at a surd argument.
#[derive(Debug, Clone)]
pub struct InvariantValue {
    pub kind: InvariantKind,
    pub arg: SurdArg,
    pub value: Real,
}

/// lambda*(r) = theta2^2 / theta3^2 at q = e^(-pi*sqrt(r)); lies in (0,1).
pub fn lambda_star(r: &SurdArg, ctx: &PrecisionCtx) -> Result<Real> {
    let q = QPoint::Surd(*r);
    let t2 = qseries::eval_theta2(&q, ctx)?;
    let t3 = qseries::eval_theta3(&q, ctx)?;
    let prec = ctx.bits();
    let v = Float::with_val(prec, t2.value() / t3.value()).square();
    debug_assert!(v > 0u32 && v < 1u32);
    Ok(Real::from_ctx(v, ctx))
}

/// lambda(i*sqrt(r)) = theta2^4 / theta3^4 = lambda*(r)^2.
pub fn lambda_of_tau(r: &SurdArg, ctx: &PrecisionCtx) -> Result<Real> {
    let q = QPoint::Surd(*r);
    let t2 = qseries::eval_theta2(&q, ctx)?;
    let t3 = qseries::eval_theta3(&q, ctx)?;
    let prec = ctx.bits();
    let ratio = Float::with_val(prec, t2.value() / t3.value());
    let v = ratio.square().square();
    Ok(Real::from_ctx(v, ctx))
}

/// Klein's absolute invariant J(i*sqrt(r)) =
/// (4/27) (1 - lambda + lambda^2)^3 / (lambda^2 (1 - lambda)^2).
pub fn klein_j(r: &SurdArg, ctx: &PrecisionCtx) -> Result<Real> {
    let lam = lambda_of_tau(r, ctx)?;
    let v = klein_j_of_lambda(lam.value())?;
    Ok(Real::from_ctx(v, ctx))
}

/// J as a function of lambda alone. Fails on the lambda in {0, 1}
/// singularities, which cannot occur for finite r > 0.
pub fn klein_j_of_lambda(lam: &Float) -> Result<Float> {
    let prec = lam.prec();
    let one_minus = Float::with_val(prec, 1u32 - lam);
    if *lam == 0u32 || one_minus == 0u32 {
        return Err(Error::Singularity(
            "J is singular at lambda in {0, 1}".into(),
        ));
    }
    let lam2 = Float::with_val(prec, lam * lam);
    let numer = Float::with_val(prec, &lam2 - lam) + 1u32;
    let numer3 = Float::with_val(prec, numer.pow_i(3));
    let denom = lam2 * one_minus.square();
    Ok(Float::with_val(prec, 4u32) / 27u32 * numer3 / denom)
}

/// Ramanujan's G_n = 2^(-1/4) e^(pi sqrt(n)/24) prod_{j>=0} (1 + e^-((2j+1) pi sqrt(n))).
pub fn ramanujan_big_g(n: &SurdArg, ctx: &PrecisionCtx) -> Result<Real> {
    class_invariant(n, false, ctx)
}

/// Ramanujan's g_n = 2^(-1/4) e^(pi sqrt(n)/24) prod_{j>=0} (1 - e^-((2j+1) pi sqrt(n))).
pub fn ramanujan_g(n: &SurdArg, ctx: &PrecisionCtx) -> Result<Real> {
    class_invariant(n, true, ctx)
}

fn class_invariant(n: &SurdArg, negative: bool, ctx: &PrecisionCtx) -> Result<Real> {
    let prec = ctx.bits();
    let q = n.nome(ctx);
    let product = qseries::odd_exponent_product(&q, negative, ctx, 0)?;
    // 2^(-1/4) q^(-1/24)
    let prefactor = Float::with_val(prec, q.clone().root(24)).recip()
        / Float::with_val(prec, 2u32).root(4);
    let v = prefactor * product;
    debug_assert!(v > 0u32);
    Ok(Real::from_ctx(v, ctx))
}

/// lambda*(n) = (1/2) (sqrt(1 + G_n^-12) - sqrt(1 - G_n^-12)).
pub fn lambda_star_from_big_g(big_g: &Real) -> Result<Real> {
    let g = big_g.value();
    if *g < 1u32 {
        return Err(Error::Domain(format!(
            "G_n must be >= 1, got {}",
            g.to_f64()
        )));
    }
    let prec = g.prec();
    let inv12 = Float::with_val(prec, g.pow_i(-12));
    let plus = Float::with_val(prec, 1u32 + &inv12).sqrt();
    let minus = Float::with_val(prec, 1u32 - &inv12).sqrt();
    Ok(Real::new((plus - minus) / 2u32, big_g.at_digits()))
}

/// lambda*(n) = g_n^6 (sqrt(g_n^12 + g_n^-12) - g_n^6).
pub fn lambda_star_from_g(small_g: &Real) -> Result<Real> {
    let g = small_g.value();
    if *g <= 0u32 {
        return Err(Error::Domain(format!(
            "g_n must be positive, got {}",
            g.to_f64()
        )));
    }
    let prec = g.prec();
    let g6 = Float::with_val(prec, g.pow_i(6));
    let g12 = Float::with_val(prec, &g6 * &g6);
    let sum = Float::with_val(prec, &g12 + g12.clone().recip()).sqrt();
    Ok(Real::new(
        Float::with_val(prec, &g6 * (sum - &g6)),
        small_g.at_digits(),
    ))
}

/// G_n from g_n:
/// G_n = ((1/2) (g^8 + sqrt(g^8 (1 + g^24)) / g^8))^(1/8).
pub fn big_g_from_g(small_g: &Real) -> Result<Real> {
    let g = small_g.value();
    if *g <= 0u32 {
        return Err(Error::Domain(format!(
            "g_n must be positive, got {}",
            g.to_f64()
        )));
    }
    let prec = g.prec();
    let g8 = Float::with_val(prec, g.pow_i(8));
    let g24 = Float::with_val(prec, g8.clone().pow_i(3));
    let root = Float::with_val(prec, &g8 * (g24 + 1u32)).sqrt() / &g8;
    let v = (Float::with_val(prec, &g8 + root) / 2u32).root(8);
    Ok(Real::new(v, small_g.at_digits()))
}

/// The quadruplication law g_{4n} = 2^(1/4) g_n G_n.
pub fn g_of_4n(small_g: &Real, big_g: &Real) -> Real {
    let prec = small_g.value().prec().max(big_g.value().prec());
    let v = Float::with_val(prec, 2u32).root(4) * small_g.value() * big_g.value();
    Real::new(v, small_g.at_digits().min(big_g.at_digits()))
}

/// The C-value of the quadruplication chain:
/// C = 4 G^8 (G^8 + sqrt(G^16 - G^-8)).
pub fn chain_c(big_g: &Real) -> Result<Real> {
    let g = big_g.value();
    if *g < 1u32 {
        return Err(Error::Domain(format!(
            "G_n must be >= 1, got {}",
            g.to_f64()
        )));
    }
    let prec = g.prec();
    let g8 = Float::with_val(prec, g.pow_i(8));
    let g16 = Float::with_val(prec, &g8 * &g8);
    let root = Float::with_val(prec, g16 - g8.clone().recip()).sqrt();
    let v = Float::with_val(prec, &g8 * 4u32) * (Float::with_val(prec, &g8 + root));
    Ok(Real::new(v, big_g.at_digits()))
}

/// G_{4n} from C = chain_c(G_n):
/// G_{4n} = (C + sqrt(C^3 + 8)/sqrt(C))^(1/8) / 2^(1/4).
pub fn big_g_4n_from_c(c: &Real) -> Result<Real> {
    let cv = c.value();
    if *cv <= 0u32 {
        return Err(Error::Domain("chain C-value must be positive".into()));
    }
    let prec = cv.prec();
    let c3 = Float::with_val(prec, cv.pow_i(3));
    let inner = Float::with_val(prec, c3 + 8u32).sqrt() / Float::with_val(prec, cv.clone().sqrt());
    let v = Float::with_val(prec, cv + inner).root(8) / Float::with_val(prec, 2u32).root(4);
    Ok(Real::new(v, c.at_digits()))
}

/// G_{4n} directly from G_n via the quadruplication chain.
pub fn quadruple_big_g(big_g: &Real) -> Result<Real> {
    big_g_4n_from_c(&chain_c(big_g)?)
}

/// Evaluate a named invariant with its range assertions
/// (lambda* in (0,1); G, g > 0; g_n > 1 for n > 1).
pub fn evaluate(kind: InvariantKind, arg: &SurdArg, ctx: &PrecisionCtx) -> Result<InvariantValue> {
    let value = match kind {
        InvariantKind::LambdaStar => {
            let v = lambda_star(arg, ctx)?;
            range_check(v.value() > &0u32 && v.value() < &1u32, "lambda* outside (0,1)")?;
            v
        }
        InvariantKind::Lambda => {
            let v = lambda_of_tau(arg, ctx)?;
            range_check(v.value() > &0u32 && v.value() < &1u32, "lambda outside (0,1)")?;
            v
        }
        InvariantKind::KleinJ => klein_j(arg, ctx)?,
        InvariantKind::G => {
            let v = ramanujan_big_g(arg, ctx)?;
            range_check(v.value() > &0u32, "G_n not positive")?;
            v
        }
        InvariantKind::SmallG => {
            let v = ramanujan_g(arg, ctx)?;
            range_check(v.value() > &0u32, "g_n not positive")?;
            if arg.as_rational() > 1u32 {
                range_check(v.value() > &1u32, "g_n <= 1 for n > 1")?;
            }
            v
        }
    };
    Ok(InvariantValue {
        kind,
        arg: *arg,
        value,
    })
}

fn range_check(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Domain(what.into()))
    }
}

trait PowI {
    fn pow_i(&self, e: i32) -> Float;
}

impl PowI for Float {
    fn pow_i(&self, e: i32) -> Float {
        use rug::ops::Pow;
        Float::with_val(self.prec(), self.pow(e))
    }
}
