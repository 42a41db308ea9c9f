//! Numeric certification: every claim is an absolute residual evaluated
//! at two precision levels. A claim is certified only when the high
//! residual is below 10^-(digits_hi - 2 guard) *and* the residual shrank
//! at least proportionally to the precision increase; a residual stuck
//! above 10^-guard at both levels is refuted; anything between gets one
//! automatic precision doubling and is otherwise inconclusive.
//!
//! On top of the engine sit the identity checks (companion identities,
//! recursions, the order-25 modular relation, the icosahedral equation
//! for R) and the end-to-end reproduction pipelines.

use crate::catalog;
use crate::error::{Error, Result};
use crate::invariants;
use crate::poly::{self, IntPoly};
use crate::precision::{pow10, PrecisionCtx};
use crate::qseries::{self, QPoint};
use crate::real::Real;
use crate::recognition::{self, FnSource};
use crate::surd::SurdArg;
use rug::ops::Pow;
use rug::{Float, Rational};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::time::Instant;

/// A recomputable scalar: evaluates at any requested precision.
pub type ScalarSource<'a> = Box<dyn Fn(&PrecisionCtx) -> Result<Float> + 'a>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Certified,
    Refuted,
    Inconclusive,
    /// A certified residual on a claim that is conjectural: reported as
    /// support, never as proof.
    NumericallySupported,
}

impl Verdict {
    pub fn acceptable(self) -> bool {
        matches!(self, Verdict::Certified | Verdict::NumericallySupported)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::Certified => "certified",
            Verdict::Refuted => "refuted",
            Verdict::Inconclusive => "inconclusive",
            Verdict::NumericallySupported => "numerically-supported",
        };
        write!(f, "{s}")
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Certificate {
    pub claim_id: String,
    pub digits_lo: u32,
    pub digits_hi: u32,
    pub residual_lo: String,
    pub residual_hi: String,
    pub verdict: Verdict,
    pub artifacts: Vec<String>,
    pub wall_time_ms: u64,
}

impl Certificate {
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("certificate serializes")
    }
}

/// Compact magnitude like "4.1e-512" (f64 cannot hold these exponents).
pub fn magnitude(x: &Float) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let a = x.clone().abs();
    a.to_string_radix(10, Some(2))
}

fn residual_floor(ctx: &PrecisionCtx) -> Float {
    ctx.pow10_neg(ctx.working_digits() as i64 + 10)
}

/// Evaluate the two-level residual claim and issue a certificate.
/// `residual` must compute the absolute residual internally at the
/// context's working precision.
pub fn certify(
    claim_id: &str,
    ctx: &PrecisionCtx,
    residual: &dyn Fn(&PrecisionCtx) -> Result<Float>,
) -> Result<Certificate> {
    let start = Instant::now();
    let attempt = |c: &PrecisionCtx| -> Result<(Float, Float, Verdict)> {
        let hi_ctx = c.doubled();
        let r_lo = residual(c)?.abs();
        let r_hi = residual(&hi_ctx)?.abs();

        let tol_hi = pow10(
            r_hi.prec().max(64),
            -((hi_ctx.digits.saturating_sub(2 * c.guard)) as i64),
        );
        let refute_tol = pow10(r_lo.prec().max(64), -(c.guard as i64));

        // shrink factor >= 10^(digits_hi - digits_lo - guard); residuals at
        // the numeric noise floor count as fully shrunk
        let lo_for_ratio = if r_lo.is_zero() {
            residual_floor(c)
        } else {
            r_lo.clone()
        };
        let shrank = if r_hi.is_zero() {
            true
        } else {
            let needed = pow10(
                r_hi.prec().max(64),
                (hi_ctx.digits - c.digits).saturating_sub(c.guard) as i64,
            );
            let ratio = Float::with_val(r_hi.prec().max(64), &lo_for_ratio / &r_hi);
            ratio >= needed
        };

        let verdict = if r_hi < tol_hi && shrank {
            Verdict::Certified
        } else if r_lo > refute_tol && r_hi > refute_tol {
            Verdict::Refuted
        } else {
            Verdict::Inconclusive
        };
        Ok((r_lo, r_hi, verdict))
    };

    let (mut r_lo, mut r_hi, mut verdict) = attempt(ctx)?;
    let mut used_ctx = *ctx;
    if verdict == Verdict::Inconclusive {
        // one automatic doubling before giving up
        let retry_ctx = ctx.doubled();
        let (l, h, v) = attempt(&retry_ctx)?;
        (r_lo, r_hi, verdict) = (l, h, v);
        used_ctx = retry_ctx;
    }

    Ok(Certificate {
        claim_id: claim_id.to_string(),
        digits_lo: used_ctx.digits,
        digits_hi: used_ctx.doubled().digits,
        residual_lo: magnitude(&r_lo),
        residual_hi: magnitude(&r_hi),
        verdict,
        artifacts: Vec::new(),
        wall_time_ms: start.elapsed().as_millis() as u64,
    })
}

// ---------------------------------------------------------------------------
// identity residuals

/// Residual of 1/R - 1 - R = f(-q^(1/5)) / (q^(1/5) f(-q^5)).
pub fn companion_deg1_residual(q: &QPoint, ctx: &PrecisionCtx) -> Result<Float> {
    let prec = ctx.bits();
    let qv = q.value(ctx)?;
    let r = qseries::eval_r_product(q, ctx)?.into_value();
    let q_fifth = Float::with_val(prec, qv.clone().root(5));
    let q5 = Float::with_val(prec, qv.pow(5u32));
    let f_num = qseries::eval_f_neg_q(&QPoint::Fixed(Real::from_ctx(q_fifth.clone(), ctx)), ctx)?;
    let f_den = qseries::eval_f_neg_q(&QPoint::Fixed(Real::from_ctx(q5, ctx)), ctx)?;
    let lhs = Float::with_val(prec, r.clone().recip()) - 1u32 - &r;
    let rhs = Float::with_val(prec, f_num.value() / (q_fifth * f_den.value()));
    Ok(Float::with_val(prec, lhs - rhs).abs())
}

/// Residual of 1/R^5 - 11 - R^5 = f^6(-q) / (q f^6(-q^5)).
pub fn companion_deg5_residual(q: &QPoint, ctx: &PrecisionCtx) -> Result<Float> {
    let prec = ctx.bits();
    let qv = q.value(ctx)?;
    let r5 = Float::with_val(prec, qseries::eval_r_product(q, ctx)?.value().pow(5u32));
    let q5 = Float::with_val(prec, qv.clone().pow(5u32));
    let f_q = qseries::eval_f_neg_q(q, ctx)?;
    let f_q5 = qseries::eval_f_neg_q(&QPoint::Fixed(Real::from_ctx(q5, ctx)), ctx)?;
    let lhs = Float::with_val(prec, r5.clone().recip()) - 11u32 - &r5;
    let rhs = Float::with_val(prec, f_q.value().pow(6u32))
        / (Float::with_val(prec, f_q5.value().pow(6u32)) * qv);
    Ok(Float::with_val(prec, lhs - rhs).abs())
}

fn r_at(qv: Float, ctx: &PrecisionCtx) -> Result<Float> {
    Ok(qseries::eval_r_product(&QPoint::Fixed(Real::from_ctx(qv, ctx)), ctx)?.into_value())
}

/// Residual of (R(q^2) - R^2(q))(1 + R(q) R^2(q^2)) = 2 R(q) R^3(q^2).
pub fn recursion_doubling_residual(q: &QPoint, ctx: &PrecisionCtx) -> Result<Float> {
    let prec = ctx.bits();
    let qv = q.value(ctx)?;
    let r1 = qseries::eval_r_product(q, ctx)?.into_value();
    let r2 = r_at(Float::with_val(prec, qv.pow(2u32)), ctx)?;
    let lhs = (Float::with_val(prec, &r2 - Float::with_val(prec, r1.clone().square())))
        * (Float::with_val(prec, &r1 * Float::with_val(prec, r2.clone().square())) + 1u32);
    let rhs = Float::with_val(prec, &r1 * Float::with_val(prec, r2.pow(3u32))) * 2u32;
    Ok(Float::with_val(prec, lhs - rhs).abs())
}

/// Residual of (R(q^3) - R^3(q))(1 + R(q) R^3(q^3)) = 3 R^2(q) R^2(q^3).
pub fn recursion_tripling_residual(q: &QPoint, ctx: &PrecisionCtx) -> Result<Float> {
    let prec = ctx.bits();
    let qv = q.value(ctx)?;
    let r1 = qseries::eval_r_product(q, ctx)?.into_value();
    let r3 = r_at(Float::with_val(prec, qv.pow(3u32)), ctx)?;
    let lhs = (Float::with_val(prec, &r3 - Float::with_val(prec, r1.clone().pow(3u32))))
        * (Float::with_val(prec, &r1 * Float::with_val(prec, r3.clone().pow(3u32))) + 1u32);
    let rhs = Float::with_val(prec, r1.square() * r3.square()) * 3u32;
    Ok(Float::with_val(prec, lhs - rhs).abs())
}

/// Residual of Ramanujan's quintupling formula, both sides in terms of
/// R(q) and R(q^5).
pub fn recursion_quintupling_residual(q: &QPoint, ctx: &PrecisionCtx) -> Result<Float> {
    let prec = ctx.bits();
    let qv = q.value(ctx)?;
    let r1 = qseries::eval_r_product(q, ctx)?.into_value();
    let r5 = r_at(Float::with_val(prec, qv.pow(5u32)), ctx)?;
    let r5_2 = Float::with_val(prec, r5.clone().square());
    let r5_3 = Float::with_val(prec, r5.clone().pow(3u32));
    let r5_4 = Float::with_val(prec, r5.clone().pow(4u32));
    let num = Float::with_val(prec, 1u32) - Float::with_val(prec, &r5 * 2u32)
        + Float::with_val(prec, &r5_2 * 4u32)
        - Float::with_val(prec, &r5_3 * 3u32)
        + &r5_4;
    let den = Float::with_val(prec, 1u32)
        + Float::with_val(prec, &r5 * 3u32)
        + Float::with_val(prec, &r5_2 * 4u32)
        + Float::with_val(prec, &r5_3 * 2u32)
        + &r5_4;
    let lhs = Float::with_val(prec, r1.pow(5u32));
    let rhs = r5 * num / den;
    Ok(Float::with_val(prec, lhs - rhs).abs())
}

/// Certificate over both companion identities (max of the residuals).
pub fn check_companion(q: &QPoint, ctx: &PrecisionCtx) -> Result<Certificate> {
    let q1 = q.clone();
    let q2 = q.clone();
    let mut cert = certify(&format!("companion@{}", describe_q(q)), ctx, &move |c| {
        let a = companion_deg1_residual(&q1, c)?;
        let b = companion_deg5_residual(&q2, c)?;
        Ok(a.max(&b))
    })?;
    cert.artifacts.push("eq: 1/R - 1 - R".into());
    cert.artifacts.push("eq: 1/R^5 - 11 - R^5".into());
    Ok(cert)
}

/// Certificate over the three recursion identities (max residual).
pub fn check_recursions(q: &QPoint, ctx: &PrecisionCtx) -> Result<Certificate> {
    let q1 = q.clone();
    let mut cert = certify(&format!("recursions@{}", describe_q(q)), ctx, &move |c| {
        let a = recursion_doubling_residual(&q1, c)?;
        let b = recursion_tripling_residual(&q1, c)?;
        let d = recursion_quintupling_residual(&q1, c)?;
        Ok(a.max(&b).max(&d))
    })?;
    cert.artifacts
        .push("eqs: doubling, tripling, quintupling".into());
    Ok(cert)
}

fn describe_q(q: &QPoint) -> String {
    match q {
        QPoint::Surd(r) => format!("q=exp(-pi*sqrt({r}))"),
        QPoint::Exact(r) => format!("q={r}"),
        QPoint::Fixed(x) => format!("q~{:.6}", x.to_f64()),
    }
}

// ---------------------------------------------------------------------------
// order-25 modular relation

/// alpha = (1/2)(1 - sqrt(G^24 - 1)/G^12); lies in (0, 1/2) for G > 1.
pub fn alpha_from_big_g(g: &Float) -> Result<Float> {
    if *g < 1u32 {
        return Err(Error::Domain(format!(
            "modulus map needs G >= 1, got {}",
            g.to_f64()
        )));
    }
    let prec = g.prec();
    let g12 = Float::with_val(prec, g.pow(12u32));
    let g24 = Float::with_val(prec, &g12 * &g12);
    Ok((1u32 - Float::with_val(prec, g24 - 1u32).sqrt() / g12) / 2u32)
}

/// G = 2^(-1/12) (L^2 - L^4)^(-1/24) for L = lambda*.
pub fn big_g_from_lambda_star(l: &Float) -> Result<Float> {
    let prec = l.prec();
    let l2 = Float::with_val(prec, l * l);
    let inner = Float::with_val(prec, &l2 - Float::with_val(prec, &l2 * &l2));
    if inner <= 0u32 {
        return Err(Error::Domain(
            "lambda* must lie strictly inside (0,1)".into(),
        ));
    }
    let root = Float::with_val(prec, inner.root(24)).recip();
    Ok(root / Float::with_val(prec, 2u32).root(12))
}

/// One configured instance of the order-25 relation.
#[derive(Debug, Clone)]
pub struct Order25Instance {
    pub alpha: Float,
    pub beta: Float,
    pub p: Float,
    pub q: Float,
}

impl Order25Instance {
    pub fn new(alpha: Float, beta: Float) -> Result<Self> {
        let prec = alpha.prec().max(beta.prec());
        for (name, v) in [("alpha", &alpha), ("beta", &beta)] {
            let half = Float::with_val(prec, 0.5f32);
            if !(v.is_finite() && *v > 0u32 && *v < half) {
                return Err(Error::Domain(format!(
                    "{name} must lie in (0, 1/2), got {}",
                    v.to_f64()
                )));
            }
        }
        let a1 = Float::with_val(prec, 1u32 - &alpha);
        let b1 = Float::with_val(prec, 1u32 - &beta);
        let p = (Float::with_val(prec, &alpha * &beta) * &a1 * &b1 * 16u32).root(12);
        let q = (Float::with_val(prec, &beta * &b1) / Float::with_val(prec, &alpha * &a1)).root(8);
        Ok(Self { alpha, beta, p, q })
    }

    /// |Q + 1/Q + 2 (P - 1/P)|.
    pub fn residual(&self) -> Float {
        let prec = self.p.prec();
        let lhs = Float::with_val(prec, &self.q + Float::with_val(prec, self.q.clone().recip()));
        let rhs = Float::with_val(prec, &self.p - Float::with_val(prec, self.p.clone().recip()));
        Float::with_val(prec, lhs + rhs * 2u32).abs()
    }
}

/// Certificate for the order-25 relation given recomputable sources for
/// alpha and beta.
pub fn check_order25(
    claim_id: &str,
    alpha: &dyn Fn(&PrecisionCtx) -> Result<Float>,
    beta: &dyn Fn(&PrecisionCtx) -> Result<Float>,
    ctx: &PrecisionCtx,
) -> Result<Certificate> {
    certify(claim_id, ctx, &move |c| {
        let inst = Order25Instance::new(alpha(c)?, beta(c)?)?;
        Ok(inst.residual())
    })
}

// ---------------------------------------------------------------------------
// icosahedral equation

/// Both sides of the cleared-denominator icosahedral identity at
/// (r, lambda): lhs = (r^20 - 228 r^15 + 494 r^10 + 228 r^5 + 1)^3
/// lambda^2 (1-lambda)^2, rhs = 256 r^5 (r^10 + 11 r^5 - 1)^5
/// (lambda - lambda^2 - 1)^3.
pub fn icosahedral_sides(r: &Float, lam: &Float) -> Result<(Float, Float)> {
    let prec = r.prec().max(lam.prec());
    if *lam <= 0u32 || *lam >= 1u32 {
        return Err(Error::Singularity(format!(
            "lambda must lie in (0,1), got {}",
            lam.to_f64()
        )));
    }
    let r5 = Float::with_val(prec, r.pow(5u32));
    let r10 = Float::with_val(prec, &r5 * &r5);
    let r15 = Float::with_val(prec, &r10 * &r5);
    let r20 = Float::with_val(prec, &r10 * &r10);
    let p20 = Float::with_val(prec, &r20 - Float::with_val(prec, &r15 * 228u32))
        + Float::with_val(prec, &r10 * 494u32)
        + Float::with_val(prec, &r5 * 228u32)
        + 1u32;
    let p10 = Float::with_val(prec, &r10 + Float::with_val(prec, &r5 * 11u32)) - 1u32;

    let lam2 = Float::with_val(prec, lam * lam);
    let one_minus = Float::with_val(prec, 1u32 - lam);
    let lhs = Float::with_val(prec, p20.pow(3u32))
        * &lam2
        * Float::with_val(prec, one_minus.square());
    let cubic = Float::with_val(prec, lam - &lam2) - 1u32;
    let rhs = Float::with_val(prec, &r5 * 256u32)
        * Float::with_val(prec, p10.pow(5u32))
        * Float::with_val(prec, cubic.pow(3u32));
    Ok((lhs, rhs))
}

pub fn icosahedral_residual(r: &Float, lam: &Float) -> Result<Float> {
    let (lhs, rhs) = icosahedral_sides(r, lam)?;
    let prec = lhs.prec();
    Ok(Float::with_val(prec, lhs - rhs).abs())
}

/// Certificate for the icosahedral identity given recomputable sources.
pub fn check_icosahedral(
    claim_id: &str,
    r: &dyn Fn(&PrecisionCtx) -> Result<Float>,
    lam: &dyn Fn(&PrecisionCtx) -> Result<Float>,
    ctx: &PrecisionCtx,
) -> Result<Certificate> {
    let mut cert = certify(claim_id, ctx, &move |c| {
        icosahedral_residual(&r(c)?, &lam(c)?)
    })?;
    let (lhs, rhs) = icosahedral_sides(&r(ctx)?, &lam(ctx)?)?;
    cert.artifacts.push(format!("lhs ~ {}", magnitude(&lhs)));
    cert.artifacts.push(format!("rhs ~ {}", magnitude(&rhs)));
    Ok(cert)
}

// ---------------------------------------------------------------------------
// the Yi map and pipeline scalar helpers

/// R^5 = sqrt(a^2 + 1) - a with 2a = 5 sqrt(5) s + 11.
pub fn yi_map(s: &Real) -> Real {
    let a = recognition::yi_a_from_s(s);
    let prec = a.value().prec();
    let v = sqrt_a2_plus_1_minus_a(a.value());
    Real::new(Float::with_val(prec, v), s.at_digits())
}

pub fn sqrt_a2_plus_1_minus_a(a: &Float) -> Float {
    let prec = a.prec();
    Float::with_val(prec, a.clone().square() + 1u32).sqrt() - a
}

/// lambda*(n/4) from L = lambda*(n) via the quadruplication chain:
/// with C = (1/L - L)^2 / 16, lambda*(n/4)^2 is the positive root of
/// C t^2 + t - 1 = 0.
pub fn quarter_lambda_star(l: &Float) -> Result<Float> {
    let prec = l.prec();
    if *l <= 0u32 || *l >= 1u32 {
        return Err(Error::Domain("lambda* must lie in (0,1)".into()));
    }
    let c = Float::with_val(prec, Float::with_val(prec, l.clone().recip()) - l).square() / 16u32;
    let disc = (Float::with_val(prec, &c * 4u32) + 1u32).sqrt();
    let t = Float::with_val(prec, disc - 1u32) / Float::with_val(prec, &c * 2u32);
    Ok(t.sqrt())
}

/// The index-th ascending real root (1-based) of `p`, refined to the
/// context's working precision.
pub fn designated_root(p: &IntPoly, index: usize, ctx: &PrecisionCtx) -> Result<Float> {
    let intervals = poly::isolate_real_roots(p)?;
    if index == 0 || index > intervals.len() {
        return Err(Error::RootMismatch(format!(
            "root index {index} out of range, polynomial has {} real roots",
            intervals.len()
        )));
    }
    Ok(poly::refine_root(p, &intervals[index - 1], ctx.bits()))
}

// ---------------------------------------------------------------------------
// reproduction pipelines

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TheoremId {
    Thm2_26_5,
    Thm3_38_5,
    Lemma1,
    Thm4_48_5,
    Conj16_15,
}

impl TheoremId {
    pub const ALL: [TheoremId; 5] = [
        TheoremId::Thm2_26_5,
        TheoremId::Thm3_38_5,
        TheoremId::Lemma1,
        TheoremId::Thm4_48_5,
        TheoremId::Conj16_15,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::Thm2_26_5 => "thm2_26_5",
            TheoremId::Thm3_38_5 => "thm3_38_5",
            TheoremId::Lemma1 => "lemma1",
            TheoremId::Thm4_48_5 => "thm4_48_5",
            TheoremId::Conj16_15 => "conj_16_15",
        }
    }
}

impl std::str::FromStr for TheoremId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "thm2_26_5" => Ok(TheoremId::Thm2_26_5),
            "thm3_38_5" => Ok(TheoremId::Thm3_38_5),
            "lemma1" => Ok(TheoremId::Lemma1),
            "thm4_48_5" => Ok(TheoremId::Thm4_48_5),
            "conj_16_15" => Ok(TheoremId::Conj16_15),
            other => Err(Error::InvalidArgument(format!(
                "unknown reproduction id {other:?} (expected thm2_26_5, thm3_38_5, lemma1, thm4_48_5, conj_16_15 or all)"
            ))),
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_str())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CertificateBundle {
    pub id: String,
    pub digits: u32,
    pub stages: Vec<Certificate>,
    pub verdict: Verdict,
}

impl CertificateBundle {
    fn conclude(id: TheoremId, digits: u32, mut stages: Vec<Certificate>, cap: bool) -> Self {
        if cap {
            // conjectural claim: a clean residual is support, not proof
            for c in &mut stages {
                if c.verdict == Verdict::Certified {
                    c.verdict = Verdict::NumericallySupported;
                }
            }
        }
        let mut verdict = if stages.iter().any(|c| c.verdict == Verdict::Refuted) {
            Verdict::Refuted
        } else if stages.iter().all(|c| c.verdict.acceptable()) {
            Verdict::Certified
        } else {
            Verdict::Inconclusive
        };
        if cap && verdict == Verdict::Certified {
            verdict = Verdict::NumericallySupported;
        }
        Self {
            id: id.as_str().into(),
            digits,
            stages,
            verdict,
        }
    }

    pub fn failing_stage(&self) -> Option<&Certificate> {
        self.stages.iter().find(|c| !c.verdict.acceptable())
    }
}

/// Everything one reproduction pipeline needs.
struct PipelinePlan {
    id: TheoremId,
    /// r with the target R(e^(-pi sqrt(r))).
    r_arg: SurdArg,
    /// quarter argument (tau = i sqrt(quarter_arg) in the icosahedral step)
    quarter_arg: SurdArg,
    a_value: recognition::FieldElement,
    minpoly: IntPoly,
    root_index: usize,
    /// chain entries to certify against products: (catalog name)
    chain_entries: Vec<&'static str>,
    /// argument n of the order-25 relation (alpha side); None skips it
    order25_n: Option<u64>,
    /// catalog entry supplying alpha's G-value, or the Lemma-1 polynomial
    alpha_from_lemma_poly: bool,
    alpha_entry: Option<&'static str>,
}

fn pipeline_plan(id: TheoremId) -> Option<PipelinePlan> {
    match id {
        TheoremId::Thm2_26_5 => Some(PipelinePlan {
            id,
            r_arg: SurdArg::new(26, 5).unwrap(),
            quarter_arg: SurdArg::new(13, 10).unwrap(),
            a_value: catalog::a_value_26_5(),
            minpoly: catalog::minpoly_lambda_star_26_5(),
            root_index: catalog::ROOT_INDEX_26_5,
            chain_entries: vec!["g_130", "G_130"],
            order25_n: Some(130),
            alpha_from_lemma_poly: false,
            alpha_entry: Some("G_130"),
        }),
        TheoremId::Thm3_38_5 => Some(PipelinePlan {
            id,
            r_arg: SurdArg::new(38, 5).unwrap(),
            quarter_arg: SurdArg::new(19, 10).unwrap(),
            a_value: catalog::a_value_38_5(),
            minpoly: catalog::minpoly_lambda_star_38_5(),
            root_index: catalog::ROOT_INDEX_38_5,
            chain_entries: vec!["g_190", "G_190"],
            order25_n: Some(190),
            alpha_from_lemma_poly: false,
            alpha_entry: Some("G_190"),
        }),
        TheoremId::Thm4_48_5 => Some(PipelinePlan {
            id,
            r_arg: SurdArg::new(48, 5).unwrap(),
            quarter_arg: SurdArg::new(12, 5).unwrap(),
            a_value: catalog::a_value_48_5(),
            minpoly: catalog::minpoly_lambda_star_48_5(),
            root_index: catalog::ROOT_INDEX_48_5,
            chain_entries: vec!["G_15", "G_60", "G_240"],
            order25_n: Some(240),
            alpha_from_lemma_poly: true,
            alpha_entry: None,
        }),
        TheoremId::Conj16_15 => Some(PipelinePlan {
            id,
            r_arg: SurdArg::new(16, 15).unwrap(),
            quarter_arg: SurdArg::new(4, 15).unwrap(),
            a_value: catalog::a_value_16_15(),
            minpoly: IntPoly::zero(),
            root_index: 0,
            chain_entries: vec![],
            order25_n: None,
            alpha_from_lemma_poly: false,
            alpha_entry: None,
        }),
        TheoremId::Lemma1 => None, // has its own runner
    }
}

fn catalog_entry_residual(name: &str, c: &PrecisionCtx) -> Result<Float> {
    let cat = catalog::builtin();
    let entry = cat
        .get(name)
        .ok_or_else(|| Error::InvalidArgument(format!("no catalog entry {name}")))?;
    entry.residual(c)
}

/// The designated lambda* value: the root_index-th ascending real root.
fn designated_lambda(p: &IntPoly, index: usize, c: &PrecisionCtx) -> Result<Float> {
    designated_root(p, index, c)
}

/// Stage (i): the closed-form chain against the product definitions.
fn chain_stage(plan: &PipelinePlan, ctx: &PrecisionCtx) -> Result<Certificate> {
    let names = plan.chain_entries.clone();
    let claim = format!("{}/chain", plan.id);
    let mut cert = certify(&claim, ctx, &move |c| {
        let mut worst = Float::with_val(c.bits(), 0u32);
        for name in &names {
            let r = catalog_entry_residual(name, c)?;
            worst = worst.max(&r);
        }
        Ok(worst)
    })?;
    cert.artifacts = plan.chain_entries.iter().map(|s| s.to_string()).collect();
    Ok(cert)
}

/// Stage (ii)a: the lambda* polynomial annihilates the theta-evaluated
/// lambda*(r), normalized by height and degree; plus a byte-exact
/// recognition of the polynomial from the theta value.
fn lambda_poly_stage(plan: &PipelinePlan, ctx: &PrecisionCtx) -> Result<Certificate> {
    let p = plan.minpoly.clone();
    let r_arg = plan.r_arg;
    let claim = format!("{}/lambda_star_poly", plan.id);
    let height = Float::with_val(64, p.max_abs_coeff());
    let degree = p.degree().unwrap_or(1) as u32;
    let p_for_claim = p.clone();
    let mut cert = certify(&claim, ctx, &move |c| {
        let l = invariants::lambda_star(&r_arg, c)?;
        let v = p_for_claim.eval_float(l.value()).abs();
        let scale = Float::with_val(c.bits(), &height) * degree;
        Ok(v / scale)
    })?;

    // recognition cross-derivation at the precision the degree needs
    let digits_needed = recognition_digits_for(&p, ctx);
    let rec_ctx = PrecisionCtx::new(digits_needed, ctx.guard)?;
    let source = FnSource::new(format!("lambda*({r_arg})"), move |c: &PrecisionCtx| {
        invariants::lambda_star(&r_arg, c)
    });
    let recognized =
        recognition::recognize_minpoly(&source, p.degree().unwrap_or(1), None, &rec_ctx)?;
    match recognized {
        Some(cand) if cand.poly == p && cand.root_index == plan.root_index => {
            cert.artifacts
                .push(format!("recognition: byte-exact, root {}", cand.root_index));
        }
        Some(cand) => {
            cert.verdict = Verdict::Inconclusive;
            cert.artifacts
                .push(format!("recognition mismatch: got {}", cand.poly));
        }
        None => {
            cert.verdict = Verdict::Inconclusive;
            cert.artifacts.push("recognition: none".into());
        }
    }
    Ok(cert)
}

fn recognition_digits_for(p: &IntPoly, ctx: &PrecisionCtx) -> u32 {
    let d = p.degree().unwrap_or(1) as u32;
    let h = p
        .max_abs_coeff()
        .to_string()
        .len() as u32;
    (d * (h + 2) + 6 * ctx.guard).max(300)
}

/// Stage (ii)b: the order-25 relation with alpha from the chain and beta
/// from the designated polynomial root.
fn order25_stage(plan: &PipelinePlan, ctx: &PrecisionCtx) -> Result<Certificate> {
    let n = plan.order25_n.expect("order25 stage needs n");
    let claim = format!("{}/order25_n{}", plan.id, n);
    let p = plan.minpoly.clone();
    let idx = plan.root_index;
    let beta = move |c: &PrecisionCtx| -> Result<Float> {
        let l = designated_lambda(&p, idx, c)?;
        let g = big_g_from_lambda_star(&l)?;
        alpha_from_big_g(&g)
    };
    let alpha: ScalarSource = if plan.alpha_from_lemma_poly {
        Box::new(move |c: &PrecisionCtx| {
            designated_root(&catalog::minpoly_alpha_240(), catalog::ROOT_INDEX_ALPHA_240, c)
        })
    } else {
        let name = plan.alpha_entry.expect("alpha entry");
        Box::new(move |c: &PrecisionCtx| {
            let cat = catalog::builtin();
            let g = cat
                .get(name)
                .expect("catalog entry")
                .expression
                .eval(c.bits())?;
            alpha_from_big_g(&g)
        })
    };
    let mut cert = check_order25(&claim, &alpha, &beta, ctx)?;
    cert.artifacts.push(format!(
        "beta from designated root {} of the degree-{} polynomial",
        plan.root_index,
        plan.minpoly.degree().unwrap_or(0)
    ));
    Ok(cert)
}

/// Stage (iii): the quarter-argument lambda* from the designated root
/// against the direct theta evaluation.
fn quarter_stage(plan: &PipelinePlan, ctx: &PrecisionCtx) -> Result<Certificate> {
    let claim = format!("{}/quarter_lambda_star_{}", plan.id, plan.quarter_arg);
    let p = plan.minpoly.clone();
    let idx = plan.root_index;
    let quarter = plan.quarter_arg;
    certify(&claim, ctx, &move |c| {
        let l = designated_lambda(&p, idx, c)?;
        let from_chain = quarter_lambda_star(&l)?;
        let direct = invariants::lambda_star(&quarter, c)?;
        Ok(Float::with_val(c.bits(), &from_chain - direct.value()).abs())
    })
}

/// Stage (iv): the icosahedral identity at tau = i sqrt(quarter_arg)
/// with r from the a-value and lambda from the designated-root chain
/// (or, for the conjecture, from the theta series directly).
fn icosahedral_stage(plan: &PipelinePlan, ctx: &PrecisionCtx) -> Result<Certificate> {
    let claim = format!("{}/icosahedral_tau_sqrt_{}", plan.id, plan.quarter_arg);
    let a = plan.a_value.clone();
    let r_fn = move |c: &PrecisionCtx| -> Result<Float> {
        let av = a.eval(c.bits());
        Ok(Float::with_val(c.bits(), sqrt_a2_plus_1_minus_a(&av).root(5)))
    };
    let lam_fn: ScalarSource = if plan.minpoly.is_zero() {
        let quarter = plan.quarter_arg;
        Box::new(move |c: &PrecisionCtx| {
            Ok(Float::with_val(
                c.bits(),
                invariants::lambda_star(&quarter, c)?.value().clone().square(),
            ))
        })
    } else {
        let p = plan.minpoly.clone();
        let idx = plan.root_index;
        Box::new(move |c: &PrecisionCtx| {
            let l = designated_lambda(&p, idx, c)?;
            let quarter = quarter_lambda_star(&l)?;
            Ok(Float::with_val(c.bits(), quarter.square()))
        })
    };
    let mut cert = check_icosahedral(&claim, &r_fn, &lam_fn, ctx)?;
    cert.artifacts.push(format!("a = {}", plan.a_value));
    Ok(cert)
}

/// Stage (v): R by direct product evaluation against the a-value.
fn cross_check_stage(plan: &PipelinePlan, ctx: &PrecisionCtx) -> Result<Certificate> {
    let claim = format!("{}/r5_product_cross_check", plan.id);
    let a = plan.a_value.clone();
    let r_arg = plan.r_arg;
    let mut cert = certify(&claim, ctx, &move |c| {
        let r = qseries::eval_r_product(&QPoint::Surd(r_arg), c)?;
        let r5 = Float::with_val(c.bits(), r.value().pow(5u32));
        let target = sqrt_a2_plus_1_minus_a(&a.eval(c.bits()));
        Ok(Float::with_val(c.bits(), r5 - target).abs())
    })?;
    cert.artifacts.push(format!("a = {}", plan.a_value));
    Ok(cert)
}

fn run_classical_pipeline(plan: PipelinePlan, ctx: &PrecisionCtx) -> Result<CertificateBundle> {
    let mut stages = Vec::new();
    if !plan.chain_entries.is_empty() {
        stages.push(chain_stage(&plan, ctx)?);
    }
    if !plan.minpoly.is_zero() {
        stages.push(lambda_poly_stage(&plan, ctx)?);
    }
    if plan.order25_n.is_some() {
        stages.push(order25_stage(&plan, ctx)?);
    }
    if !plan.minpoly.is_zero() {
        stages.push(quarter_stage(&plan, ctx)?);
    }
    stages.push(icosahedral_stage(&plan, ctx)?);
    stages.push(cross_check_stage(&plan, ctx)?);
    let cap = plan.id == TheoremId::Conj16_15;
    Ok(CertificateBundle::conclude(plan.id, ctx.digits, stages, cap))
}

fn run_lemma1(ctx: &PrecisionCtx) -> Result<CertificateBundle> {
    let mut stages = Vec::new();

    // chain: G_15 -> G_60 -> G_240 against products
    let mut chain = certify("lemma1/chain", ctx, &|c| {
        let mut worst = Float::with_val(c.bits(), 0u32);
        for name in ["G_15", "G_60", "G_240"] {
            let r = catalog_entry_residual(name, c)?;
            worst = worst.max(&r);
        }
        Ok(worst)
    })?;
    chain.artifacts = vec!["G_15".into(), "G_60".into(), "G_240".into()];
    stages.push(chain);

    // alpha residual in the degree-16 polynomial, normalized
    let p = catalog::minpoly_alpha_240();
    let height = Float::with_val(64, p.max_abs_coeff());
    let p_claim = p.clone();
    let mut alpha_cert = certify("lemma1/alpha_minpoly", ctx, &move |c| {
        let alpha = chain_alpha_240(c)?;
        let v = p_claim.eval_float(&alpha).abs();
        Ok(v / (Float::with_val(c.bits(), &height) * 16u32))
    })?;

    // byte-exact recognition of the degree-16 polynomial
    let rec_ctx = PrecisionCtx::new(900, ctx.guard)?;
    let source = FnSource::new("alpha(240)", |c: &PrecisionCtx| {
        Ok(Real::from_ctx(chain_alpha_240(c)?, c))
    });
    match recognition::recognize_minpoly(&source, 16, None, &rec_ctx)? {
        Some(cand) if cand.poly == p && cand.root_index == catalog::ROOT_INDEX_ALPHA_240 => {
            alpha_cert
                .artifacts
                .push(format!("recognition: byte-exact, root {}", cand.root_index));
        }
        Some(cand) => {
            alpha_cert.verdict = Verdict::Inconclusive;
            alpha_cert
                .artifacts
                .push(format!("recognition mismatch: got {}", cand.poly));
        }
        None => {
            alpha_cert.verdict = Verdict::Inconclusive;
            alpha_cert.artifacts.push("recognition: none".into());
        }
    }
    stages.push(alpha_cert);

    Ok(CertificateBundle::conclude(
        TheoremId::Lemma1,
        ctx.digits,
        stages,
        false,
    ))
}

/// alpha = (1/2)(1 - sqrt(G_240^24 - 1)/G_240^12) via the closed-form chain.
pub fn chain_alpha_240(ctx: &PrecisionCtx) -> Result<Float> {
    let cat = catalog::builtin();
    let g240 = cat
        .get("G_240")
        .expect("catalog entry")
        .expression
        .eval(ctx.bits())?;
    alpha_from_big_g(&g240)
}

/// Standalone order-25 certificate for one of the configured instances
/// (the pipelines for n = 130, 190, 240).
pub fn order25_certificate(id: TheoremId, ctx: &PrecisionCtx) -> Result<Certificate> {
    let plan = pipeline_plan(id)
        .filter(|s| s.order25_n.is_some())
        .ok_or_else(|| {
            Error::InvalidArgument(format!("{id} has no order-25 instance configured"))
        })?;
    order25_stage(&plan, ctx)
}

/// Run one reproduction pipeline.
pub fn reproduce_theorem(id: TheoremId, ctx: &PrecisionCtx) -> Result<CertificateBundle> {
    match id {
        TheoremId::Lemma1 => run_lemma1(ctx),
        other => run_classical_pipeline(pipeline_plan(other).expect("plan exists"), ctx),
    }
}

/// Run all five pipelines, optionally in parallel.
pub fn reproduce_all(ctx: &PrecisionCtx, jobs: usize) -> Result<Vec<CertificateBundle>> {
    let jobs = jobs.max(1);
    if jobs == 1 {
        return TheoremId::ALL
            .iter()
            .map(|id| reproduce_theorem(*id, ctx))
            .collect();
    }
    let mut out: Vec<Option<Result<CertificateBundle>>> =
        TheoremId::ALL.iter().map(|_| None).collect();
    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for id in TheoremId::ALL {
            let ctx = *ctx;
            handles.push(scope.spawn(move || reproduce_theorem(id, &ctx)));
        }
        for (slot, h) in out.iter_mut().zip(handles) {
            *slot = Some(h.join().expect("pipeline thread panicked"));
        }
    });
    out.into_iter().map(|r| r.unwrap()).collect()
}

// ---------------------------------------------------------------------------
// seeded rational sampling for the identity sweeps

/// Deterministic rational q samples in (10^-3, 0.6) with denominator 10^6.
pub fn sample_rational_qs(seed: u64, count: usize) -> Vec<Rational> {
    let mut state = seed.wrapping_add(0x9e3779b97f4a7c15);
    let mut next = move || {
        // splitmix64
        state = state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    };
    (0..count)
        .map(|_| {
            let u = (next() >> 11) as f64 / (1u64 << 53) as f64;
            let num = (1000.0 + u * (600_000.0 - 1000.0 - 1.0)).floor() as u64 + 1;
            Rational::from((num, 1_000_000u64))
        })
        .collect()
}
