//! Reconstructing exact algebra from high-precision reals: minimal
//! polynomials by exact lattice reduction on the scaled power lattice,
//! and coefficient recovery over prescribed square-root bases.
//!
//! Every recognition is re-verified at doubled precision before it is
//! reported as stable; a witness that cannot be re-evaluated (a pasted
//! decimal literal, say) can only ever yield a provisional candidate.

use crate::error::{Error, Result};
use crate::lll;
use crate::poly::{self, IntPoly};
use crate::precision::{pow10, PrecisionCtx};
use crate::qseries::{self, QPoint};
use crate::real::Real;
use crate::surd::SurdArg;
use rug::{Float, Integer, Rational};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use std::fmt;

/// A witness that can be (re)computed at any requested precision.
pub trait ValueSource {
    fn eval(&self, ctx: &PrecisionCtx) -> Result<Real>;

    /// Highest digits this source can honestly produce (None = unlimited).
    fn max_digits(&self) -> Option<u32> {
        None
    }

    fn describe(&self) -> String {
        "value".into()
    }
}

/// Wraps a closure recomputing the witness per context.
pub struct FnSource<F: Fn(&PrecisionCtx) -> Result<Real>> {
    f: F,
    label: String,
}

impl<F: Fn(&PrecisionCtx) -> Result<Real>> FnSource<F> {
    pub fn new(label: impl Into<String>, f: F) -> Self {
        Self {
            f,
            label: label.into(),
        }
    }
}

impl<F: Fn(&PrecisionCtx) -> Result<Real>> ValueSource for FnSource<F> {
    fn eval(&self, ctx: &PrecisionCtx) -> Result<Real> {
        (self.f)(ctx)
    }

    fn describe(&self) -> String {
        self.label.clone()
    }
}

/// A decimal literal; precision is capped by the digits printed.
pub struct LiteralSource {
    text: String,
    digits: u32,
}

impl LiteralSource {
    pub fn new(text: impl Into<String>) -> Result<Self> {
        let text = text.into();
        let digits = text.chars().filter(|c| c.is_ascii_digit()).count() as u32;
        if digits == 0 {
            return Err(Error::InvalidArgument(format!(
                "not a decimal literal: {text:?}"
            )));
        }
        // short terminating decimals are exact out to the minimum
        // working precision (the tail is zeros)
        Ok(Self {
            text,
            digits: digits.max(PrecisionCtx::MIN_DIGITS),
        })
    }
}

impl ValueSource for LiteralSource {
    fn eval(&self, ctx: &PrecisionCtx) -> Result<Real> {
        let parsed = Float::parse(&self.text)
            .map_err(|e| Error::InvalidArgument(format!("bad literal: {e}")))?;
        Ok(Real::new(
            Float::with_val(ctx.bits(), parsed),
            self.digits.min(ctx.digits),
        ))
    }

    fn max_digits(&self) -> Option<u32> {
        Some(self.digits)
    }

    fn describe(&self) -> String {
        format!("literal {}", self.text)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Confidence {
    /// Passed the residual test at the working precision only.
    Provisional,
    /// Reproduced by the doubled-precision re-verification.
    EscalationStable,
}

/// An integer polynomial candidate annihilating a witness, together with
/// the location of the matched real root.
#[derive(Debug, Clone)]
pub struct AlgebraicCandidate {
    /// Content-free with positive leading coefficient.
    pub poly: IntPoly,
    /// 1-based index of the matched root among the ascending real roots.
    pub root_index: usize,
    /// Index under the CAS convention (real roots sort ascending there
    /// too, so this equals `root_index` whenever the target is real).
    pub cas_index: Option<usize>,
    pub witness: Real,
    pub confidence: Confidence,
}

impl Serialize for AlgebraicCandidate {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("AlgebraicCandidate", 4)?;
        let coeffs: Vec<String> = self.poly.coeffs().iter().map(|c| c.to_string()).collect();
        s.serialize_field("coeffs", &coeffs)?;
        s.serialize_field("root_index", &self.root_index)?;
        s.serialize_field("witness_digits", &self.witness.at_digits())?;
        s.serialize_field("confidence", &self.confidence)?;
        s.end()
    }
}

/// Rational coefficients over a square-root basis: x = sum c_i sqrt(b_i).
#[derive(Debug, Clone, PartialEq)]
pub struct FieldElement {
    basis: Vec<u64>,
    coeffs: Vec<Rational>,
}

impl FieldElement {
    pub fn new(basis: Vec<u64>, coeffs: Vec<Rational>) -> Result<Self> {
        if basis.is_empty() || basis.len() != coeffs.len() {
            return Err(Error::InvalidArgument(
                "basis and coefficients must be nonempty and equal length".into(),
            ));
        }
        if basis[0] != 1 {
            return Err(Error::InvalidArgument("basis must start with 1".into()));
        }
        for &b in &basis {
            if b == 0 || !is_squarefree_u64(b) {
                return Err(Error::InvalidArgument(format!(
                    "basis element {b} is not squarefree positive"
                )));
            }
        }
        Ok(Self { basis, coeffs })
    }

    pub fn basis(&self) -> &[u64] {
        &self.basis
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn eval(&self, bits: u32) -> Float {
        let mut acc = Float::with_val(bits, 0u32);
        for (b, c) in self.basis.iter().zip(&self.coeffs) {
            let root = Float::with_val(bits, *b).sqrt();
            acc += Float::with_val(bits, c) * root;
        }
        acc
    }

    /// The element as a radical tree, sum of c_i sqrt(b_i).
    pub fn to_radical(&self) -> crate::radical::Radical {
        use crate::radical::Radical;
        let terms = self
            .basis
            .iter()
            .zip(&self.coeffs)
            .map(|(b, c)| {
                let coeff = Radical::Rat(c.to_string());
                if *b == 1 {
                    coeff
                } else {
                    Radical::Mul(vec![coeff, Radical::sqrt_int(*b as i64)])
                }
            })
            .collect();
        Radical::Add(terms)
    }

    /// Largest reduced denominator among the coefficients.
    pub fn max_denominator(&self) -> Integer {
        self.coeffs
            .iter()
            .map(|c| c.denom().clone())
            .max()
            .unwrap_or_else(|| Integer::from(1))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (b, c) in self.basis.iter().zip(&self.coeffs) {
            if c.cmp0() == std::cmp::Ordering::Equal {
                continue;
            }
            let neg = c.cmp0() == std::cmp::Ordering::Less;
            let mag = Rational::from(c.abs_ref());
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            if *b == 1 {
                write!(f, "{mag}")?;
            } else if mag == 1u32 {
                write!(f, "sqrt({b})")?;
            } else {
                write!(f, "{mag}*sqrt({b})")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Serialize for FieldElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("FieldElement", 2)?;
        s.serialize_field("basis", &self.basis)?;
        let coeffs: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        s.serialize_field("coeffs", &coeffs)?;
        s.end()
    }
}

fn is_squarefree_u64(mut n: u64) -> bool {
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return false;
            }
        }
        p += 1;
    }
    true
}

fn squarefree_kernel(mut n: u64) -> u64 {
    let mut result = 1u64;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut count = 0u32;
            while n.is_multiple_of(p) {
                n /= p;
                count += 1;
            }
            if count % 2 == 1 {
                result *= p;
            }
        }
        p += 1;
    }
    result * n
}

/// Reduce the relation lattice [e_i | round(S * v_i)] with
/// S = 10^(digits - guard), raising the scale progressively.
fn reduce_relation_lattice(values: &[Float], ctx: &PrecisionCtx) -> Vec<Vec<Integer>> {
    let scale_digits = (ctx.digits - ctx.guard) as i64;
    let prec = ctx.bits() + (scale_digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 64;
    let widened: Vec<Float> = values
        .iter()
        .map(|v| Float::with_val(prec, v))
        .collect();
    lll::reduce_relation_progressive(&widened, scale_digits, 96)
}

/// Default height cap in decimal digits for a degree-d sweep step:
/// 10^((digits - 4 guard)/(d + 1)).
fn default_height_digits(ctx: &PrecisionCtx, degree: usize) -> u32 {
    let usable = ctx.digits.saturating_sub(4 * ctx.guard);
    (usable / (degree as u32 + 1)).max(1)
}

fn escalated_ctx(source: &dyn ValueSource, ctx: &PrecisionCtx) -> Option<PrecisionCtx> {
    let doubled = ctx.doubled();
    match source.max_digits() {
        Some(max) if max < doubled.digits => None,
        _ => Some(doubled),
    }
}

/// Minimal polynomial search: ascending-degree sweep with exact LLL on
/// the scaled power lattice, early exit at the first candidate that
/// survives the residual test (and the doubled-precision pass when the
/// source allows one). `None` means "no relation within bounds", which
/// is a result, not an error.
pub fn recognize_minpoly(
    source: &dyn ValueSource,
    degree_max: usize,
    height_digits: Option<u32>,
    ctx: &PrecisionCtx,
) -> Result<Option<AlgebraicCandidate>> {
    if degree_max == 0 {
        return Err(Error::InvalidArgument("degree_max must be >= 1".into()));
    }
    if let Some(h) = height_digits {
        let needed = degree_max as u32 * h + 4 * ctx.guard;
        if ctx.digits < needed {
            return Err(Error::Precision(format!(
                "degree {degree_max} at height 10^{h} needs >= {needed} digits, ctx has {}",
                ctx.digits
            )));
        }
    }
    if source.max_digits().is_some_and(|m| m < ctx.digits) {
        return Err(Error::Precision(format!(
            "source {} provides {} digits, ctx needs {}",
            source.describe(),
            source.max_digits().unwrap(),
            ctx.digits
        )));
    }

    let x = source.eval(ctx)?;
    let xv = x.value();

    // powers 1, x, ..., x^degree_max at full working precision
    let prec = ctx.bits();
    let mut powers = Vec::with_capacity(degree_max + 1);
    powers.push(Float::with_val(prec, 1u32));
    for i in 1..=degree_max {
        let next = Float::with_val(prec, &powers[i - 1] * xv);
        powers.push(next);
    }

    for d in 1..=degree_max {
        let h = height_digits.unwrap_or_else(|| default_height_digits(ctx, d));
        use rug::ops::Pow;
        let height_cap: Integer = Integer::from(10).pow(h);
        let reduced = reduce_relation_lattice(&powers[..=d], ctx);

        for row in reduced.iter().take(3) {
            let poly = IntPoly::new(row[..=d].to_vec());
            let Some(deg) = poly.degree() else { continue };
            if deg == 0 {
                continue;
            }
            if poly.max_abs_coeff() > height_cap {
                continue;
            }
            if let Some(candidate) = try_candidate(&poly, source, &x, d, ctx)? {
                return Ok(Some(candidate));
            }
        }
    }
    Ok(None)
}

fn residual_ok(poly: &IntPoly, x: &Real, digits: u32, guard: u32) -> bool {
    let v = poly.eval_float(x.value()).abs();
    let d = poly.degree().unwrap_or(1).max(1) as u32;
    let bound = pow10(x.value().prec(), -(digits.saturating_sub(2 * guard) as i64))
        * Float::with_val(x.value().prec(), poly.max_abs_coeff())
        * d;
    v < bound
}

fn try_candidate(
    raw: &IntPoly,
    source: &dyn ValueSource,
    x: &Real,
    _sweep_degree: usize,
    ctx: &PrecisionCtx,
) -> Result<Option<AlgebraicCandidate>> {
    let mut poly = raw.primitive();
    if !residual_ok(&poly, x, ctx.digits, ctx.guard) {
        return Ok(None);
    }
    // a squarefree annihilator of x still annihilates x
    if !poly.is_squarefree() {
        let chain = poly::SturmChain::new(&poly)?;
        poly = chain.squarefree_part().primitive();
        if !residual_ok(&poly, x, ctx.digits, ctx.guard) {
            return Ok(None);
        }
    }

    let confidence = match escalated_ctx(source, ctx) {
        Some(hi_ctx) => {
            let x_hi = source.eval(&hi_ctx)?;
            if !residual_ok(&poly, &x_hi, hi_ctx.digits, hi_ctx.guard) {
                // spurious relation: looked exact at working precision,
                // fell apart at doubled precision
                return Ok(None);
            }
            Confidence::EscalationStable
        }
        None => Confidence::Provisional,
    };

    let (root_index, refined, cas_index) = match select_root(&poly, x, ctx) {
        Ok(t) => t,
        Err(Error::RootMismatch(_)) => return Ok(None),
        Err(e) => return Err(e),
    };

    Ok(Some(AlgebraicCandidate {
        poly,
        root_index,
        cas_index,
        witness: refined,
        confidence,
    }))
}

/// Isolate the real roots of `candidate`, return the 1-based ascending
/// index of the root nearest `target`, that root refined to the context
/// precision, and the index under the CAS ordering convention (equal for
/// real roots).
pub fn select_root(
    poly: &IntPoly,
    target: &Real,
    ctx: &PrecisionCtx,
) -> Result<(usize, Real, Option<usize>)> {
    let intervals = poly::isolate_real_roots(poly)?;
    if intervals.is_empty() {
        return Err(Error::RootMismatch("polynomial has no real roots".into()));
    }
    // coarse pass to find the nearest root; needs enough bits to resolve
    // the 10^-guard matching window
    let coarse_bits = 256.max(ctx.guard * 4 + 96);
    let tv = Float::with_val(coarse_bits, target.value());
    let mut best: Option<(usize, Float)> = None;
    for (i, iv) in intervals.iter().enumerate() {
        let approx = poly::refine_root(poly, iv, coarse_bits);
        let dist = Float::with_val(coarse_bits, &approx - &tv).abs();
        if best.as_ref().is_none_or(|(_, d)| dist < *d) {
            best = Some((i, dist));
        }
    }
    let (idx, dist) = best.unwrap();
    if dist > pow10(coarse_bits, -(ctx.guard as i64)) {
        return Err(Error::RootMismatch(format!(
            "nearest real root is 10^{:.0} away from target",
            dist.to_f64().log10()
        )));
    }
    let refined = poly::refine_root(poly, &intervals[idx], ctx.bits());
    Ok((
        idx + 1,
        Real::from_ctx(refined, ctx),
        Some(idx + 1),
    ))
}

/// Recover x as a rational combination over a square-root basis
/// (the basis must contain 1 and be squarefree).
pub fn recognize_in_field(
    source: &dyn ValueSource,
    basis: &[u64],
    denom_cap: u64,
    ctx: &PrecisionCtx,
) -> Result<Option<(FieldElement, Confidence)>> {
    // validate via a throwaway element
    FieldElement::new(basis.to_vec(), vec![Rational::new(); basis.len()])?;
    let mut sorted = basis.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != basis.len() {
        return Err(Error::InvalidArgument("basis has duplicates".into()));
    }

    let x = source.eval(ctx)?;
    let prec = ctx.bits();
    let mut values = Vec::with_capacity(basis.len() + 1);
    values.push(x.value().clone());
    for &b in basis {
        values.push(Float::with_val(prec, b).sqrt());
    }

    let reduced = reduce_relation_lattice(&values, ctx);
    for row in reduced.iter().take(3) {
        let m0 = &row[0];
        if m0.is_zero() || m0.clone().abs() > denom_cap {
            continue;
        }
        let coeffs: Vec<Rational> = row[1..=basis.len()]
            .iter()
            .map(|m| -Rational::from((m, m0)))
            .collect();
        let element = FieldElement::new(basis.to_vec(), coeffs)?;
        if element.max_denominator() > denom_cap {
            continue;
        }

        // residual at working precision
        let tol = pow10(prec, -((ctx.digits - ctx.guard) as i64));
        let scale = Float::with_val(prec, x.value().clone().abs()).max(&Float::with_val(prec, 1u32));
        let diff = Float::with_val(prec, x.value() - &element.eval(prec)).abs();
        if diff > Float::with_val(prec, &tol * &scale) {
            continue;
        }

        // doubled-precision pass
        let confidence = match escalated_ctx(source, ctx) {
            Some(hi_ctx) => {
                let x_hi = source.eval(&hi_ctx)?;
                let hp = hi_ctx.bits();
                let tol_hi = pow10(hp, -((hi_ctx.digits - hi_ctx.guard) as i64));
                let diff_hi =
                    Float::with_val(hp, x_hi.value() - &element.eval(hp)).abs();
                let scale_hi =
                    Float::with_val(hp, x_hi.value().clone().abs()).max(&Float::with_val(hp, 1u32));
                if diff_hi > tol_hi * scale_hi {
                    continue;
                }
                Confidence::EscalationStable
            }
            None => Confidence::Provisional,
        };
        return Ok(Some((element, confidence)));
    }
    Ok(None)
}

/// Outcome of the experimental discovery pipeline built on the modular
/// relation s_n = f^6(-q) / (5 sqrt(5) q f^6(-q^5)) at q = e^(-2 pi sqrt(n/5)).
#[derive(Debug, Clone, Serialize)]
pub struct YiRecognition {
    pub n: SurdArg,
    /// s_n as a decimal witness (digits - guard digits shown).
    pub s_decimal: String,
    pub a_decimal: String,
    pub s_field: Option<FieldElement>,
    pub a_field: Option<FieldElement>,
    pub s_minpoly: Option<AlgebraicCandidate>,
    pub a_minpoly: Option<AlgebraicCandidate>,
}

impl YiRecognition {
    pub fn recognized(&self) -> bool {
        self.s_field.is_some()
            || self.a_field.is_some()
            || self.s_minpoly.is_some()
            || self.a_minpoly.is_some()
    }
}

/// Evaluate s_n at the given context.
pub fn yi_s_value(n: &SurdArg, ctx: &PrecisionCtx) -> Result<Real> {
    // q = e^(-2 pi sqrt(n/5)) = e^(-pi sqrt(4n/5))
    let q_arg = n.scaled(4, 5)?;
    let q5_arg = q_arg.scaled(25, 1)?;
    let prec = ctx.bits();
    let q = q_arg.nome(ctx);
    let f_q = qseries::eval_f_neg_q(&QPoint::Surd(q_arg), ctx)?;
    let f_q5 = qseries::eval_f_neg_q(&QPoint::Surd(q5_arg), ctx)?;
    use rug::ops::Pow;
    let num = Float::with_val(prec, f_q.value().pow(6u32));
    let den = Float::with_val(prec, f_q5.value().pow(6u32))
        * q
        * Float::with_val(prec, 5u32).sqrt()
        * 5u32;
    Ok(Real::from_ctx(num / den, ctx))
}

/// a = (5 sqrt(5) s + 11)/2.
pub fn yi_a_from_s(s: &Real) -> Real {
    let prec = s.value().prec();
    let v = (Float::with_val(prec, 5u32).sqrt() * 5u32 * s.value() + 11u32) / 2u32;
    Real::new(v, s.at_digits())
}

/// Candidate square-root bases for the Yi pipeline at index n: pairs of
/// squarefree kernels drawn from the numerator, denominator, and 5.
fn candidate_bases(n: &SurdArg) -> Vec<Vec<u64>> {
    let mut gens: Vec<u64> = Vec::new();
    for v in [5, squarefree_kernel(n.num()), squarefree_kernel(n.den())] {
        if v > 1 && !gens.contains(&v) {
            gens.push(v);
        }
    }
    let mut bases = Vec::new();
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            let (a, b) = (gens[i], gens[j]);
            let ab = squarefree_kernel(a * b);
            let mut basis = vec![1, a, b, ab];
            basis.sort_unstable();
            basis.dedup();
            if !bases.contains(&basis) {
                bases.push(basis);
            }
        }
    }
    for g in gens {
        let basis = vec![1, g];
        if !bases.contains(&basis) {
            bases.push(basis);
        }
    }
    bases
}

/// Run the discovery pipeline at index n: compute s_n, map it to a, and
/// attempt both recognizers on each. Absence of a recognition is a
/// reported outcome, not an error.
pub fn yi_recognize(n: &SurdArg, ctx: &PrecisionCtx) -> Result<YiRecognition> {
    let s = yi_s_value(n, ctx)?;
    let a = yi_a_from_s(&s);

    let n_copy = *n;
    let s_source = FnSource::new(format!("s({n})"), move |c: &PrecisionCtx| {
        yi_s_value(&n_copy, c)
    });
    let a_source = FnSource::new(format!("a({n})"), move |c: &PrecisionCtx| {
        Ok(yi_a_from_s(&yi_s_value(&n_copy, c)?))
    });

    let mut s_field = None;
    let mut a_field = None;
    for basis in candidate_bases(n) {
        if s_field.is_none() {
            if let Some((el, _)) = recognize_in_field(&s_source, &basis, 64, ctx)? {
                s_field = Some(el);
            }
        }
        if a_field.is_none() {
            if let Some((el, _)) = recognize_in_field(&a_source, &basis, 64, ctx)? {
                a_field = Some(el);
            }
        }
        if s_field.is_some() && a_field.is_some() {
            break;
        }
    }

    let s_minpoly = recognize_minpoly(&s_source, 8, None, ctx)?;
    let a_minpoly = recognize_minpoly(&a_source, 8, None, ctx)?;

    let shown = ctx.digits - ctx.guard;
    Ok(YiRecognition {
        n: *n,
        s_decimal: s.to_decimal_string(shown),
        a_decimal: a.to_decimal_string(shown),
        s_field,
        a_field,
        s_minpoly,
        a_minpoly,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(digits: u32) -> PrecisionCtx {
        PrecisionCtx::with_digits(digits).unwrap()
    }

    fn exact_source(make: impl Fn(u32) -> Float + 'static) -> impl ValueSource {
        FnSource::new("test", move |c: &PrecisionCtx| {
            Ok(Real::from_ctx(make(c.bits()), c))
        })
    }

    #[test]
    fn recognizes_one_plus_sqrt2() {
        let c = ctx(200);
        let src = exact_source(|bits| Float::with_val(bits, 2u32).sqrt() + 1u32);
        let cand = recognize_minpoly(&src, 4, None, &c).unwrap().unwrap();
        // x^2 - 2x - 1, second of two real roots
        assert_eq!(cand.poly, IntPoly::from_i64(&[-1, -2, 1]));
        assert_eq!(cand.root_index, 2);
        assert_eq!(cand.confidence, Confidence::EscalationStable);
    }

    #[test]
    fn recognizes_rational_as_degree_one() {
        let c = ctx(300);
        let src = exact_source(|bits| Float::with_val(bits, Rational::from((22u32, 7u32))));
        let cand = recognize_minpoly(&src, 4, None, &c).unwrap().unwrap();
        assert_eq!(cand.poly, IntPoly::from_i64(&[-22, 7]));
    }

    #[test]
    fn pi_is_not_recognized_at_low_degree() {
        let c = ctx(200);
        let src = exact_source(|bits| Float::with_val(bits, rug::float::Constant::Pi));
        assert!(recognize_minpoly(&src, 4, None, &c).unwrap().is_none());
    }

    #[test]
    fn literal_sources_stay_provisional_and_respect_precision() {
        let c = ctx(120);
        // sqrt(2) to ~140 digits
        let text = Float::with_val(600, 2u32)
            .sqrt()
            .to_string_radix(10, Some(140));
        let src = LiteralSource::new(text).unwrap();
        let cand = recognize_minpoly(&src, 3, None, &c).unwrap().unwrap();
        assert_eq!(cand.poly, IntPoly::from_i64(&[-2, 0, 1]));
        assert_eq!(cand.confidence, Confidence::Provisional);

        // asking for more digits than the literal has is a precondition error
        let c_big = ctx(500);
        assert!(matches!(
            recognize_minpoly(&src, 3, None, &c_big),
            Err(Error::Precision(_))
        ));
    }

    #[test]
    fn select_root_scale_invariance() {
        let c = ctx(60);
        // roots of x^2 - 2 and 7x^2 - 14 coincide; ordering must too
        let target = Real::from_ctx(Float::with_val(c.bits(), 2u32).sqrt(), &c);
        let p1 = IntPoly::from_i64(&[-2, 0, 1]);
        let p2 = IntPoly::from_i64(&[-14, 0, 7]);
        let (i1, r1, _) = select_root(&p1, &target, &c).unwrap();
        let (i2, r2, _) = select_root(&p2, &target, &c).unwrap();
        assert_eq!(i1, 2);
        assert_eq!(i1, i2);
        assert!(r1.agrees_with(&r2, c.guard));
    }

    #[test]
    fn select_root_mismatch_when_target_far() {
        let c = ctx(60);
        let target = Real::from_ctx(Float::with_val(c.bits(), 10u32), &c);
        let p = IntPoly::from_i64(&[-2, 0, 1]);
        assert!(matches!(
            select_root(&p, &target, &c),
            Err(Error::RootMismatch(_))
        ));
    }

    #[test]
    fn field_recognition_golden_ratio_combination() {
        let c = ctx(200);
        // x = 3/2 + (5/4) sqrt(5)
        let src = exact_source(|bits| {
            Float::with_val(bits, 5u32).sqrt() * Rational::from((5u32, 4u32))
                + Rational::from((3u32, 2u32))
        });
        let (el, conf) = recognize_in_field(&src, &[1, 5], 16, &c)
            .unwrap()
            .unwrap();
        assert_eq!(el.coeffs()[0], Rational::from((3u32, 2u32)));
        assert_eq!(el.coeffs()[1], Rational::from((5u32, 4u32)));
        assert_eq!(conf, Confidence::EscalationStable);
    }

    #[test]
    fn field_recognition_rejects_foreign_value() {
        let c = ctx(200);
        let src = exact_source(|bits| Float::with_val(bits, 3u32).sqrt());
        assert!(recognize_in_field(&src, &[1, 5], 16, &c).unwrap().is_none());
    }

    #[test]
    fn candidate_bases_cover_the_yi_cases() {
        // n = 13/2 must offer {1, 5, 13, 65}; n = 12 offers {1, 3, 5, 15}
        let b1 = candidate_bases(&SurdArg::new(13, 2).unwrap());
        assert!(b1.contains(&vec![1, 5, 13, 65]));
        let b2 = candidate_bases(&SurdArg::new(12, 1).unwrap());
        assert!(b2.contains(&vec![1, 3, 5, 15]));
        let b3 = candidate_bases(&SurdArg::new(19, 2).unwrap());
        assert!(b3.contains(&vec![1, 2, 5, 10]));
    }
}
