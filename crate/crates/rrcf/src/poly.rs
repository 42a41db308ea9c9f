//! Integer polynomials: evaluation, exact gcd over Q, Sturm chains, and
//! real-root isolation/refinement. Degrees in this crate stay small
//! (<= 16 plus a margin), so the rational remainder sequences are exact
//! and unoptimized.

use crate::error::{Error, Result};
use rug::{Float, Integer, Rational};
use std::fmt;

/// A polynomial with integer coefficients, stored ascending
/// (coeffs[i] is the coefficient of x^i). The zero polynomial is the
/// empty vector; otherwise the leading coefficient is nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPoly {
    coeffs: Vec<Integer>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<Integer>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: vec![] }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Integer::from(c)).collect())
    }

    /// Parse ascending coefficients from decimal strings (the catalog's
    /// reference polynomials exceed u64).
    pub fn from_coeff_strs(coeffs: &[&str]) -> Result<Self> {
        let parsed: std::result::Result<Vec<Integer>, _> =
            coeffs.iter().map(|s| s.parse::<Integer>()).collect();
        parsed
            .map(Self::new)
            .map_err(|_| Error::InvalidArgument("bad integer coefficient string".into()))
    }

    pub fn coeffs(&self) -> &[Integer] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Integer> {
        self.coeffs.last()
    }

    pub fn max_abs_coeff(&self) -> Integer {
        self.coeffs
            .iter()
            .map(|c| Integer::from(c.abs_ref()))
            .max()
            .unwrap_or_else(|| Integer::from(0))
    }

    /// gcd of all coefficients (non-negative).
    pub fn content(&self) -> Integer {
        let mut g = Integer::from(0);
        for c in &self.coeffs {
            g = g.gcd(c);
            if g == 1u32 {
                break;
            }
        }
        g
    }

    /// Content-free with positive leading coefficient.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut g = self.content();
        if *self.leading().unwrap() < 0u32 {
            g = -g;
        }
        Self {
            coeffs: self.coeffs.iter().map(|c| Integer::from(c / &g)).collect(),
        }
    }

    /// Content-free, scaled by a positive constant only (sign pattern
    /// preserved; what Sturm chains need).
    fn primitive_keep_sign(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let g = self.content();
        Self {
            coeffs: self.coeffs.iter().map(|c| Integer::from(c / &g)).collect(),
        }
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        Self::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| Integer::from(c * (i as u64 + 1)))
                .collect(),
        )
    }

    /// Horner evaluation at a Float, at the Float's own precision.
    pub fn eval_float(&self, x: &Float) -> Float {
        let prec = x.prec();
        let mut acc = Float::with_val(prec, 0u32);
        for c in self.coeffs.iter().rev() {
            acc *= x;
            acc += c;
        }
        acc
    }

    pub fn eval_rational(&self, x: &Rational) -> Rational {
        let mut acc = Rational::new();
        for c in self.coeffs.iter().rev() {
            acc *= x;
            acc += c;
        }
        acc
    }

    /// Sign of p(x) at an exact rational point: -1, 0, or 1.
    pub fn sign_at(&self, x: &Rational) -> i32 {
        let v = self.eval_rational(x);
        v.cmp0() as i32
    }

    /// Exact division over Q: returns the quotient when `divisor`
    /// divides self exactly (as rational polynomials), else None.
    pub fn exact_div(&self, divisor: &IntPoly) -> Option<Vec<Rational>> {
        let (Some(dn), Some(dd)) = (self.degree(), divisor.degree()) else {
            return None;
        };
        if dd > dn {
            return None;
        }
        let mut rem: Vec<Rational> = self.coeffs.iter().map(Rational::from).collect();
        let mut quot = vec![Rational::new(); dn - dd + 1];
        let lead = Rational::from(divisor.leading().unwrap());
        for k in (0..=dn - dd).rev() {
            let c = Rational::from(&rem[k + dd] / &lead);
            for j in 0..=dd {
                let sub = Rational::from(&c * &divisor.coeffs[j]);
                rem[k + j] -= sub;
            }
            quot[k] = c;
        }
        if rem.iter().all(|r| r.cmp0() == std::cmp::Ordering::Equal) {
            Some(quot)
        } else {
            None
        }
    }

    /// Primitive gcd over Q (positive leading coefficient).
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        let mut a: Vec<Rational> = self.coeffs.iter().map(Rational::from).collect();
        let mut b: Vec<Rational> = other.coeffs.iter().map(Rational::from).collect();
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let r = rat_rem(&a, &b);
            a = b;
            b = r;
        }
        rat_to_primitive_int(&a).primitive()
    }

    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None | Some(0) => true,
            _ => self.gcd(&self.derivative()).degree() == Some(0),
        }
    }

    /// Integer M with every real root in (-M, M):
    /// floor(max |a_i| / |a_d|) + 2 >= 1 + max |a_i| / |a_d|.
    pub fn cauchy_bound(&self) -> Integer {
        let lead = Integer::from(self.leading().expect("nonzero polynomial").abs_ref());
        let max = self.max_abs_coeff();
        max / lead + 2u32
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if *c < 0u32 { "-" } else { "+" };
            let mag = Integer::from(c.abs_ref());
            if first {
                if *c < 0u32 {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            match (i, mag == 1u32) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}*x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{mag}*x^{i}")?,
            }
        }
        Ok(())
    }
}

fn trim(v: &mut Vec<Rational>) {
    while v.last().is_some_and(|c| c.cmp0() == std::cmp::Ordering::Equal) {
        v.pop();
    }
}

/// Remainder of a / b over Q (b nonzero).
fn rat_rem(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let lead = b.last().unwrap();
    while rem.len() > db {
        let da = rem.len() - 1;
        let c = Rational::from(rem.last().unwrap() / lead);
        for j in 0..=db {
            let sub = Rational::from(&c * &b[j]);
            rem[da - db + j] -= sub;
        }
        rem.pop(); // leading term cancels exactly
        trim(&mut rem);
        if rem.is_empty() {
            break;
        }
    }
    rem
}

/// Clear denominators and remove content, keeping the sign pattern.
fn rat_to_primitive_int(v: &[Rational]) -> IntPoly {
    if v.is_empty() {
        return IntPoly::zero();
    }
    let mut lcm = Integer::from(1);
    for r in v {
        lcm = lcm.lcm(r.denom());
    }
    let ints: Vec<Integer> = v
        .iter()
        .map(|r| r.numer() * Integer::from(&lcm / r.denom()))
        .collect();
    IntPoly::new(ints).primitive_keep_sign()
}

/// An isolating interval for one real root: either an exact rational
/// root, or an open interval (lo, hi) containing exactly one root.
#[derive(Debug, Clone)]
pub struct RootInterval {
    pub lo: Rational,
    pub hi: Rational,
    pub exact: bool,
}

/// Sturm chain of the squarefree part, with positive-constant scaling.
pub struct SturmChain {
    chain: Vec<IntPoly>,
}

impl SturmChain {
    pub fn new(p: &IntPoly) -> Result<Self> {
        let Some(d) = p.degree() else {
            return Err(Error::InvalidArgument(
                "Sturm chain of the zero polynomial".into(),
            ));
        };
        // squarefree part keeps the same real roots
        let sf = if d == 0 {
            p.clone()
        } else {
            let g = p.gcd(&p.derivative());
            if g.degree() == Some(0) {
                p.clone()
            } else {
                rat_to_primitive_int(&p.exact_div(&g).expect("gcd divides"))
            }
        };
        let mut chain = vec![sf.clone()];
        if sf.degree().unwrap_or(0) >= 1 {
            chain.push(sf.derivative().primitive_keep_sign());
            loop {
                let k = chain.len();
                let a: Vec<Rational> = chain[k - 2].coeffs().iter().map(Rational::from).collect();
                let b: Vec<Rational> = chain[k - 1].coeffs().iter().map(Rational::from).collect();
                let mut r = rat_rem(&a, &b);
                trim(&mut r);
                if r.is_empty() {
                    break;
                }
                let neg: Vec<Rational> = r.iter().map(|x| -x.clone()).collect();
                chain.push(rat_to_primitive_int(&neg));
            }
        }
        Ok(Self { chain })
    }

    pub fn squarefree_part(&self) -> &IntPoly {
        &self.chain[0]
    }

    /// Sign variations at an exact rational point.
    fn variations_at(&self, x: &Rational) -> usize {
        let signs: Vec<i32> = self.chain.iter().map(|p| p.sign_at(x)).collect();
        count_variations(&signs)
    }

    fn variations_at_neg_inf(&self) -> usize {
        let signs: Vec<i32> = self
            .chain
            .iter()
            .map(|p| match p.degree() {
                None => 0,
                Some(d) => {
                    let s = p.leading().unwrap().cmp0() as i32;
                    if d % 2 == 0 {
                        s
                    } else {
                        -s
                    }
                }
            })
            .collect();
        count_variations(&signs)
    }

    fn variations_at_pos_inf(&self) -> usize {
        let signs: Vec<i32> = self
            .chain
            .iter()
            .map(|p| p.leading().map_or(0, |l| l.cmp0() as i32))
            .collect();
        count_variations(&signs)
    }

    /// Number of distinct real roots in (a, b].
    pub fn count_in(&self, a: &Rational, b: &Rational) -> usize {
        self.variations_at(a).saturating_sub(self.variations_at(b))
    }

    /// Total number of distinct real roots.
    pub fn count_real_roots(&self) -> usize {
        self.variations_at_neg_inf()
            .saturating_sub(self.variations_at_pos_inf())
    }
}

fn count_variations(signs: &[i32]) -> usize {
    let mut count = 0;
    let mut prev = 0;
    for &s in signs {
        if s != 0 {
            if prev != 0 && s != prev {
                count += 1;
            }
            prev = s;
        }
    }
    count
}

/// Isolate all real roots of p, ascending. Dyadic bisection on Sturm
/// counts; exact rational hits are reported as such.
pub fn isolate_real_roots(p: &IntPoly) -> Result<Vec<RootInterval>> {
    let chain = SturmChain::new(p)?;
    let sf = chain.squarefree_part().clone();
    if sf.degree() == Some(0) {
        return Ok(vec![]);
    }
    let bound = Rational::from(sf.cauchy_bound());
    let lo = -bound.clone();

    let mut result: Vec<RootInterval> = Vec::new();
    // stack of (lo, hi, roots in (lo, hi])
    let mut stack = vec![(lo.clone(), bound.clone(), chain.count_in(&lo, &bound))];
    while let Some((a, b, count)) = stack.pop() {
        match count {
            0 => {}
            1 => {
                // peel off an exact endpoint root
                if sf.sign_at(&b) == 0 {
                    result.push(RootInterval {
                        lo: b.clone(),
                        hi: b,
                        exact: true,
                    });
                } else {
                    result.push(RootInterval {
                        lo: a,
                        hi: b,
                        exact: false,
                    });
                }
            }
            _ => {
                let mid = Rational::from(&a + &b) / 2u32;
                let left = chain.count_in(&a, &mid);
                // push right first so the stack pops ascending
                stack.push((mid.clone(), b, count - left));
                stack.push((a, mid, left));
            }
        }
    }
    result.sort_by(|x, y| x.lo.cmp(&y.lo));
    Ok(result)
}

/// Refine an isolated root to `bits` of precision by bisection.
pub fn refine_root(p: &IntPoly, interval: &RootInterval, bits: u32) -> Float {
    let work = bits + 256;
    if interval.exact {
        return Float::with_val(work, &interval.lo);
    }
    let mut lo = Float::with_val(work, &interval.lo);
    let mut hi = Float::with_val(work, &interval.hi);
    let sign_lo = p.eval_float(&lo).cmp0().map_or(0, |o| o as i32);
    // bisect until the interval width is below the requested resolution
    let tol = {
        let scale = Float::with_val(work, hi.clone().abs().max(&Float::with_val(work, 1u32)));
        scale >> bits
    };
    loop {
        let width = Float::with_val(work, &hi - &lo);
        if width <= tol {
            break;
        }
        let mid = Float::with_val(work, &lo + &hi) / 2u32;
        let s = p.eval_float(&mid).cmp0().map_or(0, |o| o as i32);
        if s == 0 {
            return mid;
        }
        if s == sign_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Float::with_val(work, &lo + &hi) / 2u32
}
