//! Modular-layer invariants over random rational samples, and the full
//! closed-form catalog against its product oracles at 300 digits.

use rrcf::catalog;
use rrcf::invariants;
use rrcf::precision::{pow10, PrecisionCtx};
use rrcf::surd::SurdArg;
use rrcf::verify;
use rug::Float;

fn ctx(digits: u32) -> PrecisionCtx {
    PrecisionCtx::with_digits(digits).unwrap()
}

/// Seeded rational r values in (0.2, 10) with denominator 840.
fn sample_args(seed: u64, count: usize) -> Vec<SurdArg> {
    let mut out = Vec::new();
    let mut k = seed;
    while out.len() < count {
        k = k.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let num = 168 + (k >> 33) % (8400 - 168);
        let arg = SurdArg::new(num, 840).unwrap();
        if !out.contains(&arg) {
            out.push(arg);
        }
    }
    out
}

#[test]
fn lambda_of_tau_is_square_of_lambda_star_on_sample() {
    let c = ctx(100);
    let tol = pow10(c.bits(), -((c.digits - c.guard) as i64));
    for r in sample_args(99, 10) {
        let ls = invariants::lambda_star(&r, &c).unwrap();
        let lam = invariants::lambda_of_tau(&r, &c).unwrap();
        let sq = Float::with_val(c.bits(), ls.value() * ls.value());
        let diff = Float::with_val(c.bits(), lam.value() - &sq).abs();
        assert!(diff < tol, "r = {r}");
    }
}

#[test]
fn class_invariant_maps_recover_lambda_star_on_sample() {
    let c = ctx(100);
    let tol = pow10(c.bits(), -((c.digits - c.guard) as i64));
    for r in sample_args(7, 10) {
        let direct = invariants::lambda_star(&r, &c).unwrap();
        let via_g =
            invariants::lambda_star_from_g(&invariants::ramanujan_g(&r, &c).unwrap()).unwrap();
        let via_big_g =
            invariants::lambda_star_from_big_g(&invariants::ramanujan_big_g(&r, &c).unwrap())
                .unwrap();
        for (name, v) in [("g", via_g), ("G", via_big_g)] {
            let diff = Float::with_val(c.bits(), direct.value() - v.value()).abs();
            assert!(diff < tol, "{name}-map at r = {r}");
        }
    }
}

#[test]
fn quadruplication_identity_on_sample() {
    let c = ctx(100);
    let tol = pow10(c.bits(), -((c.digits - c.guard) as i64));
    for r in sample_args(3, 10) {
        let g = invariants::ramanujan_g(&r, &c).unwrap();
        let big_g = invariants::ramanujan_big_g(&r, &c).unwrap();
        let lhs = invariants::g_of_4n(&g, &big_g);
        let rhs = invariants::ramanujan_g(&r.scaled(4, 1).unwrap(), &c).unwrap();
        let diff = Float::with_val(c.bits(), lhs.value() - rhs.value()).abs();
        assert!(diff < tol, "g_4n at n = {r}");
    }
}

#[test]
fn every_catalog_entry_matches_its_oracle_at_300_digits() {
    let c = ctx(300);
    for entry in catalog::builtin().entries {
        assert!(
            entry.matches_oracle(&c).unwrap(),
            "{}: residual {}",
            entry.name,
            entry.residual(&c).unwrap().to_f64()
        );
    }
}

#[test]
fn chain_alpha_is_root_of_its_reference_polynomial() {
    // the G_15 -> G_60 -> G_240 chain produces an alpha annihilated by
    // the degree-16 reference polynomial
    let c = ctx(200);
    let alpha = verify::chain_alpha_240(&c).unwrap();
    let p = catalog::minpoly_alpha_240();
    let v = p.eval_float(&alpha).abs();
    let scale = Float::with_val(c.bits(), p.max_abs_coeff());
    let tol = pow10(c.bits(), -((c.digits - c.guard) as i64)) * scale;
    assert!(v < tol, "residual {}", v.to_f64());
}

#[test]
fn catalog_survives_json_round_trip_with_numeric_match() {
    let c = ctx(80);
    let json = catalog::builtin().to_json();
    let back = catalog::Catalog::from_json(&json).unwrap();
    let entry = back.get("g_130").unwrap();
    assert!(entry.matches_oracle(&c).unwrap());
}

#[test]
fn klein_j_matches_icosahedral_right_side_at_13_10() {
    // 1728 J(i sqrt(13/10)) = -(r^20 - 228 r^15 + 494 r^10 + 228 r^5 + 1)^3
    //                          / (r^5 (r^10 + 11 r^5 - 1)^5)
    // with r = R(e^(-pi sqrt(26/5)))
    use rrcf::qseries::{self, QPoint};
    use rug::ops::Pow;
    let c = ctx(150);
    let prec = c.bits();
    let j = invariants::klein_j(&SurdArg::new(13, 10).unwrap(), &c).unwrap();
    let lhs = Float::with_val(prec, j.value() * 1728u32);

    let r = qseries::eval_r_product(&QPoint::Surd(SurdArg::new(26, 5).unwrap()), &c)
        .unwrap()
        .into_value();
    let r5 = Float::with_val(prec, r.pow(5u32));
    let r10 = Float::with_val(prec, &r5 * &r5);
    let r15 = Float::with_val(prec, &r10 * &r5);
    let r20 = Float::with_val(prec, &r10 * &r10);
    let p20 = Float::with_val(prec, &r20 - Float::with_val(prec, &r15 * 228u32))
        + Float::with_val(prec, &r10 * 494u32)
        + Float::with_val(prec, &r5 * 228u32)
        + 1u32;
    let p10 = Float::with_val(prec, &r10 + Float::with_val(prec, &r5 * 11u32)) - 1u32;
    let rhs = -(Float::with_val(prec, p20.pow(3u32))
        / (r5 * Float::with_val(prec, p10.pow(5u32))));

    let tol = pow10(prec, -((c.digits - c.guard) as i64)) * lhs.clone().abs();
    let diff = Float::with_val(prec, lhs - rhs).abs();
    assert!(diff < tol, "diff {}", diff.to_f64());
}

#[test]
fn designated_root_of_26_5_polynomial_round_trips_through_g() {
    // G_{26/5} = 2^(-1/12) (L^2 - L^4)^(-1/24) inverts back through the
    // lambda*-from-G map, and L matches the theta evaluation
    use rrcf::{catalog, Real};
    let c = ctx(150);
    let l = verify::designated_root(
        &catalog::minpoly_lambda_star_26_5(),
        catalog::ROOT_INDEX_26_5,
        &c,
    )
    .unwrap();
    let g = verify::big_g_from_lambda_star(&l).unwrap();
    let back = invariants::lambda_star_from_big_g(&Real::new(g, c.digits)).unwrap();
    let tol = pow10(c.bits(), -((c.digits - c.guard) as i64));
    assert!(Float::with_val(c.bits(), &l - back.value()).abs() < tol);

    let direct = invariants::lambda_star(&SurdArg::new(26, 5).unwrap(), &c).unwrap();
    assert!(Float::with_val(c.bits(), &l - direct.value()).abs() < tol);
}

#[test]
fn closed_form_g_values_give_lambda_star_at_130_and_190() {
    use rrcf::{catalog, Real};
    let c = ctx(120);
    let tol = pow10(c.bits(), -((c.digits - c.guard) as i64));
    let cat = catalog::builtin();
    for (name, num) in [("g_130", 130u64), ("g_190", 190)] {
        let g = cat.get(name).unwrap().expression.eval(c.bits()).unwrap();
        let via_closed =
            invariants::lambda_star_from_g(&Real::new(g, c.digits)).unwrap();
        let direct = invariants::lambda_star(&SurdArg::new(num, 1).unwrap(), &c).unwrap();
        let diff = Float::with_val(c.bits(), via_closed.value() - direct.value()).abs();
        assert!(diff < tol, "{name}: diff {}", diff.to_f64());
    }
}
