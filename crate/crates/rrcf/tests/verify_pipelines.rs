//! Pipeline-level properties: determinism of the reproduction bundles,
//! verdict flips under perturbation, and the parallel runner.

use rrcf::precision::PrecisionCtx;
use rrcf::qseries::QPoint;
use rrcf::surd::SurdArg;
use rrcf::verify::{self, TheoremId, Verdict};
use rug::Float;

fn ctx(digits: u32) -> PrecisionCtx {
    PrecisionCtx::with_digits(digits).unwrap()
}

/// Bundle content with the timing stripped, for determinism comparison.
fn fingerprint(bundle: &verify::CertificateBundle) -> String {
    bundle
        .stages
        .iter()
        .map(|c| {
            format!(
                "{}|{}|{}|{}|{}",
                c.claim_id, c.digits_lo, c.digits_hi, c.residual_lo, c.residual_hi
            )
        })
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn reproduction_is_deterministic_given_digits_and_guard() {
    let c = ctx(120);
    let a = verify::reproduce_theorem(TheoremId::Thm2_26_5, &c).unwrap();
    let b = verify::reproduce_theorem(TheoremId::Thm2_26_5, &c).unwrap();
    assert_eq!(fingerprint(&a), fingerprint(&b));
    assert_eq!(a.verdict, b.verdict);
}

#[test]
fn parallel_runner_matches_serial() {
    let c = ctx(100);
    let serial = verify::reproduce_all(&c, 1).unwrap();
    let parallel = verify::reproduce_all(&c, 4).unwrap();
    assert_eq!(serial.len(), 5);
    for (s, p) in serial.iter().zip(&parallel) {
        assert_eq!(s.id, p.id);
        assert_eq!(fingerprint(s), fingerprint(p));
    }
}

#[test]
fn lemma1_bundle_certifies() {
    let c = ctx(150);
    let bundle = verify::reproduce_theorem(TheoremId::Lemma1, &c).unwrap();
    assert_eq!(bundle.verdict, Verdict::Certified, "{:?}", bundle.failing_stage());
    assert!(bundle.stages.iter().any(|s| s.claim_id == "lemma1/chain"));
    assert!(bundle
        .stages
        .iter()
        .any(|s| s.claim_id == "lemma1/alpha_minpoly"));
}

#[test]
fn certified_quantity_perturbed_by_precision_tenth_is_not_certified() {
    // multiplying a certified quantity by (1 + 10^(-digits/10)) must move
    // the verdict away from certified
    let c = ctx(100);
    let r_arg = SurdArg::new(26, 5).unwrap();
    let quarter = SurdArg::new(13, 10).unwrap();
    let eps = -((c.digits / 10) as i64);
    let r_fn = move |cc: &PrecisionCtx| -> rrcf::Result<Float> {
        let r = rrcf::qseries::eval_r_product(&QPoint::Surd(r_arg), cc)?;
        let bump = rrcf::precision::pow10(cc.bits(), eps) + 1u32;
        Ok(r.into_value() * bump)
    };
    let lam_fn = move |cc: &PrecisionCtx| -> rrcf::Result<Float> {
        Ok(rrcf::invariants::lambda_of_tau(&quarter, cc)?.into_value())
    };
    let cert = verify::check_icosahedral("perturbed-by-eps", &r_fn, &lam_fn, &c).unwrap();
    assert_ne!(cert.verdict, Verdict::Certified);
}

#[test]
fn bundle_json_is_parseable_and_stable() {
    let c = ctx(100);
    let bundle = verify::reproduce_theorem(TheoremId::Conj16_15, &c).unwrap();
    let json = serde_json::to_string(&bundle).unwrap();
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["id"], "conj_16_15");
    assert_eq!(v["verdict"], "numerically-supported");
}
