use std::sync::Arc;

use ifnorm::continuity::{check_witness, continuity_witness_search, MapBetweenSpaces, MapRule, Region, Verdict};
use ifnorm::function_sequences::{
    closed_form_index_power, pointwise_limit_estimate, sup_deviation_oracle, uniform_index_search, FunctionFamily,
    FunctionSequence,
};
use ifnorm::norm_algebra::{check_norm_axioms, UnitGrid};
use ifnorm::point_convergence::{convergence_index, PointSequence, SequenceRule};
use ifnorm::space::standard_pair;
use ifnorm::topology::{ball_classical_radius, ball_contains, OpenBall};
use ifnorm::{make_standard_space, ClassicalNorm, IfnSpace, SamplingPlan, TConorm, TNorm, Vector};
use proptest::prelude::*;

fn tnorms() -> impl Strategy<Value = TNorm> {
    prop_oneof![Just(TNorm::Minimum), Just(TNorm::Product), Just(TNorm::Lukasiewicz)]
}

fn tconorms() -> impl Strategy<Value = TConorm> {
    prop_oneof![
        Just(TConorm::Maximum),
        Just(TConorm::ProbabilisticSum),
        Just(TConorm::Lukasiewicz)
    ]
}

fn std1(k: f64) -> Arc<IfnSpace> {
    Arc::new(make_standard_space(k, ClassicalNorm::Absolute, 1, TNorm::Minimum, TConorm::Maximum).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn builtin_ops_satisfy_norm_axioms(tn in tnorms(), tc in tconorms(), seed in any::<u64>()) {
        let grid = UnitGrid::uniform(6).with_random(6, seed);
        let rep = check_norm_axioms(&tn, &grid, false);
        prop_assert!(rep.is_clean(), "{rep}");
        let rep = check_norm_axioms(&tc, &grid, false);
        prop_assert!(rep.is_clean(), "{rep}");
    }

    #[test]
    fn tnorm_below_min_conorm_above_max(tn in tnorms(), tc in tconorms(), a in 0.0..=1.0f64, b in 0.0..=1.0f64) {
        prop_assert!(tn.eval(a, b) <= a.min(b));
        prop_assert!(tc.eval(a, b) >= a.max(b));
    }

    #[test]
    fn standard_pair_is_complementary(k in 0.01..100.0f64, n in 0.0..1e6f64, t in 1e-6..1e6f64, dt in 0.0..10.0f64) {
        let (mu, nu) = standard_pair(k, n, t);
        prop_assert_eq!(mu + nu, 1.0);
        prop_assert!((0.0..=1.0).contains(&mu));
        prop_assert!(standard_pair(k, n, t + dt).0 >= mu);
    }

    #[test]
    fn convergence_index_monotone_in_r_and_t(
        r1 in 0.01..0.99f64, r2 in 0.01..0.99f64, t1 in 0.01..10.0f64, t2 in 0.01..10.0f64,
    ) {
        let s = std1(1.0);
        let seq = PointSequence::new(SequenceRule::reciprocal(0.0, 1.0, 1.0)).with_budget(20_000);
        let lim = Vector::scalar(0.0);
        let (rl, rh) = (r1.min(r2), r1.max(r2));
        let (tl, th) = (t1.min(t2), t1.max(t2));
        let n = |r, t| convergence_index(&s, &seq, &lim, r, t).unwrap().n0.unwrap_or(usize::MAX);
        prop_assert!(n(rh, tl) <= n(rl, tl));
        prop_assert!(n(rl, th) <= n(rl, tl));
    }

    #[test]
    fn ball_matches_classical_radius(
        k in 0.1..10.0f64, r in 0.01..0.99f64, t in 0.01..10.0f64, c in -5.0..5.0f64, y in -5.0..5.0f64,
    ) {
        let s = std1(k);
        let ball = OpenBall::new(c.into(), r, t).unwrap();
        let rho = ball_classical_radius(&s, &ball).unwrap();
        let d = (c - y).abs();
        // Rounding decides points within a hair of the boundary.
        prop_assume!((d - rho).abs() > 1e-9 * rho.max(1.0));
        prop_assert_eq!(ball_contains(&s, &ball, &y.into()).unwrap(), d < rho);
    }

    #[test]
    fn affine_witness_survives_refinement(
        a in -5.0..5.0f64, b in -5.0..5.0f64, x0 in -3.0..3.0f64, eps in 0.05..2.0f64, alpha in 0.05..0.95f64,
    ) {
        let s = std1(1.0);
        let f = MapBetweenSpaces::new(s.clone(), s, MapRule::Affine { a, b }, Region::Whole).unwrap();
        let plan = SamplingPlan::light();
        let w = continuity_witness_search(&f, &x0.into(), eps, alpha, &plan).unwrap();
        prop_assert_eq!(w.verdict, Verdict::Witnessed);
        let (d, be) = (w.delta.unwrap(), w.beta.unwrap());
        for scale in [1.0, 0.5, 0.25] {
            let (cx, _) = check_witness(&f, &x0.into(), eps, alpha, d * scale, be * scale, &plan).unwrap();
            prop_assert!(cx.is_none());
        }
    }

    #[test]
    fn closed_form_index_dominates(a in 0.05..0.95f64, r in 0.05..0.95f64, t in 0.05..5.0f64, frac in 0.0..1.0f64) {
        let k = closed_form_index_power(a, r, t).unwrap();
        let seq = FunctionSequence::new(FunctionFamily::Power, Region::closed(0.0, a), std1(1.0), std1(1.0)).unwrap();
        let at = |x: f64| pointwise_limit_estimate(&seq, &x.into(), r, t).unwrap().certificate.n0.unwrap();
        prop_assert!(k >= at(a * frac));
        let exact = at(a);
        prop_assert!(k.abs_diff(exact) <= 1);
        // Away from a tie cⁿ = rt/(1 − r) the two agree exactly.
        let ratio = ((1.0 - r) / (r * t)).ln() / (1.0 / a).ln();
        if (ratio - ratio.round()).abs() > 1e-9 {
            prop_assert_eq!(k, exact);
        }
    }

    #[test]
    fn uniform_index_dominates_pointwise(a in 0.05..0.9f64, r in 0.05..0.95f64, t in 0.05..5.0f64) {
        let seq = FunctionSequence::new(FunctionFamily::Power, Region::closed(0.0, a), std1(1.0), std1(1.0)).unwrap();
        let sample: Vec<Vector> = (0..=10).map(|i| Vector::scalar((a * i as f64 / 10.0).min(a))).collect();
        let cert = uniform_index_search(&seq, &MapRule::Constant(0.0), &sample, r, t).unwrap();
        prop_assert!(cert.is_uniform());
        let n0 = cert.n0.unwrap();
        for p in &cert.per_point {
            prop_assert!(p.n0.unwrap() <= n0);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn sup_deviation_below_tight_bound(a in 0.01..0.99f64, m in 1u32..20, gap in 0u32..20) {
        let s = sup_deviation_oracle(a, m, m + gap).unwrap();
        prop_assert!(s.sup <= s.tight_bound);
        prop_assert!(s.sup < s.doubled_bound);
    }
}
