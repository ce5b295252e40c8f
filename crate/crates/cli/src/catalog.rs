//! Built-in scenarios. Each reproduces one worked example or theorem and
//! tags every record with a descriptive anchor.

use std::sync::Arc;

use ifnorm::continuity::{combine, uniform_continuity_search, Combinator, MapBetweenSpaces, MapRule, Region, Verdict};
use ifnorm::function_sequences::{
    classical_uniform_probe, closed_form_index_power, default_domain_sample, doubled_bound_index_power,
    sequence_catalog, sup_deviation_oracle, uniform_cauchy_check, uniform_index_search, uniform_limit_scenario,
    FunctionFamily, FunctionSequence, UniformVerdict,
};
use ifnorm::mutants::axiom_mutants;
use ifnorm::point_convergence::{
    cauchy_index, classical_equivalence_probe, convergence_index, CertificateStatus, PointSequence, SequenceRule,
    PROBE_PAIRS,
};
use ifnorm::space::check_ifn_axioms;
use ifnorm::topology::{set_is_open_sampled, OpenBall, SampledSet};
use ifnorm::{make_example_family, make_standard_space, AxiomTier, ClassicalNorm, IfnSpace, SamplingPlan, TConorm, TNorm, Vector};

use crate::report::{pass_if, Outcome, Record, SweepRow, Value};
use crate::runner::{
    cauchy_image_record, continuity_record, guarded, inner_balls, ladder_fields, power_closed_form, preimage_record,
    uniform_outcome, vector_value,
};

pub struct Scenario {
    pub name: &'static str,
    pub summary: &'static str,
    pub run: fn(u64) -> Vec<Record>,
}

pub const SCENARIOS: &[Scenario] = &[
    Scenario {
        name: "standard-construction",
        summary: "t/(t + k|x|) is an intuitionistic fuzzy norm for several k and dimensions",
        run: standard_construction,
    },
    Scenario {
        name: "axiom-mutations",
        summary: "six broken spaces, each caught at the axiom it breaks",
        run: axiom_mutations,
    },
    Scenario {
        name: "reciprocal-sequence",
        summary: "convergence and Cauchy indices of 1/(n+1)",
        run: reciprocal_sequence,
    },
    Scenario {
        name: "reciprocal-map",
        summary: "1/x on (0, 1) is continuous but not uniformly continuous",
        run: reciprocal_map,
    },
    Scenario {
        name: "continuity-algebra",
        summary: "sums, multiples, products and quotients of continuous maps",
        run: continuity_algebra,
    },
    Scenario {
        name: "step-map",
        summary: "a jump is refuted at the jump and witnessed elsewhere",
        run: step_map,
    },
    Scenario {
        name: "open-balls",
        summary: "inner-ball containment for twenty balls across four spaces",
        run: open_balls,
    },
    Scenario {
        name: "open-sets",
        summary: "openness of intervals and of preimages",
        run: open_sets,
    },
    Scenario {
        name: "power-sequence",
        summary: "x^n is uniformly convergent on [0, 0.5] and only pointwise on (0, 1)",
        run: power_sequence,
    },
    Scenario {
        name: "power-index-sweep",
        summary: "uniform index of x^n on [0, 0.5] over a grid of r and t",
        run: power_index_sweep,
    },
    Scenario {
        name: "quotient-sequence",
        summary: "n/(x + n) converges uniformly to 1 on [0, 10]",
        run: quotient_sequence,
    },
    Scenario {
        name: "cauchy-criterion",
        summary: "uniform Cauchy criterion against the uniform index on six sequences",
        run: cauchy_criterion,
    },
    Scenario {
        name: "uniform-limit",
        summary: "continuity of uniform limits, and a continuous non-uniform limit",
        run: uniform_limit,
    },
    Scenario {
        name: "sup-deviation",
        summary: "sup of x^m - x^n on [0, a] against the bounds a^m and 2a^m",
        run: sup_deviation,
    },
];

pub fn find(name: &str) -> Option<&'static Scenario> {
    SCENARIOS.iter().find(|s| s.name == name)
}

fn plan(seed: u64) -> SamplingPlan {
    SamplingPlan::default().with_seed(seed)
}

fn std_space(k: f64, norm: ClassicalNorm, dim: usize, tn: TNorm, tc: TConorm) -> Arc<IfnSpace> {
    Arc::new(make_standard_space(k, norm, dim, tn, tc).expect("built-in space"))
}

fn line(k: f64) -> Arc<IfnSpace> {
    std_space(k, ClassicalNorm::Absolute, 1, TNorm::Minimum, TConorm::Maximum)
}

fn points(xs: &[f64]) -> Vec<Vector> {
    xs.iter().map(|&x| Vector::scalar(x)).collect()
}

fn standard_construction(seed: u64) -> Vec<Record> {
    let plan = plan(seed);
    let mut out = Vec::new();
    for k in [0.5, 1.0, 2.0] {
        for d in [1, 3] {
            let norm = if d == 1 { ClassicalNorm::Absolute } else { ClassicalNorm::Euclidean };
            out.push(guarded(
                format!("strict-tier axioms, k={k}, d={d}"),
                "the standard construction from a classical norm with minimum and maximum",
                seed,
                plan.describe(d),
                |rec| {
                    let s = make_standard_space(k, norm, d, TNorm::Minimum, TConorm::Maximum)?;
                    let rep = check_ifn_axioms(&s, AxiomTier::Strict, &plan);
                    let mut rec = rec
                        .field("space", s.describe())
                        .field("instances", rep.outcomes.iter().map(|o| o.instances).sum::<usize>())
                        .field("violations", rep.total_failures());
                    rec.outcome = pass_if(rep.is_clean());
                    Ok(rec)
                },
            ));
        }
    }
    out.push(guarded(
        "core-tier axioms with product and probabilistic sum, k=1, d=2",
        "the standard construction with non-idempotent operations",
        seed,
        plan.describe(2),
        |rec| {
            let s = make_standard_space(1.0, ClassicalNorm::MaxCoordinate, 2, TNorm::Product, TConorm::ProbabilisticSum)?;
            let rep = check_ifn_axioms(&s, AxiomTier::Core, &plan);
            let mut rec = rec.field("space", s.describe()).field("violations", rep.total_failures());
            rec.outcome = pass_if(rep.is_clean());
            Ok(rec)
        },
    ));
    out
}

fn axiom_mutations(seed: u64) -> Vec<Record> {
    let plan = plan(seed);
    let mutants = match axiom_mutants() {
        Ok(m) => m,
        Err(e) => {
            return vec![Record::new("mutant construction", "axiom mutations", Outcome::Fail, seed, "").field("error", e.to_string())];
        }
    };
    mutants
        .into_iter()
        .map(|m| {
            let rep = check_ifn_axioms(&m.space, AxiomTier::Strict, &plan);
            let failed: Vec<String> = rep.failed_axioms().iter().map(|a| a.to_string()).collect();
            let named = rep
                .outcome(m.target)
                .is_some_and(|o| !o.witnesses.is_empty() && o.witnesses.iter().all(|w| w.axiom == m.target));
            let first = rep
                .outcome(m.target)
                .and_then(|o| o.witnesses.first())
                .map(|w| format!("{} at {}: {} vs {}", w.axiom, w.witness, w.lhs, w.rhs));
            Record::new(
                format!("mutant breaking {}: {}", m.target, m.description),
                "each axiom is independent of the others on the sample",
                pass_if(named),
                seed,
                rep.plan.clone(),
            )
            .field("target", m.target.to_string())
            .field("failed_axioms", failed)
            .field("witness", first)
        })
        .collect()
}

fn reciprocal_sequence(seed: u64) -> Vec<Record> {
    let s = line(1.0);
    let seq = PointSequence::new(SequenceRule::reciprocal(0.0, 1.0, 1.0));
    let zero = Vector::scalar(0.0);
    let mut out = Vec::new();
    for (r, t, want) in [(0.1, 0.1, 90), (0.5, 1.0, 1)] {
        out.push(guarded(
            format!("convergence index of 1/(n+1) at r={r}, t={t}"),
            "convergence index of 1/(n+1) in the standard space",
            seed,
            format!("indices 1..={}", seq.budget),
            |rec| {
                let c = convergence_index(&s, &seq, &zero, r, t)?;
                let mut rec = rec.field("n0", c.n0).field("expected_n0", want).field("status", c.status.name());
                rec.outcome = pass_if(c.is_certified() && c.n0 == Some(want));
                Ok(rec)
            },
        ));
    }
    out.push(guarded(
        "Cauchy index of 1/(n+1) at r=0.1, t=0.1, p <= 50",
        "convergent sequences are Cauchy",
        seed,
        "indices 1..=5000, p <= 50",
        |rec| {
            let c = cauchy_index(&s, &seq.clone().with_budget(5_000), 0.1, 0.1, 50)?;
            let mut rec = rec
                .field("n0", c.n0)
                .field("status", c.status.name())
                .field("margin_monotone", c.margin_monotone);
            rec.outcome = pass_if(c.is_certified());
            Ok(rec)
        },
    ));
    out.push(guarded(
        "fuzzy against classical convergence of 1/(n+1)",
        "convergence in the standard space is norm convergence",
        seed,
        format!("indices 1..={}, probes {:?}", seq.budget, PROBE_PAIRS),
        |rec| {
            let c = classical_equivalence_probe(&s, &seq, None)?;
            let mut rec = rec
                .field("classical_converges", c.classical_converges)
                .field("fuzzy_converges", c.ifn_converges)
                .field("tail_sup", c.tail_sup);
            rec.outcome = pass_if(c.agree() && c.ifn_converges);
            Ok(rec)
        },
    ));
    out
}

pub fn reciprocal_map_fn() -> ifnorm::Result<MapBetweenSpaces> {
    MapBetweenSpaces::new(
        Arc::new(make_example_family("reciprocal-domain")?),
        Arc::new(make_example_family("reciprocal-codomain:3")?),
        MapRule::Reciprocal,
        Region::open(0.0, 1.0),
    )
}

fn reciprocal_map(seed: u64) -> Vec<Record> {
    let plan = plan(seed);
    let f = match reciprocal_map_fn() {
        Ok(f) => f,
        Err(e) => return vec![Record::new("reciprocal map", "1/x on (0, 1)", Outcome::Fail, seed, "").field("error", e.to_string())],
    };
    let mut out: Vec<Record> = [0.1, 0.25, 0.5, 0.9]
        .iter()
        .map(|&x| continuity_record(&f, &Vector::scalar(x), 1.0, 0.5, Some("witnessed"), &plan, seed, "1/x on (0, 1):"))
        .collect();
    out.push(guarded(
        "1/x on (0, 1): uniform continuity at epsilon=1, alpha=0.5",
        "1/x on (0, 1) is not uniformly continuous",
        seed,
        plan.describe(1),
        |rec| {
            let w = uniform_continuity_search(&f, 1.0, 0.5, &plan)?;
            let mut rec = rec.field("verdict", w.verdict.name()).field("pairs", w.pairs);
            rec.outcome = pass_if(w.verdict == Verdict::Refuted);
            Ok(rec)
        },
    ));
    let seq = PointSequence::new(SequenceRule::reciprocal(0.0, 1.0, 1.0)).with_budget(2_000);
    let mut rec = cauchy_image_record(&f, &seq, 0.5, 1.0, 10, 3, Some("refuted"), seed, "1/x on (0, 1):");
    if let Some(Value::Real(g)) = rec.get("growth").cloned() {
        if g < 2.0 {
            rec.outcome = Outcome::Fail;
        }
    }
    out.push(rec);
    out
}

fn continuity_algebra(seed: u64) -> Vec<Record> {
    let plan = plan(seed);
    let s = line(1.0);
    let region = Region::closed(0.1, 0.9);
    let xs: Vec<Vector> = (1..=9).map(|i| Vector::scalar(i as f64 / 10.0)).collect();
    let pairs = [
        (MapRule::Power(2), MapRule::Affine { a: 1.0, b: 1.0 }),
        (MapRule::Reciprocal, MapRule::ShiftedRatio(1.0)),
        (MapRule::Identity, MapRule::Affine { a: -1.0, b: 2.0 }),
    ];
    let ops = [
        ("f + g", Combinator::Sum),
        ("3f", Combinator::Scalar(3.0)),
        ("fg", Combinator::Product),
        ("f/g", Combinator::Quotient),
    ];
    let mut out = Vec::new();
    for (fr, gr) in pairs {
        for (label, op) in ops {
            out.push(guarded(
                format!("{label} for f = {}, g = {} on [0.1, 0.9]", fr.describe(), gr.describe()),
                "sums, scalar multiples, products and quotients of continuous maps are continuous",
                seed,
                format!("{}; 9 points of [0.1, 0.9]", plan.describe(1)),
                |rec| {
                    let f = MapBetweenSpaces::new(s.clone(), s.clone(), fr.clone(), region.clone())?;
                    let g = MapBetweenSpaces::new(s.clone(), s.clone(), gr.clone(), region.clone())?;
                    let h = combine(op, &f, Some(&g))?;
                    let mut witnessed = 0;
                    let mut failing = Vec::new();
                    for x0 in &xs {
                        let w = ifnorm::continuity::continuity_witness_search(&h, x0, 0.5, 0.5, &plan)?;
                        if w.verdict == Verdict::Witnessed {
                            witnessed += 1;
                        } else {
                            failing.push(vector_value(x0));
                        }
                    }
                    let mut rec = rec
                        .field("map", h.describe())
                        .field("points", xs.len())
                        .field("witnessed", witnessed)
                        .field("failing_points", Value::List(failing));
                    rec.outcome = pass_if(witnessed == xs.len());
                    Ok(rec)
                },
            ));
        }
    }
    out
}

fn step_map(seed: u64) -> Vec<Record> {
    let plan = plan(seed);
    let s = line(1.0);
    let step = match MapBetweenSpaces::new(s.clone(), s, MapRule::Step { threshold: 0.0 }, Region::Whole) {
        Ok(f) => f,
        Err(e) => return vec![Record::new("step map", "a jump", Outcome::Fail, seed, "").field("error", e.to_string())],
    };
    let mut out = vec![
        continuity_record(&step, &Vector::scalar(0.0), 0.5, 0.4, Some("refuted"), &plan, seed, "step at its jump:"),
        continuity_record(&step, &Vector::scalar(0.5), 0.5, 0.4, Some("witnessed"), &plan, seed, "step away from its jump:"),
    ];
    out.push(guarded(
        "step along -1/(n+1) at its jump",
        "sequential continuity fails where continuity fails",
        seed,
        "indices 1..=10000",
        |rec| {
            let left = PointSequence::new(SequenceRule::reciprocal(0.0, -1.0, 1.0)).with_budget(10_000);
            let rep = ifnorm::continuity::sequential_continuity_check(&step, &Vector::scalar(0.0), &[left], &PROBE_PAIRS)?;
            let mut rec = rec.field("status", rep.status().name());
            rec.outcome = pass_if(rep.status() == CertificateStatus::Failed);
            Ok(rec)
        },
    ));
    out.push(guarded(
        "preimage of B(1, 0.1, 0.1) under the step",
        "preimages of open sets detect the discontinuity",
        seed,
        plan.describe(1),
        |rec| {
            let target = OpenBall::new(Vector::scalar(1.0), 0.1, 0.1)?;
            let rec = preimage_record(rec, &step, &target, &plan, Some("fail"))?;
            let only_zero = rec.get("failing_points") == Some(&Value::List(vec![Value::Real(0.0)]));
            let mut rec = rec;
            if !only_zero {
                rec.outcome = Outcome::Fail;
            }
            Ok(rec)
        },
    ));
    out
}

/// Twenty balls spread over four spaces with different operations.
pub fn catalog_balls() -> Vec<(Arc<IfnSpace>, OpenBall)> {
    let spaces = [
        line(1.0),
        std_space(2.0, ClassicalNorm::Absolute, 1, TNorm::Product, TConorm::ProbabilisticSum),
        std_space(0.5, ClassicalNorm::Euclidean, 2, TNorm::Minimum, TConorm::Maximum),
        std_space(1.0, ClassicalNorm::MaxCoordinate, 2, TNorm::Lukasiewicz, TConorm::Lukasiewicz),
    ];
    let rt = [(0.1, 0.1), (0.3, 0.5), (0.5, 1.0), (0.7, 2.0), (0.9, 10.0)];
    let mut out = Vec::new();
    for (si, s) in spaces.iter().enumerate() {
        for (bi, &(r, t)) in rt.iter().enumerate() {
            let c = bi as f64 - 2.0;
            let center = if s.dim() == 1 { Vector::scalar(c) } else { Vector::new([c, 0.5 * si as f64]) };
            out.push((s.clone(), OpenBall::new(center, r, t).expect("valid ball")));
        }
    }
    out
}

fn open_balls(seed: u64) -> Vec<Record> {
    catalog_balls()
        .into_iter()
        .map(|(s, ball)| {
            guarded(
                format!("inner balls of {ball} in {}", s.describe()),
                "every point of an open ball has a smaller ball inside it",
                seed,
                format!("50 members, {} verified points each", ifnorm::topology::INNER_VERIFY_POINTS),
                |rec| inner_balls(rec, &s, &ball, 50, seed, None),
            )
        })
        .collect()
}

fn open_sets(seed: u64) -> Vec<Record> {
    let plan = plan(seed);
    let s = line(1.0);
    let mut out = Vec::new();
    // (label, set, sample points, expected open, expected failing points)
    type Case = (&'static str, Region, Vec<f64>, bool, Vec<f64>);
    let cases: [Case; 3] = [
        ("open unit interval", Region::open(-1.0, 1.0), vec![-0.9, -0.5, 0.0, 0.3, 0.99], true, vec![]),
        ("closed interval [0, 1]", Region::closed(0.0, 1.0), vec![0.0, 0.5, 1.0], false, vec![0.0, 1.0]),
        ("the whole line", Region::Whole, vec![-3.0, 3.0], true, vec![]),
    ];
    for (label, region, members, open, failing) in cases {
        out.push(guarded(
            format!("openness of the {label}"),
            "open sets of the topology induced by the norm",
            seed,
            format!("ladder balls, {} sampled points per ball", ifnorm::topology::FIT_SAMPLES),
            |rec| {
                let name = region.describe();
                let reg = region.clone();
                let set = SampledSet::new(name, move |y| reg.contains(y), points(&members))?;
                let rep = set_is_open_sampled(&s, &set, &plan, None)?;
                let got: Vec<f64> = rep.failing().map(|p| p.x.first()).collect();
                let mut rec = rec
                    .field("open", rep.open())
                    .field("failing_points", got.clone())
                    .field("expected_failing", failing.clone());
                rec.outcome = pass_if(rep.open() == open && got == failing);
                Ok(rec)
            },
        ));
    }
    out.push(guarded(
        "preimage of B(0, 0.5, 1) under 2x",
        "preimages of open sets under continuous maps are open",
        seed,
        plan.describe(1),
        |rec| {
            let f = MapBetweenSpaces::new(s.clone(), s.clone(), MapRule::Affine { a: 2.0, b: 0.0 }, Region::Whole)?;
            let target = OpenBall::new(Vector::scalar(0.0), 0.5, 1.0)?;
            preimage_record(rec, &f, &target, &plan, Some("pass"))
        },
    ));
    out
}

fn power_seq(domain: Region) -> ifnorm::Result<FunctionSequence> {
    FunctionSequence::new(FunctionFamily::Power, domain, line(1.0), line(1.0))
}

/// Checks the ladder toward 1 of x^n on (0, 1): strictly increasing indices
/// that at least double from the fourth to the seventh point.
pub fn ladder_growth(indices: &[Option<usize>]) -> (bool, bool) {
    let idx: Option<Vec<usize>> = indices.iter().copied().collect();
    match idx {
        Some(v) if v.len() >= 7 => (v.windows(2).all(|w| w[1] > w[0]), v[6] >= 2 * v[3]),
        _ => (false, false),
    }
}

fn power_sequence(seed: u64) -> Vec<Record> {
    let zero = MapRule::Constant(0.0);
    let mut out = Vec::new();
    out.push(guarded(
        "uniform index of x^n on [0, 0.5] at r=0.1, t=0.1",
        "x^n converges uniformly on [0, a] for a < 1",
        seed,
        "11 sample points plus refinement ladders, indices 1..=10000",
        |rec| {
            let seq = power_seq(Region::closed(0.0, 0.5))?;
            let cert = uniform_index_search(&seq, &zero, &default_domain_sample(&seq), 0.1, 0.1)?;
            let k = closed_form_index_power(0.5, 0.1, 0.1)?;
            let doubled = doubled_bound_index_power(0.5, 0.1, 0.1)?;
            let mut rec = rec
                .field("n0", cert.n0)
                .field("verdict", cert.verdict.name())
                .field("closed_form_k", k)
                .field("doubled_bound_k", doubled)
                .field("per_point_x", cert.per_point.iter().map(|p| p.x).collect::<Vec<_>>())
                .field("per_point_n0", cert.per_point.iter().map(|p| p.n0).collect::<Vec<_>>());
            rec.outcome = pass_if(cert.is_uniform() && cert.n0 == Some(7) && k == 7);
            Ok(rec)
        },
    ));
    out.push(guarded(
        "pointwise indices of x^n on (0, 1) at r=0.1, t=0.1",
        "x^n converges on (0, 1) but not uniformly",
        seed,
        "11 sample points plus x = 1 - 2^-j, j = 1..10, indices 1..=10000",
        |rec| {
            let seq = power_seq(Region::open(0.0, 1.0))?;
            let cert = uniform_index_search(&seq, &zero, &default_domain_sample(&seq), 0.1, 0.1)?;
            let top = cert.ladders.iter().find(|l| l.endpoint == 1.0);
            let (increasing, doubling) = top.map_or((false, false), |l| ladder_growth(&l.indices));
            let mut rec = rec
                .field("verdict", cert.verdict.name())
                .field("per_point_x", cert.per_point.iter().map(|p| p.x).collect::<Vec<_>>())
                .field("per_point_n0", cert.per_point.iter().map(|p| p.n0).collect::<Vec<_>>())
                .field("strictly_increasing", increasing)
                .field("doubles_from_j4_to_j7", doubling);
            rec = ladder_fields(rec, &cert);
            rec.outcome = pass_if(cert.verdict == UniformVerdict::NotUniformOnSample && increasing && doubling);
            Ok(rec)
        },
    ));
    out
}

/// Whether `ln((1 − r)/(rt)) / ln 2` is within rounding of an integer,
/// where the index sits on a tie.
fn power_half_tie(r: f64, t: f64) -> bool {
    let q = ((1.0 - r) / (r * t)).ln() / 2f64.ln();
    q > 0.0 && (q - q.round()).abs() < 1e-9
}

fn power_index_sweep(seed: u64) -> Vec<Record> {
    let zero = MapRule::Constant(0.0);
    let seq = match power_seq(Region::closed(0.0, 0.5)) {
        Ok(s) => s,
        Err(e) => return vec![Record::new("power sweep", "x^n on [0, 0.5]", Outcome::Fail, seed, "").field("error", e.to_string())],
    };
    let sample = default_domain_sample(&seq);
    let mut out = Vec::new();
    for i in 1..=9 {
        let r = i as f64 / 10.0;
        for t in [0.1, 1.0, 10.0] {
            let k = power_closed_form("power", 0.0, 0.5, r, t);
            let mut row = SweepRow {
                family: "power".into(),
                domain_lo: 0.0,
                domain_hi: 0.5,
                r,
                t,
                n0: None,
                verdict: "error".into(),
                closed_form_k: k,
            };
            let mut rec = guarded(
                format!("uniform index of x^n on [0, 0.5] at r={r}, t={t}"),
                "the uniform index of x^n on [0, a] has a closed form",
                seed,
                "11 sample points plus refinement ladders, indices 1..=10000",
                |rec| {
                    let cert = uniform_index_search(&seq, &zero, &sample, r, t)?;
                    row.n0 = cert.n0;
                    row.verdict = cert.verdict.name().into();
                    let tie = power_half_tie(r, t);
                    let agrees = match (cert.n0, k) {
                        (Some(n), Some(k)) => n == k || (tie && n.abs_diff(k) <= 1),
                        _ => false,
                    };
                    let mut rec = rec
                        .field("n0", cert.n0)
                        .field("closed_form_k", k)
                        .field("tie", tie)
                        .field("verdict", cert.verdict.name());
                    rec.outcome = if cert.is_uniform() { pass_if(agrees) } else { uniform_outcome(cert.verdict, None) };
                    Ok(rec)
                },
            );
            rec.sweep = Some(row);
            out.push(rec);
        }
    }
    out
}

fn quotient_sequence(seed: u64) -> Vec<Record> {
    let one = MapRule::Constant(1.0);
    let mut out = Vec::new();
    let seq = match FunctionSequence::new(FunctionFamily::Quotient, Region::closed(0.0, 10.0), line(1.0), line(1.0)) {
        Ok(s) => s,
        Err(e) => return vec![Record::new("quotient sequence", "n/(x + n)", Outcome::Fail, seed, "").field("error", e.to_string())],
    };
    let sample = default_domain_sample(&seq);
    let (r, t) = (0.3, 0.7);
    // sup over [0, 10] of |n/(x + n) − 1| is 10/(10 + n), reached at x = 10.
    let bound = r * t / (1.0 - r);
    let expected = (1..).find(|&n: &usize| 10.0 / (10.0 + n as f64) < bound).expect("bound is positive");
    out.push(guarded(
        format!("uniform index of n/(x + n) on [0, 10] at r={r}, t={t}"),
        "n/(x + n) converges uniformly to 1 on bounded intervals",
        seed,
        "11 sample points plus refinement ladders, indices 1..=10000",
        |rec| {
            let cert = uniform_index_search(&seq, &one, &sample, r, t)?;
            let mut rec = rec
                .field("n0", cert.n0)
                .field("expected_n0", expected)
                .field("verdict", cert.verdict.name());
            rec.outcome = pass_if(cert.is_uniform() && cert.n0 == Some(expected));
            Ok(rec)
        },
    ));
    out.push(guarded(
        "n/(x + n) on [0, 10] against sup-norm uniform convergence",
        "fuzzy and classical uniform convergence agree in the standard space",
        seed,
        "11 sample points plus refinement ladders, indices 1..=10000",
        |rec| {
            let cmp = classical_uniform_probe(&seq, &one, &sample)?;
            let mut rec = rec
                .field("classical_verdict", cmp.classical_verdict().name())
                .field("fuzzy_verdict", cmp.fuzzy_verdict().name());
            rec.outcome = pass_if(cmp.agree() && cmp.fuzzy_verdict() == UniformVerdict::UniformUpToBudget);
            Ok(rec)
        },
    ));
    out
}

fn cauchy_criterion(seed: u64) -> Vec<Record> {
    let catalog = match sequence_catalog(line(1.0)) {
        Ok(c) => c,
        Err(e) => return vec![Record::new("sequence catalog", "Cauchy criterion", Outcome::Fail, seed, "").field("error", e.to_string())],
    };
    catalog
        .into_iter()
        .map(|entry| {
            guarded(
                format!("Cauchy criterion on {} at r=0.1, t=0.1", entry.name),
                "a function sequence converges uniformly iff it is uniformly Cauchy",
                seed,
                "11 sample points plus refinement ladders, indices 1..=10000, p up to the index budget",
                |rec| {
                    let s = &entry.sequence;
                    let sample = default_domain_sample(s);
                    let direct = uniform_index_search(s, &entry.limit, &sample, 0.1, 0.1)?;
                    // Slow sequences drift past any shorter p window, which the spot check
                    // would catch, so p covers the whole budget.
                    let cauchy = uniform_cauchy_check(s, &sample, 0.1, 0.1, s.budget)?;
                    let agree = direct.verdict == cauchy.verdict && direct.verdict != UniformVerdict::Inconclusive;
                    let mut ok = agree && cauchy.spot_check != Some(false);
                    if entry.name == "power-on-closed-half" {
                        ok &= cauchy.n0.is_some_and(|k| (7..=9).contains(&k));
                    }
                    let mut rec = rec
                        .field("sequence", s.describe())
                        .field("index_verdict", direct.verdict.name())
                        .field("cauchy_verdict", cauchy.verdict.name())
                        .field("index_n0", direct.n0)
                        .field("cauchy_n0", cauchy.n0)
                        .field("p_max", s.budget)
                        .field("spot_check", cauchy.spot_check);
                    rec.outcome = pass_if(ok);
                    Ok(rec)
                },
            )
        })
        .collect()
}

fn uniform_limit(seed: u64) -> Vec<Record> {
    let plan = plan(seed);
    let zero = MapRule::Constant(0.0);
    let cases = [
        ("[0, 0.5]", Region::closed(0.0, 0.5), vec![0.0, 0.25, 0.5], true),
        ("(0, 1)", Region::open(0.0, 1.0), vec![0.25, 0.5, 0.9], false),
    ];
    cases
        .into_iter()
        .map(|(label, domain, xs, uniform)| {
            guarded(
                format!("x^n on {label}: continuity of the limit 0"),
                if uniform { "uniform limits of continuous maps are continuous" } else { "a continuous limit need not be uniform" },
                seed,
                format!("{}; points {xs:?}", plan.describe(1)),
                |rec| {
                    let seq = power_seq(domain)?;
                    let rep = uniform_limit_scenario(&seq, &zero, &points(&xs), 0.1, 0.1, 0.5, 0.5, &plan)?;
                    let mut rec = rec
                        .field("uniform_verdict", rep.uniform.verdict.name())
                        .field("members_continuous", rep.members_continuous())
                        .field("limit_continuous", rep.limit_continuous())
                        .field("theorem_holds", rep.theorem_holds())
                        .field("converse_fails", rep.converse_fails());
                    rec.outcome = pass_if(if uniform { rep.theorem_holds() == Some(true) } else { rep.converse_fails() });
                    Ok(rec)
                },
            )
        })
        .collect()
}

fn sup_deviation(seed: u64) -> Vec<Record> {
    let mut out = Vec::new();
    out.push(guarded(
        "sup of x^2 - x^4 on [0, 0.5]",
        "the sup bound used for the Cauchy criterion of x^n",
        seed,
        "dense grid plus critical point",
        |rec| {
            let s = sup_deviation_oracle(0.5, 2, 4)?;
            let mut rec = rec
                .field("sup", s.sup)
                .field("argmax", s.argmax)
                .field("tight_bound", s.tight_bound)
                .field("stated_bound", s.doubled_bound)
                .field("discrepancy", "the stated bound 2a^m is twice the tight bound a^m");
            rec.outcome = pass_if((s.sup - 0.1875).abs() <= 1e-6 && s.sup < s.doubled_bound);
            Ok(rec)
        },
    ));
    out.push(guarded(
        "sup of x - x^100 on [0, 0.9]",
        "the maximiser lies at the endpoint when the critical point is outside [0, a]",
        seed,
        "dense grid plus critical point",
        |rec| {
            let s = sup_deviation_oracle(0.9, 1, 100)?;
            let mut rec = rec
                .field("sup", s.sup)
                .field("argmax", s.argmax)
                .field("critical_point", s.critical_point)
                .field("critical_inside", s.critical_inside());
            rec.outcome = pass_if(s.argmax == 0.9 && !s.critical_inside() && s.sup < s.doubled_bound);
            Ok(rec)
        },
    ));
    out
}
