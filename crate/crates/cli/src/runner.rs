//! Turns a validated configuration into a report. Checks run in config
//! order; each produces one or more records.

use std::sync::Arc;

use ifnorm::continuity::{
    cauchy_image_divergence, cauchy_preservation_check, continuity_witness_search, sequential_continuity_check,
    uniform_continuity_search, Counterexample, MapBetweenSpaces, Region, Verdict,
};
use ifnorm::function_sequences::{
    classical_uniform_probe, closed_form_index_power, default_domain_sample, uniform_cauchy_check,
    uniform_index_search, uniform_limit_scenario, FunctionFamily, FunctionSequence, UniformCertificate,
    UniformVerdict,
};
use ifnorm::point_convergence::{
    cauchy_index, classical_equivalence_probe, convergence_index, CertificateStatus, PointSequence, SequenceRule,
    PROBE_PAIRS,
};
use ifnorm::space::{check_ifn_axioms_with, CheckOptions};
use ifnorm::topology::{inner_ball_witness, preimage_open_check, sample_ball_members, set_is_open_sampled, OpenBall, SampledSet};
use ifnorm::{SamplingPlan, Vector};

use crate::config::{family_limit, parse_tier, MapCheck, ScenarioConfig, TopologyCheck};
use crate::report::{pass_if, Outcome, Record, Report, SweepRow, Value};

pub fn vector_value(x: &Vector) -> Value {
    if x.dim() == 1 {
        Value::Real(x.first())
    } else {
        Value::List(x.coords().iter().map(|&c| Value::Real(c)).collect())
    }
}

pub fn counterexample_value(c: &Option<Counterexample>) -> Value {
    match c {
        None => Value::Null,
        Some(c) => Value::Text(format!(
            "{:?} implication fails at x = {} (base {}): value {} vs threshold {}",
            c.implication, c.x, c.base, c.value, c.threshold
        )),
    }
}

/// Runs `body` on a fresh passing record; a library error turns the record
/// into a failure carrying the error text.
pub fn guarded(
    name: impl Into<String>,
    anchor: impl Into<String>,
    seed: u64,
    plan: impl Into<String>,
    body: impl FnOnce(Record) -> ifnorm::Result<Record>,
) -> Record {
    let rec = Record::new(name, anchor, Outcome::Pass, seed, plan);
    let fallback = rec.clone();
    body(rec).unwrap_or_else(|e| {
        let mut r = fallback.field("error", e.to_string());
        r.outcome = Outcome::Fail;
        r
    })
}

/// Pass when `actual` is the expected verdict, or one of `good` when no
/// expectation is given. Inconclusive outcomes stay inconclusive.
pub fn judge(actual: &str, expect: Option<&str>, good: &[&str], inconclusive: bool) -> Outcome {
    if inconclusive {
        return Outcome::Inconclusive;
    }
    match expect {
        Some(e) => pass_if(e == actual),
        None => pass_if(good.contains(&actual)),
    }
}

pub fn status_outcome(s: CertificateStatus) -> Outcome {
    match s {
        CertificateStatus::Certified => Outcome::Pass,
        CertificateStatus::Failed => Outcome::Fail,
        CertificateStatus::Inconclusive => Outcome::Inconclusive,
    }
}

fn uniform_word(v: UniformVerdict) -> &'static str {
    match v {
        UniformVerdict::UniformUpToBudget => "uniform",
        UniformVerdict::NotUniformOnSample => "not-uniform",
        UniformVerdict::Inconclusive => "inconclusive",
    }
}

pub fn uniform_outcome(v: UniformVerdict, expect: Option<&str>) -> Outcome {
    judge(uniform_word(v), expect, &["uniform"], v == UniformVerdict::Inconclusive)
}

/// Indices of every refinement ladder, for reports.
pub fn ladder_fields(mut rec: Record, cert: &UniformCertificate) -> Record {
    for l in &cert.ladders {
        let key = format!("ladder_to_{}", l.endpoint);
        rec = rec
            .field(&format!("{key}_points"), l.points.clone())
            .field(&format!("{key}_indices"), l.indices.clone())
            .field(&format!("{key}_diverges"), l.diverges);
    }
    rec
}

pub fn run(cfg: &ScenarioConfig, seed: u64) -> Report {
    let kind = cfg.effective_kind().map_or("empty", |k| k.name());
    let scenario = cfg.name.clone().unwrap_or_else(|| kind.to_string());
    let mut report = Report::new(scenario, kind, seed);
    let plan = cfg.plan(seed);
    let out = &mut report.records;
    for (i, c) in cfg.axioms.iter().enumerate() {
        let space = cfg.space(&c.space, "").expect("validated");
        let tier = parse_tier(&c.tier);
        let options = CheckOptions {
            literal_xiii_xiv: c.literal_xiii_xiv,
        };
        let rep = check_ifn_axioms_with(&space, tier, &plan, options);
        let failed: Vec<String> = rep.failed_axioms().iter().map(|a| a.to_string()).collect();
        let witnesses: Vec<String> = rep
            .violations()
            .take(8)
            .map(|v| format!("{} at {}: {} vs {}", v.axiom, v.witness, v.lhs, v.rhs))
            .collect();
        let actual = if rep.is_clean() { "pass" } else { "fail" };
        out.push(
            Record::new(
                format!("axioms[{i}] {} at tier {}", c.space, c.tier),
                "axioms of an intuitionistic fuzzy norm",
                judge(actual, c.expect.as_deref(), &["pass"], false),
                seed,
                rep.plan.clone(),
            )
            .field("space", space.describe())
            .field("instances", rep.outcomes.iter().map(|o| o.instances).sum::<usize>())
            .field("failures", rep.total_failures())
            .field("failed_axioms", failed)
            .field("witnesses", witnesses),
        );
    }
    for (i, c) in cfg.converge.iter().enumerate() {
        let space = cfg.space(&c.space, "").expect("validated");
        let rule = c.sequence.build("").expect("validated");
        let seq = PointSequence::new(rule).with_budget(c.budget);
        let limit = c.limit.as_ref().map(|p| p.vector()).or_else(|| seq.rule.exact_limit());
        for &r in &c.r {
            for &t in &c.t {
                let what = if c.cauchy { "cauchy index" } else { "convergence index" };
                let plan_text = format!("indices 1..={}{}", c.budget, if c.cauchy { format!(", p <= {}", c.p_max) } else { String::new() });
                out.push(guarded(
                    format!("converge[{i}] {what} of {} at r={r}, t={t}", seq.describe()),
                    if c.cauchy { "Cauchy sequences in an intuitionistic fuzzy normed space" } else { "convergence with respect to an intuitionistic fuzzy norm" },
                    seed,
                    plan_text,
                    |rec| {
                        let cert = if c.cauchy {
                            cauchy_index(&space, &seq, r, t, c.p_max)?
                        } else {
                            convergence_index(&space, &seq, limit.as_ref().expect("validated"), r, t)?
                        };
                        let mut rec = rec
                            .field("n0", cert.n0)
                            .field("status", cert.status.name())
                            .field("budget", cert.budget)
                            .field("last_violation", cert.last_violation);
                        rec.outcome = status_outcome(cert.status);
                        if let Some(want) = c.expect_n0 {
                            rec = rec.field("expected_n0", want);
                            if rec.outcome != Outcome::Inconclusive {
                                rec.outcome = pass_if(cert.n0 == Some(want));
                            }
                        }
                        Ok(rec)
                    },
                ));
            }
        }
        if c.classical {
            out.push(guarded(
                format!("converge[{i}] classical comparison of {}", seq.describe()),
                "fuzzy convergence agrees with norm convergence in the standard construction",
                seed,
                format!("indices 1..={}", c.budget),
                |rec| {
                    let cmp = classical_equivalence_probe(&space, &seq, limit.as_ref())?;
                    let mut rec = rec
                        .field("classical_converges", cmp.classical_converges)
                        .field("fuzzy_converges", cmp.ifn_converges)
                        .field("threshold", cmp.threshold)
                        .field("tail_sup", cmp.tail_sup);
                    rec.outcome = pass_if(cmp.agree());
                    Ok(rec)
                },
            ));
        }
    }
    for (i, c) in cfg.continuity.iter().enumerate() {
        let f = cfg.map(&c.map, "").expect("validated");
        for p in &c.points {
            let x0 = p.vector();
            out.push(continuity_record(&f, &x0, c.epsilon, c.alpha, c.expect.as_deref(), &plan, seed, &format!("continuity[{i}]")));
            if c.sequential {
                out.push(sequential_record(&f, &x0, seed, &format!("continuity[{i}]")));
            }
        }
    }
    for (i, c) in cfg.uniform_continuity.iter().enumerate() {
        let f = cfg.map(&c.map, "").expect("validated");
        out.push(guarded(
            format!("uniform-continuity[{i}] {} at epsilon={}, alpha={}", f.describe(), c.epsilon, c.alpha),
            "uniform continuity between intuitionistic fuzzy normed spaces",
            seed,
            plan.describe(f.domain.dim()),
            |rec| {
                let w = uniform_continuity_search(&f, c.epsilon, c.alpha, &plan)?;
                let mut rec = rec
                    .field("verdict", w.verdict.name())
                    .field("delta", w.delta)
                    .field("beta", w.beta)
                    .field("rung", w.rung)
                    .field("pairs", w.pairs)
                    .field("base_points", w.base_points)
                    .field("counterexample", counterexample_value(&w.counterexample));
                rec.outcome = judge(w.verdict.name(), c.expect.as_deref(), &["witnessed"], w.verdict == Verdict::Inconclusive);
                Ok(rec)
            },
        ));
        if let Some(cs) = &c.cauchy {
            let seq = PointSequence::new(cs.sequence.build("").expect("validated")).with_budget(cs.budget);
            out.push(cauchy_image_record(&f, &seq, cs.r, cs.t, cs.p_max, cs.doublings, c.expect.as_deref(), seed, &format!("uniform-continuity[{i}]")));
        }
    }
    for (i, c) in cfg.topology.iter().enumerate() {
        out.push(topology_record(cfg, c, &plan, seed, i));
    }
    for (i, c) in cfg.funcseq.iter().enumerate() {
        let space = cfg.space(&c.space, "").expect("validated");
        let family = FunctionFamily::parse(&c.family).expect("validated");
        let limit = c
            .limit
            .as_ref()
            .map(|m| m.build("").expect("validated"))
            .or_else(|| family_limit(&c.family))
            .expect("validated");
        for &lo in &c.domain_lo {
            for &hi in &c.domain_hi {
                let domain = Region::interval(lo, hi, c.lo_closed, c.hi_closed);
                let seq = match FunctionSequence::new(family.clone(), domain, space.clone(), space.clone()) {
                    Ok(s) => s.with_budget(c.budget),
                    Err(e) => {
                        out.push(
                            Record::new(format!("funcseq[{i}] {} on [{lo}, {hi}]", c.family), "function sequences", Outcome::Fail, seed, "")
                                .field("error", e.to_string()),
                        );
                        continue;
                    }
                };
                let sample: Vec<Vector> = match &c.sample {
                    Some(s) => s.iter().map(|&x| Vector::scalar(x)).collect(),
                    None => default_domain_sample(&seq),
                };
                let plan_text = format!(
                    "{} sample points plus refinement ladders, indices 1..={}",
                    sample.len(),
                    c.budget
                );
                let name = format!("funcseq[{i}] {} on {}", seq.family.describe(), seq.domain.describe());
                match c.mode.as_str() {
                    "index" | "cauchy" => {
                        for &r in &c.r {
                            for &t in &c.t {
                                out.push(sweep_record(&seq, &limit, &sample, r, t, c, lo, hi, &name, &plan_text, seed));
                            }
                        }
                    }
                    "limit-theorem" => {
                        for &r in &c.r {
                            for &t in &c.t {
                                out.push(guarded(
                                    format!("{name} limit theorem at r={r}, t={t}"),
                                    "uniform limits of continuous maps are continuous",
                                    seed,
                                    format!("{plan_text}; continuity on {}", plan.describe(1)),
                                    |rec| {
                                        let rep = uniform_limit_scenario(&seq, &limit, &sample, r, t, c.epsilon, c.alpha, &plan)?;
                                        let mut rec = rec
                                            .field("uniform_verdict", rep.uniform.verdict.name())
                                            .field("members_continuous", rep.members_continuous())
                                            .field("limit_continuous", rep.limit_continuous())
                                            .field("theorem_holds", rep.theorem_holds())
                                            .field("converse_fails", rep.converse_fails());
                                        rec.outcome = match rep.theorem_holds() {
                                            Some(false) => Outcome::Fail,
                                            _ if !rep.members_continuous() => Outcome::Inconclusive,
                                            _ => uniform_outcome(rep.uniform.verdict, c.expect.as_deref().or(Some(uniform_word(rep.uniform.verdict)))),
                                        };
                                        Ok(rec)
                                    },
                                ));
                            }
                        }
                    }
                    _ => {
                        out.push(guarded(
                            format!("{name} classical comparison"),
                            "fuzzy uniform convergence against sup-norm uniform convergence",
                            seed,
                            plan_text.clone(),
                            |rec| {
                                let cmp = classical_uniform_probe(&seq, &limit, &sample)?;
                                let mut rec = rec
                                    .field("classical_verdict", cmp.classical_verdict().name())
                                    .field("fuzzy_verdict", cmp.fuzzy_verdict().name())
                                    .field("sup_profile_n", cmp.sup_profile.iter().map(|p| p.0).collect::<Vec<_>>())
                                    .field("sup_profile", cmp.sup_profile.iter().map(|p| p.1).collect::<Vec<_>>());
                                rec.outcome = pass_if(cmp.agree());
                                Ok(rec)
                            },
                        ));
                    }
                }
            }
        }
    }
    for name in &cfg.catalog {
        let sc = crate::catalog::find(name).expect("validated");
        out.extend((sc.run)(seed));
    }
    report
}

/// Closed-form index for the power family on an interval inside (−1, 1).
pub fn power_closed_form(family: &str, lo: f64, hi: f64, r: f64, t: f64) -> Option<usize> {
    let c = lo.abs().max(hi.abs());
    (family == "power" && c > 0.0 && c < 1.0)
        .then(|| closed_form_index_power(c, r, t).ok())
        .flatten()
}

#[allow(clippy::too_many_arguments)]
fn sweep_record(
    seq: &FunctionSequence,
    limit: &ifnorm::continuity::MapRule,
    sample: &[Vector],
    r: f64,
    t: f64,
    c: &crate::config::FuncseqCheck,
    lo: f64,
    hi: f64,
    name: &str,
    plan_text: &str,
    seed: u64,
) -> Record {
    let cauchy = c.mode == "cauchy";
    let mut row = SweepRow {
        family: c.family.clone(),
        domain_lo: lo,
        domain_hi: hi,
        r,
        t,
        n0: None,
        verdict: "error".into(),
        closed_form_k: power_closed_form(&c.family, lo, hi, r, t),
    };
    let mut rec = guarded(
        format!("{name} {} at r={r}, t={t}", if cauchy { "uniform Cauchy index" } else { "uniform index" }),
        if cauchy { "uniform Cauchy criterion for function sequences" } else { "uniform convergence of function sequences" },
        seed,
        plan_text,
        |rec| {
            let cert = if cauchy {
                uniform_cauchy_check(seq, sample, r, t, c.p_max)?
            } else {
                uniform_index_search(seq, limit, sample, r, t)?
            };
            row.n0 = cert.n0;
            row.verdict = cert.verdict.name().into();
            let mut rec = rec
                .field("n0", cert.n0)
                .field("verdict", cert.verdict.name())
                .field("closed_form_k", row.closed_form_k)
                .field("per_point_x", cert.per_point.iter().map(|p| p.x).collect::<Vec<_>>())
                .field("per_point_n0", cert.per_point.iter().map(|p| p.n0).collect::<Vec<_>>())
                .field("spot_check", cert.spot_check);
            rec = ladder_fields(rec, &cert);
            rec.outcome = uniform_outcome(cert.verdict, c.expect.as_deref());
            if cert.spot_check == Some(false) {
                rec.outcome = Outcome::Fail;
            }
            Ok(rec)
        },
    );
    rec.sweep = Some(row);
    rec
}

#[allow(clippy::too_many_arguments)]
pub fn continuity_record(
    f: &MapBetweenSpaces,
    x0: &Vector,
    epsilon: f64,
    alpha: f64,
    expect: Option<&str>,
    plan: &SamplingPlan,
    seed: u64,
    prefix: &str,
) -> Record {
    guarded(
        format!("{prefix} {} at x0={x0}, epsilon={epsilon}, alpha={alpha}", f.describe()),
        "continuity at a point between intuitionistic fuzzy normed spaces",
        seed,
        plan.describe(f.domain.dim()),
        |rec| {
            let w = continuity_witness_search(f, x0, epsilon, alpha, plan)?;
            let mut rec = rec
                .field("x0", vector_value(x0))
                .field("verdict", w.verdict.name())
                .field("delta", w.delta)
                .field("beta", w.beta)
                .field("rung", w.rung)
                .field("samples", w.samples)
                .field("counterexample", counterexample_value(&w.counterexample));
            rec.outcome = judge(w.verdict.name(), expect, &["witnessed"], w.verdict == Verdict::Inconclusive);
            Ok(rec)
        },
    )
}

/// Sequences `x₀ ± h/(n+1)` with `h` keeping every term inside the
/// restriction of a one-dimensional map.
pub fn approach_sequences(f: &MapBetweenSpaces, x0: &Vector, budget: usize) -> Vec<PointSequence> {
    let x = x0.first();
    let room = |edge: f64| if edge.is_finite() { (edge - x).abs() / 2.0 } else { 1.0 };
    let (lo_room, hi_room) = match &f.restriction {
        Region::Interval { lo, hi, .. } => (room(*lo), room(*hi)),
        _ => (1.0, 1.0),
    };
    // One step for every open side, so neither starts farther out than
    // needed; at an edge of the domain only the inner side is used.
    let sides: Vec<(f64, f64)> = [(-1.0, lo_room), (1.0, hi_room)].into_iter().filter(|s| s.1 > 0.0).collect();
    let h = sides.iter().map(|s| s.1).fold(1.0, f64::min);
    sides
        .into_iter()
        .map(|(sign, _)| PointSequence::new(SequenceRule::reciprocal(x, sign * h, 1.0)).with_budget(budget))
        .collect()
}

pub fn sequential_record(f: &MapBetweenSpaces, x0: &Vector, seed: u64, prefix: &str) -> Record {
    guarded(
        format!("{prefix} sequential check of {} at x0={x0}", f.describe()),
        "sequential continuity is equivalent to continuity",
        seed,
        "x0 ± h/(n+1), indices 1..=10000",
        |rec| {
            if f.domain.dim() != 1 {
                return Err(ifnorm::Error::Domain("sequential check needs a one-dimensional domain".into()));
            }
            let seqs = approach_sequences(f, x0, 10_000);
            let rep = sequential_continuity_check(f, x0, &seqs, &PROBE_PAIRS)?;
            let mut rec = rec
                .field("status", rep.status().name())
                .field("sequences", seqs.len())
                .field("probes", PROBE_PAIRS.iter().map(|&(r, t)| format!("r={r}, t={t}")).collect::<Vec<_>>());
            for (i, o) in rep.outcomes.iter().enumerate() {
                rec = rec
                    .field(&format!("sequence_{i}"), o.sequence.clone())
                    .field(&format!("image_n0_{i}"), o.image.iter().map(|c| c.n0).collect::<Vec<_>>())
                    .field(&format!("image_status_{i}"), o.image.iter().map(|c| c.status.name()).collect::<Vec<_>>());
            }
            rec.outcome = status_outcome(rep.status());
            Ok(rec)
        },
    )
}

#[allow(clippy::too_many_arguments)]
pub fn cauchy_image_record(
    f: &MapBetweenSpaces,
    seq: &PointSequence,
    r: f64,
    t: f64,
    p_max: usize,
    doublings: u32,
    expect: Option<&str>,
    seed: u64,
    prefix: &str,
) -> Record {
    guarded(
        format!("{prefix} image of the Cauchy sequence {} under {}", seq.describe(), f.describe()),
        "uniformly continuous maps send Cauchy sequences to Cauchy sequences",
        seed,
        format!("indices 1..={} doubled {doublings} times, p <= {p_max}", seq.budget),
        |rec| {
            let pres = cauchy_preservation_check(f, seq, r, t, p_max)?;
            let div = cauchy_image_divergence(f, seq, r, t, p_max, doublings)?;
            let refuted = pres.refutes_uniform_continuity() && div.diverges;
            let actual = if refuted {
                "refuted"
            } else if pres.preserved() {
                "witnessed"
            } else {
                "inconclusive"
            };
            let mut rec = rec
                .field("input_n0", pres.input.n0)
                .field("image_status", pres.image.status.name())
                .field("budgets", div.budgets.clone())
                .field("image_last_failures", div.indices.clone())
                .field("growth", div.growth)
                .field("diverges", div.diverges)
                .field("verdict", actual);
            rec.outcome = judge(actual, expect, &["witnessed"], actual == "inconclusive");
            Ok(rec)
        },
    )
}

fn interval_set(region: Region, members: Vec<Vector>) -> ifnorm::Result<SampledSet> {
    let name = region.describe();
    SampledSet::new(name, move |y| y.dim() == 1 && region.contains(y), members)
}

fn topology_record(cfg: &ScenarioConfig, c: &TopologyCheck, plan: &SamplingPlan, seed: u64, i: usize) -> Record {
    let expect = c.expect.as_deref();
    match c.check.as_str() {
        "inner-balls" => {
            let space = cfg.space(c.space.as_deref().unwrap_or_default(), "").expect("validated");
            let b = c.ball.as_ref().expect("validated");
            guarded(
                format!("topology[{i}] inner balls of B({}, {}, {})", b.center.vector(), b.r, b.t),
                "open balls are open sets",
                seed,
                format!("{} members, {} verified points each", c.members, ifnorm::topology::INNER_VERIFY_POINTS),
                |rec| {
                    let ball = OpenBall::new(b.center.vector(), b.r, b.t)?;
                    inner_balls(rec, &space, &ball, c.members, seed, expect)
                },
            )
        }
        "openness" => {
            let space = cfg.space(c.space.as_deref().unwrap_or_default(), "").expect("validated");
            let region = c.set.as_ref().expect("validated").region();
            guarded(
                format!("topology[{i}] openness of {}", region.describe()),
                "open sets of the induced topology",
                seed,
                format!("ladder balls, {} sampled points per ball", ifnorm::topology::FIT_SAMPLES),
                |rec| {
                    let members = c.points.as_ref().expect("validated").iter().map(|p| p.vector()).collect();
                    let set = interval_set(region, members)?;
                    let rep = set_is_open_sampled(&space, &set, plan, None)?;
                    let failing: Vec<Value> = rep.failing().map(|p| vector_value(&p.x)).collect();
                    let actual = if rep.open() { "pass" } else { "fail" };
                    let mut rec = rec.field("open", rep.open()).field("members", rep.points.len()).field("failing_points", Value::List(failing));
                    rec.outcome = judge(actual, expect, &["pass"], false);
                    Ok(rec)
                },
            )
        }
        _ => {
            let m = MapCheck {
                domain: c.domain.clone().unwrap_or_default(),
                codomain: c.codomain.clone().unwrap_or_default(),
                map: c.map.clone().expect("validated"),
                restriction: c.restriction.clone(),
                combine: None,
            };
            let f = cfg.map(&m, "").expect("validated");
            let b = c.ball.as_ref().expect("validated");
            guarded(
                format!("topology[{i}] preimage of B({}, {}, {}) under {}", b.center.vector(), b.r, b.t, f.describe()),
                "preimages of open sets under continuous maps are open",
                seed,
                plan.describe(f.domain.dim()),
                |rec| {
                    let target = OpenBall::new(b.center.vector(), b.r, b.t)?;
                    preimage_record(rec, &f, &target, plan, expect)
                },
            )
        }
    }
}

pub fn inner_balls(rec: Record, space: &Arc<ifnorm::IfnSpace>, ball: &OpenBall, members: usize, seed: u64, expect: Option<&str>) -> ifnorm::Result<Record> {
    let pts = sample_ball_members(space, ball, members, seed);
    let mut found = 0;
    let mut contained = 0;
    let mut verified = 0;
    let mut first_error = None;
    for y in &pts {
        match inner_ball_witness(space, ball, y, seed) {
            Ok(w) => {
                found += 1;
                verified += w.verified_points;
                if w.contained {
                    contained += 1;
                }
            }
            Err(e) => {
                first_error.get_or_insert_with(|| format!("{y}: {e}"));
            }
        }
    }
    let ok = found == pts.len() && contained == pts.len();
    let mut rec = rec
        .field("members", pts.len())
        .field("witnesses", found)
        .field("contained", contained)
        .field("verified_points", verified)
        .field("first_error", first_error);
    rec.outcome = judge(if ok { "pass" } else { "fail" }, expect, &["pass"], false);
    Ok(rec)
}

pub fn preimage_record(rec: Record, f: &MapBetweenSpaces, target: &OpenBall, plan: &SamplingPlan, expect: Option<&str>) -> ifnorm::Result<Record> {
    let rep = preimage_open_check(f, target, plan)?;
    let failing: Vec<Value> = rep.openness.failing().map(|p| vector_value(&p.x)).collect();
    let verdicts: Vec<&str> = rep.continuity.iter().map(|w| w.verdict.name()).collect();
    let actual = if rep.openness.open() { "pass" } else { "fail" };
    let mut rec = rec
        .field("open", rep.openness.open())
        .field("members", rep.openness.points.len())
        .field("failing_points", Value::List(failing))
        .field("continuity_verdicts", verdicts);
    rec.outcome = judge(actual, expect, &["pass"], false);
    Ok(rec)
}
