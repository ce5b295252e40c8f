//! Pointwise and uniform convergence of sequences of real maps between
//! fuzzy normed spaces, the uniform Cauchy criterion, closed-form indices
//! for `xⁿ`, and the uniform limit theorem with its failing converse.
//!
//! Non-uniformity is sample-relative: it is declared only when per-point
//! indices along a ladder `e ∓ 2⁻ʲ·w` toward a domain endpoint `e` keep
//! growing (at least doubling over the last [`DIVERGENCE_SPAN`] refinements).

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::continuity::{continuity_witness_search, ContinuityWitness, MapBetweenSpaces, MapRule, Region, Verdict};
use crate::error::{invalid, Error, Result};
use crate::point_convergence::{check_rt, classify, last_failure, CertificateStatus, ConvergenceCertificate};
use crate::sampling::SamplingPlan;
use crate::space::IfnSpace;
use crate::vector::Vector;

pub const DEFAULT_FUNCTION_BUDGET: usize = 10_000;

/// Tail values averaged when estimating a pointwise limit.
pub const TAIL_VALUES: usize = 10;

/// Largest spread of the averaged tail accepted as convergence.
pub const TAIL_TOLERANCE: f64 = 1e-9;

/// Refinements `j = 1..=REFINEMENT_DEPTH` toward each domain endpoint.
pub const REFINEMENT_DEPTH: u32 = 10;

/// Refinements over which indices must at least double.
pub const DIVERGENCE_SPAN: usize = 3;

/// Grid points of [`sup_deviation_oracle`].
pub const SUP_GRID: usize = 100_000;

/// `(r, t)` pairs at which the fuzzy side of [`classical_uniform_probe`] is
/// decided.
pub const UNIFORM_PROBES: [(f64, f64); 2] = [(0.5, 1.0), (0.1, 0.1)];

/// Sup-norm tolerances at which the classical side is decided.
pub const CLASSICAL_TOLERANCES: [f64; 2] = [0.1, 0.01];

type SeqFn = dyn Fn(usize, f64) -> f64 + Send + Sync;

#[derive(Clone)]
pub enum FunctionFamily {
    /// `fₙ(x) = xⁿ`.
    Power,
    /// `gₙ(x) = n/(x + n)`.
    Quotient,
    /// `fₙ(x) = x/n`.
    Scaled,
    /// `fₙ = f` for every `n`.
    Constant(MapRule),
    Custom { name: String, f: Arc<SeqFn> },
}

impl fmt::Debug for FunctionFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

impl FunctionFamily {
    pub fn custom(name: impl Into<String>, f: impl Fn(usize, f64) -> f64 + Send + Sync + 'static) -> Self {
        FunctionFamily::Custom {
            name: name.into(),
            f: Arc::new(f),
        }
    }

    /// `power`, `quotient`, `scaled` or `identity`.
    pub fn parse(tag: &str) -> Result<Self> {
        match tag {
            "power" => Ok(FunctionFamily::Power),
            "quotient" => Ok(FunctionFamily::Quotient),
            "scaled" => Ok(FunctionFamily::Scaled),
            "identity" => Ok(FunctionFamily::Constant(MapRule::Identity)),
            _ => Err(Error::UnknownTag(tag.to_string())),
        }
    }

    pub fn name(&self) -> String {
        match self {
            FunctionFamily::Power => "power".into(),
            FunctionFamily::Quotient => "quotient".into(),
            FunctionFamily::Scaled => "scaled".into(),
            FunctionFamily::Constant(_) => "constant".into(),
            FunctionFamily::Custom { name, .. } => name.clone(),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            FunctionFamily::Power => "fₙ(x) = x^n".into(),
            FunctionFamily::Quotient => "gₙ(x) = n/(x + n)".into(),
            FunctionFamily::Scaled => "fₙ(x) = x/n".into(),
            FunctionFamily::Constant(rule) => format!("fₙ(x) = {}", rule.describe()),
            FunctionFamily::Custom { name, .. } => name.clone(),
        }
    }

    pub fn eval(&self, n: usize, x: f64) -> f64 {
        match self {
            FunctionFamily::Power => x.powi(n as i32),
            FunctionFamily::Quotient => MapRule::ShiftedRatio(n as f64).eval(x),
            FunctionFamily::Scaled => x / n as f64,
            FunctionFamily::Constant(rule) => rule.eval(x),
            FunctionFamily::Custom { f, .. } => f(n, x),
        }
    }

    /// `fₙ` as a map rule.
    pub fn rule(&self, n: usize) -> MapRule {
        match self {
            FunctionFamily::Power => MapRule::Power(n as u32),
            FunctionFamily::Quotient => MapRule::ShiftedRatio(n as f64),
            FunctionFamily::Scaled => {
                let d = n as f64;
                MapRule::custom(format!("x/{n}"), move |x| x / d)
            }
            FunctionFamily::Constant(rule) => rule.clone(),
            FunctionFamily::Custom { name, f } => {
                let f = f.clone();
                MapRule::custom(format!("{name}[n={n}]"), move |x| f(n, x))
            }
        }
    }

    /// Known pointwise limit at `x`.
    pub fn exact_limit(&self, x: f64) -> Option<f64> {
        match self {
            FunctionFamily::Power if x.abs() < 1.0 => Some(0.0),
            FunctionFamily::Power if x == 1.0 => Some(1.0),
            FunctionFamily::Power => None,
            FunctionFamily::Quotient => Some(1.0),
            FunctionFamily::Scaled => Some(0.0),
            FunctionFamily::Constant(rule) => Some(rule.eval(x)),
            FunctionFamily::Custom { .. } => None,
        }
    }
}

/// `n ↦ fₙ` on an interval, between two one-dimensional spaces.
#[derive(Debug, Clone)]
pub struct FunctionSequence {
    pub family: FunctionFamily,
    pub domain: Region,
    pub budget: usize,
    pub domain_space: Arc<IfnSpace>,
    pub codomain_space: Arc<IfnSpace>,
}

impl FunctionSequence {
    pub fn new(
        family: FunctionFamily,
        domain: Region,
        domain_space: Arc<IfnSpace>,
        codomain_space: Arc<IfnSpace>,
    ) -> Result<Self> {
        let Region::Interval { lo, lo_closed, .. } = domain else {
            return Err(invalid("domain", "function sequences live on intervals"));
        };
        if domain_space.dim() != 1 || codomain_space.dim() != 1 {
            return Err(invalid("space", "function sequences act between one-dimensional spaces"));
        }
        // gₙ is undefined at x = −n, so the domain must avoid every −n.
        if matches!(family, FunctionFamily::Quotient) && (lo < -1.0 || (lo == -1.0 && lo_closed)) {
            return Err(invalid("domain", "quotient family needs a domain inside (−1, ∞)"));
        }
        Ok(FunctionSequence {
            family,
            domain,
            budget: DEFAULT_FUNCTION_BUDGET,
            domain_space,
            codomain_space,
        })
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget.max(1);
        self
    }

    /// `fₙ` as a map on the domain.
    pub fn map(&self, n: usize) -> MapBetweenSpaces {
        MapBetweenSpaces {
            domain: self.domain_space.clone(),
            codomain: self.codomain_space.clone(),
            rule: self.family.rule(n),
            restriction: self.domain.clone(),
        }
    }

    /// A map with rule `limit` on the same domain and spaces.
    pub fn limit_map(&self, limit: MapRule) -> MapBetweenSpaces {
        MapBetweenSpaces {
            domain: self.domain_space.clone(),
            codomain: self.codomain_space.clone(),
            rule: limit,
            restriction: self.domain.clone(),
        }
    }

    /// `f₁(x), …, f_count(x)`.
    pub fn values(&self, x: f64, count: usize) -> Vec<f64> {
        (1..=count).map(|n| self.family.eval(n, x)).collect()
    }

    pub fn describe(&self) -> String {
        format!("{} on {}", self.family.describe(), self.domain.describe())
    }

    fn check_sample(&self, sample: &[Vector]) -> Result<()> {
        match sample.iter().find(|x| x.dim() != 1 || !self.domain.contains(x)) {
            Some(x) => Err(Error::Domain(format!("{x} is outside {}", self.domain.describe()))),
            None => Ok(()),
        }
    }

    /// Points `e ∓ 2⁻ʲ·w` approaching each finite endpoint `e` from inside,
    /// `w` the interval width (1 when unbounded).
    pub fn refinement_ladders(&self) -> Vec<(f64, Vec<f64>)> {
        let Region::Interval { lo, hi, .. } = self.domain else {
            return Vec::new();
        };
        let width = if lo.is_finite() && hi.is_finite() { hi - lo } else { 1.0 };
        let mut out = Vec::new();
        for (e, sign) in [(lo, 1.0), (hi, -1.0)] {
            if e.is_finite() {
                let pts = (1..=REFINEMENT_DEPTH)
                    .map(|j| e + sign * width * 0.5f64.powi(j as i32))
                    .collect();
                out.push((e, pts));
            }
        }
        out
    }
}

/// The default sample of a domain: 11 evenly spaced points of its finite
/// part (clipped to `[-10, 10]`).
pub fn default_domain_sample(seq: &FunctionSequence) -> Vec<Vector> {
    seq.domain.grid(1, 11, 10.0)
}

#[derive(Debug, Clone, PartialEq)]
pub struct PointwiseLimit {
    pub x: Vector,
    pub limit: Vector,
    /// Closed-form limit of the family rather than a tail estimate.
    pub exact: bool,
    pub certificate: ConvergenceCertificate,
}

/// Limit of `fₙ(x)` (closed form when the family has one, else the mean of
/// the last [`TAIL_VALUES`] values) certified against the terms.
pub fn pointwise_limit_estimate(seq: &FunctionSequence, x: &Vector, r: f64, t: f64) -> Result<PointwiseLimit> {
    check_rt(r, t)?;
    seq.check_sample(std::slice::from_ref(x))?;
    let v = x.first();
    let values = seq.values(v, seq.budget);
    if let Some(bad) = values.iter().find(|y| !y.is_finite()) {
        return Err(Error::Domain(format!("a term at {x} is {bad}")));
    }
    let (limit, exact) = match seq.family.exact_limit(v) {
        Some(l) => (l, true),
        None => (tail_mean(&values).ok_or_else(|| Error::NoLimit(format!("{} at {x}", seq.describe())))?, false),
    };
    let limit = Vector::scalar(limit);
    let terms: Vec<Vector> = values.into_iter().map(Vector::scalar).collect();
    let certificate = crate::point_convergence::convergence_index_terms(&seq.codomain_space, &terms, &limit, r, t)?;
    Ok(PointwiseLimit {
        x: x.clone(),
        limit,
        exact,
        certificate,
    })
}

fn tail_mean(values: &[f64]) -> Option<f64> {
    let tail = &values[values.len().saturating_sub(TAIL_VALUES)..];
    let mean = tail.iter().sum::<f64>() / tail.len() as f64;
    let spread = tail.iter().map(|v| (v - mean).abs()).fold(0.0, f64::max);
    (spread <= TAIL_TOLERANCE).then_some(mean)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UniformVerdict {
    UniformUpToBudget,
    NotUniformOnSample,
    Inconclusive,
}

impl UniformVerdict {
    pub fn name(self) -> &'static str {
        match self {
            UniformVerdict::UniformUpToBudget => "uniform-up-to-budget",
            UniformVerdict::NotUniformOnSample => "not-uniform-on-sample",
            UniformVerdict::Inconclusive => "inconclusive",
        }
    }
}

/// Minimal index at one sampled point.
#[derive(Debug, Clone, PartialEq)]
pub struct PointIndex {
    pub x: f64,
    pub n0: Option<usize>,
    pub status: CertificateStatus,
}

/// Per-point indices along one refinement ladder.
#[derive(Debug, Clone, PartialEq)]
pub struct RefinementLadder {
    pub endpoint: f64,
    pub points: Vec<f64>,
    pub indices: Vec<Option<usize>>,
    pub diverges: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct UniformCertificate {
    pub r: f64,
    pub t: f64,
    pub budget: usize,
    /// Set for Cauchy-criterion certificates.
    pub p_max: Option<usize>,
    /// Largest per-point index, when every point is certified.
    pub n0: Option<usize>,
    pub per_point: Vec<PointIndex>,
    pub ladders: Vec<RefinementLadder>,
    pub verdict: UniformVerdict,
    /// Direct `(n, m)` check of the certified Cauchy tail.
    pub spot_check: Option<bool>,
}

impl UniformCertificate {
    pub fn is_uniform(&self) -> bool {
        self.verdict == UniformVerdict::UniformUpToBudget
    }

    pub fn index_at(&self, x: f64) -> Option<&PointIndex> {
        self.per_point.iter().find(|p| p.x == x)
    }
}

/// Indices along a ladder diverge when the last [`DIVERGENCE_SPAN`] + 1 of
/// them never decrease and at least double. A missing index (failure at the
/// budget) counts as infinite.
pub fn ladder_diverges(indices: &[Option<usize>]) -> bool {
    if indices.len() < DIVERGENCE_SPAN + 1 {
        return false;
    }
    let tail = &indices[indices.len() - DIVERGENCE_SPAN - 1..];
    let Some(first) = tail[0] else {
        return false;
    };
    let as_num = |i: Option<usize>| i.map_or(f64::INFINITY, |v| v as f64);
    let nondecreasing = tail.windows(2).all(|w| as_num(w[1]) >= as_num(w[0]));
    nondecreasing && as_num(tail[DIVERGENCE_SPAN]) >= 2.0 * first as f64
}

fn point_index(x: f64, budget: usize, fails: impl Fn(usize) -> bool) -> PointIndex {
    let (n0, status) = classify(budget, last_failure(budget, fails));
    PointIndex { x, n0, status }
}

/// Per-point indices over the sample and every refinement ladder, merged
/// into a verdict.
fn assemble(
    seq: &FunctionSequence,
    sample: &[Vector],
    r: f64,
    t: f64,
    p_max: Option<usize>,
    index: impl Fn(f64) -> PointIndex + Sync,
) -> UniformCertificate {
    let ladders_pts = seq.refinement_ladders();
    let mut xs: Vec<f64> = sample.iter().map(|x| x.first()).collect();
    for (_, pts) in &ladders_pts {
        xs.extend(pts.iter().copied().filter(|p| seq.domain.contains(&Vector::scalar(*p))));
    }
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    let per_point: Vec<PointIndex> = xs.par_iter().map(|&x| index(x)).collect();
    let lookup = |x: f64| per_point.iter().find(|p| p.x == x).and_then(|p| p.n0);
    let ladders: Vec<RefinementLadder> = ladders_pts
        .into_iter()
        .map(|(endpoint, points)| {
            let indices: Vec<Option<usize>> = points.iter().map(|&p| lookup(p)).collect();
            RefinementLadder {
                endpoint,
                diverges: ladder_diverges(&indices),
                points,
                indices,
            }
        })
        .collect();
    let all_certified = per_point.iter().all(|p| p.status == CertificateStatus::Certified);
    let verdict = if ladders.iter().any(|l| l.diverges) {
        UniformVerdict::NotUniformOnSample
    } else if all_certified {
        UniformVerdict::UniformUpToBudget
    } else {
        UniformVerdict::Inconclusive
    };
    let n0 = (verdict == UniformVerdict::UniformUpToBudget)
        .then(|| per_point.iter().filter_map(|p| p.n0).max())
        .flatten();
    UniformCertificate {
        r,
        t,
        budget: seq.budget,
        p_max,
        n0,
        per_point,
        ladders,
        verdict,
        spot_check: None,
    }
}

/// Minimal `n₀` with `μ(fₙ(x) − f(x), t) > 1 − r` and `ν(…) < r` for every
/// sampled `x` (plus the refinement ladders) and `n ∈ [n₀, budget]`.
///
/// `limit` is first compared with the pointwise limit at each sampled point.
pub fn uniform_index_search(
    seq: &FunctionSequence,
    limit: &MapRule,
    sample: &[Vector],
    r: f64,
    t: f64,
) -> Result<UniformCertificate> {
    check_rt(r, t)?;
    seq.check_sample(sample)?;
    for x in sample {
        let pl = pointwise_limit_estimate(seq, x, r, t)?;
        let (want, got) = (pl.limit.first(), limit.eval(x.first()));
        if !((want - got).abs() <= 1e-9 * want.abs().max(1.0)) {
            return Err(invalid(
                "limit",
                format!("{} gives {got} at {x}, the pointwise limit is {want}", limit.describe()),
            ));
        }
    }
    let space = &seq.codomain_space;
    Ok(assemble(seq, sample, r, t, None, |x| {
        let fx = limit.eval(x);
        point_index(x, seq.budget, |n| {
            !space.within(&Vector::scalar(seq.family.eval(n, x) - fx), r, t)
        })
    }))
}

/// Minimal `k` with `μ(f_{n+p}(x) − fₙ(x), t) > 1 − r` and `ν(…) < r` for
/// every sampled `x`, `n ∈ [k, budget]` and `p ≤ p_max`. A certified tail is
/// then spot-checked on pairs `n, m` from `{n₀, 2n₀, 4n₀, …, budget}`.
pub fn uniform_cauchy_check(
    seq: &FunctionSequence,
    sample: &[Vector],
    r: f64,
    t: f64,
    p_max: usize,
) -> Result<UniformCertificate> {
    check_rt(r, t)?;
    seq.check_sample(sample)?;
    if p_max == 0 {
        return Err(Error::Domain("p_max must be at least 1".into()));
    }
    let space = &seq.codomain_space;
    let within = |d: f64| space.within(&Vector::scalar(d), r, t);
    let mut cert = assemble(seq, sample, r, t, Some(p_max), |x| {
        let v = seq.values(x, seq.budget + p_max);
        // Membership only shrinks as |d| grows, so the extremes of each
        // window decide it.
        let (hi, lo) = window_extremes(&v, p_max);
        point_index(x, seq.budget, |n| !within(hi[n] - v[n - 1]) || !within(lo[n] - v[n - 1]))
    });
    if let Some(n0) = cert.n0 {
        let mut grid: Vec<usize> = std::iter::successors(Some(n0), |n| n.checked_mul(2))
            .take_while(|&n| n <= seq.budget)
            .collect();
        grid.push(seq.budget);
        let ok = cert.per_point.par_iter().all(|p| {
            grid.iter()
                .all(|&n| grid.iter().all(|&m| within(seq.family.eval(m, p.x) - seq.family.eval(n, p.x))))
        });
        cert.spot_check = Some(ok);
    }
    Ok(cert)
}

/// Max and min of `v[n..n + w]` for each `n` with a full window, by
/// monotone deques.
fn window_extremes(v: &[f64], w: usize) -> (Vec<f64>, Vec<f64>) {
    use std::collections::VecDeque;
    let count = v.len() + 1 - w;
    let mut hi = Vec::with_capacity(count);
    let mut lo = Vec::with_capacity(count);
    let (mut dh, mut dl) = (VecDeque::new(), VecDeque::new());
    for (i, &x) in v.iter().enumerate() {
        while dh.back().is_some_and(|&j: &usize| v[j] <= x) {
            dh.pop_back();
        }
        while dl.back().is_some_and(|&j: &usize| v[j] >= x) {
            dl.pop_back();
        }
        dh.push_back(i);
        dl.push_back(i);
        if i + 1 >= w {
            let start = i + 1 - w;
            while dh.front().is_some_and(|&j| j < start) {
                dh.pop_front();
            }
            while dl.front().is_some_and(|&j| j < start) {
                dl.pop_front();
            }
            hi.push(v[dh[0]]);
            lo.push(v[dl[0]]);
        }
    }
    (hi, lo)
}

/// `⌊ln((1 − r)/(rt)) / ln(1/c)⌋ + 1`, the first `n` with `cⁿ < rt/(1 − r)`;
/// 1 when `(1 − r)/(rt) ≤ 1`.
pub fn closed_form_index_power(c: f64, r: f64, t: f64) -> Result<usize> {
    check_rt(r, t)?;
    if !(c > 0.0 && c < 1.0) {
        return Err(Error::Domain(format!("c = {c} is not in (0, 1)")));
    }
    Ok(log_index((1.0 - r) / (r * t), c))
}

/// The index from the doubled bound `sup |xⁿ − xᵐ| ≤ 2aᵐ`:
/// `⌊ln(2(1 − r)/(rt)) / ln(1/a)⌋ + 1`, clamped to 1 likewise.
pub fn doubled_bound_index_power(a: f64, r: f64, t: f64) -> Result<usize> {
    check_rt(r, t)?;
    if !(a > 0.0 && a < 1.0) {
        return Err(Error::Domain(format!("a = {a} is not in (0, 1)")));
    }
    Ok(log_index(2.0 * (1.0 - r) / (r * t), a))
}

fn log_index(arg: f64, c: f64) -> usize {
    if arg <= 1.0 {
        return 1;
    }
    ((arg.ln() / (1.0 / c).ln()).floor() as usize).saturating_add(1)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SupDeviation {
    pub a: f64,
    pub m: u32,
    pub n: u32,
    /// Largest `|xⁿ − xᵐ|` on the grid.
    pub sup: f64,
    pub argmax: f64,
    /// `(m/n)^{1/(n−m)}`, where `xᵐ − xⁿ` peaks on `[0, 1]`.
    pub critical_point: Option<f64>,
    /// `aᵐ`.
    pub tight_bound: f64,
    /// `2aᵐ`.
    pub doubled_bound: f64,
}

impl SupDeviation {
    pub fn critical_inside(&self) -> bool {
        self.critical_point.is_some_and(|c| c <= self.a)
    }
}

/// Brute-force `max |xⁿ − xᵐ|` over [`SUP_GRID`] evenly spaced points of
/// `[0, a]`, endpoints included.
pub fn sup_deviation_oracle(a: f64, m: u32, n: u32) -> Result<SupDeviation> {
    if !(a > 0.0 && a < 1.0) {
        return Err(Error::Domain(format!("a = {a} is not in (0, 1)")));
    }
    if m > n {
        return Err(Error::Domain(format!("need m ≤ n, got m = {m}, n = {n}")));
    }
    let (mut sup, mut argmax) = (0.0, 0.0);
    for i in 0..SUP_GRID {
        // a·i/(G−1) can round one ulp past a at the last point.
        let x = (a * i as f64 / (SUP_GRID - 1) as f64).min(a);
        let d = (x.powi(n as i32) - x.powi(m as i32)).abs();
        if d > sup {
            sup = d;
            argmax = x;
        }
    }
    let critical_point = (m >= 1 && n > m).then(|| (m as f64 / n as f64).powf(1.0 / (n - m) as f64));
    Ok(SupDeviation {
        a,
        m,
        n,
        sup,
        argmax,
        critical_point,
        tight_bound: a.powi(m as i32),
        doubled_bound: 2.0 * a.powi(m as i32),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct UniformLimitReport {
    pub uniform: UniformCertificate,
    /// Continuity of a few members `fₙ` at the sampled points.
    pub members: Vec<(usize, Vec<ContinuityWitness>)>,
    pub limit: Vec<ContinuityWitness>,
}

impl UniformLimitReport {
    pub fn members_continuous(&self) -> bool {
        self.members
            .iter()
            .all(|(_, ws)| ws.iter().all(|w| w.verdict == Verdict::Witnessed))
    }

    pub fn limit_continuous(&self) -> bool {
        self.limit.iter().all(|w| w.verdict == Verdict::Witnessed)
    }

    /// Uniform convergence of continuous maps gave a continuous limit;
    /// `None` when convergence was not certified uniform.
    pub fn theorem_holds(&self) -> Option<bool> {
        (self.uniform.is_uniform() && self.members_continuous()).then(|| self.limit_continuous())
    }

    /// Continuous limit without uniform convergence.
    pub fn converse_fails(&self) -> bool {
        self.uniform.verdict == UniformVerdict::NotUniformOnSample && self.limit_continuous()
    }
}

/// Members whose continuity is checked in [`uniform_limit_scenario`].
pub const MEMBER_INDICES: [usize; 3] = [1, 2, 10];

/// Decides uniform convergence, then searches continuity witnesses for the
/// members [`MEMBER_INDICES`] and for the limit at every sampled point.
#[allow(clippy::too_many_arguments)]
pub fn uniform_limit_scenario(
    seq: &FunctionSequence,
    limit: &MapRule,
    sample: &[Vector],
    r: f64,
    t: f64,
    epsilon: f64,
    alpha: f64,
    plan: &SamplingPlan,
) -> Result<UniformLimitReport> {
    let uniform = uniform_index_search(seq, limit, sample, r, t)?;
    let search = |f: &MapBetweenSpaces| -> Result<Vec<ContinuityWitness>> {
        sample
            .iter()
            .map(|x0| continuity_witness_search(f, x0, epsilon, alpha, plan))
            .collect()
    };
    let members = MEMBER_INDICES
        .iter()
        .map(|&n| Ok((n, search(&seq.map(n))?)))
        .collect::<Result<Vec<_>>>()?;
    let limit = search(&seq.limit_map(limit.clone()))?;
    Ok(UniformLimitReport {
        uniform,
        members,
        limit,
    })
}

/// Classical sup-norm verdict next to the fuzzy one.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalUniformComparison {
    /// `(tolerance, verdict)` for `|fₙ(x) − f(x)| < tolerance`.
    pub classical: Vec<(f64, UniformVerdict)>,
    /// `(r, t, verdict)` from [`uniform_index_search`].
    pub fuzzy: Vec<(f64, f64, UniformVerdict)>,
    /// Largest sampled deviation at `n = 1, 2, 4, …, budget`.
    pub sup_profile: Vec<(usize, f64)>,
}

fn combined(verdicts: impl Iterator<Item = UniformVerdict>) -> UniformVerdict {
    let v: Vec<_> = verdicts.collect();
    if v.contains(&UniformVerdict::NotUniformOnSample) {
        UniformVerdict::NotUniformOnSample
    } else if v.iter().all(|&x| x == UniformVerdict::UniformUpToBudget) {
        UniformVerdict::UniformUpToBudget
    } else {
        UniformVerdict::Inconclusive
    }
}

impl ClassicalUniformComparison {
    pub fn classical_verdict(&self) -> UniformVerdict {
        combined(self.classical.iter().map(|c| c.1))
    }

    pub fn fuzzy_verdict(&self) -> UniformVerdict {
        combined(self.fuzzy.iter().map(|c| c.2))
    }

    pub fn agree(&self) -> bool {
        self.classical_verdict() == self.fuzzy_verdict()
    }
}

/// Decides classical uniform convergence with the same sample, ladders and
/// divergence rule, at each of [`CLASSICAL_TOLERANCES`], and compares it with
/// the fuzzy verdict at [`UNIFORM_PROBES`]. Standard-family spaces only.
pub fn classical_uniform_probe(
    seq: &FunctionSequence,
    limit: &MapRule,
    sample: &[Vector],
) -> Result<ClassicalUniformComparison> {
    if seq.codomain_space.standard_params().is_none() {
        return Err(Error::UnsupportedFamily(format!(
            "{} is not a standard space",
            seq.codomain_space.provenance()
        )));
    }
    seq.check_sample(sample)?;
    let classical = CLASSICAL_TOLERANCES
        .iter()
        .map(|&eta| {
            let cert = assemble(seq, sample, 0.5, 1.0, None, |x| {
                let fx = limit.eval(x);
                point_index(x, seq.budget, |n| !((seq.family.eval(n, x) - fx).abs() < eta))
            });
            (eta, cert.verdict)
        })
        .collect();
    let fuzzy = UNIFORM_PROBES
        .iter()
        .map(|&(r, t)| Ok((r, t, uniform_index_search(seq, limit, sample, r, t)?.verdict)))
        .collect::<Result<Vec<_>>>()?;
    let mut xs: Vec<f64> = sample.iter().map(|x| x.first()).collect();
    for (_, pts) in seq.refinement_ladders() {
        xs.extend(pts);
    }
    let sup_profile = std::iter::successors(Some(1usize), |n| n.checked_mul(2))
        .take_while(|&n| n <= seq.budget)
        .chain([seq.budget])
        .map(|n| {
            let s = xs
                .iter()
                .map(|&x| (seq.family.eval(n, x) - limit.eval(x)).abs())
                .fold(0.0, f64::max);
            (n, s)
        })
        .collect();
    Ok(ClassicalUniformComparison {
        classical,
        fuzzy,
        sup_profile,
    })
}

/// One function sequence of the built-in catalog.
#[derive(Debug, Clone)]
pub struct CatalogSequence {
    pub name: &'static str,
    pub sequence: FunctionSequence,
    pub limit: MapRule,
}

/// The built-in function sequences, all between copies of `space`.
pub fn sequence_catalog(space: Arc<IfnSpace>) -> Result<Vec<CatalogSequence>> {
    let entry = |name, family, domain, limit| -> Result<CatalogSequence> {
        Ok(CatalogSequence {
            name,
            sequence: FunctionSequence::new(family, domain, space.clone(), space.clone())?,
            limit,
        })
    };
    let zero = MapRule::Constant(0.0);
    Ok(vec![
        entry("power-on-closed-half", FunctionFamily::Power, Region::closed(0.0, 0.5), zero.clone())?,
        entry("power-on-open-unit", FunctionFamily::Power, Region::open(0.0, 1.0), zero.clone())?,
        entry("power-on-closed-nine-tenths", FunctionFamily::Power, Region::closed(0.0, 0.9), zero.clone())?,
        entry("quotient-on-zero-ten", FunctionFamily::Quotient, Region::closed(0.0, 10.0), MapRule::Constant(1.0))?,
        entry("scaled-on-unit", FunctionFamily::Scaled, Region::closed(0.0, 1.0), zero)?,
        entry(
            "constant-identity",
            FunctionFamily::Constant(MapRule::Identity),
            Region::closed(0.0, 1.0),
            MapRule::Identity,
        )?,
    ])
}
