//! ε–δ and sequential continuity between fuzzy normed spaces, uniform
//! continuity, Cauchy preservation and the algebra of continuous maps.
//!
//! Witness searches walk a diagonal ladder `δ = ε·2⁻ⁱ`, `β = α·2⁻ⁱ`,
//! `i = 0..=LADDER_RUNGS`, coarse to fine; the first rung whose implications
//! hold at every sampled point wins.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{invalid, Error, Result};
use crate::point_convergence::{
    cauchy_index_terms, check_rt, convergence_index_terms, CertificateStatus, ConvergenceCertificate,
    PointSequence,
};
use crate::sampling::SamplingPlan;
use crate::space::{IfnSpace, RELATION_SLACK};
use crate::vector::Vector;

/// Finest rung of the `(δ, β)` ladder.
pub const LADDER_RUNGS: u32 = 20;

/// Divisors smaller than this are treated as zero.
pub const ZERO_THRESHOLD: f64 = 1e-12;

/// Points of the grid used to look for zeros of a divisor.
pub const DIVISOR_GRID: usize = 1001;

/// Where a map is defined.
#[derive(Debug, Clone, PartialEq)]
pub enum Region {
    Whole,
    /// A one-dimensional interval; infinite ends are allowed.
    Interval {
        lo: f64,
        hi: f64,
        lo_closed: bool,
        hi_closed: bool,
    },
    /// A closed box `∏ [loᵢ, hiᵢ]`.
    Box(Vec<(f64, f64)>),
}

impl Region {
    pub fn closed(lo: f64, hi: f64) -> Self {
        Region::Interval {
            lo,
            hi,
            lo_closed: true,
            hi_closed: true,
        }
    }

    pub fn open(lo: f64, hi: f64) -> Self {
        Region::Interval {
            lo,
            hi,
            lo_closed: false,
            hi_closed: false,
        }
    }

    pub fn interval(lo: f64, hi: f64, lo_closed: bool, hi_closed: bool) -> Self {
        Region::Interval {
            lo,
            hi,
            lo_closed,
            hi_closed,
        }
    }

    pub fn contains(&self, x: &Vector) -> bool {
        if !x.is_finite() {
            return false;
        }
        match self {
            Region::Whole => true,
            Region::Interval {
                lo,
                hi,
                lo_closed,
                hi_closed,
            } => {
                let v = x.first();
                x.dim() == 1
                    && (if *lo_closed { v >= *lo } else { v > *lo })
                    && (if *hi_closed { v <= *hi } else { v < *hi })
            }
            Region::Box(b) => {
                b.len() == x.dim() && b.iter().zip(x.coords()).all(|(&(l, h), &v)| v >= l && v <= h)
            }
        }
    }

    pub fn intersect(&self, other: &Region) -> Result<Region> {
        match (self, other) {
            (Region::Whole, r) | (r, Region::Whole) => Ok(r.clone()),
            (
                Region::Interval {
                    lo: l1,
                    hi: h1,
                    lo_closed: lc1,
                    hi_closed: hc1,
                },
                Region::Interval {
                    lo: l2,
                    hi: h2,
                    lo_closed: lc2,
                    hi_closed: hc2,
                },
            ) => {
                let (lo, lo_closed) = if l1 > l2 {
                    (*l1, *lc1)
                } else if l2 > l1 {
                    (*l2, *lc2)
                } else {
                    (*l1, *lc1 && *lc2)
                };
                let (hi, hi_closed) = if h1 < h2 {
                    (*h1, *hc1)
                } else if h2 < h1 {
                    (*h2, *hc2)
                } else {
                    (*h1, *hc1 && *hc2)
                };
                Ok(Region::Interval {
                    lo,
                    hi,
                    lo_closed,
                    hi_closed,
                })
            }
            (Region::Box(a), Region::Box(b)) if a.len() == b.len() => Ok(Region::Box(
                a.iter()
                    .zip(b)
                    .map(|(&(l1, h1), &(l2, h2))| (l1.max(l2), h1.min(h2)))
                    .collect(),
            )),
            _ => Err(invalid("restriction", "cannot intersect regions of different shape")),
        }
    }

    /// Evenly spaced points of the region (its finite part, clipped to
    /// `[-window, window]` on unbounded sides), `n` per axis.
    pub fn grid(&self, dim: usize, n: usize, window: f64) -> Vec<Vector> {
        let n = n.max(2);
        let axis = |lo: f64, hi: f64| -> Vec<f64> {
            let (lo, hi) = (lo.max(-window), hi.min(window));
            if !(lo <= hi) {
                return Vec::new();
            }
            (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
        };
        let bounds: Vec<(f64, f64)> = match self {
            Region::Whole => vec![(-window, window); dim],
            Region::Interval { lo, hi, .. } => vec![(*lo, *hi)],
            Region::Box(b) => b.clone(),
        };
        let axes: Vec<Vec<f64>> = bounds.iter().map(|&(l, h)| axis(l, h)).collect();
        let mut out = vec![Vector::new(std::iter::empty())];
        for a in &axes {
            out = out
                .iter()
                .flat_map(|p| {
                    a.iter().map(move |&v| Vector::new(p.coords().iter().copied().chain([v])))
                })
                .collect();
        }
        out.retain(|x| self.contains(x));
        out
    }

    /// Points approaching finite endpoints geometrically from inside,
    /// `endpoint ± 2⁻ʲ·width` for `j = 1..=depth`, plus the endpoints
    /// themselves when closed.
    pub fn boundary_approach(&self, depth: u32) -> Vec<Vector> {
        let Region::Interval {
            lo,
            hi,
            lo_closed,
            hi_closed,
        } = self
        else {
            return Vec::new();
        };
        let width = if lo.is_finite() && hi.is_finite() { hi - lo } else { 1.0 };
        let mut out = Vec::new();
        for j in 1..=depth {
            let h = width * 0.5f64.powi(j as i32);
            if lo.is_finite() {
                out.push(Vector::scalar(lo + h));
            }
            if hi.is_finite() {
                out.push(Vector::scalar(hi - h));
            }
        }
        if *lo_closed && lo.is_finite() {
            out.push(Vector::scalar(*lo));
        }
        if *hi_closed && hi.is_finite() {
            out.push(Vector::scalar(*hi));
        }
        out.retain(|x| self.contains(x));
        out
    }

    pub fn describe(&self) -> String {
        match self {
            Region::Whole => "whole space".into(),
            Region::Interval {
                lo,
                hi,
                lo_closed,
                hi_closed,
            } => format!(
                "{}{lo}, {hi}{}",
                if *lo_closed { '[' } else { '(' },
                if *hi_closed { ']' } else { ')' }
            ),
            Region::Box(b) => b
                .iter()
                .map(|(l, h)| format!("[{l}, {h}]"))
                .collect::<Vec<_>>()
                .join("×"),
        }
    }
}

type ScalarFn = dyn Fn(f64) -> f64 + Send + Sync;

/// Real functions applied coordinatewise.
#[derive(Clone)]
pub enum MapRule {
    Identity,
    /// `a·x + b`.
    Affine { a: f64, b: f64 },
    /// `1/x`.
    Reciprocal,
    /// `xⁿ`.
    Power(u32),
    /// `n/(x + n)`.
    ShiftedRatio(f64),
    /// 1 for `x ≥ threshold`, else 0.
    Step { threshold: f64 },
    Constant(f64),
    Sum(Box<MapRule>, Box<MapRule>),
    Scale(f64, Box<MapRule>),
    Product(Box<MapRule>, Box<MapRule>),
    Quotient(Box<MapRule>, Box<MapRule>),
    Custom { name: String, f: Arc<ScalarFn> },
}

impl fmt::Debug for MapRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

impl MapRule {
    pub fn custom(name: impl Into<String>, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        MapRule::Custom {
            name: name.into(),
            f: Arc::new(f),
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        match self {
            MapRule::Identity => x,
            MapRule::Affine { a, b } => a * x + b,
            MapRule::Reciprocal => 1.0 / x,
            MapRule::Power(n) => x.powi(*n as i32),
            MapRule::ShiftedRatio(n) => n / (x + n),
            MapRule::Step { threshold } => {
                if x >= *threshold {
                    1.0
                } else {
                    0.0
                }
            }
            MapRule::Constant(c) => *c,
            MapRule::Sum(f, g) => f.eval(x) + g.eval(x),
            MapRule::Scale(k, f) => {
                // k = 0 gives the zero map outright, also where f is undefined.
                if *k == 0.0 {
                    0.0
                } else {
                    k * f.eval(x)
                }
            }
            MapRule::Product(f, g) => f.eval(x) * g.eval(x),
            MapRule::Quotient(f, g) => f.eval(x) / g.eval(x),
            MapRule::Custom { f, .. } => f(x),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            MapRule::Identity => "x".into(),
            MapRule::Affine { a, b } => format!("{a}·x + {b}"),
            MapRule::Reciprocal => "1/x".into(),
            MapRule::Power(n) => format!("x^{n}"),
            MapRule::ShiftedRatio(n) => format!("{n}/(x + {n})"),
            MapRule::Step { threshold } => format!("[x ≥ {threshold}]"),
            MapRule::Constant(c) => format!("{c}"),
            MapRule::Sum(f, g) => format!("({}) + ({})", f.describe(), g.describe()),
            MapRule::Scale(k, f) => format!("{k}·({})", f.describe()),
            MapRule::Product(f, g) => format!("({})·({})", f.describe(), g.describe()),
            MapRule::Quotient(f, g) => format!("({})/({})", f.describe(), g.describe()),
            MapRule::Custom { name, .. } => name.clone(),
        }
    }
}

/// `f : (U, A) → (V, B)` given by a coordinatewise rule on a region of U.
#[derive(Debug, Clone)]
pub struct MapBetweenSpaces {
    pub domain: Arc<IfnSpace>,
    pub codomain: Arc<IfnSpace>,
    pub rule: MapRule,
    pub restriction: Region,
}

impl MapBetweenSpaces {
    pub fn new(domain: Arc<IfnSpace>, codomain: Arc<IfnSpace>, rule: MapRule, restriction: Region) -> Result<Self> {
        if domain.dim() != codomain.dim() {
            return Err(invalid(
                "codomain",
                "coordinatewise rules need domain and codomain of equal dimension",
            ));
        }
        if matches!(restriction, Region::Interval { .. }) && domain.dim() != 1 {
            return Err(invalid("restriction", "intervals restrict one-dimensional spaces only"));
        }
        if let Region::Box(b) = &restriction {
            if b.len() != domain.dim() {
                return Err(invalid("restriction", "box dimension differs from the domain"));
            }
        }
        Ok(MapBetweenSpaces {
            domain,
            codomain,
            rule,
            restriction,
        })
    }

    pub fn apply(&self, x: &Vector) -> Vector {
        x.map(|v| self.rule.eval(v))
    }

    pub fn describe(&self) -> String {
        format!("f(x) = {} on {}", self.rule.describe(), self.restriction.describe())
    }

    fn check_point(&self, x: &Vector) -> Result<()> {
        if x.dim() != self.domain.dim() || !self.restriction.contains(x) {
            return Err(Error::Domain(format!(
                "{x} is outside {}",
                self.restriction.describe()
            )));
        }
        let y = self.apply(x);
        if !y.is_finite() {
            return Err(Error::Domain(format!("f({x}) = {y} is not finite")));
        }
        Ok(())
    }
}

/// The operations of the algebra of maps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Combinator {
    Sum,
    Scalar(f64),
    Product,
    /// `1/f`.
    Reciprocal,
    /// `f/g`.
    Quotient,
}

fn same_spaces(f: &MapBetweenSpaces, g: &MapBetweenSpaces) -> Result<()> {
    let same = |a: &Arc<IfnSpace>, b: &Arc<IfnSpace>| Arc::ptr_eq(a, b) || a.describe() == b.describe();
    if same(&f.domain, &g.domain) && same(&f.codomain, &g.codomain) {
        Ok(())
    } else {
        Err(invalid("g", "maps must share domain and codomain"))
    }
}

/// Looks for a zero of `g` on a [`DIVISOR_GRID`]-point grid of `region`:
/// a value below [`ZERO_THRESHOLD`] in magnitude or a sign change between
/// neighbours.
fn find_zero(g: &MapRule, region: &Region, dim: usize) -> Option<f64> {
    let per_axis = if dim == 1 {
        DIVISOR_GRID
    } else {
        (DIVISOR_GRID as f64).powf(1.0 / dim as f64).ceil() as usize
    };
    let pts = region.grid(dim, per_axis, 1e3);
    let mut prev: Option<(f64, f64)> = None;
    for x in &pts {
        for &c in x.coords() {
            let v = g.eval(c);
            if !(v.abs() >= ZERO_THRESHOLD) {
                return Some(c);
            }
            if dim == 1 {
                if let Some((pc, pv)) = prev {
                    if pv.signum() != v.signum() {
                        return Some(0.5 * (pc + c));
                    }
                }
                prev = Some((c, v));
            }
        }
    }
    None
}

/// Pointwise combination of maps sharing domain and codomain. Restrictions
/// are intersected.
pub fn combine(op: Combinator, f: &MapBetweenSpaces, g: Option<&MapBetweenSpaces>) -> Result<MapBetweenSpaces> {
    let need_g = || g.ok_or_else(|| invalid("g", "this combinator takes two maps"));
    let (rule, restriction) = match op {
        Combinator::Scalar(k) => (MapRule::Scale(k, Box::new(f.rule.clone())), f.restriction.clone()),
        Combinator::Reciprocal => {
            if let Some(at) = find_zero(&f.rule, &f.restriction, f.domain.dim()) {
                return Err(Error::ZeroDivisor { at });
            }
            (
                MapRule::Quotient(Box::new(MapRule::Constant(1.0)), Box::new(f.rule.clone())),
                f.restriction.clone(),
            )
        }
        Combinator::Sum | Combinator::Product | Combinator::Quotient => {
            let g = need_g()?;
            same_spaces(f, g)?;
            let region = f.restriction.intersect(&g.restriction)?;
            let (a, b) = (Box::new(f.rule.clone()), Box::new(g.rule.clone()));
            let rule = match op {
                Combinator::Sum => MapRule::Sum(a, b),
                Combinator::Product => MapRule::Product(a, b),
                _ => {
                    if let Some(at) = find_zero(&g.rule, &region, f.domain.dim()) {
                        return Err(Error::ZeroDivisor { at });
                    }
                    MapRule::Quotient(a, b)
                }
            };
            (rule, region)
        }
    };
    Ok(MapBetweenSpaces {
        domain: f.domain.clone(),
        codomain: f.codomain.clone(),
        rule,
        restriction,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Witnessed,
    Refuted,
    Inconclusive,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Witnessed => "witnessed",
            Verdict::Refuted => "refuted",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

/// Which of the two implications failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Implication {
    /// `μ_U(x − x₀, δ) > 1 − β ⟹ μ_V(f(x) − f(x₀), ε) > 1 − α`.
    Membership,
    /// `ν_U(x − x₀, δ) < β ⟹ ν_V(f(x) − f(x₀), ε) < α`.
    NonMembership,
}

/// A sampled point where a premise held and its conclusion did not.
#[derive(Debug, Clone, PartialEq)]
pub struct Counterexample {
    pub x: Vector,
    /// The base point: `x₀` for continuity at a point, `x₂` for pairs.
    pub base: Vector,
    pub implication: Implication,
    /// μ_V or ν_V of the image difference at ε.
    pub value: f64,
    /// `1 − α` or `α`.
    pub threshold: f64,
}

impl Counterexample {
    /// How far the conclusion misses its threshold.
    pub fn margin(&self) -> f64 {
        match self.implication {
            Implication::Membership => self.threshold - self.value,
            Implication::NonMembership => self.value - self.threshold,
        }
    }
}

/// Outcome of a `(δ, β)` search at one point.
#[derive(Debug, Clone, PartialEq)]
pub struct ContinuityWitness {
    pub x0: Vector,
    pub epsilon: f64,
    pub alpha: f64,
    pub delta: Option<f64>,
    pub beta: Option<f64>,
    /// Ladder rung of the witness.
    pub rung: Option<u32>,
    pub verdict: Verdict,
    /// The finest rung's counterexample when no rung succeeded.
    pub counterexample: Option<Counterexample>,
    /// Points checked at the deciding rung.
    pub samples: usize,
    pub plan: String,
}

fn check_eps_alpha(epsilon: f64, alpha: f64) -> Result<()> {
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(Error::Domain(format!("ε = {epsilon} is not positive")));
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::Domain(format!("α = {alpha} is not in (0, 1)")));
    }
    Ok(())
}

/// `(δ, β)` of rung `i`.
pub fn ladder_rung(epsilon: f64, alpha: f64, i: u32) -> (f64, f64) {
    let s = 0.5f64.powi(i as i32);
    (epsilon * s, alpha * s)
}

/// Largest `h` with `pred(h)`, assuming `pred` holds at 0 and is
/// downward closed; `None` when it never fails.
pub(crate) fn premise_radius(pred: impl Fn(f64) -> bool) -> Option<f64> {
    let mut hi = 1.0f64;
    while pred(hi) {
        hi *= 2.0;
        if hi > 1e300 {
            return None;
        }
    }
    let mut lo = 0.0f64;
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            return Some(lo);
        }
        if pred(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
}

/// Offsets `z` along each axis and sign on which a premise at `(δ, β)` in
/// `space` is close to flipping.
fn premise_boundary_offsets(space: &IfnSpace, delta: f64, beta: f64) -> Vec<Vector> {
    let d = space.dim();
    let mut out = Vec::new();
    for axis in 0..d {
        for sign in [1.0, -1.0] {
            let along = |h: f64| {
                let mut c = vec![0.0; d];
                c[axis] = sign * h;
                Vector::from(c)
            };
            let preds: [Box<dyn Fn(f64) -> bool>; 2] = [
                Box::new(|h| space.grades(&along(h), delta).0 > 1.0 - beta),
                Box::new(|h| space.grades(&along(h), delta).1 < beta),
            ];
            for p in preds {
                if let Some(h) = premise_radius(p) {
                    out.push(along(h));
                    for j in 1..=40 {
                        out.push(along(h * (1.0 - 0.5f64.powi(j))));
                    }
                }
            }
        }
    }
    out
}

/// Geometric offsets `±2⁻ᵏ` along each axis, `k = -3..=60`.
fn geometric_offsets(dim: usize) -> Vec<Vector> {
    let mut out = Vec::new();
    for axis in 0..dim {
        for k in -3..=60 {
            for sign in [1.0, -1.0] {
                let mut c = vec![0.0; dim];
                c[axis] = sign * 0.5f64.powi(k);
                out.push(Vector::from(c));
            }
        }
    }
    out
}

/// Checks both implications of a candidate `(δ, β)` at `x₀` on the sampled
/// points. Returns the first counterexample and the number of points checked.
pub fn check_witness(
    f: &MapBetweenSpaces,
    x0: &Vector,
    epsilon: f64,
    alpha: f64,
    delta: f64,
    beta: f64,
    plan: &SamplingPlan,
) -> Result<(Option<Counterexample>, usize)> {
    check_eps_alpha(epsilon, alpha)?;
    check_eps_alpha(delta, beta)?;
    f.check_point(x0)?;
    let fixed = fixed_samples(f, x0, plan);
    Ok(check_rung(f, x0, epsilon, alpha, delta, beta, &fixed))
}

fn fixed_samples(f: &MapBetweenSpaces, x0: &Vector, plan: &SamplingPlan) -> Vec<Vector> {
    let mut pts: Vec<Vector> = geometric_offsets(x0.dim()).iter().map(|z| x0 + z).collect();
    pts.extend(plan.vectors(x0.dim()));
    pts.extend(f.restriction.boundary_approach(40));
    pts.retain(|x| f.restriction.contains(x));
    pts
}

fn check_rung(
    f: &MapBetweenSpaces,
    x0: &Vector,
    epsilon: f64,
    alpha: f64,
    delta: f64,
    beta: f64,
    fixed: &[Vector],
) -> (Option<Counterexample>, usize) {
    let fx0 = f.apply(x0);
    let mut count = 0;
    let boundary: Vec<Vector> = premise_boundary_offsets(&f.domain, delta, beta)
        .iter()
        .map(|z| x0 + z)
        .filter(|x| f.restriction.contains(x))
        .collect();
    for x in fixed.iter().chain(&boundary) {
        let fx = f.apply(x);
        if !fx.is_finite() {
            continue;
        }
        count += 1;
        if let Some(c) = implication_failure(f, x, x0, &fx, &fx0, epsilon, alpha, delta, beta) {
            return (Some(c), count);
        }
    }
    (None, count)
}

#[allow(clippy::too_many_arguments)]
fn implication_failure(
    f: &MapBetweenSpaces,
    x: &Vector,
    base: &Vector,
    fx: &Vector,
    fbase: &Vector,
    epsilon: f64,
    alpha: f64,
    delta: f64,
    beta: f64,
) -> Option<Counterexample> {
    let (mu_u, nu_u) = f.domain.grades(&(x - base), delta);
    let (mu_v, nu_v) = f.codomain.grades(&(fx - fbase), epsilon);
    if mu_u > 1.0 - beta && !(mu_v > 1.0 - alpha) {
        return Some(Counterexample {
            x: x.clone(),
            base: base.clone(),
            implication: Implication::Membership,
            value: mu_v,
            threshold: 1.0 - alpha,
        });
    }
    if nu_u < beta && !(nu_v < alpha) {
        return Some(Counterexample {
            x: x.clone(),
            base: base.clone(),
            implication: Implication::NonMembership,
            value: nu_v,
            threshold: alpha,
        });
    }
    None
}

/// Searches the `(δ, β)` ladder for a witness of continuity at `x₀`.
///
/// Refuted means a counterexample survives at the finest rung and misses its
/// threshold by more than rounding; a near-tie there is inconclusive.
pub fn continuity_witness_search(
    f: &MapBetweenSpaces,
    x0: &Vector,
    epsilon: f64,
    alpha: f64,
    plan: &SamplingPlan,
) -> Result<ContinuityWitness> {
    check_eps_alpha(epsilon, alpha)?;
    f.check_point(x0)?;
    let fixed = fixed_samples(f, x0, plan);
    let mut last = None;
    let mut samples = 0;
    for i in 0..=LADDER_RUNGS {
        let (delta, beta) = ladder_rung(epsilon, alpha, i);
        let (cx, n) = check_rung(f, x0, epsilon, alpha, delta, beta, &fixed);
        samples = n;
        match cx {
            None => {
                return Ok(ContinuityWitness {
                    x0: x0.clone(),
                    epsilon,
                    alpha,
                    delta: Some(delta),
                    beta: Some(beta),
                    rung: Some(i),
                    verdict: Verdict::Witnessed,
                    counterexample: None,
                    samples,
                    plan: plan.describe(x0.dim()),
                })
            }
            Some(c) => last = Some(c),
        }
    }
    let verdict = match &last {
        Some(c) if c.margin() > RELATION_SLACK => Verdict::Refuted,
        _ => Verdict::Inconclusive,
    };
    Ok(ContinuityWitness {
        x0: x0.clone(),
        epsilon,
        alpha,
        delta: None,
        beta: None,
        rung: None,
        verdict,
        counterexample: last,
        samples,
        plan: plan.describe(x0.dim()),
    })
}

/// [`continuity_witness_search`] at several points, in parallel, results in
/// input order.
pub fn continuity_witness_search_many(
    f: &MapBetweenSpaces,
    points: &[Vector],
    epsilon: f64,
    alpha: f64,
    plan: &SamplingPlan,
) -> Result<Vec<ContinuityWitness>> {
    points
        .par_iter()
        .map(|x0| continuity_witness_search(f, x0, epsilon, alpha, plan))
        .collect()
}

/// Per-sequence result of the sequential check.
#[derive(Debug, Clone, PartialEq)]
pub struct SequentialOutcome {
    pub sequence: String,
    /// Input certificates `xₙ → x₀`, one per probe.
    pub input: Vec<ConvergenceCertificate>,
    /// Image certificates `f(xₙ) → f(x₀)`, one per probe.
    pub image: Vec<ConvergenceCertificate>,
}

impl SequentialOutcome {
    pub fn status(&self) -> CertificateStatus {
        combine_status(self.image.iter().map(|c| c.status))
    }
}

fn combine_status(it: impl Iterator<Item = CertificateStatus>) -> CertificateStatus {
    let mut out = CertificateStatus::Certified;
    for s in it {
        match s {
            CertificateStatus::Failed => return CertificateStatus::Failed,
            CertificateStatus::Inconclusive => out = CertificateStatus::Inconclusive,
            CertificateStatus::Certified => {}
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct SequentialReport {
    pub x0: Vector,
    pub probes: Vec<(f64, f64)>,
    pub outcomes: Vec<SequentialOutcome>,
}

impl SequentialReport {
    /// Conjunction over sequences and probes.
    pub fn status(&self) -> CertificateStatus {
        combine_status(self.outcomes.iter().map(SequentialOutcome::status))
    }
}

/// Certifies `f(xₙ) → f(x₀)` for every sequence at every `(r, t)` probe.
///
/// Each input must first be certified to converge to `x₀` at the same probe;
/// otherwise the check fails with [`Error::InputNotCertified`].
pub fn sequential_continuity_check(
    f: &MapBetweenSpaces,
    x0: &Vector,
    sequences: &[PointSequence],
    probes: &[(f64, f64)],
) -> Result<SequentialReport> {
    f.check_point(x0)?;
    if probes.is_empty() {
        return Err(invalid("probes", "need at least one (r, t) pair"));
    }
    for &(r, t) in probes {
        check_rt(r, t)?;
    }
    let fx0 = f.apply(x0);
    let outcomes = sequences
        .par_iter()
        .map(|seq| {
            let terms = seq.terms(seq.budget);
            if let Some(x) = terms.iter().find(|x| !f.restriction.contains(x)) {
                return Err(Error::InputNotCertified(format!(
                    "{} leaves the domain at {x}",
                    seq.rule.describe()
                )));
            }
            let images: Vec<Vector> = terms.iter().map(|x| f.apply(x)).collect();
            let mut input = Vec::new();
            let mut image = Vec::new();
            for &(r, t) in probes {
                let c = convergence_index_terms(&f.domain, &terms, x0, r, t)?;
                if !c.is_certified() {
                    return Err(Error::InputNotCertified(format!(
                        "{} is {} to converge to {x0} at r={r}, t={t}",
                        seq.rule.describe(),
                        c.status.name()
                    )));
                }
                input.push(c);
                image.push(convergence_index_terms(&f.codomain, &images, &fx0, r, t)?);
            }
            Ok(SequentialOutcome {
                sequence: seq.describe(),
                input,
                image,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SequentialReport {
        x0: x0.clone(),
        probes: probes.to_vec(),
        outcomes,
    })
}

/// Both characterizations of continuity at one point, side by side.
#[derive(Debug, Clone, PartialEq)]
pub struct EquivalenceRecord {
    pub witness: ContinuityWitness,
    pub sequential: SequentialReport,
}

impl EquivalenceRecord {
    /// `Some(true)` when both checks are decided and agree, `Some(false)`
    /// when they are decided and disagree, `None` when either is undecided.
    pub fn agreement(&self) -> Option<bool> {
        let eps = match self.witness.verdict {
            Verdict::Witnessed => true,
            Verdict::Refuted => false,
            Verdict::Inconclusive => return None,
        };
        let seq = match self.sequential.status() {
            CertificateStatus::Certified => true,
            CertificateStatus::Failed => false,
            CertificateStatus::Inconclusive => return None,
        };
        Some(eps == seq)
    }

    /// A decided disagreement contradicts the equivalence of the two notions
    /// and points at a bug or an inadequate budget.
    pub fn disagreement(&self) -> bool {
        self.agreement() == Some(false)
    }
}

#[allow(clippy::too_many_arguments)]
pub fn equivalence_probe(
    f: &MapBetweenSpaces,
    x0: &Vector,
    epsilon: f64,
    alpha: f64,
    sequences: &[PointSequence],
    probes: &[(f64, f64)],
    plan: &SamplingPlan,
) -> Result<EquivalenceRecord> {
    Ok(EquivalenceRecord {
        witness: continuity_witness_search(f, x0, epsilon, alpha, plan)?,
        sequential: sequential_continuity_check(f, x0, sequences, probes)?,
    })
}

/// Outcome of a `(δ, β)` search serving every sampled pair.
#[derive(Debug, Clone, PartialEq)]
pub struct UniformWitness {
    pub epsilon: f64,
    pub alpha: f64,
    pub delta: Option<f64>,
    pub beta: Option<f64>,
    pub rung: Option<u32>,
    pub verdict: Verdict,
    /// Counterexample pair `(x, base)` at the finest rung when refuted.
    pub counterexample: Option<Counterexample>,
    /// Pairs checked at the deciding rung.
    pub pairs: usize,
    /// Number of base points.
    pub base_points: usize,
}

/// Base points for pair sampling: a 41-point grid of the restriction, points
/// approaching open endpoints geometrically, and the plan's points in the
/// restriction.
pub fn uniform_base_points(f: &MapBetweenSpaces, plan: &SamplingPlan) -> Vec<Vector> {
    let d = f.domain.dim();
    let per_axis = if d == 1 { 41 } else { 11 };
    let mut pts = f.restriction.grid(d, per_axis, 1e3);
    pts.extend(f.restriction.boundary_approach(40));
    pts.extend(plan.vectors(d).into_iter().filter(|x| f.restriction.contains(x)));
    pts.retain(|x| f.apply(x).is_finite());
    pts
}

/// Checks a candidate `(δ, β)` on every sampled pair `(x₁, x₂)`.
pub fn check_uniform_witness(
    f: &MapBetweenSpaces,
    epsilon: f64,
    alpha: f64,
    delta: f64,
    beta: f64,
    plan: &SamplingPlan,
) -> Result<(Option<Counterexample>, usize)> {
    check_eps_alpha(epsilon, alpha)?;
    check_eps_alpha(delta, beta)?;
    let base = uniform_base_points(f, plan);
    Ok(check_uniform_rung(f, &base, epsilon, alpha, delta, beta))
}

fn check_uniform_rung(
    f: &MapBetweenSpaces,
    base: &[Vector],
    epsilon: f64,
    alpha: f64,
    delta: f64,
    beta: f64,
) -> (Option<Counterexample>, usize) {
    let mut offsets = premise_boundary_offsets(&f.domain, delta, beta);
    offsets.extend(geometric_offsets(f.domain.dim()));
    let images: Vec<Vector> = base.iter().map(|x| f.apply(x)).collect();
    let results: Vec<(Option<Counterexample>, usize)> = base
        .par_iter()
        .zip(images.par_iter())
        .map(|(x2, fx2)| {
            let mut count = 0;
            let partners = offsets
                .iter()
                .map(|z| x2 + z)
                .filter(|x| f.restriction.contains(x))
                .chain(base.iter().cloned());
            for x1 in partners {
                let fx1 = f.apply(&x1);
                if !fx1.is_finite() {
                    continue;
                }
                count += 1;
                if let Some(c) = implication_failure(f, &x1, x2, &fx1, fx2, epsilon, alpha, delta, beta) {
                    return (Some(c), count);
                }
            }
            (None, count)
        })
        .collect();
    let total = results.iter().map(|r| r.1).sum();
    (results.into_iter().find_map(|r| r.0), total)
}

/// Searches the ladder for a `(δ, β)` serving every sampled pair.
///
/// Refuted means every rung, down to the finest, has a sampled pair that
/// violates an implication by more than rounding.
pub fn uniform_continuity_search(
    f: &MapBetweenSpaces,
    epsilon: f64,
    alpha: f64,
    plan: &SamplingPlan,
) -> Result<UniformWitness> {
    check_eps_alpha(epsilon, alpha)?;
    let base = uniform_base_points(f, plan);
    if base.is_empty() {
        return Err(invalid("restriction", "no sample points in the domain"));
    }
    let mut last = None;
    let mut pairs = 0;
    for i in 0..=LADDER_RUNGS {
        let (delta, beta) = ladder_rung(epsilon, alpha, i);
        let (cx, n) = check_uniform_rung(f, &base, epsilon, alpha, delta, beta);
        pairs = n;
        match cx {
            None => {
                return Ok(UniformWitness {
                    epsilon,
                    alpha,
                    delta: Some(delta),
                    beta: Some(beta),
                    rung: Some(i),
                    verdict: Verdict::Witnessed,
                    counterexample: None,
                    pairs,
                    base_points: base.len(),
                })
            }
            Some(c) => last = Some(c),
        }
    }
    let verdict = match &last {
        Some(c) if c.margin() > RELATION_SLACK => Verdict::Refuted,
        _ => Verdict::Inconclusive,
    };
    Ok(UniformWitness {
        epsilon,
        alpha,
        delta: None,
        beta: None,
        rung: None,
        verdict,
        counterexample: last,
        pairs,
        base_points: base.len(),
    })
}

/// Input and image Cauchy certificates of one sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct CauchyPreservation {
    pub input: ConvergenceCertificate,
    pub image: ConvergenceCertificate,
}

impl CauchyPreservation {
    pub fn preserved(&self) -> bool {
        self.image.is_certified()
    }

    /// A Cauchy input with a failed image shows `f` is not uniformly
    /// continuous.
    pub fn refutes_uniform_continuity(&self) -> bool {
        self.input.is_certified() && self.image.status == CertificateStatus::Failed
    }
}

/// Certifies the input Cauchy in the domain, then checks the image in the
/// codomain at the same `(r, t, p_max)`.
pub fn cauchy_preservation_check(
    f: &MapBetweenSpaces,
    seq: &PointSequence,
    r: f64,
    t: f64,
    p_max: usize,
) -> Result<CauchyPreservation> {
    if p_max == 0 {
        return Err(Error::Domain("p_max must be at least 1".into()));
    }
    let terms = seq.terms(seq.budget + p_max);
    if let Some(x) = terms.iter().find(|x| !f.restriction.contains(x)) {
        return Err(Error::InputNotCertified(format!(
            "{} leaves the domain at {x}",
            seq.rule.describe()
        )));
    }
    let input = cauchy_index_terms(&f.domain, &terms, seq.budget, r, t, p_max)?;
    if !input.is_certified() {
        return Err(Error::InputNotCertified(format!(
            "{} is {} to be Cauchy at r={r}, t={t}",
            seq.rule.describe(),
            input.status.name()
        )));
    }
    let images: Vec<Vector> = terms.iter().map(|x| f.apply(x)).collect();
    let image = cauchy_index_terms(&f.codomain, &images, seq.budget, r, t, p_max)?;
    Ok(CauchyPreservation { input, image })
}

/// Image Cauchy indices across budget doublings.
#[derive(Debug, Clone, PartialEq)]
pub struct CauchyDivergence {
    pub budgets: Vec<usize>,
    /// Largest failing index of the image at each budget.
    pub indices: Vec<Option<usize>>,
    /// Last index over first index.
    pub growth: f64,
    /// Indices never decrease and at least double from the first to the last
    /// budget.
    pub diverges: bool,
}

/// Runs [`cauchy_preservation_check`] at `budget·2ʲ`, `j = 0..=doublings`,
/// and tracks where the image last fails.
pub fn cauchy_image_divergence(
    f: &MapBetweenSpaces,
    seq: &PointSequence,
    r: f64,
    t: f64,
    p_max: usize,
    doublings: u32,
) -> Result<CauchyDivergence> {
    let mut budgets = Vec::new();
    let mut indices = Vec::new();
    for j in 0..=doublings {
        let b = seq.budget << j;
        let s = seq.clone().with_budget(b);
        let c = cauchy_preservation_check(f, &s, r, t, p_max)?;
        budgets.push(b);
        indices.push(c.image.last_violation);
    }
    let first = indices[0].unwrap_or(0) as f64;
    let last = indices.last().copied().flatten().unwrap_or(0) as f64;
    let growth = if first > 0.0 { last / first } else { 0.0 };
    let nondecreasing = indices.windows(2).all(|w| match (w[0], w[1]) {
        (Some(a), Some(b)) => b >= a,
        (None, _) => true,
        (Some(_), None) => false,
    });
    Ok(CauchyDivergence {
        budgets,
        indices,
        growth,
        diverges: first > 0.0 && nondecreasing && growth >= 2.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::norm_algebra::{TConorm, TNorm};
    use crate::point_convergence::SequenceRule;
    use crate::space::{make_example_family, make_standard_space};
    use crate::vector::ClassicalNorm;

    fn std1(k: f64) -> Arc<IfnSpace> {
        Arc::new(make_standard_space(k, ClassicalNorm::Absolute, 1, TNorm::Minimum, TConorm::Maximum).unwrap())
    }

    fn recip_map() -> MapBetweenSpaces {
        MapBetweenSpaces::new(
            Arc::new(make_example_family("reciprocal-domain").unwrap()),
            Arc::new(make_example_family("reciprocal-codomain:3").unwrap()),
            MapRule::Reciprocal,
            Region::open(0.0, 1.0),
        )
        .unwrap()
    }

    fn map(rule: MapRule, region: Region) -> MapBetweenSpaces {
        let s = std1(1.0);
        MapBetweenSpaces::new(s.clone(), s, rule, region).unwrap()
    }

    #[test]
    fn regions() {
        let r = Region::open(0.0, 1.0);
        assert!(r.contains(&0.5.into()) && !r.contains(&0.0.into()) && !r.contains(&1.0.into()));
        let c = Region::closed(0.1, 0.9);
        let i = r.intersect(&c).unwrap();
        assert_eq!(i, Region::closed(0.1, 0.9));
        let j = Region::interval(0.0, 1.0, true, false).intersect(&Region::open(0.0, 2.0)).unwrap();
        assert_eq!(j, Region::open(0.0, 1.0));
        assert_eq!(Region::closed(0.0, 1.0).grid(1, 11, 1e3).len(), 11);
        assert_eq!(Region::open(0.0, 1.0).grid(1, 11, 1e3).len(), 9);
        let b = Region::open(0.0, 1.0).boundary_approach(3);
        assert_eq!(b.len(), 6);
    }

    #[test]
    fn identity_is_witnessed_at_first_rung() {
        let f = map(MapRule::Identity, Region::Whole);
        let plan = SamplingPlan::default();
        for x0 in [-2.0, 0.0, 0.7] {
            let w = continuity_witness_search(&f, &x0.into(), 0.3, 0.2, &plan).unwrap();
            assert_eq!(w.verdict, Verdict::Witnessed);
            assert_eq!((w.delta, w.beta), (Some(0.3), Some(0.2)));
        }
    }

    #[test]
    fn reciprocal_is_witnessed_inside_unit_interval() {
        let f = recip_map();
        let plan = SamplingPlan::default();
        for x0 in [0.1, 0.25, 0.5, 0.9] {
            let w = continuity_witness_search(&f, &x0.into(), 1.0, 0.5, &plan).unwrap();
            assert_eq!(w.verdict, Verdict::Witnessed, "x0={x0}: {w:?}");
            // The witness must hold again when checked afresh, and for any
            // smaller pair.
            let (d, b) = (w.delta.unwrap(), w.beta.unwrap());
            assert!(check_witness(&f, &x0.into(), 1.0, 0.5, d, b, &plan).unwrap().0.is_none());
            assert!(check_witness(&f, &x0.into(), 1.0, 0.5, d / 3.0, b / 5.0, &plan).unwrap().0.is_none());
        }
    }

    #[test]
    fn step_is_refuted_at_zero() {
        let f = map(MapRule::Step { threshold: 0.0 }, Region::Whole);
        let w = continuity_witness_search(&f, &0.0.into(), 0.5, 0.4, &SamplingPlan::default()).unwrap();
        assert_eq!(w.verdict, Verdict::Refuted);
        let c = w.counterexample.unwrap();
        assert!(c.x.first() < 0.0);
        assert!((c.value - 1.0 / 3.0).abs() < 1e-15);
        assert!((c.threshold - 0.6).abs() < 1e-15);
    }

    #[test]
    fn outside_restriction_is_domain_error() {
        let f = recip_map();
        assert!(matches!(
            continuity_witness_search(&f, &0.0.into(), 1.0, 0.5, &SamplingPlan::default()),
            Err(Error::Domain(_))
        ));
        assert!(continuity_witness_search(&f, &0.5.into(), 1.0, 1.5, &SamplingPlan::default()).is_err());
    }

    #[test]
    fn combinators() {
        let f = map(MapRule::Identity, Region::Whole);
        let g = map(MapRule::Affine { a: -1.0, b: 1.0 }, Region::Whole);
        let s = combine(Combinator::Sum, &f, Some(&g)).unwrap();
        for x in [-3.0, 0.2, 7.5] {
            assert_eq!(s.apply(&x.into()).first(), 1.0);
        }
        let z = combine(Combinator::Scalar(0.0), &recip_map(), None).unwrap();
        assert_eq!(z.apply(&0.5.into()).first(), 0.0);
        let id = map(MapRule::Identity, Region::open(0.0, 1.0));
        let r = combine(Combinator::Reciprocal, &id, None).unwrap();
        assert_eq!(r.apply(&0.25.into()).first(), 4.0);
        assert_eq!(r.restriction, Region::open(0.0, 1.0));
        let on_line = map(MapRule::Identity, Region::closed(-1.0, 1.0));
        assert!(matches!(
            combine(Combinator::Reciprocal, &on_line, None),
            Err(Error::ZeroDivisor { at }) if at == 0.0
        ));
        let sign_flip = map(MapRule::Affine { a: 1.0, b: -0.3337 }, Region::closed(0.0, 1.0));
        assert!(matches!(
            combine(Combinator::Quotient, &f, Some(&sign_flip)),
            Err(Error::ZeroDivisor { .. })
        ));
        assert!(combine(Combinator::Sum, &f, None).is_err());
    }

    #[test]
    fn sequential_checks() {
        let f = recip_map();
        let seq = PointSequence::new(SequenceRule::reciprocal(0.5, 1.0, 10.0));
        let probes = [(0.5, 1.0), (0.1, 0.1), (0.01, 0.1)];
        let rep = sequential_continuity_check(&f, &0.5.into(), &[seq], &probes).unwrap();
        assert_eq!(rep.status(), CertificateStatus::Certified);

        let step = map(MapRule::Step { threshold: 0.0 }, Region::Whole);
        let left = PointSequence::new(SequenceRule::reciprocal(0.0, -1.0, 1.0));
        let rep = sequential_continuity_check(&step, &0.0.into(), &[left], &probes).unwrap();
        assert_eq!(rep.status(), CertificateStatus::Failed);

        let bad_input = PointSequence::new(SequenceRule::reciprocal(0.7, 1.0, 1.0)).with_budget(1000);
        assert!(matches!(
            sequential_continuity_check(&f, &0.5.into(), &[bad_input], &probes),
            Err(Error::InputNotCertified(_))
        ));
    }

    #[test]
    fn equivalence_on_examples() {
        let plan = SamplingPlan::default();
        let probes = [(0.5, 1.0), (0.1, 0.1)];
        let f = recip_map();
        let seq = PointSequence::new(SequenceRule::reciprocal(0.5, 1.0, 10.0)).with_budget(20_000);
        let e = equivalence_probe(&f, &0.5.into(), 1.0, 0.5, &[seq], &probes, &plan).unwrap();
        assert_eq!(e.agreement(), Some(true));
        let step = map(MapRule::Step { threshold: 0.0 }, Region::Whole);
        let left = PointSequence::new(SequenceRule::reciprocal(0.0, -1.0, 1.0)).with_budget(20_000);
        let e = equivalence_probe(&step, &0.0.into(), 0.5, 0.4, &[left], &probes, &plan).unwrap();
        assert_eq!(e.agreement(), Some(true));
        assert_eq!(e.witness.verdict, Verdict::Refuted);
    }

    #[test]
    fn uniform_continuity() {
        let plan = SamplingPlan::default();
        let twice = map(MapRule::Affine { a: 2.0, b: 0.0 }, Region::closed(0.0, 1.0));
        let w = uniform_continuity_search(&twice, 0.5, 0.3, &plan).unwrap();
        assert_eq!(w.verdict, Verdict::Witnessed);
        // δ = ε/2 with β = α works by the scaling identity.
        assert!(check_uniform_witness(&twice, 0.5, 0.3, 0.25, 0.3, &plan).unwrap().0.is_none());
        // δ = ε with β = α does not.
        assert!(check_uniform_witness(&twice, 0.5, 0.3, 0.5, 0.3, &plan).unwrap().0.is_some());

        let id = map(MapRule::Identity, Region::Whole);
        let w = uniform_continuity_search(&id, 0.5, 0.3, &plan).unwrap();
        assert_eq!((w.delta, w.beta), (Some(0.5), Some(0.3)));

        let w = uniform_continuity_search(&recip_map(), 1.0, 0.5, &plan).unwrap();
        assert_eq!(w.verdict, Verdict::Refuted);
    }

    #[test]
    fn cauchy_preservation() {
        let seq = PointSequence::new(SequenceRule::reciprocal(0.0, 1.0, 1.0)).with_budget(2_000);
        let c = cauchy_preservation_check(&recip_map(), &seq, 0.5, 1.0, 10).unwrap();
        assert!(c.input.is_certified());
        assert!(c.refutes_uniform_continuity());
        let twice = map(MapRule::Affine { a: 2.0, b: 0.0 }, Region::closed(0.0, 1.0));
        let c = cauchy_preservation_check(&twice, &seq, 0.5, 1.0, 10).unwrap();
        assert!(c.preserved());
        let k = map(MapRule::Constant(4.0), Region::Whole);
        assert!(cauchy_preservation_check(&k, &seq, 0.5, 1.0, 10).unwrap().preserved());

        let d = cauchy_image_divergence(&recip_map(), &seq, 0.5, 1.0, 10, 3).unwrap();
        assert!(d.diverges, "{d:?}");
        assert!(d.growth >= 2.0);
    }
}
