//! Intuitionistic fuzzy normed spaces over ℝᵈ and the sampled axiom checker.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{invalid, positive, Error, Result};
use crate::norm_algebra::{TConorm, TNorm, UnitGrid};
use crate::report::{Tally, ViolationReport};
use crate::sampling::SamplingPlan;
use crate::vector::{ClassicalNorm, Vector};

/// Slack for the non-strict relations (`≤`, `=`) of the axioms when they are
/// only expected to hold up to rounding. Strict relations are compared exactly.
pub const RELATION_SLACK: f64 = 1e-12;

/// Tolerance for the `t → ∞` limits approximated along the ladder.
pub const TOL_LIMIT: f64 = 1e-6;

type MembershipFn = dyn Fn(&Vector, f64) -> f64 + Send + Sync;

/// A user-supplied closed-form membership function.
#[derive(Clone)]
pub struct CustomMembership {
    pub name: String,
    f: Arc<MembershipFn>,
}

impl CustomMembership {
    pub fn new(name: impl Into<String>, f: impl Fn(&Vector, f64) -> f64 + Send + Sync + 'static) -> Self {
        CustomMembership {
            name: name.into(),
            f: Arc::new(f),
        }
    }
}

impl fmt::Debug for CustomMembership {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CustomMembership({})", self.name)
    }
}

/// Membership values tabulated over `(‖x‖, t)`.
///
/// Interpolation is linear in `‖x‖` and in `ln t`; outside the table the
/// nearest edge value is used.
#[derive(Debug, Clone, PartialEq)]
pub struct MembershipTable {
    pub norm: ClassicalNorm,
    radii: Vec<f64>,
    times: Vec<f64>,
    values: Vec<f64>,
}

impl MembershipTable {
    pub fn new(norm: ClassicalNorm, radii: Vec<f64>, times: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if radii.is_empty() || times.is_empty() || values.len() != radii.len() * times.len() {
            return Err(invalid("table", "values must be radii.len() × times.len()"));
        }
        if radii.windows(2).any(|w| !(w[0] < w[1])) || radii[0] < 0.0 {
            return Err(invalid("radii", "must be nonnegative and strictly increasing"));
        }
        if times.windows(2).any(|w| !(w[0] < w[1])) || times[0] <= 0.0 {
            return Err(invalid("times", "must be positive and strictly increasing"));
        }
        if values.iter().any(|v| !(0.0..=1.0).contains(v)) {
            return Err(invalid("values", "must lie in [0, 1]"));
        }
        Ok(MembershipTable {
            norm,
            radii,
            times,
            values,
        })
    }

    /// Tabulates `f(‖x‖, t)` on the given nodes.
    pub fn from_fn(
        norm: ClassicalNorm,
        radii: Vec<f64>,
        times: Vec<f64>,
        f: impl Fn(f64, f64) -> f64,
    ) -> Result<Self> {
        let values = radii
            .iter()
            .flat_map(|&r| times.iter().map(move |&t| (r, t)))
            .map(|(r, t)| f(r, t).clamp(0.0, 1.0))
            .collect();
        MembershipTable::new(norm, radii, times, values)
    }

    fn eval(&self, x: &Vector, t: f64) -> f64 {
        let (i, u) = bracket(&self.radii, self.norm.norm(x), |v| v);
        let (j, w) = bracket(&self.times, t, f64::ln);
        let nt = self.times.len();
        let at = |a: usize, b: usize| self.values[a * nt + b];
        let i1 = (i + 1).min(self.radii.len() - 1);
        let j1 = (j + 1).min(nt - 1);
        let lo = (1.0 - w) * at(i, j) + w * at(i, j1);
        let hi = (1.0 - w) * at(i1, j) + w * at(i1, j1);
        ((1.0 - u) * lo + u * hi).clamp(0.0, 1.0)
    }
}

/// Index of the cell containing `v` and the fractional position within it,
/// after mapping nodes and `v` through `map`.
fn bracket(nodes: &[f64], v: f64, map: impl Fn(f64) -> f64) -> (usize, f64) {
    if nodes.len() == 1 || v <= nodes[0] {
        return (0, 0.0);
    }
    let last = nodes.len() - 1;
    if v >= nodes[last] {
        return (last, 0.0);
    }
    let i = nodes.partition_point(|&n| n <= v) - 1;
    let (a, b) = (map(nodes[i]), map(nodes[i + 1]));
    (i, (map(v) - a) / (b - a))
}

/// Which of the two fuzzy sets a standard membership function describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Grade {
    /// μ, the degree of membership.
    Membership,
    /// ν, the degree of non-membership.
    NonMembership,
}

/// A fuzzy set on `V × ℝ⁺`.
#[derive(Debug, Clone)]
pub enum MembershipFunction {
    /// `μ = t/(t + k‖x‖)` or `ν = k‖x‖/(t + k‖x‖)`.
    Standard { k: f64, norm: ClassicalNorm, grade: Grade },
    Tabulated(Arc<MembershipTable>),
    Custom(CustomMembership),
}

impl MembershipFunction {
    pub fn standard_mu(k: f64, norm: ClassicalNorm) -> Self {
        MembershipFunction::Standard {
            k,
            norm,
            grade: Grade::Membership,
        }
    }

    pub fn standard_nu(k: f64, norm: ClassicalNorm) -> Self {
        MembershipFunction::Standard {
            k,
            norm,
            grade: Grade::NonMembership,
        }
    }

    pub fn custom(name: impl Into<String>, f: impl Fn(&Vector, f64) -> f64 + Send + Sync + 'static) -> Self {
        MembershipFunction::Custom(CustomMembership::new(name, f))
    }

    /// Evaluation without domain checks.
    pub fn eval(&self, x: &Vector, t: f64) -> f64 {
        match self {
            MembershipFunction::Standard { k, norm, grade } => {
                let (mu, nu) = standard_pair(*k, norm.norm(x), t);
                match grade {
                    Grade::Membership => mu,
                    Grade::NonMembership => nu,
                }
            }
            MembershipFunction::Tabulated(table) => table.eval(x, t),
            MembershipFunction::Custom(c) => (c.f)(x, t),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            MembershipFunction::Standard { k, norm, grade } => match grade {
                Grade::Membership => format!("t/(t + {k}·{}(x))", norm.name()),
                Grade::NonMembership => format!("{k}·{n}(x)/(t + {k}·{n}(x))", n = norm.name()),
            },
            MembershipFunction::Tabulated(t) => format!(
                "tabulated over {} radii × {} times ({})",
                t.radii.len(),
                t.times.len(),
                t.norm.name()
            ),
            MembershipFunction::Custom(c) => c.name.clone(),
        }
    }
}

/// The standard pair at `‖x‖ = n`.
///
/// The smaller of the two quotients is computed directly and the other as its
/// complement, so `μ + ν = 1` holds exactly in floating point, and scaling
/// `x` and `t` by a power of two leaves both values bit-identical.
pub fn standard_pair(k: f64, n: f64, t: f64) -> (f64, f64) {
    let kn = k * n;
    let s = t + kn;
    if kn <= t {
        let nu = kn / s;
        (1.0 - nu, nu)
    } else {
        let mu = t / s;
        (mu, 1.0 - mu)
    }
}

/// How many of the optional conditions a space is declared to satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AxiomTier {
    /// (i)–(xi).
    Core,
    /// Adds the idempotency condition (xii) and, when requested, (xiii)/(xiv).
    Idempotent,
    /// Adds strict monotonicity (xv)/(xvi).
    Strict,
}

impl AxiomTier {
    pub fn name(self) -> &'static str {
        match self {
            AxiomTier::Core => "core",
            AxiomTier::Idempotent => "idempotent",
            AxiomTier::Strict => "strict",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "core" => Some(AxiomTier::Core),
            "idempotent" => Some(AxiomTier::Idempotent),
            "strict" => Some(AxiomTier::Strict),
            _ => None,
        }
    }
}

/// The numbered conditions on (μ, ν, ∗, ⋄).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum IfnAxiom {
    /// μ + ν ≤ 1.
    I,
    /// μ > 0.
    II,
    /// μ(x,t) = 1 iff x = θ.
    III,
    /// μ(cx,t) = μ(x,t/|c|).
    IV,
    /// μ(x,s) ∗ μ(y,t) ≤ μ(x+y,s+t).
    V,
    /// μ(x,·) non-decreasing with limit 1.
    VI,
    /// ν < 1.
    VII,
    /// ν(x,t) = 0 iff x = θ.
    VIII,
    /// ν(cx,t) = ν(x,t/|c|).
    IX,
    /// ν(x,s) ⋄ ν(y,t) ≥ ν(x+y,s+t).
    X,
    /// ν(x,·) non-increasing with limit 0.
    XI,
    /// a ∗ a = a and a ⋄ a = a.
    XII,
    /// μ(x,t) > 0 for all t ⟹ x = θ, as literally stated.
    XIII,
    /// ν(x,t) < 1 for all t ⟹ x = θ, as literally stated.
    XIV,
    /// μ(x,·) strictly increasing where 0 < μ < 1.
    XV,
    /// ν(x,·) strictly decreasing where 0 < ν < 1.
    XVI,
}

impl IfnAxiom {
    pub const ALL: [IfnAxiom; 16] = [
        IfnAxiom::I,
        IfnAxiom::II,
        IfnAxiom::III,
        IfnAxiom::IV,
        IfnAxiom::V,
        IfnAxiom::VI,
        IfnAxiom::VII,
        IfnAxiom::VIII,
        IfnAxiom::IX,
        IfnAxiom::X,
        IfnAxiom::XI,
        IfnAxiom::XII,
        IfnAxiom::XIII,
        IfnAxiom::XIV,
        IfnAxiom::XV,
        IfnAxiom::XVI,
    ];

    pub fn numeral(self) -> &'static str {
        match self {
            IfnAxiom::I => "i",
            IfnAxiom::II => "ii",
            IfnAxiom::III => "iii",
            IfnAxiom::IV => "iv",
            IfnAxiom::V => "v",
            IfnAxiom::VI => "vi",
            IfnAxiom::VII => "vii",
            IfnAxiom::VIII => "viii",
            IfnAxiom::IX => "ix",
            IfnAxiom::X => "x",
            IfnAxiom::XI => "xi",
            IfnAxiom::XII => "xii",
            IfnAxiom::XIII => "xiii",
            IfnAxiom::XIV => "xiv",
            IfnAxiom::XV => "xv",
            IfnAxiom::XVI => "xvi",
        }
    }
}

impl fmt::Display for IfnAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.numeral())
    }
}

/// A vector space ℝᵈ with an intuitionistic fuzzy norm (μ, ν) over (∗, ⋄).
#[derive(Debug, Clone)]
pub struct IfnSpace {
    dim: usize,
    mu: MembershipFunction,
    nu: MembershipFunction,
    tnorm: TNorm,
    tconorm: TConorm,
    tier: AxiomTier,
    provenance: String,
}

/// Options of [`check_ifn_axioms_with`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CheckOptions {
    /// Also check (xiii)/(xiv) as literally stated. Together with (ii) and
    /// (vii) they admit only the trivial space, so any nonzero sample point
    /// violates them; off by default.
    pub literal_xiii_xiv: bool,
}

impl IfnSpace {
    /// Builds a space and checks the declared tier on [`SamplingPlan::light`].
    pub fn new(
        dim: usize,
        mu: MembershipFunction,
        nu: MembershipFunction,
        tnorm: TNorm,
        tconorm: TConorm,
        tier: AxiomTier,
        provenance: impl Into<String>,
    ) -> Result<Self> {
        let space = IfnSpace::new_unchecked(dim, mu, nu, tnorm, tconorm, tier, provenance)?;
        let report = check_ifn_axioms(&space, tier, &SamplingPlan::light());
        if !report.is_clean() {
            let failed: Vec<String> = report.failed_axioms().iter().map(|a| a.to_string()).collect();
            return Err(Error::AxiomFailure(format!(
                "{} violates {} at tier {}",
                space.provenance,
                failed.join(", "),
                tier.name()
            )));
        }
        Ok(space)
    }

    /// Builds a space without the construction-time check; used for spaces
    /// that are meant to be broken.
    pub fn new_unchecked(
        dim: usize,
        mu: MembershipFunction,
        nu: MembershipFunction,
        tnorm: TNorm,
        tconorm: TConorm,
        tier: AxiomTier,
        provenance: impl Into<String>,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(invalid("dimension", "must be at least 1"));
        }
        for m in [&mu, &nu] {
            if let MembershipFunction::Standard { k, norm, .. } = m {
                positive("k", *k)?;
                norm.validate_dim(dim)?;
            }
        }
        Ok(IfnSpace {
            dim,
            mu,
            nu,
            tnorm,
            tconorm,
            tier,
            provenance: provenance.into(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn tnorm(&self) -> &TNorm {
        &self.tnorm
    }
    pub fn tconorm(&self) -> &TConorm {
        &self.tconorm
    }
    pub fn tier(&self) -> AxiomTier {
        self.tier
    }
    pub fn provenance(&self) -> &str {
        &self.provenance
    }
    pub fn mu_function(&self) -> &MembershipFunction {
        &self.mu
    }
    pub fn nu_function(&self) -> &MembershipFunction {
        &self.nu
    }

    /// `(k, ‖·‖)` when both fuzzy sets are the standard pair for one norm.
    pub fn standard_params(&self) -> Option<(f64, ClassicalNorm)> {
        match (&self.mu, &self.nu) {
            (
                MembershipFunction::Standard {
                    k: k1,
                    norm: n1,
                    grade: Grade::Membership,
                },
                MembershipFunction::Standard {
                    k: k2,
                    norm: n2,
                    grade: Grade::NonMembership,
                },
            ) if k1 == k2 && n1 == n2 => Some((*k1, *n1)),
            _ => None,
        }
    }

    fn check_point(&self, x: &Vector, t: f64) -> Result<()> {
        if x.dim() != self.dim {
            return Err(Error::Domain(format!(
                "vector of dimension {} in a space of dimension {}",
                x.dim(),
                self.dim
            )));
        }
        if !(t > 0.0) || t.is_nan() {
            return Err(Error::Domain(format!("t = {t} is not positive")));
        }
        if !x.is_finite() {
            return Err(Error::Domain(format!("non-finite vector {x}")));
        }
        Ok(())
    }

    pub fn mu(&self, x: &Vector, t: f64) -> Result<f64> {
        self.check_point(x, t)?;
        Ok(self.mu.eval(x, t))
    }

    pub fn nu(&self, x: &Vector, t: f64) -> Result<f64> {
        self.check_point(x, t)?;
        Ok(self.nu.eval(x, t))
    }

    /// `(μ(x,t), ν(x,t))` without domain checks.
    pub fn grades(&self, x: &Vector, t: f64) -> (f64, f64) {
        if let Some((k, norm)) = self.standard_params() {
            return standard_pair(k, norm.norm(x), t);
        }
        (self.mu.eval(x, t), self.nu.eval(x, t))
    }

    /// Whether `μ(z,t) > 1 − r` and `ν(z,t) < r`, the shape shared by
    /// convergence, continuity and open balls.
    pub fn within(&self, z: &Vector, r: f64, t: f64) -> bool {
        let (mu, nu) = self.grades(z, t);
        mu > 1.0 - r && nu < r
    }

    pub fn describe(&self) -> String {
        format!(
            "{} (d={}, μ={}, ν={}, ∗={}, ⋄={}, tier {})",
            self.provenance,
            self.dim,
            self.mu.describe(),
            self.nu.describe(),
            self.tnorm.name(),
            self.tconorm.name(),
            self.tier.name()
        )
    }
}

/// The standard space `μ = t/(t + k‖x‖)`, `ν = k‖x‖/(t + k‖x‖)`.
///
/// The declared tier is strict when both operations are idempotent and core
/// otherwise.
pub fn make_standard_space(k: f64, norm: ClassicalNorm, dim: usize, tnorm: TNorm, tconorm: TConorm) -> Result<IfnSpace> {
    positive("k", k)?;
    norm.validate_dim(dim)?;
    let tier = if tnorm.idempotent() && tconorm.idempotent() {
        AxiomTier::Strict
    } else {
        AxiomTier::Core
    };
    IfnSpace::new(
        dim,
        MembershipFunction::standard_mu(k, norm),
        MembershipFunction::standard_nu(k, norm),
        tnorm,
        tconorm,
        tier,
        format!("standard(k={k}, {}, d={dim})", norm.name()),
    )
}

/// Named spaces used by the scenario catalog.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExampleFamily {
    /// Domain of the reciprocal-map example: `μ = t/(t + |x|)` on ℝ.
    ReciprocalDomain,
    /// Codomain of the reciprocal-map example: `μ = t/(t + k|x|)` on ℝ.
    ReciprocalCodomain { k: f64 },
    /// The space of the function-sequence examples: `μ = t/(t + |x|)` on ℝ.
    SequenceSpace,
}

impl ExampleFamily {
    /// Parses `reciprocal-domain`, `reciprocal-codomain[:k]` or
    /// `sequence-space`.
    pub fn parse(tag: &str) -> Result<Self> {
        let (name, arg) = match tag.split_once(':') {
            Some((n, a)) => (n, Some(a)),
            None => (tag, None),
        };
        match (name, arg) {
            ("reciprocal-domain", None) => Ok(ExampleFamily::ReciprocalDomain),
            ("sequence-space", None) => Ok(ExampleFamily::SequenceSpace),
            ("reciprocal-codomain", None) => Ok(ExampleFamily::ReciprocalCodomain { k: 1.0 }),
            ("reciprocal-codomain", Some(a)) => {
                let k = a
                    .trim()
                    .parse::<f64>()
                    .map_err(|_| Error::UnknownTag(tag.to_string()))?;
                Ok(ExampleFamily::ReciprocalCodomain { k })
            }
            _ => Err(Error::UnknownTag(tag.to_string())),
        }
    }

    pub fn tag(self) -> String {
        match self {
            ExampleFamily::ReciprocalDomain => "reciprocal-domain".into(),
            ExampleFamily::ReciprocalCodomain { k } => format!("reciprocal-codomain:{k}"),
            ExampleFamily::SequenceSpace => "sequence-space".into(),
        }
    }
}

pub fn make_example_family(tag: &str) -> Result<IfnSpace> {
    let family = ExampleFamily::parse(tag)?;
    let k = match family {
        ExampleFamily::ReciprocalCodomain { k } => k,
        _ => 1.0,
    };
    let mut space = make_standard_space(k, ClassicalNorm::Absolute, 1, TNorm::Minimum, TConorm::Maximum)?;
    space.provenance = family.tag();
    Ok(space)
}

/// Values of μ and ν along the `t → ∞` ladder.
#[derive(Debug, Clone, PartialEq)]
pub struct LimitEstimate {
    pub mu_limit: f64,
    pub nu_limit: f64,
    pub mu_converged: bool,
    pub nu_converged: bool,
}

impl LimitEstimate {
    pub fn converged(&self) -> bool {
        self.mu_converged && self.nu_converged
    }
}

/// Approximates `lim_{t→∞}` of μ(x,·) and ν(x,·) along `ladder`.
///
/// μ converged means its last two ladder values differ by less than
/// [`TOL_LIMIT`] and the last exceeds `1 − TOL_LIMIT`; dually for ν and 0.
pub fn limit_at_infinity(space: &IfnSpace, x: &Vector, ladder: &[f64]) -> Result<LimitEstimate> {
    if ladder.len() < 2 {
        return Err(invalid("ladder", "needs at least two rungs"));
    }
    let mut mus = Vec::with_capacity(ladder.len());
    let mut nus = Vec::with_capacity(ladder.len());
    for &t in ladder {
        mus.push(space.mu(x, t)?);
        nus.push(space.nu(x, t)?);
    }
    let n = ladder.len();
    let (m1, m0) = (mus[n - 1], mus[n - 2]);
    let (v1, v0) = (nus[n - 1], nus[n - 2]);
    Ok(LimitEstimate {
        mu_limit: m1,
        nu_limit: v1,
        mu_converged: (m1 - m0).abs() < TOL_LIMIT && m1 > 1.0 - TOL_LIMIT,
        nu_converged: (v1 - v0).abs() < TOL_LIMIT && v1 < TOL_LIMIT,
    })
}

/// Axioms checked at `tier`.
pub fn axioms_for(tier: AxiomTier, options: CheckOptions) -> Vec<IfnAxiom> {
    IfnAxiom::ALL
        .iter()
        .copied()
        .filter(|a| match a {
            IfnAxiom::XII => tier >= AxiomTier::Idempotent,
            IfnAxiom::XIII | IfnAxiom::XIV => tier >= AxiomTier::Idempotent && options.literal_xiii_xiv,
            IfnAxiom::XV | IfnAxiom::XVI => tier >= AxiomTier::Strict,
            _ => true,
        })
        .collect()
}

pub fn check_ifn_axioms(space: &IfnSpace, tier: AxiomTier, plan: &SamplingPlan) -> ViolationReport<IfnAxiom> {
    check_ifn_axioms_with(space, tier, plan, CheckOptions::default())
}

/// Samples every condition of `tier` on `plan`.
///
/// Work is split over points in parallel; partial tallies are merged in plan
/// order so the report does not depend on scheduling.
pub fn check_ifn_axioms_with(
    space: &IfnSpace,
    tier: AxiomTier,
    plan: &SamplingPlan,
    options: CheckOptions,
) -> ViolationReport<IfnAxiom> {
    let axioms = axioms_for(tier, options);
    let plan_desc = plan.describe(space.dim);
    if let Err(e) = plan.validate() {
        // An invalid plan samples nothing; report it as such.
        return ViolationReport {
            outcomes: axioms.iter().map(|&a| Tally::new(a).finish()).collect(),
            plan: format!("{plan_desc} (invalid: {e})"),
        };
    }
    let points = plan.vectors(space.dim);
    let ts = plan.sorted_t();

    let pointwise = points
        .par_chunks(64)
        .map(|chunk| {
            let mut tallies = PointTallies::new();
            for x in chunk {
                tallies.visit(space, x, &ts, plan, options);
            }
            tallies
        })
        .collect::<Vec<_>>();
    let mut merged = PointTallies::new();
    for p in pointwise {
        merged.merge(p);
    }

    let pool = plan.pair_vectors(space.dim);
    let pairwise = pool
        .par_iter()
        .enumerate()
        .map(|(i, x)| {
            let mut v = Tally::new(IfnAxiom::V);
            let mut xt = Tally::new(IfnAxiom::X);
            for y in &pool[i..] {
                let sum = x + y;
                for &s in &ts {
                    let (mx, nx) = space.grades(x, s);
                    for &t in &ts {
                        let (my, ny) = space.grades(y, t);
                        let (ms, ns) = space.grades(&sum, s + t);
                        let lhs = space.tnorm.eval(mx, my);
                        v.record(lhs <= ms + RELATION_SLACK, lhs, ms, || {
                            format!("x={x}, s={s}, y={y}, t={t}")
                        });
                        let lhs = space.tconorm.eval(nx, ny);
                        xt.record(lhs + RELATION_SLACK >= ns, lhs, ns, || {
                            format!("x={x}, s={s}, y={y}, t={t}")
                        });
                    }
                }
            }
            (v, xt)
        })
        .collect::<Vec<_>>();
    let mut v = Tally::new(IfnAxiom::V);
    let mut xt = Tally::new(IfnAxiom::X);
    for (a, b) in pairwise {
        v.merge(a);
        xt.merge(b);
    }

    let mut xii = Tally::new(IfnAxiom::XII);
    if axioms.contains(&IfnAxiom::XII) {
        let grid = UnitGrid::uniform(11).with_random(4, plan.seed);
        for &a in grid.points() {
            let v = space.tnorm.eval(a, a);
            xii.record(v == a, v, a, || format!("∗: a={a}"));
        }
        for &a in grid.points() {
            let v = space.tconorm.eval(a, a);
            xii.record(v == a, v, a, || format!("⋄: a={a}"));
        }
    }

    let mut all = merged.into_map();
    all.push((IfnAxiom::V, v));
    all.push((IfnAxiom::X, xt));
    all.push((IfnAxiom::XII, xii));
    let mut outcomes = Vec::with_capacity(axioms.len());
    for a in &axioms {
        if let Some(pos) = all.iter().position(|(ax, _)| ax == a) {
            outcomes.push(all.swap_remove(pos).1.finish());
        }
    }
    ViolationReport {
        outcomes,
        plan: plan_desc,
    }
}

/// Tallies of the conditions checked one point at a time.
struct PointTallies {
    tallies: Vec<(IfnAxiom, Tally<IfnAxiom>)>,
}

impl PointTallies {
    const AXIOMS: [IfnAxiom; 13] = [
        IfnAxiom::I,
        IfnAxiom::II,
        IfnAxiom::III,
        IfnAxiom::IV,
        IfnAxiom::VI,
        IfnAxiom::VII,
        IfnAxiom::VIII,
        IfnAxiom::IX,
        IfnAxiom::XI,
        IfnAxiom::XIII,
        IfnAxiom::XIV,
        IfnAxiom::XV,
        IfnAxiom::XVI,
    ];

    fn new() -> Self {
        PointTallies {
            tallies: Self::AXIOMS.iter().map(|&a| (a, Tally::new(a))).collect(),
        }
    }

    fn get(&mut self, a: IfnAxiom) -> &mut Tally<IfnAxiom> {
        let i = Self::AXIOMS.iter().position(|&b| b == a).expect("pointwise axiom");
        &mut self.tallies[i].1
    }

    fn merge(&mut self, other: PointTallies) {
        for ((_, mine), (_, theirs)) in self.tallies.iter_mut().zip(other.tallies) {
            mine.merge(theirs);
        }
    }

    fn into_map(self) -> Vec<(IfnAxiom, Tally<IfnAxiom>)> {
        self.tallies
    }

    fn visit(&mut self, space: &IfnSpace, x: &Vector, ts: &[f64], plan: &SamplingPlan, options: CheckOptions) {
        let theta = x.is_zero();
        let grades: Vec<(f64, f64)> = ts.iter().map(|&t| space.grades(x, t)).collect();
        for (&t, &(mu, nu)) in ts.iter().zip(&grades) {
            let at = || format!("x={x}, t={t}");
            self.get(IfnAxiom::I).record(mu + nu <= 1.0 + RELATION_SLACK, mu + nu, 1.0, at);
            self.get(IfnAxiom::II).record(mu > 0.0, mu, 0.0, at);
            self.get(IfnAxiom::VII).record(nu < 1.0, nu, 1.0, at);
            // x = θ ⟺ μ = 1, checked in both directions.
            self.get(IfnAxiom::III).record(theta == (mu == 1.0), mu, 1.0, at);
            self.get(IfnAxiom::VIII).record(theta == (nu == 0.0), nu, 0.0, at);

            for &c in &plan.scalars {
                let cx = x.scale(c);
                let ta = t / c.abs();
                let (mu_cx, nu_cx) = space.grades(&cx, t);
                let (mu_s, nu_s) = space.grades(x, ta);
                // Powers of two scale exactly; other scalars round.
                let slack = if is_power_of_two(c.abs()) { 0.0 } else { RELATION_SLACK };
                let w = || format!("x={x}, t={t}, c={c}");
                self.get(IfnAxiom::IV).record((mu_cx - mu_s).abs() <= slack, mu_cx, mu_s, w);
                self.get(IfnAxiom::IX).record((nu_cx - nu_s).abs() <= slack, nu_cx, nu_s, w);
            }
        }

        for (i, w) in grades.windows(2).enumerate() {
            let (t0, t1) = (ts[i], ts[i + 1]);
            let ((m0, n0), (m1, n1)) = (w[0], w[1]);
            let at = || format!("x={x}, t={t0} < {t1}");
            self.get(IfnAxiom::VI).record(m0 <= m1 + RELATION_SLACK, m0, m1, at);
            self.get(IfnAxiom::XI).record(n0 + RELATION_SLACK >= n1, n0, n1, at);
            if m0 > 0.0 && m0 < 1.0 && m1 > 0.0 && m1 < 1.0 {
                self.get(IfnAxiom::XV).record(m0 < m1, m0, m1, at);
            }
            if n0 > 0.0 && n0 < 1.0 && n1 > 0.0 && n1 < 1.0 {
                self.get(IfnAxiom::XVI).record(n0 > n1, n0, n1, at);
            }
        }

        if let Ok(lim) = limit_at_infinity(space, x, &plan.t_infinity_ladder) {
            let top = plan.t_infinity_ladder.last().copied().unwrap_or(f64::INFINITY);
            let at = || format!("x={x}, t→∞ (ladder up to {top})");
            self.get(IfnAxiom::VI).record(lim.mu_converged, lim.mu_limit, 1.0, at);
            self.get(IfnAxiom::XI).record(lim.nu_converged, lim.nu_limit, 0.0, at);
        }

        if options.literal_xiii_xiv && !theta {
            // Contrapositive on x ≠ θ: some sampled t must give μ ≤ 0 (resp. ν ≥ 1).
            let min_mu = grades.iter().map(|g| g.0).fold(f64::INFINITY, f64::min);
            let max_nu = grades.iter().map(|g| g.1).fold(f64::NEG_INFINITY, f64::max);
            let at = || format!("x={x}, all sampled t");
            self.get(IfnAxiom::XIII).record(min_mu <= 0.0, min_mu, 0.0, at);
            self.get(IfnAxiom::XIV).record(max_nu >= 1.0, max_nu, 1.0, at);
        }
    }
}

fn is_power_of_two(c: f64) -> bool {
    c > 0.0 && c.is_normal() && {
        let bits = c.to_bits();
        bits & ((1u64 << 52) - 1) == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn std1(k: f64) -> IfnSpace {
        make_standard_space(k, ClassicalNorm::Absolute, 1, TNorm::Minimum, TConorm::Maximum).unwrap()
    }

    #[test]
    fn standard_values() {
        let s = std1(1.0);
        assert_eq!(s.mu(&1.0.into(), 1.0).unwrap(), 0.5);
        assert_eq!(s.nu(&1.0.into(), 1.0).unwrap(), 0.5);
        assert_eq!(s.mu(&2.0.into(), 2.0).unwrap(), 0.5);
        let s2 = std1(2.0);
        assert!((s2.mu(&3.0.into(), 4.0).unwrap() - 0.4).abs() < 1e-15);
        assert!((s2.nu(&3.0.into(), 4.0).unwrap() - 0.6).abs() < 1e-15);
        for t in [0.01, 1.0, 1e9] {
            assert_eq!(s2.mu(&0.0.into(), t).unwrap(), 1.0);
            assert_eq!(s2.nu(&0.0.into(), t).unwrap(), 0.0);
        }
    }

    #[test]
    fn domain_errors() {
        let s = std1(1.0);
        assert!(matches!(s.mu(&1.0.into(), 0.0), Err(Error::Domain(_))));
        assert!(matches!(s.nu(&1.0.into(), -1.0), Err(Error::Domain(_))));
        assert!(matches!(s.mu(&Vector::new([1.0, 2.0]), 1.0), Err(Error::Domain(_))));
        assert!(make_standard_space(0.0, ClassicalNorm::Absolute, 1, TNorm::Minimum, TConorm::Maximum).is_err());
        assert!(make_standard_space(-1.0, ClassicalNorm::Euclidean, 2, TNorm::Minimum, TConorm::Maximum).is_err());
    }

    #[test]
    fn standard_pair_sums_to_one() {
        for k in [0.5, 1.0, 2.0, 3.0] {
            for n in [0.0, 1e-9, 0.1, 0.3, 1.0, 7.0, 1e6] {
                for t in [0.01, 0.1, 1.0, 3.0, 1e12] {
                    let (m, v) = standard_pair(k, n, t);
                    assert_eq!(m + v, 1.0, "k={k} n={n} t={t}");
                }
            }
        }
    }

    #[test]
    fn tiers_of_standard_spaces() {
        assert_eq!(std1(1.0).tier(), AxiomTier::Strict);
        let p = make_standard_space(1.0, ClassicalNorm::Absolute, 1, TNorm::Product, TConorm::ProbabilisticSum).unwrap();
        assert_eq!(p.tier(), AxiomTier::Core);
    }

    #[test]
    fn example_families() {
        let a = make_example_family("reciprocal-domain").unwrap();
        assert_eq!(a.standard_params(), Some((1.0, ClassicalNorm::Absolute)));
        let b = make_example_family("reciprocal-codomain:3").unwrap();
        assert_eq!(b.standard_params(), Some((3.0, ClassicalNorm::Absolute)));
        let c = make_example_family("sequence-space").unwrap();
        assert_eq!(c.dim(), 1);
        assert!(matches!(make_example_family("nope"), Err(Error::UnknownTag(_))));
        assert!(matches!(make_example_family("reciprocal-codomain:x"), Err(Error::UnknownTag(_))));
    }

    #[test]
    fn standard_space_is_clean_at_strict_tier() {
        let rep = check_ifn_axioms(&std1(1.0), AxiomTier::Strict, &SamplingPlan::default());
        assert!(rep.is_clean(), "{rep}");
    }

    #[test]
    fn product_space_flags_idempotency() {
        let s = make_standard_space(1.0, ClassicalNorm::Absolute, 1, TNorm::Product, TConorm::ProbabilisticSum).unwrap();
        let rep = check_ifn_axioms(&s, AxiomTier::Idempotent, &SamplingPlan::default());
        assert_eq!(rep.failed_axioms(), vec![IfnAxiom::XII]);
        let w = rep.violations().find(|w| w.witness == "∗: a=0.5").expect("a=0.5 witness");
        assert_eq!((w.lhs, w.rhs), (0.25, 0.5));
    }

    #[test]
    fn doubled_nu_breaks_axiom_i() {
        let s = IfnSpace::new_unchecked(
            1,
            MembershipFunction::standard_mu(1.0, ClassicalNorm::Absolute),
            MembershipFunction::custom("min(1, 2ν)", |x, t| {
                let (_, nu) = standard_pair(1.0, x.first().abs(), t);
                (2.0 * nu).min(1.0)
            }),
            TNorm::Minimum,
            TConorm::Maximum,
            AxiomTier::Core,
            "doubled-nu",
        )
        .unwrap();
        let rep = check_ifn_axioms(&s, AxiomTier::Core, &SamplingPlan::default());
        let o = rep.outcome(IfnAxiom::I).unwrap();
        assert!(o.failures > 0);
        assert!(o.witnesses.iter().all(|w| w.lhs > 1.0));
        let (mu, nu) = s.grades(&1.0.into(), 1.0);
        assert_eq!(mu + nu, 1.5);
        assert!(IfnSpace::new(
            1,
            MembershipFunction::standard_mu(1.0, ClassicalNorm::Absolute),
            MembershipFunction::custom("min(1, 2ν)", |x, t| (2.0 * x.first().abs() / (t + x.first().abs())).min(1.0)),
            TNorm::Minimum,
            TConorm::Maximum,
            AxiomTier::Core,
            "doubled-nu",
        )
        .is_err());
    }

    #[test]
    fn literal_xiii_xiv_reject_every_nonzero_point() {
        let opts = CheckOptions { literal_xiii_xiv: true };
        let rep = check_ifn_axioms_with(&std1(1.0), AxiomTier::Idempotent, &SamplingPlan::default(), opts);
        assert_eq!(rep.failed_axioms(), vec![IfnAxiom::XIII, IfnAxiom::XIV]);
        // 220 nonzero points, θ excluded.
        assert_eq!(rep.outcome(IfnAxiom::XIII).unwrap().failures, 220);
    }

    #[test]
    fn limits() {
        let s = std1(1.0);
        let ladder = SamplingPlan::default().t_infinity_ladder;
        let l = limit_at_infinity(&s, &1.0.into(), &ladder).unwrap();
        assert!(l.converged() && l.mu_limit > 1.0 - 1e-9);
        let l = limit_at_infinity(&s, &0.0.into(), &ladder).unwrap();
        assert_eq!((l.mu_limit, l.nu_limit), (1.0, 0.0));
        let table = MembershipTable::from_fn(
            ClassicalNorm::Absolute,
            vec![0.0, 1.0, 2.0, 5.0],
            vec![1e-2, 1.0, 1e3, 1e6, 1e9, 1e12],
            |n, t| t / (2.0 * t + n),
        )
        .unwrap();
        let bad = IfnSpace::new_unchecked(
            1,
            MembershipFunction::Tabulated(Arc::new(table)),
            MembershipFunction::standard_nu(1.0, ClassicalNorm::Absolute),
            TNorm::Minimum,
            TConorm::Maximum,
            AxiomTier::Core,
            "half-limit",
        )
        .unwrap();
        let l = limit_at_infinity(&bad, &1.0.into(), &ladder).unwrap();
        assert!(!l.mu_converged);
        assert!((l.mu_limit - 0.5).abs() < 1e-9);
    }

    #[test]
    fn table_interpolation() {
        let table = MembershipTable::from_fn(
            ClassicalNorm::Absolute,
            vec![0.0, 1.0, 2.0],
            vec![1.0, 10.0, 100.0],
            |n, t| t / (t + n),
        )
        .unwrap();
        // Exact on nodes.
        assert!((table.eval(&1.0.into(), 10.0) - 10.0 / 11.0).abs() < 1e-15);
        // Linear in radius between nodes.
        let mid = table.eval(&0.5.into(), 1.0);
        assert!((mid - 0.75).abs() < 1e-15);
        // Flat beyond the edges.
        assert_eq!(table.eval(&9.0.into(), 1.0), table.eval(&2.0.into(), 1.0));
    }

    #[test]
    fn power_of_two_detection() {
        for c in [0.25, 0.5, 1.0, 2.0, 4.0, 1024.0] {
            assert!(is_power_of_two(c));
        }
        for c in [3.0, 0.3, 10.0, 0.0] {
            assert!(!is_power_of_two(c));
        }
    }
}
