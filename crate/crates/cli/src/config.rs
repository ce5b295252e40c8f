//! Scenario configuration: TOML with unknown keys rejected, validated in
//! full before anything is computed. The schema is documented in
//! `docs/config.md`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use ifnorm::continuity::{Combinator, MapRule, Region};
use ifnorm::function_sequences::FunctionFamily;
use ifnorm::point_convergence::SequenceRule;
use ifnorm::sampling::VectorGrid;
use ifnorm::{make_example_family, make_standard_space, AxiomTier, ClassicalNorm, IfnSpace, SamplingPlan, TConorm, TNorm, Vector};
use serde::Deserialize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError {
    /// Dotted path of the offending field, e.g. `continuity[1].alpha`.
    pub field: String,
    pub line: Option<usize>,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(l) => write!(f, "line {l}, field `{}`: {}", self.field, self.message),
            None if self.field.is_empty() => f.write_str(&self.message),
            None => write!(f, "field `{}`: {}", self.field, self.message),
        }
    }
}

impl std::error::Error for ConfigError {}

fn cfg_err(field: impl Into<String>, message: impl Into<String>) -> ConfigError {
    ConfigError {
        field: field.into(),
        line: None,
        message: message.into(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Axioms,
    Converge,
    Continuity,
    UniformContinuity,
    Topology,
    Funcseq,
    Catalog,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Axioms => "axioms",
            Kind::Converge => "converge",
            Kind::Continuity => "continuity",
            Kind::UniformContinuity => "uniform-continuity",
            Kind::Topology => "topology",
            Kind::Funcseq => "funcseq",
            Kind::Catalog => "catalog",
        }
    }
}

/// A point given as a bare number (dimension 1) or a coordinate list.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum PointSpec {
    Scalar(f64),
    Coords(Vec<f64>),
}

impl PointSpec {
    pub fn vector(&self) -> Vector {
        match self {
            PointSpec::Scalar(x) => Vector::scalar(*x),
            PointSpec::Coords(c) => Vector::new(c.iter().copied()),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlanSpec {
    /// `default` or `light`.
    pub preset: Option<String>,
    pub per_axis: Option<usize>,
    pub extent: Option<f64>,
    pub t_grid: Option<Vec<f64>>,
    pub random_count: Option<usize>,
    pub pair_pool: Option<usize>,
    pub scalars: Option<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceSpec {
    /// `standard` (the default) or one of the named example families.
    #[serde(default = "default_family")]
    pub family: String,
    #[serde(default = "one")]
    pub k: f64,
    pub norm: Option<String>,
    #[serde(default = "one_usize")]
    pub dim: usize,
    #[serde(default = "default_tnorm")]
    pub tnorm: String,
    #[serde(default = "default_tconorm")]
    pub tconorm: String,
}

fn default_family() -> String {
    "standard".into()
}
fn default_tnorm() -> String {
    "minimum".into()
}
fn default_tconorm() -> String {
    "maximum".into()
}
fn one() -> f64 {
    1.0
}
fn one_usize() -> usize {
    1
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapSpec {
    /// identity, affine, reciprocal, power, shifted-ratio, step or constant.
    pub rule: String,
    pub a: Option<f64>,
    pub b: Option<f64>,
    pub n: Option<u32>,
    pub shift: Option<f64>,
    pub threshold: Option<f64>,
    pub value: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CombineSpec {
    /// sum, scalar, product, reciprocal or quotient.
    pub op: String,
    pub k: Option<f64>,
    pub g: Option<MapSpec>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntervalSpec {
    pub lo: f64,
    pub hi: f64,
    #[serde(default = "yes")]
    pub lo_closed: bool,
    #[serde(default = "yes")]
    pub hi_closed: bool,
}

fn yes() -> bool {
    true
}

impl IntervalSpec {
    pub fn region(&self) -> Region {
        Region::interval(self.lo, self.hi, self.lo_closed, self.hi_closed)
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SequenceSpec {
    /// reciprocal, geometric, alternating, linear or constant.
    pub rule: String,
    pub center: Option<PointSpec>,
    pub direction: Option<PointSpec>,
    pub offset: Option<f64>,
    pub ratio: Option<f64>,
    pub start: Option<PointSpec>,
    pub step: Option<PointSpec>,
    pub amplitude: Option<PointSpec>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AxiomsCheck {
    pub space: String,
    #[serde(default = "default_tier")]
    pub tier: String,
    #[serde(default)]
    pub literal_xiii_xiv: bool,
    /// `pass` or `fail`.
    pub expect: Option<String>,
}

fn default_tier() -> String {
    "core".into()
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConvergeCheck {
    pub space: String,
    pub sequence: SequenceSpec,
    pub limit: Option<PointSpec>,
    pub r: Vec<f64>,
    pub t: Vec<f64>,
    #[serde(default = "default_point_budget")]
    pub budget: usize,
    /// Certify the Cauchy property instead of convergence to a limit.
    #[serde(default)]
    pub cauchy: bool,
    #[serde(default = "default_p_max")]
    pub p_max: usize,
    /// Also compare with classical convergence (standard spaces only).
    #[serde(default)]
    pub classical: bool,
    pub expect_n0: Option<usize>,
}

fn default_point_budget() -> usize {
    100_000
}
fn default_p_max() -> usize {
    100
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapCheck {
    pub domain: String,
    pub codomain: String,
    pub map: MapSpec,
    pub restriction: Option<IntervalSpec>,
    pub combine: Option<CombineSpec>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContinuityCheck {
    #[serde(flatten)]
    pub map: MapCheck,
    pub points: Vec<PointSpec>,
    pub epsilon: f64,
    pub alpha: f64,
    /// Also run the sequential check along `x₀ ± 1/(n+1)`.
    #[serde(default)]
    pub sequential: bool,
    /// `witnessed` or `refuted`.
    pub expect: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CauchySpec {
    pub sequence: SequenceSpec,
    pub r: f64,
    pub t: f64,
    #[serde(default = "default_cauchy_p")]
    pub p_max: usize,
    #[serde(default = "default_cauchy_budget")]
    pub budget: usize,
    #[serde(default = "default_doublings")]
    pub doublings: u32,
}

fn default_cauchy_p() -> usize {
    10
}
fn default_cauchy_budget() -> usize {
    2000
}
fn default_doublings() -> u32 {
    3
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UniformContinuityCheck {
    #[serde(flatten)]
    pub map: MapCheck,
    pub epsilon: f64,
    pub alpha: f64,
    pub cauchy: Option<CauchySpec>,
    /// `witnessed` or `refuted`.
    pub expect: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BallSpec {
    pub center: PointSpec,
    pub r: f64,
    pub t: f64,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TopologyCheck {
    /// inner-balls, openness or preimage.
    pub check: String,
    pub space: Option<String>,
    pub ball: Option<BallSpec>,
    #[serde(default = "default_members")]
    pub members: usize,
    pub set: Option<IntervalSpec>,
    pub points: Option<Vec<PointSpec>>,
    pub domain: Option<String>,
    pub codomain: Option<String>,
    pub map: Option<MapSpec>,
    pub restriction: Option<IntervalSpec>,
    /// `pass` or `fail`.
    pub expect: Option<String>,
}

fn default_members() -> usize {
    50
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FuncseqCheck {
    pub space: String,
    pub family: String,
    pub domain_lo: Vec<f64>,
    pub domain_hi: Vec<f64>,
    #[serde(default = "yes")]
    pub lo_closed: bool,
    #[serde(default = "yes")]
    pub hi_closed: bool,
    pub r: Vec<f64>,
    pub t: Vec<f64>,
    /// index, cauchy, limit-theorem or classical.
    #[serde(default = "default_mode")]
    pub mode: String,
    #[serde(default = "default_p_max")]
    pub p_max: usize,
    #[serde(default = "default_function_budget")]
    pub budget: usize,
    pub limit: Option<MapSpec>,
    /// Sample points; 11 evenly spaced points of the domain by default.
    pub sample: Option<Vec<f64>>,
    #[serde(default = "half")]
    pub epsilon: f64,
    #[serde(default = "half")]
    pub alpha: f64,
    /// `uniform` or `not-uniform`.
    pub expect: Option<String>,
}

fn default_mode() -> String {
    "index".into()
}
fn default_function_budget() -> usize {
    ifnorm::function_sequences::DEFAULT_FUNCTION_BUDGET
}
fn half() -> f64 {
    0.5
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub kind: Option<Kind>,
    pub name: Option<String>,
    pub seed: Option<u64>,
    pub plan: Option<PlanSpec>,
    #[serde(default)]
    pub spaces: BTreeMap<String, SpaceSpec>,
    #[serde(default)]
    pub axioms: Vec<AxiomsCheck>,
    #[serde(default)]
    pub converge: Vec<ConvergeCheck>,
    #[serde(default)]
    pub continuity: Vec<ContinuityCheck>,
    #[serde(default, rename = "uniform-continuity")]
    pub uniform_continuity: Vec<UniformContinuityCheck>,
    #[serde(default)]
    pub topology: Vec<TopologyCheck>,
    #[serde(default)]
    pub funcseq: Vec<FuncseqCheck>,
    /// Names of built-in scenarios, for kind `catalog`.
    #[serde(default)]
    pub catalog: Vec<String>,
}

/// Line of the `index`-th `[[section]]` header, 1-based.
fn section_line(src: &str, section: &str, index: usize) -> Option<usize> {
    let header = format!("[[{section}]]");
    src.lines()
        .enumerate()
        .filter(|(_, l)| l.trim() == header)
        .nth(index)
        .map(|(i, _)| i + 1)
}

impl ScenarioConfig {
    /// Parses and validates; syntax and unknown keys are reported with
    /// their line.
    pub fn parse(src: &str) -> Result<Self, ConfigError> {
        let cfg: ScenarioConfig = toml::from_str(src).map_err(|e| {
            let line = e.span().map(|s| src[..s.start.min(src.len())].matches('\n').count() + 1);
            ConfigError {
                field: String::new(),
                line,
                message: e.message().to_string(),
            }
        })?;
        cfg.validate().map_err(|mut e| {
            if e.line.is_none() {
                if let Some((section, rest)) = e.field.split_once('[') {
                    let idx = rest.split(']').next().and_then(|i| i.parse().ok());
                    e.line = idx.and_then(|i| section_line(src, section, i));
                }
            }
            e
        })?;
        Ok(cfg)
    }

    fn sections(&self) -> [(Kind, usize); 7] {
        [
            (Kind::Axioms, self.axioms.len()),
            (Kind::Converge, self.converge.len()),
            (Kind::Continuity, self.continuity.len()),
            (Kind::UniformContinuity, self.uniform_continuity.len()),
            (Kind::Topology, self.topology.len()),
            (Kind::Funcseq, self.funcseq.len()),
            (Kind::Catalog, self.catalog.len()),
        ]
    }

    /// The declared kind, or the kind of the only non-empty section.
    pub fn effective_kind(&self) -> Option<Kind> {
        self.kind.or_else(|| {
            let used: Vec<Kind> = self.sections().iter().filter(|s| s.1 > 0).map(|s| s.0).collect();
            (used.len() == 1).then(|| used[0])
        })
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if let Some(kind) = self.kind {
            for (k, n) in self.sections() {
                if n > 0 && k != kind {
                    return Err(cfg_err(
                        k.name(),
                        format!("section not allowed in a `{}` scenario", kind.name()),
                    ));
                }
            }
        } else if self.sections().iter().filter(|s| s.1 > 0).count() > 1 {
            return Err(cfg_err("kind", "required when more than one check section is present"));
        }
        self.build_plan()?;
        for name in self.spaces.keys() {
            self.space(name, "spaces")?;
        }
        for (i, c) in self.axioms.iter().enumerate() {
            let at = |f: &str| format!("axioms[{i}].{f}");
            self.space(&c.space, &at("space"))?;
            tier(&c.tier, &at("tier"))?;
            one_of(c.expect.as_deref(), &["pass", "fail"], &at("expect"))?;
        }
        for (i, c) in self.converge.iter().enumerate() {
            let at = |f: &str| format!("converge[{i}].{f}");
            let space = self.space(&c.space, &at("space"))?;
            let rule = c.sequence.build(&at("sequence"))?;
            if rule.term(1).dim() != space.dim() {
                return Err(cfg_err(at("sequence"), "dimension differs from the space"));
            }
            if let Some(l) = &c.limit {
                if l.vector().dim() != space.dim() {
                    return Err(cfg_err(at("limit"), "dimension differs from the space"));
                }
            }
            if !c.cauchy && c.limit.is_none() && rule.exact_limit().is_none() {
                return Err(cfg_err(at("limit"), "required for this sequence rule"));
            }
            rt_lists(&c.r, &c.t, &at(""))?;
            at_least_one(c.budget, &at("budget"))?;
            at_least_one(c.p_max, &at("p_max"))?;
            if c.expect_n0.is_some() && c.r.len() * c.t.len() != 1 {
                return Err(cfg_err(at("expect_n0"), "only meaningful for a single (r, t)"));
            }
        }
        for (i, c) in self.continuity.iter().enumerate() {
            let at = |f: &str| format!("continuity[{i}].{f}");
            let f = self.map(&c.map, &at(""))?;
            eps_alpha(c.epsilon, c.alpha, &at(""))?;
            if c.points.is_empty() {
                return Err(cfg_err(at("points"), "must be nonempty"));
            }
            for p in &c.points {
                let v = p.vector();
                if v.dim() != f.domain.dim() || !f.restriction.contains(&v) {
                    return Err(cfg_err(at("points"), format!("{v} is not in the domain")));
                }
            }
            one_of(c.expect.as_deref(), &["witnessed", "refuted"], &at("expect"))?;
        }
        for (i, c) in self.uniform_continuity.iter().enumerate() {
            let at = |f: &str| format!("uniform-continuity[{i}].{f}");
            let f = self.map(&c.map, &at(""))?;
            eps_alpha(c.epsilon, c.alpha, &at(""))?;
            if let Some(cs) = &c.cauchy {
                let rule = cs.sequence.build(&at("cauchy.sequence"))?;
                if rule.term(1).dim() != f.domain.dim() {
                    return Err(cfg_err(at("cauchy.sequence"), "dimension differs from the domain"));
                }
                rt_lists(&[cs.r], &[cs.t], &at("cauchy."))?;
                at_least_one(cs.p_max, &at("cauchy.p_max"))?;
                at_least_one(cs.budget, &at("cauchy.budget"))?;
            }
            one_of(c.expect.as_deref(), &["witnessed", "refuted"], &at("expect"))?;
        }
        for (i, c) in self.topology.iter().enumerate() {
            self.validate_topology(c, &|f: &str| format!("topology[{i}].{f}"))?;
        }
        for (i, c) in self.funcseq.iter().enumerate() {
            let at = |f: &str| format!("funcseq[{i}].{f}");
            self.validate_funcseq(c, &at)?;
        }
        for (i, name) in self.catalog.iter().enumerate() {
            if crate::catalog::find(name).is_none() {
                return Err(cfg_err(format!("catalog[{i}]"), format!("unknown catalog scenario `{name}`")));
            }
        }
        Ok(())
    }

    fn validate_topology(&self, c: &TopologyCheck, at: &dyn Fn(&str) -> String) -> Result<(), ConfigError> {
        one_of(c.expect.as_deref(), &["pass", "fail"], &at("expect"))?;
        let need = |v: bool, f: &str| if v { Ok(()) } else { Err(cfg_err(at(f), "required for this check")) };
        let ball = |b: &BallSpec, dim: usize, field: &str| -> Result<(), ConfigError> {
            rt_lists(&[b.r], &[b.t], &at(&format!("{field}.")))?;
            if b.center.vector().dim() != dim {
                return Err(cfg_err(at(&format!("{field}.center")), "dimension differs from the space"));
            }
            Ok(())
        };
        match c.check.as_str() {
            "inner-balls" => {
                need(c.space.is_some(), "space")?;
                need(c.ball.is_some(), "ball")?;
                let space = self.space(c.space.as_deref().unwrap_or_default(), &at("space"))?;
                ball(c.ball.as_ref().unwrap(), space.dim(), "ball")?;
                at_least_one(c.members, &at("members"))
            }
            "openness" => {
                need(c.space.is_some(), "space")?;
                need(c.set.is_some(), "set")?;
                need(c.points.is_some(), "points")?;
                let space = self.space(c.space.as_deref().unwrap_or_default(), &at("space"))?;
                if space.dim() != 1 {
                    return Err(cfg_err(at("space"), "interval sets need a one-dimensional space"));
                }
                let region = c.set.as_ref().unwrap().region();
                let pts = c.points.as_ref().unwrap();
                if pts.is_empty() {
                    return Err(cfg_err(at("points"), "must be nonempty"));
                }
                for p in pts {
                    let v = p.vector();
                    if v.dim() != 1 || !region.contains(&v) {
                        return Err(cfg_err(at("points"), format!("{v} is not in the set")));
                    }
                }
                Ok(())
            }
            "preimage" => {
                need(c.domain.is_some(), "domain")?;
                need(c.codomain.is_some(), "codomain")?;
                need(c.map.is_some(), "map")?;
                need(c.ball.is_some(), "ball")?;
                let m = MapCheck {
                    domain: c.domain.clone().unwrap(),
                    codomain: c.codomain.clone().unwrap(),
                    map: c.map.clone().unwrap(),
                    restriction: c.restriction.clone(),
                    combine: None,
                };
                let f = self.map(&m, &at(""))?;
                ball(c.ball.as_ref().unwrap(), f.codomain.dim(), "ball")
            }
            other => Err(cfg_err(
                at("check"),
                format!("unknown check `{other}`; expected inner-balls, openness or preimage"),
            )),
        }
    }

    fn validate_funcseq(&self, c: &FuncseqCheck, at: &dyn Fn(&str) -> String) -> Result<(), ConfigError> {
        let space = self.space(&c.space, &at("space"))?;
        if space.dim() != 1 {
            return Err(cfg_err(at("space"), "function sequences need a one-dimensional space"));
        }
        FunctionFamily::parse(&c.family).map_err(|e| cfg_err(at("family"), e.to_string()))?;
        one_of(Some(&c.mode), &["index", "cauchy", "limit-theorem", "classical"], &at("mode"))?;
        if c.domain_lo.is_empty() || c.domain_hi.is_empty() {
            return Err(cfg_err(at("domain_lo"), "domain endpoint lists must be nonempty"));
        }
        for &lo in &c.domain_lo {
            for &hi in &c.domain_hi {
                if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                    return Err(cfg_err(at("domain_hi"), format!("[{lo}, {hi}] is not a finite interval")));
                }
                if c.family == "quotient" && lo <= -1.0 {
                    return Err(cfg_err(at("domain_lo"), "the quotient family needs domain_lo > -1"));
                }
                if let Some(s) = &c.sample {
                    let region = Region::interval(lo, hi, c.lo_closed, c.hi_closed);
                    if let Some(x) = s.iter().find(|&&x| !region.contains(&Vector::scalar(x))) {
                        return Err(cfg_err(at("sample"), format!("{x} is outside [{lo}, {hi}]")));
                    }
                }
            }
        }
        rt_lists(&c.r, &c.t, &at(""))?;
        at_least_one(c.budget, &at("budget"))?;
        at_least_one(c.p_max, &at("p_max"))?;
        if let Some(m) = &c.limit {
            m.build(&at("limit"))?;
        } else if family_limit(&c.family).is_none() {
            return Err(cfg_err(at("limit"), "required for this family"));
        }
        if c.mode == "limit-theorem" {
            eps_alpha(c.epsilon, c.alpha, &at(""))?;
        }
        if c.sample.as_ref().is_some_and(|s| s.is_empty()) {
            return Err(cfg_err(at("sample"), "must be nonempty"));
        }
        one_of(c.expect.as_deref(), &["uniform", "not-uniform"], &at("expect"))
    }

    /// The sampling plan of every check, seeded with `seed`.
    pub fn plan(&self, seed: u64) -> SamplingPlan {
        self.build_plan().expect("validated").with_seed(seed)
    }

    fn build_plan(&self) -> Result<SamplingPlan, ConfigError> {
        let Some(p) = &self.plan else {
            return Ok(SamplingPlan::default());
        };
        let mut plan = match p.preset.as_deref() {
            None | Some("default") => SamplingPlan::default(),
            Some("light") => SamplingPlan::light(),
            Some(other) => return Err(cfg_err("plan.preset", format!("unknown preset `{other}`"))),
        };
        if p.per_axis.is_some() || p.extent.is_some() {
            let (mut n, mut e) = match plan.vector_grid {
                VectorGrid::Regular { per_axis, extent } => (per_axis, extent),
                VectorGrid::Explicit(_) => unreachable!("presets are regular"),
            };
            n = p.per_axis.unwrap_or(n);
            e = p.extent.unwrap_or(e);
            plan.vector_grid = VectorGrid::Regular { per_axis: n, extent: e };
        }
        if let Some(t) = &p.t_grid {
            plan.t_grid = t.clone();
        }
        if let Some(n) = p.random_count {
            plan.random_count = n;
        }
        if let Some(n) = p.pair_pool {
            plan.pair_pool = n;
        }
        if let Some(s) = &p.scalars {
            plan.scalars = s.clone();
        }
        plan.validate().map_err(|e| cfg_err("plan", e.to_string()))?;
        Ok(plan)
    }

    /// Builds the named space.
    pub fn space(&self, name: &str, field: &str) -> Result<Arc<IfnSpace>, ConfigError> {
        let spec = self
            .spaces
            .get(name)
            .ok_or_else(|| cfg_err(field, format!("no space named `{name}` in [spaces]")))?;
        let at = |f: &str| format!("spaces.{name}.{f}");
        let space = if spec.family == "standard" {
            let norm_name = spec
                .norm
                .clone()
                .unwrap_or_else(|| if spec.dim == 1 { "absolute".into() } else { "euclidean".into() });
            let norm = ClassicalNorm::from_name(&norm_name)
                .ok_or_else(|| cfg_err(at("norm"), format!("unknown norm `{norm_name}`")))?;
            let tn = TNorm::from_name(&spec.tnorm)
                .ok_or_else(|| cfg_err(at("tnorm"), format!("unknown t-norm `{}`", spec.tnorm)))?;
            let tc = TConorm::from_name(&spec.tconorm)
                .ok_or_else(|| cfg_err(at("tconorm"), format!("unknown t-conorm `{}`", spec.tconorm)))?;
            make_standard_space(spec.k, norm, spec.dim, tn, tc).map_err(|e| cfg_err(format!("spaces.{name}"), e.to_string()))?
        } else {
            make_example_family(&spec.family).map_err(|e| cfg_err(at("family"), e.to_string()))?
        };
        Ok(Arc::new(space))
    }

    /// Builds a map with its optional combinator applied.
    pub fn map(&self, m: &MapCheck, at: &str) -> Result<ifnorm::continuity::MapBetweenSpaces, ConfigError> {
        let domain = self.space(&m.domain, &format!("{at}domain"))?;
        let codomain = self.space(&m.codomain, &format!("{at}codomain"))?;
        let rule = m.map.build(&format!("{at}map"))?;
        let restriction = m.restriction.as_ref().map_or(Region::Whole, IntervalSpec::region);
        let f = ifnorm::continuity::MapBetweenSpaces::new(domain, codomain, rule, restriction)
            .map_err(|e| cfg_err(format!("{at}map"), e.to_string()))?;
        let Some(c) = &m.combine else {
            return Ok(f);
        };
        let field = format!("{at}combine");
        let op = match c.op.as_str() {
            "sum" => Combinator::Sum,
            "scalar" => Combinator::Scalar(c.k.ok_or_else(|| cfg_err(format!("{field}.k"), "required for scalar"))?),
            "product" => Combinator::Product,
            "reciprocal" => Combinator::Reciprocal,
            "quotient" => Combinator::Quotient,
            other => return Err(cfg_err(format!("{field}.op"), format!("unknown combinator `{other}`"))),
        };
        let g = match &c.g {
            Some(spec) => Some(
                ifnorm::continuity::MapBetweenSpaces::new(
                    f.domain.clone(),
                    f.codomain.clone(),
                    spec.build(&format!("{field}.g"))?,
                    f.restriction.clone(),
                )
                .map_err(|e| cfg_err(format!("{field}.g"), e.to_string()))?,
            ),
            None => None,
        };
        ifnorm::continuity::combine(op, &f, g.as_ref()).map_err(|e| cfg_err(field, e.to_string()))
    }
}

/// The known limit of a built-in family.
pub fn family_limit(family: &str) -> Option<MapRule> {
    match family {
        "power" | "scaled" => Some(MapRule::Constant(0.0)),
        "quotient" => Some(MapRule::Constant(1.0)),
        "identity" => Some(MapRule::Identity),
        _ => None,
    }
}

impl MapSpec {
    pub fn build(&self, at: &str) -> Result<MapRule, ConfigError> {
        let need = |v: Option<f64>, f: &str| v.ok_or_else(|| cfg_err(format!("{at}.{f}"), format!("required for rule `{}`", self.rule)));
        Ok(match self.rule.as_str() {
            "identity" => MapRule::Identity,
            "affine" => MapRule::Affine {
                a: need(self.a, "a")?,
                b: self.b.unwrap_or(0.0),
            },
            "reciprocal" => MapRule::Reciprocal,
            "power" => MapRule::Power(self.n.ok_or_else(|| cfg_err(format!("{at}.n"), "required for rule `power`"))?),
            "shifted-ratio" => MapRule::ShiftedRatio(need(self.shift, "shift")?),
            "step" => MapRule::Step {
                threshold: self.threshold.unwrap_or(0.0),
            },
            "constant" => MapRule::Constant(need(self.value, "value")?),
            other => return Err(cfg_err(format!("{at}.rule"), format!("unknown map rule `{other}`"))),
        })
    }
}

impl SequenceSpec {
    pub fn build(&self, at: &str) -> Result<SequenceRule, ConfigError> {
        let vec = |v: &Option<PointSpec>, f: &str| {
            v.as_ref()
                .map(PointSpec::vector)
                .ok_or_else(|| cfg_err(format!("{at}.{f}"), format!("required for rule `{}`", self.rule)))
        };
        let rule = match self.rule.as_str() {
            "reciprocal" => {
                let offset = self.offset.unwrap_or(1.0);
                if offset.is_nan() || offset <= 0.0 {
                    return Err(cfg_err(format!("{at}.offset"), "must be positive"));
                }
                SequenceRule::Reciprocal {
                    center: vec(&self.center, "center")?,
                    direction: vec(&self.direction, "direction")?,
                    offset,
                }
            }
            "geometric" => SequenceRule::Geometric {
                center: vec(&self.center, "center")?,
                direction: vec(&self.direction, "direction")?,
                ratio: self
                    .ratio
                    .ok_or_else(|| cfg_err(format!("{at}.ratio"), "required for rule `geometric`"))?,
            },
            "alternating" => SequenceRule::Alternating {
                center: vec(&self.center, "center")?,
                amplitude: vec(&self.amplitude, "amplitude")?,
            },
            "linear" => SequenceRule::Linear {
                start: vec(&self.start, "start")?,
                step: vec(&self.step, "step")?,
            },
            "constant" => SequenceRule::Constant(vec(&self.center, "center")?),
            other => return Err(cfg_err(format!("{at}.rule"), format!("unknown sequence rule `{other}`"))),
        };
        let dims: Vec<usize> = [&self.center, &self.direction, &self.start, &self.step, &self.amplitude]
            .iter()
            .filter_map(|p| p.as_ref().map(|p| p.vector().dim()))
            .collect();
        if dims.windows(2).any(|w| w[0] != w[1]) {
            return Err(cfg_err(at, "coordinate lists differ in dimension"));
        }
        Ok(rule)
    }
}

fn tier(name: &str, field: &str) -> Result<AxiomTier, ConfigError> {
    AxiomTier::from_name(name).ok_or_else(|| cfg_err(field, format!("unknown tier `{name}`; expected core, idempotent or strict")))
}

pub fn parse_tier(name: &str) -> AxiomTier {
    AxiomTier::from_name(name).expect("validated")
}

fn one_of(value: Option<&str>, allowed: &[&str], field: &str) -> Result<(), ConfigError> {
    match value {
        Some(v) if !allowed.contains(&v) => Err(cfg_err(field, format!("`{v}` is not one of {}", allowed.join(", ")))),
        _ => Ok(()),
    }
}

fn at_least_one(n: usize, field: &str) -> Result<(), ConfigError> {
    if n == 0 {
        Err(cfg_err(field, "must be at least 1"))
    } else {
        Ok(())
    }
}

fn rt_lists(r: &[f64], t: &[f64], prefix: &str) -> Result<(), ConfigError> {
    if r.is_empty() {
        return Err(cfg_err(format!("{prefix}r"), "must be nonempty"));
    }
    if t.is_empty() {
        return Err(cfg_err(format!("{prefix}t"), "must be nonempty"));
    }
    if let Some(x) = r.iter().find(|&&x| !(x > 0.0 && x < 1.0)) {
        return Err(cfg_err(format!("{prefix}r"), format!("{x} is not in (0, 1)")));
    }
    if let Some(x) = t.iter().find(|&&x| !(x > 0.0 && x.is_finite())) {
        return Err(cfg_err(format!("{prefix}t"), format!("{x} is not a positive real")));
    }
    Ok(())
}

fn eps_alpha(epsilon: f64, alpha: f64, prefix: &str) -> Result<(), ConfigError> {
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(cfg_err(format!("{prefix}epsilon"), format!("{epsilon} is not a positive real")));
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(cfg_err(format!("{prefix}alpha"), format!("{alpha} is not in (0, 1)")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    const SPACE: &str = "[spaces.s]\nk = 1.0\n";

    #[test]
    fn empty_config_is_valid() {
        let c = ScenarioConfig::parse("kind = \"axioms\"\n").unwrap();
        assert_eq!(c.effective_kind(), Some(Kind::Axioms));
        assert!(c.axioms.is_empty());
    }

    #[test]
    fn unknown_key_reports_line() {
        let e = ScenarioConfig::parse("kind = \"axioms\"\n\n[[axioms]]\nspace = \"s\"\ntierr = \"core\"\n").unwrap_err();
        assert_eq!(e.line, Some(5), "{e}");
        assert!(e.message.contains("tierr"), "{e}");
    }

    #[test]
    fn semantic_error_names_field_and_line() {
        let src = format!("{SPACE}\n[[continuity]]\ndomain = \"s\"\ncodomain = \"s\"\nmap = {{ rule = \"identity\" }}\npoints = [0.5]\nepsilon = 1.0\nalpha = 1.5\n");
        let e = ScenarioConfig::parse(&src).unwrap_err();
        assert_eq!(e.field, "continuity[0].alpha");
        assert_eq!(e.line, Some(4));
    }

    #[test]
    fn mixed_sections_need_matching_kind() {
        let src = format!("kind = \"axioms\"\n{SPACE}\n[[funcseq]]\nspace = \"s\"\nfamily = \"power\"\ndomain_lo = [0.0]\ndomain_hi = [0.5]\nr = [0.1]\nt = [0.1]\n");
        let e = ScenarioConfig::parse(&src).unwrap_err();
        assert_eq!(e.field, "funcseq");
    }

    #[test]
    fn integers_accepted_as_reals() {
        let src = format!("{SPACE}\n[[converge]]\nspace = \"s\"\nsequence = {{ rule = \"reciprocal\", center = 0, direction = 1 }}\nr = [0.5]\nt = [1]\n");
        let c = ScenarioConfig::parse(&src).unwrap();
        assert_eq!(c.converge[0].t, vec![1.0]);
        assert_eq!(c.effective_kind(), Some(Kind::Converge));
    }

    #[test]
    fn plan_overrides() {
        let c = ScenarioConfig::parse("[plan]\npreset = \"light\"\nper_axis = 3\n").unwrap();
        let p = c.plan(9);
        assert_eq!(p.seed, 9);
        assert_eq!(p.vector_grid, VectorGrid::Regular { per_axis: 3, extent: 2.0 });
        assert!(ScenarioConfig::parse("[plan]\nt_grid = [-1.0]\n").is_err());
    }
}
