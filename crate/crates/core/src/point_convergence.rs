//! Convergence and Cauchy indices of point sequences, certified up to an
//! explicit budget.

use std::fmt;
use std::sync::Arc;

use crate::error::{invalid, Error, Result};
use crate::space::IfnSpace;
use crate::vector::Vector;

pub const DEFAULT_BUDGET: usize = 100_000;
pub const DEFAULT_P_MAX: usize = 100;

/// Fraction of the budget at the end of the checked range that counts as the
/// tail window. A violation inside it makes a certificate inconclusive.
pub const TAIL_WINDOW: f64 = 0.1;

type TermFn = dyn Fn(usize) -> Vector + Send + Sync;

/// Closed-form and user-supplied rules `n ↦ xₙ`, `n ≥ 1`.
#[derive(Clone)]
pub enum SequenceRule {
    /// `center + direction / (n + offset)`.
    Reciprocal {
        center: Vector,
        direction: Vector,
        offset: f64,
    },
    /// `start + n · step`.
    Linear { start: Vector, step: Vector },
    /// `center + (−1)ⁿ · amplitude`.
    Alternating { center: Vector, amplitude: Vector },
    /// `center + ratioⁿ · direction`.
    Geometric {
        center: Vector,
        direction: Vector,
        ratio: f64,
    },
    Constant(Vector),
    Custom { name: String, f: Arc<TermFn> },
}

impl fmt::Debug for SequenceRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

impl SequenceRule {
    pub fn reciprocal(center: f64, direction: f64, offset: f64) -> Self {
        SequenceRule::Reciprocal {
            center: center.into(),
            direction: direction.into(),
            offset,
        }
    }

    pub fn custom(name: impl Into<String>, f: impl Fn(usize) -> Vector + Send + Sync + 'static) -> Self {
        SequenceRule::Custom {
            name: name.into(),
            f: Arc::new(f),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            SequenceRule::Reciprocal {
                center,
                direction,
                offset,
            } => format!("{center} + {direction}/(n + {offset})"),
            SequenceRule::Linear { start, step } => format!("{start} + n·{step}"),
            SequenceRule::Alternating { center, amplitude } => format!("{center} + (-1)^n·{amplitude}"),
            SequenceRule::Geometric {
                center,
                direction,
                ratio,
            } if *ratio < 0.0 => format!("{center} + ({ratio})^n·{direction}"),
            SequenceRule::Geometric {
                center,
                direction,
                ratio,
            } => format!("{center} + {ratio}^n·{direction}"),
            SequenceRule::Constant(x) => format!("constant {x}"),
            SequenceRule::Custom { name, .. } => name.clone(),
        }
    }

    pub fn term(&self, n: usize) -> Vector {
        let nf = n as f64;
        match self {
            SequenceRule::Reciprocal {
                center,
                direction,
                offset,
            } => {
                let d = nf + offset;
                center.zip_with(direction, |c, v| c + v / d)
            }
            SequenceRule::Linear { start, step } => start.zip_with(step, |a, s| a + nf * s),
            SequenceRule::Alternating { center, amplitude } => {
                let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
                center.zip_with(amplitude, |c, a| c + sign * a)
            }
            SequenceRule::Geometric {
                center,
                direction,
                ratio,
            } => {
                let q = ratio.powi(n.min(i32::MAX as usize) as i32);
                center.zip_with(direction, |c, v| c + q * v)
            }
            SequenceRule::Constant(x) => x.clone(),
            SequenceRule::Custom { f, .. } => f(n),
        }
    }

    /// The exact limit for closed forms that converge.
    pub fn exact_limit(&self) -> Option<Vector> {
        match self {
            SequenceRule::Reciprocal { center, .. } => Some(center.clone()),
            SequenceRule::Geometric { center, ratio, .. } if ratio.abs() < 1.0 => Some(center.clone()),
            SequenceRule::Alternating { center, amplitude } if amplitude.is_zero() => Some(center.clone()),
            SequenceRule::Linear { start, step } if step.is_zero() => Some(start.clone()),
            SequenceRule::Constant(x) => Some(x.clone()),
            _ => None,
        }
    }
}

/// A sequence together with the index budget it is checked to.
#[derive(Debug, Clone)]
pub struct PointSequence {
    pub rule: SequenceRule,
    pub budget: usize,
}

impl PointSequence {
    pub fn new(rule: SequenceRule) -> Self {
        PointSequence {
            rule,
            budget: DEFAULT_BUDGET,
        }
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }

    pub fn term(&self, n: usize) -> Vector {
        self.rule.term(n)
    }

    /// `x₁, …, x_count`; element `i` is `x_{i+1}`.
    pub fn terms(&self, count: usize) -> Vec<Vector> {
        (1..=count).map(|n| self.rule.term(n)).collect()
    }

    pub fn describe(&self) -> String {
        format!("{} (budget {})", self.rule.describe(), self.budget)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertificateStatus {
    /// The inequalities hold on `[n0, budget]`.
    Certified,
    /// They fail at the last checked index.
    Failed,
    /// They hold at the last index but fail somewhere in the tail window.
    Inconclusive,
}

impl CertificateStatus {
    pub fn name(self) -> &'static str {
        match self {
            CertificateStatus::Certified => "certified-up-to-budget",
            CertificateStatus::Failed => "failed",
            CertificateStatus::Inconclusive => "inconclusive",
        }
    }
}

/// `(r, t, n₀)` with the budget it was verified to.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceCertificate {
    pub r: f64,
    pub t: f64,
    /// Smallest index from which the inequalities hold up to the budget;
    /// `None` when they fail at the budget itself.
    pub n0: Option<usize>,
    pub budget: usize,
    /// Largest difference offset checked, for Cauchy certificates.
    pub p_max: Option<usize>,
    pub status: CertificateStatus,
    pub limit: Option<Vector>,
    /// Largest checked index at which the inequalities fail.
    pub last_violation: Option<usize>,
    /// For Cauchy certificates: whether `max_p (1 − μ(x_{n+p} − xₙ, t))`
    /// is non-increasing along a geometric sample of the certified tail.
    pub margin_monotone: Option<bool>,
}

impl ConvergenceCertificate {
    pub fn is_certified(&self) -> bool {
        self.status == CertificateStatus::Certified
    }
}

pub(crate) fn check_rt(r: f64, t: f64) -> Result<()> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::Domain(format!("r = {r} is not in (0, 1)")));
    }
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::Domain(format!("t = {t} is not a positive real")));
    }
    Ok(())
}

/// Index of the last failure in `1..=budget`, found by scanning down from
/// the budget.
pub(crate) fn last_failure(budget: usize, fails: impl Fn(usize) -> bool) -> Option<usize> {
    (1..=budget).rev().find(|&n| fails(n))
}

pub(crate) fn classify(budget: usize, last: Option<usize>) -> (Option<usize>, CertificateStatus) {
    match last {
        None => (Some(1), CertificateStatus::Certified),
        Some(l) if l >= budget => (None, CertificateStatus::Failed),
        Some(l) => {
            let window_start = budget - ((budget as f64 * TAIL_WINDOW) as usize);
            let status = if l >= window_start {
                CertificateStatus::Inconclusive
            } else {
                CertificateStatus::Certified
            };
            (Some(l + 1), status)
        }
    }
}

/// Smallest `n₀` with `μ(xₙ − x, t) > 1 − r` and `ν(xₙ − x, t) < r` for every
/// `n ∈ [n₀, budget]`.
pub fn convergence_index(
    space: &IfnSpace,
    seq: &PointSequence,
    limit: &Vector,
    r: f64,
    t: f64,
) -> Result<ConvergenceCertificate> {
    let terms = seq.terms(seq.budget);
    convergence_index_terms(space, &terms, limit, r, t)
}

/// [`convergence_index`] on materialized terms (`terms[i]` is `x_{i+1}`).
pub fn convergence_index_terms(
    space: &IfnSpace,
    terms: &[Vector],
    limit: &Vector,
    r: f64,
    t: f64,
) -> Result<ConvergenceCertificate> {
    check_rt(r, t)?;
    check_dims(space, terms, limit)?;
    let budget = terms.len();
    let last = last_failure(budget, |n| !space.within(&(&terms[n - 1] - limit), r, t));
    let (n0, status) = classify(budget, last);
    Ok(ConvergenceCertificate {
        r,
        t,
        n0,
        budget,
        p_max: None,
        status,
        limit: Some(limit.clone()),
        last_violation: last,
        margin_monotone: None,
    })
}

fn check_dims(space: &IfnSpace, terms: &[Vector], limit: &Vector) -> Result<()> {
    if terms.is_empty() {
        return Err(invalid("budget", "must be at least 1"));
    }
    if limit.dim() != space.dim() {
        return Err(Error::Domain(format!(
            "limit has dimension {}, space has {}",
            limit.dim(),
            space.dim()
        )));
    }
    if let Some(x) = terms.iter().find(|x| x.dim() != space.dim() || !x.is_finite()) {
        return Err(Error::Domain(format!("term {x} is not a finite point of the space")));
    }
    Ok(())
}

/// Smallest `n₀` with `μ(x_{n+p} − xₙ, t) > 1 − r` and `ν(…) < r` for every
/// `n ∈ [n₀, budget]` and `p ∈ [1, p_max]`.
pub fn cauchy_index(space: &IfnSpace, seq: &PointSequence, r: f64, t: f64, p_max: usize) -> Result<ConvergenceCertificate> {
    if p_max == 0 {
        return Err(Error::Domain("p_max must be at least 1".into()));
    }
    let terms = seq.terms(seq.budget + p_max);
    cauchy_index_terms(space, &terms, seq.budget, r, t, p_max)
}

/// [`cauchy_index`] on materialized terms; `terms` must hold at least
/// `budget + p_max` entries.
pub fn cauchy_index_terms(
    space: &IfnSpace,
    terms: &[Vector],
    budget: usize,
    r: f64,
    t: f64,
    p_max: usize,
) -> Result<ConvergenceCertificate> {
    check_rt(r, t)?;
    if p_max == 0 || terms.len() < budget + p_max || budget == 0 {
        return Err(Error::Domain(format!(
            "need budget ≥ 1, p_max ≥ 1 and {} terms, got {}",
            budget + p_max,
            terms.len()
        )));
    }
    check_dims(space, terms, &terms[0])?;
    let x = |n: usize| &terms[n - 1];
    let last = last_failure(budget, |n| (1..=p_max).any(|p| !space.within(&(x(n + p) - x(n)), r, t)));
    let (n0, status) = classify(budget, last);

    let margin_monotone = n0.filter(|_| status == CertificateStatus::Certified).map(|start| {
        let margin = |n: usize| {
            (1..=p_max)
                .map(|p| 1.0 - space.grades(&(x(n + p) - x(n)), t).0)
                .fold(0.0, f64::max)
        };
        let mut n = start;
        let mut prev = margin(n);
        let mut monotone = true;
        while n.saturating_mul(2) <= budget {
            n *= 2;
            let m = margin(n);
            monotone &= m <= prev + 1e-12;
            prev = m;
        }
        monotone
    });

    Ok(ConvergenceCertificate {
        r,
        t,
        n0,
        budget,
        p_max: Some(p_max),
        status,
        limit: None,
        last_violation: last,
        margin_monotone,
    })
}

/// `(r, t)` pairs the equivalence probe certifies.
pub const PROBE_PAIRS: [(f64, f64); 3] = [(0.5, 1.0), (0.1, 0.1), (0.01, 0.1)];

/// Classical and fuzzy verdicts on the same sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalComparison {
    pub limit: Vector,
    /// Classical convergence threshold: the smallest ball radius
    /// `rt/(k(1 − r))` among the probes.
    pub threshold: f64,
    /// `sup ‖xₙ − x‖` over the tail window.
    pub tail_sup: f64,
    pub classical_converges: bool,
    pub ifn_converges: bool,
    pub probes: Vec<ConvergenceCertificate>,
}

impl ClassicalComparison {
    pub fn agree(&self) -> bool {
        self.classical_converges == self.ifn_converges
    }
}

/// Compares `‖xₙ − x‖ → 0` (tail-threshold test) with fuzzy convergence at
/// [`PROBE_PAIRS`]. `limit` defaults to the rule's exact limit, else the last
/// checked term.
pub fn classical_equivalence_probe(
    space: &IfnSpace,
    seq: &PointSequence,
    limit: Option<&Vector>,
) -> Result<ClassicalComparison> {
    let (k, norm) = space.standard_params().ok_or_else(|| {
        Error::UnsupportedFamily(format!("{} is not a standard space", space.provenance()))
    })?;
    let terms = seq.terms(seq.budget);
    let limit = match limit {
        Some(l) => l.clone(),
        None => seq
            .rule
            .exact_limit()
            .unwrap_or_else(|| terms.last().cloned().unwrap_or_else(|| Vector::zeros(space.dim()))),
    };
    let probes = PROBE_PAIRS
        .iter()
        .map(|&(r, t)| convergence_index_terms(space, &terms, &limit, r, t))
        .collect::<Result<Vec<_>>>()?;
    let threshold = PROBE_PAIRS
        .iter()
        .map(|&(r, t)| r * t / (k * (1.0 - r)))
        .fold(f64::INFINITY, f64::min);
    let budget = terms.len();
    let window_start = budget - ((budget as f64 * TAIL_WINDOW) as usize);
    let tail_sup = terms[window_start.max(1) - 1..]
        .iter()
        .map(|x| norm.norm(&(x - &limit)))
        .fold(0.0, f64::max);
    Ok(ClassicalComparison {
        limit,
        threshold,
        tail_sup,
        classical_converges: tail_sup < threshold,
        ifn_converges: probes.iter().all(ConvergenceCertificate::is_certified),
        probes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::norm_algebra::{TConorm, TNorm};
    use crate::space::make_standard_space;
    use crate::vector::ClassicalNorm;

    fn std1() -> IfnSpace {
        make_standard_space(1.0, ClassicalNorm::Absolute, 1, TNorm::Minimum, TConorm::Maximum).unwrap()
    }

    fn recip() -> PointSequence {
        PointSequence::new(SequenceRule::reciprocal(0.0, 1.0, 1.0))
    }

    #[test]
    fn reciprocal_indices() {
        let s = std1();
        let c = convergence_index(&s, &recip(), &0.0.into(), 0.5, 1.0).unwrap();
        assert_eq!((c.n0, c.status), (Some(1), CertificateStatus::Certified));
        let c = convergence_index(&s, &recip(), &0.0.into(), 0.1, 0.1).unwrap();
        assert_eq!(c.n0, Some(90));
        assert_eq!(c.last_violation, Some(89));
        assert!(c.is_certified());
    }

    #[test]
    fn constant_sequence_has_index_one() {
        let s = std1();
        let seq = PointSequence::new(SequenceRule::Constant(3.0.into())).with_budget(1000);
        for (r, t) in [(0.01, 0.01), (0.5, 1.0), (0.9, 100.0)] {
            let c = convergence_index(&s, &seq, &3.0.into(), r, t).unwrap();
            assert_eq!(c.n0, Some(1));
            let c = cauchy_index(&s, &seq, r, t, 10).unwrap();
            assert_eq!(c.n0, Some(1));
        }
    }

    #[test]
    fn bad_parameters() {
        let s = std1();
        for (r, t) in [(0.0, 1.0), (1.0, 1.0), (0.5, 0.0), (0.5, -1.0)] {
            assert!(matches!(
                convergence_index(&s, &recip(), &0.0.into(), r, t),
                Err(Error::Domain(_))
            ));
        }
        assert!(convergence_index(&s, &recip(), &Vector::zeros(2), 0.5, 1.0).is_err());
    }

    #[test]
    fn wrong_limit_fails() {
        let c = convergence_index(&std1(), &recip(), &2.0.into(), 0.5, 1.0).unwrap();
        assert_eq!(c.status, CertificateStatus::Failed);
        assert_eq!(c.n0, None);
    }

    #[test]
    fn slow_sequence_is_inconclusive() {
        // Fails exactly up to n = 95 000, inside the tail window of 10⁵.
        let seq = PointSequence::new(SequenceRule::custom("step", |n| {
            Vector::scalar(if n <= 95_000 { 10.0 } else { 0.0 })
        }));
        let c = convergence_index(&std1(), &seq, &0.0.into(), 0.5, 1.0).unwrap();
        assert_eq!(c.status, CertificateStatus::Inconclusive);
        assert_eq!(c.n0, Some(95_001));
    }

    #[test]
    fn cauchy_reciprocal_and_divergent() {
        let s = std1();
        let seq = recip().with_budget(10_000);
        let c = cauchy_index(&s, &seq, 0.5, 1.0, DEFAULT_P_MAX).unwrap();
        assert_eq!(c.n0, Some(1));
        assert_eq!(c.margin_monotone, Some(true));
        let lin = PointSequence::new(SequenceRule::Linear {
            start: 0.0.into(),
            step: 1.0.into(),
        })
        .with_budget(10_000);
        let c = cauchy_index(&s, &lin, 0.5, 1.0, DEFAULT_P_MAX).unwrap();
        assert_eq!(c.status, CertificateStatus::Failed);
        assert!(cauchy_index(&s, &seq, 0.5, 1.0, 0).is_err());
    }

    #[test]
    fn classical_probe() {
        let s = std1();
        let c = classical_equivalence_probe(&s, &recip(), None).unwrap();
        assert!(c.classical_converges && c.ifn_converges);
        let alt = PointSequence::new(SequenceRule::Alternating {
            center: 0.0.into(),
            amplitude: 1.0.into(),
        });
        for limit in [None, Some(Vector::scalar(0.0)), Some(Vector::scalar(1.0))] {
            let c = classical_equivalence_probe(&s, &alt, limit.as_ref()).unwrap();
            assert!(!c.classical_converges && !c.ifn_converges, "{limit:?}");
        }
        let k = PointSequence::new(SequenceRule::Constant(2.0.into()));
        let c = classical_equivalence_probe(&s, &k, None).unwrap();
        assert!(c.classical_converges && c.ifn_converges);
    }

    #[test]
    fn rule_terms() {
        assert_eq!(SequenceRule::reciprocal(0.5, 1.0, 10.0).term(10).first(), 0.55);
        let alt = SequenceRule::Alternating {
            center: 0.0.into(),
            amplitude: 1.0.into(),
        };
        assert_eq!(alt.term(1).first(), -1.0);
        assert_eq!(alt.term(2).first(), 1.0);
        assert_eq!(alt.exact_limit(), None);
        let g = SequenceRule::Geometric {
            center: 1.0.into(),
            direction: 1.0.into(),
            ratio: 0.5,
        };
        assert_eq!(g.term(3).first(), 1.125);
        assert_eq!(g.exact_limit(), Some(1.0.into()));
    }
}
