//! Open balls, sampled open sets and neighbourhoods, and preimages of balls
//! under maps.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::continuity::{continuity_witness_search, premise_radius, ContinuityWitness, MapBetweenSpaces, Region};
use crate::error::{invalid, Error, Result};
use crate::norm_algebra::{tnorm_interpolant, INTERPOLANT_RESOLUTION};
use crate::sampling::SamplingPlan;
use crate::space::IfnSpace;
use crate::vector::Vector;

/// Rungs of the `(r, t)` ladder used to fit balls inside a set.
pub const OPENNESS_RUNGS: u32 = 20;

/// Sampled points per ball when testing whether it fits inside a set.
pub const FIT_SAMPLES: usize = 200;

/// `B(center, r, t) = { y : μ(center − y, t) > 1 − r, ν(center − y, t) < r }`.
#[derive(Debug, Clone, PartialEq)]
pub struct OpenBall {
    pub center: Vector,
    pub r: f64,
    pub t: f64,
}

impl OpenBall {
    pub fn new(center: Vector, r: f64, t: f64) -> Result<Self> {
        if !(r > 0.0 && r < 1.0) {
            return Err(invalid("r", format!("{r} is not in (0, 1)")));
        }
        if !(t > 0.0 && t.is_finite()) {
            return Err(invalid("t", format!("{t} is not a positive real")));
        }
        if !center.is_finite() {
            return Err(invalid("center", "non-finite coordinate"));
        }
        Ok(OpenBall { center, r, t })
    }
}

impl fmt::Display for OpenBall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B({}, {}, {})", self.center, self.r, self.t)
    }
}

pub fn ball_contains(space: &IfnSpace, ball: &OpenBall, y: &Vector) -> Result<bool> {
    if ball.center.dim() != space.dim() || y.dim() != space.dim() {
        return Err(Error::Domain(format!(
            "ball centre and point must have dimension {}",
            space.dim()
        )));
    }
    let z = &ball.center - y;
    let mu = space.mu(&z, ball.t)?;
    let nu = space.nu(&z, ball.t)?;
    Ok(mu > 1.0 - ball.r && nu < ball.r)
}

fn contains_unchecked(space: &IfnSpace, ball: &OpenBall, y: &Vector) -> bool {
    space.within(&(&ball.center - y), ball.r, ball.t)
}

/// For a standard space, the classical radius `ρ = rt/(k(1 − r))`: a point
/// is in the ball iff its classical distance to the centre is below ρ.
pub fn ball_classical_radius(space: &IfnSpace, ball: &OpenBall) -> Result<f64> {
    let (k, _) = space.standard_params().ok_or_else(|| {
        Error::UnsupportedFamily(format!("{} is not a standard space", space.provenance()))
    })?;
    Ok(ball.r * ball.t / (k * (1.0 - ball.r)))
}

/// Directions used to explore a ball: both signs of every axis, then seeded
/// random unit vectors (none in dimension 1).
fn directions(dim: usize, extra: usize, seed: u64) -> Vec<Vector> {
    let mut out = Vec::new();
    for axis in 0..dim {
        for sign in [1.0, -1.0] {
            let mut c = vec![0.0; dim];
            c[axis] = sign;
            out.push(Vector::from(c));
        }
    }
    if dim > 1 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..extra {
            let v = Vector::new((0..dim).map(|_| rng.gen_range(-1.0..=1.0)));
            let n = v.coords().iter().map(|c| c * c).sum::<f64>().sqrt();
            if n > 1e-9 {
                out.push(v.scale(1.0 / n));
            }
        }
    }
    out
}

/// `count` points of `ball`: along each exploration direction the membership
/// radius is bisected, then points are placed at fractions `1 − 2⁻ʲ` of it
/// (hugging the boundary) and at seeded uniform fractions.
pub fn sample_ball_members(space: &IfnSpace, ball: &OpenBall, count: usize, seed: u64) -> Vec<Vector> {
    let dirs = directions(space.dim(), 8, seed);
    let radii: Vec<Option<f64>> = dirs
        .iter()
        .map(|u| premise_radius(|h| contains_unchecked(space, ball, &(&ball.center + &u.scale(h)))))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let mut out = Vec::with_capacity(count);
    let mut j = 1;
    while out.len() < count {
        for (u, r) in dirs.iter().zip(&radii) {
            if out.len() >= count {
                break;
            }
            // Unbounded directions are explored out to a large finite reach.
            let h = r.unwrap_or(1e6);
            let frac = if j <= 40 && out.len() % 2 == 0 {
                1.0 - 0.5f64.powi(j)
            } else {
                rng.gen::<f64>()
            };
            let p = &ball.center + &u.scale(h * frac);
            if contains_unchecked(space, ball, &p) {
                out.push(p);
            }
        }
        j += 1;
        if j > 100_000 {
            break;
        }
    }
    out
}

/// The inner ball of the containment construction and how it was checked.
#[derive(Debug, Clone, PartialEq)]
pub struct InnerBall {
    pub ball: OpenBall,
    pub t0: f64,
    /// `μ(x − y, t0)`.
    pub r0: f64,
    /// `1 − s` lies halfway between `1 − r` and `r0`.
    pub s: f64,
    pub r3: f64,
    /// Sampled points of the inner ball checked against the outer ball.
    pub verified_points: usize,
    /// Whether every one of them was inside the outer ball.
    pub contained: bool,
}

/// Points per inner ball in the post-verification.
pub const INNER_VERIFY_POINTS: usize = 1000;

/// For `y ∈ B(x, r, t)`, constructs `B(y, 1 − r3, t − t0) ⊆ B(x, r, t)`.
///
/// `t0` starts at `t/2` and moves toward `t` as `t(1 − 2⁻ʲ)` until
/// `μ(x − y, t0) > 1 − r` (and `ν(x − y, t0) < r`); then `r0 = μ(x − y, t0)`,
/// `1 − s = (r0 + 1 − r)/2`, and `r3` satisfies `r0 ∗ r3 > 1 − s` and
/// `ν(x − y, t0) ⋄ (1 − r3) < s`. With idempotent operations `r3 = r0`
/// (moved halfway to 1 when `r0 = 1`); otherwise `r3` sits halfway between the bisected least admissible value and 1. The result
/// is checked on [`INNER_VERIFY_POINTS`] sampled points.
pub fn inner_ball_witness(space: &IfnSpace, outer: &OpenBall, y: &Vector, seed: u64) -> Result<InnerBall> {
    if !ball_contains(space, outer, y)? {
        return Err(invalid("y", format!("{y} is not in {outer}")));
    }
    let z = &outer.center - y;
    let (tn, tc) = (space.tnorm(), space.tconorm());
    for j in 1..=60 {
        let t0 = outer.t * (1.0 - 0.5f64.powi(j));
        let inner_t = outer.t - t0;
        if !(t0 > 0.0 && inner_t > 0.0) {
            break;
        }
        let (r0, nu0) = space.grades(&z, t0);
        if !(r0 > 1.0 - outer.r && nu0 < outer.r) {
            continue;
        }
        let one_minus_s = 0.5 * (r0 + 1.0 - outer.r);
        let s = 1.0 - one_minus_s;
        let admissible = |r3: f64| tn.eval(r0, r3) > one_minus_s && tc.eval(nu0, 1.0 - r3) < s;
        let r3 = if tn.idempotent() && tc.idempotent() {
            let cand = if r0 < 1.0 { r0 } else { 0.5 * (one_minus_s + 1.0) };
            Some(cand).filter(|&c| c < 1.0 && admissible(c))
        } else {
            None
        };
        // The admissible window shrinks with r0 − (1 − s) near the outer
        // boundary, so the bisection must resolve below it. The smallest
        // admissible r3 leaves no room for rounding; take the midpoint
        // between it and 1 instead.
        let resolution = INTERPOLANT_RESOLUTION.min(0.25 * (r0 - one_minus_s)).max(f64::EPSILON);
        let r3 = r3.or_else(|| {
            tnorm_interpolant(admissible, resolution)
                .map(|lo| 0.5 * (lo + 1.0))
                .filter(|&c| c < 1.0 && admissible(c))
        });
        let Some(r3) = r3 else {
            continue;
        };
        let Ok(inner) = OpenBall::new(y.clone(), 1.0 - r3, inner_t) else {
            continue;
        };
        let pts = sample_ball_members(space, &inner, INNER_VERIFY_POINTS, seed);
        let contained = pts.iter().all(|p| contains_unchecked(space, outer, p));
        if contained {
            return Ok(InnerBall {
                ball: inner,
                t0,
                r0,
                s,
                r3,
                verified_points: pts.len(),
                contained,
            });
        }
    }
    Err(Error::WitnessNotFound(format!(
        "no t0/r3 rung gives an inner ball at {y} inside {outer}"
    )))
}

type Predicate = dyn Fn(&Vector) -> bool + Send + Sync;

/// A set given by a membership predicate and a finite sample of members.
#[derive(Clone)]
pub struct SampledSet {
    pub name: String,
    predicate: Arc<Predicate>,
    members: Vec<Vector>,
}

impl fmt::Debug for SampledSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SampledSet({}, {} members)", self.name, self.members.len())
    }
}

impl SampledSet {
    /// Fails if a listed member does not satisfy the predicate.
    pub fn new(
        name: impl Into<String>,
        predicate: impl Fn(&Vector) -> bool + Send + Sync + 'static,
        members: Vec<Vector>,
    ) -> Result<Self> {
        if let Some(m) = members.iter().find(|m| !predicate(m)) {
            return Err(invalid("members", format!("{m} does not satisfy the predicate")));
        }
        Ok(SampledSet {
            name: name.into(),
            predicate: Arc::new(predicate),
            members,
        })
    }

    pub fn contains(&self, x: &Vector) -> bool {
        (self.predicate)(x)
    }

    pub fn members(&self) -> &[Vector] {
        &self.members
    }

    /// The same set with a different witness sample.
    pub fn with_members(&self, members: Vec<Vector>) -> Result<Self> {
        if let Some(m) = members.iter().find(|m| !self.contains(m)) {
            return Err(invalid("members", format!("{m} does not satisfy the predicate")));
        }
        Ok(SampledSet {
            name: self.name.clone(),
            predicate: self.predicate.clone(),
            members,
        })
    }
}

/// Openness at one sampled member.
#[derive(Debug, Clone, PartialEq)]
pub struct PointOpenness {
    pub x: Vector,
    /// The first ladder ball found inside the set.
    pub ball: Option<OpenBall>,
    /// A ball point outside the set at the finest rung, when none fits.
    pub escape: Option<Vector>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OpennessReport {
    pub set: String,
    pub points: Vec<PointOpenness>,
}

impl OpennessReport {
    /// Open at every sampled member.
    pub fn open(&self) -> bool {
        !self.points.is_empty() && self.points.iter().all(|p| p.ball.is_some())
    }

    pub fn failing(&self) -> impl Iterator<Item = &PointOpenness> {
        self.points.iter().filter(|p| p.ball.is_none())
    }
}

/// `(r, t)` of openness rung `i`: `(2⁻ⁱ/2, 2⁻ⁱ)`.
pub fn openness_rung(i: u32) -> (f64, f64) {
    let s = 0.5f64.powi(i as i32);
    (0.5 * s, s)
}

/// Searches, for every sampled member `x`, a ladder ball `B(x, r, t)` whose
/// sampled points all lie in the set. Points outside `universe` are not part
/// of the space and are ignored.
pub fn set_is_open_sampled(
    space: &IfnSpace,
    set: &SampledSet,
    plan: &SamplingPlan,
    universe: Option<&Region>,
) -> Result<OpennessReport> {
    if set.members.is_empty() {
        return Err(invalid("members", "witness sample is empty"));
    }
    if let Some(m) = set.members.iter().find(|m| m.dim() != space.dim()) {
        return Err(Error::Domain(format!("member {m} has the wrong dimension")));
    }
    let points = set
        .members
        .par_iter()
        .map(|x| {
            let mut escape = None;
            for i in 0..=OPENNESS_RUNGS {
                let (r, t) = openness_rung(i);
                let ball = OpenBall { center: x.clone(), r, t };
                let outside = sample_ball_members(space, &ball, FIT_SAMPLES, plan.seed)
                    .into_iter()
                    .filter(|p| universe.is_none_or(|u| u.contains(p)))
                    .find(|p| !set.contains(p));
                match outside {
                    None => {
                        return PointOpenness {
                            x: x.clone(),
                            ball: Some(ball),
                            escape: None,
                        }
                    }
                    Some(p) => escape = Some(p),
                }
            }
            PointOpenness {
                x: x.clone(),
                ball: None,
                escape,
            }
        })
        .collect();
    Ok(OpennessReport {
        set: set.name.clone(),
        points,
    })
}

/// Whether some ladder ball at `x` lies inside the set on the sample.
pub fn is_neighbourhood(
    space: &IfnSpace,
    set: &SampledSet,
    x: &Vector,
    plan: &SamplingPlan,
    universe: Option<&Region>,
) -> Result<bool> {
    if !set.contains(x) {
        return Ok(false);
    }
    let single = set.with_members(vec![x.clone()])?;
    Ok(set_is_open_sampled(space, &single, plan, universe)?.open())
}

/// Sampled preimage of a codomain ball, its openness, and continuity records
/// at a few members.
#[derive(Debug, Clone, PartialEq)]
pub struct PreimageReport {
    pub target: OpenBall,
    pub openness: OpennessReport,
    pub continuity: Vec<ContinuityWitness>,
}

/// Members checked for continuity in [`preimage_open_check`].
pub const PREIMAGE_CONTINUITY_POINTS: usize = 5;

pub fn preimage_open_check(f: &MapBetweenSpaces, target: &OpenBall, plan: &SamplingPlan) -> Result<PreimageReport> {
    if target.center.dim() != f.codomain.dim() {
        return Err(Error::Domain("target ball is not in the codomain".into()));
    }
    let d = f.domain.dim();
    let fc = f.clone();
    let tg = target.clone();
    let predicate = move |x: &Vector| {
        fc.restriction.contains(x) && {
            let fx = fc.apply(x);
            fx.is_finite() && fc.codomain.within(&(&tg.center - &fx), tg.r, tg.t)
        }
    };
    let per_axis = if d == 1 { 201 } else { 21 };
    let mut candidates = f.restriction.grid(d, per_axis, 10.0);
    candidates.extend(plan.vectors(d));
    candidates.extend(f.restriction.boundary_approach(20));
    let mut members: Vec<Vector> = candidates.into_iter().filter(|x| predicate(x)).collect();
    members.sort_by(|a, b| {
        a.coords()
            .iter()
            .zip(b.coords())
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    members.dedup();
    if members.is_empty() {
        return Err(Error::WitnessNotFound(format!("no sampled point maps into {target}")));
    }
    let set = SampledSet::new(format!("preimage of {target}"), predicate, members)?;
    let openness = set_is_open_sampled(&f.domain, &set, plan, Some(&f.restriction))?;
    let step = (set.members.len() / PREIMAGE_CONTINUITY_POINTS).max(1);
    let continuity = set
        .members
        .iter()
        .step_by(step)
        .take(PREIMAGE_CONTINUITY_POINTS)
        .map(|x0| continuity_witness_search(f, x0, target.t, target.r, plan))
        .collect::<Result<Vec<_>>>()?;
    Ok(PreimageReport {
        target: target.clone(),
        openness,
        continuity,
    })
}
