//! Continuous t-norms (∗) and t-conorms (⋄) on the unit interval.
//!
//! Three named families per operation are built in. Anything else enters as an
//! [`OpTable`]: a square grid of values on `[0,1]²` evaluated by bilinear
//! interpolation.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, open_unit, Error, Result};
use crate::report::{Tally, ViolationReport};

/// Slack for the algebraic identities of tabulated operations; the named
/// families satisfy them exactly.
pub const ALGEBRA_TOL: f64 = 1e-12;

/// Resolution of the interpolant bisections.
pub const INTERPOLANT_RESOLUTION: f64 = 1e-6;

/// A real number in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct UnitValue(f64);

impl UnitValue {
    pub fn new(value: f64) -> Result<Self> {
        if (0.0..=1.0).contains(&value) {
            Ok(UnitValue(value))
        } else {
            Err(invalid("unit value", format!("{value} is not in [0, 1]")))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

impl fmt::Display for UnitValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A user-supplied binary operation on `[0,1]` tabulated on a uniform grid.
#[derive(Debug, Clone, PartialEq)]
pub struct OpTable {
    name: String,
    nodes: usize,
    values: Vec<f64>,
    idempotent: bool,
}

impl OpTable {
    /// Tabulates `f` on an `nodes × nodes` grid. `idempotent` is the declared
    /// flag; the axiom checker verifies it when asked to.
    pub fn from_fn(
        name: impl Into<String>,
        nodes: usize,
        idempotent: bool,
        f: impl Fn(f64, f64) -> f64,
    ) -> Result<Self> {
        if nodes < 2 {
            return Err(invalid("nodes", "a table needs at least 2 nodes per axis"));
        }
        let h = 1.0 / (nodes - 1) as f64;
        let mut values = Vec::with_capacity(nodes * nodes);
        for i in 0..nodes {
            for j in 0..nodes {
                values.push(f(i as f64 * h, j as f64 * h).clamp(0.0, 1.0));
            }
        }
        Ok(OpTable {
            name: name.into(),
            nodes,
            values,
            idempotent,
        })
    }

    /// Builds a table from row-major values (`values[i * nodes + j]` at
    /// `(i/(nodes-1), j/(nodes-1))`).
    pub fn from_values(
        name: impl Into<String>,
        nodes: usize,
        idempotent: bool,
        values: Vec<f64>,
    ) -> Result<Self> {
        if nodes < 2 || values.len() != nodes * nodes {
            return Err(invalid(
                "values",
                format!("expected {} values for {nodes} nodes", nodes * nodes),
            ));
        }
        if let Some(v) = values.iter().find(|v| !(0.0..=1.0).contains(*v)) {
            return Err(invalid("values", format!("{v} is not in [0, 1]")));
        }
        Ok(OpTable {
            name: name.into(),
            nodes,
            values,
            idempotent,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    fn at(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.nodes + j]
    }

    pub fn eval(&self, a: f64, b: f64) -> f64 {
        let last = (self.nodes - 1) as f64;
        let (fa, fb) = (a.clamp(0.0, 1.0) * last, b.clamp(0.0, 1.0) * last);
        let i = (fa.floor() as usize).min(self.nodes - 2);
        let j = (fb.floor() as usize).min(self.nodes - 2);
        let (u, v) = (fa - i as f64, fb - j as f64);
        let v00 = self.at(i, j);
        let v10 = self.at(i + 1, j);
        let v01 = self.at(i, j + 1);
        let v11 = self.at(i + 1, j + 1);
        let lerp = (1.0 - u) * ((1.0 - v) * v00 + v * v01) + u * ((1.0 - v) * v10 + v * v11);
        lerp.clamp(0.0, 1.0)
    }
}

/// Continuous t-norm ∗.
#[derive(Debug, Clone, PartialEq)]
pub enum TNorm {
    Minimum,
    Product,
    /// `max(0, a + b − 1)`.
    Lukasiewicz,
    Tabulated(Arc<OpTable>),
}

/// Continuous t-conorm ⋄.
#[derive(Debug, Clone, PartialEq)]
pub enum TConorm {
    Maximum,
    /// `a + b − ab`.
    ProbabilisticSum,
    /// `min(1, a + b)`.
    Lukasiewicz,
    Tabulated(Arc<OpTable>),
}

impl TNorm {
    pub fn eval(&self, a: f64, b: f64) -> f64 {
        match self {
            TNorm::Minimum => a.min(b),
            TNorm::Product => a * b,
            TNorm::Lukasiewicz => {
                // Ordered so that a ∗ 1 = a and a ∗ b = b ∗ a hold bit for bit.
                let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
                (lo - (1.0 - hi)).max(0.0)
            }
            TNorm::Tabulated(t) => t.eval(a, b),
        }
    }

    pub fn apply(&self, a: UnitValue, b: UnitValue) -> UnitValue {
        UnitValue(self.eval(a.0, b.0).clamp(0.0, 1.0))
    }

    /// Whether `a ∗ a = a` holds for every `a`.
    pub fn idempotent(&self) -> bool {
        match self {
            TNorm::Minimum => true,
            TNorm::Product | TNorm::Lukasiewicz => false,
            TNorm::Tabulated(t) => t.idempotent,
        }
    }

    pub fn name(&self) -> &str {
        match self {
            TNorm::Minimum => "minimum",
            TNorm::Product => "product",
            TNorm::Lukasiewicz => "lukasiewicz",
            TNorm::Tabulated(t) => &t.name,
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "minimum" | "min" => Some(TNorm::Minimum),
            "product" => Some(TNorm::Product),
            "lukasiewicz" => Some(TNorm::Lukasiewicz),
            _ => None,
        }
    }
}

impl TConorm {
    pub fn eval(&self, a: f64, b: f64) -> f64 {
        match self {
            TConorm::Maximum => a.max(b),
            TConorm::ProbabilisticSum => a + b - a * b,
            TConorm::Lukasiewicz => (a + b).min(1.0),
            TConorm::Tabulated(t) => t.eval(a, b),
        }
    }

    pub fn apply(&self, a: UnitValue, b: UnitValue) -> UnitValue {
        UnitValue(self.eval(a.0, b.0).clamp(0.0, 1.0))
    }

    /// Whether `a ⋄ a = a` holds for every `a`.
    pub fn idempotent(&self) -> bool {
        match self {
            TConorm::Maximum => true,
            TConorm::ProbabilisticSum | TConorm::Lukasiewicz => false,
            TConorm::Tabulated(t) => t.idempotent,
        }
    }

    pub fn name(&self) -> &str {
        match self {
            TConorm::Maximum => "maximum",
            TConorm::ProbabilisticSum => "probabilistic-sum",
            TConorm::Lukasiewicz => "lukasiewicz",
            TConorm::Tabulated(t) => &t.name,
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "maximum" | "max" => Some(TConorm::Maximum),
            "probabilistic-sum" | "prob-sum" => Some(TConorm::ProbabilisticSum),
            "lukasiewicz" => Some(TConorm::Lukasiewicz),
            _ => None,
        }
    }
}

/// Common surface of ∗ and ⋄ used by the axiom checker. The two differ only
/// in their identity element.
pub trait TriangularOp {
    fn eval(&self, a: f64, b: f64) -> f64;
    /// 1 for a t-norm, 0 for a t-conorm.
    fn identity(&self) -> f64;
    fn idempotent(&self) -> bool;
    fn name(&self) -> &str;
}

impl TriangularOp for TNorm {
    fn eval(&self, a: f64, b: f64) -> f64 {
        TNorm::eval(self, a, b)
    }
    fn identity(&self) -> f64 {
        1.0
    }
    fn idempotent(&self) -> bool {
        TNorm::idempotent(self)
    }
    fn name(&self) -> &str {
        TNorm::name(self)
    }
}

impl TriangularOp for TConorm {
    fn eval(&self, a: f64, b: f64) -> f64 {
        TConorm::eval(self, a, b)
    }
    fn identity(&self) -> f64 {
        0.0
    }
    fn idempotent(&self) -> bool {
        TConorm::idempotent(self)
    }
    fn name(&self) -> &str {
        TConorm::name(self)
    }
}

/// Finite sample of `[0, 1]` for checking operation axioms.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitGrid {
    points: Vec<f64>,
    description: String,
}

impl UnitGrid {
    /// `n ≥ 2` evenly spaced points including both endpoints.
    pub fn uniform(n: usize) -> Self {
        let n = n.max(2);
        let points = (0..n).map(|i| i as f64 / (n - 1) as f64).collect();
        UnitGrid {
            points,
            description: format!("uniform({n})"),
        }
    }

    /// Adds `count` seeded uniform draws from `[0, 1]`.
    pub fn with_random(mut self, count: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        self.points.extend((0..count).map(|_| rng.gen::<f64>()));
        self.points.sort_by(f64::total_cmp);
        self.points.dedup();
        self.description = format!("{} + random({count}, seed={seed})", self.description);
        self
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn description(&self) -> &str {
        &self.description
    }
}

impl Default for UnitGrid {
    fn default() -> Self {
        UnitGrid::uniform(21).with_random(8, 0)
    }
}

/// Axioms of a t-norm / t-conorm.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NormAxiom {
    Commutativity,
    Associativity,
    /// `a ∗ 1 = a` resp. `a ⋄ 0 = a`.
    Identity,
    Monotonicity,
    /// `a ∗ a = a`; only checked on request.
    Idempotency,
}

impl fmt::Display for NormAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NormAxiom::Commutativity => "commutativity",
            NormAxiom::Associativity => "associativity",
            NormAxiom::Identity => "identity",
            NormAxiom::Monotonicity => "monotonicity",
            NormAxiom::Idempotency => "idempotency",
        })
    }
}

/// Checks the operation axioms at every sampled point, tuple and quadruple.
///
/// Idempotency is checked when `require_idempotent` is set, whatever the
/// operation's own flag says.
pub fn check_norm_axioms<O: TriangularOp + ?Sized>(
    op: &O,
    grid: &UnitGrid,
    require_idempotent: bool,
) -> ViolationReport<NormAxiom> {
    let p = grid.points();
    let e = op.identity();
    let mut comm = Tally::new(NormAxiom::Commutativity);
    let mut assoc = Tally::new(NormAxiom::Associativity);
    let mut ident = Tally::new(NormAxiom::Identity);
    let mut mono = Tally::new(NormAxiom::Monotonicity);

    for &a in p {
        let v = op.eval(a, e);
        ident.record((v - a).abs() <= ALGEBRA_TOL, v, a, || format!("a={a}, e={e}"));
        for &b in p {
            let ab = op.eval(a, b);
            let ba = op.eval(b, a);
            comm.record((ab - ba).abs() <= ALGEBRA_TOL, ab, ba, || format!("a={a}, b={b}"));
            for &c in p {
                let l = op.eval(ab, c);
                let r = op.eval(a, op.eval(b, c));
                assoc.record((l - r).abs() <= ALGEBRA_TOL, l, r, || {
                    format!("a={a}, b={b}, c={c}")
                });
            }
        }
    }

    // a ≤ c, b ≤ d ⟹ op(a,b) ≤ op(c,d); the grid is sorted.
    for (ia, &a) in p.iter().enumerate() {
        for (ib, &b) in p.iter().enumerate() {
            let ab = op.eval(a, b);
            for &c in &p[ia..] {
                for &d in &p[ib..] {
                    let cd = op.eval(c, d);
                    mono.record(ab <= cd + ALGEBRA_TOL, ab, cd, || {
                        format!("a={a}, b={b}, c={c}, d={d}")
                    });
                }
            }
        }
    }

    let mut outcomes = vec![comm.finish(), assoc.finish(), ident.finish(), mono.finish()];
    if require_idempotent {
        outcomes.push(check_idempotency(op, grid));
    }
    ViolationReport {
        outcomes,
        plan: format!("{} on {}", op.name(), grid.description()),
    }
}

/// `a ∗ a = a` at every grid point, compared exactly.
pub fn check_idempotency<O: TriangularOp + ?Sized>(
    op: &O,
    grid: &UnitGrid,
) -> crate::report::AxiomOutcome<NormAxiom> {
    let mut idem = Tally::new(NormAxiom::Idempotency);
    for &a in grid.points() {
        let v = op.eval(a, a);
        idem.record(v == a, v, a, || format!("a={a}"));
    }
    idem.finish()
}

/// Values guaranteed by the interpolation property of continuous ∗ and ⋄.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interpolants {
    /// `r1 ∗ r3 > r2`.
    pub r3: f64,
    /// `r4 ⋄ r2 < r1`.
    pub r4: f64,
}

/// For `0 < r2 < r1 < 1`, finds `r3, r4 ∈ (0,1)` with `r1 ∗ r3 > r2` and
/// `r4 ⋄ r2 < r1`.
///
/// `r3` is bisected from 1 downward and `r4` from 0 upward, so each lies
/// within [`INTERPOLANT_RESOLUTION`] of the admissibility threshold. The
/// returned pair depends on the operation family.
pub fn find_interpolants(tnorm: &TNorm, tconorm: &TConorm, r1: f64, r2: f64) -> Result<Interpolants> {
    find_interpolants_with_resolution(tnorm, tconorm, r1, r2, INTERPOLANT_RESOLUTION)
}

pub fn find_interpolants_with_resolution(
    tnorm: &TNorm,
    tconorm: &TConorm,
    r1: f64,
    r2: f64,
    resolution: f64,
) -> Result<Interpolants> {
    open_unit("r1", r1)?;
    open_unit("r2", r2)?;
    if r2 >= r1 {
        return Err(invalid("r2", format!("need r2 < r1, got r1={r1}, r2={r2}")));
    }
    if !(resolution > 0.0) {
        return Err(invalid("resolution", "must be positive"));
    }
    let r3 = tnorm_interpolant(|x| tnorm.eval(r1, x) > r2, resolution).ok_or_else(|| {
        Error::NotFound(format!(
            "no r3 in (0,1) with r1 ∗ r3 > r2 at resolution {resolution} (r1={r1}, r2={r2}, {})",
            tnorm.name()
        ))
    })?;
    let r4 = tconorm_interpolant(|x| tconorm.eval(x, r2) < r1, resolution).ok_or_else(|| {
        Error::NotFound(format!(
            "no r4 in (0,1) with r4 ⋄ r2 < r1 at resolution {resolution} (r1={r1}, r2={r2}, {})",
            tconorm.name()
        ))
    })?;
    Ok(Interpolants { r3, r4 })
}

/// Smallest-found admissible point of an upward-closed predicate on `(0,1)`,
/// bisected from 1 downward. `None` if nothing below 1 qualifies.
pub(crate) fn tnorm_interpolant(admissible: impl Fn(f64) -> bool, resolution: f64) -> Option<f64> {
    let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
    while hi - lo > resolution {
        let mid = 0.5 * (lo + hi);
        if admissible(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    (hi < 1.0 && hi > 0.0 && admissible(hi)).then_some(hi)
}

/// Largest-found admissible point of a downward-closed predicate on `(0,1)`,
/// bisected from 0 upward. `None` if nothing above 0 qualifies.
pub(crate) fn tconorm_interpolant(admissible: impl Fn(f64) -> bool, resolution: f64) -> Option<f64> {
    let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
    while hi - lo > resolution {
        let mid = 0.5 * (lo + hi);
        if admissible(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo > 0.0 && lo < 1.0 && admissible(lo)).then_some(lo)
}

/// For `0 < r5 < 1`, finds `r6, r7 ∈ (0,1)` with `r6 ∗ r6 ≥ r5` and
/// `r7 ⋄ r7 ≤ r5`.
///
/// Named families use the tight closed form (e.g. `√r5` for the product);
/// tabulated operations are bisected.
pub fn find_squaring_bounds(tnorm: &TNorm, tconorm: &TConorm, r5: f64) -> Result<(f64, f64)> {
    open_unit("r5", r5)?;
    let r6_ok = |x: f64| tnorm.eval(x, x) >= r5;
    let r7_ok = |x: f64| tconorm.eval(x, x) <= r5;

    let r6_guess = match tnorm {
        TNorm::Minimum => Some(r5),
        TNorm::Product => Some(r5.sqrt()),
        TNorm::Lukasiewicz => Some(0.5 * (1.0 + r5)),
        TNorm::Tabulated(_) => None,
    };
    let r7_guess = match tconorm {
        TConorm::Maximum => Some(r5),
        TConorm::ProbabilisticSum => Some(1.0 - (1.0 - r5).sqrt()),
        TConorm::Lukasiewicz => Some(0.5 * r5),
        TConorm::Tabulated(_) => None,
    };

    let r6 = r6_guess
        .and_then(|g| nudge(g, &r6_ok, f64::next_up))
        .or_else(|| tnorm_interpolant(r6_ok, INTERPOLANT_RESOLUTION))
        .filter(|&x| x > 0.0 && x < 1.0)
        .ok_or_else(|| Error::NotFound(format!("no r6 with r6 ∗ r6 ≥ {r5} ({})", tnorm.name())))?;
    let r7 = r7_guess
        .and_then(|g| nudge(g, &r7_ok, f64::next_down))
        .or_else(|| tconorm_interpolant(r7_ok, INTERPOLANT_RESOLUTION))
        .filter(|&x| x > 0.0 && x < 1.0)
        .ok_or_else(|| Error::NotFound(format!("no r7 with r7 ⋄ r7 ≤ {r5} ({})", tconorm.name())))?;
    Ok((r6, r7))
}

/// Moves a closed-form guess by a few ulps if rounding broke its inequality.
fn nudge(mut x: f64, ok: &impl Fn(f64) -> bool, step: fn(f64) -> f64) -> Option<f64> {
    for _ in 0..8 {
        if ok(x) {
            return Some(x);
        }
        x = step(x);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tnorms() -> Vec<TNorm> {
        vec![TNorm::Minimum, TNorm::Product, TNorm::Lukasiewicz]
    }

    fn tconorms() -> Vec<TConorm> {
        vec![TConorm::Maximum, TConorm::ProbabilisticSum, TConorm::Lukasiewicz]
    }

    #[test]
    fn tnorm_examples() {
        assert_eq!(TNorm::Minimum.eval(0.3, 0.7), 0.3);
        for op in tnorms() {
            assert_eq!(op.eval(0.42, 1.0), 0.42, "{}", op.name());
        }
        assert!((TNorm::Lukasiewicz.eval(0.6, 0.7) - 0.3).abs() < 1e-15);
    }

    #[test]
    fn tconorm_examples() {
        assert_eq!(TConorm::Maximum.eval(0.3, 0.7), 0.7);
        for op in tconorms() {
            assert_eq!(op.eval(0.42, 0.0), 0.42, "{}", op.name());
        }
        assert_eq!(TConorm::ProbabilisticSum.eval(0.5, 0.5), 0.75);
    }

    #[test]
    fn unit_value_rejects_out_of_range() {
        assert!(UnitValue::new(1.5).is_err());
        assert!(UnitValue::new(-0.1).is_err());
        assert!(UnitValue::new(f64::NAN).is_err());
        let a = UnitValue::new(0.5).unwrap();
        assert_eq!(TNorm::Product.apply(a, a).get(), 0.25);
    }

    #[test]
    fn builtin_families_pass_every_axiom() {
        let grid = UnitGrid::default();
        for op in tnorms() {
            let rep = check_norm_axioms(&op, &grid, false);
            assert!(rep.is_clean(), "{}:\n{rep}", op.name());
        }
        for op in tconorms() {
            let rep = check_norm_axioms(&op, &grid, false);
            assert!(rep.is_clean(), "{}:\n{rep}", op.name());
        }
    }

    #[test]
    fn identity_holds_exactly_for_named_families() {
        for &a in UnitGrid::default().points() {
            for op in tnorms() {
                assert_eq!(op.eval(a, 1.0), a);
            }
            for op in tconorms() {
                assert_eq!(op.eval(a, 0.0), a);
            }
        }
    }

    #[test]
    fn broken_op_reports_identity_violation() {
        let broken = OpTable::from_fn("broken", 21, false, |a, b| a * b + 0.1).unwrap();
        let op = TNorm::Tabulated(Arc::new(broken));
        assert!((op.eval(0.5, 1.0) - 0.6).abs() < 1e-12);
        let rep = check_norm_axioms(&op, &UnitGrid::default(), false);
        let ident = rep.outcome(NormAxiom::Identity).unwrap();
        assert!(ident.failures > 0);
        let w = ident
            .witnesses
            .iter()
            .find(|w| w.witness.starts_with("a=0.5,"))
            .expect("a=0.5 is a grid point");
        assert!((w.lhs - 0.6).abs() < 1e-12 && w.rhs == 0.5);
    }

    #[test]
    fn idempotency_flags_product_but_not_min() {
        let grid = UnitGrid::default();
        assert!(check_norm_axioms(&TNorm::Minimum, &grid, true).is_clean());
        assert!(check_norm_axioms(&TConorm::Maximum, &grid, true).is_clean());
        let rep = check_norm_axioms(&TNorm::Product, &grid, true);
        assert_eq!(rep.failed_axioms(), vec![NormAxiom::Idempotency]);
        let w = rep
            .violations()
            .find(|w| w.witness == "a=0.5")
            .unwrap();
        assert_eq!((w.lhs, w.rhs), (0.25, 0.5));
    }

    #[test]
    fn idempotent_flags_match_families() {
        assert!(TNorm::Minimum.idempotent());
        assert!(!TNorm::Product.idempotent());
        assert!(!TNorm::Lukasiewicz.idempotent());
        assert!(TConorm::Maximum.idempotent());
        assert!(!TConorm::ProbabilisticSum.idempotent());
        assert!(!TConorm::Lukasiewicz.idempotent());
    }

    #[test]
    fn tabulated_min_matches_named() {
        let t = OpTable::from_fn("tab-min", 11, true, f64::min).unwrap();
        let op = TNorm::Tabulated(Arc::new(t));
        // Bilinear interpolation of min is exact on grid nodes.
        assert!((op.eval(0.3, 0.7) - 0.3).abs() < 1e-12);
        assert!(check_norm_axioms(&op, &UnitGrid::uniform(11), false).is_clean());
    }

    #[test]
    fn interpolants_min_max() {
        let i = find_interpolants(&TNorm::Minimum, &TConorm::Maximum, 0.7, 0.5).unwrap();
        assert!(TNorm::Minimum.eval(0.7, i.r3) > 0.5);
        assert!(TConorm::Maximum.eval(i.r4, 0.5) < 0.7);
        // Thresholds are r3 > 0.5 and r4 < 0.7.
        assert!(i.r3 - 0.5 <= INTERPOLANT_RESOLUTION);
        assert!(0.7 - i.r4 <= INTERPOLANT_RESOLUTION);
        // The value the hand computation uses is admissible too.
        assert!(TNorm::Minimum.eval(0.7, 0.6) > 0.5 && TConorm::Maximum.eval(0.6, 0.5) < 0.7);
    }

    #[test]
    fn interpolants_product() {
        let i = find_interpolants(&TNorm::Product, &TConorm::ProbabilisticSum, 0.9, 0.5).unwrap();
        assert!(i.r3 > 5.0 / 9.0 && i.r3 - 5.0 / 9.0 <= INTERPOLANT_RESOLUTION);
        assert!(0.9 * i.r3 > 0.5);
        assert!(TConorm::ProbabilisticSum.eval(i.r4, 0.5) < 0.9);
    }

    #[test]
    fn interpolants_near_tie_depend_on_resolution() {
        let (tn, tc) = (TNorm::Product, TConorm::ProbabilisticSum);
        // r3 must exceed 0.5/0.500001 ≈ 0.999998.
        let fine = find_interpolants(&tn, &tc, 0.500001, 0.5).unwrap();
        assert!(0.500001 * fine.r3 > 0.5);
        let coarse = find_interpolants_with_resolution(&tn, &tc, 0.500001, 0.5, 1e-3);
        assert!(matches!(coarse, Err(Error::NotFound(_))));
        // min has a wide admissible band and succeeds even coarsely.
        assert!(find_interpolants_with_resolution(
            &TNorm::Minimum,
            &TConorm::Maximum,
            0.500001,
            0.5,
            1e-3
        )
        .is_ok());
    }

    #[test]
    fn interpolants_reject_bad_order() {
        assert!(find_interpolants(&TNorm::Minimum, &TConorm::Maximum, 0.4, 0.5).is_err());
        assert!(find_interpolants(&TNorm::Minimum, &TConorm::Maximum, 1.0, 0.5).is_err());
    }

    #[test]
    fn squaring_bounds() {
        let (r6, r7) = find_squaring_bounds(&TNorm::Minimum, &TConorm::Maximum, 0.8).unwrap();
        assert_eq!((r6, r7), (0.8, 0.8));
        let (r6, _) = find_squaring_bounds(&TNorm::Product, &TConorm::Maximum, 0.81).unwrap();
        assert_eq!(r6, 0.9);
        let (r6, r7) = find_squaring_bounds(&TNorm::Lukasiewicz, &TConorm::Lukasiewicz, 0.5).unwrap();
        assert_eq!(r6, 0.75);
        assert_eq!(r7, 0.25);
        let (_, r7) = find_squaring_bounds(&TNorm::Minimum, &TConorm::ProbabilisticSum, 0.75).unwrap();
        assert!(TConorm::ProbabilisticSum.eval(r7, r7) <= 0.75);
        assert!((r7 - 0.5).abs() < 1e-12);
    }

    #[test]
    fn squaring_bounds_tabulated_bisect() {
        let t = OpTable::from_fn("tab-prod", 101, false, |a, b| a * b).unwrap();
        let tn = TNorm::Tabulated(Arc::new(t));
        let (r6, _) = find_squaring_bounds(&tn, &TConorm::Maximum, 0.49).unwrap();
        assert!(tn.eval(r6, r6) >= 0.49);
        assert!((r6 - 0.7).abs() < 1e-3);
    }
}
