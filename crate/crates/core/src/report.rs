//! Violation reports shared by the axiom checkers.

use std::fmt;

/// Witnesses kept per axiom; further violations are only counted.
pub const MAX_WITNESSES: usize = 16;

/// A single sampled counterexample.
#[derive(Debug, Clone, PartialEq)]
pub struct Violation<A> {
    pub axiom: A,
    /// Human-readable sampled point, e.g. `x=1, t=1`.
    pub witness: String,
    /// The two sides of the failed relation, in the order the axiom states them.
    pub lhs: f64,
    pub rhs: f64,
}

/// Outcome of one axiom over the whole sampling plan.
#[derive(Debug, Clone, PartialEq)]
pub struct AxiomOutcome<A> {
    pub axiom: A,
    /// Number of sampled instances evaluated.
    pub instances: usize,
    /// Number of sampled instances that failed.
    pub failures: usize,
    /// The first [`MAX_WITNESSES`] failures in plan order.
    pub witnesses: Vec<Violation<A>>,
}

impl<A> AxiomOutcome<A> {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Per-axiom pass/violation listing for a sampled check.
///
/// The report is a statement about the recorded plan only: an empty violation
/// list means "no counterexample on this sample", never a proof.
#[derive(Debug, Clone, PartialEq)]
pub struct ViolationReport<A> {
    pub outcomes: Vec<AxiomOutcome<A>>,
    /// Description of the sampling plan the report is relative to.
    pub plan: String,
}

impl<A: Copy + PartialEq> ViolationReport<A> {
    pub fn is_clean(&self) -> bool {
        self.outcomes.iter().all(AxiomOutcome::passed)
    }

    pub fn violations(&self) -> impl Iterator<Item = &Violation<A>> {
        self.outcomes.iter().flat_map(|o| o.witnesses.iter())
    }

    pub fn failed_axioms(&self) -> Vec<A> {
        self.outcomes
            .iter()
            .filter(|o| !o.passed())
            .map(|o| o.axiom)
            .collect()
    }

    pub fn outcome(&self, axiom: A) -> Option<&AxiomOutcome<A>> {
        self.outcomes.iter().find(|o| o.axiom == axiom)
    }

    pub fn total_failures(&self) -> usize {
        self.outcomes.iter().map(|o| o.failures).sum()
    }
}

impl<A: fmt::Display> fmt::Display for ViolationReport<A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "plan: {}", self.plan)?;
        for o in &self.outcomes {
            if o.failures == 0 {
                writeln!(f, "  {:<8} pass ({} instances)", o.axiom.to_string(), o.instances)?;
            } else {
                writeln!(
                    f,
                    "  {:<8} FAIL ({} of {} instances)",
                    o.axiom.to_string(),
                    o.failures,
                    o.instances
                )?;
                for w in &o.witnesses {
                    writeln!(f, "      at {}: {} vs {}", w.witness, w.lhs, w.rhs)?;
                }
            }
        }
        Ok(())
    }
}

/// Accumulates sampled instances for one axiom.
pub(crate) struct Tally<A> {
    outcome: AxiomOutcome<A>,
}

impl<A: Copy> Tally<A> {
    pub fn new(axiom: A) -> Self {
        Tally {
            outcome: AxiomOutcome {
                axiom,
                instances: 0,
                failures: 0,
                witnesses: Vec::new(),
            },
        }
    }

    /// Records one instance; `witness` is only rendered on failure.
    pub fn record(&mut self, ok: bool, lhs: f64, rhs: f64, witness: impl FnOnce() -> String) {
        self.outcome.instances += 1;
        if !ok {
            self.outcome.failures += 1;
            if self.outcome.witnesses.len() < MAX_WITNESSES {
                self.outcome.witnesses.push(Violation {
                    axiom: self.outcome.axiom,
                    witness: witness(),
                    lhs,
                    rhs,
                });
            }
        }
    }

    /// Folds a tally computed on another partition of the plan into this one.
    /// Partitions must be merged in plan order to keep witnesses deterministic.
    pub fn merge(&mut self, other: Tally<A>) {
        let o = other.outcome;
        self.outcome.instances += o.instances;
        self.outcome.failures += o.failures;
        let room = MAX_WITNESSES.saturating_sub(self.outcome.witnesses.len());
        self.outcome.witnesses.extend(o.witnesses.into_iter().take(room));
    }

    pub fn finish(self) -> AxiomOutcome<A> {
        self.outcome
    }
}
