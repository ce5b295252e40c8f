//! Deliberately broken spaces, one per axiom group, used to confirm that
//! the axiom checker names what was broken.

use std::sync::Arc;

use crate::error::Result;
use crate::norm_algebra::{OpTable, TConorm, TNorm};
use crate::space::{standard_pair, AxiomTier, IfnAxiom, IfnSpace, MembershipFunction};
use crate::vector::{ClassicalNorm, Vector};

pub struct Mutant {
    /// The axiom the mutation is aimed at. Others may break as well.
    pub target: IfnAxiom,
    pub description: &'static str,
    pub space: IfnSpace,
}

fn abs1(x: &Vector) -> f64 {
    x.first().abs()
}

/// `(√|x₁| + √|x₂|)²`: homogeneous, but the triangle inequality fails.
fn quasi_norm(x: &Vector) -> f64 {
    x.coords().iter().map(|c| c.abs().sqrt()).sum::<f64>().powi(2)
}

/// `μ = g(t/|x|)` with `g(u) = h/(h + 1)`, where `h` is `u` clamped flat on
/// `[1, 2]`: every axiom but strict monotonicity survives.
fn plateau_mu(x: &Vector, t: f64) -> f64 {
    let n = abs1(x);
    if n == 0.0 {
        return 1.0;
    }
    let u = t / n;
    let h = if u < 1.0 {
        u
    } else if u <= 2.0 {
        1.0
    } else {
        u - 1.0
    };
    h / (h + 1.0)
}

fn space(
    dim: usize,
    mu: MembershipFunction,
    nu: MembershipFunction,
    tconorm: TConorm,
    provenance: &str,
) -> Result<IfnSpace> {
    IfnSpace::new_unchecked(dim, mu, nu, TNorm::Minimum, tconorm, AxiomTier::Strict, provenance)
}

/// Six spaces breaking (i), (iv), (v), (vi), (x) and (xv) respectively.
/// All are meant to be checked at the strict tier.
pub fn axiom_mutants() -> Result<Vec<Mutant>> {
    let std_mu = || MembershipFunction::standard_mu(1.0, ClassicalNorm::Absolute);
    let std_nu = || MembershipFunction::standard_nu(1.0, ClassicalNorm::Absolute);
    let max = || TConorm::Maximum;
    let min_as_conorm = TConorm::Tabulated(Arc::new(OpTable::from_fn("minimum as ⋄", 101, true, f64::min)?));
    Ok(vec![
        Mutant {
            target: IfnAxiom::I,
            description: "non-membership doubled",
            space: space(
                1,
                std_mu(),
                MembershipFunction::custom("min(1, 2ν)", |x, t| (2.0 * standard_pair(1.0, abs1(x), t).1).min(1.0)),
                max(),
                "mutant: doubled non-membership",
            )?,
        },
        Mutant {
            target: IfnAxiom::IV,
            description: "squared norm, not homogeneous",
            space: space(
                1,
                MembershipFunction::custom("t/(t + |x|²)", |x, t| standard_pair(1.0, abs1(x).powi(2), t).0),
                MembershipFunction::custom("|x|²/(t + |x|²)", |x, t| standard_pair(1.0, abs1(x).powi(2), t).1),
                max(),
                "mutant: squared norm",
            )?,
        },
        Mutant {
            target: IfnAxiom::V,
            description: "quasi-norm violating the triangle inequality",
            space: space(
                2,
                MembershipFunction::custom("t/(t + q(x))", |x, t| standard_pair(1.0, quasi_norm(x), t).0),
                MembershipFunction::custom("q(x)/(t + q(x))", |x, t| standard_pair(1.0, quasi_norm(x), t).1),
                max(),
                "mutant: quasi-norm",
            )?,
        },
        Mutant {
            target: IfnAxiom::VI,
            description: "membership saturating below 1 as t grows",
            space: space(
                1,
                MembershipFunction::custom("min(t,1)/(min(t,1) + |x|)", |x, t| standard_pair(1.0, abs1(x), t.min(1.0)).0),
                MembershipFunction::custom("|x|/(min(t,1) + |x|)", |x, t| standard_pair(1.0, abs1(x), t.min(1.0)).1),
                max(),
                "mutant: saturating membership",
            )?,
        },
        Mutant {
            target: IfnAxiom::X,
            description: "minimum used as the t-conorm",
            space: space(1, std_mu(), std_nu(), min_as_conorm, "mutant: minimum as t-conorm")?,
        },
        Mutant {
            target: IfnAxiom::XV,
            description: "membership flat in t on a band",
            space: space(
                1,
                MembershipFunction::custom("plateau μ", plateau_mu),
                MembershipFunction::custom("1 − plateau μ", |x, t| 1.0 - plateau_mu(x, t)),
                max(),
                "mutant: plateau membership",
            )?,
        },
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::SamplingPlan;
    use crate::space::check_ifn_axioms;

    #[test]
    fn each_mutant_is_caught_by_name() {
        let plan = SamplingPlan::default();
        for m in axiom_mutants().unwrap() {
            let rep = check_ifn_axioms(&m.space, AxiomTier::Strict, &plan);
            let failed = rep.failed_axioms();
            assert!(failed.contains(&m.target), "{}: {failed:?}", m.description);
            let o = rep.outcome(m.target).unwrap();
            assert!(o.witnesses.iter().all(|w| w.axiom == m.target));
            assert!(!o.witnesses.is_empty());
        }
    }

    #[test]
    fn plateau_breaks_only_strictness() {
        let plan = SamplingPlan::default();
        let m = axiom_mutants().unwrap().pop().unwrap();
        let rep = check_ifn_axioms(&m.space, AxiomTier::Strict, &plan);
        assert_eq!(rep.failed_axioms(), vec![IfnAxiom::XV, IfnAxiom::XVI]);
    }
}
