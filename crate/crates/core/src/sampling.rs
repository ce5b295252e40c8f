//! Finite sampling plans standing in for the universal quantifiers over
//! `V × ℝ⁺`. Every verdict in this crate is relative to the plan it was
//! computed on.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Result};
use crate::vector::Vector;

/// Where the deterministic part of the vector sample comes from.
#[derive(Debug, Clone, PartialEq)]
pub enum VectorGrid {
    /// `per_axis` evenly spaced coordinates in `[-extent, extent]` on every axis.
    Regular { per_axis: usize, extent: f64 },
    /// A fixed list of points, all of the space's dimension.
    Explicit(Vec<Vector>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SamplingPlan {
    pub vector_grid: VectorGrid,
    pub t_grid: Vec<f64>,
    /// Seeded uniform draws from the grid's bounding box.
    pub random_count: usize,
    pub seed: u64,
    /// Increasing values of `t` approximating `t → ∞`.
    pub t_infinity_ladder: Vec<f64>,
    /// Nonzero scalars for the homogeneity axioms.
    pub scalars: Vec<f64>,
    /// Upper bound on the points used for pairwise (triangle) conditions.
    pub pair_pool: usize,
}

impl Default for SamplingPlan {
    fn default() -> Self {
        SamplingPlan {
            vector_grid: VectorGrid::Regular {
                per_axis: 21,
                extent: 5.0,
            },
            t_grid: vec![0.01, 0.1, 0.5, 1.0, 2.0, 10.0, 100.0],
            random_count: 200,
            seed: 0,
            t_infinity_ladder: vec![1e3, 1e6, 1e9, 1e12],
            scalars: vec![
                -4.0, -2.0, -0.5, -0.25, 0.25, 0.5, 2.0, 4.0, 1.0, -1.0, 3.0, -0.3, 10.0,
            ],
            pair_pool: 64,
        }
    }
}

impl SamplingPlan {
    /// The reduced plan used when a space is constructed.
    pub fn light() -> Self {
        SamplingPlan {
            vector_grid: VectorGrid::Regular {
                per_axis: 5,
                extent: 2.0,
            },
            t_grid: vec![0.1, 1.0, 10.0],
            random_count: 16,
            t_infinity_ladder: vec![1e3, 1e6, 1e9, 1e12],
            scalars: vec![-2.0, 0.5, 3.0],
            pair_pool: 24,
            ..SamplingPlan::default()
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        match &self.vector_grid {
            VectorGrid::Regular { per_axis, extent } => {
                if *per_axis == 0 {
                    return Err(invalid("vector_grid", "per_axis must be at least 1"));
                }
                if !(*extent > 0.0 && extent.is_finite()) {
                    return Err(invalid("vector_grid", "extent must be positive"));
                }
            }
            VectorGrid::Explicit(v) => {
                if v.is_empty() {
                    return Err(invalid("vector_grid", "explicit grid is empty"));
                }
                if v.iter().any(|x| !x.is_finite()) {
                    return Err(invalid("vector_grid", "non-finite coordinate"));
                }
            }
        }
        if self.t_grid.is_empty() {
            return Err(invalid("t_grid", "must be nonempty"));
        }
        if let Some(t) = self.t_grid.iter().find(|t| !(**t > 0.0 && t.is_finite())) {
            return Err(invalid("t_grid", format!("{t} is not a positive real")));
        }
        if self.t_infinity_ladder.len() < 2 {
            return Err(invalid("t_infinity_ladder", "needs at least two rungs"));
        }
        if self.t_infinity_ladder[0] <= 0.0
            || self.t_infinity_ladder.windows(2).any(|w| !(w[0] < w[1]))
        {
            return Err(invalid("t_infinity_ladder", "must be positive and strictly increasing"));
        }
        if self.scalars.iter().any(|c| *c == 0.0 || !c.is_finite()) {
            return Err(invalid("scalars", "must be finite and nonzero"));
        }
        Ok(())
    }

    /// Sorted copy of the t grid.
    pub fn sorted_t(&self) -> Vec<f64> {
        let mut t = self.t_grid.clone();
        t.sort_by(f64::total_cmp);
        t.dedup();
        t
    }

    fn extent(&self, dim: usize) -> f64 {
        match &self.vector_grid {
            VectorGrid::Regular { extent, .. } => *extent,
            VectorGrid::Explicit(v) => v
                .iter()
                .filter(|x| x.dim() == dim)
                .flat_map(|x| x.coords().iter().map(|c| c.abs()))
                .fold(1.0, f64::max),
        }
    }

    /// The deterministic grid points of dimension `dim`.
    pub fn grid_vectors(&self, dim: usize) -> Vec<Vector> {
        match &self.vector_grid {
            VectorGrid::Regular { per_axis, extent } => {
                let axis = axis_values(*per_axis, *extent);
                let mut out = Vec::with_capacity(axis.len().pow(dim as u32));
                let mut idx = vec![0usize; dim];
                loop {
                    out.push(Vector::new(idx.iter().map(|&i| axis[i])));
                    let mut k = 0;
                    while k < dim {
                        idx[k] += 1;
                        if idx[k] < axis.len() {
                            break;
                        }
                        idx[k] = 0;
                        k += 1;
                    }
                    if k == dim {
                        break;
                    }
                }
                out
            }
            VectorGrid::Explicit(v) => v.iter().filter(|x| x.dim() == dim).cloned().collect(),
        }
    }

    /// Seeded random points of dimension `dim`.
    pub fn random_vectors(&self, dim: usize) -> Vec<Vector> {
        let e = self.extent(dim);
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        (0..self.random_count)
            .map(|_| Vector::new((0..dim).map(|_| rng.gen_range(-e..=e))))
            .collect()
    }

    /// Grid followed by random points.
    pub fn vectors(&self, dim: usize) -> Vec<Vector> {
        let mut v = self.grid_vectors(dim);
        v.extend(self.random_vectors(dim));
        v
    }

    /// Points for pairwise conditions: the whole grid when it is small,
    /// otherwise its axis and diagonal points; then random points up to
    /// `pair_pool` (never fewer than 8 random points).
    pub fn pair_vectors(&self, dim: usize) -> Vec<Vector> {
        let grid = self.grid_vectors(dim);
        let mut pool: Vec<Vector> = if grid.len() <= self.pair_pool {
            grid
        } else {
            grid.into_iter()
                .filter(|x| {
                    let c = x.coords();
                    let nonzero = c.iter().filter(|v| **v != 0.0).count();
                    nonzero <= 1 || c.iter().all(|v| *v == c[0])
                })
                .collect()
        };
        let room = self.pair_pool.saturating_sub(pool.len()).max(8);
        pool.extend(self.random_vectors(dim).into_iter().take(room));
        pool
    }

    pub fn describe(&self, dim: usize) -> String {
        let grid = match &self.vector_grid {
            VectorGrid::Regular { per_axis, extent } => {
                format!("grid {per_axis}^{dim} on [-{extent}, {extent}]")
            }
            VectorGrid::Explicit(v) => format!("{} explicit points", v.len()),
        };
        format!(
            "{grid}, t_grid {:?}, {} random (seed {}), ladder {:?}, scalars {:?}",
            self.t_grid, self.random_count, self.seed, self.t_infinity_ladder, self.scalars
        )
    }
}

fn axis_values(n: usize, extent: f64) -> Vec<f64> {
    if n == 1 {
        return vec![0.0];
    }
    (0..n)
        .map(|i| -extent + 2.0 * extent * i as f64 / (n - 1) as f64)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_grid_sizes() {
        let p = SamplingPlan::default();
        p.validate().unwrap();
        assert_eq!(p.grid_vectors(1).len(), 21);
        assert_eq!(p.grid_vectors(3).len(), 9261);
        assert_eq!(p.vectors(1).len(), 221);
        // The grid contains θ and ±5.
        let g = p.grid_vectors(1);
        assert!(g.iter().any(|x| x.is_zero()));
        assert!(g.iter().any(|x| x.first() == 5.0) && g.iter().any(|x| x.first() == -5.0));
    }

    #[test]
    fn random_points_are_reproducible() {
        let p = SamplingPlan::default().with_seed(7);
        assert_eq!(p.random_vectors(2), p.random_vectors(2));
        assert_ne!(p.random_vectors(2), p.clone().with_seed(8).random_vectors(2));
    }

    #[test]
    fn pair_pool_is_bounded() {
        let p = SamplingPlan::default();
        assert_eq!(p.pair_vectors(1).len(), 64);
        let d3 = p.pair_vectors(3);
        assert!(d3.len() < 200, "{}", d3.len());
        assert!(d3.iter().any(|x| x.coords() == [5.0, 5.0, 5.0]));
    }

    #[test]
    fn validation_rejects_bad_plans() {
        let p = SamplingPlan {
            t_infinity_ladder: vec![1e3, 1e3],
            ..Default::default()
        };
        assert!(p.validate().is_err());
        let p = SamplingPlan {
            t_grid: vec![],
            ..Default::default()
        };
        assert!(p.validate().is_err());
        let mut p = SamplingPlan::default();
        p.scalars.push(0.0);
        assert!(p.validate().is_err());
    }
}
