//! Finite-dimensional real vectors and the classical norms the standard
//! membership family is built from.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use smallvec::SmallVec;

use crate::error::{invalid, Result};

/// An element of ℝᵈ. Almost every space in practice has `d ≤ 4`, so the
/// coordinates live inline.
#[derive(Clone, PartialEq)]
pub struct Vector(SmallVec<[f64; 4]>);

impl Vector {
    pub fn new(coords: impl IntoIterator<Item = f64>) -> Self {
        Vector(coords.into_iter().collect())
    }

    pub fn scalar(x: f64) -> Self {
        Vector(smallvec::smallvec![x])
    }

    /// The zero vector θ of dimension `dim`.
    pub fn zeros(dim: usize) -> Self {
        Vector(smallvec::smallvec![0.0; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0.0)
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.is_finite())
    }

    /// First coordinate; the scalar value of a one-dimensional vector.
    pub fn first(&self) -> f64 {
        self.0[0]
    }

    pub fn scale(&self, c: f64) -> Vector {
        Vector(self.0.iter().map(|x| c * x).collect())
    }

    /// Applies `f` coordinatewise.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> Vector {
        Vector(self.0.iter().map(|&x| f(x)).collect())
    }

    pub fn zip_with(&self, other: &Vector, f: impl Fn(f64, f64) -> f64) -> Vector {
        debug_assert_eq!(self.dim(), other.dim());
        Vector(self.0.iter().zip(&other.0).map(|(&a, &b)| f(a, b)).collect())
    }
}

impl From<f64> for Vector {
    fn from(x: f64) -> Self {
        Vector::scalar(x)
    }
}

impl From<Vec<f64>> for Vector {
    fn from(v: Vec<f64>) -> Self {
        Vector(SmallVec::from_vec(v))
    }
}

impl From<&[f64]> for Vector {
    fn from(v: &[f64]) -> Self {
        Vector(SmallVec::from_slice(v))
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.dim() == 1 {
            return write!(f, "{}", self.0[0]);
        }
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Add for &Vector {
    type Output = Vector;
    fn add(self, rhs: &Vector) -> Vector {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &Vector {
    type Output = Vector;
    fn sub(self, rhs: &Vector) -> Vector {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        self.map(|x| -x)
    }
}

/// Classical norms on ℝᵈ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClassicalNorm {
    /// `|x|`; only defined for `d = 1`.
    Absolute,
    Euclidean,
    /// `max_i |x_i|`.
    MaxCoordinate,
}

impl ClassicalNorm {
    pub fn name(self) -> &'static str {
        match self {
            ClassicalNorm::Absolute => "absolute",
            ClassicalNorm::Euclidean => "euclidean",
            ClassicalNorm::MaxCoordinate => "max",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "absolute" | "abs" => Some(ClassicalNorm::Absolute),
            "euclidean" | "l2" => Some(ClassicalNorm::Euclidean),
            "max" | "max-coordinate" | "sup" => Some(ClassicalNorm::MaxCoordinate),
            _ => None,
        }
    }

    pub fn validate_dim(self, dim: usize) -> Result<()> {
        if dim == 0 {
            return Err(invalid("dimension", "must be at least 1"));
        }
        if self == ClassicalNorm::Absolute && dim != 1 {
            return Err(invalid(
                "norm",
                format!("absolute value norm needs dimension 1, got {dim}"),
            ));
        }
        Ok(())
    }

    pub fn norm(self, x: &Vector) -> f64 {
        match self {
            ClassicalNorm::Absolute => x.first().abs(),
            ClassicalNorm::Euclidean => {
                // One coordinate: avoid the sqrt(x²) round trip.
                if x.dim() == 1 {
                    x.first().abs()
                } else {
                    x.coords().iter().map(|c| c * c).sum::<f64>().sqrt()
                }
            }
            ClassicalNorm::MaxCoordinate => x.coords().iter().fold(0.0, |m, c| m.max(c.abs())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let a = Vector::new([1.0, 2.0]);
        let b = Vector::new([0.5, -1.0]);
        assert_eq!((&a + &b).coords(), &[1.5, 1.0]);
        assert_eq!((&a - &b).coords(), &[0.5, 3.0]);
        assert_eq!((-&a).coords(), &[-1.0, -2.0]);
        assert!(Vector::zeros(3).is_zero());
        assert!(!a.is_zero());
    }

    #[test]
    fn norms() {
        let x = Vector::new([3.0, -4.0]);
        assert_eq!(ClassicalNorm::Euclidean.norm(&x), 5.0);
        assert_eq!(ClassicalNorm::MaxCoordinate.norm(&x), 4.0);
        assert_eq!(ClassicalNorm::Absolute.norm(&Vector::scalar(-2.5)), 2.5);
        assert!(ClassicalNorm::Absolute.validate_dim(2).is_err());
        assert!(ClassicalNorm::Euclidean.validate_dim(0).is_err());
    }

    #[test]
    fn norm_axioms_on_samples() {
        let pts = [
            Vector::new([1.0, 2.0, -3.0]),
            Vector::new([-0.5, 0.25, 4.0]),
            Vector::new([0.0, 0.0, 0.0]),
        ];
        for n in [ClassicalNorm::Euclidean, ClassicalNorm::MaxCoordinate] {
            assert_eq!(n.norm(&Vector::zeros(3)), 0.0);
            for x in &pts {
                for c in [-2.0, 0.5, 3.0] {
                    let lhs = n.norm(&x.scale(c));
                    assert!((lhs - c.abs() * n.norm(x)).abs() < 1e-12);
                }
                for y in &pts {
                    assert!(n.norm(&(x + y)) <= n.norm(x) + n.norm(y) + 1e-12);
                }
            }
        }
    }
}
