//! Composite rules on a uniform grid over `[0, 1]`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{idx, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Quadrature {
    Trapezoid,
    #[default]
    Simpson,
}

impl Quadrature {
    /// Simpson on odd grids of at least 3 points, trapezoid otherwise.
    pub fn best_for(points: usize) -> Self {
        if points >= 3 && points % 2 == 1 {
            Self::Simpson
        } else {
            Self::Trapezoid
        }
    }

    pub fn check_points(self, points: usize) -> Result<()> {
        match self {
            Self::Trapezoid if points < 2 => Err(Error::Config(format!(
                "trapezoid rule needs at least 2 points, got {points}"
            ))),
            Self::Simpson if points < 3 || points.is_multiple_of(2) => Err(Error::Config(format!(
                "Simpson rule needs an odd number of points >= 3, got {points}"
            ))),
            _ => Ok(()),
        }
    }

    /// Weights `w_i` such that `Σ w_i f(i/(n-1)) ≈ ∫₀¹ f`.
    pub fn weights<T: Scalar>(self, points: usize) -> Result<Vec<T>> {
        self.check_points(points)?;
        let h = T::one() / idx::<T>(points - 1);
        let two = idx::<T>(2);
        let w = match self {
            Self::Trapezoid => (0..points)
                .map(|i| {
                    if i == 0 || i + 1 == points {
                        h / two
                    } else {
                        h
                    }
                })
                .collect(),
            Self::Simpson => {
                let third = h / idx::<T>(3);
                (0..points)
                    .map(|i| {
                        if i == 0 || i + 1 == points {
                            third
                        } else if i % 2 == 1 {
                            third * idx::<T>(4)
                        } else {
                            third * two
                        }
                    })
                    .collect()
            }
        };
        Ok(w)
    }

    pub fn integrate<T: Scalar>(self, values: &[T]) -> Result<T> {
        let w = self.weights::<T>(values.len())?;
        Ok(w.iter()
            .zip(values)
            .fold(T::zero(), |acc, (&w, &v)| acc + w * v))
    }
}

impl fmt::Display for Quadrature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Trapezoid => "trapezoid",
            Self::Simpson => "simpson",
        })
    }
}

impl FromStr for Quadrature {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "trapezoid" | "trapezoidal" => Ok(Self::Trapezoid),
            "simpson" => Ok(Self::Simpson),
            other => Err(Error::Config(format!("unknown quadrature rule '{other}'"))),
        }
    }
}
