use super::curve::{rotate, Point};
use serde::{Deserialize, Serialize};

pub type Hessian = [[f64; 2]; 2];

/// Smooth real potential with gradient and Hessian.
pub trait Potential {
    fn value(&self, x: Point) -> f64;
    fn gradient(&self, x: Point) -> Point;
    fn hessian(&self, x: Point) -> Hessian;
}

/// Built-in potentials.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PotentialModel {
    /// `<c, x>`.
    Linear { c: Point },
    /// `x^T a x + <b, x> + c0` with symmetric `a`.
    Quadratic { a: Hessian, b: Point, c0: f64 },
}

impl PotentialModel {
    /// `V = x_1`.
    pub fn x1() -> Self {
        PotentialModel::Linear { c: [1.0, 0.0] }
    }

    /// The potential `V(R^{-1} x)` that follows a rotation by `theta`.
    pub fn rotated(&self, theta: f64) -> Self {
        match *self {
            PotentialModel::Linear { c } => PotentialModel::Linear {
                c: rotate(c, theta),
            },
            PotentialModel::Quadratic { a, b, c0 } => {
                let (s, c) = theta.sin_cos();
                let r = [[c, -s], [s, c]];
                let mut out = [[0.0; 2]; 2];
                for (i, row) in out.iter_mut().enumerate() {
                    for (j, v) in row.iter_mut().enumerate() {
                        for k in 0..2 {
                            for l in 0..2 {
                                *v += r[i][k] * a[k][l] * r[j][l];
                            }
                        }
                    }
                }
                PotentialModel::Quadratic {
                    a: out,
                    b: rotate(b, theta),
                    c0,
                }
            }
        }
    }
}

impl Potential for PotentialModel {
    fn value(&self, x: Point) -> f64 {
        match *self {
            PotentialModel::Linear { c } => c[0] * x[0] + c[1] * x[1],
            PotentialModel::Quadratic { a, b, c0 } => {
                let ax = [a[0][0] * x[0] + a[0][1] * x[1], a[1][0] * x[0] + a[1][1] * x[1]];
                x[0] * ax[0] + x[1] * ax[1] + b[0] * x[0] + b[1] * x[1] + c0
            }
        }
    }

    fn gradient(&self, x: Point) -> Point {
        match *self {
            PotentialModel::Linear { c } => c,
            PotentialModel::Quadratic { a, b, .. } => [
                (a[0][0] + a[0][0]) * x[0] + (a[0][1] + a[1][0]) * x[1] + b[0],
                (a[1][0] + a[0][1]) * x[0] + (a[1][1] + a[1][1]) * x[1] + b[1],
            ],
        }
    }

    fn hessian(&self, _x: Point) -> Hessian {
        match *self {
            PotentialModel::Linear { .. } => [[0.0; 2]; 2],
            PotentialModel::Quadratic { a, .. } => [
                [2.0 * a[0][0], a[0][1] + a[1][0]],
                [a[0][1] + a[1][0], 2.0 * a[1][1]],
            ],
        }
    }
}
