//! Closed planar boundary curves parametrized by arclength.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

pub type Point = [f64; 2];

/// A closed curve `s -> gamma(s)`, `s in [0, length)`, with `|gamma'| = 1`.
///
/// The normal returned by [`BoundaryCurve::normal`] is the tangent turned
/// clockwise, so a counter-clockwise curve has its normal pointing away from
/// the region it encloses.
pub trait BoundaryCurve {
    fn length(&self) -> f64;
    fn point(&self, s: f64) -> Point;
    fn tangent(&self, s: f64) -> Point;
    /// `gamma''(s)`.
    fn acceleration(&self, s: f64) -> Point;

    fn normal(&self, s: f64) -> Point {
        let t = self.tangent(s);
        [t[1], -t[0]]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Circle {
    pub center: Point,
    pub radius: f64,
    /// Traversed clockwise, which turns the normal towards the center.
    pub clockwise: bool,
}

impl Circle {
    pub fn new(center: Point, radius: f64) -> Self {
        Self {
            center,
            radius,
            clockwise: false,
        }
    }

    pub fn reversed(self) -> Self {
        Self {
            clockwise: !self.clockwise,
            ..self
        }
    }

    /// Polar angle of `gamma(s)` about the center.
    pub fn angle(&self, s: f64) -> f64 {
        let phi = s / self.radius;
        if self.clockwise {
            -phi
        } else {
            phi
        }
    }

    fn orientation(&self) -> f64 {
        if self.clockwise {
            -1.0
        } else {
            1.0
        }
    }
}

impl BoundaryCurve for Circle {
    fn length(&self) -> f64 {
        2.0 * PI * self.radius
    }

    fn point(&self, s: f64) -> Point {
        let phi = self.angle(s);
        [
            self.center[0] + self.radius * phi.cos(),
            self.center[1] + self.radius * phi.sin(),
        ]
    }

    fn tangent(&self, s: f64) -> Point {
        let phi = self.angle(s);
        let o = self.orientation();
        [-o * phi.sin(), o * phi.cos()]
    }

    fn acceleration(&self, s: f64) -> Point {
        let phi = self.angle(s);
        [-phi.cos() / self.radius, -phi.sin() / self.radius]
    }
}

/// Which side of a boundary component carries the condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    /// Part of the outer boundary of the domain.
    Exterior,
    /// Interface between an inner region and the rest of the domain.
    Interface,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Component {
    pub curve: Circle,
    pub role: Role,
}

/// Planar domains with circular boundaries.
///
/// For the annulus the inner circle is both a hole (Dirichlet, Neumann,
/// Robin) and the interface `|x - center| = inner` of the transmission
/// problem, whose outer boundary is the circle of radius `outer`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum Domain {
    Disk { center: Point, radius: f64 },
    Annulus { center: Point, inner: f64, outer: f64 },
}

impl Domain {
    pub fn unit_disk() -> Self {
        Domain::Disk {
            center: [0.0, 0.0],
            radius: 1.0,
        }
    }

    pub fn center(&self) -> Point {
        match *self {
            Domain::Disk { center, .. } | Domain::Annulus { center, .. } => center,
        }
    }

    /// Boundary components; normals point out of the domain, except on the
    /// transmission interface where they point out of the inner region.
    pub fn components(&self, transmission: bool) -> Vec<Component> {
        match *self {
            Domain::Disk { center, radius } => vec![Component {
                curve: Circle::new(center, radius),
                role: Role::Exterior,
            }],
            Domain::Annulus {
                center,
                inner,
                outer,
            } => {
                let hole = Circle::new(center, inner);
                let (curve, role) = if transmission {
                    (hole, Role::Interface)
                } else {
                    (hole.reversed(), Role::Exterior)
                };
                vec![
                    Component {
                        curve: Circle::new(center, outer),
                        role: Role::Exterior,
                    },
                    Component { curve, role },
                ]
            }
        }
    }

    pub fn rotated(&self, theta: f64) -> Self {
        let c = rotate(self.center(), theta);
        match *self {
            Domain::Disk { radius, .. } => Domain::Disk { center: c, radius },
            Domain::Annulus { inner, outer, .. } => Domain::Annulus {
                center: c,
                inner,
                outer,
            },
        }
    }

    pub fn validate(&self) -> crate::Result<()> {
        let ok = match *self {
            Domain::Disk { radius, .. } => radius > 0.0 && radius.is_finite(),
            Domain::Annulus { inner, outer, .. } => inner > 0.0 && outer > inner && outer.is_finite(),
        };
        if ok {
            Ok(())
        } else {
            Err(crate::Error::InvalidInput(format!("invalid domain {self:?}")))
        }
    }
}

pub fn rotate(p: Point, theta: f64) -> Point {
    let (s, c) = theta.sin_cos();
    [c * p[0] - s * p[1], s * p[0] + c * p[1]]
}

pub fn dot(a: Point, b: Point) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}
