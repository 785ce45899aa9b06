//! The semiclassical margin `Lambda_m`: the smallest real part of the
//! boundary model eigenvalue over the perp points.

use super::curve::{Domain, Role};
use super::perp::{find_on_component, PerpPoint};
use super::potential::Potential;
use crate::error::{Error, Result};
use crate::halfline::{self, BcTag, HalfLineProblem};
use crate::{transmission, Complex64};
use serde::{Deserialize, Serialize};

/// Boundary conditions of the planar problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PlanarBc {
    Dirichlet,
    Neumann,
    Robin,
    /// Transmission on the interface, Dirichlet on the outer boundary.
    TransmissionDirichlet,
    /// Transmission on the interface, Neumann on the outer boundary.
    TransmissionNeumann,
}

impl PlanarBc {
    pub fn is_transmission(self) -> bool {
        matches!(self, PlanarBc::TransmissionDirichlet | PlanarBc::TransmissionNeumann)
    }

    /// The one-dimensional model attached to a boundary component.
    pub fn model(self, role: Role) -> Model {
        match (self, role) {
            (PlanarBc::Dirichlet, _) | (PlanarBc::TransmissionDirichlet, Role::Exterior) => Model::Dirichlet,
            (PlanarBc::Neumann, _) | (PlanarBc::TransmissionNeumann, Role::Exterior) => Model::Neumann,
            (PlanarBc::Robin, _) => Model::Robin,
            (_, Role::Interface) => Model::Transmission,
        }
    }
}

/// Boundary model operator `-d^2/dx^2 + i j x` on the half-line or on the
/// line with the transmission condition at 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Model {
    Dirichlet,
    Neumann,
    Robin,
    Transmission,
}

impl Model {
    /// Leftmost eigenvalue for field strength `j` and coupling `kappa`; the
    /// transmission value is the member of its conjugate pair with
    /// positive imaginary part.
    pub fn eigenvalue(self, j: f64, kappa: f64) -> Result<Complex64> {
        let tag = match self {
            Model::Dirichlet => BcTag::Dirichlet,
            Model::Neumann => BcTag::Neumann,
            Model::Robin => BcTag::Robin,
            Model::Transmission => {
                if !(kappa >= 0.0 && kappa.is_finite()) {
                    return Err(Error::InvalidInput(format!(
                        "kappa = {kappa} must be nonnegative"
                    )));
                }
                return transmission::eigenvalue(j, kappa, 1);
            }
        };
        halfline::eigenvalue(&HalfLineProblem::new(j, kappa, tag)?, 1)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MarginPoint {
    #[serde(flatten)]
    pub point: PerpPoint,
    pub model: Model,
    /// Leftmost model eigenvalue at `j0`.
    pub lambda: Complex64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MarginReport {
    pub bc: PlanarBc,
    pub kappa: f64,
    pub points: Vec<MarginPoint>,
    #[serde(rename = "Lambda_m")]
    pub lambda_m: f64,
    /// Indices into `points`.
    pub minimizers: Vec<usize>,
}

const TIE: f64 = 1e-10;

/// Perp points of every boundary component of `domain`.
pub fn perp_points<V: Potential + ?Sized>(domain: &Domain, v: &V, transmission: bool) -> Result<Vec<(PerpPoint, Role)>> {
    domain.validate()?;
    let mut out = Vec::new();
    for (i, c) in domain.components(transmission).iter().enumerate() {
        for p in find_on_component(&c.curve, v, i)? {
            out.push((p, c.role));
        }
    }
    Ok(out)
}

pub fn margin<V: Potential + ?Sized>(domain: &Domain, v: &V, bc: PlanarBc, kappa: f64) -> Result<MarginReport> {
    if !(kappa >= 0.0 && kappa.is_finite()) {
        return Err(Error::InvalidInput(format!("kappa = {kappa} must be nonnegative")));
    }
    let found = perp_points(domain, v, bc.is_transmission())?;
    if found.is_empty() {
        return Err(Error::EmptyPerpSet);
    }
    let mut points = Vec::with_capacity(found.len());
    for (p, role) in found {
        let model = bc.model(role);
        let lambda = model.eigenvalue(p.j0, kappa)?;
        points.push(MarginPoint {
            point: p,
            model,
            lambda,
        });
    }

    let (lambda_m, minimizers): (f64, Vec<usize>) = if bc.is_transmission() {
        // per-point values; the pointwise minimum covers both parts
        let m = points.iter().map(|p| p.lambda.re).fold(f64::INFINITY, f64::min);
        let mins = (0..points.len())
            .filter(|&i| points[i].lambda.re <= m + TIE * (1.0 + m.abs()))
            .collect();
        (m, mins)
    } else {
        // the model eigenvalue increases with j, so the smallest |grad V| wins
        let jm = points.iter().map(|p| p.point.j0).fold(f64::INFINITY, f64::min);
        let model = bc.model(Role::Exterior);
        let m = model.eigenvalue(jm, kappa)?.re;
        let mins = (0..points.len())
            .filter(|&i| points[i].point.j0 <= jm * (1.0 + TIE))
            .collect();
        (m, mins)
    };
    if minimizers.iter().any(|&i| !points[i].point.nondegenerate) {
        return Err(Error::Nondegeneracy);
    }
    Ok(MarginReport {
        bc,
        kappa,
        points,
        lambda_m,
        minimizers,
    })
}

impl MarginReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).unwrap_or(serde_json::Value::Null)
    }

    /// `jm`, the smallest `|grad V|` over the minimizers.
    pub fn j_min(&self) -> f64 {
        self.minimizers
            .iter()
            .map(|&i| self.points[i].point.j0)
            .fold(f64::INFINITY, f64::min)
    }
}
