//! Planar problems `-h^2 Delta + i V` in the semiclassical limit: perp
//! points, the margin `Lambda_m` and boundary quasimodes.

pub mod curve;
pub mod margin;
pub mod perp;
pub mod potential;
pub mod quasimode;

pub use curve::{BoundaryCurve, Circle, Component, Domain, Role};
pub use margin::{margin, perp_points, MarginPoint, MarginReport, Model, PlanarBc};
pub use perp::{find_perp_points, restricted_hessian, PerpPoint};
pub use potential::{Potential, PotentialModel};
pub use quasimode::{
    quasimode_value, quasimode_value_with, residual_norm, residual_scaling, GridSpec, QuasimodeOptions,
    QuasimodeReport, Tangential,
};
