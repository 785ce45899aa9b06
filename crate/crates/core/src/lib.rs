pub mod airy;
pub mod bounds;
pub mod error;
pub mod export;
pub mod galerkin;
pub mod halfline;
pub mod ode;
pub mod quadrature;
pub mod roots;
pub mod semiclassical;
pub mod transmission;

pub use error::{Error, Result};
pub use num_complex::Complex64;
