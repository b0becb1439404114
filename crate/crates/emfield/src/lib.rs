//! Verification engine for the symmetry algebra and conserved currents of
//! source-free electromagnetism formulated with a joint pair of electric and
//! magnetic potentials in Lorentz gauge.
//!
//! The crate machine-checks, on exact solution families:
//!
//! * the determining equations for symmetries of the joint potential system,
//! * divergence-free conservation of the full catalog of bilinear currents,
//! * closure of the geometric symmetry algebra (structure constants, Jacobi),
//! * duality and residual-gauge invariance properties,
//! * nontriviality of the currents via an exact coefficient-block criterion,
//! * conserved charges by tensor-product Gauss–Legendre quadrature.
//!
//! Two computational backends share one set of formulas: an exact backend
//! over arbitrary-precision rationals (polynomials in the coordinates, so
//! residuals can be shown *identically* zero) and a floating-point backend
//! driven by forward-mode automatic differentiation for trigonometric
//! solution families.
//!
//! Start with the `examples/` directory for runnable tours of each
//! capability, or the `emfield` binary for the report-producing CLI.

pub mod algebra;
pub mod charges;
pub mod currents;
pub mod dual;
pub mod geometry;
pub mod jet;
pub mod linalg;
pub mod poly;
pub mod report;
pub mod scalar;
pub mod solutions;
pub mod symmetries;
pub mod tensor;
