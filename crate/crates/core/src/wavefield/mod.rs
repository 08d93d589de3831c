//! Wavefunctions, Gauss quadrature, and the quadrature and ODE oracles.

mod ode;
mod overlap;
mod polynomials;
mod quadrature;
mod wavefunctions;

pub use ode::{ode_residuals, OdeKind, ANGULAR_POINTS, PARABOLIC_POINTS, RADIAL_POINTS};
pub use overlap::{
    w_overlap_matrix_converged, w_overlap_quadrature, QuadratureGrid, DEFAULT_NODES, DOUBLING_TOL, MAX_NODES,
};
pub use polynomials::{jacobi_gen, jacobi_gen_derivs, laguerre_gen, laguerre_gen_derivs};
pub use quadrature::{gauss_rule, QuadratureKind, QuadratureRule};
pub use wavefunctions::{
    norm_parabolic, norm_spherical, psi_parabolic, psi_spherical, psi_spheroidal, psi_spheroidal_from,
    RadialAngularPoint, ReducedState,
};
