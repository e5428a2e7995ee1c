//! Exact symbolic computation with Dunkl operators, Clifford algebras and
//! Dunkl monogenic polynomials.

pub mod bases;
pub mod clifford;
pub mod context;
pub mod dunkl;
pub mod linalg;
pub mod operator;
pub mod poly;
pub mod projection;
pub mod roots;
pub mod scalar;
pub mod suites;

pub use bases::{build_basis, maxwell_basis, monogenic_dim, BasisElement, BasisError, BasisKind, BasisSet, Certificate, Check};
pub use clifford::{CliffordElement, Eps, SpinorMatrix, SpinorPoly, SpinorSpace};
pub use context::Context;
pub use dunkl::{DunklError, WeightedElement};
pub use linalg::{rank, solve, vectorize, Coordinates, LinalgError, Solution};
pub use operator::{apply, apply_spinor, spanning_set, verify_identity, verify_on, IdentityReport, Op, OpError, Prim};
pub use poly::{MultiIndex, PolyError, Polynomial};
pub use projection::{proj_h_to_m, proj_harmonic, proj_monogenic, xu_harmonic, ProjectionError};
pub use roots::{GroupSpec, PartialRealization, RootError, RootSystemData};
pub use scalar::{pochhammer, Scalar, ScalarError};
pub use suites::{run_suite, SuiteReport, SUITES};
