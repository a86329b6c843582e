//! Recursive positive maps on N-qubit matrix algebras, their entanglement
//! witnesses, a one-parameter family of PPT entangled states, and the
//! numerical certificates (detection, indecomposability, optimality,
//! structural physical approximation) that go with them.
//!
//! Exact computations use [`Dyadic`] entries; spectral checks run in `f64`.

pub mod certify;
pub mod coordinate;
pub mod dyadic;
pub mod error;
pub mod operator;
pub mod psi;
pub mod scalar;
pub mod spectrum;
pub mod states;
pub mod witness;

pub use dyadic::Dyadic;
pub use error::{Error, Result};
pub use operator::{kron, partial_transpose, BlockView, ComplexOperator, DyadicOperator, Operator, RealOperator};
pub use psi::{max_entangled_vector, psi_apply, reduction_apply, robertson_apply, QubitCount, MAX_QUBITS};
pub use scalar::{RealScalar, Scalar};
pub use spectrum::{hermitian_spectrum, operator_norm, Spectrum};
pub use states::{RhoFamily, SweepRow};
pub use witness::{build_witness, Witness};

/// Exact rational used where values leave the dyadic ring, e.g. `2/3`.
pub type Rational = num_rational::Ratio<i128>;
