//! Exact generalized inverses in unital rings with involution, and an
//! executable battery of EP-element characterizations.
//!
//! The algebra is generic over a [`StarRing`]; matrix rings are generic over
//! their [`Scalars`]. Concrete realizations used by the CLI are exported as
//! type aliases below.

pub mod classify;
pub mod ep_oracle;
pub mod error;
pub mod gen_inverse;
pub mod linalg;
pub mod matrix;
pub mod realization;
pub mod ring;
pub mod ring_spec;
pub mod scalar;
pub mod subset;
pub mod verifier;

use num_complex::Complex;

pub use classify::{classify, Classification};
pub use error::{Error, Result};
pub use matrix::Matrix;
pub use realization::{FiniteView, Ring, DEFAULT_ENUM_CAP};
pub use ring::{Involution, LinearOps, MatrixRing, ModularIntegers, Primality, StarRing};
pub use ring_spec::{ring_make, AnyRing, RingSpec, ScalarKind};
pub use scalar::{Exact, ExactScalar, Modular, Scalars};
pub use subset::{subset_handle, subset_included, SubsetHandle, SubsetKind};

/// Arbitrary-precision rationals in lowest terms.
pub type Rational = num_rational::BigRational;
/// Gaussian rationals `a + b i` with rational parts.
pub type GaussianRational = Complex<Rational>;

pub type RationalScalars = Exact<Rational>;
pub type GaussianScalars = Exact<GaussianRational>;

/// `M_k(Q)` with transpose.
pub type RationalMatrices = MatrixRing<RationalScalars>;
/// `M_k(Q(i))` with conjugate-transpose.
pub type GaussianMatrices = MatrixRing<GaussianScalars>;
/// `M_k(Z_n)` (including `M_k(GF(p))`) with transpose.
pub type ModularMatrices = MatrixRing<Modular>;
