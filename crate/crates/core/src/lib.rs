//! Exact module algebra for translation-invariant Pauli stabilizer codes.

pub mod error;
pub mod boundary;
pub mod bulk;
pub mod finite;
pub mod groebner;
pub mod lattice;
pub mod linalg;
pub mod metric;
pub mod oned;
pub mod ring;
pub mod smith;
pub mod zoo;
mod upoly;

pub use bulk::{StabilizerCode, SymplecticSpace};
pub use error::{Error, Result};
pub use finite::FiniteModule;
pub use groebner::{
    contains, dual_presentation, ext1, groebner, kernel, quotient_presentation, GroebnerBasis,
    ImageSolver, QuotientPresentation,
};
pub use linalg::{FreeVector, Matrix, SubmodulePresentation};
pub use metric::{MetricGroup, Subgroup};
pub use oned::{EModule, QuasiSymplectic1D, SeriesVector};
pub use ring::{ExponentVector, LaurentPoly, Modulus, Ring};
pub use smith::{smith_form, SmithForm};
