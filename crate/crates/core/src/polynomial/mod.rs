//! Exact polynomial arithmetic: sparse multivariate polynomials, truncated
//! series in `t`, and dense univariate polynomials with Sturm sequences.

mod multipoly;
mod series;
mod unipoly;
mod var;

pub use multipoly::{Monomial, MultiPoly};
pub use series::SeriesT;
pub use unipoly::{roots_real_nonpositive, sturm_all_roots_real_negative, RootReport, UniPoly};
pub use var::{Universe, Var, MAX_VARS};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("universe mismatch: {left} vs {right}")]
    UniverseMismatch { left: String, right: String },
    #[error("variable {0} is not in the universe")]
    VariableNotInUniverse(Var),
    #[error("unknown variable name {0:?}")]
    UnknownVariable(String),
    #[error("a universe holds at most {MAX_VARS} variables, got {0}")]
    UniverseTooLarge(usize),
    #[error("exponent vector has {found} entries, universe has {expected}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("inexact division: {0}")]
    NotDivisible(String),
    #[error("mapping is not a permutation of the universe")]
    NotAPermutation,
    #[error("polynomial is not univariate in {0}")]
    NotUnivariate(Var),
    #[error("zero polynomial")]
    ZeroPolynomial,
}

impl MultiPoly {
    /// Converts a polynomial in (at most) the variable `v` to a [`UniPoly`].
    pub fn to_unipoly(&self, v: Var) -> Result<UniPoly, PolyError> {
        Ok(UniPoly::new(self.to_dense(v)?))
    }
}
