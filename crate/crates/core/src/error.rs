use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("map is not a crossed homomorphism ({violations} violated basis pairs)")]
    NotCrossedHom { violations: usize },
    #[error("map is not an action ({violations} violations)")]
    NotAction { violations: usize },
    #[error("matrix {index} is not a derivation of the algebra")]
    NotDerivation { index: usize },
    #[error("derivations {0} and {1} do not commute")]
    NotCommuting(usize, usize),
    #[error("element is not a Nijenhuis element ({violations} violations)")]
    NotNijenhuis { violations: usize },
    #[error("search space of {candidates} candidates exceeds the limit of {limit}")]
    SearchSpaceTooLarge { candidates: u128, limit: u128 },
    #[error("index {index} out of range 1..={bound}")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("p_{index} must depend only on x_{index}")]
    MalformedP { index: usize },
    #[error("not a valid Leibniz pair ({violations} violations)")]
    InvalidPair { violations: usize },
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn ensure_dim(context: &'static str, expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            context,
            expected,
            found,
        })
    }
}
