//! Crate-wide error type.

/// Errors reported by the toolkit.
///
/// Everything here is a precondition failure; the numerical routines
/// themselves are total once their inputs validate.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    /// An input violated a documented domain restriction.
    #[error("domain error: {0}")]
    Domain(String),

    /// The quantizer with `r = 0` maps all of `V₃` onto multiples of the
    /// identity and cannot be inverted.
    #[error("singular quantizer: the map is not invertible at r = 0")]
    SingularQuantizer,

    /// A joint-POVM choice `(α, v)` violates one of the four positivity
    /// conditions; the message names the first violated one.
    #[error("infeasible joint choice: {0}")]
    InfeasibleChoice(String),

    /// A quadrature request exceeds the configured node budget.
    #[error("node budget exceeded: estimated {estimated} nodes > budget {budget}")]
    BudgetExceeded { estimated: u128, budget: u128 },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
