use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// A symmetric-group size below the smallest supported value.
    #[error("n must be at least 2, got {0}")]
    NTooSmall(usize),

    /// An index outside the domain required by an operation.
    #[error("{what}: k = {k} is outside [{lo}, {hi}]")]
    OutOfRange {
        what: &'static str,
        k: i64,
        lo: i64,
        hi: i64,
    },

    /// Exhaustive enumeration requested beyond the supported cap.
    ///
    /// The word count grows super-exponentially: n = 6 already has 292,864
    /// networks and n = 7 has over a billion, which is past desk scale.
    /// For large n use the closed-form first-letter law and
    /// `sample_first_letter` instead.
    #[error(
        "exhaustive enumeration is capped at n = {max} (n = {n} has too many networks); \
             use the closed-form law and sampling for larger n"
    )]
    EnumerationCap { n: usize, max: usize },

    /// A test function whose domain does not match the identity it is fed to.
    #[error(
        "test function domain [{got_lo}, {got_hi}] does not cover required [{need_lo}, {need_hi}]"
    )]
    DomainMismatch {
        got_lo: i64,
        got_hi: i64,
        need_lo: i64,
        need_hi: i64,
    },

    /// Invalid distribution parameters or malformed inputs.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Adaptive quadrature failed to reach the requested tolerance.
    #[error("quadrature did not converge: {0}")]
    QuadratureNoConverge(String),

    /// A discrete atom law violating its invariants.
    #[error("invalid atom law: {0}")]
    InvalidAtoms(String),
}

pub type Result<T> = std::result::Result<T, Error>;
