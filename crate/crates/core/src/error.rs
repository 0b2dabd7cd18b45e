use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("characteristic mismatch: {0} vs {1}")]
    CharacteristicMismatch(u32, u32),

    #[error("zero polynomial")]
    ZeroPolynomial,

    #[error("zero element has no valuation")]
    ZeroElement,

    #[error("element is not invertible in the generic-fibre algebra")]
    NotInvertible,

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("element does not belong to the group")]
    GroupMismatch,

    #[error("cocycle entry ({m}, {n}) is zero")]
    ZeroEntry { m: String, n: String },

    #[error("cocycle entry ({m}, {n}) = {value} is not a polynomial")]
    NonIntegralCocycle { m: String, n: String, value: String },

    #[error("unsupported decomposition: {0}")]
    UnsupportedDecomposition(String),

    #[error("model is not normal at {place}: {reason}")]
    NonNormalModel { place: String, reason: String },

    #[error("partial ramification at {place} (local exponent {exponent} mod {modulus}) is unsupported")]
    UnsupportedPartialRamification {
        place: String,
        exponent: i64,
        modulus: u64,
    },

    #[error("{0} is a p-th power, the covering is not integral")]
    NonIntegralModel(String),

    #[error("stabilizer set is not a subgroup")]
    NotASubgroup,

    #[error("divisors live on different charts")]
    ChartMismatch,

    #[error("symbolic place [{0}] has no declared degree")]
    UndeclaredSymbolicDegree(String),

    #[error("no ramification index given for {0}")]
    MissingIndex(String),

    #[error("not totally ramified at {0}")]
    NotTotallyRamified(String),

    #[error("basis valuations are not distinct modulo {0}")]
    CancellationRisk(u64),

    #[error("presentation cokernel is not torsion")]
    NotTorsion,

    #[error("not Gorenstein at {0}")]
    NotGorensteinHere(String),

    #[error("matrix of size {0} exceeds the limit {1}")]
    SizeLimit(usize, usize),

    #[error("unsupported group: {0}")]
    UnsupportedGroup(String),

    #[error("no consistent sign for p = {p}, n = {n}")]
    NoConsistentSign { p: u32, n: u32 },

    #[error("hypothesis failure: {}", .0.join("; "))]
    HypothesisFailure(Vec<String>),

    #[error("missing infinity degrees: {0}")]
    MissingInfinityDegrees(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// Errors that reject the supplied model rather than the way it was supplied.
    pub fn is_model_rejection(&self) -> bool {
        matches!(
            self,
            Error::NonIntegralCocycle { .. }
                | Error::ZeroEntry { .. }
                | Error::NonNormalModel { .. }
                | Error::UnsupportedPartialRamification { .. }
                | Error::NonIntegralModel(_)
                | Error::NotASubgroup
                | Error::NotTotallyRamified(_)
                | Error::NotGorensteinHere(_)
                | Error::HypothesisFailure(_)
                | Error::UnsupportedGroup(_)
                | Error::UnsupportedDecomposition(_)
                | Error::NotInvertible
                | Error::NotTorsion
                | Error::CancellationRisk(_)
                | Error::SizeLimit(..)
        )
    }

    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_) | Error::NoConsistentSign { .. })
    }
}
