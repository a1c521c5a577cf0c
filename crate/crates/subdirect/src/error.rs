use thiserror::Error;

/// Errors reported by the library.
///
/// Violations of *proven* invariants (a theorem failing on verified input)
/// are deliberately not represented here: those are internal bugs and panic.
#[derive(Debug, Error)]
pub enum Error {
    #[error("cycle notation: {0}")]
    CycleParse(String),
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("point {0} repeated within the cycle set")]
    RepeatedPoint(usize),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("symmetric group degree {0} out of supported range 1..=8")]
    DegreeOutOfRange(usize),
    #[error("group order {order} exceeds the configured bound {bound}")]
    BoundExceeded { order: usize, bound: usize },
    #[error("subgroup is not normal in its parent")]
    NotNormal,
    #[error("not a subdirect product: projection {0} is not surjective")]
    NotSubdirect(usize),
    #[error("not 2-factor injective: ker(psi_{0}) is nontrivial")]
    NotTwoFactorInjective(usize),
    #[error("factor index {0} out of range")]
    FactorIndex(usize),
    #[error("group is not Abelian")]
    NotAbelian,
    #[error("{0}")]
    Precondition(String),
    #[error("tuple condition {condition} violated: {detail}")]
    TupleCondition { condition: usize, detail: String },
    #[error("group spec: {0}")]
    GroupSpec(String),
}

pub type Result<T> = std::result::Result<T, Error>;
