use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A generating set was empty (or contained only zeros).
    #[error("generating set is empty")]
    EmptyGenerators,

    /// The generators have a common divisor, so the semigroup is not
    /// cofinite in ℕ.
    #[error("generators {generators:?} have gcd {gcd}, semigroup is not cofinite")]
    NonCoprime { generators: Vec<u64>, gcd: u64 },

    /// An operation specific to two-generator semigroups was called on a
    /// semigroup whose minimal generating set does not have exactly two
    /// elements.
    #[error("semigroup with minimal generators {generators:?} is not two-generated")]
    NotTwoGenerator { generators: Vec<u64> },

    /// A value expected to lie in the semigroup (or module) does not.
    #[error("{value} is not an element of the semigroup")]
    NotMember { value: u64 },

    /// A value expected to be a gap of the semigroup is not one.
    #[error("{value} is not a gap of the semigroup")]
    NotAGap { value: u64 },

    /// A proposed gap set is not closed under the semigroup action: removing
    /// `generator` from the gap `gap` lands in the semigroup but outside the
    /// gap set, so the complement is not a module.
    #[error("invalid gap set: {gap} - {generator} = {witness} lies in the semigroup but is not a gap")]
    InvalidGapSet { gap: u64, generator: u64, witness: u64 },

    /// A 1-based generator index was outside `1..=n`.
    #[error("generator index {index} out of range 1..={count}")]
    IndexOutOfRange { index: usize, count: usize },

    /// The module is the full semigroup, which has no gaps to merge.
    #[error("module has colength 0, nothing to merge")]
    FullModule,

    /// An enumeration or point count would exceed the configured budget.
    #[error("requested work {requested} exceeds budget {budget}")]
    BudgetExceeded { requested: u128, budget: u128 },

    /// The coefficient series showed no constant tail within the requested
    /// range, so no rational form can be reported.
    #[error("series not stabilized by level {lmax} (tail buffer {buffer})")]
    NoStabilization { lmax: u64, buffer: u64 },

    /// The module is generated by a single element and has no syzygies.
    #[error("module is generated by a single element, no syzygies")]
    SingleGenerator,

    /// The semigroup is neither two-generated nor monomial; no proven
    /// dimension formula applies.
    #[error("semigroup with minimal generators {generators:?} is neither two-generated nor monomial")]
    UnsupportedSemigroup { generators: Vec<u64> },

    /// The interpolation fallback ran out of prime fields within its budget.
    #[error("interpolation needs {requested} point evaluations, budget is {budget}")]
    InterpolationBudgetExceeded { requested: u128, budget: u128 },

    /// The structural and interpolation class tables disagree. Both tables
    /// are included verbatim; this always indicates a bug.
    #[error("structural and interpolation class tables disagree:\n  structural:    {structural}\n  interpolation: {interpolation}")]
    MethodDisagreement { structural: String, interpolation: String },

    /// The ring truncation window is too short to decide a value set or a
    /// dimension; retry with a larger window.
    #[error("ring truncation too small to decide the computation")]
    TruncationTooSmall,

    /// A subspace handed to an ideal-only operation is not closed under
    /// multiplication by the ring.
    #[error("subspace is not an ideal of the truncated ring")]
    NotAnIdeal,
}

pub type Result<T> = std::result::Result<T, Error>;
