use num_rational::BigRational;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Syntax(String),

    #[error("weight a_{index} = {value} is outside (0, 1]")]
    WeightOutOfRange { index: usize, value: BigRational },

    #[error("total weight condition fails: 2g - 2 + sum = {value} is not positive (g = {genus})")]
    TotalWeight { genus: u32, value: BigRational },

    #[error("weight data needs at least one marking")]
    EmptyWeights,

    #[error("index {index} is outside 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("index set must be nonempty")]
    EmptySubset,

    #[error("index {0} repeated where distinct indices are required")]
    RepeatedIndex(usize),

    #[error("minimum subset size {min_size} is outside 2..={n}")]
    InvalidMinSize { min_size: usize, n: usize },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("alignment is not a bijection of 1..={0}")]
    NotABijection(usize),

    #[error("{n} markings exceeds the exhaustive enumeration limit of {limit}")]
    TooManyMarkings { n: usize, limit: usize },

    #[error("no reduction morphism: some a_i < b_i")]
    ReductionNotDefined,

    #[error("forgetful morphism onto markings {keep:?} is not defined: 2g - 2 + sum = {value} is not positive")]
    ForgetfulNotDefined { keep: Vec<usize>, value: BigRational },

    #[error("genus 0 spaces are handled by the Kapranov tower, not by the admissible group")]
    GenusZero,

    #[error("(g, n) = ({genus}, {n}) lies outside the range where automorphism groups are determined")]
    NotCovered { genus: u32, n: usize },

    #[error("invalid tower step (n, r, s) = ({n}, {r}, {s})")]
    InvalidStep { n: usize, r: usize, s: usize },

    #[error("the Kapranov tower needs n >= 5, got {0}")]
    TowerTooSmall(usize),
}

impl Error {
    /// Stable machine-readable code, used by the CLI's JSON error payloads.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Syntax(_) => "syntax",
            Error::WeightOutOfRange { .. } => "weight-out-of-range",
            Error::TotalWeight { .. } => "total-weight",
            Error::EmptyWeights => "empty-weights",
            Error::IndexOutOfRange { .. } => "index-out-of-range",
            Error::EmptySubset => "empty-subset",
            Error::RepeatedIndex(_) => "repeated-index",
            Error::InvalidMinSize { .. } => "invalid-min-size",
            Error::ShapeMismatch(_) => "shape-mismatch",
            Error::NotABijection(_) => "not-a-bijection",
            Error::TooManyMarkings { .. } => "too-many-markings",
            Error::ReductionNotDefined => "reduction-not-defined",
            Error::ForgetfulNotDefined { .. } => "forgetful-not-defined",
            Error::GenusZero => "genus-zero",
            Error::NotCovered { .. } => "not-covered",
            Error::InvalidStep { .. } => "invalid-step",
            Error::TowerTooSmall(_) => "n-too-small",
        }
    }

    /// True when the input was well formed but the requested object does
    /// not exist (or lies outside what can be answered).
    pub fn is_domain(&self) -> bool {
        matches!(
            self,
            Error::ReductionNotDefined
                | Error::ForgetfulNotDefined { .. }
                | Error::GenusZero
                | Error::NotCovered { .. }
                | Error::TooManyMarkings { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
