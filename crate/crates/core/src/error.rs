use thiserror::Error;

/// Errors raised by the combinatorial and series layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(u32),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("residue {residue} out of range for modulus {n}")]
    ResidueOutOfRange { residue: u32, n: u32 },

    #[error("diagram {0} is not n-regular")]
    NotRegular(String),

    #[error("crystal operations require charge 0, got {0}")]
    NonzeroCharge(u32),

    #[error("partition {partition} is not a maximal-element shape for n = {n}")]
    NotMaximal { partition: String, n: u32 },

    #[error("classification of {partition} failed: {reason}")]
    Classification { partition: String, reason: String },

    #[error("truncation orders differ ({left} vs {right})")]
    OrderMismatch { left: i64, right: i64 },

    #[error("cannot raise truncation order from {from} to {to}")]
    OrderIncrease { from: i64, to: i64 },

    #[error("series is not a unit: {0}")]
    NonUnit(String),

    #[error("exponent {exponent} is not divisible by {divisor}")]
    NotDivisible { exponent: i64, divisor: i64 },

    #[error("theta series f/g(q^{r}, q^{s}) needs r + s > 0")]
    DivergentTheta { r: i64, s: i64 },

    #[error("product form needs r, s >= 0, got ({r}, {s})")]
    NegativeProductArgs { r: i64, s: i64 },

    #[error("matrix is not square ({rows} rows, row {row} has {cols} entries)")]
    NonSquare {
        rows: usize,
        row: usize,
        cols: usize,
    },

    #[error("determinant of an empty matrix")]
    EmptyMatrix,

    #[error("n = {0} is outside the proven cases (odd prime or twice an odd prime or 2); enable conjecture mode")]
    UnsupportedModulus(u32),

    #[error("matrix entry ({row}, {col}) has negative valuation {valuation}")]
    NegativeValuation {
        row: usize,
        col: usize,
        valuation: i64,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
