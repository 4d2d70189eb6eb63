use std::fmt;

use thiserror::Error;

/// Position-tagged parse failure for the small text formats in this crate.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(offset: usize, message: impl Into<String>) -> Self {
        ParseError {
            offset,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at offset {}: {}", self.offset, self.message)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PadicError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("precision must be at least 1")]
    ZeroPrecision,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("factors do not multiply to the input modulo p")]
    BadSplit,
    #[error("factors are not coprime modulo p; the split cannot be lifted")]
    NotCoprime,
    #[error("polynomial {0} is not squarefree")]
    NotSquarefree(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum FiniteGroupError {
    #[error("group of order {order} exceeds the budget of {limit}")]
    TooLarge { order: usize, limit: usize },
    #[error("invalid Cayley table: {0}")]
    InvalidTable(String),
    #[error("invalid catalog request: {0}")]
    InvalidCatalog(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("matrix must be square and non-empty, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("char poly {charpoly} has root of valuation {valuation}")]
    NotContractive { charpoly: String, valuation: String },
    #[error("weight {name} = {value} must be at least 1")]
    BadWeight { name: &'static str, value: i64 },
    #[error("shift block over the trivial group")]
    TrivialShift,
    #[error("contractivity criteria disagree for {0}")]
    OracleDisagreement(String),
    #[error("contractivity undecided after {k_max} powers")]
    Inconclusive { k_max: u32 },
    #[error("element does not match the block structure: {0}")]
    Shape(String),
    #[error("no {n}-th root in block {block}")]
    NoRoot { block: usize, n: u64 },
    #[error(transparent)]
    Finite(#[from] FiniteGroupError),
}

#[derive(Clone, Debug, PartialEq, Error)]
pub enum SeriesError {
    #[error(transparent)]
    Padic(#[from] PadicError),
    #[error(transparent)]
    Finite(#[from] FiniteGroupError),
    #[error("char poly {0} has a repeated factor that is not linear over the rationals")]
    NotSquarefree(String),
    #[error("factorization not certified at precision {precision}; partial chain of length {}", partial.len())]
    Uncertified {
        precision: u32,
        partial: Box<crate::series::SeriesChain>,
    },
    #[error("invalid chain: {0}")]
    InvalidChain(String),
}

#[derive(Clone, Debug, PartialEq, Error)]
pub enum TheoremError {
    #[error("group is not a simple contraction group")]
    NotSimple,
    #[error("irreducibility of {0} is undecided at the working precision")]
    Uncertified(String),
    #[error(transparent)]
    Padic(#[from] PadicError),
    #[error(transparent)]
    Finite(#[from] FiniteGroupError),
    #[error(transparent)]
    Model(#[from] ModelError),
}
