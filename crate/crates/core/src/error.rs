use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("group order exceeds the cap of {cap} elements")]
    OrderCap { cap: usize },
    #[error("randomized splitting exhausted its retry budget ({context}); replay with seed {seed}")]
    LasVegasExhausted { seed: u64, context: String },
    #[error("F_{p} is not a splitting field: {detail}; choose a prime p with p = 1 mod exp(G)")]
    NonSplittingPrime { p: u64, detail: String },
    #[error("non-split spectrum: {0}")]
    NonSplitSpectrum(String),
    #[error("structure map does not descend to the quotient: {0}")]
    Descent(String),
    #[error("route comparison failed: {0}")]
    RouteMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
