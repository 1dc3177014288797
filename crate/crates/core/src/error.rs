use thiserror::Error;

/// Errors produced by the relaylink core.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("modulation level must be in 1..={max}, got {level}")]
    InvalidLevel { level: u32, max: u32 },

    #[error("SER target {target} is outside the attainable range (0, {max})")]
    UnattainableSerTarget { target: f64, max: f64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("beamforming weights undefined: all selected relay-to-destination gains are zero")]
    DegenerateChannel,

    #[error("exhaustive search supports at most {max} relays, got {n}")]
    TooManyRelays { n: usize, max: usize },

    #[error("quadrature did not converge: estimate {value:e}, error estimate {error:e}")]
    Quadrature { value: f64, error: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
