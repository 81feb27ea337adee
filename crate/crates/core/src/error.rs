use thiserror::Error;

/// Errors raised by the numerical engine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite input for {0}")]
    NonFinite(&'static str),

    #[error("invalid state specification: {0}")]
    InvalidSpec(String),

    /// `b^l S(0)|0⟩ = 0` for `l ≥ 1`, so the photon-subtracted state has no norm.
    #[error("degenerate state: subtracting {ops} photon(s) from the vacuum (r = 0) leaves a zero vector")]
    DegenerateState { ops: u32 },

    #[error("derivative order ({k}, {l}) exceeds jet order ({order_h}, {order_g})")]
    JetOrder {
        k: usize,
        l: usize,
        order_h: usize,
        order_g: usize,
    },

    #[error("Fock cutoff {cutoff} leaves tail mass {tail:e}; need a cutoff of at least {required}")]
    Truncation {
        cutoff: usize,
        required: usize,
        tail: f64,
    },

    #[error("target mean photon number {target} is not attainable; the infimum is {minimum}")]
    Unattainable { target: f64, minimum: f64 },

    #[error("parity expectation {0} lies outside [-1, 1]")]
    ParityOutOfRange(f64),

    #[error("{0} is only defined for a real coherent amplitude (θ = 0)")]
    NonzeroTheta(&'static str),

    #[error("the literal small-φ closed form only covers 0..=2 operations, got {0}")]
    UnsupportedOps(u32),

    #[error("phase uncertainty is 0/0 at φ = {phi}; use the φ → 0 limit instead")]
    Indeterminate { phi: f64 },

    #[error("{what} must be positive, got {value}")]
    NonPositive { what: &'static str, value: f64 },

    #[error("state grid of size {needed} exceeds the unitary's sector range {available}")]
    SectorRange { needed: usize, available: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
