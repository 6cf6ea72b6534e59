use thiserror::Error;

/// Everything that can go wrong when building or combining finite-frame data.
///
/// Validation errors carry a witness so a failing input can be inspected
/// (and replayed) without re-running the check by hand.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("order table is not a poset: {reason} (witness {witness:?})")]
    NotAPoset {
        reason: &'static str,
        witness: (usize, usize, usize),
    },

    #[error("order is not a lattice: pair ({0}, {1}) has no unique {2}")]
    NotALattice(usize, usize, &'static str),

    #[error("lattice is not distributive: witness triple ({0}, {1}, {2})")]
    NotDistributive(usize, usize, usize),

    #[error("order is unbounded: no unique {0} element")]
    Unbounded(&'static str),

    #[error("operands belong to different frames")]
    FrameMismatch,

    #[error("{what} requires at most {cap} {unit}, got {got}")]
    CapExceeded {
        what: &'static str,
        cap: usize,
        got: usize,
        unit: &'static str,
    },

    #[error("table is not a frame homomorphism: {reason} (witness {witness:?})")]
    NotAHom {
        reason: &'static str,
        witness: (usize, usize),
    },

    #[error("lifted ideal image is not a regular ideal (ideal index {ideal})")]
    LiftNotRegular { ideal: usize },

    #[error("unit map image of element {elem} is not an ideal of the reflection")]
    UnitNotIdeal { elem: usize },

    #[error("evaluation mode requires a selection of complemented sublocales")]
    ModeRequiresComplemented,

    #[error("poset size {got} exceeds the generation guard {guard}")]
    GuardExceeded { guard: usize, got: usize },

    #[error("unknown {kind}: {name}")]
    Unknown { kind: &'static str, name: String },

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
