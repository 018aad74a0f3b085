use thiserror::Error;

/// Errors surfaced by the library. Most operations are total; the fallible
/// ones signal genuine geometric obstructions (a non-permissible center, a
/// cone outside the supported class) rather than programming mistakes.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unsupported field GF({p}^{k}): p must be in {{2,3,5}} and k <= 3")]
    UnsupportedField { p: u32, k: u32 },

    #[error("polynomials belong to different rings")]
    RingMismatch,

    #[error("{poly} is not divisible by {var}^{power}")]
    NotDivisible {
        poly: String,
        var: String,
        power: u32,
    },

    #[error("point has order {found} < weight {weight} for generator {gen}")]
    NotSingularPoint {
        gen: String,
        weight: u32,
        found: u32,
    },

    #[error("cone generator {gen} is not a p^e-th power of a linear form")]
    UnsupportedCone { gen: String },

    #[error("leading z-coefficient of {poly} in {var} is not a unit constant")]
    NotMonic { poly: String, var: String },

    #[error("invariant has degree {expected} but the monic form has degree {found}")]
    DegreeMismatch { expected: u32, found: u32 },

    #[error("divisor variable {var} coincides with the transversal variable")]
    InvalidDivisor { var: String },

    #[error("restriction {poly} to the center is not a p^e-th power of a section")]
    NotPePower { poly: String },

    #[error("center {center} is not permissible: {gen} has order {found} < {weight} along it")]
    NotPermissible {
        center: String,
        gen: String,
        weight: u32,
        found: u32,
    },

    #[error("cleaning did not terminate within {cap} rounds")]
    NonTerminating { cap: u32 },

    #[error("elimination algebra has a non-monomial generator: {gen}")]
    NotMonomialCase { gen: String },

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("unknown variable {name} at position {pos}")]
    UnknownVariable { name: String, pos: usize },

    #[error("unknown divisor {name} in this chart")]
    UnknownDivisorVar { name: String },

    #[error("step {index} ({op}) failed: {cause}")]
    Step {
        index: usize,
        op: String,
        cause: Box<Error>,
    },

    #[error("{0}")]
    Scenario(String),
}

pub type Result<T> = std::result::Result<T, Error>;
