use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("argument must be positive, got 0")]
    ZeroArgument,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("modulus {0} must be an odd prime")]
    BadModulus(u64),

    #[error("zeta({0}) is undefined here: argument must be at least 2")]
    ZetaArgument(i64),

    #[error("invalid variety parameters: {0}")]
    InvalidSpec(String),

    #[error("cannot parse variety `{input}`; expected one of: {grammar}")]
    Grammar {
        input: String,
        grammar: &'static str,
    },

    #[error("curve y^2 = x^3 + {a4}x + {a6} is singular (discriminant 0)")]
    SingularCurve { a4: i64, a6: i64 },

    #[error("curve coefficients too large: ({a4}, {a6})")]
    CurveOverflow { a4: i64, a6: i64 },

    #[error("p = {p} is a prime of bad reduction for y^2 = x^3 + {a4}x + {a6}")]
    BadReduction { p: u64, a4: i64, a6: i64 },

    #[error("internal consistency failure: {0}")]
    Inexact(String),

    #[error("t_max must be at least {min}, got {got}")]
    TooSmall { min: f64, got: f64 },

    #[error("checkpoint schedule is invalid: {0}")]
    Schedule(String),

    #[error("fit needs at least 3 checkpoints inside the window, found {0}")]
    TooFewPoints(usize),

    #[error("fit window is degenerate: all log log t coincide")]
    DegenerateWindow,

    #[error("fit requires t >= 3 inside the window, found t = {0}")]
    WindowBelowThree(f64),

    #[error("no density prediction exists for {0}")]
    NoPrediction(String),

    #[error("no closed-form deviation is known for {0}")]
    NoClosedForm(String),

    #[error("local ratio must be positive, got {0}")]
    NonPositiveRatio(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
