use thiserror::Error;

/// Errors raised by the pricing, simulation and oracle routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The investment-grade condition α>F(T−) does not hold.
    #[error("assumption violated: α>F(T−) fails{}: α={alpha} ≤ F(T−)={f_t_minus}", state_suffix(*.state))]
    AssumptionViolated {
        alpha: f64,
        f_t_minus: f64,
        /// Offending mixture state, when pricing a mixture.
        state: Option<usize>,
    },

    #[error("degenerate curve: F(T−)={0} must lie strictly inside (0,1)")]
    DegenerateCurve(f64),

    #[error("no root: {0}")]
    NoRoot(String),

    #[error("undefined spread: premium leg expectation is zero")]
    UndefinedSpread,

    #[error("dominant state is not unique: states {0} and {1} have equal rate within 1e-12")]
    Tie(usize, usize),

    #[error("combinatorial blowup: {outcomes} outcomes exceed the cap of {cap}")]
    CombinatorialBlowup { outcomes: u128, cap: u128 },
}

fn state_suffix(state: Option<usize>) -> String {
    match state {
        Some(i) => format!(" for mixture state {i}"),
        None => String::new(),
    }
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub(crate) fn not_investment_grade(alpha: f64, f_t_minus: f64) -> Self {
        Error::AssumptionViolated {
            alpha,
            f_t_minus,
            state: None,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
