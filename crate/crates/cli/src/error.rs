use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("usage: {0}")]
    Usage(String),
    #[error("input: {0}")]
    Input(String),
    #[error(transparent)]
    Algebra(#[from] cdala::Error),
}

pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_SYNTAX: i32 = 3;
pub const EXIT_INPUT: i32 = 4;

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use cdala::Error as E;
        match self {
            CliError::Syntax { .. } => EXIT_SYNTAX,
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Input(_) => EXIT_INPUT,
            CliError::Algebra(e) => {
                10 + match e {
                    E::DivisionByZero => 0,
                    E::MixedRootOrder { .. } => 1,
                    E::VariantViolation(_) => 2,
                    E::NormalizationViolation(_) => 3,
                    E::ShapeMismatch(_) => 4,
                    E::NotInAlgebra(_) => 5,
                    E::SchemeDomain(_) => 6,
                    E::WindowTooSmall(_) => 7,
                    E::InsufficientOrder { .. } => 8,
                    E::InsufficientData(_) => 9,
                    E::DegreeMismatch { .. } => 10,
                    E::SeriesMismatch { .. } => 11,
                    E::BudgetExceeded(_) => 12,
                    E::NotStabilized(_) => 13,
                    E::RangeError(_) => 14,
                }
            }
        }
    }
}
