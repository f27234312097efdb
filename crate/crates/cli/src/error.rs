use shiftlab_core::carleson::CarlesonError;
use shiftlab_core::diagnostics::DiagError;
use shiftlab_core::hardy_core::HardyError;
use shiftlab_core::inner_fn::InnerError;
use shiftlab_core::op_lab::OpError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad configuration or arguments (exit 2).
    #[error("invalid configuration: {0}")]
    Validation(String),
    /// A solve, eigen or cover computation failed (exit 3).
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Numerical(_) | CliError::Io(_) => 3,
        }
    }
}

impl From<OpError> for CliError {
    fn from(e: OpError) -> Self {
        match e {
            OpError::InvalidArgument(_) | OpError::Shape { .. } => CliError::Validation(e.to_string()),
            OpError::Inner(inner) => inner.into(),
            OpError::Hardy(h) => h.into(),
            _ => CliError::Numerical(e.to_string()),
        }
    }
}

impl From<InnerError> for CliError {
    fn from(e: InnerError) -> Self {
        match e {
            InnerError::RootFinding(_) => CliError::Numerical(e.to_string()),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

impl From<HardyError> for CliError {
    fn from(e: HardyError) -> Self {
        match e {
            HardyError::NonPositiveModulus { .. } => CliError::Numerical(e.to_string()),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

impl From<CarlesonError> for CliError {
    fn from(e: CarlesonError) -> Self {
        match e {
            CarlesonError::InvalidParameter(_) | CarlesonError::NotNested { .. } => CliError::Validation(e.to_string()),
            _ => CliError::Numerical(e.to_string()),
        }
    }
}

impl From<DiagError> for CliError {
    fn from(e: DiagError) -> Self {
        match e {
            DiagError::Shape(_) | DiagError::Precondition(_) | DiagError::InsufficientBand { .. } => {
                CliError::Validation(e.to_string())
            }
            DiagError::Op(op) => op.into(),
            DiagError::NotInvariant { .. } => CliError::Numerical(e.to_string()),
        }
    }
}
