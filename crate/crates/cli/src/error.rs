use ncgkit::nctorus::TorusError;
use ncgkit::spheres::SphereError;
use ncgkit::thetaring::ThetaError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Exit code 2.
    #[error("{0}")]
    Numeric(String),
    /// Exit code 3.
    #[error("{0}")]
    Param(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Numeric(_) => 2,
            CliError::Param(_) => 3,
        }
    }
}

impl From<ThetaError> for CliError {
    fn from(e: ThetaError) -> Self {
        match e {
            ThetaError::DivergentNome => CliError::Numeric(e.to_string()),
            _ => CliError::Param(e.to_string()),
        }
    }
}

impl From<TorusError> for CliError {
    fn from(e: TorusError) -> Self {
        CliError::Param(e.to_string())
    }
}

impl From<SphereError> for CliError {
    fn from(e: SphereError) -> Self {
        CliError::Param(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Param(format!("i/o: {e}"))
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Param(format!("csv: {e}"))
    }
}
