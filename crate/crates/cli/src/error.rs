use psc_moduli::lattice::LatticeError;
use psc_moduli::lens::EtaError;
use psc_moduli::scenario::ScenarioError;
use psc_moduli::wallcross::WallError;
use thiserror::Error;

/// A failed command, classified by exit status.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parameter(String),
    #[error("{0}")]
    Genericity(String),
    #[error("{0}")]
    Resource(String),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parameter(_) => 2,
            CliError::Genericity(_) => 3,
            CliError::Resource(_) => 4,
            CliError::Internal(_) => 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Parameter(_) => "parameter",
            CliError::Genericity(_) => "genericity",
            CliError::Resource(_) => "resource",
            CliError::Internal(_) => "internal",
        }
    }
}

impl From<EtaError> for CliError {
    fn from(e: EtaError) -> Self {
        match e {
            EtaError::Parameter(_) => CliError::Parameter(e.to_string()),
            EtaError::Resource { .. } => CliError::Resource(e.to_string()),
        }
    }
}

impl From<LatticeError> for CliError {
    fn from(e: LatticeError) -> Self {
        match e {
            LatticeError::Budget { .. } => CliError::Resource(e.to_string()),
            LatticeError::Overflow => CliError::Resource(e.to_string()),
            _ => CliError::Parameter(e.to_string()),
        }
    }
}

impl From<WallError> for CliError {
    fn from(e: WallError) -> Self {
        match e {
            WallError::Lattice(l) => l.into(),
            WallError::NonGeneric { .. }
            | WallError::NonGenericEndpoint
            | WallError::Stabilization { .. }
            | WallError::Uniqueness { .. } => CliError::Genericity(e.to_string()),
            WallError::Internal(_) => CliError::Internal(e.to_string()),
            _ => CliError::Parameter(e.to_string()),
        }
    }
}

impl From<ScenarioError> for CliError {
    fn from(e: ScenarioError) -> Self {
        match e {
            ScenarioError::Lattice(l) => l.into(),
            ScenarioError::Wall(w) => w.into(),
            _ => CliError::Parameter(e.to_string()),
        }
    }
}
