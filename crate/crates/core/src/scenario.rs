//! Wall-crossing scenarios: a lattice, a diffeomorphism acting on it, the
//! spin^c data and a starting period point, read from TOML.
//!
//! ```toml
//! gram = [[1, 0, 0], [0, -1, 0], [0, 0, -1]]
//! positive_class = [1, 0, 0]
//! # f = r(first) ∘ r(second) ∘ …; alternatively `isometry = [[...], ...]`
//! reflections = [[1, 1, 1], [1, -1, 1]]
//! c1 = [1, 1, 1]
//! perturbation = ["0", "0", "0"]
//! omega0 = ["1", "1/5", "1/3"]
//! sw_x = 1
//! dim_x = 0
//! n_max = 1000
//! window = 16
//! ```

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{reflection_sphere, IntegralLattice, Isometry, LatticeError, LatticeVector};
use crate::rational::{self, ExactRational};
use crate::wallcross::{OrbitConfig, PeriodPoint, SpinCData, WallClass, WallError};

pub const PAPER_DEFAULT: &str = "paper-default";

const PAPER_DEFAULT_TOML: &str = r#"
gram = [[1, 0, 0], [0, -1, 0], [0, 0, -1]]
positive_class = [1, 0, 0]
reflections = [[1, 1, 1], [1, -1, 1]]
c1 = [1, 1, 1]
omega0 = ["1", "1/5", "1/3"]
sw_x = 1
"#;

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("cannot read scenario {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed scenario: {0}")]
    Syntax(#[from] toml::de::Error),
    #[error("invalid scenario: {0}")]
    Invalid(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Wall(#[from] WallError),
}

/// The on-disk form. Rationals are strings such as `"1/5"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub gram: Vec<Vec<i64>>,
    pub positive_class: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reflections: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub isometry: Option<Vec<Vec<i64>>>,
    pub c1: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub perturbation: Option<Vec<String>>,
    pub omega0: Vec<String>,
    pub sw_x: i64,
    #[serde(default)]
    pub dim_x: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_max: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<u32>,
}

/// A validated scenario.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub lattice: IntegralLattice,
    pub isometry: Isometry,
    pub wall: WallClass,
    pub spinc: SpinCData,
    pub omega0: PeriodPoint,
    pub config: OrbitConfig,
}

impl Scenario {
    pub fn paper_default() -> Scenario {
        Scenario::from_toml(PAPER_DEFAULT_TOML).expect("built-in scenario is valid")
    }

    pub fn from_toml(text: &str) -> Result<Scenario, ScenarioError> {
        let file: ScenarioFile = toml::from_str(text)?;
        Scenario::from_file(&file)
    }

    /// `paper-default` or a path to a TOML file.
    pub fn load(name_or_path: &str) -> Result<Scenario, ScenarioError> {
        if name_or_path == PAPER_DEFAULT {
            return Ok(Scenario::paper_default());
        }
        let text = std::fs::read_to_string(name_or_path).map_err(|source| ScenarioError::Io {
            path: name_or_path.to_string(),
            source,
        })?;
        Scenario::from_toml(&text)
    }

    pub fn from_file(file: &ScenarioFile) -> Result<Scenario, ScenarioError> {
        let lattice = IntegralLattice::new(file.gram.clone())?
            .with_positive_class(LatticeVector::new(file.positive_class.clone()))?;
        let isometry = match (&file.reflections, &file.isometry) {
            (Some(spheres), None) => {
                if spheres.is_empty() {
                    return Err(ScenarioError::Invalid(
                        "reflections must be nonempty".into(),
                    ));
                }
                let mut f = Isometry::identity(lattice.rank());
                for sigma in spheres {
                    f = f.compose(&reflection_sphere(
                        &lattice,
                        &LatticeVector::new(sigma.clone()),
                    )?)?;
                }
                f
            }
            (None, Some(m)) => Isometry::new(&lattice, m.clone())?,
            _ => {
                return Err(ScenarioError::Invalid(
                    "exactly one of `reflections` and `isometry` must be given".into(),
                ))
            }
        };
        let c1 = LatticeVector::new(file.c1.clone());
        let perturbation = match &file.perturbation {
            Some(p) => parse_all(p, "perturbation")?,
            None => vec![rational::integer(0); c1.rank()],
        };
        let wall = WallClass::new(c1.clone(), perturbation)?;
        let spinc = SpinCData::new(&lattice, c1, file.sw_x, file.dim_x)?;
        let omega0 = PeriodPoint::new(&lattice, parse_all(&file.omega0, "omega0")?)?;
        let mut config = OrbitConfig::default();
        if let Some(n) = file.n_max {
            config.n_max = n;
        }
        if let Some(w) = file.window {
            config.window = w;
        }
        Ok(Scenario {
            lattice,
            isometry,
            wall,
            spinc,
            omega0,
            config,
        })
    }

    /// The same scenario started from a different ray.
    pub fn with_omega0(&self, coords: Vec<ExactRational>) -> Result<Scenario, WallError> {
        Ok(Scenario {
            omega0: PeriodPoint::new(&self.lattice, coords)?,
            ..self.clone()
        })
    }
}

fn parse_all(items: &[String], field: &str) -> Result<Vec<ExactRational>, ScenarioError> {
    items
        .iter()
        .map(|s| {
            rational::parse_ratio(s).map_err(|e| ScenarioError::Invalid(format!("{field}: {e}")))
        })
        .collect()
}
