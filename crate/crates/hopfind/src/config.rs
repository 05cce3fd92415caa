//! The JSON algebra-configuration schema.
//!
//! ```json
//! {
//!   "family": "taft",
//!   "n": 3,
//!   "omega_power": 1,
//!   "derived": ["dual", {"tensor": {"family": "group", "cayley": [[0]]}}]
//! }
//! ```
//!
//! * `family`: `"group"` (with `cayley`), `"taft"` / `"gr_uqsl2"` (with `n`
//!   and `omega_power`, meaning `omega = zeta_n^k`), or `"custom"` (with a
//!   full structure-constant block mirroring the algebra fields).
//! * `derived`: a list of steps applied left to right, each one of
//!   `"dual" | "op" | "cop" | "double"` or `{"tensor": <config>}`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cyclotomic::CycNumber;
use crate::hopf::{
    derived, drinfeld_double, gr_uqsl2, group_algebra, taft, tensor, Derived, HopfAlgebra,
    HopfError,
};
use crate::linalg::Matrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("family `{family}` requires the field `{field}`")]
    MissingField {
        family: &'static str,
        field: &'static str,
    },
    #[error("unknown derived step `{0}` (expected dual, op, cop, double or {{\"tensor\": ...}})")]
    UnknownDerivedStep(String),
    #[error(transparent)]
    Hopf(#[from] HopfError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Group,
    Taft,
    GrUqsl2,
    Custom,
}

/// Full structure-constant description of a custom algebra; mirrors the
/// fields of [`HopfAlgebra`]. The antipode inverse may be omitted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CustomAlgebra {
    pub dim: usize,
    pub conductor: u64,
    /// `mult[i][j]` = list of `[k, coefficient]` terms of `e_i e_j`.
    pub mult: Vec<Vec<Vec<(usize, CycNumber)>>>,
    pub unit: Vec<CycNumber>,
    /// `comult[i]` = list of `[j, k, coefficient]` terms of `Delta(e_i)`.
    pub comult: Vec<Vec<(usize, usize, CycNumber)>>,
    pub counit: Vec<CycNumber>,
    pub antipode: Vec<Vec<CycNumber>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub antipode_inverse: Option<Vec<Vec<CycNumber>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis_labels: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DerivedStep {
    Dual,
    Op,
    Cop,
    Double,
    Tensor(Box<AlgebraConfig>),
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum DerivedStepRepr {
    Simple(String),
    Tensor { tensor: Box<AlgebraConfig> },
}

impl TryFrom<DerivedStepRepr> for DerivedStep {
    type Error = String;
    fn try_from(repr: DerivedStepRepr) -> Result<Self, String> {
        Ok(match repr {
            DerivedStepRepr::Simple(s) => match s.as_str() {
                "dual" => DerivedStep::Dual,
                "op" => DerivedStep::Op,
                "cop" => DerivedStep::Cop,
                "double" => DerivedStep::Double,
                other => return Err(format!("unknown derived step `{other}`")),
            },
            DerivedStepRepr::Tensor { tensor } => DerivedStep::Tensor(tensor),
        })
    }
}

impl From<DerivedStep> for DerivedStepRepr {
    fn from(step: DerivedStep) -> Self {
        match step {
            DerivedStep::Dual => DerivedStepRepr::Simple("dual".into()),
            DerivedStep::Op => DerivedStepRepr::Simple("op".into()),
            DerivedStep::Cop => DerivedStepRepr::Simple("cop".into()),
            DerivedStep::Double => DerivedStepRepr::Simple("double".into()),
            DerivedStep::Tensor(cfg) => DerivedStepRepr::Tensor { tensor: cfg },
        }
    }
}

impl Serialize for DerivedStep {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        DerivedStepRepr::from(self.clone()).serialize(s)
    }
}

impl<'de> Deserialize<'de> for DerivedStep {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = DerivedStepRepr::deserialize(d)?;
        DerivedStep::try_from(repr).map_err(serde::de::Error::custom)
    }
}

/// Declarative description of an algebra instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraConfig {
    pub family: Family,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega_power: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cayley: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub custom: Option<CustomAlgebra>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub derived: Vec<DerivedStep>,
}

impl AlgebraConfig {
    pub fn group(cayley: Vec<Vec<usize>>) -> Self {
        AlgebraConfig {
            family: Family::Group,
            n: None,
            omega_power: None,
            cayley: Some(cayley),
            custom: None,
            derived: Vec::new(),
        }
    }

    pub fn taft(n: u64, omega_power: i64) -> Self {
        AlgebraConfig {
            family: Family::Taft,
            n: Some(n),
            omega_power: Some(omega_power),
            cayley: None,
            custom: None,
            derived: Vec::new(),
        }
    }

    pub fn gr_uqsl2(n: u64, omega_power: i64) -> Self {
        AlgebraConfig {
            family: Family::GrUqsl2,
            n: Some(n),
            omega_power: Some(omega_power),
            cayley: None,
            custom: None,
            derived: Vec::new(),
        }
    }

    pub fn with_derived(mut self, steps: Vec<DerivedStep>) -> Self {
        self.derived = steps;
        self
    }

    /// Builds the algebra, applying derived steps left to right.
    pub fn build(&self) -> Result<HopfAlgebra, ConfigError> {
        let mut h = match self.family {
            Family::Group => {
                let cayley = self.cayley.as_ref().ok_or(ConfigError::MissingField {
                    family: "group",
                    field: "cayley",
                })?;
                group_algebra(cayley)?
            }
            Family::Taft => {
                let n = self.n.ok_or(ConfigError::MissingField {
                    family: "taft",
                    field: "n",
                })?;
                let k = self.omega_power.unwrap_or(1);
                taft(n, &CycNumber::root_of_unity(n, k))?
            }
            Family::GrUqsl2 => {
                let n = self.n.ok_or(ConfigError::MissingField {
                    family: "gr_uqsl2",
                    field: "n",
                })?;
                let k = self.omega_power.unwrap_or(1);
                gr_uqsl2(n, &CycNumber::root_of_unity(n, k))?
            }
            Family::Custom => {
                let c = self.custom.as_ref().ok_or(ConfigError::MissingField {
                    family: "custom",
                    field: "custom",
                })?;
                build_custom(c)?
            }
        };
        for step in &self.derived {
            h = match step {
                DerivedStep::Dual => derived(&h, Derived::Dual),
                DerivedStep::Op => derived(&h, Derived::Op),
                DerivedStep::Cop => derived(&h, Derived::Cop),
                DerivedStep::Double => drinfeld_double(&h)?,
                DerivedStep::Tensor(cfg) => {
                    let other = cfg.build()?;
                    tensor(&h, &other)
                }
            };
        }
        Ok(h)
    }

    /// Short human-readable description used in reports.
    pub fn describe(&self) -> String {
        let base = match self.family {
            Family::Group => format!(
                "group({})",
                self.cayley.as_ref().map_or(0, |c| c.len())
            ),
            Family::Taft => format!(
                "taft({}, z^{})",
                self.n.unwrap_or(0),
                self.omega_power.unwrap_or(1)
            ),
            Family::GrUqsl2 => format!(
                "gr_uqsl2({}, z^{})",
                self.n.unwrap_or(0),
                self.omega_power.unwrap_or(1)
            ),
            Family::Custom => "custom".to_string(),
        };
        let mut out = base;
        for step in &self.derived {
            out = match step {
                DerivedStep::Dual => format!("dual({out})"),
                DerivedStep::Op => format!("op({out})"),
                DerivedStep::Cop => format!("cop({out})"),
                DerivedStep::Double => format!("double({out})"),
                DerivedStep::Tensor(cfg) => format!("tensor({out}, {})", cfg.describe()),
            };
        }
        out
    }
}

fn build_custom(c: &CustomAlgebra) -> Result<HopfAlgebra, ConfigError> {
    let to_matrix = |rows: &Vec<Vec<CycNumber>>| -> Result<Matrix, ConfigError> {
        if rows.len() != c.dim || rows.iter().any(|r| r.len() != c.dim) {
            return Err(ConfigError::Hopf(HopfError::BadStructure(
                "antipode matrix has wrong shape".into(),
            )));
        }
        Ok(Matrix::from_rows(rows.clone()))
    };
    let antipode = to_matrix(&c.antipode)?;
    let antipode_inv = c.antipode_inverse.as_ref().map(to_matrix).transpose()?;
    Ok(HopfAlgebra::from_parts(
        c.dim,
        c.conductor,
        c.mult.clone(),
        c.unit.clone(),
        c.comult.clone(),
        c.counit.clone(),
        antipode,
        antipode_inv,
        c.basis_labels.clone(),
        "custom".into(),
    )?)
}

/// Serializes any algebra back into a custom structure block, e.g. to
/// produce fixtures.
pub fn to_custom(h: &HopfAlgebra) -> CustomAlgebra {
    let d = h.dim();
    let matrix_rows = |m: &Matrix| -> Vec<Vec<CycNumber>> {
        (0..d)
            .map(|r| (0..d).map(|c| m.get(r, c).clone()).collect())
            .collect()
    };
    CustomAlgebra {
        dim: d,
        conductor: h.conductor(),
        mult: (0..d)
            .map(|i| (0..d).map(|j| h.basis_product(i, j).clone()).collect())
            .collect(),
        unit: h.unit_vector().to_vec(),
        comult: (0..d).map(|i| h.comult_terms(i).to_vec()).collect(),
        counit: h.counit_vector().to_vec(),
        antipode: matrix_rows(h.antipode_matrix()),
        antipode_inverse: Some(matrix_rows(h.antipode_inv_matrix())),
        basis_labels: h.basis_labels().map(|l| l.to_vec()),
    }
}
