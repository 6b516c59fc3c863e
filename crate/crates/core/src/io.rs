//! JSON problem files and result documents.
//!
//! Infinite values are written as the strings `"inf"` / `"-inf"`. Axis and
//! row indices are one-based in every document.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::ProjError;
use crate::oracle::{Ball, Ellipsoid, HrepBall};
use crate::problem::{Body, OracleShape, Problem};
use crate::types::{HPolyhedron, NormSpec, Point, ProjectionResult, VPolytope};

#[derive(Debug, Error)]
pub enum InputError {
    #[error("malformed problem file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("problem file is missing field `{0}`")]
    Missing(&'static str),
    #[error("invalid problem: {0}")]
    Invalid(#[from] ProjError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Representation {
    Hrep,
    Vrep,
    Oracle,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "snake_case", deny_unknown_fields)]
pub enum OracleFile {
    Ball {
        center: Vec<f64>,
        radius: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        radius_hint: Option<f64>,
    },
    Ellipsoid {
        center: Vec<f64>,
        semi_axes: Vec<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        radius_hint: Option<f64>,
    },
    HrepBall {
        #[serde(rename = "A")]
        a: Vec<Vec<f64>>,
        b: Vec<f64>,
        center: Vec<f64>,
        radius: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        radius_hint: Option<f64>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NormFile {
    #[serde(default = "one")]
    pub p: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<f64>>,
}

fn one() -> f64 {
    1.0
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub representation: Representation,
    #[serde(rename = "A", default, skip_serializing_if = "Option::is_none")]
    pub a: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleFile>,
    pub point: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub norm: Option<NormFile>,
}

fn with_hint<T>(
    mut shape: T,
    hint: Option<f64>,
    set: impl FnOnce(&mut T, f64),
) -> Result<T, ProjError> {
    if let Some(h) = hint {
        if !(h.is_finite() && h > 0.0) {
            return Err(ProjError::Domain("radius_hint must be positive".into()));
        }
        set(&mut shape, h);
    }
    Ok(shape)
}

impl ProblemFile {
    pub fn from_json(text: &str) -> Result<Self, InputError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("problem files always serialize")
    }

    /// Validates the file into a problem.
    pub fn to_problem(&self) -> Result<Problem, InputError> {
        let body = match self.representation {
            Representation::Hrep => {
                let a = self.a.clone().ok_or(InputError::Missing("A"))?;
                let b = self.b.clone().ok_or(InputError::Missing("b"))?;
                Body::Hrep(HPolyhedron::new(a, b)?)
            }
            Representation::Vrep => {
                let v = self
                    .vertices
                    .clone()
                    .ok_or(InputError::Missing("vertices"))?;
                Body::Vrep(VPolytope::new(v)?)
            }
            Representation::Oracle => {
                let spec = self.oracle.clone().ok_or(InputError::Missing("oracle"))?;
                Body::Oracle(match spec {
                    OracleFile::Ball {
                        center,
                        radius,
                        radius_hint,
                    } => OracleShape::Ball(with_hint(
                        Ball::new(center, radius)?,
                        radius_hint,
                        |b, h| b.radius_hint = h,
                    )?),
                    OracleFile::Ellipsoid {
                        center,
                        semi_axes,
                        radius_hint,
                    } => OracleShape::Ellipsoid(with_hint(
                        Ellipsoid::new(center, semi_axes)?,
                        radius_hint,
                        |e, h| e.radius_hint = h,
                    )?),
                    OracleFile::HrepBall {
                        a,
                        b,
                        center,
                        radius,
                        radius_hint,
                    } => {
                        let ball = with_hint(Ball::new(center, radius)?, radius_hint, |b, h| {
                            b.radius_hint = h
                        })?;
                        OracleShape::HrepBall(HrepBall::new(HPolyhedron::new(a, b)?, ball)?)
                    }
                })
            }
        };
        let point = Point::new(self.point.clone())?;
        let dim = body.as_convex_body().dim();
        if point.dim() != dim {
            return Err(ProjError::Dimension {
                expected: dim,
                found: point.dim(),
            }
            .into());
        }
        let norm = match &self.norm {
            Some(n) => NormSpec::new(n.p, n.weights.clone())?,
            None => NormSpec::l1(),
        };
        norm.check_dim(dim)?;
        Ok(Problem { body, point, norm })
    }
}

/// Parses and validates a problem file in one step.
pub fn parse_problem(text: &str) -> Result<Problem, InputError> {
    ProblemFile::from_json(text)?.to_problem()
}

/// Reals that may be infinite; infinities travel as `"inf"` / `"-inf"`.
pub mod ext_f64 {
    use serde::de::{self, Visitor};
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        if v.is_finite() {
            s.serialize_f64(*v)
        } else if *v > 0.0 {
            s.serialize_str("inf")
        } else if *v < 0.0 {
            s.serialize_str("-inf")
        } else {
            s.serialize_str("nan")
        }
    }

    struct ExtVisitor;

    impl Visitor<'_> for ExtVisitor {
        type Value = f64;

        fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
            f.write_str("a number or \"inf\"")
        }

        fn visit_f64<E: de::Error>(self, v: f64) -> Result<f64, E> {
            Ok(v)
        }

        fn visit_i64<E: de::Error>(self, v: i64) -> Result<f64, E> {
            Ok(v as f64)
        }

        fn visit_u64<E: de::Error>(self, v: u64) -> Result<f64, E> {
            Ok(v as f64)
        }

        fn visit_str<E: de::Error>(self, v: &str) -> Result<f64, E> {
            match v {
                "inf" => Ok(f64::INFINITY),
                "-inf" => Ok(f64::NEG_INFINITY),
                other => Err(E::invalid_value(de::Unexpected::Str(other), &self)),
            }
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        d.deserialize_any(ExtVisitor)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LambdaEntry {
    pub axis: usize,
    pub sign: String,
    #[serde(with = "ext_f64")]
    pub lambda: f64,
    pub binding_row: Option<usize>,
}

/// Serialized form of a [`ProjectionResult`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultDocument {
    #[serde(with = "ext_f64")]
    pub distance: f64,
    pub axis: usize,
    pub sign: String,
    pub boundary_point: Vec<f64>,
    pub lambda_table: Vec<LambdaEntry>,
}

impl From<&ProjectionResult> for ResultDocument {
    fn from(r: &ProjectionResult) -> Self {
        Self {
            distance: r.distance,
            axis: r.axis + 1,
            sign: r.sign.symbol().to_string(),
            boundary_point: r.boundary_point.coords().to_vec(),
            lambda_table: r
                .lambda_table
                .iter()
                .map(|e| LambdaEntry {
                    axis: e.axis + 1,
                    sign: e.sign.symbol().to_string(),
                    lambda: e.lambda,
                    binding_row: e.binding_row.map(|i| i + 1),
                })
                .collect(),
        }
    }
}

impl ResultDocument {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("result documents always serialize")
    }
}

/// Pretty JSON for a projection result.
pub fn result_to_json(r: &ProjectionResult) -> String {
    ResultDocument::from(r).to_json()
}
