//! JSON ingestion format for noise channels.
//!
//! ```json
//! {"family":"general_pauli","f":0.92,"px":0.02,"py":0.03,"pz":0.03}
//! {"family":"depolarizing","f0":0.92}
//! {"family":"amplitude_damping","gamma":0.1947}
//! {"family":"amplitude_damping","target_fidelity":0.9}
//! {"family":"custom_kraus","operators":[[[[1,0],[0,0]],[[0,0],[1,0]]]]}
//! ```
//!
//! Custom Kraus operators are row-major 2x2 matrices of `[re, im]` pairs.

use nalgebra::Complex;
use serde::{Deserialize, Serialize};

use crate::channel::{amplitude_damping_gamma, Operator, QubitChannel};
use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum NoiseSpec {
    GeneralPauli { f: f64, px: f64, py: f64, pz: f64 },
    Depolarizing { f0: f64 },
    AmplitudeDamping {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        gamma: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        target_fidelity: Option<f64>,
    },
    CustomKraus { operators: Vec<Vec<Vec<[f64; 2]>>> },
}

/// A channel built from a [`NoiseSpec`], with the damping rate when one was
/// solved for or given.
#[derive(Debug, Clone, PartialEq)]
pub struct ResolvedNoise<T: Real> {
    pub channel: QubitChannel<T>,
    pub gamma: Option<T>,
}

impl NoiseSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::NoiseSpec(e.to_string()))
    }

    pub fn resolve<T: Real>(&self) -> Result<ResolvedNoise<T>> {
        match self {
            NoiseSpec::GeneralPauli { f, px, py, pz } => Ok(ResolvedNoise {
                channel: QubitChannel::general_pauli(T::lit(*f), T::lit(*px), T::lit(*py), T::lit(*pz))?,
                gamma: None,
            }),
            NoiseSpec::Depolarizing { f0 } => Ok(ResolvedNoise {
                channel: QubitChannel::depolarizing(T::lit(*f0))?,
                gamma: None,
            }),
            NoiseSpec::AmplitudeDamping {
                gamma,
                target_fidelity,
            } => {
                let gamma = match (gamma, target_fidelity) {
                    (Some(g), None) => T::lit(*g),
                    (None, Some(t)) => amplitude_damping_gamma(T::lit(*t))?,
                    _ => {
                        return Err(Error::NoiseSpec(
                            "amplitude_damping needs exactly one of gamma, target_fidelity".into(),
                        ))
                    }
                };
                Ok(ResolvedNoise {
                    channel: QubitChannel::amplitude_damping(gamma)?,
                    gamma: Some(gamma),
                })
            }
            NoiseSpec::CustomKraus { operators } => {
                let kraus = operators
                    .iter()
                    .map(|m| parse_operator::<T>(m))
                    .collect::<Result<Vec<_>>>()?;
                Ok(ResolvedNoise {
                    channel: QubitChannel::new(kraus)?,
                    gamma: None,
                })
            }
        }
    }

    pub fn channel<T: Real>(&self) -> Result<QubitChannel<T>> {
        self.resolve().map(|r| r.channel)
    }
}

fn parse_operator<T: Real>(rows: &[Vec<[f64; 2]>]) -> Result<Operator<T>> {
    let cols = rows.first().map_or(0, |r| r.len());
    if rows.len() != 2 || rows.iter().any(|r| r.len() != 2) {
        return Err(Error::ShapeMismatch {
            expected: "2x2",
            rows: rows.len(),
            cols,
        });
    }
    Ok(Operator::from_fn(|r, c| {
        let [re, im] = rows[r][c];
        Complex::new(T::lit(re), T::lit(im))
    }))
}
