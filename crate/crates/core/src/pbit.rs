//! Single-node models: the stochastic p-bit and the deterministic tanh node.
//!
//! A p-bit emits a spin m = sgn[rand(-1,+1) + tanh(I)], so P(m = +1) is
//! (1 + tanh I)/2 and the long-time average of m follows tanh(I). The node
//! activation is the spin passed through a leaky filter,
//! x' = (1 - leak) x + gain * m, which makes the stationary mean of x equal
//! (gain/leak) tanh(I). The deterministic variant replaces the spin by
//! tanh(I) itself and is the ideal-node baseline.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::RngStream;

/// Node flavor selector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NodeKind {
    Deterministic,
    Stochastic,
}

/// Per-node constants of the leaky update.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PBitParams {
    /// Per-step leak rate, 0 < leak <= 1.
    pub leak: f64,
    /// Drive gain, > 0. With gain == leak the stationary filtered mean of a
    /// stochastic node is exactly tanh(I).
    pub gain: f64,
    pub kind: NodeKind,
}

impl Default for PBitParams {
    fn default() -> Self {
        Self {
            leak: 0.3,
            gain: 0.3,
            kind: NodeKind::Stochastic,
        }
    }
}

impl PBitParams {
    pub fn new(leak: f64, gain: f64, kind: NodeKind) -> Result<Self> {
        let p = Self { leak, gain, kind };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.leak.is_finite() && self.leak > 0.0 && self.leak <= 1.0) {
            return Err(Error::Config(format!(
                "node.leak must be in (0, 1], got {}",
                self.leak
            )));
        }
        if !(self.gain.is_finite() && self.gain > 0.0) {
            return Err(Error::Config(format!(
                "node.gain must be > 0, got {}",
                self.gain
            )));
        }
        Ok(())
    }
}

/// One spin draw: sgn[rand(-1,+1) + tanh(input)], with sgn(0) mapped to +1.
pub fn pbit_sample(input: f64, rng: RngStream) -> Result<f64> {
    if !input.is_finite() {
        return Err(Error::Domain(format!(
            "p-bit input must be finite, got {input}"
        )));
    }
    let r = rng.draw();
    Ok(if r + input.tanh() >= 0.0 { 1.0 } else { -1.0 })
}

/// Outcome of one leaky node update.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NodeStep {
    /// Filtered activation after the update.
    pub activation: f64,
    /// The spin drawn this step (stochastic nodes only).
    pub spin: Option<f64>,
}

/// One node update. Deterministic: x' = (1-leak) x + gain tanh(I).
/// Stochastic:    x' = (1-leak) x + gain m, m = pbit_sample(I).
/// Either way |x'| stays within the band +-gain/leak once |x| is inside it.
pub fn node_step(
    x: f64,
    input: f64,
    params: &PBitParams,
    rng: RngStream,
) -> Result<NodeStep> {
    if !x.is_finite() {
        return Err(Error::Domain(format!(
            "node activation must be finite, got {x}"
        )));
    }
    if !input.is_finite() {
        return Err(Error::Domain(format!(
            "node input must be finite, got {input}"
        )));
    }
    params.validate()?;
    let retained = (1.0 - params.leak) * x;
    match params.kind {
        NodeKind::Deterministic => Ok(NodeStep {
            activation: retained + params.gain * input.tanh(),
            spin: None,
        }),
        NodeKind::Stochastic => {
            let m = pbit_sample(input, rng)?;
            Ok(NodeStep {
                activation: retained + params.gain * m,
                spin: Some(m),
            })
        }
    }
}
