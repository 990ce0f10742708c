//! Seeded parameter initialization and parameter enumeration.
//!
//! Every tensor is drawn from its own [`KeyedStream`] keyed by
//! `(seed, parameter path)`, so a layer's values do not depend on how many
//! layers were initialized before it.

use crate::rng::KeyedStream;
use crate::ssm_scan::softplus_inverse;
use crate::tensor::{BatchNorm, ConvLayer, ConvSpec, LayerNorm, Tensor};

/// Range of the initial softplus timestep, sampled log-uniformly.
pub const DT_MIN: f64 = 1e-3;
pub const DT_MAX: f64 = 1e-1;

#[derive(Clone, Copy, Debug)]
pub struct Initializer {
    seed: u64,
}

impl Initializer {
    pub fn new(seed: u64) -> Self {
        Self { seed }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self, path: &str) -> KeyedStream {
        KeyedStream::new(self.seed, path)
    }

    /// Uniform in `[−bound, bound]`.
    pub fn uniform(&self, path: &str, shape: &[usize], bound: f64) -> Tensor {
        let mut s = self.stream(path);
        Tensor::from_fn(shape, |_| ((2.0 * s.next_f64() - 1.0) * bound) as f32)
    }

    /// Weights uniform in `±1/√fan_in` with `fan_in = (C_in/groups)·k²`; bias zero.
    pub fn conv(&self, path: &str, spec: ConvSpec) -> ConvLayer {
        let [_, cin_g, k, _] = spec.weight_shape();
        let bound = 1.0 / ((cin_g * k * k) as f64).sqrt();
        ConvLayer {
            spec,
            weight: self.uniform(&format!("{path}.weight"), &spec.weight_shape(), bound),
            bias: spec.has_bias.then(|| Tensor::zeros(&[spec.out_channels])),
        }
    }

    /// `softplus⁻¹(Δ₀)` with `Δ₀` log-uniform in `[DT_MIN, DT_MAX]`.
    pub fn dt_bias(&self, path: &str, channels: usize) -> Tensor {
        let mut s = self.stream(path);
        let (lo, hi) = (DT_MIN.ln(), DT_MAX.ln());
        Tensor::from_fn(&[channels], |_| softplus_inverse(s.uniform(lo, hi).exp()) as f32)
    }

    /// `ln(n + 1)` for every row, so `A = −exp(a_log)` starts at `−(n + 1)`.
    pub fn a_log(&self, channels: usize, state: usize) -> Tensor {
        Tensor::from_fn(&[channels, state], |i| ((i % state) as f32 + 1.0).ln())
    }
}

/// Enumerates learnable parameters by dotted path. Batch-norm running
/// statistics are buffers and are not visited.
pub trait Parameters {
    fn visit_params(&self, prefix: &str, f: &mut dyn FnMut(&str, &[f32]));

    fn param_count(&self) -> usize {
        let mut n = 0;
        self.visit_params("", &mut |_, p| n += p.len());
        n
    }

    /// Order-dependent FNV-1a digest of every parameter's path and bits.
    fn checksum(&self) -> u64 {
        let mut h = crate::rng::fnv1a64(b"");
        self.visit_params("", &mut |path, p| {
            for b in path.bytes() {
                h = (h ^ b as u64).wrapping_mul(0x100_0000_01B3);
            }
            for v in p {
                for b in v.to_bits().to_le_bytes() {
                    h = (h ^ b as u64).wrapping_mul(0x100_0000_01B3);
                }
            }
        });
        h
    }
}

pub(crate) fn join(prefix: &str, name: &str) -> String {
    if prefix.is_empty() {
        name.to_string()
    } else {
        format!("{prefix}.{name}")
    }
}

impl Parameters for ConvLayer {
    fn visit_params(&self, prefix: &str, f: &mut dyn FnMut(&str, &[f32])) {
        f(&join(prefix, "weight"), self.weight.data());
        if let Some(b) = &self.bias {
            f(&join(prefix, "bias"), b.data());
        }
    }
}

impl Parameters for BatchNorm {
    fn visit_params(&self, prefix: &str, f: &mut dyn FnMut(&str, &[f32])) {
        f(&join(prefix, "gamma"), &self.gamma);
        f(&join(prefix, "beta"), &self.beta);
    }
}

impl Parameters for LayerNorm {
    fn visit_params(&self, prefix: &str, f: &mut dyn FnMut(&str, &[f32])) {
        f(&join(prefix, "gamma"), &self.gamma);
        f(&join(prefix, "beta"), &self.beta);
    }
}
