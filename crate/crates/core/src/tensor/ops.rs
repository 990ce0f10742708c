use rayon::prelude::*;

use super::Tensor;
use crate::error::{Error, Result};

/// Geometry of a square 2-D convolution.
///
/// `groups == 1` is a dense convolution, `groups == in_channels` a depthwise one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConvSpec {
    pub in_channels: usize,
    pub out_channels: usize,
    pub kernel_size: usize,
    pub stride: usize,
    pub padding: usize,
    pub groups: usize,
    pub has_bias: bool,
}

impl ConvSpec {
    /// Stride-1 "same" convolution with `padding = kernel_size / 2`.
    pub fn same(in_channels: usize, out_channels: usize, kernel_size: usize) -> Self {
        Self {
            in_channels,
            out_channels,
            kernel_size,
            stride: 1,
            padding: kernel_size / 2,
            groups: 1,
            has_bias: false,
        }
    }

    pub fn pointwise(in_channels: usize, out_channels: usize) -> Self {
        Self::same(in_channels, out_channels, 1)
    }

    pub fn depthwise(channels: usize, kernel_size: usize) -> Self {
        Self {
            groups: channels,
            ..Self::same(channels, channels, kernel_size)
        }
    }

    pub fn with_stride(mut self, stride: usize) -> Self {
        self.stride = stride;
        self
    }

    pub fn with_bias(mut self, has_bias: bool) -> Self {
        self.has_bias = has_bias;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let op = "ConvSpec";
        if self.in_channels == 0 || self.out_channels == 0 || self.kernel_size == 0 {
            return Err(Error::invalid(op, "channels and kernel size must be positive"));
        }
        if self.stride == 0 {
            return Err(Error::invalid(op, "stride must be positive"));
        }
        if self.groups == 0
            || self.in_channels % self.groups != 0
            || self.out_channels % self.groups != 0
        {
            return Err(Error::invalid(
                op,
                format!(
                    "channels {}→{} not divisible by groups {}",
                    self.in_channels, self.out_channels, self.groups
                ),
            ));
        }
        Ok(())
    }

    pub fn weight_shape(&self) -> [usize; 4] {
        [
            self.out_channels,
            self.in_channels / self.groups,
            self.kernel_size,
            self.kernel_size,
        ]
    }

    /// `floor((n + 2·padding − k) / stride) + 1`, or `None` if the kernel does not fit.
    pub fn output_len(&self, n: usize) -> Option<usize> {
        let padded = n + 2 * self.padding;
        (padded >= self.kernel_size).then(|| (padded - self.kernel_size) / self.stride + 1)
    }

    pub fn param_count(&self) -> usize {
        let w: usize = self.weight_shape().iter().product();
        w + if self.has_bias { self.out_channels } else { 0 }
    }
}

/// Direct cross-correlation of a `C_in×H×W` map.
///
/// Each output element is accumulated in `f64` over `(input channel, ky, kx)` in
/// ascending order, out-of-bounds taps skipped, bias added last.
pub fn conv2d(input: &Tensor, spec: &ConvSpec, weight: &Tensor, bias: Option<&Tensor>) -> Result<Tensor> {
    const OP: &str = "conv2d";
    spec.validate()?;
    let (c_in, h, w) = input.dims3(OP)?;
    if c_in != spec.in_channels {
        return Err(Error::shape(OP, "input channels", spec.in_channels, c_in));
    }
    let expected = spec.weight_shape();
    if weight.rank() != 4 {
        return Err(Error::shape(OP, "weight rank", 4, weight.rank()));
    }
    for (axis, (name, &want)) in ["out channels", "in channels per group", "kernel height", "kernel width"]
        .iter()
        .zip(&expected)
        .enumerate()
    {
        if weight.shape()[axis] != want {
            return Err(Error::shape(OP, format!("weight {name}"), want, weight.shape()[axis]));
        }
    }
    match (spec.has_bias, bias) {
        (true, Some(b)) if b.numel() != spec.out_channels => {
            return Err(Error::shape(OP, "bias length", spec.out_channels, b.numel()));
        }
        (true, None) => return Err(Error::invalid(OP, "spec requires a bias but none was given")),
        (false, Some(_)) => return Err(Error::invalid(OP, "bias given for a bias-free spec")),
        _ => {}
    }
    let oh = spec
        .output_len(h)
        .ok_or_else(|| Error::shape(OP, "height (kernel larger than padded input)", spec.kernel_size, h))?;
    let ow = spec
        .output_len(w)
        .ok_or_else(|| Error::shape(OP, "width (kernel larger than padded input)", spec.kernel_size, w))?;

    let k = spec.kernel_size;
    let cin_g = spec.in_channels / spec.groups;
    let cout_g = spec.out_channels / spec.groups;
    let x = input.data();
    let wt = weight.data();
    let bias = bias.map(Tensor::data);

    let mut out = vec![0.0f32; spec.out_channels * oh * ow];
    out.par_chunks_mut(oh * ow).enumerate().for_each(|(co, plane)| {
        let mut acc = vec![0.0f64; oh * ow];
        let group = co / cout_g;
        for ci_local in 0..cin_g {
            let ci = group * cin_g + ci_local;
            let src = &x[ci * h * w..][..h * w];
            for ky in 0..k {
                let Some((y0, y1)) = valid_range(ky, spec.padding, spec.stride, h, oh) else {
                    continue;
                };
                for kx in 0..k {
                    let Some((x0, x1)) = valid_range(kx, spec.padding, spec.stride, w, ow) else {
                        continue;
                    };
                    let wv = wt[((co * cin_g + ci_local) * k + ky) * k + kx] as f64;
                    for oy in y0..y1 {
                        let iy = oy * spec.stride + ky - spec.padding;
                        let row = &src[iy * w..][..w];
                        let dst = &mut acc[oy * ow..][..ow];
                        for ox in x0..x1 {
                            let ix = ox * spec.stride + kx - spec.padding;
                            dst[ox] += wv * row[ix] as f64;
                        }
                    }
                }
            }
        }
        let b = bias.map_or(0.0, |b| b[co] as f64);
        for (o, a) in plane.iter_mut().zip(acc) {
            *o = (a + b) as f32;
        }
    });
    Tensor::new(&[spec.out_channels, oh, ow], out)
}

/// Output positions `[lo, hi)` whose tap `kpos` lands inside `[0, n)`.
fn valid_range(kpos: usize, pad: usize, stride: usize, n: usize, out_len: usize) -> Option<(usize, usize)> {
    let lo = if kpos >= pad { 0 } else { (pad - kpos).div_ceil(stride) };
    if n + pad <= kpos {
        return None;
    }
    let hi = ((n - 1 + pad - kpos) / stride + 1).min(out_len);
    (lo < hi).then_some((lo, hi))
}

/// A convolution together with its parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvLayer {
    pub spec: ConvSpec,
    pub weight: Tensor,
    pub bias: Option<Tensor>,
}

impl ConvLayer {
    pub fn new(spec: ConvSpec, weight: Tensor, bias: Option<Tensor>) -> Result<Self> {
        spec.validate()?;
        if weight.shape() != spec.weight_shape() {
            return Err(Error::invalid(
                "ConvLayer",
                format!("weight shape {:?}, expected {:?}", weight.shape(), spec.weight_shape()),
            ));
        }
        if spec.has_bias != bias.is_some() {
            return Err(Error::invalid("ConvLayer", "bias presence disagrees with spec"));
        }
        Ok(Self { spec, weight, bias })
    }

    pub fn zeros(spec: ConvSpec) -> Self {
        Self {
            spec,
            weight: Tensor::zeros(&spec.weight_shape()),
            bias: spec.has_bias.then(|| Tensor::zeros(&[spec.out_channels])),
        }
    }

    pub fn forward(&self, input: &Tensor) -> Result<Tensor> {
        conv2d(input, &self.spec, &self.weight, self.bias.as_ref())
    }
}

/// Inference-mode batch normalization parameters and running statistics.
#[derive(Clone, Debug, PartialEq)]
pub struct BatchNorm {
    pub gamma: Vec<f32>,
    pub beta: Vec<f32>,
    pub mean: Vec<f32>,
    pub var: Vec<f32>,
    pub eps: f32,
}

impl BatchNorm {
    /// `gamma = 1, beta = 0, mean = 0, var = 1`.
    pub fn identity(channels: usize) -> Self {
        Self {
            gamma: vec![1.0; channels],
            beta: vec![0.0; channels],
            mean: vec![0.0; channels],
            var: vec![1.0; channels],
            eps: 1e-5,
        }
    }

    pub fn channels(&self) -> usize {
        self.gamma.len()
    }

    pub fn forward(&self, input: &Tensor) -> Result<Tensor> {
        batch_norm_infer(input, &self.mean, &self.var, &self.gamma, &self.beta, self.eps)
    }
}

pub fn batch_norm_infer(
    input: &Tensor,
    mean: &[f32],
    var: &[f32],
    gamma: &[f32],
    beta: &[f32],
    eps: f32,
) -> Result<Tensor> {
    const OP: &str = "batch_norm_infer";
    let (c, h, w) = input.dims3(OP)?;
    for (name, v) in [("mean", mean), ("var", var), ("gamma", gamma), ("beta", beta)] {
        if v.len() != c {
            return Err(Error::shape(OP, format!("{name} length"), c, v.len()));
        }
    }
    if !(eps >= 0.0) {
        return Err(Error::invalid(OP, format!("eps must be non-negative, got {eps}")));
    }
    if let Some(ch) = var.iter().position(|&v| v < 0.0) {
        return Err(Error::invalid(OP, format!("negative variance {} at channel {ch}", var[ch])));
    }
    if let Some(ch) = var.iter().position(|&v| v as f64 + eps as f64 == 0.0) {
        return Err(Error::invalid(OP, format!("var + eps is zero at channel {ch}")));
    }
    let plane = h * w;
    let mut out = Vec::with_capacity(input.numel());
    for ch in 0..c {
        let inv = 1.0 / (var[ch] as f64 + eps as f64).sqrt();
        let (m, g, b) = (mean[ch] as f64, gamma[ch] as f64, beta[ch] as f64);
        out.extend(
            input.data()[ch * plane..][..plane]
                .iter()
                .map(|&x| (g * (x as f64 - m) * inv + b) as f32),
        );
    }
    Tensor::new(input.shape(), out)
}

/// Per-position layer normalization over the channel axis.
#[derive(Clone, Debug, PartialEq)]
pub struct LayerNorm {
    pub gamma: Vec<f32>,
    pub beta: Vec<f32>,
    pub eps: f32,
}

impl LayerNorm {
    pub fn identity(channels: usize) -> Self {
        Self {
            gamma: vec![1.0; channels],
            beta: vec![0.0; channels],
            eps: 1e-5,
        }
    }

    pub fn forward(&self, input: &Tensor) -> Result<Tensor> {
        layer_norm(input, &self.gamma, &self.beta, self.eps)
    }
}

pub fn layer_norm(input: &Tensor, gamma: &[f32], beta: &[f32], eps: f32) -> Result<Tensor> {
    const OP: &str = "layer_norm";
    let (c, h, w) = input.dims3(OP)?;
    if gamma.len() != c {
        return Err(Error::shape(OP, "gamma length", c, gamma.len()));
    }
    if beta.len() != c {
        return Err(Error::shape(OP, "beta length", c, beta.len()));
    }
    let plane = h * w;
    let x = input.data();
    let mut out = vec![0.0f32; x.len()];
    for p in 0..plane {
        let mut sum = 0.0f64;
        for ch in 0..c {
            sum += x[ch * plane + p] as f64;
        }
        let mean = sum / c as f64;
        let mut sq = 0.0f64;
        for ch in 0..c {
            let d = x[ch * plane + p] as f64 - mean;
            sq += d * d;
        }
        let inv = 1.0 / (sq / c as f64 + eps as f64).sqrt();
        for ch in 0..c {
            let norm = (x[ch * plane + p] as f64 - mean) * inv;
            out[ch * plane + p] = (norm * gamma[ch] as f64 + beta[ch] as f64) as f32;
        }
    }
    Tensor::new(input.shape(), out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ActivationKind {
    Silu,
    /// `0.5·x·(1 + tanh(√(2/π)·(x + 0.044715·x³)))`, evaluated in `f64`.
    Gelu,
    Identity,
}

pub fn silu(x: f32) -> f32 {
    let x = x as f64;
    (x / (1.0 + (-x).exp())) as f32
}

pub fn gelu(x: f32) -> f32 {
    const SQRT_2_OVER_PI: f64 = 0.797_884_560_802_865_4;
    let x = x as f64;
    (0.5 * x * (1.0 + (SQRT_2_OVER_PI * (x + 0.044715 * x * x * x)).tanh())) as f32
}

pub fn activate(input: &Tensor, kind: ActivationKind) -> Tensor {
    match kind {
        ActivationKind::Silu => input.map(silu),
        ActivationKind::Gelu => input.map(gelu),
        ActivationKind::Identity => input.clone(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ElementwiseOp {
    Add,
    Mul,
}

pub fn elementwise(a: &Tensor, b: &Tensor, op: ElementwiseOp) -> Result<Tensor> {
    const OP: &str = "elementwise";
    if a.rank() != b.rank() {
        return Err(Error::shape(OP, "rank", a.rank(), b.rank()));
    }
    if let Some(axis) = (0..a.rank()).find(|&i| a.shape()[i] != b.shape()[i]) {
        return Err(Error::shape(OP, format!("axis {axis}"), a.shape()[axis], b.shape()[axis]));
    }
    let data = a
        .data()
        .iter()
        .zip(b.data())
        .map(|(&x, &y)| match op {
            ElementwiseOp::Add => x + y,
            ElementwiseOp::Mul => x * y,
        })
        .collect();
    Tensor::new(a.shape(), data)
}
