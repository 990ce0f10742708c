//! Composite blocks: LocalSpatial, ResGated, the ODSS block that chains them
//! around SS2D, and the MLP variants used to compare against ResGated.

use crate::error::{Error, Result};
use crate::init::{join, Initializer, Parameters};
use crate::ss2d::{ss2d_apply_with, ScanMode, Ss2dDims, Ss2dWeights};
use crate::tensor::{
    activate, elementwise, ActivationKind, BatchNorm, ConvLayer, ConvSpec, ElementwiseOp, LayerNorm, Tensor,
};

/// A `C×H×W` tensor tagged with the pyramid stage that produced it.
#[derive(Clone, Debug, PartialEq)]
pub struct FeatureMap {
    pub tensor: Tensor,
    pub stage_id: usize,
}

impl FeatureMap {
    pub fn new(tensor: Tensor, stage_id: usize) -> Self {
        Self { tensor, stage_id }
    }

    pub fn channels(&self) -> usize {
        self.tensor.shape()[0]
    }

    pub fn height(&self) -> usize {
        self.tensor.shape()[1]
    }

    pub fn width(&self) -> usize {
        self.tensor.shape()[2]
    }

    fn check_channels(&self, op: &'static str, expected: usize) -> Result<()> {
        let (c, _, _) = self.tensor.dims3(op)?;
        if c != expected {
            return Err(Error::shape(op, "input channels", expected, c));
        }
        Ok(())
    }
}

/// Knobs shared by every forward pass. `trace`, when present, collects the
/// output of each SS2D branch under its parameter path.
#[derive(Debug, Default)]
pub struct ForwardOptions {
    pub scan_mode: ScanMode,
    pub trace: Option<Vec<(String, Tensor)>>,
}

impl ForwardOptions {
    pub fn traced() -> Self {
        Self {
            trace: Some(Vec::new()),
            ..Self::default()
        }
    }

    pub fn record(&mut self, path: &str, t: &Tensor) {
        if let Some(trace) = &mut self.trace {
            trace.push((path.to_string(), t.clone()));
        }
    }
}

fn add(a: &Tensor, b: &Tensor) -> Result<Tensor> {
    elementwise(a, b, ElementwiseOp::Add)
}

/// Convolution, inference batch norm, activation.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvBnAct {
    pub conv: ConvLayer,
    pub bn: BatchNorm,
    pub act: ActivationKind,
}

impl ConvBnAct {
    pub fn init(init: &Initializer, path: &str, spec: ConvSpec) -> Self {
        Self {
            conv: init.conv(&join(path, "conv"), spec),
            bn: BatchNorm::identity(spec.out_channels),
            act: ActivationKind::Silu,
        }
    }

    pub fn forward(&self, x: &Tensor) -> Result<Tensor> {
        Ok(activate(&self.bn.forward(&self.conv.forward(x)?)?, self.act))
    }
}

impl Parameters for ConvBnAct {
    fn visit_params(&self, prefix: &str, f: &mut dyn FnMut(&str, &[f32])) {
        self.conv.visit_params(&join(prefix, "conv"), f);
        self.bn.visit_params(&join(prefix, "bn"), f);
    }
}

/// `out = fc2(GELU(fc1(BN(DWConv3×3(F))))) ⊕ F`.
#[derive(Clone, Debug, PartialEq)]
pub struct LsWeights {
    pub dw: ConvLayer,
    pub bn: BatchNorm,
    pub fc1: ConvLayer,
    pub fc2: ConvLayer,
}

impl LsWeights {
    pub fn specs(channels: usize, ratio: usize) -> [ConvSpec; 3] {
        let hidden = channels * ratio;
        [
            ConvSpec::depthwise(channels, 3),
            ConvSpec::pointwise(channels, hidden).with_bias(true),
            ConvSpec::pointwise(hidden, channels).with_bias(true),
        ]
    }

    pub fn init(init: &Initializer, path: &str, channels: usize, ratio: usize) -> Self {
        let [dw, fc1, fc2] = Self::specs(channels, ratio);
        Self {
            dw: init.conv(&join(path, "dw"), dw),
            bn: BatchNorm::identity(channels),
            fc1: init.conv(&join(path, "fc1"), fc1),
            fc2: init.conv(&join(path, "fc2"), fc2),
        }
    }

    pub fn zeros(channels: usize, ratio: usize) -> Self {
        let [dw, fc1, fc2] = Self::specs(channels, ratio);
        Self {
            dw: ConvLayer::zeros(dw),
            bn: BatchNorm::identity(channels),
            fc1: ConvLayer::zeros(fc1),
            fc2: ConvLayer::zeros(fc2),
        }
    }

    pub fn channels(&self) -> usize {
        self.dw.spec.in_channels
    }
}

impl Parameters for LsWeights {
    fn visit_params(&self, prefix: &str, f: &mut dyn FnMut(&str, &[f32])) {
        self.dw.visit_params(&join(prefix, "dw"), f);
        self.bn.visit_params(&join(prefix, "bn"), f);
        self.fc1.visit_params(&join(prefix, "fc1"), f);
        self.fc2.visit_params(&join(prefix, "fc2"), f);
    }
}

pub fn ls_block(f: &FeatureMap, w: &LsWeights) -> Result<FeatureMap> {
    f.check_channels("ls_block", w.channels())?;
    let local = w.bn.forward(&w.dw.forward(&f.tensor)?)?;
    let mixed = w.fc2.forward(&activate(&w.fc1.forward(&local)?, ActivationKind::Gelu))?;
    Ok(FeatureMap::new(add(&mixed, &f.tensor)?, f.stage_id))
}

/// `X₁ = fc1a(X)`, `X₂ = fc1b(X)`, `out = fc2(X₁ ⊙ GELU(DWConv3×3(X₂) ⊕ X₂)) ⊕ X`.
#[derive(Clone, Debug, PartialEq)]
pub struct RgWeights {
    pub fc1a: ConvLayer,
    pub fc1b: ConvLayer,
    pub dw: ConvLayer,
    pub fc2: ConvLayer,
}

impl RgWeights {
    pub fn specs(channels: usize, ratio: usize) -> [ConvSpec; 4] {
        let hidden = channels * ratio;
        [
            ConvSpec::pointwise(channels, hidden).with_bias(true),
            ConvSpec::pointwise(channels, hidden).with_bias(true),
            ConvSpec::depthwise(hidden, 3).with_bias(true),
            ConvSpec::pointwise(hidden, channels).with_bias(true),
        ]
    }

    pub fn init(init: &Initializer, path: &str, channels: usize, ratio: usize) -> Self {
        let [a, b, dw, fc2] = Self::specs(channels, ratio);
        Self {
            fc1a: init.conv(&join(path, "fc1a"), a),
            fc1b: init.conv(&join(path, "fc1b"), b),
            dw: init.conv(&join(path, "dw"), dw),
            fc2: init.conv(&join(path, "fc2"), fc2),
        }
    }

    pub fn zeros(channels: usize, ratio: usize) -> Self {
        let [a, b, dw, fc2] = Self::specs(channels, ratio);
        Self {
            fc1a: ConvLayer::zeros(a),
            fc1b: ConvLayer::zeros(b),
            dw: ConvLayer::zeros(dw),
            fc2: ConvLayer::zeros(fc2),
        }
    }

    pub fn channels(&self) -> usize {
        self.fc1a.spec.in_channels
    }
}

impl Parameters for RgWeights {
    fn visit_params(&self, prefix: &str, f: &mut dyn FnMut(&str, &[f32])) {
        self.fc1a.visit_params(&join(prefix, "fc1a"), f);
        self.fc1b.visit_params(&join(prefix, "fc1b"), f);
        self.dw.visit_params(&join(prefix, "dw"), f);
        self.fc2.visit_params(&join(prefix, "fc2"), f);
    }
}

fn gated_dw_branch(
    x: &Tensor,
    fc1a: &ConvLayer,
    fc1b: &ConvLayer,
    dw: &ConvLayer,
    fc2: &ConvLayer,
    act: ActivationKind,
) -> Result<Tensor> {
    let x1 = fc1a.forward(x)?;
    let x2 = fc1b.forward(x)?;
    let gate = activate(&add(&dw.forward(&x2)?, &x2)?, act);
    fc2.forward(&elementwise(&x1, &gate, ElementwiseOp::Mul)?)
}

/// The ResGated transform without its outer skip: `fc2(X₁ ⊙ GELU(DW(X₂) ⊕ X₂))`.
pub fn rg_branch(x: &FeatureMap, w: &RgWeights) -> Result<Tensor> {
    x.check_channels("rg_block", w.channels())?;
    gated_dw_branch(&x.tensor, &w.fc1a, &w.fc1b, &w.dw, &w.fc2, ActivationKind::Gelu)
}

pub fn rg_block(x: &FeatureMap, w: &RgWeights) -> Result<FeatureMap> {
    let out = add(&rg_branch(x, w)?, &x.tensor)?;
    Ok(FeatureMap::new(out, x.stage_id))
}

/// Channel-MLP designs compared against the ResGated block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MlpVariant {
    /// `fc2(act(fc1(x)))`
    Original,
    /// `fc2(act(DW(fc1(x))))`
    Convolutional,
    /// `fc2(act([DW(h), h]))` with `h = fc1(x)`: the depthwise output is
    /// concatenated with its input, so `fc2` reads `2·hidden` channels.
    ResConvolutional,
    /// `fc2(fc1(x) ⊙ act(fc1_gate(x))) ⊕ x`
    Gated,
    /// Identical graph to [`rg_block`].
    RgBlock,
}

impl MlpVariant {
    pub const ALL: [MlpVariant; 5] = [
        MlpVariant::Original,
        MlpVariant::Convolutional,
        MlpVariant::ResConvolutional,
        MlpVariant::Gated,
        MlpVariant::RgBlock,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MlpVariant::Original => "original",
            MlpVariant::Convolutional => "convolutional",
            MlpVariant::ResConvolutional => "res-convolutional",
            MlpVariant::Gated => "gated",
            MlpVariant::RgBlock => "rg-block",
        }
    }

    pub fn needs_gate(self) -> bool {
        matches!(self, MlpVariant::Gated | MlpVariant::RgBlock)
    }

    pub fn needs_dw(self) -> bool {
        !matches!(self, MlpVariant::Original | MlpVariant::Gated)
    }

    /// `(fc1, gate, dw, fc2)` layer geometry at the given width.
    pub fn specs(self, channels: usize, hidden: usize) -> (ConvSpec, Option<ConvSpec>, Option<ConvSpec>, ConvSpec) {
        let fc1 = ConvSpec::pointwise(channels, hidden).with_bias(true);
        let gate = self.needs_gate().then_some(fc1);
        let dw = self.needs_dw().then(|| ConvSpec::depthwise(hidden, 3).with_bias(true));
        let fc2_in = if self == MlpVariant::ResConvolutional { 2 * hidden } else { hidden };
        (fc1, gate, dw, ConvSpec::pointwise(fc2_in, channels).with_bias(true))
    }
}

impl std::str::FromStr for MlpVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MlpVariant::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| Error::invalid("MlpVariant", format!("unknown variant {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MlpWeights {
    pub fc1: ConvLayer,
    pub gate: Option<ConvLayer>,
    pub dw: Option<ConvLayer>,
    pub fc2: ConvLayer,
    pub act: ActivationKind,
}

impl MlpWeights {
    pub fn init(init: &Initializer, path: &str, variant: MlpVariant, channels: usize, hidden: usize) -> Self {
        let (fc1, gate, dw, fc2) = variant.specs(channels, hidden);
        Self {
            fc1: init.conv(&join(path, "fc1"), fc1),
            gate: gate.map(|s| init.conv(&join(path, "gate"), s)),
            dw: dw.map(|s| init.conv(&join(path, "dw"), s)),
            fc2: init.conv(&join(path, "fc2"), fc2),
            act: ActivationKind::Gelu,
        }
    }
}

impl From<&RgWeights> for MlpWeights {
    fn from(w: &RgWeights) -> Self {
        Self {
            fc1: w.fc1a.clone(),
            gate: Some(w.fc1b.clone()),
            dw: Some(w.dw.clone()),
            fc2: w.fc2.clone(),
            act: ActivationKind::Gelu,
        }
    }
}

impl Parameters for MlpWeights {
    fn visit_params(&self, prefix: &str, f: &mut dyn FnMut(&str, &[f32])) {
        self.fc1.visit_params(&join(prefix, "fc1"), f);
        if let Some(g) = &self.gate {
            g.visit_params(&join(prefix, "gate"), f);
        }
        if let Some(dw) = &self.dw {
            dw.visit_params(&join(prefix, "dw"), f);
        }
        self.fc2.visit_params(&join(prefix, "fc2"), f);
    }
}

pub fn mlp_variant_forward(x: &FeatureMap, variant: MlpVariant, w: &MlpWeights) -> Result<FeatureMap> {
    const OP: &str = "mlp_variant_forward";
    x.check_channels(OP, w.fc1.spec.in_channels)?;
    let missing = |part: &str| Error::invalid(OP, format!("variant {} needs a {part} layer", variant.name()));
    let dw = || w.dw.as_ref().ok_or_else(|| missing("depthwise"));
    let gate = || w.gate.as_ref().ok_or_else(|| missing("gate"));
    let t = &x.tensor;
    let out = match variant {
        MlpVariant::Original => w.fc2.forward(&activate(&w.fc1.forward(t)?, w.act))?,
        MlpVariant::Convolutional => {
            let h = dw()?.forward(&w.fc1.forward(t)?)?;
            w.fc2.forward(&activate(&h, w.act))?
        }
        MlpVariant::ResConvolutional => {
            let h = w.fc1.forward(t)?;
            let cat = Tensor::concat_channels(&[&dw()?.forward(&h)?, &h])?;
            w.fc2.forward(&activate(&cat, w.act))?
        }
        MlpVariant::Gated => {
            let g = activate(&gate()?.forward(t)?, w.act);
            let y = w.fc2.forward(&elementwise(&w.fc1.forward(t)?, &g, ElementwiseOp::Mul)?)?;
            add(&y, t)?
        }
        MlpVariant::RgBlock => add(&gated_dw_branch(t, &w.fc1, gate()?, dw()?, &w.fc2, w.act)?, t)?,
    };
    Ok(FeatureMap::new(out, x.stage_id))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OdssDims {
    pub in_channels: usize,
    pub channels: usize,
    pub d_state: usize,
    pub ssm_ratio: usize,
    pub dt_rank: usize,
    pub ls_ratio: usize,
    pub rg_ratio: usize,
}

impl OdssDims {
    pub fn ss2d(&self) -> Ss2dDims {
        Ss2dDims {
            channels: self.channels,
            d_inner: self.channels * self.ssm_ratio,
            d_state: self.d_state,
            dt_rank: self.dt_rank,
        }
    }

    pub fn input_spec(&self) -> ConvSpec {
        ConvSpec::pointwise(self.in_channels, self.channels)
    }
}

/// `Z'' = SiLU(BN(Conv1×1(Z)))`, `Z' = SS2D(LN(LS(Z''))) ⊕ Z''`, `out = RG(LN(Z')) ⊕ Z'`.
///
/// The ResGated skip connection is the `⊕ Z'` itself: inside the block only
/// [`rg_branch`] is evaluated, so zeroed SS2D and RG weights leave `out = Z''`.
#[derive(Clone, Debug, PartialEq)]
pub struct OdssWeights {
    pub dims: OdssDims,
    pub input: ConvBnAct,
    pub ls: LsWeights,
    pub norm1: LayerNorm,
    pub ss2d: Ss2dWeights,
    pub norm2: LayerNorm,
    pub rg: RgWeights,
}

impl OdssWeights {
    pub fn init(init: &Initializer, path: &str, dims: OdssDims) -> Self {
        let c = dims.channels;
        Self {
            dims,
            input: ConvBnAct::init(init, &join(path, "input"), dims.input_spec()),
            ls: LsWeights::init(init, &join(path, "ls"), c, dims.ls_ratio),
            norm1: LayerNorm::identity(c),
            ss2d: Ss2dWeights::init(init, &join(path, "ss2d"), dims.ss2d()),
            norm2: LayerNorm::identity(c),
            rg: RgWeights::init(init, &join(path, "rg"), c, dims.rg_ratio),
        }
    }
}

impl Parameters for OdssWeights {
    fn visit_params(&self, prefix: &str, f: &mut dyn FnMut(&str, &[f32])) {
        self.input.visit_params(&join(prefix, "input"), f);
        self.ls.visit_params(&join(prefix, "ls"), f);
        self.norm1.visit_params(&join(prefix, "norm1"), f);
        self.ss2d.visit_params(&join(prefix, "ss2d"), f);
        self.norm2.visit_params(&join(prefix, "norm2"), f);
        self.rg.visit_params(&join(prefix, "rg"), f);
    }
}

pub fn odss_block(z: &FeatureMap, w: &OdssWeights) -> Result<FeatureMap> {
    odss_block_with(z, w, &mut ForwardOptions::default(), "odss")
}

pub fn odss_block_with(z: &FeatureMap, w: &OdssWeights, opts: &mut ForwardOptions, path: &str) -> Result<FeatureMap> {
    z.check_channels("odss_block", w.dims.in_channels)?;
    let stage = z.stage_id;
    let z0 = FeatureMap::new(w.input.forward(&z.tensor)?, stage);
    let local = ls_block(&z0, &w.ls)?;
    let scanned = ss2d_apply_with(&w.norm1.forward(&local.tensor)?, &w.ss2d, opts.scan_mode)?;
    opts.record(&join(path, "ss2d"), &scanned);
    let z1 = FeatureMap::new(add(&scanned, &z0.tensor)?, stage);
    let gated = rg_branch(&FeatureMap::new(w.norm2.forward(&z1.tensor)?, stage), &w.rg)?;
    Ok(FeatureMap::new(add(&gated, &z1.tensor)?, stage))
}

/// The `Z''` produced by the ODSS input stage alone.
pub fn odss_input_stage(z: &FeatureMap, w: &OdssWeights) -> Result<FeatureMap> {
    z.check_channels("odss_input_stage", w.dims.in_channels)?;
    Ok(FeatureMap::new(w.input.forward(&z.tensor)?, z.stage_id))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fmap(c: usize, h: usize, w: usize, seed: u64) -> FeatureMap {
        let init = Initializer::new(seed);
        FeatureMap::new(init.uniform("x", &[c, h, w], 1.0), 0)
    }

    fn dims(cin: usize, c: usize) -> OdssDims {
        OdssDims { in_channels: cin, channels: c, d_state: 4, ssm_ratio: 2, dt_rank: 1, ls_ratio: 2, rg_ratio: 2 }
    }

    #[test]
    fn ls_zero_input_zero_output() {
        let w = LsWeights::init(&Initializer::new(1), "ls", 4, 2);
        let out = ls_block(&FeatureMap::new(Tensor::zeros(&[4, 3, 3]), 0), &w).unwrap();
        assert!(out.tensor.data().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn blocks_preserve_shape_and_reject_channel_mismatch() {
        let init = Initializer::new(2);
        let ls = LsWeights::init(&init, "ls", 4, 2);
        let rg = RgWeights::init(&init, "rg", 4, 2);
        for &(h, w) in &[(1, 1), (3, 3), (7, 7), (2, 5)] {
            let x = fmap(4, h, w, 9);
            assert_eq!(ls_block(&x, &ls).unwrap().tensor.shape(), x.tensor.shape());
            assert_eq!(rg_block(&x, &rg).unwrap().tensor.shape(), x.tensor.shape());
        }
        let wrong = fmap(3, 2, 2, 9);
        assert!(ls_block(&wrong, &ls).is_err());
        assert!(rg_block(&wrong, &rg).is_err());
    }

    #[test]
    fn rg_zero_input_zero_output() {
        let w = RgWeights::init(&Initializer::new(3), "rg", 4, 2);
        let out = rg_block(&FeatureMap::new(Tensor::zeros(&[4, 2, 2]), 0), &w).unwrap();
        assert!(out.tensor.data().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn rg_without_dw_matches_hand_built_graph() {
        let mut w = RgWeights::init(&Initializer::new(4), "rg", 4, 2);
        w.dw = ConvLayer::zeros(w.dw.spec);
        let x = fmap(4, 3, 3, 5);
        let out = rg_block(&x, &w).unwrap();
        let x1 = w.fc1a.forward(&x.tensor).unwrap();
        let x2 = w.fc1b.forward(&x.tensor).unwrap();
        let prod: Vec<f32> = x1.data().iter().zip(x2.data()).map(|(&a, &b)| a * crate::tensor::gelu(b)).collect();
        let y = w.fc2.forward(&Tensor::new(x1.shape(), prod).unwrap()).unwrap();
        let want: Vec<f32> = y.data().iter().zip(x.tensor.data()).map(|(a, b)| a + b).collect();
        assert!(out.tensor.bit_eq(&Tensor::new(y.shape(), want).unwrap()));
    }

    #[test]
    fn original_with_identity_weights_is_identity() {
        let c = 3;
        let eye = Tensor::from_fn(&[c, c, 1, 1], |i| (i / c == i % c) as u8 as f32);
        let spec = ConvSpec::pointwise(c, c).with_bias(true);
        let layer = ConvLayer::new(spec, eye, Some(Tensor::zeros(&[c]))).unwrap();
        let w = MlpWeights { fc1: layer.clone(), gate: None, dw: None, fc2: layer, act: ActivationKind::Identity };
        let x = fmap(c, 4, 2, 6);
        let out = mlp_variant_forward(&x, MlpVariant::Original, &w).unwrap();
        assert!(out.tensor.bit_eq(&x.tensor));
    }

    #[test]
    fn rg_variant_is_rg_block() {
        let rg = RgWeights::init(&Initializer::new(7), "rg", 4, 2);
        let x = fmap(4, 5, 3, 8);
        let a = rg_block(&x, &rg).unwrap();
        let b = mlp_variant_forward(&x, MlpVariant::RgBlock, &MlpWeights::from(&rg)).unwrap();
        assert!(a.tensor.bit_eq(&b.tensor));
    }

    #[test]
    fn every_variant_preserves_shape_and_checks_parts() {
        let init = Initializer::new(10);
        let x = fmap(4, 3, 2, 11);
        for v in MlpVariant::ALL {
            let w = MlpWeights::init(&init, v.name(), v, 4, 8);
            let out = mlp_variant_forward(&x, v, &w).unwrap();
            assert_eq!(out.tensor.shape(), x.tensor.shape());
            assert_eq!(v.name().parse::<MlpVariant>().unwrap(), v);
        }
        let plain = MlpWeights::init(&init, "o", MlpVariant::Original, 4, 8);
        assert!(mlp_variant_forward(&x, MlpVariant::Gated, &plain).is_err());
        assert!("bogus".parse::<MlpVariant>().is_err());
    }

    #[test]
    fn odss_maps_channels_and_keeps_spatial_dims() {
        let w = OdssWeights::init(&Initializer::new(12), "odss", dims(3, 8));
        for &(h, wd) in &[(1, 1), (4, 4), (3, 6)] {
            let out = odss_block(&fmap(3, h, wd, 13), &w).unwrap();
            assert_eq!(out.tensor.shape(), &[8, h, wd]);
            assert!(out.tensor.is_finite());
        }
    }

    #[test]
    fn odss_with_zero_branches_returns_input_stage() {
        let d = dims(6, 8);
        let mut w = OdssWeights::init(&Initializer::new(14), "odss", d);
        w.ss2d = Ss2dWeights::zeros(d.ss2d());
        w.rg = RgWeights::zeros(8, 2);
        let x = fmap(6, 4, 3, 15);
        let out = odss_block(&x, &w).unwrap();
        assert_eq!(out.tensor, odss_input_stage(&x, &w).unwrap().tensor);
    }

    #[test]
    fn trace_records_ss2d_branch() {
        let w = OdssWeights::init(&Initializer::new(16), "odss", dims(4, 4));
        let mut opts = ForwardOptions::traced();
        odss_block_with(&fmap(4, 2, 2, 17), &w, &mut opts, "blk").unwrap();
        let trace = opts.trace.unwrap();
        assert_eq!(trace.len(), 1);
        assert_eq!(trace[0].0, "blk.ss2d");
        assert_eq!(trace[0].1.shape(), &[4, 2, 2]);
    }
}
