//! Four-stage backbone (stem, ODSS stages, clue merges) and the PAN-FPN neck.
//!
//! Stage ids on [`FeatureMap`] are pyramid levels: a map at stride `2^k`
//! carries `stage_id = k`, so the stem and stage 1 are level 2 and P3/P4/P5
//! are levels 3/4/5.

use rayon::prelude::*;

use crate::blocks::{odss_block_with, ConvBnAct, FeatureMap, ForwardOptions, OdssWeights};
use crate::config::ModelConfig;
use crate::error::{Error, Result};
use crate::init::{join, Initializer, Parameters};
use crate::tensor::{ConvLayer, ConvSpec, Tensor};

/// Input height and width must be multiples of this.
pub const INPUT_MULTIPLE: usize = 32;

#[derive(Clone, Debug, PartialEq)]
pub struct PyramidFeatures {
    pub p3: FeatureMap,
    pub p4: FeatureMap,
    pub p5: FeatureMap,
}

impl PyramidFeatures {
    pub fn levels(&self) -> [(&'static str, &FeatureMap); 3] {
        [("p3", &self.p3), ("p4", &self.p4), ("p5", &self.p5)]
    }
}

/// Every intermediate the backbone produces; `stages[1..]` are P3, P4, P5.
#[derive(Clone, Debug)]
pub struct BackboneOutput {
    pub stem: FeatureMap,
    pub stages: [FeatureMap; 4],
}

impl BackboneOutput {
    pub fn pyramid(&self) -> PyramidFeatures {
        PyramidFeatures {
            p3: self.stages[1].clone(),
            p4: self.stages[2].clone(),
            p5: self.stages[3].clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BackboneWeights {
    pub stem: [ConvBnAct; 2],
    pub stages: Vec<Vec<OdssWeights>>,
    /// Clue merges between consecutive stages: `4·C_i → C_{i+1}`.
    pub merges: Vec<ConvLayer>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct NeckWeights {
    pub td4: Vec<OdssWeights>,
    pub td3: Vec<OdssWeights>,
    pub down3: ConvBnAct,
    pub bu4: Vec<OdssWeights>,
    pub down4: ConvBnAct,
    pub bu5: Vec<OdssWeights>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ModelWeights {
    pub backbone: BackboneWeights,
    pub neck: NeckWeights,
}

pub fn stem_specs(cfg: &ModelConfig) -> [ConvSpec; 2] {
    let half = cfg.stem_channels / 2;
    [
        ConvSpec::same(3, half, 3).with_stride(2),
        ConvSpec::same(half, cfg.stem_channels, 3).with_stride(2),
    ]
}

/// Input width of stage `i`: the stem for stage 0, the clue merge otherwise.
pub fn stage_input_channels(cfg: &ModelConfig, i: usize) -> usize {
    if i == 0 {
        cfg.stem_channels
    } else {
        cfg.stages[i].channels
    }
}

pub fn merge_spec(cfg: &ModelConfig, i: usize) -> ConvSpec {
    ConvSpec::pointwise(4 * cfg.stages[i].channels, cfg.stages[i + 1].channels).with_bias(true)
}

/// `(in, out)` widths of each neck fusion, in the order td4, td3, bu4, bu5.
pub fn neck_fusions(cfg: &ModelConfig) -> [(&'static str, usize, usize); 4] {
    let [b3, b4, b5] = [cfg.stages[1].channels, cfg.stages[2].channels, cfg.stages[3].channels];
    let [n3, n4, n5] = cfg.neck_channels;
    [
        ("td4", b5 + b4, n4),
        ("td3", n4 + b3, n3),
        ("bu4", n3 + n4, n4),
        ("bu5", n4 + b5, n5),
    ]
}

pub fn neck_down_specs(cfg: &ModelConfig) -> [ConvSpec; 2] {
    let [n3, n4, _] = cfg.neck_channels;
    [
        ConvSpec::same(n3, n3, 3).with_stride(2),
        ConvSpec::same(n4, n4, 3).with_stride(2),
    ]
}

fn odss_chain(init: &Initializer, cfg: &ModelConfig, path: &str, cin: usize, c: usize, depth: usize) -> Vec<OdssWeights> {
    (0..depth)
        .map(|j| {
            let input = if j == 0 { cin } else { c };
            OdssWeights::init(init, &join(path, &j.to_string()), cfg.odss_dims(input, c))
        })
        .collect()
}

pub fn init_weights(cfg: &ModelConfig) -> Result<ModelWeights> {
    cfg.validate()?;
    let init = Initializer::new(cfg.seed);
    let [s0, s1] = stem_specs(cfg);
    let backbone = BackboneWeights {
        stem: [
            ConvBnAct::init(&init, "backbone.stem.0", s0),
            ConvBnAct::init(&init, "backbone.stem.1", s1),
        ],
        stages: (0..4)
            .map(|i| {
                let path = format!("backbone.stage{}", i + 1);
                let st = cfg.stages[i];
                odss_chain(&init, cfg, &path, stage_input_channels(cfg, i), st.channels, st.depth)
            })
            .collect(),
        merges: (0..3)
            .map(|i| init.conv(&format!("backbone.merge{}", i + 1), merge_spec(cfg, i)))
            .collect(),
    };
    let [td4, td3, bu4, bu5] = neck_fusions(cfg)
        .map(|(name, cin, c)| odss_chain(&init, cfg, &format!("neck.{name}"), cin, c, cfg.neck_depth));
    let [d3, d4] = neck_down_specs(cfg);
    let neck = NeckWeights {
        td4,
        td3,
        down3: ConvBnAct::init(&init, "neck.down3", d3),
        bu4,
        down4: ConvBnAct::init(&init, "neck.down4", d4),
        bu5,
    };
    Ok(ModelWeights { backbone, neck })
}

fn visit_chain(chain: &[OdssWeights], prefix: &str, f: &mut dyn FnMut(&str, &[f32])) {
    for (j, w) in chain.iter().enumerate() {
        w.visit_params(&join(prefix, &j.to_string()), f);
    }
}

impl Parameters for BackboneWeights {
    fn visit_params(&self, prefix: &str, f: &mut dyn FnMut(&str, &[f32])) {
        for (i, s) in self.stem.iter().enumerate() {
            s.visit_params(&join(prefix, &format!("stem.{i}")), f);
        }
        for (i, chain) in self.stages.iter().enumerate() {
            visit_chain(chain, &join(prefix, &format!("stage{}", i + 1)), f);
            if let Some(m) = self.merges.get(i) {
                m.visit_params(&join(prefix, &format!("merge{}", i + 1)), f);
            }
        }
    }
}

impl Parameters for NeckWeights {
    fn visit_params(&self, prefix: &str, f: &mut dyn FnMut(&str, &[f32])) {
        visit_chain(&self.td4, &join(prefix, "td4"), f);
        visit_chain(&self.td3, &join(prefix, "td3"), f);
        self.down3.visit_params(&join(prefix, "down3"), f);
        visit_chain(&self.bu4, &join(prefix, "bu4"), f);
        self.down4.visit_params(&join(prefix, "down4"), f);
        visit_chain(&self.bu5, &join(prefix, "bu5"), f);
    }
}

impl Parameters for ModelWeights {
    fn visit_params(&self, prefix: &str, f: &mut dyn FnMut(&str, &[f32])) {
        self.backbone.visit_params(&join(prefix, "backbone"), f);
        self.neck.visit_params(&join(prefix, "neck"), f);
    }
}

pub fn check_input_dims(op: &'static str, h: usize, w: usize) -> Result<()> {
    if h == 0 || w == 0 || h % INPUT_MULTIPLE != 0 || w % INPUT_MULTIPLE != 0 {
        let m = INPUT_MULTIPLE;
        let (ph, pw) = (h.div_ceil(m).max(1) * m, w.div_ceil(m).max(1) * m);
        return Err(Error::invalid(
            op,
            format!(
                "input {h}×{w} is not a multiple of {m}; pad bottom by {} and right by {} to {ph}×{pw}",
                ph - h,
                pw - w
            ),
        ));
    }
    Ok(())
}

pub fn simple_stem(img: &Tensor, stem: &[ConvBnAct; 2]) -> Result<FeatureMap> {
    let (c, h, w) = img.dims3("simple_stem")?;
    if c != 3 {
        return Err(Error::shape("simple_stem", "image channels", 3, c));
    }
    check_input_dims("simple_stem", h, w)?;
    let x = stem[1].forward(&stem[0].forward(img)?)?;
    Ok(FeatureMap::new(x, 2))
}

/// Stacks the four stride-2 phases on channels: phase `p` in order
/// (even,even), (even,odd), (odd,even), (odd,odd) occupies channels `p·C..(p+1)·C`.
pub fn clue_phases(x: &Tensor) -> Result<Tensor> {
    let (c, h, w) = x.dims3("vision_clue_merge")?;
    if h % 2 != 0 {
        return Err(Error::invalid("vision_clue_merge", format!("height {h} is odd")));
    }
    if w % 2 != 0 {
        return Err(Error::invalid("vision_clue_merge", format!("width {w} is odd")));
    }
    let (oh, ow) = (h / 2, w / 2);
    let src = x.data();
    let mut data = Vec::with_capacity(4 * c * oh * ow);
    for (dy, dx) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
        for ch in 0..c {
            for y in 0..oh {
                let row = &src[(ch * h + 2 * y + dy) * w..][..w];
                data.extend((0..ow).map(|x| row[2 * x + dx]));
            }
        }
    }
    Tensor::new(&[4 * c, oh, ow], data)
}

pub fn vision_clue_merge(f: &FeatureMap, merge: &ConvLayer) -> Result<FeatureMap> {
    let stacked = clue_phases(&f.tensor)?;
    Ok(FeatureMap::new(merge.forward(&stacked)?, f.stage_id + 1))
}

fn run_chain(x: FeatureMap, chain: &[OdssWeights], opts: &mut ForwardOptions, path: &str) -> Result<FeatureMap> {
    let mut x = x;
    for (j, w) in chain.iter().enumerate() {
        x = odss_block_with(&x, w, opts, &join(path, &j.to_string()))?;
    }
    Ok(x)
}

pub fn backbone_stages(img: &Tensor, w: &BackboneWeights, opts: &mut ForwardOptions) -> Result<BackboneOutput> {
    let stem = simple_stem(img, &w.stem)?;
    opts.record("backbone.stem", &stem.tensor);
    let mut outs: Vec<FeatureMap> = Vec::with_capacity(4);
    let mut x = stem.clone();
    for (i, chain) in w.stages.iter().enumerate() {
        if i > 0 {
            x = vision_clue_merge(&x, &w.merges[i - 1])?;
        }
        let path = format!("backbone.stage{}", i + 1);
        x = run_chain(x, chain, opts, &path)?;
        opts.record(&path, &x.tensor);
        outs.push(x.clone());
    }
    let stages: [FeatureMap; 4] = outs
        .try_into()
        .map_err(|_| Error::invalid("backbone_forward", "weights must hold 4 stages"))?;
    Ok(BackboneOutput { stem, stages })
}

pub fn backbone_forward(img: &Tensor, w: &BackboneWeights, opts: &mut ForwardOptions) -> Result<PyramidFeatures> {
    Ok(backbone_stages(img, w, opts)?.pyramid())
}

fn concat(a: &Tensor, b: &Tensor, stage: usize) -> Result<FeatureMap> {
    Ok(FeatureMap::new(Tensor::concat_channels(&[a, b])?, stage))
}

/// Top-down: `N4 = ODSS(up(P5) ‖ P4)`, `P3' = ODSS(up(N4) ‖ P3)`.
/// Bottom-up: `P4' = ODSS(down(P3') ‖ N4)`, `P5' = ODSS(down(P4') ‖ P5)`.
pub fn neck_forward(pyr: &PyramidFeatures, w: &NeckWeights, opts: &mut ForwardOptions) -> Result<PyramidFeatures> {
    let PyramidFeatures { p3, p4, p5 } = pyr;
    let n4 = run_chain(concat(&p5.tensor.upsample_nearest2x()?, &p4.tensor, p4.stage_id)?, &w.td4, opts, "neck.td4")?;
    let o3 = run_chain(concat(&n4.tensor.upsample_nearest2x()?, &p3.tensor, p3.stage_id)?, &w.td3, opts, "neck.td3")?;
    let o4 = run_chain(concat(&w.down3.forward(&o3.tensor)?, &n4.tensor, p4.stage_id)?, &w.bu4, opts, "neck.bu4")?;
    let o5 = run_chain(concat(&w.down4.forward(&o4.tensor)?, &p5.tensor, p5.stage_id)?, &w.bu5, opts, "neck.bu5")?;
    Ok(PyramidFeatures { p3: o3, p4: o4, p5: o5 })
}

/// Backbone followed by neck.
pub fn model_forward(img: &Tensor, w: &ModelWeights, opts: &mut ForwardOptions) -> Result<(BackboneOutput, PyramidFeatures)> {
    let bb = backbone_stages(img, &w.backbone, opts)?;
    let refined = neck_forward(&bb.pyramid(), &w.neck, opts)?;
    Ok((bb, refined))
}

/// Independent images through shared weights, in parallel.
pub fn model_forward_batch(imgs: &[Tensor], w: &ModelWeights) -> Result<Vec<PyramidFeatures>> {
    imgs.par_iter()
        .map(|img| Ok(model_forward(img, w, &mut ForwardOptions::default())?.1))
        .collect()
}
