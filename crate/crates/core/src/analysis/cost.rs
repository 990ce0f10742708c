//! Closed-form parameter and multiply-accumulate accounting.
//!
//! Counting walks the architecture from the configuration alone; nothing is
//! allocated. Convolutions and scans make up the MAC totals. Norms,
//! activations, gates and residual adds get their own rows but an
//! [`RowKind::Elementwise`] or [`RowKind::Norm`] kind, so they stay out of
//! `total_macs`. Norm parameters are learnable and do count toward
//! `total_params`. One MAC is two FLOPs.

use std::fmt::Write as _;

use crate::backbone::{merge_spec, neck_down_specs, neck_fusions, stage_input_channels, stem_specs};
use crate::blocks::{LsWeights, MlpVariant, OdssDims, RgWeights};
use crate::config::ModelConfig;
use crate::tensor::ConvSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowKind {
    Conv,
    /// Directional recurrence: `3·L·N·d_inner` MACs per direction
    /// (`Ā⊙h`, `B̄·x`, `c·h`); holds the `a_log` parameters.
    Scan,
    Norm,
    Elementwise,
}

impl RowKind {
    pub fn name(self) -> &'static str {
        match self {
            RowKind::Conv => "conv",
            RowKind::Scan => "scan",
            RowKind::Norm => "norm",
            RowKind::Elementwise => "elementwise",
        }
    }

    pub fn counts_macs(self) -> bool {
        matches!(self, RowKind::Conv | RowKind::Scan)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CostRow {
    pub path: String,
    pub kind: RowKind,
    pub params: u64,
    pub macs: u64,
    pub in_neck: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CostReport {
    pub rows: Vec<CostRow>,
    /// Input `(H, W)` the MACs refer to; `None` for a parameter-only report.
    pub input: Option<(usize, usize)>,
}

impl CostReport {
    pub fn total_params(&self) -> u64 {
        self.rows.iter().map(|r| r.params).sum()
    }

    pub fn total_macs(&self) -> u64 {
        self.rows.iter().filter(|r| r.kind.counts_macs()).map(|r| r.macs).sum()
    }

    pub fn backbone_params(&self) -> u64 {
        self.rows.iter().filter(|r| !r.in_neck).map(|r| r.params).sum()
    }

    pub fn backbone_macs(&self) -> u64 {
        self.rows
            .iter()
            .filter(|r| !r.in_neck && r.kind.counts_macs())
            .map(|r| r.macs)
            .sum()
    }

    /// Rows as tab- or comma-separated text with a header.
    pub fn to_table(&self, sep: char) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "path{sep}kind{sep}params{sep}macs");
        for r in &self.rows {
            let _ = writeln!(s, "{}{sep}{}{sep}{}{sep}{}", r.path, r.kind.name(), r.params, r.macs);
        }
        s
    }
}

/// `C_out·(C_in/groups)·k² (+ C_out)`, computed from the spec fields.
pub fn conv_params(spec: &ConvSpec) -> u64 {
    let k = spec.kernel_size as u64;
    let w = spec.out_channels as u64 * (spec.in_channels / spec.groups) as u64 * k * k;
    w + if spec.has_bias { spec.out_channels as u64 } else { 0 }
}

/// `out_positions·C_out·(C_in/groups)·k²`; bias adds are not counted.
pub fn conv_macs(spec: &ConvSpec, out_h: usize, out_w: usize) -> u64 {
    let k = spec.kernel_size as u64;
    (out_h * out_w) as u64 * spec.out_channels as u64 * (spec.in_channels / spec.groups) as u64 * k * k
}

/// Closed-form parameter count of one MLP variant at `channels → hidden`.
pub fn mlp_variant_params(variant: MlpVariant, channels: usize, hidden: usize) -> u64 {
    let (c, h) = (channels as u64, hidden as u64);
    let fc1 = c * h + h;
    let dw = 9 * h + h;
    let fc2 = |fan_in: u64| fan_in * c + c;
    match variant {
        MlpVariant::Original => fc1 + fc2(h),
        MlpVariant::Convolutional => fc1 + dw + fc2(h),
        MlpVariant::ResConvolutional => fc1 + dw + fc2(2 * h),
        MlpVariant::Gated => 2 * fc1 + fc2(h),
        MlpVariant::RgBlock => 2 * fc1 + dw + fc2(h),
    }
}

struct Walker {
    rows: Vec<CostRow>,
    size: Option<(usize, usize)>,
    in_neck: bool,
}

impl Walker {
    fn push(&mut self, path: String, kind: RowKind, params: u64, macs: u64) {
        let macs = if self.size.is_some() { macs } else { 0 };
        self.rows.push(CostRow { path, kind, params, macs, in_neck: self.in_neck });
    }

    fn positions(&self, h: usize, w: usize) -> u64 {
        (h * w) as u64
    }

    fn conv(&mut self, path: String, spec: ConvSpec, oh: usize, ow: usize) {
        self.push(path, RowKind::Conv, conv_params(&spec), conv_macs(&spec, oh, ow));
    }

    fn norm(&mut self, path: String, c: usize, h: usize, w: usize) {
        self.push(path, RowKind::Norm, 2 * c as u64, 2 * c as u64 * self.positions(h, w));
    }

    fn elementwise(&mut self, path: String, c: usize, h: usize, w: usize) {
        self.push(path, RowKind::Elementwise, 0, c as u64 * self.positions(h, w));
    }

    fn conv_bn_act(&mut self, path: &str, spec: ConvSpec, oh: usize, ow: usize) {
        let c = spec.out_channels;
        self.conv(format!("{path}.conv"), spec, oh, ow);
        self.norm(format!("{path}.bn"), c, oh, ow);
        self.elementwise(format!("{path}.act"), c, oh, ow);
    }

    fn odss(&mut self, path: &str, dims: OdssDims, h: usize, w: usize) {
        let c = dims.channels;
        self.conv_bn_act(&format!("{path}.input"), dims.input_spec(), h, w);

        let [dw, fc1, fc2] = LsWeights::specs(c, dims.ls_ratio);
        self.conv(format!("{path}.ls.dw"), dw, h, w);
        self.norm(format!("{path}.ls.bn"), c, h, w);
        self.conv(format!("{path}.ls.fc1"), fc1, h, w);
        self.elementwise(format!("{path}.ls.act"), fc1.out_channels, h, w);
        self.conv(format!("{path}.ls.fc2"), fc2, h, w);
        self.elementwise(format!("{path}.ls.residual"), c, h, w);

        self.norm(format!("{path}.norm1"), c, h, w);
        let s = dims.ss2d();
        let di = s.d_inner;
        let l = self.positions(h, w);
        self.conv(format!("{path}.ss2d.in_proj"), s.in_proj(), h, w);
        self.conv(format!("{path}.ss2d.conv"), s.conv(), h, w);
        self.elementwise(format!("{path}.ss2d.act"), di, h, w);
        for d in 0..4 {
            let p = format!("{path}.ss2d.dir{d}");
            self.conv(format!("{p}.x_proj"), s.x_proj(), h, w);
            self.conv(format!("{p}.dt_proj"), s.dt_proj(), h, w);
            let (di, n) = (di as u64, s.d_state as u64);
            self.push(format!("{p}.scan"), RowKind::Scan, di * n, 3 * l * n * di);
        }
        self.elementwise(format!("{path}.ss2d.merge"), 3 * di, h, w);
        self.norm(format!("{path}.ss2d.norm"), di, h, w);
        self.elementwise(format!("{path}.ss2d.gate"), 2 * di, h, w);
        self.conv(format!("{path}.ss2d.out_proj"), s.out_proj(), h, w);
        self.elementwise(format!("{path}.residual1"), c, h, w);

        self.norm(format!("{path}.norm2"), c, h, w);
        let [a, b, dw, fc2] = RgWeights::specs(c, dims.rg_ratio);
        let hidden = a.out_channels;
        self.conv(format!("{path}.rg.fc1a"), a, h, w);
        self.conv(format!("{path}.rg.fc1b"), b, h, w);
        self.conv(format!("{path}.rg.dw"), dw, h, w);
        self.elementwise(format!("{path}.rg.gate"), 3 * hidden, h, w);
        self.conv(format!("{path}.rg.fc2"), fc2, h, w);
        self.elementwise(format!("{path}.residual2"), c, h, w);
    }

    fn chain(&mut self, path: &str, cfg: &ModelConfig, cin: usize, c: usize, depth: usize, h: usize, w: usize) {
        for j in 0..depth {
            let input = if j == 0 { cin } else { c };
            self.odss(&format!("{path}.{j}"), cfg.odss_dims(input, c), h, w);
        }
    }
}

fn walk(cfg: &ModelConfig, size: Option<(usize, usize)>) -> CostReport {
    let (h, w) = size.unwrap_or((32, 32));
    let mut wk = Walker { rows: Vec::new(), size, in_neck: false };
    let [s0, s1] = stem_specs(cfg);
    wk.conv_bn_act("backbone.stem.0", s0, h / 2, w / 2);
    wk.conv_bn_act("backbone.stem.1", s1, h / 4, w / 4);
    for i in 0..4 {
        let (sh, sw) = (h >> (i + 2), w >> (i + 2));
        if i > 0 {
            wk.conv(format!("backbone.merge{i}"), merge_spec(cfg, i - 1), sh, sw);
        }
        let st = cfg.stages[i];
        wk.chain(&format!("backbone.stage{}", i + 1), cfg, stage_input_channels(cfg, i), st.channels, st.depth, sh, sw);
    }
    wk.in_neck = true;
    let [td4, td3, bu4, bu5] = neck_fusions(cfg);
    let [d3, d4] = neck_down_specs(cfg);
    let (h3, w3, h4, w4, h5, w5) = (h / 8, w / 8, h / 16, w / 16, h / 32, w / 32);
    let depth = cfg.neck_depth;
    wk.chain("neck.td4", cfg, td4.1, td4.2, depth, h4, w4);
    wk.chain("neck.td3", cfg, td3.1, td3.2, depth, h3, w3);
    wk.conv_bn_act("neck.down3", d3, h4, w4);
    wk.chain("neck.bu4", cfg, bu4.1, bu4.2, depth, h4, w4);
    wk.conv_bn_act("neck.down4", d4, h5, w5);
    wk.chain("neck.bu5", cfg, bu5.1, bu5.2, depth, h5, w5);
    CostReport { rows: wk.rows, input: size }
}

/// Parameter-only report; every `macs` field is zero.
pub fn count_params(cfg: &ModelConfig) -> CostReport {
    walk(cfg, None)
}

/// Parameters and MACs for an `H×W` input (both multiples of 32).
pub fn count_macs(cfg: &ModelConfig, h: usize, w: usize) -> CostReport {
    walk(cfg, Some((h, w)))
}

/// Block-level output shapes `(name, [C, H, W])` for an `H×W` input, from
/// shape arithmetic alone.
pub fn shape_table(cfg: &ModelConfig, h: usize, w: usize) -> Vec<(String, [usize; 3])> {
    let mut rows = vec![
        ("input".to_string(), [3, h, w]),
        ("stem".to_string(), [cfg.stem_channels, h / 4, w / 4]),
    ];
    for (i, st) in cfg.stages.iter().enumerate() {
        let s = 1 << (i + 2);
        if i > 0 {
            rows.push((format!("merge{i}"), [st.channels, h / s, w / s]));
        }
        rows.push((format!("stage{}", i + 1), [st.channels, h / s, w / s]));
    }
    let [n3, n4, n5] = cfg.neck_channels;
    rows.push(("neck.td4".into(), [n4, h / 16, w / 16]));
    rows.push(("neck.p3".into(), [n3, h / 8, w / 8]));
    rows.push(("neck.p4".into(), [n4, h / 16, w / 16]));
    rows.push(("neck.p5".into(), [n5, h / 32, w / 32]));
    rows
}
