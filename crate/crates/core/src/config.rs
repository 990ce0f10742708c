//! Model configuration and its line-based text form.
//!
//! ```text
//! # comments start with '#'
//! variant = T
//! stem_channels = 32
//! d_state = 16
//! neck_channels = 64, 128, 256
//!
//! [stage.1]
//! channels = 32
//! depth = 1
//! ```
//!
//! Top-level keys: `variant`, `seed`, `stem_channels`, `d_state`,
//! `ssm_ratio`, `dt_rank` (an integer or `auto`), `ls_ratio`, `rg_ratio`,
//! `neck_channels` (three comma-separated widths for P3/P4/P5) and
//! `neck_depth`. Sections `[stage.1]` … `[stage.4]` take `channels` and
//! `depth`. Omitted keys keep the value of the `tiny` preset; unknown keys are
//! rejected.

use std::fmt::Write as _;
use std::path::Path;

use crate::blocks::OdssDims;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StageConfig {
    pub channels: usize,
    pub depth: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelConfig {
    pub variant: String,
    pub stem_channels: usize,
    pub stages: Vec<StageConfig>,
    pub d_state: usize,
    pub ssm_ratio: usize,
    /// `None` selects `ceil(C / 16)` per block.
    pub dt_rank: Option<usize>,
    pub ls_ratio: usize,
    pub rg_ratio: usize,
    /// Output widths of the refined P3, P4, P5 maps.
    pub neck_channels: [usize; 3],
    pub neck_depth: usize,
    pub seed: u64,
}

fn stages(spec: [(usize, usize); 4]) -> Vec<StageConfig> {
    spec.iter()
        .map(|&(channels, depth)| StageConfig { channels, depth })
        .collect()
}

impl ModelConfig {
    /// Smallest shipped model, for tests and smoke runs.
    pub fn tiny() -> Self {
        Self {
            variant: "tiny".into(),
            stem_channels: 16,
            stages: stages([(16, 1), (32, 1), (64, 1), (128, 1)]),
            d_state: 4,
            ssm_ratio: 2,
            dt_rank: None,
            ls_ratio: 2,
            rg_ratio: 2,
            neck_channels: [32, 64, 128],
            neck_depth: 1,
            seed: 0,
        }
    }

    /// Approximation of the published T size; per-stage widths are not published.
    pub fn t() -> Self {
        Self {
            variant: "T".into(),
            stem_channels: 32,
            stages: stages([(32, 1), (64, 2), (128, 2), (256, 2)]),
            d_state: 16,
            neck_channels: [64, 128, 256],
            ..Self::tiny()
        }
    }

    /// Approximation of the published B size.
    pub fn b() -> Self {
        Self {
            variant: "B".into(),
            stem_channels: 64,
            stages: stages([(64, 2), (128, 2), (256, 5), (512, 1)]),
            d_state: 16,
            neck_channels: [128, 256, 512],
            ..Self::tiny()
        }
    }

    /// Approximation of the published L size.
    pub fn l() -> Self {
        Self {
            variant: "L".into(),
            stem_channels: 96,
            stages: stages([(96, 2), (192, 2), (384, 4), (768, 2)]),
            d_state: 16,
            neck_channels: [192, 384, 768],
            ..Self::tiny()
        }
    }

    pub fn presets() -> Vec<Self> {
        vec![Self::tiny(), Self::t(), Self::b(), Self::l()]
    }

    pub fn preset(name: &str) -> Option<Self> {
        Self::presets()
            .into_iter()
            .find(|c| c.variant.eq_ignore_ascii_case(name))
    }

    pub fn validate(&self) -> Result<()> {
        const OP: &str = "ModelConfig";
        if self.stages.len() != 4 {
            return Err(Error::invalid(OP, format!("need exactly 4 stages, got {}", self.stages.len())));
        }
        for pair in self.stages.windows(2) {
            if pair[1].channels <= pair[0].channels {
                return Err(Error::invalid(
                    OP,
                    format!("stage channels must strictly increase ({} then {})", pair[0].channels, pair[1].channels),
                ));
            }
        }
        let widths = std::iter::once(("stem_channels", self.stem_channels))
            .chain(self.stages.iter().map(|s| ("stage channels", s.channels)))
            .chain(self.neck_channels.iter().map(|&c| ("neck_channels", c)));
        for (name, c) in widths {
            if c == 0 || c % 4 != 0 {
                return Err(Error::invalid(OP, format!("{name} = {c} is not a positive multiple of 4")));
            }
        }
        if self.stages.iter().any(|s| s.depth == 0) || self.neck_depth == 0 {
            return Err(Error::invalid(OP, "block depths must be at least 1"));
        }
        for (name, v) in [
            ("d_state", self.d_state),
            ("ssm_ratio", self.ssm_ratio),
            ("ls_ratio", self.ls_ratio),
            ("rg_ratio", self.rg_ratio),
        ] {
            if v == 0 {
                return Err(Error::invalid(OP, format!("{name} must be positive")));
            }
        }
        if self.dt_rank == Some(0) {
            return Err(Error::invalid(OP, "dt_rank must be positive"));
        }
        Ok(())
    }

    pub fn dt_rank_for(&self, channels: usize) -> usize {
        self.dt_rank.unwrap_or_else(|| channels.div_ceil(16))
    }

    pub fn odss_dims(&self, in_channels: usize, channels: usize) -> OdssDims {
        OdssDims {
            in_channels,
            channels,
            d_state: self.d_state,
            ssm_ratio: self.ssm_ratio,
            dt_rank: self.dt_rank_for(channels),
            ls_ratio: self.ls_ratio,
            rg_ratio: self.rg_ratio,
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = Self::tiny();
        let mut section: Option<usize> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let err = |msg: String| Error::Config { line: line_no, msg };
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
                let n = name
                    .trim()
                    .strip_prefix("stage.")
                    .and_then(|n| n.parse::<usize>().ok())
                    .filter(|n| (1..=4).contains(n))
                    .ok_or_else(|| err(format!("unknown section [{name}]; expected [stage.1]..[stage.4]")))?;
                section = Some(n - 1);
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .map(|(k, v)| (k.trim(), v.trim()))
                .ok_or_else(|| err(format!("expected `key = value`, got {line:?}")))?;
            let int = |v: &str| {
                v.parse::<usize>()
                    .map_err(|_| err(format!("{key}: expected a non-negative integer, got {v:?}")))
            };
            match (section, key) {
                (Some(s), "channels") => cfg.stages[s].channels = int(value)?,
                (Some(s), "depth") => cfg.stages[s].depth = int(value)?,
                (Some(_), _) => return Err(err(format!("unknown stage key {key:?}"))),
                (None, "variant") => cfg.variant = value.to_string(),
                (None, "seed") => {
                    cfg.seed = value
                        .parse()
                        .map_err(|_| err(format!("seed: expected an integer, got {value:?}")))?
                }
                (None, "stem_channels") => cfg.stem_channels = int(value)?,
                (None, "d_state") => cfg.d_state = int(value)?,
                (None, "ssm_ratio") => cfg.ssm_ratio = int(value)?,
                (None, "dt_rank") => cfg.dt_rank = if value == "auto" { None } else { Some(int(value)?) },
                (None, "ls_ratio") => cfg.ls_ratio = int(value)?,
                (None, "rg_ratio") => cfg.rg_ratio = int(value)?,
                (None, "neck_depth") => cfg.neck_depth = int(value)?,
                (None, "neck_channels") => {
                    let parts = value.split(',').map(|p| int(p.trim())).collect::<Result<Vec<_>>>()?;
                    cfg.neck_channels = parts
                        .try_into()
                        .map_err(|p: Vec<usize>| err(format!("neck_channels: expected 3 widths, got {}", p.len())))?;
                }
                (None, _) => return Err(err(format!("unknown key {key:?}"))),
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn to_config_string(&self) -> String {
        let mut s = String::new();
        let rank = self.dt_rank.map_or("auto".to_string(), |r| r.to_string());
        let [n3, n4, n5] = self.neck_channels;
        let _ = writeln!(s, "variant = {}", self.variant);
        let _ = writeln!(s, "seed = {}", self.seed);
        let _ = writeln!(s, "stem_channels = {}", self.stem_channels);
        let _ = writeln!(s, "d_state = {}", self.d_state);
        let _ = writeln!(s, "ssm_ratio = {}", self.ssm_ratio);
        let _ = writeln!(s, "dt_rank = {rank}");
        let _ = writeln!(s, "ls_ratio = {}", self.ls_ratio);
        let _ = writeln!(s, "rg_ratio = {}", self.rg_ratio);
        let _ = writeln!(s, "neck_channels = {n3}, {n4}, {n5}");
        let _ = writeln!(s, "neck_depth = {}", self.neck_depth);
        for (i, st) in self.stages.iter().enumerate() {
            let _ = write!(s, "\n[stage.{}]\nchannels = {}\ndepth = {}\n", i + 1, st.channels, st.depth);
        }
        s
    }
}
