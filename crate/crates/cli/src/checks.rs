//! Verification checks shared by `selftest` and the acceptance suite.

use myolo::analysis::{count_params, mlp_variant_params, scan_equivalence, selective_scan_grad_suite};
use myolo::backbone::{init_weights, model_forward};
use myolo::blocks::{
    ls_block, mlp_variant_forward, odss_block, odss_input_stage, rg_block, FeatureMap, ForwardOptions, LsWeights,
    MlpVariant, MlpWeights, OdssDims, OdssWeights, RgWeights,
};
use myolo::config::ModelConfig;
use myolo::init::{Initializer, Parameters};
use myolo::ss2d::{cross_scan_expand, cross_scan_merge, Ss2dWeights};
use myolo::ssm_scan::zoh_entry;
use myolo::Result;

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Self { name: name.to_string(), passed, detail: detail.into() }
    }

    fn from_result(name: &str, r: Result<Check>) -> Check {
        r.unwrap_or_else(|e| Check::new(name, false, format!("error: {e}")))
    }
}

pub fn scan_equiv(n: usize, l: usize, trials: usize, seed: u64) -> Check {
    const NAME: &str = "scan-equivalence";
    Check::from_result(
        NAME,
        scan_equivalence(n, l, trials, seed).map(|r| {
            Check::new(
                NAME,
                r.max_dev_f32 <= 1e-4 && r.max_dev_f64 <= 1e-9,
                format!("instances={} max_dev_f32={:.3e} max_dev_f64={:.3e}", r.instances, r.max_dev_f32, r.max_dev_f64),
            )
        }),
    )
}

/// Below the series threshold the discretization must follow its Taylor form.
pub fn zoh_series() -> Check {
    let mut worst = 0.0f64;
    for (delta, a, b) in [(1e-10, -1.0, 0.5), (1e-3, -1e-7, 2.0), (0.5, 0.0, -1.0), (1e-12, -3.0, 1.0)] {
        let (ab, bb) = zoh_entry::<f64>(delta, a, b);
        let z = delta * a;
        let want_a = 1.0 + z + z * z / 2.0;
        let want_b = delta * b * (1.0 + z / 2.0);
        worst = worst.max((ab - want_a).abs()).max((bb - want_b).abs() / (delta * b).abs());
    }
    Check::new("zoh-series", worst <= 1e-12, format!("max_dev={worst:.3e}"))
}

pub fn gradients(seed: u64, trials: usize) -> Check {
    const NAME: &str = "gradcheck";
    Check::from_result(
        NAME,
        selective_scan_grad_suite(seed, trials, 1e-5).map(|r| {
            Check::new(
                NAME,
                r.max_rel_err <= 1e-5 && r.mutation_detected,
                format!(
                    "instances={} max_rel_err={:.3e} worst={} mutation_detected={}",
                    r.instances, r.max_rel_err, r.worst, r.mutation_detected
                ),
            )
        }),
    )
}

pub fn ss2d_round_trip(seed: u64, sides: &[usize]) -> Check {
    const NAME: &str = "ss2d-round-trip";
    let run = || -> Result<Check> {
        let init = Initializer::new(seed);
        let mut cases = 0;
        for &h in sides {
            for &w in sides {
                let fm = init.uniform(&format!("fm.{h}x{w}"), &[3, h, w], 4.0);
                let seqs = cross_scan_expand(&fm)?;
                let mut want: Vec<u32> = fm.data().iter().map(|v| v.to_bits()).collect();
                want.sort_unstable();
                for s in &seqs.seqs {
                    let mut got: Vec<u32> = s.data().iter().map(|v| v.to_bits()).collect();
                    got.sort_unstable();
                    if got != want {
                        return Ok(Check::new(NAME, false, format!("{h}×{w}: sequence is not a permutation")));
                    }
                }
                if !cross_scan_merge(&seqs)?.bit_eq(&fm.scale(4.0)) {
                    return Ok(Check::new(NAME, false, format!("{h}×{w}: merge(expand) != 4·fm")));
                }
                cases += 1;
            }
        }
        Ok(Check::new(NAME, true, format!("maps={cases} sides={sides:?}")))
    };
    Check::from_result(NAME, run())
}

/// LS and RG with zeroed branch weights are the identity; ODSS with zeroed
/// SS2D and RG weights returns its input stage. All comparisons are exact.
pub fn residual_collapses(seed: u64) -> Vec<Check> {
    let init = Initializer::new(seed);
    let c = 8;
    let x = FeatureMap::new(init.uniform("x", &[c, 5, 6], 2.0), 3);
    let ls = ls_block(&x, &LsWeights::zeros(c, 2)).map(|o| o.tensor == x.tensor);
    let rg = rg_block(&x, &RgWeights::zeros(c, 2)).map(|o| o.tensor == x.tensor);
    let dims = OdssDims { in_channels: 6, channels: c, d_state: 4, ssm_ratio: 2, dt_rank: 1, ls_ratio: 2, rg_ratio: 2 };
    let mut w = OdssWeights::init(&init, "odss", dims);
    w.ss2d = Ss2dWeights::zeros(dims.ss2d());
    w.rg = RgWeights::zeros(c, 2);
    let z = FeatureMap::new(init.uniform("z", &[6, 5, 6], 2.0), 3);
    let odss = odss_block(&z, &w).and_then(|o| Ok(o.tensor == odss_input_stage(&z, &w)?.tensor));
    [("collapse-ls", ls, "LSBlock = identity"), ("collapse-rg", rg, "RGBlock = identity"), ("collapse-odss", odss, "ODSSBlock = input stage")]
        .into_iter()
        .map(|(name, r, what)| match r {
            Ok(ok) => Check::new(name, ok, what),
            Err(e) => Check::new(name, false, format!("error: {e}")),
        })
        .collect()
}

/// Forward passes of `cfg` at each `(H, W)`, checking stem and pyramid strides.
pub fn shape_law(cfg: &ModelConfig, sizes: &[(usize, usize)]) -> Check {
    const NAME: &str = "shape-law";
    let run = || -> Result<Check> {
        let w = init_weights(cfg)?;
        let mut seen = Vec::new();
        for &(h, wd) in sizes {
            let img = Initializer::new(cfg.seed).uniform("img", &[3, h, wd], 0.5).map(|v| v + 0.5);
            let (bb, neck) = model_forward(&img, &w, &mut ForwardOptions::default())?;
            let mut ok = bb.stem.tensor.shape() == [cfg.stem_channels, h / 4, wd / 4];
            let widths = [cfg.stages[1].channels, cfg.stages[2].channels, cfg.stages[3].channels];
            for (k, (stride, (_, f))) in [8, 16, 32].into_iter().zip(bb.pyramid().levels()).enumerate() {
                ok &= f.tensor.shape() == [widths[k], h / stride, wd / stride];
            }
            for (k, (stride, (_, f))) in [8, 16, 32].into_iter().zip(neck.levels()).enumerate() {
                ok &= f.tensor.shape() == [cfg.neck_channels[k], h / stride, wd / stride] && f.tensor.is_finite();
            }
            if !ok {
                return Ok(Check::new(NAME, false, format!("wrong output shape at {h}×{wd}")));
            }
            seen.push(format!("{h}x{wd}"));
        }
        Ok(Check::new(NAME, true, format!("inputs={}", seen.join(","))))
    };
    Check::from_result(NAME, run())
}

/// Returns one line per config: closed-form count against allocation.
pub fn param_counts(cfgs: &[ModelConfig]) -> (Check, Vec<(String, u64, u64)>) {
    let mut rows = Vec::new();
    let mut ok = true;
    for cfg in cfgs {
        let formula = count_params(cfg).total_params();
        let allocated = match init_weights(cfg) {
            Ok(w) => w.param_count() as u64,
            Err(e) => return (Check::new("param-counts", false, format!("{}: {e}", cfg.variant)), rows),
        };
        ok &= formula == allocated;
        rows.push((cfg.variant.clone(), formula, allocated));
    }
    let detail = rows.iter().map(|(v, f, a)| format!("{v}={f}/{a}")).collect::<Vec<_>>().join(" ");
    (Check::new("param-counts", ok, detail), rows)
}

/// Original < Convolutional < ResConvolutional by closed-form count, and the
/// RG variant of the MLP harness is bit-identical to `rg_block`.
pub fn mlp_ordering(seed: u64, channels: usize, hidden: usize) -> Check {
    const NAME: &str = "mlp-ordering";
    let run = || -> Result<Check> {
        let counts: Vec<u64> = [MlpVariant::Original, MlpVariant::Convolutional, MlpVariant::ResConvolutional]
            .into_iter()
            .map(|v| mlp_variant_params(v, channels, hidden))
            .collect();
        let ordered = counts[0] < counts[1] && counts[1] < counts[2];
        let init = Initializer::new(seed);
        let allocated = MlpVariant::ALL
            .into_iter()
            .all(|v| MlpWeights::init(&init, "mlp", v, channels, hidden).param_count() as u64 == mlp_variant_params(v, channels, hidden));
        let rg = RgWeights::init(&init, "rg", channels, hidden / channels);
        let x = FeatureMap::new(init.uniform("x", &[channels, 6, 7], 1.0), 3);
        let via_mlp = mlp_variant_forward(&x, MlpVariant::RgBlock, &MlpWeights::from(&rg))?;
        let bit_identical = via_mlp.tensor.bit_eq(&rg_block(&x, &rg)?.tensor);
        Ok(Check::new(
            NAME,
            ordered && allocated && bit_identical,
            format!(
                "original={} convolutional={} res-convolutional={} allocation_matches={allocated} rg_bit_identical={bit_identical}",
                counts[0], counts[1], counts[2]
            ),
        ))
    };
    Check::from_result(NAME, run())
}

/// The quick battery run by `selftest`.
pub fn selftest(seed: u64) -> Vec<Check> {
    let mut out = vec![
        scan_equiv(8, 32, 50, seed),
        zoh_series(),
        gradients(seed, 8),
        ss2d_round_trip(seed, &[1, 2, 3, 8]),
    ];
    out.extend(residual_collapses(seed));
    out.push(shape_law(&ModelConfig { seed, ..ModelConfig::tiny() }, &[(64, 64), (32, 96)]));
    out.push(param_counts(&[ModelConfig::tiny(), ModelConfig::t()]).0);
    out.push(mlp_ordering(seed, 16, 32));
    out
}
