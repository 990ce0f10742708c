use std::path::Path;

use myolo::backbone::{init_weights, model_forward, INPUT_MULTIPLE};
use myolo::blocks::ForwardOptions;
use myolo::config::ModelConfig;
use myolo::image::read_ppm;
use myolo::tensor::write_myt_file;
use myolo::Result;

/// Writes `stem`, `stage1`–`stage4` and the neck's `p3`–`p5` as MYT1 files
/// under `out`, padding the image up to a multiple of 32 first. Returns the
/// written file names with their shapes, in write order.
pub fn extract(image: &Path, cfg: &ModelConfig, out: &Path, dump_intermediate: bool) -> Result<Vec<(String, [usize; 3])>> {
    let img = read_ppm(image)?.pad_hw_to_multiple(INPUT_MULTIPLE)?;
    let weights = init_weights(cfg)?;
    let mut opts = if dump_intermediate { ForwardOptions::traced() } else { ForwardOptions::default() };
    let (bb, neck) = model_forward(&img, &weights, &mut opts)?;
    std::fs::create_dir_all(out)?;
    let mut tensors = vec![("stem.myt".to_string(), bb.stem.tensor.clone())];
    for (i, st) in bb.stages.iter().enumerate() {
        tensors.push((format!("stage{}.myt", i + 1), st.tensor.clone()));
    }
    for (name, f) in neck.levels() {
        tensors.push((format!("{name}.myt"), f.tensor.clone()));
    }
    if let Some(trace) = opts.trace {
        let dir = out.join("intermediate");
        std::fs::create_dir_all(&dir)?;
        for (path, t) in trace {
            tensors.push((format!("intermediate/{path}.myt"), t));
        }
    }
    let mut written = Vec::with_capacity(tensors.len());
    for (name, t) in tensors {
        write_myt_file(out.join(&name), &t)?;
        let s = t.shape();
        written.push((name, [s[0], s[1], s[2]]));
    }
    Ok(written)
}
