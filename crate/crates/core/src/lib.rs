//! State-space-model primitives and detection blocks: diagonal and selective
//! scans, the 2-D cross-scan operator, ODSS/LocalSpatial/ResGated blocks, and a
//! four-stage backbone with a PAN-FPN neck.

pub mod analysis;
pub mod backbone;
pub mod blocks;
pub mod config;
pub mod error;
pub mod image;
pub mod init;
pub mod rng;
pub mod ss2d;
pub mod ssm_scan;
pub mod tensor;

pub use error::{Error, Result};
pub use tensor::Tensor;
