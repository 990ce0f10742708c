//! Cost accounting, gradient checking and scan-equivalence tooling.

pub mod cost;
pub mod equiv;
pub mod gradcheck;

pub use cost::{conv_macs, conv_params, count_macs, count_params, mlp_variant_params, shape_table, CostReport, CostRow, RowKind};
pub use equiv::{scan_equivalence, EquivReport, LtiInstance};
pub use gradcheck::{grad_check, selective_scan_grad_suite, GradReport, GradSuiteReport, GradTarget, Mutation, SelectiveScanTarget};
