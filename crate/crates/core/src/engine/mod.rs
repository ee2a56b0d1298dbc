//! Suprema of the Dunkl-Williams family, the Birkhoff-restricted constant and
//! the isosceles-Birkhoff constant, with witnesses.

mod config;
mod dw;
mod dwb;
mod ib;
mod objective;
mod report;
mod search;

pub use config::EngineConfig;
pub use dw::{compute_dw, compute_dw_formulation};
pub use dwb::compute_dwb;
pub use report::{check_equivalences, dual_experiment, DualExperiment, EquivalenceReport, EQUIV_TOL};
pub use ib::{compute_ib, IB_R_GRID_N, IB_R_MAX, IB_R_MIN};
pub use objective::{
    dw3_point, dw_point, objective_value, segment_min_polygon, DWResult, Formulation, SegmentMin, Witness,
};
