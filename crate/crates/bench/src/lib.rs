//! Inputs shared by the benchmarks.

use stabmod_core::boundary::{BoundaryModule, BoundaryOptions, HalfSpace, Side};
use stabmod_core::{zoo, MetricGroup, StabilizerCode};

pub fn code(name: &str) -> StabilizerCode {
    zoo::by_name(name).expect("known zoo name").expect("zoo codes build")
}

pub fn upper_boundary(code: &StabilizerCode) -> BoundaryModule {
    BoundaryModule::compute(code, &HalfSpace::standard(code.ring().nvars), Side::Upper, BoundaryOptions::default())
        .expect("boundary computes")
}

/// Metric group of the coarse-grained Wen boundary summed with its opposite.
pub fn doubled_wen_metric_group() -> MetricGroup {
    let wen = upper_boundary(&code("wen"));
    let e = wen.quasi_symplectic().and_then(|q| q.coarse_grain(2)).and_then(|q| q.metric_group()).expect("metric group");
    e.direct_sum(&e.opposite()).expect("same modulus")
}
