//! Categorical invariants of small covers.

pub mod arith;
pub mod external;
mod report;
pub mod zcl;

pub use report::{
    bounds_from_algebra, bounds_report, rp_product_tc, rp_product_tc_for, BoundsOptions, BoundsReport, ExactEntry,
    IntervalEntry, Interval, InvariantError, OptionalEntry, RpProductTc, SearchSummary,
};
