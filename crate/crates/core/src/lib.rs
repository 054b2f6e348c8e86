//! Half-disk density strips (HDDSs) and HDDS tables.
//!
//! An HDDS draws a univariate density as a half disk cut into circular
//! sectors; each sector covers an interval of the support and is shaded in
//! proportion to the density there. HDDS tables arrange conditional and
//! marginal densities like a contingency table, scaling each half disk by
//! the probability of its conditioning event.
//!
//! The pipeline is [`density`] → [`color`] → [`geometry`] → [`render`],
//! with [`table`] assembling grids of strips and [`cli`] driving everything
//! from CSV files.

pub mod cli;
pub mod color;
pub mod density;
pub mod error;
pub mod geometry;
pub mod render;
pub mod table;

pub use color::{hcl_to_rgb, make_context, shade, HclColor, RgbColor, ShadingContext};
pub use density::{
    estimate_continuous, estimate_discrete, sample_median, truncation_bounds, DensityGrid, Kind,
    Sample, SupportBounds,
};
pub use error::{Error, Result};
pub use geometry::{
    diameter_scale, map_support_to_angle, tessellate, HalfDiskStrip, Orientation, Sector,
};
pub use render::{serialize, FigureDoc};
pub use table::{
    bin_continuous, build_comparison, build_table, compose_conditioning, joint_probabilities,
    ConditioningColumn, Dataset, HddsTable, ProbTable, TableConfig,
};
