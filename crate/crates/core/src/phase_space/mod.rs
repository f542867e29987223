//! Grids, fields, Gaussian smoothing, moments and contours shared by the
//! position-momentum and time-frequency analyses.

mod axis;
mod contour;
mod field;
pub(crate) mod lag;
mod smoothing;

pub use axis::Axis;
pub use contour::{contour_extract, default_levels, island_count, ContourSet, Polyline};
pub use field::{AxisId, DistributionField, Moments};
pub use lag::LagMethod;
pub use smoothing::{
    classify_regime, gaussian_kernel, gaussian_smooth, gaussian_smooth_with, ConvolutionMethod,
    Regime, SmoothingWidths, FFT_THRESHOLD, KERNEL_RADIUS,
};
