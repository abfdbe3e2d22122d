//! Exact truncated q-series.

mod det;
mod series;
mod theta;

pub use det::{det, minor};
pub use series::QSeries;
pub use theta::{
    euler_phi, restricted_partition_gf, shifted_theta, theta, theta_f, theta_g, transform_check,
    triple_product_f, triple_product_g, NormalizedTheta, ThetaKind,
};
