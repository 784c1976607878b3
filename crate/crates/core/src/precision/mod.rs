//! Arbitrary-precision scalars, exact helper sequences, singular kernels and
//! accelerated series summation.

mod exact;
mod kernels;
mod series;
mod xreal;

pub use exact::{bernoulli, binomial_exact, binomial_row, factorial, gregory};
pub use kernels::{bose_kernel, loglog_power_at, loglog_power_kernel, omega_at, omega_kernel, UnitPoint};
pub use series::{
    richardson_extrapolate, sum_series, sum_series_with_budget, Acceleration, SeriesResult, DEFAULT_MAX_TERMS,
};
pub use xreal::{XReal, DEFAULT_PRECISION, MIN_PRECISION};
