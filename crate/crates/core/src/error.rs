//! Error type shared across the crate.

use crate::sphere::{format_complex, SpherePoint};
use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The multiplicity ratio collapses the operator (K = 0 yields the
    /// identity map).
    #[error("degenerate parameter K={} (identity map)", format_complex(*.0))]
    DegenerateParam(Complex64),

    /// Numerator and denominator both vanished exactly: the map was not
    /// reduced at a removable point. Construction bug, not a data error.
    #[error("indeterminate evaluation at z={}: numerator and denominator both vanish", format_complex(*.0))]
    EvalIndeterminate(Complex64),

    /// A multiplier was requested at a point that does not satisfy the
    /// fixed-point residual bound.
    #[error("not a fixed point: z={location} (residual {residual:.3e})")]
    NotAFixedPoint {
        location: SpherePoint,
        residual: f64,
    },
}
