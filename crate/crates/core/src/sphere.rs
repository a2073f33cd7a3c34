//! Points on the Riemann sphere (the extended complex plane).

use num_complex::Complex64;

/// Modulus beyond which a finite value is normalized to the point at
/// infinity. Far above every attractor scale handled by the family, far
/// below overflow.
pub const INF_MODULUS: f64 = 1e15;

/// A point on the extended complex plane: a finite value or infinity.
///
/// Equality of finite points is by complex value; proximity to infinity is
/// measured through the reciprocal modulus (the `w = 1/z` chart).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpherePoint {
    Finite(Complex64),
    Infinity,
}

impl SpherePoint {
    /// Wraps a raw complex value, normalizing non-finite components and
    /// moduli above [`INF_MODULUS`] to `Infinity`.
    pub fn from_complex(z: Complex64) -> Self {
        if !z.re.is_finite() || !z.im.is_finite() || z.norm() > INF_MODULUS {
            SpherePoint::Infinity
        } else {
            SpherePoint::Finite(z)
        }
    }

    pub fn finite(re: f64, im: f64) -> Self {
        SpherePoint::Finite(Complex64::new(re, im))
    }

    pub fn zero() -> Self {
        SpherePoint::Finite(Complex64::new(0.0, 0.0))
    }

    pub fn is_infinity(self) -> bool {
        matches!(self, SpherePoint::Infinity)
    }

    pub fn as_finite(self) -> Option<Complex64> {
        match self {
            SpherePoint::Finite(z) => Some(z),
            SpherePoint::Infinity => None,
        }
    }

    /// Chart swap `w = 1/z`. Zero maps to infinity and vice versa.
    pub fn recip(self) -> Self {
        match self {
            SpherePoint::Infinity => SpherePoint::zero(),
            SpherePoint::Finite(z) if z.norm() == 0.0 => SpherePoint::Infinity,
            SpherePoint::Finite(z) => SpherePoint::from_complex(z.inv()),
        }
    }
}

impl From<Complex64> for SpherePoint {
    fn from(z: Complex64) -> Self {
        SpherePoint::from_complex(z)
    }
}

impl std::fmt::Display for SpherePoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SpherePoint::Finite(z) => write!(f, "{}", format_complex(*z)),
            SpherePoint::Infinity => write!(f, "inf"),
        }
    }
}

/// Compact display of a complex value: `2`, `-0.2i`, `1+2i`, `1-2i`.
pub fn format_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.re == 0.0 {
        format!("{}i", z.im)
    } else if z.im < 0.0 {
        format!("{}{}i", z.re, z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

/// Relative disagreement between two sphere points.
///
/// Finite pairs compare as `|x - y| / max(1, |x|, |y|)`; any pair involving
/// infinity compares reciprocals under the same rule, so the metric stays
/// uniform across the chart boundary.
pub fn rel_error(x: SpherePoint, y: SpherePoint) -> f64 {
    match (x, y) {
        (SpherePoint::Finite(a), SpherePoint::Finite(b)) => {
            (a - b).norm() / a.norm().max(b.norm()).max(1.0)
        }
        _ => {
            let ra = recip_raw(x);
            let rb = recip_raw(y);
            if !(ra.re.is_finite() && ra.im.is_finite() && rb.re.is_finite() && rb.im.is_finite())
            {
                // one side reciprocated to non-finite (0 vs infinity):
                // maximal disagreement
                return f64::INFINITY;
            }
            (ra - rb).norm() / ra.norm().max(rb.norm()).max(1.0)
        }
    }
}

fn recip_raw(p: SpherePoint) -> Complex64 {
    match p {
        SpherePoint::Infinity => Complex64::new(0.0, 0.0),
        SpherePoint::Finite(z) => z.inv(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes_overflow_to_infinity() {
        assert!(SpherePoint::from_complex(Complex64::new(1e16, 0.0)).is_infinity());
        assert!(SpherePoint::from_complex(Complex64::new(f64::NAN, 0.0)).is_infinity());
        assert!(!SpherePoint::finite(1e14, 0.0).is_infinity());
    }

    #[test]
    fn recip_swaps_zero_and_infinity() {
        assert_eq!(SpherePoint::zero().recip(), SpherePoint::Infinity);
        assert_eq!(SpherePoint::Infinity.recip(), SpherePoint::zero());
        let z = SpherePoint::finite(2.0, 0.0).recip();
        assert_eq!(z, SpherePoint::finite(0.5, 0.0));
    }

    #[test]
    fn rel_error_is_uniform_across_charts() {
        let big = SpherePoint::finite(1e12, 0.0);
        assert!(rel_error(big, SpherePoint::Infinity) < 1e-11);
        assert!(rel_error(SpherePoint::zero(), SpherePoint::Infinity) > 1.0);
        let a = SpherePoint::finite(3.0, 4.0);
        assert_eq!(rel_error(a, a), 0.0);
    }

    #[test]
    fn formats_compactly() {
        assert_eq!(format_complex(Complex64::new(2.0, 0.0)), "2");
        assert_eq!(format_complex(Complex64::new(0.0, -0.2)), "-0.2i");
        assert_eq!(format_complex(Complex64::new(1.0, 2.0)), "1+2i");
        assert_eq!(format_complex(Complex64::new(1.5, -2.0)), "1.5-2i");
    }
}
