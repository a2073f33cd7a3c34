//! Rational maps on the Riemann sphere.

use crate::error::Error;
use crate::poly::Polynomial;
use crate::sphere::SpherePoint;

/// A quotient of two polynomials, evaluated on the sphere.
///
/// The denominator is never the zero polynomial. Maps produced by the
/// operator constructors are reduced at their removable points, so
/// evaluation never lands on an exact 0/0.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalMap {
    num: Polynomial,
    den: Polynomial,
}

impl RationalMap {
    pub fn new(num: Polynomial, den: Polynomial) -> Self {
        assert!(!den.is_zero(), "rational map with zero denominator");
        RationalMap { num, den }
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    /// Evaluate on the sphere.
    ///
    /// Finite input: `num(z)/den(z)`, with an exact denominator zero mapping
    /// to infinity (or an [`Error::EvalIndeterminate`] if the numerator
    /// vanishes exactly too). Infinite input: decided by degree comparison,
    /// with equal degrees giving the ratio of leading coefficients. Results
    /// beyond the overflow threshold normalize to infinity.
    pub fn apply(&self, w: SpherePoint) -> Result<SpherePoint, Error> {
        match w {
            SpherePoint::Finite(z) => {
                let nv = self.num.eval(z);
                let dv = self.den.eval(z);
                if dv.re == 0.0 && dv.im == 0.0 {
                    if nv.re == 0.0 && nv.im == 0.0 {
                        return Err(Error::EvalIndeterminate(z));
                    }
                    return Ok(SpherePoint::Infinity);
                }
                Ok(SpherePoint::from_complex(nv / dv))
            }
            SpherePoint::Infinity => {
                let dn = self.num.degree();
                let dd = self.den.degree().expect("nonzero denominator");
                Ok(match dn {
                    None => SpherePoint::zero(),
                    Some(dn) if dn > dd => SpherePoint::Infinity,
                    Some(dn) if dn < dd => SpherePoint::zero(),
                    Some(_) => {
                        let ratio = self.num.leading().unwrap() / self.den.leading().unwrap();
                        SpherePoint::from_complex(ratio)
                    }
                })
            }
        }
    }

    /// The derivative as a rational map, by the quotient rule:
    /// `(num' den - num den') / den^2`.
    pub fn derivative(&self) -> RationalMap {
        let n = self
            .num
            .derivative()
            .mul(&self.den)
            .sub(&self.num.mul(&self.den.derivative()));
        RationalMap::new(n, self.den.mul(&self.den))
    }
}
