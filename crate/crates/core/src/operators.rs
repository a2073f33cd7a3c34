//! The iteration operators of the family and their conjugating transforms.
//!
//! `ratio_map` is the one-parameter rational operator obtained by applying
//! the method to a polynomial with two roots of multiplicities `m = Kn` and
//! `n`, then conjugating by the Möbius map that sends the roots to 0 and
//! infinity. `root_pair_map` is the same iteration written directly for a
//! root pair at +1 and -1. Both derivatives are built from closed forms and
//! are guarded by finite-difference property tests.

use crate::error::Error;
use crate::poly::Polynomial;
use crate::rational::RationalMap;
use crate::sphere::SpherePoint;
use num_complex::Complex64;

/// Parameters within this radius of a degenerate value {0, -1, -2} snap to
/// it exactly, so user-entered values like "-2" behave deterministically.
pub const SNAP_RADIUS: f64 = 1e-9;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// The multiplicity ratio K indexing the family (`m = Kn`).
///
/// K = 0 collapses the operator to the identity map and is rejected.
/// Values within [`SNAP_RADIUS`] of {0, -1, -2} are snapped exactly; -1 and
/// -2 are the removable degeneracies where the operator must be reduced.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioParam(Complex64);

impl RatioParam {
    pub fn new(k: Complex64) -> Result<Self, Error> {
        let mut k = k;
        for special in [0.0, -1.0, -2.0] {
            if (k - c(special)).norm() < SNAP_RADIUS {
                k = c(special);
                break;
            }
        }
        if k == c(0.0) {
            return Err(Error::DegenerateParam(k));
        }
        Ok(RatioParam(k))
    }

    /// Construct from a real ratio.
    pub fn from_real(k: f64) -> Result<Self, Error> {
        Self::new(c(k))
    }

    pub fn value(self) -> Complex64 {
        self.0
    }

    pub(crate) fn is(self, re: f64) -> bool {
        self.0 == c(re)
    }
}

/// Two root multiplicities `m` and `n` with ratio `K = m/n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MultiplicityPair {
    pub m: u32,
    pub n: u32,
}

impl MultiplicityPair {
    pub fn new(m: u32, n: u32) -> Self {
        assert!(m >= 1 && n >= 1, "multiplicities must be positive");
        MultiplicityPair { m, n }
    }

    pub fn ratio(self) -> Complex64 {
        c(self.m as f64 / self.n as f64)
    }
}

/// One step of the modified Chebyshev iteration for a root of multiplicity
/// `m`: `z - (m f / 2f') (3 - m + m L_f)` with `L_f = f f'' / (f')^2`.
///
/// A simple critical point of `f` (`f' = 0`, `f != 0`) sends the step to
/// infinity. An exact multiple root (`f = f' = 0`) is indeterminate; callers
/// treat it as converged.
pub fn modified_chebyshev_step(f: &Polynomial, m: u32, z: Complex64) -> Result<SpherePoint, Error> {
    let fv = f.eval(z);
    let df = f.derivative();
    let fp = df.eval(z);
    let fpp = df.derivative().eval(z);
    if fp.re == 0.0 && fp.im == 0.0 {
        if fv.re == 0.0 && fv.im == 0.0 {
            return Err(Error::EvalIndeterminate(z));
        }
        return Ok(SpherePoint::Infinity);
    }
    let m = c(m as f64);
    let lf = fv * fpp / (fp * fp);
    let step = z - (m * fv / (c(2.0) * fp)) * (c(3.0) - m + m * lf);
    Ok(SpherePoint::from_complex(step))
}

/// Raw denominator of the ratio operator before reduction:
/// `(K-1)(K-2) z^3 + 6K(1-K) z^2 + 2K^2(3-K) z + 2K^3`.
fn ratio_den_raw(k: Complex64) -> Polynomial {
    Polynomial::new(vec![
        c(2.0) * k * k * k,
        c(2.0) * k * k * (c(3.0) - k),
        c(6.0) * k * (c(1.0) - k),
        (k - c(1.0)) * (k - c(2.0)),
    ])
}

/// The conjugate rational operator of the family, with the two roots at 0
/// and infinity: `z^3 (2z + K(K+3))` over the raw denominator, stored with
/// monic numerator.
///
/// At K = -1 and K = -2 exactly, numerator and denominator share the factor
/// `(z - 1)`; the constructor divides it out synthetically. The cancellation
/// locus is provably {-1, -2}: both polynomials evaluate to `(K+1)(K+2)` at
/// `z = 1`.
pub fn ratio_map(k: &RatioParam) -> RationalMap {
    let kk = k.value();
    let mut num = Polynomial::new(vec![c(0.0), c(0.0), c(0.0), kk * (kk + c(3.0)), c(2.0)]);
    let mut den = ratio_den_raw(kk);
    if k.is(-1.0) || k.is(-2.0) {
        let (qn, rn) = num.deflate(c(1.0));
        let (qd, rd) = den.deflate(c(1.0));
        debug_assert!(rn.norm() < 1e-9 && rd.norm() < 1e-9);
        num = qn;
        den = qd;
    }
    // The numerator's leading coefficient is exactly 2 in every branch;
    // halving both sides leaves the map unchanged and matches the reduced
    // coefficient displays.
    RationalMap::new(num.scale(c(0.5)), den.scale(c(0.5)))
}

/// Derivative of [`ratio_map`], from the closed form
/// `2 z^2 (z+K)^2 [(K-1)(K-2) z^2 - 2K(K-1)(K+4) z + 3K^2(K+3)]` over the
/// squared raw denominator. At the reduced parameters {-1, -2} it is built
/// as the formal derivative of the reduced map instead.
pub fn ratio_map_derivative(k: &RatioParam) -> RationalMap {
    if k.is(-1.0) || k.is(-2.0) {
        return ratio_map(k).derivative();
    }
    let kk = k.value();
    let quad = Polynomial::new(vec![
        c(3.0) * kk * kk * (kk + c(3.0)),
        c(-2.0) * kk * (kk - c(1.0)) * (kk + c(4.0)),
        (kk - c(1.0)) * (kk - c(2.0)),
    ]);
    // 2 z^2 (z+K)^2
    let front = Polynomial::new(vec![c(0.0), c(0.0), c(2.0)])
        .mul(&Polynomial::new(vec![kk, c(1.0)]).pow(2));
    let den = ratio_den_raw(kk);
    RationalMap::new(front.mul(&quad), den.mul(&den))
}

/// Numerator coefficients `(u1, ..., u5)` of the root-pair operator, as
/// polynomials in K. Defined for every K, including values the operator
/// itself rejects.
pub fn root_pair_coeffs(k: Complex64) -> [Complex64; 5] {
    let k2 = k * k;
    let k3 = k2 * k;
    [
        k2 + c(3.0) * k + c(2.0),
        c(2.0) * k3 + c(4.0) * k2 - c(6.0),
        c(6.0) * k3 + c(6.0) * k2 - c(6.0) * k + c(6.0),
        c(6.0) * k3 - c(4.0) * k2 - c(2.0),
        c(2.0) * k3 - c(7.0) * k2 + c(3.0) * k,
    ]
}

/// The iteration operator for a root pair at +1 and -1:
/// `(u1 z^4 + u2 z^3 + u3 z^2 + u4 z + u5) / (2 ((K+1) z + (K-1))^3)`.
///
/// Stored unreduced: the denominator root `(1-K)/(1+K)` is a genuine pole
/// for admissible K. At K = -1 the denominator is the constant -16 and the
/// map is a polynomial.
pub fn root_pair_map(k: &RatioParam) -> RationalMap {
    let kk = k.value();
    let [u1, u2, u3, u4, u5] = root_pair_coeffs(kk);
    let num = Polynomial::new(vec![u5, u4, u3, u2, u1]);
    let (a, b) = (kk + c(1.0), kk - c(1.0));
    let den = Polynomial::new(vec![
        c(2.0) * b * b * b,
        c(6.0) * a * b * b,
        c(6.0) * a * a * b,
        c(2.0) * a * a * a,
    ]);
    RationalMap::new(num, den)
}

/// Derivative of [`root_pair_map`], from the closed form
/// `(z-1)^2 [(z^2+6z+5) K^3 + 4(z+2)^2 K^2 + (5z^2+6z-11) K + 2(z-1)^2]`
/// over `2 ((K+1) z + (K-1))^4`.
pub fn root_pair_map_derivative(k: &RatioParam) -> RationalMap {
    let kk = k.value();
    let k2 = kk * kk;
    let k3 = k2 * kk;
    // bracket collected in z: A z^2 + B z + C
    let quad = Polynomial::new(vec![
        c(5.0) * k3 + c(16.0) * k2 - c(11.0) * kk + c(2.0),
        c(6.0) * k3 + c(16.0) * k2 + c(6.0) * kk - c(4.0),
        (kk + c(1.0)) * (kk + c(1.0)) * (kk + c(2.0)),
    ]);
    let num = Polynomial::from_reals(&[1.0, -2.0, 1.0]).mul(&quad);
    let lin = Polynomial::new(vec![kk - c(1.0), kk + c(1.0)]);
    let den = lin.pow(4).scale(c(2.0));
    RationalMap::new(num, den)
}

/// The Möbius transformation `M(z) = (z - a) / (z - b)` sending the root `a`
/// to 0, the root `b` to infinity, and infinity to 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MoebiusMap {
    pub a: Complex64,
    pub b: Complex64,
}

impl MoebiusMap {
    pub fn new(a: Complex64, b: Complex64) -> Self {
        assert!(a != b, "Möbius map requires distinct roots");
        MoebiusMap { a, b }
    }

    pub fn apply(&self, w: SpherePoint) -> SpherePoint {
        match w {
            SpherePoint::Infinity => SpherePoint::finite(1.0, 0.0),
            SpherePoint::Finite(z) => {
                if z == self.b {
                    SpherePoint::Infinity
                } else {
                    SpherePoint::from_complex((z - self.a) / (z - self.b))
                }
            }
        }
    }

    /// `M^{-1}(u) = (b u - a) / (u - 1)`; infinity maps back to `b`.
    pub fn inverse(&self, u: SpherePoint) -> SpherePoint {
        match u {
            SpherePoint::Infinity => SpherePoint::Finite(self.b),
            SpherePoint::Finite(z) => {
                if z == c(1.0) {
                    SpherePoint::Infinity
                } else {
                    SpherePoint::from_complex((self.b * z - self.a) / (z - c(1.0)))
                }
            }
        }
    }
}

/// The affine change of variable `T(z) = alpha z + beta`, `alpha != 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffineMap {
    pub alpha: Complex64,
    pub beta: Complex64,
}

impl AffineMap {
    pub fn new(alpha: Complex64, beta: Complex64) -> Self {
        assert!(alpha != c(0.0), "affine map requires alpha != 0");
        AffineMap { alpha, beta }
    }

    pub fn identity() -> Self {
        Self::new(c(1.0), c(0.0))
    }

    pub fn apply(&self, z: SpherePoint) -> SpherePoint {
        match z {
            SpherePoint::Infinity => SpherePoint::Infinity,
            SpherePoint::Finite(z) => SpherePoint::from_complex(self.alpha * z + self.beta),
        }
    }

    pub fn inverse(&self, z: SpherePoint) -> SpherePoint {
        match z {
            SpherePoint::Infinity => SpherePoint::Infinity,
            SpherePoint::Finite(z) => SpherePoint::from_complex((z - self.beta) / self.alpha),
        }
    }

    pub fn inverse_finite(&self, z: Complex64) -> Complex64 {
        (z - self.beta) / self.alpha
    }
}

/// The polynomial `(z - a)^m (z - b)^n`.
pub fn two_root_polynomial(a: Complex64, b: Complex64, m: u32, n: u32) -> Polynomial {
    Polynomial::linear_from_root(a)
        .pow(m)
        .mul(&Polynomial::linear_from_root(b).pow(n))
}
