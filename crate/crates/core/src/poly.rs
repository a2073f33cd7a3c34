//! Dense univariate polynomials with complex coefficients.
//!
//! Coefficients are stored in ascending degree order. The representation is
//! canonical: the zero polynomial is the empty vector, and trailing
//! coefficients that are negligible relative to the largest coefficient are
//! stripped on construction so that degree drops at special parameter values
//! are detected reliably.

use num_complex::Complex64;

/// Trailing coefficients below this fraction of the max-modulus coefficient
/// are treated as zero.
const TRAILING_EPS: f64 = 1e-14;

#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<Complex64>,
}

impl Polynomial {
    /// Construct from ascending coefficients, stripping negligible trailing
    /// terms.
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        let mut p = Polynomial { coeffs };
        p.normalize();
        p
    }

    /// Convenience constructor from real coefficients (ascending).
    pub fn from_reals(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: Complex64) -> Self {
        Self::new(vec![c])
    }

    /// The monic linear polynomial `z - root`.
    pub fn linear_from_root(root: Complex64) -> Self {
        Self::new(vec![-root, Complex64::new(1.0, 0.0)])
    }

    fn normalize(&mut self) {
        let max = self
            .coeffs
            .iter()
            .map(|c| c.norm())
            .fold(0.0f64, f64::max);
        if max == 0.0 {
            self.coeffs.clear();
            return;
        }
        while let Some(last) = self.coeffs.last() {
            if last.norm() < TRAILING_EPS * max {
                self.coeffs.pop();
            } else {
                break;
            }
        }
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<Complex64> {
        self.coeffs.last().copied()
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Horner-scheme evaluation. Exact for degree 0; the zero polynomial
    /// evaluates to 0.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    /// Formal derivative: coefficient `k * c_k` shifted down one degree.
    pub fn derivative(&self) -> Polynomial {
        if self.coeffs.len() <= 1 {
            return Polynomial::zero();
        }
        let d: Vec<Complex64> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| c * k as f64)
            .collect();
        Polynomial::new(d)
    }

    pub fn scale(&self, s: Complex64) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, &c) in other.coeffs.iter().enumerate() {
            out[i] += c;
        }
        Polynomial::new(out)
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut out =
            vec![Complex64::new(0.0, 0.0); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }

    /// Multiply by `z` (shift coefficients up one degree).
    pub fn mul_x(&self) -> Polynomial {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let mut out = Vec::with_capacity(self.coeffs.len() + 1);
        out.push(Complex64::new(0.0, 0.0));
        out.extend_from_slice(&self.coeffs);
        Polynomial::new(out)
    }

    /// `self^n` by repeated multiplication. Degrees in this crate stay small.
    pub fn pow(&self, n: u32) -> Polynomial {
        let mut out = Polynomial::constant(Complex64::new(1.0, 0.0));
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// Composition with an affine map: returns `p(alpha z + beta)`.
    pub fn compose_affine(&self, alpha: Complex64, beta: Complex64) -> Polynomial {
        let lin = Polynomial::new(vec![beta, alpha]);
        let mut acc = Polynomial::zero();
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(&lin).add(&Polynomial::constant(c));
        }
        acc
    }

    /// Synthetic division by `(z - root)`. Returns the quotient and the
    /// remainder `p(root)`.
    pub fn deflate(&self, root: Complex64) -> (Polynomial, Complex64) {
        if self.coeffs.len() <= 1 {
            return (Polynomial::zero(), self.eval(root));
        }
        let mut q = vec![Complex64::new(0.0, 0.0); self.coeffs.len() - 1];
        let mut carry = *self.coeffs.last().unwrap();
        for i in (0..self.coeffs.len() - 1).rev() {
            q[i] = carry;
            carry = self.coeffs[i] + carry * root;
        }
        (Polynomial::new(q), carry)
    }
}
