//! Fixed points, critical points, multipliers and stability of the family.
//!
//! Ground truth for every multiplier is direct evaluation of the derivative
//! map; the closed-form stability expressions are cross-checks. Where a
//! closed form disagrees with direct evaluation beyond tolerance, the
//! disagreement is surfaced as a [`Discrepancy`] record instead of being
//! silently resolved.

use crate::error::Error;
use crate::operators::{
    ratio_map, ratio_map_derivative, root_pair_map, root_pair_map_derivative, RatioParam,
    SNAP_RADIUS,
};
use crate::rational::RationalMap;
use crate::sphere::{format_complex, SpherePoint};
use num_complex::Complex64;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Stability classes by multiplier modulus, with a classification band of
/// 1e-9 around the unit circle to avoid flapping from rounding.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StabilityClass {
    Superattracting,
    Attracting,
    Repelling,
    Neutral,
}

impl std::fmt::Display for StabilityClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            StabilityClass::Superattracting => "superattracting",
            StabilityClass::Attracting => "attracting",
            StabilityClass::Repelling => "repelling",
            StabilityClass::Neutral => "neutral",
        };
        f.write_str(s)
    }
}

pub fn classify(multiplier_modulus: f64) -> StabilityClass {
    const BAND: f64 = 1e-9;
    if multiplier_modulus < 1e-12 {
        StabilityClass::Superattracting
    } else if multiplier_modulus < 1.0 - BAND {
        StabilityClass::Attracting
    } else if multiplier_modulus > 1.0 + BAND {
        StabilityClass::Repelling
    } else {
        StabilityClass::Neutral
    }
}

/// Whether a fixed point is the image of a polynomial root or a strange
/// fixed point introduced by the iteration itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointKind {
    RootImage,
    Strange,
}

impl std::fmt::Display for PointKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            PointKind::RootImage => "root-image",
            PointKind::Strange => "strange",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FixedPointReport {
    pub location: SpherePoint,
    pub multiplier_modulus: f64,
    pub class: StabilityClass,
    pub kind: PointKind,
}

impl FixedPointReport {
    /// Flat one-line record: K, location, modulus, class, kind.
    pub fn line(&self, k: Complex64) -> String {
        format!(
            "K={} z={} modulus={:.12} class={} kind={}",
            format_complex(k),
            self.location,
            self.multiplier_modulus,
            self.class,
            self.kind
        )
    }
}

/// Critical points with multiplicities. Finite entries zero the derivative
/// map to residual below 1e-8.
#[derive(Debug, Clone, PartialEq)]
pub struct CriticalPointSet {
    pub points: Vec<(SpherePoint, u32)>,
}

/// Multiplier modulus of `map` at the fixed point `p`, evaluated through
/// `deriv` at finite points and through the `w = 1/z` chart at infinity
/// (the degree rule: `|lead(den)/lead(num)|` when the numerator degree
/// exceeds the denominator's by one, 0 when it exceeds it by two or more).
///
/// Fails with [`Error::NotAFixedPoint`] if `p` does not satisfy the
/// residual bound `1e-8 * max(1, |p|)`.
pub fn multiplier(
    deriv: &RationalMap,
    map: &RationalMap,
    p: SpherePoint,
) -> Result<f64, Error> {
    match p {
        SpherePoint::Finite(z) => {
            let image = map.apply(p)?;
            let residual = match image {
                SpherePoint::Finite(w) => (w - z).norm(),
                SpherePoint::Infinity => f64::INFINITY,
            };
            if residual >= 1e-8 * z.norm().max(1.0) {
                return Err(Error::NotAFixedPoint {
                    location: p,
                    residual,
                });
            }
            Ok(match deriv.apply(p)? {
                SpherePoint::Finite(d) => d.norm(),
                SpherePoint::Infinity => f64::INFINITY,
            })
        }
        SpherePoint::Infinity => {
            if map.apply(p)? != SpherePoint::Infinity {
                return Err(Error::NotAFixedPoint {
                    location: p,
                    residual: f64::INFINITY,
                });
            }
            let dn = map.num().degree().expect("nonzero numerator at infinity");
            let dd = map.den().degree().expect("nonzero denominator");
            Ok(if dn >= dd + 2 {
                0.0
            } else {
                (map.den().leading().unwrap() / map.num().leading().unwrap()).norm()
            })
        }
    }
}

fn report(
    deriv: &RationalMap,
    map: &RationalMap,
    location: SpherePoint,
    kind: PointKind,
) -> FixedPointReport {
    let m = multiplier(deriv, map, location).expect("constructed fixed point failed residual");
    FixedPointReport {
        location,
        multiplier_modulus: m,
        class: classify(m),
        kind,
    }
}

/// Locations of the strange fixed points of the ratio operator: `z = 1`
/// (absent at the reduced parameters where the `(z-1)` factor cancels) and
/// the conjugate pair `(3 ± sqrt(2K+3)) K / (K-3)`, which degenerates to
/// `{1, -1}` at K = 3. Both square-root branches are always materialized.
fn ratio_strange_locations(k: &RatioParam) -> Vec<Complex64> {
    let kk = k.value();
    let mut out = Vec::new();
    if !(k.is(-1.0) || k.is(-2.0)) {
        out.push(c(1.0));
    }
    if k.is(3.0) {
        // the quadratic factor degenerates to a linear one with root -1
        out.push(c(-1.0));
    } else {
        let r = (c(3.0) + c(2.0) * kk).sqrt();
        out.push((c(3.0) + r) * kk / (kk - c(3.0)));
        out.push((c(3.0) - r) * kk / (kk - c(3.0)));
    }
    out
}

/// Fixed points of the ratio operator with stability report.
///
/// The root images 0 and infinity come first, then the strange points. At
/// K = -1 the merged point z = 1 reappears through the pair formula and is
/// reported with its actual multiplier from the reduced map (it becomes
/// superattracting there).
pub fn ratio_map_fixed_points(k: &RatioParam) -> Vec<FixedPointReport> {
    let map = ratio_map(k);
    let deriv = ratio_map_derivative(k);
    let mut out = vec![
        report(&deriv, &map, SpherePoint::zero(), PointKind::RootImage),
        report(&deriv, &map, SpherePoint::Infinity, PointKind::RootImage),
    ];
    for z in ratio_strange_locations(k) {
        out.push(report(
            &deriv,
            &map,
            SpherePoint::from_complex(z),
            PointKind::Strange,
        ));
    }
    out
}

/// Roots of `a z^2 + b z + c` with degenerate leading coefficients handled
/// (linear root, or none when only the constant survives). The larger-
/// magnitude root is computed from the formula and the other via Vieta.
fn solve_quadratic(a: Complex64, b: Complex64, cc: Complex64) -> Vec<Complex64> {
    let zero = c(0.0);
    if a == zero {
        if b == zero {
            return Vec::new();
        }
        return vec![-cc / b];
    }
    let disc = b * b - c(4.0) * a * cc;
    if disc == zero {
        return vec![-b / (c(2.0) * a), -b / (c(2.0) * a)];
    }
    let s = disc.sqrt();
    let (plus, minus) = (-b + s, -b - s);
    if plus.norm() >= minus.norm() {
        let r1 = plus / (c(2.0) * a);
        vec![r1, (cc / a) / r1]
    } else {
        let r2 = minus / (c(2.0) * a);
        vec![(cc / a) / r2, r2]
    }
}

/// Fixed points of the root-pair operator.
///
/// `z = 1` is the image of the targeted root (always superattracting);
/// `z = -1` and the conjugate pair are strange. Infinity is a strange fixed
/// point whenever the numerator degree exceeds the denominator's (its
/// multiplier is the conjugate of the ratio operator's value at z = 1). At
/// K in {-1, -3/2} the closed pair formula degenerates and the pair is
/// recovered by deflating the fixed-point polynomial by `(z-1)(z+1)`.
pub fn root_pair_fixed_points(k: &RatioParam) -> Vec<FixedPointReport> {
    let kk = k.value();
    let map = root_pair_map(k);
    let deriv = root_pair_map_derivative(k);
    let mut out = vec![
        report(&deriv, &map, SpherePoint::finite(1.0, 0.0), PointKind::RootImage),
        report(&deriv, &map, SpherePoint::finite(-1.0, 0.0), PointKind::Strange),
    ];
    let fallback = k.is(-1.0) || kk == c(-1.5);
    if fallback {
        // numeric route: roots of num(z) - z den(z) after removing +-1
        let fixed_poly = map.num().sub(&map.den().mul_x());
        let (q, r1) = fixed_poly.deflate(c(1.0));
        let (q, r2) = q.deflate(c(-1.0));
        debug_assert!(r1.norm() < 1e-9 && r2.norm() < 1e-9);
        let coeff = |i: usize| q.coeffs().get(i).copied().unwrap_or(c(0.0));
        for z in solve_quadratic(coeff(2), coeff(1), coeff(0)) {
            out.push(report(&deriv, &map, SpherePoint::from_complex(z), PointKind::Strange));
        }
    } else {
        let r = (c(2.0) * kk + c(3.0)).sqrt();
        let d = (c(2.0) * kk + c(3.0)) * (kk + c(1.0));
        let base = c(2.0) * kk * kk - c(3.0);
        let z2 = -(base + kk * (c(1.0) + c(2.0) * r)) / d;
        let z3 = -(base + kk * (c(1.0) - c(2.0) * r)) / d;
        out.push(report(&deriv, &map, SpherePoint::from_complex(z2), PointKind::Strange));
        out.push(report(&deriv, &map, SpherePoint::from_complex(z3), PointKind::Strange));
    }
    let dn = map.num().degree().unwrap_or(0);
    let dd = map.den().degree().unwrap_or(0);
    if dn > dd {
        out.push(report(&deriv, &map, SpherePoint::Infinity, PointKind::Strange));
    }
    out
}

/// Stability function of the strange fixed point z = 1 of the ratio
/// operator: `2 |(K+1)^2 / (K+2)|`. Undefined at K = -2, where the fixed
/// point is cancelled from the reduced map.
pub fn stability_at_one(k: Complex64) -> Option<f64> {
    if (k + c(2.0)).norm() < SNAP_RADIUS {
        return None;
    }
    let t = (k + c(1.0)) * (k + c(1.0)) / (k + c(2.0));
    Some(2.0 * t.norm())
}

/// Stability moduli of the strange pair of the ratio operator:
/// `2 |(7K + 11 -+ (2K+4) sqrt(3+2K)) / ((sqrt(3+2K) -+ 1)^2)|` under the
/// principal square root, upper signs pairing with the `+` fixed-point
/// branch. At K = 3 the fixed-point formula has a pole and the moduli are
/// evaluated directly as `|S'(1)|, |S'(-1)|`. A vanishing denominator (the
/// merged point at K = -1) reports as infinite.
pub fn stability_at_pair(k: Complex64) -> [f64; 2] {
    if (k - c(3.0)).norm() < SNAP_RADIUS {
        let p = RatioParam::new(c(3.0)).unwrap();
        let d = ratio_map_derivative(&p);
        let at = |z: f64| match d.apply(SpherePoint::finite(z, 0.0)).unwrap() {
            SpherePoint::Finite(v) => v.norm(),
            SpherePoint::Infinity => f64::INFINITY,
        };
        return [at(1.0), at(-1.0)];
    }
    let r = (c(3.0) + c(2.0) * k).sqrt();
    let head = c(7.0) * k + c(11.0);
    let tail = (c(2.0) * k + c(4.0)) * r;
    let upper = (head - tail) / ((r - c(1.0)) * (r - c(1.0)));
    let lower = (head + tail) / ((r + c(1.0)) * (r + c(1.0)));
    let sanitize = |v: f64| if v.is_nan() { f64::INFINITY } else { v };
    [sanitize(2.0 * upper.norm()), sanitize(2.0 * lower.norm())]
}

/// Componentwise `min(modulus, 1)` of the stability functions; values below
/// 1 delineate the attraction zones of the strange fixed points.
pub fn stability_min(k: Complex64) -> (Option<f64>, [f64; 2]) {
    let one = stability_at_one(k).map(|v| v.min(1.0));
    let [a, b] = stability_at_pair(k);
    (one, [a.min(1.0), b.min(1.0)])
}

/// Which critical point of the ratio operator seeds a parameter-space
/// render. `C1 = -K` (multiplicity two); `C2`/`C3` are the two branches of
/// the remaining quadratic under the principal square root.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CriticalChoice {
    C1,
    C2,
    C3,
}

/// Coefficients of the critical quadratic of the ratio operator:
/// `(K-1)(K-2) z^2 - 2K(K-1)(K+4) z + 3K^2(K+3)`.
fn ratio_critical_quadratic(kk: Complex64) -> (Complex64, Complex64, Complex64) {
    (
        (kk - c(1.0)) * (kk - c(2.0)),
        c(-2.0) * kk * (kk - c(1.0)) * (kk + c(4.0)),
        c(3.0) * kk * kk * (kk + c(3.0)),
    )
}

/// The requested free critical point of the ratio operator, or `None` where
/// it does not exist: the quadratic is constant at K = 1, linear at K = 2
/// (only `C3` survives, at 5/2), and cancelled entirely at the reduced
/// parameters K in {-1, -2}.
pub fn ratio_critical_seed(k: &RatioParam, choice: CriticalChoice) -> Option<Complex64> {
    let kk = k.value();
    if let CriticalChoice::C1 = choice {
        return Some(-kk);
    }
    if k.is(1.0) || k.is(-1.0) || k.is(-2.0) {
        return None;
    }
    let (qa, qb, qc) = ratio_critical_quadratic(kk);
    if k.is(2.0) {
        return match choice {
            CriticalChoice::C2 => None,
            CriticalChoice::C3 => Some(-qc / qb),
            CriticalChoice::C1 => unreachable!(),
        };
    }
    // labeled branches K ((K-1)(K+4) +- (K+1) sqrt((K-1)(K+2))) / ((K-1)(K-2)),
    // with the smaller-magnitude branch recovered via Vieta for stability
    let s = ((kk - c(1.0)) * (kk + c(2.0))).sqrt();
    let lead = (kk - c(1.0)) * (kk + c(4.0));
    let plus = lead + (kk + c(1.0)) * s;
    let minus = lead - (kk + c(1.0)) * s;
    let product = qc / qa;
    let (c2, c3) = if plus.norm() >= minus.norm() {
        let c2 = kk * plus / qa;
        (c2, product / c2)
    } else {
        let c3 = kk * minus / qa;
        (product / c3, c3)
    };
    match choice {
        CriticalChoice::C2 => Some(c2),
        CriticalChoice::C3 => Some(c3),
        CriticalChoice::C1 => unreachable!(),
    }
}

/// Critical points of the ratio operator: 0 and -K (each of multiplicity
/// two) plus the roots of the critical quadratic. At the reduced parameters
/// the quadratic factor cancels and only the double points remain.
pub fn ratio_map_critical_points(k: &RatioParam) -> CriticalPointSet {
    let kk = k.value();
    let mut points = vec![
        (SpherePoint::zero(), 2),
        (SpherePoint::from_complex(-kk), 2),
    ];
    for choice in [CriticalChoice::C2, CriticalChoice::C3] {
        if let Some(z) = ratio_critical_seed(k, choice) {
            points.push((SpherePoint::from_complex(z), 1));
        }
    }
    // K=2 yields the same linear root for C3 only; drop the duplicate None
    CriticalPointSet { points }
}

/// Critical points of the root-pair operator: 1 (multiplicity two) plus the
/// roots of `(K+1)^2 (K+2) z^2 + (6K^3+16K^2+6K-4) z + (5K^3+16K^2-11K+2)`.
pub fn root_pair_critical_points(k: &RatioParam) -> CriticalPointSet {
    let kk = k.value();
    let k2 = kk * kk;
    let k3 = k2 * kk;
    let qa = (kk + c(1.0)) * (kk + c(1.0)) * (kk + c(2.0));
    let qb = c(6.0) * k3 + c(16.0) * k2 + c(6.0) * kk - c(4.0);
    let qc = c(5.0) * k3 + c(16.0) * k2 - c(11.0) * kk + c(2.0);
    let mut points = vec![(SpherePoint::finite(1.0, 0.0), 2)];
    let roots = solve_quadratic(qa, qb, qc);
    if roots.len() == 2 && roots[0] == roots[1] {
        points.push((SpherePoint::from_complex(roots[0]), 2));
    } else {
        for z in roots {
            points.push((SpherePoint::from_complex(z), 1));
        }
    }
    CriticalPointSet { points }
}

/// The closed-form moduli `|(3K^2 + 11K +- (K^2+K-3) sqrt(2K+3) + 10) /
/// (K+1)^2|` for the strange pair of the root-pair operator. Provided as a
/// cross-check only: direct derivative evaluation is ground truth, and this
/// expression disagrees with it (see [`discrepancies`]). Undefined at
/// K = -1.
pub fn root_pair_strange_formula(k: Complex64) -> Option<[f64; 2]> {
    if (k + c(1.0)).norm() < SNAP_RADIUS {
        return None;
    }
    let r = (c(2.0) * k + c(3.0)).sqrt();
    let base = c(3.0) * k * k + c(11.0) * k + c(10.0);
    let tail = (k * k + k - c(3.0)) * r;
    let den = (k + c(1.0)) * (k + c(1.0));
    Some([((base + tail) / den).norm(), ((base - tail) / den).norm()])
}

/// A closed-form stability value that disagrees with direct derivative
/// evaluation beyond `1e-6` (relative).
#[derive(Debug, Clone, PartialEq)]
pub struct Discrepancy {
    pub context: String,
    pub closed_form: f64,
    pub direct: f64,
}

impl Discrepancy {
    pub fn line(&self, k: Complex64) -> String {
        format!(
            "discrepancy K={} {}: closed_form={:.6} direct={:.6}",
            format_complex(k),
            self.context,
            self.closed_form,
            self.direct
        )
    }
}

fn disagree(a: f64, b: f64) -> bool {
    (a - b).abs() > 1e-6 * a.abs().max(b.abs()).max(1.0)
}

/// Cross-check every closed-form stability value against direct evaluation
/// and collect the disagreements.
pub fn discrepancies(k: &RatioParam) -> Vec<Discrepancy> {
    let kk = k.value();
    let mut out = Vec::new();
    let sd = ratio_map_derivative(k);
    let s = ratio_map(k);
    let direct_at = |z: Complex64| multiplier(&sd, &s, SpherePoint::from_complex(z)).ok();

    if !(k.is(-1.0) || k.is(-2.0)) {
        if let (Some(formula), Some(direct)) = (stability_at_one(kk), direct_at(c(1.0))) {
            if disagree(formula, direct) {
                out.push(Discrepancy {
                    context: "stability(z=1) ratio operator".into(),
                    closed_form: formula,
                    direct,
                });
            }
        }
        // pair locations matching the branch order of stability_at_pair
        let pair_locs: Vec<Complex64> = if k.is(3.0) {
            vec![c(1.0), c(-1.0)]
        } else {
            let r = (c(3.0) + c(2.0) * kk).sqrt();
            vec![
                (c(3.0) + r) * kk / (kk - c(3.0)),
                (c(3.0) - r) * kk / (kk - c(3.0)),
            ]
        };
        let pair = stability_at_pair(kk);
        for (i, (f, z)) in pair.iter().zip(pair_locs).enumerate() {
            if let Some(d) = direct_at(z) {
                if disagree(*f, d) {
                    out.push(Discrepancy {
                        context: format!("stability(pair branch {}) ratio operator", i),
                        closed_form: *f,
                        direct: d,
                    });
                }
            }
        }
    }

    // |G'(-1)| against the factored closed form |(K-1)(K-2)|/2
    let gd = root_pair_map_derivative(k);
    let g = root_pair_map(k);
    let direct_m1 = multiplier(&gd, &g, SpherePoint::finite(-1.0, 0.0))
        .expect("-1 is fixed for every admissible K");
    let formula_m1 = ((kk - c(1.0)) * (kk - c(2.0))).norm() / 2.0;
    if disagree(formula_m1, direct_m1) {
        out.push(Discrepancy {
            context: "stability(z=-1) root-pair operator".into(),
            closed_form: formula_m1,
            direct: direct_m1,
        });
    }

    // the root-pair strange-pair closed form against direct evaluation
    if !(k.is(-1.0) || kk == c(-1.5)) {
        if let Some(formula) = root_pair_strange_formula(kk) {
            let reports = root_pair_fixed_points(k);
            // reports: 1, -1, pair..., maybe infinity
            let direct: Vec<f64> = reports
                .iter()
                .skip(2)
                .filter(|r| !r.location.is_infinity())
                .map(|r| r.multiplier_modulus)
                .collect();
            for (i, (f, d)) in formula.iter().zip(direct.iter()).enumerate() {
                if disagree(*f, *d) {
                    out.push(Discrepancy {
                        context: format!("stability(pair branch {}) root-pair operator", i),
                        closed_form: *f,
                        direct: *d,
                    });
                }
            }
        }
    }
    out
}
