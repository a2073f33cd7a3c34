//! Escape-time iteration of a single seed under a rational map.
//!
//! Orbits are pure functions of their inputs, so callers may fan pixels out
//! across threads freely; identical inputs produce identical outcomes
//! bit for bit.

use crate::error::Error;
use crate::rational::RationalMap;
use crate::sphere::SpherePoint;
use num_complex::Complex64;

/// Iteration budget and proximity tolerances.
///
/// `tol` is the capture radius around finite attractors; `inf_threshold` is
/// the modulus beyond which convergence to infinity is declared (default
/// `1/tol`, the symmetric treatment of the conjugate roots at 0 and
/// infinity).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitConfig {
    pub max_iters: u32,
    pub tol: f64,
    pub inf_threshold: f64,
}

impl OrbitConfig {
    pub fn new(max_iters: u32, tol: f64) -> Self {
        assert!(tol > 0.0 && tol < 1.0, "tolerance must be in (0, 1)");
        OrbitConfig {
            max_iters,
            tol,
            inf_threshold: 1.0 / tol,
        }
    }

    pub fn with_inf_threshold(mut self, inf_threshold: f64) -> Self {
        assert!(inf_threshold > 1.0, "escape threshold must exceed 1");
        self.inf_threshold = inf_threshold;
        self
    }
}

/// Terminal classification of an orbit over the root attractors at 0 and
/// infinity plus an indexed list of strange attractors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrbitStatus {
    ToZero,
    ToInfinity,
    ToStrange(usize),
    NoConvergence,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitOutcome {
    pub status: OrbitStatus,
    pub iters: u32,
    pub final_point: SpherePoint,
}

/// Terminal classification of an orbit over an explicit target list.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TargetOutcome {
    /// Index into the target list, or `None` when the budget ran out.
    pub target: Option<usize>,
    pub iters: u32,
    pub final_point: SpherePoint,
}

fn near_target(z: SpherePoint, target: SpherePoint, cfg: &OrbitConfig) -> bool {
    match (z, target) {
        (SpherePoint::Finite(z), SpherePoint::Finite(t)) => (z - t).norm() < cfg.tol,
        (SpherePoint::Finite(z), SpherePoint::Infinity) => z.norm() > cfg.inf_threshold,
        (SpherePoint::Infinity, SpherePoint::Infinity) => true,
        (SpherePoint::Infinity, SpherePoint::Finite(_)) => false,
    }
}

/// Iterate `map` from `seed` until the orbit lands within tolerance of one
/// of `targets` or the budget runs out. The seed itself is tested before the
/// first application, so a seed already inside a capture radius reports
/// zero iterations.
///
/// An indeterminate evaluation (exact 0/0, possible only for unreduced
/// maps) resolves to the nearest finite target within `10 * tol`, else to
/// no convergence.
pub fn iterate_to_targets(
    map: &RationalMap,
    seed: SpherePoint,
    cfg: &OrbitConfig,
    targets: &[SpherePoint],
) -> TargetOutcome {
    let mut z = seed;
    for it in 0..=cfg.max_iters {
        if let Some(i) = targets.iter().position(|&t| near_target(z, t, cfg)) {
            return TargetOutcome {
                target: Some(i),
                iters: it,
                final_point: z,
            };
        }
        if it == cfg.max_iters {
            break;
        }
        z = match map.apply(z) {
            Ok(w) => w,
            Err(Error::EvalIndeterminate(at)) => {
                return resolve_indeterminate(at, cfg, targets);
            }
            Err(_) => unreachable!("apply only fails with EvalIndeterminate"),
        };
    }
    TargetOutcome {
        target: None,
        iters: cfg.max_iters,
        final_point: z,
    }
}

fn resolve_indeterminate(
    at: Complex64,
    cfg: &OrbitConfig,
    targets: &[SpherePoint],
) -> TargetOutcome {
    let mut best: Option<(usize, f64)> = None;
    for (i, t) in targets.iter().enumerate() {
        if let SpherePoint::Finite(t) = t {
            let d = (at - t).norm();
            if d < 10.0 * cfg.tol && best.map_or(true, |(_, bd)| d < bd) {
                best = Some((i, d));
            }
        }
    }
    match best {
        Some((i, _)) => TargetOutcome {
            target: Some(i),
            iters: 0,
            final_point: SpherePoint::Finite(at),
        },
        None => TargetOutcome {
            target: None,
            iters: cfg.max_iters,
            final_point: SpherePoint::Finite(at),
        },
    }
}

/// Classify the orbit of `seed` against the root attractors 0 / infinity
/// and the given strange attractors (the precomputed attracting strange
/// fixed points of `map`, possibly empty).
pub fn iterate_orbit(
    map: &RationalMap,
    seed: SpherePoint,
    cfg: &OrbitConfig,
    strange_attractors: &[SpherePoint],
) -> OrbitOutcome {
    let mut targets = Vec::with_capacity(2 + strange_attractors.len());
    targets.push(SpherePoint::zero());
    targets.push(SpherePoint::Infinity);
    targets.extend_from_slice(strange_attractors);
    let out = iterate_to_targets(map, seed, cfg, &targets);
    let status = match out.target {
        Some(0) => OrbitStatus::ToZero,
        Some(1) => OrbitStatus::ToInfinity,
        Some(i) => OrbitStatus::ToStrange(i - 2),
        None => OrbitStatus::NoConvergence,
    };
    OrbitOutcome {
        status,
        iters: out.iters,
        final_point: out.final_point,
    }
}

/// The first `n + 1` orbit points including the seed, with no convergence
/// testing. An indeterminate evaluation repeats the current point (the
/// method has hit an exact multiple root).
pub fn orbit_trace(map: &RationalMap, seed: SpherePoint, n: u32) -> Vec<SpherePoint> {
    assert!(n <= 1_000_000, "trace length capped at 1e6");
    let mut out = Vec::with_capacity(n as usize + 1);
    let mut z = seed;
    out.push(z);
    for _ in 0..n {
        z = map.apply(z).unwrap_or(z);
        out.push(z);
    }
    out
}
