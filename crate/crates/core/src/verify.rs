//! Independent numerical oracles.
//!
//! Every closed form in this crate is checked against a route that does not
//! share its algebra: the scaling identity against direct iteration of the
//! transformed polynomial, the conjugate operator against the raw method
//! applied to a two-root polynomial, and the reference stability constants
//! against direct derivative evaluation. Sampling is seeded so every run is
//! reproducible; [`DEFAULT_SEED`] is the documented default.

use crate::analysis::{
    multiplier, ratio_map_fixed_points, root_pair_fixed_points, root_pair_strange_formula,
    PointKind,
};
use crate::operators::{
    modified_chebyshev_step, ratio_map, ratio_map_derivative, two_root_polynomial, AffineMap,
    MoebiusMap, MultiplicityPair, RatioParam,
};
use crate::poly::Polynomial;
use crate::sphere::{format_complex, rel_error, SpherePoint};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Fixed default seed for oracle sampling; runs are byte-stable.
pub const DEFAULT_SEED: u64 = 42;

/// Outcome of one oracle run.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleReport {
    pub name: String,
    pub samples: u32,
    pub max_rel_error: f64,
    pub pass: bool,
    pub notes: String,
}

impl OracleReport {
    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{:e},{},{}",
            self.name, self.samples, self.max_rel_error, self.pass, self.notes
        )
    }
}

/// Names of the reference-value checks that are expected to fail: the
/// reference text's printed values disagree with direct evaluation there,
/// and the suite pins the disagreement so it cannot drift silently.
pub fn expected_failures() -> &'static [&'static str] {
    &["K1_z1", "K1_z2", "K1_z3", "K1_G_z2", "K1_G_z3"]
}

/// True when every oracle behaves as expected: non-erratum rows pass and
/// the erratum rows fail with their recorded disagreements.
pub fn suite_consistent(reports: &[OracleReport]) -> bool {
    reports.iter().all(|r| {
        let expected_fail = expected_failures().contains(&r.name.as_str());
        r.pass != expected_fail
    })
}

fn random_complex(rng: &mut ChaCha8Rng, radius: f64) -> Complex64 {
    Complex64::new(
        rng.random_range(-radius..radius),
        rng.random_range(-radius..radius),
    )
}

/// Four-decimal rendering for report names.
fn short(z: Complex64) -> String {
    format!("{:.4}{:+.4}i", z.re, z.im)
}

/// Scaling identity: for `g = f . T` the operator of `g` is the conjugate
/// of the operator of `f` by `T`. Compares one step of each route on random
/// samples from a disc of radius 10 (resampling past poles).
pub fn check_scaling(
    f: &Polynomial,
    m: u32,
    t: &AffineMap,
    n_samples: u32,
    seed: u64,
) -> OracleReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = f.compose_affine(t.alpha, t.beta);
    let mut max_err = 0.0f64;
    let mut done = 0;
    let mut attempts = 0;
    while done < n_samples && attempts < 1000 * n_samples {
        attempts += 1;
        let z = random_complex(&mut rng, 10.0);
        let (Ok(step_g), Ok(step_f)) = (
            modified_chebyshev_step(&g, m, t.inverse_finite(z)),
            modified_chebyshev_step(f, m, z),
        ) else {
            continue;
        };
        max_err = max_err.max(rel_error(step_g, t.inverse(step_f)));
        done += 1;
    }
    OracleReport {
        name: format!(
            "scaling m={} T=({})z+({})",
            m,
            format_complex(t.alpha),
            format_complex(t.beta)
        ),
        samples: done,
        max_rel_error: max_err,
        pass: done == n_samples && max_err < 1e-8,
        notes: "operator conjugates through affine changes of variable".into(),
    }
}

/// Conjugacy of the raw method with the ratio operator: for
/// `p = (z-a)^m (z-b)^n` and `M = (z-a)/(z-b)`, one step of the method
/// conjugated by `M` matches the ratio operator at `K = m/n` on random
/// sphere points.
pub fn check_conjugacy(
    a: Complex64,
    b: Complex64,
    pair: MultiplicityPair,
    n_samples: u32,
    seed: u64,
) -> OracleReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = two_root_polynomial(a, b, pair.m, pair.n);
    let k = RatioParam::new(pair.ratio()).expect("positive ratio");
    let s = ratio_map(&k);
    let mob = MoebiusMap::new(a, b);
    let mut max_err = 0.0f64;
    let mut done = 0;
    let mut attempts = 0;
    while done < n_samples && attempts < 1000 * n_samples {
        attempts += 1;
        let mut u = random_complex(&mut rng, 4.0);
        if attempts % 4 == 0 && u.norm() > 1e-3 {
            u = u.inv(); // cover the far chart as well
        }
        if (u - Complex64::new(1.0, 0.0)).norm() < 1e-6 {
            continue;
        }
        let z = match mob.inverse(SpherePoint::Finite(u)) {
            SpherePoint::Finite(z) => z,
            SpherePoint::Infinity => continue,
        };
        let Ok(stepped) = modified_chebyshev_step(&p, pair.m, z) else {
            continue;
        };
        let lhs = mob.apply(stepped);
        let rhs = s.apply(SpherePoint::Finite(u)).expect("reduced map");
        max_err = max_err.max(rel_error(lhs, rhs));
        done += 1;
    }
    OracleReport {
        name: format!(
            "conjugacy m={} n={} a={} b={}",
            pair.m,
            pair.n,
            short(a),
            short(b)
        ),
        samples: done,
        max_rel_error: max_err,
        pass: done == n_samples && max_err < 1e-8,
        notes: "method on a two-root polynomial matches the ratio operator".into(),
    }
}

/// The root-pair operator is the ratio operator pulled back through the
/// Möbius map with roots 1 and -1.
pub fn check_pair_conjugate(k: &RatioParam, n_samples: u32, seed: u64) -> OracleReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let report = pair_conjugate_max_err(k, n_samples, &mut rng);
    OracleReport {
        name: format!("pair_conjugacy K={}", format_complex(k.value())),
        samples: report.1,
        max_rel_error: report.0,
        pass: report.1 == n_samples && report.0 < 1e-8,
        notes: "root-pair operator equals the conjugated ratio operator".into(),
    }
}

fn pair_conjugate_max_err(k: &RatioParam, n_samples: u32, rng: &mut ChaCha8Rng) -> (f64, u32) {
    let s = ratio_map(k);
    let g = crate::operators::root_pair_map(k);
    let mob = MoebiusMap::new(Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0));
    let mut max_err = 0.0f64;
    let mut done = 0;
    let mut attempts = 0;
    while done < n_samples && attempts < 1000 * n_samples {
        attempts += 1;
        let u = SpherePoint::Finite(random_complex(rng, 4.0));
        let (Ok(su), Ok(gu)) = (s.apply(mob.apply(u)), g.apply(u)) else {
            continue;
        };
        max_err = max_err.max(rel_error(mob.inverse(su), gu));
        done += 1;
    }
    (max_err, done)
}

/// Aggregate pair-conjugacy check over random admissible parameters.
pub fn check_pair_conjugate_random(
    n_params: u32,
    n_samples: u32,
    seed: u64,
) -> OracleReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_err = 0.0f64;
    let mut total = 0;
    for _ in 0..n_params {
        let k = admissible_param(&mut rng, 3.0);
        let (err, done) = pair_conjugate_max_err(&k, n_samples, &mut rng);
        max_err = max_err.max(err);
        total += done;
    }
    OracleReport {
        name: format!("pair_conjugacy random{}", n_params),
        samples: total,
        max_rel_error: max_err,
        pass: total == n_params * n_samples && max_err < 1e-8,
        notes: "aggregate over random parameters".into(),
    }
}

/// Random parameter bounded away from the degenerate and branch-point
/// values, so closed forms and reductions are exercised on their generic
/// branches.
pub fn admissible_param(rng: &mut ChaCha8Rng, radius: f64) -> RatioParam {
    loop {
        let k = random_complex(rng, radius);
        let far = |c: Complex64| (k - c).norm() > 1e-3;
        if far(Complex64::new(0.0, 0.0))
            && far(Complex64::new(-1.0, 0.0))
            && far(Complex64::new(-2.0, 0.0))
            && far(Complex64::new(-1.5, 0.0))
            && far(Complex64::new(3.0, 0.0))
        {
            return RatioParam::new(k).unwrap();
        }
    }
}

/// Multipliers are conjugacy invariants: the strange fixed points of the
/// ratio operator and their images under the inverse Möbius map in the
/// root-pair operator carry identical multiplier moduli.
pub fn check_multiplier_invariance(n_params: u32, seed: u64) -> OracleReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mob = MoebiusMap::new(Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0));
    let mut max_err = 0.0f64;
    let mut matched = 0;
    let mut ok = true;
    for _ in 0..n_params {
        let k = admissible_param(&mut rng, 3.0);
        let s_reports = ratio_map_fixed_points(&k);
        let g_reports = root_pair_fixed_points(&k);
        for sr in s_reports.iter().filter(|r| r.kind == PointKind::Strange) {
            let image = mob.inverse(sr.location);
            let partner = g_reports
                .iter()
                .min_by(|x, y| {
                    rel_error(x.location, image)
                        .partial_cmp(&rel_error(y.location, image))
                        .unwrap()
                })
                .expect("nonempty report");
            if rel_error(partner.location, image) > 1e-6 {
                ok = false;
                continue;
            }
            let err = (sr.multiplier_modulus - partner.multiplier_modulus).abs()
                / sr.multiplier_modulus.max(1.0);
            max_err = max_err.max(err);
            matched += 1;
        }
    }
    OracleReport {
        name: "multiplier_invariance".into(),
        samples: matched,
        max_rel_error: max_err,
        pass: ok && max_err < 1e-8,
        notes: "strange-point multipliers agree across the conjugacy".into(),
    }
}

fn reference_row(name: &str, reference: f64, computed: f64, detail: &str) -> OracleReport {
    let delta = (computed - reference).abs();
    OracleReport {
        name: name.to_string(),
        samples: 1,
        max_rel_error: delta,
        pass: delta < 5e-4,
        notes: format!("reference {reference:.6}; computed {computed:.6}; {detail}"),
    }
}

/// Compare the family's reference stability constants against direct
/// derivative evaluation. Seven rows reproduce the printed values; the five
/// rows listed by [`expected_failures`] document printed values that
/// disagree with direct evaluation (the independently computed values are
/// in the notes).
pub fn check_reference_values() -> Vec<OracleReport> {
    let mut out = Vec::new();
    let strange_moduli = |kv: f64| -> Vec<f64> {
        let k = RatioParam::from_real(kv).unwrap();
        ratio_map_fixed_points(&k)
            .into_iter()
            .filter(|r| r.kind == PointKind::Strange)
            .map(|r| r.multiplier_modulus)
            .collect()
    };

    let m = strange_moduli(-2.0);
    out.push(reference_row("Km2_z2", 3.0, m[0], "strange pair at K=-2"));
    out.push(reference_row("Km2_z3", 3.0, m[1], "strange pair at K=-2"));

    let m = strange_moduli(2.0);
    out.push(reference_row("K2_z1", 4.5, m[0], "derivative at z=1, K=2"));
    out.push(reference_row("K2_z2", 2.8311, m[1], "strange pair at K=2"));
    out.push(reference_row("K2_z3", 6.9467, m[2], "strange pair at K=2"));

    let m = strange_moduli(3.0);
    out.push(reference_row("K3_z1", 6.4, m[0], "derivative at z=1, K=3"));
    out.push(reference_row("K3_zm1", 7.75, m[1], "derivative at z=-1, K=3"));

    // K=1: the printed values disagree with direct evaluation of the
    // derivative (8/3 at z=1 and 6 at the pair); kept as expected failures.
    let m = strange_moduli(1.0);
    out.push(reference_row(
        "K1_z1",
        1.5,
        m[0],
        "direct evaluation gives 8/3",
    ));
    out.push(reference_row(
        "K1_z2",
        0.1352,
        m[1],
        "direct evaluation gives 6",
    ));
    out.push(reference_row(
        "K1_z3",
        0.0274,
        m[2],
        "direct evaluation gives 6",
    ));

    // the closed form for the root-pair strange multipliers disagrees with
    // direct evaluation (and with conjugacy invariance) at K=1
    let k1 = RatioParam::from_real(1.0).unwrap();
    let formula = root_pair_strange_formula(Complex64::new(1.0, 0.0)).unwrap();
    let direct: Vec<f64> = root_pair_fixed_points(&k1)
        .into_iter()
        .filter(|r| r.kind == PointKind::Strange && !r.location.is_infinity())
        .skip(1) // skip -1
        .map(|r| r.multiplier_modulus)
        .collect();
    out.push(reference_row(
        "K1_G_z2",
        formula[0],
        direct[0],
        "closed form disagrees; direct and conjugacy give 6",
    ));
    out.push(reference_row(
        "K1_G_z3",
        formula[1],
        direct[1],
        "closed form disagrees; direct and conjugacy give 6",
    ));
    out
}

/// Check that the derivative degree rule at infinity matches the conjugate
/// value: the ratio operator's multiplier at infinity equals
/// `|(K-1)(K-2)|/2`, which is also the root-pair operator's value at -1.
pub fn check_infinity_multiplier(n_params: u32, seed: u64) -> OracleReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_err = 0.0f64;
    for _ in 0..n_params {
        let k = admissible_param(&mut rng, 3.0);
        let kk = k.value();
        let at_inf = multiplier(
            &ratio_map_derivative(&k),
            &ratio_map(&k),
            SpherePoint::Infinity,
        )
        .expect("infinity fixed for generic K");
        let closed = ((kk - Complex64::new(1.0, 0.0)) * (kk - Complex64::new(2.0, 0.0))).norm()
            / 2.0;
        max_err = max_err.max((at_inf - closed).abs() / closed.max(1.0));
    }
    OracleReport {
        name: "infinity_multiplier".into(),
        samples: n_params,
        max_rel_error: max_err,
        pass: max_err < 1e-10,
        notes: "chart rule at infinity equals |(K-1)(K-2)|/2".into(),
    }
}

/// The full oracle suite with reproducible sub-seeds.
pub fn run_all(seed: u64) -> Vec<OracleReport> {
    let mut out = Vec::new();
    let z = |re: f64, im: f64| Complex64::new(re, im);

    // scaling oracles: identity plus three nontrivial triples
    let f1 = two_root_polynomial(z(1.0, 0.0), z(-2.0, 0.0), 3, 1);
    out.push(check_scaling(&f1, 3, &AffineMap::identity(), 100, seed));
    out.push(check_scaling(
        &f1,
        3,
        &AffineMap::new(z(2.0, 0.0), z(1.0, 0.0)),
        100,
        seed.wrapping_add(1),
    ));
    let f2 = two_root_polynomial(z(0.0, 1.0), z(0.0, -1.0), 2, 1);
    out.push(check_scaling(
        &f2,
        2,
        &AffineMap::new(z(1.0, 1.0), z(-3.0, 0.0)),
        100,
        seed.wrapping_add(2),
    ));
    let f3 = two_root_polynomial(z(2.0, 0.0), z(-1.0, -1.0), 2, 3);
    out.push(check_scaling(
        &f3,
        2,
        &AffineMap::new(z(0.5, -0.25), z(1.0, 2.0)),
        100,
        seed.wrapping_add(3),
    ));

    // conjugacy oracles over the required multiplicity pairs
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(10));
    for (i, (m, n)) in [(2, 1), (4, 2), (3, 1), (6, 2)].into_iter().enumerate() {
        let (a, b) = loop {
            let a = random_complex(&mut rng, 2.0);
            let b = random_complex(&mut rng, 2.0);
            if (a - b).norm() > 0.5 {
                break (a, b);
            }
        };
        out.push(check_conjugacy(
            a,
            b,
            MultiplicityPair::new(m, n),
            100,
            seed.wrapping_add(20 + i as u64),
        ));
    }

    // root-pair conjugacy: pinned parameters plus a random sweep
    for (i, kv) in [z(1.0, 0.0), z(2.0, 0.0), z(0.3, -0.7)].into_iter().enumerate() {
        let k = RatioParam::new(kv).unwrap();
        out.push(check_pair_conjugate(&k, 200, seed.wrapping_add(30 + i as u64)));
    }
    out.push(check_pair_conjugate_random(20, 50, seed.wrapping_add(40)));

    out.push(check_multiplier_invariance(20, seed.wrapping_add(50)));
    out.push(check_infinity_multiplier(50, seed.wrapping_add(60)));
    out.extend(check_reference_values());
    out
}

/// Aligned text table of oracle outcomes.
pub fn render_table(reports: &[OracleReport]) -> String {
    let name_w = reports.iter().map(|r| r.name.len()).max().unwrap_or(4).max(4);
    let mut out = format!(
        "{:<name_w$}  {:>7}  {:>12}  {:<15}  notes\n",
        "name", "samples", "max_err", "status"
    );
    for r in reports {
        let status = match (r.pass, expected_failures().contains(&r.name.as_str())) {
            (true, _) => "pass",
            (false, true) => "FAIL (expected)",
            (false, false) => "FAIL",
        };
        out.push_str(&format!(
            "{:<name_w$}  {:>7}  {:>12.3e}  {:<15}  {}\n",
            r.name, r.samples, r.max_rel_error, status, r.notes
        ));
    }
    out
}

/// CSV rendering: `name,samples,max_rel_error,pass,notes`.
pub fn render_csv(reports: &[OracleReport]) -> String {
    let mut out = String::from("name,samples,max_rel_error,pass,notes\n");
    for r in reports {
        out.push_str(&r.csv_line());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scaling_identity_is_exact() {
        let f = two_root_polynomial(
            Complex64::new(1.0, 0.0),
            Complex64::new(-2.0, 0.0),
            3,
            1,
        );
        let r = check_scaling(&f, 3, &AffineMap::identity(), 50, DEFAULT_SEED);
        assert!(r.pass, "{:?}", r);
        assert!(r.max_rel_error < 1e-14);
    }

    #[test]
    fn conjugacy_holds_for_k_one() {
        // equal multiplicities: a degenerate-looking but admissible case
        let r = check_conjugacy(
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
            MultiplicityPair::new(2, 2),
            100,
            DEFAULT_SEED,
        );
        assert!(r.pass, "{:?}", r);
    }

    #[test]
    fn reference_suite_is_internally_consistent() {
        let reports = check_reference_values();
        assert_eq!(reports.len(), 12);
        assert!(suite_consistent(&reports), "{:#?}", reports);
        // the erratum set is exactly the five expected failures
        let failing: Vec<&str> = reports
            .iter()
            .filter(|r| !r.pass)
            .map(|r| r.name.as_str())
            .collect();
        assert_eq!(failing, expected_failures());
    }

    #[test]
    fn multiplier_invariance_small_sweep() {
        let r = check_multiplier_invariance(5, DEFAULT_SEED);
        assert!(r.pass, "{:?}", r);
    }
}
