//! Property-based checks of the model algebra and the fitting invariants.

use plm_core::*;
use proptest::prelude::*;

fn ghz(v: f64) -> FrequencyGhz {
    FrequencyGhz::new(v).unwrap()
}

fn meters(v: f64) -> DistanceM {
    DistanceM::new(v).unwrap()
}

fn sample(f: f64, d: f64, pl: f64) -> PathLossSample {
    PathLossSample::new(
        Scenario::UmiStreetCanyon,
        Environment::Nlos,
        ghz(f),
        meters(d),
        pl,
    )
    .unwrap()
}

/// The 1 GHz free-space anchor at full precision; plugging it into the
/// alpha-beta-gamma model with gamma = 2 reproduces the close-in model.
fn beta_star() -> f64 {
    fspl_1m(ghz(1.0))
}

proptest! {
    // ---- model algebra ----------------------------------------------------

    #[test]
    fn anchor_at_one_meter_equals_intercept(
        f in 1.0..120.0f64,
        alpha in -3.0..8.0f64,
        beta in -50.0..150.0f64,
        n in -3.0..8.0f64,
        gamma in -3.0..6.0f64,
        b in -1.0..1.0f64,
        f0 in 1.0..120.0f64,
    ) {
        let fq = ghz(f);
        let one = meters(1.0);
        let models = [
            ModelParams::Fi(FiParams { alpha, beta_db: beta }),
            ModelParams::Ci(CiParams { n }),
            ModelParams::Abg(AbgParams { alpha, beta_db: beta, gamma }),
            ModelParams::Cif(CifParams { n, b, f0: ghz(f0) }),
        ];
        for m in models {
            prop_assert_eq!(m.path_loss_db(fq, one), m.intercept_db(fq));
        }
    }

    #[test]
    fn positive_slope_means_strictly_increasing_loss(
        f in 1.0..120.0f64,
        d1 in 1.0..500.0f64,
        factor in 1.01..10.0f64,
        slope in 0.01..8.0f64,
        beta in -50.0..150.0f64,
        b in -0.5..0.5f64,
        f0 in 20.0..80.0f64,
    ) {
        let fq = ghz(f);
        let lo = meters(d1);
        let hi = meters(d1 * factor);
        let models = [
            ModelParams::Fi(FiParams { alpha: slope, beta_db: beta }),
            ModelParams::Ci(CiParams { n: slope }),
            ModelParams::Abg(AbgParams { alpha: slope, beta_db: beta, gamma: 2.0 }),
            ModelParams::Cif(CifParams { n: slope, b, f0: ghz(f0) }),
        ];
        for m in models {
            // the frequency-weighted exponent can flip sign; the property
            // only claims monotonicity while the effective slope is positive
            prop_assume!(m.distance_slope(fq) > 1e-3);
            prop_assert!(m.path_loss_db(fq, hi) > m.path_loss_db(fq, lo));
        }
    }

    #[test]
    fn abg_with_free_space_coefficients_matches_ci(
        n in -2.0..8.0f64,
        f in 1.0..120.0f64,
        d in 1.0..1000.0f64,
    ) {
        let abg = AbgParams { alpha: n, beta_db: beta_star(), gamma: 2.0 };
        let ci = CiParams { n };
        let delta = eval_abg(abg, ghz(f), meters(d)) - eval_ci(ci, ghz(f), meters(d));
        prop_assert!(delta.abs() < 1e-9, "delta = {delta}");
    }

    #[test]
    fn cif_with_zero_b_is_bitwise_ci(
        n in -2.0..8.0f64,
        f in 1.0..120.0f64,
        f0 in 1.0..120.0f64,
        d in 1.0..1000.0f64,
    ) {
        let cif = CifParams { n, b: 0.0, f0: ghz(f0) };
        let ci = CiParams { n };
        prop_assert_eq!(
            eval_cif(cif, ghz(f), meters(d)),
            eval_ci(ci, ghz(f), meters(d))
        );
    }

    #[test]
    fn close_in_loss_grows_ten_n_per_decade(
        n in -2.0..8.0f64,
        f in 1.0..120.0f64,
        d in 1.0..100.0f64,
    ) {
        let ci = CiParams { n };
        let step = eval_ci(ci, ghz(f), meters(10.0 * d)) - eval_ci(ci, ghz(f), meters(d));
        prop_assert!((step - 10.0 * n).abs() < 1e-9, "step = {step}");
    }

    #[test]
    fn reference_frequency_is_an_integer_near_the_weighted_mean(
        freqs in prop::collection::vec((1.0..120.0f64, 1usize..200), 1..6)
    ) {
        let plan: Vec<(FrequencyGhz, usize)> =
            freqs.iter().map(|&(f, c)| (ghz(f), c)).collect();
        let f0 = compute_f0(&plan).unwrap().ghz();
        prop_assert_eq!(f0.fract(), 0.0, "f0 = {} is not an integer", f0);
        let total: usize = freqs.iter().map(|&(_, c)| c).sum();
        let mean: f64 = freqs.iter().map(|&(f, c)| f * c as f64).sum::<f64>() / total as f64;
        prop_assert!((f0 - mean).abs() <= 0.5 + 1e-9);
    }

    // ---- dataset ----------------------------------------------------------

    #[test]
    fn filter_partitions_the_dataset(
        rows in prop::collection::vec((any::<bool>(), 1.0..120.0f64, 1.0..500.0f64, 1.0..200.0f64), 0..40)
    ) {
        let samples: Vec<PathLossSample> = rows
            .iter()
            .map(|&(nlos, f, d, pl)| {
                PathLossSample::new(
                    Scenario::UmiStreetCanyon,
                    if nlos { Environment::Nlos } else { Environment::Los },
                    ghz(f),
                    meters(d),
                    pl,
                )
                .unwrap()
            })
            .collect();
        let ds = Dataset::new(samples, "prop");
        let yes = ds.filter(|s| s.environment == Environment::Nlos);
        let no = ds.filter(|s| s.environment != Environment::Nlos);
        prop_assert_eq!(yes.len() + no.len(), ds.len());
    }

    // ---- fitting ----------------------------------------------------------

    #[test]
    fn intercept_models_absorb_constant_offsets(
        dists in prop::collection::vec(1.0..500.0f64, 4..20),
        offset in -40.0..40.0f64,
    ) {
        // spread out the abscissa so the fits stay well conditioned
        prop_assume!(dists.iter().cloned().fold(f64::MIN, f64::max)
            / dists.iter().cloned().fold(f64::MAX, f64::min) > 1.5);
        let base: Vec<PathLossSample> = dists
            .iter()
            .enumerate()
            .map(|(i, &d)| {
                let f = if i % 2 == 0 { 28.0 } else { 73.5 };
                sample(f, d, 60.0 + 20.0 * (i as f64 % 5.0))
            })
            .collect();
        let shifted: Vec<PathLossSample> = base
            .iter()
            .cloned()
            .map(|mut s| {
                s.path_loss_db += offset;
                s
            })
            .collect();

        let (fi_a, fi_b) = match (fit_fi(&base), fit_fi(&shifted)) {
            (Ok(a), Ok(b)) => (a, b),
            _ => return Err(TestCaseError::reject("singular FI design")),
        };
        match (fi_a.params, fi_b.params) {
            (ModelParams::Fi(a), ModelParams::Fi(b)) => {
                prop_assert!((b.beta_db - a.beta_db - offset).abs() < 1e-6);
                prop_assert!((b.alpha - a.alpha).abs() < 1e-6);
            }
            _ => unreachable!(),
        }

        let (abg_a, abg_b) = match (fit_abg(&base), fit_abg(&shifted)) {
            (Ok(a), Ok(b)) => (a, b),
            _ => return Err(TestCaseError::reject("singular ABG design")),
        };
        match (abg_a.params, abg_b.params) {
            (ModelParams::Abg(a), ModelParams::Abg(b)) => {
                prop_assert!((b.beta_db - a.beta_db - offset).abs() < 1e-6);
                prop_assert!((b.alpha - a.alpha).abs() < 1e-6);
                prop_assert!((b.gamma - a.gamma).abs() < 1e-6);
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn explicit_f0_equal_to_auto_is_bit_identical(
        rows in prop::collection::vec((1.0..500.0f64, 1.0..200.0f64), 4..24)
    ) {
        let samples: Vec<PathLossSample> = rows
            .iter()
            .enumerate()
            .map(|(i, &(d, pl))| sample(if i % 2 == 0 { 28.0 } else { 73.5 }, d, pl))
            .collect();
        let ds = Dataset::new(samples, "prop");
        let auto = match fit_cif(&ds.samples, F0Mode::Auto) {
            Ok(fit) => fit,
            Err(_) => return Err(TestCaseError::reject("unfittable geometry")),
        };
        let f0 = auto.f0_ghz.expect("frequency-weighted fit records f0");
        let explicit = fit_cif(&ds.samples, F0Mode::Explicit(f0)).unwrap();
        prop_assert_eq!(auto, explicit);
    }

    #[test]
    fn richer_families_never_fit_worse_single_frequency(
        rows in prop::collection::vec((1.0..500.0f64, 1.0..200.0f64), 3..24)
    ) {
        let samples: Vec<PathLossSample> =
            rows.iter().map(|&(d, pl)| sample(28.0, d, pl)).collect();
        let ci = match fit_ci(&samples) {
            Ok(fit) => fit,
            Err(_) => return Err(TestCaseError::reject("degenerate geometry")),
        };
        // the floating intercept minimizes over a superset of the anchored
        // line, as long as its design is nonsingular
        if let Ok(fi) = fit_fi(&samples) {
            prop_assert!(fi.sigma_db <= ci.sigma_db + 1e-9);
        }
        // single-frequency input reverts to the close-in fit exactly
        let cif = fit_cif(&samples, F0Mode::Auto).unwrap();
        prop_assert_eq!(cif.sigma_db, ci.sigma_db);
    }

    #[test]
    fn richer_families_never_fit_worse_multi_frequency(
        rows in prop::collection::vec((1.0..500.0f64, 1.0..200.0f64), 4..24)
    ) {
        let samples: Vec<PathLossSample> = rows
            .iter()
            .enumerate()
            .map(|(i, &(d, pl))| sample(if i % 2 == 0 { 28.0 } else { 73.5 }, d, pl))
            .collect();
        let ci = match fit_ci(&samples) {
            Ok(fit) => fit,
            Err(_) => return Err(TestCaseError::reject("degenerate geometry")),
        };
        if let Ok(abg) = fit_abg(&samples) {
            prop_assert!(abg.sigma_db <= ci.sigma_db + 1e-9);
        }
        if let Ok(cif) = fit_cif(&samples, F0Mode::Auto) {
            prop_assert!(cif.sigma_db <= ci.sigma_db + 1e-9);
        }
    }

    // ---- range inversion --------------------------------------------------

    #[test]
    fn range_inversion_round_trips(
        f in 1.0..120.0f64,
        n in 0.5..8.0f64,
        alpha in 0.5..8.0f64,
        beta in 10.0..120.0f64,
        margin in 0.0..100.0f64,
    ) {
        let models = [
            ModelParams::Fi(FiParams { alpha, beta_db: beta }),
            ModelParams::Ci(CiParams { n }),
            ModelParams::Abg(AbgParams { alpha, beta_db: beta, gamma: 2.0 }),
        ];
        for model in models {
            let target = model.intercept_db(ghz(f)) + margin;
            prop_assume!(target > 0.0);
            let q = RangeQuery { model, freq: ghz(f), max_path_loss_db: target };
            let d = max_range(&q).unwrap();
            let back = model.path_loss_db(ghz(f), d);
            prop_assert!((back - target).abs() < 1e-6, "round trip off by {}", back - target);
        }
    }
}
