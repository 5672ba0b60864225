//! Acceptance suite: the eleven headline guarantees, each as its own test
//! printing one pass/fail line (run with `-- --nocapture` to see them all).
//!
//! Each test drives the full-scale check from `selfcheck` and additionally
//! pins the independently derived spot values (hand enumeration, closed
//! forms, quadrature constants) so regressions cannot hide behind the
//! sweep logic.

use num_bigint::BigUint;
use num_traits::One;
use std::f64::consts::PI;

use sortnet_stein::continuous::{beta_cdf, semicircle_cdf};
use sortnet_stein::first_letter::{self, FirstLetterLaw};
use sortnet_stein::rational::{rat, Rat};
use sortnet_stein::selfcheck::{self, CheckOptions};
use sortnet_stein::stein_beta::solve_stein_equation;
use sortnet_stein::stein_discrete::{
    check_identity_prop21, rescaled_identity_residual, TestFunction,
};
use sortnet_stein::wasserstein::{distance_report, lower_bound_witness, scaled_distance_report};
use sortnet_stein::words::{
    enumerate_words, first_letter_counts, is_reduced_word, stanley_count, yb_stats,
};

fn opts() -> CheckOptions {
    CheckOptions::default()
}

fn report(result: &selfcheck::CriterionResult) {
    println!("{}", result.line());
    assert!(result.pass, "{}", result.line());
}

#[test]
fn criterion_01_exact_pmf_validity() {
    // spot values first: the n = 4 law is (5, 6, 5)/16 by hand enumeration
    let law = FirstLetterLaw::new(4).unwrap();
    assert_eq!(law.probs(), &[rat(5, 16), rat(6, 16), rat(5, 16)]);
    let law = FirstLetterLaw::new(3).unwrap();
    assert_eq!(law.probs(), &[rat(1, 2), rat(1, 2)]);
    let law = FirstLetterLaw::new(2).unwrap();
    assert_eq!(law.probs(), &[Rat::one()]);

    report(&selfcheck::check_pmf_validity(&opts()).unwrap());
}

#[test]
fn criterion_02_enumeration_oracle() {
    // frozen counts: 2, 16, 768, 292864
    assert_eq!(stanley_count(3).unwrap(), BigUint::from(2u32));
    assert_eq!(stanley_count(4).unwrap(), BigUint::from(16u32));
    assert_eq!(stanley_count(5).unwrap(), BigUint::from(768u32));
    assert_eq!(stanley_count(6).unwrap(), BigUint::from(292_864u32));

    // spot-check random words out of the n = 6 stream stay reduced
    let words = enumerate_words(6).unwrap();
    assert_eq!(words.len(), 292_864);
    let mut step = 0usize;
    while step < words.len() {
        assert!(is_reduced_word(&words[step]));
        step += 293; // 1000 spot checks across the stream
    }

    report(&selfcheck::check_enumeration_counts(&opts()).unwrap());
}

#[test]
fn criterion_03_first_letter_oracle() {
    let (counts, total) = first_letter_counts(4).unwrap();
    assert_eq!((counts, total), (vec![5, 6, 5], 16));
    report(&selfcheck::check_first_letter_oracle(&opts()).unwrap());
}

#[test]
fn criterion_04_stein_identities_exact_zero() {
    // the identity is exactly zero even for an adversarial hand-built f
    let triple = FirstLetterLaw::new(7).unwrap().stein_triple();
    let f = TestFunction::new(
        0,
        vec![
            rat(-16, 1),
            rat(16, 1),
            rat(-7, 13),
            rat(22, 7),
            rat(0, 1),
            rat(5, 3),
            rat(-1, 16),
        ],
    )
    .unwrap();
    assert_eq!(check_identity_prop21(&triple, &f).unwrap(), rat(0, 1));
    // rescaled identity with f(x) = x recovers the second-moment formula
    let f: Vec<Rat> = (0..9).map(|k| rat(k, 9)).collect();
    assert_eq!(rescaled_identity_residual(9, &f).unwrap(), rat(0, 1));

    // the same identity with the coefficients written out in closed form,
    // independent of the SteinTriple plumbing:
    //   E[(X-1)(2(n-X)+1) Df(X-1) + (3n-6X) f(X)] = 0
    let mut rng = sortnet_stein::rng::SplitMix64::new(424242);
    for n in [3usize, 6, 11] {
        let law = FirstLetterLaw::new(n).unwrap();
        let values: Vec<Rat> = (0..n)
            .map(|_| rat(rng.next_in(-16, 16), rng.next_in(1, 16)))
            .collect();
        let mut total = rat(0, 1);
        for k in 1..n {
            let (n_i, k_i) = (n as i64, k as i64);
            let step = &values[k] - &values[k - 1];
            total += law.prob(k).unwrap()
                * (rat(k_i - 1, 1) * rat(2 * (n_i - k_i) + 1, 1) * step
                    + rat(3 * n_i - 6 * k_i, 1) * &values[k]);
        }
        assert_eq!(total, rat(0, 1), "direct-form identity broke at n={n}");
    }

    report(&selfcheck::check_stein_identities(&opts()).unwrap());
}

#[test]
fn criterion_05_exact_moments() {
    let (ew, ew2) = first_letter::moments(4).unwrap();
    assert_eq!(ew, rat(1, 2));
    assert_eq!(ew2 / rat(2, 1), rat(37, 256)); // enumerated cross-check
    let (_, ew2) = first_letter::moments(2).unwrap();
    assert_eq!(ew2, rat(1, 4));

    report(&selfcheck::check_moments(&opts()).unwrap());
}

#[test]
fn criterion_06_beta_scale_bounds() {
    // closed-form spot value at n = 2: d_W = E|Z - 1/2| = 2/(3 pi)
    let r = distance_report(2).unwrap();
    assert!((r.distance - 2.0 / (3.0 * PI)).abs() <= 1e-10);
    assert_eq!(lower_bound_witness(2).unwrap(), rat(1, 32));
    assert_eq!(lower_bound_witness(4).unwrap(), rat(3, 256));

    report(&selfcheck::check_beta_bounds(&opts()).unwrap());
}

#[test]
fn criterion_07_semicircle_scale_bounds_and_scaling() {
    let s = scaled_distance_report(2).unwrap();
    assert!((s.report.distance - 4.0 / (3.0 * PI)).abs() <= 1e-10);
    let s = scaled_distance_report(16).unwrap();
    assert!((s.report.lower_paper - 1.0 / 256.0).abs() < 1e-18);
    assert!((s.report.upper_paper - 59.0 / 16.0).abs() < 1e-15);

    report(&selfcheck::check_semicircle_bounds(&opts()).unwrap());
}

#[test]
fn criterion_08_cdf_identity() {
    // pdf-level spot values: density 4/pi at the Beta midpoint
    assert!((beta_cdf(0.5, 1.5, 1.5).unwrap() - 0.5).abs() < 1e-14);
    assert!((semicircle_cdf(0.0) - 0.5).abs() < 1e-15);

    report(&selfcheck::check_cdf_identity(&opts()).unwrap());
}

#[test]
fn criterion_09_stein_solver_bounds() {
    // constant h must give the zero solution
    let sol = solve_stein_equation(&|_| 1.0, 1.5, 1.5, 1000).unwrap();
    assert!(sol.sup_f < 1e-9);

    report(&selfcheck::check_stein_solver_bounds(&opts()).unwrap());
}

#[test]
fn criterion_10_yang_baxter_statistics() {
    // n = 3: both words score exactly one move
    let stats = yb_stats(3).unwrap();
    assert_eq!(stats.mean, rat(1, 1));
    assert_eq!(stats.variance, rat(0, 1));
    // n = 4: conjectured variance (6-4)/(6-2) = 1/2 is reported either way
    let stats = yb_stats(4).unwrap();
    assert_eq!(stats.conjectured_variance, Some(rat(1, 2)));
    println!(
        "  n=4 exact variance {} vs conjectured 1/2: match = {:?}",
        stats.variance, stats.variance_matches_conjecture
    );

    report(&selfcheck::check_yang_baxter(&opts()).unwrap());
}

#[test]
fn criterion_11_sampling_consistency() {
    report(&selfcheck::check_sampling(&opts()).unwrap());
}
