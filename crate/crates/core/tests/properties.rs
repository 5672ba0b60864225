//! Property-based invariants driven by proptest.

use num_traits::{One, Signed};
use proptest::prelude::*;

use sortnet_stein::first_letter::{psi, FirstLetterLaw};
use sortnet_stein::quadrature::integrate;
use sortnet_stein::rational::{format_fraction, parse_fraction, rat, rat_to_f64, Rat};
use sortnet_stein::rng::SplitMix64;
use sortnet_stein::stein_discrete::{check_characterization, IntervalPmf, TestFunction};
use sortnet_stein::wasserstein::{wasserstein_1d_discrete, DiscreteAtomLaw};
use sortnet_stein::words::{is_reduced_word, Permutation, ReducedWord};

proptest! {
    #[test]
    fn fraction_strings_round_trip(p in any::<i64>(), q in 1i64..=i64::MAX) {
        let r = rat(p, q);
        prop_assert_eq!(parse_fraction(&format_fraction(&r)).unwrap(), r);
    }

    #[test]
    fn doubles_survive_rational_round_trip(x in proptest::num::f64::NORMAL) {
        let r = Rat::from_float(x).unwrap();
        prop_assert_eq!(rat_to_f64(&r).to_bits(), x.to_bits());
    }

    #[test]
    fn pmf_is_symmetric_normalized_positive(n in 2usize..=120) {
        let law = FirstLetterLaw::new(n).unwrap();
        let total: Rat = law.probs().iter().sum();
        prop_assert!(total.is_one());
        for k in 1..n {
            prop_assert!(law.prob(k).unwrap().is_positive());
            prop_assert_eq!(law.prob(k).unwrap(), law.prob(n - k).unwrap());
        }
    }

    #[test]
    fn psi_closed_form_matches_ratio(n in 2usize..=80, k_seed in 0usize..1000) {
        let k = 1 + k_seed % (n - 1);
        let law = FirstLetterLaw::new(n).unwrap();
        let expected = if k == n - 1 {
            -Rat::one()
        } else {
            law.prob(k + 1).unwrap() / law.prob(k).unwrap() - Rat::one()
        };
        prop_assert_eq!(psi(n, k).unwrap(), expected);
    }

    #[test]
    fn ascent_walks_always_validate(n in 2usize..=9, seed in any::<u64>()) {
        // build a word by repeatedly applying a random ascent; the checker
        // must accept every word produced this way
        let mut rng = SplitMix64::new(seed);
        let mut perm = Permutation::identity(n);
        let mut letters = Vec::new();
        for _ in 0..n * (n - 1) / 2 {
            let ascents: Vec<usize> = (1..n).filter(|&s| perm.ascends_at(s)).collect();
            let s = ascents[rng.next_below(ascents.len() as u64) as usize];
            perm.apply_adjacent(s);
            letters.push(s as u16);
        }
        prop_assert_eq!(&perm, &Permutation::longest(n));
        prop_assert!(is_reduced_word(&ReducedWord::new(n, letters)));
    }

    #[test]
    fn characterization_identity_is_exactly_zero(seed in any::<u64>()) {
        let mut rng = SplitMix64::new(seed);
        let a = rng.next_in(-6, 6);
        let b = a + rng.next_in(0, 12);
        let pmf = IntervalPmf::random(a, b, &mut rng);
        let f = TestFunction::random(a - 1, b, &mut rng);
        prop_assert!(num_traits::Zero::is_zero(
            &check_characterization(&pmf, &f).unwrap()
        ));
    }

    #[test]
    fn discrete_distance_of_point_masses_is_the_gap(
        a in -100.0f64..100.0,
        gap in 0.0f64..50.0,
    ) {
        let mu = DiscreteAtomLaw::new(vec![(a, Rat::one())]).unwrap();
        let shifted = DiscreteAtomLaw::new(vec![(a + gap, Rat::one())]);
        prop_assume!(gap > 0.0 || shifted.is_err()); // equal locations collapse
        let nu = if gap > 0.0 {
            shifted.unwrap()
        } else {
            mu.clone()
        };
        let d = wasserstein_1d_discrete(&mu, &nu);
        prop_assert!((d - gap).abs() <= 1e-12 * (1.0 + gap));
        // symmetry of the CDF-gap integral
        prop_assert_eq!(d.to_bits(), wasserstein_1d_discrete(&nu, &mu).to_bits());
    }

    #[test]
    fn quadrature_integrates_quadratics_exactly(
        c0 in -3.0f64..3.0,
        c1 in -3.0f64..3.0,
        c2 in -3.0f64..3.0,
        a in -2.0f64..2.0,
        len in 0.01f64..3.0,
    ) {
        let b = a + len;
        let exact = c0 * (b - a) + c1 * (b * b - a * a) / 2.0 + c2 * (b * b * b - a * a * a) / 3.0;
        let r = integrate(|x| c0 + c1 * x + c2 * x * x, a, b, 1e-12).unwrap();
        prop_assert!((r.value - exact).abs() <= 1e-11, "{} vs {}", r.value, exact);
    }
}
