//! End-to-end verification sweep: every headline property of the crate,
//! run at full scale with one result line per criterion.
//!
//! This is what the CLI `report` subcommand executes; the `acceptance`
//! integration test drives the same checks and additionally pins the
//! hand-derived spot values. Exact statements are checked for exact
//! equality; floating-point statements carry their stated tolerances.

use num_bigint::BigUint;
use num_traits::{One, Signed};

use crate::continuous::{beta_cdf, semicircle_cdf};
use crate::error::Result;
use crate::first_letter::{self, FirstLetterLaw};
use crate::rational::{rat, rat_to_f64, Rat};
use crate::stein_beta::{solve_stein_equation, LIPSCHITZ_FAMILY};
use crate::stein_discrete::{run_characterization_suite, run_prop21_suite, run_rescaled_suite};
use crate::wasserstein::{sweep_distance_reports, sweep_scaled_reports};
use crate::words::{
    first_letter_histogram, sample_first_letter, stanley_count, yb_stats, ENUMERATION_CAP,
};

/// Scale knobs for the verification sweep. Defaults are the full-scale run.
#[derive(Debug, Clone)]
pub struct CheckOptions {
    /// Exact pmf/moment checks run for `n` in `2..=exact_n_max`.
    pub exact_n_max: usize,
    /// Wasserstein bound sweeps run for `n` in `2..=sweep_n_max`.
    pub sweep_n_max: usize,
    /// Randomized exact identity suites run for `n` up to this value.
    pub identity_n_max: usize,
    /// Draws per sampling consistency check.
    pub sample_count: usize,
    /// Stein solver grid panels.
    pub stein_grid: usize,
    pub seed: u64,
}

impl Default for CheckOptions {
    fn default() -> Self {
        Self {
            exact_n_max: 200,
            sweep_n_max: 1000,
            identity_n_max: 50,
            sample_count: 100_000,
            stein_grid: 1000,
            seed: 0x5EED_CAFE,
        }
    }
}

/// Outcome of one criterion.
#[derive(Debug, Clone)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

impl CriterionResult {
    /// The one-line form the CLI prints.
    pub fn line(&self) -> String {
        format!(
            "criterion {:>2} [{}] {}: {}",
            self.id,
            if self.pass { "PASS" } else { "FAIL" },
            self.name,
            self.detail
        )
    }
}

fn result(id: usize, name: &'static str, pass: bool, detail: String) -> CriterionResult {
    CriterionResult {
        id,
        name,
        pass,
        detail,
    }
}

/// 1. Exact pmf validity: normalization, symmetry, positivity.
pub fn check_pmf_validity(opts: &CheckOptions) -> Result<CriterionResult> {
    let mut worst: Option<String> = None;
    'outer: for n in 2..=opts.exact_n_max {
        let law = FirstLetterLaw::new(n)?;
        let total: Rat = law.probs().iter().sum();
        if !total.is_one() {
            worst = Some(format!("sum != 1 at n={n}"));
            break;
        }
        for k in 1..n {
            if !law.prob(k)?.is_positive() || law.prob(k)? != law.prob(n - k)? {
                worst = Some(format!("positivity/symmetry broken at n={n}, k={k}"));
                break 'outer;
            }
        }
    }
    let pass = worst.is_none();
    Ok(result(
        1,
        "exact pmf validity",
        pass,
        worst.unwrap_or(format!(
            "sum = 1, p(k) = p(n-k), p(k) > 0 exactly for n in 2..={}",
            opts.exact_n_max
        )),
    ))
}

/// 2. Enumeration counts equal the product formula.
pub fn check_enumeration_counts(_opts: &CheckOptions) -> Result<CriterionResult> {
    let expected: [(usize, u64); 4] = [(3, 2), (4, 16), (5, 768), (6, 292_864)];
    let mut pass = true;
    let mut counts = Vec::new();
    for (n, want) in expected {
        let (_, total) = crate::words::first_letter_counts(n)?;
        let formula = stanley_count(n)?;
        if total != want || formula != BigUint::from(want) {
            pass = false;
        }
        counts.push(format!("n={n}: {total}"));
    }
    Ok(result(
        2,
        "enumeration matches count formula",
        pass,
        counts.join(", "),
    ))
}

/// 3. Enumerated first-letter frequencies equal the closed form exactly.
pub fn check_first_letter_oracle(_opts: &CheckOptions) -> Result<CriterionResult> {
    let mut pass = true;
    for n in 3..=ENUMERATION_CAP {
        if first_letter_histogram(n)? != FirstLetterLaw::new(n)? {
            pass = false;
        }
    }
    let (counts, total) = crate::words::first_letter_counts(4)?;
    let n4_ok = counts == vec![5, 6, 5] && total == 16;
    Ok(result(
        3,
        "first-letter law reproduced by counting",
        pass && n4_ok,
        format!("histogram == closed form for n = 3..=6; n=4 counts {counts:?}/{total}"),
    ))
}

/// 4. The three exact zero-mean identities across the randomized suites.
pub fn check_stein_identities(opts: &CheckOptions) -> Result<CriterionResult> {
    let prop21 = run_prop21_suite(3, opts.identity_n_max, 100, opts.seed)?;
    let characterization = run_characterization_suite(20, opts.seed.wrapping_add(1))?;
    let rescaled = run_rescaled_suite(2, opts.identity_n_max, 20, opts.seed.wrapping_add(2))?;
    let pass = prop21.all_zero() && characterization.all_zero() && rescaled.all_zero();
    Ok(result(
        4,
        "discrete Stein identities exactly zero",
        pass,
        format!(
            "{} + {} + {} randomized cases, all residuals exactly 0",
            prop21.cases, characterization.cases, rescaled.cases
        ),
    ))
}

/// 5. Exact moments match their closed forms.
pub fn check_moments(opts: &CheckOptions) -> Result<CriterionResult> {
    let mut pass = true;
    for n in 2..=opts.exact_n_max {
        let (ew, ew2) = first_letter::moments(n)?;
        if ew != rat(1, 2) || ew2 != first_letter::second_moment_closed_form(n) {
            pass = false;
            break;
        }
    }
    // cross-check at n = 4 against the enumerated value E(W^2/2) = 37/256
    let (_, ew2) = first_letter::moments(4)?;
    let cross = ew2 / rat(2, 1) == rat(37, 256);
    Ok(result(
        5,
        "exact moments",
        pass && cross,
        format!(
            "EW = 1/2 and EW^2 = 5/16 - (2+n)/(16n^2) exactly for n in 2..={}; n=4 E(W^2/2) = 37/256",
            opts.exact_n_max
        ),
    ))
}

/// 6. Two-sided distance bounds on the Beta scale, plus the moment witness.
pub fn check_beta_bounds(opts: &CheckOptions) -> Result<CriterionResult> {
    let reports = sweep_distance_reports(2, opts.sweep_n_max)?;
    let mut pass = true;
    let mut detail = String::new();
    for r in &reports {
        let scaled = r.n as f64 * r.distance;
        if !r.pass || !r.witness_ok() || !(1.0 / 32.0 - 1e-9..=29.5 + 1e-9).contains(&scaled) {
            pass = false;
            detail = format!("violated at n = {} (distance {})", r.n, r.distance);
            break;
        }
    }
    let spot = (reports[0].distance - 2.0 / (3.0 * std::f64::consts::PI)).abs() <= 1e-10;
    if !spot {
        pass = false;
        detail = format!("n=2 spot value off: {}", reports[0].distance);
    }
    if detail.is_empty() {
        detail = format!(
            "1/(32n) <= d_W(W_n, Z) <= 59/(2n) and d_W >= (2+n)/(32n^2) for n in 2..={}; n=2 value 2/(3 pi)",
            opts.sweep_n_max
        );
    }
    Ok(result(6, "Wasserstein bounds, Beta scale", pass, detail))
}

/// 7. Two-sided distance bounds on the semicircle scale plus the affine
///    scaling law.
pub fn check_semicircle_bounds(opts: &CheckOptions) -> Result<CriterionResult> {
    let reports = sweep_scaled_reports(2, opts.sweep_n_max)?;
    let mut pass = true;
    let mut detail = String::new();
    for s in &reports {
        if !s.report.pass || !s.scaling_ok {
            pass = false;
            detail = format!(
                "violated at n = {} (distance {}, scaling gap {})",
                s.report.n, s.report.distance, s.scaling_gap
            );
            break;
        }
    }
    if detail.is_empty() {
        detail = format!(
            "1/(16n) <= d_W(2X/n - 1, S) <= 59/n and d = 2 d_W(W_n, Z) +- 2e-10 for n in 2..={}",
            opts.sweep_n_max
        );
    }
    Ok(result(
        7,
        "Wasserstein bounds, semicircle scale + scaling",
        pass,
        detail,
    ))
}

/// 8. CDF form of the `2Z - 1` identity on a 1001-point grid.
pub fn check_cdf_identity(_opts: &CheckOptions) -> Result<CriterionResult> {
    let mut max_gap = 0.0f64;
    for i in 0..=1000 {
        let z = i as f64 / 1000.0;
        let gap = (beta_cdf(z, 1.5, 1.5)? - semicircle_cdf(2.0 * z - 1.0)).abs();
        max_gap = max_gap.max(gap);
    }
    Ok(result(
        8,
        "Beta(3/2,3/2) CDF equals semicircle CDF of 2z-1",
        max_gap <= 1e-12,
        format!("max |gap| = {max_gap:.3e} over 1001 grid points (tolerance 1e-12)"),
    ))
}

/// 9. Stein equation solution bounds over the 1-Lipschitz family.
pub fn check_stein_solver_bounds(opts: &CheckOptions) -> Result<CriterionResult> {
    let mut pass = true;
    let mut worst_f = 0.0f64;
    let mut worst_fp = 0.0f64;
    let mut worst_res = 0.0f64;
    for test in LIPSCHITZ_FAMILY.iter() {
        let sol = solve_stein_equation(&test.h, 1.5, 1.5, opts.stein_grid)?;
        worst_f = worst_f.max(sol.sup_f);
        worst_fp = worst_fp.max(sol.sup_fprime);
        worst_res = worst_res.max(sol.max_abs_residual);
        if sol.sup_f > 2.0 / 3.0 + 1e-6
            || sol.sup_fprime > 8.0 + 1e-4
            || sol.max_abs_residual > 1e-8
        {
            pass = false;
        }
    }
    Ok(result(
        9,
        "Stein solution sup-norm bounds",
        pass,
        format!(
            "20 test functions: max sup_f = {worst_f:.6} (<= 2/3), max sup_f' = {worst_fp:.4} (<= 8), max residual = {worst_res:.3e} (<= 1e-8)"
        ),
    ))
}

/// 10. Yang–Baxter statistics: exact mean 1; the variance conjecture and
///     the Poisson(1) TV distance are reported, not asserted.
pub fn check_yang_baxter(_opts: &CheckOptions) -> Result<CriterionResult> {
    let mut pass = true;
    let mut notes = Vec::new();
    for n in 3..=ENUMERATION_CAP {
        let stats = yb_stats(n)?;
        if stats.mean != rat(1, 1) {
            pass = false;
        }
        let agreement = match stats.variance_matches_conjecture {
            Some(true) => "= conjecture",
            Some(false) => "!= conjecture",
            None => "no conjecture",
        };
        notes.push(format!(
            "n={n}: mean 1, var {} {agreement}, TV(Poisson(1)) = {:.4}",
            stats.variance, stats.tv_to_poisson1
        ));
    }
    Ok(result(
        10,
        "Yang-Baxter statistics (mean asserted, variance reported)",
        pass,
        notes.join("; "),
    ))
}

/// 11. Sampling consistency at 4-sigma bands.
pub fn check_sampling(opts: &CheckOptions) -> Result<CriterionResult> {
    let count = opts.sample_count;
    // n = 3: each letter is Binomial(count, 1/2)
    let draws = sample_first_letter(3, opts.seed, count)?;
    let ones = draws.iter().filter(|&&k| k == 1).count() as f64;
    let band3 = 4.0 * (count as f64 * 0.25).sqrt();
    let n3_ok = (ones - count as f64 / 2.0).abs() <= band3;

    // n = 50: mean of W within 4 sigma/sqrt(count) of 1/2, sigma exact
    let n = 50usize;
    let draws = sample_first_letter(n, opts.seed.wrapping_add(3), count)?;
    let mean_w: f64 = draws.iter().map(|&k| k as f64 / n as f64).sum::<f64>() / count as f64;
    let (_, ew2) = first_letter::moments(n)?;
    let var_w = rat_to_f64(&ew2) - 0.25;
    let band50 = 4.0 * (var_w / count as f64).sqrt();
    let n50_ok = (mean_w - 0.5).abs() <= band50;

    Ok(result(
        11,
        "inverse-CDF sampling consistency",
        n3_ok && n50_ok,
        format!(
            "n=3: letter-1 count {ones} within {band3:.0} of {}; n=50: mean W = {mean_w:.5} within {band50:.5} of 0.5",
            count / 2
        ),
    ))
}

/// Run all eleven criteria in order.
pub fn run_all(opts: &CheckOptions) -> Result<Vec<CriterionResult>> {
    Ok(vec![
        check_pmf_validity(opts)?,
        check_enumeration_counts(opts)?,
        check_first_letter_oracle(opts)?,
        check_stein_identities(opts)?,
        check_moments(opts)?,
        check_beta_bounds(opts)?,
        check_semicircle_bounds(opts)?,
        check_cdf_identity(opts)?,
        check_stein_solver_bounds(opts)?,
        check_yang_baxter(opts)?,
        check_sampling(opts)?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick_opts() -> CheckOptions {
        CheckOptions {
            exact_n_max: 30,
            sweep_n_max: 16,
            identity_n_max: 10,
            sample_count: 20_000,
            stein_grid: 200,
            seed: 7,
        }
    }

    #[test]
    fn reduced_scale_run_passes_everything() {
        let results = run_all(&quick_opts()).unwrap();
        assert_eq!(results.len(), 11);
        for (i, r) in results.iter().enumerate() {
            assert!(r.pass, "{}", r.line());
            assert_eq!(r.id, i + 1);
            assert!(!r.line().is_empty());
        }
    }
}
