//! One-dimensional Wasserstein distance between a discrete atom law and a
//! continuous law, and the certified two-sided bound reports.
//!
//! In one dimension the optimal-coupling distance reduces to the area
//! between the CDFs, `d_W = integral |F_mu - F_nu|`. Between consecutive
//! atoms `F_mu` is a constant `c`, the strictly increasing `F_nu` crosses
//! that level at most once (located by bisection to machine width), and
//! `F_nu` integrates in closed form through the law's CDF antiderivative.
//! Atom masses stay exact rationals until the moment they enter the
//! integrator; the conversion error is folded into the reported bound.
//!
//! The reports compare the computed distance for `W_n = X/n` against
//! `Beta(3/2, 3/2)` with the proven constants `1/(32n)` and `59/(2n)`,
//! the moment witness `(2+n)/(32 n^2)`, and — after the affine map
//! `s = 2w - 1` — against the semicircle law with `1/(16n)` and `59/n`.

use num_traits::{One, Signed, Zero};

use crate::continuous::ContinuousLaw;
use crate::error::{Error, Result};
use crate::first_letter::FirstLetterLaw;
use crate::rational::{rat, rat_to_f64, Rat};

const MACHINE_EPS: f64 = f64::EPSILON;

/// A purely atomic law: strictly increasing locations with positive exact
/// masses summing to one.
#[derive(Debug, Clone)]
pub struct DiscreteAtomLaw {
    atoms: Vec<(f64, Rat)>,
    /// cumulative masses after each atom, rounded once from the exact sums
    cumulative_f: Vec<f64>,
}

impl DiscreteAtomLaw {
    pub fn new(atoms: Vec<(f64, Rat)>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::InvalidAtoms("no atoms".into()));
        }
        if atoms
            .iter()
            .any(|(x, m)| !x.is_finite() || !m.is_positive())
        {
            return Err(Error::InvalidAtoms(
                "locations must be finite and masses positive".into(),
            ));
        }
        if atoms.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(Error::InvalidAtoms(
                "locations must be strictly increasing".into(),
            ));
        }
        let mut acc = Rat::zero();
        let cumulative_f: Vec<f64> = atoms
            .iter()
            .map(|(_, m)| {
                acc += m;
                rat_to_f64(&acc)
            })
            .collect();
        if !acc.is_one() {
            return Err(Error::InvalidAtoms(format!("masses sum to {acc}, not 1")));
        }
        Ok(Self {
            atoms,
            cumulative_f,
        })
    }

    /// The law of `W_n = X/n` with `X` the first-swap location.
    pub fn rescaled_first_letter(n: usize) -> Result<Self> {
        Ok(Self::from_first_letter(&FirstLetterLaw::new(n)?, false))
    }

    /// The law of `2X/n - 1`, the semicircle-scale version.
    pub fn semicircle_scaled_first_letter(n: usize) -> Result<Self> {
        Ok(Self::from_first_letter(&FirstLetterLaw::new(n)?, true))
    }

    /// Atoms from an already-built law; masses sum to 1 by construction,
    /// and the cumulative table comes from the law's integer fast path.
    fn from_first_letter(law: &FirstLetterLaw, semicircle_scale: bool) -> Self {
        let n = law.n();
        let atoms = law
            .probs()
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let w = (i + 1) as f64 / n as f64;
                let x = if semicircle_scale { 2.0 * w - 1.0 } else { w };
                (x, p.clone())
            })
            .collect();
        Self {
            atoms,
            cumulative_f: law.cumulative_f64(),
        }
    }

    pub fn atoms(&self) -> &[(f64, Rat)] {
        &self.atoms
    }
}

/// A computed distance with a conservative absolute error bound.
#[derive(Debug, Clone, Copy)]
pub struct Distance {
    pub value: f64,
    pub abs_error_bound: f64,
}

/// `d_W(mu, nu) = integral |F_mu - F_nu|` for an atomic `mu` against a
/// continuous `nu` with strictly increasing CDF on its support.
pub fn wasserstein_1d(mu: &DiscreteAtomLaw, nu: &ContinuousLaw) -> Result<Distance> {
    let xs: Vec<f64> = mu.atoms.iter().map(|(x, _)| *x).collect();
    wasserstein_levels(&xs, &mu.cumulative_f, nu)
}

// Core of the CDF-difference integral over atom locations `xs` with
// cumulative masses `levels` (levels[i] = F_mu on [xs[i], xs[i+1])).
fn wasserstein_levels(xs: &[f64], levels: &[f64], nu: &ContinuousLaw) -> Result<Distance> {
    let k = xs.len();
    let (lo, hi) = nu.support();

    let mut total = 0.0;
    let mut err = 0.0;

    // left tail: F_mu = 0, integrand = F_nu, supported on [lo, x_1)
    total += segment_area(nu, lo.min(xs[0]), xs[0], 0.0, &mut err);
    // between consecutive atoms: F_mu = levels[i]
    for i in 0..k - 1 {
        total += segment_area(nu, xs[i], xs[i + 1], levels[i], &mut err);
    }
    // right tail: F_mu = 1, integrand = 1 - F_nu, supported on [x_k, hi)
    total += segment_area(nu, xs[k - 1], hi.max(xs[k - 1]), 1.0, &mut err);

    // rounding of the exact masses and locations into doubles
    err += 4.0 * k as f64 * MACHINE_EPS;

    Ok(Distance {
        value: total,
        abs_error_bound: err,
    })
}

/// Integral of `|level - F_nu|` over `[a, b]`, in closed form through the
/// CDF antiderivative, splitting once at the crossing point if any.
///
/// The antiderivative is extended by 0 below the support and linearly
/// above it, so segments sticking out of the support are handled by the
/// same closed forms.
fn segment_area(nu: &ContinuousLaw, a: f64, b: f64, level: f64, err: &mut f64) -> f64 {
    if a >= b {
        return 0.0;
    }
    let fa = nu.cdf(a);
    let fb = nu.cdf(b);
    let area = if fa >= level {
        // F_nu >= level throughout
        integral_of_cdf(nu, a, b, err) - level * (b - a)
    } else if fb <= level {
        // F_nu <= level throughout
        level * (b - a) - integral_of_cdf(nu, a, b, err)
    } else {
        let t = crossing_point(nu, a, b, level, err);
        (level * (t - a) - integral_of_cdf(nu, a, t, err))
            + (integral_of_cdf(nu, t, b, err) - level * (b - t))
    };
    *err += 4.0 * MACHINE_EPS * (1.0 + area.abs());
    area
}

fn integral_of_cdf(nu: &ContinuousLaw, a: f64, b: f64, err: &mut f64) -> f64 {
    let ga = nu.cdf_antideriv(a);
    let gb = nu.cdf_antideriv(b);
    *err += 4.0 * MACHINE_EPS * (ga.abs() + gb.abs());
    gb - ga
}

/// Bisection for `F_nu(t) = level` on `[a, b]`; monotonicity of the CDF
/// makes the crossing unique. Runs to interval exhaustion (midpoint equals
/// an endpoint) or 100 iterations, whichever comes first.
fn crossing_point(nu: &ContinuousLaw, a: f64, b: f64, level: f64, err: &mut f64) -> f64 {
    let mut lo = a;
    let mut hi = b;
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if nu.cdf(mid) < level {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // a crossing misplaced by the bracket width perturbs the area by at
    // most width * sup|level - F| <= width
    *err += hi - lo;
    0.5 * (lo + hi)
}

/// Distance of `W_n` (or its affine image) to its limit, with the proven
/// constants it must sit between.
#[derive(Debug, Clone)]
pub struct DistanceReport {
    pub n: usize,
    pub distance: f64,
    pub abs_error_bound: f64,
    /// `1/(32n)` on the Beta scale, `1/(16n)` on the semicircle scale.
    pub lower_paper: f64,
    /// `(2+n)/(32 n^2)` on the Beta scale, twice that on the semicircle
    /// scale: the moment witness, which is the sharper lower bound.
    pub lower_witness: f64,
    /// `59/(2n)` on the Beta scale, `59/n` on the semicircle scale.
    pub upper_paper: f64,
    /// `lower_paper - tol <= distance <= upper_paper + tol` with
    /// `tol = abs_error_bound + 1e-9`.
    pub pass: bool,
}

impl DistanceReport {
    pub fn tolerance(&self) -> f64 {
        self.abs_error_bound + 1e-9
    }

    /// The sharper moment-witness lower bound, at its own 1e-10 slack.
    pub fn witness_ok(&self) -> bool {
        self.distance >= self.lower_witness - (self.abs_error_bound + 1e-10)
    }
}

fn build_report(
    n: usize,
    distance: Distance,
    lower_paper: f64,
    lower_witness: f64,
    upper_paper: f64,
) -> DistanceReport {
    let tol = distance.abs_error_bound + 1e-9;
    let pass = distance.value >= lower_paper - tol && distance.value <= upper_paper + tol;
    DistanceReport {
        n,
        distance: distance.value,
        abs_error_bound: distance.abs_error_bound,
        lower_paper,
        lower_witness,
        upper_paper,
        pass,
    }
}

/// `d_W(W_n, Z)` against `Beta(3/2, 3/2)` with the `1/(32n)` and `59/(2n)`
/// bounds and the exact moment witness.
pub fn distance_report(n: usize) -> Result<DistanceReport> {
    let law = FirstLetterLaw::new(n)?;
    beta_report_from_law(&law)
}

fn beta_report_from_law(law: &FirstLetterLaw) -> Result<DistanceReport> {
    beta_report_from_parts(law.n(), &law.cumulative_f64(), &witness_from_law(law))
}

fn beta_report_from_parts(n: usize, levels: &[f64], witness: &Rat) -> Result<DistanceReport> {
    let xs: Vec<f64> = (1..n).map(|k| k as f64 / n as f64).collect();
    let d = wasserstein_levels(&xs, levels, &ContinuousLaw::beta_three_halves())?;
    let nf = n as f64;
    Ok(build_report(
        n,
        d,
        1.0 / (32.0 * nf),
        rat_to_f64(witness),
        59.0 / (2.0 * nf),
    ))
}

/// Result of the semicircle-scale computation for one `n`.
#[derive(Debug, Clone)]
pub struct ScaledDistanceReport {
    /// `d_W(2X/n - 1, S)` against the `1/(16n)` and `59/n` bounds.
    pub report: DistanceReport,
    /// `d_W(W_n, Z)` on the Beta scale, for the scaling comparison.
    pub beta_distance: f64,
    /// `|semicircle distance - 2 * beta distance|`.
    pub scaling_gap: f64,
    /// Scaling identity within `2e-10`.
    pub scaling_ok: bool,
}

/// `d_W(2X/n - 1, S)` computed directly against the semicircle law and
/// cross-checked against twice the Beta-scale distance (the affine
/// scaling property of the distance with `|a| = 2`).
pub fn scaled_distance_report(n: usize) -> Result<ScaledDistanceReport> {
    let law = FirstLetterLaw::new(n)?;
    let levels = law.cumulative_f64();
    let witness = witness_from_law(&law);
    let xs: Vec<f64> = (1..n).map(|k| 2.0 * k as f64 / n as f64 - 1.0).collect();
    let d = wasserstein_levels(&xs, &levels, &ContinuousLaw::Semicircle)?;
    let beta = beta_report_from_parts(n, &levels, &witness)?;
    let nf = n as f64;
    let report = build_report(
        n,
        d,
        1.0 / (16.0 * nf),
        2.0 * rat_to_f64(&witness),
        59.0 / nf,
    );
    let scaling_gap = (report.distance - 2.0 * beta.distance).abs();
    Ok(ScaledDistanceReport {
        report,
        beta_distance: beta.distance,
        scaling_gap,
        scaling_ok: scaling_gap <= 2e-10,
    })
}

/// The exact moment witness `|E(W^2/2) - E(Z^2/2)| = (2+n)/(32 n^2)`,
/// computed from the exact pmf moments (not from the closed form).
///
/// Since `h(w) = w^2/2` is 1-Lipschitz on `[0, 1]`, the distance can never
/// fall below this value.
pub fn lower_bound_witness(n: usize) -> Result<Rat> {
    Ok(witness_from_law(&FirstLetterLaw::new(n)?))
}

fn witness_from_law(law: &FirstLetterLaw) -> Rat {
    let (_, ew2) = law.moments();
    (ew2 / rat(2, 1) - rat(5, 32)).abs()
}

/// Beta-scale reports for every `n` in `[n_lo, n_hi]`, sequentially.
pub fn sweep_distance_reports_seq(n_lo: usize, n_hi: usize) -> Result<Vec<DistanceReport>> {
    (n_lo..=n_hi).map(distance_report).collect()
}

/// Semicircle-scale reports for every `n` in `[n_lo, n_hi]`, sequentially.
pub fn sweep_scaled_reports_seq(n_lo: usize, n_hi: usize) -> Result<Vec<ScaledDistanceReport>> {
    (n_lo..=n_hi).map(scaled_distance_report).collect()
}

/// Beta-scale reports for every `n` in `[n_lo, n_hi]`; runs on the rayon
/// pool with results collected in ascending `n`.
#[cfg(feature = "parallel")]
pub fn sweep_distance_reports(n_lo: usize, n_hi: usize) -> Result<Vec<DistanceReport>> {
    use rayon::prelude::*;
    (n_lo..=n_hi).into_par_iter().map(distance_report).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn sweep_distance_reports(n_lo: usize, n_hi: usize) -> Result<Vec<DistanceReport>> {
    sweep_distance_reports_seq(n_lo, n_hi)
}

/// Semicircle-scale reports for every `n` in `[n_lo, n_hi]`, parallel when
/// the feature is on.
#[cfg(feature = "parallel")]
pub fn sweep_scaled_reports(n_lo: usize, n_hi: usize) -> Result<Vec<ScaledDistanceReport>> {
    use rayon::prelude::*;
    (n_lo..=n_hi)
        .into_par_iter()
        .map(scaled_distance_report)
        .collect()
}

#[cfg(not(feature = "parallel"))]
pub fn sweep_scaled_reports(n_lo: usize, n_hi: usize) -> Result<Vec<ScaledDistanceReport>> {
    sweep_scaled_reports_seq(n_lo, n_hi)
}

/// Exact atomic-vs-atomic distance (both CDFs are step functions); used as
/// a degenerate-case cross-check.
pub fn wasserstein_1d_discrete(a: &DiscreteAtomLaw, b: &DiscreteAtomLaw) -> f64 {
    let mut points: Vec<f64> = a
        .atoms
        .iter()
        .chain(b.atoms.iter())
        .map(|(x, _)| *x)
        .collect();
    points.sort_by(|x, y| x.partial_cmp(y).unwrap());
    points.dedup();

    let cdf_at = |law: &DiscreteAtomLaw, t: f64| -> f64 {
        let mut acc = 0.0;
        for (i, (x, _)) in law.atoms.iter().enumerate() {
            if *x <= t {
                acc = law.cumulative_f[i];
            } else {
                break;
            }
        }
        acc
    };

    let mut total = 0.0;
    for w in points.windows(2) {
        let gap = (cdf_at(a, w[0]) - cdf_at(b, w[0])).abs();
        total += gap * (w[1] - w[0]);
    }
    total
}

/// Same integral as [`wasserstein_1d`] but with adaptive quadrature of the
/// CDF instead of the closed-form antiderivative; the self-consistency
/// tests validate the closed forms against this route.
pub fn wasserstein_1d_quadrature(
    mu: &DiscreteAtomLaw,
    nu: &ContinuousLaw,
    tol: f64,
) -> Result<Distance> {
    use crate::quadrature::integrate;
    let levels = &mu.cumulative_f;
    let xs: Vec<f64> = mu.atoms.iter().map(|(x, _)| *x).collect();
    let (lo, hi) = nu.support();
    let k = xs.len();
    let mut total = 0.0;
    let mut err = 0.0;

    let mut pieces: Vec<(f64, f64, f64)> = Vec::with_capacity(k + 1);
    pieces.push((lo.min(xs[0]), xs[0], 0.0));
    for i in 0..k - 1 {
        pieces.push((xs[i], xs[i + 1], levels[i]));
    }
    pieces.push((xs[k - 1], hi.max(xs[k - 1]), 1.0));
    for (a, b, level) in pieces {
        if a < b {
            let r = integrate(|t| (level - nu.cdf(t)).abs(), a, b, tol)?;
            total += r.value;
            err += r.abs_error;
        }
    }
    Ok(Distance {
        value: total,
        abs_error_bound: err + 2.0 * k as f64 * MACHINE_EPS,
    })
}
