//! The continuous limit laws: semicircle on (-1, 1) and Beta on (0, 1).
//!
//! The semicircle density is `(2/pi) sqrt(1 - s^2)`; its CDF and the CDF
//! antiderivative are closed forms. The Beta CDF goes through the
//! regularized incomplete beta so that the distributional identity
//! `2Z - 1 = S` for `Z ~ Beta(3/2, 3/2)` can be verified through two
//! genuinely different evaluation routes.
//!
//! Everything here is double precision with stated tolerances; exactness
//! lives on the discrete side of the crate.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::special;

/// Semicircle density `(2/pi) sqrt(1 - s^2)` on `(-1, 1)`, 0 outside.
pub fn semicircle_pdf(s: f64) -> f64 {
    if s <= -1.0 || s >= 1.0 {
        0.0
    } else {
        // (1-s)(1+s) instead of 1 - s*s: exact near the endpoints
        (2.0 / PI) * ((1.0 - s) * (1.0 + s)).sqrt()
    }
}

// Tail of the semicircle CDF beyond 1 - delta, as a series in delta.
// With phi = acos(1 - delta), the tail is (2/3 phi^3 - 2/15 phi^5 + ...)/pi
// = (2/(3 pi)) (2 delta)^{3/2} (1 - 3 delta/20 + O(delta^2)).
fn semicircle_upper_tail(delta: f64) -> f64 {
    (2.0 / (3.0 * PI)) * (2.0 * delta).powf(1.5) * (1.0 - 0.15 * delta)
}

const ENDPOINT_SERIES_WINDOW: f64 = 1e-8;

/// Semicircle CDF `1/2 + (s sqrt(1-s^2) + asin s) / pi`, clipped outside.
///
/// Within 1e-8 of the endpoints the closed form is replaced by a tail
/// series; `1 - s^2` is always computed as `(1-s)(1+s)`.
pub fn semicircle_cdf(s: f64) -> f64 {
    if s <= -1.0 {
        0.0
    } else if s >= 1.0 {
        1.0
    } else if s > 1.0 - ENDPOINT_SERIES_WINDOW {
        1.0 - semicircle_upper_tail(1.0 - s)
    } else if s < -1.0 + ENDPOINT_SERIES_WINDOW {
        semicircle_upper_tail(1.0 + s)
    } else {
        0.5 + (s * ((1.0 - s) * (1.0 + s)).sqrt() + s.asin()) / PI
    }
}

/// Antiderivative of the semicircle CDF with `G(-1) = 0`:
/// `G(s) = s/2 + (-(1-s^2)^{3/2}/3 + s asin s + sqrt(1-s^2)) / pi`,
/// extended by 0 below the support and by `G(1) + (s - 1)` above.
pub fn semicircle_cdf_antideriv(s: f64) -> f64 {
    if s <= -1.0 {
        return 0.0;
    }
    if s >= 1.0 {
        return 1.0 + (s - 1.0);
    }
    let u = (1.0 - s) * (1.0 + s);
    let root = u.sqrt();
    0.5 * s + (-u * root / 3.0 + s * s.asin() + root) / PI
}

/// Beta density `x^{a-1} (1-x)^{b-1} / B(a, b)` on `(0, 1)`, 0 outside.
pub fn beta_pdf(z: f64, alpha: f64, beta: f64) -> Result<f64> {
    check_beta_params(alpha, beta)?;
    if z <= 0.0 || z >= 1.0 {
        return Ok(0.0);
    }
    Ok(
        ((alpha - 1.0) * z.ln() + (beta - 1.0) * (1.0 - z).ln() - special::ln_beta(alpha, beta))
            .exp(),
    )
}

/// Beta CDF via the regularized incomplete beta.
pub fn beta_cdf(z: f64, alpha: f64, beta: f64) -> Result<f64> {
    check_beta_params(alpha, beta)?;
    special::reg_inc_beta(alpha, beta, z.clamp(0.0, 1.0))
}

/// Closed-form Beta moments `(mean, second moment)`.
pub fn beta_moments(alpha: f64, beta: f64) -> Result<(f64, f64)> {
    check_beta_params(alpha, beta)?;
    let s = alpha + beta;
    let mean = alpha / s;
    let second = alpha * (alpha + 1.0) / (s * (s + 1.0));
    Ok((mean, second))
}

fn check_beta_params(alpha: f64, beta: f64) -> Result<()> {
    if alpha.is_nan() || beta.is_nan() || alpha <= 0.0 || beta <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "beta parameters must be positive, got ({alpha}, {beta})"
        )));
    }
    Ok(())
}

/// A continuous law the Wasserstein integrator can work against.
#[derive(Debug, Clone, PartialEq)]
pub enum ContinuousLaw {
    Semicircle,
    Beta { alpha: f64, beta: f64 },
}

impl ContinuousLaw {
    pub fn beta(alpha: f64, beta: f64) -> Result<Self> {
        check_beta_params(alpha, beta)?;
        Ok(Self::Beta { alpha, beta })
    }

    /// The limit of the rescaled first-swap law `X/n`.
    pub fn beta_three_halves() -> Self {
        Self::Beta {
            alpha: 1.5,
            beta: 1.5,
        }
    }

    /// Open support interval.
    pub fn support(&self) -> (f64, f64) {
        match self {
            Self::Semicircle => (-1.0, 1.0),
            Self::Beta { .. } => (0.0, 1.0),
        }
    }

    pub fn pdf(&self, x: f64) -> f64 {
        match self {
            Self::Semicircle => semicircle_pdf(x),
            Self::Beta { alpha, beta } => beta_pdf(x, *alpha, *beta).unwrap_or(f64::NAN),
        }
    }

    pub fn cdf(&self, x: f64) -> f64 {
        match self {
            Self::Semicircle => semicircle_cdf(x),
            Self::Beta { alpha, beta } => beta_cdf(x, *alpha, *beta).unwrap_or(f64::NAN),
        }
    }

    /// `G(t) = integral of the CDF from the lower end of the support`,
    /// extended by 0 below and linearly (slope 1) above.
    ///
    /// For Beta(3/2, 3/2) this is the closed form inherited from the
    /// semicircle antiderivative through `z = (1+s)/2`; the test suite
    /// validates it against adaptive quadrature of the incomplete-beta CDF
    /// to 1e-12. General Beta parameters go through
    /// `z I_z(a,b) - mean * I_z(a+1,b)`.
    pub fn cdf_antideriv(&self, t: f64) -> f64 {
        match self {
            Self::Semicircle => semicircle_cdf_antideriv(t),
            Self::Beta { alpha, beta } => {
                if (*alpha, *beta) == (1.5, 1.5) {
                    0.5 * semicircle_cdf_antideriv(2.0 * t - 1.0)
                } else {
                    if t <= 0.0 {
                        return 0.0;
                    }
                    if t >= 1.0 {
                        // integral over [0,1] of the CDF is 1 - mean
                        return (1.0 - alpha / (alpha + beta)) + (t - 1.0);
                    }
                    let i1 = special::reg_inc_beta(*alpha, *beta, t).unwrap_or(f64::NAN);
                    let i2 = special::reg_inc_beta(*alpha + 1.0, *beta, t).unwrap_or(f64::NAN);
                    t * i1 - alpha / (alpha + beta) * i2
                }
            }
        }
    }

    pub fn mean(&self) -> f64 {
        match self {
            Self::Semicircle => 0.0,
            Self::Beta { alpha, beta } => alpha / (alpha + beta),
        }
    }

    pub fn second_moment(&self) -> f64 {
        match self {
            Self::Semicircle => 0.25, // E S^2 = 1/4
            Self::Beta { alpha, beta } => {
                let s = alpha + beta;
                alpha * (alpha + 1.0) / (s * (s + 1.0))
            }
        }
    }

    /// Small JSON descriptor `{kind, alpha, beta}` with a stable key order.
    pub fn descriptor_json(&self) -> String {
        match self {
            Self::Semicircle => r#"{"kind":"semicircle","alpha":null,"beta":null}"#.to_string(),
            Self::Beta { alpha, beta } => {
                format!(r#"{{"kind":"beta","alpha":{alpha},"beta":{beta}}}"#)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::integrate;

    #[test]
    fn semicircle_pdf_values() {
        assert!((semicircle_pdf(0.0) - 2.0 / PI).abs() < 1e-15);
        assert_eq!(semicircle_pdf(1.0), 0.0);
        assert_eq!(semicircle_pdf(-1.0), 0.0);
        assert_eq!(semicircle_pdf(1.5), 0.0);
    }

    #[test]
    fn semicircle_pdf_normalizes() {
        let r = integrate(semicircle_pdf, -1.0, 1.0, 1e-13).unwrap();
        assert!((r.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn semicircle_cdf_anchors() {
        assert_eq!(semicircle_cdf(-1.0), 0.0);
        assert!((semicircle_cdf(0.0) - 0.5).abs() < 1e-15);
        assert_eq!(semicircle_cdf(1.0), 1.0);
    }

    // Regression constant fixed by adaptive quadrature of the density over
    // (-1, 1/2) at tolerance 1e-13; agrees with 2/3 + sqrt(3)/(4 pi).
    const CDF_AT_HALF: f64 = 0.8044988905221147;

    #[test]
    fn semicircle_cdf_at_one_half_regression() {
        assert!((semicircle_cdf(0.5) - CDF_AT_HALF).abs() < 1e-12);
        let quad = integrate(semicircle_pdf, -1.0, 0.5, 1e-13).unwrap();
        assert!((quad.value - CDF_AT_HALF).abs() < 1e-12);
    }

    #[test]
    fn semicircle_cdf_matches_quadrature_everywhere() {
        for i in 0..=40 {
            let s = -1.0 + 2.0 * i as f64 / 40.0;
            let quad = integrate(semicircle_pdf, -1.0, s, 1e-13).unwrap();
            assert!(
                (semicircle_cdf(s) - quad.value).abs() < 1e-12,
                "s={s}: cdf {} vs quad {}",
                semicircle_cdf(s),
                quad.value
            );
        }
    }

    #[test]
    fn semicircle_cdf_tail_series_is_continuous() {
        // on both sides of the series window the two branches must agree
        for delta in [0.9e-8, 1.1e-8] {
            let s = 1.0 - delta;
            let series = 1.0 - semicircle_upper_tail(delta);
            let closed = 0.5 + (s * ((1.0 - s) * (1.0 + s)).sqrt() + s.asin()) / PI;
            assert!((series - closed).abs() < 1e-15, "delta={delta}");
        }
        // symmetry through the series region
        let s = 1.0 - 5e-9;
        assert!((semicircle_cdf(s) + semicircle_cdf(-s) - 1.0).abs() < 1e-16);
    }

    #[test]
    fn semicircle_cdf_nondecreasing_and_differentiates_to_pdf() {
        // central differences with step 1e-5 recover the density within
        // 1e-6 on (-0.99, 0.99); the CDF itself never decreases
        let h = 1e-5;
        let mut prev = -1.0f64;
        for i in 0..=1000 {
            let s = -1.0 + 2.0 * i as f64 / 1000.0;
            let cdf = semicircle_cdf(s);
            assert!(cdf >= prev, "cdf decreased at s={s}");
            prev = cdf;
            if s.abs() < 0.99 {
                let d = (semicircle_cdf(s + h) - semicircle_cdf(s - h)) / (2.0 * h);
                assert!(
                    (d - semicircle_pdf(s)).abs() < 1e-6,
                    "s={s}: derivative {d} vs pdf {}",
                    semicircle_pdf(s)
                );
            }
        }
    }

    #[test]
    fn semicircle_antideriv_differentiates_to_cdf() {
        let h = 1e-6;
        for i in 1..40 {
            let s = -1.0 + 2.0 * i as f64 / 40.0;
            let d = (semicircle_cdf_antideriv(s + h) - semicircle_cdf_antideriv(s - h)) / (2.0 * h);
            assert!((d - semicircle_cdf(s)).abs() < 1e-9, "s={s}");
        }
        assert_eq!(semicircle_cdf_antideriv(-1.0), 0.0);
        assert!((semicircle_cdf_antideriv(1.0) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn beta_pdf_values() {
        // density at the midpoint of Beta(3/2, 3/2) is 4/pi
        let mid = beta_pdf(0.5, 1.5, 1.5).unwrap();
        assert!((mid - 4.0 / PI).abs() < 1e-14);
        assert_eq!(beta_pdf(-0.1, 1.5, 1.5).unwrap(), 0.0);
        assert!(beta_pdf(0.5, 0.0, 1.0).is_err());
        assert!(beta_pdf(0.5, 1.0, -1.0).is_err());
    }

    #[test]
    fn beta_cdf_midpoint_symmetry() {
        assert!((beta_cdf(0.5, 1.5, 1.5).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn beta_moments_closed_forms() {
        let (mean, second) = beta_moments(1.5, 1.5).unwrap();
        assert!((mean - 0.5).abs() < 1e-15);
        // E(Z^2 / 2) = 5/32
        assert!((second / 2.0 - 5.0 / 32.0).abs() < 1e-15);
        let (_, second) = beta_moments(1.0, 1.0).unwrap();
        assert!((second - 1.0 / 3.0).abs() < 1e-15);
        assert!(beta_moments(-1.0, 1.0).is_err());
    }

    #[test]
    fn beta_density_normalizes() {
        let r = integrate(|z| beta_pdf(z, 1.5, 1.5).unwrap(), 0.0, 1.0, 1e-13).unwrap();
        assert!((r.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn cdf_identity_two_z_minus_one_spot() {
        // Beta(3/2,3/2) CDF equals semicircle CDF of 2z-1; the two routes
        // (continued fraction vs closed form) must agree tightly
        for z in [0.001, 0.1, 0.25, 0.5, 0.77, 0.95, 0.9999] {
            let lhs = beta_cdf(z, 1.5, 1.5).unwrap();
            let rhs = semicircle_cdf(2.0 * z - 1.0);
            assert!((lhs - rhs).abs() < 1e-13, "z={z}: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn beta_antideriv_closed_form_vs_quadrature() {
        let law = ContinuousLaw::beta_three_halves();
        for t in [0.05, 0.3, 0.5, 0.62, 0.9, 1.0] {
            let quad = integrate(|z| beta_cdf(z, 1.5, 1.5).unwrap(), 0.0, t, 1e-13).unwrap();
            assert!(
                (law.cdf_antideriv(t) - quad.value).abs() < 1e-12,
                "t={t}: closed {} vs quad {}",
                law.cdf_antideriv(t),
                quad.value
            );
        }
    }

    #[test]
    fn general_beta_antideriv_route() {
        let law = ContinuousLaw::beta(2.0, 3.0).unwrap();
        for t in [0.2, 0.5, 0.8] {
            let quad = integrate(|z| beta_cdf(z, 2.0, 3.0).unwrap(), 0.0, t, 1e-13).unwrap();
            assert!((law.cdf_antideriv(t) - quad.value).abs() < 1e-12, "t={t}");
        }
    }

    #[test]
    fn law_descriptor_json() {
        assert_eq!(
            ContinuousLaw::Semicircle.descriptor_json(),
            r#"{"kind":"semicircle","alpha":null,"beta":null}"#
        );
        assert_eq!(
            ContinuousLaw::beta_three_halves().descriptor_json(),
            r#"{"kind":"beta","alpha":1.5,"beta":1.5}"#
        );
    }

    #[test]
    fn law_moments() {
        let z = ContinuousLaw::beta_three_halves();
        assert!((z.mean() - 0.5).abs() < 1e-15);
        assert!((z.second_moment() - 5.0 / 16.0).abs() < 1e-15);
        let s = ContinuousLaw::Semicircle;
        assert_eq!(s.mean(), 0.0);
        assert_eq!(s.second_moment(), 0.25);
    }
}
