//! The exact law of the first swap location.
//!
//! For a uniform random sorting network on `n` wires, the location
//! `X in {1, ..., n-1}` of the first adjacent transposition has the
//! product-form law
//!
//! ```text
//! p(k) = (1 / C(n,2)) * prod_{j=1}^{k-1} (2j+1)/(2j)
//!                     * prod_{j=1}^{n-k-1} (2j+1)/(2j)
//! ```
//!
//! Every statement in this module holds with exact rational equality: the
//! normalization, the symmetry `p(k) = p(n-k)`, the discrete score
//! `psi = (p(k+1) - p(k)) / p(k)`, the weight `c(k) = k(2(n-k)-1)`, and
//! the moment identities `E[X/n] = 1/2` and
//! `E[(X/n)^2] = 5/16 - (2+n)/(16 n^2)`. Tests therefore demand exact
//! zeros, not tolerances.

use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{rat, rat_int, rat_to_f64, Rat};
use crate::stein_discrete::{IntervalPmf, SteinTriple};

/// The exact first-swap law on `{1, ..., n-1}`.
///
/// Alongside the reduced probabilities it keeps the raw integer numerators
/// over one common denominator; the moment sums and the cumulative table
/// the Wasserstein integrator consumes run on plain big-integer arithmetic
/// instead of reducing a fraction per term, which is what makes the sweeps
/// up to n = 1000 cheap.
#[derive(Debug, Clone)]
pub struct FirstLetterLaw {
    n: usize,
    numerators: Vec<BigInt>, // p(k) = numerators[k-1] / common_denom
    common_denom: BigInt,
    /// reduced probabilities, materialized on first access
    probs: OnceLock<Vec<Rat>>,
}

impl PartialEq for FirstLetterLaw {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.probs() == other.probs()
    }
}

impl Eq for FirstLetterLaw {}

impl FirstLetterLaw {
    /// Build the law for the symmetric group on `n` letters.
    ///
    /// With `odd(m) = prod_{j<=m} (2j+1)` and `suffix(m) = prod_{j>m} (2j)`
    /// (products up to `j = n-2`), the unreduced form is
    /// `p(k) = odd(k-1) odd(n-k-1) suffix(k-1) suffix(n-k-1) / D` over the
    /// common denominator `D = C(n,2) * (prod 2j)^2`.
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::NTooSmall(n));
        }
        let top = n - 2; // products run over j = 1..=n-2
        let mut odd = Vec::with_capacity(top + 1);
        odd.push(BigInt::one());
        for j in 1..=top as i64 {
            let prev: &BigInt = odd.last().unwrap();
            odd.push(prev * (2 * j + 1));
        }
        let mut suffix = vec![BigInt::one(); top + 1];
        for m in (0..top as i64).rev() {
            suffix[m as usize] = &suffix[m as usize + 1] * (2 * (m + 1));
        }
        let binom = BigInt::from(n * (n - 1) / 2);
        let common_denom = &binom * &suffix[0] * &suffix[0];
        let numerators: Vec<BigInt> = (1..n)
            .map(|k| &odd[k - 1] * &odd[n - k - 1] * &suffix[k - 1] * &suffix[n - k - 1])
            .collect();
        Ok(Self {
            n,
            numerators,
            common_denom,
            probs: OnceLock::new(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `P(X = k)` for `k` in `{1, ..., n-1}`.
    pub fn prob(&self, k: usize) -> Result<&Rat> {
        if k < 1 || k > self.n - 1 {
            return Err(Error::OutOfRange {
                what: "first-letter pmf",
                k: k as i64,
                lo: 1,
                hi: self.n as i64 - 1,
            });
        }
        Ok(&self.probs()[k - 1])
    }

    /// All probabilities in lowest terms, indexed by `k - 1`.
    pub fn probs(&self) -> &[Rat] {
        self.probs.get_or_init(|| {
            self.numerators
                .iter()
                .map(|num| Rat::new(num.clone(), self.common_denom.clone()))
                .collect()
        })
    }

    /// Construct directly from per-letter counts out of `total` words
    /// (used by the enumeration oracle).
    pub fn from_counts(n: usize, counts: &[u64], total: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::NTooSmall(n));
        }
        if counts.len() != n - 1 || total == 0 {
            return Err(Error::InvalidParameter(format!(
                "need {} counts and a positive total",
                n - 1
            )));
        }
        let common_denom = BigInt::from(total);
        let numerators: Vec<BigInt> = counts.iter().map(|&c| BigInt::from(c)).collect();
        Ok(Self {
            n,
            numerators,
            common_denom,
            probs: OnceLock::new(),
        })
    }

    /// Exact cumulative sums `P(X <= k)` for `k = 1..n-1`; the last entry is 1.
    pub fn cumulative(&self) -> Vec<Rat> {
        let mut acc = BigInt::zero();
        self.numerators
            .iter()
            .map(|num| {
                acc += num;
                Rat::new(acc.clone(), self.common_denom.clone())
            })
            .collect()
    }

    /// Cumulative sums rounded to doubles, without reducing or dividing
    /// any big fractions (top-bits approximation, within a few ulp).
    pub fn cumulative_f64(&self) -> Vec<f64> {
        let denom = self.common_denom.magnitude();
        let mut acc = BigUint::zero();
        self.numerators
            .iter()
            .map(|num| {
                acc += num.magnitude();
                crate::rational::biguint_ratio_to_f64_fast(&acc, denom)
            })
            .collect()
    }

    /// Exact moments of `W = X/n`: `(E[W], E[W^2])`.
    pub fn moments(&self) -> (Rat, Rat) {
        let n = BigInt::from(self.n);
        let mut sum_k = BigInt::zero();
        let mut sum_k2 = BigInt::zero();
        for (i, num) in self.numerators.iter().enumerate() {
            let k = BigInt::from(i + 1);
            sum_k += num * &k;
            sum_k2 += num * &k * &k;
        }
        let ew = Rat::new(sum_k, &n * &self.common_denom);
        let ew2 = Rat::new(sum_k2, &n * &n * &self.common_denom);
        (ew, ew2)
    }

    /// The Stein triple `(p, psi, c)` driving the zero-mean identity, with
    /// `psi` derived from the pmf ratios and `c(k) = k(2(n-k)-1)`.
    pub fn stein_triple(&self) -> SteinTriple {
        let pmf = IntervalPmf::new(1, self.probs().to_vec()).expect("valid by construction");
        let c: Vec<Rat> = (0..self.n as i64)
            .map(|k| c_weight(self.n, k).expect("k in range"))
            .collect();
        SteinTriple::new(pmf, c).expect("c(0) = 0 by construction")
    }

    /// The pmf table as `(k, numerator, denominator, f64)` rows.
    pub fn rows(&self) -> Vec<(usize, BigInt, BigInt, f64)> {
        self.probs()
            .iter()
            .enumerate()
            .map(|(i, p)| (i + 1, p.numer().clone(), p.denom().clone(), rat_to_f64(p)))
            .collect()
    }
}

/// Convenience wrapper: the exact pmf of the first swap location.
pub fn pmf(n: usize) -> Result<FirstLetterLaw> {
    FirstLetterLaw::new(n)
}

/// The discrete score `psi(k) = (n - 2k - 1) / (k (2(n-k) - 1))` in closed
/// form; equals `p(k+1)/p(k) - 1` with the convention `p(n) = 0`.
pub fn psi(n: usize, k: usize) -> Result<Rat> {
    if n < 2 {
        return Err(Error::NTooSmall(n));
    }
    if k < 1 || k > n - 1 {
        return Err(Error::OutOfRange {
            what: "psi",
            k: k as i64,
            lo: 1,
            hi: n as i64 - 1,
        });
    }
    let (n, k) = (n as i64, k as i64);
    Ok(rat(n - 2 * k - 1, k * (2 * (n - k) - 1)))
}

/// The weight `c(k) = k (2(n-k) - 1)` on `{0, ..., n-1}`; `c(0) = 0` is the
/// boundary condition the zero-mean identity needs.
pub fn c_weight(n: usize, k: i64) -> Result<Rat> {
    if n < 2 {
        return Err(Error::NTooSmall(n));
    }
    if k < 0 || k > n as i64 - 1 {
        return Err(Error::OutOfRange {
            what: "c_weight",
            k,
            lo: 0,
            hi: n as i64 - 1,
        });
    }
    Ok(rat_int(k * (2 * (n as i64 - k) - 1)))
}

/// `c(k) psi(k) + c(k) - c(k-1)`, assembled from [`psi`] and [`c_weight`].
/// Simplifies to `3n - 6k`; the test suite checks that exactly.
pub fn linear_coefficient(n: usize, k: usize) -> Result<Rat> {
    let c_k = c_weight(n, k as i64)?;
    let c_km1 = c_weight(n, k as i64 - 1)?;
    let psi_k = psi(n, k)?;
    Ok(&c_k * &psi_k + &c_k - &c_km1)
}

/// Exact `(E[W], E[W^2])` for `W = X/n`, computed by summation over the pmf.
pub fn moments(n: usize) -> Result<(Rat, Rat)> {
    Ok(FirstLetterLaw::new(n)?.moments())
}

/// The closed form `5/16 - (2+n)/(16 n^2)` that `E[W^2]` must equal.
pub fn second_moment_closed_form(n: usize) -> Rat {
    let n = n as i64;
    rat(5, 16) - rat(2 + n, 16 * n * n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn rejects_n_below_two() {
        assert!(FirstLetterLaw::new(0).is_err());
        assert!(FirstLetterLaw::new(1).is_err());
        assert!(psi(1, 1).is_err());
        assert!(c_weight(1, 0).is_err());
    }

    #[test]
    fn n2_is_deterministic() {
        let law = FirstLetterLaw::new(2).unwrap();
        assert_eq!(law.probs(), &[Rat::one()]);
    }

    #[test]
    fn n3_splits_evenly() {
        let law = FirstLetterLaw::new(3).unwrap();
        assert_eq!(law.probs(), &[rat(1, 2), rat(1, 2)]);
    }

    #[test]
    fn n4_matches_enumeration_counts() {
        // 16 networks on 4 wires, first letters split 5 : 6 : 5
        let law = FirstLetterLaw::new(4).unwrap();
        assert_eq!(law.probs(), &[rat(5, 16), rat(3, 8), rat(5, 16)]);
    }

    #[test]
    fn prob_is_range_checked() {
        let law = FirstLetterLaw::new(4).unwrap();
        assert!(law.prob(0).is_err());
        assert!(law.prob(4).is_err());
        assert_eq!(law.prob(2).unwrap(), &rat(3, 8));
    }

    #[test]
    fn psi_examples() {
        assert_eq!(psi(4, 1).unwrap(), rat(1, 5));
        assert_eq!(psi(4, 2).unwrap(), rat(-1, 6));
        for n in [2usize, 3, 4, 9, 20] {
            assert_eq!(psi(n, n - 1).unwrap(), rat(-1, 1), "psi(n-1) = -1 at n={n}");
        }
        assert!(psi(4, 0).is_err());
        assert!(psi(4, 4).is_err());
    }

    #[test]
    fn psi_closed_form_equals_pmf_ratio() {
        for n in 2..=40 {
            let law = FirstLetterLaw::new(n).unwrap();
            for k in 1..n {
                let ratio = if k == n - 1 {
                    -Rat::one() // p(n) = 0 convention
                } else {
                    law.prob(k + 1).unwrap() / law.prob(k).unwrap() - Rat::one()
                };
                assert_eq!(psi(n, k).unwrap(), ratio, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn c_weight_examples() {
        assert_eq!(c_weight(4, 0).unwrap(), rat_int(0));
        assert_eq!(c_weight(4, 1).unwrap(), rat_int(5));
        assert_eq!(c_weight(4, 3).unwrap(), rat_int(3));
        assert!(c_weight(4, -1).is_err());
        assert!(c_weight(4, 4).is_err());
    }

    #[test]
    fn linear_coefficient_examples_and_closed_form() {
        assert_eq!(linear_coefficient(4, 2).unwrap(), rat_int(0));
        assert_eq!(linear_coefficient(4, 1).unwrap(), rat_int(6));
        assert_eq!(linear_coefficient(5, 4).unwrap(), rat_int(-9));
        for n in 2..=30 {
            for k in 1..n {
                assert_eq!(
                    linear_coefficient(n, k).unwrap(),
                    rat_int(3 * n as i64 - 6 * k as i64),
                    "n={n} k={k}"
                );
            }
        }
    }

    #[test]
    fn moment_examples() {
        let (ew, ew2) = moments(4).unwrap();
        assert_eq!(ew, rat(1, 2));
        // E(W^2/2) = 37/256 from the enumerated pmf
        assert_eq!(&ew2 / rat_int(2), rat(37, 256));
        assert_eq!(ew2, second_moment_closed_form(4));

        let (_, ew2) = moments(2).unwrap();
        assert_eq!(ew2, rat(1, 4));
    }

    #[test]
    fn law_from_counts() {
        let law = FirstLetterLaw::from_counts(4, &[5, 6, 5], 16).unwrap();
        assert_eq!(&law, &FirstLetterLaw::new(4).unwrap());
        assert!(FirstLetterLaw::from_counts(4, &[5, 6], 16).is_err());
    }

    #[test]
    fn cumulative_ends_at_one() {
        let law = FirstLetterLaw::new(7).unwrap();
        let cum = law.cumulative();
        assert!(cum.last().unwrap().is_one());
        assert!(cum.windows(2).all(|w| w[0] < w[1]));
    }
}
