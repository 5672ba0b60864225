//! Zero-mean identities for integer-interval probability mass functions.
//!
//! For a pmf `p` on the integer interval `[a, b]` define the score
//! `psi(k) = (p(k+1) - p(k)) / p(k)` with the convention `p(b+1) = 0`
//! (so `psi(b) = -1` is always defined). Then for every weight `c` on
//! `[a-1, b]` with `c(a-1) = 0` and every `f : [a-1, b] -> Q`,
//!
//! ```text
//! E[ c(Y-1) Df(Y-1) + (c(Y) psi(Y) + c(Y) - c(Y-1)) f(Y) ] = 0,
//! ```
//!
//! where `Df(k) = f(k+1) - f(k)`. The underlying characterization is
//!
//! ```text
//! E[ Df(Y-1) + psi(Y) f(Y) + f(a-1) 1(Y = a) ] = 0,
//! ```
//!
//! a telescoping statement that needs no structure on `p` at all. Both are
//! evaluated here in exact rational arithmetic, so the test suites can
//! assert a residual of exactly zero.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::first_letter::FirstLetterLaw;
use crate::rational::{rat, rat_int, Rat};
use crate::rng::SplitMix64;

/// A probability mass function supported on an integer interval `[a, b]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalPmf {
    a: i64,
    masses: Vec<Rat>, // masses[i] = p(a + i), all positive, summing to 1
}

impl IntervalPmf {
    pub fn new(a: i64, masses: Vec<Rat>) -> Result<Self> {
        if masses.is_empty() {
            return Err(Error::InvalidParameter("empty support".into()));
        }
        if masses.iter().any(|m| !m.is_positive()) {
            return Err(Error::InvalidParameter(
                "all masses must be strictly positive".into(),
            ));
        }
        let total: Rat = masses.iter().sum();
        if !total.is_one() {
            return Err(Error::InvalidParameter(format!(
                "masses sum to {total}, not 1"
            )));
        }
        Ok(Self { a, masses })
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.a + self.masses.len() as i64 - 1
    }

    pub fn mass(&self, k: i64) -> Rat {
        if k < self.a || k > self.b() {
            Rat::zero()
        } else {
            self.masses[(k - self.a) as usize].clone()
        }
    }

    /// `psi(k) = (p(k+1) - p(k)) / p(k)` with `p(b+1) = 0`.
    pub fn psi(&self, k: i64) -> Result<Rat> {
        if k < self.a || k > self.b() {
            return Err(Error::OutOfRange {
                what: "psi",
                k,
                lo: self.a,
                hi: self.b(),
            });
        }
        let p_k = self.mass(k);
        Ok(self.mass(k + 1) / p_k - Rat::one())
    }

    /// A pmf with random small-rational masses on `[a, b]`, normalized.
    pub fn random(a: i64, b: i64, rng: &mut SplitMix64) -> Self {
        assert!(a <= b);
        let raw: Vec<Rat> = (a..=b)
            .map(|_| rat(rng.next_in(1, 16), rng.next_in(1, 16)))
            .collect();
        let total: Rat = raw.iter().sum();
        let masses = raw.into_iter().map(|m| m / &total).collect();
        Self { a, masses }
    }
}

/// A pmf together with its score `psi` and a weight `c` with `c(a-1) = 0`.
#[derive(Debug, Clone)]
pub struct SteinTriple {
    pmf: IntervalPmf,
    psi: Vec<Rat>, // psi[i] on [a, b]
    c: Vec<Rat>,   // c[i] on [a-1, b]
}

impl SteinTriple {
    /// Derives `psi` from the pmf; `c` must be given on `[a-1, b]` with
    /// `c(a-1) = 0`.
    pub fn new(pmf: IntervalPmf, c: Vec<Rat>) -> Result<Self> {
        let len = pmf.masses.len();
        if c.len() != len + 1 {
            return Err(Error::InvalidParameter(format!(
                "c must have {} values on [a-1, b], got {}",
                len + 1,
                c.len()
            )));
        }
        if !c[0].is_zero() {
            return Err(Error::InvalidParameter(format!(
                "c(a-1) must be 0, got {}",
                c[0]
            )));
        }
        let psi = (pmf.a..=pmf.b())
            .map(|k| pmf.psi(k))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { pmf, psi, c })
    }

    pub fn pmf(&self) -> &IntervalPmf {
        &self.pmf
    }

    pub fn psi_at(&self, k: i64) -> &Rat {
        &self.psi[(k - self.pmf.a) as usize]
    }

    pub fn c_at(&self, k: i64) -> &Rat {
        &self.c[(k - (self.pmf.a - 1)) as usize]
    }
}

/// A rational-valued function on an integer interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TestFunction {
    lo: i64,
    values: Vec<Rat>,
}

impl TestFunction {
    pub fn new(lo: i64, values: Vec<Rat>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidParameter("empty test function".into()));
        }
        Ok(Self { lo, values })
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.values.len() as i64 - 1
    }

    pub fn value(&self, k: i64) -> Result<&Rat> {
        if k < self.lo || k > self.hi() {
            return Err(Error::OutOfRange {
                what: "test function",
                k,
                lo: self.lo,
                hi: self.hi(),
            });
        }
        Ok(&self.values[(k - self.lo) as usize])
    }

    fn require_domain(&self, lo: i64, hi: i64) -> Result<()> {
        if self.lo > lo || self.hi() < hi {
            return Err(Error::DomainMismatch {
                got_lo: self.lo,
                got_hi: self.hi(),
                need_lo: lo,
                need_hi: hi,
            });
        }
        Ok(())
    }

    /// Random values `u/v` with `u` uniform in `[-16, 16]`, `v` in `[1, 16]`.
    /// Small denominators keep the exact arithmetic fast.
    pub fn random(lo: i64, hi: i64, rng: &mut SplitMix64) -> Self {
        let values = (lo..=hi)
            .map(|_| rat(rng.next_in(-16, 16), rng.next_in(1, 16)))
            .collect();
        Self { lo, values }
    }

    pub fn constant(lo: i64, hi: i64, value: Rat) -> Self {
        Self {
            lo,
            values: vec![value; (hi - lo + 1) as usize],
        }
    }
}

/// `E[c(Y-1) Df(Y-1) + (c(Y) psi(Y) + c(Y) - c(Y-1)) f(Y)]`, exactly.
///
/// Returns zero for every `f` when the triple is internally consistent;
/// the caller asserts that, this function just evaluates.
pub fn check_identity_prop21(triple: &SteinTriple, f: &TestFunction) -> Result<Rat> {
    let (a, b) = (triple.pmf.a, triple.pmf.b());
    f.require_domain(a - 1, b)?;
    let mut total = Rat::zero();
    for k in a..=b {
        let p = triple.pmf.mass(k);
        let df_km1 = f.value(k)? - f.value(k - 1)?;
        let coeff = triple.c_at(k) * triple.psi_at(k) + triple.c_at(k) - triple.c_at(k - 1);
        total += p * (triple.c_at(k - 1) * df_km1 + coeff * f.value(k)?);
    }
    Ok(total)
}

/// `E[Df(Y-1) + psi(Y) f(Y) + f(a-1) 1(Y = a)]`, exactly.
///
/// Zero for every pmf and every `f` on `[a-1, b]`.
pub fn check_characterization(pmf: &IntervalPmf, f: &TestFunction) -> Result<Rat> {
    let (a, b) = (pmf.a, pmf.b());
    f.require_domain(a - 1, b)?;
    let mut total = Rat::zero();
    for k in a..=b {
        let df_km1 = f.value(k)? - f.value(k - 1)?;
        total += pmf.mass(k) * (df_km1 + pmf.psi(k)? * f.value(k)?);
    }
    total += pmf.mass(a) * f.value(a - 1)?;
    Ok(total)
}

/// The rescaled identity for `W = X/n` on the grid `{k/n : 0 <= k <= n-1}`:
///
/// ```text
/// E[(nW - 1)(1 - W + 1/2n) D_{1/n} f(W - 1/n) + (3/2 (1-W) - 3/2 W) f(W)]
/// ```
///
/// `f_grid[k]` is the value at `k/n`. Exactly zero for every `f`.
pub fn rescaled_identity_residual(n: usize, f_grid: &[Rat]) -> Result<Rat> {
    if n < 2 {
        return Err(Error::NTooSmall(n));
    }
    if f_grid.len() != n {
        return Err(Error::InvalidParameter(format!(
            "need f on the full grid of {n} points, got {}",
            f_grid.len()
        )));
    }
    let law = FirstLetterLaw::new(n)?;
    let n_i = n as i64;
    let mut total = Rat::zero();
    for k in 1..n {
        let k_i = k as i64;
        let p = law.prob(k)?;
        // (nW - 1) = k - 1 and (1 - W + 1/2n) = (2n - 2k + 1) / 2n
        let front = rat_int(k_i - 1) * rat(2 * n_i - 2 * k_i + 1, 2 * n_i);
        let step = &f_grid[k] - &f_grid[k - 1];
        // (3/2)(1 - W) - (3/2) W = 3 (n - 2k) / 2n
        let drift = rat(3 * (n_i - 2 * k_i), 2 * n_i);
        total += p * (front * step + drift * &f_grid[k]);
    }
    Ok(total)
}

/// Outcome of one randomized exact-identity sweep.
#[derive(Debug, Clone)]
pub struct ExactSuiteOutcome {
    pub cases: usize,
    pub failures: Vec<String>,
}

impl ExactSuiteOutcome {
    pub fn all_zero(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Identity check for the first-letter triple against `funcs_per_n` random
/// rational test functions for every `n` in the range.
pub fn run_prop21_suite(
    n_lo: usize,
    n_hi: usize,
    funcs_per_n: usize,
    seed: u64,
) -> Result<ExactSuiteOutcome> {
    let mut rng = SplitMix64::new(seed);
    let mut outcome = ExactSuiteOutcome {
        cases: 0,
        failures: Vec::new(),
    };
    for n in n_lo..=n_hi {
        let triple = FirstLetterLaw::new(n)?.stein_triple();
        let mut branch = rng.split();
        for i in 0..funcs_per_n {
            let f = TestFunction::random(0, n as i64 - 1, &mut branch);
            let residual = check_identity_prop21(&triple, &f)?;
            outcome.cases += 1;
            if !residual.is_zero() {
                outcome
                    .failures
                    .push(format!("prop21 n={n} f#{i}: residual {residual}"));
            }
        }
    }
    Ok(outcome)
}

/// Characterization check on random pmfs over random intervals
/// (width at most 12) with random test functions.
pub fn run_characterization_suite(count: usize, seed: u64) -> Result<ExactSuiteOutcome> {
    let mut rng = SplitMix64::new(seed);
    let mut outcome = ExactSuiteOutcome {
        cases: 0,
        failures: Vec::new(),
    };
    for i in 0..count {
        let a = rng.next_in(-6, 6);
        let b = a + rng.next_in(0, 12);
        let pmf = IntervalPmf::random(a, b, &mut rng);
        let f = TestFunction::random(a - 1, b, &mut rng);
        let residual = check_characterization(&pmf, &f)?;
        outcome.cases += 1;
        if !residual.is_zero() {
            outcome.failures.push(format!(
                "characterization #{i} on [{a},{b}]: residual {residual}"
            ));
        }
    }
    Ok(outcome)
}

/// Rescaled-identity check with random grid functions for every `n` in range.
pub fn run_rescaled_suite(
    n_lo: usize,
    n_hi: usize,
    funcs_per_n: usize,
    seed: u64,
) -> Result<ExactSuiteOutcome> {
    let mut rng = SplitMix64::new(seed);
    let mut outcome = ExactSuiteOutcome {
        cases: 0,
        failures: Vec::new(),
    };
    for n in n_lo..=n_hi {
        let mut branch = rng.split();
        for i in 0..funcs_per_n {
            let f_grid: Vec<Rat> = (0..n)
                .map(|_| rat(branch.next_in(-16, 16), branch.next_in(1, 16)))
                .collect();
            let residual = rescaled_identity_residual(n, &f_grid)?;
            outcome.cases += 1;
            if !residual.is_zero() {
                outcome
                    .failures
                    .push(format!("rescaled n={n} f#{i}: residual {residual}"));
            }
        }
    }
    Ok(outcome)
}
