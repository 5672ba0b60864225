//! Sorting networks as words: validation, exhaustive enumeration, counting,
//! Yang–Baxter statistics, and seeded sampling.
//!
//! A word is built left to right by right-multiplying adjacent
//! transpositions onto the identity; a letter `s` is admissible exactly
//! when the current one-line array ascends at position `s`, which is what
//! keeps every prefix reduced. Every maximal chain of ascent extensions
//! terminates at the reverse permutation after exactly `C(n,2)` steps, so
//! depth-first search over ascent positions emits each sorting network on
//! `n` wires exactly once.
//!
//! Exhaustive enumeration is capped at `n = 6` (292,864 words); the next
//! case already has over a billion. All statistics over the uniform
//! measure are exact rationals obtained by counting.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::first_letter::FirstLetterLaw;
use crate::rational::{rat_int, Rat};
use crate::rng::SplitMix64;

/// Largest `n` for which exhaustive enumeration is supported.
pub const ENUMERATION_CAP: usize = 6;

/// A permutation of `{1, ..., n}` in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    one_line: Vec<u32>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self {
            one_line: (1..=n as u32).collect(),
        }
    }

    /// The reverse permutation `n, n-1, ..., 1` — the longest element.
    pub fn longest(n: usize) -> Self {
        Self {
            one_line: (1..=n as u32).rev().collect(),
        }
    }

    pub fn one_line(&self) -> &[u32] {
        &self.one_line
    }

    pub fn n(&self) -> usize {
        self.one_line.len()
    }

    /// Ascent at position `s` (1-based): value at `s` below value at `s+1`.
    pub fn ascends_at(&self, s: usize) -> bool {
        self.one_line[s - 1] < self.one_line[s]
    }

    /// Right-multiply by the adjacent transposition at position `s`,
    /// swapping the entries in positions `s` and `s+1`.
    pub fn apply_adjacent(&mut self, s: usize) {
        self.one_line.swap(s - 1, s);
    }

    /// Number of inversions, i.e. the Coxeter length.
    pub fn length(&self) -> usize {
        let v = &self.one_line;
        let mut count = 0;
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                if v[i] > v[j] {
                    count += 1;
                }
            }
        }
        count
    }
}

/// A candidate word: `C(n,2)` letters in `{1, ..., n-1}` multiplying to
/// the reverse permutation with every prefix reduced.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ReducedWord {
    n: usize,
    letters: Vec<u16>,
}

impl ReducedWord {
    pub fn new(n: usize, letters: Vec<u16>) -> Self {
        Self { n, letters }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[u16] {
        &self.letters
    }

    pub fn first_letter(&self) -> Option<u16> {
        self.letters.first().copied()
    }
}

/// Why a word fails validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WordDefect {
    WrongLength {
        expected: usize,
        got: usize,
    },
    LetterOutOfRange {
        position: usize,
        letter: u16,
    },
    /// The prefix ending at `position` (1-based) applies a descent there,
    /// so it is not reduced.
    PrefixNotReduced {
        position: usize,
    },
}

impl std::fmt::Display for WordDefect {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::WrongLength { expected, got } => {
                write!(f, "expected C(n,2) = {expected} letters, got {got}")
            }
            Self::LetterOutOfRange { position, letter } => {
                write!(f, "letter {letter} at position {position} is out of range")
            }
            Self::PrefixNotReduced { position } => {
                write!(f, "prefix of length {position} is not reduced")
            }
        }
    }
}

/// Validate a word, with a diagnostic on failure.
///
/// A word that multiplies out in `C(n,2)` length-increasing steps
/// necessarily lands on the reverse permutation; any descent application
/// means some prefix is not reduced.
pub fn validate_word(word: &ReducedWord) -> std::result::Result<(), WordDefect> {
    let n = word.n;
    let expected = n * (n - 1) / 2;
    if word.letters.len() != expected {
        return Err(WordDefect::WrongLength {
            expected,
            got: word.letters.len(),
        });
    }
    let mut perm = Permutation::identity(n);
    for (i, &s) in word.letters.iter().enumerate() {
        if s < 1 || s as usize > n - 1 {
            return Err(WordDefect::LetterOutOfRange {
                position: i + 1,
                letter: s,
            });
        }
        if !perm.ascends_at(s as usize) {
            return Err(WordDefect::PrefixNotReduced { position: i + 1 });
        }
        perm.apply_adjacent(s as usize);
    }
    // full length with every step increasing forces the longest element
    debug_assert_eq!(perm, Permutation::longest(n));
    Ok(())
}

/// True iff the word is a sorting network on its `n` wires.
pub fn is_reduced_word(word: &ReducedWord) -> bool {
    validate_word(word).is_ok()
}

/// The exact number of sorting networks on `n` wires:
/// `C(n,2)! / (1^{n-1} 3^{n-2} 5^{n-3} ... (2n-3)^1)`.
///
/// The division is exact; a nonzero remainder would mean the formula was
/// applied wrong and is treated as an internal error.
pub fn stanley_count(n: usize) -> Result<BigUint> {
    if n < 2 {
        return Err(Error::NTooSmall(n));
    }
    let pairs = n * (n - 1) / 2;
    let mut numerator = BigUint::one();
    for i in 2..=pairs {
        numerator *= BigUint::from(i);
    }
    let mut denominator = BigUint::one();
    for j in 1..n {
        // factor (2j - 1)^(n - j)
        denominator *= BigUint::from(2 * j - 1).pow((n - j) as u32);
    }
    let (q, r) = numerator.div_rem(&denominator);
    if !r.is_zero() {
        return Err(Error::InvalidParameter(format!(
            "count formula left remainder {r} at n = {n}"
        )));
    }
    Ok(q)
}

fn check_enumeration_cap(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::NTooSmall(n));
    }
    if n > ENUMERATION_CAP {
        return Err(Error::EnumerationCap {
            n,
            max: ENUMERATION_CAP,
        });
    }
    Ok(())
}

fn dfs_words(
    perm: &mut Permutation,
    letters: &mut Vec<u16>,
    remaining: usize,
    visit: &mut impl FnMut(&[u16]),
) {
    if remaining == 0 {
        visit(letters);
        return;
    }
    for s in 1..perm.n() {
        if perm.ascends_at(s) {
            perm.apply_adjacent(s);
            letters.push(s as u16);
            dfs_words(perm, letters, remaining - 1, visit);
            letters.pop();
            perm.apply_adjacent(s);
        }
    }
}

/// Visit every sorting network on `n` wires once, in depth-first order by
/// first letter. `2 <= n <= 6`.
pub fn for_each_word(n: usize, mut visit: impl FnMut(&[u16])) -> Result<()> {
    check_enumeration_cap(n)?;
    let total = n * (n - 1) / 2;
    let mut perm = Permutation::identity(n);
    let mut letters = Vec::with_capacity(total);
    dfs_words(&mut perm, &mut letters, total, &mut visit);
    Ok(())
}

/// Collect the full list of sorting networks on `n` wires.
pub fn enumerate_words(n: usize) -> Result<Vec<ReducedWord>> {
    let mut words = Vec::new();
    for_each_word(n, |letters| {
        words.push(ReducedWord::new(n, letters.to_vec()));
    })?;
    Ok(words)
}

/// Fold every word into an accumulator, fanning out across first-letter
/// branches on the rayon pool when the `parallel` feature is on. The
/// combine step runs in unspecified branch order, so the fold must be
/// associative and commutative.
fn fold_words<T, F, C>(n: usize, fold: F, combine: C) -> Result<T>
where
    T: Default + Send,
    F: Fn(&mut T, &[u16]) + Sync,
    C: Fn(T, T) -> T + Sync + Send,
{
    check_enumeration_cap(n)?;
    let total = n * (n - 1) / 2;
    let branch = |s: usize| -> T {
        let mut acc = T::default();
        let mut perm = Permutation::identity(n);
        perm.apply_adjacent(s);
        let mut letters = Vec::with_capacity(total);
        letters.push(s as u16);
        dfs_words(&mut perm, &mut letters, total - 1, &mut |w| {
            fold(&mut acc, w)
        });
        acc
    };

    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        Ok((1..n)
            .into_par_iter()
            .map(branch)
            .reduce(T::default, combine))
    }
    #[cfg(not(feature = "parallel"))]
    {
        Ok((1..n).map(branch).fold(T::default(), combine))
    }
}

/// Sequential twin of [`fold_words`]; kept unconditionally so the benches
/// can compare both code paths under the default features.
fn fold_words_seq<T, F, C>(n: usize, fold: F, combine: C) -> Result<T>
where
    T: Default,
    F: Fn(&mut T, &[u16]),
    C: Fn(T, T) -> T,
{
    check_enumeration_cap(n)?;
    let total = n * (n - 1) / 2;
    let mut out = T::default();
    for s in 1..n {
        let mut acc = T::default();
        let mut perm = Permutation::identity(n);
        perm.apply_adjacent(s);
        let mut letters = Vec::with_capacity(total);
        letters.push(s as u16);
        dfs_words(&mut perm, &mut letters, total - 1, &mut |w| {
            fold(&mut acc, w)
        });
        out = combine(out, acc);
    }
    Ok(out)
}

fn merge_counts(mut a: Vec<u64>, b: Vec<u64>) -> Vec<u64> {
    if a.is_empty() {
        return b;
    }
    if !b.is_empty() {
        for (x, y) in a.iter_mut().zip(&b) {
            *x += y;
        }
    }
    a
}

/// Per-letter counts of the first letter over all words, plus the total.
pub fn first_letter_counts(n: usize) -> Result<(Vec<u64>, u64)> {
    let counts = fold_words(
        n,
        |acc: &mut Vec<u64>, word| {
            if acc.is_empty() {
                *acc = vec![0; n - 1];
            }
            acc[(word[0] - 1) as usize] += 1;
        },
        merge_counts,
    )?;
    let counts = if counts.is_empty() {
        vec![0; n - 1]
    } else {
        counts
    };
    let total = counts.iter().sum();
    Ok((counts, total))
}

/// Sequential version of [`first_letter_counts`].
pub fn first_letter_counts_seq(n: usize) -> Result<(Vec<u64>, u64)> {
    let counts = fold_words_seq(
        n,
        |acc: &mut Vec<u64>, word| {
            if acc.is_empty() {
                *acc = vec![0; n - 1];
            }
            acc[(word[0] - 1) as usize] += 1;
        },
        merge_counts,
    )?;
    let counts = if counts.is_empty() {
        vec![0; n - 1]
    } else {
        counts
    };
    let total = counts.iter().sum();
    Ok((counts, total))
}

/// Exact first-letter frequencies over all enumerated words.
///
/// This is the combinatorial oracle for the closed-form law: the result
/// must equal `FirstLetterLaw::new(n)` exactly.
pub fn first_letter_histogram(n: usize) -> Result<FirstLetterLaw> {
    let (counts, total) = first_letter_counts(n)?;
    FirstLetterLaw::from_counts(n, &counts, total)
}

/// Number of Yang–Baxter windows in a word: positions `k` where
/// `(s_k, s_{k+1}, s_{k+2})` is `(j, j+1, j)` or `(j+1, j, j+1)`.
/// Overlapping windows all count.
pub fn yb_count(word: &ReducedWord) -> usize {
    yb_count_letters(&word.letters)
}

fn yb_count_letters(letters: &[u16]) -> usize {
    letters
        .windows(3)
        .filter(|w| w[0] == w[2] && (w[1] == w[0] + 1 || w[1] + 1 == w[0]))
        .count()
}

/// Yang–Baxter statistics over the uniform measure on sorting networks.
#[derive(Debug, Clone)]
pub struct YbStats {
    pub n: usize,
    /// Exact mean; equal to 1 for every `n >= 3`.
    pub mean: Rat,
    pub variance: Rat,
    /// `P(YB = j)` as exact rationals, by count `j`.
    pub histogram: Vec<(usize, Rat)>,
    /// `(C(n,2) - 4) / (C(n,2) - 2)`, the conjectured variance, for `n >= 4`.
    pub conjectured_variance: Option<Rat>,
    /// Whether the exact variance equals the conjectured one (reported,
    /// never asserted by the test suites).
    pub variance_matches_conjecture: Option<bool>,
    /// Total variation distance to Poisson with mean 1, tail truncated
    /// below 1e-12.
    pub tv_to_poisson1: f64,
}

/// Exact Yang–Baxter histogram, mean, and variance by enumeration;
/// `3 <= n <= 6`.
pub fn yb_stats(n: usize) -> Result<YbStats> {
    if n < 3 {
        return Err(Error::OutOfRange {
            what: "yb_stats",
            k: n as i64,
            lo: 3,
            hi: ENUMERATION_CAP as i64,
        });
    }
    let counts: BTreeMap<usize, u64> = fold_words(
        n,
        |acc: &mut BTreeMap<usize, u64>, word| {
            *acc.entry(yb_count_letters(word)).or_insert(0) += 1;
        },
        |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        },
    )?;
    let total: u64 = counts.values().sum();
    let total_rat = rat_int(total as i64);
    let histogram: Vec<(usize, Rat)> = counts
        .iter()
        .map(|(&j, &c)| (j, rat_int(c as i64) / &total_rat))
        .collect();

    let mut mean = Rat::zero();
    let mut second = Rat::zero();
    for (j, p) in &histogram {
        let j_rat = rat_int(*j as i64);
        mean += &j_rat * p;
        second += &j_rat * &j_rat * p;
    }
    let variance = &second - &mean * &mean;

    let conjectured_variance = (n >= 4).then(|| {
        let pairs = (n * (n - 1) / 2) as i64;
        Rat::new((pairs - 4).into(), (pairs - 2).into())
    });
    let variance_matches_conjecture = conjectured_variance.as_ref().map(|c| c == &variance);

    // TV to Poisson(1): half the pointwise gap over the observed range,
    // plus half the Poisson tail beyond it
    let mut poisson = (-1.0f64).exp(); // mass at j = 0
    let mut l1 = 0.0;
    let mut covered = 0.0;
    let max_j = histogram.last().map(|(j, _)| *j).unwrap_or(0);
    for j in 0..=max_j {
        let p_here = histogram
            .iter()
            .find(|(jj, _)| *jj == j)
            .map(|(_, p)| crate::rational::rat_to_f64(p))
            .unwrap_or(0.0);
        l1 += (p_here - poisson).abs();
        covered += poisson;
        poisson /= (j + 1) as f64;
    }
    let tail = (1.0 - covered).max(0.0);
    let tv_to_poisson1 = 0.5 * (l1 + tail);

    Ok(YbStats {
        n,
        mean,
        variance,
        histogram,
        conjectured_variance,
        variance_matches_conjecture,
        tv_to_poisson1,
    })
}

fn word_cache(n: usize) -> Result<&'static Vec<ReducedWord>> {
    static CACHES: [OnceLock<Vec<ReducedWord>>; ENUMERATION_CAP - 1] =
        [const { OnceLock::new() }; ENUMERATION_CAP - 1];
    check_enumeration_cap(n)?;
    Ok(CACHES[n - 2].get_or_init(|| enumerate_words(n).expect("cap already checked")))
}

/// `count` i.i.d. draws of the first-swap location by inverse CDF over the
/// exact cumulative sums: a draw `u = r / 2^64` is compared against the
/// rational cumulative masses exactly, so the sampler has zero rounding
/// bias. Deterministic given the seed.
pub fn sample_first_letter(n: usize, seed: u64, count: usize) -> Result<Vec<usize>> {
    let law = FirstLetterLaw::new(n)?;
    let cumulative = law.cumulative();
    // compare r / 2^64 < num/den as r * den < num << 64, exactly
    let thresholds: Vec<(BigUint, BigUint)> = cumulative
        .iter()
        .map(|c| {
            (
                c.numer().magnitude() << 64u32,
                c.denom().magnitude().clone(),
            )
        })
        .collect();
    let mut rng = SplitMix64::new(seed);
    let draws = (0..count)
        .map(|_| {
            let r = BigUint::from(rng.next_u64());
            // smallest k with u < C(k)
            let mut lo = 0usize;
            let mut hi = thresholds.len() - 1;
            while lo < hi {
                let mid = (lo + hi) / 2;
                let (num_shifted, den) = &thresholds[mid];
                if &(&r * den) < num_shifted {
                    hi = mid;
                } else {
                    lo = mid + 1;
                }
            }
            lo + 1
        })
        .collect();
    Ok(draws)
}

/// One uniform sorting network on `n` wires (`2 <= n <= 6`), by uniform
/// index into the cached enumeration. Deterministic given the seed.
pub fn sample_word(n: usize, seed: u64) -> Result<ReducedWord> {
    let words = word_cache(n)?;
    let mut rng = SplitMix64::new(seed);
    let idx = rng.next_below(words.len() as u64) as usize;
    Ok(words[idx].clone())
}
