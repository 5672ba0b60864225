//! Exact rational arithmetic helpers.
//!
//! All exact quantities in this crate are `num-rational` big rationals,
//! which are kept in lowest terms with a positive denominator by
//! construction. This module adds the pieces the library needs on top:
//! small constructors, the `"numerator/denominator"` wire format, and a
//! float conversion that stays correct when numerator and denominator are
//! far outside the `f64` range.

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms, denominator > 0.
pub type Rat = BigRational;

/// `p/q` from machine integers.
pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// The integer `p` as a rational.
pub fn rat_int(p: i64) -> Rat {
    Rat::from_integer(BigInt::from(p))
}

/// Render as `"numerator/denominator"` in decimal, e.g. `-5/16` or `1/1`.
pub fn format_fraction(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parse the `"numerator/denominator"` wire format back into a rational.
pub fn parse_fraction(s: &str) -> Result<Rat> {
    let (num, den) = s
        .split_once('/')
        .ok_or_else(|| Error::InvalidParameter(format!("expected num/den, got {s:?}")))?;
    let num: BigInt = num
        .parse()
        .map_err(|e| Error::InvalidParameter(format!("bad numerator {num:?}: {e}")))?;
    let den: BigInt = den
        .parse()
        .map_err(|e| Error::InvalidParameter(format!("bad denominator {den:?}: {e}")))?;
    if den.is_zero() {
        return Err(Error::InvalidParameter("zero denominator".into()));
    }
    Ok(Rat::new(num, den))
}

/// Nearest `f64` to an arbitrary rational.
///
/// The naive `numer as f64 / denom as f64` overflows to `inf/inf = NaN`
/// once the parts exceed ~1e308, which happens for the exact first-letter
/// probabilities well before n = 200. Instead, shift the quotient so it
/// carries 63 significant bits, convert that integer, and scale back by a
/// power of two. Result is within 1 ulp of exact.
pub fn rat_to_f64(r: &Rat) -> f64 {
    big_ratio_to_f64(r.numer(), r.denom())
}

/// Same conversion for a raw numerator/denominator pair (`den > 0`); the
/// pair does not need to be in lowest terms.
pub fn big_ratio_to_f64(numer: &BigInt, denom: &BigInt) -> f64 {
    if numer.is_zero() {
        return 0.0;
    }
    let negative = numer.sign() == Sign::Minus;
    let num = numer.magnitude().clone();
    let den = denom.magnitude().clone();

    let nbits = num.bits() as i64;
    let dbits = den.bits() as i64;
    // shift so that floor(num * 2^shift / den) has 63 or 64 bits
    let shift = 63 - (nbits - dbits);
    let (scaled_num, scaled_den) = if shift >= 0 {
        (num << shift as u64, den)
    } else {
        (num, den << (-shift) as u64)
    };
    let (mut q, rem) = num_integer::Integer::div_rem(&scaled_num, &scaled_den);
    if &rem * 2u32 >= scaled_den {
        q += 1u32; // round to nearest
    }
    let magnitude = scale_by_pow2(to_f64_exactish(&q), -shift);
    if negative {
        -magnitude
    } else {
        magnitude
    }
}

fn to_f64_exactish(q: &BigUint) -> f64 {
    // q has at most ~65 bits here; BigUint::to_f64 handles that exactly
    q.to_f64().unwrap_or(f64::INFINITY)
}

/// Cheap `num/den` on nonnegative big integers: keeps the top 96 bits of
/// each operand instead of dividing in full. Within ~3 ulp, which is all
/// the floating-point cumulative tables need, and O(length) instead of a
/// big division per call.
pub(crate) fn biguint_ratio_to_f64_fast(num: &BigUint, den: &BigUint) -> f64 {
    const KEEP: u64 = 96;
    if num.is_zero() {
        return 0.0;
    }
    let nb = num.bits();
    let db = den.bits();
    let (n_top, n_dropped) = if nb > KEEP {
        ((num >> (nb - KEEP)).to_u128().unwrap(), nb - KEEP)
    } else {
        (num.to_u128().unwrap(), 0)
    };
    let (d_top, d_dropped) = if db > KEEP {
        ((den >> (db - KEEP)).to_u128().unwrap(), db - KEEP)
    } else {
        (den.to_u128().unwrap(), 0)
    };
    scale_by_pow2(
        n_top as f64 / d_top as f64,
        n_dropped as i64 - d_dropped as i64,
    )
}

// x * 2^e in chunks, so intermediate powers of two never overflow on
// their own while the true result is still representable.
fn scale_by_pow2(mut x: f64, mut e: i64) -> f64 {
    const CHUNK: i64 = 512;
    while e > CHUNK {
        x *= (2.0f64).powi(CHUNK as i32);
        e -= CHUNK;
        if x.is_infinite() {
            return x;
        }
    }
    while e < -CHUNK {
        x *= (2.0f64).powi(-CHUNK as i32);
        e += CHUNK;
        if x == 0.0 {
            return x;
        }
    }
    x * (2.0f64).powi(e as i32)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fraction_wire_format_round_trips() {
        for (p, q) in [(1i64, 1i64), (-5, 16), (3, 8), (0, 7), (22, 7)] {
            let r = rat(p, q);
            let s = format_fraction(&r);
            assert_eq!(parse_fraction(&s).unwrap(), r);
        }
        assert_eq!(format_fraction(&rat(-5, 16)), "-5/16");
        assert_eq!(format_fraction(&rat(2, 4)), "1/2");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse_fraction("5").is_err());
        assert!(parse_fraction("a/b").is_err());
        assert!(parse_fraction("1/0").is_err());
    }

    #[test]
    fn to_f64_small_values() {
        assert_eq!(rat_to_f64(&rat(1, 2)), 0.5);
        assert_eq!(rat_to_f64(&rat(-3, 8)), -0.375);
        assert_eq!(rat_to_f64(&rat(0, 5)), 0.0);
        assert_eq!(rat_to_f64(&rat(1, 3)), 1.0 / 3.0);
    }

    #[test]
    fn to_f64_handles_huge_parts() {
        // numerator and denominator both far beyond f64 range
        let big = BigInt::from(10u32).pow(400u32);
        let r = Rat::new(big.clone() * 3, big * 7);
        let f = rat_to_f64(&r);
        assert!((f - 3.0 / 7.0).abs() < 1e-15);
    }

    #[test]
    fn to_f64_round_trips_doubles() {
        for x in [0.125, 1.0 / 3.0, 0.1, 123456.789, 1e-300, 1e300] {
            let r = Rat::from_float(x).unwrap();
            assert_eq!(rat_to_f64(&r), x);
        }
    }
}
