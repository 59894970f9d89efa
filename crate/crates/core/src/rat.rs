//! Exact rational scalars.
//!
//! Every coefficient in this crate is a [`Rat`] (`num_rational::BigRational`):
//! arbitrary-precision, always reduced, denominator positive. The helpers here
//! cover the handful of constructions the rest of the crate needs constantly.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Reduced arbitrary-precision rational, the coefficient field for everything exact.
pub type Rat = BigRational;

/// `n` as a rational.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `n/d` as a reduced rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// `base^exp` for a signed integer exponent. Panics on `0^negative`.
pub fn rat_pow(base: &Rat, exp: i64) -> Rat {
    if exp == 0 {
        return Rat::one();
    }
    let positive = base.pow(exp.unsigned_abs().try_into().expect("exponent fits i32"));
    if exp > 0 {
        positive
    } else {
        positive.recip()
    }
}

/// `n!` as a rational.
pub fn factorial(n: u64) -> Rat {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    Rat::from_integer(acc)
}

/// `2^exp` for signed `exp`.
pub fn pow2(exp: i64) -> Rat {
    rat_pow(&rat_int(2), exp)
}

/// Render exactly as `p` or `p/q` (decimal-free), matching the JSON wire format.
pub fn rat_to_string(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parse `p` or `p/q`. Returns `None` on malformed input or zero denominator.
pub fn rat_from_str(s: &str) -> Option<Rat> {
    let mut parts = s.splitn(2, '/');
    let numer: BigInt = parts.next()?.trim().parse().ok()?;
    match parts.next() {
        None => Some(Rat::from_integer(numer)),
        Some(d) => {
            let denom: BigInt = d.trim().parse().ok()?;
            if denom.is_zero() {
                None
            } else {
                Some(Rat::new(numer, denom))
            }
        }
    }
}

/// Nearest f64 (used only by the floating-point limit-shape module and renderers).
pub fn rat_to_f64(x: &Rat) -> f64 {
    // Scale into i128 range first so huge numerators keep ~15 significant digits.
    let numer = x.numer();
    let denom = x.denom();
    let bits = numer.bits().max(denom.bits());
    if bits <= 100 {
        let n = to_f64_bigint(numer);
        let d = to_f64_bigint(denom);
        n / d
    } else {
        let shift = bits - 100;
        let n = to_f64_bigint(&(numer >> shift));
        let d = to_f64_bigint(&(denom >> shift));
        n / d
    }
}

fn to_f64_bigint(x: &BigInt) -> f64 {
    let (sign, digits) = x.to_u64_digits();
    let mut acc = 0.0f64;
    for d in digits.iter().rev() {
        acc = acc * 1.8446744073709552e19 + *d as f64;
    }
    if sign == num_bigint::Sign::Minus {
        -acc
    } else {
        acc
    }
}
