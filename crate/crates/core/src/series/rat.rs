//! Exact rationals: construction from structured denominators, comparison,
//! parsing and decimal rendering.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational; always reduced with a positive denominator.
pub type Rat = BigRational;

/// `q^e`.
pub fn q_pow(q: u32, e: u64) -> BigInt {
    let e = u32::try_from(e).expect("exponent fits in u32");
    num_traits::pow(BigInt::from(q), e as usize)
}

/// `q^{-e}` as a rational.
pub fn q_pow_neg(q: u32, e: u64) -> Rat {
    Rat::new_raw(BigInt::one(), q_pow(q, e))
}

fn prime_factors(mut q: u32) -> Vec<(u32, u64)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= q {
        let mut m = 0;
        while q.is_multiple_of(p) {
            q /= p;
            m += 1;
        }
        if m > 0 {
            out.push((p, m));
        }
        p += 1;
    }
    if q > 1 {
        out.push((q, 1));
    }
    out
}

/// Strips up to `cap` factors of `p` from `num`; returns how many.
fn strip_prime(num: &mut BigInt, p: u32, cap: u64) -> u64 {
    if num.is_zero() || cap == 0 {
        return 0;
    }
    if p == 2 {
        let tz = num.trailing_zeros().unwrap_or(0).min(cap);
        *num >>= tz;
        return tz;
    }
    let pb = BigInt::from(p);
    let mut v = 0;
    while v < cap {
        let (d, r) = num.div_rem(&pb);
        if !r.is_zero() {
            break;
        }
        *num = d;
        v += 1;
    }
    v
}

/// `num / (q^qexp · ∏ factors)` in lowest terms.
///
/// The denominators met in the series have this shape with one huge
/// `q`-power and a few moderate factors. Reducing against each factor
/// separately keeps every gcd small.
pub(crate) fn reduce_structured(mut num: BigInt, q: u32, qexp: u64, factors: &[BigInt]) -> Rat {
    if num.is_zero() {
        return Rat::zero();
    }
    let mut den = BigInt::one();
    for (p, mult) in prime_factors(q) {
        let e = mult * qexp;
        let v = strip_prime(&mut num, p, e);
        den *= q_pow(p, e - v);
    }
    for f in factors {
        let mut f = f.abs();
        loop {
            let g = num.mod_floor(&f).gcd(&f);
            if g.is_one() {
                break;
            }
            num /= &g;
            f /= &g;
        }
        den *= f;
    }
    let negative = factors.iter().filter(|f| f.is_negative()).count() % 2 == 1;
    if negative {
        num = -num;
    }
    Rat::new_raw(num, den)
}

/// Orders two rationals by cross-multiplication.
///
/// Same result as `Ord`, without the continued-fraction walk, which is slow
/// when two huge values agree to many digits.
pub fn cmp_rat(a: &Rat, b: &Rat) -> Ordering {
    (a.numer() * b.denom()).cmp(&(b.numer() * a.denom()))
}

/// Whether `upper - lower < eps`, without building the difference.
pub fn gap_below(lower: &Rat, upper: &Rat, eps: &Rat) -> bool {
    let gap_num = upper.numer() * lower.denom() - lower.numer() * upper.denom();
    let gap_den = upper.denom() * lower.denom();
    gap_num * eps.denom() < eps.numer() * gap_den
}

/// Rounds to `digits` decimals, ties to even.
pub fn round_half_even(r: &Rat, digits: u32) -> BigInt {
    let scaled = r.numer() * num_traits::pow(BigInt::from(10u32), digits as usize);
    let (mut quot, rem) = scaled.div_mod_floor(r.denom());
    match (BigInt::from(2u32) * rem).cmp(r.denom()) {
        Ordering::Greater => quot += 1,
        Ordering::Equal if quot.is_odd() => quot += 1,
        _ => {}
    }
    quot
}

/// Decimal string with exactly `digits` places, rounded half-even.
pub fn to_decimal(r: &Rat, digits: u32) -> String {
    let q = round_half_even(r, digits);
    let negative = q.is_negative();
    let mut body = q.magnitude().to_str_radix(10);
    let d = digits as usize;
    if body.len() <= d {
        body = format!("{}{body}", "0".repeat(d + 1 - body.len()));
    }
    let (int, frac) = body.split_at(body.len() - d);
    let sign = if negative { "-" } else { "" };
    if d == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac}")
    }
}

/// `10^{-digits}`.
pub fn decimal_unit(digits: u32) -> Rat {
    Rat::new_raw(BigInt::one(), num_traits::pow(BigInt::from(10u32), digits as usize))
}

/// Parses `3`, `-2/7`, `0.125` or `1e-8`.
pub fn parse_rat(text: &str) -> Result<Rat> {
    let bad = || Error::Parse(format!("not a rational number: {text:?}"));
    let t = text.trim();
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Domain("zero denominator".into()));
        }
        return Ok(Rat::new(n, d));
    }
    let (mantissa, exp) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (t, 0),
    };
    let (sign, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if int.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all: BigUint = format!("{int}{frac}").parse().map_err(|_| bad())?;
    let shift = exp - frac.len() as i32;
    let ten = BigInt::from(10u32);
    let mut r = Rat::from_integer(BigInt::from_biguint(Sign::Plus, all));
    if shift >= 0 {
        r *= num_traits::pow(ten, shift as usize);
    } else {
        r /= num_traits::pow(ten, (-shift) as usize);
    }
    Ok(if sign < 0 { -r } else { r })
}

/// Nearest `f64`, for display and statistics only.
pub fn to_f64(r: &Rat) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    #[test]
    fn half_even_rounding() {
        assert_eq!(to_decimal(&r(1, 8), 2), "0.12");
        assert_eq!(to_decimal(&r(3, 8), 2), "0.38");
        assert_eq!(to_decimal(&r(1, 2), 0), "0");
        assert_eq!(to_decimal(&r(3, 2), 0), "2");
        assert_eq!(to_decimal(&r(5, 8), 0), "1");
        assert_eq!(to_decimal(&r(-1, 3), 3), "-0.333");
        assert_eq!(to_decimal(&r(1, 40000), 4), "0.0000");
        assert_eq!(to_decimal(&r(7, 2), 1), "3.5");
    }

    #[test]
    fn parsing() {
        assert_eq!(parse_rat("1e-8").unwrap(), r(1, 100_000_000));
        assert_eq!(parse_rat("0.125").unwrap(), r(1, 8));
        assert_eq!(parse_rat("-2/6").unwrap(), r(-1, 3));
        assert_eq!(parse_rat("2.5E1").unwrap(), r(25, 1));
        assert!(parse_rat("x").is_err());
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat(".").is_err());
    }

    #[test]
    fn structured_reduction_matches_gcd() {
        let factors = [BigInt::from(3), BigInt::from(7), BigInt::from(63)];
        for num in [0i64, 1, 6, 21, 441, 96, -1323, 2 * 3 * 3 * 7 * 7 * 64] {
            for qexp in [0u64, 3, 9] {
                for q in [2u32, 6, 12] {
                    let den = q_pow(q, qexp) * BigInt::from(3 * 7 * 63);
                    let expect = Rat::new(num.into(), den);
                    let got = reduce_structured(num.into(), q, qexp, &factors);
                    assert_eq!(got, expect);
                    assert_eq!(got.numer(), expect.numer());
                }
            }
        }
    }

    #[test]
    fn comparisons() {
        assert_eq!(cmp_rat(&r(1, 3), &r(2, 6)), Ordering::Equal);
        assert_eq!(cmp_rat(&r(-1, 3), &r(1, 6)), Ordering::Less);
        assert!(gap_below(&r(1, 3), &r(1, 2), &r(1, 5)));
        assert!(!gap_below(&r(1, 3), &r(1, 2), &r(1, 6)));
    }
}
