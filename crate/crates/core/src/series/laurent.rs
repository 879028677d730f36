//! Laurent polynomials with integer coefficients, and the five numerator and
//! factor polynomials of the density series.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::rat::{q_pow, Rat};
use crate::error::{Error, Result};

/// `Σ c_a x^a` over integer exponents, stored sorted with no zero terms.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Laurent {
    terms: Vec<(i64, BigInt)>,
}

impl Laurent {
    pub fn new<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut merged: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (a, c) in terms {
            *merged.entry(a).or_default() += c.into();
        }
        Laurent { terms: merged.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn terms(&self) -> &[(i64, BigInt)] {
        &self.terms
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.first().map(|t| t.0)
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.last().map(|t| t.0)
    }

    pub fn eval(&self, x: &Rat) -> Result<Rat> {
        if x.is_zero() {
            if self.min_exponent().is_some_and(|a| a < 0) {
                return Err(Error::Domain("negative power evaluated at x = 0".into()));
            }
            return Ok(self
                .terms
                .iter()
                .find(|t| t.0 == 0)
                .map_or_else(Rat::zero, |t| Rat::from_integer(t.1.clone())));
        }
        let mut acc = Rat::zero();
        for (a, c) in &self.terms {
            let p = num_traits::pow(x.clone(), a.unsigned_abs() as usize);
            let p = if *a < 0 { p.recip() } else { p };
            acc += p * c;
        }
        Ok(acc)
    }

    /// Value at `x = q^{-e}` as `(num, k)` meaning `num / q^k`.
    pub(crate) fn eval_q_power(&self, q: u32, e: u64) -> (BigInt, i64) {
        let Some(top) = self.max_exponent() else {
            return (BigInt::zero(), 0);
        };
        let mut num = BigInt::zero();
        for (a, c) in &self.terms {
            num += c * q_pow(q, e * (top - a) as u64);
        }
        (num, top * e as i64)
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (a, c)) in self.terms.iter().rev().enumerate() {
            let sign = if c.is_negative() { "-" } else if i > 0 { "+" } else { "" };
            let sep = if i > 0 { " " } else { "" };
            let mag = c.abs();
            let coeff = if mag.is_one() && *a != 0 { String::new() } else { mag.to_string() };
            let var = match a {
                0 => String::new(),
                1 => "x".into(),
                _ => format!("x^{a}"),
            };
            let spacer = if i > 0 { " " } else { "" };
            write!(f, "{sep}{sign}{spacer}{coeff}{var}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Poly {
    R,
    S,
    U,
    V,
    T,
}

impl FromStr for Poly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "r" => Ok(Poly::R),
            "s" => Ok(Poly::S),
            "u" => Ok(Poly::U),
            "v" => Ok(Poly::V),
            "t" => Ok(Poly::T),
            other => Err(Error::Parse(format!("unknown polynomial {other:?}"))),
        }
    }
}

/// The polynomial `which` for context length `ell` over `q` letters.
///
/// ```text
/// r = q x^(2l+1) - x^(4l) + x^(5l) - q x^(5l+1) + x^(6l)
/// s = t = 1 - q x^(1-l) + x^(-l)
/// u = q x^(4l+1) - x^(5l) + q x^(5l+1) - x^(6l)
/// v = s - q x^(1-2l) + x^(-2l)
/// ```
pub fn poly(which: Poly, ell: usize, q: u32) -> Laurent {
    let l = ell as i64;
    let q = i64::from(q);
    match which {
        Poly::R => Laurent::new([(2 * l + 1, q), (4 * l, -1), (5 * l, 1), (5 * l + 1, -q), (6 * l, 1)]),
        Poly::S | Poly::T => Laurent::new([(0, 1), (1 - l, -q), (-l, 1)]),
        Poly::U => Laurent::new([(4 * l + 1, q), (5 * l, -1), (5 * l + 1, q), (6 * l, -1)]),
        Poly::V => Laurent::new([(0, 1), (1 - l, -q), (-l, 1), (1 - 2 * l, -q), (-2 * l, 1)]),
    }
}

/// Exact value of `r`, `s`, `u`, `v` or `t` at `x`.
pub fn rsuv_eval(which: Poly, ell: usize, q: u32, x: &Rat) -> Result<Rat> {
    if ell == 0 {
        return Err(Error::Precondition("context length must be at least 1".into()));
    }
    poly(which, ell, q).eval(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    #[test]
    fn s_at_ell_one() {
        for x in [r(1, 4), r(3, 7), r(-2, 5)] {
            let expect = Rat::from_integer((1 - 3).into()) + x.recip();
            assert_eq!(rsuv_eval(Poly::S, 1, 3, &x).unwrap(), expect);
        }
    }

    #[test]
    fn v_extends_s() {
        for ell in 1..4 {
            let x = r(2, 9);
            let s = rsuv_eval(Poly::S, ell, 2, &x).unwrap();
            let extra = -Rat::from_integer(2.into()) * num_traits::pow(x.recip(), 2 * ell - 1)
                + num_traits::pow(x.recip(), 2 * ell);
            assert_eq!(rsuv_eval(Poly::V, ell, 2, &x).unwrap(), s + extra);
            assert_eq!(rsuv_eval(Poly::T, ell, 2, &x).unwrap(), rsuv_eval(Poly::S, ell, 2, &x).unwrap());
        }
    }

    #[test]
    fn r_at_quarter() {
        // term by term: 2/4^3 - 1/4^4 + 1/4^5 - 2/4^6 + 1/4^6
        let direct = r(2, 64) - r(1, 256) + r(1, 1024) - r(2, 4096) + r(1, 4096);
        let horner = r(1, 4096) * (r(2 * 64, 1) - r(16, 1) + r(4, 1) - r(1, 1));
        assert_eq!(direct, horner);
        assert_eq!(rsuv_eval(Poly::R, 1, 2, &r(1, 4)).unwrap(), direct);
    }

    #[test]
    fn zero_argument() {
        assert!(matches!(rsuv_eval(Poly::S, 2, 2, &Rat::zero()), Err(Error::Domain(_))));
        assert!(matches!(rsuv_eval(Poly::V, 1, 2, &Rat::zero()), Err(Error::Domain(_))));
        assert_eq!(rsuv_eval(Poly::R, 2, 2, &Rat::zero()).unwrap(), Rat::zero());
    }

    #[test]
    fn scaled_evaluation_agrees() {
        for which in [Poly::R, Poly::S, Poly::U, Poly::V] {
            for (q, e) in [(2u32, 2u64), (3, 4), (5, 8)] {
                let p = poly(which, 2, q);
                let (num, k) = p.eval_q_power(q, e);
                let scaled = if k >= 0 {
                    Rat::new(num, q_pow(q, k as u64))
                } else {
                    Rat::from_integer(num * q_pow(q, (-k) as u64))
                };
                let x = Rat::new(1.into(), q_pow(q, e));
                assert_eq!(scaled, p.eval(&x).unwrap());
            }
        }
    }

    #[test]
    fn display() {
        assert_eq!(poly(Poly::S, 1, 2).to_string(), "-1 + x^-1");
        assert_eq!(Laurent::new([(0, 0)]).to_string(), "0");
    }
}
