//! Density of `Z_3`-instances.

use num_bigint::BigInt;
use num_traits::{One, Signed};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::bounds::{BoundsResult, Params, Target};
use super::laurent::{poly, Poly};
use super::product::{Scaled, ScaledTerms};
use super::rat::{gap_below, q_pow, Rat};
use super::z2::check_q;
use crate::error::{Error, Result};
use crate::seq::a_seq;

/// [`iz3`] gives up once the context cap would exceed this.
pub const MAX_Z3_CAP: usize = 256;
/// [`iz3`] gives up once the series index parameter would exceed this.
pub const MAX_Z3_DEPTH: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Series {
    /// Numerator `r`, factor `s`; coefficients are the `c` counts.
    G,
    /// Numerator `u`, factor `v`; coefficients are the `d` counts.
    H,
}

pub(crate) fn series_terms(which: Series, ell: usize, q: u32, e: u64, count: usize) -> ScaledTerms {
    let (p, t) = match which {
        Series::G => (Poly::R, Poly::S),
        Series::H => (Poly::U, Poly::V),
    };
    ScaledTerms::compute(q, e, &poly(p, ell, q), &poly(t, ell, q), count)
}

fn check_ell(ell: usize) -> Result<()> {
    if ell == 0 {
        return Err(Error::Precondition("context length must be at least 1".into()));
    }
    Ok(())
}

/// Term `i` of the `G` or `H` series at `x = q^-2`; its sign is `(-1)^i`.
pub fn gh_term(which: Series, ell: usize, q: u32, i: usize) -> Result<Rat> {
    check_q(q)?;
    check_ell(ell)?;
    Ok(series_terms(which, ell, q, 2, i + 1).term(i))
}

/// `Σ_{i<count} (G(i) + H(i))`, which tends to `Σ_m b_m q^(-2m)`.
pub fn gh_sum(ell: usize, q: u32, count: usize) -> Result<Rat> {
    check_q(q)?;
    check_ell(ell)?;
    if count == 0 {
        return Ok(Rat::default());
    }
    let g = series_terms(Series::G, ell, q, 2, count);
    let h = series_terms(Series::H, ell, q, 2, count);
    Ok(g.to_rat(g.partial(count).add(h.partial(count), q)))
}

/// Two-sided bound with context lengths up to `n_cap` and series cut after
/// index `2M + 1` (lower) or `2M` (upper, plus the `q^-N` tail).
pub fn iz3_bounds(q: u32, n_cap: usize, m: usize) -> Result<BoundsResult> {
    check_q(q)?;
    if n_cap == 0 {
        return Err(Error::Precondition("context cap N must be at least 1".into()));
    }
    let count = 2 * m + 2;
    let a = a_seq(q, n_cap)?;
    let per_ell: Vec<(Scaled, Scaled)> = (1..=n_cap)
        .into_par_iter()
        .map(|ell| {
            let w = BigInt::from(a.get(ell).expect("computed").clone());
            let g = series_terms(Series::G, ell, q, 2, count);
            let h = series_terms(Series::H, ell, q, 2, count);
            let lower = g.partial(count).add(h.partial(count), q).scale(&w);
            let upper = g.partial(count - 1).add(h.partial(count - 1), q).scale(&w);
            (lower, upper)
        })
        .collect();
    let reference = series_terms(Series::G, 1, q, 2, count);
    let mut lower = Scaled::zero();
    let mut upper = Scaled::zero();
    for (lo, hi) in per_ell {
        lower = lower.add(lo, q);
        upper = upper.add(hi, q);
    }
    let product = reference.factors.iter().fold(BigInt::one(), |acc, f| acc * f);
    upper = upper.add(Scaled { num: product, qexp: n_cap as u64 }, q);
    Ok(BoundsResult {
        target: Target::Z3,
        q,
        params: Params { n: Some(n_cap), m: Some(m) },
        lower: reference.to_rat(lower),
        upper: reference.to_rat(upper),
    })
}

/// Tightens [`iz3_bounds`] until the interval is narrower than `eps`.
///
/// `N` starts at 8 and doubles while the `q^-N` tail is at least `eps / 2`.
/// `M` starts at 2 and grows by one while the series gap is at least
/// `eps / 2`. At `M = 2` the gap is already below `q^-190`; starting higher
/// only inflates the integers (at `q = 3`, `M = 5` costs about a minute
/// against a few milliseconds).
pub fn iz3(q: u32, eps: &Rat) -> Result<BoundsResult> {
    check_q(q)?;
    if !eps.is_positive() {
        return Err(Error::Precondition("eps must be positive".into()));
    }
    let half = eps / BigInt::from(2);
    let (mut n_cap, mut m) = (8usize, 2usize);
    loop {
        let b = iz3_bounds(q, n_cap, m)?;
        if gap_below(&b.lower, &b.upper, eps) {
            return Ok(b);
        }
        let tail = Rat::new(BigInt::one(), q_pow(q, n_cap as u64));
        let tail_wide = tail >= half;
        // series gap = upper - tail - lower
        let (un, ud) = (b.upper.numer(), b.upper.denom());
        let (ln, ld) = (b.lower.numer(), b.lower.denom());
        let qn = q_pow(q, n_cap as u64);
        let gap_num = (un * ld - ln * ud) * &qn - ud * ld;
        let series_wide = gap_num * half.denom() >= half.numer() * ud * ld * qn;
        if tail_wide {
            n_cap *= 2;
        }
        if series_wide {
            m += 1;
        }
        if n_cap > MAX_Z3_CAP || m > MAX_Z3_DEPTH {
            return Err(Error::Convergence(format!(
                "Z_3 bounds for q={q} did not reach the requested width within N <= {MAX_Z3_CAP}, M <= {MAX_Z3_DEPTH}"
            )));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rat::{cmp_rat, to_decimal};
    use num_traits::Zero;

    #[test]
    fn term_signs_and_decay() {
        for q in [2u32, 3] {
            for ell in 1..=3 {
                for which in [Series::G, Series::H] {
                    let terms = series_terms(which, ell, q, 2, 9);
                    let mut prev: Option<Rat> = None;
                    for i in 0..9 {
                        let t = terms.term(i);
                        let signed = if i % 2 == 0 { t.clone() } else { -t.clone() };
                        assert!(signed.is_positive(), "{which:?} q={q} ell={ell} i={i}");
                        if let Some(p) = prev {
                            assert!(cmp_rat(&signed, &p).is_lt());
                        }
                        prev = Some(signed);
                    }
                }
            }
        }
    }

    #[test]
    fn gh_term_is_one_term() {
        let t = series_terms(Series::H, 2, 3, 2, 4);
        assert_eq!(gh_term(Series::H, 2, 3, 3).unwrap(), t.term(3));
        assert!(gh_term(Series::G, 0, 2, 0).is_err());
        assert!(gh_sum(1, 2, 0).unwrap().is_zero());
    }

    #[test]
    fn small_cap_bounds_bracket() {
        let b = iz3_bounds(2, 4, 1).unwrap();
        assert!(cmp_rat(&b.lower, &b.upper).is_lt());
        let c = iz3_bounds(2, 8, 2).unwrap();
        assert!(c.inside(&b));
    }

    #[test]
    fn ternary_value() {
        let b = iz3(3, &Rat::new(1.into(), 1_000_000_000u64.into())).unwrap();
        assert_eq!(to_decimal(&b.lower, 8), "0.01835140");
        assert_eq!(to_decimal(&b.upper, 8), "0.01835140");
    }
}
