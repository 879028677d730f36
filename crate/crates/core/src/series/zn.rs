//! Bounds for `Z_n`, `n >= 3`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::bounds::{BoundsResult, Params, Target};
use super::laurent::{poly, Laurent, Poly};
use super::product::ScaledTerms;
use super::rat::{q_pow, q_pow_neg, Rat};
use super::z2::check_q;
use super::z3::{series_terms, Series};
use crate::error::{Error, Result};
use crate::seq::{a_seq, bhat_seq};

/// Largest `n` accepted by [`izn_generic_bounds`]; the lower bound has
/// `2^n` in the exponent.
pub const MAX_GENERIC_N: u32 = 20;

/// Terms of each `fhat` series used inside [`izn_upper`]; odd, so every
/// partial sum sits above its limit.
pub const FHAT_TERMS: usize = 5;

/// `q^(-2^n + n + 1) <= 𝕀(Z_n, q) <= ∏_{j=1}^{n-1} 1 / (q^(2^j - 1) - 1)`.
pub fn izn_generic_bounds(n: u32, q: u32) -> Result<BoundsResult> {
    check_q(q)?;
    if n == 0 || n > MAX_GENERIC_N {
        return Err(Error::Precondition(format!("n must be in 1..={MAX_GENERIC_N}, got {n}")));
    }
    let lower = q_pow_neg(q, (1u64 << n) - u64::from(n) - 1);
    let mut den = BigInt::one();
    for j in 1..n {
        den *= q_pow(q, (1u64 << j) - 1) - 1;
    }
    Ok(BoundsResult {
        target: Target::ZnGeneric(n),
        q,
        params: Params::default(),
        lower,
        upper: Rat::new(BigInt::one(), den),
    })
}

fn check_ell_terms(ell: usize, terms: usize) -> Result<()> {
    if ell == 0 {
        return Err(Error::Precondition("context length must be at least 1".into()));
    }
    if terms == 0 {
        return Err(Error::Precondition("need at least one series term".into()));
    }
    Ok(())
}

/// `Σ_m bhat_m q^(-2m)` from its closed form, keeping `terms` terms of each
/// alternating series.
///
/// With `x = q^-2` the generating function is
/// `g(x) + h(x) + x^(-2l) h(x^2) + x^(4l)`: the `b` words plus the doubled
/// frames `L L F L L F L L` and `L L L L`. Odd `terms` over-approximate and
/// even `terms` under-approximate.
pub fn fhat_eval(ell: usize, q: u32, terms: usize) -> Result<Rat> {
    check_q(q)?;
    check_ell_terms(ell, terms)?;
    let g = series_terms(Series::G, ell, q, 2, terms);
    let h = series_terms(Series::H, ell, q, 2, terms);
    let h2 = series_terms(Series::H, ell, q, 4, terms);
    let gh = g.to_rat(g.partial(terms).add(h.partial(terms), q));
    let doubled = h2.to_rat(h2.partial(terms)) * q_pow(q, 4 * ell as u64);
    Ok(gh + doubled + q_pow_neg(q, 8 * ell as u64))
}

/// The stage-one closed form
/// `q Σ_i (-1)^i x^(2^i (2l+1)) ∏_{j<i} t(x^(2^j)) / ∏_{k<=i} (1 - q x^(2^k))`
/// at `x = q^-2`. Its coefficients are [`bhat_stage_one`](crate::seq::bhat_stage_one).
pub fn fhat_stage_one_eval(ell: usize, q: u32, terms: usize) -> Result<Rat> {
    check_q(q)?;
    check_ell_terms(ell, terms)?;
    let numer = Laurent::new([(2 * ell as i64 + 1, i64::from(q))]);
    let s = ScaledTerms::compute(q, 2, &numer, &poly(Poly::T, ell, q), terms);
    Ok(s.to_rat(s.partial(terms)))
}

/// Upper bound on `𝕀(Z_n, q)` from the nested sum
/// `Σ_{l_1<=N_1} a_{l_1} Σ_{l_2<=N_2} bhat^{l_1}_{l_2} ⋯ fhat_{l_{n-2}}(q^-2)`
/// plus the tails `Σ_i (∏_{j<i} N_j) q^(N_{i-1}) q^(-N_i) / (q - 1)`, where
/// the `i = 1` factor `q^(N_0)` is taken as 1.
pub fn izn_upper(n: u32, q: u32, caps: &[usize]) -> Result<Rat> {
    check_q(q)?;
    if n < 3 {
        return Err(Error::Precondition(format!("n must be at least 3, got {n}")));
    }
    if caps.len() != n as usize - 2 {
        return Err(Error::Precondition(format!(
            "Z_{n} needs {} caps, got {}",
            n - 2,
            caps.len()
        )));
    }
    if caps.contains(&0) {
        return Err(Error::Precondition("every cap must be at least 1".into()));
    }
    let a = a_seq(q, caps[0])?;
    // weights[l]: count for context length l at the current level
    let mut weights: Vec<BigInt> = (0..=caps[0]).map(|l| BigInt::from(a.get(l).expect("computed").clone())).collect();
    weights[0] = BigInt::zero();
    for &cap in &caps[1..] {
        let mut next = vec![BigInt::zero(); cap + 1];
        for (prev, w) in weights.iter().enumerate().skip(1) {
            if w.is_zero() {
                continue;
            }
            let bh = bhat_seq(q, prev, cap)?;
            for (m, slot) in next.iter_mut().enumerate().skip(1) {
                *slot += w * BigInt::from(bh.get(m).expect("computed").clone());
            }
        }
        weights = next;
    }
    let mut total = Rat::zero();
    for (ell, w) in weights.iter().enumerate().skip(1) {
        if !w.is_zero() {
            total += fhat_eval(ell, q, FHAT_TERMS)? * w;
        }
    }
    let qm1 = BigInt::from(q - 1);
    let mut prefix = BigInt::one();
    let mut prev_cap = 0usize;
    for &cap in caps {
        let lift = if prev_cap == 0 { BigInt::one() } else { q_pow(q, prev_cap as u64) };
        total += Rat::new(&prefix * lift, q_pow(q, cap as u64) * &qm1);
        prefix *= BigInt::from(cap);
        prev_cap = cap;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rat::cmp_rat;
    use crate::seq::{b_seq, bhat_seq, bhat_stage_one};
    use num_traits::Signed;

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    /// `Σ_{m<=max} c_m q^(-2m)`.
    fn coeff_sum(values: &[num_bigint::BigUint], q: u32) -> Rat {
        values
            .iter()
            .enumerate()
            .map(|(m, c)| Rat::new(BigInt::from(c.clone()), q_pow(q, 2 * m as u64)))
            .sum()
    }

    #[test]
    fn generic_bounds_small_n() {
        let b = izn_generic_bounds(1, 5).unwrap();
        assert_eq!((b.lower, b.upper), (Rat::one(), Rat::one()));
        let b = izn_generic_bounds(2, 2).unwrap();
        assert_eq!((b.lower, b.upper), (r(1, 2), Rat::one()));
        let b = izn_generic_bounds(3, 2).unwrap();
        assert_eq!((b.lower, b.upper), (r(1, 16), r(1, 7)));
        assert!(izn_generic_bounds(0, 2).is_err());
    }

    #[test]
    fn stage_one_first_term() {
        // q x^(2l+1) / (1 - q x) at x = q^-2
        for (ell, q) in [(1usize, 2u32), (2, 3)] {
            let x = q_pow_neg(q, 2);
            let qr = Rat::from_integer(q.into());
            let expect = &qr * num_traits::pow(x.clone(), 2 * ell + 1) / (Rat::one() - &qr * &x);
            assert_eq!(fhat_stage_one_eval(ell, q, 1).unwrap(), expect);
        }
    }

    #[test]
    fn closed_forms_match_coefficients() {
        // tail after index 40 is below q^-40
        let tol = q_pow_neg(2, 40);
        for ell in 1..=3 {
            let coeffs = bhat_seq(2, ell, 40).unwrap();
            let diff = fhat_eval(ell, 2, 7).unwrap() - coeff_sum(coeffs.values(), 2);
            assert!(cmp_rat(&diff.abs(), &tol).is_lt(), "ell={ell}");
            let stage = bhat_stage_one(2, ell, 40).unwrap();
            let diff = fhat_stage_one_eval(ell, 2, 7).unwrap() - coeff_sum(stage.values(), 2);
            assert!(cmp_rat(&diff.abs(), &tol).is_lt(), "stage one ell={ell}");
        }
    }

    #[test]
    fn fhat_dominates_b_series() {
        for q in [2u32, 3] {
            for ell in 1..=3 {
                let b = coeff_sum(b_seq(q, ell, 40).unwrap().values(), q);
                let f = fhat_eval(ell, q, 6).unwrap();
                assert!(cmp_rat(&f, &b).is_gt());
            }
        }
    }

    #[test]
    fn fhat_parity_brackets() {
        let hi = fhat_eval(2, 2, 3).unwrap();
        let lo = fhat_eval(2, 2, 4).unwrap();
        let hi2 = fhat_eval(2, 2, 5).unwrap();
        assert!(lo < hi2 && hi2 < hi);
    }

    #[test]
    fn doubled_series_alternates() {
        for q in [2u32, 3] {
            for ell in 1..=3 {
                let t = series_terms(Series::H, ell, q, 4, 7);
                for i in 0..6 {
                    let (a, b) = (t.term(i), t.term(i + 1));
                    assert!(a.is_positive() == (i % 2 == 0));
                    assert!(cmp_rat(&b.abs(), &a.abs()).is_lt());
                }
            }
        }
    }

    #[test]
    fn upper_guards() {
        assert!(izn_upper(3, 2, &[]).is_err());
        assert!(izn_upper(4, 2, &[3]).is_err());
        assert!(izn_upper(2, 2, &[]).is_err());
        assert!(izn_upper(3, 2, &[0]).is_err());
    }

    #[test]
    fn upper_tail_for_three() {
        // one level: Σ a_l fhat_l + q^-N / (q - 1)
        let a = a_seq(3, 2).unwrap();
        let mut expect = r(1, 9 * 2);
        for l in 1..=2 {
            expect += fhat_eval(l, 3, FHAT_TERMS).unwrap() * BigInt::from(a.get(l).unwrap().clone());
        }
        assert_eq!(izn_upper(3, 3, &[2]).unwrap(), expect);
    }
}
