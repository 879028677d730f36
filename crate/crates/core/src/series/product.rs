//! Exact terms of the alternating product series
//!
//! ```text
//! Σ_i (-1)^i p(x^(2^i)) ∏_{j<i} t(x^(2^j)) / ∏_{k<=i} (1 - q x^(2^k))
//! ```
//!
//! at `x = q^{-e}`, all over one denominator `q^Q · ∏_{k<count} d_k` with
//! `d_k = q^(e 2^k - 1) - 1`. Keeping numerators as integers over a shared
//! denominator means a partial sum is a plain integer sum.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::laurent::Laurent;
use super::rat::{q_pow, reduce_structured, Rat};

/// Numerators of the first `count` terms over a shared denominator.
#[derive(Clone, Debug)]
pub(crate) struct ScaledTerms {
    pub q: u32,
    pub qexp: u64,
    pub factors: Vec<BigInt>,
    pub nums: Vec<BigInt>,
}

/// An integer over the denominator `q^qexp · ∏ factors` of some
/// [`ScaledTerms`].
#[derive(Clone, Debug)]
pub(crate) struct Scaled {
    pub num: BigInt,
    pub qexp: u64,
}

impl Scaled {
    pub fn zero() -> Self {
        Scaled { num: BigInt::zero(), qexp: 0 }
    }

    /// `self + other`, both over the same product of factors.
    pub fn add(self, other: Scaled, q: u32) -> Scaled {
        let (mut hi, lo) = if self.qexp >= other.qexp { (self, other) } else { (other, self) };
        hi.num += lo.num * q_pow(q, hi.qexp - lo.qexp);
        hi
    }

    pub fn scale(mut self, k: &BigInt) -> Scaled {
        self.num *= k;
        self
    }
}

impl ScaledTerms {
    pub fn compute(q: u32, e: u64, numer: &Laurent, factor: &Laurent, count: usize) -> ScaledTerms {
        assert!(e >= 2 && count >= 1);
        let factors: Vec<BigInt> = (0..count)
            .map(|k| q_pow(q, (e << k) - 1) - BigInt::one())
            .collect();
        // suffix[i] = ∏_{i<k<count} d_k
        let mut suffix = vec![BigInt::one(); count];
        for i in (0..count - 1).rev() {
            suffix[i] = &suffix[i + 1] * &factors[i + 1];
        }
        let mut raw: Vec<(BigInt, i64)> = Vec::with_capacity(count);
        let mut prod = (BigInt::one(), 0i64);
        let mut den_shift = 0i64;
        for (i, tail) in suffix.iter().enumerate() {
            let ei = e << i;
            den_shift += ei as i64 - 1;
            let (pn, pk) = numer.eval_q_power(q, ei);
            let mut num = pn * &prod.0 * tail;
            if i % 2 == 1 {
                num = -num;
            }
            raw.push((num, pk + prod.1 - den_shift));
            let (tn, tk) = factor.eval_q_power(q, ei);
            prod = (prod.0 * tn, prod.1 + tk);
        }
        let top = raw.iter().map(|t| t.1).max().unwrap_or(0);
        let lift = if top < 0 { (-top) as u64 } else { 0 };
        let qexp = top.max(0) as u64;
        let nums = raw
            .into_iter()
            .map(|(n, k)| n * q_pow(q, (top - k) as u64 + lift))
            .collect();
        ScaledTerms { q, qexp, factors, nums }
    }

    /// Sum of the first `k` terms.
    pub fn partial(&self, k: usize) -> Scaled {
        let num = self.nums[..k].iter().fold(BigInt::zero(), |acc, n| acc + n);
        Scaled { num, qexp: self.qexp }
    }

    pub fn term(&self, i: usize) -> Rat {
        self.to_rat(Scaled { num: self.nums[i].clone(), qexp: self.qexp })
    }

    pub fn to_rat(&self, s: Scaled) -> Rat {
        reduce_structured(s.num, self.q, s.qexp, &self.factors)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Direct evaluation of term `i` with rational arithmetic.
    fn naive_term(q: u32, e: u64, p: &Laurent, t: &Laurent, i: usize) -> Rat {
        let x = Rat::new(BigInt::one(), q_pow(q, e));
        let qr = Rat::from_integer(q.into());
        let at = |j: usize| num_traits::pow(x.clone(), 1 << j);
        let mut v = p.eval(&at(i)).unwrap();
        for j in 0..i {
            v *= t.eval(&at(j)).unwrap();
        }
        for k in 0..=i {
            v /= Rat::one() - &qr * at(k);
        }
        if i % 2 == 1 {
            -v
        } else {
            v
        }
    }

    #[test]
    fn matches_naive_evaluation() {
        use super::super::laurent::{poly, Poly};
        for (q, e, ell) in [(2u32, 2u64, 1usize), (3, 2, 2), (2, 4, 3), (5, 2, 1)] {
            for (p, t) in [(Poly::R, Poly::S), (Poly::U, Poly::V)] {
                let (p, t) = (poly(p, ell, q), poly(t, ell, q));
                let terms = ScaledTerms::compute(q, e, &p, &t, 4);
                let mut sum = Rat::zero();
                for i in 0..4 {
                    let n = naive_term(q, e, &p, &t, i);
                    assert_eq!(terms.term(i), n, "q={q} e={e} ell={ell} i={i}");
                    sum += n;
                }
                assert_eq!(terms.to_rat(terms.partial(4)), sum);
            }
        }
    }
}
