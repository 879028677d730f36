//! Density of `Z_2`-instances.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::bounds::{BoundsResult, Params, Target};
use super::laurent::Laurent;
use super::product::ScaledTerms;
use super::rat::{q_pow, Rat};
use crate::error::{Error, Result};
use crate::seq::a_seq;

/// Largest series index [`iz2`] will reach before giving up.
pub const MAX_Z2_INDEX: usize = 24;

pub(crate) fn check_q(q: u32) -> Result<()> {
    if q < 2 {
        return Err(Error::Precondition(format!("alphabet size must be at least 2, got {q}")));
    }
    Ok(())
}

fn z2_terms(q: u32, count: usize) -> ScaledTerms {
    let numer = Laurent::new([(1, i64::from(q))]);
    let one = Laurent::new([(0, 1)]);
    ScaledTerms::compute(q, 2, &numer, &one, count)
}

/// `F(j) = (-1)^j q^(1 - 2^(j+1)) / ∏_{k<=j} (1 - q^(1 - 2^(k+1)))`.
pub fn iz2_term(q: u32, j: usize) -> Result<Rat> {
    check_q(q)?;
    Ok(z2_terms(q, j + 1).term(j))
}

/// `Σ_{j<=J} F(j)`; even `J` overshoots the limit, odd `J` undershoots.
pub fn iz2_partial(q: u32, j: usize) -> Result<Rat> {
    check_q(q)?;
    let t = z2_terms(q, j + 1);
    Ok(t.to_rat(t.partial(j + 1)))
}

/// Smallest `J` with `|F(J + 1)| < eps`, enclosed by the partial sums at
/// `J` and `J + 1`.
pub fn iz2(q: u32, eps: &Rat) -> Result<BoundsResult> {
    check_q(q)?;
    if !eps.is_positive() {
        return Err(Error::Precondition("eps must be positive".into()));
    }
    for j in 0..MAX_Z2_INDEX {
        let t = z2_terms(q, j + 2);
        if &t.term(j + 1).abs() < eps {
            let a = t.to_rat(t.partial(j + 1));
            let b = t.to_rat(t.partial(j + 2));
            let (lower, upper) = if j % 2 == 0 { (b, a) } else { (a, b) };
            return Ok(BoundsResult {
                target: Target::Z2,
                q,
                params: Params { n: None, m: Some(j + 1) },
                lower,
                upper,
            });
        }
    }
    Err(Error::Convergence(format!("Z_2 series for q={q} needs more than {MAX_Z2_INDEX} terms")))
}

/// Exact probability that a uniform length-`len` word is a `Z_2`-instance:
/// `Σ_{1 <= l < len/2} a_l q^(-2l)`.
///
/// A word is a `Z_2`-instance iff its shortest bifix has length below
/// `len / 2`, and that bifix is bifix-free.
pub fn z2_exact_prefix_density(q: u32, len: usize) -> Result<Rat> {
    check_q(q)?;
    if len == 0 {
        return Err(Error::Precondition("word length must be at least 1".into()));
    }
    let top = len.div_ceil(2) - 1;
    let a = a_seq(q, top)?;
    let den = q_pow(q, 2 * top as u64);
    let mut num = BigInt::zero();
    for l in 1..=top {
        num += BigInt::from(a.get(l).expect("computed").clone()) * q_pow(q, 2 * (top - l) as u64);
    }
    Ok(if top == 0 { Rat::zero() } else { Rat::new(num, den) })
}

/// Closed-form `1/q < 𝕀(Z_2, q) < 1/(q - 1)` bracket.
pub fn z2_crude_bounds(q: u32) -> Result<(Rat, Rat)> {
    check_q(q)?;
    let q = BigInt::from(q);
    Ok((Rat::new(BigInt::one(), q.clone()), Rat::new(BigInt::one(), q - 1)))
}
