//! Direct estimates of `𝕀_n(V, q)` by enumeration or sampling.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::rat::{to_f64, Rat};
use super::z2::check_q;
use crate::error::{Error, Result};
use crate::pattern::{self, Pattern};
use crate::seq::oracle::{count_words, ORACLE_BUDGET};
use crate::word::{self, Letter, MAX_ALPHABET};

/// Samples drawn per independent random stream.
const SAMPLE_CHUNK: u64 = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DensityTarget {
    Zimin(u32),
    Pattern(Pattern),
}

impl DensityTarget {
    /// A pattern equal to some `Z_k` takes the Zimin fast path.
    pub fn from_pattern(v: Pattern) -> Result<Self> {
        if v.is_empty() {
            return Err(Error::EmptyPattern);
        }
        let k = v.num_variables() as u32;
        if k <= word::MAX_ZIMIN_INDEX && v == pattern::zimin(k)? {
            return Ok(DensityTarget::Zimin(k));
        }
        Ok(DensityTarget::Pattern(v))
    }

    fn accepts(&self, w: &[Letter]) -> bool {
        match self {
            DensityTarget::Zimin(k) => word::is_zimin_instance_letters(w, *k),
            DensityTarget::Pattern(v) => pattern::is_instance_letters(w, v),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exhaustive,
    MonteCarlo,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DensityEstimate {
    /// `hits / samples`; in exhaustive mode `samples = q^n`.
    #[serde(serialize_with = "ser_rat")]
    pub value: Rat,
    pub mode: Mode,
    pub n: usize,
    pub q: u32,
    pub hits: u64,
    pub samples: u64,
    pub seed: Option<u64>,
}

fn ser_rat<S: serde::Serializer>(r: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(r)
}

impl DensityEstimate {
    pub fn as_f64(&self) -> f64 {
        to_f64(&self.value)
    }
}

/// Every length-`n` word over `q` letters.
pub fn empirical_exhaustive(target: &DensityTarget, q: u32, n: usize) -> Result<DensityEstimate> {
    check_args(target, q, n)?;
    let total = (0..n).try_fold(1u64, |acc, _| {
        acc.checked_mul(u64::from(q)).filter(|&t| t <= ORACLE_BUDGET)
    });
    let total = total.ok_or_else(|| {
        Error::Size(format!("{q}^{n} words exceeds the enumeration budget of {ORACLE_BUDGET}"))
    })?;
    let hits = count_words(q, n, total, |w| target.accepts(w));
    Ok(DensityEstimate {
        value: Rat::new(BigInt::from(hits), BigInt::from(total)),
        mode: Mode::Exhaustive,
        n,
        q,
        hits,
        samples: total,
        seed: None,
    })
}

/// `samples` uniform words of length `n`.
///
/// Samples are drawn in fixed chunks, chunk `c` from ChaCha8 seeded with
/// `seed` on stream `c`, so the result does not depend on thread count.
pub fn empirical_monte_carlo(
    target: &DensityTarget,
    q: u32,
    n: usize,
    samples: u64,
    seed: u64,
) -> Result<DensityEstimate> {
    check_args(target, q, n)?;
    if samples == 0 {
        return Err(Error::Precondition("need at least one sample".into()));
    }
    let chunks = samples.div_ceil(SAMPLE_CHUNK);
    let hits: u64 = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c);
            let mut buf = vec![0 as Letter; n];
            let lo = c * SAMPLE_CHUNK;
            let hi = (lo + SAMPLE_CHUNK).min(samples);
            let mut hits = 0u64;
            for _ in lo..hi {
                for slot in buf.iter_mut() {
                    *slot = rng.gen_range(0..q) as Letter;
                }
                hits += u64::from(target.accepts(&buf));
            }
            hits
        })
        .sum();
    Ok(DensityEstimate {
        value: Rat::new(BigInt::from(hits), BigInt::from(samples)),
        mode: Mode::MonteCarlo,
        n,
        q,
        hits,
        samples,
        seed: Some(seed),
    })
}

/// Dispatches on `mode`; `samples` and `seed` only matter for sampling.
pub fn empirical_density(
    target: &DensityTarget,
    q: u32,
    n: usize,
    mode: Mode,
    samples: u64,
    seed: u64,
) -> Result<DensityEstimate> {
    match mode {
        Mode::Exhaustive => empirical_exhaustive(target, q, n),
        Mode::MonteCarlo => empirical_monte_carlo(target, q, n, samples, seed),
    }
}

fn check_args(target: &DensityTarget, q: u32, n: usize) -> Result<()> {
    check_q(q)?;
    if q > MAX_ALPHABET {
        return Err(Error::Precondition(format!("alphabet size {q} exceeds {MAX_ALPHABET}")));
    }
    if n == 0 {
        return Err(Error::Precondition("word length must be at least 1".into()));
    }
    if let DensityTarget::Zimin(k) = target {
        if *k == 0 || *k > word::MAX_ZIMIN_INDEX {
            return Err(Error::Precondition(format!(
                "Zimin index must be in 1..={}, got {k}",
                word::MAX_ZIMIN_INDEX
            )));
        }
    }
    Ok(())
}
