//! Integer recursions for bifix-free words (`a`), `Z_2`-bifix-free framed
//! words (`c`, `d`, `b = c + d`) and the stage-one overcount (`bhat`).

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SeqKind {
    A,
    C,
    D,
    B,
    Bhat,
}

impl SeqKind {
    pub fn name(self) -> &'static str {
        match self {
            SeqKind::A => "a",
            SeqKind::C => "c",
            SeqKind::D => "d",
            SeqKind::B => "b",
            SeqKind::Bhat => "bhat",
        }
    }

    pub fn needs_ell(self) -> bool {
        self != SeqKind::A
    }
}

impl fmt::Display for SeqKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SeqKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "a" => Ok(SeqKind::A),
            "c" => Ok(SeqKind::C),
            "d" => Ok(SeqKind::D),
            "b" => Ok(SeqKind::B),
            "bhat" => Ok(SeqKind::Bhat),
            other => Err(Error::Parse(format!("unknown sequence kind {other:?}"))),
        }
    }
}

/// A prefix `values[0..=max]` of one integer sequence.
///
/// Tables only ever grow: [`SeqTable::extend_to`] appends entries and never
/// rewrites committed ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeqTable {
    q: u32,
    ell: Option<usize>,
    kind: SeqKind,
    values: Vec<BigUint>,
}

impl SeqTable {
    pub fn new(kind: SeqKind, q: u32, ell: Option<usize>) -> Result<Self> {
        if q < 2 {
            return Err(Error::Precondition(format!("alphabet size must be at least 2, got {q}")));
        }
        match (kind.needs_ell(), ell) {
            (true, Some(0)) | (true, None) => {
                return Err(Error::Precondition(format!("sequence {kind} needs a context length >= 1")))
            }
            (false, Some(_)) => {
                return Err(Error::Precondition("sequence a takes no context length".into()))
            }
            _ => {}
        }
        Ok(SeqTable { q, ell, kind, values: Vec::new() })
    }

    /// Rebuilds a table from stored values (e.g. a cache file); the caller is
    /// responsible for their correctness.
    pub fn from_values(kind: SeqKind, q: u32, ell: Option<usize>, values: Vec<BigUint>) -> Result<Self> {
        let mut t = SeqTable::new(kind, q, ell)?;
        t.values = values;
        Ok(t)
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn ell(&self) -> Option<usize> {
        self.ell
    }

    pub fn kind(&self) -> SeqKind {
        self.kind
    }

    pub fn values(&self) -> &[BigUint] {
        &self.values
    }

    /// Entry `i`, if computed.
    pub fn get(&self, i: usize) -> Option<&BigUint> {
        self.values.get(i)
    }

    /// Largest index computed, or `None` for an empty table.
    pub fn max_index(&self) -> Option<usize> {
        self.values.len().checked_sub(1)
    }

    /// Grows the table so that index `max` is available.
    pub fn extend_to(&mut self, max: usize) {
        if self.values.len() > max {
            return;
        }
        let q = BigInt::from(self.q);
        match self.kind {
            SeqKind::A => {
                let mut vals: Vec<BigInt> = self.values.iter().map(|v| BigInt::from(v.clone())).collect();
                for n in vals.len()..=max {
                    let v = a_step(&q, n, &vals);
                    vals.push(v);
                }
                self.values = to_unsigned(vals, self.kind);
            }
            SeqKind::C | SeqKind::D | SeqKind::B => {
                let ell = self.ell.expect("validated");
                let (c, d) = cd_values(self.q, ell, max);
                self.values = match self.kind {
                    SeqKind::C => to_unsigned(c, SeqKind::C),
                    SeqKind::D => to_unsigned(d, SeqKind::D),
                    _ => to_unsigned(c.into_iter().zip(d).map(|(x, y)| x + y).collect(), SeqKind::B),
                };
            }
            SeqKind::Bhat => {
                let ell = self.ell.expect("validated");
                self.values = to_unsigned(bhat_values(self.q, ell, max), SeqKind::Bhat);
            }
        }
    }
}

fn to_unsigned(vals: Vec<BigInt>, kind: SeqKind) -> Vec<BigUint> {
    vals.into_iter()
        .enumerate()
        .map(|(i, v)| {
            assert!(!v.is_negative(), "sequence {kind} went negative at index {i}: {v}");
            v.magnitude().clone()
        })
        .collect()
}

/// `a_0 = 0`, `a_1 = q`, `a_{2k} = q a_{2k-1} - a_k`, `a_{2k+1} = q a_{2k}`.
fn a_step(q: &BigInt, n: usize, a: &[BigInt]) -> BigInt {
    match n {
        0 => BigInt::zero(),
        1 => q.clone(),
        _ if n.is_multiple_of(2) => q * &a[n - 1] - &a[n / 2],
        _ => q * &a[n - 1],
    }
}

/// Number of bifix-free `q`-ary words of each length `0..=max_len`.
pub fn a_seq(q: u32, max_len: usize) -> Result<SeqTable> {
    let mut t = SeqTable::new(SeqKind::A, q, None)?;
    t.extend_to(max_len);
    Ok(t)
}

/// `(c, d)` tables for context length `ell`, indices `0..=max_m`.
pub fn cd_seq(q: u32, ell: usize, max_m: usize) -> Result<(SeqTable, SeqTable)> {
    let mut c = SeqTable::new(SeqKind::C, q, Some(ell))?;
    let mut d = SeqTable::new(SeqKind::D, q, Some(ell))?;
    c.extend_to(max_m);
    d.extend_to(max_m);
    Ok((c, d))
}

/// `b = c + d`: length-`m` `Z_2`-bifix-free words `L A L` for a fixed
/// bifix-free `L` of length `ell`.
pub fn b_seq(q: u32, ell: usize, max_m: usize) -> Result<SeqTable> {
    let mut b = SeqTable::new(SeqKind::B, q, Some(ell))?;
    b.extend_to(max_m);
    Ok(b)
}

/// Stage-one overcount `bhat` for context length `ell`.
pub fn bhat_seq(q: u32, ell: usize, max_m: usize) -> Result<SeqTable> {
    let mut t = SeqTable::new(SeqKind::Bhat, q, Some(ell))?;
    t.extend_to(max_m);
    Ok(t)
}

/// The `c` and `d` recursions, one arm per index class. Index 0 is padding.
///
/// Three regimes (even `ell`, odd `ell > 1`, `ell = 1`) share one underlying
/// rule; they differ in where the floor/ceiling of `ell / 2` lands and in
/// which exceptional indices collide.
fn cd_values(q: u32, ell: usize, max: usize) -> (Vec<BigInt>, Vec<BigInt>) {
    let qb = BigInt::from(q);
    let one = BigInt::from(1);
    let mut c: Vec<BigInt> = vec![BigInt::zero(); max + 1];
    let mut d: Vec<BigInt> = vec![BigInt::zero(); max + 1];
    let l = ell;
    for n in 1..=max {
        let k = n / 2;
        let even = n % 2 == 0;
        let (cn, dn) = if l == 1 {
            let cn = match n {
                0..=2 => BigInt::zero(),
                3 => qb.clone(),
                4 => &qb * &c[3] - &one,
                5 => &qb * &c[4] - (&c[3] - &one),
                6 => &qb * (&c[5] + &c[3] - &one) - (&c[3] - &one),
                _ if even => &qb * (&c[n - 1] + &c[k]) - &c[k],
                _ => &qb * &c[n - 1] - &c[k + 1],
            };
            let dn = match n {
                0..=4 => BigInt::zero(),
                5 => &qb - &one,
                6 => &qb * (&d[5] + &one) - &one,
                _ if even => &qb * (&d[n - 1] + &d[k]) - (&d[k] + &d[k + 1]),
                _ => &qb * (&d[n - 1] + &d[k + 1]) - &d[k + 1],
            };
            (cn, dn)
        } else if l.is_multiple_of(2) {
            let h = l / 2;
            let cn = if n <= 2 * l {
                BigInt::zero()
            } else if n == 2 * l + 1 {
                qb.clone()
            } else if n == 4 * l {
                &qb * &c[n - 1] - (&c[5 * h] + &one)
            } else if n == 5 * l {
                &qb * &c[n - 1] - (&c[5 * h] + &c[3 * l] - &one)
            } else if n == 5 * l + 1 {
                &qb * (&c[5 * l] + &c[3 * l] - &one)
            } else if n == 6 * l {
                // The generic shift k + ell/2 at k = 3 ell lands on 7 ell / 2.
                &qb * &c[n - 1] - (&c[3 * l] - &one + &c[7 * h])
            } else if even {
                &qb * &c[n - 1] - (&c[k] + &c[k + h])
            } else {
                &qb * (&c[n - 1] + &c[k + h])
            };
            let dn = if n <= 4 * l {
                BigInt::zero()
            } else if n == 4 * l + 1 {
                qb.clone()
            } else if n == 5 * l || n == 6 * l {
                &qb * &d[n - 1] - &one
            } else if n == 5 * l + 1 {
                &qb * (&d[5 * l] + &one)
            } else if even {
                &qb * &d[n - 1] - (&d[k] + &d[k + l] + &d[k + h])
            } else {
                &qb * (&d[n - 1] + &d[k + l] + &d[k + h])
            };
            (cn, dn)
        } else {
            let fl = l / 2;
            let cl = l.div_ceil(2);
            let cn = if n <= 2 * l {
                BigInt::zero()
            } else if n == 2 * l + 1 {
                qb.clone()
            } else if n == 4 * l {
                &qb * (&c[n - 1] + &c[(5 * l) / 2]) - (&c[2 * l] + &one)
            } else if n == 5 * l {
                &qb * &c[n - 1] - (&c[3 * l] - &one)
            } else if n == 5 * l + 1 {
                &qb * (&c[5 * l] + &c[3 * l] - &one) - &c[(5 * l).div_ceil(2)]
            } else if n == 6 * l {
                &qb * (&c[n - 1] + &c[(7 * l) / 2]) - (&c[3 * l] - &one)
            } else if even {
                &qb * (&c[n - 1] + &c[k + fl]) - &c[k]
            } else {
                &qb * &c[n - 1] - &c[k + cl]
            };
            let dn = if n <= 4 * l {
                BigInt::zero()
            } else if n == 4 * l + 1 {
                qb.clone()
            } else if n == 5 * l || n == 6 * l {
                &qb * &d[n - 1] - &one
            } else if n == 5 * l + 1 {
                &qb * (&d[5 * l] + &one)
            } else if even {
                &qb * (&d[n - 1] + &d[k + fl]) - (&d[k] + &d[k + l])
            } else {
                &qb * (&d[n - 1] + &d[k + l]) - &d[k + cl]
            };
            (cn, dn)
        };
        c[n] = cn;
        d[n] = dn;
    }
    (c, d)
}

/// The stage-one recursion exactly as the `c` rule reads before the
/// `L L L L` adjustments: base `q` at `2 ell + 1`, then the generic even/odd
/// steps. It agrees with [`oracle_bhat`](super::oracle::oracle_bhat) below
/// index `7 ell` and undercounts from there on, because words such as
/// `L^7 = L (L^2) L (L^2) L` are subtracted although their parents were
/// never counted.
pub fn bhat_stage_one(q: u32, ell: usize, max_m: usize) -> Result<SeqTable> {
    let mut t = SeqTable::new(SeqKind::Bhat, q, Some(ell))?;
    t.values = to_unsigned(stage_one_values(q, ell, max_m), SeqKind::Bhat);
    Ok(t)
}

fn stage_one_values(q: u32, ell: usize, max: usize) -> Vec<BigInt> {
    let qb = BigInt::from(q);
    let l = ell;
    let mut b: Vec<BigInt> = vec![BigInt::zero(); max + 1];
    for n in 2 * l + 1..=max {
        let k = n / 2;
        let even = n % 2 == 0;
        b[n] = if n == 2 * l + 1 {
            qb.clone()
        } else if l.is_multiple_of(2) {
            let h = l / 2;
            if even {
                &qb * &b[n - 1] - (&b[k] + &b[k + h])
            } else {
                &qb * (&b[n - 1] + &b[k + h])
            }
        } else if even {
            &qb * (&b[n - 1] + &b[k + l / 2]) - &b[k]
        } else {
            &qb * &b[n - 1] - &b[k + l.div_ceil(2)]
        };
    }
    b
}

/// Words `L A L` with no bifix `L B L` (`B` nonempty) of length at most
/// `(m + ell) / 2`.
///
/// Every `Z_2`-bifix of such a word has the form `L B L`, so the set is the
/// `b`-words plus those whose shortest `Z_2`-bifix is longer than that:
/// `L L F L L F L L` (counted by `d` at `m / 2 + ell`) and `L L L L`.
fn bhat_values(q: u32, ell: usize, max: usize) -> Vec<BigInt> {
    let span = max.max(max / 2 + ell);
    let (c, d) = cd_values(q, ell, span);
    (0..=max)
        .map(|m| {
            let mut v = &c[m] + &d[m];
            if m % 2 == 0 && m > 0 {
                v += &d[m / 2 + ell];
            }
            if m == 4 * ell {
                v += 1;
            }
            v
        })
        .collect()
}
