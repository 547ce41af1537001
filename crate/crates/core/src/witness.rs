//! Verified constructions: represented primes, prime powers with exactly `k`
//! positive representations, and integers with exactly `k` representations
//! up to proper automorphism.
//!
//! Searches follow the existence proofs to pick candidates but never trust
//! them: every candidate is recounted and rejected unless the count matches.

use std::collections::BTreeMap;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::primes::is_prime;
use crate::qform::Form;
use crate::repcount::{count_r, count_r_plus, first_quadrant_count, solutions};

/// Default cap on prime searches.
pub const DEFAULT_PRIME_BOUND: u64 = 1_000_000;

/// Largest value a witness may take; keeps primality and counting in `u64`.
pub const VALUE_CAP: u64 = 1_000_000_000_000_000_000;

/// How many principal-form primes and base values the surjectivity search
/// combines before falling back to a linear scan.
const CANDIDATE_TRIES: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeWitness {
    pub p: u64,
    pub rep: (i64, i64),
    pub form: Form,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessKind {
    /// `p^(2k−1) = m·x² + n·y²` with exactly `k` positive solutions.
    RectTheoremQ,
    /// `r⁺_F(n) = k`.
    RPlusSurjectivity,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplicityWitness {
    pub kind: WitnessKind,
    pub target_count: u64,
    pub value: u64,
    /// Positive solutions for [`WitnessKind::RectTheoremQ`], all solutions otherwise.
    pub solutions: Vec<(i64, i64)>,
    /// The prime `p` (rectangles) or the principal-form prime `q` (surjectivity).
    pub prime: Option<u64>,
    /// Base value `n₀` multiplied by powers of `q`.
    pub base: Option<u64>,
    /// Number of candidates examined before success.
    pub trace_len: u64,
}

fn pick_rep(sols: &[(i64, i64)]) -> (i64, i64) {
    sols.iter()
        .filter(|&&(x, y)| x >= 0 && y >= 0)
        .min()
        .or_else(|| sols.iter().find(|&&(x, y)| y > 0 || (y == 0 && x > 0)))
        .copied()
        .expect("non-empty solution list")
}

/// The smallest prime `p ≤ bound` represented by `form` and coprime to every
/// member of `avoid`.
pub fn find_represented_prime(form: &Form, avoid: &[u64], bound: u64) -> Result<PrimeWitness> {
    form.require_definite()?;
    for p in 2..=bound {
        if !is_prime(p) || avoid.iter().any(|a| p.gcd(a) != 1) {
            continue;
        }
        let sols = solutions(form, p)?;
        if !sols.is_empty() {
            return Ok(PrimeWitness {
                p,
                rep: pick_rep(&sols),
                form: *form,
            });
        }
    }
    Err(Error::exhausted(
        format!("prime represented by {form}"),
        bound,
    ))
}

fn checked_pow(base: u64, exp: u32) -> Option<u64> {
    base.checked_pow(exp).filter(|&v| v <= VALUE_CAP)
}

/// A prime `p` such that `p^(2k−1) = m·x² + n·y²` has exactly `k` solutions
/// with `x, y ≥ 1`.
///
/// Candidates are primes coprime to `2mn` represented by `m·x² + n·y²` with
/// `xy ≠ 0` and exactly four signed representations. Each is confirmed by a
/// full count of `p^(2k−1)`; a failure moves on to the next prime.
pub fn theorem_q_witness(m: u64, n: u64, k: u64, bound: u64) -> Result<MultiplicityWitness> {
    if m == 0 || n == 0 || k == 0 {
        return Err(Error::precondition("m, n and k must be positive"));
    }
    if m.gcd(&n) != 1 || m.saturating_mul(n) <= 3 {
        return Err(Error::precondition(format!(
            "need gcd(m, n) = 1 and mn > 3, got m = {m}, n = {n}"
        )));
    }
    let exp = u32::try_from(2 * k - 1).map_err(|_| Error::Overflow("exponent"))?;
    let form = Form::new(
        i64::try_from(m).map_err(|_| Error::Overflow("coefficient"))?,
        0,
        i64::try_from(n).map_err(|_| Error::Overflow("coefficient"))?,
    );
    let mut trace = 0;
    for p in 3..=bound {
        if !is_prime(p) || (2 * m * n) % p == 0 {
            continue;
        }
        let sols = solutions(&form, p)?;
        if sols.len() != 4 || sols.iter().any(|&(x, y)| x == 0 || y == 0) {
            continue;
        }
        trace += 1;
        let Some(level) = checked_pow(p, exp) else {
            return Err(Error::exhausted(
                format!("prime with p^{exp} ≤ {VALUE_CAP}"),
                bound,
            ));
        };
        let quad = first_quadrant_count(m, n, level)?;
        if quad.count == k {
            return Ok(MultiplicityWitness {
                kind: WitnessKind::RectTheoremQ,
                target_count: k,
                value: level,
                solutions: quad
                    .solutions
                    .iter()
                    .map(|&(x, y)| (x as i64, y as i64))
                    .collect(),
                prime: Some(p),
                base: None,
                trace_len: trace,
            });
        }
    }
    Err(Error::exhausted(
        format!("prime giving {k} positive solutions of {m}x²+{n}y²"),
        bound,
    ))
}

/// Some `n` with `r⁺_F(n) = k`.
///
/// Following the constructive argument, the search combines a prime `q`
/// represented by the principal form (coprime to `f·Δ`) with a base `n₀`
/// and tests `n₀·q^(k−1)`. For non-ambiguous forms `n₀` is a represented
/// prime coprime to `q·f`; for ambiguous forms it is a small represented
/// value. If none of those combinations verifies, `n` is scanned linearly.
pub fn surjectivity_witness(form: &Form, k: u64, bound: u64) -> Result<MultiplicityWitness> {
    form.require_definite()?;
    if k == 0 {
        return Err(Error::precondition("k must be positive"));
    }
    let disc = form.discriminant()?;
    let principal = Form::principal(disc.delta)?;
    let ambiguous = form.is_ambiguous()?;
    let exp = u32::try_from(k - 1).map_err(|_| Error::Overflow("exponent"))?;
    let guard = disc.conductor * disc.delta.unsigned_abs();

    let mut trace = 0;
    let found = |n: u64,
                 q: Option<u64>,
                 base: Option<u64>,
                 trace: u64|
     -> Result<Option<MultiplicityWitness>> {
        if count_r_plus(form, n)? != k {
            return Ok(None);
        }
        Ok(Some(MultiplicityWitness {
            kind: WitnessKind::RPlusSurjectivity,
            target_count: k,
            value: n,
            solutions: solutions(form, n)?,
            prime: q,
            base,
            trace_len: trace,
        }))
    };

    let mut qs = Vec::new();
    for q in 2..=bound {
        if qs.len() == CANDIDATE_TRIES {
            break;
        }
        if is_prime(q) && q.gcd(&guard) == 1 && count_r(&principal, q)? > 0 {
            qs.push(q);
        }
    }
    for &q in &qs {
        let mut bases = Vec::new();
        for n0 in 1..=bound {
            if bases.len() == CANDIDATE_TRIES {
                break;
            }
            let eligible = if ambiguous {
                true
            } else {
                is_prime(n0) && n0.gcd(&(q * disc.conductor)) == 1
            };
            if eligible && count_r(form, n0)? > 0 {
                bases.push(n0);
            }
        }
        for &n0 in &bases {
            let Some(n) = checked_pow(q, exp).and_then(|qk| qk.checked_mul(n0)) else {
                continue;
            };
            if n > VALUE_CAP {
                continue;
            }
            trace += 1;
            if let Some(w) = found(n, Some(q), Some(n0), trace)? {
                return Ok(w);
            }
        }
    }
    for n in 1..=bound {
        trace += 1;
        if let Some(w) = found(n, None, None, trace)? {
            return Ok(w);
        }
    }
    Err(Error::exhausted(
        format!("n with r⁺ = {k} for {form}"),
        bound,
    ))
}

/// Tally of `R_F(n)` over `1 ≤ n ≤ n_max`, keyed by count.
pub fn multiplicity_histogram(form: &Form, n_max: u64) -> Result<BTreeMap<u64, u64>> {
    form.require_definite()?;
    let mut hist = BTreeMap::new();
    for n in 1..=n_max {
        *hist.entry(count_r(form, n)?).or_insert(0) += 1;
    }
    Ok(hist)
}
