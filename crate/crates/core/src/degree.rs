//! Degree lists from decks.
//!
//! A vertex of degree `i` has degree `j` in exactly `C(i,j) C(n-1-i, k-1-j)`
//! of the `k`-cards containing it, so the per-degree vertex totals `S_j` over
//! the deck form a triangular system in the unknowns `a_i`. Solving from the
//! top down needs the `a_i` with `i >= k` from elsewhere.

use crate::deck::Deck;
use crate::error::{Error, Result};
use crate::subsets::binomial_big;
use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;
use std::collections::BTreeMap;

/// `counts[i]` vertices of degree `i`, for `i` in `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeList {
    pub counts: Vec<u64>,
}

impl DegreeList {
    pub fn from_counts(counts: Vec<u64>) -> Self {
        DegreeList { counts }
    }

    /// Degrees in nonincreasing order.
    pub fn sequence(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (i, &c) in self.counts.iter().enumerate().rev() {
            out.extend(std::iter::repeat_n(i, c as usize));
        }
        out
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.counts.iter().rposition(|&c| c > 0)
    }
}

/// `S_j` for `j` in `0..k`: vertices of degree `j`, summed over all cards.
pub fn degree_profile_sums(d: &Deck) -> Vec<BigUint> {
    let mut sums = vec![0u128; d.k()];
    for (card, count) in d.card_graphs() {
        for v in 0..card.order() {
            let j = card.degree(v);
            if j < sums.len() {
                sums[j] += count as u128;
            }
        }
    }
    sums.into_iter().map(BigUint::from).collect()
}

/// Right side of the counting identity for a known degree list.
pub fn profile_from_degrees(n: usize, k: usize, counts: &[u64]) -> Vec<BigUint> {
    (0..k)
        .map(|j| {
            (j..n.min(j + n - k + 1))
                .map(|i| {
                    BigUint::from(counts.get(i).copied().unwrap_or(0))
                        * binomial_big(i as u64, j as u64)
                        * binomial_big((n - 1 - i) as u64, (k - 1 - j) as u64)
                })
                .sum()
        })
        .collect()
}

/// Back-substitution for `a_{k-1}, ..., a_0`.
///
/// `known_high` gives `a_i` for `i >= k`; missing degrees count as zero. An
/// entry at `k-1` is not used as input but must agree with the solved value.
pub fn solve_degree_list(d: &Deck, known_high: &BTreeMap<usize, u64>) -> Result<DegreeList> {
    let (n, k) = (d.n(), d.k());
    if let Some((&i, _)) = known_high.iter().next().filter(|(&i, _)| i + 1 < k) {
        return Err(Error::InvalidParams(format!(
            "degree {i} is below k - 1 = {} and is solved for, not given",
            k - 1
        )));
    }
    if let Some((&i, _)) = known_high.iter().find(|(&i, &c)| i >= n && c > 0) {
        return Err(Error::InvalidParams(format!("degree {i} impossible on {n} vertices")));
    }
    let sums = degree_profile_sums(d);
    let mut a: Vec<BigInt> = vec![BigInt::zero(); n];
    for i in k..n {
        a[i] = BigInt::from(known_high.get(&i).copied().unwrap_or(0));
    }
    for j in (0..k.min(n)).rev() {
        let mut rest = BigInt::from(sums[j].clone());
        for (i, ai) in a.iter().enumerate().take(n.min(j + n - k + 1)).skip(j + 1) {
            rest -= ai
                * BigInt::from(
                    binomial_big(i as u64, j as u64)
                        * binomial_big((n - 1 - i) as u64, (k - 1 - j) as u64),
                );
        }
        let coeff = BigInt::from(binomial_big((n - 1 - j) as u64, (k - 1 - j) as u64));
        if rest.is_negative() || !(&rest % &coeff).is_zero() {
            return Err(Error::InconsistentDeck(format!(
                "degree {j}: remainder {rest} is not a nonnegative multiple of {coeff}"
            )));
        }
        a[j] = rest / coeff;
    }
    if k >= 1 {
        if let Some(&given) = known_high.get(&(k - 1)) {
            if BigInt::from(given) != a[k - 1] {
                return Err(Error::InconsistentDeck(format!(
                    "degree {}: given {given}, deck implies {}",
                    k - 1,
                    a[k - 1]
                )));
            }
        }
    }
    let counts: Vec<u64> = a
        .iter()
        .map(|x| x.to_u64().ok_or_else(|| Error::InconsistentDeck("count overflow".into())))
        .collect::<Result<_>>()?;
    let total: u64 = counts.iter().sum();
    let degree_sum: u64 = counts.iter().enumerate().map(|(i, &c)| i as u64 * c).sum();
    if total != n as u64 || degree_sum % 2 != 0 {
        return Err(Error::InconsistentDeck(format!(
            "solved list has {total} vertices and degree sum {degree_sum}"
        )));
    }
    Ok(DegreeList { counts })
}

/// Largest degree seen in any card.
pub fn observed_max_degree(d: &Deck) -> usize {
    d.cards()
        .keys()
        .map(|c| c.to_graph().max_degree())
        .max()
        .unwrap_or(0)
}

/// Degree list from a deck whose cards are large enough to expose the maximum
/// degree: needs `k >= Δ + 2`, where `Δ` is read off the cards.
pub fn degree_list_from_deck(d: &Deck) -> Result<DegreeList> {
    let delta = observed_max_degree(d);
    if d.k() < delta + 2 {
        return Err(Error::Hypothesis(format!(
            "cards show degree {delta}, so k must be at least {}, got {}",
            delta + 2,
            d.k()
        )));
    }
    solve_degree_list(d, &BTreeMap::new())
}

/// Threshold `g(ℓ)` above which degree lists are `ℓ`-reconstructible, with
/// natural logarithms.
pub fn taylor_threshold(ell: u64) -> Result<f64> {
    if ell < 2 {
        return Err(Error::Domain(format!("ℓ = {ell}: log ℓ vanishes")));
    }
    let l = ell as f64;
    let ln = l.ln();
    let e = std::f64::consts::E;
    let denom = (l - 1.0) * ln - 1.0;
    if denom <= 0.0 {
        return Err(Error::Domain(format!("(ℓ-1) ln ℓ - 1 = {denom:.6} is not positive")));
    }
    Ok((l - ln + 1.0) * (e + (e * ln + e + 1.0) / denom) + 1.0)
}
