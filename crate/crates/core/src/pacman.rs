//! Full surplus extraction.
//!
//! The seller can take every consumer's entire value in some equilibrium
//! exactly when the number of distinct values `M` is at most `T` and every
//! suffix game's static price is its top value (`p_i = v_i`). The strategy
//! achieving it ("Pacman") charges the highest remaining value each period,
//! and consumers buy as soon as their utility is non-negative.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::model::Instance;
use crate::rational::Rational;
use crate::static_monopoly::{static_price_of_set, suffix_price_table};

/// Largest instance [`subset_price_property`] will enumerate.
pub const MAX_SUBSET_CONSUMERS: usize = 15;

/// Distinct values `w_1 > ... > w_M` and their multiplicities `n_1..n_M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistinctProfile {
    pub values: Vec<Rational>,
    pub counts: Vec<usize>,
}

impl DistinctProfile {
    pub fn of(inst: &Instance) -> Self {
        let mut values: Vec<Rational> = Vec::new();
        let mut counts: Vec<usize> = Vec::new();
        for v in inst.valuations() {
            match values.last() {
                Some(last) if last == v => *counts.last_mut().expect("parallel") += 1,
                _ => {
                    values.push(v.clone());
                    counts.push(1);
                }
            }
        }
        DistinctProfile { values, counts }
    }

    /// `M`
    pub fn distinct(&self) -> usize {
        self.values.len()
    }

    /// `w_i`, zero past `M`.
    pub fn w(&self, i: usize) -> Rational {
        self.values.get(i - 1).cloned().unwrap_or_else(Rational::zero)
    }

    /// `n_i`, zero past `M`.
    pub fn n(&self, i: usize) -> usize {
        self.counts.get(i - 1).copied().unwrap_or(0)
    }

    /// Multiset reconstruction, non-increasing.
    pub fn expand(&self) -> Vec<Rational> {
        self.values
            .iter()
            .zip(&self.counts)
            .flat_map(|(v, &c)| core::iter::repeat_n(v.clone(), c))
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum PacmanWitness {
    /// First consumer `i` with `p_i != v_i`.
    Consumer(usize),
    /// Only the horizon fails: `M > T`.
    Horizon(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PacmanVerdict {
    pub eligible: bool,
    pub witness: Option<PacmanWitness>,
    /// Some `p_i = v_i` holds only because a static-price tie was broken
    /// toward the higher price.
    pub tie_dependent: bool,
}

pub fn pacman_condition(inst: &Instance) -> PacmanVerdict {
    let table = suffix_price_table(inst);
    let values = inst.valuations();
    let first_bad = (1..=inst.consumers()).find(|&i| table.price(i) != inst.value(i));
    let distinct = DistinctProfile::of(inst).distinct();

    // p_i = v_i is tie-dependent when a cheaper price earns the same.
    let tie_dependent = first_bad.is_none()
        && (0..values.len()).any(|i| {
            let top = &values[i];
            let top_revenue = top.times(values[i..].iter().filter(|v| *v == top).count());
            values[i..]
                .iter()
                .enumerate()
                .any(|(k, v)| v < top && v.times(k + 1) == top_revenue)
        });

    let witness = match first_bad {
        Some(i) => Some(PacmanWitness::Consumer(i)),
        None if distinct > inst.periods() => Some(PacmanWitness::Horizon(distinct)),
        None => None,
    };
    PacmanVerdict {
        eligible: witness.is_none(),
        witness,
        tie_dependent,
    }
}

/// Plays Pacman against get-it-while-you-can for `min(M, T)` periods.
pub fn simulate_pacman(inst: &Instance) -> (Rational, Vec<Rational>) {
    let profile = DistinctProfile::of(inst);
    let rounds = profile.distinct().min(inst.periods());
    let mut revenue = Rational::zero();
    let mut prices = Vec::with_capacity(rounds);
    for (w, &count) in profile.values.iter().zip(&profile.counts).take(rounds) {
        revenue += w.times(count);
        prices.push(w.clone());
    }
    (revenue, prices)
}

/// Whether every non-empty subset's static price is its maximum value.
/// Refuses instances with more than [`MAX_SUBSET_CONSUMERS`] consumers.
pub fn subset_price_property(inst: &Instance) -> Result<bool> {
    let n = inst.consumers();
    if n > MAX_SUBSET_CONSUMERS {
        return Err(Error::SizeGuard {
            n,
            t: inst.periods(),
            max_n: MAX_SUBSET_CONSUMERS,
            max_t: inst.periods(),
        });
    }
    let values = inst.valuations();
    let mut subset = Vec::with_capacity(n);
    let holds = (1u32..(1u32 << n)).all(|mask| {
        subset.clear();
        subset.extend((0..n).filter(|b| mask & (1 << b) != 0).map(|b| values[b].clone()));
        let top = subset.iter().max().expect("non-empty");
        static_price_of_set(&subset).as_ref() == Some(top)
    });
    Ok(holds)
}

/// `n_i w_i - n_i w_k - n_{β+i} w_{β+i} >= 0` for all `2 <= k <= β`,
/// `1 <= i < k`. Requires `p_i = v_i` for every consumer.
pub fn pacman1_inequality(inst: &Instance, beta: usize) -> Result<bool> {
    if beta < 2 {
        return Err(Error::InvalidBeta(beta));
    }
    let table = suffix_price_table(inst);
    if let Some(i) = (1..=inst.consumers()).find(|&i| table.price(i) != inst.value(i)) {
        return Err(Error::PacmanHypothesis { consumer: i });
    }
    let d = DistinctProfile::of(inst);
    let holds = (2..=beta).all(|k| {
        (1..k).all(|i| {
            let lhs = d.w(i).times(d.n(i));
            let rhs = d.w(k).times(d.n(i)) + d.w(beta + i).times(d.n(beta + i));
            lhs >= rhs
        })
    });
    Ok(holds)
}

/// Total revenue when the first price is `w_k` and Pacman follows:
/// `Σ_{i<=k} n_i w_k + Σ_{j=k+1}^{T+k-1} n_j w_j` (1-based `k`).
pub fn first_price_profit(profile: &DistinctProfile, periods: usize, k: usize) -> Rational {
    let first: Rational = (1..=k).map(|i| profile.w(k).times(profile.n(i))).sum();
    let rest: Rational = (k + 1..periods + k).map(|j| profile.w(j).times(profile.n(j))).sum();
    first + rest
}
