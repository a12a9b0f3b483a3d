//! Backward induction for the profit-maximizing strong-Markov equilibrium.
//!
//! For the suffix game on consumers `i..=N` starting in period `t`:
//!
//! ```text
//! j*(i,t) = argmax_{j >= i} (j - i + 1) * p(j, t+1) + Π(j+1, t+1)
//! Π(i,t)  = (j*(i,t) - i + 1) * p(j*(i,t), t+1) + Π(j*(i,t)+1, t+1)
//! p(i,t)  = p(j*(i,t), t+1)
//! ```
//!
//! with `p(j, T+1) := v_j` standing in for the final-period willingness to
//! pay, `Π(·, T+1) = 0` and `Π(N+1, ·) = 0`. The threat price of consumer
//! `i` in period `t < T` is `τ(i,t) = p(i,t+1)`.
//!
//! Ties in the argmax go to the highest price (smallest `j`). Consumers
//! whose threat price equals the posted price buy, so among maximizers that
//! share that price the cutoff is pushed to the largest one; otherwise the
//! reported schedule would disagree with the consumers' own strategies.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::model::{check_consumer, check_period, Instance};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DpTables {
    /// `Π(i,t)` at `[i-1][t-1]` for `i in 1..=N+1`, `t in 1..=T+1`.
    pub profit: Vec<Vec<Rational>>,
    /// `j*(i,t)` at `[i-1][t-1]` for `i in 1..=N`, `t in 1..=T`.
    pub cutoff: Vec<Vec<usize>>,
    /// `p(i,t)` at `[i-1][t-1]` for `i in 1..=N`, `t in 1..=T`.
    pub price: Vec<Vec<Rational>>,
    /// `τ(i,t)` at `[i-1][t-1]` for `i in 1..=N`, `t in 1..T`.
    pub threat: Vec<Vec<Rational>>,
}

impl DpTables {
    pub fn consumers(&self) -> usize {
        self.price.len()
    }

    pub fn periods(&self) -> usize {
        self.price.first().map_or(0, Vec::len)
    }

    pub fn profit(&self, i: usize, t: usize) -> &Rational {
        &self.profit[i - 1][t - 1]
    }

    pub fn cutoff(&self, i: usize, t: usize) -> usize {
        self.cutoff[i - 1][t - 1]
    }

    pub fn price(&self, i: usize, t: usize) -> &Rational {
        &self.price[i - 1][t - 1]
    }

    pub fn threat(&self, i: usize, t: usize) -> Result<&Rational> {
        let (n, periods) = (self.consumers(), self.periods());
        check_consumer(i, n)?;
        check_period(t, periods)?;
        if t == periods {
            return Err(Error::FinalPeriodThreat { period: t });
        }
        Ok(&self.threat[i - 1][t - 1])
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EquilibriumSolution {
    /// `μ_1..μ_T`. After a sell-out the last charged price is repeated.
    pub prices: Vec<Rational>,
    /// `x_1..x_T`.
    pub buyers_per_period: Vec<usize>,
    /// `j_1 <= ... <= j_T`: the last consumer served by the end of each period.
    pub cutoffs: Vec<usize>,
    /// `Π^D = Π(1,1)`.
    pub profit: Rational,
    pub tables: DpTables,
}

impl EquilibriumSolution {
    pub fn periods(&self) -> usize {
        self.prices.len()
    }

    /// Number of consumers still in the market at the start of period `t`.
    pub fn remaining_at(&self, n: usize, t: usize) -> usize {
        if t <= 1 {
            n
        } else {
            n - self.cutoffs[t - 2]
        }
    }

    /// Period in which consumer `i` buys, if any.
    pub fn purchase_period(&self, i: usize) -> Option<usize> {
        self.cutoffs
            .iter()
            .zip(&self.buyers_per_period)
            .position(|(&j, &x)| x > 0 && i <= j && i + x > j)
            .map(|t| t + 1)
    }
}

pub fn solve(inst: &Instance) -> EquilibriumSolution {
    solve_values(inst.valuations(), inst.periods())
}

/// The solver on a raw sorted slice. Unlike [`Instance`] this tolerates
/// all-zero values, which arise as continuation games.
pub fn solve_values(values: &[Rational], periods: usize) -> EquilibriumSolution {
    let tables = build_tables(values, periods);
    let n = values.len();

    let mut prices = Vec::with_capacity(periods);
    let mut buyers = Vec::with_capacity(periods);
    let mut cutoffs = Vec::with_capacity(periods);
    let mut next = 1;
    let mut last_price = Rational::zero();
    for t in 1..=periods {
        if next > n {
            prices.push(last_price.clone());
            buyers.push(0);
            cutoffs.push(n);
            continue;
        }
        let j = tables.cutoff(next, t);
        last_price = tables.price(next, t).clone();
        prices.push(last_price.clone());
        buyers.push(j + 1 - next);
        cutoffs.push(j);
        next = j + 1;
    }
    let profit = if n == 0 {
        Rational::zero()
    } else {
        tables.profit(1, 1).clone()
    };

    EquilibriumSolution {
        prices,
        buyers_per_period: buyers,
        cutoffs,
        profit,
        tables,
    }
}

fn build_tables(values: &[Rational], periods: usize) -> DpTables {
    let n = values.len();
    let mut profit = vec![vec![Rational::zero(); periods + 1]; n + 1];
    let mut cutoff = vec![vec![0usize; periods]; n];
    let mut price = vec![vec![Rational::zero(); periods]; n];

    for t in (1..=periods).rev() {
        for i in (1..=n).rev() {
            let mut best: Option<(usize, Rational, Rational)> = None;
            for j in i..=n {
                let offer = if t == periods { &values[j - 1] } else { &price[j - 1][t] };
                let total = offer.times(j + 1 - i) + &profit[j][t];
                let take = match &best {
                    None => true,
                    Some((_, best_total, best_offer)) => {
                        total > *best_total || (total == *best_total && offer == best_offer)
                    }
                };
                if take {
                    best = Some((j, total, offer.clone()));
                }
            }
            let (j, total, offer) = best.expect("j = i is always a candidate");
            cutoff[i - 1][t - 1] = j;
            price[i - 1][t - 1] = offer;
            profit[i - 1][t - 1] = total;
        }
    }

    let threat = price.iter().map(|row| row.iter().skip(1).cloned().collect()).collect();

    DpTables {
        profit,
        cutoff,
        price,
        threat,
    }
}

/// `τ(i,t) = p(i,t+1)`.
pub fn threat_price(inst: &Instance, i: usize, t: usize) -> Result<Rational> {
    check_consumer(i, inst.consumers())?;
    check_period(t, inst.periods())?;
    if t == inst.periods() {
        return Err(Error::FinalPeriodThreat { period: t });
    }
    Ok(solve(inst).tables.threat(i, t)?.clone())
}

/// The game the seller believes she faces at the start of period `period`
/// once `N - remaining_count` units have sold: the lowest `remaining_count`
/// valuations with `T - period + 1` periods left.
pub fn reindexed_subgame(inst: &Instance, remaining_count: usize, period: usize) -> Result<Instance> {
    let n = inst.consumers();
    if remaining_count == 0 || remaining_count > n {
        return Err(Error::IndexOutOfRange {
            what: "remaining_count",
            index: remaining_count,
            max: n,
        });
    }
    check_period(period, inst.periods())?;
    Instance::new(
        inst.valuations()[n - remaining_count..].to_vec(),
        inst.periods() - period + 1,
    )
}
