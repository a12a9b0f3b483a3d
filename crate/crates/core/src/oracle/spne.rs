//! Unilateral-deviation check of an equilibrium profile.
//!
//! The profile under test is the one the solver constructs. The seller only
//! observes how many units have sold; with `r` consumers left in period `t`
//! she believes they are the `r` lowest valuations and plays the solution of
//! that belief game. Consumers buy before the last period iff the price is at
//! most the threat price of their rank within the remaining set, computed in
//! the same belief game, and in the last period iff the price is at most
//! their value.
//!
//! On the path the seller charges the prices stored in the solution being
//! verified (as long as the sales count matches what that solution
//! predicts), so a tampered solution shows up as a profitable deviation.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;

use super::{Agent, AlternativeAction, DeviationReport};
use crate::error::{Error, Result};
use crate::model::{Instance, SubgameRef};
use crate::rational::Rational;
use crate::solver::{solve_values, EquilibriumSolution};

pub fn verify_spne(inst: &Instance, sol: &EquilibriumSolution) -> Result<DeviationReport> {
    check_shape(inst, sol)?;
    let mut profile = Profile::new(inst, sol);
    let n = inst.consumers();
    let periods = inst.periods();
    let everyone: Vec<usize> = (1..=n).collect();
    let path = profile.play(1, everyone.clone(), None, None);
    let mut report = DeviationReport::default();

    for x in 1..=n {
        let value = inst.value(x);
        let on_path = payoff(value, path.purchases[x - 1].as_ref());
        let current = path.purchases[x - 1].as_ref().map(|(t, _)| *t);
        let mut plans: Vec<Plan> = (1..=periods).map(Plan::BuyAt).collect();
        plans.push(Plan::Never);
        for plan in plans {
            let alt_period = match plan {
                Plan::BuyAt(s) => Some(s),
                Plan::Never => None,
            };
            if alt_period == current {
                continue;
            }
            let outcome = profile.play(1, everyone.clone(), Some((x, plan)), None);
            let gain = payoff(value, outcome.purchases[x - 1].as_ref()) - &on_path;
            let diverges_at = match (current, alt_period) {
                (Some(a), Some(b)) => a.min(b),
                (Some(a), None) | (None, Some(a)) => a,
                (None, None) => unreachable!(),
            };
            let action = match plan {
                Plan::BuyAt(s) => AlternativeAction::BuyAt(s),
                Plan::Never => AlternativeAction::NeverBuy,
            };
            report.record(Agent::Consumer(x), path.subgame_at(diverges_at, n), action, gain);
        }
    }

    for (t, remaining) in &path.states {
        let t = *t;
        let on_path: Rational = path.revenue_by_period[t - 1..].iter().sum();
        for q in profile.candidate_prices(t, remaining) {
            let alt = profile.seller_payoff(t, remaining, &q);
            let subgame = SubgameRef {
                first_consumer: remaining[0],
                start_period: t,
            };
            report.record(Agent::Duropolist, subgame, AlternativeAction::Price(q), alt - &on_path);
        }
    }
    Ok(report)
}

fn payoff(value: &Rational, purchase: Option<&(usize, Rational)>) -> Rational {
    purchase.map_or_else(Rational::zero, |(_, price)| value - price)
}

fn check_shape(inst: &Instance, sol: &EquilibriumSolution) -> Result<()> {
    let (n, t) = (inst.consumers(), inst.periods());
    let mismatch = |what: &str| Err(Error::DimensionMismatch(format!("{what} (N = {n}, T = {t})")));
    if sol.prices.len() != t || sol.buyers_per_period.len() != t || sol.cutoffs.len() != t {
        return mismatch("per-period lists must have length T");
    }
    if sol.cutoffs.windows(2).any(|w| w[0] > w[1]) || sol.cutoffs.iter().any(|&j| j > n) {
        return mismatch("cutoffs must be non-decreasing and at most N");
    }
    let tab = &sol.tables;
    let rows_ok = |rows: usize, cols: usize, lens: &mut dyn Iterator<Item = usize>| {
        let lens: Vec<usize> = lens.collect();
        lens.len() == rows && lens.iter().all(|&l| l == cols)
    };
    if !rows_ok(n + 1, t + 1, &mut tab.profit.iter().map(Vec::len))
        || !rows_ok(n, t, &mut tab.price.iter().map(Vec::len))
        || !rows_ok(n, t, &mut tab.cutoff.iter().map(Vec::len))
        || !rows_ok(n, t - 1, &mut tab.threat.iter().map(Vec::len))
    {
        return mismatch("tables must be (N+1)x(T+1) for profit, NxT for price and cutoff, Nx(T-1) for threat");
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Plan {
    BuyAt(usize),
    Never,
}

struct Outcome {
    /// `(period, price)` per consumer.
    purchases: Vec<Option<(usize, Rational)>>,
    revenue_by_period: Vec<Rational>,
    /// Remaining consumers at the start of each period that had any.
    states: Vec<(usize, Vec<usize>)>,
}

impl Outcome {
    fn subgame_at(&self, period: usize, n: usize) -> SubgameRef {
        let first = self
            .states
            .iter()
            .find(|(t, _)| *t == period)
            .map_or(n + 1, |(_, w)| w[0]);
        SubgameRef {
            first_consumer: first,
            start_period: period,
        }
    }
}

struct Profile<'a> {
    inst: &'a Instance,
    on_path: &'a EquilibriumSolution,
    beliefs: BTreeMap<(usize, usize), EquilibriumSolution>,
}

impl<'a> Profile<'a> {
    fn new(inst: &'a Instance, on_path: &'a EquilibriumSolution) -> Self {
        Profile {
            inst,
            on_path,
            beliefs: BTreeMap::new(),
        }
    }

    /// Solution of the game with the lowest `remaining` values from `period`.
    fn belief(&mut self, remaining: usize, period: usize) -> &EquilibriumSolution {
        let (inst, periods) = (self.inst, self.inst.periods());
        self.beliefs.entry((remaining, period)).or_insert_with(|| {
            let values = inst.valuations();
            solve_values(&values[values.len() - remaining..], periods - period + 1)
        })
    }

    fn seller_price(&mut self, period: usize, remaining: usize) -> Rational {
        let n = self.inst.consumers();
        if self.on_path.remaining_at(n, period) == remaining {
            self.on_path.prices[period - 1].clone()
        } else {
            self.belief(remaining, period).prices[0].clone()
        }
    }

    /// Highest price consumer at `rank` (1-based) accepts, given `consumer`.
    fn acceptance(&mut self, period: usize, remaining: usize, rank: usize, consumer: usize) -> Rational {
        if period == self.inst.periods() {
            self.inst.value(consumer).clone()
        } else {
            self.belief(remaining, period).tables.price(rank, 2).clone()
        }
    }

    fn willing(
        &mut self,
        period: usize,
        remaining: &[usize],
        price: &Rational,
        deviant: Option<(usize, Plan)>,
    ) -> Vec<bool> {
        let r = remaining.len();
        remaining
            .iter()
            .enumerate()
            .map(|(idx, &c)| match deviant {
                Some((x, plan)) if x == c => plan == Plan::BuyAt(period),
                _ => *price <= self.acceptance(period, r, idx + 1, c),
            })
            .collect()
    }

    fn play(
        &mut self,
        start: usize,
        mut remaining: Vec<usize>,
        deviant: Option<(usize, Plan)>,
        first_price: Option<Rational>,
    ) -> Outcome {
        let periods = self.inst.periods();
        let mut out = Outcome {
            purchases: alloc::vec![None; self.inst.consumers()],
            revenue_by_period: alloc::vec![Rational::zero(); periods],
            states: Vec::new(),
        };
        let mut forced = first_price;
        for t in start..=periods {
            if remaining.is_empty() {
                break;
            }
            out.states.push((t, remaining.clone()));
            let price = match forced.take() {
                Some(p) => p,
                None => self.seller_price(t, remaining.len()),
            };
            let buys = self.willing(t, &remaining, &price, deviant);
            let mut kept = Vec::with_capacity(remaining.len());
            for (c, b) in remaining.into_iter().zip(buys) {
                if b {
                    out.purchases[c - 1] = Some((t, price.clone()));
                    out.revenue_by_period[t - 1] += &price;
                } else {
                    kept.push(c);
                }
            }
            remaining = kept;
        }
        out
    }

    /// Seller revenue from `period` on if she posts `price` now and then
    /// follows the profile.
    fn seller_payoff(&mut self, period: usize, remaining: &[usize], price: &Rational) -> Rational {
        let outcome = self.play(period, remaining.to_vec(), None, Some(price.clone()));
        outcome.revenue_by_period[period - 1..].iter().sum()
    }

    /// Breakpoints of the seller's revenue as a function of the posted price:
    /// remaining values, remaining acceptance thresholds, and one price above
    /// all of them.
    fn candidate_prices(&mut self, period: usize, remaining: &[usize]) -> BTreeSet<Rational> {
        let r = remaining.len();
        let mut out = BTreeSet::new();
        for (idx, &c) in remaining.iter().enumerate() {
            out.insert(self.inst.value(c).clone());
            out.insert(self.acceptance(period, r, idx + 1, c));
        }
        let top = out.iter().next_back().cloned().unwrap_or_else(Rational::zero);
        out.insert(top + Rational::one());
        out
    }
}
