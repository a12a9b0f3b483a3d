//! Two-period threshold profiles, including equilibria where a lower-valued
//! consumer buys first.
//!
//! In period 1 consumer `i` buys iff `μ1 <= threshold_i`. Period 2 is fixed:
//! the seller charges the static price `μ2(E)` of the remaining set `E` and
//! every remaining consumer with `v >= μ2(E)` buys.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::model::{Instance, SubgameRef};
use crate::oracle::{Agent, AlternativeAction, DeviationReport};
use crate::rational::Rational;
use crate::static_monopoly::{static_price_of_set, static_profit_of_set, suffix_price_table};

/// Largest instance [`max_equilibrium_revenue`] searches.
pub const MAX_SEARCH_CONSUMERS: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrategyProfile2P {
    /// Period-1 threshold per consumer, in the instance's sorted order.
    pub thresholds: Vec<Rational>,
    /// `μ1`
    pub first_price: Rational,
}

/// What happens when the seller opens with a given price.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoPeriodOutcome {
    pub first_price: Rational,
    pub bought_first: Vec<bool>,
    /// `None` when nobody is left.
    pub second_price: Option<Rational>,
    pub bought_second: Vec<bool>,
    pub revenue: Rational,
}

impl TwoPeriodOutcome {
    /// 1-based indices of period-1 buyers.
    pub fn first_buyers(&self) -> Vec<usize> {
        indices(&self.bought_first)
    }

    /// 1-based indices of period-2 buyers.
    pub fn second_buyers(&self) -> Vec<usize> {
        indices(&self.bought_second)
    }
}

fn indices(flags: &[bool]) -> Vec<usize> {
    flags
        .iter()
        .enumerate()
        .filter(|(_, b)| **b)
        .map(|(i, _)| i + 1)
        .collect()
}

/// `(w, v)` as 1-based consumer indices: `w` the highest-valued consumer
/// waiting, `v` the lowest-valued period-1 buyer worth less than `w`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SwapPair {
    pub w: usize,
    pub v: usize,
}

/// `(w, v, μ2(E^v), μ2(S^w), μ1(E), μ1(S), μ2(E), μ2(S))` where `E` is the
/// waiting set and `S` the waiting set after the swap.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SwapChain {
    pub w: Rational,
    pub v: Rational,
    pub mu2_e_v: Rational,
    pub mu2_s_w: Rational,
    pub mu1_e: Rational,
    pub mu1_s: Rational,
    pub mu2_e: Rational,
    pub mu2_s: Rational,
}

impl SwapChain {
    /// `w > v >= μ2(E^v) = μ2(S^w) >= μ1(E) = μ1(S) >= μ2(E) = μ2(S)`
    pub fn holds(&self) -> bool {
        self.w > self.v
            && self.v >= self.mu2_e_v
            && self.mu2_e_v == self.mu2_s_w
            && self.mu2_s_w >= self.mu1_e
            && self.mu1_e == self.mu1_s
            && self.mu1_s >= self.mu2_e
            && self.mu2_e == self.mu2_s
    }

    pub fn as_array(&self) -> [&Rational; 8] {
        [
            &self.w,
            &self.v,
            &self.mu2_e_v,
            &self.mu2_s_w,
            &self.mu1_e,
            &self.mu1_s,
            &self.mu2_e,
            &self.mu2_s,
        ]
    }
}

/// `[80, 70, 45]` over two periods: 70 buys at 70, then 80 and 45 pay 45.
pub fn builtin_nonskim_example() -> (Instance, StrategyProfile2P) {
    let inst = Instance::from_integers(&[80, 70, 45], 2).expect("valid");
    let profile = StrategyProfile2P {
        thresholds: [45i64, 70, 45].into_iter().map(Rational::from).collect(),
        first_price: Rational::from(70i64),
    };
    (inst, profile)
}

fn check_shape(inst: &Instance, prof: &StrategyProfile2P) -> Result<()> {
    if inst.periods() != 2 {
        return Err(Error::NotTwoPeriods {
            periods: inst.periods(),
        });
    }
    if prof.thresholds.len() != inst.consumers() {
        return Err(Error::ThresholdCount {
            expected: inst.consumers(),
            got: prof.thresholds.len(),
        });
    }
    Ok(())
}

/// Values of the consumers whose flag equals `keep`, plus `extra`.
fn collect(values: &[Rational], flags: &[bool], keep: bool, extra: Option<usize>) -> Vec<Rational> {
    values
        .iter()
        .enumerate()
        .filter(|(i, _)| flags[*i] == keep || extra == Some(*i))
        .map(|(_, v)| v.clone())
        .collect()
}

fn second_price(set: &[Rational]) -> Rational {
    static_price_of_set(set).unwrap_or_else(Rational::zero)
}

/// Plays the thresholds against first price `mu1`.
pub fn play(inst: &Instance, thresholds: &[Rational], mu1: &Rational) -> TwoPeriodOutcome {
    let values = inst.valuations();
    let bought_first: Vec<bool> = thresholds.iter().map(|th| mu1 <= th).collect();
    let waiting = collect(values, &bought_first, false, None);
    let second = static_price_of_set(&waiting);
    let bought_second: Vec<bool> = values
        .iter()
        .zip(&bought_first)
        .map(|(v, first)| !first && second.as_ref().is_some_and(|p| v >= p))
        .collect();
    let sold_first = bought_first.iter().filter(|b| **b).count();
    let revenue = mu1.times(sold_first) + static_profit_of_set(&waiting);
    TwoPeriodOutcome {
        first_price: mu1.clone(),
        bought_first,
        second_price: second,
        bought_second,
        revenue,
    }
}

/// Every first price at which some payoff comparison can change: values,
/// thresholds, zero, and one above the largest of these.
fn breakpoints(inst: &Instance, prof: &StrategyProfile2P) -> Vec<Rational> {
    let mut points: Vec<Rational> = inst.valuations().iter().chain(&prof.thresholds).cloned().collect();
    points.push(Rational::zero());
    points.sort();
    points.dedup();
    let top = points.last().expect("non-empty").clone();
    points.push(top + Rational::one());
    points
}

/// Consumer deviations when the seller opens at `mu1`.
fn consumer_check(inst: &Instance, outcome: &TwoPeriodOutcome, report: &mut DeviationReport, after: Option<&Rational>) {
    let values = inst.valuations();
    let mu1 = &outcome.first_price;
    let root = SubgameRef::root();
    for (idx, v) in values.iter().enumerate() {
        let consumer = Agent::Consumer(idx + 1);
        if outcome.bought_first[idx] {
            let current = v - mu1;
            let threat = second_price(&collect(values, &outcome.bought_first, false, Some(idx)));
            if *v >= threat {
                report.record_after(
                    consumer,
                    root,
                    AlternativeAction::BuyAt(2),
                    v - &threat - &current,
                    after.cloned(),
                );
            }
            report.record_after(consumer, root, AlternativeAction::NeverBuy, -current, after.cloned());
        } else {
            let mu2 = outcome.second_price.clone().unwrap_or_else(Rational::zero);
            let current = if *v >= mu2 { v - &mu2 } else { Rational::zero() };
            report.record_after(
                consumer,
                root,
                AlternativeAction::BuyAt(1),
                v - mu1 - current,
                after.cloned(),
            );
        }
    }
}

/// Checks every consumer's alternative on the path and every alternative
/// first price over the breakpoint set.
pub fn verify_profile(inst: &Instance, prof: &StrategyProfile2P) -> Result<DeviationReport> {
    check_shape(inst, prof)?;
    let mut report = DeviationReport::default();
    let on_path = play(inst, &prof.thresholds, &prof.first_price);
    consumer_check(inst, &on_path, &mut report, None);
    for q in breakpoints(inst, prof) {
        if q == prof.first_price {
            continue;
        }
        let alt = play(inst, &prof.thresholds, &q).revenue;
        report.record(
            Agent::Duropolist,
            SubgameRef::root(),
            AlternativeAction::Price(q),
            alt - &on_path.revenue,
        );
    }
    Ok(report)
}

/// Consumer deviations after first prices other than `μ1`: each breakpoint
/// and each midpoint between neighbouring breakpoints.
pub fn off_path_deviations(inst: &Instance, prof: &StrategyProfile2P) -> Result<DeviationReport> {
    check_shape(inst, prof)?;
    let points = breakpoints(inst, prof);
    let mut probes = points.clone();
    for pair in points.windows(2) {
        probes.push((&pair[0] + &pair[1]) / Rational::from(2i64));
    }
    probes.sort();
    let mut report = DeviationReport::default();
    for q in probes.iter().filter(|q| **q != prof.first_price) {
        let outcome = play(inst, &prof.thresholds, q);
        consumer_check(inst, &outcome, &mut report, Some(q));
    }
    Ok(report)
}

/// No consumer waits at `μ1` while a strictly lower-valued one buys.
pub fn is_skimming(inst: &Instance, prof: &StrategyProfile2P) -> Result<bool> {
    check_shape(inst, prof)?;
    Ok(swap_pair(inst, prof).is_none())
}

/// The pair a swap would exchange, if the realized play is not skimming.
pub fn swap_pair(inst: &Instance, prof: &StrategyProfile2P) -> Option<SwapPair> {
    let values = inst.valuations();
    let bought: Vec<bool> = prof.thresholds.iter().map(|th| prof.first_price <= *th).collect();
    let w = bought.iter().position(|b| !b)?;
    let v = (w + 1..values.len())
        .rev()
        .find(|&i| bought[i] && values[i] < values[w])?;
    Some(SwapPair { w: w + 1, v: v + 1 })
}

/// Swaps period-1 thresholds of out-of-order pairs until play is skimming.
/// Returns the new profile and the number of swaps.
pub fn swap_to_skimming(inst: &Instance, prof: &StrategyProfile2P) -> Result<(StrategyProfile2P, usize)> {
    let report = verify_profile(inst, prof)?;
    if !report.is_empty() {
        return Err(Error::NotAnEquilibrium(report));
    }
    let mut current = prof.clone();
    let mut swaps = 0;
    while let Some(pair) = swap_pair(inst, &current) {
        current.thresholds.swap(pair.w - 1, pair.v - 1);
        swaps += 1;
    }
    Ok((current, swaps))
}

/// Evaluates both price chains for the first swap pair.
pub fn check_swap_chain(inst: &Instance, prof: &StrategyProfile2P) -> Result<SwapChain> {
    check_shape(inst, prof)?;
    let pair = swap_pair(inst, prof).ok_or(Error::NoSwapPair)?;
    let values = inst.valuations();
    let (w, v) = (pair.w - 1, pair.v - 1);

    let before: Vec<bool> = prof.thresholds.iter().map(|th| prof.first_price <= *th).collect();
    let mut after = before.clone();
    after.swap(w, v);

    let mu2_e_v = second_price(&collect(values, &before, false, Some(v)));
    let mu2_s_w = second_price(&collect(values, &after, false, Some(w)));
    let mu2_e = second_price(&collect(values, &before, false, None));
    let mu2_s = second_price(&collect(values, &after, false, None));

    Ok(SwapChain {
        w: values[w].clone(),
        v: values[v].clone(),
        mu2_e_v,
        mu2_s_w,
        mu1_e: prof.first_price.clone(),
        mu1_s: prof.first_price.clone(),
        mu2_e,
        mu2_s,
    })
}

/// Highest revenue over profiles passing [`verify_profile`], with thresholds
/// drawn from values, suffix prices and zero. Two-period instances with at
/// most [`MAX_SEARCH_CONSUMERS`] consumers.
pub fn max_equilibrium_revenue(inst: &Instance) -> Result<Option<(Rational, StrategyProfile2P)>> {
    if inst.periods() != 2 {
        return Err(Error::NotTwoPeriods {
            periods: inst.periods(),
        });
    }
    let n = inst.consumers();
    if n > MAX_SEARCH_CONSUMERS {
        return Err(Error::SizeGuard {
            n,
            t: 2,
            max_n: MAX_SEARCH_CONSUMERS,
            max_t: 2,
        });
    }
    let values = inst.valuations();
    let table = suffix_price_table(inst);
    let mut grid: Vec<Rational> = values.iter().chain(&table.prices).cloned().collect();
    grid.push(Rational::zero());
    grid.sort();
    grid.dedup();

    // (revenue, μ1, buyer flags) meeting every on-path consumer condition
    let above = values[0].clone() + Rational::one();
    let mut candidates: Vec<(Rational, Rational, Vec<bool>)> = Vec::new();
    for mask in 0u32..(1 << n) {
        let bought: Vec<bool> = (0..n).map(|i| mask & (1 << i) != 0).collect();
        for mu1 in grid.iter().chain(core::iter::once(&above)) {
            if mask == 0 && *mu1 != above || mask != 0 && *mu1 == above {
                continue;
            }
            let waiting = collect(values, &bought, false, None);
            let outcome = TwoPeriodOutcome {
                first_price: mu1.clone(),
                second_price: static_price_of_set(&waiting),
                bought_second: Vec::new(),
                revenue: mu1.times(mask.count_ones() as usize) + static_profit_of_set(&waiting),
                bought_first: bought.clone(),
            };
            let mut report = DeviationReport::default();
            consumer_check(inst, &outcome, &mut report, None);
            if report.is_empty() {
                candidates.push((outcome.revenue, mu1.clone(), bought.clone()));
            }
        }
    }
    candidates.sort_by(|a, b| b.0.cmp(&a.0));

    for (revenue, mu1, bought) in candidates {
        let options: Vec<Vec<Rational>> = bought
            .iter()
            .map(|b| {
                grid.iter()
                    .chain(core::iter::once(&above))
                    .filter(|g| (**g >= mu1) == *b)
                    .cloned()
                    .collect()
            })
            .collect();
        if options.iter().any(Vec::is_empty) {
            continue;
        }
        let mut choice = alloc::vec![0usize; n];
        loop {
            let profile = StrategyProfile2P {
                thresholds: choice.iter().zip(&options).map(|(&c, o)| o[c].clone()).collect(),
                first_price: mu1.clone(),
            };
            if verify_profile(inst, &profile)?.is_empty() {
                return Ok(Some((revenue, profile)));
            }
            // odometer increment
            let mut k = 0;
            while k < n {
                choice[k] += 1;
                if choice[k] < options[k].len() {
                    break;
                }
                choice[k] = 0;
                k += 1;
            }
            if k == n {
                break;
            }
        }
    }
    Ok(None)
}
