//! Independent checks for the solver: brute-force schedule enumeration,
//! unilateral-deviation testing, and the skip-allowing comparison.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::model::{Instance, SubgameRef};
use crate::rational::Rational;

mod schedules;
mod spne;

pub use schedules::{best_with_skips, enumerate_schedules, ScheduleOptimum};
pub use spne::verify_spne;

/// Exhaustive search limits.
pub const MAX_ENUM_CONSUMERS: usize = 14;
pub const MAX_ENUM_PERIODS: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Agent {
    /// 1-based consumer index.
    Consumer(usize),
    Duropolist,
}

impl fmt::Display for Agent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Agent::Consumer(i) => write!(f, "consumer {i}"),
            Agent::Duropolist => f.write_str("duropolist"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum AlternativeAction {
    /// Consumer refuses until the given period and buys then.
    BuyAt(usize),
    NeverBuy,
    /// Seller posts this price instead.
    Price(Rational),
}

impl fmt::Display for AlternativeAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlternativeAction::BuyAt(t) => write!(f, "buy in period {t}"),
            AlternativeAction::NeverBuy => f.write_str("never buy"),
            AlternativeAction::Price(p) => write!(f, "charge {p}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Deviation {
    pub agent: Agent,
    pub subgame: SubgameRef,
    pub alternative_action: AlternativeAction,
    /// Strictly positive.
    pub payoff_gain: Rational,
    /// Set when the deviation follows an off-path first-period price.
    pub after_price: Option<Rational>,
}

impl fmt::Display for Deviation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} gains {} by choosing to {} (subgame from consumer {}, period {})",
            self.agent,
            self.payoff_gain,
            self.alternative_action,
            self.subgame.first_consumer,
            self.subgame.start_period
        )?;
        if let Some(p) = &self.after_price {
            write!(f, " after a first price of {p}")?;
        }
        Ok(())
    }
}

/// Every strictly profitable unilateral deviation found. Empty means the
/// profile passed every check.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DeviationReport {
    pub deviations: Vec<Deviation>,
}

impl DeviationReport {
    pub fn is_empty(&self) -> bool {
        self.deviations.is_empty()
    }

    pub(crate) fn record(
        &mut self,
        agent: Agent,
        subgame: SubgameRef,
        alternative_action: AlternativeAction,
        gain: Rational,
    ) {
        self.record_after(agent, subgame, alternative_action, gain, None);
    }

    pub(crate) fn record_after(
        &mut self,
        agent: Agent,
        subgame: SubgameRef,
        alternative_action: AlternativeAction,
        gain: Rational,
        after_price: Option<Rational>,
    ) {
        if gain.is_positive() {
            self.deviations.push(Deviation {
                agent,
                subgame,
                alternative_action,
                payoff_gain: gain,
                after_price,
            });
        }
    }

    /// One deviation per line.
    pub fn describe(&self) -> String {
        use core::fmt::Write;
        let mut out = String::new();
        for d in &self.deviations {
            let _ = writeln!(out, "{d}");
        }
        out
    }
}

pub(crate) fn check_guard(inst: &Instance) -> Result<()> {
    let (n, t) = (inst.consumers(), inst.periods());
    if n > MAX_ENUM_CONSUMERS || t > MAX_ENUM_PERIODS {
        return Err(Error::SizeGuard {
            n,
            t,
            max_n: MAX_ENUM_CONSUMERS,
            max_t: MAX_ENUM_PERIODS,
        });
    }
    Ok(())
}
