//! Game instances and subgame references.
//!
//! Consumers are identified by their 1-based position in the canonical
//! (non-increasing) valuation order. All indices in the public API use this
//! convention.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// A finite-horizon durable-good game: `N` unit-demand consumers and `T`
/// selling periods.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Instance {
    valuations: Vec<Rational>,
    periods: usize,
}

impl Instance {
    /// Validates and canonicalizes `values`; input order is irrelevant.
    pub fn new(mut values: Vec<Rational>, periods: usize) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyValuations);
        }
        if let Some(index) = values.iter().position(Rational::is_negative) {
            return Err(Error::NegativeValuation { index });
        }
        if values.iter().all(Rational::is_zero) {
            return Err(Error::AllZeroValuations);
        }
        if periods == 0 {
            return Err(Error::ZeroPeriods);
        }
        values.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Instance {
            valuations: values,
            periods,
        })
    }

    pub fn from_integers(values: &[i64], periods: usize) -> Result<Self> {
        Self::new(values.iter().copied().map(Rational::from).collect(), periods)
    }

    /// Sorted non-increasing.
    pub fn valuations(&self) -> &[Rational] {
        &self.valuations
    }

    /// `v_i` for 1-based `i`.
    pub fn value(&self, i: usize) -> &Rational {
        &self.valuations[i - 1]
    }

    pub fn consumers(&self) -> usize {
        self.valuations.len()
    }

    pub fn periods(&self) -> usize {
        self.periods
    }

    /// Same consumers, different horizon.
    pub fn with_periods(&self, periods: usize) -> Result<Self> {
        if periods == 0 {
            return Err(Error::ZeroPeriods);
        }
        Ok(Instance {
            valuations: self.valuations.clone(),
            periods,
        })
    }

    /// Consumers `i..=N` as a standalone game with the same horizon.
    pub fn suffix(&self, i: usize) -> Result<Self> {
        check_consumer(i, self.consumers())?;
        Instance::new(self.valuations[i - 1..].to_vec(), self.periods)
    }

    /// Perfect price discrimination profit: the sum of all values.
    pub fn total_surplus(&self) -> Rational {
        self.valuations.iter().sum()
    }
}

pub fn make_instance(values: Vec<Rational>, periods: usize) -> Result<Instance> {
    Instance::new(values, periods)
}

pub fn total_surplus(inst: &Instance) -> Rational {
    inst.total_surplus()
}

/// The subgame on consumers `first_consumer..=N` beginning at
/// `start_period`. `first_consumer == N + 1` is the empty subgame.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SubgameRef {
    pub first_consumer: usize,
    pub start_period: usize,
}

impl SubgameRef {
    pub fn root() -> Self {
        SubgameRef {
            first_consumer: 1,
            start_period: 1,
        }
    }

    pub fn is_empty_for(&self, inst: &Instance) -> bool {
        self.first_consumer > inst.consumers() || self.start_period > inst.periods()
    }
}

pub(crate) fn check_consumer(i: usize, n: usize) -> Result<()> {
    if i == 0 || i > n {
        Err(Error::IndexOutOfRange {
            what: "consumer",
            index: i,
            max: n,
        })
    } else {
        Ok(())
    }
}

pub(crate) fn check_period(t: usize, periods: usize) -> Result<()> {
    if t == 0 || t > periods {
        Err(Error::IndexOutOfRange {
            what: "period",
            index: t,
            max: periods,
        })
    } else {
        Ok(())
    }
}

#[cfg(feature = "serde")]
mod serde_impl {
    use super::Instance;
    use crate::rational::Rational;
    use alloc::vec::Vec;
    use serde::{Deserialize, Deserializer};

    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    struct Raw {
        valuations: Vec<Rational>,
        periods: usize,
    }

    impl<'de> Deserialize<'de> for Instance {
        fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
            let raw = Raw::deserialize(deserializer)?;
            Instance::new(raw.valuations, raw.periods).map_err(serde::de::Error::custom)
        }
    }
}
