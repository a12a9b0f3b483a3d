//! Brute-force sales schedules.
//!
//! A schedule is a list of cutoffs `j_1 <= ... <= j_T`; period `s` serves
//! consumers `j_{s-1}+1 ..= j_s`. Each selling period is priced at the
//! threat price of its last buyer: that buyer's value in the final period,
//! otherwise the first sale price of the best schedule of the suffix game it
//! would face by waiting. Every complete schedule is scored by summation and
//! the best is picked from the full list; nothing here reads the solver's
//! tables.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::check_guard;
use crate::error::Result;
use crate::model::Instance;
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScheduleOptimum {
    pub max_profit: Rational,
    /// Cutoffs `j_1..j_T`.
    pub best_schedule: Vec<usize>,
    /// Per-period price, `None` when nothing sells.
    pub prices: Vec<Option<Rational>>,
}

/// Maximum revenue over schedules that sell at least once per period while
/// consumers remain. Refuses instances above the size guard.
pub fn enumerate_schedules(inst: &Instance) -> Result<ScheduleOptimum> {
    check_guard(inst)?;
    Ok(Enumerator::new(inst.valuations(), inst.periods(), false).optimum(1, 1))
}

/// Maximum revenue when the seller may also let periods pass without a
/// sale. Threat prices are derived from the same skip-allowing game.
pub fn best_with_skips(inst: &Instance) -> Result<Rational> {
    check_guard(inst)?;
    Ok(Enumerator::new(inst.valuations(), inst.periods(), true)
        .optimum(1, 1)
        .max_profit)
}

struct Enumerator<'a> {
    values: &'a [Rational],
    periods: usize,
    allow_skips: bool,
    first_sale_price: BTreeMap<(usize, usize), Rational>,
}

/// Candidate ordering: revenue, then per period (price, cutoff), higher
/// first. Selling beats not selling on a tie.
type Score = (Rational, Vec<Option<(Rational, usize)>>);

impl<'a> Enumerator<'a> {
    fn new(values: &'a [Rational], periods: usize, allow_skips: bool) -> Self {
        Enumerator {
            values,
            periods,
            allow_skips,
            first_sale_price: BTreeMap::new(),
        }
    }

    fn n(&self) -> usize {
        self.values.len()
    }

    /// Threat price of consumer `j` whose period ends before `next_period`.
    fn threat(&mut self, j: usize, next_period: usize) -> Rational {
        if next_period > self.periods {
            return self.values[j - 1].clone();
        }
        if let Some(p) = self.first_sale_price.get(&(j, next_period)) {
            return p.clone();
        }
        let best = self.optimum(j, next_period);
        let price = best
            .prices
            .iter()
            .flatten()
            .next()
            .cloned()
            .unwrap_or_else(Rational::zero);
        self.first_sale_price.insert((j, next_period), price.clone());
        price
    }

    fn optimum(&mut self, first: usize, start: usize) -> ScheduleOptimum {
        let mut schedules = Vec::new();
        let mut path = Vec::with_capacity(self.periods);
        self.collect(first - 1, start, &mut path, &mut schedules);

        let mut best: Option<(Score, Vec<usize>)> = None;
        for cutoffs in schedules {
            let score = self.score(first - 1, start, &cutoffs);
            if best.as_ref().is_none_or(|(top, _)| score > *top) {
                best = Some((score, cutoffs));
            }
        }
        let ((max_profit, periods), best_schedule) = best.expect("at least one schedule exists");
        ScheduleOptimum {
            max_profit,
            best_schedule,
            prices: periods.into_iter().map(|p| p.map(|(price, _)| price)).collect(),
        }
    }

    fn collect(&self, prev: usize, period: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if period > self.periods {
            out.push(path.clone());
            return;
        }
        let n = self.n();
        let lo = if prev == n || self.allow_skips { prev } else { prev + 1 };
        for j in lo..=n {
            path.push(j);
            self.collect(j, period + 1, path, out);
            path.pop();
        }
    }

    fn score(&mut self, before: usize, start: usize, cutoffs: &[usize]) -> Score {
        let mut revenue = Rational::zero();
        let mut periods = Vec::with_capacity(cutoffs.len());
        let mut prev = before;
        for (offset, &j) in cutoffs.iter().enumerate() {
            if j == prev {
                periods.push(None);
                continue;
            }
            let price = self.threat(j, start + offset + 1);
            revenue += price.times(j - prev);
            periods.push(Some((price, j)));
            prev = j;
        }
        (revenue, periods)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::solver::solve;
    use alloc::vec;

    fn inst(v: &[i64], t: usize) -> Instance {
        Instance::from_integers(v, t).unwrap()
    }

    #[test]
    fn four_consumer_example() {
        let best = enumerate_schedules(&inst(&[100, 85, 80, 50], 2)).unwrap();
        assert_eq!(best.max_profit, Rational::from(260));
        assert_eq!(best.best_schedule, vec![2, 4]);
    }

    #[test]
    fn single_consumer() {
        for t in 1..4 {
            assert_eq!(
                enumerate_schedules(&inst(&[8], t)).unwrap().max_profit,
                Rational::from(8)
            );
        }
    }

    #[test]
    fn three_consumer_candidates() {
        // cutoffs (1,3), (2,3), (3,3) give 160, 135, 135
        let best = enumerate_schedules(&inst(&[80, 70, 45], 2)).unwrap();
        assert_eq!(best.max_profit, Rational::from(160));
        assert_eq!(best.best_schedule, vec![1, 3]);
    }

    #[test]
    fn guard() {
        let big: Vec<i64> = (1..=15).collect();
        assert!(matches!(
            enumerate_schedules(&inst(&big, 2)),
            Err(Error::SizeGuard { n: 15, .. })
        ));
        assert!(matches!(
            best_with_skips(&inst(&[3, 2], 7)),
            Err(Error::SizeGuard { t: 7, .. })
        ));
    }

    #[test]
    fn skips() {
        let four = inst(&[100, 85, 80, 50], 2);
        let skipped = best_with_skips(&four).unwrap();
        assert!(skipped <= solve(&four).profit);
        assert_eq!(skipped, Rational::from(260));
        assert_eq!(best_with_skips(&inst(&[6], 2)).unwrap(), Rational::from(6));
        assert_eq!(best_with_skips(&inst(&[9, 3, 1], 3)).unwrap(), Rational::from(13));
    }

    #[test]
    fn matches_solver_schedule_on_ties() {
        for (v, t) in [
            (&[1i64, 1][..], 2),
            (&[2, 1][..], 2),
            (&[4, 2, 2, 1][..], 3),
            (&[1, 1, 1][..], 3),
        ] {
            let i = inst(v, t);
            let best = enumerate_schedules(&i).unwrap();
            let sol = solve(&i);
            assert_eq!(best.max_profit, sol.profit);
            assert_eq!(best.best_schedule, sol.cutoffs, "values {v:?}");
        }
    }
}
