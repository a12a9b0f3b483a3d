//! One-shot monopoly pricing on a set of unit-demand consumers.
//!
//! With values sorted non-increasing, posting price `v_k` sells to exactly
//! the first `k` consumers (when `v_k > v_{k+1}`), so the optimal price is
//! `v_k` for `k` maximizing `k * v_k`. Ties go to the smallest `k`: the
//! highest optimal price.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::model::{check_consumer, Instance};
use crate::rational::Rational;

/// Static prices `p_i` of every suffix game `{i, ..., N}` together with
/// their maximizing cutoffs `y_i` (1-based, `y_i >= i`, `v(y_i) = p_i`).
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct StaticPriceTable {
    pub prices: Vec<Rational>,
    pub cutoffs: Vec<usize>,
}

impl StaticPriceTable {
    /// `p_i` for 1-based `i`.
    pub fn price(&self, i: usize) -> &Rational {
        &self.prices[i - 1]
    }

    /// `y_i` for 1-based `i`.
    pub fn cutoff(&self, i: usize) -> usize {
        self.cutoffs[i - 1]
    }

    pub fn sum(&self) -> Rational {
        self.prices.iter().sum()
    }
}

/// Returns `(v_k, k)` with 1-based `k` the smallest maximizer of `k * v_k`.
pub fn static_price(values: &[Rational]) -> Result<(Rational, usize)> {
    let (k, _) = best_cutoff(values).ok_or(Error::EmptyValuations)?;
    Ok((values[k - 1].clone(), k))
}

pub fn static_profit(values: &[Rational]) -> Result<Rational> {
    best_cutoff(values)
        .map(|(_, profit)| profit)
        .ok_or(Error::EmptyValuations)
}

/// Static price of an arbitrary multiset of values, in any order.
pub fn static_price_of_set(values: &[Rational]) -> Option<Rational> {
    let sorted = sorted_desc(values.to_vec());
    best_cutoff(&sorted).map(|(k, _)| sorted[k - 1].clone())
}

/// Static profit of an arbitrary multiset of values; zero for the empty set.
pub fn static_profit_of_set(values: &[Rational]) -> Rational {
    let sorted = sorted_desc(values.to_vec());
    best_cutoff(&sorted).map(|(_, p)| p).unwrap_or_else(Rational::zero)
}

fn sorted_desc(mut values: Vec<Rational>) -> Vec<Rational> {
    values.sort_unstable_by(|a, b| b.cmp(a));
    values
}

fn best_cutoff(values: &[Rational]) -> Option<(usize, Rational)> {
    let mut best: Option<(usize, Rational)> = None;
    for (idx, v) in values.iter().enumerate() {
        let revenue = v.times(idx + 1);
        match &best {
            Some((_, top)) if revenue <= *top => {}
            _ => best = Some((idx + 1, revenue)),
        }
    }
    best
}

pub fn suffix_price_table(inst: &Instance) -> StaticPriceTable {
    let values = inst.valuations();
    let mut prices = Vec::with_capacity(values.len());
    let mut cutoffs = Vec::with_capacity(values.len());
    for i in 0..values.len() {
        let (price, k) = static_price(&values[i..]).expect("suffix is non-empty");
        prices.push(price);
        cutoffs.push(i + k);
    }
    StaticPriceTable { prices, cutoffs }
}

/// Static price after replacing `v_j` (1-based) by `replacement` and
/// re-sorting.
pub fn replace_value_price(values: &[Rational], j: usize, replacement: &Rational) -> Result<Rational> {
    check_consumer(j, values.len())?;
    let mut perturbed = values.to_vec();
    perturbed[j - 1] = replacement.clone();
    Ok(static_price_of_set(&perturbed).expect("non-empty"))
}

/// Static price after adding one consumer with value `extra`.
pub fn insert_value_price(values: &[Rational], extra: &Rational) -> Rational {
    let mut grown = values.to_vec();
    grown.push(extra.clone());
    static_price_of_set(&grown).expect("non-empty")
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().copied().map(Rational::from).collect()
    }

    /// Every candidate price `v_k`, scored by counting buyers directly.
    fn brute_force(values: &[Rational]) -> (Rational, Rational) {
        let mut best_price = values[0].clone();
        let mut best_profit = Rational::from(-1);
        let mut candidates = values.to_vec();
        candidates.sort();
        candidates.dedup();
        candidates.reverse();
        for c in candidates {
            let buyers = values.iter().filter(|v| **v >= c).count();
            let profit = c.times(buyers);
            if profit > best_profit {
                best_profit = profit;
                best_price = c;
            }
        }
        (best_price, best_profit)
    }

    #[test]
    fn four_consumer_example() {
        let v = ints(&[100, 85, 80, 50]);
        assert_eq!(static_price(&v).unwrap(), (Rational::from(80), 3));
        assert_eq!(static_profit(&v).unwrap(), Rational::from(240));
    }

    #[test]
    fn single_and_tie() {
        assert_eq!(static_price(&ints(&[7])).unwrap(), (Rational::from(7), 1));
        assert_eq!(static_profit(&ints(&[7])).unwrap(), Rational::from(7));
        // 1*2 == 2*1: the smaller index (higher price) wins
        assert_eq!(static_price(&ints(&[2, 1])).unwrap(), (Rational::from(2), 1));
        assert_eq!(brute_force(&ints(&[2, 1])).0, Rational::from(2));
    }

    #[test]
    fn three_consumer_profit() {
        assert_eq!(static_profit(&ints(&[80, 70, 45])).unwrap(), Rational::from(140));
        assert_eq!(brute_force(&ints(&[80, 70, 45])).1, Rational::from(140));
    }

    #[test]
    fn empty_is_an_error() {
        assert_eq!(static_price(&[]), Err(Error::EmptyValuations));
        assert_eq!(static_profit_of_set(&[]), Rational::zero());
    }

    #[test]
    fn suffix_tables() {
        let inst = Instance::from_integers(&[100, 85, 80, 50], 2).unwrap();
        let table = suffix_price_table(&inst);
        assert_eq!(table.prices, ints(&[80, 80, 50, 50]));
        assert_eq!(table.cutoffs, vec![3, 3, 4, 4]);

        let single = suffix_price_table(&Instance::from_integers(&[9], 1).unwrap());
        assert_eq!(single.prices, ints(&[9]));

        let inst = Instance::from_integers(&[80, 70, 45], 2).unwrap();
        let expected: Vec<Rational> = (0..3).map(|i| brute_force(&inst.valuations()[i..]).0).collect();
        assert_eq!(expected, ints(&[70, 45, 45]));
        assert_eq!(suffix_price_table(&inst).prices, expected);
    }

    #[test]
    fn replacement_examples() {
        let v = ints(&[80, 70, 45]);
        assert_eq!(brute_force(&ints(&[70, 70, 45])).0, Rational::from(70));
        assert_eq!(
            replace_value_price(&v, 1, &Rational::from(70)).unwrap(),
            Rational::from(70)
        );

        assert_eq!(
            replace_value_price(&ints(&[5]), 1, &Rational::from(5)).unwrap(),
            Rational::from(5)
        );

        let v = ints(&[100, 85, 80, 50]);
        let oracle = brute_force(&ints(&[200, 85, 80, 50])).0;
        assert_eq!(oracle, Rational::from(80));
        let got = replace_value_price(&v, 1, &Rational::from(200)).unwrap();
        assert_eq!(got, oracle);
        assert!(got >= Rational::from(80));

        assert!(matches!(
            replace_value_price(&v, 5, &Rational::from(1)),
            Err(Error::IndexOutOfRange { index: 5, .. })
        ));
    }

    #[test]
    fn insertion_examples() {
        let got = insert_value_price(&ints(&[70, 45]), &Rational::from(80));
        assert_eq!(got, brute_force(&ints(&[80, 70, 45])).0);
        assert_eq!(got, Rational::from(70));
        assert!(Rational::from(45) <= got && got <= Rational::from(80));

        assert_eq!(insert_value_price(&ints(&[3]), &Rational::from(3)), Rational::from(3));

        let got = insert_value_price(&ints(&[100, 85, 80, 50]), &Rational::from(100));
        assert_eq!(got, brute_force(&ints(&[100, 100, 85, 80, 50])).0);
        assert!(Rational::from(50) <= got && got <= Rational::from(100));
    }

    fn sorted_values() -> impl Strategy<Value = Vec<Rational>> {
        prop::collection::vec(1i64..60, 1..10).prop_map(|mut v| {
            v.sort_unstable_by(|a, b| b.cmp(a));
            ints(&v)
        })
    }

    proptest! {
        #[test]
        fn profit_matches_linear_scan(values in sorted_values()) {
            let (price, profit) = brute_force(&values);
            prop_assert_eq!(static_profit(&values).unwrap(), profit);
            prop_assert_eq!(static_price(&values).unwrap().0, price);
        }

        #[test]
        fn suffix_prices_non_increasing(values in sorted_values()) {
            let inst = Instance::new(values, 1).unwrap();
            let table = suffix_price_table(&inst);
            for w in table.prices.windows(2) {
                prop_assert!(w[0] >= w[1]);
            }
            for (i, (&y, p)) in table.cutoffs.iter().zip(&table.prices).enumerate() {
                prop_assert!(y > i);
                prop_assert_eq!(inst.value(y), p);
            }
        }

        #[test]
        fn replacement_claims(values in sorted_values(), j_pick in 0usize..10, num in 0i64..600) {
            let (p, k) = static_price(&values).unwrap();
            let j = j_pick % values.len() + 1;
            let vj = values[j - 1].clone();
            // first case: v_j > v' >= v_k leaves the price unchanged
            if vj > p {
                let span = &vj - &p;
                let replacement = &p + &(&span * &Rational::new(num % 100, 100));
                if replacement < vj {
                    prop_assert_eq!(replace_value_price(&values, j, &replacement).unwrap(), p.clone());
                }
            }
            // second case: v' >= v_j > v_k keeps the price at least v_k
            if vj > values[k - 1] {
                let replacement = &vj + &Rational::new(num, 7);
                prop_assert!(replace_value_price(&values, j, &replacement).unwrap() >= p);
            }
        }

        #[test]
        fn insertion_claim(values in sorted_values(), extra in 0i64..600) {
            let p = static_price(&values).unwrap().0;
            let inserted = &p + &Rational::new(extra, 9);
            let p2 = insert_value_price(&values, &inserted);
            prop_assert!(p <= p2 && p2 <= inserted);
        }
    }
}
