//! Duropoly profit against static monopoly profit.
//!
//! For every instance `Π^M <= Π^D <= Σ p_i <= Π^M + p_1 <= 2 Π^M`, where
//! `p_i` is the static price of the suffix game `{i..N}`. The factor two is
//! approached by [`tight_example`].

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::model::{check_consumer, Instance};
use crate::rational::Rational;
use crate::solver::{solve, EquilibriumSolution};
use crate::static_monopoly::{static_profit, suffix_price_table, StaticPriceTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BoundVerdicts {
    /// `Π^M <= Π^D`
    pub static_le_duropoly: bool,
    /// `Π^D <= Σ p_i`
    pub duropoly_le_sum_prices: bool,
    /// `Σ p_i <= Π^M + p_1`
    pub sum_prices_le_static_plus_top: bool,
    /// `Π^M + p_1 <= 2 Π^M`
    pub static_plus_top_le_double: bool,
}

impl BoundVerdicts {
    pub fn all(&self) -> bool {
        self.static_le_duropoly
            && self.duropoly_le_sum_prices
            && self.sum_prices_le_static_plus_top
            && self.static_plus_top_le_double
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BoundsReport {
    /// `Π^M`
    pub static_profit: Rational,
    /// `Π^D`
    pub duropoly_profit: Rational,
    /// `Σ p_i`
    pub sum_suffix_prices: Rational,
    /// `p_1`
    pub top_price: Rational,
    /// `N * v_N`, everyone served at the lowest value.
    pub coase_profit: Rational,
    /// `Σ v_i`
    pub surplus: Rational,
    pub verdicts: BoundVerdicts,
    /// `Π^D / Π^M`
    pub ratio: Rational,
}

impl BoundsReport {
    pub fn ratio_decimal(&self) -> alloc::string::String {
        self.ratio.to_decimal(6)
    }
}

pub fn analyze(inst: &Instance) -> BoundsReport {
    analyze_with(inst, &solve(inst), &suffix_price_table(inst))
}

/// Same as [`analyze`] with precomputed pieces.
pub fn analyze_with(inst: &Instance, sol: &EquilibriumSolution, table: &StaticPriceTable) -> BoundsReport {
    let static_profit = static_profit(inst.valuations()).expect("instance is non-empty");
    let duropoly_profit = sol.profit.clone();
    let sum_suffix_prices = table.sum();
    let top_price = table.price(1).clone();
    let n = inst.consumers();
    let coase_profit = inst.value(n).times(n);
    let surplus = inst.total_surplus();
    let static_plus_top = &static_profit + &top_price;

    let verdicts = BoundVerdicts {
        static_le_duropoly: static_profit <= duropoly_profit,
        duropoly_le_sum_prices: duropoly_profit <= sum_suffix_prices,
        sum_prices_le_static_plus_top: sum_suffix_prices <= static_plus_top,
        static_plus_top_le_double: static_plus_top <= static_profit.times(2),
    };
    let ratio = &duropoly_profit / &static_profit;

    BoundsReport {
        static_profit,
        duropoly_profit,
        sum_suffix_prices,
        top_price,
        coase_profit,
        surplus,
        verdicts,
        ratio,
    }
}

/// Two-period instance with `k` consumers valued `v_high` and `n - k`
/// valued `v_high / (n - k + 1)`. Its duropoly profit is
/// `k * v_high + (n - k) * v_low`.
pub fn tight_example(n: usize, k: usize, v_high: &Rational) -> Result<Instance> {
    if k == 0 || k >= n || !v_high.is_positive() {
        return Err(Error::InvalidTightParams { n, k });
    }
    let v_low = v_high / &Rational::from_integer((n - k + 1) as i64);
    let mut values = Vec::with_capacity(n);
    values.extend(core::iter::repeat_n(v_high.clone(), k));
    values.extend(core::iter::repeat_n(v_low, n - k));
    Instance::new(values, 2)
}

/// `(static profit of {m..N}, Σ_{j >= m} p_j)`; the first never exceeds the
/// second.
pub fn suffix_profit_bound(inst: &Instance, m: usize) -> Result<(Rational, Rational)> {
    check_consumer(m, inst.consumers())?;
    let table = suffix_price_table(inst);
    let lhs = static_profit(&inst.valuations()[m - 1..])?;
    let rhs = table.prices[m - 1..].iter().sum();
    Ok((lhs, rhs))
}

/// `max_m (y_m - m + 1) v(y_m) + Σ_{i<m} p_i`: the best the seller could do
/// if consumers `m..=y_m` buy last and every earlier buyer pays at most its
/// suffix price.
pub fn final_period_split_bound(inst: &Instance) -> Rational {
    let table = suffix_price_table(inst);
    let mut prefix = Rational::zero();
    let mut best = Rational::zero();
    for m in 1..=inst.consumers() {
        let y = table.cutoff(m);
        let candidate = inst.value(y).times(y - m + 1) + &prefix;
        if candidate > best {
            best = candidate;
        }
        prefix += table.price(m);
    }
    best
}

/// Whether every consumer served before the final period pays at most its
/// suffix price `p_i`.
pub fn payment_cap_holds(inst: &Instance, sol: &EquilibriumSolution) -> bool {
    let table = suffix_price_table(inst);
    (1..=inst.consumers()).all(|i| match sol.purchase_period(i) {
        Some(t) if t < inst.periods() => sol.prices[t - 1] <= *table.price(i),
        _ => true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn inst(v: &[i64], t: usize) -> Instance {
        Instance::from_integers(v, t).unwrap()
    }

    #[test]
    fn four_consumer_report() {
        let r = analyze(&inst(&[100, 85, 80, 50], 2));
        assert_eq!(r.static_profit, Rational::from(240));
        assert_eq!(r.duropoly_profit, Rational::from(260));
        assert_eq!(r.sum_suffix_prices, Rational::from(260));
        assert_eq!(r.top_price, Rational::from(80));
        assert_eq!(r.coase_profit, Rational::from(200));
        assert_eq!(r.surplus, Rational::from(315));
        assert!(r.verdicts.all());
        assert_eq!(r.ratio, Rational::new(13, 12));
    }

    #[test]
    fn single_consumer_degenerates() {
        for t in 1..4 {
            let r = analyze(&inst(&[9], t));
            let nine = Rational::from(9);
            assert_eq!(r.static_profit, nine);
            assert_eq!(r.duropoly_profit, nine);
            assert_eq!(r.sum_suffix_prices, nine);
            assert_eq!(r.top_price, nine);
            assert!(r.verdicts.all());
        }
    }

    #[test]
    fn tight_family() {
        let eleven = tight_example(11, 1, &Rational::one()).unwrap();
        assert_eq!(eleven.consumers(), 11);
        assert_eq!(eleven.value(2), &Rational::new(1, 11));
        let r = analyze(&eleven);
        assert_eq!(r.static_profit, Rational::one());
        assert_eq!(r.duropoly_profit, Rational::new(21, 11));
        assert_eq!(r.ratio, Rational::new(21, 11));
        assert_eq!(r.ratio_decimal(), "1.909091");

        let two = tight_example(2, 1, &Rational::from(2)).unwrap();
        assert_eq!(two.valuations(), &[Rational::from(2), Rational::from(1)]);
        let r = analyze(&two);
        assert_eq!(r.duropoly_profit, Rational::from(3));
        assert_eq!(r.static_profit, Rational::from(2));
        assert_eq!(r.ratio, Rational::new(3, 2));
    }

    #[test]
    fn tight_family_formula() {
        for (n, k, vh) in [(5usize, 2usize, 3i64), (7, 3, 10), (4, 1, 1), (9, 4, 6)] {
            let vh = Rational::from(vh);
            let i = tight_example(n, k, &vh).unwrap();
            let vl = &vh / &Rational::from_integer((n - k + 1) as i64);
            let formula = vh.times(k) + vl.times(n - k);
            assert_eq!(solve(&i).profit, formula);
        }
    }

    #[test]
    fn tight_params_rejected() {
        let one = Rational::one();
        assert!(tight_example(3, 3, &one).is_err());
        assert!(tight_example(3, 0, &one).is_err());
        assert!(tight_example(3, 1, &Rational::zero()).is_err());
    }

    #[test]
    fn suffix_bounds() {
        let four = inst(&[100, 85, 80, 50], 2);
        assert_eq!(
            suffix_profit_bound(&four, 1).unwrap(),
            (Rational::from(240), Rational::from(260))
        );
        assert_eq!(
            suffix_profit_bound(&inst(&[4], 1), 1).unwrap(),
            (Rational::from(4), Rational::from(4))
        );
        assert_eq!(
            suffix_profit_bound(&inst(&[80, 70, 45], 2), 2).unwrap(),
            (Rational::from(90), Rational::from(90))
        );
        assert!(suffix_profit_bound(&four, 0).is_err());
        assert!(suffix_profit_bound(&four, 5).is_err());
    }

    fn instances() -> impl Strategy<Value = Instance> {
        (prop::collection::vec(1i64..100, 1..12), 1usize..6).prop_map(|(v, t)| Instance::from_integers(&v, t).unwrap())
    }

    proptest! {
        #[test]
        fn sandwich(i in instances()) {
            let r = analyze(&i);
            prop_assert!(r.verdicts.all(), "{:?}", r);
        }

        #[test]
        fn split_bound_dominates(i in instances()) {
            prop_assert!(solve(&i).profit <= final_period_split_bound(&i));
        }

        #[test]
        fn suffix_bound_every_m(i in instances()) {
            for m in 1..=i.consumers() {
                let (lhs, rhs) = suffix_profit_bound(&i, m).unwrap();
                prop_assert!(lhs <= rhs);
            }
        }

        #[test]
        fn payment_cap(i in instances()) {
            prop_assert!(payment_cap_holds(&i, &solve(&i)));
        }
    }
}
