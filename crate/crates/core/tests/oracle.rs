use duropoly_core::bounds::analyze;
use duropoly_core::oracle::{best_with_skips, enumerate_schedules, verify_spne};
use duropoly_core::{solve, Instance, Rational};
use proptest::prelude::*;

fn integer_instances(max_n: usize, max_t: usize) -> impl Strategy<Value = Instance> {
    (prop::collection::vec(1i64..=100, 1..=max_n), 1..=max_t).prop_map(|(v, t)| Instance::from_integers(&v, t).unwrap())
}

/// Small numerators over a few denominators, so ties across fractions occur.
fn fractional_instances() -> impl Strategy<Value = Instance> {
    (prop::collection::vec((0i64..=12, 1i64..=4), 1..=7), 1usize..=4).prop_filter_map("all zero", |(v, t)| {
        let values = v.into_iter().map(|(p, q)| Rational::new(p, q)).collect();
        Instance::new(values, t).ok()
    })
}

fn check_against_oracle(inst: &Instance) -> Result<(), TestCaseError> {
    let sol = solve(inst);
    let best = enumerate_schedules(inst).unwrap();
    prop_assert_eq!(&best.max_profit, &sol.profit);
    prop_assert_eq!(&best.best_schedule, &sol.cutoffs);
    prop_assert!(best_with_skips(inst).unwrap() <= sol.profit);
    let report = verify_spne(inst, &sol).unwrap();
    prop_assert!(report.is_empty(), "{}", report.describe());
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn enumeration_matches_solver(inst in integer_instances(10, 4)) {
        check_against_oracle(&inst)?;
    }

    #[test]
    fn enumeration_matches_solver_on_fractions(inst in fractional_instances()) {
        check_against_oracle(&inst)?;
        prop_assert!(analyze(&inst).verdicts.all());
    }

    #[test]
    fn low_values_force_ties(v in prop::collection::vec(1i64..=3, 1..=8), t in 1usize..=5) {
        check_against_oracle(&Instance::from_integers(&v, t).unwrap())?;
    }
}

#[test]
fn fixed_corpus() {
    let corpus: &[(&[i64], usize, i64)] = &[
        (&[100, 85, 80, 50], 2, 260),
        (&[80, 70, 45], 2, 160),
        (&[9, 3, 1], 3, 13),
        (&[9, 3, 1], 2, 12),
        (&[5], 4, 5),
        (&[2, 2, 2, 2], 3, 8),
    ];
    for &(values, t, profit) in corpus {
        let inst = Instance::from_integers(values, t).unwrap();
        assert_eq!(solve(&inst).profit, Rational::from(profit), "{values:?}, T = {t}");
        assert_eq!(enumerate_schedules(&inst).unwrap().max_profit, Rational::from(profit));
    }
}
