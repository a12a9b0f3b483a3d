//! Seeded random instances and the bounds CSV.

use duropoly_core::bounds::{analyze, BoundsReport};
use duropoly_core::Instance;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Random instance parameters. Each instance draws `N` uniformly from
/// `2..=max_n`, `T` from `1..=max_t` and every value from `1..=max_value`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SweepParams {
    pub count: usize,
    pub max_n: usize,
    pub max_t: usize,
    pub max_value: u64,
    pub seed: u64,
}

impl SweepParams {
    pub fn validate(&self) -> Result<(), String> {
        if self.max_n < 2 {
            return Err("--max-n must be at least 2".into());
        }
        if self.max_t < 1 {
            return Err("--max-t must be at least 1".into());
        }
        if self.max_value < 1 || self.max_value > i64::MAX as u64 {
            return Err("--max-value must be between 1 and 2^63 - 1".into());
        }
        Ok(())
    }
}

/// Instances in id order; the same parameters always give the same list.
pub fn generate(params: &SweepParams) -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    (0..params.count)
        .map(|_| {
            let n = rng.random_range(2..=params.max_n);
            let t = rng.random_range(1..=params.max_t);
            let values: Vec<i64> = (0..n).map(|_| rng.random_range(1..=params.max_value) as i64).collect();
            Instance::from_integers(&values, t).expect("positive values")
        })
        .collect()
}

/// One CSV row. Rationals are exact `p/q` strings.
#[derive(Debug, Serialize)]
pub struct SweepRow {
    pub instance_id: usize,
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "T")]
    pub t: usize,
    #[serde(rename = "Pi_M")]
    pub pi_m: String,
    #[serde(rename = "Pi_D")]
    pub pi_d: String,
    pub sum_p: String,
    pub p1: String,
    pub ratio_num: String,
    pub ratio_den: String,
    pub ratio_decimal: String,
    pub bounds_ok: bool,
}

impl SweepRow {
    pub fn new(instance_id: usize, inst: &Instance, report: &BoundsReport) -> Self {
        SweepRow {
            instance_id,
            n: inst.consumers(),
            t: inst.periods(),
            pi_m: report.static_profit.to_string(),
            pi_d: report.duropoly_profit.to_string(),
            sum_p: report.sum_suffix_prices.to_string(),
            p1: report.top_price.to_string(),
            ratio_num: report.ratio.numer().to_string(),
            ratio_den: report.ratio.denom().to_string(),
            ratio_decimal: report.ratio_decimal(),
            bounds_ok: report.verdicts.all(),
        }
    }
}

/// Rows for every generated instance, ids starting at 1.
pub fn run_sweep(params: &SweepParams) -> Vec<SweepRow> {
    generate(params)
        .iter()
        .enumerate()
        .map(|(k, inst)| SweepRow::new(k + 1, inst, &analyze(inst)))
        .collect()
}

pub fn to_csv(rows: &[SweepRow]) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for row in rows {
        writer.serialize(row).expect("in-memory write");
    }
    String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("ascii output")
}
