//! Command implementations behind the `duropoly` binary.
//!
//! Every command renders its report as text, JSON or CSV. Exit codes: 0 on
//! success, 1 on invalid input, 2 when a checked property fails, 3 when an
//! exhaustive search refuses the instance size.

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use duropoly_core::bounds::{analyze, tight_example, BoundsReport};
use duropoly_core::nonskim::{
    builtin_nonskim_example, check_swap_chain, is_skimming, max_equilibrium_revenue, off_path_deviations, play,
    swap_to_skimming, verify_profile, StrategyProfile2P, SwapChain, TwoPeriodOutcome,
};
use duropoly_core::oracle::{best_with_skips, enumerate_schedules, verify_spne, DeviationReport};
use duropoly_core::pacman::{pacman_condition, simulate_pacman, subset_price_property, PacmanWitness};
use duropoly_core::static_monopoly::static_profit;
use duropoly_core::{solve, Error, Instance, Rational};
use serde::Serialize;

pub mod io;
pub mod sweep;

use io::{load_instance, load_json, ProfileDoc, SolutionDoc};
use sweep::{run_sweep, to_csv, SweepParams, SweepRow};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Table,
    Json,
    Csv,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Solve {
        input: PathBuf,
    },
    Bounds {
        input: PathBuf,
    },
    Verify {
        input: PathBuf,
        profile: Option<PathBuf>,
        solution: Option<PathBuf>,
    },
    Pacman {
        input: PathBuf,
    },
    Tight {
        n: usize,
        k: usize,
        v_high: Rational,
    },
    Nonskim {
        input: Option<PathBuf>,
        profile: Option<PathBuf>,
    },
    Oracle {
        input: PathBuf,
    },
    Sweep(SweepParams),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    /// `None` picks the command's default: CSV for sweeps, a table otherwise.
    pub format: Option<OutputFormat>,
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Failure {
    Validation(String),
    SizeGuard(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Validation(_) => 1,
            Failure::SizeGuard(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Validation(m) | Failure::SizeGuard(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::SizeGuard { .. } => Failure::SizeGuard(e.to_string()),
            other => Failure::Validation(other.to_string()),
        }
    }
}

/// A rendered report plus the property failures it found.
#[derive(Debug)]
pub struct Report {
    pub body: String,
    pub violations: Vec<String>,
}

impl Report {
    fn ok(body: String) -> Self {
        Report {
            body,
            violations: Vec::new(),
        }
    }
}

/// Runs a command against stdout and stderr.
pub fn run(config: &RunConfig) -> i32 {
    run_with(config, &mut std::io::stdout(), &mut std::io::stderr())
}

pub fn run_with(config: &RunConfig, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let report = match execute(config) {
        Ok(r) => r,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message());
            return f.exit_code();
        }
    };
    let written = match &config.out {
        Some(path) => fs::write(path, &report.body).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => stdout.write_all(report.body.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: {e}");
        return 1;
    }
    if report.violations.is_empty() {
        0
    } else {
        for v in &report.violations {
            let _ = writeln!(stderr, "violation: {v}");
        }
        2
    }
}

pub fn execute(config: &RunConfig) -> Result<Report, Failure> {
    let default = match config.command {
        Command::Sweep(_) => OutputFormat::Csv,
        _ => OutputFormat::Table,
    };
    let format = config.format.unwrap_or(default);
    match &config.command {
        Command::Solve { input } => cmd_solve(&load_instance(input)?, format),
        Command::Bounds { input } => cmd_bounds(&load_instance(input)?, format),
        Command::Verify {
            input,
            profile,
            solution,
        } => cmd_verify(&load_instance(input)?, profile.as_ref(), solution.as_ref(), format),
        Command::Pacman { input } => cmd_pacman(&load_instance(input)?, format),
        Command::Tight { n, k, v_high } => cmd_tight(*n, *k, v_high, format),
        Command::Nonskim { input, profile } => cmd_nonskim(input.as_ref(), profile.as_ref(), format),
        Command::Oracle { input } => cmd_oracle(&load_instance(input)?, format),
        Command::Sweep(params) => cmd_sweep(params, format),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

fn to_csv_rows<T: Serialize>(rows: &[T]) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for row in rows {
        writer.serialize(row).expect("in-memory write");
    }
    String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("utf-8")
}

/// Left-aligned columns separated by two spaces.
fn table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let mut line = |cells: Vec<&str>| {
        let mut text = String::new();
        for (cell, w) in cells.iter().zip(&widths) {
            let _ = write!(text, "{cell:<w$}  ");
        }
        out.push_str(text.trim_end());
        out.push('\n');
    };
    line(headers.to_vec());
    for row in rows {
        line(row.iter().map(String::as_str).collect());
    }
    out
}

fn key_values(pairs: &[(&str, String)]) -> String {
    let width = pairs.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    pairs.iter().map(|(k, v)| format!("{k:<width$}  {v}\n")).collect()
}

fn join(values: &[Rational]) -> String {
    values.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

fn describe_instance(inst: &Instance) -> String {
    format!(
        "N = {}, T = {}, values [{}]",
        inst.consumers(),
        inst.periods(),
        join(inst.valuations())
    )
}

fn cmd_solve(inst: &Instance, format: OutputFormat) -> Result<Report, Failure> {
    let sol = solve(inst);
    #[derive(Serialize)]
    struct Row {
        period: usize,
        price: String,
        buyers: usize,
        cutoff: usize,
    }
    let rows: Vec<Row> = (0..sol.periods())
        .map(|t| Row {
            period: t + 1,
            price: sol.prices[t].to_string(),
            buyers: sol.buyers_per_period[t],
            cutoff: sol.cutoffs[t],
        })
        .collect();
    let body = match format {
        OutputFormat::Json => to_json(&SolutionDoc {
            instance: inst.clone(),
            solution: sol,
        }),
        OutputFormat::Csv => to_csv_rows(&rows),
        OutputFormat::Table => {
            let cells: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        r.period.to_string(),
                        r.price.clone(),
                        r.buyers.to_string(),
                        r.cutoff.to_string(),
                    ]
                })
                .collect();
            format!(
                "instance: {}\n{}profit: {}\n",
                describe_instance(inst),
                table(&["period", "price", "buyers", "cutoff"], &cells),
                sol.profit
            )
        }
    };
    Ok(Report::ok(body))
}

fn bounds_body(inst: &Instance, report: &BoundsReport, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => {
            #[derive(Serialize)]
            struct Doc<'a> {
                instance: &'a Instance,
                report: &'a BoundsReport,
                ratio_decimal: String,
            }
            to_json(&Doc {
                instance: inst,
                report,
                ratio_decimal: report.ratio_decimal(),
            })
        }
        OutputFormat::Csv => to_csv(&[SweepRow::new(1, inst, report)]),
        OutputFormat::Table => {
            let verdict = |ok: bool| if ok { "holds" } else { "FAILS" }.to_string();
            let v = &report.verdicts;
            let mut text = format!("instance: {}\n", describe_instance(inst));
            text.push_str(&key_values(&[
                ("static profit", report.static_profit.to_string()),
                ("duropoly profit", report.duropoly_profit.to_string()),
                ("sum of suffix prices", report.sum_suffix_prices.to_string()),
                ("top suffix price p1", report.top_price.to_string()),
                ("all at lowest value", report.coase_profit.to_string()),
                ("total surplus", report.surplus.to_string()),
                ("ratio", format!("{} ({})", report.ratio, report.ratio_decimal())),
                ("static <= duropoly", verdict(v.static_le_duropoly)),
                ("duropoly <= sum p", verdict(v.duropoly_le_sum_prices)),
                ("sum p <= static + p1", verdict(v.sum_prices_le_static_plus_top)),
                ("static + p1 <= 2 static", verdict(v.static_plus_top_le_double)),
            ]));
            text
        }
    }
}

fn bounds_violations(report: &BoundsReport) -> Vec<String> {
    if report.verdicts.all() {
        Vec::new()
    } else {
        vec![format!("profit bounds fail: {:?}", report.verdicts)]
    }
}

fn cmd_bounds(inst: &Instance, format: OutputFormat) -> Result<Report, Failure> {
    let report = analyze(inst);
    Ok(Report {
        body: bounds_body(inst, &report, format),
        violations: bounds_violations(&report),
    })
}

fn cmd_tight(n: usize, k: usize, v_high: &Rational, format: OutputFormat) -> Result<Report, Failure> {
    let inst = tight_example(n, k, v_high)?;
    cmd_bounds(&inst, format)
}

fn deviation_body(title: &str, report: &DeviationReport, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => to_json(report),
        OutputFormat::Csv => {
            #[derive(Serialize)]
            struct Row {
                agent: String,
                first_consumer: usize,
                start_period: usize,
                alternative_action: String,
                after_price: String,
                payoff_gain: String,
            }
            let rows: Vec<Row> = report
                .deviations
                .iter()
                .map(|d| Row {
                    agent: d.agent.to_string(),
                    first_consumer: d.subgame.first_consumer,
                    start_period: d.subgame.start_period,
                    alternative_action: d.alternative_action.to_string(),
                    after_price: d.after_price.as_ref().map(ToString::to_string).unwrap_or_default(),
                    payoff_gain: d.payoff_gain.to_string(),
                })
                .collect();
            if rows.is_empty() {
                "agent,first_consumer,start_period,alternative_action,after_price,payoff_gain\n".into()
            } else {
                to_csv_rows(&rows)
            }
        }
        OutputFormat::Table => {
            if report.is_empty() {
                format!("{title}: no profitable deviation\n")
            } else {
                format!(
                    "{title}: {} profitable deviations\n{}",
                    report.deviations.len(),
                    report.describe()
                )
            }
        }
    }
}

fn cmd_verify(
    inst: &Instance,
    profile: Option<&PathBuf>,
    solution: Option<&PathBuf>,
    format: OutputFormat,
) -> Result<Report, Failure> {
    if let Some(path) = profile {
        let prof = load_json::<ProfileDoc>(path)?.resolve(inst)?;
        let report = verify_profile(inst, &prof)?;
        let violations = if report.is_empty() {
            Vec::new()
        } else {
            vec!["profile is not an equilibrium".into()]
        };
        return Ok(Report {
            body: deviation_body("two-period profile", &report, format),
            violations,
        });
    }
    let sol = match solution {
        Some(path) => {
            let doc: SolutionDoc = load_json(path)?;
            if doc.instance != *inst {
                return Err(Failure::Validation(format!(
                    "{} was solved for a different instance",
                    path.display()
                )));
            }
            doc.solution
        }
        None => solve(inst),
    };
    let report = verify_spne(inst, &sol)?;
    let violations = if report.is_empty() {
        Vec::new()
    } else {
        vec!["solution is not an equilibrium".into()]
    };
    Ok(Report {
        body: deviation_body("equilibrium check", &report, format),
        violations,
    })
}

#[derive(Serialize)]
struct PacmanDoc {
    eligible: bool,
    witness: Option<PacmanWitness>,
    tie_dependent: bool,
    pacman_revenue: Rational,
    pacman_prices: Vec<Rational>,
    surplus: Rational,
    duropoly_profit: Rational,
    static_profit: Rational,
    /// `None` above the subset-enumeration limit.
    subset_property: Option<bool>,
}

fn cmd_pacman(inst: &Instance, format: OutputFormat) -> Result<Report, Failure> {
    let verdict = pacman_condition(inst);
    let (pacman_revenue, pacman_prices) = simulate_pacman(inst);
    let doc = PacmanDoc {
        eligible: verdict.eligible,
        witness: verdict.witness,
        tie_dependent: verdict.tie_dependent,
        pacman_revenue,
        pacman_prices,
        surplus: inst.total_surplus(),
        duropoly_profit: solve(inst).profit,
        static_profit: static_profit(inst.valuations())?,
        subset_property: subset_price_property(inst).ok(),
    };

    let mut violations = Vec::new();
    let full = doc.duropoly_profit == doc.surplus;
    if doc.eligible && !(full && doc.pacman_revenue == doc.surplus) {
        violations.push("eligible instance does not extract the full surplus".into());
    }
    if !doc.eligible && full {
        violations.push("ineligible instance extracts the full surplus".into());
    }

    let body = match format {
        OutputFormat::Json => to_json(&doc),
        OutputFormat::Csv => {
            #[derive(Serialize)]
            struct Row {
                eligible: bool,
                witness: String,
                tie_dependent: bool,
                pacman_revenue: String,
                surplus: String,
                duropoly_profit: String,
                static_profit: String,
            }
            to_csv_rows(&[Row {
                eligible: doc.eligible,
                witness: witness_text(doc.witness),
                tie_dependent: doc.tie_dependent,
                pacman_revenue: doc.pacman_revenue.to_string(),
                surplus: doc.surplus.to_string(),
                duropoly_profit: doc.duropoly_profit.to_string(),
                static_profit: doc.static_profit.to_string(),
            }])
        }
        OutputFormat::Table => {
            let eligible = match (doc.eligible, doc.tie_dependent) {
                (true, true) => "yes (tie-dependent eligibility)".to_string(),
                (true, false) => "yes".to_string(),
                (false, _) => format!("no ({})", witness_text(doc.witness)),
            };
            let subsets = match doc.subset_property {
                Some(b) => b.to_string(),
                None => "skipped (too many consumers)".into(),
            };
            format!(
                "instance: {}\n{}",
                describe_instance(inst),
                key_values(&[
                    ("full extraction", eligible),
                    ("pacman revenue", doc.pacman_revenue.to_string()),
                    ("pacman prices", join(&doc.pacman_prices)),
                    ("total surplus", doc.surplus.to_string()),
                    ("duropoly profit", doc.duropoly_profit.to_string()),
                    ("static profit", doc.static_profit.to_string()),
                    ("every subset priced at its max", subsets),
                ])
            )
        }
    };
    Ok(Report { body, violations })
}

fn witness_text(w: Option<PacmanWitness>) -> String {
    match w {
        None => String::new(),
        Some(PacmanWitness::Consumer(i)) => format!("suffix price of consumer {i} is below its value"),
        Some(PacmanWitness::Horizon(m)) => format!("{m} distinct values exceed the horizon"),
    }
}

#[derive(Serialize)]
struct OutcomeDoc {
    mu1: Rational,
    first_buyers: Vec<Rational>,
    mu2: Option<Rational>,
    second_buyers: Vec<Rational>,
    revenue: Rational,
}

impl OutcomeDoc {
    fn new(inst: &Instance, o: &TwoPeriodOutcome) -> Self {
        let pick = |idx: Vec<usize>| idx.into_iter().map(|i| inst.value(i).clone()).collect();
        OutcomeDoc {
            mu1: o.first_price.clone(),
            first_buyers: pick(o.first_buyers()),
            mu2: o.second_price.clone(),
            second_buyers: pick(o.second_buyers()),
            revenue: o.revenue.clone(),
        }
    }

    fn line(&self) -> String {
        format!(
            "mu1 = {}, period-1 buyers [{}], mu2 = {}, period-2 buyers [{}], revenue {}",
            self.mu1,
            join(&self.first_buyers),
            self.mu2.as_ref().map_or("-".into(), ToString::to_string),
            join(&self.second_buyers),
            self.revenue
        )
    }
}

#[derive(Serialize)]
struct NonskimDoc {
    instance: Instance,
    profile: ProfileDoc,
    outcome: OutcomeDoc,
    deviations: DeviationReport,
    off_path_deviations: DeviationReport,
    skimming: bool,
    swap_chain: Option<SwapChain>,
    swapped: Option<SwappedDoc>,
}

#[derive(Serialize)]
struct SwappedDoc {
    swaps: usize,
    profile: ProfileDoc,
    outcome: OutcomeDoc,
    skimming: bool,
    deviations: DeviationReport,
}

fn cmd_nonskim(input: Option<&PathBuf>, profile: Option<&PathBuf>, format: OutputFormat) -> Result<Report, Failure> {
    let (inst, prof) = match (input, profile) {
        (None, _) => builtin_nonskim_example(),
        (Some(path), Some(p)) => {
            let inst = load_instance(path)?;
            let prof = load_json::<ProfileDoc>(p)?.resolve(&inst)?;
            (inst, prof)
        }
        (Some(path), None) => return nonskim_search(&load_instance(path)?, format),
    };
    analyze_profile(&inst, &prof, format)
}

fn analyze_profile(inst: &Instance, prof: &StrategyProfile2P, format: OutputFormat) -> Result<Report, Failure> {
    let deviations = verify_profile(inst, prof)?;
    let off_path = off_path_deviations(inst, prof)?;
    let outcome = OutcomeDoc::new(inst, &play(inst, &prof.thresholds, &prof.first_price));
    let swap_chain = check_swap_chain(inst, prof).ok();
    let mut violations = Vec::new();
    if !deviations.is_empty() {
        violations.push("profile is not an equilibrium".into());
    }
    if swap_chain.as_ref().is_some_and(|c| deviations.is_empty() && !c.holds()) {
        violations.push("swap chain inequalities fail".into());
    }
    let swapped = match swap_to_skimming(inst, prof) {
        Ok((after, swaps)) => {
            let replay = play(inst, &after.thresholds, &after.first_price);
            let after_dev = verify_profile(inst, &after)?;
            let doc = SwappedDoc {
                swaps,
                profile: ProfileDoc::from_profile(inst, &after),
                outcome: OutcomeDoc::new(inst, &replay),
                skimming: is_skimming(inst, &after)?,
                deviations: after_dev,
            };
            if !doc.deviations.is_empty() || !doc.skimming || doc.outcome.revenue != outcome.revenue {
                violations.push("swapped profile loses equilibrium, skimming or revenue".into());
            }
            Some(doc)
        }
        Err(Error::NotAnEquilibrium(_)) => None,
        Err(e) => return Err(e.into()),
    };
    let doc = NonskimDoc {
        instance: inst.clone(),
        profile: ProfileDoc::from_profile(inst, prof),
        outcome,
        deviations,
        off_path_deviations: off_path,
        skimming: is_skimming(inst, prof)?,
        swap_chain,
        swapped,
    };
    let body = match format {
        OutputFormat::Json => to_json(&doc),
        OutputFormat::Csv => {
            #[derive(Serialize)]
            struct Row {
                revenue: String,
                equilibrium: bool,
                skimming: bool,
                swaps: String,
                swapped_revenue: String,
                chain_holds: String,
            }
            to_csv_rows(&[Row {
                revenue: doc.outcome.revenue.to_string(),
                equilibrium: doc.deviations.is_empty(),
                skimming: doc.skimming,
                swaps: doc.swapped.as_ref().map(|s| s.swaps.to_string()).unwrap_or_default(),
                swapped_revenue: doc
                    .swapped
                    .as_ref()
                    .map(|s| s.outcome.revenue.to_string())
                    .unwrap_or_default(),
                chain_holds: doc
                    .swap_chain
                    .as_ref()
                    .map(|c| c.holds().to_string())
                    .unwrap_or_default(),
            }])
        }
        OutputFormat::Table => nonskim_table(&doc),
    };
    Ok(Report { body, violations })
}

fn nonskim_table(doc: &NonskimDoc) -> String {
    let mut text = format!("instance: {}\n", describe_instance(&doc.instance));
    let _ = writeln!(
        text,
        "profile: {}",
        serde_json::to_string(&doc.profile).expect("serializes")
    );
    let _ = writeln!(text, "play: {}", doc.outcome.line());
    text.push_str(&deviation_body(
        "equilibrium check",
        &doc.deviations,
        OutputFormat::Table,
    ));
    if !doc.off_path_deviations.is_empty() {
        let _ = writeln!(
            text,
            "note: {} consumer deviations after other first prices",
            doc.off_path_deviations.deviations.len()
        );
    }
    let _ = writeln!(text, "skimming: {}", doc.skimming);
    if let Some(c) = &doc.swap_chain {
        let parts: Vec<String> = c.as_array().iter().map(ToString::to_string).collect();
        let _ = writeln!(
            text,
            "swap chain (w, v, mu2(E^v), mu2(S^w), mu1(E), mu1(S), mu2(E), mu2(S)): ({}) {}",
            parts.join(", "),
            if c.holds() { "holds" } else { "FAILS" }
        );
    }
    if let Some(s) = &doc.swapped {
        let _ = writeln!(
            text,
            "after {} swaps: {}",
            s.swaps,
            serde_json::to_string(&s.profile).expect("serializes")
        );
        let _ = writeln!(text, "swapped play: {}", s.outcome.line());
        let _ = writeln!(
            text,
            "swapped profile: skimming {}, {}",
            s.skimming,
            if s.deviations.is_empty() {
                "equilibrium"
            } else {
                "NOT an equilibrium"
            }
        );
    }
    text
}

fn nonskim_search(inst: &Instance, format: OutputFormat) -> Result<Report, Failure> {
    let found = max_equilibrium_revenue(inst)?;
    let profit = solve(inst).profit;
    let mut violations = Vec::new();
    if let Some((best, _)) = &found {
        if *best > profit {
            violations.push(format!("equilibrium revenue {best} exceeds solver profit {profit}"));
        }
    }
    #[derive(Serialize)]
    struct Doc {
        best_revenue: Option<Rational>,
        profile: Option<ProfileDoc>,
        solver_profit: Rational,
    }
    let doc = Doc {
        best_revenue: found.as_ref().map(|(r, _)| r.clone()),
        profile: found.as_ref().map(|(_, p)| ProfileDoc::from_profile(inst, p)),
        solver_profit: profit,
    };
    let body = match format {
        OutputFormat::Json => to_json(&doc),
        OutputFormat::Csv => {
            #[derive(Serialize)]
            struct Row {
                best_revenue: String,
                solver_profit: String,
            }
            to_csv_rows(&[Row {
                best_revenue: doc.best_revenue.as_ref().map(ToString::to_string).unwrap_or_default(),
                solver_profit: doc.solver_profit.to_string(),
            }])
        }
        OutputFormat::Table => format!(
            "instance: {}\n{}",
            describe_instance(inst),
            key_values(&[
                (
                    "best equilibrium revenue",
                    doc.best_revenue
                        .as_ref()
                        .map_or("none found".into(), ToString::to_string)
                ),
                (
                    "supporting profile",
                    doc.profile
                        .as_ref()
                        .map_or("-".into(), |p| serde_json::to_string(p).expect("serializes"))
                ),
                ("solver profit", doc.solver_profit.to_string()),
            ])
        ),
    };
    Ok(Report { body, violations })
}

fn cmd_oracle(inst: &Instance, format: OutputFormat) -> Result<Report, Failure> {
    let sol = solve(inst);
    let best = enumerate_schedules(inst)?;
    let skips = best_with_skips(inst)?;
    let deviations = verify_spne(inst, &sol)?;

    let mut violations = Vec::new();
    if best.max_profit != sol.profit {
        violations.push(format!(
            "enumeration gives {} but the solver gives {}",
            best.max_profit, sol.profit
        ));
    }
    if skips > sol.profit {
        violations.push(format!("skipping periods earns {skips}, above {}", sol.profit));
    }
    if !deviations.is_empty() {
        violations.push("solver output admits a profitable deviation".into());
    }

    #[derive(Serialize)]
    struct Doc {
        solver_profit: Rational,
        enumerated_profit: Rational,
        best_schedule: Vec<usize>,
        solver_schedule: Vec<usize>,
        best_with_skips: Rational,
        deviations: DeviationReport,
    }
    let doc = Doc {
        solver_profit: sol.profit.clone(),
        enumerated_profit: best.max_profit,
        best_schedule: best.best_schedule,
        solver_schedule: sol.cutoffs.clone(),
        best_with_skips: skips,
        deviations,
    };
    let list = |v: &[usize]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
    let body = match format {
        OutputFormat::Json => to_json(&doc),
        OutputFormat::Csv => {
            #[derive(Serialize)]
            struct Row {
                solver_profit: String,
                enumerated_profit: String,
                best_with_skips: String,
                deviations: usize,
                agree: bool,
            }
            to_csv_rows(&[Row {
                solver_profit: doc.solver_profit.to_string(),
                enumerated_profit: doc.enumerated_profit.to_string(),
                best_with_skips: doc.best_with_skips.to_string(),
                deviations: doc.deviations.deviations.len(),
                agree: violations.is_empty(),
            }])
        }
        OutputFormat::Table => {
            let mut text = format!("instance: {}\n", describe_instance(inst));
            text.push_str(&key_values(&[
                ("solver profit", doc.solver_profit.to_string()),
                ("enumerated profit", doc.enumerated_profit.to_string()),
                ("solver cutoffs", list(&doc.solver_schedule)),
                ("enumerated cutoffs", list(&doc.best_schedule)),
                ("best with skipped periods", doc.best_with_skips.to_string()),
            ]));
            text.push_str(&deviation_body(
                "equilibrium check",
                &doc.deviations,
                OutputFormat::Table,
            ));
            text
        }
    };
    Ok(Report { body, violations })
}

fn cmd_sweep(params: &SweepParams, format: OutputFormat) -> Result<Report, Failure> {
    params.validate().map_err(Failure::Validation)?;
    let rows = run_sweep(params);
    let failing: Vec<usize> = rows.iter().filter(|r| !r.bounds_ok).map(|r| r.instance_id).collect();
    let violations = if failing.is_empty() {
        Vec::new()
    } else {
        vec![format!("bounds fail on instances {failing:?}")]
    };
    let body = match format {
        OutputFormat::Csv => to_csv(&rows),
        OutputFormat::Json => to_json(&rows),
        OutputFormat::Table => {
            let cells: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        r.instance_id.to_string(),
                        r.n.to_string(),
                        r.t.to_string(),
                        r.pi_m.clone(),
                        r.pi_d.clone(),
                        r.sum_p.clone(),
                        r.p1.clone(),
                        r.ratio_decimal.clone(),
                        r.bounds_ok.to_string(),
                    ]
                })
                .collect();
            table(
                &["id", "N", "T", "Pi_M", "Pi_D", "sum_p", "p1", "ratio", "bounds_ok"],
                &cells,
            )
        }
    };
    Ok(Report { body, violations })
}
