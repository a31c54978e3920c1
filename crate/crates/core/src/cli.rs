//! Command-line front end. Each command returns a [`CommandOutcome`]; the
//! binary only prints it and exits.
//!
//! Exit codes: `0` success, `1` negative verdict or property violation,
//! `2` input error. JSON goes to stdout (absent on exit code 2), a short
//! human summary to stderr.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::classify::classify_all;
use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::generator::{census, make_space, GeneratorSpec, SpaceKind, PRNG_ALGORITHM};
use crate::mapping::MapFile;
use crate::reproduce::{self, Expectations};
use crate::solver::{picard_solve, IterationConfig, SolveStatus, StopRule};
use crate::space::{minimal_coefficient, validate_b_metric, SpaceFile};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

/// Weight spread used for `--kind random-perturbed`.
pub const CLI_RANDOM_SPREAD: f64 = 1.0;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandOutcome {
    pub exit_code: i32,
    pub stdout: String,
    pub summary: String,
}

impl CommandOutcome {
    fn json(exit_code: i32, value: &impl Serialize, summary: String) -> Self {
        let mut stdout = serde_json::to_string_pretty(value).expect("report types serialize");
        stdout.push('\n');
        Self { exit_code, stdout, summary }
    }

    fn input_error(err: Error) -> Self {
        Self { exit_code: EXIT_INPUT, stdout: String::new(), summary: format!("error: {err}") }
    }
}

fn or_input_error(result: Result<CommandOutcome>) -> CommandOutcome {
    result.unwrap_or_else(CommandOutcome::input_error)
}

#[derive(Debug, Parser)]
#[command(name = "pa-fixpoint", version, about = "Path-averaged contractions on finite b-metric spaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Discrete,
    PowerMetric,
    RandomPerturbed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StopRuleArg {
    Residual,
    #[value(alias = "certified_bound")]
    CertifiedBound,
    Both,
}

impl From<StopRuleArg> for StopRule {
    fn from(a: StopRuleArg) -> Self {
        match a {
            StopRuleArg::Residual => StopRule::Residual,
            StopRuleArg::CertifiedBound => StopRule::CertifiedBound,
            StopRuleArg::Both => StopRule::Both,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the b-metric axioms and compute the minimal coefficient.
    Validate { space: PathBuf },
    /// Banach, Kannan and PA verdicts with minimal moduli and witnesses.
    Classify { space: PathBuf, map: PathBuf },
    /// Classify every self-map of a generated space (one JSON line per map).
    Census(CensusArgs),
    /// Certified Picard iteration for a 1-D map under |x - y|^p.
    Solve(SolveArgs),
    /// Re-run the worked examples as a checklist.
    Paper,
}

#[derive(Debug, Clone, clap::Args)]
pub struct CensusArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value = "discrete")]
    pub kind: KindArg,
    /// Exponent for power-metric and random-perturbed spaces.
    #[arg(long, default_value_t = 2.0)]
    pub p: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, clap::Args)]
pub struct SolveArgs {
    /// Map expression in x, e.g. "x/2" or "(x + 2) / 3".
    #[arg(long)]
    pub map_expr: String,
    #[arg(long, default_value_t = 1.0)]
    pub metric_power: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub x0: f64,
    #[arg(long, default_value_t = 0.5)]
    pub alpha: f64,
    /// Defaults to 2^(p-1), the coefficient of |x - y|^p on the reals.
    #[arg(long)]
    pub s: Option<f64>,
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    #[arg(long, default_value_t = 1000)]
    pub max_iter: usize,
    #[arg(long, value_enum, default_value = "certified-bound")]
    pub stop_rule: StopRuleArg,
}

impl Cli {
    pub fn run(self) -> CommandOutcome {
        match self.command {
            Command::Validate { space } => cmd_validate(&space),
            Command::Classify { space, map } => cmd_classify(&space, &map),
            Command::Census(args) => cmd_census(&args),
            Command::Solve(args) => cmd_solve(&args),
            Command::Paper => cmd_paper(&Expectations::default()),
        }
    }
}

pub fn cmd_validate(space_path: &std::path::Path) -> CommandOutcome {
    or_input_error((|| {
        let file = SpaceFile::load(space_path)?;
        if file.points.len() != file.dist.len() {
            return Err(Error::LabelCount { labels: file.points.len(), size: file.dist.len() });
        }
        let s_min = minimal_coefficient(&file.dist).ok();
        // without a declared s, axioms (i)/(ii) failures leave s_min undefined; check at s = 1
        let s = file.s.or(s_min).unwrap_or(1.0);
        let report = validate_b_metric(&file.dist, s)?;
        let exit = if report.valid { EXIT_OK } else { EXIT_NEGATIVE };
        let summary = if report.valid {
            format!("valid b-metric at s = {s} (minimal s = {})", fmt_opt(s_min))
        } else {
            format!("{} violation(s) at s = {s}", report.violations.len())
        };
        let payload = json!({
            "valid": report.valid,
            "s": s,
            "s_declared": file.s,
            "s_min": s_min,
            "violations": report.violations,
        });
        Ok(CommandOutcome::json(exit, &payload, summary))
    })())
}

pub fn cmd_classify(space_path: &std::path::Path, map_path: &std::path::Path) -> CommandOutcome {
    or_input_error((|| {
        let space = SpaceFile::load(space_path)?.into_space()?;
        let map = MapFile::load(map_path)?.into_map()?;
        map.check_against(&space)?;
        let report = classify_all(&space, &map)?;
        let summary = format!(
            "banach: {}, kannan: {}, pa: {} (alpha_min = {}, n_min = {})",
            report.banach.is_member,
            report.kannan.is_member,
            report.pa.is_member,
            fmt_opt(report.pa.alpha_min),
            fmt_opt(report.pa.n_min),
        );
        Ok(CommandOutcome::json(EXIT_OK, &report, summary))
    })())
}

pub fn cmd_census(args: &CensusArgs) -> CommandOutcome {
    or_input_error((|| {
        let kind = match args.kind {
            KindArg::Discrete => SpaceKind::Discrete,
            KindArg::PowerMetric => SpaceKind::PowerMetric { p: args.p },
            KindArg::RandomPerturbed => SpaceKind::RandomPerturbed { spread: CLI_RANDOM_SPREAD, p: args.p },
        };
        let spec = GeneratorSpec { n: args.n, kind, seed: args.seed };
        // guard before building anything
        crate::generator::enumerate_maps(args.n)?;
        let space = make_space(&spec)?;
        let result = census(&space)?;

        let mut stdout = String::new();
        for record in &result.records {
            stdout.push_str(&serde_json::to_string(record)?);
            stdout.push('\n');
        }
        let summary_line = json!({
            "summary": result.report,
            "generator": spec,
            "prng": PRNG_ALGORITHM,
        });
        stdout.push_str(&serde_json::to_string(&summary_line)?);
        stdout.push('\n');

        let r = &result.report;
        let summary = format!(
            "{} maps: banach {}, kannan {}, pa {}; pa\\banach {}, banach\\pa {}, pa\\kannan {}, kannan\\pa {}; theorem violations {}",
            r.total_maps,
            r.classes.banach,
            r.classes.kannan,
            r.classes.pa,
            r.cells["pa_not_banach"].count,
            r.cells["banach_not_pa"].count,
            r.cells["pa_not_kannan"].count,
            r.cells["kannan_not_pa"].count,
            r.theorem_violations,
        );
        let exit = if r.release_blocking { EXIT_NEGATIVE } else { EXIT_OK };
        Ok(CommandOutcome { exit_code: exit, stdout, summary })
    })())
}

pub fn cmd_solve(args: &SolveArgs) -> CommandOutcome {
    or_input_error((|| {
        let expr: Expr = args.map_expr.parse()?;
        let p = args.metric_power;
        if !(p.is_finite() && p >= 1.0) {
            return Err(Error::InvalidConfig { parameter: "metric-power", message: format!("must be >= 1, got {p}") });
        }
        let s = args.s.unwrap_or_else(|| 2f64.powf(p - 1.0));
        let config = IterationConfig {
            alpha: args.alpha,
            s,
            max_iter: args.max_iter,
            tolerance: args.tol,
            stop_rule: args.stop_rule.into(),
            horizon: 1,
        };
        let result = picard_solve(|x: &f64| expr.eval(*x), |x: &f64, y: &f64| (x - y).abs().powf(p), args.x0, &config)?;

        let exit = match result.status {
            SolveStatus::Converged | SolveStatus::UncertifiedConverged => EXIT_OK,
            SolveStatus::MaxIterReached => EXIT_NEGATIVE,
        };
        let summary = format!(
            "{:?} at x = {} after {} iteration(s); certified: {}",
            result.status, result.point, result.iterations, result.certificate.certified
        );
        let payload = json!({
            "map_expr": args.map_expr,
            "metric_power": p,
            "config": config,
            "result": result,
        });
        Ok(CommandOutcome::json(exit, &payload, summary))
    })())
}

pub fn cmd_paper(expect: &Expectations) -> CommandOutcome {
    or_input_error((|| {
        let r = reproduce::run(expect)?;
        let summary = r
            .items
            .iter()
            .map(|i| format!("[{}] {}", if i.passed { "PASS" } else { "FAIL" }, i.name))
            .collect::<Vec<_>>()
            .join("\n");
        let exit = if r.passed { EXIT_OK } else { EXIT_NEGATIVE };
        Ok(CommandOutcome::json(exit, &r, summary))
    })())
}

fn fmt_opt<T: std::fmt::Display>(v: Option<T>) -> String {
    v.map_or_else(|| "undefined".to_string(), |v| v.to_string())
}
