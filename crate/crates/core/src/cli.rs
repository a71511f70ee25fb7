//! The `gsetkit` command line.
//!
//! Exit status: 0 on success, 1 when a validation check fails, 2 on any
//! error (one-line diagnostic on stderr).

use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::campaign::{self, Campaign, CampaignFile, TargetDef};
use crate::codec::{apply_substitutions, decode_hex, SolutionText, Substitution};
use crate::eval::EvaluationReport;
use crate::instance::{self, InstanceSource, TorusSpec};
use crate::metrics::{self, format_duration, DEFAULT_CONFIDENCE, DEFAULT_SWEEP_TIME_S};
use crate::oracle::exact_max_cut;
use crate::registry::Registry;
use crate::solver::{run_trial, SolverConfig, SolverKind, DEFAULT_TEMP_END, DEFAULT_TEMP_START};
use crate::{load_instance, read_text, Error, ProblemInstance, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "gsetkit", version, about = "Max-Cut / Ising benchmark validation and campaign toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    /// Human-oriented; `key=value` for records.
    #[default]
    Text,
    Kv,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decode a solution, evaluate it and check it against an expected cut.
    Validate(ValidateArgs),
    /// Evaluate a solution's cut, energy and quality.
    Evaluate(SolutionArgs),
    /// Exact Max-Cut by enumeration (n <= 24).
    Oracle {
        /// Gset file, `torus:RxC:SEED`, or `-` for stdin.
        instance: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Write a seeded toroidal ±1 instance in Gset format.
    GenTorus {
        rows: u32,
        cols: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file (stdout when absent).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run one solver trial and print its record.
    Solve(SolveArgs),
    /// Run a campaign described by a TOML file.
    Campaign(CampaignArgs),
    /// Recompute a campaign summary from its log.
    Report(ReportArgs),
    /// Projected wall time of a sweeps-to-target count on fast hardware.
    Project {
        /// Sweeps to target.
        stt: f64,
        /// Seconds per sweep.
        #[arg(long, default_value_t = DEFAULT_SWEEP_TIME_S)]
        sweep_time: f64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

#[derive(Debug, Args)]
pub struct SolutionArgs {
    /// Gset file or `torus:RxC:SEED`.
    pub instance: String,
    /// Solution file (hex, optionally wrapped, `#` header allowed) or `-`.
    pub solution: String,
    /// Registry name to score against (defaults to the solution header or
    /// the instance file stem).
    #[arg(long)]
    pub name: Option<String>,
    /// Best-known cut when the instance is not in the registry.
    #[arg(long)]
    pub best_known: Option<i64>,
    /// Replace a character before decoding, e.g. `l=1`. Repeatable.
    #[arg(long = "substitute", value_name = "FROM=TO")]
    pub substitutions: Vec<Substitution>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    #[command(flatten)]
    pub solution: SolutionArgs,
    #[arg(long, allow_hyphen_values = true)]
    pub expect_cut: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub expect_energy: Option<i64>,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    /// Gset file or `torus:RxC:SEED`.
    pub instance: String,
    #[arg(long, default_value = "sa")]
    pub kind: SolverKind,
    #[arg(long, default_value_t = 1000)]
    pub sweeps: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_TEMP_START)]
    pub temp_start: f64,
    #[arg(long, default_value_t = DEFAULT_TEMP_END)]
    pub temp_end: f64,
    /// Include the best configuration as hex.
    #[arg(long)]
    pub spins: bool,
}

#[derive(Debug, Args)]
pub struct CampaignArgs {
    /// Campaign TOML file.
    pub config: PathBuf,
    /// Concurrent trials (overrides the config's `workers`).
    #[arg(long)]
    pub workers: Option<usize>,
    /// Trial log (appended; existing records are resumed).
    #[arg(long)]
    pub log: Option<PathBuf>,
    /// Summary CSV output.
    #[arg(long)]
    pub summary: Option<PathBuf>,
    /// Sweep-scan CSV output (sweeps, highest_cut, average_cut).
    #[arg(long)]
    pub scan: Option<PathBuf>,
    /// Store best configurations in the log.
    #[arg(long)]
    pub spins: bool,
    #[arg(long, default_value_t = DEFAULT_CONFIDENCE)]
    pub confidence: f64,
    #[arg(long, default_value_t = DEFAULT_SWEEP_TIME_S)]
    pub sweep_time: f64,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    /// Trial log written by `campaign`.
    pub log: PathBuf,
    /// Take targets from this campaign file.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Absolute cut target. Repeatable.
    #[arg(long = "target-cut", allow_hyphen_values = true)]
    pub target_cuts: Vec<f64>,
    /// Target as a fraction of the best-known cut, e.g. 0.999. Repeatable.
    #[arg(long = "quality")]
    pub qualities: Vec<f64>,
    #[arg(long)]
    pub best_known: Option<i64>,
    #[arg(long, default_value_t = DEFAULT_CONFIDENCE)]
    pub confidence: f64,
    #[arg(long, default_value_t = DEFAULT_SWEEP_TIME_S)]
    pub sweep_time: f64,
    /// Print the cut histogram instead of the summary.
    #[arg(long)]
    pub histogram: bool,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit status.
pub fn main_with<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{e}");
            return if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
        }
    };
    match run(cli, stdin, stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_ERROR
        }
    }
}

pub fn run(cli: Cli, stdin: &mut dyn Read, out: &mut dyn Write) -> Result<i32> {
    match cli.command {
        Command::Validate(args) => validate(&args, stdin, out),
        Command::Evaluate(args) => {
            let (report, _) = evaluate(&args, stdin, out)?;
            print_report(&report, args.format, &[], out)?;
            Ok(EXIT_OK)
        }
        Command::Oracle { instance, format } => oracle(&instance, format, stdin, out),
        Command::GenTorus { rows, cols, seed, output } => {
            let inst = instance::generate_torus(&TorusSpec::new(rows, cols, seed)?)?;
            let text = inst.to_gset_string();
            match output {
                Some(path) => write_file(&path, &text)?,
                None => out.write_all(text.as_bytes()).map_err(stdout_err)?,
            }
            Ok(EXIT_OK)
        }
        Command::Solve(args) => solve(&args, out),
        Command::Campaign(args) => run_campaign_cmd(&args, out),
        Command::Report(args) => report(&args, out),
        Command::Project { stt, sweep_time, format } => {
            if !(stt.is_finite() && stt >= 0.0) || !(sweep_time.is_finite() && sweep_time > 0.0) {
                return Err(Error::Usage(format!(
                    "project needs stt >= 0 and sweep time > 0, got stt={stt} sweep_time={sweep_time}"
                )));
            }
            let t = metrics::project_hw_ttt(stt, sweep_time);
            let line = match format {
                Format::Text => format_duration(t),
                Format::Kv => format!("stt={stt} sweep_time_s={sweep_time} hw_ttt_s={t}"),
                Format::Csv => format!("stt,sweep_time_s,hw_ttt_s\n{stt},{sweep_time},{t}"),
            };
            writeln!(out, "{line}").map_err(stdout_err)?;
            Ok(EXIT_OK)
        }
    }
}

fn stdout_err(source: std::io::Error) -> Error {
    Error::Io {
        path: "<stdout>".into(),
        source,
    }
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

fn read_input(arg: &str, stdin: &mut dyn Read) -> Result<String> {
    if arg == "-" {
        let mut s = String::new();
        stdin.read_to_string(&mut s).map_err(|source| Error::Io {
            path: "<stdin>".into(),
            source,
        })?;
        Ok(s)
    } else {
        read_text(Path::new(arg))
    }
}

fn load_instance_arg(arg: &str, stdin: &mut dyn Read) -> Result<ProblemInstance> {
    if arg == "-" {
        return Ok(instance::parse_gset(&read_input(arg, stdin)?)?.with_name("stdin"));
    }
    load_instance(&InstanceSource::parse(arg)?)
}

/// Decodes and evaluates a solution. Substitutions and registry warnings
/// are reported on `out` as `#` lines.
fn evaluate(args: &SolutionArgs, stdin: &mut dyn Read, out: &mut dyn Write) -> Result<(EvaluationReport, Registry)> {
    let inst = load_instance_arg(&args.instance, stdin)?;
    let text = SolutionText::parse(&read_input(&args.solution, stdin)?);
    if let Some(n) = text.n {
        if n != inst.n() {
            return Err(Error::Usage(format!(
                "solution header declares n={n} but instance {} has n={}",
                inst.name(),
                inst.n()
            )));
        }
    }
    let registry = Registry::from_env()?;
    let name = args
        .name
        .clone()
        .or_else(|| text.instance.clone())
        .unwrap_or_else(|| inst.name().to_string());
    let entry = registry.get(&name);
    let inst = inst.with_name(entry.map_or(name.clone(), |e| e.name.clone()));
    if let Some(e) = entry {
        let bytes = match InstanceSource::parse(&args.instance)? {
            InstanceSource::File(p) if e.sha256.is_some() => std::fs::read(&p).ok(),
            _ => None,
        };
        for problem in e.mismatches(&inst, bytes.as_deref()) {
            writeln!(out, "# warning: registry {}: {problem}", e.name).map_err(stdout_err)?;
        }
    }

    let digits = if args.substitutions.is_empty() {
        text.digits
    } else {
        let (fixed, changes) = apply_substitutions(&text.digits, &args.substitutions);
        for sub in &args.substitutions {
            let positions: Vec<String> = changes
                .iter()
                .filter(|(_, from, _)| *from == sub.from)
                .map(|(p, _, _)| p.to_string())
                .collect();
            writeln!(
                out,
                "# substitution {sub}: {} change(s) at position(s) [{}]",
                positions.len(),
                positions.join(", ")
            )
            .map_err(stdout_err)?;
        }
        fixed
    };
    let config = decode_hex(&digits, inst.n())?;
    let best = args.best_known.or(entry.map(|e| e.best_known_cut));
    Ok((EvaluationReport::evaluate(&inst, &config, best)?, registry))
}

fn print_report(
    report: &EvaluationReport,
    format: Format,
    extra: &[(&'static str, String)],
    out: &mut dyn Write,
) -> Result<()> {
    let mut fields = report.fields();
    fields.extend(extra.iter().cloned());
    let text = match format {
        Format::Text | Format::Kv => {
            let kv: Vec<String> = fields.iter().map(|(k, v)| format!("{k}={v}")).collect();
            kv.join(" ")
        }
        Format::Csv => {
            let keys: Vec<&str> = fields.iter().map(|(k, _)| *k).collect();
            let vals: Vec<&str> = fields.iter().map(|(_, v)| v.as_str()).collect();
            format!("{}\n{}", keys.join(","), vals.join(","))
        }
    };
    writeln!(out, "{text}").map_err(stdout_err)
}

fn validate(args: &ValidateArgs, stdin: &mut dyn Read, out: &mut dyn Write) -> Result<i32> {
    let (report, _) = evaluate(&args.solution, stdin, out)?;
    let mut extra = Vec::new();
    let mut pass = true;
    if let Some(expected) = args.expect_cut {
        extra.push(("expect_cut", expected.to_string()));
        pass &= report.cut == expected;
    }
    if let Some(expected) = args.expect_energy {
        extra.push(("expect_energy", expected.to_string()));
        pass &= report.energy == expected;
    }
    if args.expect_cut.is_some() || args.expect_energy.is_some() {
        extra.push(("result", if pass { "PASS" } else { "FAIL" }.to_string()));
    }
    print_report(&report, args.solution.format, &extra, out)?;
    Ok(if pass { EXIT_OK } else { EXIT_FAIL })
}

fn oracle(arg: &str, format: Format, stdin: &mut dyn Read, out: &mut dyn Write) -> Result<i32> {
    let inst = load_instance_arg(arg, stdin)?;
    let exact = exact_max_cut(&inst)?;
    let line = match format {
        Format::Text | Format::Kv => format!(
            "instance={} n={} cut={} spins={}",
            inst.name(),
            inst.n(),
            exact.cut,
            exact.config
        ),
        Format::Csv => format!("instance,n,cut,spins\n{},{},{},{}", inst.name(), inst.n(), exact.cut, exact.config),
    };
    writeln!(out, "{line}").map_err(stdout_err)?;
    Ok(EXIT_OK)
}

fn solve(args: &SolveArgs, out: &mut dyn Write) -> Result<i32> {
    let inst = load_instance(&InstanceSource::parse(&args.instance)?)?;
    let config = SolverConfig {
        kind: args.kind,
        sweeps: args.sweeps,
        seed: args.seed,
        temp_start: args.temp_start,
        temp_end: args.temp_end,
    };
    let result = run_trial(&inst, &config)?;
    let record = campaign::TrialRecord::from_result(0, inst.name(), &config, &result, args.spins);
    writeln!(out, "{record}").map_err(stdout_err)?;
    Ok(EXIT_OK)
}

fn run_campaign_cmd(args: &CampaignArgs, out: &mut dyn Write) -> Result<i32> {
    let file = CampaignFile::load(&args.config)?;
    let base = args.config.parent().unwrap_or(Path::new("."));
    let inst = load_instance(&file.source(base)?)?;
    let inst = match &file.name {
        Some(name) => inst.with_name(name.clone()),
        None => inst,
    };
    let registry = Registry::from_env()?;
    let config = file.to_config(
        inst.name(),
        registry.get(inst.name()).map(|e| e.best_known_cut),
        args.confidence,
    )?;
    let mut runner = Campaign::new(&inst, &config)
        .workers(args.workers.or(file.workers).unwrap_or(1))
        .keep_spins(args.spins)
        .sweep_time(args.sweep_time);
    if let Some(log) = &args.log {
        runner = runner.log_to(log);
    }

    let summaries = if config.sweep_scan.is_some() {
        let rungs = runner.sweep_scan()?;
        let rows: Vec<_> = rungs.iter().map(|(row, _)| row.clone()).collect();
        if let Some(path) = &args.scan {
            write_file(path, &campaign::scan_csv(&rows))?;
        }
        rungs.into_iter().map(|(_, s)| s).collect()
    } else {
        vec![runner.run()?.summary]
    };
    if let Some(path) = &args.summary {
        write_file(path, &campaign::summary_csv(&summaries))?;
    }
    print_summaries(&summaries, args.format, out)?;
    Ok(EXIT_OK)
}

fn print_summaries(summaries: &[campaign::CampaignSummary], format: Format, out: &mut dyn Write) -> Result<()> {
    let text = match format {
        Format::Csv => campaign::summary_csv(summaries),
        Format::Text | Format::Kv => summaries.iter().map(|s| s.to_kv()).collect(),
    };
    out.write_all(text.as_bytes()).map_err(stdout_err)
}

fn report(args: &ReportArgs, out: &mut dyn Write) -> Result<i32> {
    let records = campaign::read_log(&args.log)?;
    let first = records
        .first()
        .ok_or_else(|| Error::Usage(format!("{}: log has no trial records", args.log.display())))?;
    let registry = Registry::from_env()?;
    let best = args
        .best_known
        .or_else(|| registry.get(&first.instance).map(|e| e.best_known_cut));

    let mut defs: Vec<TargetDef> = Vec::new();
    if let Some(path) = &args.config {
        let file = CampaignFile::load(path)?;
        defs.extend(file.targets.iter().cloned());
        if args.best_known.is_none() && file.best_known.is_some() {
            return report_with(args, &records, &defs, file.best_known, out);
        }
    }
    defs.extend(args.target_cuts.iter().map(|&c| TargetDef {
        label: None,
        cut: Some(c),
        quality: None,
        confidence: None,
    }));
    defs.extend(args.qualities.iter().map(|&q| TargetDef {
        label: None,
        cut: None,
        quality: Some(q),
        confidence: None,
    }));
    report_with(args, &records, &defs, best, out)
}

fn report_with(
    args: &ReportArgs,
    records: &[campaign::TrialRecord],
    defs: &[TargetDef],
    best: Option<i64>,
    out: &mut dyn Write,
) -> Result<i32> {
    let targets = defs
        .iter()
        .map(|d| d.resolve(best, args.confidence))
        .collect::<Result<Vec<_>, _>>()?;
    // A scan log holds one campaign per trial length.
    let mut lengths: Vec<u64> = records.iter().map(|r| r.solver.sweeps).collect();
    lengths.sort_unstable();
    lengths.dedup();
    let mut summaries = Vec::with_capacity(lengths.len());
    for sweeps in lengths {
        let group: Vec<_> = records.iter().filter(|r| r.solver.sweeps == sweeps).cloned().collect();
        summaries.push(campaign::summarize(&group, &targets, args.sweep_time)?);
    }
    if args.histogram {
        for s in &summaries {
            out.write_all(s.histogram_csv().as_bytes()).map_err(stdout_err)?;
        }
    } else {
        print_summaries(&summaries, args.format, out)?;
    }
    Ok(EXIT_OK)
}
