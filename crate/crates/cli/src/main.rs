use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use log::info;

use mcda_core::dataset::{default_criteria, import_assessments_csv, DatasetFile, GeneratedCriterion};
use mcda_core::report::{render_json, render_ranking_csv, render_table};
use mcda_core::sensitivity::parse_grid;
use mcda_core::{
    association_table, emit_report, generate_dataset, load_dataset, run_pipeline, sweep_classical, sweep_weight,
    Approach, ClassThresholds, DecisionDataset, Error, Method, Report, ReportFormat, RunConfig, Stage,
};

#[derive(Parser)]
#[command(name = "mcda", version, about = "Rank suppliers with SVNS/IVFS fuzzy TOPSIS")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rank the suppliers of a dataset.
    Rank(RankArgs),
    /// Sweep one criterion's weight and report optimum crossovers.
    Sweep(SweepArgs),
    /// Generate a seeded random dataset.
    Gen(GenArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ApproachArg {
    Svns,
    Ivfs,
    Both,
    Classical,
}

impl From<ApproachArg> for Approach {
    fn from(a: ApproachArg) -> Self {
        match a {
            ApproachArg::Svns => Approach::Svns,
            ApproachArg::Ivfs => Approach::Ivfs,
            ApproachArg::Both => Approach::Both,
            ApproachArg::Classical => Approach::Classical,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Switch {
    On,
    Off,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
    Table,
}

impl From<FormatArg> for ReportFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => ReportFormat::Json,
            FormatArg::Csv => ReportFormat::Csv,
            FormatArg::Table => ReportFormat::Table,
        }
    }
}

#[derive(Args)]
struct Common {
    /// Dataset JSON file.
    #[arg(long)]
    input: PathBuf,
    /// Replace the dataset's assessments with rows from this CSV
    /// (`supplier,criterion,dm,value`).
    #[arg(long)]
    assessments: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "on")]
    reliability: Switch,
    /// Class-count thresholds for 3/5/7/9 classes, e.g. `0.3,0.5,0.75`.
    #[arg(long)]
    thresholds: Option<String>,
    /// Output directory; prints to stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "table")]
    format: FormatArg,
}

#[derive(Args)]
struct RankArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, value_enum, default_value = "both")]
    approach: ApproachArg,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    common: Common,
    /// Criterion id to sweep.
    #[arg(long)]
    criterion: String,
    /// Comma-separated values or `start:stop:step`.
    #[arg(long, default_value = "0.1:0.9:0.1")]
    grid: String,
    #[arg(long, value_enum, default_value = "both")]
    approach: ApproachArg,
    /// Also sweep every criterion and report the P/N association table.
    #[arg(long)]
    associations: bool,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value_t = 8)]
    suppliers: usize,
    #[arg(long, default_value_t = 10)]
    dms: usize,
    /// JSON list of criteria (`id`, `kind`, `objective`, `range`, `decimals`);
    /// defaults to the built-in eight-criterion catalogue.
    #[arg(long)]
    criteria_spec: Option<PathBuf>,
    /// Output file; prints to stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Rank(args) => rank(args),
        Command::Sweep(args) => sweep(args),
        Command::Gen(args) => gen(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            // core errors already render their causes
            match e.downcast_ref::<Error>() {
                Some(core) => eprintln!("error: {core}"),
                None => eprintln!("error: {e:#}"),
            }
            ExitCode::FAILURE
        }
    }
}

fn load(common: &Common) -> anyhow::Result<DecisionDataset> {
    let ds = load_dataset(&common.input)?;
    let Some(csv_path) = &common.assessments else {
        return Ok(ds);
    };
    let entity = csv_path.display().to_string();
    let text = std::fs::read_to_string(csv_path)
        .map_err(|source| Error::Io { path: csv_path.clone(), source }.at(Stage::Load, entity.as_str()))?;
    let file: DatasetFile = ds.to_file();
    Ok(import_assessments_csv(file, &text).map_err(|e| e.at(Stage::Load, entity))?)
}

fn config(common: &Common, approach: Approach) -> anyhow::Result<RunConfig> {
    let mut cfg = RunConfig::default().with_approach(approach).with_reliability(matches!(common.reliability, Switch::On));
    if let Some(t) = &common.thresholds {
        let values: Vec<f64> = t
            .split(',')
            .map(|s| s.trim().parse::<f64>())
            .collect::<Result<_, _>>()
            .with_context(|| format!("invalid thresholds {t:?}"))?;
        let Ok(bands) = <[f64; 3]>::try_from(values) else {
            bail!("thresholds need exactly three values, got {t:?}");
        };
        cfg.thresholds = ClassThresholds::new(bands)?;
    }
    Ok(cfg)
}

fn output(report: &Report, out: Option<&Path>, format: FormatArg) -> anyhow::Result<()> {
    if let Some(dir) = out {
        for path in emit_report(report, dir, format.into())? {
            info!("wrote {}", path.display());
        }
        return Ok(());
    }
    let text = match format {
        FormatArg::Json => render_json(report)?,
        FormatArg::Table => render_table(report),
        FormatArg::Csv => {
            let mut s = if report.rankings.is_empty() { String::new() } else { render_ranking_csv(&report.rankings)? };
            for sweep in &report.sensitivity {
                s.push_str(&sweep.to_csv()?);
            }
            s
        }
    };
    print!("{text}");
    Ok(())
}

fn rank(args: RankArgs) -> anyhow::Result<()> {
    let ds = load(&args.common)?;
    let cfg = config(&args.common, args.approach.into())?;
    let run = run_pipeline(&ds, &cfg)?;
    output(&Report::from_run(&run), args.common.out.as_deref(), args.common.format)
}

fn sweep(args: SweepArgs) -> anyhow::Result<()> {
    let ds = load(&args.common)?;
    let approach: Approach = args.approach.into();
    let cfg = config(&args.common, approach)?;
    let j = ds.criterion_index(&args.criterion).ok_or_else(|| {
        Error::Domain(format!("unknown criterion {:?}", args.criterion)).at(Stage::Sensitivity, args.criterion.as_str())
    })?;
    let grid = parse_grid(&args.grid).map_err(|e| e.at(Stage::Sensitivity, "grid"))?;
    let mut sweeps = Vec::new();
    let mut tables = Vec::new();
    for &method in approach.methods() {
        sweeps.push(match method {
            Method::Classical => sweep_classical(&ds, j, &grid)?,
            _ => sweep_weight(&ds, j, &grid, method, &cfg)?,
        });
        if args.associations {
            tables.push(association_table(&ds, &grid, method, &cfg)?);
        }
    }
    let report = Report::default().with_sweeps(sweeps).with_associations(tables);
    output(&report, args.common.out.as_deref(), args.common.format)
}

fn gen(args: GenArgs) -> anyhow::Result<()> {
    let criteria: Vec<GeneratedCriterion> = match &args.criteria_spec {
        Some(path) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("[stage load] {}", path.display()))?;
            serde_json::from_str(&text).with_context(|| format!("[stage load] {}: invalid criteria spec", path.display()))?
        }
        None => default_criteria(),
    };
    let ds = generate_dataset(args.seed, args.dms, args.suppliers, &criteria)?;
    let json = ds.to_json();
    match &args.out {
        Some(path) => {
            std::fs::write(path, json).with_context(|| format!("[stage report] {}", path.display()))?;
            info!("wrote {}", path.display());
        }
        None => print!("{json}"),
    }
    Ok(())
}
