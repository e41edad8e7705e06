//! Command-line front end.
//!
//! A thin dispatch layer: flags are parsed into a [`RunConfig`], data flows
//! through [`crate::io`], and every analysis is a library call. Parallelism
//! lives inside the invoked pipelines, not here.

use crate::copula::DataMatrix;
use crate::error::{Error, Result};
use crate::inference::{
    bootstrap, combinations, gradient_significance, scan_multiplets, BootstrapSettings,
    EstimatorBackend,
};
use crate::io::{
    apply_preprocess, edge_list_csv, json_document, read_columns, read_couplings, reports_csv,
    scan_csv_files, sweep_csv, write_text, BetaGrid, ColumnTable, OutputFormat, Preprocess,
    RunConfig,
};
use crate::ising::{linear_grid, sweep, IsingModel, SweepQuantity};
use crate::measures::EntropyCache;
use crate::verify::{run_all, VerifyOptions};
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(
    name = "hoi",
    version,
    about = "O-information and its gradients for multivariate systems"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// O-information of the selected columns, with a bootstrap interval
    Oinfo(AnalysisArgs),
    /// Per-variable, per-pair, or higher-order gradient reports
    Gradients {
        #[command(flatten)]
        args: AnalysisArgs,
        /// Gradient order: 1 (variables), 2 (pairs), or k (subsets of size k)
        #[arg(long, default_value_t = 1)]
        order: usize,
    },
    /// Exhaustive O-information scan over triplets or quadruplets
    Scan {
        #[command(flatten)]
        args: AnalysisArgs,
        /// Multiplet size: 3 or 4
        #[arg(long)]
        order: usize,
    },
    /// Trace O-information quantities across an inverse-temperature grid
    IsingSweep(IsingArgs),
    /// Run the built-in invariant suite on gates and random systems
    Verify {
        /// Seed for the random systems
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Number of random systems per check
        #[arg(long, default_value_t = 200)]
        systems: usize,
    },
}

#[derive(Args)]
struct AnalysisArgs {
    /// Input CSV with a header row; a leading non-numeric index column is dropped
    #[arg(long)]
    input: PathBuf,
    /// Comma-separated column names (default: every numeric column)
    #[arg(long, value_delimiter = ',')]
    columns: Vec<String>,
    #[arg(long, value_enum, default_value_t = PreprocessArg::None)]
    preprocess: PreprocessArg,
    #[arg(long, value_enum, default_value_t = BackendArg::GaussianCopula)]
    backend: BackendArg,
    /// Bootstrap replicates
    #[arg(long, default_value_t = 1000)]
    n_boot: usize,
    /// Two-sided significance level of the percentile interval
    #[arg(long, default_value_t = 0.05)]
    alpha: f64,
    /// Seed for all resampling
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file (stdout when omitted)
    #[arg(long, short)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
}

#[derive(Args)]
struct IsingArgs {
    /// Square coupling-matrix CSV (headerless); default: the built-in hexagon
    #[arg(long)]
    couplings: Option<PathBuf>,
    #[arg(long, default_value_t = 0.0)]
    beta_min: f64,
    #[arg(long, default_value_t = 2.0)]
    beta_max: f64,
    #[arg(long, default_value_t = 64)]
    beta_steps: usize,
    /// Quantity families to trace
    #[arg(long, value_enum, value_delimiter = ',', default_values_t = [QuantityFamily::Grad1])]
    quantities: Vec<QuantityFamily>,
    /// Output file (stdout when omitted)
    #[arg(long, short)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PreprocessArg {
    None,
    LogReturns,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BackendArg {
    Discrete,
    GaussianCopula,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum QuantityFamily {
    Grad1,
    Grad2,
    Local,
    Oinfo,
}

impl From<PreprocessArg> for Preprocess {
    fn from(p: PreprocessArg) -> Self {
        match p {
            PreprocessArg::None => Preprocess::None,
            PreprocessArg::LogReturns => Preprocess::LogReturns,
        }
    }
}

impl From<BackendArg> for EstimatorBackend {
    fn from(b: BackendArg) -> Self {
        match b {
            BackendArg::Discrete => EstimatorBackend::Discrete,
            BackendArg::GaussianCopula => EstimatorBackend::GaussianCopula,
        }
    }
}

impl From<FormatArg> for OutputFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => OutputFormat::Json,
            FormatArg::Csv => OutputFormat::Csv,
        }
    }
}

/// Parses the process arguments and runs the selected command.
pub fn run() -> Result<()> {
    dispatch(Cli::parse())
}

fn dispatch(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Oinfo(args) => run_oinfo(args),
        Command::Gradients { args, order } => run_gradients(args, order),
        Command::Scan { args, order } => run_scan(args, order),
        Command::IsingSweep(args) => run_ising_sweep(args),
        Command::Verify { seed, systems } => run_verify(seed, systems),
    }
}

/// Loaded, selected, preprocessed input plus the config that describes it.
struct PreparedInput {
    names: Vec<String>,
    data: DataMatrix,
    backend: EstimatorBackend,
    settings: BootstrapSettings,
    config: RunConfig,
}

fn prepare(args: &AnalysisArgs, command: &str, order: Option<usize>) -> Result<PreparedInput> {
    let table = read_columns(&args.input)?;
    if let Some(index) = &table.dropped_index {
        eprintln!("note: dropped non-numeric index column '{index}'");
    }
    let table: ColumnTable = table.select(&args.columns)?;
    let table = apply_preprocess(&table, args.preprocess.into())?;
    let data = table.to_data_matrix()?;
    let backend: EstimatorBackend = args.backend.into();
    let settings = BootstrapSettings {
        n_boot: args.n_boot,
        alpha: args.alpha,
        seed: args.seed,
    };
    let config = RunConfig {
        command: command.to_string(),
        input: Some(args.input.display().to_string()),
        columns: table.names.clone(),
        preprocess: args.preprocess.into(),
        backend,
        order,
        n_boot: args.n_boot,
        alpha: args.alpha,
        seed: args.seed,
        beta_grid: None,
        output: args.output.as_ref().map(|p| p.display().to_string()),
        format: args.format.into(),
    };
    Ok(PreparedInput {
        names: table.names,
        data,
        backend,
        settings,
        config,
    })
}

fn run_oinfo(args: AnalysisArgs) -> Result<()> {
    let prepared = prepare(&args, "oinfo", None)?;
    let backend = prepared.backend;
    let label = format!("omega[{}]", prepared.names.join(","));
    let report = bootstrap(
        &prepared.data,
        label,
        |d: &DataMatrix| {
            let cache = EntropyCache::new(backend.fit(d)?);
            cache.o_information(cache.full_system())
        },
        &prepared.settings,
    )?;
    let text = match prepared.config.format {
        OutputFormat::Json => json_document(&prepared.config, "report", &report)?,
        OutputFormat::Csv => reports_csv(&prepared.config, std::slice::from_ref(&report))?,
    };
    write_text(args.output.as_deref(), &text)
}

fn run_gradients(args: AnalysisArgs, order: usize) -> Result<()> {
    let prepared = prepare(&args, "gradients", Some(order))?;
    let reports = gradient_significance(
        &prepared.data,
        prepared.backend,
        order,
        Some(&prepared.names),
        &prepared.settings,
    )?;
    let text = match prepared.config.format {
        OutputFormat::Json => json_document(&prepared.config, "reports", &reports)?,
        OutputFormat::Csv if order == 2 => {
            let pairs = combinations(prepared.names.len(), 2);
            edge_list_csv(&prepared.config, &prepared.names, &pairs, &reports)?
        }
        OutputFormat::Csv => reports_csv(&prepared.config, &reports)?,
    };
    write_text(args.output.as_deref(), &text)
}

fn run_scan(args: AnalysisArgs, order: usize) -> Result<()> {
    let prepared = prepare(&args, "scan", Some(order))?;
    let scan = scan_multiplets(
        &prepared.data,
        prepared.backend,
        order,
        Some(&prepared.names),
        &prepared.settings,
    )?;
    match prepared.config.format {
        OutputFormat::Json => {
            let text = json_document(&prepared.config, "scan", &scan)?;
            write_text(args.output.as_deref(), &text)
        }
        OutputFormat::Csv => {
            let base = args.output.as_deref().ok_or_else(|| {
                Error::Parse("scan --format csv writes three files; --output is required".into())
            })?;
            for (section, content) in scan_csv_files(&prepared.config, &scan)? {
                write_text(Some(&section_path(base, &section)), &content)?;
            }
            Ok(())
        }
    }
}

/// `out.csv` + "pairs" → `out.pairs.csv`.
fn section_path(base: &Path, section: &str) -> PathBuf {
    let stem = match base.extension() {
        Some(ext) if ext == "csv" => base.with_extension(""),
        _ => base.to_path_buf(),
    };
    PathBuf::from(format!("{}.{section}.csv", stem.display()))
}

fn run_ising_sweep(args: IsingArgs) -> Result<()> {
    let betas = linear_grid(args.beta_min, args.beta_max, args.beta_steps);
    let couplings = args.couplings.as_deref().map(read_couplings).transpose()?;
    let n_spins = couplings.as_ref().map_or(7, Vec::len);
    // Validate the couplings once, before fanning out over the grid.
    match &couplings {
        Some(j) => IsingModel::new(j.clone(), 0.0)?,
        None => IsingModel::hexagon(0.0)?,
    };

    let mut quantities: Vec<SweepQuantity> = Vec::new();
    for family in &args.quantities {
        match family {
            QuantityFamily::Grad1 => quantities.extend(SweepQuantity::all_first_order(n_spins)),
            QuantityFamily::Grad2 => quantities.extend(SweepQuantity::all_second_order(n_spins)),
            QuantityFamily::Local => quantities.extend(SweepQuantity::all_local(n_spins)),
            QuantityFamily::Oinfo => quantities.push(SweepQuantity::OInformation),
        }
    }

    let result = match couplings {
        Some(j) => sweep(
            move |beta| IsingModel::new(j.clone(), beta),
            &betas,
            &quantities,
        )?,
        None => sweep(IsingModel::hexagon, &betas, &quantities)?,
    };

    let config = RunConfig {
        command: "ising-sweep".to_string(),
        input: args.couplings.as_ref().map(|p| p.display().to_string()),
        columns: Vec::new(),
        preprocess: Preprocess::None,
        backend: EstimatorBackend::Discrete,
        order: None,
        n_boot: 0,
        alpha: 0.0,
        seed: 0,
        beta_grid: Some(BetaGrid {
            min: args.beta_min,
            max: args.beta_max,
            steps: args.beta_steps,
        }),
        output: args.output.as_ref().map(|p| p.display().to_string()),
        format: args.format.into(),
    };
    let text = match config.format {
        OutputFormat::Json => json_document(&config, "sweep", &result)?,
        OutputFormat::Csv => sweep_csv(&config, &result)?,
    };
    write_text(args.output.as_deref(), &text)
}

fn run_verify(seed: u64, systems: usize) -> Result<()> {
    let checks = run_all(VerifyOptions { seed, systems });
    let mut failed = 0usize;
    for check in &checks {
        let status = if check.passed { "ok  " } else { "FAIL" };
        println!("{status} {} — {}", check.name, check.detail);
        if !check.passed {
            failed += 1;
        }
    }
    if failed > 0 {
        return Err(Error::Parse(format!(
            "{failed} of {} invariant checks failed",
            checks.len()
        )));
    }
    println!("all {} invariant checks passed", checks.len());
    Ok(())
}
