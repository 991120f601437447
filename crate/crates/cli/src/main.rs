//! Command-line front end: load or generate a graph, then emit dyad
//! metrics, degree-sequence bounds, exact phase diagrams, feasible-region
//! gain curves, ensemble averages, or expected-value curves.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{ArgAction, Args, Parser, Subcommand, ValueEnum};

use dyadic_core::phase::{gain_csv, mean_gain_csv, with_worker_pool};
use dyadic_core::render::{format_sig12, json_rational, rational_to_f64};
use dyadic_core::{
    bounds_report, bounds_sweep, count_dyads, dyad_stats, dyadicity_heterophilicity,
    enumerate_phase_diagram, ensemble_gain, expected_dyads, gain_curves, generate,
    CharacteristicAssignment, Family, GenError, GeneratorSpec, Graph, MetricsError, PhaseError,
    Target, DEFAULT_BUDGET,
};

const AFTER_HELP: &str = "\
File formats:
  edge list      one edge per line as two whitespace-separated node tokens;
                 `#` starts a comment, blank lines are ignored
  labels vector  one 0/1 per line, in node order (--labels-format vector)
  labels set     one node id per line, the 1-labeled set (--labels-format set)
  gen config     key=value lines: family, n, one of m/mean_degree/density,
                 seed, require_connected
  phase CSV      header m10,m11,count; rows sorted by (m10, m11)
  gain CSV       header n1,area_old,area_new,gain_ub_m11,gain_ub_m10,
                 gain_lb_m11,gain_lb_m10,gain_total
  bounds CSV     header n1,ub_m11_old,ub_m10_old,ub_m11,ub_m10,lb_m11,
                 lb_m10,d_min,d_max,h_min,h_max (JSON uses the same fields)

Exit codes:
  0 success   2 usage or config error   3 I/O error
  4 input parse/validation error        5 generation failure
  6 enumeration budget refusal";

#[derive(Parser)]
#[command(
    name = "dyadic",
    about = "Dyadic-effect metrics, degree-sequence bounds and exact phase diagrams",
    version,
    after_help = AFTER_HELP
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dyad counts and dyadicity/heterophilicity for a labeled graph (JSON)
    Metrics(MetricsCmd),
    /// Bound reports for n1 = 0..N, or a single n1 (CSV or JSON)
    Bounds(BoundsCmd),
    /// Exact phase diagram for one n1 (CSV or SVG heatmap)
    Phase(PhaseCmd),
    /// Feasible-region areas and per-bound gain curves (CSV)
    Gains(GainsCmd),
    /// Ensemble-averaged gain curves over seeded instances (CSV)
    Bench(BenchCmd),
    /// Generate a benchmark graph and write its edge list
    Gen(GenCmd),
    /// Expected m11/m10 curves for given N and M or density (CSV)
    Expected(ExpectedCmd),
}

/// Graph source: exactly one of --input or a generator (--gen/--gen-config).
#[derive(Args, Debug)]
struct Source {
    /// Edge-list file
    #[arg(long, value_name = "PATH")]
    input: Option<PathBuf>,
    /// Generator family: er | ba | regular
    #[arg(long = "gen", value_name = "FAMILY")]
    gen: Option<String>,
    /// Generator spec as a key=value file
    #[arg(long, value_name = "PATH")]
    gen_config: Option<PathBuf>,
    /// Node count (with --gen)
    #[arg(long, value_name = "N")]
    n: Option<usize>,
    /// Target mean degree (with --gen)
    #[arg(long, value_name = "D")]
    mean_degree: Option<f64>,
    /// Target density (with --gen)
    #[arg(long, value_name = "DELTA")]
    density: Option<f64>,
    /// Target edge count (with --gen)
    #[arg(long, value_name = "M")]
    m: Option<u64>,
    /// Generator seed
    #[arg(long, default_value_t = 0, value_name = "SEED")]
    seed: u64,
    /// Regenerate until the instance is connected (with --gen)
    #[arg(long, default_value_t = true, action = ArgAction::Set, value_name = "BOOL")]
    connected: bool,
}

impl Source {
    fn generator_spec(&self) -> Result<Option<GeneratorSpec>, CliError> {
        if let Some(path) = &self.gen_config {
            if self.gen.is_some() || self.n.is_some() {
                return Err(CliError::Usage(
                    "--gen-config replaces the --gen/--n/target flags".into(),
                ));
            }
            let text = read_file(path)?;
            return Ok(Some(GeneratorSpec::parse_kv(&text).map_err(CliError::from)?));
        }
        let Some(family) = &self.gen else {
            return Ok(None);
        };
        let family = Family::parse(family)?;
        let n = self
            .n
            .ok_or_else(|| CliError::Usage("--gen requires --n".into()))?;
        let target = match (self.mean_degree, self.density, self.m) {
            (Some(d), None, None) => Target::MeanDegree(d),
            (None, Some(delta), None) => Target::Density(delta),
            (None, None, Some(m)) => Target::Edges(m),
            _ => {
                return Err(CliError::Usage(
                    "--gen requires exactly one of --mean-degree, --density, --m".into(),
                ))
            }
        };
        Ok(Some(GeneratorSpec {
            family,
            n,
            target,
            seed: self.seed,
            require_connected: self.connected,
        }))
    }

    fn load_graph(&self) -> Result<Graph, CliError> {
        let spec = self.generator_spec()?;
        match (&self.input, spec) {
            (Some(_), Some(_)) => {
                Err(CliError::Usage("give either --input or a generator, not both".into()))
            }
            (None, None) => {
                Err(CliError::Usage("a graph source is required: --input or --gen".into()))
            }
            (Some(path), None) => {
                let text = read_file(path)?;
                let g = Graph::parse_edge_list(&text)
                    .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
                if !g.is_connected() {
                    eprintln!(
                        "warning: {} is disconnected; the m10 lower bound drops its \
                         connectivity floor",
                        path.display()
                    );
                }
                Ok(g)
            }
            (None, Some(spec)) => Ok(generate(&spec)?),
        }
    }

    fn require_generator(&self) -> Result<GeneratorSpec, CliError> {
        if self.input.is_some() {
            return Err(CliError::Usage("this subcommand works on generated ensembles; use --gen".into()));
        }
        self.generator_spec()?
            .ok_or_else(|| CliError::Usage("a generator source is required: --gen or --gen-config".into()))
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, Default)]
enum LabelsFormat {
    /// One 0/1 per line, node order
    #[default]
    Vector,
    /// One node id per line (the 1-labeled set)
    Set,
}

#[derive(ValueEnum, Clone, Copy, Debug, Default)]
enum TableFormat {
    #[default]
    Csv,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug, Default)]
enum PhaseFormat {
    #[default]
    Csv,
    Svg,
}

#[derive(Args)]
struct MetricsCmd {
    #[command(flatten)]
    source: Source,
    /// Characteristic file (see --labels-format)
    #[arg(long, value_name = "PATH")]
    labels: PathBuf,
    #[arg(long, value_enum, default_value_t)]
    labels_format: LabelsFormat,
    /// Output path; stdout if omitted
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct BoundsCmd {
    #[command(flatten)]
    source: Source,
    /// Restrict the sweep to a single n1
    #[arg(long, value_name = "N1")]
    n1: Option<usize>,
    #[arg(long, value_enum, default_value_t)]
    format: TableFormat,
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct PhaseCmd {
    #[command(flatten)]
    source: Source,
    /// Number of 1-labeled nodes
    #[arg(long, value_name = "N1")]
    n1: usize,
    #[arg(long, value_enum, default_value_t)]
    format: PhaseFormat,
    /// Refuse enumerations over more subsets than this
    #[arg(long, default_value_t = DEFAULT_BUDGET, value_name = "SUBSETS")]
    budget: u64,
    /// Worker threads for the enumeration (default: all cores)
    #[arg(long, value_name = "W")]
    workers: Option<usize>,
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct GainsCmd {
    #[command(flatten)]
    source: Source,
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct BenchCmd {
    #[command(flatten)]
    source: Source,
    /// Instances to average (seeds seed, seed+1, ...)
    #[arg(long, default_value_t = 10, value_name = "RUNS")]
    runs: u64,
    /// Worker threads (default: all cores)
    #[arg(long, value_name = "W")]
    workers: Option<usize>,
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct GenCmd {
    #[command(flatten)]
    source: Source,
    /// Output path for the edge list; stdout if omitted
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ExpectedCmd {
    /// Node count
    #[arg(long, value_name = "N")]
    n: usize,
    /// Edge count
    #[arg(long, value_name = "M")]
    m: Option<u64>,
    /// Density (alternative to --m)
    #[arg(long, value_name = "DELTA")]
    density: Option<f64>,
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Io { path: String, source: std::io::Error },
    Parse(String),
    Generation(String),
    Budget(String),
}

impl CliError {
    fn label(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Io { .. } => "io",
            CliError::Parse(_) => "parse",
            CliError::Generation(_) => "generation",
            CliError::Budget(_) => "budget-exceeded",
        }
    }

    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io { .. } => 3,
            CliError::Parse(_) => 4,
            CliError::Generation(_) => 5,
            CliError::Budget(_) => 6,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(msg)
            | CliError::Parse(msg)
            | CliError::Generation(msg)
            | CliError::Budget(msg) => f.write_str(msg),
            CliError::Io { path, source } => write!(f, "{path}: {source}"),
        }
    }
}

impl From<GenError> for CliError {
    fn from(e: GenError) -> Self {
        match e {
            GenError::Config(_) | GenError::Unsatisfiable(_) => CliError::Usage(e.to_string()),
            GenError::RetryBudgetExhausted { .. } => CliError::Generation(e.to_string()),
        }
    }
}

impl From<PhaseError> for CliError {
    fn from(e: PhaseError) -> Self {
        match e {
            PhaseError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            PhaseError::N1OutOfRange { .. } | PhaseError::NoRuns => CliError::Usage(e.to_string()),
            PhaseError::Generation { ref source, .. } => match source {
                GenError::Config(_) | GenError::Unsatisfiable(_) => {
                    CliError::Usage(e.to_string())
                }
                GenError::RetryBudgetExhausted { .. } => CliError::Generation(e.to_string()),
            },
        }
    }
}

impl From<MetricsError> for CliError {
    fn from(e: MetricsError) -> Self {
        CliError::Parse(e.to_string())
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path)
        .map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn write_output(path: Option<&Path>, content: &str) -> Result<(), CliError> {
    match path {
        Some(path) => fs::write(path, content)
            .map_err(|source| CliError::Io { path: path.display().to_string(), source }),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli.command) {
        eprintln!("error[{}]: {e}", e.label());
        std::process::exit(e.code());
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Metrics(cmd) => metrics(cmd),
        Command::Bounds(cmd) => bounds(cmd),
        Command::Phase(cmd) => phase(cmd),
        Command::Gains(cmd) => gains(cmd),
        Command::Bench(cmd) => bench(cmd),
        Command::Gen(cmd) => gen(cmd),
        Command::Expected(cmd) => expected(cmd),
    }
}

fn metrics(cmd: MetricsCmd) -> Result<(), CliError> {
    let g = cmd.source.load_graph()?;
    let text = read_file(&cmd.labels)?;
    let assignment = match cmd.labels_format {
        LabelsFormat::Vector => CharacteristicAssignment::parse_vector(&text)?,
        LabelsFormat::Set => CharacteristicAssignment::parse_set(&text, g.node_count())?,
    };
    let counts = count_dyads(&g, &assignment)?;
    let stats = dyad_stats(g.node_count(), g.edge_count(), assignment.n1())?;
    let (d, h) = dyadicity_heterophilicity(&counts, &stats);

    let mut json = String::from("{");
    let _ = write!(
        json,
        "\"n1\":{},\"n0\":{},\"m11\":{},\"m10\":{},\"m00\":{},",
        assignment.n1(),
        assignment.n0(),
        counts.m11,
        counts.m10,
        counts.m00
    );
    let _ = write!(
        json,
        "\"density\":{},\"expected_m11\":{},\"expected_m10\":{},",
        format_sig12(rational_to_f64(&stats.density)),
        format_sig12(rational_to_f64(&stats.expected_m11)),
        format_sig12(rational_to_f64(&stats.expected_m10))
    );
    let _ = write!(
        json,
        "\"dyadicity\":{},\"heterophilicity\":{}}}",
        json_rational(d.as_ref()),
        json_rational(h.as_ref())
    );
    json.push('\n');
    write_output(cmd.output.as_deref(), &json)
}

fn bounds(cmd: BoundsCmd) -> Result<(), CliError> {
    let g = cmd.source.load_graph()?;
    let reports = match cmd.n1 {
        Some(n1) => {
            if n1 > g.node_count() {
                return Err(CliError::Usage(format!(
                    "n1 = {n1} exceeds the node count {}",
                    g.node_count()
                )));
            }
            vec![bounds_report(&g, n1)]
        }
        None => bounds_sweep(&g),
    };
    let content = match cmd.format {
        TableFormat::Csv => {
            let mut out = String::from(dyadic_core::BoundsReport::csv_header());
            out.push('\n');
            for r in &reports {
                out.push_str(&r.csv_row());
                out.push('\n');
            }
            out
        }
        TableFormat::Json => {
            let rows: Vec<String> = reports.iter().map(|r| r.to_json()).collect();
            format!("[\n{}\n]\n", rows.join(",\n"))
        }
    };
    write_output(cmd.output.as_deref(), &content)
}

fn phase(cmd: PhaseCmd) -> Result<(), CliError> {
    let g = cmd.source.load_graph()?;
    if let Some(0) = cmd.workers {
        return Err(CliError::Usage("--workers must be at least 1".into()));
    }
    let diagram = match cmd.workers {
        Some(w) => with_worker_pool(w, || enumerate_phase_diagram(&g, cmd.n1, cmd.budget))?,
        None => enumerate_phase_diagram(&g, cmd.n1, cmd.budget)?,
    };
    let content = match cmd.format {
        PhaseFormat::Csv => diagram.to_csv(),
        PhaseFormat::Svg => diagram.to_svg(),
    };
    write_output(cmd.output.as_deref(), &content)
}

fn gains(cmd: GainsCmd) -> Result<(), CliError> {
    let g = cmd.source.load_graph()?;
    write_output(cmd.output.as_deref(), &gain_csv(&gain_curves(&g)))
}

fn bench(cmd: BenchCmd) -> Result<(), CliError> {
    let spec = cmd.source.require_generator()?;
    if let Some(0) = cmd.workers {
        return Err(CliError::Usage("--workers must be at least 1".into()));
    }
    let rows = match cmd.workers {
        Some(w) => with_worker_pool(w, || ensemble_gain(&spec, cmd.runs))?,
        None => ensemble_gain(&spec, cmd.runs)?,
    };
    write_output(cmd.output.as_deref(), &mean_gain_csv(&rows))
}

fn gen(cmd: GenCmd) -> Result<(), CliError> {
    let spec = cmd.source.require_generator()?;
    let g = generate(&spec)?;
    write_output(cmd.output.as_deref(), &g.to_edge_list_string())
}

fn expected(cmd: ExpectedCmd) -> Result<(), CliError> {
    if cmd.n < 2 {
        return Err(CliError::Usage("--n must be at least 2".into()));
    }
    let m = match (cmd.m, cmd.density) {
        (Some(m), None) => m,
        (None, Some(delta)) => {
            if !(0.0..=1.0).contains(&delta) {
                return Err(CliError::Usage("density must lie in [0, 1]".into()));
            }
            (delta * cmd.n as f64 * (cmd.n as f64 - 1.0) / 2.0).round() as u64
        }
        _ => return Err(CliError::Usage("give exactly one of --m or --density".into())),
    };
    let mut out = String::from("n1,fraction,m11_bar,m10_bar\n");
    for n1 in 0..=cmd.n {
        let (e11, e10) = expected_dyads(cmd.n, m, n1).expect("n >= 2");
        let _ = writeln!(
            out,
            "{},{},{},{}",
            n1,
            format_sig12(n1 as f64 / cmd.n as f64),
            format_sig12(rational_to_f64(&e11)),
            format_sig12(rational_to_f64(&e10))
        );
    }
    write_output(cmd.output.as_deref(), &out)
}
