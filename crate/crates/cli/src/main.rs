//! `mincw`: count minimal codewords of graph codes, check closed forms and
//! bounds, and run extremal searches.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 input error,
//! 3 capability limit.

use std::fs::File;
use std::io::{self, BufReader, IsTerminal, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use mincw::code::CodewordRecord;
use mincw::formulas::{self, lower_bounds_checked, verify_specs, verification_specs, BoundReport, VerifyRow};
use mincw::graph6::read_graph6;
use mincw::search::{self, attach_disconnected_max, search_table, GraphStream, SearchConfig, SearchResult, CSV_HEADER};
use mincw::{formula_M, parse_graph6, to_graph6, CountOptions, Error, FamilySpec, FilterStats, Graph, GraphStats, SystematicGraphCode};

#[derive(Parser)]
#[command(name = "mincw", version, about = "Minimal codewords of codes generated by [I | A(G)]")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Emit JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Emit CSV where supported.
    #[arg(long, global = true)]
    csv: bool,
    /// Worker threads.
    #[arg(long, global = true, env = "MINCW_THREADS", default_value_t = 1)]
    threads: usize,
    /// Write the report to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Args, Clone)]
#[group(multiple = false)]
struct GraphInput {
    /// Family spec such as `path:5`, `bipartite:2,3`, `multipartite:2,1,1`, `doublestar:3,4`.
    #[arg(long)]
    family: Option<String>,
    /// A single graph6 string.
    #[arg(long)]
    g6: Option<String>,
    /// File with one graph6 string per line.
    #[arg(long)]
    g6_file: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Count (and optionally list) the minimal codewords of each input graph.
    Enum {
        #[command(flatten)]
        input: GraphInput,
        /// List every minimal codeword.
        #[arg(long)]
        list: bool,
        /// Decide easy cases without the rank test.
        #[arg(long)]
        filters: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Build a family member and show its graph6 string, statistics and formula value.
    Family {
        spec: String,
        #[command(flatten)]
        common: Common,
    },
    /// Compare every closed form against enumeration up to order `max-n`.
    Verify {
        #[arg(long, default_value_t = 10)]
        max_n: usize,
        /// Add one to every formula value (self-test of the mismatch path).
        #[arg(long, hide = true)]
        inject_fault: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Lower bounds next to the enumerated count.
    Bounds {
        #[command(flatten)]
        input: GraphInput,
        #[command(flatten)]
        common: Common,
    },
    /// Minimum and maximum count over all connected graphs of an order.
    Search {
        #[command(flatten)]
        search: SearchArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Witness graphs of a search and their statistics.
    Witness {
        #[command(flatten)]
        search: SearchArgs,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args, Clone)]
struct SearchArgs {
    /// Built-in labelled enumeration of orders 1..=n (n at most 7).
    #[arg(long, conflicts_with = "g6_file", required_unless_present = "g6_file")]
    n: Option<usize>,
    /// graph6 file, e.g. `geng -c 8` output.
    #[arg(long)]
    g6_file: Option<PathBuf>,
    /// Witnesses kept per extreme.
    #[arg(long, default_value_t = search::DEFAULT_WITNESS_CAP)]
    cap: usize,
    /// Also include disconnected graphs from a graph6 file.
    #[arg(long)]
    all_graphs: bool,
    /// Checkpoint sidecar for graph6 runs.
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    /// Resume from the checkpoint sidecar.
    #[arg(long, requires = "checkpoint")]
    resume: bool,
    /// Graphs per checkpoint record.
    #[arg(long, default_value_t = search::CHECKPOINT_INTERVAL)]
    checkpoint_every: usize,
    /// Connected maxima of orders 1..n-1, comma separated, for M_any of a file run.
    #[arg(long, value_delimiter = ',')]
    prior: Option<Vec<u64>>,
}

enum Failure {
    Mismatch(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Lib(Error::from(e))
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Capability { .. } => 3,
        _ => 2,
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("reports serialize")
}

fn emit(common: &Common, text: &str) -> Result<(), Failure> {
    match &common.out {
        Some(path) => std::fs::write(path, text)?,
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
        }
    }
    Ok(())
}

fn read_graphs(input: &GraphInput) -> Result<Vec<Graph>, Failure> {
    if let Some(spec) = &input.family {
        return Ok(vec![spec.parse::<FamilySpec>()?.build()?]);
    }
    if let Some(s) = &input.g6 {
        return Ok(vec![parse_graph6(s)?]);
    }
    let graphs: Result<Vec<Graph>, Error> = match &input.g6_file {
        Some(path) => read_graph6(BufReader::new(File::open(path)?)).map(|r| r.map(|(_, g)| g)).collect(),
        None => {
            let stdin = io::stdin();
            if stdin.is_terminal() {
                return Err(Error::Parameter("no input: give --family, --g6, --g6-file or graph6 lines on stdin".into()).into());
            }
            let mut text = String::new();
            stdin.lock().read_to_string(&mut text)?;
            read_graph6(text.as_bytes()).map(|r| r.map(|(_, g)| g)).collect()
        }
    };
    let graphs = graphs?;
    if graphs.is_empty() {
        return Err(Error::Parameter("input contains no graphs".into()).into());
    }
    Ok(graphs)
}

/// Result of `enum` for one graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumOutput {
    pub graph6: String,
    #[serde(rename = "M")]
    pub m_count: u64,
    pub filter_stats: FilterStats,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub codewords: Option<Vec<CodewordRecord>>,
}

const MAX_G6: usize = mincw::graph6::GRAPH6_MAX_ORDER;

fn g6_or_blank(g: &Graph) -> String {
    if g.order() <= MAX_G6 {
        to_graph6(g).expect("order checked")
    } else {
        String::new()
    }
}

fn cmd_enum(input: &GraphInput, list: bool, filters: bool, common: &Common) -> Result<(), Failure> {
    let graphs = read_graphs(input)?;
    let mut outputs = Vec::with_capacity(graphs.len());
    for g in graphs {
        let code = SystematicGraphCode::new(g);
        let opts = CountOptions { list, use_filters: filters, cross_check: false, threads: common.threads };
        let report = code.count_minimal(opts)?;
        outputs.push(EnumOutput {
            graph6: g6_or_blank(code.graph()),
            m_count: report.m_count,
            filter_stats: report.filter_stats,
            codewords: report.records(&code),
        });
    }
    let text = if common.json {
        if outputs.len() == 1 {
            to_json(&outputs[0])
        } else {
            to_json(&outputs)
        }
    } else {
        let many = outputs.len() > 1;
        let mut s = String::new();
        for o in &outputs {
            if many {
                s.push_str(&format!("{}: ", o.graph6));
            }
            s.push_str(&format!("M = {}\n", o.m_count));
            for r in o.codewords.iter().flatten() {
                s.push_str(&r.to_line());
                s.push('\n');
            }
        }
        s
    };
    emit(common, &with_newline(text))
}

fn with_newline(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyOutput {
    pub spec: String,
    pub graph6: String,
    pub stats: GraphStats,
    pub formula: u64,
}

fn cmd_family(spec: &str, common: &Common) -> Result<(), Failure> {
    let spec: FamilySpec = spec.parse()?;
    let g = spec.build()?;
    let out = FamilyOutput { spec: spec.to_string(), graph6: g6_or_blank(&g), stats: g.stats(), formula: formula_M(&spec)? };
    let text = if common.json {
        to_json(&out)
    } else {
        let diam = out.stats.diameter.map(|d| d.to_string()).unwrap_or_else(|| "inf".into());
        format!(
            "{}\ngraph6 = {}\nn = {}\nedges = {}\ndegree = {}..{}\ntriangles = {}\ndiameter = {}\nM (formula) = {}\n",
            out.spec, out.graph6, out.stats.order, out.stats.edges, out.stats.min_degree, out.stats.max_degree,
            out.stats.triangles, diam, out.formula
        )
    };
    emit(common, &with_newline(text))
}

fn cmd_verify(max_n: usize, inject_fault: bool, common: &Common) -> Result<(), Failure> {
    if max_n > formulas::VERIFY_LIMIT {
        return Err(Error::Capability { what: "verify", limit: formulas::VERIFY_LIMIT, n: max_n }.into());
    }
    let specs = verification_specs(max_n);
    let rows = verify_specs(&specs, common.threads, |s| Ok(formula_M(s)? + inject_fault as u64))?;
    let text = if common.json { with_newline(to_json(&rows)) } else { verify_csv(&rows)? };
    emit(common, &text)?;
    let bad: Vec<&VerifyRow> = rows.iter().filter(|r| !r.matches).collect();
    if bad.is_empty() {
        Ok(())
    } else {
        let lines: Vec<String> = bad
            .iter()
            .map(|r| format!("{},{},{},{},false", r.family, r.parameters, r.formula, r.enumerated))
            .collect();
        Err(Failure::Mismatch(format!("{} mismatch(es):\n{}", bad.len(), lines.join("\n"))))
    }
}

fn verify_csv(rows: &[VerifyRow]) -> Result<String, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io_err = |e: csv::Error| Failure::Lib(Error::Io(e.to_string()));
    w.write_record(["family", "parameters", "formula", "enumerated", "match"]).map_err(io_err)?;
    for r in rows {
        w.write_record([
            r.family.clone(),
            r.parameters.clone(),
            r.formula.to_string(),
            r.enumerated.to_string(),
            r.matches.to_string(),
        ])
        .map_err(io_err)?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::Lib(Error::Io(e.to_string())))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

fn cmd_bounds(input: &GraphInput, common: &Common) -> Result<(), Failure> {
    let mut reports: Vec<BoundReport> = Vec::new();
    for g in read_graphs(input)? {
        let mut r = lower_bounds_checked(&g)?;
        r.graph_id = Some(input.family.clone().unwrap_or_else(|| g6_or_blank(&g)));
        reports.push(r);
    }
    let text = if common.json {
        if reports.len() == 1 {
            to_json(&reports[0])
        } else {
            to_json(&reports)
        }
    } else {
        let mut s = String::new();
        for r in &reports {
            s.push_str(&format!("{}\n", r.graph_id.as_deref().unwrap_or("")));
            s.push_str(&format!("  M = {}\n", r.enumerated.unwrap_or(0)));
            for &(kind, value) in &r.bounds {
                s.push_str(&format!("  {} = {} (slack {})\n", kind.name(), value, r.slack(kind).unwrap_or(0)));
            }
            for o in &r.omitted {
                s.push_str(&format!("  {}: omitted, {}\n", o.bound.name(), o.reason));
            }
        }
        s
    };
    emit(common, &with_newline(text))
}

fn run_search_args(args: &SearchArgs, common: &Common) -> Result<Vec<SearchResult>, Failure> {
    let config = SearchConfig {
        threads: common.threads,
        witness_cap: args.cap,
        checkpoint: args.checkpoint.clone(),
        resume: args.resume,
        checkpoint_interval: args.checkpoint_every,
    };
    if let Some(n) = args.n {
        return Ok(search_table(n, &config)?);
    }
    let path = args.g6_file.as_ref().expect("clap enforces one source");
    if !path.exists() {
        return Err(Error::Io(format!("{}: no such file", path.display())).into());
    }
    let mut stream = GraphStream::graph6_file(path);
    stream.connected_only = !args.all_graphs;
    let mut result = search::run_search(&stream, &config)?;
    let smaller = match &args.prior {
        Some(p) => Some(p.clone()),
        None if result.n - 1 <= search::LABELED_LIMIT => {
            let quiet = SearchConfig { threads: common.threads, witness_cap: 0, ..SearchConfig::default() };
            Some(search_table(result.n - 1, &quiet)?.iter().map(|r| r.M_connected).collect())
        }
        None => None,
    };
    if let Some(smaller) = smaller {
        if smaller.len() + 1 >= result.n {
            attach_disconnected_max(&mut result, &smaller)?;
        }
    }
    Ok(vec![result])
}

fn cmd_search(args: &SearchArgs, common: &Common) -> Result<(), Failure> {
    let rows = run_search_args(args, common)?;
    let last = rows.last().expect("at least one row");
    let text = if common.json {
        to_json(last)
    } else if common.csv {
        let mut s = format!("{CSV_HEADER}\n");
        for r in &rows {
            s.push_str(&r.csv_row());
            s.push('\n');
        }
        s
    } else {
        let any = last.M_any.map(|v| v.to_string()).unwrap_or_else(|| "unknown".into());
        let w = search::witness_report(last);
        format!(
            "n = {}\ngraphs = {}\nm = {}\nM_connected = {}\nM_any = {}\nmin witnesses: {} attaining, edges {}..{}\nmax witnesses: {} attaining, edges {}..{}, min degree {}..{}, max degree {}..{}\n",
            last.n, last.graphs, last.m_connected, last.M_connected, any, w.min.attained, w.min.edges.0, w.min.edges.1,
            w.max.attained, w.max.edges.0, w.max.edges.1, w.max.min_degree.0, w.max.min_degree.1, w.max.max_degree.0,
            w.max.max_degree.1
        )
    };
    emit(common, &with_newline(text))
}

fn cmd_witness(args: &SearchArgs, common: &Common) -> Result<(), Failure> {
    let rows = run_search_args(args, common)?;
    let report = search::witness_report(rows.last().expect("at least one row"));
    let text = if common.json { to_json(&report) } else { report.to_string() };
    emit(common, &with_newline(text))
}

fn run(cli: Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Enum { input, list, filters, common } => cmd_enum(input, *list, *filters, common),
        Command::Family { spec, common } => cmd_family(spec, common),
        Command::Verify { max_n, inject_fault, common } => cmd_verify(*max_n, *inject_fault, common),
        Command::Bounds { input, common } => cmd_bounds(input, common),
        Command::Search { search, common } => cmd_search(search, common),
        Command::Witness { search, common } => cmd_witness(search, common),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
