//! The `arrangement` command-line tool.

pub mod report;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use arrangement_core::io::{all_catalog_names, arrangement_to_value, load_catalog, parse_arrangement, serialize_arrangement};
use arrangement_core::{
    affine_reduction, build_graph, check_stabilizer_theorem, classify, fan_consistency_report, g2g3,
    pairing, pi1_presentation, point_quotient, point_sum_vector, simplify, stabilizer, AffineReduction, Arrangement,
    BigInt, ConjugatorTable, Error, Mode, MultiplePointGraph, PointId,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_OBSTRUCTED: i32 = 2;
pub const EXIT_VALIDATION: i32 = 3;
pub const EXIT_UNKNOWN_ID: i32 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Debug, Parser)]
#[command(name = "arrangement", version, about = "Analyze line arrangements: lattice, graph, group invariants")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format; `dot` is available for `graph` only.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Write the report to this file instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct Input {
    /// Arrangement JSON file, or `catalog:<name>`.
    pub input: String,

    /// Fail if the arrangement has parallel lines.
    #[arg(long)]
    pub no_parallels: bool,

    /// Fail unless the input is an abstract incidence table.
    #[arg(long = "abstract")]
    pub abstract_mode: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Intersection lattice of the affine model and its projective closure.
    Lattice(Input),
    /// Graph on the multiple points of the projective closure.
    Graph(Input),
    /// First Betti number of the graph.
    Beta(Input),
    /// Presentation of the complement group.
    Presentation {
        #[command(flatten)]
        input: Input,
        /// Also run the Tietze simplifier.
        #[arg(long)]
        simplify: bool,
    },
    /// Ranks of G/G2 and of the point summands of G2/G3.
    Lcs(Input),
    /// Nonzero values of the commutator pairing on generator pairs.
    Pairing(Input),
    /// Stabilizer of a vector under the pairing.
    Stabilizer {
        #[command(flatten)]
        input: Input,
        /// Use the sum of the lines through this point.
        #[arg(long)]
        point: Option<String>,
        /// Comma-separated integer vector, one entry per line.
        #[arg(long, allow_hyphen_values = true)]
        vector: Option<String>,
    },
    /// Compare the stabilizer of a point product with its predicted form.
    CheckSm {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        point: String,
    },
    /// Quotient of the group at a multiple point.
    Quotient {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        point: String,
    },
    /// Direct-sum decision with decomposition or obstruction certificate.
    Classify(Input),
    /// Delete a line of the projective closure and compare beta.
    DeleteLine {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        line: usize,
    },
    /// Canonical JSON form of the input arrangement.
    Canonical(Input),
    /// Classify every `*.json` file in a directory.
    Batch {
        dir: PathBuf,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// List the bundled arrangements.
    Catalog,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Lattice(_) => "lattice",
            Command::Graph(_) => "graph",
            Command::Beta(_) => "beta",
            Command::Presentation { .. } => "presentation",
            Command::Lcs(_) => "lcs",
            Command::Pairing(_) => "pairing",
            Command::Stabilizer { .. } => "stabilizer",
            Command::CheckSm { .. } => "check-sm",
            Command::Quotient { .. } => "quotient",
            Command::Classify(_) => "classify",
            Command::DeleteLine { .. } => "delete-line",
            Command::Canonical(_) => "canonical",
            Command::Batch { .. } => "batch",
            Command::Catalog => "catalog",
        }
    }
}

/// Failure with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub kind: &'static str,
    pub message: String,
}

impl Failure {
    fn new(code: i32, kind: &'static str, message: impl Into<String>) -> Self {
        Failure { code, kind, message: message.into() }
    }

    fn to_json(&self) -> Value {
        json!({ "error": { "kind": self.kind, "message": self.message, "exit_code": self.code } })
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let (code, kind) = match &e {
            Error::Parse(_) => (EXIT_ERROR, "parse"),
            Error::UnknownCatalogEntry(_) => (EXIT_ERROR, "unknown_catalog_entry"),
            Error::InvalidArrangement(_)
            | Error::ParallelLines(..)
            | Error::EqualLines(..)
            | Error::DegenerateLine
            | Error::InconsistentLattice(_)
            | Error::NotAPartition(_) => (EXIT_VALIDATION, "validation"),
            Error::UnknownPoint(_)
            | Error::NotMultiplePoint(_)
            | Error::LineOutOfRange { .. }
            | Error::NotGeneric(_)
            | Error::DimensionMismatch { .. } => (EXIT_UNKNOWN_ID, "invalid_reference"),
            _ => (EXIT_ERROR, "computation"),
        };
        Failure::new(code, kind, e.to_string())
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

struct Loaded {
    source: String,
    sha256: String,
    arrangement: Arrangement,
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn load(input: &Input) -> Outcome<Loaded> {
    let (arrangement, bytes) = if let Some(name) = input.input.strip_prefix("catalog:") {
        let arr = load_catalog(name)?.arrangement;
        let text = serialize_arrangement(&arr);
        (arr, text.into_bytes())
    } else {
        let bytes = fs::read(&input.input)
            .map_err(|e| Failure::new(EXIT_ERROR, "io", format!("cannot read {}: {e}", input.input)))?;
        let text = std::str::from_utf8(&bytes)
            .map_err(|_| Failure::new(EXIT_ERROR, "parse", format!("{} is not UTF-8", input.input)))?;
        (parse_arrangement(text)?, bytes)
    };
    if input.abstract_mode && arrangement.mode() != Mode::Abstract {
        return Err(Failure::new(EXIT_VALIDATION, "validation", "input is not an abstract incidence table"));
    }
    let arrangement = if input.no_parallels {
        match arrangement.lines() {
            Some(lines) => Arrangement::coordinate(lines.to_vec(), true).with_labels(arrangement.labels().to_vec()),
            None => arrangement,
        }
    } else {
        arrangement
    };
    Ok(Loaded { source: input.input.clone(), sha256: sha256_hex(&bytes), arrangement })
}

fn parse_point(s: &str) -> Outcome<PointId> {
    s.trim()
        .trim_start_matches('p')
        .parse()
        .map(PointId)
        .map_err(|_| Failure::new(EXIT_UNKNOWN_ID, "invalid_reference", format!("bad point id {s:?}")))
}

fn parse_vector(s: &str) -> Outcome<Vec<BigInt>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<BigInt>()
                .map_err(|_| Failure::new(EXIT_ERROR, "parse", format!("bad vector entry {t:?}")))
        })
        .collect()
}

fn envelope(command: &str, loaded: Option<&Loaded>, result: Value) -> Value {
    json!({
        "tool": "arrangement",
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "input": loaded.map(|l| json!({ "source": l.source, "sha256": l.sha256 })),
        "result": result,
    })
}

/// Output of one command before formatting.
struct Report {
    value: Value,
    dot: Option<String>,
    code: i32,
}

impl Report {
    fn ok(value: Value) -> Self {
        Report { value, dot: None, code: EXIT_OK }
    }
}

fn reduce(loaded: &Loaded) -> Outcome<AffineReduction> {
    Ok(affine_reduction(&loaded.arrangement)?)
}

fn execute(command: &Command) -> Outcome<Report> {
    let name = command.name();
    let with_input = |input: &Input, f: &dyn Fn(&Loaded) -> Outcome<Report>| -> Outcome<Report> {
        let loaded = load(input)?;
        let mut r = f(&loaded)?;
        r.value = envelope(name, Some(&loaded), r.value);
        Ok(r)
    };
    match command {
        Command::Lattice(input) => with_input(input, &|l| Ok(Report::ok(report::lattice(&reduce(l)?)))),
        Command::Graph(input) => with_input(input, &|l| {
            let red = reduce(l)?;
            let g: MultiplePointGraph = build_graph(&red.closure);
            Ok(Report { value: report::graph(&g), dot: Some(g.to_dot(red.closure.closed())), code: EXIT_OK })
        }),
        Command::Beta(input) => with_input(input, &|l| Ok(Report::ok(json!({ "beta": build_graph(&reduce(l)?.closure).beta() })))),
        Command::Presentation { input, simplify: run_simplifier } => with_input(input, &|l| {
            let red = reduce(l)?;
            let p = pi1_presentation(red.model.base(), &ConjugatorTable::trivial())?;
            let mut value = report::presentation(&p);
            if *run_simplifier {
                let s = simplify(&p)?;
                value["simplified"] = report::presentation(&s.presentation);
                value["steps"] = report::steps(&s.steps);
                value["all_preserved"] = json!(s.all_preserved());
            }
            value["chart_line"] = json!(red.chart_line);
            Ok(Report::ok(value))
        }),
        Command::Lcs(input) => with_input(input, &|l| {
            let red = reduce(l)?;
            Ok(Report::ok(report::lcs(red.model.base(), &g2g3(red.model.base())?)))
        }),
        Command::Pairing(input) => with_input(input, &|l| {
            let red = reduce(l)?;
            let lat = red.model.base();
            let form = pairing(lat)?;
            let mut classes = Vec::new();
            for i in 0..lat.n_lines() {
                for j in i + 1..lat.n_lines() {
                    let c = form.class(i, j);
                    if c.iter().any(|x| *x != BigInt::from(0)) {
                        let point = lat.point_of_pair(i, j);
                        classes.push(json!({ "i": i, "j": j, "point": point, "class": report::vector(c) }));
                    }
                }
            }
            Ok(Report::ok(json!({ "n": form.n(), "total_rank": form.target().total_rank(), "classes": classes })))
        }),
        Command::Stabilizer { input, point, vector } => with_input(input, &|l| {
            let red = reduce(l)?;
            let lat = red.model.base();
            let x = match (point, vector) {
                (_, Some(v)) => parse_vector(v)?,
                (Some(p), None) => point_sum_vector(lat, parse_point(p)?)?,
                (None, None) => {
                    return Err(Failure::new(EXIT_ERROR, "usage", "stabilizer needs --point or --vector"));
                }
            };
            let s = stabilizer(&pairing(lat)?, &x)?;
            Ok(Report::ok(report::stabilizer(&s.target, &s.subgroup)))
        }),
        Command::CheckSm { input, point } => with_input(input, &|l| {
            let red = reduce(l)?;
            let c = check_stabilizer_theorem(red.model.base(), parse_point(point)?)?;
            Ok(Report::ok(report::stabilizer_check(&c)))
        }),
        Command::Quotient { input, point } => with_input(input, &|l| {
            let red = reduce(l)?;
            Ok(Report::ok(report::quotient(&point_quotient(red.model.base(), parse_point(point)?)?)))
        }),
        Command::Classify(input) => with_input(input, &|l| classify_report(&reduce(l)?)),
        Command::DeleteLine { input, line } => with_input(input, &|l| {
            let pc = reduce(l)?.closure;
            let closed = pc.closed();
            let generic = closed.is_generic_line(*line)?;
            let remaining = closed.delete_line(*line)?;
            let after = MultiplePointGraph::from_lattice(&remaining);
            Ok(Report::ok(json!({
                "line": line,
                "label": closed.labels()[*line],
                "generic": generic,
                "beta_before": build_graph(&pc).beta(),
                "beta_after": after.beta(),
                "labels": remaining.labels(),
                "points": report::lattice_points(&remaining),
            })))
        }),
        Command::Canonical(input) => with_input(input, &|l| Ok(Report::ok(arrangement_to_value(&l.arrangement)))),
        Command::Batch { dir, jobs } => batch(dir, *jobs).map(|(value, code)| Report {
            value: envelope(name, None, value),
            dot: None,
            code,
        }),
        Command::Catalog => {
            let entries = all_catalog_names()
                .iter()
                .map(|n| {
                    let e = load_catalog(n)?;
                    Ok(json!({
                        "name": e.name,
                        "description": e.description,
                        "mode": e.arrangement.mode(),
                        "n_lines": e.expected.n_lines,
                        "beta": e.expected.beta,
                        "g2g3_rank": e.expected.g2g3_rank,
                        "direct_sum": e.expected.direct_sum,
                    }))
                })
                .collect::<Outcome<Vec<Value>>>()?;
            Ok(Report::ok(envelope(name, None, json!({ "entries": entries, "parametric": ["pencil-k (k >= 3)"] }))))
        }
    }
}

fn classify_report(red: &AffineReduction) -> Outcome<Report> {
    let out = classify(&red.model)?;
    let fan = if out.is_direct_sum() { Some(fan_consistency_report(&red.model)?) } else { None };
    let code = if out.is_direct_sum() { EXIT_OK } else { EXIT_OBSTRUCTED };
    Ok(Report { value: report::classification(&out, red.chart_line, fan.as_ref()), dot: None, code })
}

fn batch(dir: &Path, jobs: usize) -> Outcome<(Value, i32)> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| Failure::new(EXIT_ERROR, "io", format!("cannot read directory {}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Failure::new(EXIT_ERROR, "io", e.to_string()))?;
    let rows: Vec<(Value, bool)> = pool.install(|| {
        files
            .par_iter()
            .map(|path| {
                let input = Input { input: path.display().to_string(), no_parallels: false, abstract_mode: false };
                let result = load(&input).and_then(|l| {
                    let r = classify_report(&reduce(&l)?)?;
                    Ok((l.sha256, r.value))
                });
                let file = path.file_name().map(|f| f.to_string_lossy().into_owned());
                match result {
                    Ok((sha, v)) => (
                        json!({ "file": file, "sha256": sha, "beta": v["beta"], "verdict": v["verdict"] }),
                        true,
                    ),
                    Err(f) => (json!({ "file": file, "error": f.to_json()["error"] }), false),
                }
            })
            .collect()
    });
    let failed = rows.iter().filter(|r| !r.1).count();
    let code = if failed > 0 { EXIT_ERROR } else { EXIT_OK };
    Ok((json!({ "files": rows.into_iter().map(|r| r.0).collect::<Vec<_>>(), "failed": failed }), code))
}

fn render(report: &Report, format: Format) -> Outcome<String> {
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(&report.value).expect("json") + "\n"),
        Format::Text => Ok(report::to_text(&report.value)),
        Format::Dot => report
            .dot
            .clone()
            .ok_or_else(|| Failure::new(EXIT_ERROR, "usage", "dot output is only available for the graph command")),
    }
}

/// Runs the tool on `args` (including the program name), writing the report
/// to stdout or `--output` and errors to stderr. Returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let result = execute(&cli.command).and_then(|r| render(&r, cli.format).map(|text| (text, r.code)));
    match result {
        Ok((text, code)) => {
            let written = match &cli.output {
                Some(path) => fs::write(path, text.as_bytes()),
                None => std::io::stdout().write_all(text.as_bytes()),
            };
            match written {
                Ok(()) => code,
                Err(e) => {
                    eprintln!("{}", Failure::new(EXIT_ERROR, "io", e.to_string()).to_json());
                    EXIT_ERROR
                }
            }
        }
        Err(f) => {
            eprintln!("{}", f.to_json());
            f.code
        }
    }
}
