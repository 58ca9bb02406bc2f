//! Command-line front end.
//!
//! Exit codes: 0 success, 1 an identity failed where it must hold, 2 bad
//! input, 3 an enumeration or sweep guard was exceeded.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::connectors::{
    complementary, enumerate_connectors, Connector, ConnectorError, Path, DEFAULT_MAX_TUPLES,
};
use crate::identity::{self, SpecialReport, SweepConfig, VerificationReport};
use crate::lattice::{build_l, build_r, Flavor, Lattice};
use crate::poly::Polynomial;
use crate::shape::{make_skew, IndexSelection, SkewShape};

pub const SCHEMA: u32 = 1;
pub const MAX_TUPLES_ENV: &str = "SKEWLGV_MAX_TUPLES";

/// Largest sweep bounds accepted.
pub const MAX_SWEEP_N: usize = 6;
pub const MAX_SWEEP_PART: u32 = 6;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSIFIED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_GUARD: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "skewlgv",
    version,
    about = "Verify h/e determinant duality on skew Young diagram lattices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute both determinants and check the hypothesis.
    Verify {
        #[command(flatten)]
        spec: ProblemSpec,
        /// Also count non-intersecting connectors by brute force.
        #[arg(long)]
        brute: bool,
        /// Treat any inequality as a failure, even without the hypothesis.
        #[arg(long)]
        strict: bool,
        #[arg(long)]
        json: bool,
    },
    /// List connectors on one lattice.
    Enumerate {
        #[command(flatten)]
        spec: ProblemSpec,
        #[arg(long, value_enum, default_value = "l")]
        flavor: FlavorArg,
        /// Only vertex-disjoint connectors.
        #[arg(long)]
        disjoint: bool,
        /// Pair each disjoint blue connector with its complementary red one.
        #[arg(long)]
        complement: bool,
        #[arg(long)]
        json: bool,
    },
    /// Run one of the classical specializations.
    Special {
        #[arg(value_enum)]
        kind: SpecialKind,
        #[arg(long)]
        n: usize,
        /// Rectangle width for aitken.
        #[arg(long)]
        m: Option<u32>,
        /// For aitken, check every width from 1 to this bound.
        #[arg(long)]
        max_m: Option<u32>,
        #[arg(long = "A")]
        a_set: Option<String>,
        #[arg(long = "B")]
        b_set: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Sweep all small shapes and selections and bucket the outcomes.
    Sweep {
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        #[arg(long, default_value_t = 4)]
        max_part: u32,
        /// Only selections satisfying the hypothesis.
        #[arg(long, conflicts_with = "all")]
        hypothesis_only: bool,
        /// Every selection (the default).
        #[arg(long)]
        all: bool,
        /// Include composition pairs that are not partition pairs.
        #[arg(long)]
        compositions: bool,
        /// Write one JSON case per line to this file ("-" for stdout).
        #[arg(long)]
        jsonl: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Draw a lattice as text.
    Draw {
        #[command(flatten)]
        spec: ProblemSpec,
        #[arg(long, value_enum, default_value = "l")]
        flavor: FlavorArg,
    },
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum FlavorArg {
    #[value(name = "L", alias = "l")]
    L,
    #[value(name = "R", alias = "r")]
    R,
}

impl From<FlavorArg> for Flavor {
    fn from(f: FlavorArg) -> Self {
        match f {
            FlavorArg::L => Flavor::L,
            FlavorArg::R => Flavor::R,
        }
    }
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum SpecialKind {
    Binomial,
    Qbinomial,
    Sympoly,
    Aitken,
}

/// Shape and selection as given on the command line. Lists are comma
/// separated; partitions are largest part first; rows are 0-indexed.
/// Omitting both `--A` and `--B` selects every row.
#[derive(Args, Debug, Clone)]
pub struct ProblemSpec {
    #[arg(long)]
    pub n: usize,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: String,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: String,
    #[arg(long = "A")]
    pub a_set: Option<String>,
    #[arg(long = "B")]
    pub b_set: Option<String>,
    /// Accept alpha and beta as arbitrary compositions.
    #[arg(long)]
    pub compositions: bool,
}

#[derive(Debug)]
struct InputError(String);

fn parse_list<T: std::str::FromStr>(name: &str, text: &str) -> Result<Vec<T>, InputError> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|t| {
            t.trim().parse().map_err(|_| {
                InputError(format!(
                    "{name}: cannot parse {t:?} as a nonnegative integer"
                ))
            })
        })
        .collect()
}

fn parse_selection(
    n: usize,
    a: Option<&str>,
    b: Option<&str>,
) -> Result<IndexSelection, InputError> {
    match (a, b) {
        (None, None) => Ok(IndexSelection::full(n)),
        (Some(a), Some(b)) => {
            let a: Vec<usize> = parse_list("A", a)?;
            let b: Vec<usize> = parse_list("B", b)?;
            IndexSelection::new(n, &a, &b).map_err(|e| InputError(e.to_string()))
        }
        _ => Err(InputError("--A and --B must be given together".into())),
    }
}

impl ProblemSpec {
    fn resolve(&self) -> Result<(SkewShape, IndexSelection), InputError> {
        let alpha: Vec<u32> = parse_list("alpha", &self.alpha)?;
        let beta: Vec<u32> = parse_list("beta", &self.beta)?;
        for (name, v) in [("alpha", &alpha), ("beta", &beta)] {
            if v.len() != self.n {
                return Err(InputError(format!(
                    "{name} has {} parts, expected n = {}",
                    v.len(),
                    self.n
                )));
            }
        }
        let shape = if self.compositions {
            SkewShape::from_compositions(alpha, beta)
        } else {
            make_skew(&alpha, &beta)
        }
        .map_err(|e| InputError(e.to_string()))?;
        let sel = parse_selection(self.n, self.a_set.as_deref(), self.b_set.as_deref())?;
        Ok((shape, sel))
    }
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    schema: u32,
    #[serde(flatten)]
    body: &'a T,
}

fn emit_json<T: Serialize>(out: &mut dyn Write, body: &T) -> io::Result<()> {
    let text = serde_json::to_string_pretty(&Envelope {
        schema: SCHEMA,
        body,
    })
    .expect("serializable");
    writeln!(out, "{text}")
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

/// The enumeration cap from `SKEWLGV_MAX_TUPLES`, or the default.
fn tuple_cap(env: Option<&str>) -> Result<u128, InputError> {
    match env {
        None => Ok(DEFAULT_MAX_TUPLES),
        Some(s) => s
            .trim()
            .parse()
            .map_err(|_| InputError(format!("{MAX_TUPLES_ENV}: cannot parse {s:?}"))),
    }
}

enum Failure {
    Input(String),
    Guard(String),
    Io(io::Error),
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Input(e.0)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<ConnectorError> for Failure {
    fn from(e: ConnectorError) -> Self {
        match e {
            ConnectorError::TooManyTuples { .. } => Failure::Guard(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

/// Parses `args` (including the program name) and runs the command. `cap_env`
/// is the value of `SKEWLGV_MAX_TUPLES`, if set. Returns the exit code.
pub fn run<I, T>(args: I, cap_env: Option<&str>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    match dispatch(cli.command, cap_env, out) {
        Ok(code) => code,
        Err(Failure::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INPUT
        }
        Err(Failure::Guard(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_GUARD
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
    }
}

fn dispatch(cmd: Command, cap_env: Option<&str>, out: &mut dyn Write) -> Result<i32, Failure> {
    match cmd {
        Command::Verify {
            spec,
            brute,
            strict,
            json,
        } => cmd_verify(&spec, brute, strict, json, tuple_cap(cap_env)?, out),
        Command::Enumerate {
            spec,
            flavor,
            disjoint,
            complement,
            json,
        } => cmd_enumerate(
            &spec,
            flavor.into(),
            disjoint,
            complement,
            json,
            tuple_cap(cap_env)?,
            out,
        ),
        Command::Special {
            kind,
            n,
            m,
            max_m,
            a_set,
            b_set,
            json,
        } => {
            let sel = parse_selection(n, a_set.as_deref(), b_set.as_deref())?;
            cmd_special(kind, &sel, m, max_m, json, out)
        }
        Command::Sweep {
            max_n,
            max_part,
            hypothesis_only,
            all: _,
            compositions,
            jsonl,
            json,
        } => {
            let config = SweepConfig {
                max_n,
                max_part,
                hypothesis_only,
                compositions,
            };
            cmd_sweep(&config, jsonl.as_deref(), json, out)
        }
        Command::Draw { spec, flavor } => {
            let (shape, sel) = spec.resolve()?;
            let lat = lattice_for(&shape, &sel, flavor.into());
            write!(out, "{}", lat.draw())?;
            Ok(EXIT_OK)
        }
    }
}

fn lattice_for(shape: &SkewShape, sel: &IndexSelection, flavor: Flavor) -> Lattice {
    match flavor {
        Flavor::L => build_l(shape, sel),
        Flavor::R => build_r(shape, sel),
    }
}

/// Exit status for a verification report.
pub fn verify_exit_code(r: &VerificationReport, strict: bool) -> i32 {
    let brute_bad = r.brute_blue.as_ref().is_some_and(|b| b != &r.det_h)
        || (r.hypothesis_ok && r.brute_red.as_ref().is_some_and(|b| b != &r.det_e));
    if brute_bad || (!r.equal && (r.hypothesis_ok || strict)) {
        EXIT_FALSIFIED
    } else {
        EXIT_OK
    }
}

fn cmd_verify(
    spec: &ProblemSpec,
    brute: bool,
    strict: bool,
    json: bool,
    cap: u128,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let (shape, sel) = spec.resolve()?;
    let report = identity::verify_main(&shape, &sel, brute, cap)?;
    if json {
        emit_json(out, &report)?;
    } else {
        write_report(out, &report)?;
    }
    Ok(verify_exit_code(&report, strict))
}

fn write_report(out: &mut dyn Write, r: &VerificationReport) -> io::Result<()> {
    writeln!(out, "alpha: {}", join(&r.alpha))?;
    writeln!(out, "beta: {}", join(&r.beta))?;
    writeln!(out, "A: {}", join(&r.a_set))?;
    writeln!(out, "B: {}", join(&r.b_set))?;
    if r.hypothesis_ok {
        writeln!(out, "hypothesis: holds")?;
    } else {
        writeln!(out, "hypothesis: fails")?;
        for v in &r.violating_pairs {
            writeln!(
                out,
                "  (a', b') = ({}, {}) fails at row {}",
                v.a_prime, v.b_prime, v.row
            )?;
        }
    }
    writeln!(out, "det_h: {}", r.det_h)?;
    writeln!(out, "det_e: {}", r.det_e)?;
    if let Some(b) = &r.brute_blue {
        writeln!(out, "brute_blue: {b}")?;
    }
    if let Some(b) = &r.brute_red {
        writeln!(out, "brute_red: {b}")?;
    }
    if !r.filled_points.is_empty() {
        let pts: Vec<String> = r
            .filled_points
            .iter()
            .map(|v| format!("({}, {})", v.i, v.j))
            .collect();
        writeln!(out, "filled points: {}", pts.join(" "))?;
    }
    writeln!(out, "equal: {}", r.equal)?;
    if r.equal {
        writeln!(out, "common value: {}", r.det_h)?;
    }
    Ok(())
}

fn path_text(p: &Path) -> String {
    p.nodes()
        .iter()
        .map(|v| format!("({},{})", v.i, v.j))
        .collect::<Vec<_>>()
        .join(" ")
}

fn write_connector(out: &mut dyn Write, label: &str, c: &Connector) -> io::Result<()> {
    writeln!(out, "{label} weight {}", c.weight())?;
    for (k, p) in c.paths().iter().enumerate() {
        writeln!(out, "  path {k}: {}", path_text(p))?;
    }
    Ok(())
}

#[derive(Serialize)]
struct ConnectorEntry<'a> {
    paths: &'a Connector,
    weight: &'a Polynomial,
}

#[derive(Serialize)]
struct PairEntry<'a> {
    blue: &'a Connector,
    red: &'a Connector,
    weight: &'a Polynomial,
}

fn cmd_enumerate(
    spec: &ProblemSpec,
    flavor: Flavor,
    disjoint: bool,
    complement: bool,
    json: bool,
    cap: u128,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let (shape, sel) = spec.resolve()?;
    if complement {
        let left = build_l(&shape, &sel);
        let right = build_r(&shape, &sel);
        let blues = enumerate_connectors(&left, true, cap)?;
        let reds = blues
            .iter()
            .map(|b| complementary(b, &left, &right))
            .collect::<Result<Vec<_>, _>>()?;
        let total: Polynomial = blues.iter().map(|c| c.weight().clone()).sum();
        if json {
            let pairs: Vec<PairEntry> = blues
                .iter()
                .zip(&reds)
                .map(|(b, r)| PairEntry {
                    blue: b,
                    red: r,
                    weight: b.weight(),
                })
                .collect();
            emit_json(
                out,
                &json!({"pairs": pairs, "count": blues.len(), "total": total}),
            )?;
        } else {
            for (k, (b, r)) in blues.iter().zip(&reds).enumerate() {
                write_connector(out, &format!("blue {k}:"), b)?;
                write_connector(out, &format!("red {k}:"), r)?;
            }
            writeln!(out, "count: {}", blues.len())?;
            writeln!(out, "total: {total}")?;
        }
        return Ok(EXIT_OK);
    }
    let lat = lattice_for(&shape, &sel, flavor);
    let cs = enumerate_connectors(&lat, disjoint, cap)?;
    let total: Polynomial = cs.iter().map(|c| c.weight().clone()).sum();
    if json {
        let entries: Vec<ConnectorEntry> = cs
            .iter()
            .map(|c| ConnectorEntry {
                paths: c,
                weight: c.weight(),
            })
            .collect();
        emit_json(
            out,
            &json!({
                "flavor": flavor,
                "disjoint": disjoint,
                "connectors": entries,
                "count": cs.len(),
                "total": total,
            }),
        )?;
    } else {
        for (k, c) in cs.iter().enumerate() {
            write_connector(out, &format!("connector {k}:"), c)?;
        }
        writeln!(out, "count: {}", cs.len())?;
        writeln!(out, "total: {total}")?;
    }
    Ok(EXIT_OK)
}

fn cmd_special(
    kind: SpecialKind,
    sel: &IndexSelection,
    m: Option<u32>,
    max_m: Option<u32>,
    json: bool,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let reports: Vec<SpecialReport> = match kind {
        SpecialKind::Binomial => vec![identity::verify_binomial(sel)],
        SpecialKind::Qbinomial => vec![identity::verify_qbinomial(sel)],
        SpecialKind::Sympoly => vec![identity::verify_sympoly_binomial(sel)],
        SpecialKind::Aitken => {
            if sel.n() == 0 {
                return Err(Failure::Input("aitken needs n >= 1".into()));
            }
            match (m, max_m) {
                (Some(0), _) | (_, Some(0)) => {
                    return Err(Failure::Input("aitken needs m >= 1".into()))
                }
                (_, Some(top)) => identity::aitken_series(top, sel),
                (Some(m), None) => vec![identity::verify_aitken(m, sel)],
                (None, None) => return Err(Failure::Input("aitken needs --m or --max-m".into())),
            }
        }
    };
    if json {
        if let [single] = reports.as_slice() {
            emit_json(out, single)?;
        } else {
            emit_json(out, &json!({ "reports": reports }))?;
        }
    } else {
        for r in &reports {
            match r.m {
                Some(m) => writeln!(out, "{} (m = {m}, n = {})", r.kind, r.n)?,
                None => writeln!(out, "{} (n = {})", r.kind, r.n)?,
            }
            writeln!(out, "A: {}", join(&r.a_set))?;
            writeln!(out, "B: {}", join(&r.b_set))?;
            writeln!(out, "lhs: {}", r.lhs)?;
            writeln!(out, "rhs: {}", r.rhs)?;
            writeln!(out, "equal: {}", r.equal)?;
            if let Some(agree) = r.routes_agree {
                writeln!(out, "routes agree: {agree}")?;
            }
        }
    }
    Ok(if reports.iter().all(SpecialReport::holds) {
        EXIT_OK
    } else {
        EXIT_FALSIFIED
    })
}

fn cmd_sweep(
    config: &SweepConfig,
    jsonl: Option<&str>,
    json: bool,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    if config.max_n == 0 || config.max_n > MAX_SWEEP_N || config.max_part > MAX_SWEEP_PART {
        return Err(Failure::Guard(format!(
            "sweep bounds must satisfy 1 <= max_n <= {MAX_SWEEP_N} and max_part <= {MAX_SWEEP_PART}"
        )));
    }
    let mut file_sink: Option<BufWriter<File>> = match jsonl {
        Some(path) if path != "-" => Some(BufWriter::new(File::create(path)?)),
        _ => None,
    };
    let to_stdout = jsonl == Some("-");
    let mut write_err: Option<io::Error> = None;
    let summary = identity::sweep(config, |case| {
        if write_err.is_some() {
            return;
        }
        let line = serde_json::to_string(&Envelope {
            schema: SCHEMA,
            body: case,
        })
        .expect("serializable");
        let res = match (&mut file_sink, to_stdout) {
            (Some(f), _) => writeln!(f, "{line}"),
            (None, true) => writeln!(out, "{line}"),
            _ => Ok(()),
        };
        if let Err(e) = res {
            write_err = Some(e);
        }
    });
    if let Some(e) = write_err {
        return Err(e.into());
    }
    if let Some(mut f) = file_sink {
        f.flush()?;
    }
    if json {
        emit_json(out, &summary)?;
    } else if !to_stdout {
        writeln!(out, "shapes: {}", summary.shapes)?;
        writeln!(out, "cases: {}", summary.cases)?;
        writeln!(out, "hypothesis holds, equal: {}", summary.holds_equal)?;
        writeln!(out, "hypothesis holds, unequal: {}", summary.holds_unequal)?;
        writeln!(out, "hypothesis fails, equal: {}", summary.fails_equal)?;
        writeln!(out, "hypothesis fails, unequal: {}", summary.fails_unequal)?;
    }
    Ok(if summary.holds_unequal == 0 {
        EXIT_OK
    } else {
        EXIT_FALSIFIED
    })
}
