//! `nnseq` command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error,
//! 3 invalid input data, 4 resource guard.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use nnseq::codec::decode_quadruple;
use nnseq::tables::{self, TableRow};
use nnseq::{
    canonicalize, decode_nn, encode_nn, is_canonical, orbit_bfs, BinarySeq, BsQuadruple,
    ClassRecord, Error, MoveSet, NnCode, NnQuadruple,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INVALID_INPUT: i32 = 3;
pub const EXIT_RESOURCE: i32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "nnseq",
    version,
    about = "Near-normal sequences: codes, canonical forms, classification"
)]
pub struct Cli {
    /// Write a JSON run manifest to this path.
    #[arg(long, global = true)]
    manifest: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decode an `AB;CD` code into the four sequences.
    Decode {
        #[arg(long)]
        code: String,
    },
    /// Encode (A;alpha(A);C;D) given A, C and D as +/- strings.
    Encode {
        #[arg(long = "a", allow_hyphen_values = true)]
        a: String,
        #[arg(long = "c", allow_hyphen_values = true)]
        c: String,
        #[arg(long = "d", allow_hyphen_values = true)]
        d: String,
    },
    /// Canonicalize the quadruple behind a code.
    Canon {
        #[arg(long)]
        code: String,
    },
    /// Verify the published representative table.
    VerifyTable {
        #[arg(long)]
        n: Option<usize>,
        /// CSV file to verify instead of the embedded table.
        #[arg(long)]
        table: Option<PathBuf>,
    },
    /// Exhaustively enumerate base-sequence or NN classes.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Level::Nn)]
        level: Level,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, env = "NNSEQ_THREADS")]
        threads: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Breadth-first orbit of a quadruple.
    Orbit {
        #[arg(long)]
        code: String,
        #[arg(long, value_enum, default_value_t = Moves::G)]
        moves: Moves,
        #[arg(long, default_value_t = 2048)]
        max: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Bs,
    Nn,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Moves {
    G,
    Nn,
}

/// Failure carrying its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::ResourceGuard(_) | Error::OrbitTooLarge(_) => EXIT_RESOURCE,
            _ => EXIT_INVALID_INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn io_failure(e: std::io::Error) -> Failure {
    Failure {
        code: EXIT_INVALID_INPUT,
        message: e.to_string(),
    }
}

/// What a command reports back for the manifest.
struct Outcome {
    exit: i32,
    parameters: serde_json::Value,
    counts: serde_json::Value,
    threads: usize,
}

#[derive(Serialize)]
struct RunManifest<'a> {
    command: &'a str,
    parameters: serde_json::Value,
    threads: usize,
    wall_time_s: f64,
    result_counts: serde_json::Value,
    exit_code: i32,
    tool_version: &'static str,
}

#[derive(Serialize)]
struct ClassJson<'a> {
    id: usize,
    ab: &'a str,
    cd: &'a str,
    members_bs: &'a [NnCode],
    sums: [i32; 4],
    alt_sums: [i32; 4],
}

#[derive(Serialize)]
struct Counts {
    bs: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    nn: Option<usize>,
}

#[derive(Serialize)]
struct EnumerationJson<'a> {
    n: usize,
    level: Level,
    #[serde(skip_serializing_if = "Option::is_none")]
    classes: Option<Vec<ClassJson<'a>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    bs_reps: Option<&'a BTreeSet<NnCode>>,
    counts: Counts,
}

#[derive(Serialize)]
struct QuadJson {
    a: String,
    b: String,
    c: String,
    d: String,
    code: Option<String>,
    near_normal: bool,
    canonical: bool,
}

impl QuadJson {
    fn new(q: &BsQuadruple) -> Self {
        let nn = NnQuadruple::try_from(*q).ok();
        Self {
            a: q.a().to_string(),
            b: q.b().to_string(),
            c: q.c().to_string(),
            d: q.d().to_string(),
            code: nn
                .as_ref()
                .and_then(|x| encode_nn(x).ok())
                .map(|c| c.to_string()),
            near_normal: nn.is_some(),
            canonical: nn.as_ref().is_some_and(is_canonical),
        }
    }
}

#[derive(Serialize)]
struct OrbitJson {
    code: String,
    moves: &'static str,
    size: usize,
    near_normal: usize,
    canonical: Vec<String>,
    members: Vec<QuadJson>,
}

/// Parses `args` (including the program name) and runs the command, writing
/// normal output to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    let started = Instant::now();
    let name = command_name(&cli.command);
    let outcome = dispatch(cli.command, out, err);
    let (exit, parameters, counts, threads) = match outcome {
        Ok(o) => (o.exit, o.parameters, o.counts, o.threads),
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            (f.code, serde_json::Value::Null, serde_json::Value::Null, 1)
        }
    };
    if let Some(path) = cli.manifest {
        let manifest = RunManifest {
            command: name,
            parameters,
            threads,
            wall_time_s: started.elapsed().as_secs_f64(),
            result_counts: counts,
            exit_code: exit,
            tool_version: env!("CARGO_PKG_VERSION"),
        };
        let written = serde_json::to_string_pretty(&manifest)
            .map_err(std::io::Error::other)
            .and_then(|text| std::fs::write(&path, text + "\n"));
        if let Err(e) = written {
            let _ = writeln!(err, "error: writing manifest {}: {e}", path.display());
            return EXIT_INVALID_INPUT;
        }
    }
    exit
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Decode { .. } => "decode",
        Command::Encode { .. } => "encode",
        Command::Canon { .. } => "canon",
        Command::VerifyTable { .. } => "verify-table",
        Command::Enumerate { .. } => "enumerate",
        Command::Orbit { .. } => "orbit",
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<Outcome, Failure> {
    match cmd {
        Command::Decode { code } => decode(&code, out),
        Command::Encode { a, c, d } => encode(&a, &c, &d, out),
        Command::Canon { code } => canon(&code, out),
        Command::VerifyTable { n, table } => verify(n, table.as_deref(), out),
        Command::Enumerate {
            n,
            level,
            out: path,
            threads,
            format,
        } => enumerate(n, level, path.as_deref(), threads, format, out, err),
        Command::Orbit { code, moves, max } => orbit(&code, moves, max, out),
    }
}

fn simple(parameters: serde_json::Value, counts: serde_json::Value) -> Outcome {
    Outcome {
        exit: EXIT_OK,
        parameters,
        counts,
        threads: 1,
    }
}

fn print_quad(q: &BsQuadruple, out: &mut dyn Write) -> std::io::Result<()> {
    writeln!(out, "A={}", q.a())?;
    writeln!(out, "B={}", q.b())?;
    writeln!(out, "C={}", q.c())?;
    writeln!(out, "D={}", q.d())
}

fn decode(code: &str, out: &mut dyn Write) -> Result<Outcome, Failure> {
    let code: NnCode = code.parse()?;
    let q = decode_nn(&code)?;
    print_quad(&q, out).map_err(io_failure)?;
    Ok(simple(
        serde_json::json!({ "code": code.to_string() }),
        serde_json::json!({ "n": code.n() }),
    ))
}

fn encode(a: &str, c: &str, d: &str, out: &mut dyn Write) -> Result<Outcome, Failure> {
    let a: BinarySeq = a.parse()?;
    let c: BinarySeq = c.parse()?;
    let d: BinarySeq = d.parse()?;
    let q = NnQuadruple::from_acd(a, c, d)?;
    let code = encode_nn(&q)?;
    writeln!(out, "{code}").map_err(io_failure)?;
    Ok(simple(
        serde_json::json!({ "a": a.to_string(), "c": c.to_string(), "d": d.to_string() }),
        serde_json::json!({ "n": q.n() }),
    ))
}

fn canon(code: &str, out: &mut dyn Write) -> Result<Outcome, Failure> {
    let code: NnCode = code.parse()?;
    let q = decode_nn(&code)?;
    let witness = canonicalize(&q)?;
    let canonical = encode_nn(&witness.result)?;
    let moves: Vec<String> = witness
        .moves_applied
        .iter()
        .map(|m| m.to_string())
        .collect();
    let text = (|| -> std::io::Result<()> {
        writeln!(out, "{canonical}")?;
        writeln!(
            out,
            "moves: {}",
            if moves.is_empty() {
                "none".into()
            } else {
                moves.join(" ")
            }
        )?;
        Ok(())
    })();
    text.map_err(io_failure)?;
    Ok(simple(
        serde_json::json!({ "code": code.to_string() }),
        serde_json::json!({ "moves": moves.len() }),
    ))
}

fn verify(n: Option<usize>, table: Option<&Path>, out: &mut dyn Write) -> Result<Outcome, Failure> {
    let rows: Vec<TableRow> = match table {
        Some(path) => tables::load_table(path)?,
        None => tables::embedded_rows()?,
    };
    let rows = tables::select_rows(rows, n)?;
    let report = tables::verify_rows(&rows);
    let mut text = String::new();
    for row in report.failures() {
        let failed: Vec<String> = row.failed_checks().iter().map(|c| c.to_string()).collect();
        let _ = write!(
            text,
            "FAIL n={} row {} {}: {}",
            row.n,
            row.index,
            row.code,
            failed.join(", ")
        );
        if let Some(detail) = &row.detail {
            let _ = write!(text, " ({detail})");
        }
        text.push('\n');
    }
    let _ = writeln!(text, "{report}");
    out.write_all(text.as_bytes()).map_err(io_failure)?;
    Ok(Outcome {
        exit: if report.all_passed() {
            EXIT_OK
        } else {
            EXIT_VERIFY_FAILED
        },
        parameters: serde_json::json!({ "n": n, "table": table.map(|p| p.display().to_string()) }),
        counts: serde_json::json!({ "rows": report.total(), "passed": report.passed() }),
        threads: 1,
    })
}

fn class_json(records: &[ClassRecord]) -> Vec<ClassJson<'_>> {
    records
        .iter()
        .map(|r| ClassJson {
            id: r.id,
            ab: r.representative.ab(),
            cd: r.representative.cd(),
            members_bs: &r.members_bs,
            sums: r.sums,
            alt_sums: r.alt_sums,
        })
        .collect()
}

fn enumeration_csv(
    n: usize,
    reps: &BTreeSet<NnCode>,
    classes: Option<&[ClassRecord]>,
) -> Result<String, Failure> {
    let mut text = String::from("n,index,ab_code,cd_code,a,b,c,d,a*,b*,c*,d*,class_id\n");
    for (k, code) in reps.iter().enumerate() {
        let q = decode_nn(code)?;
        let class_id = classes
            .and_then(|cs| cs.iter().find(|c| c.members_bs.contains(code)))
            .map(|c| c.id.to_string())
            .unwrap_or_default();
        let [a, b, c, d] = q.sums();
        let [sa, sb, sc, sd] = q.alt_sums();
        let _ = writeln!(
            text,
            "{n},{},{},{},{a},{b},{c},{d},{sa},{sb},{sc},{sd},{class_id}",
            k + 1,
            code.ab(),
            code.cd()
        );
    }
    Ok(text)
}

fn enumerate(
    n: usize,
    level: Level,
    path: Option<&Path>,
    threads: Option<usize>,
    format: Format,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<Outcome, Failure> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.unwrap_or(0))
        .build()
        .map_err(|e| Failure {
            code: EXIT_USAGE,
            message: e.to_string(),
        })?;
    let thread_count = pool.current_num_threads();
    let reps = pool.install(|| nnseq::enumerate_bs_canonical(n))?;
    let classes = match level {
        Level::Nn => Some(nnseq::partition_nn(&reps)?),
        Level::Bs => None,
    };
    let counts = Counts {
        bs: reps.len(),
        nn: classes.as_ref().map(Vec::len),
    };
    let summary = match counts.nn {
        Some(nn) => format!(
            "n={n}: {} base-sequence classes, {nn} NN classes",
            counts.bs
        ),
        None => format!("n={n}: {} base-sequence classes", counts.bs),
    };
    let counts_value = serde_json::to_value(&counts).map_err(|e| Failure {
        code: EXIT_INVALID_INPUT,
        message: e.to_string(),
    })?;

    let body = match format {
        Format::Json => {
            let doc = EnumerationJson {
                n,
                level,
                classes: classes.as_deref().map(class_json),
                bs_reps: (level == Level::Bs).then_some(&reps),
                counts,
            };
            serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
        }
        Format::Csv => enumeration_csv(n, &reps, classes.as_deref())?,
    };
    match path {
        Some(p) => {
            std::fs::write(p, body).map_err(io_failure)?;
            writeln!(out, "{summary}").map_err(io_failure)?;
        }
        None => {
            out.write_all(body.as_bytes()).map_err(io_failure)?;
            writeln!(err, "{summary}").map_err(io_failure)?;
        }
    }
    Ok(Outcome {
        exit: EXIT_OK,
        parameters: serde_json::json!({
            "n": n,
            "level": level,
            "format": format!("{format:?}").to_lowercase(),
            "out": path.map(|p| p.display().to_string()),
        }),
        counts: counts_value,
        threads: thread_count,
    })
}

fn orbit(code: &str, moves: Moves, max: usize, out: &mut dyn Write) -> Result<Outcome, Failure> {
    let code: NnCode = code.parse()?;
    let q = match moves {
        Moves::Nn => decode_nn(&code)?.into_inner(),
        Moves::G => decode_quadruple(&code)?,
    };
    let set = match moves {
        Moves::G => MoveSet::Group,
        Moves::Nn => MoveSet::NearNormal,
    };
    let orbit = orbit_bfs(&q, set, max)?;
    let members: Vec<QuadJson> = orbit.iter().map(QuadJson::new).collect();
    let canonical: Vec<String> = members
        .iter()
        .filter(|m| m.canonical)
        .filter_map(|m| m.code.clone())
        .collect();
    let doc = OrbitJson {
        code: code.to_string(),
        moves: match moves {
            Moves::G => "g",
            Moves::Nn => "nn",
        },
        size: orbit.len(),
        near_normal: members.iter().filter(|m| m.near_normal).count(),
        canonical,
        members,
    };
    let text = serde_json::to_string_pretty(&doc).expect("serializable");
    writeln!(out, "{text}").map_err(io_failure)?;
    Ok(simple(
        serde_json::json!({ "code": code.to_string(), "moves": doc.moves, "max": max }),
        serde_json::json!({ "size": doc.size, "near_normal": doc.near_normal }),
    ))
}
