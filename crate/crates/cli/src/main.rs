//! `ascent-dyck`: batch front end for the 021-avoiding ascent sequence /
//! Dyck path bijection.
//!
//! Exit codes: 0 success, 1 bad input or arguments, 2 internal invariant
//! violation (including any failed `verify` check).

use std::io::{self, BufRead, BufWriter, Write};
use std::process::ExitCode;

use ascent_dyck::verify::{run_checks, CheckKind, VerifyConfig};
use ascent_dyck::{
    enumerate_021_avoiding, enumerate_dyck_paths, forward, forward_trace, inverse, inverse_trace,
    parse_path, parse_sequence, path_statistics, sequence_statistics, AscentSequence,
    BijectionError, DyckPath, Emission, ForwardTrace, InverseTrace, PathStats, SequenceStats,
};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(
    name = "ascent-dyck",
    version,
    about = "Map 021-avoiding ascent sequences to Dyck paths and back"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Image of an ascent sequence (`-` reads one sequence per line from stdin)
    Map {
        sequence: String,
        /// Print every intermediate path with its case record
        #[arg(long)]
        trace: bool,
        #[arg(long, value_enum, default_value_t = PathFormat::Ud)]
        format: PathFormat,
    },
    /// Preimage of a Dyck path (`-` reads one path per line from stdin)
    Unmap {
        path: String,
        #[arg(long)]
        trace: bool,
        #[arg(long, value_enum, default_value_t = TextFormat::Text)]
        format: TextFormat,
    },
    /// Stream every object of size N, one per line
    Enumerate {
        n: usize,
        #[arg(long, value_enum, default_value_t = Side::Seq)]
        side: Side,
        /// Append the five statistics to each line
        #[arg(long)]
        stats: bool,
    },
    /// The five statistics of a sequence or a path
    Stats {
        #[arg(long, conflicts_with = "path", required_unless_present = "path")]
        seq: Option<String>,
        #[arg(long)]
        path: Option<String>,
    },
    /// Exhaustive verification at size N
    Verify {
        n: usize,
        /// Comma-separated subset of: counts, roundtrip, bijectivity,
        /// statistics, invariants, characterization
        #[arg(long, value_delimiter = ',')]
        checks: Option<Vec<String>>,
        /// Raise the size cap from 12 to 14
        #[arg(long)]
        extended: bool,
        #[arg(long)]
        json: bool,
        /// Run on a single thread
        #[arg(long)]
        sequential: bool,
    },
    /// ASCII picture of a Dyck path (`-` reads stdin)
    Render { path: String },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PathFormat {
    Ud,
    Paren,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TextFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Side {
    Seq,
    Path,
    Pairs,
}

enum Failure {
    Input(String),
    Internal(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 1,
            Failure::Internal(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Internal(m) => m,
        }
    }
}

impl From<BijectionError> for Failure {
    fn from(e: BijectionError) -> Self {
        if e.is_internal() {
            Failure::Internal(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(format!("i/o error: {e}"))
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Internal(format!("json error: {e}"))
    }
}

type CliResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = run(cli.command, &mut out).and_then(|()| out.flush().map_err(Failure::from));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let _ = out.flush();
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn run(command: Command, out: &mut impl Write) -> CliResult {
    match command {
        Command::Map {
            sequence,
            trace,
            format,
        } => each_input(&sequence, |text| cmd_map(text, trace, format, out)),
        Command::Unmap {
            path,
            trace,
            format,
        } => each_input(&path, |text| cmd_unmap(text, trace, format, out)),
        Command::Enumerate { n, side, stats } => cmd_enumerate(n, side, stats, out),
        Command::Stats { seq, path } => cmd_stats(seq, path, out),
        Command::Verify {
            n,
            checks,
            extended,
            json,
            sequential,
        } => cmd_verify(n, checks, extended, json, sequential, out),
        Command::Render { path } => each_input(&path, |text| cmd_render(text, out)),
    }
}

// `-` means one input per nonempty stdin line.
fn each_input(arg: &str, mut f: impl FnMut(&str) -> CliResult) -> CliResult {
    if arg != "-" {
        return f(arg);
    }
    for line in io::stdin().lock().lines() {
        let line = line?;
        if !line.trim().is_empty() {
            f(line.trim())?;
        }
    }
    Ok(())
}

fn read_sequence(text: &str) -> Result<AscentSequence, Failure> {
    parse_sequence(text).map_err(|e| Failure::Input(format!("invalid sequence {text:?}: {e}")))
}

fn read_path(text: &str) -> Result<DyckPath, Failure> {
    parse_path(text).map_err(|e| Failure::Input(format!("invalid path {text:?}: {e}")))
}

fn read_single(arg: &str) -> Result<String, Failure> {
    if arg != "-" {
        return Ok(arg.to_string());
    }
    let mut buf = String::new();
    io::stdin().lock().read_line(&mut buf)?;
    Ok(buf.trim().to_string())
}

#[derive(Serialize)]
struct Pair<'a> {
    sequence: &'a AscentSequence,
    path: &'a DyckPath,
}

fn cmd_map(text: &str, trace: bool, format: PathFormat, out: &mut impl Write) -> CliResult {
    let seq = read_sequence(text)?;
    if trace {
        let t = forward_trace(&seq)?;
        match format {
            PathFormat::Json => writeln!(out, "{}", serde_json::to_string(&t.records)?)?,
            _ => out.write_all(forward_trace_table(&seq, &t, format).as_bytes())?,
        }
        return Ok(());
    }
    let p = forward(&seq)?;
    match format {
        PathFormat::Ud => writeln!(out, "{p}")?,
        PathFormat::Paren => writeln!(out, "{}", p.to_paren_string())?,
        PathFormat::Json => writeln!(
            out,
            "{}",
            serde_json::to_string(&Pair {
                sequence: &seq,
                path: &p
            })?
        )?,
    }
    Ok(())
}

fn show_path(p: &DyckPath, format: PathFormat) -> String {
    match format {
        PathFormat::Paren => p.to_paren_string(),
        _ => p.to_string(),
    }
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "-".to_string(), |x| x.to_string())
}

fn forward_trace_table(seq: &AscentSequence, t: &ForwardTrace, format: PathFormat) -> String {
    let mut rows = vec![
        ["i", "u_i", "case", "A", "j", "e", "keys", "path"]
            .map(String::from)
            .to_vec(),
        vec![
            "1".into(),
            seq.entries()[0].to_string(),
            "-".into(),
            "-".into(),
            "-".into(),
            "-".into(),
            "-".into(),
            show_path(&t.initial, format),
        ],
    ];
    for r in &t.records {
        let keys = if r.key_downsteps_before.is_empty() {
            "-".to_string()
        } else {
            r.key_downsteps_before
                .iter()
                .map(|k| k.index.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        rows.push(vec![
            r.position.to_string(),
            r.entry.to_string(),
            r.case_id.id().to_string(),
            opt(r.allowable.as_ref()),
            opt(r.j),
            opt(r.e),
            keys,
            show_path(&r.path_after, format),
        ]);
    }
    table(&rows)
}

fn inverse_trace_table(t: &InverseTrace) -> String {
    let mut rows = vec![
        ["size", "case", "u_i", "mark", "rank", "path"]
            .map(String::from)
            .to_vec(),
        vec![
            t.initial.size().to_string(),
            "-".into(),
            "-".into(),
            "-".into(),
            "-".into(),
            t.initial.to_string(),
        ],
    ];
    for r in &t.records {
        rows.push(vec![
            (r.size - 1).to_string(),
            r.case_id.id().to_string(),
            match r.emitted {
                Emission::Value(v) => v.to_string(),
                Emission::RepeatPrevious => "=prev".into(),
            },
            opt(r.marked_step.map(|m| m.index)),
            opt(r.rank_right_to_left),
            r.path_after.to_string(),
        ]);
    }
    let mut s = table(&rows);
    s.push_str(&format!("sequence  {}\n", t.sequence));
    s
}

// Left-aligned columns separated by two spaces, trailing spaces trimmed.
fn table(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| {
            rows.iter()
                .map(|r| r.get(c).map_or(0, |x| x.len()))
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for r in rows {
        let mut line = String::new();
        for (c, cell) in r.iter().enumerate() {
            line.push_str(&format!("{:<w$}", cell, w = widths[c]));
            line.push_str("  ");
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

fn cmd_unmap(text: &str, trace: bool, format: TextFormat, out: &mut impl Write) -> CliResult {
    let p = read_path(text)?;
    if trace {
        let t = inverse_trace(&p)?;
        match format {
            TextFormat::Json => writeln!(out, "{}", serde_json::to_string(&t.records)?)?,
            TextFormat::Text => out.write_all(inverse_trace_table(&t).as_bytes())?,
        }
        return Ok(());
    }
    let s = inverse(&p)?;
    match format {
        TextFormat::Text => writeln!(out, "{s}")?,
        TextFormat::Json => writeln!(
            out,
            "{}",
            serde_json::to_string(&Pair {
                sequence: &s,
                path: &p
            })?
        )?,
    }
    Ok(())
}

fn seq_stat_values(s: &SequenceStats) -> [String; 5] {
    [
        s.initial_zeros.to_string(),
        s.terminal_zeros.to_string(),
        s.ascents.to_string(),
        s.descents.to_string(),
        opt(s.eq_run_before_last_nonzero),
    ]
}

fn path_stat_values(p: &PathStats) -> [String; 5] {
    [
        p.first_descent_length.to_string(),
        (p.last_ascent_length - 1).to_string(),
        p.valleys.to_string(),
        p.duu_count.to_string(),
        opt(p.degree_of_elevation),
    ]
}

fn cmd_enumerate(n: usize, side: Side, stats: bool, out: &mut impl Write) -> CliResult {
    if n == 0 {
        return Err(Failure::Input("size must be at least 1".into()));
    }
    match side {
        Side::Seq => {
            for s in enumerate_021_avoiding(n).expect("n >= 1") {
                if stats {
                    writeln!(
                        out,
                        "{s}\t{}",
                        seq_stat_values(&sequence_statistics(&s)).join(" ")
                    )?;
                } else {
                    writeln!(out, "{s}")?;
                }
            }
        }
        Side::Path => {
            for p in enumerate_dyck_paths(n).expect("n >= 1") {
                if stats {
                    writeln!(
                        out,
                        "{p}\t{}",
                        path_stat_values(&path_statistics(&p)).join(" ")
                    )?;
                } else {
                    writeln!(out, "{p}")?;
                }
            }
        }
        Side::Pairs => {
            for s in enumerate_021_avoiding(n).expect("n >= 1") {
                let p = forward(&s)?;
                if stats {
                    writeln!(
                        out,
                        "{s}\t{p}\t{}\t{}",
                        seq_stat_values(&sequence_statistics(&s)).join(" "),
                        path_stat_values(&path_statistics(&p)).join(" ")
                    )?;
                } else {
                    writeln!(out, "{s}\t{p}")?;
                }
            }
        }
    }
    Ok(())
}

const SEQUENCE_LABELS: [&str; 5] = [
    "initial zeros",
    "terminal zeros",
    "ascents",
    "descents",
    "equal run before last nonzero",
];

const PATH_LABELS: [&str; 5] = [
    "first descent length",
    "last ascent length - 1",
    "valleys",
    "DUU factors",
    "degree of elevation",
];

fn cmd_stats(seq: Option<String>, path: Option<String>, out: &mut impl Write) -> CliResult {
    let (labels, values) = match (seq, path) {
        (Some(s), _) => {
            let s = read_sequence(&read_single(&s)?)?;
            if !s.is_021_avoiding() {
                return Err(Failure::Input(format!("sequence {s} is not 021-avoiding")));
            }
            (SEQUENCE_LABELS, seq_stat_values(&sequence_statistics(&s)))
        }
        (None, Some(p)) => {
            let p = read_path(&read_single(&p)?)?;
            (PATH_LABELS, path_stat_values(&path_statistics(&p)))
        }
        (None, None) => return Err(Failure::Input("one of --seq or --path is required".into())),
    };
    let rows: Vec<Vec<String>> = labels
        .iter()
        .zip(values)
        .map(|(l, v)| vec![l.to_string(), v])
        .collect();
    out.write_all(table(&rows).as_bytes())?;
    Ok(())
}

fn cmd_verify(
    n: usize,
    checks: Option<Vec<String>>,
    extended: bool,
    json: bool,
    sequential: bool,
    out: &mut impl Write,
) -> CliResult {
    let kinds: Vec<CheckKind> = match checks {
        None => CheckKind::ALL.to_vec(),
        Some(names) => names
            .iter()
            .map(|name| {
                CheckKind::parse(name.trim())
                    .ok_or_else(|| Failure::Input(format!("unknown check {name:?}")))
            })
            .collect::<Result<_, _>>()?,
    };
    let mut config = if extended {
        VerifyConfig::extended()
    } else {
        VerifyConfig::default()
    };
    if sequential {
        config = config.sequential();
    }
    let report = run_checks(n, &kinds, &config).map_err(|e| Failure::Input(e.to_string()))?;
    if json {
        writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?;
    } else {
        out.write_all(report.summary().as_bytes())?;
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Internal(format!(
            "{} verification failures",
            report.failure_count
        )))
    }
}

fn cmd_render(text: &str, out: &mut impl Write) -> CliResult {
    let p = read_path(text)?;
    out.write_all(p.render_ascii().as_bytes())?;
    Ok(())
}
