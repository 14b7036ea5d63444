//! Batch command-line surface for the codec: encode, corrupt, decode,
//! bench-tables, selftest.
//!
//! Exit codes: 0 on success, 2 when a received word cannot be repaired,
//! 1 on usage or IO errors. Every path argument accepts `-` for
//! stdin/stdout.

mod selftest;
mod symfile;

use std::fs;
use std::io::{Read, Write};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use rand_core::{RngCore, SeedableRng};

use rsfd_core::codec::corrupt;
use rsfd_core::opcount::{self, CountLabel, CountRow, ReportFormat};
use rsfd_core::{CodeParams, ErrorPattern, Gf, OpCounter, RsContext};
use symfile::SymbolFile;

#[derive(Parser)]
#[command(
    name = "rsfd",
    version,
    about = "Reed-Solomon codec over GF(2^m) with exact operation counting"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algo {
    First,
    Second,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Markdown,
}

#[derive(Subcommand)]
enum Command {
    /// Encode k data symbols into an n-symbol systematic codeword.
    ///
    /// Input is raw symbols (one byte each for m <= 8, two bytes
    /// little-endian for larger m); output is a symbol file.
    Encode {
        /// Field degree; the code has length n = 2^m.
        #[arg(long, default_value_t = 8)]
        m: u32,
        /// Redundancy exponent; n - k = 2^mu parity symbols, t = 2^(mu-1).
        #[arg(long, default_value_t = 5)]
        mu: u32,
        #[arg(long = "in", default_value = "-")]
        input: String,
        #[arg(long, default_value = "-")]
        out: String,
    },
    /// Inject errors into a codeword symbol file.
    Corrupt {
        /// Number of random errors to inject (mutually exclusive with
        /// --pattern).
        #[arg(long, conflicts_with = "pattern")]
        errors: Option<usize>,
        /// Explicit pattern file: one "<index> <value-hex>" per line.
        #[arg(long)]
        pattern: Option<String>,
        /// Seed for the deterministic generator (ChaCha8) drawing
        /// positions uniformly from [2t, n) and values uniformly from the
        /// nonzero field elements.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Allow error positions below 2t, violating the decoder's
        /// standing assumption.
        #[arg(long)]
        unsafe_positions: bool,
        /// Also write the injected pattern as a pattern file.
        #[arg(long, value_name = "FILE")]
        emit_pattern: Option<String>,
        #[arg(long = "in", default_value = "-")]
        input: String,
        #[arg(long, default_value = "-")]
        out: String,
    },
    /// Repair a received symbol file and write the codeword.
    Decode {
        #[arg(long, value_enum, default_value_t = Algo::First)]
        algo: Algo,
        /// Even probe bound for the second algorithm (defaults to t).
        #[arg(long)]
        t0: Option<usize>,
        /// Also write a CSV of the operation counts of this decode.
        #[arg(long, value_name = "FILE")]
        emit_counts: Option<String>,
        #[arg(long = "in", default_value = "-")]
        input: String,
        #[arg(long, default_value = "-")]
        out: String,
    },
    /// Emit the solver-complexity reproduction report.
    BenchTables {
        #[arg(long, default_value_t = 8)]
        m: u32,
        #[arg(long, default_value_t = 5)]
        mu: u32,
        /// Largest error count to evaluate.
        #[arg(long, default_value_t = 8)]
        e_max: usize,
        #[arg(long, value_enum, default_value_t = Format::Markdown)]
        format: Format,
    },
    /// Run the exhaustive small-code sweep and the invariant suite.
    Selftest,
}

enum CliError {
    /// Usage or IO problem: exit 1.
    Usage(String),
    /// The word could not be repaired: exit 2.
    Undecodable(String),
}

impl CliError {
    fn usage(msg: impl Into<String>) -> CliError {
        CliError::Usage(msg.into())
    }
}

fn core_err(e: rsfd_core::Error) -> CliError {
    use rsfd_core::Error as E;
    match e {
        E::Undecodable { .. }
        | E::InconsistentCount { .. }
        | E::ZeroDenominator { .. }
        | E::DegenerateInput(_)
        | E::ZeroInversion => CliError::Undecodable(e.to_string()),
        _ => CliError::Usage(e.to_string()),
    }
}

fn read_input(path: &str) -> Result<Vec<u8>, CliError> {
    if path == "-" {
        let mut buf = Vec::new();
        std::io::stdin()
            .read_to_end(&mut buf)
            .map_err(|e| CliError::usage(format!("stdin: {e}")))?;
        Ok(buf)
    } else {
        fs::read(path).map_err(|e| CliError::usage(format!("{path}: {e}")))
    }
}

fn write_output(path: &str, bytes: &[u8]) -> Result<(), CliError> {
    if path == "-" {
        std::io::stdout()
            .write_all(bytes)
            .map_err(|e| CliError::usage(format!("stdout: {e}")))
    } else {
        fs::write(path, bytes).map_err(|e| CliError::usage(format!("{path}: {e}")))
    }
}

fn context_for(m: u32, mu: u32) -> Result<RsContext, CliError> {
    let params = CodeParams::new(m, mu).map_err(core_err)?;
    RsContext::new(params).map_err(core_err)
}

fn cmd_encode(m: u32, mu: u32, input: &str, out: &str) -> Result<(), CliError> {
    let ctx = context_for(m, mu)?;
    let data = symfile::data_from_bytes(m, &read_input(input)?).map_err(CliError::Usage)?;
    let k = ctx.params().data_len();
    if data.len() != k {
        return Err(CliError::usage(format!(
            "expected exactly {k} data symbols, got {}",
            data.len()
        )));
    }
    let mut ctr = OpCounter::new();
    let cw = ctx.encode(&data, &mut ctr).map_err(core_err)?;
    write_output(out, &SymbolFile::new(ctx.params(), cw.symbols).to_bytes())
}

fn cmd_corrupt(
    errors: Option<usize>,
    pattern: Option<&str>,
    seed: u64,
    unsafe_positions: bool,
    emit_pattern: Option<&str>,
    input: &str,
    out: &str,
) -> Result<(), CliError> {
    let file = SymbolFile::parse(&read_input(input)?).map_err(CliError::Usage)?;
    let params = CodeParams::new(file.m, file.mu).map_err(core_err)?;
    if file.symbols.len() != params.n {
        return Err(CliError::usage(format!(
            "expected a full codeword of {} symbols, got {}",
            params.n,
            file.symbols.len()
        )));
    }
    let pat = match (errors, pattern) {
        (Some(count), None) => {
            if count > params.n {
                return Err(CliError::usage("more errors than positions"));
            }
            random_pattern(&params, count, seed, unsafe_positions)?
        }
        (None, Some(path)) => {
            let text = String::from_utf8(read_input(path)?)
                .map_err(|_| CliError::usage("pattern file is not UTF-8"))?;
            symfile::parse_pattern(&text, &params).map_err(CliError::Usage)?
        }
        _ => return Err(CliError::usage("pass exactly one of --errors or --pattern")),
    };
    let cw = rsfd_core::Codeword { symbols: file.symbols };
    let received = corrupt(&params, &cw, &pat, unsafe_positions).map_err(core_err)?;
    write_output(out, &SymbolFile::new(&params, received).to_bytes())
}

fn random_pattern(
    params: &CodeParams,
    count: usize,
    seed: u64,
    unsafe_positions: bool,
) -> Result<ErrorPattern, CliError> {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let lo = if unsafe_positions { 0 } else { 2 * params.t };
    let span = params.n - lo;
    if count > span {
        return Err(CliError::usage("more errors than admissible positions"));
    }
    let mut entries: Vec<(usize, Gf)> = Vec::with_capacity(count);
    while entries.len() < count {
        let idx = lo + (rng.next_u32() as usize) % span;
        if entries.iter().any(|&(i, _)| i == idx) {
            continue;
        }
        let val = 1 + (rng.next_u32() as usize) % (params.n - 1);
        entries.push((idx, Gf(val as u16)));
    }
    ErrorPattern::new(entries, params.n).map_err(core_err)
}

fn cmd_decode(
    algo: Algo,
    t0: Option<usize>,
    emit_counts: Option<&str>,
    input: &str,
    out: &str,
) -> Result<(), CliError> {
    let file = SymbolFile::parse(&read_input(input)?).map_err(CliError::Usage)?;
    let mut params = CodeParams::new(file.m, file.mu).map_err(core_err)?;
    if let Some(t0) = t0 {
        params = params.with_t0(t0).map_err(core_err)?;
    }
    if file.symbols.len() != params.n {
        return Err(CliError::usage(format!(
            "expected a received word of {} symbols, got {}",
            params.n,
            file.symbols.len()
        )));
    }
    let ctx = RsContext::new(params).map_err(core_err)?;
    let result = match algo {
        Algo::First => ctx.decode_first(&file.symbols),
        Algo::Second => ctx.decode_second(&file.symbols),
    }
    .map_err(core_err)?;
    if let Some(path) = emit_counts {
        let label = match algo {
            Algo::First => CountLabel::DecodeFirstMeasured,
            Algo::Second => CountLabel::DecodeSecondMeasured,
        };
        let rows = [CountRow {
            e: result.error_pattern.len(),
            label,
            mul: result.counters.mul,
            add: result.counters.add,
            inv: result.counters.inv,
            improvement_pct: None,
        }];
        write_output(path, opcount::emit_report(&rows, ReportFormat::Csv).as_bytes())?;
    }
    write_output(out, &SymbolFile::new(ctx.params(), result.codeword).to_bytes())
}

fn cmd_bench_tables(m: u32, mu: u32, e_max: usize, format: Format) -> Result<(), CliError> {
    let ctx = context_for(m, mu)?;
    let params = ctx.params().clone();
    if e_max == 0 || e_max > params.t {
        return Err(CliError::usage(format!("e-max must be in 1..={}", params.t)));
    }
    let formula = opcount::formula_rows(params.t, e_max);
    let mut rows = Vec::new();
    for e in 1..=e_max {
        rows.extend(formula.iter().filter(|r| r.e == e).cloned());
        rows.extend(
            opcount::measure_solver(&ctx, e, 3, 0xbe5c + e as u64).map_err(core_err)?,
        );
    }
    let fmt = match format {
        Format::Csv => ReportFormat::Csv,
        Format::Markdown => ReportFormat::Markdown,
    };
    let mut text = opcount::emit_report(&rows, fmt);
    if format == Format::Markdown {
        if let Some(reference) = opcount::reference_counts(params.n, params.k) {
            text.push_str(&render_reference(reference, &rows, e_max));
        }
    }
    print!("{text}");
    Ok(())
}

/// Side-by-side view of measured decode totals against the published
/// ones; informational only, the published totals use a different
/// syndrome transform.
fn render_reference(
    reference: &opcount::ReferenceCounts,
    rows: &[CountRow],
    e_max: usize,
) -> String {
    let mut out = String::from("\npublished multiplication counts for comparison:\n\n");
    out.push_str("| e | first (measured) | first (published) | second (measured) | second (published) |\n");
    out.push_str("|--:|-----------------:|------------------:|------------------:|-------------------:|\n");
    for e in 1..=e_max {
        let pick = |label: CountLabel| {
            rows.iter()
                .find(|r| r.e == e && r.label == label)
                .map(|r| r.mul.to_string())
                .unwrap_or_default()
        };
        let publ = |tbl: &[u64]| tbl.get(e - 1).map(u64::to_string).unwrap_or_default();
        out.push_str(&format!(
            "| {e} | {} | {} | {} | {} |\n",
            pick(CountLabel::DecodeFirstMeasured),
            publ(reference.decode_first_mul),
            pick(CountLabel::DecodeSecondMeasured),
            publ(reference.decode_second_mul),
        ));
    }
    out
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Encode { m, mu, input, out } => cmd_encode(m, mu, &input, &out),
        Command::Corrupt { errors, pattern, seed, unsafe_positions, input, out } => {
            cmd_corrupt(errors, pattern.as_deref(), seed, unsafe_positions, &input, &out)
        }
        Command::Decode { algo, t0, emit_counts, input, out } => {
            cmd_decode(algo, t0, emit_counts.as_deref(), &input, &out)
        }
        Command::BenchTables { m, mu, e_max, format } => cmd_bench_tables(m, mu, e_max, format),
        Command::Selftest => selftest::run().map_err(CliError::Usage),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("rsfd: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Undecodable(msg)) => {
            eprintln!("rsfd: {msg}");
            ExitCode::from(2)
        }
    }
}
