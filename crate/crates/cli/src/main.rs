//! `windfec`: build, exercise and verify sliding-window streaming erasure
//! codes from the command line.

// Packet loops index by time step, matching the core crate's convention.
#![allow(clippy::needless_range_loop)]

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use windfec_cli::bytepack;
use windfec_cli::dump;
use windfec_cli::msgfile;
use windfec_cli::trace::{self, TraceError, TraceReader};
use windfec_cli::FormatError;
use windfec_core::channel::{sample_sequence, SampleConfig, SlidingWindowSpec};
use windfec_core::construction::{capacity, derive_params, rate, CodeParams, CodeTables, ParamError};
use windfec_core::decoder::decode_block;
use windfec_core::gf::ExtElem;
use windfec_core::streaming::{Packet, StreamDecoder, StreamEncoder};
use windfec_core::verify::{verify_point, PointReport, VerifyError};

#[derive(Parser)]
#[command(
    name = "windfec",
    version,
    about = "Rate-optimal streaming erasure codes for sliding-window burst/arbitrary loss"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

/// The channel and delay parameters shared by most subcommands.
#[derive(Args, Clone, Copy)]
struct CodeArgs {
    /// Decoding delay T
    #[arg(long = "T")]
    t: usize,
    /// Maximum burst length B
    #[arg(long = "B")]
    b: usize,
    /// Maximum count of isolated erasures N
    #[arg(long = "N")]
    n: usize,
    /// Sliding-window length W (default T+1)
    #[arg(long = "W")]
    w: Option<usize>,
}

impl CodeArgs {
    fn params(&self) -> Result<CodeParams, AppError> {
        Ok(derive_params(self.t, self.b, self.n, self.w)?)
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Print n, k, p, rate and capacity for a parameter set
    Params(CodeArgs),
    /// Dump the full matrix family (G'', M, M⁻¹, G', G, G̃, H) as text
    Gen {
        #[command(flatten)]
        code: CodeArgs,
        /// Output file (stdout when absent)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Encode a message file into a packet trace
    Encode {
        #[command(flatten)]
        code: CodeArgs,
        /// Message file: k symbols `a+b*w` per line
        #[arg(long = "in")]
        input: PathBuf,
        /// Packet-trace output
        #[arg(long)]
        out: PathBuf,
    },
    /// Decode a packet trace, or a single-block symbol file with `?` marks
    Decode {
        /// Packet trace (self-describing) or block symbol file (needs
        /// --T/--B/--N)
        #[arg(long = "in")]
        input: PathBuf,
        /// Recovered message file (unrecovered symbols print as `?`)
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long = "T")]
        t: Option<usize>,
        #[arg(long = "B")]
        b: Option<usize>,
        #[arg(long = "N")]
        n: Option<usize>,
        #[arg(long = "W")]
        w: Option<usize>,
    },
    /// Run a seeded end-to-end simulation over the sampled loss channel
    Simulate {
        #[command(flatten)]
        code: CodeArgs,
        /// Number of messages to stream
        #[arg(long, default_value_t = 10_000)]
        len: usize,
        /// Seed for the message payloads
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Seed for the loss channel (defaults to --seed)
        #[arg(long)]
        loss_seed: Option<u64>,
        /// Probability of starting a loss event at an eligible step
        #[arg(long, default_value_t = 0.05)]
        loss_rate: f64,
        /// Probability that a loss event is a burst rather than isolated
        #[arg(long, default_value_t = 0.5)]
        loss_mix: f64,
        /// Optionally write the lossy packet trace
        #[arg(long)]
        out: Option<PathBuf>,
        /// Optionally write the sampled loss sequence as a '0'/'1' string
        #[arg(long)]
        loss_out: Option<PathBuf>,
    },
    /// Verify one parameter point, or a whole grid with --grid
    Verify {
        #[arg(long = "T")]
        t: Option<usize>,
        #[arg(long = "B")]
        b: Option<usize>,
        #[arg(long = "N")]
        n: Option<usize>,
        #[arg(long = "W")]
        w: Option<usize>,
        /// Verify every (T, B, N) with T up to this bound instead
        #[arg(long)]
        grid: Option<usize>,
    },
    /// Verify every (T, B, N) with T up to the grid bound
    Sweep {
        #[arg(long, default_value_t = 7)]
        grid: usize,
    },
    /// Pack raw bytes into a message file (base-p digits, length-prefixed)
    Pack {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Unpack a message file produced by `pack` back into raw bytes
    Unpack {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, thiserror::Error)]
enum AppError {
    #[error("{0}")]
    Param(#[from] ParamError),
    #[error("{path}: {err}")]
    Malformed { path: String, err: FormatError },
    #[error("{0}")]
    Guard(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Other(String),
}

impl AppError {
    fn exit_code(&self) -> u8 {
        match self {
            AppError::Param(_) => 2,
            AppError::Malformed { .. } => 3,
            AppError::Guard(_) => 4,
            AppError::Io(_) | AppError::Other(_) => 1,
        }
    }

    fn malformed(path: &Path, err: FormatError) -> Self {
        AppError::Malformed { path: path.display().to_string(), err }
    }

    fn from_trace(path: &Path, err: TraceError) -> Self {
        match err {
            TraceError::Io(e) => AppError::Io(e),
            TraceError::Malformed(e) => AppError::malformed(path, e),
        }
    }
}

impl From<VerifyError> for AppError {
    fn from(e: VerifyError) -> Self {
        AppError::Guard(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cmd: Cmd) -> Result<u8, AppError> {
    match cmd {
        Cmd::Params(code) => cmd_params(code),
        Cmd::Gen { code, out } => cmd_gen(code, out),
        Cmd::Encode { code, input, out } => cmd_encode(code, &input, &out),
        Cmd::Decode { input, out, t, b, n, w } => cmd_decode(&input, out, t, b, n, w),
        Cmd::Simulate { code, len, seed, loss_seed, loss_rate, loss_mix, out, loss_out } => {
            cmd_simulate(code, len, seed, loss_seed, loss_rate, loss_mix, out, loss_out)
        }
        Cmd::Verify { t, b, n, w, grid } => match (grid, t, b, n) {
            (Some(t_max), None, None, None) => cmd_sweep(t_max),
            (None, Some(t), Some(b), Some(n)) => {
                cmd_verify_point(derive_params(t, b, n, w)?)
            }
            _ => Err(AppError::Other(
                "verify needs either --T/--B/--N or --grid".to_string(),
            )),
        },
        Cmd::Sweep { grid } => cmd_sweep(grid),
        Cmd::Pack { code, input, out } => cmd_pack(code, &input, &out),
        Cmd::Unpack { code, input, out } => cmd_unpack(code, &input, &out),
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), AppError> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn cmd_params(code: CodeArgs) -> Result<u8, AppError> {
    let p = code.params()?;
    println!(
        "n={} k={} p={} rate={} capacity={}",
        p.block_len(),
        p.msg_len(),
        p.prime(),
        rate(&p),
        capacity(&p)
    );
    Ok(0)
}

fn cmd_gen(code: CodeArgs, out: Option<PathBuf>) -> Result<u8, AppError> {
    let tables = CodeTables::build(code.params()?);
    emit(out.as_deref(), &dump::write_tables(&tables))?;
    Ok(0)
}

fn cmd_encode(code: CodeArgs, input: &Path, out: &Path) -> Result<u8, AppError> {
    let params = code.params()?;
    let tables = CodeTables::build(params);
    let field = tables.field();
    let text = fs::read_to_string(input)?;
    let messages = msgfile::parse_messages(&text, field, params.msg_len())
        .map_err(|e| AppError::malformed(input, e))?;
    let mut bytes = Vec::new();
    trace::write_header(&mut bytes, &params, field)?;
    let mut enc = StreamEncoder::new(&tables);
    let zero = vec![field.zero(); params.msg_len()];
    // T flush packets so the last message's deadline falls inside the trace
    let total = messages.len() + params.delay();
    for i in 0..total {
        let msg = messages.get(i).unwrap_or(&zero);
        let packet = enc.encode_step(msg).expect("validated message length");
        trace::write_packet(&mut bytes, &params, &packet)?;
    }
    fs::write(out, &bytes)?;
    println!("messages={} packets={} trace={}", messages.len(), total, out.display());
    Ok(0)
}

fn symbols_line(symbols: &[Option<ExtElem>]) -> String {
    let toks: Vec<String> = symbols
        .iter()
        .map(|s| match s {
            Some(v) => v.to_string(),
            None => "?".to_string(),
        })
        .collect();
    toks.join(" ")
}

fn cmd_decode(
    input: &Path,
    out: Option<PathBuf>,
    t: Option<usize>,
    b: Option<usize>,
    n: Option<usize>,
    w: Option<usize>,
) -> Result<u8, AppError> {
    let bytes = fs::read(input)?;
    if trace::looks_like_trace(&bytes) {
        return decode_trace(input, &bytes, out);
    }
    // single-block symbol file: parameters must come from flags
    let (Some(t), Some(b), Some(n)) = (t, b, n) else {
        return Err(AppError::Other(
            "block symbol files need --T, --B and --N".to_string(),
        ));
    };
    let params = derive_params(t, b, n, w)?;
    let tables = CodeTables::build(params);
    let text = String::from_utf8(bytes)
        .map_err(|e| AppError::malformed(input, FormatError::new(e.utf8_error().valid_up_to() as u64, "not utf-8")))?;
    let block = msgfile::parse_block(&text, tables.field(), params.block_len())
        .map_err(|e| AppError::malformed(input, e))?;
    let report = decode_block(&tables, &block).map_err(|e| AppError::Other(e.to_string()))?;
    let mut text = String::new();
    writeln!(
        text,
        "block n={} k={} erased={}",
        params.block_len(),
        params.msg_len(),
        block.erased_pattern()
    )
    .unwrap();
    let mut symbols = Vec::new();
    for (l, entry) in report.entries().iter().enumerate() {
        match entry {
            Some(rec) => {
                writeln!(
                    text,
                    "u[{l}] = {} time={} deadline={} method={}",
                    rec.value,
                    rec.time,
                    params.deadline(l),
                    rec.method
                )
                .unwrap();
                symbols.push(Some(rec.value));
            }
            None => {
                writeln!(text, "u[{l}] unrecovered (deadline={})", params.deadline(l)).unwrap();
                symbols.push(None);
            }
        }
    }
    for wmsg in report.warnings() {
        writeln!(text, "warning: {wmsg}").unwrap();
    }
    print!("{text}");
    if let Some(path) = out {
        fs::write(path, format!("{}\n", symbols_line(&symbols)))?;
    }
    Ok(if report.all_recovered() { 0 } else { 1 })
}

fn decode_trace(input: &Path, bytes: &[u8], out: Option<PathBuf>) -> Result<u8, AppError> {
    let mut reader = TraceReader::new(bytes).map_err(|e| AppError::from_trace(input, e))?;
    let params = *reader.params();
    let tables = CodeTables::build(params);
    let mut dec = StreamDecoder::new(&tables);
    let mut emitted = Vec::new();
    let mut packets = 0usize;
    let mut lost = 0usize;
    loop {
        let record_at = reader.offset();
        let Some(packet) = reader.next_packet().map_err(|e| AppError::from_trace(input, e))?
        else {
            break;
        };
        packets += 1;
        lost += usize::from(packet.is_erased());
        let due = dec
            .decode_step(packet)
            .map_err(|e| AppError::malformed(input, FormatError::new(record_at, e.to_string())))?;
        emitted.extend(due);
    }
    let mut missed = 0usize;
    let mut max_delay = 0u64;
    let mut msg_text = String::new();
    println!(
        "T={} B={} N={} W={} n={} k={} p={}",
        params.delay(),
        params.max_burst(),
        params.max_isolated(),
        params.window(),
        params.block_len(),
        params.msg_len(),
        params.prime()
    );
    for m in &emitted {
        msg_text.push_str(&symbols_line(&m.symbols));
        msg_text.push('\n');
        match m.delay() {
            Some(d) => {
                max_delay = max_delay.max(d);
                println!("msg seq={} delay={d}", m.seq);
            }
            None => {
                missed += 1;
                println!("msg seq={} delay=miss", m.seq);
            }
        }
    }
    println!(
        "packets={packets} lost={lost} messages={} missed_deadlines={missed} max_delay={max_delay}",
        emitted.len()
    );
    if let Some(path) = out {
        fs::write(path, msg_text)?;
    }
    Ok(if missed == 0 { 0 } else { 1 })
}

#[allow(clippy::too_many_arguments)]
fn cmd_simulate(
    code: CodeArgs,
    len: usize,
    seed: u64,
    loss_seed: Option<u64>,
    loss_rate: f64,
    loss_mix: f64,
    out: Option<PathBuf>,
    loss_out: Option<PathBuf>,
) -> Result<u8, AppError> {
    let params = code.params()?;
    let tables = CodeTables::build(params);
    let field = tables.field();
    let spec = SlidingWindowSpec::from(&params);
    let cfg = SampleConfig { event_rate: loss_rate, burst_fraction: loss_mix };
    let total = len + params.delay();
    let losses = sample_sequence(&spec, total, loss_seed.unwrap_or(seed), &cfg);
    if let Some(path) = &loss_out {
        let text: String = losses.iter().map(|&e| if e { '1' } else { '0' }).collect();
        fs::write(path, format!("{text}\n"))?;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let messages: Vec<Vec<ExtElem>> = (0..len)
        .map(|_| {
            (0..params.msg_len())
                .map(|_| {
                    field.elem(
                        rng.random_range(0..field.prime() as u64),
                        rng.random_range(0..field.prime() as u64),
                    )
                })
                .collect()
        })
        .collect();

    let mut enc = StreamEncoder::new(&tables);
    let mut dec = StreamDecoder::new(&tables);
    let zero = vec![field.zero(); params.msg_len()];
    let mut trace_bytes = Vec::new();
    if out.is_some() {
        trace::write_header(&mut trace_bytes, &params, field)?;
    }
    let mut lost = 0usize;
    let mut missed = 0usize;
    let mut wrong = 0usize;
    let mut emitted = 0usize;
    let mut max_delay = 0u64;
    for i in 0..total {
        let msg = messages.get(i).unwrap_or(&zero);
        let mut packet = enc.encode_step(msg).expect("message lengths fixed");
        if losses[i] {
            packet = Packet::lost(packet.seq);
            lost += 1;
        }
        if out.is_some() {
            trace::write_packet(&mut trace_bytes, &params, &packet)?;
        }
        for m in dec.decode_step(packet).expect("in-order stream") {
            if (m.seq as usize) >= len {
                continue; // flush region
            }
            emitted += 1;
            match m.delay() {
                Some(d) => {
                    max_delay = max_delay.max(d);
                    if m.message().as_deref() != Some(&messages[m.seq as usize][..]) {
                        wrong += 1;
                    }
                }
                None => missed += 1,
            }
        }
    }
    if let Some(path) = out {
        fs::write(path, &trace_bytes)?;
    }
    println!(
        "T={} B={} N={} W={} n={} k={} p={}",
        params.delay(),
        params.max_burst(),
        params.max_isolated(),
        params.window(),
        params.block_len(),
        params.msg_len(),
        params.prime()
    );
    println!(
        "steps={len} lost_packets={lost} messages={emitted} missed_deadlines={missed} \
         wrong_values={wrong} max_delay={max_delay}"
    );
    Ok(if missed == 0 && wrong == 0 { 0 } else { 1 })
}

fn point_summary(report: &PointReport) -> String {
    let p = &report.params;
    let mut line = format!(
        "T={} B={} N={} n={} k={} p={}: ",
        p.delay(),
        p.max_burst(),
        p.max_isolated(),
        p.block_len(),
        p.msg_len(),
        p.prime()
    );
    if report.passed() {
        write!(
            line,
            "ok (conditions={}, patterns={}, checks={})",
            report.conditions.iter().filter(|c| !c.informational).count(),
            report.recovery.patterns,
            report.recovery.checks
        )
        .unwrap();
    } else {
        let failed: Vec<String> = report
            .conditions
            .iter()
            .filter(|c| !c.passed && !c.informational)
            .map(|c| c.name.clone())
            .collect();
        write!(
            line,
            "FAIL (conditions: {}; recovery failures: {})",
            if failed.is_empty() { "-".to_string() } else { failed.join(",") },
            report.recovery.failures.len()
        )
        .unwrap();
    }
    line
}

fn cmd_verify_point(params: CodeParams) -> Result<u8, AppError> {
    let report = verify_point(params)?;
    for c in &report.conditions {
        println!("{c}");
    }
    println!(
        "recovery: patterns={} checks={} failures={}",
        report.recovery.patterns,
        report.recovery.checks,
        report.recovery.failures.len()
    );
    for f in report.recovery.failures.iter().take(10) {
        println!("  {f}");
    }
    println!("{}", point_summary(&report));
    Ok(if report.passed() { 0 } else { 1 })
}

fn cmd_sweep(t_max: usize) -> Result<u8, AppError> {
    let points = windfec_core::verify::grid(t_max);
    // parallel verification; output strictly in parameter order
    let reports: Vec<Result<PointReport, VerifyError>> =
        points.par_iter().map(|p| verify_point(*p)).collect();
    let mut all_ok = true;
    for r in &reports {
        match r {
            Ok(report) => {
                println!("{}", point_summary(report));
                all_ok &= report.passed();
            }
            Err(e) => return Err((*e).into()),
        }
    }
    println!(
        "sweep: {} points, {}",
        points.len(),
        if all_ok { "all ok" } else { "FAILURES PRESENT" }
    );
    Ok(if all_ok { 0 } else { 1 })
}

fn cmd_pack(code: CodeArgs, input: &Path, out: &Path) -> Result<u8, AppError> {
    let params = code.params()?;
    let field = params.field();
    let data = fs::read(input)?;
    let mut symbols = bytepack::pack_bytes(&data, field);
    let k = params.msg_len();
    while !symbols.len().is_multiple_of(k) {
        symbols.push(field.zero());
    }
    let messages: Vec<Vec<ExtElem>> = symbols.chunks(k).map(<[ExtElem]>::to_vec).collect();
    fs::write(out, msgfile::write_messages(&messages))?;
    println!(
        "bytes={} symbols={} messages={} limbs_per_byte={}",
        data.len(),
        messages.len() * k,
        messages.len(),
        bytepack::limbs_per_byte(field.prime())
    );
    Ok(0)
}

fn cmd_unpack(code: CodeArgs, input: &Path, out: &Path) -> Result<u8, AppError> {
    let params = code.params()?;
    let field = params.field();
    let text = fs::read_to_string(input)?;
    let messages = msgfile::parse_messages(&text, field, params.msg_len())
        .map_err(|e| AppError::malformed(input, e))?;
    let symbols: Vec<ExtElem> = messages.concat();
    let data = bytepack::unpack_bytes(&symbols, field)
        .map_err(|e| AppError::malformed(input, e))?;
    fs::write(out, &data)?;
    println!("messages={} bytes={}", messages.len(), data.len());
    Ok(0)
}
