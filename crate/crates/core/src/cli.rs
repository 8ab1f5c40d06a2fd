//! Command-line front end.
//!
//! Exit status: 0 on success, 2 for usage and validation errors, 3 when a
//! strand cannot be recovered.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use crate::capacity::{capacity, max_entropic_chain};
use crate::codec::{
    bits_from_hex, bits_to_hex, budget_for_rounds, bytes_to_bits, parse_strand,
    synthesis_time_bound, write_strand, BoundMode, EccKind, Pipeline, PipelineConfig,
};
use crate::error::{Error, Result};
use crate::graph::{Alphabet, GraphProfile, SynthesisGraph};
use crate::quantizer::{design_binomial, design_poisson, DesignFile, PoissonStop, QuantizerDesign};
use crate::sim::{
    lambda1_csv, lambda1_table, rate_curve, rate_curve_csv, sig9, simulate, Family, RateCurveSpec,
    SimulationConfig, SweepParam,
};

#[derive(Parser, Debug)]
#[command(
    name = "prdna",
    version,
    about = "Precision-resolution coding for terminator-free DNA synthesis"
)]
struct Cli {
    /// Extra diagnostics on stderr.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Capacity and max-entropic chain of a synthesis graph.
    Capacity(CapacityArgs),
    /// Design a run-length quantizer.
    Design {
        #[command(subcommand)]
        family: DesignCommand,
    },
    /// Achievable rate over a parameter sweep, as CSV.
    RateCurve(RateCurveArgs),
    /// Encode a payload into a strand schedule file.
    Encode(EncodeArgs),
    /// Decode a strand schedule file back to the payload.
    Decode(DecodeArgs),
    /// Run payloads through the noisy multi-copy channel.
    Simulate(SimulateArgs),
}

#[derive(Args, Debug, Clone)]
struct GraphArgs {
    /// Graph profile JSON.
    #[arg(long, conflicts_with_all = ["design", "menu"])]
    graph: Option<PathBuf>,
    /// Use the durations of a design JSON as the menu.
    #[arg(long, conflicts_with = "menu")]
    design: Option<PathBuf>,
    /// Alphabet size.
    #[arg(long, default_value_t = 4)]
    q: usize,
    /// Comma-separated durations shared by every letter pair.
    #[arg(long, value_delimiter = ',')]
    menu: Vec<f64>,
    /// Maximal duration; defaults to the longest menu entry.
    #[arg(long = "M")]
    max_duration: Option<f64>,
    /// Fractional durations are multiplied by this and rounded before coding.
    #[arg(long, default_value_t = 10)]
    denominator: u32,
}

impl GraphArgs {
    fn build(&self) -> Result<SynthesisGraph> {
        if let Some(path) = &self.graph {
            let profile: GraphProfile = serde_json::from_str(&read(path)?)?;
            return SynthesisGraph::from_profile(&profile);
        }
        let menu = match &self.design {
            Some(path) => read_design(path)?.durations,
            None if self.menu.is_empty() => {
                return Err(Error::param(
                    "--menu",
                    "(none)",
                    "a duration list such as --menu 1,2, or --graph/--design",
                ))
            }
            None => self.menu.clone(),
        };
        let m = self
            .max_duration
            .unwrap_or_else(|| menu.iter().cloned().fold(1.0, f64::max));
        SynthesisGraph::uniform(Alphabet::with_size(self.q)?, &menu, m)
    }

    /// Integer-duration graph for coding, rescaling fractional menus.
    fn integral(&self, verbose: u8, err: &mut dyn Write) -> Result<SynthesisGraph> {
        let g = self.build()?;
        if g.is_integral() {
            return Ok(g);
        }
        if verbose > 0 {
            let _ = writeln!(
                err,
                "rescaling fractional durations by {}",
                self.denominator
            );
        }
        g.rescaled(self.denominator)
    }
}

#[derive(Args, Debug)]
struct CapacityArgs {
    #[command(flatten)]
    graph: GraphArgs,
    /// Print JSON instead of text.
    #[arg(long)]
    json: bool,
    /// Also write the JSON result here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum DesignCommand {
    /// Binomial(t, p) run lengths.
    Binomial {
        #[arg(long)]
        p: f64,
        #[arg(long)]
        delta: f64,
        #[arg(long = "N", default_value_t = 1)]
        copies: usize,
        #[arg(long = "M", default_value_t = 10)]
        max_duration: u64,
        #[command(flatten)]
        output: DesignOutput,
    },
    /// Poisson run lengths with rates growing as the square of the duration.
    Poisson {
        #[arg(long)]
        delta: f64,
        #[arg(long = "N", default_value_t = 1)]
        copies: usize,
        /// Number of levels.
        #[arg(long, default_value_t = 10)]
        ell: usize,
        /// Also stop before durations exceed this.
        #[arg(long = "M")]
        max_duration: Option<f64>,
        #[command(flatten)]
        output: DesignOutput,
    },
}

#[derive(Args, Debug)]
struct DesignOutput {
    /// Write the design JSON here and print the table on stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Skip the table.
    #[arg(long)]
    quiet: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FamilyArg {
    Binomial,
    Poisson,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SweepArg {
    P,
    Delta,
    #[value(name = "N")]
    Copies,
}

#[derive(Args, Debug)]
struct RateCurveArgs {
    #[arg(value_enum)]
    family: FamilyArg,
    /// Swept parameter; defaults to p (Binomial) or N (Poisson).
    #[arg(long, value_enum)]
    sweep: Option<SweepArg>,
    /// Comma-separated sweep values.
    #[arg(long, value_delimiter = ',')]
    values: Vec<f64>,
    /// Sweep `from:to:step` instead of listing values.
    #[arg(long, conflicts_with = "values")]
    range: Option<String>,
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    #[arg(long, default_value_t = 0.02)]
    delta: f64,
    #[arg(long = "N", default_value_t = 1)]
    copies: usize,
    #[arg(long = "M", default_value_t = 10.0)]
    max_duration: f64,
    #[arg(long, default_value_t = 10)]
    ell_max: usize,
    #[arg(long, default_value_t = 4)]
    q: usize,
    /// CSV destination; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Poisson only: write the lambda_1 table for the swept (or 1..=10) copy counts.
    #[arg(long)]
    lambda1_out: Option<PathBuf>,
    /// Worker threads (0 = all cores).
    #[arg(long, default_value_t = 0)]
    jobs: usize,
}

#[derive(Args, Debug, Clone)]
struct CodingArgs {
    /// Time budget of the payload part of the schedule.
    #[arg(long = "T", conflicts_with = "rounds")]
    budget: Option<u64>,
    /// Pick T so that about this many payload rounds are written.
    #[arg(long)]
    rounds: Option<usize>,
    #[arg(long, default_value_t = 0.02)]
    delta: f64,
    /// Multiplier c on sqrt(s) in the correctable radius.
    #[arg(long, default_value_t = 3.0)]
    margin: f64,
    #[arg(long, default_value = "reed-solomon")]
    ecc: EccKind,
}

impl CodingArgs {
    fn budget(&self, graph: &SynthesisGraph, payload_bits: Option<usize>) -> Result<u64> {
        match (self.budget, self.rounds) {
            (Some(t), _) => Ok(t),
            (None, Some(s)) => budget_for_rounds(graph, s),
            (None, None) => match payload_bits {
                Some(k) => smallest_budget(graph, k),
                None => Err(Error::param(
                    "--T",
                    "(none)",
                    "a time budget via --T or --rounds",
                )),
            },
        }
    }
}

/// Smallest `T` whose schedule count covers `bits` from every start letter.
fn smallest_budget(graph: &SynthesisGraph, bits: usize) -> Result<u64> {
    let cap = capacity(graph)?.capacity;
    if cap <= 0.0 {
        return Err(Error::param("graph", "capacity 0", "positive capacity"));
    }
    let mut t = (bits as f64 / cap).floor() as u64;
    loop {
        let codec = crate::codec::EnumerativeCodec::new(graph, t)?;
        if (0..graph.q()).all(|s| codec.payload_capacity(s) >= bits) {
            return Ok(t);
        }
        t += 1;
    }
}

#[derive(Args, Debug)]
struct EncodeArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[command(flatten)]
    coding: CodingArgs,
    /// Payload as hex digits.
    #[arg(long, conflicts_with = "input")]
    hex: Option<String>,
    /// Payload as a raw byte file.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Letter that precedes the strand.
    #[arg(long)]
    start: Option<String>,
    /// Schedule file destination; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also export the strand as JSON.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct DecodeArgs {
    #[command(flatten)]
    graph: GraphArgs,
    /// Schedule file to read.
    #[arg(long)]
    input: PathBuf,
    /// Write the payload bytes here instead of printing hex.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SimulateArgs {
    /// Quantizer design JSON; its durations form the menu.
    #[arg(long)]
    design: PathBuf,
    #[arg(long, default_value_t = 4)]
    q: usize,
    #[arg(long, default_value_t = 10)]
    denominator: u32,
    #[arg(long = "T", conflicts_with = "rounds")]
    budget: Option<u64>,
    #[arg(long, default_value_t = 500)]
    rounds: usize,
    #[arg(long, default_value_t = 3.0)]
    margin: f64,
    #[arg(long, default_value = "reed-solomon")]
    ecc: EccKind,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    /// Falls back to PRDNA_SEED, then to a random seed that is reported.
    #[arg(long, env = "PRDNA_SEED")]
    seed: Option<u64>,
    /// Fixed payload (hex); uniform random payloads otherwise.
    #[arg(long)]
    hex: Option<String>,
    #[arg(long)]
    start: Option<String>,
    /// Fail trials whose parity runs vanish in every copy.
    #[arg(long)]
    strict_framing: bool,
    /// Worker threads (0 = all cores).
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// Report destination; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Dump the channel trace of trial 0 as JSON.
    #[arg(long)]
    trace: Option<PathBuf>,
}

/// Runs the CLI with process stdout and stderr.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    run_with(
        argv,
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    )
}

pub fn run_with<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    match dispatch(&cli, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::Unrecoverable(_) => 3,
                _ => 2,
            }
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    match &cli.command {
        Command::Capacity(a) => cmd_capacity(a, out),
        Command::Design { family } => cmd_design(family, out, err),
        Command::RateCurve(a) => cmd_rate_curve(a, out),
        Command::Encode(a) => cmd_encode(a, cli.verbose, out, err),
        Command::Decode(a) => cmd_decode(a, cli.verbose, out, err),
        Command::Simulate(a) => cmd_simulate(a, cli.verbose, out, err),
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &[u8]) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn read_design(path: &Path) -> Result<QuantizerDesign> {
    let file: DesignFile = serde_json::from_str(&read(path)?)?;
    QuantizerDesign::from_file(&file)
}

/// Every float rounded to 9 significant digits.
fn rounded_json<T: Serialize>(value: &T) -> Result<String> {
    fn round(v: &mut Value) {
        match v {
            Value::Number(n) if n.is_f64() => {
                if let Some(x) = n
                    .as_f64()
                    .and_then(|x| serde_json::Number::from_f64(sig9(x)))
                {
                    *n = x;
                }
            }
            Value::Array(items) => items.iter_mut().for_each(round),
            Value::Object(map) => map.values_mut().for_each(round),
            _ => {}
        }
    }
    let mut v = serde_json::to_value(value)?;
    round(&mut v);
    Ok(serde_json::to_string_pretty(&v)? + "\n")
}

fn letter(alphabet: &Alphabet, name: Option<&str>) -> Result<usize> {
    match name {
        None => Ok(0),
        Some(n) => alphabet.index_of(n).ok_or_else(|| {
            Error::param(
                "--start",
                n,
                format!("one of {}", alphabet.names().join(",")),
            )
        }),
    }
}

#[derive(Serialize)]
struct CapacityReport {
    capacity: f64,
    perron_root: f64,
    right_vector: Vec<f64>,
    left_vector: Vec<f64>,
    alpha: f64,
    mean_round_duration: f64,
    stationary: Vec<f64>,
}

fn cmd_capacity(a: &CapacityArgs, out: &mut dyn Write) -> Result<()> {
    let g = a.graph.build()?;
    let cap = capacity(&g)?;
    let chain = max_entropic_chain(&g, &cap);
    let report = CapacityReport {
        capacity: cap.capacity,
        perron_root: cap.perron_root,
        right_vector: cap.right_vector.clone(),
        left_vector: cap.left_vector.clone(),
        alpha: chain.alpha,
        mean_round_duration: chain.mean_round_duration,
        stationary: chain.stationary.clone(),
    };
    let json = rounded_json(&report)?;
    if let Some(path) = &a.out {
        write_file(path, json.as_bytes())?;
    }
    if a.json {
        out.write_all(json.as_bytes())?;
    } else {
        writeln!(out, "capacity_bits_per_time {}", sig9(report.capacity))?;
        writeln!(out, "perron_root {}", sig9(report.perron_root))?;
        writeln!(out, "alpha {}", sig9(report.alpha))?;
        writeln!(
            out,
            "mean_round_duration {}",
            sig9(report.mean_round_duration)
        )?;
    }
    Ok(())
}

fn cmd_design(family: &DesignCommand, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    let (design, output) = match family {
        DesignCommand::Binomial {
            p,
            delta,
            copies,
            max_duration,
            output,
        } => (design_binomial(*p, *delta, *copies, *max_duration)?, output),
        DesignCommand::Poisson {
            delta,
            copies,
            ell,
            max_duration,
            output,
        } => {
            let stop = match max_duration {
                Some(m) => PoissonStop::LevelsWithin {
                    levels: *ell,
                    max_duration: *m,
                },
                None => PoissonStop::Levels(*ell),
            };
            (design_poisson(*delta, *copies, stop)?, output)
        }
    };
    let json = rounded_json(&design.to_file())?;
    match &output.out {
        Some(path) => {
            write_file(path, json.as_bytes())?;
            if !output.quiet {
                out.write_all(design.table().as_bytes())?;
            }
        }
        None => {
            out.write_all(json.as_bytes())?;
            if !output.quiet {
                err.write_all(design.table().as_bytes())?;
            }
        }
    }
    Ok(())
}

fn parse_range(s: &str) -> Result<Vec<f64>> {
    let parts: Vec<f64> = s
        .split(':')
        .map(|x| {
            x.trim()
                .parse()
                .map_err(|_| Error::param("--range", s, "from:to:step"))
        })
        .collect::<Result<_>>()?;
    let [from, to, step] = parts[..] else {
        return Err(Error::param("--range", s, "from:to:step"));
    };
    if !step.is_finite() || step <= 0.0 || to < from {
        return Err(Error::param("--range", s, "from <= to and step > 0"));
    }
    let n = ((to - from) / step + 1e-9).floor() as usize;
    Ok((0..=n).map(|i| sig9(from + i as f64 * step)).collect())
}

fn pool(jobs: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::param("--jobs", jobs, e.to_string()))
}

fn cmd_rate_curve(a: &RateCurveArgs, out: &mut dyn Write) -> Result<()> {
    let family = match a.family {
        FamilyArg::Binomial => Family::Binomial,
        FamilyArg::Poisson => Family::Poisson,
    };
    let sweep = match (a.sweep, family) {
        (Some(SweepArg::P), Family::Poisson) => {
            return Err(Error::param(
                "--sweep",
                "p",
                "delta or N for Poisson run lengths",
            ))
        }
        (Some(SweepArg::P), _) | (None, Family::Binomial) => SweepParam::P,
        (Some(SweepArg::Delta), _) => SweepParam::Delta,
        (Some(SweepArg::Copies), _) | (None, Family::Poisson) => SweepParam::Copies,
    };
    let values = match (&a.range, a.values.is_empty()) {
        (Some(r), _) => parse_range(r)?,
        (None, false) => a.values.clone(),
        (None, true) => match sweep {
            SweepParam::P => parse_range("0.05:0.95:0.05")?,
            SweepParam::Delta => vec![0.01, 0.02, 0.05, 0.1, 0.2],
            SweepParam::Copies => (1..=10).map(f64::from).collect(),
        },
    };
    let spec = RateCurveSpec {
        family,
        p: a.p,
        delta: a.delta,
        copies: a.copies,
        max_duration: a.max_duration,
        ell_max: a.ell_max,
        q: a.q,
        sweep,
        values: values.clone(),
    };
    let rows = pool(a.jobs)?.install(|| rate_curve(&spec))?;
    let csv = rate_curve_csv(&rows);
    match &a.out {
        Some(path) => write_file(path, csv.as_bytes())?,
        None => out.write_all(csv.as_bytes())?,
    }
    if let Some(path) = &a.lambda1_out {
        if family != Family::Poisson {
            return Err(Error::param(
                "--lambda1-out",
                path.display(),
                "Poisson rate curves only",
            ));
        }
        let copies: Vec<usize> = match sweep {
            SweepParam::Copies => {
                let mut c: Vec<usize> = values.iter().map(|&v| v as usize).collect();
                c.sort_unstable();
                c
            }
            _ => (1..=10).collect(),
        };
        write_file(
            path,
            lambda1_csv(a.delta, &lambda1_table(a.delta, &copies)?).as_bytes(),
        )?;
    }
    Ok(())
}

fn cmd_encode(a: &EncodeArgs, verbose: u8, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    let bits = match (&a.hex, &a.input) {
        (Some(h), _) => bits_from_hex(h)?,
        (None, Some(path)) => bytes_to_bits(&std::fs::read(path)?),
        (None, None) => {
            return Err(Error::param(
                "--hex",
                "(none)",
                "a payload via --hex or --input",
            ))
        }
    };
    let graph = a.graph.integral(verbose, err)?;
    let start = letter(graph.alphabet(), a.start.as_deref())?;
    let budget = a.coding.budget(&graph, Some(bits.len()))?;
    let config = PipelineConfig {
        delta: a.coding.delta,
        margin: a.coding.margin,
        ecc: a.coding.ecc,
    };
    let pipeline = Pipeline::new(&graph, budget, config)?;
    let strand = pipeline.encode(&bits, start)?;
    let text = write_strand(&strand, graph.alphabet());
    match &a.out {
        Some(path) => write_file(path, text.as_bytes())?,
        None => out.write_all(text.as_bytes())?,
    }
    if let Some(path) = &a.json {
        write_file(path, rounded_json(&strand)?.as_bytes())?;
    }
    let h = &strand.header;
    let cap = capacity(&graph)?;
    let alpha = max_entropic_chain(&graph, &cap).alpha;
    let bound = synthesis_time_bound(
        h.payload_bits as f64,
        cap.capacity,
        alpha,
        h.delta,
        h.ell.max(2),
        h.q,
        BoundMode::WorstCase,
    )
    .map(sig9)
    .map_or_else(|_| "n/a".to_string(), |b| b.to_string());
    writeln!(
        err,
        "encoded {} bits (up to {}) at T = {}: {} payload rounds + {} parity runs, synthesis time {} (asymptotic bound {})",
        h.payload_bits,
        pipeline.payload_capacity(start),
        h.budget,
        h.payload_rounds,
        h.redundancy_rounds,
        sig9(strand.synthesis_time(&graph)),
        bound
    )?;
    Ok(())
}

fn cmd_decode(a: &DecodeArgs, verbose: u8, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    let graph = a.graph.integral(verbose, err)?;
    let strand = parse_strand(&read(&a.input)?, graph.alphabet())?;
    let h = &strand.header;
    let config = PipelineConfig {
        delta: h.delta,
        margin: h.margin,
        ecc: h.ecc,
    };
    let bits = Pipeline::new(&graph, h.budget, config)?.decode(&strand)?;
    match &a.out {
        Some(path) => {
            if bits.len() % 8 != 0 {
                return Err(Error::param(
                    "--out",
                    path.display(),
                    "a payload of whole bytes (use hex output)",
                ));
            }
            let bytes: Vec<u8> = bits
                .chunks(8)
                .map(|c| c.iter().fold(0u8, |acc, &b| acc << 1 | b as u8))
                .collect();
            write_file(path, &bytes)?;
        }
        None => writeln!(out, "{}", bits_to_hex(&bits))?,
    }
    Ok(())
}

fn cmd_simulate(
    a: &SimulateArgs,
    verbose: u8,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<()> {
    let design = read_design(&a.design)?;
    let graph = GraphArgs {
        graph: None,
        design: Some(a.design.clone()),
        q: a.q,
        menu: Vec::new(),
        max_duration: Some(design.max_duration.max(*design.durations.last().unwrap())),
        denominator: a.denominator,
    }
    .integral(verbose, err)?;
    let budget = match a.budget {
        Some(t) => t,
        None => budget_for_rounds(&graph, a.rounds)?,
    };
    let seed = match a.seed {
        Some(s) => s,
        None => {
            let s = rand::random::<u64>();
            writeln!(err, "seed {s}")?;
            s
        }
    };
    let config = PipelineConfig {
        delta: design.delta,
        margin: a.margin,
        ecc: a.ecc,
    };
    let pipeline = Pipeline::new(&graph, budget, config)?;
    let start = letter(graph.alphabet(), a.start.as_deref())?;
    let payload = a.hex.as_deref().map(bits_from_hex).transpose()?;
    if let Some(path) = &a.trace {
        let bits = payload
            .clone()
            .unwrap_or_else(|| vec![false; pipeline.payload_capacity(start)]);
        let strand = pipeline.encode(&bits, start)?;
        let trace = crate::sim::synthesize(&strand.schedule, &design, seed)?;
        write_file(path, rounded_json(&trace)?.as_bytes())?;
    }
    let sim = SimulationConfig {
        trials: a.trials,
        seed,
        start,
        payload,
        strict_framing: a.strict_framing,
        jobs: a.jobs,
    };
    if verbose > 0 {
        writeln!(err, "T = {budget}, {} trials", a.trials)?;
    }
    let report = simulate(&pipeline, &design, &sim)?;
    let json = rounded_json(&report)?;
    match &a.out {
        Some(path) => write_file(path, json.as_bytes())?,
        None => out.write_all(json.as_bytes())?,
    }
    Ok(())
}
