use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qkgr::seidel::{greedy_reduce, ReductionEnd, ReductionTrace};
use qkgr::verify::{combine, run_suite, SweepReport, SUITES};
use qkgr::{giambelli_lift_general, Error, GrContext, QkEngine, StructureIndex};
use serde::Serialize;

/// Exact products and structure constants in the quantum K-ring of Gr(k,n).
#[derive(Parser)]
#[command(name = "qkgr", version)]
struct Cli {
    /// Worker threads for sweeps (defaults to all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Emit JSON instead of human-readable text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Ring {
    #[arg(short)]
    k: usize,
    #[arg(short)]
    n: usize,
    /// q-adic truncation D; products are computed modulo q^(D+1).
    #[arg(long, env = "QKGR_TRUNC")]
    trunc: Option<usize>,
}

impl Ring {
    fn context(&self) -> Result<GrContext, Error> {
        match self.trunc {
            Some(d) => GrContext::with_trunc(self.k, self.n, d),
            None => GrContext::with_trunc(self.k, self.n, GrContext::min_trunc(self.k, self.n)),
        }
    }
}

#[derive(Args)]
struct Tuple {
    #[command(flatten)]
    ring: Ring,
    #[arg(long)]
    lhs: String,
    #[arg(long)]
    rhs: String,
    #[arg(long)]
    nu: String,
    #[arg(long, default_value_t = 0)]
    deg: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Expand O^lhs * O^rhs in the Schubert basis.
    Product {
        #[command(flatten)]
        ring: Ring,
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
    },
    /// The coefficient of q^deg O^nu in O^lhs * O^rhs.
    Constant(Tuple),
    /// Apply index reductions until the constant is classical or no rule applies.
    Reduce(Tuple),
    /// Run a consistency sweep.
    Verify {
        /// One of: seidel, pieri-equiv, gr3n-rule, dmin, reductions, positivity, duality,
        /// curve-nbhd, associativity.
        suite: String,
        /// Rank k; omitted means every 1 ≤ k < n (k = 3 for gr3n-rule).
        #[arg(short)]
        k: Option<usize>,
        #[arg(short)]
        n: usize,
        /// Sweep every n' from the smallest valid size up to n.
        #[arg(long)]
        upto: bool,
    },
    /// Print the full multiplication table.
    Table {
        #[command(flatten)]
        ring: Ring,
        /// CSV rows instead of JSON lines or text.
        #[arg(long)]
        csv: bool,
    },
}

enum Failure {
    Usage(String),
    Internal(String),
    Check,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_)
            | Error::InvalidPartition { .. }
            | Error::InvalidGrassmannian { .. }
            | Error::TruncationTooSmall { .. }
            | Error::Precondition(_) => Failure::Usage(e.to_string()),
            _ => Failure::Internal(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Internal(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Internal(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let mut out = io::stdout().lock();
    match &cli.command {
        Command::Product { ring, lhs, rhs } => {
            let ctx = ring.context()?;
            let (l, m) = (ctx.parse_partition(lhs)?, ctx.parse_partition(rhs)?);
            let prod = QkEngine::new(ctx)?.product_basis(&l, &m)?;
            if cli.json {
                writeln!(out, "{}", prod.to_json())?;
            } else {
                writeln!(out, "{prod}")?;
            }
        }
        Command::Constant(tuple) => {
            let (ctx, t) = parse_tuple(tuple)?;
            let value = QkEngine::new(ctx)?.structure_constant(&t)?;
            if cli.json {
                writeln!(out, "{}", serde_json::json!({ "index": t, "value": value }))?;
            } else {
                writeln!(out, "{t} = {value}")?;
            }
        }
        Command::Reduce(tuple) => {
            let (ctx, t) = parse_tuple(tuple)?;
            let trace = greedy_reduce(&ctx, &t);
            let values = trace_values(&ctx, &trace)?;
            print_trace(&mut out, cli.json, &trace, values)?;
        }
        Command::Verify { suite, k, n, upto } => {
            let report = verify(suite, *k, *n, *upto)?;
            if cli.json {
                writeln!(out, "{}", serde_json::to_string(&report).map_err(|e| Failure::Internal(e.to_string()))?)?;
            } else {
                let verdict = if report.passed() { "PASS" } else { "FAIL" };
                writeln!(out, "{}: {verdict} ({} checks, {} failures)", report.suite, report.checked, report.failures)?;
                writeln!(out, "rings: {}", report.rings.join(" "))?;
                if let Some(f) = &report.first_failure {
                    writeln!(out, "first failure: {f}")?;
                }
            }
            if !report.passed() {
                return Err(Failure::Check);
            }
        }
        Command::Table { ring, csv } => {
            let ctx = ring.context()?;
            let table = giambelli_lift_general(ctx)?;
            if *csv {
                table.write_csv(&mut out)?;
            } else if cli.json {
                table.write_json_lines(&mut out)?;
            } else {
                let basis = table.basis();
                for lam in 0..table.dim() {
                    for mu in lam..table.dim() {
                        writeln!(out, "O^{} * O^{} = {}", basis.get(lam), basis.get(mu), table.product_basis(lam, mu))?;
                    }
                }
            }
        }
    }
    Ok(())
}

fn parse_tuple(tuple: &Tuple) -> Result<(GrContext, StructureIndex), Failure> {
    let ctx = tuple.ring.context()?;
    let t = StructureIndex::new(
        ctx.parse_partition(&tuple.lhs)?,
        ctx.parse_partition(&tuple.rhs)?,
        ctx.parse_partition(&tuple.nu)?,
        tuple.deg,
    );
    Ok((ctx, t))
}

/// Largest basis for which `reduce` attaches engine values.
const ORACLE_DIM: usize = 500;

#[derive(Serialize)]
struct TraceValues {
    start: i64,
    last: i64,
}

fn trace_values(ctx: &GrContext, trace: &ReductionTrace) -> Result<Option<TraceValues>, Failure> {
    let dim = ctx.partitions().len();
    if dim > ORACLE_DIM {
        return Ok(None);
    }
    let ctx = GrContext::with_trunc(ctx.k(), ctx.n(), ctx.trunc().max(trace.start.d + 1))?;
    let engine = QkEngine::new(ctx)?;
    let last = match trace.end {
        ReductionEnd::Zero => 0,
        _ => engine.structure_constant(trace.last())?,
    };
    Ok(Some(TraceValues { start: engine.structure_constant(&trace.start)?, last }))
}

fn print_trace(
    out: &mut impl Write,
    json: bool,
    trace: &ReductionTrace,
    values: Option<TraceValues>,
) -> Result<(), Failure> {
    if json {
        let doc = serde_json::json!({ "trace": trace, "values": values });
        writeln!(out, "{doc}")?;
        return Ok(());
    }
    writeln!(out, "start: {}", trace.start)?;
    for (i, step) in trace.steps.iter().enumerate() {
        writeln!(out, "{:>3}. {:<20} {}", i + 1, step.rule, step.result)?;
    }
    match trace.end {
        ReductionEnd::Classical => writeln!(out, "end: classical")?,
        ReductionEnd::Zero => writeln!(out, "end: zero (negative degree)")?,
        ReductionEnd::Stuck => writeln!(out, "end: no rule applies")?,
    }
    if let Some(v) = values {
        match trace.end {
            ReductionEnd::Classical => writeln!(out, "classical value: {}", v.last)?,
            _ => writeln!(out, "oracle value: {}", v.start)?,
        }
        if v.start != v.last {
            writeln!(out, "warning: reduction changed the value from {} to {}", v.start, v.last)?;
            return Err(Failure::Check);
        }
    }
    Ok(())
}

fn verify(suite: &str, k: Option<usize>, n: usize, upto: bool) -> Result<SweepReport, Failure> {
    if !SUITES.contains(&suite) {
        return Err(Failure::Usage(format!("unknown suite {suite:?}; expected one of {}", SUITES.join(", "))));
    }
    let sizes: Vec<usize> = if upto { (2..=n).collect() } else { vec![n] };
    let mut rings = Vec::new();
    for n in sizes {
        match (k, suite) {
            (Some(k), _) => rings.push((k, n)),
            (None, "gr3n-rule") if n >= 4 => rings.push((3, n)),
            (None, "gr3n-rule") => {}
            (None, _) => rings.extend((1..n).map(|k| (k, n))),
        }
    }
    if rings.is_empty() {
        return Err(Failure::Usage(format!("no Grassmannian to sweep for {suite} with n = {n}")));
    }
    let mut reports = Vec::with_capacity(rings.len());
    for (k, n) in rings {
        let ctx = GrContext::with_trunc(k, n, GrContext::min_trunc(k, n))?;
        reports.push(run_suite(suite, ctx)?);
    }
    Ok(combine(reports))
}
