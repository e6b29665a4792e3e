//! Command-line front end: build envelopes, run certification suites, dump
//! bases and matrix-unit tables.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use rectenv::envelope::{self, BuildOptions};
use rectenv::pipeline::{self, Suite, VerifyConfig};
use rectenv::report::{Certificate, Summary};

#[derive(Parser)]
#[command(name = "rectenv", version, about = "Exact envelope engine for the rectangular-matrix Jordan triple system", long_about = None)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the envelope and run the certification suites.
    Verify(VerifyArgs),
    /// Build the envelope and list the normal-word basis, one word per line.
    Basis(CommonArgs),
    /// Build the envelope and dump the matrix-unit expressions (raw and
    /// normal form).
    Units(CommonArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Number of rows.
    #[arg(long = "p")]
    p: usize,
    /// Number of columns.
    #[arg(long = "q")]
    q: usize,
    /// Degree bound for completion.
    #[arg(long, default_value_t = envelope::DEFAULT_MAX_DEGREE)]
    max_degree: usize,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Admit p = q or one-row/one-column shapes; theorem-level assertions
    /// are disabled for such shapes.
    #[arg(long)]
    allow_unproven: bool,
    /// Seed for the randomized property suites.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the report to a file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Report real elapsed times instead of zeros (output is then no longer
    /// byte-reproducible).
    #[arg(long)]
    timings: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Certificate suite to run.
    #[arg(long, value_enum, default_value_t = SuiteArg::All)]
    suite: SuiteArg,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    All,
    Lemma,
    Corollary,
    Units,
    Center,
    Iso,
    Props,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::All => Suite::All,
            SuiteArg::Lemma => Suite::Lemma,
            SuiteArg::Corollary => Suite::Corollary,
            SuiteArg::Units => Suite::Units,
            SuiteArg::Center => Suite::Center,
            SuiteArg::Iso => Suite::Iso,
            SuiteArg::Props => Suite::Props,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn open_sink(out: &Option<PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Verify(args) => cmd_verify(args),
        Command::Basis(args) => cmd_basis(args),
        Command::Units(args) => cmd_units(args),
    }
}

fn build_options(args: &CommonArgs) -> BuildOptions {
    BuildOptions {
        max_degree: args.max_degree,
        basis_cap: envelope::DEFAULT_BASIS_CAP,
        allow_unproven: args.allow_unproven,
    }
}

fn emit_certificate(
    sink: &mut dyn Write,
    format: Format,
    timings: bool,
    cert: &Certificate,
) -> io::Result<()> {
    let mut cert = cert.clone();
    if !timings {
        cert.elapsed_ms = 0;
    }
    match format {
        Format::Json => {
            writeln!(sink, "{}", serde_json::to_string(&cert).expect("serialize"))
        }
        Format::Text => {
            let verdict = if cert.pass { "PASS" } else { "FAIL" };
            writeln!(
                sink,
                "{verdict} {} instances={} failures={} elapsed_ms={}",
                cert.id,
                cert.instances_checked,
                cert.failures.len(),
                cert.elapsed_ms
            )?;
            for w in &cert.failures {
                writeln!(sink, "  witness: {w}")?;
            }
            Ok(())
        }
    }
}

fn emit_summary(sink: &mut dyn Write, format: Format, summary: &Summary) -> io::Result<()> {
    match format {
        Format::Json => writeln!(
            sink,
            "{}",
            serde_json::to_string(summary).expect("serialize")
        ),
        Format::Text => {
            let dim = summary
                .dimension
                .map_or("-".to_string(), |d| d.to_string());
            writeln!(
                sink,
                "summary: p={} q={} dimension={} status={}",
                summary.p, summary.q, dim, summary.status
            )
        }
    }
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode, String> {
    let common = &args.common;
    let cfg = VerifyConfig {
        p: common.p,
        q: common.q,
        options: build_options(common),
        suite: args.suite.into(),
        seed: common.seed,
        jts_samples: pipeline::DEFAULT_JTS_SAMPLES,
        nf_samples: pipeline::DEFAULT_NF_SAMPLES,
    };
    let outcome = pipeline::verify(&cfg).map_err(|e| e.to_string())?;
    let mut sink = open_sink(&common.out).map_err(|e| e.to_string())?;
    if common.format == Format::Text && common.allow_unproven {
        let theorem_mode = outcome
            .context
            .as_ref()
            .is_some_and(|ctx| ctx.theorem_mode);
        if !theorem_mode {
            writeln!(sink, "# theorem assertions disabled").map_err(|e| e.to_string())?;
        }
    }
    for cert in &outcome.certificates {
        emit_certificate(&mut sink, common.format, common.timings, cert)
            .map_err(|e| e.to_string())?;
    }
    emit_summary(&mut sink, common.format, &outcome.summary).map_err(|e| e.to_string())?;
    sink.flush().map_err(|e| e.to_string())?;
    Ok(if outcome.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

/// Shape errors are usage errors (Err, exit 2); completion or basis
/// failures are reported failures (Ok(1)).
fn build_context(
    common: &CommonArgs,
) -> Result<Result<rectenv::envelope::EnvelopeContext, ExitCode>, String> {
    match envelope::build_with(common.p, common.q, build_options(common)) {
        Ok(ctx) => Ok(Ok(ctx)),
        Err(err @ envelope::BuildError::InvalidShape { .. }) => Err(err.to_string()),
        Err(err) => {
            eprintln!("error: {err}");
            Ok(Err(ExitCode::from(1)))
        }
    }
}

fn cmd_basis(args: CommonArgs) -> Result<ExitCode, String> {
    let ctx = match build_context(&args)? {
        Ok(ctx) => ctx,
        Err(code) => return Ok(code),
    };
    let mut sink = open_sink(&args.out).map_err(|e| e.to_string())?;
    if !ctx.theorem_mode {
        writeln!(sink, "# theorem assertions disabled").map_err(|e| e.to_string())?;
    }
    for w in ctx.basis.words() {
        writeln!(sink, "{w}").map_err(|e| e.to_string())?;
    }
    sink.flush().map_err(|e| e.to_string())?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_units(args: CommonArgs) -> Result<ExitCode, String> {
    let ctx = match build_context(&args)? {
        Ok(ctx) => ctx,
        Err(code) => return Ok(code),
    };
    let units = match envelope::matrix_units(&ctx) {
        Ok(units) => units,
        Err(e) => {
            eprintln!("error: {e}");
            return Ok(ExitCode::from(1));
        }
    };
    let mut sink = open_sink(&args.out).map_err(|e| e.to_string())?;
    if !ctx.theorem_mode {
        writeln!(sink, "# theorem assertions disabled").map_err(|e| e.to_string())?;
    }
    for u in units.iter() {
        writeln!(sink, "A[{},{}] = {}", u.row, u.col, u.raw).map_err(|e| e.to_string())?;
        writeln!(sink, "  nf = {}", u.nf).map_err(|e| e.to_string())?;
    }
    sink.flush().map_err(|e| e.to_string())?;
    Ok(ExitCode::SUCCESS)
}
