use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use irratio_core::bounds::{
    bounds_table, decompose_dimension, min_degree, render_rows, render_table,
};
use irratio_core::poly::GVariant;
use irratio_core::squareclass::{BStatus, SquareClass};
use irratio_core::symbol::{certify_alpha_nonzero, ResidueVerdict, Symbol};
use irratio_core::witness::{
    build_witness, read_certificate, verify_certificate, write_certificate_atomic, VerifyVerdict,
    WitnessParams, DEFAULT_SAMPLES, DEFAULT_SEED,
};

const EXIT_USAGE: u8 = 1;
const EXIT_FAIL: u8 = 2;
const EXIT_TAMPERED: u8 = 3;

/// Witness certificates for stable irrationality of hypersurfaces, double
/// covers and conic bundles.
#[derive(Parser, Debug)]
#[command(name = "irratio", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a witness and write its certificate.
    Gen(GenArgs),
    /// Re-verify a certificate file.
    Check { path: PathBuf },
    /// Print the dimension/degree table or one decomposition N = n + r.
    Bounds(BoundsArgs),
    /// Residues of symbols along coordinate divisors.
    Residue(ResidueArgs),
    /// Run only the finite-field cross-check for a witness.
    Oracle(WitnessArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum GKind {
    Parametric,
    FiniteField,
    Integral,
}

#[derive(Args, Debug)]
struct WitnessArgs {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    d: Option<u32>,
    /// Dimension N of a conic bundle (alternatively `--n N`).
    #[arg(long)]
    dim: Option<usize>,
    #[arg(long, conflicts_with = "conic")]
    double_cover: bool,
    #[arg(long)]
    conic: bool,
    #[arg(long, value_enum, default_value = "parametric")]
    g_variant: GKind,
    /// Characteristic for `--g-variant finite-field`.
    #[arg(long)]
    p: Option<u64>,
    /// Prime for `--g-variant integral`.
    #[arg(long)]
    p0: Option<u64>,
    /// Linear form h, e.g. "x0 + x1".
    #[arg(long)]
    h: Option<String>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    samples: usize,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[command(flatten)]
    witness: WitnessArgs,
    /// Output path; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct BoundsSelect {
    #[arg(long)]
    max_dim: Option<u64>,
    #[arg(long)]
    dim: Option<u64>,
}

#[derive(Args, Debug)]
struct BoundsArgs {
    #[command(flatten)]
    select: BoundsSelect,
    /// With `--max-dim`: one `n dim_max deg_min` line per row.
    #[arg(long)]
    rows: bool,
}

#[derive(Args, Debug)]
struct ResidueArgs {
    /// Certify that (x1/x0, ..., xn/x0) is nonzero on P^n.
    #[arg(long, conflicts_with_all = ["n", "entry", "along"])]
    alpha: Option<usize>,
    #[arg(long, requires_all = ["entry", "along"])]
    n: Option<usize>,
    /// Square class such as `x1*x2` or `b`; repeat once per symbol entry.
    #[arg(long)]
    entry: Vec<String>,
    /// Coordinate index i of the divisor {x_i = 0}.
    #[arg(long)]
    along: Option<usize>,
    /// Treat b as a non-square unit along every coordinate divisor.
    #[arg(long)]
    b_attested: bool,
}

impl WitnessArgs {
    fn params(&self) -> Result<WitnessParams> {
        let g_variant = match self.g_variant {
            GKind::Parametric => GVariant::Parametric,
            GKind::FiniteField => GVariant::FiniteField {
                p: self.p.context("--g-variant finite-field needs --p")?,
            },
            GKind::Integral => GVariant::Integral {
                p0: self.p0.context("--g-variant integral needs --p0")?,
            },
        };
        let mut params = if self.conic {
            let dim = self
                .dim
                .or(self.n)
                .context("--conic needs --dim N (or --n N)")?;
            WitnessParams::conic(dim)
        } else {
            let n = self.n.context("--n is required")?;
            let r = self.r.context("--r is required")?;
            let d = self.d.context("--d is required")?;
            if self.double_cover {
                WitnessParams::double_cover(n, r, d)
            } else {
                WitnessParams::hypersurface(n, r, d)
            }
        };
        params = params
            .with_g_variant(g_variant)
            .with_seed(self.seed)
            .with_samples(self.samples);
        if let Some(h) = &self.h {
            params = params.with_h(h.clone());
        }
        params.validate()?;
        Ok(params)
    }
}

fn cmd_gen(args: &GenArgs) -> Result<u8> {
    let params = args.witness.params()?;
    let cert = build_witness(&params)?;
    match &args.out {
        Some(path) => {
            write_certificate_atomic(path, &cert)?;
            eprintln!(
                "{}: {}",
                path.display(),
                if cert.passed() { "PASS" } else { "FAIL" }
            );
        }
        None => print!("{}", cert.to_json()),
    }
    for c in cert.checks.iter().filter(|c| !c.passed) {
        eprintln!("failed {}: {}", c.name, c.detail);
    }
    Ok(if cert.passed() { 0 } else { EXIT_FAIL })
}

fn cmd_check(path: &Path) -> Result<u8> {
    let cert = read_certificate(path)?;
    let report = verify_certificate(&cert)?;
    let (code, label) = match report.verdict {
        VerifyVerdict::Pass => (0, "PASS"),
        VerifyVerdict::Fail => (EXIT_FAIL, "FAIL"),
        VerifyVerdict::Tampered => (EXIT_TAMPERED, "TAMPERED"),
    };
    println!("{label}");
    for name in &report.failed {
        println!("failed: {name}");
    }
    for item in &report.mismatched {
        println!("mismatch: {item}");
    }
    Ok(code)
}

fn cmd_bounds(args: &BoundsArgs) -> Result<u8> {
    if let Some(dim) = args.select.dim {
        let (n, r) = decompose_dimension(dim)?;
        println!("n={n} r={r} min-degree {}", min_degree(dim)?);
        return Ok(0);
    }
    let max_dim = args.select.max_dim.expect("clap group");
    let rows = bounds_table(max_dim)?;
    if args.rows {
        print!("{}", render_rows(&rows));
    } else {
        print!("{}", render_table(&rows));
    }
    Ok(0)
}

fn cmd_residue(args: &ResidueArgs) -> Result<u8> {
    if let Some(n) = args.alpha {
        let cert = certify_alpha_nonzero(n)?;
        println!("start {}", cert.start);
        for (i, s) in cert.divisor_sequence.iter().zip(&cert.intermediate) {
            println!("along x{i}: {s}");
        }
        let nonzero = cert.verdict == ResidueVerdict::Nonzero;
        println!("{}", if nonzero { "NONZERO" } else { "INCONCLUSIVE" });
        return Ok(if nonzero { 0 } else { EXIT_FAIL });
    }
    let Some(n) = args.n else {
        bail!("residue needs --alpha N or --n N --entry CLASS... --along I");
    };
    let along = args.along.context("--along is required")?;
    let entries = args
        .entry
        .iter()
        .map(|e| SquareClass::parse(e, n))
        .collect::<irratio_core::Result<Vec<_>>>()?;
    let status = if args.b_attested {
        BStatus::Attested
    } else {
        BStatus::Unattested
    };
    let symbol = Symbol::make(n, &entries)?;
    println!("{}", symbol.residue(along, status)?);
    Ok(0)
}

fn cmd_oracle(args: &WitnessArgs) -> Result<u8> {
    let params = args.params()?;
    let cert = build_witness(&params)?;
    println!("{}", serde_json::to_string_pretty(&cert.oracle)?);
    Ok(if cert.oracle.passed() { 0 } else { EXIT_FAIL })
}

fn run(cli: &Cli) -> Result<u8> {
    match &cli.command {
        Command::Gen(args) => cmd_gen(args),
        Command::Check { path } => cmd_check(path),
        Command::Bounds(args) => cmd_bounds(args),
        Command::Residue(args) => cmd_residue(args),
        Command::Oracle(args) => cmd_oracle(args),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
