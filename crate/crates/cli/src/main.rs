//! `mapent`: map entropies, additivity certificates, bi-orthogonal
//! decompositions, and block-saturation checks for quantum channels stored
//! as JSON Kraus files.
//!
//! Output is line-oriented `key = value` on stdout; diagnostics go to
//! stderr. Exit codes: 0 success (and certified/saturated), 1 check failed,
//! 2 parse error, 3 invariant violation.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use mapent::{
    biorthogonal_decomposition, certify_dynamical_additivity, conditional_mutual_information,
    hermitian_eig, map_entropy, pauli_channel, random_bistochastic, random_sds_triple,
    random_unitary, verify_block_saturation, Channel, ProbabilityDistribution, Seed,
    CERTIFY_TOL, PREDICATE_TOL,
};
use mapent_cli::channel_file::{load_channel, ChannelFile, ChannelMetadata};
use mapent_cli::{
    fmt_entropy, fmt_small, fmt_spectrum, parse_blocks, parse_weights, CliError,
    EXIT_CHECK_FAILED, EXIT_OK,
};

#[derive(Parser)]
#[command(
    name = "mapent",
    version,
    about = "Map entropies and additivity certificates for quantum channels"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the map entropy, predicate flags, and Choi spectrum of a channel.
    Entropy {
        /// Channel file.
        path: PathBuf,
        /// Tolerance for the trace-preserving/unital predicate flags.
        #[arg(long, default_value_t = PREDICATE_TOL)]
        tol: f64,
    },
    /// Certify additivity of map entropy for the composition of two channels.
    ///
    /// Exit code 0 when certified, 1 when not.
    CertifyAdd {
        /// Channel file for the outer factor.
        phi: PathBuf,
        /// Channel file for the inner factor.
        psi: PathBuf,
        /// Largest admissible violation of the factorization condition.
        #[arg(long, default_value_t = CERTIFY_TOL)]
        tol: f64,
    },
    /// Split a channel into bi-orthogonal components.
    Decompose {
        /// Channel file.
        path: PathBuf,
        /// Threshold below which Kraus products count as vanishing.
        #[arg(long, default_value_t = CERTIFY_TOL)]
        tol: f64,
        /// Write each component to `<OUT>.component-<k>.json`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify that a block-structured triple saturates strong additivity.
    ///
    /// Exit code 0 when both the gap and the residual are below the
    /// tolerance, 1 otherwise.
    VerifySds {
        /// Channel file for the outer-left factor.
        phi: PathBuf,
        /// Channel file for the middle factor.
        lambda: PathBuf,
        /// Channel file for the outer-right factor.
        psi: PathBuf,
        /// Block structure as `dL:dR,dL:dR,...`.
        #[arg(long)]
        blocks: String,
        /// Saturation tolerance for both reported quantities.
        #[arg(long, default_value_t = CERTIFY_TOL)]
        tol: f64,
    },
    /// Print the conditional mutual information of a channel sandwich.
    Cmi {
        /// Channel file for the outer-left factor.
        phi: PathBuf,
        /// Channel file for the middle factor.
        lambda: PathBuf,
        /// Channel file for the outer-right factor.
        psi: PathBuf,
    },
    /// Generate channel files from the seeded random families.
    Gen {
        /// What to generate.
        #[arg(long)]
        kind: GenKind,
        /// Hilbert-space dimension (unitary, bistochastic).
        #[arg(long)]
        dim: Option<usize>,
        /// Number of unitary terms in a bi-stochastic mixture.
        #[arg(long, default_value_t = 2)]
        terms: usize,
        /// Block structure `dL:dR,...` (sds-triple).
        #[arg(long)]
        blocks: Option<String>,
        /// Pauli weights `p0,px,py,pz` (pauli).
        #[arg(long)]
        p: Option<String>,
        /// PRNG seed; equal seeds give byte-identical files.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output path; sds-triple writes `<OUT>.{phi,lambda,psi}.json`.
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Unitary,
    Bistochastic,
    Pauli,
    SdsTriple,
}

fn main() {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}

fn run(command: Command) -> Result<i32, CliError> {
    match command {
        Command::Entropy { path, tol } => cmd_entropy(&path, tol),
        Command::CertifyAdd { phi, psi, tol } => cmd_certify_add(&phi, &psi, tol),
        Command::Decompose { path, tol, out } => cmd_decompose(&path, tol, out.as_deref()),
        Command::VerifySds { phi, lambda, psi, blocks, tol } => {
            cmd_verify_sds(&phi, &lambda, &psi, &blocks, tol)
        }
        Command::Cmi { phi, lambda, psi } => cmd_cmi(&phi, &lambda, &psi),
        Command::Gen { kind, dim, terms, blocks, p, seed, out } => {
            cmd_gen(kind, dim, terms, blocks.as_deref(), p.as_deref(), seed, &out)
        }
    }
}

fn cmd_entropy(path: &Path, tol: f64) -> Result<i32, CliError> {
    let ch = load_channel(path)?;
    let s = map_entropy(&ch)?;
    let spectrum = hermitian_eig(ch.choi().matrix())?.eigenvalues;
    println!("S = {}", fmt_entropy(s));
    println!("trace_preserving = {}", ch.is_trace_preserving(tol));
    println!("unital = {}", ch.is_unital(tol));
    println!("choi_spectrum = {}", fmt_spectrum(&spectrum));
    Ok(EXIT_OK)
}

fn cmd_certify_add(phi: &Path, psi: &Path, tol: f64) -> Result<i32, CliError> {
    let phi = load_channel(phi)?;
    let psi = load_channel(psi)?;
    let report = certify_dynamical_additivity(&phi, &psi, tol)?;
    println!("certified = {}", report.certified);
    println!("max_violation = {}", fmt_small(report.max_violation));
    println!("entropy_gap = {}", fmt_entropy(report.entropy_gap));
    Ok(if report.certified { EXIT_OK } else { EXIT_CHECK_FAILED })
}

fn cmd_decompose(path: &Path, tol: f64, out: Option<&Path>) -> Result<i32, CliError> {
    let ch = load_channel(path)?;
    let dec = biorthogonal_decomposition(&ch, tol)?;
    println!("components = {}", dec.components.len());
    let counts =
        dec.components.iter().map(|c| c.kraus().len().to_string()).collect::<Vec<_>>().join(", ");
    println!("component_kraus_counts = {counts}");
    if let Some(base) = out {
        for (k, component) in dec.components.iter().enumerate() {
            let path = sibling_path(base, &format!("component-{k}"));
            let meta = ChannelMetadata { name: Some(format!("component {k}")), seed: None };
            ChannelFile::from_channel(component, Some(meta)).save(&path)?;
            println!("wrote = {}", path.display());
        }
    }
    Ok(EXIT_OK)
}

fn cmd_verify_sds(
    phi: &Path,
    lambda: &Path,
    psi: &Path,
    blocks: &str,
    tol: f64,
) -> Result<i32, CliError> {
    let spec = parse_blocks(blocks)?;
    let phi = load_channel(phi)?;
    let lambda = load_channel(lambda)?;
    let psi = load_channel(psi)?;
    let v = verify_block_saturation(&phi, &lambda, &psi, &spec)?;
    let saturated = v.gap.abs() < tol && v.choi_residual < tol;
    println!("gap = {}", fmt_small(v.gap));
    println!("choi_residual = {}", fmt_small(v.choi_residual));
    println!("saturated = {saturated}");
    Ok(if saturated { EXIT_OK } else { EXIT_CHECK_FAILED })
}

fn cmd_cmi(phi: &Path, lambda: &Path, psi: &Path) -> Result<i32, CliError> {
    let phi = load_channel(phi)?;
    let lambda = load_channel(lambda)?;
    let psi = load_channel(psi)?;
    let value = conditional_mutual_information(&phi, &lambda, &psi)?;
    println!("cmi = {}", fmt_entropy(value));
    Ok(EXIT_OK)
}

fn cmd_gen(
    kind: GenKind,
    dim: Option<usize>,
    terms: usize,
    blocks: Option<&str>,
    p: Option<&str>,
    seed: u64,
    out: &Path,
) -> Result<i32, CliError> {
    let meta = |name: String| ChannelMetadata { name: Some(name), seed: Some(seed) };
    match kind {
        GenKind::Unitary => {
            let n = dim
                .ok_or_else(|| CliError::Parse("--dim is required for --kind unitary".into()))?;
            let ch = Channel::from_unitary(random_unitary::<f64>(n, Seed(seed)))?;
            write_channel(&ch, meta(format!("unitary dim={n}")), out)?;
        }
        GenKind::Bistochastic => {
            let n = dim.ok_or_else(|| {
                CliError::Parse("--dim is required for --kind bistochastic".into())
            })?;
            let ch = random_bistochastic::<f64>(n, terms, Seed(seed));
            write_channel(&ch, meta(format!("bistochastic dim={n} terms={terms}")), out)?;
        }
        GenKind::Pauli => {
            let weights =
                parse_weights(p.ok_or_else(|| {
                    CliError::Parse("--p w0,wx,wy,wz is required for --kind pauli".into())
                })?)?;
            let dist = ProbabilityDistribution::new(weights)?;
            let ch = pauli_channel(&dist)?;
            write_channel(&ch, meta("pauli".into()), out)?;
        }
        GenKind::SdsTriple => {
            let spec = parse_blocks(blocks.ok_or_else(|| {
                CliError::Parse("--blocks dL:dR,... is required for --kind sds-triple".into())
            })?)?;
            let (phi, lambda, psi) = random_sds_triple::<f64>(&spec, Seed(seed));
            for (role, ch) in [("phi", &phi), ("lambda", &lambda), ("psi", &psi)] {
                let path = sibling_path(out, role);
                let meta = ChannelMetadata {
                    name: Some(format!("sds-triple {role} blocks={}", blocks.unwrap())),
                    seed: Some(seed),
                };
                write_channel(ch, meta, &path)?;
            }
        }
    }
    Ok(EXIT_OK)
}

fn write_channel(ch: &Channel, meta: ChannelMetadata, path: &Path) -> Result<(), CliError> {
    ChannelFile::from_channel(ch, Some(meta)).save(path)?;
    println!("wrote = {}", path.display());
    Ok(())
}

/// `base.json` + "phi" -> `base.phi.json`; `base` + "phi" -> `base.phi.json`.
fn sibling_path(base: &Path, tag: &str) -> PathBuf {
    let stem = base.to_string_lossy();
    let stem = stem.strip_suffix(".json").unwrap_or(&stem);
    PathBuf::from(format!("{stem}.{tag}.json"))
}
