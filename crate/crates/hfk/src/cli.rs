//! Command-line front end: witness construction and verification, Alexander
//! polynomials, hc values, batch certificate tables, and the cyclotomic scan.
//!
//! Exit codes: 0 success, 1 invalid input, 2 search exhausted,
//! 3 verification failed.

use crate::arith::ArithError;
use crate::hc::{self, HcError};
use crate::primes::{PrimesError, DEFAULT_PRIME_BOUND};
use crate::record::{CertificateRecord, RecordError};
use crate::seifert::{self, LaurentPoly, SeifertError};
use crate::witness::{self, LensSpace, SurfaceParams, WitnessError, DEFAULT_BRUTE_BOX};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rayon::prelude::*;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(
    name = "hfk",
    version,
    about = "Genus-one witness surfaces in lens spaces: certificates, \
             Alexander polynomials, and the hc invariant"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct SurfaceArgs {
    p: BigInt,
    #[arg(allow_negative_numbers = true)]
    q: BigInt,
    #[arg(allow_negative_numbers = true)]
    a: BigInt,
    #[arg(allow_negative_numbers = true)]
    b: BigInt,
    #[arg(allow_negative_numbers = true)]
    c: BigInt,
    #[arg(allow_negative_numbers = true)]
    u: BigInt,
    #[arg(allow_negative_numbers = true)]
    v: BigInt,
}

impl SurfaceArgs {
    fn split(self) -> (BigInt, BigInt, SurfaceParams) {
        let SurfaceArgs { p, q, a, b, c, u, v } = self;
        (p, q, SurfaceParams { a, b, c, u, v })
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Construct a verified genus-one witness surface for L(p, q)
    Witness {
        p: BigInt,
        #[arg(allow_negative_numbers = true)]
        q: BigInt,
        /// Print the certificate as a single JSON line
        #[arg(long)]
        json: bool,
        /// Upper bound for the prime search
        #[arg(long)]
        bound: Option<u64>,
        /// Skip the constructive pipeline; search a coefficient box instead
        #[arg(long)]
        brute: bool,
        /// Half-width of the search box (with --brute)
        #[arg(long = "box", value_name = "HALF_WIDTH", requires = "brute")]
        box_bound: Option<u64>,
        /// Reduce q into [1, p-1] first
        #[arg(long)]
        normalize: bool,
    },
    /// Check whether (a, b, c, u, v) is a witness surface for L(p, q)
    Verify {
        #[command(flatten)]
        surface: SurfaceArgs,
        /// Print the certificate as a single JSON line
        #[arg(long)]
        json: bool,
        /// Reduce q into [1, p-1] first
        #[arg(long)]
        normalize: bool,
    },
    /// Alexander polynomial of the boundary knot of the surface
    Alexander {
        #[command(flatten)]
        surface: SurfaceArgs,
        /// Print the coefficient map as JSON
        #[arg(long)]
        json: bool,
        /// Reduce q into [1, p-1] first
        #[arg(long)]
        normalize: bool,
    },
    /// The hc invariant for a supported homology class
    Hc {
        #[command(subcommand)]
        target: HcTarget,
    },
    /// Write verified certificates for all L(p, q) with p ≤ p_max (JSON Lines)
    Table {
        p_max: u64,
        out: PathBuf,
        /// Upper bound for the prime search
        #[arg(long)]
        bound: Option<u64>,
    },
    /// Scan for cyclotomic indices where both square roots are in the field
    Lemma34 { n_max: u64 },
}

#[derive(Subcommand, Debug)]
enum HcTarget {
    /// hc of the homology class of L(p, q)
    Lens {
        p: BigInt,
        #[arg(allow_negative_numbers = true)]
        q: BigInt,
        /// Upper bound for the prime search
        #[arg(long)]
        bound: Option<u64>,
    },
    /// hc of the class of L(p1, q1) # L(p2, q2)
    Connsum {
        p1: BigInt,
        #[arg(allow_negative_numbers = true)]
        q1: BigInt,
        p2: BigInt,
        #[arg(allow_negative_numbers = true)]
        q2: BigInt,
        /// Half-width of the genus-one search box
        #[arg(long = "box", value_name = "HALF_WIDTH")]
        box_bound: Option<u64>,
    },
    /// hc for first homology Z^rank
    FreeRank { rank: u64 },
    /// hc for first homology Z + Z/p with linking data q
    ZZp {
        p: BigInt,
        #[arg(allow_negative_numbers = true)]
        q: BigInt,
    },
    /// Bounds for a rational homology sphere with invariant factors f1,f2,...
    Qhs {
        #[arg(value_delimiter = ',', allow_negative_numbers = true)]
        factors: Vec<BigInt>,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Witness(#[from] WitnessError),
    #[error(transparent)]
    Hc(#[from] HcError),
    #[error(transparent)]
    Record(#[from] RecordError),
    #[error(transparent)]
    Seifert(#[from] SeifertError),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

fn witness_exit_code(e: &WitnessError) -> i32 {
    match e {
        WitnessError::InvalidLensSpace { .. } => 1,
        WitnessError::SearchExhausted { .. } | WitnessError::UnverifiedConstruction { .. } => 2,
        WitnessError::Primes(p) => match p {
            PrimesError::SearchExhausted { .. }
            | PrimesError::NoSolutionClass { .. }
            | PrimesError::Arith(_) => 2,
            _ => 1,
        },
    }
}

fn exit_code(e: &CliError) -> i32 {
    match e {
        CliError::Usage(_) | CliError::Io { .. } | CliError::Seifert(_) => 1,
        CliError::Witness(w) => witness_exit_code(w),
        CliError::Hc(h) => match h {
            HcError::Witness(w) => witness_exit_code(w),
            HcError::Arith(ArithError::ModulusTooLarge(..)) => 2,
            _ => 1,
        },
        CliError::Record(r) => match r {
            RecordError::Witness(w) => witness_exit_code(w),
            RecordError::Seifert(_) => 1,
            _ => 3,
        },
    }
}

/// Parses and runs one invocation, writing to the given streams and
/// returning the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                0
            } else {
                let _ = write!(err, "{e}");
                1
            };
        }
    };
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    match cli.command {
        Command::Witness {
            p,
            q,
            json,
            bound,
            brute,
            box_bound,
            normalize,
        } => cmd_witness(p, q, json, bound, brute, box_bound, normalize, out),
        Command::Verify {
            surface,
            json,
            normalize,
        } => cmd_verify(surface, json, normalize, out),
        Command::Alexander {
            surface,
            json,
            normalize,
        } => cmd_alexander(surface, json, normalize, out),
        Command::Hc { target } => cmd_hc(target, out),
        Command::Table { p_max, out: path, bound } => cmd_table(p_max, &path, bound, out),
        Command::Lemma34 { n_max } => cmd_lemma34(n_max, out),
    }
}

fn make_space(p: BigInt, q: BigInt, normalize: bool) -> Result<LensSpace, CliError> {
    let space = LensSpace::new(p, q)?;
    Ok(if normalize { space.normalized() } else { space })
}

fn prime_bound(bound: Option<u64>) -> BigInt {
    BigInt::from(bound.unwrap_or(DEFAULT_PRIME_BOUND))
}

fn lens_alexander(space: &LensSpace, params: &SurfaceParams) -> Result<LaurentPoly, CliError> {
    let matrix = seifert::seifert_matrix_lens(space, params);
    Ok(seifert::alexander(&matrix, space.p())?)
}

fn print_certificate(
    out: &mut dyn Write,
    record: &CertificateRecord,
    poly: &LaurentPoly,
    json: bool,
) {
    if json {
        let line = serde_json::to_string(record).expect("record is plain strings");
        let _ = writeln!(out, "{line}");
    } else {
        let _ = writeln!(
            out,
            "L({}, {}): witness (a, b, c, u, v) = ({}, {}, {}, {}, {})",
            record.p, record.q, record.a, record.b, record.c, record.u, record.v
        );
        let _ = writeln!(
            out,
            "epsilon = {}, k = {}, r_k = {}, s_k = {}",
            record.epsilon, record.k, record.r_k, record.s_k
        );
        let _ = writeln!(out, "method = {}", record.method);
        let _ = writeln!(out, "alexander = {poly}");
        let _ = writeln!(out, "identity_value = {}", record.identity_value);
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_witness(
    p: BigInt,
    q: BigInt,
    json: bool,
    bound: Option<u64>,
    brute: bool,
    box_bound: Option<u64>,
    normalize: bool,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let space = make_space(p, q, normalize)?;
    let cert = if brute {
        let bb = box_bound.unwrap_or(DEFAULT_BRUTE_BOX);
        witness::brute_search(&space, bb).ok_or_else(|| WitnessError::SearchExhausted {
            p: space.p().clone(),
            q: space.q().clone(),
            prime_bound: BigInt::zero(),
            brute_box: bb,
        })?
    } else {
        witness::construct_witness(&space, &prime_bound(bound))?
    };
    let record = CertificateRecord::from_certificate(&cert)?;
    let poly = lens_alexander(&space, &cert.params)?;
    print_certificate(out, &record, &poly, json);
    Ok(0)
}

fn cmd_verify(
    surface: SurfaceArgs,
    json: bool,
    normalize: bool,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let (p, q, params) = surface.split();
    let space = make_space(p, q, normalize)?;
    match witness::verify_witness(&space, &params) {
        Some(cert) => {
            let record = CertificateRecord::from_certificate(&cert)?;
            let poly = lens_alexander(&space, &params)?;
            print_certificate(out, &record, &poly, json);
            Ok(0)
        }
        None => {
            let value = witness::identity_value(&space, &params);
            let _ = writeln!(out, "identity_value = {value} (expected 1)");
            Ok(3)
        }
    }
}

fn cmd_alexander(
    surface: SurfaceArgs,
    json: bool,
    normalize: bool,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let (p, q, params) = surface.split();
    let space = make_space(p, q, normalize)?;
    let poly = lens_alexander(&space, &params)?;
    if json {
        let body = poly
            .coeffs()
            .iter()
            .map(|(e, c)| format!("\"{e}\":{c}"))
            .collect::<Vec<_>>()
            .join(",");
        let _ = writeln!(out, "{{{body}}}");
    } else {
        let _ = writeln!(out, "{poly}");
    }
    Ok(0)
}

fn cmd_hc(target: HcTarget, out: &mut dyn Write) -> Result<i32, CliError> {
    let result = match target {
        HcTarget::Lens { p, q, bound } => {
            hc::hc_lens(&LensSpace::new(p, q)?, &prime_bound(bound))?
        }
        HcTarget::Connsum {
            p1,
            q1,
            p2,
            q2,
            box_bound,
        } => hc::hc_connsum(
            &LensSpace::new(p1, q1)?,
            &LensSpace::new(p2, q2)?,
            box_bound.unwrap_or(hc::DEFAULT_CONNSUM_BOX),
        )?,
        HcTarget::FreeRank { rank } => hc::hc_free_abelian(rank)?,
        HcTarget::ZZp { p, q } => hc::hc_z_plus_zp(&p, &q)?,
        HcTarget::Qhs { factors } => hc::hc_qhs_bound(&factors)?,
    };
    let _ = writeln!(out, "{}", result.value_string());
    let _ = writeln!(out, "reason: {}", result.reason);
    Ok(0)
}

/// Verified certificates for every L(p, q), 2 ≤ p ≤ p_max, 1 ≤ q < p,
/// gcd(p, q) = 1, ordered by (p, q). Construction runs in parallel; the
/// output order is deterministic.
pub fn build_table(p_max: u64, prime_bound: &BigInt) -> Result<Vec<CertificateRecord>, RecordError> {
    let spaces: Vec<(u64, u64)> = (2..=p_max)
        .flat_map(|p| (1..p).filter(move |q| p.gcd(q) == 1).map(move |q| (p, q)))
        .collect();
    spaces
        .par_iter()
        .map(|&(p, q)| {
            let space = LensSpace::new(BigInt::from(p), BigInt::from(q))
                .expect("coprime by construction");
            let cert = witness::construct_witness(&space, prime_bound)?;
            let record = CertificateRecord::from_certificate(&cert)?;
            record.reverify()?;
            Ok(record)
        })
        .collect()
}

fn cmd_table(
    p_max: u64,
    path: &PathBuf,
    bound: Option<u64>,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    if p_max < 2 {
        return Err(CliError::Usage(format!(
            "p_max must be at least 2, got {p_max}"
        )));
    }
    let records = build_table(p_max, &prime_bound(bound))?;
    let io_err = |source| CliError::Io {
        path: path.clone(),
        source,
    };
    let file = std::fs::File::create(path).map_err(io_err)?;
    let mut file = std::io::BufWriter::new(file);
    for record in &records {
        let line = serde_json::to_string(record).expect("record is plain strings");
        writeln!(file, "{line}").map_err(io_err)?;
    }
    file.flush().map_err(io_err)?;
    let _ = writeln!(out, "wrote {} records to {}", records.len(), path.display());
    Ok(0)
}

fn cmd_lemma34(n_max: u64, out: &mut dyn Write) -> Result<i32, CliError> {
    let violations = hc::lemma34_scan(n_max)?;
    let rendered = violations
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(", ");
    let _ = writeln!(out, "violations: [{rendered}]");
    Ok(0)
}
