//! Command-line front end.
//!
//! Machine-parseable output (one JSON document per artifact or per check)
//! goes to stdout; human-readable summaries go to stderr. Exit codes:
//! 0 success, 1 invalid input or failed verification, 2 partial result.

use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

use pointforge::certificate::{
    search_and_forge, verify_certificate_json, CertificateStatus, CurveDescription, SearchLimits,
};
use pointforge::elliptic::DEFAULT_TORSION_BOUND;
use pointforge::kummer;
use pointforge::quartic::QuarticInput;
use pointforge::rational::{format_rat, parse_rat};
use pointforge::suites::{run_suite, Fault, SuiteKind, SuiteOptions, DEFAULT_SEED};

#[derive(Parser)]
#[command(
    name = "pointforge",
    about = "Exact elliptic curve point construction over quadratic extension towers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Quad,
    Cubic,
    Quartic,
    Genus,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum FaultArg {
    QuadWrongA1,
}

#[derive(Subcommand)]
enum Command {
    /// Run identity suites, or re-check a certificate file
    Verify {
        /// identity suite to run
        #[arg(long, value_enum)]
        suite: Option<SuiteArg>,
        /// randomized sample count per suite
        #[arg(long, default_value_t = 100)]
        samples: u32,
        /// RNG seed for the randomized checks
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// certificate file to re-check
        #[arg(long, conflicts_with = "suite")]
        cert: Option<PathBuf>,
        /// deliberately corrupt one comparison (negative-control testing)
        #[arg(long, value_enum, hide = true)]
        inject_fault: Option<FaultArg>,
    },
    /// Search specializations and write an independence certificate
    Forge {
        /// curve description file (JSON)
        #[arg(long)]
        curve: PathBuf,
        /// number of points to collect
        #[arg(long)]
        count: usize,
        /// specialization height bound
        #[arg(long, default_value_t = 12)]
        height: u32,
        /// torsion probe bound
        #[arg(long, default_value_t = DEFAULT_TORSION_BOUND)]
        torsion_bound: u32,
        /// output path for the certificate
        #[arg(long)]
        out: PathBuf,
        /// worker threads for candidate evaluation (output is identical
        /// for every value)
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Genus of the fibered Kummer curve for n factors
    Genus {
        #[arg(long)]
        n: u32,
    },
    /// List rational points of bounded height on v² = P(u)
    QuarticSearch {
        /// coefficients p,q,r,s of P(u) = u⁴ + pu³ + qu² + ru + s
        #[arg(long)]
        poly: String,
        #[arg(long, default_value_t = 8)]
        height: u32,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Verify {
            suite,
            samples,
            seed,
            cert,
            inject_fault,
        } => match (suite, cert) {
            (Some(_), Some(_)) => unreachable!("clap forbids this combination"),
            (None, Some(path)) => cmd_verify_cert(&path),
            (suite, None) => {
                let kind = match suite.unwrap_or(SuiteArg::All) {
                    SuiteArg::Quad => SuiteKind::Quad,
                    SuiteArg::Cubic => SuiteKind::Cubic,
                    SuiteArg::Quartic => SuiteKind::Quartic,
                    SuiteArg::Genus => SuiteKind::Genus,
                    SuiteArg::All => SuiteKind::All,
                };
                let opts = SuiteOptions {
                    samples,
                    seed,
                    fault: inject_fault.map(|FaultArg::QuadWrongA1| Fault::QuadWrongA1),
                };
                cmd_verify_suites(kind, &opts)
            }
        },
        Command::Forge {
            curve,
            count,
            height,
            torsion_bound,
            out,
            jobs,
        } => cmd_forge(&curve, count, height, torsion_bound, &out, jobs),
        Command::Genus { n } => cmd_genus(n),
        Command::QuarticSearch { poly, height } => cmd_quartic_search(&poly, height),
    }
}

fn cmd_verify_suites(kind: SuiteKind, opts: &SuiteOptions) -> Result<ExitCode, String> {
    let reports = run_suite(kind, opts);
    let mut all_ok = true;
    for report in &reports {
        for check in &report.checks {
            let doc = serde_json::json!({
                "check": check.name,
                "detail": check.detail,
                "passed": check.passed,
                "suite": report.suite,
            });
            println!("{doc}");
            if !check.passed {
                all_ok = false;
                eprintln!("FAIL {} — replay: {}", check.name, check.detail);
            }
        }
        eprintln!(
            "suite {}: {}",
            report.suite,
            if report.all_passed() { "ok" } else { "FAILED" }
        );
    }
    Ok(ExitCode::from(if all_ok { 0 } else { 1 }))
}

fn cmd_verify_cert(path: &PathBuf) -> Result<ExitCode, String> {
    let data = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let report = verify_certificate_json(&data).map_err(|e| e.to_string())?;
    let doc = serde_json::json!({
        "certificate": path.display().to_string(),
        "failures": report.failures,
        "verdict": if report.accepted { "accept" } else { "reject" },
    });
    println!("{doc}");
    if report.accepted {
        eprintln!("certificate accepted");
        Ok(ExitCode::from(0))
    } else {
        eprintln!("certificate rejected: {} failure(s)", report.failures.len());
        Ok(ExitCode::from(1))
    }
}

fn cmd_forge(
    curve_path: &PathBuf,
    count: usize,
    height: u32,
    torsion_bound: u32,
    out: &PathBuf,
    jobs: usize,
) -> Result<ExitCode, String> {
    let data = std::fs::read_to_string(curve_path)
        .map_err(|e| format!("{}: {e}", curve_path.display()))?;
    let value: serde_json::Value =
        serde_json::from_str(&data).map_err(|e| format!("curve file is not JSON: {e}"))?;
    let desc = CurveDescription::from_json(&value).map_err(|e| e.to_string())?;
    let limits = SearchLimits {
        height,
        torsion_bound,
        jobs,
    };
    let cert = search_and_forge(&desc, count, &limits).map_err(|e| e.to_string())?;
    std::fs::write(out, cert.to_json_string())
        .map_err(|e| format!("{}: {e}", out.display()))?;
    let doc = serde_json::json!({
        "accepted": cert.points.len(),
        "out": out.display().to_string(),
        "rejected": cert.rejected.len(),
        "status": cert.status.as_str(),
        "target": cert.target,
    });
    println!("{doc}");
    eprintln!(
        "{} of {} points, certificate written to {}",
        cert.points.len(),
        cert.target,
        out.display()
    );
    Ok(ExitCode::from(match cert.status {
        CertificateStatus::Complete => 0,
        CertificateStatus::Partial => 2,
    }))
}

fn cmd_genus(n: u32) -> Result<ExitCode, String> {
    let genus = kummer::genus(n).map_err(|e| e.to_string())?;
    let rh = kummer::riemann_hurwitz_check(n).map_err(|e| e.to_string())?;
    let genus_number: serde_json::Number = serde_json::from_str(&genus.to_string())
        .expect("an integer is a valid JSON number");
    let doc = serde_json::json!({
        "genus": genus_number,
        "n": n,
        "riemann_hurwitz_consistent": rh,
    });
    println!("{doc}");
    eprintln!("g_{n} = {genus} (Riemann-Hurwitz consistent: {rh})");
    Ok(ExitCode::from(0))
}

fn cmd_quartic_search(poly: &str, height: u32) -> Result<ExitCode, String> {
    let parts: Vec<&str> = poly.split(',').map(str::trim).collect();
    if parts.len() != 4 {
        return Err("--poly expects four comma-separated rationals p,q,r,s".into());
    }
    let mut coeffs = Vec::with_capacity(4);
    for part in parts {
        coeffs.push(parse_rat(part).map_err(|e| e.to_string())?);
    }
    let input = QuarticInput::new(
        coeffs[0].clone(),
        coeffs[1].clone(),
        coeffs[2].clone(),
        coeffs[3].clone(),
    )
    .map_err(|e| e.to_string())?;
    let seeds = input.search_seeds(height).map_err(|e| e.to_string())?;
    let doc = serde_json::json!({
        "height": height,
        "poly": {
            "p": format_rat(&coeffs[0]),
            "q": format_rat(&coeffs[1]),
            "r": format_rat(&coeffs[2]),
            "s": format_rat(&coeffs[3]),
        },
        "seeds": seeds
            .iter()
            .map(|s| serde_json::json!({"u": format_rat(&s.u), "v": format_rat(&s.v)}))
            .collect::<Vec<_>>(),
    });
    println!("{doc}");
    eprintln!("{} seed(s) of height <= {height}", seeds.len());
    Ok(ExitCode::from(0))
}
