use std::fs::File;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use gkloc::harness::{self, VerificationCase};
use gkloc::liealg::{Family, PairData};
use gkloc::{Character, Window};

/// Compares cohomologically induced modules with localized D-modules on P^1.
#[derive(Parser)]
#[command(name = "gkloc", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run both sides and compare them; without --family, runs the default grid.
    Verify {
        #[command(flatten)]
        case: CaseArgs,
        /// Also write the character tables as CSV.
        #[arg(long)]
        csv: Option<String>,
    },
    /// Algebraic side only: P_j for every j.
    Induce(CaseArgs),
    /// Geometric side only: H^s for every s.
    Localize(CaseArgs),
    /// Run the invariant suite and negative controls.
    Selftest,
    /// Print the pair data of a family.
    Describe {
        #[arg(long)]
        family: String,
        #[arg(long)]
        factors: Option<String>,
    },
}

#[derive(Args)]
struct CaseArgs {
    /// A, B, C or D (Ainf for the closed orbit at infinity).
    #[arg(long)]
    family: Option<String>,
    /// Factors of family D, e.g. A,B.
    #[arg(long)]
    factors: Option<String>,
    /// Integer λ₀, comma-separated for family D.
    #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
    lambda: Vec<i64>,
    /// Parity 0 or 1 for open-orbit factors, comma-separated.
    #[arg(long, value_delimiter = ',')]
    parity: Vec<u8>,
    /// Weight window lo:hi, one per coordinate or one for all.
    #[arg(long, allow_hyphen_values = true)]
    window: Option<String>,
    /// Extra root steps computed beyond the window.
    #[arg(long, default_value_t = gkloc::gkmod::DEFAULT_MARGIN)]
    margin: u32,
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn parse_window(s: Option<&str>, family: &Family, margin: u32) -> Result<Window, String> {
    let rank = family.factors().len();
    let default = match family {
        Family::BorelWeilBott => "0:10",
        Family::Torus(f) if f.len() > 1 => "-6:6",
        Family::Torus(_) => "-30:30",
    };
    let mut bounds = Vec::new();
    for part in s.unwrap_or(default).split(',') {
        let (lo, hi) = part.split_once(':').ok_or(format!("window {part:?} is not lo:hi"))?;
        let lo: i64 = lo.trim().parse().map_err(|e| format!("window {part:?}: {e}"))?;
        let hi: i64 = hi.trim().parse().map_err(|e| format!("window {part:?}: {e}"))?;
        bounds.push((lo, hi));
    }
    if bounds.len() == 1 && rank > 1 {
        bounds = vec![bounds[0]; rank];
    }
    Window::with_margin(bounds, margin).map_err(|e| e.to_string())
}

fn build_case(a: &CaseArgs) -> Result<VerificationCase, String> {
    let code = a.family.as_deref().ok_or("--family is required")?;
    let family = harness::parse_family(code, a.factors.as_deref()).map_err(|e| e.to_string())?;
    if a.lambda.is_empty() {
        return Err("--lambda is required".into());
    }
    let window = parse_window(a.window.as_deref(), &family, a.margin)?;
    let pair = PairData::new(family.clone()).map_err(|e| e.to_string())?;
    let mut parity = a.parity.clone();
    if parity.iter().any(|p| *p > 1) {
        return Err("parity must be 0 or 1".into());
    }
    let np = pair.parity_coords().len();
    if parity.is_empty() {
        parity = vec![0; np];
    } else if np == 0 {
        parity.clear();
    } else if parity.len() == 1 && pair.rank() > 1 {
        // one parity per coordinate, ignored on closed factors
        parity = vec![parity[0]; pair.rank()];
    }
    VerificationCase::new(family, a.lambda.clone(), parity, window).map_err(|e| e.to_string())
}

fn side_json(case: &VerificationCase, cs: &[Character]) -> serde_json::Value {
    let degrees: Vec<_> = cs
        .iter()
        .enumerate()
        .map(|(d, c)| serde_json::json!({ "degree": d, "character": c.to_json() }))
        .collect();
    serde_json::json!({ "case": case.id, "family": case.family.code(), "degrees": degrees })
}

fn one_side(a: &CaseArgs, algebraic: bool) -> ExitCode {
    let case = match build_case(a) {
        Ok(c) => c,
        Err(e) => return usage(e),
    };
    let pair = match PairData::new(case.family.clone()) {
        Ok(p) => p,
        Err(e) => return usage(e),
    };
    let r = if algebraic {
        harness::algebraic_side(&pair, &case)
    } else {
        harness::geometric_side(&pair, &case)
    };
    match r {
        Ok(cs) => {
            println!("{}", serde_json::to_string_pretty(&side_json(&case, &cs)).expect("json"));
            ExitCode::SUCCESS
        }
        Err(e) => usage(e),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify { case, csv } => {
            let cases = if case.family.is_none() {
                harness::default_cases().map_err(|e| e.to_string())
            } else {
                build_case(&case).map(|c| vec![c])
            };
            let reports = match cases.and_then(|c| harness::run_cases(&c).map_err(|e| e.to_string())) {
                Ok(r) => r,
                Err(e) => return usage(e),
            };
            println!("{}", serde_json::to_string_pretty(&reports).expect("json"));
            if let Some(path) = csv {
                let written = File::create(&path)
                    .map_err(|e| e.to_string())
                    .and_then(|f| harness::write_csv(&reports, f).map_err(|e| e.to_string()));
                if let Err(e) = written {
                    return usage(format!("{path}: {e}"));
                }
            }
            for r in &reports {
                eprintln!("{:<16} {}", r.case, if r.is_match() { "exact-match" } else { "MISMATCH" });
            }
            if reports.iter().all(|r| r.is_match()) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Command::Induce(a) => one_side(&a, true),
        Command::Localize(a) => one_side(&a, false),
        Command::Selftest => {
            let results = harness::selftest();
            for r in &results {
                println!("{} {:<28} {}", if r.passed { "pass" } else { "FAIL" }, r.check, r.detail);
            }
            if results.iter().all(|r| r.passed) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Command::Describe { family, factors } => {
            match harness::parse_family(&family, factors.as_deref()).and_then(|f| harness::describe(&f)) {
                Ok(v) => {
                    println!("{}", serde_json::to_string_pretty(&v).expect("json"));
                    ExitCode::SUCCESS
                }
                Err(e) => usage(e),
            }
        }
    }
}
