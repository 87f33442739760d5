use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::{One, Pow};
use serde_json::json;

use sce_core::mpoly::DiracConvention;
use sce_core::operators::{coeff_table_recursive, dirac_laplacian_power, lemma_sum, CoeffTable};
use sce_core::slice::SlicePoly;
use sce_core::theorem::{ode_residual, verify_main_theorem};
use sce_core::AlgebraSignature;

#[derive(Parser)]
#[command(
    name = "sce",
    version,
    about = "Holomorphic Cliffordian kernels of slice regular polynomials"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Convention {
    Half,
    Unital,
}

impl From<Convention> for DiracConvention {
    fn from(c: Convention) -> Self {
        match c {
            Convention::Half => DiracConvention::Half,
            Convention::Unital => DiracConvention::Unital,
        }
    }
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Print the two x^5 example tables (unital convention).
    ReproExamples {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Apply ∂̄Δ^k to a slice regular polynomial.
    Apply {
        #[arg(long, value_parser = parse_m)]
        m: u32,
        #[arg(long)]
        k: u32,
        #[arg(long, value_enum, default_value_t = Convention::Half)]
        convention: Convention,
        /// Polynomial in x with right coefficients, e.g. "x^2 (1 + e1) - 3".
        #[arg(long)]
        poly: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Randomized check that ker ∂̄Δ^k consists of the polynomials of degree <= 2k.
    Verify {
        #[arg(long, value_parser = parse_m)]
        m: u32,
        #[arg(long)]
        k: u32,
        /// Defaults to 2k + 4.
        #[arg(long)]
        deg_max: Option<usize>,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        /// Falls back to SCE_SEED, then 0.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print the coefficients a(k,l) of the Laplacian power formula.
    Coeffs {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        k: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Check the integer identities behind the ODE basis.
    Identities {
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u32).range(1..))]
        k_max: u32,
        #[arg(long, default_value_t = 12)]
        h_max: u32,
    },
}

fn parse_m(s: &str) -> Result<u32, String> {
    let m: u32 = s.parse().map_err(|e| format!("{e}"))?;
    AlgebraSignature::new(m).map_err(|e| e.to_string())?;
    Ok(m)
}

fn usage_error(flag: &str, msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: invalid value for '{flag}': {msg}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::ReproExamples { format } => repro_examples(format),
        Command::Apply {
            m,
            k,
            convention,
            poly,
            format,
        } => apply(m, k, convention, &poly, format),
        Command::Verify {
            m,
            k,
            deg_max,
            trials,
            seed,
            format,
        } => verify(m, k, deg_max, trials, seed, format),
        Command::Coeffs { k, format } => coeffs(k, format),
        Command::Identities { k_max, h_max } => identities(k_max, h_max),
    }
}

fn repro_examples(format: Format) -> ExitCode {
    let note = "note: examples use the unital Dirac operator; the default half convention gives half of each value";
    let mut tables = Vec::new();
    for (m, ks) in [(5u32, 0..=2u32), (9, 0..=3)] {
        let signature = AlgebraSignature::new(m).expect("odd m");
        let f = SlicePoly::monomial(signature, 5);
        let rows: Vec<(u32, String)> = ks
            .map(|k| {
                let v =
                    dirac_laplacian_power(&f, k, DiracConvention::Unital).expect("polynomial stem");
                (k, v.to_string())
            })
            .collect();
        tables.push((m, rows));
    }
    match format {
        Format::Text => {
            println!("{note}");
            for (m, rows) in &tables {
                println!("m={m} f=x^5");
                for (k, v) in rows {
                    println!("  F_{k} f = {v}");
                }
            }
        }
        Format::Json => {
            let value: Vec<_> = tables
                .iter()
                .map(|(m, rows)| {
                    json!({
                        "m": m,
                        "poly": "x^5",
                        "convention": "unital",
                        "values": rows.iter().map(|(k, v)| json!({"k": k, "value": v})).collect::<Vec<_>>(),
                    })
                })
                .collect();
            eprintln!("{note}");
            println!("{}", serde_json::to_string_pretty(&value).expect("json"));
        }
    }
    ExitCode::SUCCESS
}

fn apply(m: u32, k: u32, convention: Convention, poly: &str, format: Format) -> ExitCode {
    let signature = AlgebraSignature::new(m).expect("validated by clap");
    let p = match SlicePoly::parse(signature, poly) {
        Ok(p) => p,
        Err(e) => return usage_error("--poly", e),
    };
    if k >= signature.sce_exponent() {
        eprintln!(
            "note: k = {k} >= (m-1)/2 = {}, trivially zero via prefactor",
            signature.sce_exponent()
        );
    }
    let value = match dirac_laplacian_power(&p, k, convention.into()) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    match format {
        Format::Text => println!("{value}"),
        Format::Json => println!("{}", value.to_json()),
    }
    ExitCode::SUCCESS
}

fn resolve_seed(flag: Option<u64>) -> Result<u64, ExitCode> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match std::env::var("SCE_SEED") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|e| usage_error("SCE_SEED", format!("{v:?}: {e}"))),
        Err(_) => Ok(0),
    }
}

fn verify(
    m: u32,
    k: u32,
    deg_max: Option<usize>,
    trials: usize,
    seed: Option<u64>,
    format: Format,
) -> ExitCode {
    let signature = AlgebraSignature::new(m).expect("validated by clap");
    if k >= signature.sce_exponent() {
        return usage_error(
            "--k",
            format!("must be below (m-1)/2 = {}", signature.sce_exponent()),
        );
    }
    let deg_max = deg_max.unwrap_or(2 * k as usize + 4);
    if deg_max <= 2 * k as usize {
        return usage_error("--deg-max", format!("must exceed 2k = {}", 2 * k));
    }
    let seed = match resolve_seed(seed) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let report = match verify_main_theorem(m, k, deg_max, trials, seed) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match format {
        Format::Text => {
            println!("seed={seed} {}", report.summary());
            for c in &report.counterexamples {
                let verdict = if c.in_kernel {
                    "in kernel"
                } else {
                    "not in kernel"
                };
                println!("  counterexample degree {} {verdict}: {}", c.degree, c.poly);
            }
            eprintln!("elapsed {} ms", report.elapsed_ms);
        }
        Format::Json => {
            let mut value = report.to_json();
            value["seed"] = json!(seed);
            println!("{value}");
        }
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn coeffs(k: u32, format: Format) -> ExitCode {
    let table = match CoeffTable::closed(k) {
        Ok(t) => t,
        Err(e) => return usage_error("--k", e),
    };
    match format {
        Format::Text => {
            let line: Vec<String> = (1..=k)
                .map(|ell| format!("a({k},{ell})={}", table.get(ell)))
                .collect();
            println!("{}", line.join(" "));
        }
        Format::Json => {
            let entries: Vec<String> = (1..=k).map(|ell| table.get(ell).to_string()).collect();
            println!("{}", json!({ "k": k, "coefficients": entries }));
        }
    }
    ExitCode::SUCCESS
}

fn falling(h: u32, k: u32) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, l| acc * (i64::from(h) - i64::from(l)))
}

fn identities(k_max: u32, h_max: u32) -> ExitCode {
    let pairs = (k_max * (h_max + 1)) as usize;
    let mut lemma_ok = 0;
    let mut ode_ok = 0;
    for k in 1..=k_max {
        for h in 0..=h_max {
            if lemma_sum(k, h) == Pow::pow(BigInt::from(-4), k) * falling(h, k) {
                lemma_ok += 1;
            }
            let want = (
                Pow::pow(BigInt::from(2), k) * falling(h, k),
                2 * i64::from(h) - 1,
            );
            if ode_residual(k, h).is_ok_and(|r| r == want) {
                ode_ok += 1;
            }
        }
    }
    let recursive = coeff_table_recursive(k_max);
    let tables_ok = recursive
        .iter()
        .filter(|t| {
            CoeffTable::closed(t.k()).is_ok_and(|c| (1..=t.k()).all(|l| c.get(l) == t.get(l)))
        })
        .count();
    println!("lemma_sum(k,h) = (-4)^k h(h-1)...(h-k+1): {lemma_ok}/{pairs} for k=1..{k_max}, h=0..{h_max}");
    println!("ode_residual(k,h) = 2^k h(h-1)...(h-k+1) x^(2h-1): {ode_ok}/{pairs}");
    println!("coefficient recursion = closed form: {tables_ok}/{k_max}");
    if lemma_ok == pairs && ode_ok == pairs && tables_ok == k_max as usize {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
