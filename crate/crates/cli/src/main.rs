use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use ptc_core::{
    enumerate_basis, eval_str, exhaustive_zero_divisor_search, lemma_95_expand, poincare_polynomial, top_grade,
    verify_theorem, Error, Space, SpaceSpec,
};

/// Exact cohomology calculator for the Fadell-Neuwirth bundle F(R^k, n+m) -> F(R^k, m).
#[derive(Parser)]
#[command(name = "ptc", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Params {
    /// Number of robots.
    #[arg(long)]
    n: u32,
    /// Number of obstacles.
    #[arg(long)]
    m: u32,
    /// Ambient dimension (odd, at least 3).
    #[arg(long, default_value_t = 3)]
    k: u32,
}

#[derive(Subcommand)]
enum Command {
    /// Certify tc = 2n + m - 1 with matching lower and upper bounds.
    Verify {
        #[command(flatten)]
        params: Params,
        /// Write the JSON certificate to this path.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// List the canonical basis in one grade.
    Basis {
        #[command(flatten)]
        params: Params,
        #[arg(long)]
        grade: u32,
        /// One of ebe, e, b, x.
        #[arg(long, default_value = "ebe")]
        space: String,
    },
    /// Evaluate an expression such as "(w(1,3)-w'(1,3))^2*(w(2,3)-w'(2,3))".
    Eval {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[command(flatten)]
        params: Params,
        #[arg(long, default_value = "ebe")]
        space: String,
    },
    /// Longest nonzero product of kernel generators of the diagonal.
    Search {
        #[command(flatten)]
        params: Params,
        /// Defaults to one past the top grade.
        #[arg(long)]
        max_length: Option<u32>,
        #[arg(long, default_value_t = 1_000_000)]
        max_candidates: u64,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Print the Poincare polynomial (t counts generators of degree k-1).
    Poincare {
        #[command(flatten)]
        params: Params,
        #[arg(long, default_value = "ebe")]
        space: String,
    },
    /// Check the expansion of prod_{i in T} w(i,p) against its closed form.
    Lemma95 {
        #[command(flatten)]
        params: Params,
        /// Comma-separated subset of 1..=m.
        #[arg(long, value_delimiter = ',')]
        t: Vec<u32>,
        /// Robot index in m+1..=m+n.
        #[arg(long)]
        p: u32,
        #[arg(long)]
        primed: bool,
    },
}

enum Failure {
    Usage(String),
    Compute(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::TheoremCheckFailed { .. } | Error::BudgetExceeded { .. } | Error::IntegerOverflow => {
                Failure::Compute(e.to_string())
            }
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn spec_for(p: Params, space: &str) -> Result<SpaceSpec, Failure> {
    let space: Space = space.parse()?;
    Ok(SpaceSpec::new(p.n, p.m, p.k, space)?)
}

fn verify(params: Params, json: Option<PathBuf>) -> Result<(), Failure> {
    let spec = spec_for(params, "ebe")?;
    let start = Instant::now();
    let mut cert = verify_theorem(&spec)?;
    cert.elapsed_ms = start.elapsed().as_millis() as u64;
    let tc = cert.tc_exact.map_or("?".to_string(), |v| v.to_string());
    println!("n = {}, m = {}, k = {}", cert.n, cert.m, cert.k);
    println!("tc = {tc} (lower {}, upper {})", cert.lower_bound, cert.upper_bound);
    println!("factors: {}", cert.factor_list.len());
    for f in &cert.factor_list {
        println!("  ({f})");
    }
    println!("witness: {} * {}", cert.witness_coefficient, cert.witness_monomial);
    println!("elapsed: {} ms", cert.elapsed_ms);
    if let Some(path) = json {
        fs::write(&path, cert.to_json() + "\n")
            .map_err(|e| Failure::Compute(format!("writing {}: {e}", path.display())))?;
        println!("certificate written to {}", path.display());
    }
    Ok(())
}

fn basis(params: Params, grade: u32, space: &str) -> Result<(), Failure> {
    let spec = spec_for(params, space)?;
    let monos = enumerate_basis(&spec, grade);
    println!("{}", monos.len());
    for mono in monos {
        println!("{mono}");
    }
    Ok(())
}

fn eval(text: &str, params: Params, space: &str) -> Result<(), Failure> {
    let spec = spec_for(params, space)?;
    match eval_str(text, &spec) {
        Ok(x) => {
            println!("{x}");
            Ok(())
        }
        Err(Error::Syntax(e)) => {
            let caret = format!("{}^", " ".repeat(e.offset));
            Err(Failure::Usage(format!("{e}\n  {text}\n  {caret}")))
        }
        Err(e) => Err(e.into()),
    }
}

fn search(params: Params, max_length: Option<u32>, max_candidates: u64, threads: usize) -> Result<(), Failure> {
    let spec = spec_for(params, "ebe")?;
    let max_length = max_length.unwrap_or(top_grade(&spec) + 1);
    match exhaustive_zero_divisor_search(&spec, max_length, max_candidates, threads) {
        Ok(out) => {
            println!("best nonzero length: {}", out.bound.value);
            let factors: Vec<String> =
                out.witness.iter().map(|(i, j)| format!("(w({i},{j}) - w'({i},{j}))")).collect();
            println!("witness product: {}", if factors.is_empty() { "1".into() } else { factors.join("*") });
            println!("candidates: {}", out.candidates);
            Ok(())
        }
        Err(Error::BudgetExceeded { best, candidates }) => {
            println!("best nonzero length: {best} (partial)");
            println!("candidates: {candidates}");
            Err(Error::BudgetExceeded { best, candidates }.into())
        }
        Err(e) => Err(e.into()),
    }
}

fn poincare(params: Params, space: &str) -> Result<(), Failure> {
    let spec = spec_for(params, space)?;
    let poly = poincare_polynomial(&spec);
    println!("{poly}");
    println!("total rank: {}", poly.total());
    Ok(())
}

fn lemma95(params: Params, t: &[u32], p: u32, primed: bool) -> Result<(), Failure> {
    let spec = spec_for(params, "ebe")?;
    let (direct, closed) = lemma_95_expand(&spec, t, p, primed)?;
    println!("direct:      {direct}");
    println!("closed form: {closed}");
    if direct == closed {
        println!("equal");
        Ok(())
    } else {
        Err(Failure::Compute("expansions differ".into()))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify { params, json } => verify(params, json),
        Command::Basis { params, grade, space } => basis(params, grade, &space),
        Command::Eval { expr, params, space } => eval(&expr, params, &space),
        Command::Search { params, max_length, max_candidates, threads } => {
            search(params, max_length, max_candidates, threads)
        }
        Command::Poincare { params, space } => poincare(params, &space),
        Command::Lemma95 { params, t, p, primed } => lemma95(params, &t, p, primed),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Compute(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
