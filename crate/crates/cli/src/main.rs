//! `scrimkit`: factor `x^n - 1` over `F_{q^2}`, count and list Hermitian
//! LCD and self-dual cyclic codes, and sweep parameter ranges.
//!
//! Exit codes: 0 success, 2 invalid flags, 3 precondition violated,
//! 4 internal re-verification failure, 5 unwritable output.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use scrimkit::chainring::{self, CyclicCodeCR};
use scrimkit::hlcd::{self, LcdContext};
use scrimkit::numtheory::{self, gcd};
use scrimkit::scrim::{self, FactorizationReport};
use scrimkit::{Budget, Error};

/// Largest splitting-field degree for which `census` also factors explicitly.
const CENSUS_EXPLICIT_MAX_DEGREE: u64 = 64;

const CSV_HEADER: [&str; 9] = ["q", "n", "t", "omega", "lambda", "lcd_count", "selfdual_count", "agree", "ms"];

#[derive(Parser)]
#[command(name = "scrimkit", version, about = "Self-conjugate-reciprocal factors of x^n - 1 and Hermitian cyclic codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Factor x^n - 1 over F_{q^2} into Ω and Λ.
    Factor {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Count (and optionally list) Hermitian LCD or self-dual cyclic codes.
    Codes {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: u64,
        /// Nilpotency index of the chain ring (self-dual mode).
        #[arg(long)]
        t: Option<usize>,
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long)]
        enumerate: bool,
    },
    /// Sweep q and n and tabulate the counts.
    Census {
        #[arg(long, value_delimiter = ',', required = true)]
        q_list: Vec<u64>,
        #[arg(long)]
        n_max: u64,
        #[arg(long, value_delimiter = ',')]
        t_list: Vec<usize>,
        #[arg(long, value_enum)]
        out: OutFormat,
        /// Write rows here instead of standard output.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Lcd,
    Selfdual,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Csv,
    Jsonl,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Internal(_) | Error::LiftMismatch(_) => 4,
            _ => 3,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::new(5, format!("cannot write output: {e}"))
    }
}

type CliResult<T> = Result<T, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> CliResult<()> {
    let budget = Budget::from_env().map_err(|e| Failure::new(2, e.to_string()))?;
    match cli.command {
        Command::Factor { q, n, format } => cmd_factor(q, n, format),
        Command::Codes { q, n, t, mode, enumerate } => match mode {
            Mode::Lcd => cmd_codes_lcd(q, n, enumerate, budget),
            Mode::Selfdual => cmd_codes_selfdual(q, n, t, enumerate, budget),
        },
        Command::Census { q_list, n_max, t_list, out, output } => {
            cmd_census(q_list, n_max, t_list, out, output)
        }
    }
}

fn cmd_factor(q: u64, n: u64, format: Format) -> CliResult<()> {
    let report = scrim::factor_xn_minus_1(q, n)?;
    if !report.product_is_exact() || !report.daggers_are_consistent() {
        return Err(Failure::new(4, "factorization failed re-verification"));
    }
    if !report.counts.agree() {
        eprintln!("warning: counting methods disagree: {:?}", report.counts);
    }
    let text = match format {
        Format::Json => serde_json::to_string_pretty(&factor_json(&report)).expect("serializable"),
        Format::Text => factor_text(&report),
    };
    println!("{text}");
    Ok(())
}

fn factor_json(r: &FactorizationReport) -> serde_json::Value {
    let pr = r.ring();
    let c = r.counts;
    json!({
        "q": r.q,
        "n": r.n,
        "field": {
            "p": r.field().p(),
            "e": r.field().e(),
            "modulus": r.field().modulus(),
        },
        "omega": r.omega().iter().map(|f| pr.render(f)).collect::<Vec<_>>(),
        "lambda": r.lambda_pairs().iter().map(|(g, h)| [pr.render(g), pr.render(h)]).collect::<Vec<_>>(),
        "counts": {
            "explicit": { "omega": c.explicit.omega, "lambda": c.explicit.lambda },
            "direct": { "omega": c.direct.omega, "lambda": c.direct.lambda },
            "recursive": { "omega": c.recursive },
        },
    })
}

fn factor_text(r: &FactorizationReport) -> String {
    let pr = r.ring();
    let c = r.counts;
    let mut s = format!("x^{} - 1 over F_{} (q = {})\n", r.n, r.field().size(), r.q);
    s += &format!("omega ({}):\n", r.omega().len());
    for f in r.omega() {
        s += &format!("  {}\n", pr.render(f));
    }
    s += &format!("lambda ({}):\n", r.lambda_pairs().len());
    for (g, h) in r.lambda_pairs() {
        s += &format!("  {}  |  {}\n", pr.render(g), pr.render(h));
    }
    s += &format!(
        "counts: explicit omega={} lambda={}; direct omega={} lambda={}; recursive omega={}",
        c.explicit.omega, c.explicit.lambda, c.direct.omega, c.direct.lambda, c.recursive
    );
    s
}

fn cmd_codes_lcd(q: u64, n: u64, enumerate: bool, budget: Budget) -> CliResult<()> {
    let count = hlcd::count_hermitian_lcd(q, n)?;
    let stdout = io::stdout();
    let mut out = stdout.lock();
    writeln!(out, "{count}")?;
    if enumerate {
        let ctx = LcdContext::with_budget(q, n, budget)?;
        let pr = ctx.ring();
        for code in ctx.enumerate()? {
            if !ctx.is_hermitian_lcd(&code)? {
                return Err(Failure::new(4, format!("{} is not LCD", pr.render(&code.generator))));
            }
            writeln!(out, "{}", pr.render(&code.generator))?;
        }
    }
    Ok(())
}

fn cmd_codes_selfdual(q: u64, n: u64, t: Option<usize>, enumerate: bool, budget: Budget) -> CliResult<()> {
    let t = t.ok_or_else(|| Failure::new(3, "self-dual mode needs --t >= 2"))?;
    let count = chainring::count_self_dual(q, n, t)?;
    let stdout = io::stdout();
    let mut out = stdout.lock();
    writeln!(out, "{count}")?;
    if enumerate {
        let lift = Arc::new(chainring::hensel_lift(q, n, t)?);
        let pr = lift.poly_ring();
        for code in chainring::enumerate_self_dual(&lift, &budget)? {
            verify_self_dual(&code, &budget)?;
            let k: Vec<String> = code.k.iter().map(usize::to_string).collect();
            writeln!(out, "k=({})  {}", k.join(","), pr.render(&code.generator()))?;
        }
    }
    Ok(())
}

fn verify_self_dual(code: &CyclicCodeCR, budget: &Budget) -> CliResult<()> {
    if !code.is_hermitian_self_dual() {
        return Err(Failure::new(4, format!("exponents {:?} are not self-dual", code.k)));
    }
    match chainring::codeword_duality_oracle(code, budget) {
        Ok(true) | Err(Error::OracleTooLarge(_)) => Ok(()),
        Ok(false) => Err(Failure::new(4, format!("codeword check rejects exponents {:?}", code.k))),
        Err(e) => Err(e.into()),
    }
}

#[derive(Serialize)]
struct CensusRow {
    q: u64,
    n: u64,
    t: Option<usize>,
    omega: u64,
    lambda: u64,
    lcd_count: String,
    selfdual_count: Option<String>,
    agree: bool,
    ms: u64,
}

struct Counted {
    omega: u64,
    lambda: u64,
    lcd_count: String,
    agree: bool,
}

fn count_row(q: u64, n: u64) -> Result<Counted, Error> {
    let direct = scrim::count_direct(q, n)?;
    let recursive = scrim::count_recursive(q, n)?;
    let mut agree = direct.omega == recursive;
    let m = numtheory::mult_order(numtheory::mul_mod(q % n, q % n, n), n)?;
    if m <= CENSUS_EXPLICIT_MAX_DEGREE {
        agree &= scrim::factor_xn_minus_1(q, n)?.counts.explicit == direct;
    }
    Ok(Counted {
        omega: direct.omega,
        lambda: direct.lambda,
        lcd_count: hlcd::count_hermitian_lcd(q, n)?.to_string(),
        agree,
    })
}

fn cmd_census(
    mut q_list: Vec<u64>,
    n_max: u64,
    mut t_list: Vec<usize>,
    out: OutFormat,
    output: Option<PathBuf>,
) -> CliResult<()> {
    q_list.sort_unstable();
    q_list.dedup();
    t_list.sort_unstable();
    t_list.dedup();
    for &q in &q_list {
        if numtheory::prime_power_decompose(q).is_none() {
            return Err(Error::NotPrimePower(q).into());
        }
    }
    if let Some(&t) = t_list.iter().find(|&&t| t < 2) {
        return Err(Error::NilpotencyTooSmall(t).into());
    }
    let sink: Box<dyn Write> = match &output {
        Some(path) => Box::new(File::create(path).map_err(|e| {
            Failure::new(5, format!("cannot open {}: {e}", path.display()))
        })?),
        None => Box::new(io::stdout()),
    };
    let mut pairs = Vec::new();
    for &q in &q_list {
        for n in 1..=n_max {
            if gcd(q, n) == 1 {
                pairs.push((q, n));
            } else {
                eprintln!("note: skipping q={q} n={n} (not coprime)");
            }
        }
    }
    let rows: Vec<Vec<CensusRow>> = pairs
        .par_iter()
        .map(|&(q, n)| -> Result<Vec<CensusRow>, Error> {
            let start = Instant::now();
            let c = count_row(q, n)?;
            let base_ms = start.elapsed().as_millis() as u64;
            if t_list.is_empty() {
                return Ok(vec![CensusRow {
                    q,
                    n,
                    t: None,
                    omega: c.omega,
                    lambda: c.lambda,
                    lcd_count: c.lcd_count,
                    selfdual_count: None,
                    agree: c.agree,
                    ms: base_ms,
                }]);
            }
            t_list
                .iter()
                .map(|&t| {
                    let start = Instant::now();
                    let sd = chainring::count_self_dual(q, n, t)?;
                    Ok(CensusRow {
                        q,
                        n,
                        t: Some(t),
                        omega: c.omega,
                        lambda: c.lambda,
                        lcd_count: c.lcd_count.clone(),
                        selfdual_count: Some(sd.to_string()),
                        agree: c.agree,
                        ms: base_ms + start.elapsed().as_millis() as u64,
                    })
                })
                .collect()
        })
        .collect::<Result<_, _>>()?;
    let rows = rows.into_iter().flatten();
    let mut sink = BufWriter::new(sink);
    match out {
        OutFormat::Csv => {
            let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(&mut sink);
            w.write_record(CSV_HEADER)
                .map_err(|e| Failure::new(5, format!("cannot write output: {e}")))?;
            for row in rows {
                w.serialize(row).map_err(|e| Failure::new(5, format!("cannot write output: {e}")))?;
            }
            w.flush()?;
        }
        OutFormat::Jsonl => {
            for row in rows {
                writeln!(sink, "{}", serde_json::to_string(&row).expect("serializable"))?;
            }
        }
    }
    sink.flush()?;
    Ok(())
}
