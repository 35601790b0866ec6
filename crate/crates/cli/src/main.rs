mod input;
mod selftest;

use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use padic_ode::apps::{
    bench_isogeny, bench_plan, composed_product, newton_series, recover_from_newton_series, solve_separated_square,
    write_bench_csv, BenchConfig, MonicPoly,
};
use padic_ode::dsol::{dsol, plan, Solution};
use padic_ode::pseries::text::format_series;
use padic_ode::{stats, Error, Exec, PadicContext};

/// Power-series solutions of y' = g·h(y) over Z/p^λ at optimal precision.
///
/// Exit codes: 0 success, 1 bad arguments or input, 2 precondition violated,
/// 3 solution not p-integral, 4 selftest failure.
#[derive(Parser)]
#[command(name = "padic-ode", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve y' = g·h(y), y(0) = 0 mod (p^kappa, t^(n+1)).
    Solve(SolveArgs),
    /// Solve y'^2 = g·h(y), y(0) = 0, y'(0) = 1 mod (p^kappa, t^(n+1)). Odd p only.
    SqrtSolve(SolveArgs),
    /// Print the Newton-sum series H_f mod (p^lambda, t^n).
    NewtonSums {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        lambda: u32,
        #[arg(long)]
        n: usize,
        /// Monic polynomial, full little-endian coefficients (leading 1 last).
        #[arg(long)]
        f: String,
    },
    /// Recover the degree-d monic polynomial from its Newton-sum series.
    Recover {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        lambda: u32,
        #[arg(long)]
        d: usize,
        /// Newton-sum series, known mod t^d.
        #[arg(long)]
        series: String,
    },
    /// Composed product of two monic polynomials over F_p.
    ComposedProduct {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    /// Benchmark equation at the old and new working precisions; CSV output.
    Bench {
        #[arg(long, default_value_t = 5)]
        p: u64,
        /// Comma-separated values of m.
        #[arg(long, value_delimiter = ',')]
        m: Vec<u64>,
        /// Print the two precisions only, without solving.
        #[arg(long)]
        dry_run: bool,
        /// Run the values of m concurrently.
        #[arg(long)]
        parallel: bool,
        #[arg(long)]
        out: Option<String>,
    },
    /// Run built-in worked examples.
    Selftest,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    kappa: u32,
    #[arg(long)]
    n: usize,
    /// g: inline:<expr>, coeffs:c0,c1,..., file:<path> or a path.
    #[arg(long)]
    g: String,
    /// h: poly:c0,c1,... | rat:P/Q | sqrtrat:P/Q.
    #[arg(long)]
    h: String,
    /// Also write the series (text format only) to this file.
    #[arg(long)]
    out: Option<String>,
}

enum Failure {
    Usage(String),
    Compute(Error),
    Selftest(usize),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Compute(e)
    }
}

type CmdResult = Result<(), Failure>;

fn write_file(path: &str, text: &str) -> CmdResult {
    fs::write(path, text).map_err(|e| Failure::Usage(format!("cannot write {path}: {e}")))
}

fn solve(args: &SolveArgs, square: bool) -> CmdResult {
    let pl = plan(args.kappa, args.n as u64, args.p)?;
    let ctx = PadicContext::new(args.p, pl.lambda)?;
    let h = input::rhs(&args.h).map_err(Failure::Usage)?;
    let g = input::series(&args.g, &ctx, args.n).map_err(Failure::Usage)?;
    let Solution { series, guaranteed_precision } =
        if square { solve_separated_square(&g, &h, args.n)? } else { dsol(&g, &h, args.n)? };
    let text = format_series(&series.convert(&ctx.with_lambda(pl.kappa)?)?);
    if let Some(path) = &args.out {
        write_file(path, &text)?;
    }
    print!("{text}");
    println!("guaranteed_precision: {}^{guaranteed_precision}", args.p);
    Ok(())
}

fn poly_line(f: &MonicPoly) -> String {
    f.full_coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
}

fn bench(p: u64, m: Vec<u64>, dry_run: bool, parallel: bool, out: Option<String>) -> CmdResult {
    let m_list = if m.is_empty() { BenchConfig::default().m_list } else { m };
    if dry_run {
        stats::reset();
        for &m in &m_list {
            let (old, new) = bench_plan(p, m)?;
            println!("m={m} lambda_old={old} lambda_new={new}");
        }
        assert_eq!(stats::snapshot().series_mults, 0, "dry run performed series arithmetic");
        return Ok(());
    }
    let exec = if parallel { Exec::Parallel } else { Exec::Sequential };
    let rows = bench_isogeny(&BenchConfig { p, m_list, exec })?;
    let mut buf = Vec::new();
    write_bench_csv(&rows, &mut buf).expect("write to memory");
    let csv = String::from_utf8(buf).expect("ascii");
    match out {
        Some(path) => write_file(&path, &csv),
        None => {
            std::io::stdout().write_all(csv.as_bytes()).map_err(|e| Failure::Usage(e.to_string()))?;
            Ok(())
        }
    }
}

fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Solve(args) => solve(&args, false),
        Command::SqrtSolve(args) => solve(&args, true),
        Command::NewtonSums { p, lambda, n, f } => {
            let ctx = PadicContext::new(p, lambda)?;
            let f = input::monic(&f, &ctx).map_err(Failure::Usage)?;
            print!("{}", format_series(&newton_series(&f, n).series));
            Ok(())
        }
        Command::Recover { p, lambda, d, series } => {
            let ctx = PadicContext::new(p, lambda)?;
            let h = input::series(&series, &ctx, d).map_err(Failure::Usage)?;
            let rec = recover_from_newton_series(&h, d)?;
            let k = rec.guaranteed_precision;
            let shown = if k == 0 { rec.poly } else { rec.poly.convert(&ctx.with_lambda(k)?)? };
            println!("{}", poly_line(&shown));
            println!("guaranteed_precision: {p}^{k}");
            Ok(())
        }
        Command::ComposedProduct { p, f, g } => {
            let fp = PadicContext::new(p, 1)?;
            let f = input::monic(&f, &fp).map_err(Failure::Usage)?;
            let g = input::monic(&g, &fp).map_err(Failure::Usage)?;
            println!("{}", poly_line(&composed_product(&f, &g)?));
            Ok(())
        }
        Command::Bench { p, m, dry_run, parallel, out } => bench(p, m, dry_run, parallel, out),
        Command::Selftest => match selftest::run() {
            0 => Ok(()),
            n => Err(Failure::Selftest(n)),
        },
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Compute(e)) => {
            eprintln!("error: {e}");
            match e {
                Error::NonIntegralCoefficient(_) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
        Err(Failure::Selftest(n)) => {
            eprintln!("error: {n} selftest check(s) failed");
            ExitCode::from(4)
        }
    }
}
