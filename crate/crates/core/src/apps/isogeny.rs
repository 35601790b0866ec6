//! `y'^2 = g·h(y)` and the benchmark instance
//! `y' = sqrt((1 + m²y²/4 + m⁶y⁶) / (1 + t²/4 + t⁶))`.

use std::io::Write;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::dsol::{dsol, plan, Solution};
use crate::error::{Error, Result};
use crate::par::{map_range, Exec};
use crate::pseries::{RhsSpec, TruncSeries};
use crate::zpfixed::{PadicContext, ZpElt};

/// Solves `y'^2 = g·h(y)`, `y(0) = 0`, as `y' = sqrt(g)·sqrt(h(y))`, mod `t^{n+1}`.
///
/// Needs odd p and `g(0) = h(0) = 1`, which pick the square roots with constant term 1.
pub fn solve_separated_square(g: &TruncSeries, h: &RhsSpec, n: usize) -> Result<Solution> {
    if g.ctx().p() == 2 {
        return Err(Error::EvenPrime);
    }
    let root_g = g.truncated(n)?.sqrt_unit()?;
    dsol(&root_g, &h.sqrt(), n)
}

fn quarter() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(4))
}

/// `h(u) = 1 + (m²/4)·u² + m⁶·u⁶`.
pub fn eq3_rhs(m: u64) -> RhsSpec {
    let m = BigInt::from(m);
    let mut c = vec![BigRational::zero(); 7];
    c[0] = BigRational::one();
    c[2] = BigRational::from_integer(&m * &m) * quarter();
    c[6] = BigRational::from_integer(num_traits::pow(m, 6));
    RhsSpec::Polynomial(c)
}

/// `g = 1/(1 + t²/4 + t⁶)` mod `t^n`.
pub fn eq3_g(ctx: &PadicContext, n: usize) -> Result<TruncSeries> {
    let q = ZpElt::from_rational(ctx, &quarter())?;
    let mut den = vec![ZpElt::from_u64(ctx, 0); n];
    for (k, c) in [(0usize, ZpElt::from_u64(ctx, 1)), (2, q), (6, ZpElt::from_u64(ctx, 1))] {
        if k < n {
            den[k] = c;
        }
    }
    TruncSeries::from_elts(ctx, &den)?.invert()
}

pub const BENCH_CSV_HEADER: &str = "m,lambda_old,lambda_new,t_old_ms,t_new_ms,speedup";

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub m: u64,
    pub lambda_old: u32,
    pub lambda_new: u32,
    pub t_old_ms: f64,
    pub t_new_ms: f64,
    pub speedup: f64,
}

impl BenchRow {
    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{:.3},{:.3},{:.3}",
            self.m, self.lambda_old, self.lambda_new, self.t_old_ms, self.t_new_ms, self.speedup
        )
    }
}

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub p: u64,
    pub m_list: Vec<u64>,
    /// Instances run sequentially by default so timings do not interfere.
    pub exec: Exec,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig { p: 5, m_list: vec![1, 2, 11, 101, 1001], exec: Exec::Sequential }
    }
}

/// `(λ_old, λ_new) = (1 + μ(4m), 1 + ⌊log_p 4m⌋)` for computing `y` mod `(p, t^{4m+1})`.
pub fn bench_plan(p: u64, m: u64) -> Result<(u32, u32)> {
    if m == 0 {
        return Err(Error::InvalidInput("m must be at least 1".into()));
    }
    let pl = plan(1, 4 * m, p)?;
    Ok((pl.mu_lambda, pl.lambda))
}

fn timed_solve(p: u64, lambda: u32, m: u64) -> Result<(TruncSeries, f64)> {
    let ctx = PadicContext::new(p, lambda)?;
    let n = 4 * m as usize;
    let g = eq3_g(&ctx, n)?;
    let h = eq3_rhs(m);
    let start = Instant::now();
    let sol = solve_separated_square(&g, &h, n)?;
    Ok((sol.series, start.elapsed().as_secs_f64() * 1e3))
}

fn bench_one(p: u64, m: u64) -> Result<BenchRow> {
    let (lambda_old, lambda_new) = bench_plan(p, m)?;
    let (y_old, t_old_ms) = timed_solve(p, lambda_old, m)?;
    let (y_new, t_new_ms) = timed_solve(p, lambda_new, m)?;
    let fp = PadicContext::new(p, 1)?;
    if y_old.convert(&fp)? != y_new.convert(&fp)? {
        return Err(Error::Precondition(format!("outputs at lambda_old and lambda_new differ mod p for m = {m}")));
    }
    let speedup = if t_new_ms > 0.0 { t_old_ms / t_new_ms } else { f64::NAN };
    Ok(BenchRow { m, lambda_old, lambda_new, t_old_ms, t_new_ms, speedup })
}

/// Solves the benchmark equation at both precisions for every `m`, checks
/// the two results agree mod `(p, t^{4m+1})` and reports the timings.
pub fn bench_isogeny(config: &BenchConfig) -> Result<Vec<BenchRow>> {
    if config.p == 2 {
        return Err(Error::EvenPrime);
    }
    map_range(config.exec, config.m_list.len(), |i| bench_one(config.p, config.m_list[i])).into_iter().collect()
}

pub fn write_bench_csv<W: Write>(rows: &[BenchRow], out: &mut W) -> std::io::Result<()> {
    writeln!(out, "{BENCH_CSV_HEADER}")?;
    for row in rows {
        writeln!(out, "{}", row.csv_line())?;
    }
    Ok(())
}
