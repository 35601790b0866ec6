//! Newton iteration for `y' = g·h(y)`, `y(0) = 0`, in the fixed-precision model.
//!
//! [`dsol`] doubles the known t-adic order at each step while every
//! intermediate value stays in the single ring `Z/p^λ`. With
//! `λ = κ + ⌊log_p n⌋` the output agrees with the true solution mod
//! `(p^κ, t^{n+1})`, and that loss of `⌊log_p n⌋` digits is unavoidable.
//! [`plan`] computes this budget next to the larger one obtained by charging
//! every Newton step separately ([`mu`]).

pub mod harness;

use crate::error::{Error, Result};
use crate::pseries::{RhsSpec, TruncSeries};
use crate::zpfixed::is_prime;

/// `⌊log_p n⌋` for `n ≥ 1`, and 0 for `n = 0`.
pub fn floor_log(n: u64, p: u64) -> u32 {
    let mut k = 0;
    let mut q = n;
    while q >= p {
        q /= p;
        k += 1;
    }
    k
}

/// Precision lost when each Newton step is analysed separately:
/// `μ(0) = 0`, `μ(n) = ⌊log_p n⌋ + μ(⌈(n−1)/2⌉)`. Grows like `log(n)^2`.
pub fn mu(n: u64, p: u64) -> u32 {
    let mut total = 0;
    let mut k = n;
    while k > 0 {
        total += floor_log(k, p);
        k /= 2;
    }
    total
}

/// The precision budget for computing the solution mod `(p^κ, t^{n+1})`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolvePlan {
    pub p: u64,
    pub n: u64,
    pub kappa: u32,
    /// Sufficient working precision `κ + ⌊log_p n⌋`.
    pub lambda: u32,
    /// Working precision from the step-by-step analysis, `κ + μ(n)`.
    pub mu_lambda: u32,
}

pub fn check_kappa(p: u64, kappa: u32) -> Result<()> {
    if kappa < 1 || (p == 2 && kappa < 2) {
        return Err(Error::KappaTooSmall { p, kappa });
    }
    Ok(())
}

pub fn plan(kappa: u32, n: u64, p: u64) -> Result<SolvePlan> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    check_kappa(p, kappa)?;
    Ok(SolvePlan { p, n, kappa, lambda: kappa + floor_log(n, p), mu_lambda: kappa + mu(n, p) })
}

/// Output of a solve: the series mod `(p^λ, t^{n+1})` plus the precision `κ`
/// up to which it is guaranteed to agree with the true solution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub series: TruncSeries,
    /// `λ − ⌊log_p n⌋`, or 0 when nothing is guaranteed (including κ = 1 at p = 2).
    pub guaranteed_precision: u32,
}

/// Precision guaranteed by a solve at order `n` in `Z/p^λ`.
pub fn guaranteed_precision(p: u64, lambda: u32, n: u64) -> u32 {
    let k = lambda.saturating_sub(floor_log(n, p));
    if p == 2 && k < 2 {
        0
    } else {
        k
    }
}

/// One Newton step `u − h(u)·∫(u'/h(u) − g)`, returned mod `t^{target_order+1}`.
///
/// `u` is read as a polynomial. If `u` agrees with the solution mod `t^k` the
/// result agrees mod `t^{2k}`, so `target_order + 1 ≤ 2k` gives a correct step.
pub fn newton_step(g: &TruncSeries, h: &RhsSpec, u: &TruncSeries, target_order: usize) -> Result<TruncSeries> {
    if g.ctx() != u.ctx() {
        return Err(Error::ContextMismatch);
    }
    if u.order() == 0 || !u.coeff(0).is_zero() {
        return Err(Error::Precondition("newton step needs u(0) = 0".into()));
    }
    let n = target_order;
    let g = g.truncated(n)?;
    let u = u.padded(n + 1);
    let hu = h.compose(&u)?;
    let e = u.derivative()?.mul_unchecked(&hu.truncated(n)?.invert()?).sub_unchecked(&g);
    let integral = e.antiderivative()?;
    Ok(u.sub_unchecked(&hu.mul_unchecked(&integral)))
}

/// Successive target orders of the Newton iteration, smallest first: the
/// sequence `n, ⌈(n−1)/2⌉, …` down to (excluding) 0, reversed.
pub fn order_schedule(n: usize) -> Vec<usize> {
    let mut seq = Vec::new();
    let mut k = n;
    while k > 0 {
        seq.push(k);
        k /= 2;
    }
    seq.reverse();
    seq
}

/// Solves `y' = g·h(y)`, `y(0) = 0` mod `t^{n+1}` at the precision of `g`'s ring.
///
/// `g` must be known mod `t^n`. Fails with [`Error::NonIntegralCoefficient`]
/// when the solution is not p-integral up to degree `n`.
pub fn dsol(g: &TruncSeries, h: &RhsSpec, n: usize) -> Result<Solution> {
    let ctx = g.ctx();
    if g.order() < n {
        return Err(Error::Precondition(format!("g is known mod t^{} but n = {n}", g.order())));
    }
    let mut u = TruncSeries::zero(ctx, 1);
    for k in order_schedule(n) {
        u = newton_step(g, h, &u, k)?;
    }
    Ok(Solution { series: u, guaranteed_precision: guaranteed_precision(ctx.p(), ctx.lambda(), n as u64) })
}
