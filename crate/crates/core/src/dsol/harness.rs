//! Executable checks of the precision behaviour of [`dsol`].
//!
//! * [`check_first_differential`]: perturbing `g` by `p^j·w` moves the solution
//!   by `p^j·h(Y)·∫w` up to `O(p^{2j})`.
//! * [`check_perturbation_equivalence`]: perturbations of `g` with `∫δ ≡ 0 mod p^κ`
//!   are exactly the ones that leave the solution unchanged mod `p^κ`.
//! * [`sharpness`]: `y' = p^s·t^{p^s−1}` loses exactly `s` digits.
//! * [`oracle_equivalence`]: solve for `g = y'/h(y)` and recover a random `y`.
//!
//! Randomised suites are seeded per trial, so results do not depend on [`Exec`].

use num_bigint::{BigUint, RandBigInt};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{check_kappa, dsol, floor_log};
use crate::error::{Error, Result};
use crate::par::{map_range, Exec};
use crate::pseries::{RhsSpec, TruncSeries};
use crate::zpfixed::{PadicContext, Valuation};

pub fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ (trial as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// Uniform series with `coeffs[i] ∈ [0, p^λ)` for `i ≥ 1` and zero constant term.
pub fn random_solution(ctx: &PadicContext, order: usize, rng: &mut ChaCha8Rng) -> TruncSeries {
    let coeffs: Vec<BigUint> = (0..order)
        .map(|i| if i == 0 { BigUint::default() } else { rng.gen_biguint_below(ctx.modulus()) })
        .collect();
    TruncSeries::new(ctx, &coeffs)
}

/// Uniform series of the given order with every coefficient divisible by `p^k`.
pub fn random_multiple(ctx: &PadicContext, order: usize, k: u32, rng: &mut ChaCha8Rng) -> TruncSeries {
    let pk = ctx.pow_p(k);
    let coeffs: Vec<BigUint> = (0..order).map(|_| rng.gen_biguint_below(ctx.modulus()) * &pk).collect();
    TruncSeries::new(ctx, &coeffs)
}

/// The `g` for which `y` solves `y' = g·h(y)`: `y'/h(y)`, known mod `t^{order−1}`.
pub fn rhs_for_solution(y: &TruncSeries, h: &RhsSpec) -> Result<TruncSeries> {
    y.derivative()?.mul(&h.compose(y)?.truncated(y.order() - 1)?.invert()?)
}

/// Whether `dsol(g + p^j·w) − dsol(g) ≡ p^j·h(Y(g))·∫w (mod p^{2j}, t^{n+1})`.
///
/// Needs p ≥ 3, `∫w` p-integral, and `2j + ⌊log_p n⌋ ≤ λ` so both solves are
/// accurate mod `p^{2j}`.
pub fn check_first_differential(g: &TruncSeries, h: &RhsSpec, w: &TruncSeries, j: u32, n: usize) -> Result<bool> {
    let ctx = g.ctx();
    if ctx.p() < 3 {
        return Err(Error::Precondition("first-differential check needs p >= 3".into()));
    }
    if j < 1 || 2 * j + floor_log(n as u64, ctx.p()) > ctx.lambda() {
        return Err(Error::Precondition("need j >= 1 and 2j + floor(log_p n) <= lambda".into()));
    }
    let g = g.truncated(n)?;
    let w = w.truncated(n)?;
    let int_w = w.antiderivative()?;
    let pj = TruncSeries::new(ctx, &[ctx.pow_p(j)]).coeff(0);
    let y0 = dsol(&g, h, n)?.series;
    let y1 = dsol(&g.add(&w.scale(&pj)?)?, h, n)?.series;
    let lhs = y1.sub(&y0)?;
    let rhs = h.compose(&y0)?.mul(&int_w)?.scale(&pj)?;
    lhs.congruent(&rhs, 2 * j, n + 1)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PerturbationReport {
    pub forward_pass: usize,
    pub forward_fail: usize,
    pub converse_pass: usize,
    pub converse_fail: usize,
}

impl PerturbationReport {
    pub fn all_passed(&self) -> bool {
        self.forward_fail == 0 && self.converse_fail == 0
    }
}

/// Randomised check of both directions of the perturbation equivalence at order `n`.
///
/// Forward: `δ = D'` with `D ≡ 0 mod p^κ` leaves `dsol` unchanged mod `(p^κ, t^{n+1})`.
/// Converse: for `v ≡ 0 mod p^κ`, the `ḡ` solved by `Y(g) + v` has `∫(ḡ − g) ≡ 0 mod p^κ`.
pub fn check_perturbation_equivalence(
    g: &TruncSeries,
    h: &RhsSpec,
    kappa: u32,
    trials: usize,
    n: usize,
    seed: u64,
    exec: Exec,
) -> Result<PerturbationReport> {
    let ctx = g.ctx();
    check_kappa(ctx.p(), kappa)?;
    if ctx.lambda() < kappa + floor_log(n as u64, ctx.p()) {
        return Err(Error::Precondition("lambda < kappa + floor(log_p n)".into()));
    }
    let g = g.truncated(n)?;
    let y0 = dsol(&g, h, n)?.series;
    let outcomes = map_range(exec, trials, |i| -> Result<(bool, bool)> {
        let mut rng = trial_rng(seed, i);
        let d = random_multiple(ctx, n + 1, kappa, &mut rng);
        let delta = d.derivative()?;
        let forward = match dsol(&g.add(&delta)?, h, n) {
            Ok(sol) => sol.series.congruent(&y0, kappa, n + 1)?,
            Err(_) => false,
        };

        let mut v = random_multiple(ctx, n + 1, kappa, &mut rng).reps();
        v[0] = BigUint::default();
        let y2 = y0.add(&TruncSeries::new(ctx, &v))?;
        let g_bar = rhs_for_solution(&y2, h)?;
        let converse = match g_bar.sub(&g)?.antiderivative() {
            Ok(int) => int.congruent(&TruncSeries::zero(ctx, n + 1), kappa, n + 1)?,
            Err(_) => false,
        };
        Ok((forward, converse))
    });
    let mut report = PerturbationReport::default();
    for outcome in outcomes {
        let (f, c) = outcome?;
        if f {
            report.forward_pass += 1;
        } else {
            report.forward_fail += 1;
        }
        if c {
            report.converse_pass += 1;
        } else {
            report.converse_fail += 1;
        }
    }
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SharpnessReport {
    pub p: u64,
    pub s: u32,
    pub lambda: u32,
    /// The two inputs coincide in `Z/p^λ`.
    pub inputs_congruent: bool,
    /// Largest k with the two exact solutions equal mod `p^k` (capped at λ).
    pub outputs_agree_to: u32,
    /// `λ − outputs_agree_to`.
    pub lost_digits: u32,
    /// The solve at precision λ matches both exact solutions mod `p^{λ−s}`.
    pub solve_within_guarantee: bool,
}

/// Measures the precision lost on `y' = p^s·t^{b−1}`, `b = p^s`, at order `n = b`.
///
/// The inputs `p^s·t^{b−1}` and `(p^s + p^λ)·t^{b−1}` agree mod `p^λ`; their exact
/// solutions `t^b` and `(1 + p^{λ−s})·t^b` are computed at precision `λ + s`.
pub fn sharpness(p: u64, s: u32, lambda: u32) -> Result<SharpnessReport> {
    if s < 1 || lambda <= s {
        return Err(Error::Precondition("need 1 <= s < lambda".into()));
    }
    let ctx = PadicContext::new(p, lambda)?;
    let hi = ctx.with_lambda(lambda + s)?;
    let b = usize::try_from(num_traits::pow(p, s as usize))
        .map_err(|_| Error::Precondition("p^s too large".into()))?;
    let n = b;
    let one = RhsSpec::polynomial_i64(&[1])?;

    let coeff1 = hi.pow_p(s);
    let coeff2 = hi.pow_p(s) + hi.pow_p(lambda);
    let series_with = |c: &BigUint| {
        let mut v = vec![BigUint::default(); n];
        v[b - 1] = c.clone();
        TruncSeries::new(&hi, &v)
    };
    let g1 = series_with(&coeff1);
    let g2 = series_with(&coeff2);
    let inputs_congruent = g1.convert(&ctx)? == g2.convert(&ctx)?;

    let y1 = dsol(&g1, &one, n)?;
    let y2 = dsol(&g2, &one, n)?;
    debug_assert!(y1.guaranteed_precision >= lambda);
    let y1 = y1.series.convert(&ctx)?;
    let y2 = y2.series.convert(&ctx)?;
    let outputs_agree_to = match y1.difference_valuation(&y2)? {
        Valuation::Finite(v) => v,
        Valuation::Infinite => lambda,
    };

    let low = dsol(&g1.convert(&ctx)?, &one, n)?.series;
    let k = lambda - s;
    let solve_within_guarantee = low.congruent(&y1, k, n + 1)? && low.congruent(&y2, k, n + 1)?;

    Ok(SharpnessReport {
        p,
        s,
        lambda,
        inputs_congruent,
        outputs_agree_to,
        lost_digits: lambda - outputs_agree_to,
        solve_within_guarantee,
    })
}

/// One randomised instance: `y` uniform with `y(0) = 0`, `g = y'/h(y)`, and the
/// solve run at `λ` must return `y` mod `(p^κ, t^{n+1})`, `κ = λ − ⌊log_p n⌋`.
#[derive(Clone, Debug)]
pub struct OracleCase {
    pub p: u64,
    pub lambda: u32,
    pub n: usize,
    pub h: RhsSpec,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleOutcome {
    pub kappa: u32,
    pub passed: bool,
}

pub fn oracle_equivalence(case: &OracleCase) -> Result<OracleOutcome> {
    let ctx = PadicContext::new(case.p, case.lambda)?;
    let kappa = case.lambda.saturating_sub(floor_log(case.n as u64, case.p));
    check_kappa(case.p, kappa)?;
    let mut rng = trial_rng(case.seed, 0);
    let y = random_solution(&ctx, case.n + 1, &mut rng);
    let g = rhs_for_solution(&y, &case.h)?;
    let sol = dsol(&g, &case.h, case.n)?;
    Ok(OracleOutcome { kappa, passed: sol.guaranteed_precision == kappa && sol.series.congruent(&y, kappa, case.n + 1)? })
}

/// Runs a batch of [`OracleCase`]s; returns the number of failures (errors count as failures).
pub fn oracle_equivalence_suite(cases: &[OracleCase], exec: Exec) -> usize {
    map_range(exec, cases.len(), |i| oracle_equivalence(&cases[i]).map(|o| o.passed).unwrap_or(false))
        .into_iter()
        .filter(|ok| !ok)
        .count()
}
