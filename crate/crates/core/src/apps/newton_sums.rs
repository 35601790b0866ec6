use super::MonicPoly;
use crate::dsol::dsol;
use crate::error::{Error, Result};
use crate::pseries::{RhsSpec, TruncSeries};

/// `H_f = Σ_{k≥0} ν_{k+1} t^k`, the generating series of the power sums of the roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonSeries {
    pub series: TruncSeries,
    pub degree: usize,
}

/// `H_f` mod `(p^λ, t^n)`, as `−rev(f)'/rev(f)` with `rev(f) = x^d f(1/x)`.
pub fn newton_series(f: &MonicPoly, n: usize) -> NewtonSeries {
    let rev = f.reversed(n + 1);
    let series = rev
        .derivative()
        .expect("order n + 1 >= 1")
        .mul_unchecked(&rev.truncated(n).expect("shorter").invert().expect("rev(f)(0) = 1"))
        .neg();
    NewtonSeries { series, degree: f.degree() }
}

/// A monic polynomial recovered from power sums, with the number of p-adic
/// digits of each coefficient that are guaranteed correct.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recovered {
    pub poly: MonicPoly,
    pub guaranteed_precision: u32,
}

/// Recovers the degree-`d` monic `f` from `H_f` mod `t^d`.
///
/// `rev(f) = 1 + z` where `z' = −H·(1 + z)`, `z(0) = 0`; each coefficient is
/// correct mod `p^{λ−⌊log_p d⌋}`.
pub fn recover_from_newton_series(h_series: &TruncSeries, d: usize) -> Result<Recovered> {
    if h_series.order() < d {
        return Err(Error::Precondition(format!("need H mod t^{d}, got mod t^{}", h_series.order())));
    }
    let ctx = h_series.ctx();
    let linear = RhsSpec::polynomial_i64(&[1, 1])?;
    let sol = dsol(&h_series.truncated(d)?.neg(), &linear, d)?;
    let rev = sol.series.raw();
    // rev(f)_k = c_{d−k}; rev(f)_0 = 1 is implicit
    let coeffs = (0..d).map(|i| rev[d - i].clone()).collect();
    Ok(Recovered { poly: MonicPoly::from_reps(ctx, coeffs), guaranteed_precision: sol.guaranteed_precision })
}
