//! Applications of the solver: Newton sums, composed products over `F_p`, and
//! the square-root equation `y'^2 = g·h(y)`.

mod composed;
mod isogeny;
mod newton_sums;

use std::fmt;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::pseries::TruncSeries;
use crate::zpfixed::{PadicContext, Rep, ZpElt};

pub use composed::composed_product;
pub use isogeny::{
    bench_isogeny, bench_plan, eq3_g, eq3_rhs, solve_separated_square, write_bench_csv, BenchConfig, BenchRow,
    BENCH_CSV_HEADER,
};
pub use newton_sums::{newton_series, recover_from_newton_series, NewtonSeries, Recovered};

/// A monic polynomial `t^d + c_{d−1}t^{d−1} + … + c_0` over `Z/p^λ`
/// (over `F_p` when λ = 1).
#[derive(Clone, PartialEq, Eq)]
pub struct MonicPoly {
    ctx: PadicContext,
    coeffs: Vec<Rep>,
}

impl fmt::Debug for MonicPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} in {:?}", self.full_coeffs(), self.ctx)
    }
}

impl MonicPoly {
    /// From the non-leading coefficients `c_0..c_{d−1}`.
    pub fn new(ctx: &PadicContext, lower: &[BigUint]) -> Self {
        MonicPoly { ctx: ctx.clone(), coeffs: lower.iter().map(|c| ctx.from_biguint(c)).collect() }
    }

    pub fn from_u64s(ctx: &PadicContext, lower: &[u64]) -> Self {
        MonicPoly { ctx: ctx.clone(), coeffs: lower.iter().map(|&c| ctx.from_u64(c)).collect() }
    }

    pub fn from_i64s(ctx: &PadicContext, lower: &[i64]) -> Self {
        MonicPoly { ctx: ctx.clone(), coeffs: lower.iter().map(|&c| ctx.from_i64(c)).collect() }
    }

    /// From all coefficients `c_0..c_d`; `c_d` must be 1.
    pub fn from_full(ctx: &PadicContext, full: &[BigUint]) -> Result<Self> {
        match full.split_last() {
            Some((lead, lower)) if ctx.is_one(&ctx.from_biguint(lead)) => Ok(Self::new(ctx, lower)),
            _ => Err(Error::InvalidInput("polynomial must be monic (leading coefficient 1)".into())),
        }
    }

    pub(crate) fn from_reps(ctx: &PadicContext, coeffs: Vec<Rep>) -> Self {
        MonicPoly { ctx: ctx.clone(), coeffs }
    }

    pub fn ctx(&self) -> &PadicContext {
        &self.ctx
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, i: usize) -> ZpElt {
        if i == self.degree() {
            ZpElt::from_u64(&self.ctx, 1)
        } else {
            ZpElt::from_rep(&self.ctx, self.coeffs[i].clone())
        }
    }

    /// `c_0..c_d` including the leading 1.
    pub fn full_coeffs(&self) -> Vec<BigUint> {
        let mut v: Vec<BigUint> = self.coeffs.iter().map(|c| self.ctx.to_biguint(c)).collect();
        v.push(BigUint::from(1u32));
        v
    }

    /// Reduction, or canonical lift, to another precision over the same prime.
    pub fn convert(&self, ctx: &PadicContext) -> Result<Self> {
        if ctx.p() != self.ctx.p() {
            return Err(Error::ContextMismatch);
        }
        Ok(MonicPoly { ctx: ctx.clone(), coeffs: self.coeffs.iter().map(|c| ctx.convert_from(&self.ctx, c)).collect() })
    }

    /// Coefficient-wise congruence mod `p^k`.
    pub fn congruent(&self, other: &Self, k: u32) -> Result<bool> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch);
        }
        if self.degree() != other.degree() {
            return Ok(false);
        }
        let a = TruncSeries::from_reps(&self.ctx, self.coeffs.clone());
        let b = TruncSeries::from_reps(&self.ctx, other.coeffs.clone());
        a.congruent(&b, k, self.degree())
    }

    /// `x^d·f(1/x)` as a series known mod `t^order` (zero-padded beyond degree d).
    pub fn reversed(&self, order: usize) -> TruncSeries {
        let d = self.degree();
        let mut rev = Vec::with_capacity(d + 1);
        rev.push(self.ctx.one());
        rev.extend(self.coeffs.iter().rev().cloned());
        TruncSeries::from_reps(&self.ctx, rev).padded(order)
    }

    /// Product of two monic polynomials.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch);
        }
        let n = self.degree() + other.degree() + 1;
        let full = |p: &Self| {
            let mut v = p.coeffs.clone();
            v.push(p.ctx.one());
            TruncSeries::from_reps(&p.ctx, v).padded(n)
        };
        let prod = full(self).mul(&full(other))?;
        let mut coeffs = prod.raw().to_vec();
        coeffs.pop();
        Ok(MonicPoly::from_reps(&self.ctx, coeffs))
    }
}
