//! The right-hand side `h` of `y' = g·h(y)` and the composition `h(f)`.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::TruncSeries;
use crate::error::{Error, Result};
use crate::zpfixed::{PadicContext, Rep};

/// A user-supplied procedure computing `h(f)` mod `(p^λ, t^n)` from `f` mod `(p^λ, t^n)`.
///
/// Implementations must return a series of the same order as `f`, satisfy
/// `h(0) = 1`, and cost at least twice as much at order `2n` as at order `n`
/// (otherwise the solver's cost bound does not hold).
pub trait Composer: Send + Sync + fmt::Debug {
    fn compose(&self, f: &TruncSeries) -> Result<TruncSeries>;
}

/// The function `h`, with `h(0) = 1`.
///
/// Coefficients are p-integral rationals, little-endian by degree, and are
/// mapped into `Z/p^λ` at composition time, so one spec serves every precision.
#[derive(Clone, Debug)]
pub enum RhsSpec {
    Polynomial(Vec<BigRational>),
    Rational { num: Vec<BigRational>, den: Vec<BigRational> },
    /// `sqrt(num/den)`, with `num(0) = den(0) = 1`. Odd p only.
    SqrtRational { num: Vec<BigRational>, den: Vec<BigRational> },
    Opaque(Arc<dyn Composer>),
}

fn rationals(v: &[i64]) -> Vec<BigRational> {
    v.iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect()
}

fn constant(v: &[BigRational]) -> BigRational {
    v.first().cloned().unwrap_or_else(BigRational::zero)
}

impl RhsSpec {
    pub fn polynomial(coeffs: Vec<BigRational>) -> Result<Self> {
        if constant(&coeffs) != BigRational::one() {
            return Err(Error::RhsConstantTerm);
        }
        Ok(RhsSpec::Polynomial(coeffs))
    }

    pub fn rational(num: Vec<BigRational>, den: Vec<BigRational>) -> Result<Self> {
        let d0 = constant(&den);
        if d0.is_zero() || constant(&num) != d0 {
            return Err(Error::RhsConstantTerm);
        }
        Ok(RhsSpec::Rational { num, den })
    }

    pub fn sqrt_rational(num: Vec<BigRational>, den: Vec<BigRational>) -> Result<Self> {
        if constant(&num) != BigRational::one() || constant(&den) != BigRational::one() {
            return Err(Error::RhsConstantTerm);
        }
        Ok(RhsSpec::SqrtRational { num, den })
    }

    pub fn polynomial_i64(coeffs: &[i64]) -> Result<Self> {
        Self::polynomial(rationals(coeffs))
    }

    pub fn rational_i64(num: &[i64], den: &[i64]) -> Result<Self> {
        Self::rational(rationals(num), rationals(den))
    }

    pub fn sqrt_rational_i64(num: &[i64], den: &[i64]) -> Result<Self> {
        Self::sqrt_rational(rationals(num), rationals(den))
    }

    /// An arbitrary power series `h`, composed naively. Meant for testing.
    pub fn power_series(coeffs: Vec<BigRational>) -> Result<Self> {
        if constant(&coeffs) != BigRational::one() {
            return Err(Error::RhsConstantTerm);
        }
        Ok(RhsSpec::Opaque(Arc::new(SeriesComposer { coeffs })))
    }

    /// `sqrt(h)`, the right-hand side after rewriting `y'^2 = g·h(y)` as `y' = sqrt(g)·sqrt(h(y))`.
    pub fn sqrt(&self) -> Self {
        match self {
            RhsSpec::Polynomial(p) => {
                RhsSpec::SqrtRational { num: p.clone(), den: vec![BigRational::one()] }
            }
            RhsSpec::Rational { num, den } => {
                // h(0) = 1 lets us normalise both constant terms to 1
                let d0 = constant(den);
                let norm = |v: &[BigRational]| v.iter().map(|c| c / &d0).collect();
                RhsSpec::SqrtRational { num: norm(num), den: norm(den) }
            }
            other => RhsSpec::Opaque(Arc::new(SqrtComposer { inner: other.clone() })),
        }
    }

    /// `h(f)` mod `(p^λ, t^{f.order})`. Requires `f(0) = 0`.
    pub fn compose(&self, f: &TruncSeries) -> Result<TruncSeries> {
        if f.order() > 0 && !f.ctx.is_zero(&f.coeffs[0]) {
            return Err(Error::Precondition("composition h(f) needs f(0) = 0".into()));
        }
        let out = match self {
            RhsSpec::Polynomial(p) => horner(p, f)?,
            RhsSpec::Rational { num, den } => horner(num, f)?.mul_unchecked(&horner(den, f)?.invert()?),
            RhsSpec::SqrtRational { num, den } => {
                if f.ctx.p() == 2 {
                    return Err(Error::EvenPrime);
                }
                horner(num, f)?.mul_unchecked(&horner(den, f)?.invert()?).sqrt_unit()?
            }
            RhsSpec::Opaque(c) => {
                let out = c.compose(f)?;
                if out.ctx != f.ctx || out.order() != f.order() {
                    return Err(Error::Precondition("composer returned a series of the wrong shape".into()));
                }
                out
            }
        };
        if out.order() > 0 && !out.ctx.is_one(&out.coeffs[0]) {
            return Err(Error::RhsConstantTerm);
        }
        Ok(out)
    }
}

fn to_reps(ctx: &PadicContext, coeffs: &[BigRational]) -> Result<Vec<Rep>> {
    coeffs.iter().map(|c| ctx.from_rational(c)).collect()
}

fn horner(coeffs: &[BigRational], f: &TruncSeries) -> Result<TruncSeries> {
    let ctx = &f.ctx;
    let n = f.order();
    let cs = to_reps(ctx, coeffs)?;
    let mut acc = TruncSeries::zero(ctx, n);
    for c in cs.iter().rev() {
        acc = acc.mul_unchecked(f);
        if n > 0 {
            acc.coeffs[0] = ctx.add(&acc.coeffs[0], c);
        }
    }
    Ok(acc)
}

/// Composition with an arbitrary power series by Horner on its truncation.
///
/// Costs `O(n·M(n))`; only terms of degree below `f.order` matter since `f(0) = 0`.
#[derive(Debug)]
pub struct SeriesComposer {
    pub coeffs: Vec<BigRational>,
}

impl Composer for SeriesComposer {
    fn compose(&self, f: &TruncSeries) -> Result<TruncSeries> {
        let n = f.order();
        horner(&self.coeffs[..self.coeffs.len().min(n)], f)
    }
}

#[derive(Debug)]
struct SqrtComposer {
    inner: RhsSpec,
}

impl Composer for SqrtComposer {
    fn compose(&self, f: &TruncSeries) -> Result<TruncSeries> {
        self.inner.compose(f)?.sqrt_unit()
    }
}
