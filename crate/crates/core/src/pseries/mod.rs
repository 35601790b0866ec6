//! Truncated power series over `Z/p^λ`.
//!
//! A [`TruncSeries`] is known modulo `t^order` and stores exactly `order`
//! coefficients. Binary operations return the smaller of the two orders;
//! nothing is zero-padded unless [`TruncSeries::padded`] is asked for.

mod compose;
mod mul;
mod newton;
pub mod text;

use std::fmt;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::zpfixed::{PadicContext, Rep, Valuation, ZpElt};

pub use compose::{Composer, RhsSpec, SeriesComposer};
pub use mul::KRONECKER_THRESHOLD;

#[derive(Clone, PartialEq, Eq)]
pub struct TruncSeries {
    ctx: PadicContext,
    coeffs: Vec<Rep>,
}

impl fmt::Debug for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", self.ctx.to_biguint(c))?;
        }
        write!(f, "] + O(t^{}) in {:?}", self.order(), self.ctx)
    }
}

impl TruncSeries {
    /// Series with the given representatives (reduced into `Z/p^λ`), known mod `t^len`.
    pub fn new(ctx: &PadicContext, coeffs: &[BigUint]) -> Self {
        TruncSeries { ctx: ctx.clone(), coeffs: coeffs.iter().map(|c| ctx.from_biguint(c)).collect() }
    }

    pub fn from_u64s(ctx: &PadicContext, coeffs: &[u64]) -> Self {
        TruncSeries { ctx: ctx.clone(), coeffs: coeffs.iter().map(|&c| ctx.from_u64(c)).collect() }
    }

    pub fn from_i64s(ctx: &PadicContext, coeffs: &[i64]) -> Self {
        TruncSeries { ctx: ctx.clone(), coeffs: coeffs.iter().map(|&c| ctx.from_i64(c)).collect() }
    }

    pub fn from_elts(ctx: &PadicContext, coeffs: &[ZpElt]) -> Result<Self> {
        if coeffs.iter().any(|c| c.ctx() != ctx) {
            return Err(Error::ContextMismatch);
        }
        Ok(TruncSeries { ctx: ctx.clone(), coeffs: coeffs.iter().map(|c| ctx.from_biguint(&c.rep())).collect() })
    }

    pub(crate) fn from_reps(ctx: &PadicContext, coeffs: Vec<Rep>) -> Self {
        TruncSeries { ctx: ctx.clone(), coeffs }
    }

    pub fn zero(ctx: &PadicContext, order: usize) -> Self {
        TruncSeries { ctx: ctx.clone(), coeffs: vec![ctx.zero(); order] }
    }

    pub fn one(ctx: &PadicContext, order: usize) -> Self {
        Self::monomial(ctx, 0, 1, order)
    }

    /// `c·t^k` known mod `t^order`.
    pub fn monomial(ctx: &PadicContext, k: usize, c: u64, order: usize) -> Self {
        let mut s = Self::zero(ctx, order);
        if k < order {
            s.coeffs[k] = ctx.from_u64(c);
        }
        s
    }

    pub fn ctx(&self) -> &PadicContext {
        &self.ctx
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, i: usize) -> ZpElt {
        ZpElt::from_rep(&self.ctx, self.coeffs[i].clone())
    }

    pub fn coeff_rep(&self, i: usize) -> BigUint {
        self.ctx.to_biguint(&self.coeffs[i])
    }

    /// Canonical representatives, little-endian by degree.
    pub fn reps(&self) -> Vec<BigUint> {
        self.coeffs.iter().map(|c| self.ctx.to_biguint(c)).collect()
    }

    pub(crate) fn raw(&self) -> &[Rep] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| self.ctx.is_zero(c))
    }

    /// The same series known only mod `t^order`. Fails if `order` exceeds the known order.
    pub fn truncated(&self, order: usize) -> Result<Self> {
        if order > self.order() {
            return Err(Error::Precondition(format!(
                "cannot truncate a series known mod t^{} to order {order}",
                self.order()
            )));
        }
        Ok(TruncSeries { ctx: self.ctx.clone(), coeffs: self.coeffs[..order].to_vec() })
    }

    /// Reads the known coefficients as a polynomial and extends it with zeros up to `order`.
    pub fn padded(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order.max(coeffs.len()), self.ctx.zero());
        coeffs.truncate(order);
        TruncSeries { ctx: self.ctx.clone(), coeffs }
    }

    /// Image in another precision `Z/p^μ` (reduction, or canonical lift when μ > λ).
    pub fn convert(&self, ctx: &PadicContext) -> Result<Self> {
        if ctx.p() != self.ctx.p() {
            return Err(Error::ContextMismatch);
        }
        let coeffs = self.coeffs.iter().map(|c| ctx.convert_from(&self.ctx, c)).collect();
        Ok(TruncSeries { ctx: ctx.clone(), coeffs })
    }

    fn check_ctx(&self, other: &Self) -> Result<()> {
        if self.ctx != other.ctx {
            Err(Error::ContextMismatch)
        } else {
            Ok(())
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&Rep, &Rep) -> Rep) -> Self {
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f(a, b)).collect();
        TruncSeries { ctx: self.ctx.clone(), coeffs }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        Ok(self.sub_unchecked(other))
    }

    pub(crate) fn add_unchecked(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| self.ctx.add(a, b))
    }

    pub(crate) fn sub_unchecked(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| self.ctx.sub(a, b))
    }

    pub fn neg(&self) -> Self {
        TruncSeries { ctx: self.ctx.clone(), coeffs: self.coeffs.iter().map(|c| self.ctx.neg(c)).collect() }
    }

    pub fn scale(&self, c: &ZpElt) -> Result<Self> {
        if c.ctx() != &self.ctx {
            return Err(Error::ContextMismatch);
        }
        let c = self.ctx.from_biguint(&c.rep());
        Ok(self.scale_rep(&c))
    }

    pub(crate) fn scale_rep(&self, c: &Rep) -> Self {
        TruncSeries { ctx: self.ctx.clone(), coeffs: self.coeffs.iter().map(|a| self.ctx.mul(a, c)).collect() }
    }

    /// Coefficient-wise (Hadamard) product.
    pub fn hadamard(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        Ok(self.zip_with(other, |a, b| self.ctx.mul(a, b)))
    }

    /// `f'`, known mod `t^{order-1}`.
    pub fn derivative(&self) -> Result<Self> {
        if self.order() == 0 {
            return Err(Error::Precondition("derivative of a series known mod t^0".into()));
        }
        let coeffs = self.coeffs[1..]
            .iter()
            .enumerate()
            .map(|(i, a)| self.ctx.mul(a, &self.ctx.from_u64(i as u64 + 1)))
            .collect();
        Ok(TruncSeries { ctx: self.ctx.clone(), coeffs })
    }

    /// `∫f` with zero constant term, known mod `t^{order+1}`.
    ///
    /// The coefficient at `t^i` is `a_{i-1} / i` in the fixed-precision model.
    /// Fails with [`Error::NonIntegralCoefficient`]`(i)` when `v_p(a_{i-1}) < v_p(i)`.
    pub fn antiderivative(&self) -> Result<Self> {
        let mut coeffs = Vec::with_capacity(self.order() + 1);
        coeffs.push(self.ctx.zero());
        for (k, a) in self.coeffs.iter().enumerate() {
            let i = k as u64 + 1;
            let c = self.ctx.div_by_index(a, i).map_err(|_| Error::NonIntegralCoefficient(k + 1))?;
            coeffs.push(c);
        }
        Ok(TruncSeries { ctx: self.ctx.clone(), coeffs })
    }

    /// Smallest `k` such that the two series differ mod `p^k` somewhere below the
    /// common order, as a valuation of their difference (`Infinite` when equal).
    pub fn difference_valuation(&self, other: &Self) -> Result<Valuation> {
        self.check_ctx(other)?;
        Ok(self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| self.ctx.valuation(&self.ctx.sub(a, b)))
            .min()
            .unwrap_or(Valuation::Infinite))
    }

    /// Whether the series agree mod `(p^k, t^order)`.
    pub fn congruent(&self, other: &Self, k: u32, order: usize) -> Result<bool> {
        if order > self.order() || order > other.order() {
            return Err(Error::Precondition("comparison order exceeds known order".into()));
        }
        let a = self.truncated(order)?;
        let b = other.truncated(order)?;
        Ok(a.difference_valuation(&b)? >= Valuation::Finite(k.min(self.ctx.lambda())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: u64, l: u32) -> PadicContext {
        PadicContext::new(p, l).unwrap()
    }

    fn s(c: &PadicContext, v: &[u64]) -> TruncSeries {
        TruncSeries::from_u64s(c, v)
    }

    #[test]
    fn derivative_examples() {
        let c = ctx(5, 2);
        assert_eq!(s(&c, &[0, 1]).derivative().unwrap(), s(&c, &[1]));
        assert_eq!(s(&c, &[1, 1, 1]).derivative().unwrap(), s(&c, &[1, 2]));
        assert_eq!(s(&c, &[0, 0, 0, 0, 0, 1]).derivative().unwrap(), s(&c, &[0, 0, 0, 0, 5]));
        assert!(s(&c, &[]).derivative().is_err());
    }

    #[test]
    fn antiderivative_examples() {
        let c = ctx(5, 2);
        assert_eq!(s(&c, &[1]).antiderivative().unwrap(), s(&c, &[0, 1]));
        assert_eq!(s(&c, &[0, 0, 0, 0, 5]).antiderivative().unwrap(), s(&c, &[0, 0, 0, 0, 0, 1]));
        assert_eq!(s(&c, &[0, 0, 0, 0, 4]).antiderivative(), Err(Error::NonIntegralCoefficient(5)));
        // a zero coefficient divided by a vanishing index stays zero
        let c1 = ctx(2, 1);
        assert_eq!(s(&c1, &[1, 0]).antiderivative().unwrap(), s(&c1, &[0, 1, 0]));
    }

    #[test]
    fn truncation_is_explicit() {
        let c = ctx(7, 1);
        let f = s(&c, &[1, 2, 3]);
        assert!(f.truncated(4).is_err());
        assert_eq!(f.truncated(2).unwrap(), s(&c, &[1, 2]));
        assert_eq!(f.padded(5), s(&c, &[1, 2, 3, 0, 0]));
        assert_eq!(f.add(&s(&c, &[1])).unwrap(), s(&c, &[2]));
    }

    #[test]
    fn congruence_helpers() {
        let c = ctx(5, 3);
        let a = s(&c, &[1, 26, 3]);
        let b = s(&c, &[1, 1, 3]);
        assert!(a.congruent(&b, 2, 3).unwrap());
        assert!(!a.congruent(&b, 3, 3).unwrap());
        assert_eq!(a.difference_valuation(&b).unwrap(), Valuation::Finite(2));
        let other = TruncSeries::from_u64s(&ctx(5, 2), &[1]);
        assert_eq!(a.add(&other), Err(Error::ContextMismatch));
    }
}
