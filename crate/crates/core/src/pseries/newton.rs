//! Inverse and square root by Newton doubling in the t-adic direction.
//!
//! Both iterations only ever divide by units (the constant term, and 2 for the
//! square root), so they lose no p-adic precision.

use super::TruncSeries;
use crate::error::{Error, Result};
use crate::stats;

impl TruncSeries {
    /// `1/f` mod `t^order`, via `g ← g·(2 − f·g)`.
    pub fn invert(&self) -> Result<Self> {
        let ctx = &self.ctx;
        let n = self.order();
        if n == 0 {
            return Ok(self.clone());
        }
        let seed = ctx.inv_unit(&self.coeffs[0]).map_err(|_| Error::NonUnitConstantTerm)?;
        stats::bump(|c| c.unit_inversions += 1);
        let mut g = TruncSeries::from_reps(ctx, vec![seed]);
        let two = ctx.from_u64(2);
        let mut k = 1;
        while k < n {
            let k2 = (2 * k).min(n);
            let g_pad = g.padded(k2);
            let fg = self.coeffs_prefix(k2).mul_unchecked(&g_pad);
            let mut corr = fg.neg();
            corr.coeffs[0] = ctx.add(&corr.coeffs[0], &two);
            g = g_pad.mul_unchecked(&corr);
            k = k2;
        }
        Ok(g)
    }

    /// The square root with constant term 1, via `s ← (s + f/s)/2`.
    pub fn sqrt_unit(&self) -> Result<Self> {
        let ctx = &self.ctx;
        if ctx.p() == 2 {
            return Err(Error::EvenPrime);
        }
        let n = self.order();
        if n == 0 {
            return Ok(self.clone());
        }
        if !ctx.is_one(&self.coeffs[0]) {
            return Err(Error::BadConstantTerm);
        }
        let half = ctx.inv_unit(&ctx.from_u64(2))?;
        let mut s = TruncSeries::one(ctx, 1);
        let mut k = 1;
        while k < n {
            let k2 = (2 * k).min(n);
            let s_pad = s.padded(k2);
            let q = self.coeffs_prefix(k2).mul_unchecked(&s_pad.invert()?);
            s = s_pad.add_unchecked(&q).scale_rep(&half);
            k = k2;
        }
        Ok(s)
    }

    fn coeffs_prefix(&self, order: usize) -> TruncSeries {
        TruncSeries::from_reps(&self.ctx, self.coeffs[..order].to_vec())
    }
}
