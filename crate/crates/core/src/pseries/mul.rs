//! Series multiplication.
//!
//! Above [`KRONECKER_THRESHOLD`] coefficients the operands are packed into two
//! big integers (evaluation at `t = 2^slot`), multiplied once, and unpacked.
//! The slot width leaves room for a full convolution sum so no carries cross
//! slot boundaries. Below the threshold the schoolbook kernel wins.

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use super::TruncSeries;
use crate::error::Result;
use crate::stats;
use crate::zpfixed::{PadicContext, Rep};

/// Shortest operand length at which Kronecker substitution replaces schoolbook.
///
/// Measured with `cargo bench --bench kernels` (mul/*): the crossover sits
/// between 8 and 24 coefficients for the word path and lower for big moduli.
pub const KRONECKER_THRESHOLD: usize = 16;

impl TruncSeries {
    /// `f·g` mod `t^{min(order)}`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        Ok(self.mul_unchecked(other))
    }

    /// Reference quadratic kernel.
    pub fn mul_schoolbook(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        let order = self.order().min(other.order());
        stats::bump(|c| c.series_mults += 1);
        Ok(TruncSeries::from_reps(&self.ctx, schoolbook(&self.ctx, &self.coeffs, &other.coeffs, order)))
    }

    /// Kronecker kernel regardless of size.
    pub fn mul_kronecker(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        let order = self.order().min(other.order());
        stats::bump(|c| c.series_mults += 1);
        Ok(TruncSeries::from_reps(&self.ctx, kronecker(&self.ctx, &self.coeffs, &other.coeffs, order)))
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        stats::bump(|c| c.series_mults += 1);
        let a = trim(&self.ctx, &self.coeffs[..order]);
        let b = trim(&self.ctx, &other.coeffs[..order]);
        let coeffs = if a.len().min(b.len()) < KRONECKER_THRESHOLD {
            schoolbook(&self.ctx, a, b, order)
        } else {
            kronecker(&self.ctx, a, b, order)
        };
        TruncSeries::from_reps(&self.ctx, coeffs)
    }
}

/// Drops trailing zero coefficients; they contribute nothing to the product.
fn trim<'a>(ctx: &PadicContext, a: &'a [Rep]) -> &'a [Rep] {
    let len = a.iter().rposition(|c| !ctx.is_zero(c)).map_or(0, |i| i + 1);
    &a[..len]
}

fn schoolbook(ctx: &PadicContext, a: &[Rep], b: &[Rep], order: usize) -> Vec<Rep> {
    let mut out = vec![ctx.zero(); order];
    for (i, x) in a.iter().enumerate().take(order) {
        if ctx.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(order - i) {
            out[i + j] = ctx.add(&out[i + j], &ctx.mul(x, y));
        }
    }
    out
}

fn bit_len(x: u64) -> usize {
    (64 - x.leading_zeros()) as usize
}

fn pack(a: &[Rep], slot: usize) -> BigUint {
    let total_bits = a.len() * slot;
    let mut limbs = vec![0u32; total_bits / 32 + 2];
    for (i, c) in a.iter().enumerate() {
        let base = i * slot;
        let digits: Vec<u32> = match c {
            Rep::W(x) => vec![*x as u32, (*x >> 32) as u32],
            Rep::B(x) => x.to_u32_digits(),
        };
        for (k, d) in digits.into_iter().enumerate() {
            if d == 0 {
                continue;
            }
            let bit = base + 32 * k;
            let (w, s) = (bit / 32, bit % 32);
            limbs[w] |= d << s;
            if s != 0 {
                limbs[w + 1] |= d >> (32 - s);
            }
        }
    }
    BigUint::new(limbs)
}

fn read_slot(limbs: &[u32], start: usize, slot: usize) -> Vec<u32> {
    let n_words = slot.div_ceil(32);
    let mut out = vec![0u32; n_words];
    let (w0, s) = (start / 32, start % 32);
    for (k, o) in out.iter_mut().enumerate() {
        let lo = limbs.get(w0 + k).copied().unwrap_or(0);
        let hi = limbs.get(w0 + k + 1).copied().unwrap_or(0);
        *o = if s == 0 { lo } else { (lo >> s) | (hi << (32 - s)) };
    }
    let rem = slot % 32;
    if rem != 0 {
        out[n_words - 1] &= (1u32 << rem) - 1;
    }
    out
}

fn kronecker(ctx: &PadicContext, a: &[Rep], b: &[Rep], order: usize) -> Vec<Rep> {
    let la = a.len().min(order);
    let lb = b.len().min(order);
    if la == 0 || lb == 0 {
        return vec![ctx.zero(); order];
    }
    let coeff_bits = ctx.modulus().bits() as usize;
    let terms = la.min(lb) as u64;
    let slot = 2 * coeff_bits + bit_len(terms);
    let pa = pack(&a[..la], slot);
    let pb = pack(&b[..lb], slot);
    let prod = &pa * &pb;
    let limbs = prod.to_u32_digits();
    let word = ctx.word_modulus();
    (0..order)
        .map(|i| {
            if i >= la + lb - 1 {
                return ctx.zero();
            }
            let digits = read_slot(&limbs, i * slot, slot);
            match word {
                Some(m) if digits.len() <= 4 => {
                    let v = digits.iter().rev().fold(0u128, |acc, &d| (acc << 32) | d as u128);
                    Rep::W((v % m as u128) as u64)
                }
                _ => {
                    let v = BigUint::new(digits);
                    match word {
                        Some(m) => Rep::W((v % m).to_u64().expect("reduced")),
                        None => Rep::B(v % ctx.modulus()),
                    }
                }
            }
        })
        .collect()
}
