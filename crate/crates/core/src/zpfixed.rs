//! Fixed-precision p-adic integers: exact arithmetic in `Z/p^λ`.
//!
//! Every element is kept as its canonical representative in `[0, p^λ)`.
//! When `p^λ < 2^63` representatives are machine words and products go through
//! `u128`; otherwise they are [`BigUint`]s. Both paths share one API.
//!
//! Division follows the fixed-precision model: a unit divisor gives the exact
//! quotient, a divisor of positive valuation `v ≤ v_p(a)` gives the smallest
//! `c ≥ 0` with `a ≡ b·c (mod p^λ)`, and `v_p(a) < v_p(b)` is an error.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::stats;

/// Primes below this bound are verified by trial division.
pub const TRIAL_DIVISION_BOUND: u64 = 1 << 20;

/// Largest modulus handled on the machine-word path.
const WORD_LIMIT: u64 = 1 << 63;

/// A canonical residue. Within one context all residues use the same variant.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Rep {
    W(u64),
    B(BigUint),
}

/// p-adic valuation of a fixed-precision element.
///
/// `Infinite` means the representative is zero: the true valuation is only
/// known to be at least λ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Valuation {
    Finite(u32),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<u32> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Valuation::Infinite)
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "+inf"),
        }
    }
}

struct Inner {
    p: u64,
    lambda: u32,
    modulus: BigUint,
    word: Option<u64>,
}

/// The coefficient ring `Z/p^λ`.
///
/// Cheap to clone; two contexts are equal when `p` and `λ` agree.
#[derive(Clone)]
pub struct PadicContext {
    inner: Arc<Inner>,
}

impl PartialEq for PadicContext {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p && self.inner.lambda == other.inner.lambda)
    }
}

impl Eq for PadicContext {}

impl fmt::Debug for PadicContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z/{}^{}", self.inner.p, self.inner.lambda)
    }
}

impl PadicContext {
    /// Builds `Z/p^λ`, verifying that `p` is prime.
    pub fn new(p: u64, lambda: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Self::new_trusted(p, lambda)
    }

    /// Builds `Z/p^λ` without a primality check. The caller vouches for `p`.
    pub fn new_trusted(p: u64, lambda: u32) -> Result<Self> {
        if p < 2 {
            return Err(Error::NotPrime(p));
        }
        if lambda == 0 {
            return Err(Error::ZeroPrecision);
        }
        let modulus = num_traits::pow(BigUint::from(p), lambda as usize);
        let word = modulus.to_u64().filter(|&m| m < WORD_LIMIT);
        Ok(PadicContext { inner: Arc::new(Inner { p, lambda, modulus, word }) })
    }

    pub fn p(&self) -> u64 {
        self.inner.p
    }

    pub fn lambda(&self) -> u32 {
        self.inner.lambda
    }

    /// `p^λ`.
    pub fn modulus(&self) -> &BigUint {
        &self.inner.modulus
    }

    /// `p^λ` when it fits the machine-word fast path.
    pub fn word_modulus(&self) -> Option<u64> {
        self.inner.word
    }

    /// Same prime, different precision.
    pub fn with_lambda(&self, lambda: u32) -> Result<Self> {
        Self::new_trusted(self.inner.p, lambda)
    }

    /// `p^k` as a big integer.
    pub fn pow_p(&self, k: u32) -> BigUint {
        num_traits::pow(BigUint::from(self.inner.p), k as usize)
    }

    pub(crate) fn zero(&self) -> Rep {
        match self.inner.word {
            Some(_) => Rep::W(0),
            None => Rep::B(BigUint::zero()),
        }
    }

    pub(crate) fn one(&self) -> Rep {
        match self.inner.word {
            Some(_) => Rep::W(1),
            None => Rep::B(BigUint::one()),
        }
    }

    pub(crate) fn from_u64(&self, v: u64) -> Rep {
        match self.inner.word {
            Some(m) => Rep::W(v % m),
            None => Rep::B(BigUint::from(v) % &self.inner.modulus),
        }
    }

    pub(crate) fn from_biguint(&self, v: &BigUint) -> Rep {
        match self.inner.word {
            Some(m) => Rep::W((v % m).to_u64().expect("reduced below word modulus")),
            None => Rep::B(v % &self.inner.modulus),
        }
    }

    pub(crate) fn from_bigint(&self, v: &BigInt) -> Rep {
        let m = BigInt::from_biguint(Sign::Plus, self.inner.modulus.clone());
        let r = v.mod_floor(&m);
        self.from_biguint(r.magnitude())
    }

    pub(crate) fn from_i64(&self, v: i64) -> Rep {
        self.from_bigint(&BigInt::from(v))
    }

    /// Maps a p-integral rational into `Z/p^λ`.
    pub(crate) fn from_rational(&self, v: &BigRational) -> Result<Rep> {
        let num = self.from_bigint(v.numer());
        let den = self.from_bigint(v.denom());
        self.inv_unit(&den).map(|inv| self.mul(&num, &inv)).map_err(|_| Error::NonIntegralRational)
    }

    pub(crate) fn to_biguint(&self, a: &Rep) -> BigUint {
        match a {
            Rep::W(x) => BigUint::from(*x),
            Rep::B(x) => x.clone(),
        }
    }

    pub(crate) fn is_zero(&self, a: &Rep) -> bool {
        match a {
            Rep::W(x) => *x == 0,
            Rep::B(x) => x.is_zero(),
        }
    }

    pub(crate) fn is_one(&self, a: &Rep) -> bool {
        match a {
            Rep::W(x) => *x == 1,
            Rep::B(x) => x.is_one(),
        }
    }

    pub(crate) fn add(&self, a: &Rep, b: &Rep) -> Rep {
        match (a, b, self.inner.word) {
            (Rep::W(x), Rep::W(y), Some(m)) => {
                let s = x + y;
                Rep::W(if s >= m { s - m } else { s })
            }
            (Rep::B(x), Rep::B(y), None) => {
                let s = x + y;
                Rep::B(if s >= self.inner.modulus { s - &self.inner.modulus } else { s })
            }
            _ => unreachable!("residue variant does not match context"),
        }
    }

    pub(crate) fn neg(&self, a: &Rep) -> Rep {
        match (a, self.inner.word) {
            (Rep::W(x), Some(m)) => Rep::W(if *x == 0 { 0 } else { m - x }),
            (Rep::B(x), None) => {
                Rep::B(if x.is_zero() { BigUint::zero() } else { &self.inner.modulus - x })
            }
            _ => unreachable!("residue variant does not match context"),
        }
    }

    pub(crate) fn sub(&self, a: &Rep, b: &Rep) -> Rep {
        match (a, b, self.inner.word) {
            (Rep::W(x), Rep::W(y), Some(m)) => Rep::W(if x >= y { x - y } else { m - (y - x) }),
            (Rep::B(x), Rep::B(y), None) => {
                if x >= y {
                    Rep::B(x - y)
                } else {
                    Rep::B(&self.inner.modulus - (y - x))
                }
            }
            _ => unreachable!("residue variant does not match context"),
        }
    }

    pub(crate) fn mul(&self, a: &Rep, b: &Rep) -> Rep {
        match (a, b, self.inner.word) {
            (Rep::W(x), Rep::W(y), Some(m)) => {
                Rep::W(((*x as u128 * *y as u128) % m as u128) as u64)
            }
            (Rep::B(x), Rep::B(y), None) => Rep::B((x * y) % &self.inner.modulus),
            _ => unreachable!("residue variant does not match context"),
        }
    }

    pub(crate) fn valuation(&self, a: &Rep) -> Valuation {
        let p = self.inner.p;
        match a {
            Rep::W(0) => Valuation::Infinite,
            Rep::W(x) => {
                let (mut x, mut v) = (*x, 0);
                while x % p == 0 {
                    x /= p;
                    v += 1;
                }
                Valuation::Finite(v)
            }
            Rep::B(x) => {
                if x.is_zero() {
                    return Valuation::Infinite;
                }
                let pb = BigUint::from(p);
                let mut x = x.clone();
                let mut v = 0;
                loop {
                    let (q, r) = x.div_rem(&pb);
                    if !r.is_zero() {
                        break;
                    }
                    x = q;
                    v += 1;
                }
                Valuation::Finite(v)
            }
        }
    }

    /// Inverse of a unit.
    pub(crate) fn inv_unit(&self, a: &Rep) -> Result<Rep> {
        match (a, self.inner.word) {
            (Rep::W(x), Some(m)) => inv_mod_u64(*x, m).map(Rep::W).ok_or(Error::NonUnitConstantTerm),
            (Rep::B(x), None) => {
                x.modinv(&self.inner.modulus).map(Rep::B).ok_or(Error::NonUnitConstantTerm)
            }
            _ => unreachable!("residue variant does not match context"),
        }
    }

    /// `(a / p^v) · (b_unit)^{-1} mod p^{λ-v}`, where `a` is divisible by `p^v`
    /// and `b_unit` is prime to p. The result lies in `[0, p^{λ-v})`.
    fn div_shifted(&self, a: &Rep, b_unit: &BigUint, v: u32) -> Rep {
        let pv = self.pow_p(v);
        let sub_mod = self.pow_p(self.inner.lambda - v);
        let a_big = self.to_biguint(a) / &pv;
        let b_red = b_unit % &sub_mod;
        let inv = b_red.modinv(&sub_mod).expect("unit part is invertible");
        self.from_biguint(&((a_big * inv) % sub_mod))
    }

    /// Fixed-precision division `a / b`.
    pub(crate) fn fixed_div(&self, a: &Rep, b: &Rep) -> Result<Rep> {
        if self.is_zero(b) {
            return Err(Error::DivisionByZeroRep);
        }
        let vb = self.valuation(b).finite().expect("nonzero residue");
        if self.valuation(a) < Valuation::Finite(vb) {
            return Err(Error::NonIntegralQuotient);
        }
        if vb == 0 {
            stats::bump(|c| c.unit_divisions += 1);
            let inv = self.inv_unit(b)?;
            return Ok(self.mul(a, &inv));
        }
        stats::bump(|c| c.nonunit_divisions += 1);
        let b_unit = self.to_biguint(b) / self.pow_p(vb);
        Ok(self.div_shifted(a, &b_unit, vb))
    }

    /// Fixed-precision division of `a` by the exact positive integer `i`.
    ///
    /// Agrees with [`fixed_div`](Self::fixed_div) whenever `v_p(i) < λ`. When
    /// `p^λ | i` the divisor vanishes in `Z/p^λ`; the smallest valid quotient is
    /// then 0 if `a = 0` and none exists otherwise.
    pub(crate) fn div_by_index(&self, a: &Rep, i: u64) -> Result<Rep> {
        debug_assert!(i > 0);
        stats::bump(|c| {
            c.integration_divisions += 1;
            c.max_integration_divisor = c.max_integration_divisor.max(i);
        });
        let p = self.inner.p;
        let (mut unit, mut v) = (i, 0u32);
        while unit % p == 0 {
            unit /= p;
            v += 1;
        }
        if v == 0 {
            return match (a, self.inner.word) {
                (Rep::W(x), Some(m)) => {
                    let inv = inv_mod_u64(i % m, m).expect("index prime to p");
                    Ok(Rep::W(((*x as u128 * inv as u128) % m as u128) as u64))
                }
                _ => {
                    let inv = self.inv_unit(&self.from_u64(i))?;
                    Ok(self.mul(a, &inv))
                }
            };
        }
        if self.is_zero(a) {
            return Ok(self.zero());
        }
        if self.valuation(a) < Valuation::Finite(v) {
            return Err(Error::NonIntegralQuotient);
        }
        Ok(self.div_shifted(a, &BigUint::from(unit), v))
    }

    /// Reduces a residue of `from` (with the same p and λ_from ≥ λ) into this ring,
    /// or lifts it canonically when λ_from < λ.
    pub(crate) fn convert_from(&self, from: &PadicContext, a: &Rep) -> Rep {
        if from == self {
            return a.clone();
        }
        self.from_biguint(&from.to_biguint(a))
    }
}

fn inv_mod_u64(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Primality: trial division below [`TRIAL_DIVISION_BOUND`], Miller–Rabin above.
///
/// The Miller–Rabin bases used are known to be exact for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < TRIAL_DIVISION_BOUND {
        let mut d = 2;
        while d * d <= n {
            if n % d == 0 {
                return false;
            }
            d += 1;
        }
        return true;
    }
    let small = [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if small.iter().any(|&q| n % q == 0) {
        return false;
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &small {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// `v_p(k!)` by Legendre's formula.
pub fn val_factorial(k: u64, p: u64) -> u64 {
    let mut total = 0;
    let mut q = k;
    while q > 0 {
        q /= p;
        total += q;
    }
    total
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingOp {
    Add,
    Sub,
    Mul,
}

/// An element of `Z/p^λ`.
#[derive(Clone, PartialEq, Eq)]
pub struct ZpElt {
    ctx: PadicContext,
    rep: Rep,
}

impl fmt::Debug for ZpElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {:?}", self.rep(), self.ctx)
    }
}

impl fmt::Display for ZpElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rep())
    }
}

impl ZpElt {
    /// Canonical image of `value` in `Z/p^λ`.
    pub fn new(ctx: &PadicContext, value: &BigUint) -> Self {
        ZpElt { ctx: ctx.clone(), rep: ctx.from_biguint(value) }
    }

    pub fn from_u64(ctx: &PadicContext, value: u64) -> Self {
        ZpElt { ctx: ctx.clone(), rep: ctx.from_u64(value) }
    }

    pub fn from_i64(ctx: &PadicContext, value: i64) -> Self {
        ZpElt { ctx: ctx.clone(), rep: ctx.from_i64(value) }
    }

    pub fn from_rational(ctx: &PadicContext, value: &BigRational) -> Result<Self> {
        Ok(ZpElt { ctx: ctx.clone(), rep: ctx.from_rational(value)? })
    }

    pub(crate) fn from_rep(ctx: &PadicContext, rep: Rep) -> Self {
        ZpElt { ctx: ctx.clone(), rep }
    }

    pub fn ctx(&self) -> &PadicContext {
        &self.ctx
    }

    /// The canonical representative in `[0, p^λ)`.
    pub fn rep(&self) -> BigUint {
        self.ctx.to_biguint(&self.rep)
    }

    pub fn is_zero(&self) -> bool {
        self.ctx.is_zero(&self.rep)
    }

    pub fn valuation(&self) -> Valuation {
        self.ctx.valuation(&self.rep)
    }

    pub fn ring_op(&self, other: &ZpElt, op: RingOp) -> Result<ZpElt> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch);
        }
        let rep = match op {
            RingOp::Add => self.ctx.add(&self.rep, &other.rep),
            RingOp::Sub => self.ctx.sub(&self.rep, &other.rep),
            RingOp::Mul => self.ctx.mul(&self.rep, &other.rep),
        };
        Ok(ZpElt { ctx: self.ctx.clone(), rep })
    }

    pub fn add(&self, other: &ZpElt) -> Result<ZpElt> {
        self.ring_op(other, RingOp::Add)
    }

    pub fn sub(&self, other: &ZpElt) -> Result<ZpElt> {
        self.ring_op(other, RingOp::Sub)
    }

    pub fn mul(&self, other: &ZpElt) -> Result<ZpElt> {
        self.ring_op(other, RingOp::Mul)
    }

    pub fn neg(&self) -> ZpElt {
        ZpElt { ctx: self.ctx.clone(), rep: self.ctx.neg(&self.rep) }
    }

    /// Division in the fixed-precision model.
    pub fn fixed_div(&self, divisor: &ZpElt) -> Result<ZpElt> {
        if self.ctx != divisor.ctx {
            return Err(Error::ContextMismatch);
        }
        let rep = self.ctx.fixed_div(&self.rep, &divisor.rep)?;
        Ok(ZpElt { ctx: self.ctx.clone(), rep })
    }

    /// Multiplicative inverse of a unit.
    pub fn inverse(&self) -> Result<ZpElt> {
        Ok(ZpElt { ctx: self.ctx.clone(), rep: self.ctx.inv_unit(&self.rep)? })
    }

    /// Image in another precision over the same prime (reduction or canonical lift).
    pub fn convert(&self, ctx: &PadicContext) -> Result<ZpElt> {
        if ctx.p() != self.ctx.p() {
            return Err(Error::ContextMismatch);
        }
        Ok(ZpElt { ctx: ctx.clone(), rep: ctx.convert_from(&self.ctx, &self.rep) })
    }

    /// Whether `self ≡ other (mod p^k)`; `k` is clamped to λ.
    pub fn congruent(&self, other: &ZpElt, k: u32) -> Result<bool> {
        let diff = self.sub(other)?;
        Ok(diff.valuation().cmp(&Valuation::Finite(k.min(self.ctx.lambda()))) != Ordering::Less)
    }
}
