//! Independent oracles for the integration tests.
//!
//! Nothing here calls into the solver path: exact rational series arithmetic,
//! coefficient recurrences, brute-force searches and a Sylvester-matrix
//! resultant over F_p[t].

#![allow(dead_code)]

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Truncated product of rational series.
pub fn qmul(a: &[Q], b: &[Q], n: usize) -> Vec<Q> {
    let mut out = vec![Q::zero(); n];
    for (i, x) in a.iter().enumerate().take(n) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// `1/a` mod `t^n` by the recurrence `r_k = −(Σ_{i≥1} a_i r_{k−i}) / a_0`.
pub fn qinv(a: &[Q], n: usize) -> Vec<Q> {
    let mut r = vec![Q::zero(); n];
    if n == 0 {
        return r;
    }
    r[0] = Q::one() / &a[0];
    for k in 1..n {
        let mut acc = Q::zero();
        for i in 1..=k.min(a.len().saturating_sub(1)) {
            acc += &a[i] * &r[k - i];
        }
        r[k] = -acc / &a[0];
    }
    r
}

/// Square root with constant term 1: `s_k = (a_k − Σ_{0<i<k} s_i s_{k−i}) / 2`.
pub fn qsqrt(a: &[Q], n: usize) -> Vec<Q> {
    let mut s = vec![Q::zero(); n];
    if n == 0 {
        return s;
    }
    assert!(a[0].is_one());
    s[0] = Q::one();
    for k in 1..n {
        let mut acc = a.get(k).cloned().unwrap_or_else(Q::zero);
        for i in 1..k {
            acc -= &s[i] * &s[k - i];
        }
        s[k] = acc / q(2);
    }
    s
}

/// Polynomial `Σ c_i f^i` mod `t^n`, by expanding powers (not Horner).
pub fn qpoly_of(c: &[Q], f: &[Q], n: usize) -> Vec<Q> {
    let mut out = vec![Q::zero(); n];
    let mut pow = vec![Q::zero(); n];
    if n > 0 {
        pow[0] = Q::one();
    }
    for ci in c {
        for k in 0..n {
            out[k] += ci * &pow[k];
        }
        pow = qmul(&pow, f, n);
    }
    out
}

#[derive(Clone, Debug)]
pub enum QRhs {
    Poly(Vec<Q>),
    Rational(Vec<Q>, Vec<Q>),
    SqrtRational(Vec<Q>, Vec<Q>),
}

impl QRhs {
    pub fn eval(&self, y: &[Q], n: usize) -> Vec<Q> {
        match self {
            QRhs::Poly(c) => qpoly_of(c, y, n),
            QRhs::Rational(a, b) => qmul(&qpoly_of(a, y, n), &qinv(&qpoly_of(b, y, n), n), n),
            QRhs::SqrtRational(a, b) => {
                qsqrt(&qmul(&qpoly_of(a, y, n), &qinv(&qpoly_of(b, y, n), n), n), n)
            }
        }
    }
}

/// Solution of `y' = g·h(y)`, `y(0) = 0`, mod `t^{n+1}`, by the coefficient recurrence
/// `(k+1)·y_{k+1} = [t^k] g·h(y)`.
pub fn recurrence_solve(g: &[Q], h: &QRhs, n: usize) -> Vec<Q> {
    let mut y = vec![Q::zero(); n + 1];
    for k in 0..n {
        let hy = h.eval(&y[..k + 1], k + 1);
        let mut acc = Q::zero();
        for i in 0..=k {
            if let Some(gi) = g.get(i) {
                acc += gi * &hy[k - i];
            }
        }
        y[k + 1] = acc / q(k as i64 + 1);
    }
    y
}

/// Solution of `y'^2 = g·h(y)` with `y'(0) = 1`, mod `t^{n+1}`:
/// `(k+1)·y_{k+1} = [t^k] sqrt(g·h(y))`.
pub fn recurrence_solve_square(g: &[Q], h: &QRhs, n: usize) -> Vec<Q> {
    let mut y = vec![Q::zero(); n + 1];
    for k in 0..n {
        let hy = h.eval(&y[..k + 1], k + 1);
        let s = qsqrt(&qmul(g, &hy, k + 1), k + 1);
        y[k + 1] = &s[k] / q(k as i64 + 1);
    }
    y
}

/// Image of a p-integral rational in `[0, p^λ)`. Panics if not p-integral.
pub fn residue(x: &Q, p: u64, lambda: u32) -> BigUint {
    let m = BigInt::from(num_traits::pow(BigUint::from(p), lambda as usize));
    let num = x.numer().mod_floor(&m);
    let den = x.denom().mod_floor(&m);
    let (g, inv) = ext_gcd(&den, &m);
    assert!(g.is_one(), "rational {x} is not {p}-integral");
    let r = (num * inv).mod_floor(&m);
    r.to_biguint().unwrap()
}

fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
    let (mut old_r, mut r) = (a.clone(), b.clone());
    let (mut old_s, mut s) = (BigInt::one(), BigInt::zero());
    while !r.is_zero() {
        let qt = &old_r / &r;
        let nr = &old_r - &qt * &r;
        old_r = std::mem::replace(&mut r, nr);
        let ns = &old_s - &qt * &s;
        old_s = std::mem::replace(&mut s, ns);
    }
    if old_r.is_negative() {
        (-old_r, -old_s)
    } else {
        (old_r, old_s)
    }
}

pub fn residues(xs: &[Q], p: u64, lambda: u32) -> Vec<BigUint> {
    xs.iter().map(|x| residue(x, p, lambda)).collect()
}

pub fn is_p_integral(x: &Q, p: u64) -> bool {
    !(x.denom() % BigInt::from(p)).is_zero() || x.denom().is_one()
}

/// Smallest `c ∈ [0, p^λ)` with `b·c ≡ a (mod p^λ)`, by exhaustive search.
pub fn brute_fixed_div(a: u64, b: u64, modulus: u64) -> Option<u64> {
    (0..modulus).find(|c| (b * c) % modulus == a % modulus)
}

// ---- polynomials over F_p, dense little-endian ----

pub type Fp = Vec<u64>;

pub fn fp_trim(mut a: Fp) -> Fp {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn fp_mul(a: &Fp, b: &Fp, p: u64) -> Fp {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    debug_assert!(p < 1 << 16);
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    fp_trim(out.into_iter().map(|c| c % p).collect())
}

pub fn fp_sub(a: &Fp, b: &Fp, p: u64) -> Fp {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    fp_trim(out)
}

fn fp_inv(a: u64, p: u64) -> u64 {
    let mut r = 1;
    let (mut b, mut e) = (a % p, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Exact division `a / b` in F_p[t]; panics when not exact.
pub fn fp_div_exact(a: &Fp, b: &Fp, p: u64) -> Fp {
    let b = fp_trim(b.clone());
    let mut r = fp_trim(a.clone());
    if r.is_empty() {
        return vec![];
    }
    let db = b.len() - 1;
    let lead_inv = fp_inv(b[db], p);
    let mut quo = vec![0u64; r.len().saturating_sub(db)];
    while r.len() > db && !r.is_empty() {
        let shift = r.len() - 1 - db;
        let c = r[r.len() - 1] * lead_inv % p;
        quo[shift] = c;
        for (i, bi) in b.iter().enumerate() {
            let idx = shift + i;
            r[idx] = (r[idx] + p - c * bi % p) % p;
        }
        r = fp_trim(r);
    }
    assert!(r.is_empty(), "inexact polynomial division");
    fp_trim(quo)
}

/// Determinant of a square matrix over F_p[t] by fraction-free (Bareiss) elimination.
pub fn fp_det(mut m: Vec<Vec<Fp>>, p: u64) -> Fp {
    let n = m.len();
    let mut sign_neg = false;
    let mut prev: Fp = vec![1];
    for k in 0..n {
        if m[k][k].is_empty() {
            match (k + 1..n).find(|&r| !m[r][k].is_empty()) {
                Some(r) => {
                    m.swap(k, r);
                    sign_neg = !sign_neg;
                }
                None => return vec![],
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = fp_sub(&fp_mul(&m[k][k], &m[i][j], p), &fp_mul(&m[i][k], &m[k][j], p), p);
                m[i][j] = fp_div_exact(&t, &prev, p);
            }
            m[i][k] = vec![];
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign_neg {
        fp_sub(&vec![], &det, p)
    } else {
        det
    }
}

/// `res_y(g(y), y^d·f(t/y))` from the Sylvester matrix, i.e. `∏_{i,j}(t − α_i β_j)`.
///
/// `f`, `g` are full coefficient lists (leading 1 included), little-endian.
pub fn sylvester_composed_product(f: &[u64], g: &[u64], p: u64) -> Fp {
    let d = f.len() - 1;
    let e = g.len() - 1;
    let size = d + e;
    // A(y) = y^d f(t/y) = Σ_i f_i t^i y^{d−i}; descending-in-y coefficient lists
    let a_desc: Vec<Fp> = (0..=d)
        .map(|k| {
            let i = k; // coefficient of y^{d−k} is f_k t^k
            let mut c = vec![0u64; i + 1];
            c[i] = f[i] % p;
            fp_trim(c)
        })
        .collect();
    let g_desc: Vec<Fp> = (0..=e).rev().map(|k| fp_trim(vec![g[k] % p])).collect();
    let mut m = vec![vec![Fp::new(); size]; size];
    for r in 0..d {
        for (k, c) in g_desc.iter().enumerate() {
            m[r][r + k] = c.clone();
        }
    }
    for r in 0..e {
        for (k, c) in a_desc.iter().enumerate() {
            m[d + r][r + k] = c.clone();
        }
    }
    let det = fp_det(m, p);
    assert_eq!(det.len(), d * e + 1, "composed product has degree de");
    assert_eq!(det[d * e], 1, "resultant is monic");
    det
}

pub fn big(v: &[u64]) -> Vec<BigUint> {
    v.iter().map(|&x| BigUint::from(x)).collect()
}

pub fn to_u64s(v: &[BigUint]) -> Vec<u64> {
    v.iter().map(|x| x.to_u64().unwrap()).collect()
}

pub fn bigint_from_biguint(x: &BigUint) -> BigInt {
    BigInt::from_biguint(Sign::Plus, x.clone())
}
