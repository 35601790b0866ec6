//! Parsing of series, polynomial and right-hand-side arguments.
//!
//! Series arguments take one of three forms:
//!
//! * `inline:<expr>`: an expression in `t` with integers, `+ - * / ^` and
//!   parentheses, expanded as a series mod `t^n` (`/` is series division).
//! * `coeffs:c0,c1,...`: integer coefficients, little-endian.
//! * `file:<path>` or a bare path: the series text format.

use std::fs;

use num_bigint::BigInt;
use padic_ode::pseries::text::parse_series;
use padic_ode::{PadicContext, RhsSpec, TruncSeries, ZpElt};

pub type ParseResult<T> = std::result::Result<T, String>;

fn elt(ctx: &PadicContext, x: &BigInt) -> ZpElt {
    let m = BigInt::from(ctx.modulus().clone());
    let r = ((x % &m) + &m) % &m;
    ZpElt::new(ctx, r.magnitude())
}

pub fn int_list(text: &str) -> ParseResult<Vec<BigInt>> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|w| w.trim().parse::<BigInt>().map_err(|_| format!("bad integer {:?}", w.trim())))
        .collect()
}

fn i64_list(text: &str) -> ParseResult<Vec<i64>> {
    text.split(',')
        .map(|w| w.trim().parse::<i64>().map_err(|_| format!("bad integer {:?}", w.trim())))
        .collect()
}

/// A series known mod `t^order` in `ctx`.
pub fn series(arg: &str, ctx: &PadicContext, order: usize) -> ParseResult<TruncSeries> {
    if let Some(expr) = arg.strip_prefix("inline:") {
        return Expr::new(expr, ctx, order).parse();
    }
    if let Some(list) = arg.strip_prefix("coeffs:") {
        let coeffs: Vec<ZpElt> = int_list(list)?.iter().map(|c| elt(ctx, c)).collect();
        let s = TruncSeries::from_elts(ctx, &coeffs).map_err(|e| e.to_string())?;
        return Ok(fit(&s, order));
    }
    let path = arg.strip_prefix("file:").unwrap_or(arg);
    let text = fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))?;
    let s = parse_series(&text).map_err(|e| format!("{path}: {e}"))?;
    if s.ctx().p() != ctx.p() {
        return Err(format!("{path}: series is over p = {}, expected p = {}", s.ctx().p(), ctx.p()));
    }
    if s.ctx().lambda() < ctx.lambda() {
        return Err(format!(
            "{path}: series is known mod p^{} but the solve needs p^{}",
            s.ctx().lambda(),
            ctx.lambda()
        ));
    }
    if s.order() < order {
        return Err(format!("{path}: series is known mod t^{} but t^{order} is needed", s.order()));
    }
    s.convert(ctx).map_err(|e| e.to_string())?.truncated(order).map_err(|e| e.to_string())
}

fn fit(s: &TruncSeries, order: usize) -> TruncSeries {
    if s.order() >= order {
        s.truncated(order).expect("shorter")
    } else {
        s.padded(order)
    }
}

/// `poly:c0,c1,...`, `rat:P/Q` or `sqrtrat:P/Q` with integer coefficient lists.
pub fn rhs(arg: &str) -> ParseResult<RhsSpec> {
    let (kind, body) = arg.split_once(':').ok_or_else(|| format!("h spec {arg:?} has no kind prefix"))?;
    let built = match kind {
        "poly" => RhsSpec::polynomial_i64(&i64_list(body)?),
        "rat" | "sqrtrat" => {
            let (num, den) = body.split_once('/').ok_or_else(|| format!("{kind} spec needs P/Q, got {body:?}"))?;
            let (num, den) = (i64_list(num)?, i64_list(den)?);
            if kind == "rat" {
                RhsSpec::rational_i64(&num, &den)
            } else {
                RhsSpec::sqrt_rational_i64(&num, &den)
            }
        }
        _ => return Err(format!("unknown h kind {kind:?} (expected poly, rat or sqrtrat)")),
    };
    built.map_err(|e| e.to_string())
}

/// Full little-endian coefficient list of a monic polynomial, leading 1 included.
pub fn monic(arg: &str, ctx: &PadicContext) -> ParseResult<padic_ode::apps::MonicPoly> {
    let full: Vec<_> = int_list(arg)?.iter().map(|c| elt(ctx, c).rep()).collect();
    padic_ode::apps::MonicPoly::from_full(ctx, &full).map_err(|e| e.to_string())
}

struct Expr<'a> {
    src: &'a [u8],
    pos: usize,
    ctx: &'a PadicContext,
    order: usize,
}

impl<'a> Expr<'a> {
    fn new(src: &'a str, ctx: &'a PadicContext, order: usize) -> Self {
        Expr { src: src.as_bytes(), pos: 0, ctx, order }
    }

    fn parse(mut self) -> ParseResult<TruncSeries> {
        let v = self.sum()?;
        self.skip_ws();
        if self.pos != self.src.len() {
            return Err(self.error("unexpected character"));
        }
        Ok(v)
    }

    fn error(&self, msg: &str) -> String {
        format!("{msg} at offset {} in inline expression", self.pos)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn lift(&self, r: padic_ode::Result<TruncSeries>) -> ParseResult<TruncSeries> {
        r.map_err(|e| self.error(&e.to_string()))
    }

    fn sum(&mut self) -> ParseResult<TruncSeries> {
        let mut acc = self.product()?;
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.product()?;
            acc = self.lift(if op == b'+' { acc.add(&rhs) } else { acc.sub(&rhs) })?;
        }
        Ok(acc)
    }

    fn product(&mut self) -> ParseResult<TruncSeries> {
        let mut acc = self.power()?;
        while let Some(op @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let rhs = self.power()?;
            acc = if op == b'*' {
                self.lift(acc.mul(&rhs))?
            } else {
                let inv = self.lift(rhs.invert())?;
                self.lift(acc.mul(&inv))?
            };
        }
        Ok(acc)
    }

    fn power(&mut self) -> ParseResult<TruncSeries> {
        let base = self.unary()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        self.skip_ws();
        let e = self.integer()?;
        let e: u32 = e.try_into().map_err(|_| self.error("exponent too large"))?;
        let mut out = TruncSeries::one(self.ctx, self.order);
        for _ in 0..e {
            out = self.lift(out.mul(&base))?;
        }
        Ok(out)
    }

    fn unary(&mut self) -> ParseResult<TruncSeries> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> ParseResult<TruncSeries> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.sum()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(b't') => {
                self.pos += 1;
                Ok(if self.order > 1 {
                    TruncSeries::monomial(self.ctx, 1, 1, self.order)
                } else {
                    TruncSeries::zero(self.ctx, self.order)
                })
            }
            Some(c) if c.is_ascii_digit() => {
                let v = BigInt::from(self.integer()?);
                if self.order == 0 {
                    return Ok(TruncSeries::zero(self.ctx, 0));
                }
                let c = self.lift(TruncSeries::from_elts(self.ctx, &[elt(self.ctx, &v)]))?;
                Ok(c.padded(self.order))
            }
            _ => Err(self.error("expected a number, t or '('")),
        }
    }

    fn integer(&mut self) -> ParseResult<num_bigint::BigUint> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.error("expected an integer"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PadicContext {
        PadicContext::new(5, 2).unwrap()
    }

    #[test]
    fn inline_expressions() {
        let c = ctx();
        let s = |e: &str| series(&format!("inline:{e}"), &c, 4).unwrap();
        assert_eq!(s("1/(1+t)"), TruncSeries::from_i64s(&c, &[1, -1, 1, -1]));
        assert_eq!(s("(1 + t)^2 - 2*t"), TruncSeries::from_i64s(&c, &[1, 0, 1, 0]));
        assert_eq!(s("-3 + t^5"), TruncSeries::from_i64s(&c, &[-3, 0, 0, 0]));
        assert_eq!(s("26"), TruncSeries::from_i64s(&c, &[1, 0, 0, 0]));
        assert!(series("inline:1/t", &c, 4).is_err());
        assert!(series("inline:1 +", &c, 4).is_err());
        assert!(series("inline:(1", &c, 4).is_err());
        assert!(series("inline:x", &c, 4).is_err());
    }

    #[test]
    fn coefficient_lists() {
        let c = ctx();
        assert_eq!(series("coeffs:1,-1", &c, 3).unwrap(), TruncSeries::from_u64s(&c, &[1, 24, 0]));
        assert_eq!(series("coeffs:1,2,3,4", &c, 2).unwrap(), TruncSeries::from_u64s(&c, &[1, 2]));
        assert!(series("coeffs:1,a", &c, 2).is_err());
    }

    #[test]
    fn rhs_specs() {
        assert!(matches!(rhs("poly:1,1"), Ok(RhsSpec::Polynomial(_))));
        assert!(matches!(rhs("rat:1/1,-1"), Ok(RhsSpec::Rational { .. })));
        assert!(matches!(rhs("sqrtrat:1,1/1,0,1"), Ok(RhsSpec::SqrtRational { .. })));
        assert!(rhs("poly:2,1").is_err());
        assert!(rhs("rat:1,1").is_err());
        assert!(rhs("exp:1").is_err());
        assert!(rhs("1,1").is_err());
    }

    #[test]
    fn monic_polys() {
        let f5 = PadicContext::new(5, 1).unwrap();
        assert_eq!(monic("4,0,1", &f5).unwrap().degree(), 2);
        assert!(monic("4,0,2", &f5).is_err());
        assert!(monic("", &f5).is_err());
    }
}
