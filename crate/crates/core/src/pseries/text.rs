//! Plain-text series format.
//!
//! ```text
//! p lambda n
//! c_0 c_1 ... c_{n-1}
//! ```
//!
//! Coefficients are canonical representatives in `[0, p^lambda)`, little-endian
//! by degree, separated by single spaces. Both lines end with `\n`; the second
//! line is empty when `n = 0`.

use num_bigint::BigUint;

use super::TruncSeries;
use crate::error::{Error, Result};
use crate::zpfixed::PadicContext;

pub fn format_series(s: &TruncSeries) -> String {
    let mut out = format!("{} {} {}\n", s.ctx().p(), s.ctx().lambda(), s.order());
    let reps: Vec<String> = s.reps().iter().map(|c| c.to_string()).collect();
    out.push_str(&reps.join(" "));
    out.push('\n');
    out
}

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

pub fn parse_series(text: &str) -> Result<TruncSeries> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| bad("missing header line"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 3 {
        return Err(bad("header must be \"p lambda n\""));
    }
    let p: u64 = fields[0].parse().map_err(|_| bad("p is not an integer"))?;
    let lambda: u32 = fields[1].parse().map_err(|_| bad("lambda is not an integer"))?;
    let n: usize = fields[2].parse().map_err(|_| bad("n is not an integer"))?;
    let ctx = PadicContext::new(p, lambda)?;
    let body = lines.next().unwrap_or("");
    if lines.any(|l| !l.trim().is_empty()) {
        return Err(bad("trailing content after coefficient line"));
    }
    let coeffs: Vec<BigUint> = body
        .split_whitespace()
        .map(|w| {
            let canonical = w.bytes().all(|b| b.is_ascii_digit()) && (w == "0" || !w.starts_with('0'));
            match w.parse::<BigUint>() {
                Ok(c) if canonical => Ok(c),
                _ => Err(bad(format!("bad coefficient {w:?}"))),
            }
        })
        .collect::<Result<_>>()?;
    if coeffs.len() != n {
        return Err(bad(format!("expected {n} coefficients, found {}", coeffs.len())));
    }
    if coeffs.iter().any(|c| c >= ctx.modulus()) {
        return Err(bad("coefficient is not a canonical representative"));
    }
    Ok(TruncSeries::new(&ctx, &coeffs))
}
