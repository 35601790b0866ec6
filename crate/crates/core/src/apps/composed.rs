use super::{newton_series, recover_from_newton_series, MonicPoly};
use crate::dsol::floor_log;
use crate::error::{Error, Result};

/// `f ⊗ g = ∏(t − α_i β_j)` over `F_p`.
///
/// Both inputs live in `Z/p` (λ = 1) and must have nonzero constant terms.
/// They are lifted canonically to `Z/p^κ` with `κ = 1 + ⌊log_p(de)⌋`; the
/// Hadamard product of their Newton series is the Newton series of the lifted
/// composed product, which is recovered mod `p` and reduced.
pub fn composed_product(f: &MonicPoly, g: &MonicPoly) -> Result<MonicPoly> {
    let fp = f.ctx();
    if fp != g.ctx() {
        return Err(Error::ContextMismatch);
    }
    if fp.lambda() != 1 {
        return Err(Error::InvalidInput("composed product expects polynomials over F_p".into()));
    }
    let (d, e) = (f.degree(), g.degree());
    if d == 0 || e == 0 {
        return Err(Error::InvalidInput("composed product needs positive degrees".into()));
    }
    if f.coeff(0).is_zero() || g.coeff(0).is_zero() {
        return Err(Error::InvalidInput("composed product needs nonzero constant terms".into()));
    }
    let n = d * e;
    let kappa = 1 + floor_log(n as u64, fp.p());
    let lifted = fp.with_lambda(kappa)?;
    let hf = newton_series(&f.convert(&lifted)?, n).series;
    let hg = newton_series(&g.convert(&lifted)?, n).series;
    let rec = recover_from_newton_series(&hf.hadamard(&hg)?, n)?;
    debug_assert!(rec.guaranteed_precision >= 1);
    rec.poly.convert(fp)
}
