use crate::expr::RatExpr;

use super::{DynError, ZeroWeightOp};

/// Taylor coefficient operators `R = C_0 + g C_1 + … + g^order C_order`.
pub fn expand_gamma(r: &ZeroWeightOp, order: usize) -> Result<Vec<ZeroWeightOp>, DynError> {
    let n = r.dim();
    let mut out = vec![ZeroWeightOp::zero(r.space()); order + 1];
    for i in 1..=n {
        for j in 1..=n {
            let a = r.alpha(i, j).taylor_gamma(order)?;
            for (k, c) in a.into_iter().enumerate() {
                out[k].set_alpha(i, j, c);
            }
            if i != j {
                let b = r.beta(i, j).taylor_gamma(order)?;
                for (k, c) in b.into_iter().enumerate() {
                    out[k].set_beta(i, j, c);
                }
            }
        }
    }
    Ok(out)
}

/// `r` with `R = Id − g r + O(g²)`.
pub fn semiclassical_limit(r: &ZeroWeightOp) -> Result<ZeroWeightOp, DynError> {
    let c = expand_gamma(r, 1)?;
    if c[0] != ZeroWeightOp::identity(r.space()) {
        return Err(DynError::NotUnitalAtGammaZero);
    }
    Ok(c[1].scale(&RatExpr::int(-1)))
}
