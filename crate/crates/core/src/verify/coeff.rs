//! The QDYBE for a zero-weight `R` with `α_ii = 1`, rewritten as scalar
//! equations on the coefficients `α_ij`, `β_ij`.

use crate::dynamical::ZeroWeightOp;
use crate::expr::RatExpr;

use super::{CheckKind, Failure, Residual, VerifyError};

/// Equation labels, in the order they are generated for each index tuple.
pub const COEFFICIENT_EQUATIONS: [&str; 8] = ["kii", "iki", "ijk", "ikj", "jik", "jki", "kji", "kij"];

/// Evaluates all eight families of coefficient equations. Requires
/// `α_ii = 1` for every `i`. Pair equations are indexed `(i,k)` with
/// `i ≠ k`, triple equations `(i,j,k)` with distinct entries.
pub fn coefficient_equation_suite(r: &ZeroWeightOp, step: &RatExpr) -> Result<Residual, VerifyError> {
    let n = r.dim();
    for i in 1..=n {
        if !r.alpha(i, i).is_one() {
            return Err(VerifyError::AlphaDiagNotOne(i));
        }
    }
    let space = r.space();
    let eps = |i: usize| RatExpr::int(space.eps(i));
    let shifted: Vec<ZeroWeightOp> = (1..=n).map(|k| r.shift_weight(k, step)).collect();
    let w = |k: usize| &shifted[k - 1];
    let a = |i, j| r.alpha(i, j);
    let b = |i, j| r.beta(i, j);

    let mut checked = 0;
    let mut failures = Vec::new();
    let mut record = |label: &str, index: Vec<usize>, value: RatExpr| {
        checked += 1;
        if !value.is_zero() {
            failures.push(Failure { index, label: label.to_string(), value });
        }
    };

    for i in 1..=n {
        for k in 1..=n {
            if i == k {
                continue;
            }
            let wi = w(i);
            let kii = &(&(wi.alpha(k, i) * b(i, k)) * wi.alpha(i, k)) + &(&(wi.beta(i, k) * wi.beta(i, k)) - wi.beta(i, k));
            record("kii", vec![i, k], kii);
            let s = &eps(i) * &eps(k);
            let iki =
                &(&(&(&s * wi.beta(k, i)) * b(i, k)) * wi.alpha(i, k)) + &(&(wi.alpha(i, k) * wi.beta(i, k)) - &(b(i, k) * wi.alpha(i, k)));
            record("iki", vec![i, k], iki);
        }
    }

    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                if i == j || j == k || i == k {
                    continue;
                }
                let (wi, wj, wk) = (w(i), w(j), w(k));
                let idx = || vec![i, j, k];

                let ijk = &(&(wk.alpha(i, j) * a(i, k)) * wi.alpha(j, k)) - &(&(a(j, k) * wj.alpha(i, k)) * a(i, j));
                record("ijk", idx(), ijk);

                let ikj = &(&(wj.alpha(i, k) * a(i, j)) * wi.beta(j, k)) - &(&(b(j, k) * wj.alpha(i, k)) * a(i, j));
                record("ikj", idx(), ikj);

                let jik = &(&(wk.beta(i, j) * a(i, k)) * wi.alpha(j, k)) - &(&(a(i, k) * wi.alpha(j, k)) * b(i, j));
                record("jik", idx(), jik);

                let jki = &(&(&(&(&eps(k) * wi.beta(k, j)) * b(i, k)) * wi.alpha(j, k))
                    + &(&(&(&eps(j) * wi.alpha(j, k)) * b(i, j)) * wi.beta(j, k)))
                    - &(&(&(&eps(i) * b(i, k)) * wi.alpha(j, k)) * b(i, j));
                record("jki", idx(), jki);

                let sij = &eps(i) * &eps(j);
                let kji = &(&(&(wi.alpha(k, j) * b(i, k)) * wi.alpha(j, k)) + &(&(wi.beta(j, k) * b(i, j)) * wi.beta(j, k)))
                    - (&(&(&(a(j, i) * wj.beta(i, k)) * a(i, j)) + &(&(&(&sij * b(i, j)) * wi.beta(j, k)) * b(i, j))));
                record("kji", idx(), kji);

                let kij = &(&(&(wj.beta(i, k) * a(i, j)) * wi.beta(j, k)) - &(&(b(j, i) * wj.beta(i, k)) * a(i, j)))
                    - &(&(a(i, j) * wi.beta(j, k)) * b(i, j));
                record("kij", idx(), kij);
            }
        }
    }
    Ok(Residual::new(CheckKind::CoefficientSuite, checked, failures))
}
