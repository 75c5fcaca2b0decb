//! The quantum dynamical Yang–Baxter equation
//! `R12(λ − γh3) R13(λ) R23(λ − γh1) = R23(λ) R13(λ − γh2) R12(λ)`.

use crate::dynamical::ZeroWeightOp;
use crate::expr::{ExprError, PointSampler, RatExpr, Rational, MAX_RESAMPLES};
use crate::graded::{place_operator, HomOp};

use super::{CheckKind, Failure, Residual, VerifyError};

/// Exact symbolic QDYBE residual for `R` with shift step `step`.
pub fn qdybe_residual(r: &ZeroWeightOp, step: &RatExpr) -> Residual {
    let n = r.dim();
    let shifted: Vec<ZeroWeightOp> = (1..=n).map(|k| r.shift_weight(k, step)).collect();
    Residual::from_matrix(CheckKind::Qdybe, &qdybe_difference(r, &shifted), "")
}

/// LHS − RHS as an operator, given `R` and the shifted copies
/// `shifted[k-1] = R(λ − step·ω_k)`.
pub fn qdybe_difference(r: &ZeroWeightOp, shifted: &[ZeroWeightOp]) -> HomOp {
    let n = r.dim();
    let base = r.to_homop();
    let placed: Vec<HomOp> = shifted.iter().map(ZeroWeightOp::to_homop).collect();
    // Column (a,b,c) of a shifted factor is taken from the copy shifted by
    // the weight of the slot the factor does not act on.
    let column_shifted = |slots: (usize, usize), free_slot: usize| -> HomOp {
        let copies: Vec<HomOp> = placed.iter().map(|p| place_operator(p, slots)).collect();
        let mut out = HomOp::zero(r.space(), 3).expect("arity 3");
        for (k, m) in copies.iter().enumerate() {
            for (row, col, v) in m.nonzeros() {
                if out.tuple_of(col)[free_slot] == k {
                    out.set(row, col, v.clone());
                }
            }
        }
        out
    };
    let r12 = place_operator(&base, (1, 2));
    let r13 = place_operator(&base, (1, 3));
    let r23 = place_operator(&base, (2, 3));
    let r12_h3 = column_shifted((1, 2), 2);
    let r23_h1 = column_shifted((2, 3), 0);
    let r13_h2 = column_shifted((1, 3), 1);
    debug_assert_eq!(placed.len(), n);
    let mul = |a: &HomOp, b: &HomOp| a.compose(b).expect("same space");
    let lhs = mul(&mul(&r12_h3, &r13), &r23_h1);
    let rhs = mul(&mul(&r23, &r13_h2), &r12);
    &lhs - &rhs
}

/// QDYBE residual at one exact point `(l1, …, lN, g)`. Coefficients of `R`
/// are evaluated first and both sides are applied to every basis vector of
/// `V^{⊗3}` over Q, which is much cheaper than the symbolic assembly.
pub fn qdybe_residual_at_point(r: &ZeroWeightOp, step: &RatExpr, point: &[Rational]) -> Result<Residual, VerifyError> {
    let n = r.dim();
    let s = step.eval_at(point)?;
    let op = r.to_homop();
    let table = |at: &[Rational]| -> Result<PairAction, ExprError> {
        let mut cols = vec![Vec::new(); n * n];
        for (row, col, e) in op.nonzeros() {
            cols[col].push((row, e.eval_at(at)?));
        }
        Ok(PairAction { n, cols })
    };
    // R(λ − s·ω_k) at the point equals R at the point with l_k moved by ε_k·s.
    let mut shifted = Vec::with_capacity(n);
    for k in 1..=n {
        let mut at = point.to_vec();
        at[k - 1] -= &s * Rational::from_integer(r.space().eps(k).into());
        shifted.push(table(&at)?);
    }
    let base = table(point)?;
    let par = r.space().parities();

    let mut failures = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let start: Vec3 = [([a, b, c], Rational::from_integer(1.into()))].into_iter().collect();
                let lhs = apply(
                    &apply(&apply(&start, Slots::S23, |t| &shifted[t[0]], par), Slots::S13, |_| &base, par),
                    Slots::S12,
                    |t| &shifted[t[2]],
                    par,
                );
                let rhs = apply(
                    &apply(&apply(&start, Slots::S12, |_| &base, par), Slots::S13, |t| &shifted[t[1]], par),
                    Slots::S23,
                    |_| &base,
                    par,
                );
                let mut diff = lhs;
                for (t, v) in rhs {
                    *diff.entry(t).or_insert_with(|| Rational::from_integer(0.into())) -= v;
                }
                for (t, v) in diff {
                    if v != Rational::from_integer(0.into()) {
                        let index = vec![t[0] + 1, t[1] + 1, t[2] + 1, a + 1, b + 1, c + 1];
                        failures.push(Failure { index, label: String::new(), value: RatExpr::from_rational(v) });
                    }
                }
            }
        }
    }
    Ok(Residual::new(CheckKind::Qdybe, n.pow(6), failures))
}

type Vec3 = std::collections::BTreeMap<[usize; 3], Rational>;

// Column-wise action of an evaluated operator on V ⊗ V:
// `cols[i*n + j]` lists `(row, value)` for the image of `v_i ⊗ v_j`.
struct PairAction {
    n: usize,
    cols: Vec<Vec<(usize, Rational)>>,
}

#[derive(Clone, Copy)]
enum Slots {
    S12,
    S13,
    S23,
}

// Applies an even two-slot operator to a vector in V^{⊗3}. The operator is
// chosen per basis tensor of the input, which realises the shifted factors.
// Acting on slots (1,3) is conjugation by the graded flip of slots 2 and 3.
fn apply<'a>(v: &Vec3, slots: Slots, op: impl Fn(&[usize; 3]) -> &'a PairAction, par: &[u8]) -> Vec3 {
    let mut out = Vec3::new();
    for (t, x) in v {
        let act = op(t);
        let n = act.n;
        let (i, j, keep, flip_sign) = match slots {
            Slots::S12 => (t[0], t[1], t[2], false),
            Slots::S23 => (t[1], t[2], t[0], false),
            Slots::S13 => (t[0], t[2], t[1], par[t[1]] & par[t[2]] == 1),
        };
        for (row, y) in &act.cols[i * n + j] {
            let (p, q) = (row / n, row % n);
            let (tt, sign) = match slots {
                Slots::S12 => ([p, q, keep], false),
                Slots::S23 => ([keep, p, q], false),
                Slots::S13 => ([p, keep, q], flip_sign ^ (par[keep] & par[q] == 1)),
            };
            let val = x * y;
            let e = out.entry(tt).or_insert_with(|| Rational::from_integer(0.into()));
            if sign {
                *e -= val;
            } else {
                *e += val;
            }
        }
    }
    out.retain(|_, v| *v != Rational::from_integer(0.into()));
    out
}

/// Point-evaluation QDYBE check at `samples` random non-pole points. With
/// `g` fixed the last point coordinate is set to it. Failures are labelled
/// by the sample number.
pub fn qdybe_residual_sampled(
    r: &ZeroWeightOp,
    step: &RatExpr,
    g: Option<&Rational>,
    samples: usize,
    seed: u64,
) -> Result<Residual, VerifyError> {
    let mut sampler = PointSampler::new(seed);
    let n = r.dim();
    let mut checked = 0;
    let mut failures = Vec::new();
    for sample in 0..samples {
        let mut attempt = 0;
        let res = loop {
            let p = sampler.point(n, g);
            match qdybe_residual_at_point(r, step, &p) {
                Err(VerifyError::Expr(ExprError::PoleAtPoint)) if attempt + 1 < MAX_RESAMPLES => attempt += 1,
                Err(VerifyError::Expr(ExprError::PoleAtPoint)) => return Err(VerifyError::Expr(ExprError::ResampleLimit(MAX_RESAMPLES))),
                other => break other?,
            }
        };
        checked += res.checked;
        failures.extend(res.failures().iter().map(|f| Failure { label: format!("sample {sample}"), ..f.clone() }));
    }
    Ok(Residual::new(CheckKind::Qdybe, checked, failures))
}
