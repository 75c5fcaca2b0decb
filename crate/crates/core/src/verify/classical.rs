//! Checks on classical r-matrices and on the zero-weight condition.

use crate::dynamical::ZeroWeightOp;
use crate::expr::{RatExpr, Rational};
use crate::graded::{alt_s_of_dr, place_operator, HomOp};

use super::{CheckKind, Failure, Residual, VerifyError};

/// `[x_i ⊗ 1 + 1 ⊗ x_i, R] = 0` for every `i`, together with the structural
/// test that `R` lies in the span of `E_ii ⊗ E_jj` and `E_ji ⊗ E_ij`.
/// Disagreement between the two is reported under the label `disagree`.
pub fn check_zero_weight(r: &HomOp) -> Residual {
    let commutator = commutator_check(r);
    let structural = structural_check(r);
    let mut failures: Vec<Failure> = commutator.failures().to_vec();
    if commutator.passes() != structural.passes() {
        failures.push(Failure { index: vec![], label: "disagree".into(), value: RatExpr::one() });
    }
    failures.extend(structural.failures().iter().cloned());
    Residual::new(CheckKind::ZeroWeight, commutator.checked + structural.checked, failures)
}

/// Commutators with the Cartan elements `h_i = E_ii ⊗ 1 + 1 ⊗ E_ii`.
pub fn commutator_check(r: &HomOp) -> Residual {
    let space = r.space();
    let n = space.dim();
    let id = HomOp::identity(space, 1).expect("arity 1");
    let mut out = Residual::new(CheckKind::ZeroWeight, 0, vec![]);
    for i in 1..=n {
        let e = HomOp::basis_e(space, i, i).expect("index in range");
        let h = &e.super_kron(&id).expect("arity 2") + &id.super_kron(&e).expect("arity 2");
        let c = h.commutator(r).expect("same space");
        out = out.merge(Residual::from_matrix(CheckKind::ZeroWeight, &c, &format!("commutator h_{i}")));
    }
    out
}

/// Entries outside the zero-weight pattern.
pub fn structural_check(r: &HomOp) -> Residual {
    let n = r.space().dim();
    let failures = r
        .nonzeros()
        .filter(|&(row, col, _)| {
            let (a, b) = (row / n, row % n);
            let (i, j) = (col / n, col % n);
            !((a, b) == (i, j) || (a, b) == (j, i))
        })
        .map(|(row, col, v)| {
            let mut index: Vec<usize> = r.tuple_of(row).into_iter().map(|x| x + 1).collect();
            index.extend(r.tuple_of(col).into_iter().map(|x| x + 1));
            Failure { index, label: "structural".into(), value: v.clone() }
        })
        .collect();
    Residual::new(CheckKind::ZeroWeight, r.dim() * r.dim(), failures)
}

/// The CDYBE left-hand side
/// `Alt_s(dr) + [r^{12}, r^{13}] + [r^{12}, r^{23}] + [r^{13}, r^{23}]` as an operator.
pub fn cdybe_operator(r: &ZeroWeightOp) -> HomOp {
    let op = r.to_homop();
    let r12 = place_operator(&op, (1, 2));
    let r13 = place_operator(&op, (1, 3));
    let r23 = place_operator(&op, (2, 3));
    let br = |a: &HomOp, b: &HomOp| a.commutator(b).expect("same space");
    let mut total = alt_s_of_dr(&r.components());
    total = &total + &br(&r12, &r13);
    total = &total + &br(&r12, &r23);
    &total + &br(&r13, &r23)
}

pub fn cdybe_residual(r: &ZeroWeightOp) -> Residual {
    Residual::from_matrix(CheckKind::Cdybe, &cdybe_operator(r), "")
}

/// `r + T_s(r) = εΩ`; only `ε = 0` is supported.
pub fn unitarity_residual(r: &ZeroWeightOp, epsilon: &Rational) -> Result<Residual, VerifyError> {
    if epsilon != &Rational::from_integer(0.into()) {
        return Err(VerifyError::UnsupportedEpsilon);
    }
    let op = r.to_homop();
    let sum = &op + &op.super_twist().expect("arity 2");
    Ok(Residual::from_matrix(CheckKind::Unitarity, &sum, ""))
}
