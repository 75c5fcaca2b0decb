//! Hecke conditions on `Ř = P_s R` and the β-recursions satisfied by
//! Hecke-type solutions.

use crate::dynamical::ZeroWeightOp;
use crate::expr::{RatExpr, Rational};
use crate::graded::HomOp;

use super::{CheckKind, Failure, Residual, VerifyError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeParams {
    p: Rational,
    q: Rational,
}

impl HeckeParams {
    pub fn new(p: Rational, q: Rational) -> Result<Self, VerifyError> {
        if &p + &q == Rational::from_integer(0.into()) {
            return Err(VerifyError::ParameterConflict);
        }
        Ok(HeckeParams { p, q })
    }

    pub fn p(&self) -> &Rational {
        &self.p
    }

    pub fn q(&self) -> &Rational {
        &self.q
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HeckeMode {
    /// Fixed eigenvalues: `R` acts on `V_ii` by `p`, and `Ř` on each two-dimensional
    /// block `V_ij` has trace `s(p − q)` and determinant `−pq` with `s = ε_i ε_j`.
    Strong,
    /// `(Ř − sp)(Ř + sq) = 0` on `V_ij`, `(α_ii − p)(α_ii + q) = 0` on `V_ii`.
    Weak,
}

/// `Ř = P_s R` where `P_s` is the graded flip.
pub fn r_check(r: &ZeroWeightOp) -> HomOp {
    HomOp::super_swap(r.space()).compose(&r.to_homop()).expect("same space")
}

pub fn hecke_check(r: &ZeroWeightOp, params: &HeckeParams, mode: HeckeMode) -> Residual {
    let space = r.space();
    let n = r.dim();
    let p = RatExpr::from_rational(params.p.clone());
    let q = RatExpr::from_rational(params.q.clone());
    let rc = r_check(r);
    let mut checked = 0;
    let mut failures = Vec::new();
    let mut record = |label: &str, index: Vec<usize>, value: RatExpr| {
        checked += 1;
        if !value.is_zero() {
            failures.push(Failure { index, label: label.to_string(), value });
        }
    };

    for i in 1..=n {
        let a = r.alpha(i, i);
        let v = match mode {
            HeckeMode::Strong => a - &p,
            HeckeMode::Weak => &(a - &p) * &(a + &q),
        };
        record("diag", vec![i, i], v);
    }
    for i in 1..=n {
        for j in i + 1..=n {
            let s = RatExpr::int(space.eps(i) * space.eps(j));
            let (x, y) = ((i - 1) * n + (j - 1), (j - 1) * n + (i - 1));
            let m = [[rc.get(x, x).clone(), rc.get(x, y).clone()], [rc.get(y, x).clone(), rc.get(y, y).clone()]];
            match mode {
                HeckeMode::Strong => {
                    let trace = &m[0][0] + &m[1][1];
                    let det = &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]);
                    record("trace", vec![i, j], &trace - &(&s * &(&p - &q)));
                    record("det", vec![i, j], &det + &(&p * &q));
                }
                HeckeMode::Weak => {
                    let sp = &s * &p;
                    let sq = &s * &q;
                    let a = [[&m[0][0] - &sp, m[0][1].clone()], [m[1][0].clone(), &m[1][1] - &sp]];
                    let b = [[&m[0][0] + &sq, m[0][1].clone()], [m[1][0].clone(), &m[1][1] + &sq]];
                    for (u, row) in a.iter().enumerate() {
                        for (v, (b0, b1)) in b[0].iter().zip(&b[1]).enumerate() {
                            let e = &(&row[0] * b0) + &(&row[1] * b1);
                            record("quadratic", vec![i, j, u + 1, v + 1], e);
                        }
                    }
                }
            }
        }
    }
    Residual::new(CheckKind::Hecke, checked, failures)
}

/// The β-recursions at step 1, for `i ≠ j` with `β_ij ≠ 0`:
/// `1/β_ij(λ) − 1/β_ij(λ − ε_i ω_i) = 1`,
/// `1/β_ij(λ) − 1/β_ij(λ − ε_j ω_j) = −ε_i ε_j`,
/// invariance of `β_ij` under the other weights, and the trace relation
/// `A_ij β_ij + A_ji β_ji = 0`.
pub fn beta_recursion_check(r: &ZeroWeightOp) -> Residual {
    let space = r.space();
    let n = r.dim();
    let one = RatExpr::one();
    let signs = crate::dynamical::SignTable::new(space);
    let shifted: Vec<ZeroWeightOp> = (1..=n).map(|k| r.shift_weight(k, &one)).collect();
    let mut checked = 0;
    let mut failures = Vec::new();
    let mut record = |label: &str, index: Vec<usize>, value: RatExpr| {
        checked += 1;
        if !value.is_zero() {
            failures.push(Failure { index, label: label.to_string(), value });
        }
    };
    for i in 1..=n {
        for j in 1..=n {
            if i == j {
                continue;
            }
            let b = r.beta(i, j);
            if i < j {
                let tr = &(&RatExpr::int(signs.a(i, j)) * b) + &(&RatExpr::int(signs.a(j, i)) * r.beta(j, i));
                record("trace", vec![i, j], tr);
            }
            if b.is_zero() {
                continue;
            }
            let inv = b.inverse().expect("nonzero");
            let recip = |k: usize| -> RatExpr {
                match shifted[k - 1].beta(i, j).inverse() {
                    Ok(x) => &inv - &x,
                    Err(_) => RatExpr::one(),
                }
            };
            record("reciprocal-i", vec![i, j], &recip(i) - &one);
            record("reciprocal-j", vec![i, j], &recip(j) + &RatExpr::int(space.eps(i) * space.eps(j)));
            for k in (1..=n).filter(|&k| k != i && k != j) {
                record("periodic", vec![i, j, k], shifted[k - 1].beta(i, j) - b);
            }
        }
    }
    Residual::new(CheckKind::BetaRecursion, checked, failures)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamical::{r_x, IntervalPartition, QuasiConstant};
    use crate::graded::GradedSpace;

    fn q(k: i64) -> Rational {
        Rational::from_integer(k.into())
    }

    #[test]
    fn r_x_is_strong_hecke_and_satisfies_recursions() {
        let params = HeckeParams::new(q(1), q(1)).unwrap();
        for (m, n) in [(2, 1), (1, 2), (0, 3), (3, 0)] {
            let s = GradedSpace::new(m, n).unwrap();
            for x in IntervalPartition::enumerate(&s) {
                let mu = QuasiConstant::from_rationals(&[q(0), q(3), q(-2)]);
                let r = r_x(&x, &mu).unwrap();
                let strong = hecke_check(&r, &params, HeckeMode::Strong);
                assert!(strong.passes(), "({m},{n}) {x}: {strong}");
                assert!(hecke_check(&r, &params, HeckeMode::Weak).passes());
                let rec = beta_recursion_check(&r);
                assert!(rec.passes(), "({m},{n}) {x}: {rec}");
            }
        }
    }

    #[test]
    fn literal_diagonal_eigenvalue_is_negated_on_odd_vectors() {
        // Ř(v_i ⊗ v_i) = ε_i α_ii v_i ⊗ v_i, so with α_ii = 1 an odd basis
        // vector gives −1 rather than p = 1.
        let s = GradedSpace::new(1, 1).unwrap();
        let r = r_x(&IntervalPartition::full(&s), &QuasiConstant::zeros(2)).unwrap();
        let rc = r_check(&r);
        assert!(rc.get(0, 0).is_one());
        assert_eq!(rc.get(3, 3), &RatExpr::int(-1));
        assert!(hecke_check(&r, &HeckeParams::new(q(1), q(1)).unwrap(), HeckeMode::Strong).passes());
    }

    #[test]
    fn scaled_operator_fails_strong_but_weak_detects_eigenvalues() {
        let s = GradedSpace::new(2, 0).unwrap();
        let r = r_x(&IntervalPartition::full(&s), &QuasiConstant::zeros(2)).unwrap().scale(&RatExpr::int(2));
        let params = HeckeParams::new(q(1), q(1)).unwrap();
        let res = hecke_check(&r, &params, HeckeMode::Strong);
        assert_eq!(res.witness().unwrap().label, "diag");
        let p2 = HeckeParams::new(q(2), q(2)).unwrap();
        assert!(hecke_check(&r, &p2, HeckeMode::Weak).passes());
    }

    #[test]
    fn conflicting_parameters_rejected() {
        assert_eq!(HeckeParams::new(q(1), q(-1)), Err(VerifyError::ParameterConflict));
    }

    #[test]
    fn broken_beta_fails_recursion() {
        let s = GradedSpace::new(2, 1).unwrap();
        let mut r = r_x(&IntervalPartition::full(&s), &QuasiConstant::zeros(3)).unwrap();
        r.set_beta(1, 2, r.beta(1, 2) * &RatExpr::int(3));
        assert!(!beta_recursion_check(&r).passes());
    }
}
