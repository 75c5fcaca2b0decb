//! The explicit r- and R-matrix families.

use crate::expr::{RatExpr, Rational};

use super::{DynError, IntervalPartition, QuasiConstant, SignTable, TwoForm, ZeroWeightOp};

/// `Σ D_ij E_ii ⊗ E_jj + Σ_{i≠j same interval} A_ij/(λ_ij − ν_ij) E_ij ⊗ (E_ij)*`
/// with `(E_ij)* = A_ji (−1)^{σ(i)} E_ji`.
pub fn r_canonical(x: &IntervalPartition, d: &TwoForm, nu: &[Rational]) -> Result<ZeroWeightOp, DynError> {
    let space = x.space();
    let n = space.dim();
    if nu.len() != n {
        return Err(DynError::DimensionMismatch { expected: n, got: nu.len() });
    }
    d.check_closed(space)?;
    let signs = SignTable::new(space);
    let mut r = ZeroWeightOp::zero(space);
    for i in 1..=n {
        for j in 1..=n {
            if i != j {
                r.set_alpha(i, j, d.get(i, j).clone());
            }
        }
    }
    for (i, j) in x.pairs() {
        let shifted = &RatExpr::lambda(i, j) - &RatExpr::from_rational(&nu[i - 1] - &nu[j - 1]);
        let coef = signs.a(i, j) * signs.a(j, i) * space.eps(i);
        // E_ij ⊗ E_ji is the β_ji slot
        r.set_beta(j, i, RatExpr::int(coef) / shifted);
    }
    Ok(r)
}

/// `Σ_k Σ_{i≠j ∈ X_k} (−1)^{σ(j)}/λ_ij E_ij ⊗ E_ji`.
pub fn r_rat(x: &IntervalPartition) -> ZeroWeightOp {
    let n = x.space().dim();
    r_canonical(x, &TwoForm::zero(n), &vec![Rational::from_integer(0.into()); n]).expect("zero form is closed")
}

/// `Σ_k Σ_{i≠j ∈ X_k} −1/λ_ij (E_ii ⊗ E_jj + (−1)^{σ(i)} E_ji ⊗ E_ij)`.
pub fn r_prime_rat(x: &IntervalPartition) -> ZeroWeightOp {
    let space = x.space();
    let mut r = ZeroWeightOp::zero(space);
    for (i, j) in x.pairs() {
        let c = RatExpr::int(-1) / RatExpr::lambda(i, j);
        r.set_alpha(i, j, c.clone());
        r.set_beta(i, j, c.scale(&Rational::from_integer(space.eps(i).into())));
    }
    r
}

/// `R_X` with step 1: diagonal `(−1)^{σ(i)+σ(j)}` plus
/// `1/(λ_ij − μ_ij) (E_ii ⊗ E_jj + (−1)^{σ(i)} E_ji ⊗ E_ij)` on each interval.
pub fn r_x(x: &IntervalPartition, mu: &QuasiConstant) -> Result<ZeroWeightOp, DynError> {
    r_x_with_step(x, mu, &RatExpr::one())
}

/// `R_X` for an arbitrary step `γ`: the interval terms become
/// `γ/(λ_ij − μ_ij)`. This is `R_X(λ/γ)` with `μ` rescaled by `γ`.
pub fn r_x_with_step(x: &IntervalPartition, mu: &QuasiConstant, step: &RatExpr) -> Result<ZeroWeightOp, DynError> {
    let space = x.space();
    let n = space.dim();
    if mu.len() != n {
        return Err(DynError::DimensionMismatch { expected: n, got: mu.len() });
    }
    let mut r = ZeroWeightOp::zero(space);
    for i in 1..=n {
        for j in 1..=n {
            r.set_alpha(i, j, RatExpr::int(space.eps(i) * space.eps(j)));
        }
    }
    add_interval_terms(&mut r, x, mu, step);
    Ok(r)
}

/// `Id + Σ_k Σ_{i≠j ∈ X_k} g/λ_ij (E_ii ⊗ E_jj + (−1)^{σ(i)} E_ji ⊗ E_ij)`.
pub fn r_rat_gamma(x: &IntervalPartition) -> ZeroWeightOp {
    let n = x.space().dim();
    r_rat_gamma_shifted(x, &QuasiConstant::zeros(n)).expect("dimensions agree")
}

/// [`r_rat_gamma`] with `λ_ij` replaced by `λ_ij − μ_ij`.
pub fn r_rat_gamma_shifted(x: &IntervalPartition, mu: &QuasiConstant) -> Result<ZeroWeightOp, DynError> {
    let space = x.space();
    if mu.len() != space.dim() {
        return Err(DynError::DimensionMismatch { expected: space.dim(), got: mu.len() });
    }
    let mut r = ZeroWeightOp::identity(space);
    add_interval_terms(&mut r, x, mu, &RatExpr::g());
    Ok(r)
}

fn add_interval_terms(r: &mut ZeroWeightOp, x: &IntervalPartition, mu: &QuasiConstant, step: &RatExpr) {
    let space = x.space().clone();
    for (i, j) in x.pairs() {
        let c = step / &(&RatExpr::lambda(i, j) - &mu.diff(i, j));
        let a = r.alpha(i, j) + &c;
        r.set_alpha(i, j, a);
        r.set_beta(i, j, c.scale(&Rational::from_integer(space.eps(i).into())));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_expr;
    use crate::graded::GradedSpace;

    fn sp(m: usize, n: usize) -> GradedSpace {
        GradedSpace::new(m, n).unwrap()
    }

    #[test]
    fn r_rat_two_dimensional() {
        let s = sp(1, 1);
        let x = IntervalPartition::full(&s);
        let r = r_rat(&x);
        assert_eq!(r.beta(1, 2), &parse_expr("-1/(l1-l2)").unwrap());
        assert_eq!(r.beta(2, 1), &parse_expr("1/(l2-l1)").unwrap());
        assert!(r.alpha(1, 2).is_zero());
    }

    #[test]
    fn r_rat_even_is_classical_rational() {
        let s = sp(3, 0);
        let r = r_rat(&IntervalPartition::full(&s));
        for i in 1..=3 {
            for j in 1..=3 {
                if i != j {
                    // E_ij ⊗ E_ji coefficient 1/λ_ij lives in β_ji
                    assert_eq!(r.beta(j, i), &(RatExpr::one() / RatExpr::lambda(i, j)));
                }
            }
        }
    }

    #[test]
    fn empty_partition_gives_zero_or_identity() {
        let s = sp(2, 1);
        let x = IntervalPartition::empty(&s);
        assert!(r_rat(&x).is_zero());
        assert_eq!(r_rat_gamma(&x), ZeroWeightOp::identity(&s));
    }

    #[test]
    fn r_x_coefficients() {
        let s = sp(2, 1);
        let x = IntervalPartition::parse(&s, "1-2").unwrap();
        let mu = QuasiConstant::from_rationals(&vec![Rational::from_integer(0.into()); 3]);
        let r = r_x(&x, &mu).unwrap();
        for i in 1..=3 {
            assert!(r.alpha(i, i).is_one());
        }
        assert_eq!(r.alpha(1, 3), &RatExpr::int(-1));
        assert_eq!(r.alpha(1, 2), &parse_expr("1 + 1/(l1-l2)").unwrap());
        assert!(r.beta(1, 3).is_zero());
    }

    #[test]
    fn r_canonical_checks_inputs() {
        let s = sp(3, 0);
        let x = IntervalPartition::full(&s);
        let bad = TwoForm::from_upper(3, [((1, 2), RatExpr::l(3))]).unwrap();
        let nu = vec![Rational::from_integer(0.into()); 3];
        assert!(matches!(r_canonical(&x, &bad, &nu), Err(DynError::NotClosed(..))));
        assert!(matches!(r_canonical(&x, &TwoForm::zero(3), &nu[..2]), Err(DynError::DimensionMismatch { .. })));
    }
}
