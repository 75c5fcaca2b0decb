//! Classical and quantum gauge transformations on zero-weight operators.

use crate::expr::{RatExpr, Rational};
use crate::graded::GradedSpace;

use super::{DynError, MultForm, TwoForm, ZeroWeightOp};

/// Gauge transformations of classical r-matrices.
#[derive(Clone, Debug)]
pub enum ClassicalGauge {
    /// (1) `r ↦ r + Σ D_ij E_ii ⊗ E_jj` for a closed 2-form `D`.
    AddClosedForm(TwoForm),
    /// (2) `r(λ) ↦ r(λ + μ)`.
    Shift(Vec<Rational>),
    /// (3) `r(λ) ↦ c·r(cλ)`, `c ≠ 0`.
    Rescale(Rational),
    /// (4) `r(λ) ↦ (τ ⊗ τ) r(τ⁻¹·λ) (τ⁻¹ ⊗ τ⁻¹)`; `tau[i-1] = τ(i)`.
    Permute(Vec<usize>),
    /// (5) `r ↦ r + c·Id`, `c ≠ 0`.
    AddIdentity(Rational),
}

/// Gauge transformations of quantum R-matrices.
#[derive(Clone, Debug)]
pub enum QuantumGauge {
    /// (1) `α_ij ↦ φ_ij α_ij` for `i ≠ j`, `φ` a closed multiplicative 2-form.
    MultiplyForm(MultForm),
    /// (2) `R(λ) ↦ (τ ⊗ τ) R(τ⁻¹·λ) (τ⁻¹ ⊗ τ⁻¹)`; `tau[i-1] = τ(i)`.
    Permute(Vec<usize>),
    /// (3) `R ↦ c·R`, `c ≠ 0`.
    Scale(RatExpr),
    /// (4) `R(λ) ↦ R(cλ + μ)`, `c ≠ 0`; the step becomes `γ/c`.
    Reparametrize { c: Rational, mu: Vec<Rational> },
}

pub fn gauge_classical(r: &ZeroWeightOp, t: &ClassicalGauge) -> Result<ZeroWeightOp, DynError> {
    let n = r.dim();
    match t {
        ClassicalGauge::AddClosedForm(d) => {
            d.check_closed(r.space())?;
            let mut out = r.clone();
            for i in 1..=n {
                for j in 1..=n {
                    if i != j {
                        out.set_alpha(i, j, r.alpha(i, j) + d.get(i, j));
                    }
                }
            }
            Ok(out)
        }
        ClassicalGauge::Shift(mu) => {
            check_len(n, mu.len())?;
            Ok(r.map_nonzero(|e| e.translate(mu)))
        }
        ClassicalGauge::Rescale(c) => {
            nonzero(c)?;
            Ok(r.map_nonzero(|e| e.scale_coordinates(c).scale(c)))
        }
        ClassicalGauge::Permute(tau) => permute(r, tau),
        ClassicalGauge::AddIdentity(c) => {
            nonzero(c)?;
            let id = ZeroWeightOp::identity(r.space()).scale(&RatExpr::from_rational(c.clone()));
            r.checked_add(&id)
        }
    }
}

/// Applies a quantum gauge to `R` with step `step`; returns the new operator
/// and its step.
pub fn gauge_quantum(r: &ZeroWeightOp, step: &RatExpr, t: &QuantumGauge) -> Result<(ZeroWeightOp, RatExpr), DynError> {
    let n = r.dim();
    match t {
        QuantumGauge::MultiplyForm(phi) => {
            if phi.degree() != 2 || phi.space() != r.space() {
                return Err(DynError::BadForm("gauge needs a 2-form on the operator's space".into()));
            }
            if phi.step() != step {
                return Err(DynError::NotGammaClosed(format!("form step {} differs from operator step {step}", phi.step())));
            }
            if let Some((idx, _)) = phi.d_gamma().first_nontrivial() {
                return Err(DynError::NotGammaClosed(format!("d_γ φ is nontrivial at {idx:?}")));
            }
            let mut out = r.clone();
            for i in 1..=n {
                for j in 1..=n {
                    if i != j && !r.alpha(i, j).is_zero() {
                        out.set_alpha(i, j, r.alpha(i, j) * &phi.get(&[i, j]));
                    }
                }
            }
            Ok((out, step.clone()))
        }
        QuantumGauge::Permute(tau) => Ok((permute(r, tau)?, step.clone())),
        QuantumGauge::Scale(c) => {
            if c.is_zero() {
                return Err(DynError::ZeroScalar);
            }
            Ok((r.scale(c), step.clone()))
        }
        QuantumGauge::Reparametrize { c, mu } => {
            nonzero(c)?;
            check_len(n, mu.len())?;
            let out = r.map_nonzero(|e| e.translate(mu).scale_coordinates(c));
            let new_step = step.scale(&c.recip());
            Ok((out, new_step))
        }
    }
}

fn nonzero(c: &Rational) -> Result<(), DynError> {
    if c == &Rational::from_integer(0.into()) {
        Err(DynError::ZeroScalar)
    } else {
        Ok(())
    }
}

fn check_len(expected: usize, got: usize) -> Result<(), DynError> {
    if expected == got {
        Ok(())
    } else {
        Err(DynError::DimensionMismatch { expected, got })
    }
}

/// Validates `tau` (1-based images) as a permutation of `{1..n}`.
pub fn check_permutation(tau: &[usize], n: usize) -> Result<(), DynError> {
    check_len(n, tau.len())?;
    let mut seen = vec![false; n];
    for &t in tau {
        if t == 0 || t > n || seen[t - 1] {
            return Err(DynError::BadPermutation(tau.to_vec()));
        }
        seen[t - 1] = true;
    }
    Ok(())
}

/// The space with parities moved along `τ`: `σ'(τ(i)) = σ(i)`.
pub fn permuted_space(space: &GradedSpace, tau: &[usize]) -> Result<GradedSpace, DynError> {
    check_permutation(tau, space.dim())?;
    let mut par = vec![0u8; space.dim()];
    for (i, &t) in tau.iter().enumerate() {
        par[t - 1] = space.sigma(i + 1);
    }
    Ok(GradedSpace::from_parities(&par)?)
}

// Coefficients move along τ and every coordinate l_k becomes l_{τ(k)}. The
// result lives on the permuted space so that τ is an even map.
fn permute(r: &ZeroWeightOp, tau: &[usize]) -> Result<ZeroWeightOp, DynError> {
    let n = r.dim();
    let space = permuted_space(r.space(), tau)?;
    let rename = |e: &RatExpr| e.permute_coordinates(|k| tau[k - 1]);
    let mut out = ZeroWeightOp::zero(&space);
    for i in 1..=n {
        for j in 1..=n {
            let (ti, tj) = (tau[i - 1], tau[j - 1]);
            out.set_alpha(ti, tj, rename(r.alpha(i, j)));
            if i != j {
                out.set_beta(ti, tj, rename(r.beta(i, j)));
            }
        }
    }
    Ok(out)
}
