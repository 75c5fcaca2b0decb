//! Multiplicative forms, the difference operator `d_γ`, and quantization of
//! closed 2-forms.

use std::collections::BTreeMap;

use crate::expr::{RatExpr, Rational};
use crate::graded::GradedSpace;

use super::{DynError, TwoForm, ZeroWeightOp};

/// A multiplicative `k`-form: one nonzero function `φ_I` per ascending
/// `k`-tuple `I`, extended to other orderings by `φ_{τ(I)} φ_I = 1` for each
/// adjacent transposition `τ`. Missing components are `1`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultForm {
    space: GradedSpace,
    k: usize,
    step: RatExpr,
    components: BTreeMap<Vec<usize>, RatExpr>,
}

impl MultForm {
    /// The trivial form (every component `1`) with step `step`.
    pub fn trivial(space: &GradedSpace, k: usize, step: &RatExpr) -> Self {
        MultForm { space: space.clone(), k, step: step.clone(), components: BTreeMap::new() }
    }

    /// Builds a form from ascending-tuple components (1-based indices).
    pub fn new(
        space: &GradedSpace,
        k: usize,
        step: &RatExpr,
        components: impl IntoIterator<Item = (Vec<usize>, RatExpr)>,
    ) -> Result<Self, DynError> {
        let mut f = MultForm::trivial(space, k, step);
        for (idx, v) in components {
            f.set(idx, v)?;
        }
        Ok(f)
    }

    pub fn set(&mut self, idx: Vec<usize>, v: RatExpr) -> Result<(), DynError> {
        if idx.len() != self.k || idx.windows(2).any(|w| w[0] >= w[1]) || idx.iter().any(|&i| i == 0 || i > self.space.dim()) {
            return Err(DynError::BadForm(format!("{idx:?} is not an ascending {}-tuple in 1..={}", self.k, self.space.dim())));
        }
        if v.is_zero() {
            return Err(DynError::ZeroFunction);
        }
        if v.is_one() {
            self.components.remove(&idx);
        } else {
            self.components.insert(idx, v);
        }
        Ok(())
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn step(&self) -> &RatExpr {
        &self.step
    }

    /// Component for any tuple of distinct indices, using the antisymmetry rule.
    pub fn get(&self, idx: &[usize]) -> RatExpr {
        let mut sorted = idx.to_vec();
        let mut swaps = 0;
        for a in 0..sorted.len() {
            for b in 0..sorted.len() - 1 - a {
                if sorted[b] > sorted[b + 1] {
                    sorted.swap(b, b + 1);
                    swaps += 1;
                }
            }
        }
        let v = self.components.get(&sorted).cloned().unwrap_or_else(RatExpr::one);
        if swaps % 2 == 0 {
            v
        } else {
            v.inverse().expect("components are nonzero")
        }
    }

    /// Ascending tuples with a component other than `1`.
    pub fn support(&self) -> impl Iterator<Item = (&Vec<usize>, &RatExpr)> {
        self.components.iter()
    }

    pub fn is_trivial(&self) -> bool {
        self.components.is_empty()
    }

    /// Smallest ascending tuple whose component is not `1`.
    pub fn first_nontrivial(&self) -> Option<(&Vec<usize>, &RatExpr)> {
        self.components.iter().next()
    }

    /// `d_γ φ` with `γ` the form's step.
    pub fn d_gamma(&self) -> MultForm {
        let n = self.space.dim();
        let mut out = MultForm::trivial(&self.space, self.k + 1, &self.step);
        for idx in ascending_tuples(n, self.k + 1) {
            let mut acc = RatExpr::one();
            for s in 0..idx.len() {
                let mut face = idx.clone();
                let i = face.remove(s);
                let term = delta_i(&self.space, &self.get(&face), i, &self.step).expect("components are nonzero");
                acc = if s % 2 == 0 { &acc * &term } else { &acc / &term };
            }
            out.set(idx, acc).expect("products of nonzero factors");
        }
        out
    }
}

fn ascending_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..=n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, n, k, &mut Vec::new(), &mut out);
    out
}

/// `δ_i f = f(λ) / f(λ − γω_i)`, where the shift moves `l_i` by `ε_i γ`.
pub fn delta_i(space: &GradedSpace, f: &RatExpr, i: usize, step: &RatExpr) -> Result<RatExpr, DynError> {
    if f.is_zero() {
        return Err(DynError::ZeroFunction);
    }
    let shifted = f.shift_var(i, &(step * &RatExpr::int(space.eps(i))));
    Ok(f / &shifted)
}

/// Quantizes a closed 2-form `D` to a multiplicative 2-form with step `g`.
///
/// The candidate is the Cayley transform `φ_ij = (2 − gD_ij)/(2 + gD_ij)`.
/// It is returned only after exact verification of `φ_ji φ_ij = 1`,
/// `d_γ φ = 1` and `φ_ij = 1 − gD_ij + O(g²)`.
pub fn quantize_closed_2form(space: &GradedSpace, d: &TwoForm) -> Result<MultForm, DynError> {
    d.check_closed(space)?;
    let n = space.dim();
    let g = RatExpr::g();
    let two = RatExpr::int(2);
    let mut phi = MultForm::trivial(space, 2, &g);
    for i in 1..=n {
        for j in i + 1..=n {
            let gd = &g * d.get(i, j);
            let num = &two - &gd;
            let den = &two + &gd;
            let v = num.checked_div(&den).map_err(|_| DynError::QuantizationNotFound(format!("2 + g·D_{i}{j} vanishes")))?;
            phi.set(vec![i, j], v)?;
        }
    }
    verify_quantization(&phi, d)?;
    Ok(phi)
}

/// Checks the three quantization conditions exactly.
pub fn verify_quantization(phi: &MultForm, d: &TwoForm) -> Result<(), DynError> {
    let n = phi.space().dim();
    for i in 1..=n {
        for j in 1..=n {
            if i == j {
                continue;
            }
            if !(&phi.get(&[i, j]) * &phi.get(&[j, i])).is_one() {
                return Err(DynError::QuantizationNotFound(format!("φ_{i}{j} φ_{j}{i} ≠ 1")));
            }
            let t =
                phi.get(&[i, j]).taylor_gamma(1).map_err(|_| DynError::QuantizationNotFound(format!("φ_{i}{j} has a pole at g = 0")))?;
            if !t[0].is_one() || t[1] != -d.get(i, j) {
                return Err(DynError::QuantizationNotFound(format!("φ_{i}{j} ≠ 1 − g·D_{i}{j} + O(g²)")));
            }
        }
    }
    if let Some((idx, _)) = phi.d_gamma().first_nontrivial() {
        return Err(DynError::QuantizationNotFound(format!("d_γ φ is nontrivial at {idx:?}")));
    }
    Ok(())
}

/// `φ_ij = ((−1)^{σ(i)} β_ij + (−1)^{σ(i)+σ(j)} q) / α_ij`, the 2-form attached
/// to a Hecke-type `R` with `p = 1`, at step `step`.
pub fn phi_from_hecke(r: &ZeroWeightOp, q: &RatExpr, step: &RatExpr) -> Result<MultForm, DynError> {
    let space = r.space();
    let n = space.dim();
    let mut phi = MultForm::trivial(space, 2, step);
    for i in 1..=n {
        for j in i + 1..=n {
            let s = Rational::from_integer((space.eps(i) * space.eps(j)).into());
            let num = &r.beta(i, j).scale(&Rational::from_integer(space.eps(i).into())) + &q.scale(&s);
            let v = num.checked_div(r.alpha(i, j)).map_err(|_| DynError::ZeroFunction)?;
            phi.set(vec![i, j], v)?;
        }
    }
    Ok(phi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_expr;

    fn sp(m: usize, n: usize) -> GradedSpace {
        GradedSpace::new(m, n).unwrap()
    }

    #[test]
    fn delta_examples() {
        let s = sp(2, 1);
        let g = RatExpr::g();
        assert!(delta_i(&s, &RatExpr::int(5), 1, &g).unwrap().is_one());
        assert_eq!(delta_i(&s, &RatExpr::l(1), 1, &g).unwrap(), parse_expr("l1/(l1-g)").unwrap());
        assert_eq!(delta_i(&s, &RatExpr::l(3), 3, &g).unwrap(), parse_expr("l3/(l3+g)").unwrap());
        assert_eq!(delta_i(&s, &RatExpr::zero(), 1, &g), Err(DynError::ZeroFunction));
    }

    #[test]
    fn antisymmetry_rule() {
        let s = sp(3, 0);
        let f = MultForm::new(&s, 2, &RatExpr::g(), [(vec![1, 2], RatExpr::l(1))]).unwrap();
        assert_eq!(f.get(&[2, 1]), RatExpr::one() / RatExpr::l(1));
        assert!(f.get(&[1, 3]).is_one());
        assert!(MultForm::new(&s, 2, &RatExpr::g(), [(vec![2, 1], RatExpr::l(1))]).is_err());
        assert!(MultForm::new(&s, 2, &RatExpr::g(), [(vec![1, 2], RatExpr::zero())]).is_err());
    }

    #[test]
    fn constant_form_is_closed() {
        let s = sp(1, 2);
        let f = MultForm::new(&s, 1, &RatExpr::g(), [(vec![1], RatExpr::int(3)), (vec![3], RatExpr::int(-2))]).unwrap();
        assert!(f.d_gamma().is_trivial());
    }

    #[test]
    fn d_squared_on_a_one_form() {
        let s = sp(2, 1);
        let f = MultForm::new(
            &s,
            1,
            &RatExpr::g(),
            [
                (vec![1], parse_expr("l2 + l3").unwrap()),
                (vec![2], parse_expr("l1*l3 - 1").unwrap()),
                (vec![3], parse_expr("l1/l2").unwrap()),
            ],
        )
        .unwrap();
        let df = f.d_gamma();
        assert!(!df.is_trivial());
        assert!(df.d_gamma().is_trivial());
    }

    #[test]
    fn quantizes_reciprocal_form() {
        let s = sp(1, 2);
        let d = TwoForm::from_upper(3, (1..=3).flat_map(|i| (i + 1..=3).map(move |j| ((i, j), RatExpr::int(-1) / RatExpr::lambda(i, j)))))
            .unwrap();
        let phi = quantize_closed_2form(&s, &d).unwrap();
        assert_eq!(phi.get(&[1, 2]), parse_expr("(2*l1 - 2*l2 + g)/(2*l1 - 2*l2 - g)").unwrap());
    }

    #[test]
    fn zero_form_quantizes_trivially() {
        let s = sp(2, 0);
        assert!(quantize_closed_2form(&s, &TwoForm::zero(2)).unwrap().is_trivial());
    }

    #[test]
    fn nonlocal_exact_form_is_not_quantized() {
        let s = sp(3, 0);
        let a = vec![RatExpr::l(2) * RatExpr::l(3), RatExpr::zero(), RatExpr::zero()];
        let d = TwoForm::exact(&s, &a);
        assert!(matches!(quantize_closed_2form(&s, &d), Err(DynError::QuantizationNotFound(_))));
    }
}
