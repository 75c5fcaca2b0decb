//! Reduction of a Hecke-type `R` (`p = q = 1`, step 1) to interval form
//! `R_X` by a multiplicative gauge followed by a permutation.

use std::collections::BTreeMap;

use crate::dynamical::{gauge_quantum, phi_from_hecke, r_x, IntervalPartition, MultForm, QuantumGauge, QuasiConstant, ZeroWeightOp};
use crate::expr::{RatExpr, Rational};

use super::{hecke_check, HeckeMode, HeckeParams, VerifyError};

#[derive(Clone, Debug)]
pub struct ClassificationResult {
    /// Equivalence classes of `i ~ j ⇔ β_ij ≠ 0`, each sorted, in the order
    /// they are laid out by `tau`.
    pub classes: Vec<Vec<usize>>,
    /// `tau[i-1] = τ(i)`: the permutation taking every class to an interval.
    pub tau: Vec<usize>,
    /// `μ_ij = λ_ij − ε_i/β_ij` for `i < j` in the same class.
    pub mu_pairs: BTreeMap<(usize, usize), RatExpr>,
    /// A vector with `μ_ij = μ_i − μ_j`, zero on the first element of each class.
    pub mu: QuasiConstant,
    /// The multiplicative 2-form taking `R` to `R_X` before permuting.
    pub phi: MultForm,
    /// `μ` moved along `tau`, the parameter of `canonical`.
    pub canonical_mu: QuasiConstant,
    /// Interval partition on the permuted space.
    pub partition: IntervalPartition,
    /// `R_X` on the permuted space; equal to the gauged and permuted `R`.
    pub canonical: ZeroWeightOp,
}

impl ClassificationResult {
    /// True when the permuted space is in the standard `(m,n)` order.
    pub fn is_standard(&self) -> bool {
        self.canonical.space().is_standard()
    }
}

pub fn classify_hecke_r(r: &ZeroWeightOp) -> Result<ClassificationResult, VerifyError> {
    let space = r.space();
    let n = r.dim();
    let one = Rational::from_integer(1.into());
    let step = RatExpr::one();

    let hecke = hecke_check(r, &HeckeParams::new(one.clone(), one)?, HeckeMode::Strong);
    if let Some(w) = hecke.witness() {
        return Err(VerifyError::NotHecke(w.to_string()));
    }

    let classes = classes(r);
    let mut mu_pairs = BTreeMap::new();
    for class in &classes {
        for (a, &i) in class.iter().enumerate() {
            for &j in &class[a + 1..] {
                let b = r.beta(i, j);
                if b.is_zero() {
                    return Err(VerifyError::ClassificationFailed(format!("β_{i}{j} vanishes inside the class of {i}")));
                }
                let eps = RatExpr::int(space.eps(i));
                let mu = &RatExpr::lambda(i, j) - &eps.checked_div(b)?;
                if !mu.is_free_of_coordinates() {
                    return Err(VerifyError::NotQuasiconstant { i, j });
                }
                mu_pairs.insert((i, j), mu);
            }
        }
    }
    for class in &classes {
        for (a, &i) in class.iter().enumerate() {
            for (b, &j) in class.iter().enumerate().skip(a + 1) {
                for &k in &class[b + 1..] {
                    if mu_pairs[&(i, k)] != &mu_pairs[&(i, j)] + &mu_pairs[&(j, k)] {
                        return Err(VerifyError::AdditivityViolation { i, j, k });
                    }
                }
            }
        }
    }
    let mut mu = vec![RatExpr::zero(); n];
    for class in &classes {
        let root = class[0];
        for &j in &class[1..] {
            mu[j - 1] = -&mu_pairs[&(root, j)];
        }
    }
    let mu = QuasiConstant::new(mu)?;

    let phi = phi_from_hecke(r, &RatExpr::one(), &step).map_err(|e| VerifyError::ClassificationFailed(format!("no gauge form: {e}")))?;
    let (gauged, _) = gauge_quantum(r, &step, &QuantumGauge::MultiplyForm(phi.clone()))
        .map_err(|e| VerifyError::ClassificationFailed(format!("gauge form rejected: {e}")))?;

    let ordered = order_classes(space, classes);
    let mut tau = vec![0; n];
    let mut intervals = Vec::with_capacity(ordered.len());
    let mut next = 1;
    for class in &ordered {
        let start = next;
        for &i in class {
            tau[i - 1] = next;
            next += 1;
        }
        if class.len() > 1 {
            intervals.push((start, next - 1));
        }
    }
    let (permuted, _) = gauge_quantum(&gauged, &step, &QuantumGauge::Permute(tau.clone()))?;
    let new_space = permuted.space().clone();
    let partition = IntervalPartition::new(&new_space, intervals)?;
    let mut mu_perm = vec![RatExpr::zero(); n];
    for i in 1..=n {
        mu_perm[tau[i - 1] - 1] = mu.get(i).clone();
    }
    let canonical_mu = QuasiConstant::new(mu_perm)?;
    let canonical = r_x(&partition, &canonical_mu)?;
    if canonical != permuted {
        return Err(VerifyError::ClassificationFailed("gauged operator differs from the interval form".into()));
    }
    let classes = ordered.into_iter().map(|mut c| {
        c.sort_unstable();
        c
    });
    Ok(ClassificationResult { classes: classes.collect(), tau, mu_pairs, mu, phi, canonical_mu, partition, canonical })
}

// Union-find on the graph i ~ j whenever β_ij or β_ji is nonzero.
fn classes(r: &ZeroWeightOp) -> Vec<Vec<usize>> {
    let n = r.dim();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut x = x;
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for i in 1..=n {
        for j in 1..=n {
            if i != j && !r.beta(i, j).is_zero() {
                let (a, b) = (find(&mut parent, i - 1), find(&mut parent, j - 1));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        let root = find(&mut parent, i);
        groups.entry(root).or_default().push(i + 1);
    }
    groups.into_values().collect()
}

// Pure-even classes first, then mixed classes with their even elements
// leading, then pure-odd classes. With at most one mixed class this yields
// the standard parity order.
fn order_classes(space: &crate::graded::GradedSpace, classes: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    let rank = |c: &Vec<usize>| {
        let odd = c.iter().filter(|&&i| space.sigma(i) == 1).count();
        if odd == 0 {
            0
        } else if odd < c.len() {
            1
        } else {
            2
        }
    };
    let mut ordered: Vec<Vec<usize>> = classes
        .into_iter()
        .map(|mut c| {
            c.sort_by_key(|&i| (space.sigma(i), i));
            c
        })
        .collect();
    ordered.sort_by_key(|c| (rank(c), c.iter().min().copied()));
    ordered
}
