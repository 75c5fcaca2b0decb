use crate::expr::{RatExpr, Rational, Var};
use crate::graded::{GradedSpace, Hom2Components, HomOp};

use super::DynError;

/// `Σ α_ij E_ii ⊗ E_jj + Σ_{i≠j} β_ij E_ji ⊗ E_ij`.
///
/// Indices in the accessors are 1-based. The diagonal of `beta` is always zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ZeroWeightOp {
    space: GradedSpace,
    alpha: Vec<Vec<RatExpr>>,
    beta: Vec<Vec<RatExpr>>,
}

impl ZeroWeightOp {
    pub fn zero(space: &GradedSpace) -> Self {
        let n = space.dim();
        ZeroWeightOp { space: space.clone(), alpha: vec![vec![RatExpr::zero(); n]; n], beta: vec![vec![RatExpr::zero(); n]; n] }
    }

    /// `Id = Σ_{i,j} E_ii ⊗ E_jj`.
    pub fn identity(space: &GradedSpace) -> Self {
        let mut op = ZeroWeightOp::zero(space);
        for row in &mut op.alpha {
            row.fill(RatExpr::one());
        }
        op
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn alpha(&self, i: usize, j: usize) -> &RatExpr {
        &self.alpha[i - 1][j - 1]
    }

    pub fn beta(&self, i: usize, j: usize) -> &RatExpr {
        &self.beta[i - 1][j - 1]
    }

    pub fn set_alpha(&mut self, i: usize, j: usize, v: RatExpr) {
        self.alpha[i - 1][j - 1] = v;
    }

    /// # Panics
    /// If `i == j`.
    pub fn set_beta(&mut self, i: usize, j: usize, v: RatExpr) {
        assert_ne!(i, j, "beta has no diagonal");
        self.beta[i - 1][j - 1] = v;
    }

    /// Every coefficient in the order `α_11, …, α_NN, β_12, …` (off-diagonal β only).
    pub fn coefficients(&self) -> impl Iterator<Item = &RatExpr> {
        self.alpha
            .iter()
            .flatten()
            .chain(self.beta.iter().enumerate().flat_map(|(i, row)| row.iter().enumerate().filter(move |(j, _)| *j != i).map(|(_, e)| e)))
    }

    /// Applies `f` to every coefficient (zeros included).
    pub fn map(&self, f: impl Fn(&RatExpr) -> RatExpr) -> Self {
        let n = self.dim();
        let mut out = ZeroWeightOp::zero(&self.space);
        for i in 0..n {
            for j in 0..n {
                out.alpha[i][j] = f(&self.alpha[i][j]);
                if i != j {
                    out.beta[i][j] = f(&self.beta[i][j]);
                }
            }
        }
        out
    }

    /// Applies `f` to every nonzero coefficient.
    pub fn map_nonzero(&self, f: impl Fn(&RatExpr) -> RatExpr) -> Self {
        self.map(|e| if e.is_zero() { RatExpr::zero() } else { f(e) })
    }

    /// `l_k ↦ l_k − ε_k·step`, the coefficients of `R(λ − step·ω_k)` under
    /// the weight pairing of the graded space.
    pub fn shift_weight(&self, k: usize, step: &RatExpr) -> Self {
        let amount = step * &RatExpr::int(self.space.eps(k));
        self.map_nonzero(|e| e.shift_var(k, &amount))
    }

    pub fn partial_deriv(&self, k: usize) -> Self {
        self.map_nonzero(|e| e.partial_deriv(k))
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients().all(RatExpr::is_zero)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, DynError> {
        if self.space != other.space {
            return Err(DynError::SpaceMismatch);
        }
        let mut out = self.clone();
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                out.alpha[i][j] = &self.alpha[i][j] + &other.alpha[i][j];
                out.beta[i][j] = &self.beta[i][j] + &other.beta[i][j];
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &RatExpr) -> Self {
        self.map_nonzero(|e| e * c)
    }

    /// Homogeneous two-slot decomposition: `α_ij E_ii ⊗ E_jj` (even factors)
    /// and `β_ij E_ji ⊗ E_ij` (factors of parity `σ(i)+σ(j)`).
    pub fn components(&self) -> Hom2Components {
        let n = self.dim();
        let mut c = Hom2Components::new(&self.space);
        for i in 1..=n {
            for j in 1..=n {
                c.push_units(self.alpha(i, j).clone(), (i, i), (j, j)).expect("indices in range");
                if i != j {
                    c.push_units(self.beta(i, j).clone(), (j, i), (i, j)).expect("indices in range");
                }
            }
        }
        c
    }

    /// The operator on `V ⊗ V`. Entries follow the Koszul rule: `β_ij` sits
    /// at row `(j,i)`, column `(i,j)` with sign `(−1)^{(σ(i)+σ(j))σ(i)}`.
    pub fn to_homop(&self) -> HomOp {
        let n = self.dim();
        let mut op = HomOp::zero(&self.space, 2).expect("arity 2");
        for i in 0..n {
            for j in 0..n {
                let a = &self.alpha[i][j];
                if !a.is_zero() {
                    op.set(i * n + j, i * n + j, a.clone());
                }
                let b = &self.beta[i][j];
                if i != j && !b.is_zero() {
                    let odd = (self.space.sigma(i + 1) ^ self.space.sigma(j + 1)) & self.space.sigma(i + 1) == 1;
                    op.set(j * n + i, i * n + j, if odd { -b } else { b.clone() });
                }
            }
        }
        op
    }

    /// Inverse of [`to_homop`](Self::to_homop). Fails on any entry outside the
    /// zero-weight pattern, naming the smallest such `(row, col)` tuple (1-based).
    pub fn from_homop(op: &HomOp) -> Result<Self, DynError> {
        if op.arity() != 2 {
            return Err(DynError::NotZeroWeight { row: vec![], col: vec![] });
        }
        let space = op.space();
        let n = space.dim();
        let mut out = ZeroWeightOp::zero(space);
        for (r, c, v) in op.nonzeros() {
            let (a, b) = (r / n, r % n);
            let (i, j) = (c / n, c % n);
            if (a, b) == (i, j) {
                out.alpha[i][j] = v.clone();
            } else if (a, b) == (j, i) {
                let odd = (space.sigma(i + 1) ^ space.sigma(j + 1)) & space.sigma(i + 1) == 1;
                out.beta[i][j] = if odd { -v } else { v.clone() };
            } else {
                return Err(DynError::NotZeroWeight { row: vec![a + 1, b + 1], col: vec![i + 1, j + 1] });
            }
        }
        Ok(out)
    }

    /// True when no coefficient depends on `g`.
    pub fn is_step_free(&self) -> bool {
        self.coefficients().all(|e| !e.contains_var(Var::G))
    }
}

/// `A_ij = (−1)^{σ(i)+σ(j)}` for `i < j` and `1` for `i > j`.
#[derive(Clone, Debug)]
pub struct SignTable {
    space: GradedSpace,
}

impl SignTable {
    pub fn new(space: &GradedSpace) -> Self {
        SignTable { space: space.clone() }
    }

    /// # Panics
    /// If `i == j`.
    pub fn a(&self, i: usize, j: usize) -> i64 {
        assert_ne!(i, j, "A_ii is undefined");
        if i < j {
            self.space.eps(i) * self.space.eps(j)
        } else {
            1
        }
    }
}

/// A vector `μ` of expressions in `g` only; `μ_ij = μ_i − μ_j`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuasiConstant {
    mu: Vec<RatExpr>,
}

impl QuasiConstant {
    pub fn new(mu: Vec<RatExpr>) -> Result<Self, DynError> {
        if let Some(k) = mu.iter().position(|e| !e.is_free_of_coordinates()) {
            return Err(DynError::NotQuasiconstant(k + 1));
        }
        Ok(QuasiConstant { mu })
    }

    pub fn zeros(n: usize) -> Self {
        QuasiConstant { mu: vec![RatExpr::zero(); n] }
    }

    pub fn from_rationals(mu: &[Rational]) -> Self {
        QuasiConstant { mu: mu.iter().cloned().map(RatExpr::from_rational).collect() }
    }

    pub fn len(&self) -> usize {
        self.mu.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mu.is_empty()
    }

    pub fn get(&self, i: usize) -> &RatExpr {
        &self.mu[i - 1]
    }

    pub fn values(&self) -> &[RatExpr] {
        &self.mu
    }

    pub fn diff(&self, i: usize, j: usize) -> RatExpr {
        self.get(i) - self.get(j)
    }
}

/// Coefficients `D_ij` of a 2-form `Σ_{i<j} D_ij dx_i ∧ dx_j`, stored as a
/// full antisymmetric matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TwoForm {
    d: Vec<Vec<RatExpr>>,
}

impl TwoForm {
    pub fn zero(n: usize) -> Self {
        TwoForm { d: vec![vec![RatExpr::zero(); n]; n] }
    }

    /// Builds from upper-triangular entries `D_ij`, `i < j`; the rest follows
    /// by antisymmetry.
    pub fn from_upper(n: usize, entries: impl IntoIterator<Item = ((usize, usize), RatExpr)>) -> Result<Self, DynError> {
        let mut f = TwoForm::zero(n);
        for ((i, j), v) in entries {
            if i == 0 || j > n || i >= j {
                return Err(DynError::BadForm(format!("entry ({i},{j}) is not above the diagonal of a {n}x{n} form")));
            }
            f.d[j - 1][i - 1] = -&v;
            f.d[i - 1][j - 1] = v;
        }
        Ok(f)
    }

    /// Builds from a full matrix, checking antisymmetry.
    pub fn from_matrix(d: Vec<Vec<RatExpr>>) -> Result<Self, DynError> {
        let n = d.len();
        if d.iter().any(|row| row.len() != n) {
            return Err(DynError::BadForm("matrix is not square".into()));
        }
        for (i, row) in d.iter().enumerate() {
            for (j, dij) in row.iter().enumerate() {
                if *dij != -&d[j][i] {
                    return Err(DynError::BadForm(format!("D_{}{} is not −D_{}{}", i + 1, j + 1, j + 1, i + 1)));
                }
            }
        }
        Ok(TwoForm { d })
    }

    pub fn dim(&self) -> usize {
        self.d.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &RatExpr {
        &self.d[i - 1][j - 1]
    }

    pub fn is_zero(&self) -> bool {
        self.d.iter().flatten().all(RatExpr::is_zero)
    }

    pub fn negate(&self) -> Self {
        TwoForm { d: self.d.iter().map(|r| r.iter().map(|e| -e).collect()).collect() }
    }

    pub fn add(&self, other: &TwoForm) -> Self {
        TwoForm { d: self.d.iter().zip(&other.d).map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect()).collect() }
    }

    /// Smallest `(i, j, k)`, `i < j < k`, where the weighted cyclic sum
    /// `ε_i ∂_i D_jk + ε_j ∂_j D_ki + ε_k ∂_k D_ij` is nonzero.
    pub fn closedness_witness(&self, space: &GradedSpace) -> Option<(usize, usize, usize)> {
        let n = self.dim();
        let w = |i: usize, e: &RatExpr| e.partial_deriv(i).scale(&Rational::from_integer(space.eps(i).into()));
        for i in 1..=n {
            for j in i + 1..=n {
                for k in j + 1..=n {
                    let s = &(&w(i, self.get(j, k)) + &w(j, self.get(k, i))) + &w(k, self.get(i, j));
                    if !s.is_zero() {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    pub fn check_closed(&self, space: &GradedSpace) -> Result<(), DynError> {
        if self.dim() != space.dim() {
            return Err(DynError::BadForm(format!("form has size {} but the space has dimension {}", self.dim(), space.dim())));
        }
        match self.closedness_witness(space) {
            None => Ok(()),
            Some((i, j, k)) => Err(DynError::NotClosed(i, j, k)),
        }
    }

    /// The weighted exterior derivative of a 1-form `A`:
    /// `D_ij = ε_i ∂_i A_j − ε_j ∂_j A_i`, always closed.
    pub fn exact(space: &GradedSpace, a: &[RatExpr]) -> Self {
        let n = space.dim();
        let w = |i: usize, e: &RatExpr| e.partial_deriv(i).scale(&Rational::from_integer(space.eps(i).into()));
        let mut d = TwoForm::zero(n);
        for i in 1..=n {
            for j in 1..=n {
                if i != j {
                    d.d[i - 1][j - 1] = &w(i, &a[j - 1]) - &w(j, &a[i - 1]);
                }
            }
        }
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(m: usize, n: usize) -> GradedSpace {
        GradedSpace::new(m, n).unwrap()
    }

    #[test]
    fn sign_table_relation() {
        for (m, n) in [(2, 2), (1, 3), (4, 0)] {
            let s = sp(m, n);
            let t = SignTable::new(&s);
            for i in 1..=s.dim() {
                for j in 1..=s.dim() {
                    if i != j {
                        assert_eq!(t.a(j, i), s.eps(i) * s.eps(j) * t.a(i, j));
                    }
                }
            }
        }
    }

    #[test]
    fn homop_round_trip_and_kron_agreement() {
        let s = sp(1, 2);
        let mut op = ZeroWeightOp::zero(&s);
        op.set_alpha(1, 2, RatExpr::lambda(1, 2));
        op.set_alpha(3, 3, RatExpr::one());
        op.set_beta(1, 3, RatExpr::g());
        op.set_beta(3, 2, RatExpr::int(5));
        let h = op.to_homop();
        assert_eq!(h, op.components().to_homop());
        assert_eq!(ZeroWeightOp::from_homop(&h).unwrap(), op);
    }

    #[test]
    fn from_homop_rejects_weight_violation() {
        let s = sp(3, 0);
        let bad = HomOp::basis_e(&s, 1, 2).unwrap().super_kron(&HomOp::basis_e(&s, 1, 3).unwrap()).unwrap();
        assert_eq!(ZeroWeightOp::from_homop(&bad), Err(DynError::NotZeroWeight { row: vec![1, 1], col: vec![2, 3] }));
    }

    #[test]
    fn identity_is_identity() {
        let s = sp(2, 1);
        assert_eq!(ZeroWeightOp::identity(&s).to_homop(), HomOp::identity(&s, 2).unwrap());
    }

    #[test]
    fn exact_forms_are_closed() {
        let s = sp(1, 2);
        let a = vec![RatExpr::l(2) * RatExpr::l(3), RatExpr::l(1) * RatExpr::l(1) * RatExpr::l(3), RatExpr::l(1) / RatExpr::l(2)];
        let d = TwoForm::exact(&s, &a);
        assert!(d.check_closed(&s).is_ok());
        assert!(TwoForm::from_matrix(vec![vec![RatExpr::zero(), RatExpr::one()], vec![RatExpr::one(), RatExpr::zero()]]).is_err());
    }

    #[test]
    fn non_closed_form_detected() {
        let s = sp(3, 0);
        let d = TwoForm::from_upper(3, [((1, 2), RatExpr::l(3))]).unwrap();
        assert_eq!(d.check_closed(&s), Err(DynError::NotClosed(1, 2, 3)));
    }

    #[test]
    fn quasiconstant_rejects_coordinates() {
        assert_eq!(QuasiConstant::new(vec![RatExpr::g(), RatExpr::l(2)]), Err(DynError::NotQuasiconstant(2)));
        assert!(QuasiConstant::new(vec![RatExpr::g(), RatExpr::int(3)]).is_ok());
    }
}
