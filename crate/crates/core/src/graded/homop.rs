use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use crate::expr::RatExpr;

use super::{GradedError, GradedSpace};

/// A linear operator on `V^{⊗k}`, `k ∈ {1, 2, 3}`, stored as a sparse
/// `N^k × N^k` matrix (zero entries are never stored).
///
/// Row and column indices encode basis tuples `(t_1, …, t_k)` (0-based) as
/// `Σ t_i N^{k-i}`. Basis indices in the public constructors are 1-based.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HomOp {
    space: GradedSpace,
    arity: usize,
    dim: usize,
    entries: BTreeMap<(usize, usize), RatExpr>,
}

fn zero_ref() -> &'static RatExpr {
    static ZERO: OnceLock<RatExpr> = OnceLock::new();
    ZERO.get_or_init(RatExpr::zero)
}

impl HomOp {
    pub fn zero(space: &GradedSpace, arity: usize) -> Result<Self, GradedError> {
        if !(1..=3).contains(&arity) {
            return Err(GradedError::BadArity(arity));
        }
        let dim = space.dim().pow(arity as u32);
        Ok(HomOp { space: space.clone(), arity, dim, entries: BTreeMap::new() })
    }

    pub fn identity(space: &GradedSpace, arity: usize) -> Result<Self, GradedError> {
        let mut op = HomOp::zero(space, arity)?;
        for i in 0..op.dim {
            op.set(i, i, RatExpr::one());
        }
        Ok(op)
    }

    /// The matrix unit `E_ij` (1-based), `E_ij v_k = δ_jk v_i`.
    pub fn basis_e(space: &GradedSpace, i: usize, j: usize) -> Result<Self, GradedError> {
        space.check_index(i)?;
        space.check_index(j)?;
        let mut op = HomOp::zero(space, 1)?;
        op.set(i - 1, j - 1, RatExpr::one());
        Ok(op)
    }

    /// The permutation-with-signs `P_s(v_i ⊗ v_j) = (−1)^{σ(i)σ(j)} v_j ⊗ v_i`.
    pub fn super_swap(space: &GradedSpace) -> Self {
        let n = space.dim();
        let mut op = HomOp::zero(space, 2).expect("arity 2");
        for i in 0..n {
            for j in 0..n {
                let s = if space.parities()[i] & space.parities()[j] == 1 { -1 } else { 1 };
                op.set(j * n + i, i * n + j, RatExpr::int(s));
            }
        }
        op
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Side length `N^k` of the matrix.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> &RatExpr {
        debug_assert!(row < self.dim && col < self.dim);
        self.entries.get(&(row, col)).unwrap_or_else(|| zero_ref())
    }

    pub fn set(&mut self, row: usize, col: usize, value: RatExpr) {
        assert!(row < self.dim && col < self.dim, "entry ({row}, {col}) outside a {0}x{0} matrix", self.dim);
        if value.is_zero() {
            self.entries.remove(&(row, col));
        } else {
            self.entries.insert((row, col), value);
        }
    }

    /// Entry addressed by basis tuples (0-based indices).
    pub fn at(&self, row: &[usize], col: &[usize]) -> &RatExpr {
        self.get(self.index_of(row), self.index_of(col))
    }

    pub fn index_of(&self, t: &[usize]) -> usize {
        debug_assert_eq!(t.len(), self.arity);
        t.iter().fold(0, |acc, &x| acc * self.space.dim() + x)
    }

    pub fn tuple_of(&self, mut idx: usize) -> Vec<usize> {
        let n = self.space.dim();
        let mut t = vec![0; self.arity];
        for slot in t.iter_mut().rev() {
            *slot = idx % n;
            idx /= n;
        }
        t
    }

    /// Parity of the basis tensor indexed by `idx`.
    pub fn index_parity(&self, idx: usize) -> u8 {
        self.space.tuple_parity(&self.tuple_of(idx))
    }

    /// Nonzero entries as `(row, col, value)` in row-major order.
    pub fn nonzeros(&self) -> impl Iterator<Item = (usize, usize, &RatExpr)> {
        self.entries.iter().map(|(&(r, c), e)| (r, c, e))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Parity `p(row) + p(col)` shared by all nonzero entries, `None` if mixed.
    /// The zero operator counts as even.
    pub fn homogeneous_parity(&self) -> Option<u8> {
        let mut found = None;
        for (r, c, _) in self.nonzeros() {
            let p = self.index_parity(r) ^ self.index_parity(c);
            match found {
                None => found = Some(p),
                Some(q) if q != p => return None,
                _ => {}
            }
        }
        Some(found.unwrap_or(0))
    }

    pub fn is_even(&self) -> bool {
        self.homogeneous_parity() == Some(0)
    }

    fn check_same(&self, other: &HomOp) -> Result<(), GradedError> {
        if self.space != other.space {
            return Err(GradedError::SpaceMismatch);
        }
        if self.arity != other.arity {
            return Err(GradedError::ArityMismatch { left: self.arity, right: other.arity });
        }
        Ok(())
    }

    /// Matrix product `self · other`.
    pub fn compose(&self, other: &HomOp) -> Result<HomOp, GradedError> {
        self.check_same(other)?;
        let mut rows_b: Vec<Vec<(usize, &RatExpr)>> = vec![Vec::new(); self.dim];
        for (k, j, b) in other.nonzeros() {
            rows_b[k].push((j, b));
        }
        let mut parts: BTreeMap<(usize, usize), Vec<RatExpr>> = BTreeMap::new();
        for (i, k, a) in self.nonzeros() {
            for &(j, b) in &rows_b[k] {
                parts.entry((i, j)).or_default().push(a * b);
            }
        }
        let mut out = self.empty_shell();
        for ((i, j), p) in parts {
            out.set(i, j, sum_balanced(p));
        }
        Ok(out)
    }

    fn empty_shell(&self) -> HomOp {
        HomOp { space: self.space.clone(), arity: self.arity, dim: self.dim, entries: BTreeMap::new() }
    }

    /// `[self, other] = self·other − other·self`.
    pub fn commutator(&self, other: &HomOp) -> Result<HomOp, GradedError> {
        Ok(&self.compose(other)? - &other.compose(self)?)
    }

    pub fn checked_add(&self, other: &HomOp) -> Result<HomOp, GradedError> {
        self.check_same(other)?;
        Ok(self.zip(other, |a, b| a + b))
    }

    pub fn checked_sub(&self, other: &HomOp) -> Result<HomOp, GradedError> {
        self.check_same(other)?;
        Ok(self.zip(other, |a, b| a - b))
    }

    fn zip(&self, other: &HomOp, f: impl Fn(&RatExpr, &RatExpr) -> RatExpr) -> HomOp {
        let mut out = self.empty_shell();
        let keys: std::collections::BTreeSet<(usize, usize)> = self.entries.keys().chain(other.entries.keys()).copied().collect();
        for (r, c) in keys {
            out.set(r, c, f(self.get(r, c), other.get(r, c)));
        }
        out
    }

    /// Applies `f` to every nonzero entry.
    pub fn map(&self, f: impl Fn(&RatExpr) -> RatExpr) -> HomOp {
        self.map_indexed(|_, _, e| f(e))
    }

    /// Applies `f(row, col, entry)` to every nonzero entry.
    pub fn map_indexed(&self, f: impl Fn(usize, usize, &RatExpr) -> RatExpr) -> HomOp {
        let mut out = self.empty_shell();
        for (r, c, e) in self.nonzeros() {
            out.set(r, c, f(r, c, e));
        }
        out
    }

    pub fn scale(&self, c: &RatExpr) -> HomOp {
        if c.is_zero() {
            return self.empty_shell();
        }
        self.map(|e| e * c)
    }

    /// Super tensor product with the Koszul rule:
    /// `(A ⊗_s B)_{(I,K),(J,L)} = (−1)^{(p(K)+p(L))·p(J)} A_{IJ} B_{KL}`.
    pub fn super_kron(&self, other: &HomOp) -> Result<HomOp, GradedError> {
        if self.space != other.space {
            return Err(GradedError::SpaceMismatch);
        }
        let arity = self.arity + other.arity;
        let mut out = HomOp::zero(&self.space, arity)?;
        let db = other.dim;
        let b_nz: Vec<(usize, usize, &RatExpr, u8)> =
            other.nonzeros().map(|(k, l, b)| (k, l, b, other.index_parity(k) ^ other.index_parity(l))).collect();
        for (i, j, a) in self.nonzeros() {
            let pj = self.index_parity(j);
            for &(k, l, b, pkl) in &b_nz {
                let v = a * b;
                let v = if pj & pkl == 1 { -v } else { v };
                out.set(i * db + k, j * db + l, v);
            }
        }
        Ok(out)
    }

    /// `T_s(r) = P_s · r · P_s` for an arity-2 operator.
    pub fn super_twist(&self) -> Result<HomOp, GradedError> {
        if self.arity != 2 {
            return Err(GradedError::BadArity(self.arity));
        }
        // P_s is a signed permutation, so conjugation permutes entries.
        let n = self.space.dim();
        let par = self.space.parities();
        let swap = |idx: usize| {
            let (i, j) = (idx / n, idx % n);
            (j * n + i, par[i] & par[j] == 1)
        };
        let mut out = HomOp::zero(&self.space, 2)?;
        for (r, c, e) in self.nonzeros() {
            let (r2, sr) = swap(r);
            let (c2, sc) = swap(c);
            out.set(r2, c2, if sr ^ sc { -e } else { e.clone() });
        }
        Ok(out)
    }
}

// Pairwise summation keeps intermediate denominators small.
fn sum_balanced(mut parts: Vec<RatExpr>) -> RatExpr {
    while parts.len() > 1 {
        let mut next = Vec::with_capacity(parts.len().div_ceil(2));
        let mut it = parts.into_iter();
        while let Some(a) = it.next() {
            match it.next() {
                Some(b) => next.push(&a + &b),
                None => next.push(a),
            }
        }
        parts = next;
    }
    parts.pop().unwrap_or_default()
}

impl Add for &HomOp {
    type Output = HomOp;
    /// # Panics
    /// On space or arity mismatch.
    fn add(self, rhs: &HomOp) -> HomOp {
        self.checked_add(rhs).expect("operands must share space and arity")
    }
}

impl Sub for &HomOp {
    type Output = HomOp;
    /// # Panics
    /// On space or arity mismatch.
    fn sub(self, rhs: &HomOp) -> HomOp {
        self.checked_sub(rhs).expect("operands must share space and arity")
    }
}

impl Mul for &HomOp {
    type Output = HomOp;
    /// # Panics
    /// On space or arity mismatch.
    fn mul(self, rhs: &HomOp) -> HomOp {
        self.compose(rhs).expect("operands must share space and arity")
    }
}

impl Neg for &HomOp {
    type Output = HomOp;
    fn neg(self) -> HomOp {
        self.map(|e| -e)
    }
}
