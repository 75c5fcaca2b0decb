use std::fmt;

use super::GradedError;

/// A finite-dimensional graded vector space with basis `v_1..v_N`.
///
/// The standard space of type `(m, n)` has `σ(i) = 0` for `i ≤ m` and
/// `σ(i) = 1` otherwise. Spaces with other parity vectors arise when a
/// permutation gauge moves odd basis vectors past even ones.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GradedSpace {
    parity: Vec<u8>,
}

impl GradedSpace {
    pub fn new(m: usize, n: usize) -> Result<Self, GradedError> {
        if m + n == 0 {
            return Err(GradedError::EmptySpace);
        }
        let mut parity = vec![0u8; m];
        parity.resize(m + n, 1);
        Ok(GradedSpace { parity })
    }

    /// A space with an arbitrary parity vector (`parities[i-1]` is `σ(i)`).
    pub fn from_parities(parities: &[u8]) -> Result<Self, GradedError> {
        if parities.is_empty() {
            return Err(GradedError::EmptySpace);
        }
        if let Some(&p) = parities.iter().find(|&&p| p > 1) {
            return Err(GradedError::BadParity(p));
        }
        Ok(GradedSpace { parity: parities.to_vec() })
    }

    pub fn dim(&self) -> usize {
        self.parity.len()
    }

    /// Number of even basis vectors.
    pub fn m(&self) -> usize {
        self.parity.iter().filter(|&&p| p == 0).count()
    }

    /// Number of odd basis vectors.
    pub fn n(&self) -> usize {
        self.dim() - self.m()
    }

    /// `σ(i)` for a 1-based index.
    pub fn sigma(&self, i: usize) -> u8 {
        self.parity[i - 1]
    }

    /// `(−1)^σ(i)` for a 1-based index.
    pub fn eps(&self, i: usize) -> i64 {
        if self.sigma(i) == 0 {
            1
        } else {
            -1
        }
    }

    pub fn parities(&self) -> &[u8] {
        &self.parity
    }

    /// True when even vectors precede odd ones.
    pub fn is_standard(&self) -> bool {
        self.parity.windows(2).all(|w| w[0] <= w[1])
    }

    pub fn check_index(&self, i: usize) -> Result<(), GradedError> {
        if i == 0 || i > self.dim() {
            Err(GradedError::IndexOutOfRange { index: i, dim: self.dim() })
        } else {
            Ok(())
        }
    }

    /// Parity of the basis tensor `v_{t_1} ⊗ … ⊗ v_{t_k}` (0-based entries).
    pub(crate) fn tuple_parity(&self, t: &[usize]) -> u8 {
        t.iter().fold(0, |acc, &i| acc ^ self.parity[i])
    }
}

impl fmt::Display for GradedSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_standard() {
            write!(f, "({},{})", self.m(), self.n())
        } else {
            let s: String = self.parity.iter().map(|p| if *p == 0 { '0' } else { '1' }).collect();
            write!(f, "[{s}]")
        }
    }
}
