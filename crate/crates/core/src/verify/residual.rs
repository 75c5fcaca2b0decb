use std::fmt;

use crate::expr::RatExpr;
use crate::graded::HomOp;

/// The identity a [`Residual`] measures.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum CheckKind {
    ZeroWeight,
    Cdybe,
    Unitarity,
    Qdybe,
    CoefficientSuite,
    Hecke,
    BetaRecursion,
}

impl CheckKind {
    pub fn name(self) -> &'static str {
        match self {
            CheckKind::ZeroWeight => "zero-weight",
            CheckKind::Cdybe => "cdybe",
            CheckKind::Unitarity => "unitarity",
            CheckKind::Qdybe => "qdybe",
            CheckKind::CoefficientSuite => "coeff-suite",
            CheckKind::Hecke => "hecke",
            CheckKind::BetaRecursion => "beta-recursion",
        }
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One nonzero component of LHS − RHS.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Failure {
    /// Basis or coefficient index tuple, 1-based.
    pub index: Vec<usize>,
    /// Which equation or sub-check produced the component.
    pub label: String,
    pub value: RatExpr,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = self.index.iter().map(ToString::to_string).collect();
        if self.label.is_empty() {
            write!(f, "({}): {}", idx.join(","), self.value)
        } else {
            write!(f, "{} ({}): {}", self.label, idx.join(","), self.value)
        }
    }
}

/// Outcome of an exact check: the list of nonzero components, sorted so the
/// first is the lexicographically smallest failing index tuple.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Residual {
    pub kind: CheckKind,
    /// Number of components examined.
    pub checked: usize,
    failures: Vec<Failure>,
}

impl Residual {
    pub fn new(kind: CheckKind, checked: usize, mut failures: Vec<Failure>) -> Self {
        failures.sort_by(|a, b| a.index.cmp(&b.index).then_with(|| a.label.cmp(&b.label)));
        Residual { kind, checked, failures }
    }

    /// Nonzero entries of a matrix residual; the index is the row tuple
    /// followed by the column tuple.
    pub fn from_matrix(kind: CheckKind, m: &HomOp, label: &str) -> Self {
        let failures = m
            .nonzeros()
            .map(|(r, c, v)| {
                let mut index: Vec<usize> = m.tuple_of(r).into_iter().map(|x| x + 1).collect();
                index.extend(m.tuple_of(c).into_iter().map(|x| x + 1));
                Failure { index, label: label.to_string(), value: v.clone() }
            })
            .collect();
        Residual::new(kind, m.dim() * m.dim(), failures)
    }

    pub fn passes(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn failures(&self) -> &[Failure] {
        &self.failures
    }

    /// The smallest failing component.
    pub fn witness(&self) -> Option<&Failure> {
        self.failures.first()
    }

    /// Merges another residual of the same kind.
    pub fn merge(mut self, other: Residual) -> Self {
        self.checked += other.checked;
        self.failures.extend(other.failures);
        Residual::new(self.kind, self.checked, self.failures)
    }
}

impl fmt::Display for Residual {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.witness() {
            None => write!(f, "{}: pass ({} components)", self.kind, self.checked),
            Some(w) => write!(f, "{}: FAIL ({} of {} nonzero), first {}", self.kind, self.failures.len(), self.checked, w),
        }
    }
}
