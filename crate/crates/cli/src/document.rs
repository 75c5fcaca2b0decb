//! JSON documents for operators, forms and derived results.

use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use superdyn::dynamical::{IntervalPartition, MultForm, TwoForm, ZeroWeightOp};
use superdyn::expr::{format_expr, parse_expr, RatExpr, Rational};
use superdyn::graded::GradedSpace;

use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum OperatorKind {
    #[serde(rename = "classical_r")]
    ClassicalR,
    #[serde(rename = "quantum_R")]
    QuantumR,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partition: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nu: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
}

/// A zero-weight operator: `alpha` and `beta` are `N × N` arrays of
/// expression strings, with `null` on the diagonal of `beta`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorDocument {
    pub schema_version: u32,
    pub m: usize,
    pub n: usize,
    /// Present only when the grading is not the standard `0…0 1…1`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parities: Option<Vec<u8>>,
    pub kind: OperatorKind,
    pub alpha: Vec<Vec<String>>,
    pub beta: Vec<Vec<Option<String>>>,
    pub step: Option<String>,
    #[serde(default)]
    pub metadata: Metadata,
}

impl OperatorDocument {
    pub fn from_operator(r: &ZeroWeightOp, kind: OperatorKind, step: Option<&RatExpr>, metadata: Metadata) -> Self {
        let space = r.space();
        let n = r.dim();
        let alpha = (1..=n).map(|i| (1..=n).map(|j| format_expr(r.alpha(i, j))).collect()).collect();
        let beta = (1..=n).map(|i| (1..=n).map(|j| (i != j).then(|| format_expr(r.beta(i, j)))).collect()).collect();
        OperatorDocument {
            schema_version: SCHEMA_VERSION,
            m: space.m(),
            n: space.n(),
            parities: (!space.is_standard()).then(|| space.parities().to_vec()),
            kind,
            alpha,
            beta,
            step: step.map(format_expr),
            metadata,
        }
    }

    pub fn space(&self) -> Result<GradedSpace, CliError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(CliError::Document(format!("unsupported schema_version {}", self.schema_version)));
        }
        let space = match &self.parities {
            None => GradedSpace::new(self.m, self.n)?,
            Some(p) => {
                let s = GradedSpace::from_parities(p)?;
                if s.m() != self.m || s.n() != self.n {
                    return Err(CliError::Document("parities disagree with m and n".into()));
                }
                s
            }
        };
        Ok(space)
    }

    /// Parses every entry and checks dimensions.
    pub fn to_operator(&self) -> Result<ZeroWeightOp, CliError> {
        let space = self.space()?;
        let n = space.dim();
        let square = |rows: usize, lens: Vec<usize>, what: &str| {
            if rows != n || lens.iter().any(|&l| l != n) {
                Err(CliError::Document(format!("{what} must be a {n}x{n} array")))
            } else {
                Ok(())
            }
        };
        square(self.alpha.len(), self.alpha.iter().map(Vec::len).collect(), "alpha")?;
        square(self.beta.len(), self.beta.iter().map(Vec::len).collect(), "beta")?;
        let mut r = ZeroWeightOp::zero(&space);
        for i in 1..=n {
            for j in 1..=n {
                r.set_alpha(i, j, parse(&self.alpha[i - 1][j - 1])?);
                match (&self.beta[i - 1][j - 1], i == j) {
                    (None, true) => {}
                    (Some(_), true) => return Err(CliError::Document(format!("beta[{i}][{i}] must be null"))),
                    (None, false) => return Err(CliError::Document(format!("beta[{i}][{j}] is null off the diagonal"))),
                    (Some(t), false) => r.set_beta(i, j, parse(t)?),
                }
            }
        }
        Ok(r)
    }

    pub fn step_expr(&self) -> Result<Option<RatExpr>, CliError> {
        self.step.as_deref().map(parse).transpose()
    }

    /// The step, which quantum documents must carry.
    pub fn required_step(&self) -> Result<RatExpr, CliError> {
        self.step_expr()?.ok_or_else(|| CliError::Document("this command needs a document with a step".into()))
    }
}

pub fn parse(text: &str) -> Result<RatExpr, CliError> {
    parse_expr(text).map_err(|source| CliError::Expression { text: text.to_string(), source })
}

pub fn parse_rational(text: &str) -> Result<Rational, CliError> {
    parse(text)?.as_rational().ok_or_else(|| CliError::Usage(format!("{text:?} is not a rational constant")))
}

/// Comma-separated rationals, e.g. `0,1/2,-3`.
pub fn parse_rational_list(text: &str) -> Result<Vec<Rational>, CliError> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',').map(|t| parse_rational(t.trim())).collect()
}

/// Comma-separated 1-based permutation images, e.g. `3,1,2`.
pub fn parse_index_list(text: &str) -> Result<Vec<usize>, CliError> {
    text.split(',').map(|t| t.trim().parse::<usize>().map_err(|_| CliError::Usage(format!("bad index {t:?} in {text:?}")))).collect()
}

pub fn parse_partition(space: &GradedSpace, text: &str) -> Result<IntervalPartition, CliError> {
    IntervalPartition::parse(space, text).map_err(|e| CliError::Usage(e.to_string()))
}

/// `N × N` matrix of expression strings, `null` meaning zero. Used for both
/// additive 2-forms (`D`) and multiplicative ones (`φ`, upper triangle read).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FormMatrix(pub Vec<Vec<Option<String>>>);

impl FormMatrix {
    fn parse_entries(&self, n: usize) -> Result<Vec<Vec<RatExpr>>, CliError> {
        if self.0.len() != n || self.0.iter().any(|r| r.len() != n) {
            return Err(CliError::Document(format!("form must be a {n}x{n} array")));
        }
        self.0.iter().map(|row| row.iter().map(|e| e.as_deref().map_or_else(|| Ok(RatExpr::zero()), parse)).collect()).collect()
    }

    pub fn to_two_form(&self, n: usize) -> Result<TwoForm, CliError> {
        TwoForm::from_matrix(self.parse_entries(n)?).map_err(|e| CliError::Document(e.to_string()))
    }

    /// A multiplicative 2-form from the entries above the diagonal; `null`
    /// there means the trivial value 1.
    pub fn to_mult_form(&self, space: &GradedSpace, step: &RatExpr) -> Result<MultForm, CliError> {
        let n = space.dim();
        if self.0.len() != n || self.0.iter().any(|r| r.len() != n) {
            return Err(CliError::Document(format!("form must be a {n}x{n} array")));
        }
        let mut comps = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if let Some(t) = &self.0[i][j] {
                    comps.push((vec![i + 1, j + 1], parse(t)?));
                }
            }
        }
        MultForm::new(space, 2, step, comps).map_err(|e| CliError::Document(e.to_string()))
    }

    pub fn from_mult_form(phi: &MultForm) -> Self {
        let n = phi.space().dim();
        FormMatrix((1..=n).map(|i| (1..=n).map(|j| (i != j).then(|| format_expr(&phi.get(&[i, j])))).collect()).collect())
    }
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Read { path: path.display().to_string(), source })?;
    serde_json::from_str(&text).map_err(|source| CliError::Json { path: path.display().to_string(), source })
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents serialize");
    s.push('\n');
    s
}

pub fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Write { path: path.display().to_string(), source })
}
