//! An independent, non-graded implementation of the classical and quantum
//! checks for gl(N). Operators are dense matrices over `V^{⊗k}` built with
//! plain Kronecker index formulas; the weight shift is `l_k ↦ l_k − step`.
//! Only the coefficient tables of a `ZeroWeightOp` are read.

use superdyn::dynamical::ZeroWeightOp;
use superdyn::expr::RatExpr;

/// `α` and `β` tables, 0-based.
#[derive(Clone)]
pub struct Coeffs {
    pub n: usize,
    pub alpha: Vec<Vec<RatExpr>>,
    pub beta: Vec<Vec<RatExpr>>,
}

impl Coeffs {
    pub fn from_op(r: &ZeroWeightOp) -> Self {
        let n = r.dim();
        Coeffs {
            n,
            alpha: (1..=n).map(|i| (1..=n).map(|j| r.alpha(i, j).clone()).collect()).collect(),
            beta: (1..=n).map(|i| (1..=n).map(|j| if i == j { RatExpr::zero() } else { r.beta(i, j).clone() }).collect()).collect(),
        }
    }

    fn map(&self, f: impl Fn(&RatExpr) -> RatExpr) -> Self {
        Coeffs {
            n: self.n,
            alpha: self.alpha.iter().map(|r| r.iter().map(&f).collect()).collect(),
            beta: self.beta.iter().map(|r| r.iter().map(&f).collect()).collect(),
        }
    }

    /// Matrix on `V ⊗ V`: `α_ij` at `((i,j),(i,j))`, `β_ij` at `((j,i),(i,j))`.
    pub fn matrix(&self) -> Mat {
        let n = self.n;
        let mut m = Mat::zero(n * n);
        for i in 0..n {
            for j in 0..n {
                m.add_to(i * n + j, i * n + j, &self.alpha[i][j]);
                if i != j {
                    m.add_to(j * n + i, i * n + j, &self.beta[i][j]);
                }
            }
        }
        m
    }
}

#[derive(Clone, PartialEq)]
pub struct Mat {
    pub d: usize,
    pub e: Vec<RatExpr>,
}

impl Mat {
    pub fn zero(d: usize) -> Self {
        Mat { d, e: vec![RatExpr::zero(); d * d] }
    }

    pub fn get(&self, r: usize, c: usize) -> &RatExpr {
        &self.e[r * self.d + c]
    }

    fn add_to(&mut self, r: usize, c: usize, v: &RatExpr) {
        let k = r * self.d + c;
        self.e[k] = &self.e[k] + v;
    }

    pub fn mul(&self, o: &Mat) -> Mat {
        let d = self.d;
        let mut out = Mat::zero(d);
        for i in 0..d {
            for k in 0..d {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..d {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        out.add_to(i, j, &(a * b));
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, o: &Mat) -> Mat {
        Mat { d: self.d, e: self.e.iter().zip(&o.e).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &Mat) -> Mat {
        Mat { d: self.d, e: self.e.iter().zip(&o.e).map(|(a, b)| a - b).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().all(RatExpr::is_zero)
    }
}

fn triple(n: usize, idx: usize) -> (usize, usize, usize) {
    (idx / (n * n), (idx / n) % n, idx % n)
}

/// An operator on `V ⊗ V` placed in slots `(p, q)` of `V^{⊗3}` (any order);
/// `pick(column)` supplies the matrix used for each column.
fn place_with(n: usize, pick: &dyn Fn((usize, usize, usize)) -> Mat, slots: (usize, usize)) -> Mat {
    let d = n * n * n;
    let mut out = Mat::zero(d);
    for row in 0..d {
        for col in 0..d {
            let r = triple(n, row);
            let c = triple(n, col);
            let rt = [r.0, r.1, r.2];
            let ct = [c.0, c.1, c.2];
            let (p, q) = (slots.0 - 1, slots.1 - 1);
            let other = 3 - p - q;
            if rt[other] != ct[other] {
                continue;
            }
            let m = pick(c);
            let v = m.get(rt[p] * n + rt[q], ct[p] * n + ct[q]);
            if !v.is_zero() {
                out.add_to(row, col, v);
            }
        }
    }
    out
}

fn place(r: &Mat, n: usize, slots: (usize, usize)) -> Mat {
    place_with(n, &|_| r.clone(), slots)
}

fn diag_slot(n: usize, i: usize, slot: usize) -> Mat {
    let d = n * n * n;
    let mut out = Mat::zero(d);
    for k in 0..d {
        let t = triple(n, k);
        let x = [t.0, t.1, t.2][slot - 1];
        if x == i {
            out.add_to(k, k, &RatExpr::one());
        }
    }
    out
}

/// `Σ_i E_ii^{(1)} ∂_i r^{(23)} + E_ii^{(2)} ∂_i r^{(31)} + E_ii^{(3)} ∂_i r^{(12)}
///  + [r12, r13] + [r12, r23] + [r13, r23]`.
pub fn cdybe_zero(c: &Coeffs) -> bool {
    let n = c.n;
    let r = c.matrix();
    let r12 = place(&r, n, (1, 2));
    let r13 = place(&r, n, (1, 3));
    let r23 = place(&r, n, (2, 3));
    let br = |a: &Mat, b: &Mat| a.mul(b).sub(&b.mul(a));
    let mut total = br(&r12, &r13).add(&br(&r12, &r23)).add(&br(&r13, &r23));
    for i in 0..n {
        let dr = c.map(|e| e.partial_deriv(i + 1)).matrix();
        total = total.add(&diag_slot(n, i, 1).mul(&place(&dr, n, (2, 3))));
        total = total.add(&diag_slot(n, i, 2).mul(&place(&dr, n, (3, 1))));
        total = total.add(&diag_slot(n, i, 3).mul(&place(&dr, n, (1, 2))));
    }
    total.is_zero()
}

/// `r + r^{21} = 0`.
pub fn unitary(c: &Coeffs) -> bool {
    let n = c.n;
    let r = c.matrix();
    (0..n * n).all(|row| {
        (0..n * n).all(|col| {
            let flip = |k: usize| (k % n) * n + k / n;
            (r.get(row, col) + r.get(flip(row), flip(col))).is_zero()
        })
    })
}

/// `R12(λ − γh3) R13 R23(λ − γh1) = R23 R13(λ − γh2) R12`.
pub fn qdybe_zero(c: &Coeffs, step: &RatExpr) -> bool {
    let n = c.n;
    let shifted: Vec<Mat> = (1..=n).map(|k| c.map(|e| e.shift_var(k, step)).matrix()).collect();
    let r = c.matrix();
    let r12 = place(&r, n, (1, 2));
    let r13 = place(&r, n, (1, 3));
    let r23 = place(&r, n, (2, 3));
    let r12_h3 = place_with(n, &|t| shifted[t.2].clone(), (1, 2));
    let r23_h1 = place_with(n, &|t| shifted[t.0].clone(), (2, 3));
    let r13_h2 = place_with(n, &|t| shifted[t.1].clone(), (1, 3));
    r12_h3.mul(&r13).mul(&r23_h1).sub(&r23.mul(&r13_h2).mul(&r12)).is_zero()
}

/// Strong (`weak = false`) or weak Hecke condition for `Ř = P R`.
pub fn hecke(c: &Coeffs, p: &RatExpr, q: &RatExpr, weak: bool) -> bool {
    let n = c.n;
    for i in 0..n {
        let a = &c.alpha[i][i];
        let v = if weak { &(a - p) * &(a + q) } else { a - p };
        if !v.is_zero() {
            return false;
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            // basis (v_i ⊗ v_j, v_j ⊗ v_i); Ř v_i⊗v_j = β_ij v_i⊗v_j + α_ij v_j⊗v_i
            let m = [[c.beta[i][j].clone(), c.alpha[j][i].clone()], [c.alpha[i][j].clone(), c.beta[j][i].clone()]];
            if weak {
                let a = [[&m[0][0] - p, m[0][1].clone()], [m[1][0].clone(), &m[1][1] - p]];
                let b = [[&m[0][0] + q, m[0][1].clone()], [m[1][0].clone(), &m[1][1] + q]];
                for row in &a {
                    for (b0, b1) in b[0].iter().zip(&b[1]) {
                        if !(&(&row[0] * b0) + &(&row[1] * b1)).is_zero() {
                            return false;
                        }
                    }
                }
            } else {
                let tr = &m[0][0] + &m[1][1];
                let det = &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]);
                if !(&tr - &(p - q)).is_zero() || !(&det + &(p * q)).is_zero() {
                    return false;
                }
            }
        }
    }
    true
}

/// The β-recursions at step 1 in the non-graded case.
pub fn beta_recursions(c: &Coeffs) -> bool {
    let n = c.n;
    let one = RatExpr::one();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            if !(&c.beta[i][j] + &c.beta[j][i]).is_zero() {
                return false;
            }
            let b = &c.beta[i][j];
            if b.is_zero() {
                continue;
            }
            let inv = b.inverse().unwrap();
            let inv_shift = |k: usize| b.shift_var(k + 1, &one).inverse();
            match (inv_shift(i), inv_shift(j)) {
                (Ok(x), Ok(y)) => {
                    if !(&(&inv - &x) - &one).is_zero() || !(&(&inv - &y) + &one).is_zero() {
                        return false;
                    }
                }
                _ => return false,
            }
            for k in (0..n).filter(|&k| k != i && k != j) {
                if b.shift_var(k + 1, &one) != *b {
                    return false;
                }
            }
        }
    }
    true
}
