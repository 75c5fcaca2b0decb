use crate::expr::RatExpr;

use super::{GradedError, GradedSpace, HomOp};

/// One homogeneous summand `coef · a ⊗ b`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Summand {
    pub coef: RatExpr,
    pub a: HomOp,
    pub b: HomOp,
    pub parity_a: u8,
    pub parity_b: u8,
}

impl Summand {
    fn koszul(&self) -> bool {
        self.parity_a & self.parity_b == 1
    }
}

/// An element `Σ coef · a ⊗ b` of `End(V) ⊗ End(V)` with homogeneous factors.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Hom2Components {
    space: GradedSpace,
    summands: Vec<Summand>,
}

impl Hom2Components {
    pub fn new(space: &GradedSpace) -> Self {
        Hom2Components { space: space.clone(), summands: Vec::new() }
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn summands(&self) -> &[Summand] {
        &self.summands
    }

    /// Appends `coef · a ⊗ b`; zero coefficients are dropped.
    pub fn push(&mut self, coef: RatExpr, a: HomOp, b: HomOp) -> Result<(), GradedError> {
        for f in [&a, &b] {
            if f.space() != &self.space {
                return Err(GradedError::SpaceMismatch);
            }
            if f.arity() != 1 {
                return Err(GradedError::BadArity(f.arity()));
            }
        }
        let parity_a = a.homogeneous_parity().ok_or(GradedError::Inhomogeneous)?;
        let parity_b = b.homogeneous_parity().ok_or(GradedError::Inhomogeneous)?;
        if !coef.is_zero() {
            self.summands.push(Summand { coef, a, b, parity_a, parity_b });
        }
        Ok(())
    }

    /// Appends `coef · E_ij ⊗ E_kl` (1-based indices).
    pub fn push_units(&mut self, coef: RatExpr, (i, j): (usize, usize), (k, l): (usize, usize)) -> Result<(), GradedError> {
        let a = HomOp::basis_e(&self.space, i, j)?;
        let b = HomOp::basis_e(&self.space, k, l)?;
        self.push(coef, a, b)
    }

    /// The operator `Σ coef · a ⊗_s b` on `V ⊗ V`.
    pub fn to_homop(&self) -> HomOp {
        let mut out = HomOp::zero(&self.space, 2).expect("arity 2");
        for s in &self.summands {
            let k = s.a.super_kron(&s.b).expect("same space").scale(&s.coef);
            out = &out + &k;
        }
        out
    }

    /// `a ⊗ b ↦ (−1)^{|a||b|} b ⊗ a` summandwise; represents `T_s`.
    pub fn swapped(&self) -> Self {
        let summands = self
            .summands
            .iter()
            .map(|s| Summand {
                coef: if s.koszul() { -&s.coef } else { s.coef.clone() },
                a: s.b.clone(),
                b: s.a.clone(),
                parity_a: s.parity_b,
                parity_b: s.parity_a,
            })
            .collect();
        Hom2Components { space: self.space.clone(), summands }
    }

    /// `a ⊗ b ↦ (−1)^{|a||b|} a ⊗ b` summandwise.
    pub fn sign_twisted(&self) -> Self {
        let mut out = self.clone();
        for s in &mut out.summands {
            if s.koszul() {
                s.coef = -&s.coef;
            }
        }
        out
    }

    /// Applies `f` to every coefficient, dropping summands that become zero.
    pub fn map_coefs(&self, f: impl Fn(&RatExpr) -> RatExpr) -> Self {
        let summands = self
            .summands
            .iter()
            .filter_map(|s| {
                let c = f(&s.coef);
                (!c.is_zero()).then(|| Summand { coef: c, ..s.clone() })
            })
            .collect();
        Hom2Components { space: self.space.clone(), summands }
    }

    /// `∂/∂l_k` by the product rule over coefficient and factors.
    pub fn partial_deriv(&self, k: usize) -> Self {
        let mut out = Hom2Components::new(&self.space);
        for s in &self.summands {
            let dc = s.coef.partial_deriv(k);
            if !dc.is_zero() {
                out.summands.push(Summand { coef: dc, ..s.clone() });
            }
            let da = s.a.map(|e| e.partial_deriv(k));
            if !da.is_zero() {
                out.summands.push(Summand { a: da, ..s.clone() });
            }
            let db = s.b.map(|e| e.partial_deriv(k));
            if !db.is_zero() {
                out.summands.push(Summand { b: db, ..s.clone() });
            }
        }
        out
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }
}

/// Places a two-slot element into the slots `(p, q)` of `V^{⊗3}`.
///
/// Ascending slots use `r^{12} = r ⊗_s Id`, `r^{23} = Id ⊗_s r` and
/// `r^{13} = (Id ⊗_s P_s) r^{12} (Id ⊗_s P_s)`. Descending slots `(q, p)`
/// place the swapped components into `(p, q)`.
pub fn place_in_slots(s: &Hom2Components, slots: (usize, usize)) -> Result<HomOp, GradedError> {
    match slots {
        (1, 2) | (2, 3) | (1, 3) => Ok(place_operator(&s.to_homop(), slots)),
        (2, 1) | (3, 2) | (3, 1) => place_in_slots(&s.swapped(), (slots.1, slots.0)),
        _ => Err(GradedError::InvalidSlots(slots.0, slots.1)),
    }
}

/// Places an operator on `V ⊗ V` into ascending slots of `V^{⊗3}`.
pub fn place_operator(r: &HomOp, slots: (usize, usize)) -> HomOp {
    let id = HomOp::identity(r.space(), 1).expect("arity 1");
    match slots {
        (1, 2) => r.super_kron(&id).expect("arity 3"),
        (2, 3) => id.super_kron(r).expect("arity 3"),
        (1, 3) => {
            let ip = id.super_kron(&HomOp::super_swap(r.space())).expect("arity 3");
            &(&ip * &r.super_kron(&id).expect("arity 3")) * &ip
        }
        _ => panic!("place_operator takes ascending slots, got {slots:?}"),
    }
}

/// `a ⊗ Id ⊗ b` built directly as a triple super tensor product; the
/// factor-wise counterpart of `place_in_slots(·, (1, 3))`.
pub fn place_13_by_components(s: &Hom2Components) -> HomOp {
    let id = HomOp::identity(s.space(), 1).expect("arity 1");
    let mut out = HomOp::zero(s.space(), 3).expect("arity 3");
    for t in s.summands() {
        let k = t.a.super_kron(&id).and_then(|x| x.super_kron(&t.b)).expect("arity 3");
        out = &out + &k.scale(&t.coef);
    }
    out
}

// `ε_i E_ii` placed in a single slot of V^{⊗3}.
fn coordinate_in_slot(space: &GradedSpace, i: usize, slot: usize) -> HomOp {
    let x = HomOp::basis_e(space, i, i).expect("index in range").scale(&RatExpr::int(space.eps(i)));
    let id = HomOp::identity(space, 1).expect("arity 1");
    let k = |a: &HomOp, b: &HomOp| a.super_kron(b).expect("arity fits");
    match slot {
        1 => k(&k(&x, &id), &id),
        2 => k(&k(&id, &x), &id),
        _ => k(&k(&id, &id), &x),
    }
}

/// `Alt_s(dr)` in its rewritten three-term form, with `dr = Σ_i x_i ⊗ ∂_i r`
/// and `x_i` acting on `V` as `ε_i E_ii`:
///
/// `Σ_i x_i^{(1)} (∂_i r)^{(23)} + x_i^{(2)} (∂_i r)^{(31)} + x_i^{(3)} (∂_i r)^{(12)}`.
pub fn alt_s_of_dr(r: &Hom2Components) -> HomOp {
    let space = r.space();
    let mut out = HomOp::zero(space, 3).expect("arity 3");
    for i in 1..=space.dim() {
        let d = r.partial_deriv(i);
        if d.is_empty() {
            continue;
        }
        for (slot, slots) in [(1, (2, 3)), (2, (3, 1)), (3, (1, 2))] {
            let placed = place_in_slots(&d, slots).expect("valid slots");
            out = &out + &(&coordinate_in_slot(space, i, slot) * &placed);
        }
    }
    out
}

/// `Alt_s(dr)` from the defining cyclic sum
/// `Alt_s(a⊗b⊗c) = a⊗b⊗c + (−1)^{|a|(|b|+|c|)} b⊗c⊗a + (−1)^{|c|(|a|+|b|)} c⊗a⊗b`
/// applied summand by summand to `Σ_i x_i ⊗ ∂_i r`.
pub fn alt_s_by_definition(r: &Hom2Components) -> HomOp {
    let space = r.space();
    let mut out = HomOp::zero(space, 3).expect("arity 3");
    let k3 = |a: &HomOp, b: &HomOp, c: &HomOp| a.super_kron(b).and_then(|x| x.super_kron(c)).expect("arity 3");
    for i in 1..=space.dim() {
        let x = HomOp::basis_e(space, i, i).expect("index in range").scale(&RatExpr::int(space.eps(i)));
        for t in r.partial_deriv(i).summands() {
            let (pa, pb, pc) = (0u8, t.parity_a, t.parity_b);
            let (a, b, c) = (&x, &t.a, &t.b);
            let s2 = pa & (pb ^ pc) == 1;
            let s3 = pc & (pa ^ pb) == 1;
            let mut term = k3(a, b, c);
            let t2 = k3(b, c, a);
            let t3 = k3(c, a, b);
            term = if s2 { &term - &t2 } else { &term + &t2 };
            term = if s3 { &term - &t3 } else { &term + &t3 };
            out = &out + &term.scale(&t.coef);
        }
    }
    out
}
