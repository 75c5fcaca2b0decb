//! Seeded random rational evaluation points.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{ExprError, RatExpr, Rational};

/// Attempts allowed before [`PointSampler::nonpole_point`] gives up.
pub const MAX_RESAMPLES: usize = 50;

/// Draws points whose entries are integers in `[-10^4, 10^4]` divided by
/// integers in `[1, 100]`.
#[derive(Debug, Clone)]
pub struct PointSampler {
    rng: ChaCha8Rng,
}

impl PointSampler {
    pub fn new(seed: u64) -> Self {
        PointSampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn rational(&mut self) -> Rational {
        let n: i64 = self.rng.gen_range(-10_000..=10_000);
        let d: i64 = self.rng.gen_range(1..=100);
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    /// A point `(l1, …, l_{coords}, g)`; `g` is random unless fixed.
    pub fn point(&mut self, coords: usize, g: Option<&Rational>) -> Vec<Rational> {
        let mut p: Vec<Rational> = (0..coords).map(|_| self.rational()).collect();
        p.push(g.cloned().unwrap_or_else(|| self.rational()));
        p
    }

    /// A point at which no denominator among `exprs` vanishes.
    pub fn nonpole_point<'a>(
        &mut self,
        exprs: impl IntoIterator<Item = &'a RatExpr> + Clone,
        coords: usize,
        g: Option<&Rational>,
    ) -> Result<Vec<Rational>, ExprError> {
        for _ in 0..MAX_RESAMPLES {
            let p = self.point(coords, g);
            let mut ok = true;
            for e in exprs.clone() {
                match e.eval_at(&p) {
                    Ok(_) => {}
                    Err(ExprError::PoleAtPoint) => {
                        ok = false;
                        break;
                    }
                    Err(other) => return Err(other),
                }
            }
            if ok {
                return Ok(p);
            }
        }
        Err(ExprError::ResampleLimit(MAX_RESAMPLES))
    }
}

/// Evaluation cross-check of [`RatExpr::is_identically_zero`]: evaluates at
/// `samples` random non-pole points and reports whether every value is zero.
pub fn cross_check_zero(e: &RatExpr, samples: usize, seed: u64) -> Result<bool, ExprError> {
    let mut s = PointSampler::new(seed);
    let coords = e.max_coordinate();
    for _ in 0..samples {
        let p = s.nonpole_point([e], coords, None)?;
        if e.eval_at(&p)? != Rational::from_integer(0.into()) {
            return Ok(false);
        }
    }
    Ok(true)
}
