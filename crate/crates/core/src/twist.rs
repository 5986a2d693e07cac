//! Affine reparametrisations `u ↦ pu + q` relating the two-point families.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lie::{build_sl, casimir, positive_wedge_sum, r_dj, LieAlgebraData};
use crate::pairing::{AForm, CaseSpec, DoubleType};
use crate::poly::Poly2;
use crate::rat::Rat;
use crate::ratfun::{substitute_affine_scalar, BivarRat};
use crate::rmatrix::{build_r, RKind, SpectralTensor2};

/// `σ(u) = pu + q` with `p ≠ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineChange {
    p: Rat,
    q: Rat,
}

impl AffineChange {
    pub fn new(p: Rat, q: Rat) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::DegenerateChange("p must be nonzero".into()));
        }
        Ok(Self { p, q })
    }

    pub fn identity() -> Self {
        Self {
            p: Rat::one(),
            q: Rat::zero(),
        }
    }

    pub fn p(&self) -> &Rat {
        &self.p
    }

    pub fn q(&self) -> &Rat {
        &self.q
    }

    /// `self ∘ inner`, i.e. `u ↦ self(inner(u))`.
    pub fn compose(&self, inner: &AffineChange) -> AffineChange {
        AffineChange {
            p: &self.p * &inner.p,
            q: &self.p * &inner.q + &self.q,
        }
    }

    pub fn apply(&self, x: &Rat) -> Rat {
        &self.p * x + &self.q
    }

    /// `p / ((1 − c1 q)(1 − c2 q))`
    pub fn scaling(&self, c1: &Rat, c2: &Rat) -> Result<Rat> {
        let a = Rat::one() - c1 * &self.q;
        let b = Rat::one() - c2 * &self.q;
        if a.is_zero() || b.is_zero() {
            return Err(Error::DegenerateChange(format!(
                "1 - c q vanishes for q = {}",
                self.q
            )));
        }
        Ok(&self.p / (a * b))
    }
}

impl fmt::Display for AffineChange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "u -> {}*u + {}", self.p, self.q)
    }
}

/// The unique `(p, q)` with `d_i = c_i p / (1 − c_i q)`.
pub fn solve_pq(c1: &Rat, c2: &Rat, d1: &Rat, d2: &Rat) -> Result<AffineChange> {
    if [c1, c2, d1, d2].iter().any(|x| x.is_zero()) {
        return Err(Error::InvalidParameter("two-point constants must be nonzero".into()));
    }
    if c1 == c2 || d1 == d2 {
        return Err(Error::InvalidParameter("two-point constants must be distinct".into()));
    }
    // 1/d_i = X/c_i − Y with X = 1/p, Y = q/p
    let x = (d1.recip() - d2.recip()) / (c1.recip() - c2.recip());
    if x.is_zero() {
        return Err(Error::DegenerateChange("no finite p solves the system".into()));
    }
    let y = &x / c1 - d1.recip();
    let p = x.recip();
    let q = &y * &p;
    let change = AffineChange::new(p, q)?;
    change.scaling(c1, c2)?;
    Ok(change)
}

/// `r(pu + q, pv + q)`; the scalar factor is left to the caller.
pub fn substitute_affine_tensor(r: &SpectralTensor2, change: &AffineChange) -> Result<SpectralTensor2> {
    r.map_entries(|f| substitute_affine_scalar(f, &change.p, &change.q))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistReport {
    pub change: AffineChange,
    pub scaling: Rat,
    pub equal: bool,
}

fn two_point_r(alg: &LieAlgebraData, c1: &Rat, c2: &Rat) -> Result<SpectralTensor2> {
    let spec = CaseSpec::new(DoubleType::I, AForm::TwoPoints(c1.clone(), c2.clone()));
    build_r(alg, &spec, &RKind::mcybe(alg, r_dj(alg))?)
}

/// Checks `r_{d1,d2}(u, v) = C · r_{c1,c2}(pu + q, pv + q)` on `alg`.
pub fn quasi_twist_verify_on(
    alg: &LieAlgebraData,
    c1: &Rat,
    c2: &Rat,
    d1: &Rat,
    d2: &Rat,
) -> Result<TwistReport> {
    let change = solve_pq(c1, c2, d1, d2)?;
    let scaling = change.scaling(c1, c2)?;
    let target = two_point_r(alg, d1, d2)?;
    let moved = substitute_affine_tensor(&two_point_r(alg, c1, c2)?, &change)?.scale(&scaling);
    Ok(TwistReport {
        equal: moved == target,
        change,
        scaling,
    })
}

/// [`quasi_twist_verify_on`] over `sl_2`.
pub fn quasi_twist_verify(c1: &Rat, c2: &Rat, d1: &Rat, d2: &Rat) -> Result<TwistReport> {
    quasi_twist_verify_on(&build_sl(2)?, c1, c2, d1, d2)
}

/// Substituting `u = 2u₁ − 1` into `(1 − uv)/(v − u) Ω + Σ e_α ∧ e_{−α}` and
/// comparing with `scale · (u₁(1 − v₁)/(v₁ − u₁) Ω + r_DJ)`.
pub fn remark_example_check_scaled(alg: &LieAlgebraData, scale: &Rat) -> Result<bool> {
    let omega = casimir(alg);
    let mut num = Poly2::one();
    num.add_term([1, 1], -Rat::one());
    let source = SpectralTensor2::from_scalar(&BivarRat::new(num, &Rat::one(), 1)?, &omega)
        .add(&SpectralTensor2::constant(&positive_wedge_sum(alg)));
    let change = AffineChange::new(Rat::from_integer(2.into()), -Rat::one())?;
    let moved = substitute_affine_tensor(&source, &change)?;

    let mut num = Poly2::monomial([1, 0], Rat::one());
    num.add_term([1, 1], -Rat::one());
    let target = SpectralTensor2::from_scalar(&BivarRat::new(num, &Rat::one(), 1)?, &omega)
        .add(&SpectralTensor2::constant(&r_dj(alg)))
        .scale(scale);
    Ok(moved == target)
}

pub fn remark_example_check(alg: &LieAlgebraData) -> Result<bool> {
    remark_example_check_scaled(alg, &Rat::from_integer(2.into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{frac, int};

    #[test]
    fn solve_examples() {
        let ch = solve_pq(&int(1), &int(2), &int(3), &int(5)).unwrap();
        assert_eq!((ch.p(), ch.q()), (&frac(15, 4), &frac(-1, 4)));
        assert_eq!(ch.scaling(&int(1), &int(2)).unwrap(), int(2));
        let ch = solve_pq(&int(1), &int(2), &int(1), &int(2)).unwrap();
        assert_eq!(ch, AffineChange::identity());
        let ch = solve_pq(&int(1), &int(2), &int(2), &int(4)).unwrap();
        assert_eq!((ch.p(), ch.q()), (&int(2), &int(0)));
    }

    #[test]
    fn degenerate_inputs() {
        assert!(matches!(
            solve_pq(&int(1), &int(1), &int(3), &int(5)),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            solve_pq(&int(0), &int(1), &int(3), &int(5)),
            Err(Error::InvalidParameter(_))
        ));
        // 1/d1 − 1/d2 = 0 is excluded by d1 ≠ d2; X = 0 needs d1 = d2.
        assert!(AffineChange::new(int(0), int(1)).is_err());
    }

    #[test]
    fn substitution_examples() {
        let g = build_sl(2).unwrap();
        let omega = casimir(&g);
        let rational = SpectralTensor2::from_scalar(&BivarRat::new(Poly2::one(), &int(1), 1).unwrap(), &omega);
        let moved = substitute_affine_tensor(&rational, &AffineChange::new(int(2), int(0)).unwrap()).unwrap();
        assert_eq!(moved, rational.scale(&frac(1, 2)));
        let constant = SpectralTensor2::constant(&r_dj(&g));
        assert_eq!(
            substitute_affine_tensor(&constant, &AffineChange::new(int(-3), frac(1, 7)).unwrap()).unwrap(),
            constant
        );
    }

    #[test]
    fn twist_examples() {
        let r = quasi_twist_verify(&int(1), &int(2), &int(3), &int(5)).unwrap();
        assert!(r.equal);
        assert_eq!(r.scaling, int(2));
        let r = quasi_twist_verify(&int(1), &int(2), &int(1), &int(2)).unwrap();
        assert!(r.equal);
        assert_eq!(r.scaling, int(1));
        let r = quasi_twist_verify(&int(1), &int(2), &int(2), &int(4)).unwrap();
        assert!(r.equal);
        assert_eq!(r.scaling, int(2));
    }

    #[test]
    fn remark_example() {
        let g = build_sl(2).unwrap();
        assert!(remark_example_check(&g).unwrap());
        assert!(!remark_example_check_scaled(&g, &int(3)).unwrap());
        assert!(remark_example_check(&build_sl(3).unwrap()).unwrap());
    }
}
