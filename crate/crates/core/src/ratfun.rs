//! Scalar layer: univariate rational functions and their Taylor expansion at
//! `u = 0`, residues of Laurent polynomials against them, and bivariate
//! functions whose denominators are powers of `v − u`.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{Poly1, Poly2};
use crate::rat::{binomial, Rat};

/// `num(u) / den(u)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatFun1 {
    pub num: Poly1,
    pub den: Poly1,
}

impl RatFun1 {
    pub fn new(num: Poly1, den: Poly1) -> Result<Self> {
        if den.is_zero() || !num.is_polynomial() || !den.is_polynomial() {
            return Err(Error::InvalidInput(
                "rational function needs polynomial parts and a nonzero denominator".into(),
            ));
        }
        Ok(Self { num, den })
    }

    pub fn one() -> Self {
        Self {
            num: Poly1::one(),
            den: Poly1::one(),
        }
    }

    /// `1 / den`
    pub fn reciprocal_of(den: Poly1) -> Result<Self> {
        Self::new(Poly1::one(), den)
    }
}

/// Taylor coefficients `t_0 ..= t_order` of `f` at `u = 0`.
pub fn expand_at_zero(f: &RatFun1, order: usize) -> Result<Vec<Rat>> {
    let d0 = f.den.coeff(&[0]);
    if d0.is_zero() {
        return Err(Error::PoleAtZero);
    }
    let inv = d0.recip();
    let mut t: Vec<Rat> = Vec::with_capacity(order + 1);
    for k in 0..=order {
        let mut acc = f.num.coeff(&[k as i32]);
        for (e, d) in f.den.terms() {
            let j = e[0] as usize;
            if j >= 1 && j <= k {
                acc -= d * &t[k - j];
            }
        }
        t.push(acc * &inv);
    }
    Ok(t)
}

/// Coefficient of `u^{-1}` in `f(u) · a(u)`, with `a` expanded at zero.
pub fn residue(f: &Poly1, a: &RatFun1) -> Result<Rat> {
    let min = f.min_exp(0).unwrap_or(0);
    let order = (-(min as i64) - 1).max(0) as usize;
    let t = expand_at_zero(a, order)?;
    let mut acc = Rat::zero();
    for (e, c) in f.terms() {
        if e[0] < 0 {
            acc += c * &t[(-1 - e[0]) as usize];
        }
    }
    Ok(acc)
}

/// `num(u, v) / (v − u)^den_power`, kept with the largest possible power of
/// `v − u` cancelled and any constant folded into the numerator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BivarRat {
    num: Poly2,
    den_power: u32,
}

pub const U: usize = 0;
pub const V: usize = 1;

fn v_minus_u() -> Poly2 {
    &Poly2::var(V) - &Poly2::var(U)
}

impl BivarRat {
    /// `num / (scale · (v − u)^den_power)`.
    pub fn new(num: Poly2, scale: &Rat, den_power: u32) -> Result<Self> {
        if scale.is_zero() {
            return Err(Error::InvalidInput("zero denominator scale".into()));
        }
        if !num.is_polynomial() {
            return Err(Error::InvalidInput("numerator must be a polynomial".into()));
        }
        Ok(Self::normalized(num.scale(&scale.recip()), den_power))
    }

    pub fn polynomial(num: Poly2) -> Self {
        Self::normalized(num, 0)
    }

    pub fn constant(c: Rat) -> Self {
        Self::polynomial(Poly2::constant(c))
    }

    pub fn zero() -> Self {
        Self::polynomial(Poly2::zero())
    }

    fn normalized(mut num: Poly2, mut den_power: u32) -> Self {
        if num.is_zero() {
            return Self {
                num,
                den_power: 0,
            };
        }
        while den_power > 0 {
            match num.div_by_difference(U, V) {
                Some(q) => {
                    num = q;
                    den_power -= 1;
                }
                None => break,
            }
        }
        Self { num, den_power }
    }

    pub fn num(&self) -> &Poly2 {
        &self.num
    }

    pub fn den_power(&self) -> u32 {
        self.den_power
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Numerator over the common denominator `(v − u)^power`.
    pub fn numerator_at(&self, power: u32) -> Poly2 {
        assert!(power >= self.den_power);
        &self.num * &v_minus_u().pow(power - self.den_power)
    }

    pub fn add(&self, other: &Self) -> Self {
        let p = self.den_power.max(other.den_power);
        Self::normalized(&self.numerator_at(p) + &other.numerator_at(p), p)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self::normalized(self.num.scale(c), self.den_power)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::normalized(&self.num * &other.num, self.den_power + other.den_power)
    }

    /// `f(v, u)`; the denominator `(u − v)^k` picks up `(−1)^k`.
    pub fn swap_vars(&self) -> Self {
        let num = self.num.map_exponents(|[a, b]| [b, a]);
        let num = if self.den_power % 2 == 1 {
            num.scale(&-Rat::one())
        } else {
            num
        };
        Self::normalized(num, self.den_power)
    }

    /// Expansion in the region `|u| < |v|`, keeping powers `u^0 ..= u^max_u`.
    /// Uses `(v − u)^{-m} = Σ_n C(n+m−1, m−1) u^n v^{−n−m}`.
    pub fn expand_region(&self, max_u: u32) -> Poly2 {
        let m = self.den_power as i32;
        if m == 0 {
            return self.num.filter(|e| e[U] <= max_u as i32);
        }
        let mut out = Poly2::zero();
        for (e, c) in self.num.terms() {
            for n in 0..=(max_u as i32 - e[U]) {
                let k = binomial((n + m - 1) as u64, (m - 1) as u64);
                out.add_term([e[U] + n, e[V] - n - m], c * k);
            }
        }
        out
    }

    /// Exact evaluation at a point off the diagonal.
    pub fn eval(&self, u: &Rat, v: &Rat) -> Result<Rat> {
        let d = v - u;
        if d.is_zero() && self.den_power > 0 {
            return Err(Error::InvalidInput("evaluation on the diagonal u = v".into()));
        }
        let num = self
            .num
            .substitute(&[Poly1::constant(u.clone()), Poly1::constant(v.clone())])
            .coeff(&[0]);
        let mut den = Rat::one();
        for _ in 0..self.den_power {
            den *= &d;
        }
        Ok(num / den)
    }
}

/// `f(pu + q, pv + q)`. Since `(pv + q) − (pu + q) = p(v − u)`, the result
/// has the same shape.
pub fn substitute_affine_scalar(f: &BivarRat, p: &Rat, q: &Rat) -> Result<BivarRat> {
    if p.is_zero() {
        return Err(Error::DegenerateSubstitution);
    }
    let images = [
        &Poly2::var(U).scale(p) + &Poly2::constant(q.clone()),
        &Poly2::var(V).scale(p) + &Poly2::constant(q.clone()),
    ];
    let num = f.num.substitute(&images);
    let mut scale = Rat::one();
    for _ in 0..f.den_power {
        scale *= p;
    }
    BivarRat::new(num, &scale, f.den_power)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{frac, int};

    fn lin(c: i64) -> Poly1 {
        // 1 − c u
        Poly1::from_coeffs(&[int(1), int(-c)])
    }

    #[test]
    fn geometric_expansions() {
        let f = RatFun1::reciprocal_of(lin(1)).unwrap();
        assert_eq!(expand_at_zero(&f, 3).unwrap(), vec![int(1); 4]);
        let f = RatFun1::reciprocal_of(&lin(1) * &lin(2)).unwrap();
        assert_eq!(expand_at_zero(&f, 2).unwrap(), vec![int(1), int(3), int(7)]);
        let f = RatFun1::reciprocal_of(lin(1).pow(2)).unwrap();
        assert_eq!(expand_at_zero(&f, 2).unwrap(), vec![int(1), int(2), int(3)]);
    }

    #[test]
    fn pole_at_zero() {
        let f = RatFun1::reciprocal_of(Poly1::var(0)).unwrap();
        assert_eq!(expand_at_zero(&f, 2), Err(Error::PoleAtZero));
    }

    #[test]
    fn residues() {
        let inv_u = Poly1::monomial([-1], int(1));
        assert_eq!(residue(&inv_u, &RatFun1::one()).unwrap(), int(1));
        // f = u^-3 against 1/((1 − c1 u)(1 − c2 u)) gives c1² + c1c2 + c2²
        let (c1, c2) = (frac(2, 3), int(-5));
        let den = &Poly1::from_coeffs(&[int(1), -c1.clone()]) * &Poly1::from_coeffs(&[int(1), -c2.clone()]);
        let a = RatFun1::reciprocal_of(den).unwrap();
        let f = Poly1::monomial([-3], int(1));
        assert_eq!(residue(&f, &a).unwrap(), &c1 * &c1 + &c1 * &c2 + &c2 * &c2);
        assert_eq!(residue(&Poly1::monomial([2], int(1)), &a).unwrap(), int(0));
    }

    #[test]
    fn bivar_cancels_difference() {
        let vu = v_minus_u();
        let f = BivarRat::new(&vu * &Poly2::var(U), &int(1), 1).unwrap();
        assert_eq!(f, BivarRat::polynomial(Poly2::var(U)));
        assert!(BivarRat::new(vu.clone(), &int(0), 1).is_err());
    }

    #[test]
    fn affine_substitution_examples() {
        let inv = BivarRat::new(Poly2::one(), &int(1), 1).unwrap();
        let s = substitute_affine_scalar(&inv, &int(2), &int(1)).unwrap();
        assert_eq!(s, BivarRat::new(Poly2::one(), &int(2), 1).unwrap());

        let uv = BivarRat::new(&Poly2::var(U) * &Poly2::var(V), &int(1), 1).unwrap();
        assert_eq!(substitute_affine_scalar(&uv, &int(1), &int(0)).unwrap(), uv);

        // (1 − uv)/(v − u) at (p, q) = (2, −1): (2u + 2v − 4uv) / (2(v − u))
        let f = BivarRat::new(&Poly2::one() - &(&Poly2::var(U) * &Poly2::var(V)), &int(1), 1).unwrap();
        let s = substitute_affine_scalar(&f, &int(2), &int(-1)).unwrap();
        let num = &(&Poly2::var(U) + &Poly2::var(V)) - &(&Poly2::var(U) * &Poly2::var(V)).scale(&int(2));
        assert_eq!(s, BivarRat::new(num, &int(1), 1).unwrap());

        assert_eq!(
            substitute_affine_scalar(&f, &int(0), &int(1)),
            Err(Error::DegenerateSubstitution)
        );
    }

    #[test]
    fn region_expansion() {
        let inv = BivarRat::new(Poly2::one(), &int(1), 1).unwrap();
        let e = inv.expand_region(1);
        let mut expect = Poly2::monomial([0, -1], int(1));
        expect.add_term([1, -2], int(1));
        assert_eq!(e, expect);
    }

    #[test]
    fn swap_vars_of_antisymmetric_kernel() {
        let inv = BivarRat::new(Poly2::one(), &int(1), 1).unwrap();
        assert_eq!(inv.swap_vars(), inv.scale(&int(-1)));
    }
}
