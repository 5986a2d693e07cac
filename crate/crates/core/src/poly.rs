//! Sparse multivariate Laurent polynomials with exact rational coefficients.
//!
//! One type covers every scalar ring the engine needs: `LaurentPoly<1>` for
//! `C[u, u^-1]` and univariate polynomials, `LaurentPoly<2>` for bivariate
//! numerators in `(u, v)`, `LaurentPoly<3>` for the three-leg identities.
//! Zero coefficients are never stored, so structural equality is equality.

use std::collections::BTreeMap;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use crate::rat::Rat;

pub type Exp<const N: usize> = [i32; N];

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly<const N: usize> {
    terms: BTreeMap<Exp<N>, Rat>,
}

pub type Poly1 = LaurentPoly<1>;
pub type Poly2 = LaurentPoly<2>;
pub type Poly3 = LaurentPoly<3>;

impl<const N: usize> Default for LaurentPoly<N> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<const N: usize> LaurentPoly<N> {
    pub fn zero() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Rat) -> Self {
        Self::monomial([0; N], c)
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn monomial(exp: Exp<N>, c: Rat) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, c);
        p
    }

    /// The coordinate function `x_i`.
    pub fn var(i: usize) -> Self {
        let mut e = [0; N];
        e[i] = 1;
        Self::monomial(e, Rat::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp<N>, &Rat)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Exp<N>, Rat)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, exp: &Exp<N>) -> Rat {
        self.terms.get(exp).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add_term(&mut self, exp: Exp<N>, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, other: &Self, c: &Rat) {
        if c.is_zero() {
            return;
        }
        for (e, x) in &other.terms {
            self.add_term(*e, x * c);
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    /// Multiplies by the monomial `x^shift`.
    pub fn shift(&self, shift: Exp<N>) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, x)| {
                    let mut f = *e;
                    for i in 0..N {
                        f[i] += shift[i];
                    }
                    (f, x.clone())
                })
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// True when no exponent is negative.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&d| d >= 0))
    }

    pub fn min_exp(&self, var: usize) -> Option<i32> {
        self.terms.keys().map(|e| e[var]).min()
    }

    pub fn max_exp(&self, var: usize) -> Option<i32> {
        self.terms.keys().map(|e| e[var]).max()
    }

    /// Relabels exponents term by term; the map must be injective on the
    /// support or colliding terms are summed.
    pub fn map_exponents<const M: usize>(&self, f: impl Fn(Exp<N>) -> Exp<M>) -> LaurentPoly<M> {
        let mut out = LaurentPoly::<M>::zero();
        for (e, x) in &self.terms {
            out.add_term(f(*e), x.clone());
        }
        out
    }

    /// Keeps only the terms satisfying `keep`.
    pub fn filter(&self, keep: impl Fn(&Exp<N>) -> bool) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| keep(e))
                .map(|(e, x)| (*e, x.clone()))
                .collect(),
        }
    }

    /// Polynomial substitution `x_i -> images[i]`. Negative exponents are
    /// not allowed.
    pub fn substitute<const M: usize>(&self, images: &[LaurentPoly<M>; N]) -> LaurentPoly<M> {
        assert!(self.is_polynomial(), "substitute needs a polynomial");
        let mut powers: Vec<Vec<LaurentPoly<M>>> = vec![vec![LaurentPoly::<M>::one()]; N];
        let mut out = LaurentPoly::<M>::zero();
        for (e, x) in &self.terms {
            let mut term = LaurentPoly::<M>::constant(x.clone());
            for i in 0..N {
                let d = e[i] as usize;
                while powers[i].len() <= d {
                    let next = powers[i].last().unwrap() * &images[i];
                    powers[i].push(next);
                }
                term = &term * &powers[i][d];
            }
            out += &term;
        }
        out
    }

    /// Exact quotient by `x_b - x_a`, or `None` when it does not divide.
    pub fn div_by_difference(&self, a: usize, b: usize) -> Option<Self> {
        assert!(a != b && self.is_polynomial());
        if self.is_zero() {
            return Some(Self::zero());
        }
        // Coefficients of powers of x_b, each free of x_b.
        let mut by_deg: BTreeMap<i32, Self> = BTreeMap::new();
        for (e, x) in &self.terms {
            let mut f = *e;
            let d = f[b];
            f[b] = 0;
            by_deg.entry(d).or_default().add_term(f, x.clone());
        }
        let top = *by_deg.keys().next_back().unwrap();
        let mut xa = [0; N];
        xa[a] = 1;
        let mut quotient = Self::zero();
        // q_{j-1} = p_j + x_a q_j, remainder p_0 + x_a q_0.
        let mut carry = Self::zero();
        for j in (0..=top).rev() {
            let pj = by_deg.remove(&j).unwrap_or_default();
            let next = &pj + &carry.shift(xa);
            if j == 0 {
                if !next.is_zero() {
                    return None;
                }
            } else {
                let mut eb = [0; N];
                eb[b] = j - 1;
                quotient += &next.shift(eb);
                carry = next;
            }
        }
        Some(quotient)
    }

    pub fn display_with(&self, names: &[&str; N]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (e, x)) in self.terms.iter().enumerate() {
            let mut mono = Vec::new();
            for i in 0..N {
                match e[i] {
                    0 => {}
                    1 => mono.push(names[i].to_string()),
                    d => mono.push(format!("{}^{}", names[i], d)),
                }
            }
            let neg = x < &Rat::zero();
            let mag = if neg { -x.clone() } else { x.clone() };
            if k > 0 {
                out.push_str(if neg { " - " } else { " + " });
            } else if neg {
                out.push('-');
            }
            if mono.is_empty() {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&mono.join("*"));
            } else {
                out.push_str(&format!("{}*{}", mag, mono.join("*")));
            }
        }
        out
    }
}

impl LaurentPoly<1> {
    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            acc += c * pow_rat(x, e[0]);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            if e[0] != 0 {
                out.add_term([e[0] - 1], c * Rat::from_integer(e[0].into()));
            }
        }
        out
    }

    /// Polynomial in one variable from ascending coefficients.
    pub fn from_coeffs(coeffs: &[Rat]) -> Self {
        let mut p = Self::zero();
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term([i as i32], c.clone());
        }
        p
    }

    pub fn degree(&self) -> Option<i32> {
        self.max_exp(0)
    }
}

fn pow_rat(x: &Rat, e: i32) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..e.unsigned_abs() {
        acc *= x;
    }
    if e < 0 {
        acc.recip()
    } else {
        acc
    }
}

impl<const N: usize> AddAssign<&LaurentPoly<N>> for LaurentPoly<N> {
    fn add_assign(&mut self, rhs: &LaurentPoly<N>) {
        for (e, x) in &rhs.terms {
            self.add_term(*e, x.clone());
        }
    }
}

impl<const N: usize> SubAssign<&LaurentPoly<N>> for LaurentPoly<N> {
    fn sub_assign(&mut self, rhs: &LaurentPoly<N>) {
        for (e, x) in &rhs.terms {
            self.add_term(*e, -x.clone());
        }
    }
}

impl<const N: usize> Add for &LaurentPoly<N> {
    type Output = LaurentPoly<N>;
    fn add(self, rhs: Self) -> LaurentPoly<N> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<const N: usize> Sub for &LaurentPoly<N> {
    type Output = LaurentPoly<N>;
    fn sub(self, rhs: Self) -> LaurentPoly<N> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<const N: usize> Neg for &LaurentPoly<N> {
    type Output = LaurentPoly<N>;
    fn neg(self) -> LaurentPoly<N> {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, x)| (*e, -x.clone())).collect(),
        }
    }
}

impl<const N: usize> Mul for &LaurentPoly<N> {
    type Output = LaurentPoly<N>;
    fn mul(self, rhs: Self) -> LaurentPoly<N> {
        let mut out = LaurentPoly::zero();
        for (ea, xa) in &self.terms {
            for (eb, xb) in &rhs.terms {
                let mut e = *ea;
                for i in 0..N {
                    e[i] += eb[i];
                }
                out.add_term(e, xa * xb);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::int;

    fn u() -> Poly2 {
        Poly2::var(0)
    }
    fn v() -> Poly2 {
        Poly2::var(1)
    }

    #[test]
    fn arithmetic_cancels_to_canonical_zero() {
        let p = &(&u() + &v()) * &(&u() - &v());
        let q = &(&u() * &u()) - &(&v() * &v());
        assert_eq!(p, q);
        assert!((&p - &q).is_zero());
    }

    #[test]
    fn divide_by_difference() {
        // (v^3 - u^3) / (v - u) = v^2 + uv + u^2
        let num = &v().pow(3) - &u().pow(3);
        let q = num.div_by_difference(0, 1).unwrap();
        let expect = &(&v().pow(2) + &(&u() * &v())) + &u().pow(2);
        assert_eq!(q, expect);
        assert!((&u() + &v()).div_by_difference(0, 1).is_none());
    }

    #[test]
    fn substitution_is_affine_composition() {
        // (1 - uv) at u -> 2u - 1, v -> 2v - 1
        let p = &Poly2::one() - &(&u() * &v());
        let two_u = &u().scale(&int(2)) - &Poly2::one();
        let two_v = &v().scale(&int(2)) - &Poly2::one();
        let s = p.substitute(&[two_u, two_v]);
        let expect = &(&u().scale(&int(2)) + &v().scale(&int(2))) - &(&u() * &v()).scale(&int(4));
        assert_eq!(s, expect);
    }

    #[test]
    fn univariate_eval_and_derivative() {
        let p = Poly1::from_coeffs(&[int(1), int(-2), int(1)]);
        assert_eq!(p.eval(&int(1)), int(0));
        assert_eq!(p.derivative(), Poly1::from_coeffs(&[int(-2), int(2)]));
    }

    #[test]
    fn display() {
        let p = &u().scale(&int(-3)) + &Poly2::one();
        assert_eq!(p.display_with(&["u", "v"]), "1 - 3*u");
    }
}
