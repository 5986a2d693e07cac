//! The cobracket `δ(f) = [f(u) ⊗ 1 + 1 ⊗ f(v), r(u, v)]` on `g[u]` and exact
//! checks of the Lie bialgebra axioms on finite generator sets.

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lie::LieAlgebraData;
use crate::pairing::LoopElement;
use crate::poly::{Poly2, Poly3};
use crate::rat::Rat;
use crate::ratfun::{U, V};
use crate::rmatrix::{SpectralTensor2, TruncTensor2};

/// Element of `g[u] ⊗ g[v]`: first leg in `u`, second in `v`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PolyTensor2 {
    entries: BTreeMap<(usize, usize), Poly2>,
}

impl PolyTensor2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add_entry(&mut self, i: usize, j: usize, p: &Poly2) {
        if p.is_zero() {
            return;
        }
        let e = self.entries.entry((i, j)).or_default();
        *e += p;
        if e.is_zero() {
            self.entries.remove(&(i, j));
        }
    }

    pub fn get(&self, i: usize, j: usize) -> Poly2 {
        self.entries.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), &Poly2)> {
        self.entries.iter().map(|(k, v)| (*k, v))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((i, j), p) in other.entries() {
            out.add_entry(i, j, p);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((i, j), p) in other.entries() {
            out.add_entry(i, j, &-p);
        }
        out
    }

    /// `τ T(v, u)`
    pub fn swap_legs_and_vars(&self) -> Self {
        let mut out = Self::zero();
        for ((i, j), p) in self.entries() {
            out.add_entry(j, i, &p.map_exponents(|[a, b]| [b, a]));
        }
        out
    }
}

/// Element of `g ⊗ g ⊗ g` with polynomial entries in `(x1, x2, x3)`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PolyTensor3 {
    entries: BTreeMap<(usize, usize, usize), Poly3>,
}

impl PolyTensor3 {
    pub fn add_entry(&mut self, key: (usize, usize, usize), p: &Poly3) {
        if p.is_zero() {
            return;
        }
        let e = self.entries.entry(key).or_default();
        *e += p;
        if e.is_zero() {
            self.entries.remove(&key);
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize, usize), &Poly3)> {
        self.entries.iter().map(|(k, v)| (*k, v))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Moves the third leg, with its variable, to the front.
    pub fn cycle(&self) -> Self {
        let mut out = Self::default();
        for ((i, j, k), p) in self.entries() {
            out.add_entry((k, i, j), &p.map_exponents(|[a, b, c]| [c, a, b]));
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (key, p) in other.entries() {
            out.add_entry(key, p);
        }
        out
    }
}

fn check_polynomial_input(f: &LoopElement) -> Result<()> {
    if f.min_degree().unwrap_or(0) < 0 {
        return Err(Error::InvalidInput("cobracket arguments must lie in g[u]".into()));
    }
    Ok(())
}

/// `[f(u) ⊗ 1 + 1 ⊗ f(v), T]` for a tensor with `(u, v)` entries.
pub fn act(alg: &LieAlgebraData, f: &LoopElement, t: &PolyTensor2) -> PolyTensor2 {
    let mut out = PolyTensor2::zero();
    for (b, p) in f.components() {
        let pu = p.map_exponents(|[e]| [e, 0]);
        let pv = p.map_exponents(|[e]| [0, e]);
        for ((i, j), q) in t.entries() {
            let left = &pu * q;
            for (m, s) in alg.bracket_basis(b, i) {
                out.add_entry(*m, j, &left.scale(s));
            }
            let right = &pv * q;
            for (m, s) in alg.bracket_basis(b, j) {
                out.add_entry(i, *m, &right.scale(s));
            }
        }
    }
    out
}

/// `δ(f)`, certified polynomial.
pub fn delta(alg: &LieAlgebraData, r: &SpectralTensor2, f: &LoopElement) -> Result<PolyTensor2> {
    check_polynomial_input(f)?;
    let k = r.den_power();
    let mut numer = PolyTensor2::zero();
    for ((i, j), entry) in r.entries() {
        numer.add_entry(i, j, &entry.numerator_at(k));
    }
    let cleared = act(alg, f, &numer);
    let mut out = PolyTensor2::zero();
    for ((i, j), p) in cleared.entries() {
        let mut q = p.clone();
        for _ in 0..k {
            q = q.div_by_difference(U, V).ok_or_else(|| {
                Error::NotPolynomial(format!(
                    "entry ({}, {}) keeps a pole on u = v",
                    alg.label(i),
                    alg.label(j)
                ))
            })?;
        }
        out.add_entry(i, j, &q);
    }
    Ok(out)
}

/// `δ(f)` from a truncated series for `r`, exact on `u`-degrees `0..=max_u`.
pub fn delta_truncated(
    alg: &LieAlgebraData,
    series: &TruncTensor2,
    f: &LoopElement,
    max_u: u32,
) -> Result<PolyTensor2> {
    check_polynomial_input(f)?;
    let mut t = PolyTensor2::zero();
    for ((i, j), p) in series.entries() {
        t.add_entry(i, j, p);
    }
    let full = act(alg, f, &t);
    let mut out = PolyTensor2::zero();
    for ((i, j), p) in full.entries() {
        out.add_entry(i, j, &p.filter(|e| e[U] <= max_u as i32));
    }
    Ok(out)
}

/// Cobracket with per-monomial memoization.
pub struct Cobracket<'a> {
    alg: &'a LieAlgebraData,
    r: &'a SpectralTensor2,
    cache: Mutex<HashMap<(usize, i32), PolyTensor2>>,
}

impl<'a> Cobracket<'a> {
    pub fn new(alg: &'a LieAlgebraData, r: &'a SpectralTensor2) -> Self {
        Self {
            alg,
            r,
            cache: Mutex::new(HashMap::new()),
        }
    }

    fn monomial(&self, b: usize, k: i32) -> Result<PolyTensor2> {
        if let Some(t) = self.cache.lock().unwrap().get(&(b, k)) {
            return Ok(t.clone());
        }
        let t = delta(self.alg, self.r, &LoopElement::monomial(b, k, Rat::one()))?;
        self.cache.lock().unwrap().insert((b, k), t.clone());
        Ok(t)
    }

    pub fn delta(&self, f: &LoopElement) -> Result<PolyTensor2> {
        check_polynomial_input(f)?;
        let mut out = PolyTensor2::zero();
        for (b, k, c) in f.monomials() {
            for ((i, j), p) in self.monomial(b, k)?.entries() {
                out.add_entry(i, j, &p.scale(c));
            }
        }
        Ok(out)
    }

    /// `δ(f)(u, v) + τ δ(f)(v, u) = 0`
    pub fn check_skew(&self, f: &LoopElement) -> Result<bool> {
        let d = self.delta(f)?;
        Ok(d.add(&d.swap_legs_and_vars()).is_zero())
    }

    /// `δ([f, g]) = f · δ(g) − g · δ(f)`
    pub fn check_cocycle(&self, f: &LoopElement, g: &LoopElement) -> Result<bool> {
        let lhs = self.delta(&f.bracket(self.alg, g))?;
        let rhs = act(self.alg, f, &self.delta(g)?).sub(&act(self.alg, g, &self.delta(f)?));
        Ok(lhs == rhs)
    }

    /// `(δ ⊗ id) δ(f)` in variables `(x1, x2, x3)`.
    pub fn iterate(&self, f: &LoopElement) -> Result<PolyTensor3> {
        let first = self.delta(f)?;
        let mut out = PolyTensor3::default();
        for ((i, j), p) in first.entries() {
            for (e, c) in p.terms() {
                let inner = self.monomial(i, e[U])?;
                for ((a, b), q) in inner.entries() {
                    let lifted = q.map_exponents(|[x, y]| [x, y, e[V]]).scale(c);
                    out.add_entry((a, b, j), &lifted);
                }
            }
        }
        Ok(out)
    }

    /// Cyclic sum of `(δ ⊗ id) δ(f)` vanishes.
    pub fn check_cojacobi(&self, f: &LoopElement) -> Result<bool> {
        let x = self.iterate(f)?;
        let once = x.cycle();
        let twice = once.cycle();
        Ok(x.add(&once).add(&twice).is_zero())
    }
}

/// `δ(f)(u, v) + τ δ(f)(v, u) = 0`
pub fn check_skew(alg: &LieAlgebraData, r: &SpectralTensor2, f: &LoopElement) -> Result<bool> {
    Cobracket::new(alg, r).check_skew(f)
}

pub fn check_cocycle(
    alg: &LieAlgebraData,
    r: &SpectralTensor2,
    f: &LoopElement,
    g: &LoopElement,
) -> Result<bool> {
    Cobracket::new(alg, r).check_cocycle(f, g)
}

pub fn check_cojacobi(alg: &LieAlgebraData, r: &SpectralTensor2, f: &LoopElement) -> Result<bool> {
    let deg = f.max_degree().unwrap_or(0);
    if deg > 3 {
        return Err(Error::InvalidInput(format!(
            "co-Jacobi check is limited to degree 3, got {deg}"
        )));
    }
    Cobracket::new(alg, r).check_cojacobi(f)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AxiomCheck {
    Polynomial,
    Skew,
    Cocycle,
    CoJacobi,
}

/// One line of an axiom sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub family: String,
    pub element: String,
    pub check: AxiomCheck,
    pub pass: bool,
}

fn monomial_label(alg: &LieAlgebraData, b: usize, k: i32) -> String {
    format!("{}*u^{k}", alg.label(b))
}

/// Runs every axiom on the canonical basis of `g[u]` up to `max_degree`.
/// Cocycle pairs range over the same basis. Families are checked in parallel.
pub fn axiom_sweep(
    alg: &LieAlgebraData,
    families: &[(String, SpectralTensor2)],
    max_degree: u32,
) -> Vec<SweepRecord> {
    families
        .par_iter()
        .flat_map_iter(|(name, r)| sweep_family(alg, name, r, max_degree))
        .collect()
}

fn sweep_family(alg: &LieAlgebraData, name: &str, r: &SpectralTensor2, max_degree: u32) -> Vec<SweepRecord> {
    let ctx = Cobracket::new(alg, r);
    let basis: Vec<(usize, i32)> = (0..=max_degree as i32)
        .flat_map(|k| (0..alg.dim()).map(move |b| (b, k)))
        .collect();
    let record = |element: String, check, pass| SweepRecord {
        family: name.to_string(),
        element,
        check,
        pass,
    };
    let mut out = Vec::new();
    let mut polynomial = true;
    for &(b, k) in &basis {
        let f = LoopElement::monomial(b, k, Rat::one());
        let label = monomial_label(alg, b, k);
        let ok = ctx.delta(&f).is_ok();
        polynomial &= ok;
        out.push(record(label.clone(), AxiomCheck::Polynomial, ok));
        if !ok {
            continue;
        }
        out.push(record(label.clone(), AxiomCheck::Skew, ctx.check_skew(&f).unwrap_or(false)));
        out.push(record(label, AxiomCheck::CoJacobi, ctx.check_cojacobi(&f).unwrap_or(false)));
    }
    if !polynomial {
        return out;
    }
    for (n, &(b1, k1)) in basis.iter().enumerate() {
        for &(b2, k2) in &basis[n + 1..] {
            let f = LoopElement::monomial(b1, k1, Rat::one());
            let g = LoopElement::monomial(b2, k2, Rat::one());
            let pass = ctx.check_cocycle(&f, &g).unwrap_or(false);
            out.push(record(
                format!("{}, {}", monomial_label(alg, b1, k1), monomial_label(alg, b2, k2)),
                AxiomCheck::Cocycle,
                pass,
            ));
        }
    }
    out
}
