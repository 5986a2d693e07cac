//! Spectral r-matrices `r(u, v)` for the legal cases: closed forms, the
//! dual-basis series, and the spectral Yang–Baxter and unitarity checks.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;

use crate::error::{Error, Result};
use crate::lagrangian::{dual_basis, WPresentation};
use crate::lie::{casimir, cyb, r_dj, ConstTensor2, LieAlgebraData};
use crate::pairing::{AForm, CaseSpec, DoubleType};
use crate::poly::{Poly2, Poly3};
use crate::rat::Rat;
use crate::ratfun::{BivarRat, U, V};

/// `Σ b_i ⊗ b_j · f_ij(u, v)`, every `f_ij` with denominator a power of `v − u`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SpectralTensor2 {
    entries: BTreeMap<(usize, usize), BivarRat>,
}

impl SpectralTensor2 {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `f(u, v) · t`
    pub fn from_scalar(f: &BivarRat, t: &ConstTensor2) -> Self {
        let mut out = Self::zero();
        for ((i, j), c) in t.entries() {
            out.add_entry(i, j, &f.scale(c));
        }
        out
    }

    pub fn constant(t: &ConstTensor2) -> Self {
        Self::from_scalar(&BivarRat::constant(Rat::one()), t)
    }

    pub fn add_entry(&mut self, i: usize, j: usize, f: &BivarRat) {
        if f.is_zero() {
            return;
        }
        let sum = match self.entries.get(&(i, j)) {
            Some(e) => e.add(f),
            None => f.clone(),
        };
        if sum.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), sum);
        }
    }

    pub fn get(&self, i: usize, j: usize) -> BivarRat {
        self.entries.get(&(i, j)).cloned().unwrap_or_else(BivarRat::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), &BivarRat)> {
        self.entries.iter().map(|(k, v)| (*k, v))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Largest power of `v − u` left in any entry.
    pub fn den_power(&self) -> u32 {
        self.entries.values().map(BivarRat::den_power).max().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((i, j), f) in other.entries() {
            out.add_entry(i, j, f);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn scale(&self, c: &Rat) -> Self {
        let mut out = Self::zero();
        for ((i, j), f) in self.entries() {
            out.add_entry(i, j, &f.scale(c));
        }
        out
    }

    /// `τ r(v, u)`: legs and variables swapped together.
    pub fn swap_legs_and_vars(&self) -> Self {
        let mut out = Self::zero();
        for ((i, j), f) in self.entries() {
            out.add_entry(j, i, &f.swap_vars());
        }
        out
    }

    /// Applies `g` to every entry.
    pub fn map_entries(&self, mut g: impl FnMut(&BivarRat) -> Result<BivarRat>) -> Result<Self> {
        let mut out = Self::zero();
        for ((i, j), f) in self.entries() {
            out.add_entry(i, j, &g(f)?);
        }
        Ok(out)
    }
}

/// Which constant Yang–Baxter setting a tensor belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RKindTag {
    /// `r + r^{21} = Ω`, `CYB(r) = 0`
    Mcybe,
    /// `r + r^{21} = 0`, `CYB(r) = 0`
    SkewCybe,
}

impl fmt::Display for RKindTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RKindTag::Mcybe => write!(f, "MCYBE"),
            RKindTag::SkewCybe => write!(f, "skew CYBE"),
        }
    }
}

/// A constant tensor together with its verified Yang–Baxter setting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RKind {
    tag: RKindTag,
    value: ConstTensor2,
}

impl RKind {
    pub fn new(alg: &LieAlgebraData, tag: RKindTag, value: ConstTensor2) -> Result<Self> {
        let sym = value.add(&value.swap());
        let sym_ok = match tag {
            RKindTag::Mcybe => sym == casimir(alg),
            RKindTag::SkewCybe => sym.is_zero(),
        };
        if !sym_ok {
            return Err(Error::InvalidInput(match tag {
                RKindTag::Mcybe => "constant part must satisfy r + r21 = Omega".into(),
                RKindTag::SkewCybe => "constant part must be skew-symmetric".into(),
            }));
        }
        if !cyb(alg, &value).is_zero() {
            return Err(Error::InvalidInput(
                "constant part does not solve the classical Yang-Baxter equation".into(),
            ));
        }
        Ok(Self { tag, value })
    }

    pub fn mcybe(alg: &LieAlgebraData, value: ConstTensor2) -> Result<Self> {
        Self::new(alg, RKindTag::Mcybe, value)
    }

    pub fn skew(alg: &LieAlgebraData, value: ConstTensor2) -> Result<Self> {
        Self::new(alg, RKindTag::SkewCybe, value)
    }

    /// Picks the tag from the symmetric part.
    pub fn classify(alg: &LieAlgebraData, value: ConstTensor2) -> Result<Self> {
        if value.add(&value.swap()).is_zero() {
            Self::skew(alg, value)
        } else {
            Self::mcybe(alg, value)
        }
    }

    pub fn tag(&self) -> RKindTag {
        self.tag
    }

    pub fn value(&self) -> &ConstTensor2 {
        &self.value
    }
}

/// The numerator over `v − u` multiplying `Ω`, the sign on the constant part
/// and the required kind, per family.
fn family_shape(spec: &CaseSpec) -> Result<(Poly2, i64, RKindTag)> {
    let u = Poly2::var(U);
    let v = Poly2::var(V);
    let one = Poly2::one();
    let c = |x: &Rat| Poly2::constant(x.clone());
    Ok(match (spec.double_type, &spec.a_form) {
        (DoubleType::I, AForm::TwoPoints(c1, c2)) => {
            // 1 − c1 v − c2 u + c1 c2 u v
            let num = &(&one - &(&c(c1) * &v)) - &(&c(c2) * &u);
            let num = &num + &(&c(&(c1 * c2)) * &(&u * &v));
            (num, 1, RKindTag::Mcybe)
        }
        (DoubleType::I, AForm::DoublePole) => (&(&u - &one) * &(&v - &one), 1, RKindTag::SkewCybe),
        (DoubleType::I, AForm::SimplePole) => (&one - &u, -1, RKindTag::Mcybe),
        (DoubleType::I, AForm::Constant) => (one, 1, RKindTag::SkewCybe),
        (DoubleType::II, AForm::SimplePole) => (&u * &(&one - &v), 1, RKindTag::Mcybe),
        (DoubleType::II, AForm::Constant) => (v, -1, RKindTag::Mcybe),
        (DoubleType::III, AForm::Constant) => (&u * &v, 1, RKindTag::SkewCybe),
        _ => {
            return Err(Error::RejectedCase(format!("{spec} has no closed-form r-matrix")));
        }
    })
}

/// The constant kind each family accepts.
pub fn required_kind(spec: &CaseSpec) -> Result<RKindTag> {
    crate::pairing::validate_case(spec).map_err(|r| Error::RejectedCase(r.reason))?;
    Ok(family_shape(spec)?.2)
}

/// Closed-form `r(u, v) = n(u, v)/(v − u) Ω ± r` for a legal case.
pub fn build_r(alg: &LieAlgebraData, spec: &CaseSpec, r: &RKind) -> Result<SpectralTensor2> {
    crate::pairing::validate_case(spec).map_err(|x| Error::RejectedCase(x.reason))?;
    let (num, sign, tag) = family_shape(spec)?;
    if tag != r.tag() {
        return Err(Error::KindMismatch(format!(
            "{spec} needs a {tag} constant part, got {}",
            r.tag()
        )));
    }
    let omega = casimir(alg);
    let scalar = BivarRat::new(num, &Rat::one(), 1)?;
    let mut constant = r.value().scale(&Rat::from_integer(sign.into()));
    if let AForm::TwoPoints(c1, c2) = &spec.a_form {
        constant = constant.scale(&(c1 - c2));
    }
    Ok(SpectralTensor2::from_scalar(&scalar, &omega).add(&SpectralTensor2::constant(&constant)))
}

/// The constant part that the catalog `W_0` of each family produces.
pub fn catalog_constant(alg: &LieAlgebraData, spec: &CaseSpec) -> Result<RKind> {
    let tag = required_kind(spec)?;
    match (spec.double_type, &spec.a_form) {
        (DoubleType::II, AForm::Constant) => RKind::mcybe(alg, r_dj(alg).swap()),
        _ if tag == RKindTag::Mcybe => RKind::mcybe(alg, r_dj(alg)),
        _ => RKind::skew(alg, ConstTensor2::zero()),
    }
}

/// A tensor with Laurent-polynomial entries in `(u, v)`, the output of series
/// truncations.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TruncTensor2 {
    entries: BTreeMap<(usize, usize), Poly2>,
}

impl TruncTensor2 {
    pub fn add_entry(&mut self, i: usize, j: usize, p: &Poly2) {
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
}

/// `Σ_{b, k ≤ N} b u^k ⊗ w_{b,k}(v)` with the finite summands dropped.
pub fn sum_dual_series(alg: &LieAlgebraData, w: &WPresentation, truncation: u32) -> Result<TruncTensor2> {
    let duals = dual_basis(alg, w, truncation)?;
    let mut out = TruncTensor2::default();
    for d in &duals {
        for (c, p) in d.element.loop_part.components() {
            let lifted = p.map_exponents(|[e]| [d.degree as i32, e]);
            out.add_entry(d.basis, c, &lifted);
        }
    }
    Ok(out)
}

/// Expansion of every entry in `|u| < |v|`, keeping `u`-degrees `0..=N`.
pub fn expand_region(r: &SpectralTensor2, truncation: u32) -> TruncTensor2 {
    let mut out = TruncTensor2::default();
    for ((i, j), f) in r.entries() {
        out.add_entry(i, j, &f.expand_region(truncation));
    }
    out
}

/// Tensor in `g ⊗ g ⊗ g` with entries `p(u, v, w) / ((v−u)(w−u)(w−v))^k`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SpectralTensor3 {
    pub entries: BTreeMap<(usize, usize, usize), Poly3>,
    pub den_power: u32,
}

impl SpectralTensor3 {
    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    fn add_entry(&mut self, key: (usize, usize, usize), p: &Poly3) {
        let e = self.entries.entry(key).or_default();
        *e += p;
        if e.is_zero() {
            self.entries.remove(&key);
        }
    }
}

fn diff3(a: usize, b: usize) -> Poly3 {
    &Poly3::var(b) - &Poly3::var(a)
}

/// `CYB(r)(u, v, w) = [r12(u,v), r13(u,w)] + [r12(u,v), r23(v,w)] + [r13(u,w), r23(v,w)]`,
/// with denominators cleared to `((v−u)(w−u)(w−v))^k`.
pub fn cyb_spectral(alg: &LieAlgebraData, r: &SpectralTensor2) -> SpectralTensor3 {
    let k = r.den_power();
    // Numerators over (x_b − x_a)^k with the legs placed on variables (a, b).
    let place = |a: usize, b: usize| -> BTreeMap<(usize, usize), Poly3> {
        r.entries()
            .map(|(ij, f)| (ij, f.numerator_at(k).map_exponents(|[x, y]| {
                let mut e = [0; 3];
                e[a] = x;
                e[b] = y;
                e
            })))
            .collect()
    };
    let (r12, r13, r23) = (place(0, 1), place(0, 2), place(1, 2));
    let (c12_13, c12_23, c13_23) = (diff3(1, 2).pow(k), diff3(0, 2).pow(k), diff3(0, 1).pow(k));

    let mut out = SpectralTensor3 {
        entries: BTreeMap::new(),
        den_power: k,
    };
    for ((i, j), a) in &r12 {
        for ((l, m), b) in &r13 {
            let prod = &(a * b) * &c12_13;
            for (s, c) in alg.bracket_basis(*i, *l) {
                out.add_entry((*s, *j, *m), &prod.scale(c));
            }
        }
        for ((l, m), b) in &r23 {
            let prod = &(a * b) * &c12_23;
            for (s, c) in alg.bracket_basis(*j, *l) {
                out.add_entry((*i, *s, *m), &prod.scale(c));
            }
        }
    }
    for ((i, j), a) in &r13 {
        for ((l, m), b) in &r23 {
            let prod = &(a * b) * &c13_23;
            for (s, c) in alg.bracket_basis(*j, *m) {
                out.add_entry((*i, *l, *s), &prod.scale(c));
            }
        }
    }
    out
}

/// `r(u, v) + τ r(v, u) = 0`.
pub fn skew_spectral_check(r: &SpectralTensor2) -> bool {
    r.add(&r.swap_legs_and_vars()).is_zero()
}
