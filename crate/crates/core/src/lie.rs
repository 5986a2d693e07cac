//! `sl_n` in Chevalley–Weyl form with the trace form, and the constant
//! tensors built from it: the Casimir element, the Drinfeld–Jimbo r-matrix,
//! the two-point family `r_{c1,c2}` and the classical Yang–Baxter map.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg;
use crate::rat::{frac, Rat};

/// A positive root `ε_i − ε_j` of `sl_n`, with `i < j` (zero-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root {
    pub i: usize,
    pub j: usize,
}

impl Root {
    pub fn height(&self) -> usize {
        self.j - self.i
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.i + 1, self.j + 1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisKind {
    E(usize),
    F(usize),
    H(usize),
}

/// Structure data of `sl_n`.
///
/// Basis order: `E(α)` for every positive root (by height, then position),
/// then `F(α)` in the same order, then `H(1..rank)`. The invariant form is
/// `B(x, y) = tr(xy)`, so `B(e_α, e_{−α}) = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct LieAlgebraData {
    n: usize,
    positive_roots: Vec<Root>,
    labels: Vec<String>,
    structure: Vec<Vec<(usize, Rat)>>,
    gram: Vec<Vec<Rat>>,
    gram_inv: Vec<Vec<Rat>>,
}

type Matrix = BTreeMap<(usize, usize), Rat>;

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let mut out = Matrix::new();
    for ((i, k), x) in a {
        for ((k2, j), y) in b {
            if k == k2 {
                let e = out.entry((*i, *j)).or_insert_with(Rat::zero);
                *e += x * y;
            }
        }
    }
    out.retain(|_, x| !x.is_zero());
    out
}

/// Builds `sl_n` in its defining representation.
pub fn build_sl(n: usize) -> Result<LieAlgebraData> {
    if n < 2 {
        return Err(Error::InvalidRank(format!("sl_n needs n >= 2, got {n}")));
    }
    let mut roots: Vec<Root> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| Root { i, j }))
        .collect();
    roots.sort_by_key(|r| (r.height(), r.i));

    let mut mats: Vec<Matrix> = Vec::new();
    let mut labels = Vec::new();
    for r in &roots {
        mats.push([((r.i, r.j), Rat::one())].into_iter().collect());
        labels.push(format!("E({r})"));
    }
    for r in &roots {
        mats.push([((r.j, r.i), Rat::one())].into_iter().collect());
        labels.push(format!("F({r})"));
    }
    for k in 0..n - 1 {
        mats.push([((k, k), Rat::one()), ((k + 1, k + 1), -Rat::one())].into_iter().collect());
        labels.push(format!("H({})", k + 1));
    }
    let dim = mats.len();
    let root_index: BTreeMap<(usize, usize), usize> =
        roots.iter().enumerate().map(|(a, r)| ((r.i, r.j), a)).collect();
    let nroots = roots.len();

    // Coordinates of a traceless matrix in the basis above.
    let decompose = |m: &Matrix| -> Vec<(usize, Rat)> {
        let mut out = Vec::new();
        let mut diag = vec![Rat::zero(); n];
        for ((i, j), x) in m {
            if i == j {
                diag[*i] = x.clone();
            } else if i < j {
                out.push((root_index[&(*i, *j)], x.clone()));
            } else {
                out.push((nroots + root_index[&(*j, *i)], x.clone()));
            }
        }
        let mut partial = Rat::zero();
        for (k, d) in diag.iter().take(n - 1).enumerate() {
            partial += d;
            if !partial.is_zero() {
                out.push((2 * nroots + k, partial.clone()));
            }
        }
        out.sort_by_key(|(k, _)| *k);
        out
    };

    let mut structure = vec![Vec::new(); dim * dim];
    let mut gram = vec![vec![Rat::zero(); dim]; dim];
    for a in 0..dim {
        for b in 0..dim {
            let ab = mat_mul(&mats[a], &mats[b]);
            let ba = mat_mul(&mats[b], &mats[a]);
            let mut comm = ab.clone();
            for (k, x) in &ba {
                let e = comm.entry(*k).or_insert_with(Rat::zero);
                *e -= x;
            }
            comm.retain(|_, x| !x.is_zero());
            structure[a * dim + b] = decompose(&comm);
            gram[a][b] = ab
                .iter()
                .filter(|((i, j), _)| i == j)
                .fold(Rat::zero(), |acc, (_, x)| acc + x);
        }
    }
    let gram_inv = linalg::invert(&gram).expect("trace form on sl_n is nondegenerate");
    Ok(LieAlgebraData {
        n,
        positive_roots: roots,
        labels,
        structure,
        gram,
        gram_inv,
    })
}

impl LieAlgebraData {
    pub fn matrix_size(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.n - 1
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn kind(&self, i: usize) -> BasisKind {
        let p = self.positive_roots.len();
        if i < p {
            BasisKind::E(i)
        } else if i < 2 * p {
            BasisKind::F(i - p)
        } else {
            BasisKind::H(i - 2 * p)
        }
    }

    /// Index of `e_α` for the `a`-th positive root.
    pub fn e(&self, a: usize) -> usize {
        a
    }

    /// Index of `e_{−α}` for the `a`-th positive root.
    pub fn f(&self, a: usize) -> usize {
        self.positive_roots.len() + a
    }

    /// Index of the simple coroot `H(k+1)`.
    pub fn h(&self, k: usize) -> usize {
        2 * self.positive_roots.len() + k
    }

    /// `h_α = [e_α, e_{−α}]`.
    pub fn h_alpha(&self, a: usize) -> GElement {
        bracket(self, &GElement::basis(self.e(a)), &GElement::basis(self.f(a)))
    }

    /// `[b_i, b_j]` as a sparse list of basis coefficients.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[(usize, Rat)] {
        &self.structure[i * self.dim() + j]
    }

    pub fn form_basis(&self, i: usize, j: usize) -> &Rat {
        &self.gram[i][j]
    }

    pub fn gram(&self) -> &[Vec<Rat>] {
        &self.gram
    }

    /// Entry `(i, j)` of the inverse Gram matrix: `b^i = Σ_j inv[i][j] b_j`.
    pub fn dual_coeff(&self, i: usize, j: usize) -> &Rat {
        &self.gram_inv[i][j]
    }

    /// `B(x, y)` extended bilinearly.
    pub fn form(&self, x: &GElement, y: &GElement) -> Rat {
        let mut acc = Rat::zero();
        for (i, a) in &x.coeffs {
            for (j, b) in &y.coeffs {
                let g = &self.gram[*i][*j];
                if !g.is_zero() {
                    acc += a * b * g;
                }
            }
        }
        acc
    }

    /// The B-dual `b^i` of basis vector `i`.
    pub fn dual_vector(&self, i: usize) -> GElement {
        let mut out = GElement::zero();
        for j in 0..self.dim() {
            out.add_term(j, self.gram_inv[i][j].clone());
        }
        out
    }
}

/// An element of `g`, sparse in the basis.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GElement {
    pub(crate) coeffs: BTreeMap<usize, Rat>,
}

impl GElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(i: usize) -> Self {
        Self::term(i, Rat::one())
    }

    pub fn term(i: usize, c: Rat) -> Self {
        let mut g = Self::zero();
        g.add_term(i, c);
        g
    }

    pub fn add_term(&mut self, i: usize, c: Rat) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(i).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&i);
        }
    }

    pub fn add_scaled(&mut self, other: &GElement, c: &Rat) {
        for (i, x) in &other.coeffs {
            self.add_term(*i, x * c);
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn plus(&self, other: &GElement) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &Rat::one());
        out
    }

    pub fn minus(&self, other: &GElement) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &-Rat::one());
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(&i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rat)> {
        self.coeffs.iter().map(|(i, c)| (*i, c))
    }
}

pub fn bracket(alg: &LieAlgebraData, x: &GElement, y: &GElement) -> GElement {
    let mut out = GElement::zero();
    for (i, a) in &x.coeffs {
        for (j, b) in &y.coeffs {
            let ab = a * b;
            for (k, c) in alg.bracket_basis(*i, *j) {
                out.add_term(*k, &ab * c);
            }
        }
    }
    out
}

/// Element of `g ⊗ g` with constant coefficients.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct ConstTensor2 {
    pub(crate) entries: BTreeMap<(usize, usize), Rat>,
}

impl ConstTensor2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, i: usize, j: usize, c: Rat) {
        if c.is_zero() {
            return;
        }
        let e = self.entries.entry((i, j)).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            self.entries.remove(&(i, j));
        }
    }

    /// `x ⊗ y`
    pub fn tensor(x: &GElement, y: &GElement) -> Self {
        let mut t = Self::zero();
        for (i, a) in &x.coeffs {
            for (j, b) in &y.coeffs {
                t.add_term(*i, *j, a * b);
            }
        }
        t
    }

    /// `x ∧ y = x ⊗ y − y ⊗ x`
    pub fn wedge(x: &GElement, y: &GElement) -> Self {
        Self::tensor(x, y).sub(&Self::tensor(y, x))
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), &Rat)> {
        self.entries.iter().map(|(k, v)| (*k, v))
    }

    pub fn get(&self, i: usize, j: usize) -> Rat {
        self.entries.get(&(i, j)).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((i, j), c) in &other.entries {
            out.add_term(*i, *j, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn scale(&self, c: &Rat) -> Self {
        let mut out = Self::zero();
        for ((i, j), x) in &self.entries {
            out.add_term(*i, *j, x * c);
        }
        out
    }

    /// `r^{21}`
    pub fn swap(&self) -> Self {
        Self {
            entries: self.entries.iter().map(|((i, j), c)| ((*j, *i), c.clone())).collect(),
        }
    }

    /// `[x ⊗ 1 + 1 ⊗ x, self]`
    pub fn ad_diagonal(&self, alg: &LieAlgebraData, x: &GElement) -> Self {
        let mut out = Self::zero();
        for ((i, j), c) in &self.entries {
            for (b, xb) in &x.coeffs {
                let k = c * xb;
                for (m, s) in alg.bracket_basis(*b, *i) {
                    out.add_term(*m, *j, &k * s);
                }
                for (m, s) in alg.bracket_basis(*b, *j) {
                    out.add_term(*i, *m, &k * s);
                }
            }
        }
        out
    }
}

/// Element of `g ⊗ g ⊗ g` with constant coefficients.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConstTensor3 {
    pub(crate) entries: BTreeMap<(usize, usize, usize), Rat>,
}

impl ConstTensor3 {
    pub fn add_term(&mut self, i: usize, j: usize, k: usize, c: Rat) {
        if c.is_zero() {
            return;
        }
        let e = self.entries.entry((i, j, k)).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            self.entries.remove(&(i, j, k));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize, usize), &Rat)> {
        self.entries.iter().map(|(k, v)| (*k, v))
    }
}

/// `Ω = Σ_i b_i ⊗ b^i`.
pub fn casimir(alg: &LieAlgebraData) -> ConstTensor2 {
    let mut t = ConstTensor2::zero();
    for i in 0..alg.dim() {
        for j in 0..alg.dim() {
            t.add_term(i, j, alg.dual_coeff(i, j).clone());
        }
    }
    t
}

/// `Σ_{α>0} e_α ∧ e_{−α}`.
pub fn positive_wedge_sum(alg: &LieAlgebraData) -> ConstTensor2 {
    let mut t = ConstTensor2::zero();
    for a in 0..alg.positive_roots().len() {
        t = t.add(&ConstTensor2::wedge(
            &GElement::basis(alg.e(a)),
            &GElement::basis(alg.f(a)),
        ));
    }
    t
}

/// `r_DJ = ½ (Σ_{α>0} e_α ∧ e_{−α} + Ω)`.
pub fn r_dj(alg: &LieAlgebraData) -> ConstTensor2 {
    positive_wedge_sum(alg).add(&casimir(alg)).scale(&frac(1, 2))
}

/// The two-point constant part. On `sl_2` this is
/// `c1 f⊗e + c2 e⊗f + (c1+c2)/4 h⊗h`; in higher rank it is
/// `c1 Ω − (c1 − c2) r_DJ`, which agrees with that formula at rank one.
pub fn r_c1c2(alg: &LieAlgebraData, c1: &Rat, c2: &Rat) -> Result<ConstTensor2> {
    if c1 == c2 || c1.is_zero() || c2.is_zero() {
        return Err(Error::InvalidParameter(format!(
            "two-point constants must be distinct and nonzero, got {c1}, {c2}"
        )));
    }
    if alg.rank() == 1 {
        let (e, f, h) = (alg.e(0), alg.f(0), alg.h(0));
        let mut t = ConstTensor2::zero();
        t.add_term(f, e, c1.clone());
        t.add_term(e, f, c2.clone());
        t.add_term(h, h, (c1 + c2) * frac(1, 4));
        return Ok(t);
    }
    Ok(casimir(alg)
        .scale(c1)
        .sub(&r_dj(alg).scale(&(c1 - c2))))
}

/// The jordanian solution `h_α ∧ e_α` for the `a`-th positive root.
pub fn jordanian(alg: &LieAlgebraData, a: usize) -> ConstTensor2 {
    ConstTensor2::wedge(&alg.h_alpha(a), &GElement::basis(alg.e(a)))
}

/// `CYB(r) = [r12, r13] + [r12, r23] + [r13, r23]`.
pub fn cyb(alg: &LieAlgebraData, r: &ConstTensor2) -> ConstTensor3 {
    let mut out = ConstTensor3::default();
    for ((i, j), a) in &r.entries {
        for ((k, l), b) in &r.entries {
            let ab = a * b;
            // [r12, r13]: [b_i, b_k] ⊗ b_j ⊗ b_l
            for (m, s) in alg.bracket_basis(*i, *k) {
                out.add_term(*m, *j, *l, &ab * s);
            }
            // [r12, r23]: b_i ⊗ [b_j, b_k] ⊗ b_l
            for (m, s) in alg.bracket_basis(*j, *k) {
                out.add_term(*i, *m, *l, &ab * s);
            }
            // [r13, r23]: b_i ⊗ b_k ⊗ [b_j, b_l]
            for (m, s) in alg.bracket_basis(*j, *l) {
                out.add_term(*i, *k, *m, &ab * s);
            }
        }
    }
    out
}
