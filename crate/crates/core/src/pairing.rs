//! The invariant forms on the three classical doubles and the degree
//! constraints on `1/a(u)` that decide which doubles admit which `a(u)`.
//!
//! * type I: `g((u))`, `Q(f1, f2) = Res_{u=0} B(f1, f2) a(u)`
//! * type II: `g((u)) ⊕ g`, `Q = Res u^{-1} a B(f1, f2) − B(x1, x2)`
//! * type III: `g((u)) ⊕ (g + εg)`,
//!   `Q = Res u^{-2} a B(f1, f2) − B(x3, y2) − B(x2, y3)`

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lie::{bracket, GElement, LieAlgebraData};
use crate::poly::Poly1;
use crate::rat::{self, Rat};
use crate::ratfun::{residue, RatFun1};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DoubleType {
    I,
    II,
    III,
}

impl fmt::Display for DoubleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DoubleType::I => "I",
            DoubleType::II => "II",
            DoubleType::III => "III",
        })
    }
}

impl FromStr for DoubleType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "I" => Ok(DoubleType::I),
            "II" => Ok(DoubleType::II),
            "III" => Ok(DoubleType::III),
            other => Err(Error::Parse(format!("unknown double type {other:?}"))),
        }
    }
}

/// Canonical shapes of `a(u)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum AForm {
    /// `1/((1 − c1 u)(1 − c2 u))`
    TwoPoints(Rat, Rat),
    /// `1/(1 − u)^2`
    DoublePole,
    /// `1/(1 − u)`
    SimplePole,
    /// `1`
    Constant,
}

impl AForm {
    /// Degree of the polynomial `1/a(u)`.
    pub fn inverse_degree(&self) -> u32 {
        match self {
            AForm::TwoPoints(..) | AForm::DoublePole => 2,
            AForm::SimplePole => 1,
            AForm::Constant => 0,
        }
    }

    pub fn a_function(&self) -> RatFun1 {
        let lin = |c: &Rat| Poly1::from_coeffs(&[Rat::one(), -c.clone()]);
        let den = match self {
            AForm::TwoPoints(c1, c2) => &lin(c1) * &lin(c2),
            AForm::DoublePole => lin(&Rat::one()).pow(2),
            AForm::SimplePole => lin(&Rat::one()),
            AForm::Constant => Poly1::one(),
        };
        RatFun1::reciprocal_of(den).expect("nonzero denominator")
    }
}

/// Double type together with the canonical `a(u)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CaseSpec {
    pub double_type: DoubleType,
    pub a_form: AForm,
}

impl CaseSpec {
    pub fn new(double_type: DoubleType, a_form: AForm) -> Self {
        Self { double_type, a_form }
    }

    /// The seven legal combinations, in a fixed order.
    pub fn families() -> Vec<CaseSpec> {
        vec![
            CaseSpec::new(DoubleType::I, AForm::TwoPoints(Rat::one(), rat::int(2))),
            CaseSpec::new(DoubleType::I, AForm::DoublePole),
            CaseSpec::new(DoubleType::I, AForm::SimplePole),
            CaseSpec::new(DoubleType::I, AForm::Constant),
            CaseSpec::new(DoubleType::II, AForm::SimplePole),
            CaseSpec::new(DoubleType::II, AForm::Constant),
            CaseSpec::new(DoubleType::III, AForm::Constant),
        ]
    }
}

impl fmt::Display for CaseSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.double_type)?;
        match &self.a_form {
            AForm::TwoPoints(c1, c2) => write!(f, "two-points:{},{}", c1, c2),
            AForm::DoublePole => f.write_str("double-pole"),
            AForm::SimplePole => f.write_str("simple-pole"),
            AForm::Constant => f.write_str("constant"),
        }
    }
}

impl FromStr for CaseSpec {
    type Err = Error;

    /// `"I:two-points:1,2"`, `"II:simple-pole"`, `"III:constant"`, ...
    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.trim().splitn(3, ':');
        let dt: DoubleType = parts.next().unwrap_or("").parse()?;
        let form = parts.next().ok_or_else(|| Error::Parse(format!("missing a(u) form in {s:?}")))?;
        let params = parts.next();
        let a_form = match (form, params) {
            ("two-points", Some(p)) => {
                let (c1, c2) = p
                    .split_once(',')
                    .ok_or_else(|| Error::Parse(format!("two-points needs c1,c2 in {s:?}")))?;
                AForm::TwoPoints(rat::parse(c1)?, rat::parse(c2)?)
            }
            ("double-pole", None) => AForm::DoublePole,
            ("simple-pole", None) => AForm::SimplePole,
            ("constant", None) => AForm::Constant,
            _ => return Err(Error::Parse(format!("unrecognised case {s:?}"))),
        };
        Ok(CaseSpec::new(dt, a_form))
    }
}

/// Vertex of the extended Dynkin diagram the order sits at.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Vertex {
    MinusAlphaMax,
    /// A simple root whose coefficient in `α_max` is `k`.
    Simple(u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Admissible {
    MaxDegree(u32),
    Impossible,
}

impl fmt::Display for Admissible {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Admissible::MaxDegree(d) => write!(f, "{d}"),
            Admissible::Impossible => f.write_str("impossible"),
        }
    }
}

/// Largest admissible degree of the polynomial `1/a(u)`.
pub fn admissible_degree(double_type: DoubleType, vertex: Vertex) -> Result<Admissible> {
    use Admissible::*;
    if vertex == Vertex::Simple(0) {
        return Err(Error::InvalidParameter("simple-root label k must be >= 1".into()));
    }
    let big = matches!(vertex, Vertex::Simple(k) if k > 1);
    Ok(match (double_type, big) {
        (DoubleType::I, false) => MaxDegree(2),
        (DoubleType::I, true) => MaxDegree(1),
        (DoubleType::II, false) => MaxDegree(1),
        (DoubleType::II, true) => MaxDegree(0),
        (DoubleType::III, false) => MaxDegree(0),
        (DoubleType::III, true) => Impossible,
    })
}

/// Why a case was refused.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseRejection {
    pub reason: String,
}

impl fmt::Display for CaseRejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.reason)
    }
}

fn degree_bound_statement(dt: DoubleType) -> &'static str {
    match dt {
        DoubleType::I => "double type I at -alpha_max: 1/a(u) is a polynomial of degree at most 2",
        DoubleType::II => "double type II at -alpha_max: 1/a(u) is a polynomial of degree at most 1",
        DoubleType::III => "double type III at -alpha_max: 1/a(u) is a constant",
    }
}

/// Accepts exactly the legal (double type, `a(u)`) combinations.
pub fn validate_case(spec: &CaseSpec) -> std::result::Result<(), CaseRejection> {
    if let AForm::TwoPoints(c1, c2) = &spec.a_form {
        if c1 == c2 || c1.is_zero() || c2.is_zero() {
            return Err(CaseRejection {
                reason: format!(
                    "two-points needs distinct nonzero constants, got {c1}, {c2}"
                ),
            });
        }
    }
    let Admissible::MaxDegree(max) = admissible_degree(spec.double_type, Vertex::MinusAlphaMax)
        .expect("valid vertex")
    else {
        unreachable!("-alpha_max is always admissible")
    };
    let deg = spec.a_form.inverse_degree();
    if deg > max {
        return Err(CaseRejection {
            reason: format!(
                "{spec} violates the degree bound ({}); deg(1/a) = {deg}",
                degree_bound_statement(spec.double_type)
            ),
        });
    }
    Ok(())
}

/// A `g`-valued Laurent polynomial, stored per basis vector.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct LoopElement {
    comps: BTreeMap<usize, Poly1>,
}

impl LoopElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `c · b_i · u^deg`
    pub fn monomial(i: usize, deg: i32, c: Rat) -> Self {
        let mut l = Self::zero();
        l.add_poly(i, &Poly1::monomial([deg], c));
        l
    }

    /// `x · p(u)`
    pub fn from_product(x: &GElement, p: &Poly1) -> Self {
        let mut l = Self::zero();
        for (i, c) in x.iter() {
            l.add_poly(i, &p.scale(c));
        }
        l
    }

    pub fn constant(x: &GElement) -> Self {
        Self::from_product(x, &Poly1::one())
    }

    pub fn add_poly(&mut self, i: usize, p: &Poly1) {
        let e = self.comps.entry(i).or_default();
        *e += p;
        if e.is_zero() {
            self.comps.remove(&i);
        }
    }

    pub fn add_scaled(&mut self, other: &LoopElement, c: &Rat) {
        for (i, p) in &other.comps {
            self.add_poly(*i, &p.scale(c));
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn components(&self) -> impl Iterator<Item = (usize, &Poly1)> {
        self.comps.iter().map(|(i, p)| (*i, p))
    }

    /// Every `(basis, degree, coefficient)` triple.
    pub fn monomials(&self) -> impl Iterator<Item = (usize, i32, &Rat)> {
        self.comps
            .iter()
            .flat_map(|(i, p)| p.terms().map(move |(e, c)| (*i, e[0], c)))
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.comps.values().filter_map(|p| p.min_exp(0)).min()
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.comps.values().filter_map(|p| p.max_exp(0)).max()
    }

    pub fn is_polynomial(&self) -> bool {
        self.comps.values().all(|p| p.is_polynomial())
    }

    pub fn bracket(&self, alg: &LieAlgebraData, other: &LoopElement) -> LoopElement {
        let mut out = Self::zero();
        for (i, p) in &self.comps {
            for (j, q) in &other.comps {
                let pq = p * q;
                for (k, s) in alg.bracket_basis(*i, *j) {
                    out.add_poly(*k, &pq.scale(s));
                }
            }
        }
        out
    }

    /// `B(f1(u), f2(u))` as a Laurent polynomial in `u`.
    pub fn form(&self, alg: &LieAlgebraData, other: &LoopElement) -> Poly1 {
        let mut out = Poly1::zero();
        for (i, p) in &self.comps {
            for (j, q) in &other.comps {
                let g = alg.form_basis(*i, *j);
                if !g.is_zero() {
                    out.add_scaled(&(p * q), g);
                }
            }
        }
        out
    }

    /// The `u^deg` coefficient as an element of `g`.
    pub fn coefficient(&self, deg: i32) -> GElement {
        let mut g = GElement::zero();
        for (i, p) in &self.comps {
            g.add_term(*i, p.coeff(&[deg]));
        }
        g
    }
}

/// Element of a classical double: loop part plus the finite summands
/// (`finite` for types II/III, `eps` for the `εg` summand of type III).
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct DoubleElement {
    pub loop_part: LoopElement,
    pub finite: GElement,
    pub eps: GElement,
}

impl DoubleElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_loop(loop_part: LoopElement) -> Self {
        Self {
            loop_part,
            ..Self::default()
        }
    }

    pub fn from_finite(finite: GElement, eps: GElement) -> Self {
        Self {
            loop_part: LoopElement::zero(),
            finite,
            eps,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.loop_part.is_zero() && self.finite.is_zero() && self.eps.is_zero()
    }

    pub fn add_scaled(&mut self, other: &DoubleElement, c: &Rat) {
        self.loop_part.add_scaled(&other.loop_part, c);
        self.finite.add_scaled(&other.finite, c);
        self.eps.add_scaled(&other.eps, c);
    }

    pub fn scale(&self, c: &Rat) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }

    /// Bracket in the double; the finite summand `g + εg` has `ε² = 0`.
    pub fn bracket(&self, alg: &LieAlgebraData, other: &DoubleElement) -> DoubleElement {
        DoubleElement {
            loop_part: self.loop_part.bracket(alg, &other.loop_part),
            finite: bracket(alg, &self.finite, &other.finite),
            eps: bracket(alg, &self.finite, &other.eps).plus(&bracket(alg, &self.eps, &other.finite)),
        }
    }

    /// Largest power of `u^{-1}` in the loop part (0 when none is negative).
    pub fn inverse_degree(&self) -> i32 {
        self.loop_part.min_degree().map_or(0, |d| (-d).max(0))
    }

    pub fn check_shape(&self, dt: DoubleType) -> Result<()> {
        match dt {
            DoubleType::I if !self.finite.is_zero() || !self.eps.is_zero() => Err(
                Error::MalformedElement("type I double has no finite summand".into()),
            ),
            DoubleType::II if !self.eps.is_zero() => Err(Error::MalformedElement(
                "type II double has no εg summand".into(),
            )),
            _ => Ok(()),
        }
    }
}

/// Image of `b · u^k` from `g[u]` in the double of the given type:
/// type II adds `f(0)` in the finite slot, type III adds `f(0) + ε f'(0)`.
pub fn embed_canonical(dt: DoubleType, b: usize, k: u32) -> DoubleElement {
    let mut x = DoubleElement::from_loop(LoopElement::monomial(b, k as i32, Rat::one()));
    match dt {
        DoubleType::I => {}
        DoubleType::II => {
            if k == 0 {
                x.finite = GElement::basis(b);
            }
        }
        DoubleType::III => {
            if k == 0 {
                x.finite = GElement::basis(b);
            }
            if k == 1 {
                x.eps = GElement::basis(b);
            }
        }
    }
    x
}

/// Embedding of an arbitrary polynomial element of `g[u]`.
pub fn embed_polynomial(dt: DoubleType, f: &LoopElement) -> Result<DoubleElement> {
    if !f.is_polynomial() {
        return Err(Error::MalformedElement("g[u] element has negative powers".into()));
    }
    let mut x = DoubleElement::from_loop(f.clone());
    if dt != DoubleType::I {
        x.finite = f.coefficient(0);
    }
    if dt == DoubleType::III {
        x.eps = f.coefficient(1);
    }
    Ok(x)
}

/// The invariant form of the double selected by `spec`.
pub fn q_form(
    alg: &LieAlgebraData,
    spec: &CaseSpec,
    x: &DoubleElement,
    y: &DoubleElement,
) -> Result<Rat> {
    x.check_shape(spec.double_type)?;
    y.check_shape(spec.double_type)?;
    let a = spec.a_form.a_function();
    let kernel = x.loop_part.form(alg, &y.loop_part);
    Ok(match spec.double_type {
        DoubleType::I => residue(&kernel, &a)?,
        DoubleType::II => residue(&kernel.shift([-1]), &a)? - alg.form(&x.finite, &y.finite),
        DoubleType::III => {
            residue(&kernel.shift([-2]), &a)?
                - alg.form(&x.eps, &y.finite)
                - alg.form(&x.finite, &y.eps)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::build_sl;
    use crate::rat::{frac, int};

    #[test]
    fn case_text_round_trip() {
        for text in ["I:two-points:1,2", "I:two-points:-1/2,3", "II:simple-pole", "III:constant", "I:double-pole"] {
            let c: CaseSpec = text.parse().unwrap();
            assert_eq!(c.to_string(), text);
        }
        assert!("IV:constant".parse::<CaseSpec>().is_err());
        assert!("I:two-points".parse::<CaseSpec>().is_err());
        assert!("I:constant:3".parse::<CaseSpec>().is_err());
    }

    #[test]
    fn degree_table() {
        use Admissible::*;
        use DoubleType::*;
        let cells = [
            (I, Vertex::MinusAlphaMax, MaxDegree(2)),
            (I, Vertex::Simple(1), MaxDegree(2)),
            (I, Vertex::Simple(2), MaxDegree(1)),
            (II, Vertex::MinusAlphaMax, MaxDegree(1)),
            (II, Vertex::Simple(1), MaxDegree(1)),
            (II, Vertex::Simple(3), MaxDegree(0)),
            (III, Vertex::MinusAlphaMax, MaxDegree(0)),
            (III, Vertex::Simple(1), MaxDegree(0)),
            (III, Vertex::Simple(2), Impossible),
        ];
        for (dt, v, want) in cells {
            assert_eq!(admissible_degree(dt, v).unwrap(), want, "{dt} {v:?}");
        }
        assert!(admissible_degree(I, Vertex::Simple(0)).is_err());
    }

    #[test]
    fn validation() {
        let ok = |s: &str| validate_case(&s.parse().unwrap()).is_ok();
        assert!(ok("I:two-points:1,2"));
        assert!(ok("II:constant"));
        assert!(!ok("I:two-points:1,1"));
        assert!(!ok("I:two-points:0,1"));
        let rej = validate_case(&"II:two-points:1,2".parse().unwrap()).unwrap_err();
        assert!(rej.reason.contains("degree at most 1"), "{rej}");
        let rej = validate_case(&"III:simple-pole".parse().unwrap()).unwrap_err();
        assert!(rej.reason.contains("is a constant"), "{rej}");
        let legal: Vec<String> = CaseSpec::families().iter().map(|c| c.to_string()).collect();
        assert_eq!(legal.len(), 7);
    }

    #[test]
    fn two_point_pairing_example() {
        let g = build_sl(2).unwrap();
        let (c1, c2) = (int(3), frac(1, 2));
        let spec = CaseSpec::new(DoubleType::I, AForm::TwoPoints(c1.clone(), c2.clone()));
        let h = GElement::basis(g.h(0));
        let x = DoubleElement::from_loop(LoopElement::constant(&h));
        let mut p = Poly1::monomial([-1], int(1));
        p.add_term([0], -(&c1 + &c2) * frac(1, 2));
        let y = DoubleElement::from_loop(LoopElement::from_product(&h.scale(&frac(1, 2)), &p));
        assert_eq!(q_form(&g, &spec, &x, &y).unwrap(), int(1));
    }

    #[test]
    fn constant_pairing_pairs_opposite_degrees() {
        let g = build_sl(2).unwrap();
        let spec: CaseSpec = "I:constant".parse().unwrap();
        for k in 0..5 {
            let x = DoubleElement::from_loop(LoopElement::monomial(g.e(0), k, int(1)));
            let y = DoubleElement::from_loop(LoopElement::monomial(g.f(0), -k - 1, int(1)));
            assert_eq!(q_form(&g, &spec, &x, &y).unwrap(), int(1));
        }
    }

    #[test]
    fn type_two_finite_block() {
        let g = build_sl(2).unwrap();
        let spec: CaseSpec = "II:constant".parse().unwrap();
        let z = GElement::basis(g.h(0));
        let w = GElement::basis(g.h(0)).scale(&int(3));
        let x = DoubleElement::from_finite(z.clone(), GElement::zero());
        let y = DoubleElement::from_finite(w.clone(), GElement::zero());
        assert_eq!(q_form(&g, &spec, &x, &y).unwrap(), -g.form(&z, &w));
    }

    #[test]
    fn shape_mismatch_is_reported() {
        let g = build_sl(2).unwrap();
        let spec: CaseSpec = "I:constant".parse().unwrap();
        let x = DoubleElement::from_finite(GElement::basis(0), GElement::zero());
        assert!(matches!(
            q_form(&g, &spec, &x, &x),
            Err(Error::MalformedElement(_))
        ));
    }

    #[test]
    fn embedded_polynomials_are_isotropic() {
        let g = build_sl(2).unwrap();
        for spec in CaseSpec::families() {
            for k in 0..4 {
                for l in 0..4 {
                    for b in 0..3 {
                        for c in 0..3 {
                            let x = embed_canonical(spec.double_type, b, k);
                            let y = embed_canonical(spec.double_type, c, l);
                            assert!(q_form(&g, &spec, &x, &y).unwrap().is_zero(), "{spec}");
                        }
                    }
                }
            }
        }
    }
}
