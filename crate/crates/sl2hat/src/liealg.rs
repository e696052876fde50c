//! Action of sl2-hat on Verma modules `M(Λ)` and generalized Verma modules
//! `N(kΛ₀)` by PBW straightening, and the Sugawara operators.

use std::cell::RefCell;
use std::fmt;
use std::rc::Rc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::partitions::{enumerate, Color, ColoredPartition, EnumOptions, Part, PartSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ModuleKind {
    /// `M(Λ)`: `y(0)` is a free PBW generator.
    Verma,
    /// `N(kΛ₀)`: all of `g ⊗ t^0` kills the vacuum.
    GeneralizedVerma,
}

/// `Λ = k0 Λ₀ + k1 Λ₁` together with the module built on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HighestWeight {
    pub k0: u32,
    pub k1: u32,
    pub kind: ModuleKind,
}

impl HighestWeight {
    pub fn verma(k0: u32, k1: u32) -> HighestWeight {
        HighestWeight { k0, k1, kind: ModuleKind::Verma }
    }

    pub fn generalized_verma(k: u32) -> HighestWeight {
        HighestWeight { k0: k, k1: 0, kind: ModuleKind::GeneralizedVerma }
    }

    pub fn level(&self) -> u32 {
        self.k0 + self.k1
    }

    pub fn part_set(&self) -> PartSet {
        match self.kind {
            ModuleKind::Verma => PartSet::Verma,
            ModuleKind::GeneralizedVerma => PartSet::Negative,
        }
    }

    /// Eigenvalue of `h(0)` on the highest weight vector.
    pub fn h_eigenvalue(&self) -> i64 {
        match self.kind {
            ModuleKind::Verma => self.k1 as i64,
            ModuleKind::GeneralizedVerma => 0,
        }
    }
}

impl fmt::Display for HighestWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ModuleKind::Verma => write!(f, "M({}Λ0+{}Λ1)", self.k0, self.k1),
            ModuleKind::GeneralizedVerma => write!(f, "N({}Λ0)", self.k0),
        }
    }
}

pub(crate) type Terms = Rc<[(ColoredPartition, BigInt)]>;

/// A homogeneous vector `Σ c_π u(π) v` with rational coefficients, stored as
/// integer numerators over one positive denominator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleVector {
    hw: HighestWeight,
    degree: i32,
    weight: i32,
    den: BigInt,
    terms: FxHashMap<ColoredPartition, BigInt>,
}

impl ModuleVector {
    pub fn zero(hw: HighestWeight, degree: i32, weight: i32) -> ModuleVector {
        ModuleVector { hw, degree, weight, den: BigInt::one(), terms: FxHashMap::default() }
    }

    /// The basis vector `u(π) v_Λ`; `π` must use only the module's alphabet.
    pub fn basis(hw: HighestWeight, pi: &ColoredPartition) -> Result<ModuleVector> {
        if !pi.iter().all(|p| hw.part_set().contains(p)) {
            return domain(format!("{pi} is not a PBW monomial of {hw}"));
        }
        let mut v = ModuleVector::zero(hw, pi.degree(), pi.weight());
        v.terms.insert(pi.clone(), BigInt::one());
        Ok(v)
    }

    pub fn vacuum(hw: HighestWeight) -> ModuleVector {
        ModuleVector::basis(hw, &ColoredPartition::one()).expect("1 is a monomial")
    }

    pub(crate) fn from_int_terms<I>(hw: HighestWeight, degree: i32, weight: i32, terms: I) -> ModuleVector
    where
        I: IntoIterator<Item = (ColoredPartition, BigInt)>,
    {
        let mut v = ModuleVector::zero(hw, degree, weight);
        for (p, c) in terms {
            if !c.is_zero() {
                debug_assert_eq!((p.degree(), p.weight()), (degree, weight), "inhomogeneous term {p}");
                v.terms.insert(p, c);
            }
        }
        v.normalize();
        v
    }

    pub fn hw(&self) -> HighestWeight {
        self.hw
    }
    pub fn degree(&self) -> i32 {
        self.degree
    }
    pub fn weight(&self) -> i32 {
        self.weight
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

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub(crate) fn numerators(&self) -> &FxHashMap<ColoredPartition, BigInt> {
        &self.terms
    }

    pub fn coeff(&self, pi: &ColoredPartition) -> BigRational {
        match self.terms.get(pi) {
            Some(c) => BigRational::new(c.clone(), self.den.clone()),
            None => BigRational::zero(),
        }
    }

    /// Terms in descending order of partitions.
    pub fn terms(&self) -> Vec<(ColoredPartition, BigRational)> {
        let mut v: Vec<_> = self
            .terms
            .iter()
            .map(|(p, c)| (p.clone(), BigRational::new(c.clone(), self.den.clone())))
            .collect();
        v.sort_by(|a, b| b.0.cmp(&a.0));
        v
    }

    /// The smallest partition with nonzero coefficient.
    pub fn leading_term(&self) -> Result<ColoredPartition> {
        match self.terms.keys().min() {
            Some(p) => Ok(p.clone()),
            None => domain("leading term of the zero vector"),
        }
    }

    fn normalize(&mut self) {
        self.terms.retain(|_, c| !c.is_zero());
        if self.terms.is_empty() {
            self.den = BigInt::one();
            return;
        }
        if self.den.is_one() {
            return;
        }
        let mut g = self.den.clone();
        for c in self.terms.values() {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if !g.is_one() {
            self.den /= &g;
            for c in self.terms.values_mut() {
                *c /= &g;
            }
        }
    }

    fn check_same_space(&self, other: &ModuleVector) {
        assert_eq!(self.hw, other.hw, "vectors live in different modules");
        assert!(
            self.is_zero() || other.is_zero() || (self.degree, self.weight) == (other.degree, other.weight),
            "adding vectors of grades ({}, {}) and ({}, {})",
            self.degree,
            self.weight,
            other.degree,
            other.weight
        );
    }

    /// `self + c * other`.
    pub fn add_scaled(&mut self, other: &ModuleVector, c: &BigRational) {
        self.check_same_space(other);
        if other.is_zero() || c.is_zero() {
            return;
        }
        if self.is_zero() {
            self.degree = other.degree;
            self.weight = other.weight;
        }
        // self = a/d, other = b/e, c = p/q: a*(e*q) + b*p*d, over d*e*q.
        let eq = &other.den * c.denom();
        let pd = c.numer() * &self.den;
        if !eq.is_one() {
            for v in self.terms.values_mut() {
                *v *= &eq;
            }
        }
        for (p, b) in &other.terms {
            let t = b * &pd;
            match self.terms.get_mut(p) {
                Some(a) => *a += t,
                None => {
                    self.terms.insert(p.clone(), t);
                }
            }
        }
        self.den *= eq;
        self.normalize();
    }

    pub fn add(&self, other: &ModuleVector) -> ModuleVector {
        let mut out = self.clone();
        out.add_scaled(other, &BigRational::one());
        out
    }

    pub fn sub(&self, other: &ModuleVector) -> ModuleVector {
        let mut out = self.clone();
        out.add_scaled(other, &-BigRational::one());
        out
    }

    pub fn scale(&self, c: &BigRational) -> ModuleVector {
        let mut out = ModuleVector::zero(self.hw, self.degree, self.weight);
        out.add_scaled(self, c);
        out
    }

    pub fn scale_int(&self, c: i64) -> ModuleVector {
        self.scale(&BigRational::from_integer(BigInt::from(c)))
    }

    /// JSON mirror of the text form.
    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms()
            .into_iter()
            .map(|(p, c)| serde_json::json!({ "coeff": c.to_string(), "partition": p }))
            .collect();
        serde_json::json!({
            "module": self.hw.to_string(),
            "degree": self.degree,
            "weight": self.weight,
            "terms": terms,
        })
    }
}

impl fmt::Display for ModuleVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (p, c)) in self.terms().into_iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c} * {p}")?;
        }
        Ok(())
    }
}

/// An unsorted product `b₁(n₁)⋯b_s(n_s)` in `U(ĝ)` with a scalar.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieWord {
    pub parts: Vec<Part>,
    pub scalar: BigRational,
}

impl LieWord {
    pub fn new(parts: Vec<Part>) -> LieWord {
        LieWord { parts, scalar: BigRational::one() }
    }
}

fn bracket(a: Color, b: Color) -> Option<(Color, i64)> {
    use Color::*;
    match (a, b) {
        (X, Y) => Some((H, 1)),
        (Y, X) => Some((H, -1)),
        (H, X) => Some((X, 2)),
        (X, H) => Some((X, -2)),
        (H, Y) => Some((Y, -2)),
        (Y, H) => Some((Y, 2)),
        _ => None,
    }
}

fn form(a: Color, b: Color) -> i64 {
    use Color::*;
    match (a, b) {
        (X, Y) | (Y, X) => 1,
        (H, H) => 2,
        _ => 0,
    }
}

/// A module together with straightening caches. Not `Sync`: use one per worker.
pub struct Module {
    hw: HighestWeight,
    act_cache: RefCell<FxHashMap<ColoredPartition, FxHashMap<Part, Terms>>>,
    pub(crate) base_cache: RefCell<FxHashMap<(u32, i32, ColoredPartition), Terms>>,
    pub(crate) adx_cache: RefCell<FxHashMap<(u32, i32, ColoredPartition), Terms>>,
}

impl Module {
    pub fn new(hw: HighestWeight) -> Module {
        Module {
            hw,
            act_cache: RefCell::default(),
            base_cache: RefCell::default(),
            adx_cache: RefCell::default(),
        }
    }

    pub fn hw(&self) -> HighestWeight {
        self.hw
    }

    pub fn level(&self) -> i64 {
        self.hw.level() as i64
    }

    pub fn vacuum(&self) -> ModuleVector {
        ModuleVector::vacuum(self.hw)
    }

    pub fn basis_vector(&self, pi: &ColoredPartition) -> Result<ModuleVector> {
        ModuleVector::basis(self.hw, pi)
    }

    /// `b · u(π) v` expanded in the PBW basis.
    pub(crate) fn act_basis(&self, b: Part, pi: &ColoredPartition) -> Terms {
        if let Some(t) = self.act_cache.borrow().get(pi).and_then(|m| m.get(&b)) {
            return t.clone();
        }
        let t = self.act_basis_uncached(b, pi);
        self.act_cache.borrow_mut().entry(pi.clone()).or_default().insert(b, t.clone());
        t
    }

    fn act_basis_uncached(&self, b: Part, pi: &ColoredPartition) -> Terms {
        let alphabet = self.hw.part_set();
        let Some(a) = pi.min_part() else {
            return match b.degree {
                d if d > 0 => Rc::from(vec![]),
                0 => match b.color {
                    Color::X => Rc::from(vec![]),
                    Color::H => {
                        let e = self.hw.h_eigenvalue();
                        if e == 0 {
                            Rc::from(vec![])
                        } else {
                            Rc::from(vec![(ColoredPartition::one(), BigInt::from(e))])
                        }
                    }
                    Color::Y if alphabet.contains(b) => {
                        Rc::from(vec![(ColoredPartition::single(b), BigInt::one())])
                    }
                    Color::Y => Rc::from(vec![]),
                },
                _ => Rc::from(vec![(ColoredPartition::single(b), BigInt::one())]),
            };
        };
        if alphabet.contains(b) && b <= a {
            return Rc::from(vec![(pi.with_part(b), BigInt::one())]);
        }
        // b a u(rest) = a (b u(rest)) + [b, a] u(rest)
        let rest = pi.without_part(a).expect("a is a part of pi");
        let mut acc: FxHashMap<ColoredPartition, BigInt> = FxHashMap::default();
        for (tau, c) in self.act_basis(b, &rest).iter() {
            for (sigma, d) in self.act_basis(a, tau).iter() {
                *acc.entry(sigma.clone()).or_default() += c * d;
            }
        }
        if let Some((color, c)) = bracket(b.color, a.color) {
            let part = Part::new(color, b.degree + a.degree);
            for (sigma, d) in self.act_basis(part, &rest).iter() {
                *acc.entry(sigma.clone()).or_default() += d * c;
            }
        }
        if b.degree + a.degree == 0 {
            let central = b.degree as i64 * form(b.color, a.color) * self.level();
            if central != 0 {
                *acc.entry(rest).or_default() += central;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Rc::from(acc.into_iter().collect::<Vec<_>>())
    }

    fn check_module(&self, v: &ModuleVector) {
        assert_eq!(v.hw, self.hw, "vector of {} acted on in {}", v.hw, self.hw);
    }

    /// `b · v`.
    pub fn act_part(&self, b: Part, v: &ModuleVector) -> ModuleVector {
        self.check_module(v);
        let mut acc: FxHashMap<ColoredPartition, BigInt> = FxHashMap::default();
        for (pi, c) in &v.terms {
            for (sigma, d) in self.act_basis(b, pi).iter() {
                *acc.entry(sigma.clone()).or_default() += c * d;
            }
        }
        let mut out = ModuleVector::from_int_terms(
            self.hw,
            v.degree + b.degree,
            v.weight + b.weight(),
            acc,
        );
        if !out.is_zero() {
            out.den = out.den * &v.den;
            out.normalize();
        }
        out
    }

    /// `u · v`, rightmost factor first.
    pub fn act_word(&self, u: &LieWord, v: &ModuleVector) -> ModuleVector {
        let mut w = v.clone();
        for &p in u.parts.iter().rev() {
            w = self.act_part(p, &w);
        }
        w.scale(&u.scalar)
    }

    /// `u(π) v` for a monomial given as a partition (ascending product).
    pub fn act_monomial(&self, pi: &ColoredPartition, v: &ModuleVector) -> ModuleVector {
        let mut w = v.clone();
        for p in pi.iter().rev() {
            w = self.act_part(p, &w);
        }
        w
    }

    /// PBW basis of the `(d, w)` graded piece, sorted descending under the order.
    pub fn grade_basis(&self, d: i32, w: i32) -> Result<Vec<ColoredPartition>> {
        grade_basis(self.hw, d, w)
    }

    /// `4(k+2) L_m v`, which has integer structure constants.
    pub fn sugawara_scaled(&self, m: i32, v: &ModuleVector) -> ModuleVector {
        self.check_module(v);
        let dv = v.degree;
        let mut out = ModuleVector::zero(self.hw, dv + m, v.weight);
        let terms: [(Color, Color, i64); 3] =
            [(Color::X, Color::Y, 2), (Color::Y, Color::X, 2), (Color::H, Color::H, 1)];
        for i in (m + dv).min(0)..=(-dv).max(0) {
            for &(ca, cb, c) in &terms {
                let a = Part::new(ca, i);
                let b = Part::new(cb, m - i);
                // :a(i) b(m-i): puts the nonnegative mode on the right.
                let w = if i < 0 {
                    if m - i > -dv {
                        continue;
                    }
                    self.act_part(a, &self.act_part(b, v))
                } else {
                    if i > -dv {
                        continue;
                    }
                    self.act_part(b, &self.act_part(a, v))
                };
                out.add_scaled(&w, &BigRational::from_integer(c.into()));
            }
        }
        out
    }

    /// `L_m v` from the Sugawara form.
    pub fn sugawara_l(&self, m: i32, v: &ModuleVector) -> ModuleVector {
        let s = 4 * (self.level() + 2);
        self.sugawara_scaled(m, v).scale(&BigRational::new(1.into(), s.into()))
    }

    /// `[L_m, L_n] v - (m-n) L_{m+n} v - (m³-m)/12 δ_{m+n,0} (3k/(k+2)) v == 0`.
    pub fn virasoro_check(&self, m: i32, n: i32, v: &ModuleVector) -> bool {
        self.virasoro_defect(m, n, v).is_zero()
    }

    /// The left side of [`Module::virasoro_check`] scaled by `16(k+2)²`.
    pub fn virasoro_defect(&self, m: i32, n: i32, v: &ModuleVector) -> ModuleVector {
        let k = self.level();
        let t = |j: i32, w: &ModuleVector| self.sugawara_scaled(j, w);
        let mut d = t(m, &t(n, v)).sub(&t(n, &t(m, v)));
        let r = t(m + n, v);
        d.add_scaled(&r, &BigRational::from_integer((-4 * (k + 2) * (m - n) as i64).into()));
        if m + n == 0 {
            let m = m as i64;
            let c = 4 * (k + 2) * k * (m * m * m - m);
            d.add_scaled(v, &BigRational::from_integer((-c).into()));
        }
        d
    }

    /// `L_{-1}` on `N(kΛ₀)` as the derivation `Σ_j (-n_j) b₁(n₁)⋯b_j(n_j-1)⋯b_s(n_s) 1`.
    pub fn l_minus1_derivation(&self, v: &ModuleVector) -> Result<ModuleVector> {
        self.check_module(v);
        if self.hw.kind != ModuleKind::GeneralizedVerma {
            return domain("the derivation form of L_{-1} is defined on N(kΛ₀) only");
        }
        let mut out = ModuleVector::zero(self.hw, v.degree - 1, v.weight);
        let vac = self.vacuum();
        for (pi, c) in v.terms() {
            let word: Vec<Part> = pi.iter().collect();
            for j in 0..word.len() {
                let mut w = word.clone();
                let n = w[j].degree;
                w[j] = Part::new(w[j].color, n - 1);
                let x = self.act_word(&LieWord::new(w), &vac);
                out.add_scaled(&x, &(c.clone() * BigRational::from_integer((-n).into())));
            }
        }
        Ok(out)
    }

    pub fn cache_size(&self) -> usize {
        self.act_cache.borrow().values().map(|m| m.len()).sum()
    }
}

/// PBW basis of the `(d, w)` piece of the module, descending under the order.
pub fn grade_basis(hw: HighestWeight, d: i32, w: i32) -> Result<Vec<ColoredPartition>> {
    let opts = EnumOptions { weight: Some(w), ..Default::default() };
    let mut v = enumerate(hw.part_set(), d, opts)?;
    v.sort_by(|a, b| b.cmp(a));
    Ok(v)
}

/// Leading term of a nonzero vector.
pub fn leading_term(v: &ModuleVector) -> Result<ColoredPartition> {
    v.leading_term()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> ColoredPartition {
        s.parse().unwrap()
    }

    #[test]
    fn x0_y0_on_vacuum() {
        let m = Module::new(HighestWeight::verma(1, 2));
        let v = m.act_part(Part::x(0), &m.act_part(Part::y(0), &m.vacuum()));
        assert_eq!(v, m.vacuum().scale_int(2));
    }

    #[test]
    fn central_term_on_generalized_verma() {
        let m = Module::new(HighestWeight::generalized_verma(3));
        let v = m.act_part(Part::x(1), &m.basis_vector(&p("y(-1)")).unwrap());
        assert_eq!(v, m.vacuum().scale_int(3));
    }

    #[test]
    fn singular_vector_on_level_one() {
        let m = Module::new(HighestWeight::generalized_verma(1));
        let w = m.basis_vector(&p("x(-1)^2")).unwrap();
        assert!(m.act_part(Part::y(1), &w).is_zero());
    }

    #[test]
    fn grade_bases() {
        let hw = HighestWeight::verma(1, 0);
        assert_eq!(grade_basis(hw, 0, -1).unwrap(), vec![p("y(0)")]);
        let mut b = grade_basis(hw, -1, 0).unwrap();
        b.sort();
        let mut e = vec![p("h(-1)"), p("x(-1)y(0)")];
        e.sort();
        assert_eq!(b, e);
        assert_eq!(grade_basis(HighestWeight::generalized_verma(1), -1, 0).unwrap(), vec![p("h(-1)")]);
    }

    #[test]
    fn sugawara_on_vacuum() {
        let m = Module::new(HighestWeight::verma(1, 1));
        let vac = m.vacuum();
        // L0 v = k1(k1+2)/(4(k+2)) v
        let l0 = m.sugawara_l(0, &vac);
        assert_eq!(l0, vac.scale(&BigRational::new(3.into(), 16.into())));
        // L-1 v = (2 x(-1)y(0) + k1 h(-1)) v / (2(k+2))
        let l = m.sugawara_l(-1, &vac);
        let e = m
            .basis_vector(&p("x(-1)y(0)"))
            .unwrap()
            .scale_int(2)
            .add(&m.basis_vector(&p("h(-1)")).unwrap())
            .scale(&BigRational::new(1.into(), 8.into()));
        assert_eq!(l, e);
        let g = Module::new(HighestWeight::generalized_verma(2));
        assert!(g.sugawara_l(-1, &g.vacuum()).is_zero());
    }

    #[test]
    fn vector_text_form() {
        let m = Module::new(HighestWeight::verma(1, 0));
        let v = m.basis_vector(&p("h(-1)")).unwrap().scale(&BigRational::new(1.into(), 2.into()));
        assert_eq!(v.to_string(), "1/2 * h(-1)");
        assert_eq!(m.vacuum().sub(&m.vacuum()).to_string(), "0");
    }
}
