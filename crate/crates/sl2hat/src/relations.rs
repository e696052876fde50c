//! The annihilating fields `r_{iα}(n)` and the relations among them.
//!
//! `r_{-(k+1)α}(n) = Σ y(j₁)⋯y(j_{k+1})` over ordered tuples with `Σ j = n`, and
//! `r_{iα}(n)` is `(ad x(0))^{k+1+i}` of it divided by `(k+1+i)!`.

use std::collections::BTreeMap;
use std::rc::Rc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::liealg::{Module, ModuleVector, Terms};
use crate::partitions::{Color, ColoredPartition, Part};

/// Labels the coefficient `r_{iα}(n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RelationId {
    pub i: i32,
    pub n: i32,
}

impl RelationId {
    pub fn new(i: i32, n: i32) -> RelationId {
        RelationId { i, n }
    }
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

fn accumulate(acc: &mut FxHashMap<ColoredPartition, BigInt>, terms: &Terms, c: &BigInt) {
    for (p, d) in terms.iter() {
        *acc.entry(p.clone()).or_default() += c * d;
    }
}

fn finish(acc: FxHashMap<ColoredPartition, BigInt>) -> Terms {
    Rc::from(acc.into_iter().filter(|(_, c)| !c.is_zero()).collect::<Vec<_>>())
}

impl Module {
    /// Sum over ordered `t`-tuples `y(j₁)⋯y(j_t) u(π) v` with `Σ j = s`. Modes above
    /// `-|π|` kill `u(π) v`, and the `y`'s commute, so each `j` is at most `-|π|`.
    fn y_power_sum(&self, t: u32, s: i32, pi: &ColoredPartition) -> Terms {
        if t == 0 {
            return if s == 0 { Rc::from(vec![(pi.clone(), BigInt::one())]) } else { Rc::from(vec![]) };
        }
        let key = (t, s, pi.clone());
        if let Some(r) = self.base_cache.borrow().get(&key) {
            return r.clone();
        }
        let top = -pi.degree();
        let mut acc = FxHashMap::default();
        for j in s - (t as i32 - 1) * top..=top {
            let inner = self.y_power_sum(t - 1, s - j, pi);
            for (tau, c) in inner.iter() {
                accumulate(&mut acc, &self.act_basis(Part::y(j), tau), c);
            }
        }
        let r = finish(acc);
        self.base_cache.borrow_mut().insert(key, r.clone());
        r
    }

    /// `((ad x(0))^m r_{-(k+1)α})(n) u(π) v`.
    fn adx_apply(&self, m: u32, n: i32, pi: &ColoredPartition) -> Terms {
        if m == 0 {
            return self.y_power_sum(self.hw().level() + 1, n, pi);
        }
        let key = (m, n, pi.clone());
        if let Some(r) = self.adx_cache.borrow().get(&key) {
            return r.clone();
        }
        let mut acc = FxHashMap::default();
        for (tau, c) in self.adx_apply(m - 1, n, pi).iter() {
            accumulate(&mut acc, &self.act_basis(Part::x(0), tau), c);
        }
        for (tau, c) in self.act_basis(Part::x(0), pi).iter() {
            accumulate(&mut acc, &self.adx_apply(m - 1, n, tau), &-c);
        }
        let r = finish(acc);
        self.adx_cache.borrow_mut().insert(key, r.clone());
        r
    }

    /// `r_{iα}(n) v`; zero vector of the right grade when `|i| > k+1` is not allowed.
    pub fn r_apply(&self, id: RelationId, v: &ModuleVector) -> Result<ModuleVector> {
        let k = self.hw().level() as i32;
        if id.i.abs() > k + 1 {
            return domain(format!("|i| = {} exceeds k+1 = {}", id.i.abs(), k + 1));
        }
        Ok(self.r_or_zero(id.i, id.n, v))
    }

    /// Like [`Module::r_apply`] with out-of-range `i` giving zero.
    pub fn r_or_zero(&self, i: i32, n: i32, v: &ModuleVector) -> ModuleVector {
        let k = self.hw().level() as i32;
        let (deg, wt) = (v.degree() + n, v.weight() + i);
        if i.abs() > k + 1 || v.is_zero() || deg > 0 {
            return ModuleVector::zero(self.hw(), deg, wt);
        }
        let m = (k + 1 + i) as u32;
        let mut acc = FxHashMap::default();
        for (pi, c) in v.numerators() {
            accumulate(&mut acc, &self.adx_apply(m, n, pi), c);
        }
        let out = ModuleVector::from_int_terms(self.hw(), deg, wt, acc);
        out.scale(&BigRational::new(BigInt::one(), factorial(m) * v.denominator()))
    }

    /// Leading term of `r_{iα}(n) v_Λ`, or `None` when the vector is zero.
    pub fn relation_leading_term(&self, i: i32, n: i32) -> Option<ColoredPartition> {
        let v = self.r_or_zero(i, n, &self.vacuum());
        v.leading_term().ok()
    }

    /// `(k+1+i)! r_{iα}(n) v` scaled up to `(2k+3)! r_{iα}(n) v`, on integer coordinates.
    fn r_int(&self, i: i32, n: i32, v: &IntVec, dv: i32) -> IntVec {
        let k = self.hw().level() as i32;
        let mut acc = IntVec::default();
        if i.abs() > k + 1 || dv + n > 0 {
            return acc;
        }
        let m = (k + 1 + i) as u32;
        let f = factorial(2 * k as u32 + 3) / factorial(m);
        for (pi, c) in v {
            if !c.is_zero() {
                accumulate(&mut acc, &self.adx_apply(m, n, pi), &(c * &f));
            }
        }
        acc
    }

    fn act_int(&self, b: Part, v: &IntVec) -> IntVec {
        let mut acc = IntVec::default();
        for (pi, c) in v {
            if !c.is_zero() {
                accumulate(&mut acc, &self.act_basis(b, pi), c);
            }
        }
        acc
    }

    /// `(Σ_j T_j, Σ_j j T_j)` where `T_j = a(j) r_i(n-j) v` for `j < 0` and
    /// `T_j = r_i(n-j) a(j) v` for `j >= 0`, all scaled by `(2k+3)!`. Only
    /// finitely many `T_j` are nonzero.
    fn split_pair(&self, color: Color, i: i32, n: i32, v: &IntVec, dv: i32) -> (IntVec, IntVec) {
        let mut s0 = IntVec::default();
        let mut s1 = IntVec::default();
        let mut push = |j: i32, t: IntVec| {
            let jj = BigInt::from(j);
            for (p, c) in t {
                if j != 0 {
                    *s1.entry(p.clone()).or_default() += &c * &jj;
                }
                *s0.entry(p).or_default() += c;
            }
        };
        for j in (n + dv)..0 {
            push(j, self.act_int(Part::new(color, j), &self.r_int(i, n - j, v, dv)));
        }
        for j in 0..=(-dv) {
            let av = self.act_int(Part::new(color, j), v);
            push(j, self.r_int(i, n - j, &av, dv + j));
        }
        (s0, s1)
    }

    fn from_scaled(&self, v: &ModuleVector, d_shift: i32, w_shift: i32, terms: IntVec) -> ModuleVector {
        let k = self.hw().level();
        let out = ModuleVector::from_int_terms(self.hw(), v.degree() + d_shift, v.weight() + w_shift, terms);
        out.scale(&BigRational::new(BigInt::one(), factorial(2 * k + 3) * v.denominator()))
    }

    /// `Σ_j ((k+2)j - n) x(j) r_{(k+1)α}(n-j) v`. For `j >= 0` the two factors are
    /// applied in the commuted order, which keeps intermediate grades shallow.
    pub fn eval_8_1(&self, n: i32, v: &ModuleVector) -> ModuleVector {
        let k = self.hw().level() as i32;
        let r = SplitSums::new(self, n, v).weighted(Color::X, k + 1);
        self.from_scaled(v, n, k + 2, r)
    }

    pub fn check_8_1(&self, n: i32, v: &ModuleVector) -> bool {
        self.eval_8_1(n, v).is_zero()
    }

    /// `Σ_j ((k+2)j - n) (x(j) r_{(i-1)α}(n-j) - h(j) r_{iα}(n-j) - y(j) r_{(i+1)α}(n-j)) v`,
    /// with terms outside `|i| <= k+1` absent.
    pub fn eval_8_4(&self, i: i32, n: i32, v: &ModuleVector) -> Result<ModuleVector> {
        let k = self.hw().level() as i32;
        if i.abs() > k + 2 {
            return domain(format!("the triple relation needs |i| <= k+2, got i = {i}"));
        }
        let r = SplitSums::new(self, n, v).triple(i);
        Ok(self.from_scaled(v, n, i, r))
    }

    pub fn check_8_4(&self, i: i32, n: i32, v: &ModuleVector) -> Result<bool> {
        Ok(self.eval_8_4(i, n, v)?.is_zero())
    }

    /// `Σ_j ((k+2-i) x(j) r_{(i-1)α}(n-j) + i h(j) r_{iα}(n-j) + (k+2+i) y(j) r_{(i+1)α}(n-j)) v`
    /// minus `(k+2)(-n-k-1) r_{iα}(n) v`.
    pub fn eval_8_5(&self, i: i32, n: i32, v: &ModuleVector) -> Result<ModuleVector> {
        let k = self.hw().level() as i32;
        if i.abs() > k + 1 {
            return domain(format!("the Casimir relation needs |i| <= k+1, got i = {i}"));
        }
        let r = SplitSums::new(self, n, v).casimir(i);
        Ok(self.from_scaled(v, n, i, r))
    }

    pub fn check_8_5(&self, i: i32, n: i32, v: &ModuleVector) -> Result<bool> {
        Ok(self.eval_8_5(i, n, v)?.is_zero())
    }

    /// Every relation at mode `n` applied to `v`, sharing the split sums.
    pub fn relation_battery(&self, n: i32, v: &ModuleVector) -> Vec<RelationCheck> {
        let k = self.hw().level() as i32;
        let mut sums = SplitSums::new(self, n, v);
        let mut out = vec![RelationCheck {
            relation: RelationKind::TopX,
            i: k + 1,
            n,
            pass: is_zero(&sums.weighted(Color::X, k + 1)),
        }];
        for i in -(k + 2)..=(k + 2) {
            let pass = is_zero(&sums.triple(i));
            out.push(RelationCheck { relation: RelationKind::Triple, i, n, pass });
        }
        for i in -(k + 1)..=(k + 1) {
            let pass = is_zero(&sums.casimir(i));
            out.push(RelationCheck { relation: RelationKind::Casimir, i, n, pass });
        }
        out
    }
}

/// The three families of relations among relations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RelationKind {
    /// `Σ ((k+2)j - n) x(j) r_{(k+1)α}(n-j) = 0`.
    TopX,
    /// The `x, h, y` relation weighted by `(k+2)j - n`.
    Triple,
    /// The unweighted `x, h, y` relation with the `r_{iα}(n)` right side.
    Casimir,
}

impl RelationKind {
    /// Report label.
    pub fn label(self) -> &'static str {
        match self {
            RelationKind::TopX => "8.1",
            RelationKind::Triple => "8.4",
            RelationKind::Casimir => "8.5",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationCheck {
    pub relation: RelationKind,
    pub i: i32,
    pub n: i32,
    pub pass: bool,
}

type IntVec = FxHashMap<ColoredPartition, BigInt>;

fn is_zero(v: &IntVec) -> bool {
    v.values().all(|c| c.is_zero())
}

fn add_into(acc: &mut IntVec, v: &IntVec, c: i64) {
    if c == 0 {
        return;
    }
    let c = BigInt::from(c);
    for (p, x) in v {
        *acc.entry(p.clone()).or_default() += x * &c;
    }
}

/// Split sums of one `(n, v)`, memoized per `(color, i)`.
struct SplitSums<'a> {
    module: &'a Module,
    n: i32,
    v: IntVec,
    dv: i32,
    cache: FxHashMap<(Color, i32), (IntVec, IntVec)>,
}

impl<'a> SplitSums<'a> {
    fn new(module: &'a Module, n: i32, v: &ModuleVector) -> SplitSums<'a> {
        let iv = v.numerators().clone();
        SplitSums { module, n, v: iv, dv: v.degree(), cache: FxHashMap::default() }
    }

    fn pair(&mut self, color: Color, i: i32) -> &(IntVec, IntVec) {
        let (m, n, v, dv) = (self.module, self.n, &self.v, self.dv);
        self.cache.entry((color, i)).or_insert_with(|| m.split_pair(color, i, n, v, dv))
    }

    fn level(&self) -> i64 {
        self.module.hw().level() as i64
    }

    /// `Σ ((k+2)j - n) T_j`.
    fn weighted(&mut self, color: Color, i: i32) -> IntVec {
        let (k, n) = (self.level(), self.n as i64);
        let (s0, s1) = self.pair(color, i);
        let mut out = IntVec::default();
        add_into(&mut out, s1, k + 2);
        add_into(&mut out, s0, -n);
        out
    }

    fn triple(&mut self, i: i32) -> IntVec {
        let mut out = self.weighted(Color::X, i - 1);
        add_into(&mut out, &self.weighted(Color::H, i), -1);
        add_into(&mut out, &self.weighted(Color::Y, i + 1), -1);
        out
    }

    fn casimir(&mut self, i: i32) -> IntVec {
        let (k, n) = (self.level(), self.n as i64);
        let i64_ = i as i64;
        let mut out = IntVec::default();
        add_into(&mut out, &self.pair(Color::X, i - 1).0, k + 2 - i64_);
        add_into(&mut out, &self.pair(Color::H, i).0, i64_);
        add_into(&mut out, &self.pair(Color::Y, i + 1).0, k + 2 + i64_);
        let rhs = self.module.r_int(i, self.n, &self.v, self.dv);
        add_into(&mut out, &rhs, -((k + 2) * (-n - k - 1)));
        out
    }
}

/// `lt(r_{iα}(n) · vacuum)` for all `|i| <= k+1` and `n` in the range; absent
/// entries are relations that vanish on the vacuum.
pub fn leading_terms_sweep(
    module: &Module,
    n_range: std::ops::RangeInclusive<i32>,
) -> BTreeMap<(i32, i32), ColoredPartition> {
    let k = module.hw().level() as i32;
    let mut out = BTreeMap::new();
    for n in n_range {
        for i in -(k + 1)..=(k + 1) {
            if let Some(p) = module.relation_leading_term(i, n) {
                out.insert((i, n), p);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::HighestWeight;
    use crate::partitions::catalog_lt_r;

    fn p(s: &str) -> ColoredPartition {
        s.parse().unwrap()
    }

    #[test]
    fn level_one_leading_term() {
        let m = Module::new(HighestWeight::verma(1, 0));
        assert_eq!(m.relation_leading_term(-2, -3).unwrap(), p("y(-2)y(-1)"));
        assert_eq!(catalog_lt_r(1, -2, -3).unwrap(), p("y(-2)y(-1)"));
    }

    #[test]
    fn top_relation_generates_the_submodule() {
        for k in 1..=3u32 {
            let m = Module::new(HighestWeight::generalized_verma(k));
            let k1 = k as i32 + 1;
            let v = m.r_apply(RelationId::new(k1, -k1), &m.vacuum()).unwrap();
            let x = ColoredPartition::from_counts([(Part::x(-1), k + 1)]);
            assert_eq!(v.terms().len(), 1);
            assert!(!v.coeff(&x).is_zero());
        }
    }

    #[test]
    fn vanishing_window_for_lambda0() {
        // r(x(-1) h) v = 0 on M(Λ₀): a = 1 <= k0, b = 0 <= k1, weight 1, degree -1.
        let m = Module::new(HighestWeight::verma(1, 0));
        assert!(m.r_or_zero(1, -1, &m.vacuum()).is_zero());
    }

    #[test]
    fn out_of_range_index_is_an_error() {
        let m = Module::new(HighestWeight::verma(1, 0));
        assert!(m.r_apply(RelationId::new(3, -3), &m.vacuum()).is_err());
        assert!(m.eval_8_4(4, -3, &m.vacuum()).is_err());
        assert!(m.eval_8_5(3, -3, &m.vacuum()).is_err());
    }

    #[test]
    fn small_relation_checks() {
        let m = Module::new(HighestWeight::verma(1, 0));
        let vac = m.vacuum();
        assert!(m.check_8_1(-4, &vac));
        let yv = m.basis_vector(&p("y(-1)")).unwrap();
        assert!(m.check_8_1(-4, &yv));
        assert!(m.check_8_5(0, -3, &vac).unwrap());
        let hv = m.basis_vector(&p("h(-1)")).unwrap();
        assert!(m.check_8_4(-1, -4, &hv).unwrap());
        let g = Module::new(HighestWeight::generalized_verma(2));
        assert!(g.check_8_1(-5, &g.vacuum()));
    }
}
