//! The maximal submodule `M¹(Λ) = R̄ M(Λ)` grade by grade, and the dimensions of
//! `L(Λ) = M(Λ)/M¹(Λ)`.
//!
//! A grade of `M¹` is built from lower grades: it is spanned by `r_{wα}(d) v_Λ`
//! and by `b · M¹(d - deg b, w - wt b)` for every letter `b` of the PBW alphabet.

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::rc::Rc;

use num_bigint::BigInt;
use num_traits::Zero;
use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::linalg::{Echelon, SparseRow};
use crate::liealg::{HighestWeight, Module, ModuleKind, ModuleVector};
use crate::partitions::{catalog_lt_r_vlambda, count_conditioned, ColoredPartition, Part};
use crate::qseries::QSeries;

/// One `(d, w)` piece of `M(Λ)` with a spanning set of `M¹` inside it.
#[derive(Debug, Clone)]
pub struct GradeSpace {
    hw: HighestWeight,
    degree: i32,
    weight: i32,
    basis: Vec<ColoredPartition>,
    index: FxHashMap<ColoredPartition, usize>,
    m1: Echelon,
}

impl GradeSpace {
    fn new(hw: HighestWeight, degree: i32, weight: i32, basis: Vec<ColoredPartition>) -> GradeSpace {
        let index = basis.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        GradeSpace { hw, degree, weight, basis, index, m1: Echelon::new() }
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

    /// PBW basis, descending.
    pub fn basis(&self) -> &[ColoredPartition] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn rank(&self) -> usize {
        self.m1.rank()
    }

    pub fn l_dimension(&self) -> usize {
        self.dim() - self.rank()
    }

    /// Echelon rows of `M¹` over [`GradeSpace::basis`].
    pub fn rows(&self) -> &[SparseRow] {
        self.m1.rows()
    }

    /// Leading terms of `M¹` at this grade, ascending.
    pub fn leading_terms(&self) -> Vec<ColoredPartition> {
        let mut v: Vec<_> = self.m1.pivots().into_iter().map(|c| self.basis[c].clone()).collect();
        v.sort();
        v
    }

    /// Coordinates of `v` (up to a positive scalar) over the basis.
    pub fn coordinates(&self, v: &ModuleVector) -> Result<SparseRow> {
        if v.is_zero() {
            return Ok(Vec::new());
        }
        if (v.hw(), v.degree(), v.weight()) != (self.hw, self.degree, self.weight) {
            return domain(format!(
                "vector of grade ({}, {}) does not live in grade ({}, {})",
                v.degree(),
                v.weight(),
                self.degree,
                self.weight
            ));
        }
        let mut row: SparseRow = v
            .numerators()
            .iter()
            .map(|(p, c)| (self.index[p], c.clone()))
            .collect();
        row.sort_unstable_by_key(|(i, _)| *i);
        Ok(row)
    }

    /// Whether `v` lies in `M¹`.
    pub fn contains(&self, v: &ModuleVector) -> Result<bool> {
        Ok(self.m1.contains(self.coordinates(v)?))
    }

    pub fn row_vector(&self, row: &SparseRow) -> ModuleVector {
        let terms = row.iter().map(|(i, c)| (self.basis[*i].clone(), c.clone()));
        ModuleVector::from_int_terms(self.hw, self.degree, self.weight, terms)
    }
}

/// Memoized builder of `M¹` grades for one highest weight. Not `Sync`.
pub struct M1Builder {
    module: Module,
    grades: RefCell<FxHashMap<(i32, i32), Rc<GradeSpace>>>,
}

impl M1Builder {
    pub fn new(hw: HighestWeight) -> M1Builder {
        M1Builder { module: Module::new(hw), grades: RefCell::default() }
    }

    pub fn module(&self) -> &Module {
        &self.module
    }

    pub fn hw(&self) -> HighestWeight {
        self.module.hw()
    }

    fn alphabet(&self, d: i32) -> Vec<Part> {
        let mut out = Vec::new();
        if self.hw().kind == ModuleKind::Verma {
            out.push(Part::y(0));
        }
        for j in d..0 {
            out.extend([Part::x(j), Part::h(j), Part::y(j)]);
        }
        out
    }

    pub fn grade(&self, d: i32, w: i32) -> Result<Rc<GradeSpace>> {
        if let Some(g) = self.grades.borrow().get(&(d, w)) {
            return Ok(g.clone());
        }
        let hw = self.hw();
        let basis = if d > 0 { Vec::new() } else { self.module.grade_basis(d, w)? };
        let mut g = GradeSpace::new(hw, d, w, basis);
        if g.dim() > 0 {
            let k = hw.level() as i32;
            if w.abs() <= k + 1 {
                let r = self.module.r_or_zero(w, d, &self.module.vacuum());
                g.m1.insert(g.coordinates(&r)?);
            }
            for b in self.alphabet(d) {
                if g.rank() == g.dim() {
                    break;
                }
                let sub = self.grade(d - b.degree, w - b.weight())?;
                for row in sub.rows() {
                    let mut acc: FxHashMap<usize, BigInt> = FxHashMap::default();
                    for (col, c) in row {
                        for (p, e) in self.module.act_basis(b, &sub.basis[*col]).iter() {
                            *acc.entry(g.index[p]).or_default() += c * e;
                        }
                    }
                    let mut r: SparseRow = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
                    r.sort_unstable_by_key(|(i, _)| *i);
                    g.m1.insert(r);
                    if g.rank() == g.dim() {
                        break;
                    }
                }
            }
        }
        let g = Rc::new(g);
        self.grades.borrow_mut().insert((d, w), g.clone());
        Ok(g)
    }

    /// Weights where `L(Λ)` can be nonzero at degree `d`, with one step of margin.
    pub fn weight_window(&self, d: i32) -> std::ops::RangeInclusive<i32> {
        let k1 = self.hw().h_eigenvalue() as i32;
        -k1 + d - 1..=-d + 1
    }
}

pub fn m1_grade(hw: HighestWeight, d: i32, w: i32) -> Result<Rc<GradeSpace>> {
    M1Builder::new(hw).grade(d, w)
}

pub fn l_dimension(hw: HighestWeight, d: i32, w: i32) -> Result<usize> {
    Ok(m1_grade(hw, d, w)?.l_dimension())
}

/// Rank of `M¹` at `(d, w)` from the unreduced family `u(π) r_{iα}(n) v_Λ`.
/// Much slower than [`M1Builder`]; kept as a cross-check.
pub fn m1_rank_direct(hw: HighestWeight, d: i32, w: i32) -> Result<usize> {
    let module = Module::new(hw);
    let g = GradeSpace::new(hw, d, w, module.grade_basis(d, w)?);
    let mut e = Echelon::new();
    let k = hw.level() as i32;
    for n in d..=0 {
        for i in -(k + 1)..=(k + 1) {
            let r = module.r_or_zero(i, n, &module.vacuum());
            if r.is_zero() {
                continue;
            }
            for pi in module.grade_basis(d - n, w - i)? {
                e.insert(g.coordinates(&module.act_monomial(&pi, &r))?);
            }
        }
    }
    Ok(e.rank())
}

/// `dim L(Λ)_{(d,w)}` for `0 >= d >= -max_depth` over [`M1Builder::weight_window`].
pub fn character_table(hw: HighestWeight, max_depth: u32) -> Result<BTreeMap<(i32, i32), usize>> {
    let b = M1Builder::new(hw);
    let mut out = BTreeMap::new();
    for d in (-(max_depth as i32)..=0).rev() {
        for w in b.weight_window(d) {
            out.insert((d, w), b.grade(d, w)?.l_dimension());
        }
    }
    Ok(out)
}

/// Exponent of `q` for the grade `(d, w)` under `e^{-α_i} ↦ q^{s_i}`.
pub fn grade_exponent(d: i32, w: i32, s0: u32, s1: u32) -> i64 {
    -(d as i64) * (s0 + s1) as i64 - w as i64 * s1 as i64
}

/// Collapse a character table to a series; exponents past the table depth are
/// not reliable, so the caller picks `n` below `max_depth * min(s0, s1)`.
pub fn specialize_table(table: &BTreeMap<(i32, i32), usize>, s0: u32, s1: u32, n: usize) -> QSeries {
    let mut c = vec![BigInt::zero(); n + 1];
    for (&(d, w), &dim) in table {
        let e = grade_exponent(d, w, s0, s1);
        assert!(e >= 0, "negative exponent at grade ({d}, {w})");
        if (e as usize) <= n {
            c[e as usize] += dim;
        }
    }
    QSeries::from_coeffs(c)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DimRow {
    pub k0: u32,
    pub k1: u32,
    pub d: i32,
    pub w: i32,
    pub dim_m: usize,
    pub rank_m1: usize,
    pub dim_l: usize,
    pub count_conditions: usize,
    #[serde(rename = "match")]
    pub matches: bool,
}

impl DimRow {
    pub const CSV_HEADER: &'static str = "k0,k1,d,w,dim_M,rank_M1,dim_L,count_conditions,match";

    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.k0, self.k1, self.d, self.w, self.dim_m, self.rank_m1, self.dim_l, self.count_conditions, self.matches
        )
    }
}

/// Dimension rows of `L(k0Λ₀ + k1Λ₁)` against the conditioned-partition count.
pub fn dims_table(k0: u32, k1: u32, max_depth: u32) -> Result<Vec<DimRow>> {
    let b = M1Builder::new(HighestWeight::verma(k0, k1));
    let mut rows = Vec::new();
    for d in (-(max_depth as i32)..=0).rev() {
        for w in b.weight_window(d) {
            let g = b.grade(d, w)?;
            let count = count_conditioned(k0, k1, d, w);
            rows.push(DimRow {
                k0,
                k1,
                d,
                w,
                dim_m: g.dim(),
                rank_m1: g.rank(),
                dim_l: g.l_dimension(),
                count_conditions: count,
                matches: g.l_dimension() == count,
            });
        }
    }
    Ok(rows)
}

/// How `ρ(π)` is picked among the ideal generators contained in `π`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RhoChoice {
    CmpMin,
    CmpMax,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BasisCheckReport {
    pub degree: i32,
    pub weight: i32,
    /// Ideal members at this grade.
    pub members: usize,
    pub rank_vectors: usize,
    pub rank_m1: usize,
    /// Rank of the vectors together with `M¹`.
    pub rank_union: usize,
    /// Every `u(π/ρ) r(ρ) v_Λ` has leading term `π`.
    pub leading_terms_ok: bool,
    /// The leading terms of `M¹` are exactly the ideal members.
    pub ideal_ok: bool,
}

impl BasisCheckReport {
    pub fn pass(&self) -> bool {
        self.leading_terms_ok
            && self.ideal_ok
            && self.rank_vectors == self.members
            && self.rank_m1 == self.members
            && self.rank_union == self.members
    }
}

fn require_verma(hw: HighestWeight) -> Result<()> {
    if hw.kind != ModuleKind::Verma {
        return domain("the basis of M¹ is indexed over Verma modules");
    }
    Ok(())
}

/// Build `u(π/ρ(π)) r(ρ(π)) v_Λ` for every ideal member `π` at `(d, w)` and compare
/// with `M¹`. `choose` gets `π` and the generators contained in it.
pub fn basis_check_652_with<F>(builder: &M1Builder, d: i32, w: i32, mut choose: F) -> Result<BasisCheckReport>
where
    F: FnMut(&ColoredPartition, &[ColoredPartition]) -> ColoredPartition,
{
    let hw = builder.hw();
    require_verma(hw)?;
    let module = builder.module();
    let g = builder.grade(d, w)?;
    let gens = catalog_lt_r_vlambda(hw.k0, hw.k1, d);
    let mut members = Vec::new();
    let mut vectors = Echelon::new();
    let mut leading_terms_ok = true;
    for pi in g.basis() {
        let inside: Vec<ColoredPartition> = gens.iter().filter(|r| pi.contains(r)).cloned().collect();
        if inside.is_empty() {
            continue;
        }
        members.push(pi.clone());
        let rho = choose(pi, &inside);
        let rest = pi.div(&rho).map_err(|_| Error::Domain(format!("chosen {rho} is not contained in {pi}")))?;
        if !inside.contains(&rho) {
            return domain(format!("{rho} is not a leading term of a relation"));
        }
        let r = module.r_or_zero(rho.weight(), rho.degree(), &module.vacuum());
        let v = module.act_monomial(&rest, &r);
        if v.leading_term().ok().as_ref() != Some(pi) {
            leading_terms_ok = false;
        }
        vectors.insert(g.coordinates(&v)?);
    }
    let rank_vectors = vectors.rank();
    let mut union = vectors;
    for row in g.rows() {
        union.insert(row.clone());
    }
    members.sort();
    Ok(BasisCheckReport {
        degree: d,
        weight: w,
        members: members.len(),
        rank_vectors,
        rank_m1: g.rank(),
        rank_union: union.rank(),
        leading_terms_ok,
        ideal_ok: g.leading_terms() == members,
    })
}

pub fn basis_check_652(builder: &M1Builder, d: i32, w: i32, choice: RhoChoice) -> Result<BasisCheckReport> {
    basis_check_652_with(builder, d, w, |_, inside| {
        let it = inside.iter().cloned();
        match choice {
            RhoChoice::CmpMin => it.min(),
            RhoChoice::CmpMax => it.max(),
        }
        .expect("nonempty")
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> ColoredPartition {
        s.parse().unwrap()
    }

    #[test]
    fn small_grades_for_lambda0() {
        let hw = HighestWeight::verma(1, 0);
        let g = m1_grade(hw, 0, -2).unwrap();
        assert_eq!((g.dim(), g.rank()), (1, 1));
        assert_eq!(l_dimension(hw, 0, 0).unwrap(), 1);
        assert_eq!(l_dimension(hw, -1, 0).unwrap(), count_conditioned(1, 0, -1, 0));
        assert_eq!(m1_grade(hw, 3, 0).unwrap().dim(), 0);
    }

    #[test]
    fn incremental_rank_matches_direct_family() {
        for hw in [HighestWeight::verma(1, 0), HighestWeight::verma(0, 1), HighestWeight::verma(1, 1)] {
            let b = M1Builder::new(hw);
            for d in -3..=0 {
                for w in b.weight_window(d) {
                    assert_eq!(b.grade(d, w).unwrap().rank(), m1_rank_direct(hw, d, w).unwrap(), "{hw} {d} {w}");
                }
            }
        }
    }

    #[test]
    fn depth_zero_is_the_y0_string() {
        let t = character_table(HighestWeight::verma(0, 2), 0).unwrap();
        let nonzero: Vec<_> = t.iter().filter(|(_, &v)| v > 0).map(|(&(_, w), &v)| (w, v)).collect();
        assert_eq!(nonzero, vec![(-2, 1), (-1, 1), (0, 1)]);
    }

    #[test]
    fn basis_check_on_a_small_grade() {
        let b = M1Builder::new(HighestWeight::verma(1, 0));
        let r = basis_check_652(&b, -2, 0, RhoChoice::CmpMin).unwrap();
        assert!(r.pass(), "{r:?}");
        let bad = basis_check_652_with(&b, -2, 0, |_, _| p("x(-5)"));
        assert!(bad.is_err());
    }
}
