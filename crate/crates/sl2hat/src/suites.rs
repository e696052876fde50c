//! Verification batteries shared by the command line tool and the test suite.
//! Each suite streams one [`CheckRecord`] per check.

use serde_json::{json, Value};

use crate::embeddings::{
    classify_pair, dual_embedding, dual_family, exceptional_family, find_embeddings, length_k2_catalog,
    Embedding, PairClass,
};
use crate::error::{Error, Result};
use crate::liealg::{HighestWeight, Module};
use crate::modules::{basis_check_652, M1Builder, RhoChoice};
use crate::partitions::{
    catalog_lt_r, catalog_lt_r_degree, for_each_partition, lt_r_vlambda, ColoredPartition, EnumOptions, Part,
    PartSet,
};
use crate::qseries::{
    conditioned_partition_gf, identity_check, p_product, weyl_denominator, weyl_numerator, weyl_numerator_dual,
    ProductFormula, QSeries, Specialization,
};

pub const SUITES: [&str; 6] = ["identities", "relations", "leading-terms", "basis", "embeddings", "virasoro"];

/// One line of suite output.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckRecord {
    /// `"relation"` for the relations suite, `"check"` otherwise.
    pub key: &'static str,
    pub label: String,
    pub params: Value,
    pub vector: Option<String>,
    pub pass: bool,
    pub detail: Value,
}

impl CheckRecord {
    pub fn new(label: impl Into<String>, params: Value, pass: bool) -> CheckRecord {
        CheckRecord { key: "check", label: label.into(), params, vector: None, pass, detail: Value::Null }
    }

    pub fn with_detail(mut self, detail: Value) -> CheckRecord {
        self.detail = detail;
        self
    }

    pub fn to_json(&self) -> Value {
        let mut m = serde_json::Map::new();
        m.insert(self.key.to_string(), json!(self.label));
        m.insert("params".into(), self.params.clone());
        if let Some(v) = &self.vector {
            m.insert("vector".into(), json!(v));
        }
        m.insert("pass".into(), json!(self.pass));
        if !self.detail.is_null() {
            m.insert("detail".into(), self.detail.clone());
        }
        Value::Object(m)
    }
}

/// Parameters of a suite run. Unset weights mean "every `(k0, k1)` up to `max_level`".
#[derive(Debug, Clone, Copy)]
pub struct SuiteConfig {
    pub k0: Option<u32>,
    pub k1: Option<u32>,
    pub max_level: Option<u32>,
    pub depth: Option<u32>,
    pub truncate: usize,
}

impl Default for SuiteConfig {
    fn default() -> SuiteConfig {
        SuiteConfig { k0: None, k1: None, max_level: None, depth: None, truncate: 200 }
    }
}

impl SuiteConfig {
    /// The weights to run: the given one, or all of level at most `max_level`.
    pub fn weights(&self, default_level: u32) -> Vec<(u32, u32)> {
        match (self.k0, self.k1) {
            (Some(a), Some(b)) => vec![(a, b)],
            (Some(a), None) => vec![(a, 0)],
            (None, Some(b)) => vec![(0, b)],
            (None, None) => {
                let top = self.max_level.unwrap_or(default_level);
                (0..=top).flat_map(|k| (0..=k).rev().map(move |k0| (k0, k - k0))).collect()
            }
        }
    }

    pub fn levels(&self, default_level: u32) -> Vec<u32> {
        match (self.k0, self.k1) {
            (None, None) => (0..=self.max_level.unwrap_or(default_level)).collect(),
            _ => self.weights(default_level).into_iter().map(|(a, b)| a + b).collect(),
        }
    }
}

/// Run the named suite.
pub fn run_suite(name: &str, cfg: &SuiteConfig, sink: &mut dyn FnMut(CheckRecord)) -> Result<()> {
    match name {
        "identities" => identities(cfg.truncate, sink),
        "relations" => {
            for (k0, k1) in cfg.weights(2) {
                relations(k0, k1, cfg.depth.unwrap_or(4), sink)?;
            }
            Ok(())
        }
        "leading-terms" => {
            for k in cfg.levels(3) {
                leading_terms(k, sink)?;
            }
            Ok(())
        }
        "basis" => {
            for (k0, k1) in cfg.weights(2) {
                basis(k0, k1, cfg.depth.unwrap_or(5), sink)?;
            }
            Ok(())
        }
        "embeddings" => {
            for k in cfg.levels(2) {
                embeddings(k, sink)?;
            }
            Ok(())
        }
        "virasoro" => {
            for k in cfg.levels(3) {
                let depth = cfg.depth.unwrap_or(5);
                virasoro(k, depth, depth.min(3), sink)?;
            }
            Ok(())
        }
        other => Err(Error::Usage(format!("unknown suite {other:?}; expected one of {}", SUITES.join(", ")))),
    }
}

fn series_check(label: &str, params: Value, lhs: &QSeries, rhs: &QSeries) -> Result<CheckRecord> {
    Ok(match identity_check(lhs, rhs)? {
        Ok(()) => CheckRecord::new(label, params, true),
        Err(m) => CheckRecord::new(label, params, false).with_detail(json!(m)),
    })
}

/// The product formulas at the parameters the identity battery covers.
pub fn formula_instances() -> Vec<ProductFormula> {
    use ProductFormula::*;
    let mut out = Vec::new();
    for k in 0..=4u32 {
        for k0 in (0..=k).rev() {
            let k1 = k - k0;
            out.push(PrincipalRatio { k0, k1 });
            out.push(TwistedRatio { k0, k1 });
            if k != 2 * k1 {
                out.push(PrincipalGeneric { k0, k1 });
            }
            if k != 3 * k1 + 1 {
                out.push(TwistedGeneric { k0, k1 });
            }
        }
    }
    for n in 1..=3 {
        for (s0, s1) in [(1, 1), (1, 2), (2, 1), (2, 3)] {
            out.push(DualTwisted { n, s0, s1 });
            out.push(DualTwistedFlip { n, s0, s1 });
            out.push(DualScaled { n, s0, s1 });
        }
    }
    for n in 1..=4 {
        out.push(PrincipalDiagonal { n });
    }
    for n in 1..=3 {
        out.push(PrincipalSkew { n });
    }
    for n in 2..=4 {
        out.push(TwistedSkew { n });
        out.push(TwistedDiagonal { n });
    }
    out
}

/// Plain partitions of `0..=max_n` counted two ways: distinct parts, and parts
/// repeated at most twice under the three-term window conditions with `f_1, f_2 <= 1`.
pub fn window_partition_counts(max_n: usize) -> (Vec<u64>, Vec<u64>) {
    fn rec(part: usize, rest: usize, f: &mut Vec<u8>, cap: u8, windows: bool, out: &mut u64) {
        if rest == 0 {
            if !windows || window_ok(f) {
                *out += 1;
            }
            return;
        }
        if part == 0 {
            return;
        }
        for m in 0..=cap.min((rest / part) as u8) {
            f[part] = m;
            rec(part - 1, rest - m as usize * part, f, cap, windows, out);
        }
        f[part] = 0;
    }
    fn window_ok(f: &[u8]) -> bool {
        let g = |i: i64| if i <= 0 || i as usize >= f.len() { 0 } else { f[i as usize] };
        if g(1) > 1 || g(2) > 1 {
            return false;
        }
        let top = f.len() as i64 / 3 + 1;
        (0..=top).all(|j| {
            let t = 3 * j;
            g(t + 2) + g(t + 1) + g(t) <= 2
                && g(t + 2) + g(t) + g(t - 1) <= 2
                && g(t + 1) + g(t) + g(t - 2) <= 2
                && g(t) + g(t - 1) + g(t - 2) <= 2
        })
    }
    let mut distinct = vec![0; max_n + 1];
    let mut windowed = vec![0; max_n + 1];
    for n in 0..=max_n {
        let mut f = vec![0u8; n + 1];
        rec(n, n, &mut f, 1, false, &mut distinct[n]);
        rec(n, n, &mut f, 2, true, &mut windowed[n]);
    }
    (distinct, windowed)
}

/// Product formulas, the denominator identity, numerator duality, the partition
/// generating functions and the window identity on plain partitions.
pub fn identities(n: usize, sink: &mut dyn FnMut(CheckRecord)) -> Result<()> {
    for f in formula_instances() {
        let params = json!({"formula": f, "truncate": n});
        let r = match f.check(n)? {
            Ok(()) => CheckRecord::new(f.id(), params, true),
            Err(m) => CheckRecord::new(f.id(), params, false).with_detail(json!(m)),
        };
        sink(r);
    }
    for s0 in 1..=4 {
        for s1 in 1..=4 {
            let params = json!({"s0": s0, "s1": s1, "truncate": n});
            sink(series_check("denominator", params, &p_product(s0, s1, n), &weyl_denominator(s0, s1, n))?);
        }
    }
    for k in 0..=3u32 {
        for k0 in (0..=k).rev() {
            for (s0, s1) in [(1, 2), (2, 1), (1, 1)] {
                let k1 = k - k0;
                let params = json!({"k0": k0, "k1": k1, "s0": s0, "s1": s1, "truncate": n});
                let lhs = weyl_numerator(k0, k1, s0, s1, n);
                let rhs = weyl_numerator_dual(k0, k1, s0, s1, n);
                sink(series_check("duality", params, &lhs, &rhs)?);
            }
        }
    }
    let gf_n = n.min(30);
    for k in 0..=2u32 {
        for k0 in (0..=k).rev() {
            for (s0, s1) in [(1, 2), (2, 1), (1, 1)] {
                let k1 = k - k0;
                let params = json!({"k0": k0, "k1": k1, "s0": s0, "s1": s1, "truncate": gf_n});
                let gf = conditioned_partition_gf(k0, k1, Specialization::new(s0, s1)?, gf_n);
                let ch = crate::qseries::specialized_character(k0, k1, s0, s1, gf_n);
                sink(series_check("gf", params, &gf, &ch)?);
            }
        }
    }
    let (distinct, windowed) = window_partition_counts(gf_n);
    let lhs = QSeries::from_coeffs(distinct.iter().map(|&c| c.into()).collect());
    let rhs = QSeries::from_coeffs(windowed.iter().map(|&c| c.into()).collect());
    sink(series_check("window-partitions", json!({"max_n": gf_n}), &lhs, &rhs)?);
    Ok(())
}

/// Verma basis vectors of degree `d` with at most two factors `y(0)`.
pub fn capped_verma_basis(d: i32) -> Result<Vec<ColoredPartition>> {
    let mut out = Vec::new();
    let opts = EnumOptions { max_length: Some((-d) as u32 + Y0_CAP), ..Default::default() };
    for_each_partition(PartSet::Verma, d, opts, |p| {
        if p.multiplicity(Part::y(0)) <= Y0_CAP {
            out.push(p.clone());
        }
    })?;
    Ok(out)
}

/// Largest power of `y(0)` in the test vectors of the relation and Virasoro suites.
pub const Y0_CAP: u32 = 2;

/// Relations among relations on every capped Verma basis vector of degree
/// `>= -depth`, for `|n| <= 6`.
pub fn relations(k0: u32, k1: u32, depth: u32, sink: &mut dyn FnMut(CheckRecord)) -> Result<()> {
    let m = Module::new(HighestWeight::verma(k0, k1));
    for d in (-(depth as i32)..=0).rev() {
        for pi in capped_verma_basis(d)? {
            let v = m.basis_vector(&pi)?;
            for n in -6..=6 {
                for c in m.relation_battery(n, &v) {
                    sink(CheckRecord {
                        key: "relation",
                        label: c.relation.label().to_string(),
                        params: json!({"k0": k0, "k1": k1, "i": c.i, "n": n}),
                        vector: Some(pi.to_string()),
                        pass: c.pass,
                        detail: Value::Null,
                    });
                }
            }
        }
    }
    Ok(())
}

/// Computed leading terms of `r_{iα}(n)` on the vacuum against the catalogs, for
/// `-12 <= n <= 0`, on `N(kΛ₀)` and on every Verma module of level `k`.
pub fn leading_terms(k: u32, sink: &mut dyn FnMut(CheckRecord)) -> Result<()> {
    let l = k as i32 + 1;
    let g = Module::new(HighestWeight::generalized_verma(k));
    for n in (-12..=-l).rev() {
        for i in -l..=l {
            let got = g.relation_leading_term(i, n);
            let want = catalog_lt_r(k, i, n)?;
            let params = json!({"module": "N", "k": k, "i": i, "n": n});
            let pass = got.as_ref() == Some(&want);
            sink(CheckRecord::new("lt", params, pass).with_detail(json!({
                "computed": got.map(|p| p.to_string()),
                "catalog": want.to_string(),
            })));
        }
    }
    for k0 in (0..=k).rev() {
        let k1 = k - k0;
        let m = Module::new(HighestWeight::verma(k0, k1));
        for n in (-12..=0).rev() {
            for i in -l..=l {
                let got = m.relation_leading_term(i, n);
                let want = lt_r_vlambda(k0, k1, i, n);
                let params = json!({"module": "M", "k0": k0, "k1": k1, "i": i, "n": n});
                sink(CheckRecord::new("lt", params, got == want).with_detail(json!({
                    "computed": got.map(|p| p.to_string()),
                    "catalog": want.map(|p| p.to_string()),
                })));
            }
        }
    }
    Ok(())
}

/// The leading terms of relations, independent of any module, form a set of
/// distinct partitions per degree. Checked for `-12 <= n <= 0`.
pub fn catalog_distinct(k: u32) -> bool {
    (-12..=0).all(|n| {
        let mut v: Vec<ColoredPartition> = catalog_lt_r_degree(k, n).into_iter().map(|(_, p)| p).collect();
        let len = v.len();
        v.sort();
        v.dedup();
        v.len() == len && len == 2 * k as usize + 3
    })
}

/// The basis of `M¹` from ideal members, under both choices of `ρ(π)`, for every
/// grade of degree `>= -depth`.
pub fn basis(k0: u32, k1: u32, depth: u32, sink: &mut dyn FnMut(CheckRecord)) -> Result<()> {
    let b = M1Builder::new(HighestWeight::verma(k0, k1));
    for d in (-(depth as i32)..=0).rev() {
        for w in b.weight_window(d) {
            for (choice, name) in [(RhoChoice::CmpMin, "min"), (RhoChoice::CmpMax, "max")] {
                let r = basis_check_652(&b, d, w, choice)?;
                let params = json!({"k0": k0, "k1": k1, "d": d, "w": w, "choice": name});
                sink(CheckRecord::new("basis", params, r.pass()).with_detail(json!(r)));
            }
        }
    }
    Ok(())
}

/// Every pair of leading terms with parts in degrees `-2, -1, 0`, classified on
/// their union, with the dual pair classified alongside. Also checks the embedding
/// counts of the length `k+2` list and that each exceptional partition lies in the
/// families it is reported in.
pub fn embeddings(k: u32, sink: &mut dyn FnMut(CheckRecord)) -> Result<()> {
    for e in length_k2_catalog(k) {
        let found = find_embeddings(&e.pi, k).len();
        let params = json!({"k": k, "pi": e.pi.to_string(), "case": e.case});
        sink(CheckRecord::new("length-k2", params, found == e.embeddings)
            .with_detail(json!({"listed": e.embeddings, "found": found})));
    }
    let l = k as i32 + 1;
    let mut rhos: Vec<Embedding> = Vec::new();
    for n in -2 * l..=0 {
        for (m, rho) in catalog_lt_r_degree(k, n) {
            rhos.push(Embedding { rho, m, n });
        }
    }
    for a in 0..rhos.len() {
        for b in a + 1..rhos.len() {
            let (e1, e2) = (&rhos[a], &rhos[b]);
            let pi = e1.rho.union(&e2.rho);
            let params = json!({"k": k, "rho1": e1.rho.to_string(), "rho2": e2.rho.to_string()});
            let class = match classify_pair(k, e1, e2) {
                Ok(c) => c,
                Err(e) => {
                    sink(CheckRecord::new("classify", params, false).with_detail(json!(e.to_string())));
                    continue;
                }
            };
            let in_families = match class {
                PairClass::Exceptional { family, params: fp, .. } => {
                    exceptional_family(k, family, fp.j, fp.a, fp.b, fp.c).as_ref() == Some(&pi)
                }
                _ => true,
            };
            let shift = -pi.min_part().map_or(0, |p| p.degree) - pi.max_part().map_or(0, |p| p.degree);
            let dual = classify_pair(k, &dual_embedding(e1, shift), &dual_embedding(e2, shift))?;
            let mut mapped: Vec<u8> = class.families().into_iter().map(dual_family).collect();
            mapped.sort_unstable();
            let dual_ok = dual.name() == class.name() && dual.families() == mapped;
            let detail = json!({
                "tag": class.name(),
                "families": class.families(),
                "dual_tag": dual.name(),
                "dual_families": dual.families(),
            });
            sink(CheckRecord::new("classify", params, in_families && dual_ok).with_detail(detail));
        }
    }
    Ok(())
}

/// Virasoro relations for `|m|, |n| <= 3` on every basis vector of `N(kΛ₀)` of
/// degree `>= -depth`, and `L_{-1}` against the derivation formula there. On the
/// Verma modules of level `k` the Virasoro relations are checked on capped basis
/// vectors of degree `>= -verma_depth`.
pub fn virasoro(k: u32, depth: u32, verma_depth: u32, sink: &mut dyn FnMut(CheckRecord)) -> Result<()> {
    let g = Module::new(HighestWeight::generalized_verma(k));
    let commutators = |m: &Module, v: &crate::liealg::ModuleVector| {
        let mut bad = Vec::new();
        for a in -3..=3 {
            for b in -3..=3 {
                if !m.virasoro_check(a, b, v) {
                    bad.push([a, b]);
                }
            }
        }
        bad
    };
    for d in (-(depth as i32)..=0).rev() {
        let basis = crate::partitions::enumerate(PartSet::Negative, d, EnumOptions::default())?;
        for pi in basis {
            let v = g.basis_vector(&pi)?;
            let bad = commutators(&g, &v);
            let params = json!({"k": k, "module": "N", "vector": pi.to_string()});
            sink(CheckRecord::new("virasoro", params, bad.is_empty()).with_detail(json!({"failed": bad})));
            let l = g.sugawara_l(-1, &v);
            let der = g.l_minus1_derivation(&v)?;
            let params = json!({"k": k, "vector": pi.to_string()});
            sink(CheckRecord::new("l-1", params, l.sub(&der).is_zero()));
        }
    }
    for k0 in (0..=k).rev() {
        let m = Module::new(HighestWeight::verma(k0, k - k0));
        for d in (-(verma_depth as i32)..=0).rev() {
            for pi in capped_verma_basis(d)? {
                let v = m.basis_vector(&pi)?;
                let bad = commutators(&m, &v);
                let params = json!({"k0": k0, "k1": k - k0, "module": "M", "vector": pi.to_string()});
                sink(CheckRecord::new("virasoro", params, bad.is_empty()).with_detail(json!({"failed": bad})));
            }
        }
    }
    Ok(())
}
