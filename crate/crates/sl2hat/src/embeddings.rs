//! Embeddings `ρ ⊂ π` of leading terms of relations, and the classification of
//! pairs of embeddings into disjoint, linked and exceptional ones.

use std::collections::VecDeque;

use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::partitions::{catalog_lt_r_degree, Color, ColoredPartition, Part};

/// `ρ = π_{mα}(n) ⊂ π`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Embedding {
    pub rho: ColoredPartition,
    pub m: i32,
    pub n: i32,
}

/// All leading terms of relations contained in `pi`, ordered by `(n, m)`.
pub fn find_embeddings(pi: &ColoredPartition, k: u32) -> Vec<Embedding> {
    let (Some(lo), Some(hi)) = (pi.min_part(), pi.max_part()) else {
        return Vec::new();
    };
    if pi.length() < k + 1 {
        return Vec::new();
    }
    let l = k as i32 + 1;
    let mut out = Vec::new();
    for n in l * lo.degree..=l * hi.degree {
        for (m, rho) in catalog_lt_r_degree(k, n) {
            if pi.contains(&rho) {
                out.push(Embedding { rho, m, n });
            }
        }
    }
    out
}

/// Parameters of an exceptional family, unused ones zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct FamilyParams {
    pub j: i32,
    pub a: u32,
    pub b: u32,
    pub c: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "tag")]
pub enum PairClass {
    Identical,
    Disjoint,
    Linked,
    /// Overlapping embeddings with `ℓ(ρ₁ ∪ ρ₂) = k+2`. No chain can link them since
    /// two distinct embeddings always have a union of length at least `k+2`.
    MinimalOverlap,
    /// `also` is a second family containing the same partition. The family list
    /// overlaps at a few boundary parameters, e.g. (5) and (6) at `k = 2`.
    Exceptional { family: u8, params: FamilyParams, also: Option<u8> },
}

impl PairClass {
    pub fn name(&self) -> &'static str {
        match self {
            PairClass::Identical => "identical",
            PairClass::Disjoint => "disjoint",
            PairClass::Linked => "linked",
            PairClass::MinimalOverlap => "minimal-overlap",
            PairClass::Exceptional { .. } => "exceptional",
        }
    }

    pub fn family(&self) -> Option<u8> {
        match self {
            PairClass::Exceptional { family, .. } => Some(*family),
            _ => None,
        }
    }

    /// All matching families, ascending.
    pub fn families(&self) -> Vec<u8> {
        match self {
            PairClass::Exceptional { family, also, .. } => std::iter::once(*family).chain(*also).collect(),
            _ => Vec::new(),
        }
    }
}

/// Whether `e1`, `e2` are joined by a chain of embeddings in `pi` whose consecutive
/// unions are shorter than `ℓ(e1 ∪ e2)`.
pub fn linked(k: u32, pi: &ColoredPartition, e1: &ColoredPartition, e2: &ColoredPartition) -> bool {
    let bound = e1.union(e2).length();
    let embs: Vec<ColoredPartition> = find_embeddings(pi, k).into_iter().map(|e| e.rho).collect();
    let Some(start) = embs.iter().position(|r| r == e1) else { return false };
    let Some(goal) = embs.iter().position(|r| r == e2) else { return false };
    let mut seen = vec![false; embs.len()];
    let mut queue = VecDeque::from([start]);
    seen[start] = true;
    while let Some(i) = queue.pop_front() {
        if i == goal {
            return true;
        }
        for j in 0..embs.len() {
            if !seen[j] && embs[i].union(&embs[j]).length() < bound {
                seen[j] = true;
                queue.push_back(j);
            }
        }
    }
    false
}

/// Classify two embeddings in `ρ₁ ∪ ρ₂`. An overlapping, unlinked pair of length at
/// least `k+3` that fits none of the exceptional families is an inconsistency, and so
/// is one fitting more than two.
pub fn classify_pair(k: u32, e1: &Embedding, e2: &Embedding) -> Result<PairClass> {
    if e1.rho == e2.rho {
        return Ok(PairClass::Identical);
    }
    if e1.rho.intersect(&e2.rho).is_one() {
        return Ok(PairClass::Disjoint);
    }
    let pi = e1.rho.union(&e2.rho);
    if pi.length() == k + 2 {
        return Ok(PairClass::MinimalOverlap);
    }
    if linked(k, &pi, &e1.rho, &e2.rho) {
        return Ok(PairClass::Linked);
    }
    let mut matches = match_families(k, &pi);
    matches.dedup_by_key(|(f, _)| *f);
    match matches.as_slice() {
        [(family, params)] => Ok(PairClass::Exceptional { family: *family, params: *params, also: None }),
        [(family, params), (other, _)] => {
            Ok(PairClass::Exceptional { family: *family, params: *params, also: Some(*other) })
        }
        [] => Err(Error::Inconsistent(format!(
            "{} and {} in {pi} are not linked and {pi} is in no exceptional family",
            e1.rho, e2.rho
        ))),
        _ => Err(Error::Inconsistent(format!(
            "{pi} matches several exceptional families: {:?}",
            matches.iter().map(|(f, _)| *f).collect::<Vec<_>>()
        ))),
    }
}

/// Exceptional family `f` at anchor `j` with parameters `(a, b, c)`, or `None` when
/// the parameters are outside the family's range.
pub fn exceptional_family(k: u32, f: u8, j: i32, a: u32, b: u32, c: u32) -> Option<ColoredPartition> {
    let k = k as i64;
    let (a, b, c) = (a as i64, b as i64, c as i64);
    let k1 = k + 1;
    use Color::{H, X, Y};
    let (ok, parts): (bool, Vec<(Color, i32, i64)>) = match f {
        1 => (2 <= a && a <= k && b == 0 && c == 0, vec![(Y, 0, a), (H, 0, k1 - a), (X, 0, a)]),
        2 => (a >= 2 && a + b <= k && c == 0, vec![(X, 1, k1 - a - b), (Y, 0, a), (H, 0, b), (X, 0, a)]),
        3 => (
            1 <= a && a <= k - 1 && c == 0,
            vec![(H, 1, k1 - a - b), (X, 1, a), (Y, 0, b), (X, 0, k1 - a)],
        ),
        4 => (
            1 <= a + b && a + b <= k - 1 && c == 0,
            vec![(H, 1, k1 - a - b), (X, 1, a), (Y, 0, b), (H, 0, k1 - a - b)],
        ),
        5 => (
            1 <= a && a <= k - 1 && c == 0,
            vec![(Y, 1, k1 - a), (X, 1, b), (Y, 0, a), (H, 0, k1 - a - b)],
        ),
        6 => (a >= 2 && a + b <= k && c == 0, vec![(Y, 1, a), (H, 1, b), (X, 1, a), (Y, 0, k1 - a - b)]),
        7 => (
            a >= 1 && c >= 1 && a + b + c <= k,
            vec![(Y, 1, k1 - a - c), (H, 1, c), (X, 1, b), (Y, 0, a), (H, 0, k1 - a - b)],
        ),
        8 => (
            a >= 1 && c >= 1 && a + b + c <= k,
            vec![(H, 1, k1 - a - b), (X, 1, a), (Y, 0, b), (H, 0, c), (X, 0, k1 - a - c)],
        ),
        9 => (
            2 <= a && a <= k && c == 0,
            vec![(X, 2, a), (Y, 1, b), (H, 1, k1 - a - b), (Y, 0, a)],
        ),
        10 => (
            2 <= a && a <= k && c == 0,
            vec![(X, 2, a), (H, 1, k1 - a - b), (X, 1, b), (Y, 0, a)],
        ),
        11 => (
            1 <= b && b <= k - 1 && a + b + c <= k,
            vec![(X, 2, k1 - a - b), (H, 1, a), (X, 1, b), (Y, 0, c), (H, 0, k1 - b - c)],
        ),
        12 => (
            1 <= b && b <= k - 1 && a + b <= k,
            vec![(X, 2, k1 - a - b), (H, 1, a), (X, 1, b), (H, 0, c), (X, 0, k1 - b - c)],
        ),
        13 => (
            1 <= b && b <= k - 1 && a + b + c <= k,
            vec![(H, 2, k1 - b - c), (X, 2, c), (Y, 1, b), (H, 1, a), (Y, 0, k1 - a - b)],
        ),
        14 => (
            1 <= b && b <= k - 1 && a + b <= k,
            vec![(Y, 2, k1 - b - c), (H, 2, c), (Y, 1, b), (H, 1, a), (Y, 0, k1 - a - b)],
        ),
        _ => (false, Vec::new()),
    };
    if !ok || parts.iter().any(|&(_, _, e)| e < 0) {
        return None;
    }
    Some(ColoredPartition::from_counts(
        parts.into_iter().map(|(col, back, e)| (Part::new(col, j - back), e as u32)),
    ))
}

/// Does family `f` use parameter `c`? Families without it fix `c = 0`.
fn uses_c(f: u8) -> bool {
    matches!(f, 7 | 8 | 11 | 12 | 13 | 14)
}

/// Every `(family, params)` producing `pi` at the anchor `j = max degree of pi`.
pub fn match_families(k: u32, pi: &ColoredPartition) -> Vec<(u8, FamilyParams)> {
    let Some(top) = pi.max_part() else { return Vec::new() };
    let j = top.degree;
    let mut out = Vec::new();
    for f in 1..=14u8 {
        let cmax = if uses_c(f) { k + 1 } else { 0 };
        for a in 0..=k + 1 {
            for b in 0..=k + 1 {
                for c in 0..=cmax {
                    if exceptional_family(k, f, j, a, b, c).as_ref() == Some(pi) {
                        out.push((f, FamilyParams { j, a, b, c }));
                    }
                }
            }
        }
    }
    out
}

/// The family dual to `f` under `π ↦ π*`.
pub fn dual_family(f: u8) -> u8 {
    match f {
        2 => 6,
        6 => 2,
        3 => 5,
        5 => 3,
        7 => 8,
        8 => 7,
        9 => 10,
        10 => 9,
        11 => 13,
        13 => 11,
        12 => 14,
        14 => 12,
        f => f,
    }
}

/// `ρ*` translated by `shift`. For a union spanning degrees `lo..=hi`,
/// `shift = -lo - hi` keeps the span in place.
pub fn dual_embedding(e: &Embedding, shift: i32) -> Embedding {
    let rho = e.rho.dual().translate(shift);
    Embedding { m: rho.weight(), n: rho.degree(), rho }
}

/// One entry of the list of length `k+2` partitions with at least two embeddings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LengthK2Entry {
    pub pi: ColoredPartition,
    pub embeddings: usize,
    /// `1`, `2` or `3`: all parts in one degree, two degrees, or three.
    pub case: u8,
}

/// The length-`(k+2)` partitions with two or more embeddings, anchored at `j = -1`,
/// with their embedding counts. Case 3 uses degrees `-2, -1, 0`. Meant for `k >= 1`;
/// at `k = 0` every partition of length two has two embeddings.
pub fn length_k2_catalog(k: u32) -> Vec<LengthK2Entry> {
    let j = -1;
    let mut out: Vec<LengthK2Entry> = Vec::new();
    let mut push = |case: u8, n: usize, parts: &[(Part, u32)]| {
        let pi = ColoredPartition::from_counts(parts.iter().copied());
        debug_assert_eq!(pi.length(), k + 2);
        if !out.iter().any(|e| e.pi == pi) {
            out.push(LengthK2Entry { pi, embeddings: n, case });
        }
    };
    let (x, h, y) = (Part::x, Part::h, Part::y);
    for a in 1..=k + 1 {
        push(1, 2, &[(h(j), a), (x(j), k + 2 - a)]);
    }
    push(1, 2, &[(y(j), 1), (h(j), k), (x(j), 1)]);
    for a in 1..=k + 1 {
        push(1, 2, &[(y(j), k + 2 - a), (h(j), a)]);
    }
    let lo = j - 1;
    for a in 1..=k + 1 {
        let b = k + 2 - a;
        push(2, 2, &[(x(lo), a), (x(j), b)]);
        for c in 1..b {
            push(2, 3, &[(x(lo), a), (h(j), c), (x(j), b - c)]);
        }
        push(2, 2, &[(x(lo), a), (h(j), b)]);
        // Each of these needs only its own exponent to be at least two.
        if b >= 2 {
            push(2, 2, &[(x(lo), a), (y(j), 1), (h(j), b - 2), (x(j), 1)]);
        }
        for c in 1..b {
            push(2, 3, &[(x(lo), a), (y(j), c), (h(j), b - c)]);
        }
        push(2, 2, &[(x(lo), a), (y(j), b)]);
        push(2, 2, &[(h(lo), 1), (x(lo), a - 1), (y(j), b - 1), (h(j), 1)]);
        for c in 1..a {
            push(2, 3, &[(h(lo), c), (x(lo), a - c), (y(j), b)]);
        }
        push(2, 2, &[(h(lo), a), (y(j), b)]);
        if a >= 2 {
            push(2, 2, &[(y(lo), 1), (h(lo), a - 2), (x(lo), 1), (y(j), b)]);
        }
        for c in 1..a {
            push(2, 3, &[(y(lo), c), (h(lo), a - c), (y(j), b)]);
        }
        push(2, 2, &[(y(lo), a), (y(j), b)]);
        if b == 1 {
            push(2, 2, &[(x(lo), a), (h(j), 1)]);
            push(2, 2, &[(h(lo), 1), (x(lo), a - 1), (x(j), 1)]);
        }
        if a == 1 {
            push(2, 2, &[(h(lo), 1), (y(j), b)]);
            push(2, 2, &[(y(lo), 1), (y(j), b - 1), (h(j), 1)]);
        }
    }
    let hi = j + 1;
    push(3, 2, &[(x(lo), 1), (x(j), k), (x(hi), 1)]);
    push(3, 2, &[(x(lo), 1), (x(j), k), (h(hi), 1)]);
    for a in 0..=k {
        push(3, 2, &[(x(lo), 1), (h(j), a), (x(j), k - a), (y(hi), 1)]);
    }
    for a in 1..=k {
        push(3, 2, &[(x(lo), 1), (y(j), a), (h(j), k - a), (y(hi), 1)]);
    }
    push(3, 2, &[(y(lo), 1), (y(j), k), (y(hi), 1)]);
    push(3, 2, &[(h(lo), 1), (y(j), k), (y(hi), 1)]);
    out
}

/// `{pi, embeddings: [{m, n}], pair_classes: [{i, j, tag, family}]}`; pairs are
/// classified on their own union.
pub fn embedding_report(pi: &ColoredPartition, k: u32) -> Result<serde_json::Value> {
    let embs = find_embeddings(pi, k);
    let mut classes = Vec::new();
    for i in 0..embs.len() {
        for j in i + 1..embs.len() {
            let c = classify_pair(k, &embs[i], &embs[j])?;
            classes.push(json!({"i": i, "j": j, "tag": c.name(), "family": c.family(), "families": c.families()}));
        }
    }
    let list: Vec<_> = embs.iter().map(|e| json!({"m": e.m, "n": e.n, "rho": e.rho.to_string()})).collect();
    Ok(json!({"pi": pi.to_string(), "embeddings": list, "pair_classes": classes}))
}
