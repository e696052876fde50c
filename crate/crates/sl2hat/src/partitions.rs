//! Colored partitions over `{x, h, y} x Z`, the total order used for leading
//! terms, and the closed-form catalogs of leading terms of relations.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{domain, Error, Result};

/// Color of a part. The declaration order is the order on colors: `y < h < x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Color {
    Y,
    H,
    X,
}

impl Color {
    pub const ALL: [Color; 3] = [Color::Y, Color::H, Color::X];

    /// Weight in units of the simple root of sl2.
    pub fn weight(self) -> i32 {
        match self {
            Color::X => 1,
            Color::H => 0,
            Color::Y => -1,
        }
    }

    pub fn dual(self) -> Color {
        match self {
            Color::X => Color::Y,
            Color::H => Color::H,
            Color::Y => Color::X,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Color::X => 'x',
            Color::H => 'h',
            Color::Y => 'y',
        }
    }

    pub fn from_symbol(c: char) -> Option<Color> {
        match c {
            'x' => Some(Color::X),
            'h' => Some(Color::H),
            'y' => Some(Color::Y),
            _ => None,
        }
    }
}

/// The element `color ⊗ t^degree`. Field order makes the derived `Ord` the
/// order on parts: degree first, then color.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Part {
    pub degree: i32,
    pub color: Color,
}

impl Part {
    pub const fn new(color: Color, degree: i32) -> Part {
        Part { degree, color }
    }
    pub const fn x(degree: i32) -> Part {
        Part::new(Color::X, degree)
    }
    pub const fn h(degree: i32) -> Part {
        Part::new(Color::H, degree)
    }
    pub const fn y(degree: i32) -> Part {
        Part::new(Color::Y, degree)
    }

    pub fn weight(self) -> i32 {
        self.color.weight()
    }

    pub fn dual(self) -> Part {
        Part::new(self.color.dual(), -self.degree)
    }

    /// `τ_N(b(i)) = b(i - N)`.
    pub fn translate(self, n: i32) -> Part {
        Part::new(self.color, self.degree - n)
    }
}

impl fmt::Display for Part {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.color.symbol(), self.degree)
    }
}

/// A finite multiset of parts, stored as an ascending run-length list.
///
/// `Ord` is the order of the theory: longer partitions are smaller, then
/// smaller degree is smaller, then degree sequences and finally the parts
/// themselves are compared from the top. The empty partition is the largest
/// element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ColoredPartition {
    parts: Vec<(Part, u32)>,
    len: u32,
    degree: i32,
    weight: i32,
}

impl ColoredPartition {
    pub fn one() -> ColoredPartition {
        ColoredPartition::default()
    }

    pub fn from_parts<I: IntoIterator<Item = Part>>(parts: I) -> ColoredPartition {
        ColoredPartition::from_counts(parts.into_iter().map(|p| (p, 1)))
    }

    pub fn from_counts<I: IntoIterator<Item = (Part, u32)>>(counts: I) -> ColoredPartition {
        let mut v: Vec<(Part, u32)> = counts.into_iter().filter(|&(_, m)| m > 0).collect();
        v.sort_by_key(|&(p, _)| p);
        let mut merged: Vec<(Part, u32)> = Vec::with_capacity(v.len());
        for (p, m) in v {
            match merged.last_mut() {
                Some((q, n)) if *q == p => *n += m,
                _ => merged.push((p, m)),
            }
        }
        ColoredPartition::from_sorted(merged)
    }

    fn from_sorted(parts: Vec<(Part, u32)>) -> ColoredPartition {
        let mut len = 0;
        let mut degree = 0;
        let mut weight = 0;
        for &(p, m) in &parts {
            len += m;
            degree += p.degree * m as i32;
            weight += p.weight() * m as i32;
        }
        ColoredPartition { parts, len, degree, weight }
    }

    pub fn single(p: Part) -> ColoredPartition {
        ColoredPartition::from_sorted(vec![(p, 1)])
    }

    pub fn is_one(&self) -> bool {
        self.parts.is_empty()
    }

    /// `ℓ(π)`
    pub fn length(&self) -> u32 {
        self.len
    }

    /// `|π|`
    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn weight(&self) -> i32 {
        self.weight
    }

    /// Run-length view, ascending.
    pub fn counts(&self) -> &[(Part, u32)] {
        &self.parts
    }

    pub fn multiplicity(&self, p: Part) -> u32 {
        match self.parts.binary_search_by_key(&p, |&(q, _)| q) {
            Ok(i) => self.parts[i].1,
            Err(_) => 0,
        }
    }

    /// Parts in ascending order, repeated by multiplicity.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = Part> + '_ {
        self.parts
            .iter()
            .flat_map(|&(p, m)| std::iter::repeat(p).take(m as usize))
    }

    pub fn min_part(&self) -> Option<Part> {
        self.parts.first().map(|&(p, _)| p)
    }

    pub fn max_part(&self) -> Option<Part> {
        self.parts.last().map(|&(p, _)| p)
    }

    pub fn shape(&self) -> Shape {
        Shape(self.iter().map(|p| p.degree).collect())
    }

    /// `π` with one more copy of `p`.
    pub fn with_part(&self, p: Part) -> ColoredPartition {
        let mut parts = self.parts.clone();
        match parts.binary_search_by_key(&p, |&(q, _)| q) {
            Ok(i) => parts[i].1 += 1,
            Err(i) => parts.insert(i, (p, 1)),
        }
        ColoredPartition {
            parts,
            len: self.len + 1,
            degree: self.degree + p.degree,
            weight: self.weight + p.weight(),
        }
    }

    /// `π` with one copy of `p` removed, if present.
    pub fn without_part(&self, p: Part) -> Option<ColoredPartition> {
        let i = self.parts.binary_search_by_key(&p, |&(q, _)| q).ok()?;
        let mut parts = self.parts.clone();
        if parts[i].1 == 1 {
            parts.remove(i);
        } else {
            parts[i].1 -= 1;
        }
        Some(ColoredPartition {
            parts,
            len: self.len - 1,
            degree: self.degree - p.degree,
            weight: self.weight - p.weight(),
        })
    }

    fn merge_with(&self, other: &ColoredPartition, f: impl Fn(u32, u32) -> u32) -> ColoredPartition {
        let mut out = Vec::with_capacity(self.parts.len() + other.parts.len());
        let (a, b) = (&self.parts, &other.parts);
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let (p, ma, mb) = if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                i += 1;
                (a[i - 1].0, a[i - 1].1, 0)
            } else if i == a.len() || b[j].0 < a[i].0 {
                j += 1;
                (b[j - 1].0, 0, b[j - 1].1)
            } else {
                i += 1;
                j += 1;
                (a[i - 1].0, a[i - 1].1, b[j - 1].1)
            };
            let m = f(ma, mb);
            if m > 0 {
                out.push((p, m));
            }
        }
        ColoredPartition::from_sorted(out)
    }

    /// Product in the monoid: multiplicities add.
    pub fn mul(&self, other: &ColoredPartition) -> ColoredPartition {
        self.merge_with(other, |a, b| a + b)
    }

    /// `π/ρ`; requires `ρ ⊂ π`.
    pub fn div(&self, rho: &ColoredPartition) -> Result<ColoredPartition> {
        if !self.contains(rho) {
            return domain(format!("{rho} is not contained in {self}"));
        }
        Ok(self.merge_with(rho, |a, b| a - b))
    }

    pub fn union(&self, other: &ColoredPartition) -> ColoredPartition {
        self.merge_with(other, u32::max)
    }

    pub fn intersect(&self, other: &ColoredPartition) -> ColoredPartition {
        self.merge_with(other, u32::min)
    }

    /// `ρ ⊂ π`: pointwise `≤` on multiplicities.
    pub fn contains(&self, rho: &ColoredPartition) -> bool {
        if rho.len > self.len {
            return false;
        }
        rho.parts.iter().all(|&(p, m)| self.multiplicity(p) >= m)
    }

    pub fn dual(&self) -> ColoredPartition {
        ColoredPartition::from_counts(self.parts.iter().map(|&(p, m)| (p.dual(), m)))
    }

    /// Shift every degree by `-n`.
    pub fn translate(&self, n: i32) -> ColoredPartition {
        let parts = self.parts.iter().map(|&(p, m)| (p.translate(n), m)).collect();
        ColoredPartition::from_sorted(parts)
    }

    /// Weight and degree of the image under the `(s0, s1)` specialization,
    /// for partitions over the Verma alphabet.
    pub fn specialized_degree(&self, s0: u32, s1: u32) -> i64 {
        self.iter().map(|p| part_exponent(p, s0, s1)).sum()
    }
}

/// Exponent of `q` assigned to a part under the `(s0, s1)` specialization:
/// `e^{-α_i} ↦ q^{s_i}`, `e^{-δ} ↦ q^{s0+s1}`.
pub fn part_exponent(p: Part, s0: u32, s1: u32) -> i64 {
    let s = (s0 + s1) as i64;
    -(p.degree as i64) * s - p.weight() as i64 * s1 as i64
}

/// Paper order comparison; `Less` means `π ≺ π'`.
pub fn cmp(a: &ColoredPartition, b: &ColoredPartition) -> Ordering {
    a.cmp(b)
}

impl Ord for ColoredPartition {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .len
            .cmp(&self.len)
            .then(self.degree.cmp(&other.degree))
            .then_with(|| {
                for (p, q) in self.iter().rev().zip(other.iter().rev()) {
                    match p.degree.cmp(&q.degree) {
                        Ordering::Equal => {}
                        o => return o,
                    }
                }
                Ordering::Equal
            })
            .then_with(|| {
                for (p, q) in self.iter().rev().zip(other.iter().rev()) {
                    match p.cmp(&q) {
                        Ordering::Equal => {}
                        o => return o,
                    }
                }
                Ordering::Equal
            })
    }
}

impl PartialOrd for ColoredPartition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ColoredPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "1");
        }
        let mut after_power = false;
        for &(p, m) in &self.parts {
            if after_power {
                write!(f, " ")?;
            }
            write!(f, "{p}")?;
            after_power = m > 1;
            if after_power {
                write!(f, "^{m}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for ColoredPartition {
    type Err = Error;

    /// Accepts the display grammar, e.g. `y(-3)x(-2)^2 y(0)` or `1`. Parts may
    /// appear in any order.
    fn from_str(s: &str) -> Result<Self> {
        let err = |msg: &str| Error::Parse(format!("{msg} in {s:?}"));
        let t = s.trim();
        if t == "1" || t.is_empty() {
            return Ok(ColoredPartition::one());
        }
        let bytes: Vec<char> = t.chars().collect();
        let mut i = 0;
        let mut counts = Vec::new();
        let skip_ws = |i: &mut usize| {
            while *i < bytes.len() && bytes[*i].is_whitespace() {
                *i += 1;
            }
        };
        let read_int = |i: &mut usize| -> Option<i64> {
            let start = *i;
            if *i < bytes.len() && (bytes[*i] == '-' || bytes[*i] == '+') {
                *i += 1;
            }
            while *i < bytes.len() && bytes[*i].is_ascii_digit() {
                *i += 1;
            }
            bytes[start..*i].iter().collect::<String>().parse().ok()
        };
        while {
            skip_ws(&mut i);
            i < bytes.len()
        } {
            let color = Color::from_symbol(bytes[i]).ok_or_else(|| err("expected a color"))?;
            i += 1;
            if bytes.get(i) != Some(&'(') {
                return Err(err("expected '('"));
            }
            i += 1;
            skip_ws(&mut i);
            let degree = read_int(&mut i).ok_or_else(|| err("expected a degree"))?;
            skip_ws(&mut i);
            if bytes.get(i) != Some(&')') {
                return Err(err("expected ')'"));
            }
            i += 1;
            let mut mult = 1;
            if bytes.get(i) == Some(&'^') {
                i += 1;
                mult = read_int(&mut i).ok_or_else(|| err("expected an exponent"))?;
                if mult < 0 {
                    return Err(err("negative exponent"));
                }
            }
            let degree = i32::try_from(degree).map_err(|_| err("degree out of range"))?;
            counts.push((Part::new(color, degree), mult as u32));
        }
        Ok(ColoredPartition::from_counts(counts))
    }
}

impl Serialize for ColoredPartition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<(String, i32, u32)> = self
            .parts
            .iter()
            .map(|&(p, m)| (p.color.symbol().to_string(), p.degree, m))
            .collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ColoredPartition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v: Vec<(String, i32, u32)> = Vec::deserialize(d)?;
        let mut counts = Vec::with_capacity(v.len());
        for (c, deg, m) in v {
            let mut chars = c.chars();
            let color = match (chars.next().and_then(Color::from_symbol), chars.next()) {
                (Some(color), None) => color,
                _ => return Err(D::Error::custom(format!("bad color {c:?}"))),
            };
            counts.push((Part::new(color, deg), m));
        }
        Ok(ColoredPartition::from_counts(counts))
    }
}

/// A plain partition: ascending multiset of integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Shape(pub Vec<i32>);

impl Shape {
    pub fn degree(&self) -> i32 {
        self.0.iter().sum()
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|d| format!("({d})")).collect();
        write!(f, "{}", s.join(""))
    }
}

/// True iff some generator is contained in `pi`.
pub fn in_ideal<'a, I>(pi: &ColoredPartition, generators: I) -> bool
where
    I: IntoIterator<Item = &'a ColoredPartition>,
{
    generators.into_iter().any(|g| pi.contains(g))
}

/// For `n`, the shape `(j-1)^a j^b` of length `k+1` and degree `n` with `0 <= a <= k`.
pub fn lt_shape(k: u32, n: i32) -> (i32, u32, u32) {
    let l = k as i32 + 1;
    let j = n.div_euclid(l) + if n.rem_euclid(l) == 0 { 0 } else { 1 };
    let a = (l * j - n) as u32;
    (j, a, k + 1 - a)
}

fn pw(p: Part, m: u32) -> (Part, u32) {
    (p, m)
}

/// All elements `π_{mα}(n)` of `lt(R̄)` of degree `n`, as `(m, π)` sorted by `m`.
pub fn catalog_lt_r_degree(k: u32, n: i32) -> Vec<(i32, ColoredPartition)> {
    let (j, a, b) = lt_shape(k, n);
    let k1 = k as i32 + 1;
    let (ai, bi) = (a as i32, b as i32);
    let (lo, hi) = (j - 1, j);
    let mut raw: Vec<(i32, ColoredPartition)> = Vec::new();
    for r in 0..=a {
        let p = ColoredPartition::from_counts([
            pw(Part::y(lo), r),
            pw(Part::h(lo), a - r),
            pw(Part::y(hi), b),
        ]);
        raw.push((-k1 + ai - r as i32, p));
    }
    for r in 0..a {
        let p = ColoredPartition::from_counts([
            pw(Part::h(lo), r),
            pw(Part::x(lo), a - r),
            pw(Part::y(hi), b),
        ]);
        raw.push((-k1 + 2 * ai - r as i32, p));
    }
    for r in 0..=b {
        let p = ColoredPartition::from_counts([
            pw(Part::x(lo), a),
            pw(Part::y(hi), r),
            pw(Part::h(hi), b - r),
        ]);
        raw.push((k1 - bi - r as i32, p));
    }
    for r in 0..b {
        let p = ColoredPartition::from_counts([
            pw(Part::x(lo), a),
            pw(Part::h(hi), r),
            pw(Part::x(hi), b - r),
        ]);
        raw.push((k1 - r as i32, p));
    }
    raw.sort_by_key(|(m, _)| *m);
    let mut out: Vec<(i32, ColoredPartition)> = Vec::with_capacity(2 * k as usize + 3);
    for (m, p) in raw {
        debug_assert_eq!(p.weight(), m);
        match out.last() {
            Some((m2, q)) if *m2 == m => {
                assert_eq!(*q, p, "two catalog elements share (m, n) = ({m}, {n})");
            }
            _ => out.push((m, p)),
        }
    }
    out
}

/// `π_{mα}(n)`, the leading term of `r_{mα}(n)`.
pub fn catalog_lt_r(k: u32, m: i32, n: i32) -> Result<ColoredPartition> {
    if m.unsigned_abs() > k + 1 {
        return domain(format!("|m| = {} exceeds k+1 = {}", m.abs(), k + 1));
    }
    let all = catalog_lt_r_degree(k, n);
    Ok(all
        .into_iter()
        .find(|(mm, _)| *mm == m)
        .map(|(_, p)| p)
        .expect("catalog covers every m in [-k-1, k+1]"))
}

/// Leading term of `r_{mα}(n) v_Λ` in `M(Λ)`, or `None` when that vector is zero.
pub fn lt_r_vlambda(k0: u32, k1: u32, m: i32, n: i32) -> Option<ColoredPartition> {
    let k = k0 + k1;
    if m.unsigned_abs() > k + 1 || n > 0 {
        return None;
    }
    if n <= -(k as i32) - 1 {
        return catalog_lt_r(k, m, n).ok();
    }
    initial_terms_at(k0, k1, n).into_iter().find(|(mm, _)| *mm == m).map(|(_, p)| p)
}

fn initial_terms_at(k0: u32, k1: u32, n: i32) -> Vec<(i32, ColoredPartition)> {
    let k = k0 + k1;
    let a = (-n) as u32;
    let b = k + 1 - a;
    let y0 = Part::y(0);
    let mut out = Vec::new();
    for r in 0..=a {
        let p = ColoredPartition::from_counts([
            pw(Part::y(-1), r),
            pw(Part::h(-1), a - r),
            pw(y0, b),
        ]);
        out.push((-(r as i32) - b as i32, p));
    }
    for r in 0..a {
        let p = ColoredPartition::from_counts([
            pw(Part::h(-1), r),
            pw(Part::x(-1), a - r),
            pw(y0, b),
        ]);
        out.push((a as i32 - b as i32 - r as i32, p));
    }
    for r in 0..b {
        if a > k0 || r > k1 {
            let p = ColoredPartition::from_counts([pw(Part::x(-1), a), pw(y0, r)]);
            out.push((a as i32 - r as i32, p));
        }
    }
    out.sort_by_key(|(m, _)| *m);
    out
}

/// The Λ-dependent leading terms `π^Λ_{mα}(n)` for `-k-1 < n <= 0`, as `(m, n, π)`.
pub fn initial_terms(k0: u32, k1: u32) -> Vec<(i32, i32, ColoredPartition)> {
    let k = (k0 + k1) as i32;
    let mut out = Vec::new();
    for n in (-k..=0).rev() {
        for (m, p) in initial_terms_at(k0, k1, n) {
            out.push((m, n, p));
        }
    }
    out
}

/// Generators of the ideal `(lt(R̄ v_Λ))` of degree at least `min_degree`.
pub fn catalog_lt_r_vlambda(k0: u32, k1: u32, min_degree: i32) -> Vec<ColoredPartition> {
    let k = (k0 + k1) as i32;
    let mut out: Vec<ColoredPartition> = initial_terms(k0, k1)
        .into_iter()
        .filter(|(_, n, _)| *n >= min_degree)
        .map(|(_, _, p)| p)
        .collect();
    let mut n = -k - 1;
    while n >= min_degree {
        out.extend(catalog_lt_r_degree(k0 + k1, n).into_iter().map(|(_, p)| p));
        n -= 1;
    }
    out
}

/// The window triples of the difference conditions whose smallest part is `p`.
fn windows_with_smallest(p: Part) -> Vec<[Part; 3]> {
    let j = p.degree + 1;
    match p.color {
        Color::Y => vec![[Part::y(j - 1), Part::h(j - 1), Part::y(j)]],
        Color::H => vec![[Part::h(j - 1), Part::x(j - 1), Part::y(j)]],
        Color::X => vec![
            [Part::x(j - 1), Part::y(j), Part::h(j)],
            [Part::x(j - 1), Part::h(j), Part::x(j)],
        ],
    }
}

fn part_ok(p: Part, mult: impl Fn(Part) -> u32, k0: u32, k1: u32) -> bool {
    let k = k0 + k1;
    if p == Part::x(-1) && mult(p) > k0 {
        return false;
    }
    if p == Part::y(0) && mult(p) > k1 {
        return false;
    }
    windows_with_smallest(p)
        .iter()
        .all(|w| w.iter().map(|&q| mult(q)).sum::<u32>() <= k)
}

/// Difference conditions for all `j` plus `π(x(-1)) <= k0`, `π(y(0)) <= k1`.
pub fn satisfies_conditions(pi: &ColoredPartition, k0: u32, k1: u32) -> bool {
    let (Some(lo), Some(hi)) = (pi.min_part(), pi.max_part()) else {
        return true;
    };
    let mult = |p: Part| pi.multiplicity(p);
    for d in lo.degree - 1..=hi.degree {
        for c in Color::ALL {
            if !part_ok(Part::new(c, d), mult, k0, k1) {
                return false;
            }
        }
    }
    true
}

/// Which parts a PBW monomial may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PartSet {
    /// Strictly negative modes together with `y(0)`.
    Verma,
    /// Strictly negative modes only.
    Negative,
}

impl PartSet {
    pub fn contains(self, p: Part) -> bool {
        p.degree < 0 || (self == PartSet::Verma && p == Part::y(0))
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct EnumOptions {
    pub weight: Option<i32>,
    /// Push the difference and initial conditions for `(k0, k1)` into the search.
    pub conditions: Option<(u32, u32)>,
    pub max_length: Option<u32>,
}

/// Parts in descending order: `y(0)` (Verma only), then `x(-1), h(-1), y(-1), x(-2), ...`.
#[derive(Debug, Clone, Copy)]
struct PartList {
    verma: bool,
}

impl PartList {
    fn offset(self) -> usize {
        usize::from(self.verma)
    }

    fn part_at(self, idx: usize) -> Part {
        if self.verma && idx == 0 {
            return Part::y(0);
        }
        let i = idx - self.offset();
        let degree = -((i / 3) as i32) - 1;
        let color = [Color::X, Color::H, Color::Y][i % 3];
        Part::new(color, degree)
    }

    fn index_of(self, p: Part) -> Option<usize> {
        if p == Part::y(0) {
            return self.verma.then_some(0);
        }
        if p.degree >= 0 {
            return None;
        }
        let c = match p.color {
            Color::X => 0,
            Color::H => 1,
            Color::Y => 2,
        };
        Some(self.offset() + (-p.degree - 1) as usize * 3 + c)
    }
}

struct Walker<'a, F: FnMut(&ColoredPartition)> {
    list: PartList,
    /// Number of list entries to decide.
    end: usize,
    opts: EnumOptions,
    mults: Vec<u32>,
    visit: &'a mut F,
}

impl<F: FnMut(&ColoredPartition)> Walker<'_, F> {
    fn mult(&self, p: Part) -> u32 {
        match self.list.index_of(p) {
            Some(i) if i < self.mults.len() => self.mults[i],
            _ => 0,
        }
    }

    fn go(&mut self, idx: usize, rem_deg: i32, rem_wt: i32, rem_len: u32) {
        if idx == self.end {
            if rem_deg == 0 && (self.opts.weight.is_none() || rem_wt == 0) {
                let pi = ColoredPartition::from_counts(
                    self.mults.iter().enumerate().map(|(i, &m)| (self.list.part_at(i), m)),
                );
                (self.visit)(&pi);
            }
            return;
        }
        let p = self.list.part_at(idx);
        let max_m = if p.degree < 0 {
            (rem_deg / p.degree) as u32
        } else {
            // y(0): bounded by the length cap or by the weight it must be compensated by.
            let mut cap = u32::MAX;
            if let Some(l) = self.opts.max_length {
                cap = cap.min(l);
            }
            if let Some((k0, k1)) = self.opts.conditions {
                cap = cap.min(k1).min(k0 + k1);
            }
            if self.opts.weight.is_some() {
                cap = cap.min((-rem_deg - rem_wt).max(0) as u32);
            }
            cap
        }
        .min(rem_len);
        for m in 0..=max_m {
            let deg_after = rem_deg - p.degree * m as i32;
            let wt_after = rem_wt - p.weight() * m as i32;
            self.mults.push(m);
            if let Some((k0, k1)) = self.opts.conditions {
                // Window sums only grow with m.
                if !part_ok(p, |q| self.mult(q), k0, k1) {
                    self.mults.pop();
                    break;
                }
            }
            let mut ok = true;
            if self.opts.weight.is_some() {
                // Every remaining part has degree <= next degree < 0 and weight in {-1,0,1}.
                let next_deg = if idx + 1 < self.end { self.list.part_at(idx + 1).degree } else { 0 };
                let max_parts = if next_deg < 0 { deg_after / next_deg } else { 0 };
                ok = wt_after.abs() <= max_parts;
            }
            if ok {
                self.go(idx + 1, deg_after, wt_after, rem_len - m);
            }
            self.mults.pop();
        }
    }
}

/// Visit every partition over `set` of degree `degree` (and the optional weight),
/// each exactly once, in a deterministic order.
pub fn for_each_partition<F: FnMut(&ColoredPartition)>(
    set: PartSet,
    degree: i32,
    opts: EnumOptions,
    mut visit: F,
) -> Result<()> {
    if degree > 0 {
        return domain("degree must be <= 0");
    }
    let verma = set == PartSet::Verma;
    if verma && opts.weight.is_none() && opts.conditions.is_none() && opts.max_length.is_none() {
        return domain("y(0) multiplicity is unbounded: give a weight, conditions or a length cap");
    }
    let list = PartList { verma };
    // One extra degree below `degree` so windows whose smallest part lies there are checked.
    let end = list.offset() + 3 * (-degree as usize + 1);
    let mut w = Walker { list, end, opts, mults: Vec::with_capacity(end), visit: &mut visit };
    let wt = opts.weight.unwrap_or(0);
    w.go(0, degree, wt, opts.max_length.unwrap_or(u32::MAX));
    Ok(())
}

pub fn enumerate(set: PartSet, degree: i32, opts: EnumOptions) -> Result<Vec<ColoredPartition>> {
    let mut out = Vec::new();
    for_each_partition(set, degree, opts, |p| out.push(p.clone()))?;
    Ok(out)
}

/// Number of `π` over the Verma alphabet with `|π| = d`, `wt(π) = w` satisfying the
/// conditions for `(k0, k1)`.
pub fn count_conditioned(k0: u32, k1: u32, d: i32, w: i32) -> usize {
    let mut n = 0;
    let opts = EnumOptions { weight: Some(w), conditions: Some((k0, k1)), max_length: None };
    for_each_partition(PartSet::Verma, d, opts, |_| n += 1).expect("bounded enumeration");
    n
}

/// Coefficients `c_0..=c_n` of `Σ q^{deg_s(π)}` over conditioned partitions, where
/// `deg_s` is the `(s0, s1)` specialization degree of each part.
pub fn conditioned_counts_by_exponent(k0: u32, k1: u32, s0: u32, s1: u32, n: usize) -> Vec<u64> {
    let list = PartList { verma: true };
    // x(-j) is the cheapest part of degree -j, with exponent j*s - s1 >= j.
    let max_j = n as i64 / s0.max(1) as i64 + 2;
    let end = list.offset() + 3 * max_j as usize;
    let mut counts = vec![0u64; n + 1];
    let mut mults: Vec<u32> = Vec::with_capacity(end);
    fn rec(
        idx: usize,
        budget: i64,
        end: usize,
        list: PartList,
        kk: (u32, u32, u32, u32),
        mults: &mut Vec<u32>,
        counts: &mut Vec<u64>,
        total: i64,
    ) {
        if idx == end {
            counts[total as usize] += 1;
            return;
        }
        let (k0, k1, s0, s1) = kk;
        let p = list.part_at(idx);
        let e = part_exponent(p, s0, s1);
        debug_assert!(e > 0);
        let mut m = 0u32;
        loop {
            if e * m as i64 > budget {
                break;
            }
            mults.push(m);
            let look = |q: Part| match list.index_of(q) {
                Some(i) if i < mults.len() => mults[i],
                _ => 0,
            };
            let ok = part_ok(p, look, k0, k1);
            if ok {
                rec(idx + 1, budget - e * m as i64, end, list, kk, mults, counts, total + e * m as i64);
            }
            mults.pop();
            if !ok {
                break;
            }
            m += 1;
        }
    }
    rec(0, n as i64, end, list, (k0, k1, s0, s1), &mut mults, &mut counts, 0);
    counts
}
