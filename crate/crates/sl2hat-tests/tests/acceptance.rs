//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits nonzero
//! if any fails. All arithmetic is exact.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::time::Instant;

use sl2hat_tests::*;
use num_bigint::BigInt;
use num_rational::BigRational;
use sl2hat::embeddings::{classify_pair, dual_embedding, dual_family, find_embeddings, Embedding, PairClass};
use sl2hat::modules::basis_check_652;
use sl2hat::partitions::{catalog_lt_r, catalog_lt_r_degree, lt_r_vlambda, Color};
use sl2hat::qseries::{conditioned_partition_gf, specialized_character, ProductFormula, QSeries, Specialization};
use sl2hat::{ColoredPartition, HighestWeight, LieWord, M1Builder, Module, ModuleVector, Part, RelationId, RhoChoice};

struct Outcome {
    pass: bool,
    note: String,
}

fn outcome(failures: &[String], checked: usize, what: &str) -> Outcome {
    if failures.is_empty() {
        Outcome { pass: true, note: format!("{checked} {what}") }
    } else {
        let mut note = format!("{} of {checked} {what} failed", failures.len());
        for f in failures.iter().take(5) {
            note.push_str("\n      ");
            note.push_str(f);
        }
        Outcome { pass: false, note }
    }
}

fn weights(k: u32) -> impl Iterator<Item = (u32, u32)> {
    (0..=k).rev().map(move |k0| (k0, k - k0))
}

/// 1. `dim L(Λ)` per grade equals the number of partitions satisfying the conditions.
fn dimensions() -> Outcome {
    let mut fails = Vec::new();
    let mut checked = 0;
    for (k, depth) in [(1u32, 6i32), (2, 5)] {
        for (k0, k1) in weights(k) {
            let b = M1Builder::new(HighestWeight::verma(k0, k1));
            for d in -depth..=0 {
                let mut count: BTreeMap<i32, usize> = BTreeMap::new();
                for pi in partitions(d, k1) {
                    if conditions_hold(&pi, k0, k1) {
                        *count.entry(pi.weight()).or_default() += 1;
                    }
                }
                let window = b.weight_window(d);
                for w in count.keys() {
                    if !window.contains(w) {
                        fails.push(format!("({k0},{k1}) d={d}: count at w={w} outside the computed window"));
                    }
                }
                for w in window {
                    let dim = b.grade(d, w).unwrap().l_dimension();
                    let want = count.get(&w).copied().unwrap_or(0);
                    checked += 1;
                    if dim != want {
                        fails.push(format!("({k0},{k1}) d={d} w={w}: dim {dim}, count {want}"));
                    }
                }
            }
        }
    }
    outcome(&fails, checked, "grades")
}

/// `Σ_j ((k+2)j - n) x(j) r_{(k+1)α}(n-j) v` straight from the definition, with
/// `c` in place of `k+2` so that a wrong weight can be tried too.
fn top_relation(m: &Module, c: i64, n: i32, v: &ModuleVector) -> ModuleVector {
    let k = m.hw().level() as i32;
    let dv = v.degree();
    let mut acc = ModuleVector::zero(m.hw(), dv + n, v.weight() + k + 2);
    for j in (n + dv)..=(-dv) {
        let t = if j < 0 {
            m.act_part(Part::x(j), &m.r_or_zero(k + 1, n - j, v))
        } else {
            m.r_or_zero(k + 1, n - j, &m.act_part(Part::x(j), v))
        };
        acc.add_scaled(&t, &BigRational::from_integer(BigInt::from(c * j as i64 - n as i64)));
    }
    acc
}

/// 2. The relations among relations vanish on capped Verma basis vectors.
fn relations() -> Outcome {
    let mut fails = Vec::new();
    let mut checked = 0;
    let mut nontrivial = false;
    for k in 0..=2u32 {
        for (k0, k1) in weights(k) {
            let m = Module::new(HighestWeight::verma(k0, k1));
            for d in -4..=0 {
                for pi in partitions(d, 2) {
                    let v = m.basis_vector(&pi).unwrap();
                    for n in -6..=6 {
                        for c in m.relation_battery(n, &v) {
                            checked += 1;
                            if !c.pass {
                                fails.push(format!("({k0},{k1}) {} i={} n={n} on {pi}", c.relation.label(), c.i));
                            }
                        }
                        if d >= -2 {
                            checked += 1;
                            if !top_relation(&m, k as i64 + 2, n, &v).is_zero() {
                                fails.push(format!("({k0},{k1}) direct top relation n={n} on {pi}"));
                            }
                            if !top_relation(&m, k as i64 + 3, n, &v).is_zero() {
                                nontrivial = true;
                            }
                            let i = (n.rem_euclid(2 * k as i32 + 5)) - (k as i32 + 2);
                            let same = m.check_8_4(i, n, &v).unwrap() && m.check_8_1(n, &v);
                            let j = i.clamp(-(k as i32) - 1, k as i32 + 1);
                            let same = same && m.check_8_5(j, n, &v).unwrap();
                            checked += 1;
                            if !same {
                                fails.push(format!("({k0},{k1}) rational evaluation i={i} n={n} on {pi}"));
                            }
                        }
                    }
                }
            }
        }
    }
    if !nontrivial {
        fails.push("a wrong weight in the top relation never fails, so the check is vacuous".into());
    }
    outcome(&fails, checked, "relation checks")
}

/// 3. Computed leading terms of `r_{iα}(n)` on the vacuum against the catalog.
fn leading_terms() -> Outcome {
    let mut fails = Vec::new();
    let mut checked = 0;
    for k in 0..=3u32 {
        let l = k as i32 + 1;
        let g = Module::new(HighestWeight::generalized_verma(k));
        for n in -12..=-l {
            let mut seen = BTreeSet::new();
            for i in -l..=l {
                let v = g.r_apply(RelationId::new(i, n), &g.vacuum()).unwrap();
                let want = catalog_lt_r(k, i, n).unwrap();
                checked += 1;
                if v.leading_term().ok().as_ref() != Some(&want) {
                    fails.push(format!("N({k}Λ₀) i={i} n={n}: {:?} vs {want}", v.leading_term().ok()));
                }
                if want.length() != k + 1 || !seen.insert(want.clone()) {
                    fails.push(format!("catalog k={k} n={n} i={i}: {want} repeated or of wrong length"));
                }
            }
        }
        for (k0, k1) in weights(k) {
            let m = Module::new(HighestWeight::verma(k0, k1));
            for n in -12..=0 {
                for i in -l..=l {
                    let v = m.r_apply(RelationId::new(i, n), &m.vacuum()).unwrap();
                    let got = if v.is_zero() { None } else { v.leading_term().ok() };
                    let want = lt_r_vlambda(k0, k1, i, n);
                    checked += 1;
                    if got != want {
                        fails.push(format!("M({k0},{k1}) i={i} n={n}: {got:?} vs {want:?}"));
                    }
                }
            }
        }
    }
    outcome(&fails, checked, "leading terms")
}

/// 4. The vectors `u(π/ρ) r(ρ) v_Λ` over ideal members form a basis of `M¹`.
fn basis() -> Outcome {
    let mut fails = Vec::new();
    let mut checked = 0;
    for k in 0..=2u32 {
        for (k0, k1) in weights(k) {
            let b = M1Builder::new(HighestWeight::verma(k0, k1));
            let m = b.module();
            for d in -5..=0 {
                for w in b.weight_window(d) {
                    let g = b.grade(d, w).unwrap();
                    let admissible = g.basis().iter().filter(|pi| conditions_hold(pi, k0, k1)).count();
                    for choice in [RhoChoice::CmpMin, RhoChoice::CmpMax] {
                        let r = basis_check_652(&b, d, w, choice).unwrap();
                        checked += 1;
                        if !r.pass() || r.members != g.dim() - admissible {
                            fails.push(format!("({k0},{k1}) d={d} w={w} {choice:?}: {r:?}"));
                        }
                    }
                    if d >= -3 {
                        // Rebuild the vectors here and take their rank independently.
                        let gens = sl2hat::partitions::catalog_lt_r_vlambda(k0, k1, d);
                        let mut rows = Vec::new();
                        for pi in g.basis() {
                            let Some(rho) = gens.iter().filter(|r| pi.contains(r)).min() else { continue };
                            let r = m.r_apply(RelationId::new(rho.weight(), rho.degree()), &m.vacuum()).unwrap();
                            let v = m.act_monomial(&pi.div(rho).unwrap(), &r);
                            rows.push(g.basis().iter().map(|q| v.coeff(q)).collect::<Vec<_>>());
                        }
                        checked += 1;
                        let members = rows.len();
                        if rank(rows) != members || members != g.rank() {
                            fails.push(format!("({k0},{k1}) d={d} w={w}: independent rank differs"));
                        }
                    }
                }
            }
        }
    }
    outcome(&fails, checked, "grade checks")
}

fn qs(s: &QSeries) -> Series {
    s.coeffs().to_vec()
}

/// 5. Product formulas, the denominator identity and numerator duality to `q^200`.
fn identities() -> Outcome {
    const N: usize = 200;
    let mut fails = Vec::new();
    let mut checked = 0;
    let mut check = |label: String, lhs: Series, rhs: Series, lib: Option<(Series, Series)>| {
        checked += 1;
        if lhs != rhs {
            let e = lhs.iter().zip(&rhs).position(|(a, b)| a != b).unwrap();
            fails.push(format!("{label}: first difference at q^{e}"));
        }
        if let Some((a, b)) = lib {
            if a != lhs || b != rhs {
                fails.push(format!("{label}: library disagrees with the oracle"));
            }
        }
    };
    use ProductFormula::*;
    let lib = |f: ProductFormula| Some((qs(&f.product(N).unwrap()), qs(&f.character(N))));
    let odd = |r: u64| (r % 2 == 1) as i32;
    for n in 1..=4u64 {
        let (a, b) = (n.trailing_zeros(), n >> n.trailing_zeros());
        let prod = euler_product(
            N,
            |r| -((r % 2 == 1 && r % (2 * b) != b) as i32) - ((r % (2 * n) != 0 && r % (2 * n) != n) as i32),
            |r| (1..=a).filter(|&j| r % ((1 << (a - j + 1)) * b) == (1 << (a - j)) * b).count() as i32,
        );
        let ch = character(n as u32 - 1, n as u32 - 1, 1, 1, N);
        check(format!("11.1.9 n={n}"), prod, ch, lib(PrincipalDiagonal { n: n as u32 }));
    }
    for n in 1..=3u64 {
        let prod = euler_product(N, |r| -odd(r) - ((r % (3 * n) != 0 && r % (3 * n) != n && r % (3 * n) != 2 * n) as i32), |_| 0);
        let ch = character(n as u32 - 1, 2 * n as u32 - 1, 1, 1, N);
        check(format!("11.1.10 n={n}"), prod, ch, lib(PrincipalSkew { n: n as u32 }));
    }
    for k in 0..=4u32 {
        for (k0, k1) in weights(k) {
            let m = (k + 2) as u64;
            let a = (k0 + 1) as u64 % m;
            if k != 2 * k1 {
                let prod = euler_product(N, |r| -odd(r) - ((r % m != 0 && r % m != a && r % m != (m - a) % m) as i32), |_| 0);
                check(format!("11.1.11 ({k0},{k1})"), prod, character(k0, k1, 1, 1, N), lib(PrincipalGeneric { k0, k1 }));
            }
            if k != 3 * k1 + 1 {
                let (m2, m4) = (2 * m, 4 * m);
                let a2 = (k0 + 1) as u64 % m2;
                let t = 2 * (k1 + 1) as u64 % m4;
                let prod = euler_product(
                    N,
                    |r| {
                        let x = r % m2;
                        let y = r % m4;
                        let keep = x != 0 && x != a2 && x != (m2 - a2) % m2 && y != t && y != (m4 - t) % m4;
                        -(keep as i32)
                    },
                    |_| 0,
                );
                check(format!("11.1.12 ({k0},{k1})"), prod, character(k0, k1, 1, 2, N), lib(TwistedGeneric { k0, k1 }));
            }
            let pr = div(&p_prod(k0 as u64 + 1, k1 as u64 + 1, N), &p_prod(1, 1, N));
            check(format!("11.1.3 ({k0},{k1})"), pr, character(k0, k1, 1, 1, N), lib(PrincipalRatio { k0, k1 }));
            let tr = div(&q_prod(k0 as u64 + 1, 2 * (k1 as u64 + 1), N), &p_prod(1, 2, N));
            check(format!("11.1.4 ({k0},{k1})"), tr, character(k0, k1, 1, 2, N), lib(TwistedRatio { k0, k1 }));
        }
    }
    for n in 2..=4u64 {
        let m = 6 * n;
        let prod = euler_product(
            N,
            |r| -((![0, n, m - n, 2 * n, m - 2 * n].contains(&(r % m))) as i32),
            |r| (r % m == n || r % m == m - n) as i32,
        );
        let ch = character(2 * n as u32 - 1, n as u32 - 1, 1, 2, N);
        check(format!("11.1.13 n={n}"), prod, ch, lib(TwistedSkew { n: n as u32 }));
        let prod = euler_product(N, |r| -((r % n != 0) as i32), |_| 0);
        let ch = character(n as u32 - 1, n as u32 - 1, 1, 2, N);
        check(format!("11.1.14 n={n}"), prod, ch, lib(TwistedDiagonal { n: n as u32 }));
    }
    for n in 1..=3u32 {
        for (s0, s1) in [(1u32, 1u32), (1, 2), (2, 1), (2, 3)] {
            let (n6, s06, s16) = (n as u64, s0 as u64, s1 as u64);
            let den = p_prod(s06, s16, N);
            let a = div(&q_prod(n6 * s06, 2 * n6 * s16, N), &den);
            check(format!("11.1.5 n={n} s=({s0},{s1})"), a, character(n - 1, 2 * n - 1, s0, s1, N), lib(DualTwisted { n, s0, s1 }));
            let b = div(&q_prod(n6 * s16, 2 * n6 * s06, N), &den);
            check(format!("11.1.6 n={n} s=({s0},{s1})"), b, character(2 * n - 1, n - 1, s0, s1, N), lib(DualTwistedFlip { n, s0, s1 }));
            let c = div(&p_prod(n6 * s06, n6 * s16, N), &den);
            check(format!("11.1.7 n={n} s=({s0},{s1})"), c, character(n - 1, n - 1, s0, s1, N), lib(DualScaled { n, s0, s1 }));
        }
    }
    for s0 in 1..=4i64 {
        for s1 in 1..=4i64 {
            let lib = (
                qs(&sl2hat::qseries::p_product(s0 as u32, s1 as u32, N)),
                qs(&sl2hat::qseries::weyl_denominator(s0 as u32, s1 as u32, N)),
            );
            check(format!("denominator s=({s0},{s1})"), p_prod(s0 as u64, s1 as u64, N), weyl((1, 1), (s0, s1), N), Some(lib));
        }
    }
    for k in 0..=3u32 {
        for (k0, k1) in weights(k) {
            for (s0, s1) in [(1u32, 2u32), (2, 1), (1, 1)] {
                let lam = (k0 as i64 + 1, k1 as i64 + 1);
                let s = (s0 as i64, s1 as i64);
                let lib = (
                    qs(&sl2hat::qseries::weyl_numerator(k0, k1, s0, s1, N)),
                    qs(&sl2hat::qseries::weyl_numerator_dual(k0, k1, s0, s1, N)),
                );
                check(format!("duality ({k0},{k1}) s=({s0},{s1})"), weyl(lam, s, N), weyl(s, lam, N), Some(lib));
                let lib = qs(&specialized_character(k0, k1, s0, s1, N));
                check(format!("character ({k0},{k1}) s=({s0},{s1})"), lib, character(k0, k1, s0, s1, N), None);
            }
        }
    }
    outcome(&fails, checked, "identities")
}

/// Number of plain partitions of each `n <= max` with `f_j <= cap` accepted by `ok`.
fn plain_counts(max: usize, cap: usize, ok: &dyn Fn(&[usize]) -> bool) -> Vec<BigInt> {
    fn go(part: usize, rest: usize, cap: usize, f: &mut Vec<usize>, ok: &dyn Fn(&[usize]) -> bool, n: &mut u64) {
        if rest == 0 {
            *n += ok(f) as u64;
            return;
        }
        if part == 0 {
            return;
        }
        for m in 0..=cap.min(rest / part) {
            f[part] = m;
            go(part - 1, rest - m * part, cap, f, ok, n);
        }
        f[part] = 0;
    }
    (0..=max)
        .map(|n| {
            let mut f = vec![0; n + 3];
            let mut c = 0;
            go(n, n, cap, &mut f, ok, &mut c);
            BigInt::from(c)
        })
        .collect()
}

/// 6. Distinct-part partitions against the window conditions on `f_j <= 2`.
fn window_identity() -> Outcome {
    const N: usize = 30;
    let windows = |f: &[usize]| {
        let g = |i: i64| if i <= 0 || i as usize >= f.len() { 0 } else { f[i as usize] };
        g(1) <= 1
            && g(2) <= 1
            && (0..=f.len() as i64 / 3 + 1).all(|j| {
                g(3 * j + 2) + g(3 * j + 1) + g(3 * j) <= 2
                    && g(3 * j + 2) + g(3 * j) + g(3 * j - 1) <= 2
                    && g(3 * j + 1) + g(3 * j) + g(3 * j - 2) <= 2
                    && g(3 * j) + g(3 * j - 1) + g(3 * j - 2) <= 2
            })
    };
    let distinct = plain_counts(N, 1, &|_| true);
    let windowed = plain_counts(N, 2, &windows);
    let gf = qs(&conditioned_partition_gf(1, 1, Specialization::new(1, 2).unwrap(), N));
    let ch = qs(&specialized_character(1, 1, 1, 2, N));
    let mut fails = Vec::new();
    if distinct != windowed {
        fails.push(format!("brute force: {distinct:?} vs {windowed:?}"));
    }
    if gf != ch || gf != distinct {
        fails.push("conditioned partitions, character and distinct parts differ".into());
    }
    if distinct[5] != BigInt::from(3) {
        fails.push("three distinct-part partitions of 5 expected".into());
    }
    outcome(&fails, 3 * (N + 1), "coefficients")
}

/// The fourteen exceptional families, written out from their displayed form as
/// `(color, degree below the anchor, exponent)` with their parameter ranges.
fn family(k: i64, f: u8, a: i64, b: i64, c: i64) -> Option<Vec<(Color, i32, i64)>> {
    use Color::{H, X, Y};
    let l = k + 1;
    let (ok, parts) = match f {
        1 => (2 <= a && a <= k, vec![(Y, 0, a), (H, 0, l - a), (X, 0, a)]),
        2 => (a >= 2 && a + b <= k, vec![(X, 1, l - a - b), (Y, 0, a), (H, 0, b), (X, 0, a)]),
        3 => (1 <= a && a <= k - 1, vec![(H, 1, l - a - b), (X, 1, a), (Y, 0, b), (X, 0, l - a)]),
        4 => (1 <= a + b && a + b <= k - 1, vec![(H, 1, l - a - b), (X, 1, a), (Y, 0, b), (H, 0, l - a - b)]),
        5 => (1 <= a && a <= k - 1, vec![(Y, 1, l - a), (X, 1, b), (Y, 0, a), (H, 0, l - a - b)]),
        6 => (a >= 2 && a + b <= k, vec![(Y, 1, a), (H, 1, b), (X, 1, a), (Y, 0, l - a - b)]),
        7 => (a >= 1 && c >= 1 && a + b + c <= k, vec![(Y, 1, l - a - c), (H, 1, c), (X, 1, b), (Y, 0, a), (H, 0, l - a - b)]),
        8 => (a >= 1 && c >= 1 && a + b + c <= k, vec![(H, 1, l - a - b), (X, 1, a), (Y, 0, b), (H, 0, c), (X, 0, l - a - c)]),
        9 => (2 <= a && a <= k, vec![(X, 2, a), (Y, 1, b), (H, 1, l - a - b), (Y, 0, a)]),
        10 => (2 <= a && a <= k, vec![(X, 2, a), (H, 1, l - a - b), (X, 1, b), (Y, 0, a)]),
        11 => (1 <= b && b <= k - 1 && a + b + c <= k, vec![(X, 2, l - a - b), (H, 1, a), (X, 1, b), (Y, 0, c), (H, 0, l - b - c)]),
        12 => (1 <= b && b <= k - 1 && a + b <= k, vec![(X, 2, l - a - b), (H, 1, a), (X, 1, b), (H, 0, c), (X, 0, l - b - c)]),
        13 => (1 <= b && b <= k - 1 && a + b + c <= k, vec![(H, 2, l - b - c), (X, 2, c), (Y, 1, b), (H, 1, a), (Y, 0, l - a - b)]),
        14 => (1 <= b && b <= k - 1 && a + b <= k, vec![(Y, 2, l - b - c), (H, 2, c), (Y, 1, b), (H, 1, a), (Y, 0, l - a - b)]),
        _ => (false, vec![]),
    };
    (ok && parts.iter().all(|p| p.2 >= 0)).then_some(parts)
}

/// Families containing `pi`, over every anchor and parameter choice.
fn families_of(k: u32, pi: &ColoredPartition) -> BTreeSet<u8> {
    let top = pi.max_part().unwrap().degree;
    let mut out = BTreeSet::new();
    for f in 1..=14u8 {
        for j in top..=top + 2 {
            for a in 0..=k as i64 + 1 {
                for b in 0..=k as i64 + 1 {
                    for c in 0..=k as i64 + 1 {
                        let Some(parts) = family(k as i64, f, a, b, c) else { continue };
                        let q = ColoredPartition::from_counts(
                            parts.iter().filter(|p| p.2 > 0).map(|&(col, back, e)| (Part::new(col, j - back), e as u32)),
                        );
                        if &q == pi {
                            out.insert(f);
                        }
                    }
                }
            }
        }
    }
    out
}

/// Breadth-first search over embeddings with unions shorter than `ℓ(ρ₁ ∪ ρ₂)`.
fn linked_oracle(k: u32, r1: &ColoredPartition, r2: &ColoredPartition) -> bool {
    let pi = r1.union(r2);
    let bound = pi.length();
    let l = k as i32 + 1;
    let (lo, hi) = (pi.min_part().unwrap().degree, pi.max_part().unwrap().degree);
    let mut embs = Vec::new();
    for n in l * lo..=l * hi {
        for (_, r) in catalog_lt_r_degree(k, n) {
            if pi.contains(&r) {
                embs.push(r);
            }
        }
    }
    let mut seen = BTreeSet::from([r1.clone()]);
    let mut queue = VecDeque::from([r1.clone()]);
    while let Some(r) = queue.pop_front() {
        if &r == r2 {
            return true;
        }
        for e in &embs {
            if !seen.contains(e) && r.union(e).length() < bound {
                seen.insert(e.clone());
                queue.push_back(e.clone());
            }
        }
    }
    false
}

/// 7. Classification of pairs of embeddings with parts in three adjacent degrees.
fn embeddings() -> Outcome {
    let mut fails = Vec::new();
    let mut multi = Vec::new();
    let mut checked = 0;
    for k in 0..=2u32 {
        let l = k as i32 + 1;
        let mut rhos = Vec::new();
        for n in -2 * l..=0 {
            for (m, rho) in catalog_lt_r_degree(k, n) {
                rhos.push(Embedding { rho, m, n });
            }
        }
        for a in 0..rhos.len() {
            for b in a + 1..rhos.len() {
                let (e1, e2) = (&rhos[a], &rhos[b]);
                let pi = e1.rho.union(&e2.rho);
                if pi.max_part().unwrap().degree - pi.min_part().unwrap().degree > 2 {
                    continue;
                }
                checked += 1;
                let class = match classify_pair(k, e1, e2) {
                    Ok(c) => c,
                    Err(e) => {
                        fails.push(format!("k={k}: {e}"));
                        continue;
                    }
                };
                let overlap = !e1.rho.intersect(&e2.rho).is_one();
                let expect_exceptional = overlap && pi.length() >= k + 3 && !linked_oracle(k, &e1.rho, &e2.rho);
                if expect_exceptional != matches!(class, PairClass::Exceptional { .. }) {
                    fails.push(format!("k={k} {} / {}: {class:?}", e1.rho, e2.rho));
                }
                if let PairClass::Exceptional { family, .. } = class {
                    let found = families_of(k, &pi);
                    let reported: BTreeSet<u8> = class.families().into_iter().collect();
                    if found.is_empty() || !found.contains(&family) || found != reported {
                        fails.push(format!("k={k} {pi}: reported {reported:?}, families {found:?}"));
                    }
                    if found.len() != 1 {
                        multi.push(format!("k={k} {pi} lies in families {found:?}"));
                    }
                    if find_embeddings(&pi, k).len() != 2 {
                        fails.push(format!("k={k} {pi}: exceptional partitions carry exactly two embeddings"));
                    }
                }
                let shift = -pi.min_part().unwrap().degree - pi.max_part().unwrap().degree;
                let dual = classify_pair(k, &dual_embedding(e1, shift), &dual_embedding(e2, shift)).unwrap();
                let mapped: BTreeSet<u8> = class.families().into_iter().map(dual_family).collect();
                let dual_set: BTreeSet<u8> = dual.families().into_iter().collect();
                if dual.name() != class.name() || dual_set != mapped {
                    fails.push(format!("k={k} {pi}: dual classified {dual:?}, expected {mapped:?}"));
                }
            }
        }
    }
    let mut out = outcome(&fails, checked, "pairs");
    if !multi.is_empty() {
        out.pass = false;
        out.note.push_str(&format!(
            "; uniqueness fails: {} exceptional partitions lie in two families of the list",
            multi.len()
        ));
        for m in &multi {
            out.note.push_str("\n      ");
            out.note.push_str(m);
        }
    }
    out
}

/// `Σ_j (-n_j) b₁(n₁)⋯b_j(n_j - 1)⋯b_s(n_s) 1` through the word action.
fn derivation(m: &Module, pi: &ColoredPartition) -> ModuleVector {
    let word: Vec<Part> = pi.iter().collect();
    let mut out = ModuleVector::zero(m.hw(), pi.degree() - 1, pi.weight());
    for j in 0..word.len() {
        let mut w = word.clone();
        let n = w[j].degree;
        w[j] = Part::new(w[j].color, n - 1);
        let t = m.act_word(&LieWord::new(w), &m.vacuum());
        out.add_scaled(&t, &BigRational::from_integer(BigInt::from(-n)));
    }
    out
}

/// 8. Virasoro relations with central charge `3k/(k+2)` and `L_{-1}` on `N(kΛ₀)`.
fn virasoro() -> Outcome {
    let mut fails = Vec::new();
    let mut checked = 0;
    for k in 0..=3u32 {
        let g = Module::new(HighestWeight::generalized_verma(k));
        // [L_2, L_{-2}] 1 = 4 L_0 1 + (1/2)(3k/(k+2)) 1 = (3k / (2(k+2))) 1.
        let vac = g.vacuum();
        let lhs = g.sugawara_l(2, &g.sugawara_l(-2, &vac)).sub(&g.sugawara_l(-2, &g.sugawara_l(2, &vac)));
        let want = vac.scale(&BigRational::new(BigInt::from(3 * k), BigInt::from(2 * (k + 2))));
        checked += 1;
        if !lhs.sub(&want).is_zero() {
            fails.push(format!("k={k}: central term {lhs}"));
        }
        for d in -5..=0 {
            for pi in partitions(d, 0) {
                let v = g.basis_vector(&pi).unwrap();
                for a in -3..=3 {
                    for b in -3..=3 {
                        checked += 1;
                        if !g.virasoro_check(a, b, &v) {
                            fails.push(format!("N({k}Λ₀) [L_{a}, L_{b}] on {pi}"));
                        }
                    }
                }
                checked += 1;
                if !g.sugawara_l(-1, &v).sub(&derivation(&g, &pi)).is_zero() {
                    fails.push(format!("N({k}Λ₀) L_-1 on {pi}"));
                }
                checked += 1;
                let l0 = g.sugawara_l(0, &v);
                if !l0.sub(&v.scale(&BigRational::from_integer(BigInt::from(-d)))).is_zero() {
                    fails.push(format!("N({k}Λ₀) L_0 on {pi}"));
                }
            }
        }
        for (k0, k1) in weights(k) {
            let m = Module::new(HighestWeight::verma(k0, k1));
            for d in -3..=0 {
                for pi in partitions(d, 2) {
                    let v = m.basis_vector(&pi).unwrap();
                    for a in -3..=3 {
                        for b in -3..=3 {
                            checked += 1;
                            if !m.virasoro_check(a, b, &v) {
                                fails.push(format!("M({k0},{k1}) [L_{a}, L_{b}] on {pi}"));
                            }
                        }
                    }
                }
            }
        }
    }
    outcome(&fails, checked, "operator checks")
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("dimensions of standard modules equal conditioned-partition counts", dimensions),
        ("relations among relations vanish on Verma basis vectors", relations),
        ("leading terms of relations match the catalog", leading_terms),
        ("ideal members give a basis of the maximal submodule", basis),
        ("product formulas, denominator identity and duality to q^200", identities),
        ("distinct parts against the window conditions", window_identity),
        ("pairs of embeddings are linked or exceptional", embeddings),
        ("Sugawara operators satisfy the Virasoro relations", virasoro),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let o = run();
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {}: {verdict}  {name} ({}; {:.1}s)", i + 1, o.note, t.elapsed().as_secs_f64());
        failed += !o.pass as usize;
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
