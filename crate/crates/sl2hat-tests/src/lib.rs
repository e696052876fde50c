//! Brute-force oracles written straight from the definitions. They share no code
//! with the library beyond its value types.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use sl2hat::{Color, ColoredPartition, Part};

pub fn p(s: &str) -> ColoredPartition {
    s.parse().unwrap()
}

/// Every colored partition of degree `d` with parts of degree in `[d, -1]`, plus up
/// to `y0_max` copies of `y(0)`.
pub fn partitions(d: i32, y0_max: u32) -> Vec<ColoredPartition> {
    let mut parts = Vec::new();
    for deg in d..=-1 {
        for c in [Color::X, Color::H, Color::Y] {
            parts.push(Part::new(c, deg));
        }
    }
    let mut out = Vec::new();
    let mut chosen: Vec<Part> = Vec::new();
    fn rec(parts: &[Part], i: usize, rest: i32, chosen: &mut Vec<Part>, out: &mut Vec<Vec<Part>>) {
        if rest == 0 {
            out.push(chosen.clone());
            return;
        }
        if i == parts.len() {
            return;
        }
        let deg = parts[i].degree;
        let mut used = 0;
        rec(parts, i + 1, rest, chosen, out);
        while rest - deg * (used + 1) <= 0 {
            used += 1;
            chosen.push(parts[i]);
            rec(parts, i + 1, rest - deg * used, chosen, out);
        }
        for _ in 0..used {
            chosen.pop();
        }
    }
    let mut raw = Vec::new();
    rec(&parts, 0, d, &mut chosen, &mut raw);
    for base in raw {
        for m in 0..=y0_max {
            let mut v = base.clone();
            v.extend(std::iter::repeat(Part::y(0)).take(m as usize));
            out.push(ColoredPartition::from_parts(v));
        }
    }
    out
}

/// The four sliding windows for every `j`, `π(x(-1)) <= k0`, `π(y(0)) <= k1`.
pub fn conditions_hold(pi: &ColoredPartition, k0: u32, k1: u32) -> bool {
    let k = k0 + k1;
    let f = |c: Color, j: i32| pi.multiplicity(Part::new(c, j));
    use Color::{H, X, Y};
    if f(X, -1) > k0 || f(Y, 0) > k1 {
        return false;
    }
    let (lo, hi) = match (pi.min_part(), pi.max_part()) {
        (Some(a), Some(b)) => (a.degree, b.degree),
        _ => return true,
    };
    (lo..=hi + 1).all(|j| {
        f(Y, j - 1) + f(H, j - 1) + f(Y, j) <= k
            && f(H, j - 1) + f(X, j - 1) + f(Y, j) <= k
            && f(X, j - 1) + f(Y, j) + f(H, j) <= k
            && f(X, j - 1) + f(H, j) + f(X, j) <= k
    })
}

/// Truncated power series `c_0..=c_n`.
pub type Series = Vec<BigInt>;

pub fn one(n: usize) -> Series {
    let mut s = vec![BigInt::zero(); n + 1];
    s[0] = BigInt::one();
    s
}

pub fn mul(a: &Series, b: &Series) -> Series {
    let n = a.len().min(b.len());
    let mut out = vec![BigInt::zero(); n];
    for (i, x) in a.iter().enumerate().take(n) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// `a / b` for `b_0 = 1`.
pub fn div(a: &Series, b: &Series) -> Series {
    assert!(b[0].is_one());
    let n = a.len().min(b.len());
    let mut out: Series = Vec::with_capacity(n);
    for i in 0..n {
        let mut c = a[i].clone();
        for j in 1..=i {
            c -= &b[j] * &out[i - j];
        }
        out.push(c);
    }
    out
}

/// `Π_r (1 - q^r)^{minus(r)} (1 + q^r)^{plus(r)}` for `1 <= r <= n`, with negative
/// exponents expanded as geometric series.
pub fn euler_product(n: usize, minus: impl Fn(u64) -> i32, plus: impl Fn(u64) -> i32) -> Series {
    let mut s = one(n);
    for r in 1..=n {
        let step = |s: &mut Series, sign: i32| {
            // multiply by (1 + sign q^r)
            for i in (r..=n).rev() {
                let t = s[i - r].clone();
                if sign > 0 {
                    s[i] += t;
                } else {
                    s[i] -= t;
                }
            }
        };
        let inv = |s: &mut Series| {
            // divide by (1 - q^r)
            for i in r..=n {
                let t = s[i - r].clone();
                s[i] += t;
            }
        };
        let e = minus(r as u64);
        for _ in 0..e.max(0) {
            step(&mut s, -1);
        }
        for _ in 0..(-e).max(0) {
            inv(&mut s);
        }
        for _ in 0..plus(r as u64) {
            step(&mut s, 1);
        }
    }
    s
}

/// `Σ_w ε(w) q^{-⟨ρ_s, wλ - λ⟩}` over the infinite dihedral group, walking the two
/// reduced-word chains with explicit simple reflections on `(⟨λ,α₀∨⟩, ⟨λ,α₁∨⟩)`.
pub fn weyl(lam: (i64, i64), s: (i64, i64), n: usize) -> Series {
    let mut out = vec![BigInt::zero(); n + 1];
    out[0] += 1;
    for first in 0..2 {
        let mut a = [lam.0, lam.1];
        let s = [s.0, s.1];
        let mut e: i64 = 0;
        let mut sign = 1i64;
        let mut i = first;
        loop {
            // r_i: λ ↦ λ - ⟨λ,α_i∨⟩ α_i, with ⟨α_i, α_j∨⟩ = -2 for i != j.
            let c = a[i];
            let before = e;
            e += s[i] * c;
            a[i] = -c;
            a[1 - i] += 2 * c;
            sign = -sign;
            assert!(e > before, "exponents must increase along a chain");
            if e as usize > n {
                break;
            }
            out[e as usize] += sign;
            i = 1 - i;
        }
    }
    out
}

/// `d^{s0,s1}_{k0,k1}` as numerator over denominator.
pub fn character(k0: u32, k1: u32, s0: u32, s1: u32, n: usize) -> Series {
    let num = weyl((k0 as i64 + 1, k1 as i64 + 1), (s0 as i64, s1 as i64), n);
    let den = weyl((1, 1), (s0 as i64, s1 as i64), n);
    div(&num, &den)
}

/// `P(s0, s1)`: factors `1 - q^r` for `r ≡ 0, s0 (mod s)` and `r ≡ s1 (mod s)`.
pub fn p_prod(s0: u64, s1: u64, n: usize) -> Series {
    let s = s0 + s1;
    euler_product(
        n,
        |r| {
            let m = r % s;
            (m == 0) as i32 + (m == s0 % s) as i32 + (m == s1 % s) as i32
        },
        |_| 0,
    )
}

/// `Q(m0, 2m1)`: `1 - q^r` for `r ≡ 0, ±m0 (mod 2m)` and `r ≡ ±2m1 (mod 4m)`.
pub fn q_prod(m0: u64, two_m1: u64, n: usize) -> Series {
    let two_m = 2 * m0 + two_m1;
    let four_m = 2 * two_m;
    euler_product(
        n,
        |r| {
            let a = r % two_m;
            let b = r % four_m;
            let mut e = (a == 0) as i32 + (a == m0 % two_m) as i32 + (a == (two_m - m0 % two_m) % two_m) as i32;
            e += (b == two_m1 % four_m) as i32 + (b == (four_m - two_m1 % four_m) % four_m) as i32;
            e
        },
        |_| 0,
    )
}

/// Rank over `Q` by Gaussian elimination on rational rows.
pub fn rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let mut r = 0;
    let cols = rows.first().map_or(0, |x| x.len());
    for c in 0..cols {
        let Some(piv) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, piv);
        let pv = rows[r][c].clone();
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = &rows[i][c] / &pv;
                for j in c..cols {
                    let t = &f * &rows[r][j];
                    rows[i][j] -= t;
                }
            }
        }
        r += 1;
    }
    r
}

