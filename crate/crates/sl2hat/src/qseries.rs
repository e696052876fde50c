//! Truncated power series in `q` with integer coefficients, congruence-class
//! products, affine Weyl sums and specialized characters.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::partitions::{conditioned_counts_by_exponent, part_exponent, Part};

/// `c_0 + c_1 q + ... + c_N q^N`, exact modulo `q^{N+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QSeries {
    c: Vec<BigInt>,
}

impl QSeries {
    pub fn zero(n: usize) -> QSeries {
        QSeries { c: vec![BigInt::zero(); n + 1] }
    }

    pub fn one(n: usize) -> QSeries {
        let mut s = QSeries::zero(n);
        s.c[0] = BigInt::one();
        s
    }

    /// `c q^e`, dropped when `e > n`.
    pub fn monomial(c: i64, e: usize, n: usize) -> QSeries {
        let mut s = QSeries::zero(n);
        if e <= n {
            s.c[e] = c.into();
        }
        s
    }

    /// Panics on an empty vector.
    pub fn from_coeffs(c: Vec<BigInt>) -> QSeries {
        assert!(!c.is_empty(), "a series needs at least the constant term");
        QSeries { c }
    }

    pub fn from_i64(c: &[i64]) -> QSeries {
        QSeries::from_coeffs(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    /// Truncation order `N`.
    pub fn order(&self) -> usize {
        self.c.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.c.get(i).cloned().unwrap_or_default()
    }

    pub fn truncate(&self, n: usize) -> QSeries {
        let mut c = self.c.clone();
        c.resize(n + 1, BigInt::zero());
        QSeries { c }
    }

    fn check_order(&self, other: &QSeries) {
        assert_eq!(self.order(), other.order(), "series of different truncation orders");
    }

    pub fn inverse(&self) -> Result<QSeries> {
        let c0 = &self.c[0];
        if !c0.abs().is_one() {
            return domain(format!("constant term {c0} is not a unit"));
        }
        let n = self.order();
        let mut out = vec![BigInt::zero(); n + 1];
        out[0] = c0.clone();
        for i in 1..=n {
            let mut s = BigInt::zero();
            for j in 1..=i {
                if !self.c[j].is_zero() {
                    s += &self.c[j] * &out[i - j];
                }
            }
            out[i] = -(s * c0);
        }
        Ok(QSeries { c: out })
    }

    /// `self / other`; the quotient must have integer coefficients.
    pub fn div(&self, other: &QSeries) -> Result<QSeries> {
        self.check_order(other);
        let d0 = &other.c[0];
        if d0.is_zero() {
            return domain("division by a series with zero constant term");
        }
        let n = self.order();
        let mut out = vec![BigInt::zero(); n + 1];
        for i in 0..=n {
            let mut s = self.c[i].clone();
            for j in 1..=i {
                if !other.c[j].is_zero() {
                    s -= &other.c[j] * &out[i - j];
                }
            }
            let (q, r) = s.div_rem(d0);
            if !r.is_zero() {
                return Err(Error::Inconsistent(format!("non-integral quotient at q^{i}")));
            }
            out[i] = q;
        }
        Ok(QSeries { c: out })
    }

    /// Multiply in place by `(1 - q^r)`.
    pub fn mul_one_minus(&mut self, r: usize) {
        for i in (r..self.c.len()).rev() {
            let t = self.c[i - r].clone();
            self.c[i] -= t;
        }
    }

    /// Multiply in place by `(1 + q^r)`.
    pub fn mul_one_plus(&mut self, r: usize) {
        for i in (r..self.c.len()).rev() {
            let t = self.c[i - r].clone();
            self.c[i] += t;
        }
    }

    /// Multiply in place by `(1 - q^r)^{-1}`.
    pub fn div_one_minus(&mut self, r: usize) {
        for i in r..self.c.len() {
            let t = self.c[i - r].clone();
            self.c[i] += t;
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.c.iter().map(|c| serde_json::from_str(&c.to_string()).expect("integer literal")).collect(),
        )
    }

    /// `exponent,coefficient` lines with a header.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("exponent,coefficient\n");
        for (i, c) in self.c.iter().enumerate() {
            s.push_str(&format!("{i},{c}\n"));
        }
        s
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.c.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (neg, a) = (c.is_negative(), c.abs());
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match (i, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{a}*q")?,
                (_, true) => write!(f, "q^{i}")?,
                (_, false) => write!(f, "{a}*q^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + ...")
    }
}

impl Add for &QSeries {
    type Output = QSeries;
    fn add(self, o: &QSeries) -> QSeries {
        self.check_order(o);
        QSeries { c: self.c.iter().zip(&o.c).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &QSeries {
    type Output = QSeries;
    fn sub(self, o: &QSeries) -> QSeries {
        self.check_order(o);
        QSeries { c: self.c.iter().zip(&o.c).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        QSeries { c: self.c.iter().map(|a| -a).collect() }
    }
}

impl Mul for &QSeries {
    type Output = QSeries;
    fn mul(self, o: &QSeries) -> QSeries {
        self.check_order(o);
        let n = self.order();
        let mut c = vec![BigInt::zero(); n + 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    c[i + j] += a * b;
                }
            }
        }
        QSeries { c }
    }
}

/// The positive integers `r` with `r mod modulus` in `residues`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Congruence {
    pub modulus: u64,
    pub residues: Vec<u64>,
}

impl Congruence {
    /// `r ≡ a mod m` for each listed `a` (taken mod `m`, duplicates merged).
    pub fn new(modulus: u64, residues: impl IntoIterator<Item = i64>) -> Congruence {
        assert!(modulus > 0);
        let m = modulus as i64;
        let mut r: Vec<u64> = residues.into_iter().map(|a| a.rem_euclid(m) as u64).collect();
        r.sort_unstable();
        r.dedup();
        Congruence { modulus, residues: r }
    }

    /// Residues mod `m` outside the listed ones.
    pub fn complement(modulus: u64, excluded: impl IntoIterator<Item = i64>) -> Congruence {
        let ex = Congruence::new(modulus, excluded);
        Congruence::new(modulus, (0..modulus as i64).filter(|a| !ex.residues.contains(&(*a as u64))))
    }

    pub fn odd() -> Congruence {
        Congruence::new(2, [1])
    }

    pub fn all() -> Congruence {
        Congruence::new(1, [0])
    }

    /// Residues mod `modulus` where `keep` holds.
    pub fn filter(modulus: u64, keep: impl Fn(u64) -> bool) -> Congruence {
        Congruence::new(modulus, (0..modulus).filter(|&a| keep(a)).map(|a| a as i64))
    }

    pub fn contains(&self, r: u64) -> bool {
        self.residues.contains(&(r % self.modulus))
    }

    /// Members up to `n`, ascending.
    pub fn members(&self, n: usize) -> impl Iterator<Item = usize> + '_ {
        (1..=n).filter(|&r| self.contains(r as u64))
    }
}

/// `Π_{B}(1+q^r) Π_{C}(1-q^r)^{-1}` with classes counted with multiplicity.
pub fn prod_congruence(plus: &[Congruence], minus: &[Congruence], n: usize) -> QSeries {
    let mut s = QSeries::one(n);
    for cl in plus {
        for r in cl.members(n) {
            s.mul_one_plus(r);
        }
    }
    for cl in minus {
        for r in cl.members(n) {
            s.div_one_minus(r);
        }
    }
    s
}

/// `Π (1-q^r)` over the classes, with multiplicity.
pub fn prod_one_minus(classes: &[Congruence], n: usize) -> QSeries {
    let mut s = QSeries::one(n);
    for cl in classes {
        for r in cl.members(n) {
            s.mul_one_minus(r);
        }
    }
    s
}

pub fn p_classes(s0: u32, s1: u32) -> Vec<Congruence> {
    let s = (s0 + s1) as u64;
    vec![Congruence::new(s, [0]), Congruence::new(s, [s0 as i64]), Congruence::new(s, [s1 as i64])]
}

/// `P(s0, s1; q)`.
pub fn p_product(s0: u32, s1: u32, n: usize) -> QSeries {
    assert!(s0 > 0 && s1 > 0);
    prod_one_minus(&p_classes(s0, s1), n)
}

/// Classes of `Q(m0, 2m1; q)`; `two_m1` is `2m1`, so `2m = 2m0 + two_m1`.
pub fn q_classes(m0: u32, two_m1: u32) -> Vec<Congruence> {
    let two_m = (2 * m0 + two_m1) as u64;
    let m0 = m0 as i64;
    let t = two_m1 as i64;
    vec![
        Congruence::new(two_m, [0]),
        Congruence::new(two_m, [m0]),
        Congruence::new(two_m, [-m0]),
        Congruence::new(2 * two_m, [t]),
        Congruence::new(2 * two_m, [-t]),
    ]
}

/// `Q(m0, 2m1; q)`.
pub fn q_product(m0: u32, two_m1: u32, n: usize) -> QSeries {
    assert!(m0 > 0 && two_m1 > 0);
    prod_one_minus(&q_classes(m0, two_m1), n)
}

/// `Σ_w ε(w) q^{⟨s, λ - wλ⟩}` over the affine Weyl group of `A₁⁽¹⁾`, for
/// `λ = lam.0 Λ₀ + lam.1 Λ₁` (a dominant regular weight) and `⟨s, α_i⟩ = s.i`.
///
/// The group is the union of the identity and two reduced-word chains starting
/// with `r₀` or `r₁`. Along a chain, `wλ = λ - n₀α₀ - n₁α₁` and the pairing of the
/// current weight with the next coroot is all that is needed.
pub fn weyl_sum(lam: (u32, u32), s: (u32, u32), n: usize) -> QSeries {
    assert!(lam.0 > 0 && lam.1 > 0 && s.0 > 0 && s.1 > 0, "weights must be regular");
    let mut out = QSeries::one(n);
    for start in 0..2 {
        let (mut a, mut b) = (lam.0 as i64, lam.1 as i64);
        let (mut n0, mut n1) = (0i64, 0i64);
        let mut which = start;
        let mut sign = -1i64;
        let mut last = 0i64;
        loop {
            if which == 0 {
                n0 += a;
                (a, b) = (-a, b + 2 * a);
            } else {
                n1 += b;
                (a, b) = (a + 2 * b, -b);
            }
            let e = s.0 as i64 * n0 + s.1 as i64 * n1;
            assert!(e > last, "exponents along a reduced-word chain must increase");
            last = e;
            if e as usize > n {
                break;
            }
            out.c[e as usize] += sign;
            sign = -sign;
            which = 1 - which;
        }
    }
    out
}

/// Specialized numerator for `Λ = k0Λ₀ + k1Λ₁`.
pub fn weyl_numerator(k0: u32, k1: u32, s0: u32, s1: u32, n: usize) -> QSeries {
    weyl_sum((k0 + 1, k1 + 1), (s0, s1), n)
}

/// Specialized denominator.
pub fn weyl_denominator(s0: u32, s1: u32, n: usize) -> QSeries {
    weyl_sum((1, 1), (s0, s1), n)
}

/// The numerator with the roles of `Λ + ρ` and the specialization exchanged.
pub fn weyl_numerator_dual(k0: u32, k1: u32, s0: u32, s1: u32, n: usize) -> QSeries {
    weyl_sum((s0, s1), (k0 + 1, k1 + 1), n)
}

/// `d^{s0,s1}_{k0,k1}(q)`, the normalized specialized character of `L(k0Λ₀ + k1Λ₁)`.
pub fn specialized_character(k0: u32, k1: u32, s0: u32, s1: u32, n: usize) -> QSeries {
    weyl_numerator(k0, k1, s0, s1, n)
        .div(&weyl_denominator(s0, s1, n))
        .expect("the denominator has constant term 1")
}

/// Degree map on the PBW alphabet given by `e^{-α_i} ↦ q^{s_i}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Specialization {
    pub s0: u32,
    pub s1: u32,
}

impl Specialization {
    pub fn new(s0: u32, s1: u32) -> Result<Specialization> {
        if s0 == 0 || s1 == 0 {
            return domain("specialization parameters must be positive");
        }
        Ok(Specialization { s0, s1 })
    }

    pub fn principal() -> Specialization {
        Specialization { s0: 1, s1: 1 }
    }

    pub fn exponent(&self, p: Part) -> i64 {
        part_exponent(p, self.s0, self.s1)
    }
}

/// `Σ q^{deg(π)}` over partitions satisfying the difference and initial conditions.
pub fn conditioned_partition_gf(k0: u32, k1: u32, spec: Specialization, n: usize) -> QSeries {
    let counts = conditioned_counts_by_exponent(k0, k1, spec.s0, spec.s1, n);
    QSeries::from_coeffs(counts.into_iter().map(BigInt::from).collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub exponent: usize,
    pub lhs: String,
    pub rhs: String,
}

/// Coefficientwise comparison; `Ok(Err(m))` carries the first mismatch.
pub fn identity_check(lhs: &QSeries, rhs: &QSeries) -> Result<std::result::Result<(), Mismatch>> {
    if lhs.order() != rhs.order() {
        return Err(Error::Usage(format!(
            "truncation orders differ: {} vs {}",
            lhs.order(),
            rhs.order()
        )));
    }
    for (i, (a, b)) in lhs.c.iter().zip(&rhs.c).enumerate() {
        if a != b {
            return Ok(Err(Mismatch { exponent: i, lhs: a.to_string(), rhs: b.to_string() }));
        }
    }
    Ok(Ok(()))
}

/// The closed product formulas for specialized characters. Each variant knows the
/// character it describes and evaluates its product side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ProductFormula {
    /// `d^{1,1}_{k0,k1} = P(k0+1, k1+1) / P(1,1)`.
    PrincipalRatio { k0: u32, k1: u32 },
    /// `d^{1,2}_{k0,k1} = Q(k0+1, 2(k1+1)) / P(1,2)`.
    TwistedRatio { k0: u32, k1: u32 },
    /// `d^{s0,s1}_{n-1,2n-1} = Q(n s0, 2n s1) / P(s0,s1)`.
    DualTwisted { n: u32, s0: u32, s1: u32 },
    /// `d^{s0,s1}_{2n-1,n-1} = Q(n s1, 2n s0) / P(s0,s1)`.
    DualTwistedFlip { n: u32, s0: u32, s1: u32 },
    /// `d^{s0,s1}_{n-1,n-1} = P(n s0, n s1) / P(s0,s1)`.
    DualScaled { n: u32, s0: u32, s1: u32 },
    /// `d^{1,1}_{n-1,n-1}` as a product over odd, even and `2`-adic classes.
    PrincipalDiagonal { n: u32 },
    /// `d^{1,1}_{n-1,2n-1}`.
    PrincipalSkew { n: u32 },
    /// `d^{1,1}_{k0,k1}` for `k != 2 k1`.
    PrincipalGeneric { k0: u32, k1: u32 },
    /// `d^{1,2}_{k0,k1}` for `k != 3 k1 + 1`.
    TwistedGeneric { k0: u32, k1: u32 },
    /// `d^{1,2}_{2n-1,n-1}`.
    TwistedSkew { n: u32 },
    /// `d^{1,2}_{n-1,n-1} = Π_{r ≢ 0 mod n} (1-q^r)^{-1}`.
    TwistedDiagonal { n: u32 },
}

impl ProductFormula {
    /// Command line id of the formula.
    pub fn id(&self) -> &'static str {
        use ProductFormula::*;
        match self {
            PrincipalRatio { .. } => "11.1.3",
            TwistedRatio { .. } => "11.1.4",
            DualTwisted { .. } => "11.1.5",
            DualTwistedFlip { .. } => "11.1.6",
            DualScaled { .. } => "11.1.7",
            PrincipalDiagonal { .. } => "11.1.9",
            PrincipalSkew { .. } => "11.1.10",
            PrincipalGeneric { .. } => "11.1.11",
            TwistedGeneric { .. } => "11.1.12",
            TwistedSkew { .. } => "11.1.13",
            TwistedDiagonal { .. } => "11.1.14",
        }
    }

    /// `(k0, k1, s0, s1)` of the character on the left side.
    pub fn character_params(&self) -> (u32, u32, u32, u32) {
        use ProductFormula::*;
        match *self {
            PrincipalRatio { k0, k1 } | PrincipalGeneric { k0, k1 } => (k0, k1, 1, 1),
            TwistedRatio { k0, k1 } | TwistedGeneric { k0, k1 } => (k0, k1, 1, 2),
            DualTwisted { n, s0, s1 } => (n - 1, 2 * n - 1, s0, s1),
            DualTwistedFlip { n, s0, s1 } => (2 * n - 1, n - 1, s0, s1),
            DualScaled { n, s0, s1 } => (n - 1, n - 1, s0, s1),
            PrincipalDiagonal { n } => (n - 1, n - 1, 1, 1),
            PrincipalSkew { n } => (n - 1, 2 * n - 1, 1, 1),
            TwistedSkew { n } => (2 * n - 1, n - 1, 1, 2),
            TwistedDiagonal { n } => (n - 1, n - 1, 1, 2),
        }
    }

    pub fn validate(&self) -> Result<()> {
        use ProductFormula::*;
        match *self {
            DualTwisted { n, s0, s1 } | DualTwistedFlip { n, s0, s1 } | DualScaled { n, s0, s1 } => {
                if n == 0 || s0 == 0 || s1 == 0 {
                    return domain("n, s0, s1 must be positive");
                }
            }
            PrincipalDiagonal { n } | PrincipalSkew { n } | TwistedSkew { n } | TwistedDiagonal { n } => {
                if n == 0 {
                    return domain("n must be positive");
                }
            }
            PrincipalGeneric { k0, k1 } => {
                if k0 + k1 == 2 * k1 {
                    return domain(format!("needs k != 2 k1, got (k0, k1) = ({k0}, {k1})"));
                }
            }
            TwistedGeneric { k0, k1 } => {
                if k0 + k1 == 3 * k1 + 1 {
                    return domain(format!("needs k != 3 k1 + 1, got (k0, k1) = ({k0}, {k1})"));
                }
            }
            PrincipalRatio { .. } | TwistedRatio { .. } => {}
        }
        Ok(())
    }

    /// The product side to order `n`.
    pub fn product(&self, n: usize) -> Result<QSeries> {
        use ProductFormula::*;
        self.validate()?;
        let ratio = |num: QSeries, den: QSeries| num.div(&den);
        match *self {
            PrincipalRatio { k0, k1 } => ratio(p_product(k0 + 1, k1 + 1, n), p_product(1, 1, n)),
            TwistedRatio { k0, k1 } => ratio(q_product(k0 + 1, 2 * (k1 + 1), n), p_product(1, 2, n)),
            DualTwisted { n: m, s0, s1 } => ratio(q_product(m * s0, 2 * m * s1, n), p_product(s0, s1, n)),
            DualTwistedFlip { n: m, s0, s1 } => ratio(q_product(m * s1, 2 * m * s0, n), p_product(s0, s1, n)),
            DualScaled { n: m, s0, s1 } => ratio(p_product(m * s0, m * s1, n), p_product(s0, s1, n)),
            PrincipalDiagonal { n: m } => {
                let (a, b) = (m.trailing_zeros(), (m >> m.trailing_zeros()) as u64);
                let m = m as u64;
                let mut plus = Vec::new();
                for j in 1..=a {
                    let t = (1u64 << (a - j)) * b;
                    plus.push(Congruence::new(2 * t, [t as i64]));
                }
                let minus = [
                    Congruence::filter(2 * b, |r| r % 2 == 1 && r != b),
                    Congruence::complement(2 * m, [0, m as i64]),
                ];
                Ok(prod_congruence(&plus, &minus, n))
            }
            PrincipalSkew { n: m } => {
                let m = m as i64;
                let minus = [Congruence::odd(), Congruence::complement(3 * m as u64, [0, m, -m])];
                Ok(prod_congruence(&[], &minus, n))
            }
            PrincipalGeneric { k0, k1 } => {
                let k2 = (k0 + k1 + 2) as i64;
                let a = (k0 + 1) as i64;
                let minus = [Congruence::odd(), Congruence::complement(k2 as u64, [0, a, -a])];
                Ok(prod_congruence(&[], &minus, n))
            }
            TwistedGeneric { k0, k1 } => {
                let k2 = (k0 + k1 + 2) as u64;
                let a = (k0 + 1) as u64;
                let t = 2 * (k1 as u64 + 1) % (4 * k2);
                let keep = |r: u64| {
                    let r2 = r % (2 * k2);
                    let bad2 = r2 == 0 || r2 == a % (2 * k2) || r2 == (2 * k2 - a % (2 * k2)) % (2 * k2);
                    let bad4 = r == t || r == (4 * k2 - t) % (4 * k2);
                    !bad2 && !bad4
                };
                Ok(prod_congruence(&[], &[Congruence::filter(4 * k2, keep)], n))
            }
            TwistedSkew { n: m } => {
                let m = m as i64;
                let md = 6 * m as u64;
                let plus = [Congruence::new(md, [m, -m])];
                let minus = [Congruence::complement(md, [0, m, -m, 2 * m, -2 * m])];
                Ok(prod_congruence(&plus, &minus, n))
            }
            TwistedDiagonal { n: m } => {
                let minus = [Congruence::complement(m as u64, [0])];
                Ok(prod_congruence(&[], &minus, n))
            }
        }
    }

    /// The character side, from the Weyl sums.
    pub fn character(&self, n: usize) -> QSeries {
        let (k0, k1, s0, s1) = self.character_params();
        specialized_character(k0, k1, s0, s1, n)
    }

    pub fn check(&self, n: usize) -> Result<std::result::Result<(), Mismatch>> {
        identity_check(&self.product(n)?, &self.character(n))
    }
}
