#[allow(dead_code)]
#[path = "../../sl2hat-tests/src/lib.rs"]
mod common;

use common::{p, partitions};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use sl2hat::{Color, ColoredPartition, HighestWeight, LieWord, Module, ModuleVector, Part};

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `[a(m), b(n)]` acting on `v`, from the sl2 brackets and the form.
fn bracket(module: &Module, a: Part, b: Part, v: &ModuleVector) -> ModuleVector {
    use Color::{H, X, Y};
    let deg = a.degree + b.degree;
    let k = module.level();
    let mut out = ModuleVector::zero(module.hw(), v.degree() + deg, v.weight() + a.color.weight() + b.color.weight());
    let (coef, color) = match (a.color, b.color) {
        (X, Y) => (1, Some(H)),
        (Y, X) => (-1, Some(H)),
        (H, X) => (2, Some(X)),
        (X, H) => (-2, Some(X)),
        (H, Y) => (-2, Some(Y)),
        (Y, H) => (2, Some(Y)),
        _ => (0, None),
    };
    if let Some(c) = color {
        out.add_scaled(&module.act_part(Part::new(c, deg), v), &q(coef, 1));
    }
    if deg == 0 {
        let form = match (a.color, b.color) {
            (X, Y) | (Y, X) => 1,
            (H, H) => 2,
            _ => 0,
        };
        if form != 0 {
            out.add_scaled(v, &q(a.degree as i64 * form * k, 1));
        }
    }
    out
}

fn any_part() -> impl Strategy<Value = Part> {
    (0..3usize, -3..=3i32).prop_map(|(c, d)| Part::new(Color::ALL[c], d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn commutators_on_verma_modules(a in any_part(), b in any_part(), k0 in 0..3u32, k1 in 0..3u32, i in 0..40usize) {
        let m = Module::new(HighestWeight::verma(k0, k1));
        let basis: Vec<ColoredPartition> = (-3..=0).flat_map(|d| partitions(d, 2)).collect();
        let v = m.basis_vector(&basis[i % basis.len()]).unwrap();
        let lhs = m.act_part(a, &m.act_part(b, &v)).sub(&m.act_part(b, &m.act_part(a, &v)));
        prop_assert!(lhs.sub(&bracket(&m, a, b, &v)).is_zero());
    }

    #[test]
    fn commutators_on_the_vacuum_module(a in any_part(), b in any_part(), k in 0..4u32, i in 0..40usize) {
        let m = Module::new(HighestWeight::generalized_verma(k));
        let basis: Vec<ColoredPartition> = (-3..=0).flat_map(|d| partitions(d, 0)).collect();
        let v = m.basis_vector(&basis[i % basis.len()]).unwrap();
        let lhs = m.act_part(a, &m.act_part(b, &v)).sub(&m.act_part(b, &m.act_part(a, &v)));
        prop_assert!(lhs.sub(&bracket(&m, a, b, &v)).is_zero());
    }
}

#[test]
fn highest_weight_vector() {
    for (k0, k1) in [(0, 0), (1, 0), (0, 1), (2, 3)] {
        let m = Module::new(HighestWeight::verma(k0, k1));
        let v = m.vacuum();
        assert!(m.act_part(Part::x(0), &v).is_zero());
        assert!(m.act_part(Part::h(1), &v).is_zero());
        assert!(m.act_part(Part::y(2), &v).is_zero());
        assert!(m.act_part(Part::h(0), &v).sub(&v.scale_int(k1 as i64)).is_zero());
        assert!(!m.act_part(Part::y(0), &v).is_zero());
    }
}

#[test]
fn words_agree_with_successive_parts() {
    let m = Module::new(HighestWeight::verma(1, 2));
    let v = m.basis_vector(&p("y(-1)y(0)")).unwrap();
    let word = [Part::x(1), Part::h(-2), Part::y(0), Part::x(-1)];
    let mut step = v.clone();
    for b in word.iter().rev() {
        step = m.act_part(*b, &step);
    }
    assert!(m.act_word(&LieWord::new(word.to_vec()), &v).sub(&step).is_zero());
}

#[test]
fn l0_is_degree_plus_casimir() {
    for (k0, k1) in [(0, 0), (1, 0), (0, 1), (1, 1), (2, 1)] {
        let m = Module::new(HighestWeight::verma(k0, k1));
        let k = (k0 + k1) as i64;
        let k1 = k1 as i64;
        for d in -3..=0 {
            for pi in partitions(d, 2) {
                let v = m.basis_vector(&pi).unwrap();
                let want = v.scale(&(q(-d as i64, 1) + q(k1 * (k1 + 2), 4 * (k + 2))));
                assert!(m.sugawara_l(0, &v).sub(&want).is_zero(), "({k0},{k1}) {pi}");
            }
        }
    }
}

#[test]
fn l_minus_one_commutes_like_a_derivative() {
    for k in 0..=3u32 {
        let m = Module::new(HighestWeight::generalized_verma(k));
        for d in -3..=0 {
            for pi in partitions(d, 0) {
                let v = m.basis_vector(&pi).unwrap();
                let l = m.sugawara_l(-1, &v);
                assert!(l.sub(&m.l_minus1_derivation(&v).unwrap()).is_zero(), "k={k} {pi}");
                for b in [Part::x(-1), Part::h(-2), Part::y(-1)] {
                    // [L_{-1}, b(n)] = -n b(n-1)
                    let lhs = m.sugawara_l(-1, &m.act_part(b, &v)).sub(&m.act_part(b, &l));
                    let rhs = m.act_part(Part::new(b.color, b.degree - 1), &v).scale_int(-b.degree as i64);
                    assert!(lhs.sub(&rhs).is_zero(), "k={k} {b} on {pi}");
                }
            }
        }
    }
    let verma = Module::new(HighestWeight::verma(1, 0));
    assert!(verma.l_minus1_derivation(&verma.vacuum()).is_err());
}
