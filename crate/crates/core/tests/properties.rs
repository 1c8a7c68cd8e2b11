//! Randomized invariants of the scalar field, the superalgebra, the smash
//! product and the Γ modules.

use nsalg::algebra::{bracket, AMonomial, AlgebraMode, Generator, HalfInt, LieElement};
use nsalg::analysis::intertwiner::find_intertwiner;
use nsalg::analysis::jacobi::jacobi_residual;
use nsalg::enveloping::{smash_product, Letter, SmashElement, SmashMode, WordSum};
use nsalg::gamma::{BasisKey, GammaModule, ModuleVector, Window};
use nsalg::scalar::{rat, Rational};
use nsalg::Scalar;
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=6).prop_map(|(n, d)| rat(n, d))
}

/// Polynomials of degree ≤ 2 in λ and b with small rational coefficients.
fn poly() -> impl Strategy<Value = Scalar> {
    prop::collection::vec(small_rational(), 6).prop_map(|c| {
        let (l, b) = (Scalar::lambda(), Scalar::b());
        let monos = [Scalar::one(), l.clone(), b.clone(), &l * &l, &l * &b, &b * &b];
        monos.iter().zip(c).fold(Scalar::zero(), |acc, (m, c)| acc + m * &Scalar::from_rational(c))
    })
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (poly(), poly()).prop_map(|(n, d)| if d.is_zero() { n } else { n.try_div(&d).unwrap() })
}

fn generator(range: i64) -> impl Strategy<Value = Generator> {
    prop_oneof![
        4 => (-range..=range).prop_map(Generator::L),
        4 => (-range..range).prop_map(Generator::g_plus_half),
        1 => Just(Generator::C),
    ]
}

fn letter() -> impl Strategy<Value = Letter> {
    prop_oneof![
        (-3i64..=3).prop_map(|n| Letter::X(Generator::L(n))),
        (-3i64..3).prop_map(|n| Letter::X(Generator::g_plus_half(n))),
        (-3i64..=3, 0u8..=1).prop_map(|(k, e)| Letter::A(AMonomial::new(k, e))),
    ]
}

fn word_sum() -> impl Strategy<Value = WordSum> {
    prop::collection::vec((prop::collection::vec(letter(), 1..=2), -3i64..=3), 1..=2).prop_map(|terms| {
        terms.into_iter().fold(WordSum::zero(), |acc, (w, c)| acc.add(&WordSum::word(w).scale(&Scalar::from_int(c))))
    })
}

fn numeric_parameter() -> impl Strategy<Value = Scalar> {
    small_rational().prop_map(Scalar::from_rational)
}

fn key() -> impl Strategy<Value = BasisKey> {
    (-6i64..=6, 0u8..=1).prop_map(|(k, e)| BasisKey::new(k, e))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(x in scalar(), y in scalar(), z in scalar()) {
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert!((&x - &x).is_zero());
        if !y.is_zero() {
            prop_assert_eq!((&x * &y).try_div(&y).unwrap(), x.clone());
            prop_assert!(y.try_div(&y).unwrap().is_one());
        }
    }

    #[test]
    fn canonical_form_is_unique(x in scalar(), y in scalar()) {
        // The same value reached by two routes has one representation and one rendering.
        let a = &(&x + &y) - &y;
        prop_assert_eq!(a.to_string(), x.to_string());
        prop_assert_eq!(a.numerator(), x.numerator());
        prop_assert_eq!(a.denominator(), x.denominator());
    }

    #[test]
    fn numeric_values_round_trip(r in small_rational(), s in small_rational()) {
        let x = Scalar::from_rational(r.clone());
        prop_assert_eq!(x.as_rational(), Some(r.clone()));
        prop_assert_eq!((&x * &Scalar::from_rational(s.clone())).as_rational(), Some(&r * &s));
        prop_assert_eq!((&x + &Scalar::from_rational(s.clone())).as_rational(), Some(&r + &s));
    }

    #[test]
    fn substitution_is_a_homomorphism(x in poly(), y in poly(), l in small_rational(), b in small_rational()) {
        let sub = |s: &Scalar| s.substitute(Some(&l), Some(&b)).unwrap();
        prop_assert!(sub(&x).is_numeric());
        prop_assert_eq!(sub(&(&x + &y)), &sub(&x) + &sub(&y));
        prop_assert_eq!(sub(&(&x * &y)), &sub(&x) * &sub(&y));
        if let Ok(q) = x.try_div(&y) {
            if !sub(&y).is_zero() {
                prop_assert_eq!(sub(&q), sub(&x).try_div(&sub(&y)).unwrap());
            }
        }
    }

    #[test]
    fn graded_jacobi(x in generator(6), y in generator(6), z in generator(6)) {
        prop_assert!(jacobi_residual(x, y, z).unwrap().is_zero());
    }

    #[test]
    fn bracket_is_supercommutative(x in generator(6), y in generator(6)) {
        let m = AlgebraMode::KHat;
        let (ex, ey) = (LieElement::basis(x, m).unwrap(), LieElement::basis(y, m).unwrap());
        let sign = if x.parity().is_odd() && y.parity().is_odd() { 1 } else { -1 };
        let xy = bracket(&ex, &ey).unwrap();
        let yx = bracket(&ey, &ex).unwrap().scale(&Scalar::from_int(sign));
        prop_assert_eq!(xy, yx);
    }

    #[test]
    fn smash_product_is_associative(x in word_sum(), y in word_sum(), z in word_sum()) {
        let n = |w: &WordSum| w.normalize(SmashMode::AK).unwrap();
        let (nx, ny, nz) = (n(&x), n(&y), n(&z));
        let left = smash_product(&smash_product(&nx, &ny).unwrap(), &nz).unwrap();
        let right = smash_product(&nx, &smash_product(&ny, &nz).unwrap()).unwrap();
        prop_assert_eq!(&left, &right);
        // Normalizing the concatenated words directly gives the same normal form.
        prop_assert_eq!(n(&x.mul(&y).mul(&z)), left);
    }

    #[test]
    fn normal_form_is_idempotent(x in word_sum()) {
        let once: SmashElement = x.normalize(SmashMode::AK).unwrap();
        prop_assert_eq!(once.to_words().normalize(SmashMode::AK).unwrap(), once);
    }

    #[test]
    fn module_axiom_holds(l in numeric_parameter(), b in numeric_parameter(), x in generator(4), y in generator(4), k in key()) {
        let m = GammaModule::gamma(l, b, AlgebraMode::KHat).unwrap();
        prop_assert!(m.module_axiom_residual(x, y, k).unwrap().is_zero());
    }

    #[test]
    fn formal_module_axiom_holds(x in generator(3), y in generator(3), k in key()) {
        let m = GammaModule::gamma(Scalar::lambda(), Scalar::b(), AlgebraMode::KHat).unwrap();
        prop_assert!(m.module_axiom_residual(x, y, k).unwrap().is_zero());
    }

    #[test]
    fn actions_shift_weight_by_degree(g in generator(6), k in key()) {
        let m = GammaModule::gamma(Scalar::lambda(), Scalar::b(), AlgebraMode::KHat).unwrap();
        if let Some((_, target)) = m.act_generator_on_key(g, k).unwrap() {
            prop_assert_eq!(&m.weight(target) - &m.weight(k), g.degree().to_scalar());
        }
    }

    #[test]
    fn words_act_through_the_normal_form(x in word_sum(), k in key()) {
        let m = GammaModule::gamma(Scalar::frac(1, 3), Scalar::b(), AlgebraMode::KHat).unwrap();
        let v = ModuleVector::basis(k);
        let direct = m.act_words(&x, &v).unwrap();
        let normal = m.act_smash(&x.normalize(SmashMode::AK).unwrap(), &v).unwrap();
        prop_assert_eq!(direct, normal);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn isomorphism_search_is_symmetric(
        l1 in prop::sample::select(vec![(1i64, 3i64), (4, 3), (-2, 3), (1, 2), (0, 1), (2, 1)]),
        l2 in prop::sample::select(vec![(1i64, 3i64), (4, 3), (-2, 3), (1, 2), (0, 1), (2, 1)]),
        b1 in prop::sample::select(vec![(0i64, 1i64), (1, 4), (1, 2)]),
        b2 in prop::sample::select(vec![(0i64, 1i64), (1, 4), (1, 2)]),
    ) {
        let make = |(n, d): (i64, i64), (bn, bd): (i64, i64)| {
            GammaModule::gamma(Scalar::frac(n, d), Scalar::frac(bn, bd), AlgebraMode::KHat).unwrap()
        };
        let (m1, m2) = (make(l1, b1), make(l2, b2));
        let w = Window::new(-6, 6, 2).unwrap();
        let there = find_intertwiner(&m1, &m2, &w, 2).unwrap().is_some();
        let back = find_intertwiner(&m2, &m1, &w, 2).unwrap().is_some();
        prop_assert_eq!(there, back);
        if m1 == m2 {
            prop_assert!(there);
        }
    }
}

#[test]
fn half_integer_degrees_are_exact() {
    assert_eq!(Generator::g_plus_half(-1).degree(), HalfInt::from_doubled(-1));
    assert_eq!(HalfInt::from_doubled(3).to_scalar(), Scalar::frac(3, 2));
}
