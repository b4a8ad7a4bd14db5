use proptest::prelude::*;
use vvmf::forms;
use vvmf::multiplier::MultiplierData;
use vvmf::rational::{int, rat};
use vvmf::{QSeries, Rational};

const N: usize = 8;

fn series_with(offset: Rational) -> impl Strategy<Value = QSeries> {
    prop::collection::vec(-20i64..20, N + 1)
        .prop_map(move |c| QSeries::from_ints(offset.clone(), &c).unwrap())
}

fn offset() -> impl Strategy<Value = Rational> {
    (-3i64..3, 1i64..7).prop_map(|(p, q)| rat(p, q))
}

fn unit() -> impl Strategy<Value = QSeries> {
    prop::collection::vec(-9i64..9, N).prop_map(|mut c| {
        c.insert(0, 1);
        QSeries::from_ints(int(0), &c).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_laws(a in series_with(int(0)), b in series_with(int(0)), c in series_with(int(0))) {
        prop_assert!(a.add(&b).unwrap().agrees_with(&b.add(&a).unwrap()).unwrap());
        prop_assert!(a.mul(&b).agrees_with(&b.mul(&a)).unwrap());
        prop_assert!(a.mul(&b).mul(&c).agrees_with(&a.mul(&b.mul(&c))).unwrap());
        let lhs = a.mul(&b.add(&c).unwrap());
        let rhs = a.mul(&b).add(&a.mul(&c)).unwrap();
        prop_assert!(lhs.agrees_with(&rhs).unwrap());
    }

    #[test]
    fn inverse_of_unit(u in unit(), e in offset()) {
        let s = u.shift(&e);
        let prod = s.mul(&s.invert().unwrap());
        prop_assert!(prod.agrees_with(&QSeries::one(N)).unwrap());
    }

    #[test]
    fn rational_powers_add(u in unit(), p in -4i64..5, q in 1i64..6, r in -4i64..5, s in 1i64..6) {
        let (a, b) = (rat(p, q), rat(r, s));
        let lhs = u.pow_rational(&a).unwrap().mul(&u.pow_rational(&b).unwrap());
        prop_assert!(lhs.agrees_with(&u.pow_rational(&(&a + &b)).unwrap()).unwrap());
    }

    #[test]
    fn rational_power_roots(u in unit(), k in 2i64..5) {
        let root = u.pow_rational(&rat(1, k)).unwrap();
        prop_assert!(root.pow_int(k).unwrap().agrees_with(&u).unwrap());
    }

    #[test]
    fn shifts_compose(a in series_with(int(0)), e in offset(), f in offset()) {
        let s = a.shift(&e).shift(&f);
        prop_assert_eq!(s, a.shift(&(&e + &f)));
    }

    #[test]
    fn derivation_property(f in series_with(int(0)), x in series_with(rat(1, 3)), k in -2i64..4, w in -2i64..4) {
        let (k, w) = (int(2 * k), int(2 * w));
        let lhs = forms::modular_derivative(&f.mul(&x), &(&k + &w));
        let rhs = forms::modular_derivative(&f, &k)
            .mul(&x)
            .add(&f.mul(&forms::modular_derivative(&x, &w)))
            .unwrap();
        prop_assert!(lhs.agrees_with(&rhs).unwrap());
    }

    #[test]
    fn c_shift_matches_shifted_c(a0 in 0usize..3, a1 in 0usize..3, b0 in 0usize..3, b1 in 0usize..3, b2 in 0usize..3, k in 0i64..6, l in -2i64..3) {
        let d = a0 + a1;
        prop_assume!(d > 0 && b0 + b1 + b2 == d);
        let m = MultiplierData::new(d, int(0), [a0, a1], [b0, b1, b2]).unwrap();
        let direct = m.c_shift(k, l).unwrap();
        let shifted = m.shift_multiplicities(k + 6 * l).c_value();
        prop_assert_eq!(direct, shifted);
    }
}
