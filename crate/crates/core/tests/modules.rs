use vvmf::basis::{self, BasisBuilder};
use vvmf::families::{self, Family2DSpec, FamilyClass};
use vvmf::forms;
use vvmf::fundamental::{self, FundamentalMatrix};
use vvmf::rational::{int, rat};
use vvmf::{Error, QMatrix, QSeries};

fn class(k: u8, t: vvmf::Rational, order: usize) -> (Family2DSpec, FundamentalMatrix) {
    let s = Family2DSpec::new(FamilyClass::from_index(k).unwrap(), t, int(1));
    let fm = families::family_fundamental(&s, order).unwrap();
    (s, fm)
}

#[test]
fn j_and_delta_relations() {
    let n = 20;
    let e4 = forms::e4(n);
    let e6 = forms::e6(n);
    let cube = e4.pow_int(3).unwrap();
    assert!(forms::j_invariant(n)
        .mul(&forms::delta(n))
        .agrees_with(&cube)
        .unwrap());
    let lhs = cube.sub(&e6.mul(&e6)).unwrap();
    assert!(lhs.agrees_with(&forms::delta(n).scale(&int(1728))).unwrap());
    assert!(e4.mul(&e6).agrees_with(&forms::e10(n)).unwrap());
    assert!(e4.mul(&forms::e10(n)).agrees_with(&forms::e14(n)).unwrap());
}

#[test]
fn wronskian_of_a_scalar_is_the_scalar() {
    let d = forms::delta(10);
    assert_eq!(
        forms::wronskian(std::slice::from_ref(&d), &int(12)).unwrap(),
        d
    );
}

#[test]
fn wronskian_of_proportional_components_vanishes() {
    let e4 = forms::e4(10);
    let w = forms::wronskian(&[e4.clone(), e4.scale(&rat(-3, 7))], &int(4)).unwrap();
    assert!(w.is_zero());
}

#[test]
fn wronskian_of_class1_column_leading_term() {
    // Column 1 is (q^a (1 + ...), q^b (chi21 + ...)) with a = Lambda_1 and
    // b = Lambda_2 + 1, so det[X, DX] starts with chi21 (b - a) q^(a + b).
    let t = rat(1, 6);
    let (_, fm) = class(1, t.clone(), 12);
    let (a, b) = (fm.lambda[0].clone(), &fm.lambda[1] + int(1));
    let w = forms::wronskian(&fm.column(0), &int(0)).unwrap();
    assert_eq!(w.valuation().unwrap(), &a + &b);
    assert_eq!(w.valuation().unwrap(), fm.trace() + int(1));
    assert_eq!(
        w.coefficient(&(&a + &b)).unwrap(),
        &fm.chi()[(1, 0)] * (&b - &a)
    );
}

#[test]
fn nabla_images_lie_in_the_module() {
    for k in 1..=3 {
        let (_, fm) = class(k, rat(1, 6), 24);
        for j in 0..2 {
            for i in 1..=3 {
                let y: Vec<QSeries> = fm
                    .column(j)
                    .iter()
                    .map(|c| forms::nabla(i, c, &int(0)).unwrap())
                    .collect();
                let p = fundamental::module_membership(&fm, &y);
                assert!(p.is_ok(), "class {k} column {j} nabla {i}: {p:?}");
            }
        }
    }
}

#[test]
fn non_members_are_rejected() {
    let (_, fm) = class(1, rat(1, 6), 16);
    let mut y = fm.column(0);
    let stray = QSeries::monomial(&fm.lambda[0] + int(3), int(1), y[0].order());
    y[0] = y[0].add(&stray).unwrap();
    assert!(matches!(
        fundamental::module_membership(&fm, &y),
        Err(Error::NotAMember(_))
    ));
    let odd = vec![
        QSeries::monomial(rat(1, 7), int(1), 12),
        QSeries::monomial(rat(1, 7), int(1), 12),
    ];
    assert!(fundamental::module_membership(&fm, &odd).is_err());
}

#[test]
fn basis_elements_have_the_normalised_principal_part() {
    let (_, fm) = class(2, rat(2, 5), 16);
    let b = BasisBuilder::new(&fm);
    for j in 0..2 {
        for n in 0..4 {
            let e = b.element(j, n).unwrap();
            for i in 0..2 {
                for m in -5..=0 {
                    let c = e.coefficient(&fm.lambda, i, m).unwrap();
                    let expect = if i == j && m == -(n as i64) {
                        int(1)
                    } else {
                        int(0)
                    };
                    assert_eq!(c, expect, "X^({j};{n}) at (i={i}, m={m})");
                }
            }
        }
    }
}

#[test]
fn recursion_detects_resonance() {
    let chi = QMatrix::from_rows(vec![vec![int(0), int(1)], vec![int(1), int(0)]]).unwrap();
    let r = fundamental::solve_recursion(&[int(0), int(2)], &chi, &int(0), 6);
    assert!(
        matches!(
            r,
            Err(Error::Resonance { .. }) | Err(Error::UnderDetermined { .. })
        ),
        "{r:?}"
    );
}

#[test]
fn dual_of_trivial_is_weight_two() {
    let tr = fundamental::solve_recursion(&[int(0)], &QMatrix::zeros(1, 1), &int(0), 10).unwrap();
    let dual = basis::serre_dual(&tr).unwrap();
    assert_eq!(dual.w, int(2));
    assert_eq!(dual.lambda, vec![int(-1)]);
    let expect = forms::e14(10).div(&forms::delta(10)).unwrap();
    assert!(dual.entry(0, 0).agrees_with(&expect).unwrap());
}

#[test]
fn oracle_rejects_a_corrupted_chi() {
    let (s, fm) = class(3, rat(2, 5), 10);
    let mut chi = fm.chi().clone();
    chi[(0, 1)] = &chi[(0, 1)] * rat(101, 100);
    let bad = fundamental::solve_recursion(&fm.lambda, &chi, &int(0), 10).unwrap();
    assert!(families::oracle_compare(&fm, &s, 10).unwrap());
    assert!(!families::oracle_compare(&bad, &s, 10).unwrap_or(false));
}

#[test]
fn excluded_parameters_are_rejected() {
    for (k, t) in [(1, rat(1, 12)), (2, rat(3, 4)), (3, rat(5, 12))] {
        let s = Family2DSpec::new(FamilyClass::from_index(k).unwrap(), t, int(1));
        assert!(matches!(
            families::family_2d(&s),
            Err(Error::ExcludedParameter(_))
        ));
    }
    let s = Family2DSpec::new(FamilyClass::from_index(1).unwrap(), rat(1, 6), int(0));
    assert!(families::family_2d(&s).is_err());
}
