//! Which neighbouring exponents of a fundamental matrix are still bijective.
use vvmf::basis;
use vvmf::families::{self, Family2DSpec, FamilyClass};
use vvmf::fundamental;
use vvmf::rational::{int, rat};
use vvmf::QMatrix;

fn main() {
    for t in [rat(1, 6), int(0)] {
        let spec = Family2DSpec::new(FamilyClass::DetXi6, t.clone(), int(1));
        let fm = families::family_fundamental(&spec, 8).unwrap();
        let l = &fm.lambda;
        let up = [&l[0] + int(1), &l[1] - int(1)];
        let down = [&l[0] - int(1), &l[1] + int(1)];
        println!(
            "t = {t}: chi12 = {}, Lambda+e1-e2 bijective: {}; chi21 = {}, Lambda+e2-e1 bijective: {}",
            fm.chi()[(0, 1)],
            basis::bijectivity_test(&fm, &up).unwrap(),
            fm.chi()[(1, 0)],
            basis::bijectivity_test(&fm, &down).unwrap()
        );
    }
    let trivial =
        fundamental::solve_recursion(&[int(0)], &QMatrix::zeros(1, 1), &int(0), 6).unwrap();
    for l in [-1, 0, 1] {
        let (k, c) = basis::principal_part_defects(&trivial, &[int(l)]).unwrap();
        println!("trivial rep, lambda = {l:>2}: kernel {k}, cokernel {c}");
    }
}
