//! Serre dual of a fundamental matrix and the symmetry between the two.
use vvmf::basis;
use vvmf::families::{self, Family2DSpec, FamilyClass};
use vvmf::rational::{format_rational, int, rat};

fn main() {
    let spec = Family2DSpec::new(FamilyClass::DetMinus1, rat(2, 5), int(1));
    let fm = families::family_fundamental(&spec, 10).unwrap();
    let dual = basis::serre_dual(&fm).unwrap();
    println!("weight {} -> {}", fm.w, dual.w);
    let show = |l: &[vvmf::Rational]| l.iter().map(format_rational).collect::<Vec<_>>().join(", ");
    println!(
        "Lambda diag({}) -> diag({})",
        show(&fm.lambda),
        show(&dual.lambda)
    );
    println!("involution: {}", basis::serre_dual(&dual).unwrap() == fm);
    println!(
        "symmetry at M = 3: {}",
        basis::duality_symmetry_check(&fm, &dual, 3).unwrap()
    );
}
