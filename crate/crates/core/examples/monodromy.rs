//! Numerical check that S and U fix the fundamental matrix at i and xi6.
use vvmf::families::{self, Family2DSpec, FamilyClass};
use vvmf::rational::{int, rat};

fn main() {
    for (class, t) in [
        (FamilyClass::DetXi6, rat(1, 6)),
        (FamilyClass::DetXi6, rat(2, 5)),
        (FamilyClass::DetMinus1, rat(3, 7)),
    ] {
        let spec = Family2DSpec::new(class, t.clone(), int(1));
        let fm = families::family_fundamental(&spec, 30).unwrap();
        let r = families::fixed_point_check(&fm, &spec, 1e-8).unwrap();
        let (ci, cx) = families::fixed_point_residuals(&fm, &spec, r.y * 1.01);
        println!(
            "class {} t = {t}: residuals {:.2e}, {:.2e}; with y * 1.01: {:.2e}, {:.2e}",
            class.index(),
            r.residual_i,
            r.residual_xi6,
            ci,
            cx
        );
    }
}
