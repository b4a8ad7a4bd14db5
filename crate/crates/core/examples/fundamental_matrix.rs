//! Solve the recursion for a rank-2 family member and check the structure.
use vvmf::families::{self, Family2DSpec, FamilyClass};
use vvmf::fundamental;
use vvmf::rational::{format_rational, int, rat};
use vvmf::QMatrix;

fn show(m: &QMatrix) -> String {
    let rows: Vec<String> = m
        .rows()
        .iter()
        .map(|r| r.iter().map(format_rational).collect::<Vec<_>>().join(", "))
        .collect();
    format!("[{}]", rows.join("; "))
}

fn main() {
    let spec = Family2DSpec::new(FamilyClass::DetXi6, rat(1, 6), int(1));
    let (m, lambda, chi) = families::family_2d(&spec).unwrap();
    let fm = fundamental::solve_recursion(&lambda, &chi, &m.w, 12).unwrap();
    println!(
        "Lambda = diag({})",
        fm.lambda
            .iter()
            .map(format_rational)
            .collect::<Vec<_>>()
            .join(", ")
    );
    for n in 0..3 {
        println!("Xi_{n} = {}", show(&fm.coeffs[n]));
    }
    let am = fm.a_matrices();
    println!("A2 = {}, A3 = {}", show(&am.a2), show(&am.a3));
    println!("elliptic identities: {}", fundamental::verify_elliptic(&am));
    println!(
        "differential equation residual vanishes: {}",
        fundamental::ode_residual_vanishes(&fm).unwrap()
    );
    println!(
        "det identity: {}",
        fundamental::det_identity_check(&fm, &m).unwrap()
    );
    println!("det Xi = {}", fm.det().unwrap().truncate(4));
}
