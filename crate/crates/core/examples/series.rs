//! Classical q-expansions and a few identities between them.
use vvmf::forms;
use vvmf::rational::int;

fn main() {
    let n = 6;
    for name in forms::STANDARD_NAMES {
        println!("{name:>5} = {}", forms::standard_series(name, n).unwrap());
    }
    let cube = forms::e4(n).pow_int(3).unwrap();
    let diff = cube.sub(&forms::e6(n).pow_int(2).unwrap()).unwrap();
    println!(
        "E4^3 - E6^2 = 1728 Delta: {}",
        diff.agrees_with(&forms::delta(n).scale(&int(1728)))
            .unwrap()
    );
    println!(
        "D_12 Delta = 0: {}",
        forms::modular_derivative(&forms::delta(n), &int(12)).is_zero()
    );
}
