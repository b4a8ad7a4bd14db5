//! Move fundamental matrices up the weight ladder.
use vvmf::forms;
use vvmf::fundamental;
use vvmf::multiplier::MultiplierData;
use vvmf::rational::int;
use vvmf::QMatrix;

fn main() {
    let n = 10;
    let trivial =
        fundamental::solve_recursion(&[int(0)], &QMatrix::zeros(1, 1), &int(0), n).unwrap();
    let m = MultiplierData::trivial();
    for i in 1..=6 {
        let up = fundamental::weight_shift(&trivial, i, &m).unwrap();
        println!(
            "i = {i}: weight {}, Lambda {}, X = {}",
            up.w,
            up.lambda[0],
            up.entry(0, 0)
        );
    }
    let e14_over_delta = forms::e14(n).div(&forms::delta(n)).unwrap();
    let up1 = fundamental::weight_shift(&trivial, 1, &m).unwrap();
    println!(
        "i = 1 gives E14/Delta: {}",
        up1.entry(0, 0).agrees_with(&e14_over_delta).unwrap()
    );
    println!(
        "direct i = 1 route on the trivial rep: {:?}",
        fundamental::weight_shift_direct_one(&trivial, &m).err()
    );
}
