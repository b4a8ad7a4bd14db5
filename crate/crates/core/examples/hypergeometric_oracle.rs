//! Compare the recursion with the hypergeometric closed form for all classes.
use vvmf::families::{self, Family2DSpec, FamilyClass};
use vvmf::rational::{int, rat};

fn main() {
    for k in 1..=3 {
        for t in [rat(1, 6), rat(2, 5), rat(-1, 5)] {
            let spec = Family2DSpec::new(FamilyClass::from_index(k).unwrap(), t.clone(), int(1));
            let fm = families::family_fundamental(&spec, 10).unwrap();
            let ok = families::oracle_compare(&fm, &spec, 10).unwrap();
            println!("class {k} t = {t:>4}: agreement through q^10: {ok}");
        }
    }
}
