//! Tight dimensions and generator weights for the canonical ranks 3 to 5.
use vvmf::dimensions;
use vvmf::rational::int;

fn main() {
    for d in 3..=5 {
        let m = dimensions::canonical_multiplicities(d).unwrap();
        for l in -2..=2 {
            let mut lambda = vec![int(0); d];
            lambda[0] = int(l);
            let h = dimensions::hilbert_tight(&m, &lambda).unwrap();
            let ws: Vec<String> = h.generator_weights.iter().map(|w| w.to_string()).collect();
            println!(
                "d = {d}, Tr lambda = {l:>2}: generators in weights {}",
                ws.join(", ")
            );
        }
    }
}
