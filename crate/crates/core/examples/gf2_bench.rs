//! Quick timing harness for the GF(2) solver on random sparse systems.

use std::time::Instant;

use cubegrid::fixtures::random_consistent_gf2;
use cubegrid::gf2::Outcome;

fn main() {
    let sizes: Vec<usize> = std::env::args()
        .skip(1)
        .map(|a| a.parse().expect("size"))
        .collect();
    let sizes = if sizes.is_empty() {
        vec![100_000, 50_000, 20_000, 5_000, 1_000]
    } else {
        sizes
    };
    for n in sizes {
        let (system, _) = random_consistent_gf2(42, n, 8);
        let start = Instant::now();
        let outcome = system.solve();
        let elapsed = start.elapsed();
        let ok = match outcome {
            Outcome::Solved(x) => system.check(&x),
            Outcome::Inconsistent(_) => false,
        };
        eprintln!("n = {n:>7}  solve = {elapsed:?}  resubstitutes = {ok}");
    }
}
