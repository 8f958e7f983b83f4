//! Seeded random search in the Sylow 2-subgroup of S_16 for a pair whose
//! commutator order changes when `y` is replaced by `y^3`.

use porigami::families::{search_counterexample, SearchOutcome, SearchPredicate};

fn main() -> porigami::Result<()> {
    for seed in 0..4 {
        match search_counterexample(2, 4, seed, 10_000, SearchPredicate::OrderMismatch)? {
            SearchOutcome::Found {
                x,
                y,
                iteration,
                orders,
            } => {
                println!("seed {seed}: iteration {iteration}, orders {orders:?}");
                println!("  x = {x}");
                println!("  y = {y}");
            }
            SearchOutcome::NotFound { iterations } => {
                println!("seed {seed}: nothing in {iterations} draws")
            }
        }
    }
    Ok(())
}
