//! The sharp examples (powers and blow-ups of directed cycles) and the
//! seeded random generators.

use seymour::cli::formats::write_edge_list;
use seymour::generators::{blowup_cycle, cycle_power, generate, Family, GenSpec};

fn main() {
    for (n, k) in [(5, 2), (7, 2), (9, 3), (11, 4)] {
        let g = cycle_power(n, k).unwrap();
        println!("cycle_power({n},{k}): best ratio {}", g.best_seymour_ratio().unwrap().1);
    }
    for t in [1, 2, 5] {
        let g = blowup_cycle(3, t).unwrap();
        println!("blowup_cycle(3,{t}): best ratio {}", g.best_seymour_ratio().unwrap().1);
    }

    // Same seed, same digraph, on every platform.
    let spec = GenSpec { p: 0.3, seed: 42, ..GenSpec::new(Family::Random, 8) };
    let g = generate(&spec).unwrap();
    assert_eq!(g, generate(&spec).unwrap());
    print!("\nrandom(8, 0.3, seed 42):\n{}", write_edge_list(&g));
}
