//! Neighborhood sizes, the best `d⁺⁺/d⁺` ratio and the cell sizes `x_ij`
//! for a few small digraphs.

use seymour::csp::{eval_f, extract_assignment, VARIABLE_NAMES};
use seymour::digraph::OrientedDigraph;
use seymour::field::rat;
use seymour::generators::{cycle, cycle_power, random_tournament};

fn show(name: &str, g: &OrientedDigraph) {
    let (best, ratio) = g.best_seymour_ratio().expect("nonempty");
    println!("{name}: n = {}, arcs = {}, best vertex {best} with ratio {ratio}", g.n(), g.arc_count());
    let w = rat(56, 45);
    match extract_assignment(g, &w) {
        Ok((sel, x)) => {
            let cells: Vec<String> = VARIABLE_NAMES
                .iter()
                .zip(x.to_array())
                .filter(|(_, v)| *v != rat(0, 1))
                .map(|(n, v)| format!("{n}={v}"))
                .collect();
            println!("  u = {}, v = {}: {}", sel.u, sel.v, cells.join(" "));
            println!("  F at w = 56/45: {}", eval_f(&x, &w));
        }
        Err(e) => println!("  no selection: {e}"),
    }
}

fn main() {
    show("C5", &cycle(5).unwrap());
    show("C7^2", &cycle_power(7, 2).unwrap());
    show("tournament(12, seed 3)", &random_tournament(12, 3).unwrap());

    // Arcs can be given directly; a digon or loop is rejected.
    let g = OrientedDigraph::from_arcs(4, [(0, 1), (1, 2), (2, 0), (0, 3), (3, 2)]).unwrap();
    show("hand-built", &g);
    assert!(OrientedDigraph::from_arcs(2, [(0, 1), (1, 0)]).is_err());
}
