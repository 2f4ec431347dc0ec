//! Moves a CSP-A point to a CSP-B point without decreasing F, showing
//! each step of the adjustment.

use seymour::csp::{adjust, check_csp_a, check_csp_b, eval_f, AssignmentX, CspParams};
use seymour::field::{rat, Rational};

fn main() {
    let p = CspParams { mu: rat(3, 4), w: rat(5, 4) };
    let x = AssignmentX::<Rational>::from_array([
        rat(1, 1),
        rat(0, 1),
        rat(0, 1),
        rat(1, 100),
        rat(1, 100),
        rat(18, 25),
        rat(1, 200),
        rat(0, 1),
        rat(1, 100),
        rat(27, 50),
        rat(1, 200),
    ]);
    println!("F = {}, CSP-A: {}", eval_f(&x, &p.w), check_csp_a(&x, &p).satisfied());
    println!("CSP-B fails on constraints {:?}", check_csp_b(&x, &p).failed_labels());

    let out = adjust(&x, &p).expect("adjustment succeeds on a CSP-A point");
    for s in &out.trace {
        let deltas: Vec<String> = s.deltas.iter().map(|d| d.to_string()).collect();
        println!("step {:<2}  moved [{}]  F: {} -> {}", s.step, deltas.join(", "), s.f_before, s.f_after);
    }
    println!("CSP-B: {}", check_csp_b(&out.x, &p).satisfied());
}
