//! Locates the μ where max F over the CSP-B region turns positive, scans
//! the weight w, and shows the exact zero maximum at μ = γ.
//!
//! ```text
//! cargo run --release --example threshold_scan
//! ```

use seymour::certificate::build_constants;
use seymour::field::rat;
use seymour::search::{find_witness, maximize_exact, scan_w, threshold, FloatConfig, Oracle};

fn main() {
    let (lo, hi, tol) = (rat(65, 100), rat(80, 100), rat(1, 1000));
    let t = threshold(&rat(56, 45), &lo, &hi, &tol, &Oracle::Exact).unwrap();
    println!("w = 56/45: mu* = {} (~{:.6}) after {} steps", t.mu_star, f64_of(&t.mu_star), t.steps);

    let grid: Vec<_> = (21..=29).map(|i| rat(i, 20)).collect();
    let scan = scan_w(&grid, &lo, &hi, &tol, &Oracle::Float(FloatConfig::default())).unwrap();
    for r in &scan.thresholds {
        println!("  w = {:<6} mu* ~ {:.4}", r.w.to_string(), f64_of(&r.mu_star));
    }
    println!("best w on the grid: {}", scan.best().w);

    // Above the threshold the maximum is positive and a witness exists.
    let wit = find_witness(&rat(73, 100), &rat(56, 45)).unwrap().expect("positive max");
    println!("witness at mu = 73/100: F = {}", wit.max_value);

    // At mu = gamma, w = gamma^2 + 2 gamma^3 the maximum is exactly zero.
    let k = build_constants().unwrap();
    let r = maximize_exact(&k.gamma, &k.w).unwrap();
    println!("max F at gamma: {:?} ({})", r.status, r.max_value.unwrap().approx(12));
}

fn f64_of(r: &seymour::field::Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap()
}
