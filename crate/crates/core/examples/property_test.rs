//! Checks the reduction's claims on seeded random digraphs: a γ-Seymour
//! vertex exists, the degree bound on x21 holds and x11 > 0 forces F > 0.

use seymour::cli::property_test;
use seymour::field::rat;

fn main() {
    for (n, p) in [(20, 0.4), (30, 0.5), (40, 0.8)] {
        let s = property_test(100, n, p, 7, &rat(56, 45)).unwrap();
        println!(
            "n = {n:>2}, p = {p}: {} degree bounds, {} F-positivity cases, {} skipped, {} failures",
            s.degree_bound_checked,
            s.f_positivity_checked,
            s.skipped_zero_out_degree,
            s.failures.len()
        );
        assert!(s.failures.is_empty(), "{:?}", s.failures);
    }
}
