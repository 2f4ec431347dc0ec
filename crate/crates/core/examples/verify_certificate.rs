//! Checks the unsatisfiability certificate in Q(γ) and prints each check.
//!
//! ```text
//! cargo run --example verify_certificate
//! ```

use seymour::certificate::{verify_all, verify_with, Mutation};

fn main() {
    let report = verify_all();
    for c in &report.checks {
        let mark = if c.passed { "ok  " } else { "FAIL" };
        println!("{mark} {}", c.name);
    }
    println!();
    for (name, value) in &report.approximations {
        println!("  {name:<32} {value}");
    }
    println!("\n{}", report.conclusion);

    // A wrong constant anywhere should break the certificate.
    for m in Mutation::standard_set() {
        let r = verify_with(Some(&m));
        let first = r.failures().next().map(|c| c.name.as_str()).unwrap_or("-");
        println!("mutation {m}: rejected = {}, first failing check: {first}", !r.passed);
    }
}
