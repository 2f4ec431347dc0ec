pub mod digraph;
pub mod field;
pub mod generators;
pub mod quadratic;
pub mod csp;
pub mod certificate;
pub mod search;
pub mod cli;
