//! Extremal families (powers and blow-ups of directed cycles) and seeded
//! random instances.
//!
//! Random draws use SplitMix64 (state `s ← s + 0x9e3779b97f4a7c15`, output
//! the standard Stafford "Mix13" finalizer of `s`), seeded with the raw
//! 64-bit seed as the initial state. Pairs `{i, j}` with `i < j` are visited
//! in lexicographic order:
//!
//! - `random_oriented`: draw `r`; the pair gets an arc iff
//!   `(r >> 11) · 2⁻⁵³ < p`; if so draw `r'` and orient `i → j` when
//!   `r' >> 63 == 0`, else `j → i`.
//! - `random_tournament`: draw one `r` per pair and orient by `r >> 63` as above.
//!
//! This pins every output to the seed independently of any platform or
//! library float conversion.

use rand_core::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;
use serde::{Deserialize, Serialize};

use crate::digraph::{GraphError, OrientedDigraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Cycle,
    CyclePower,
    BlowupCycle,
    Random,
    Tournament,
}

/// Parameters for [`generate`]. `n` is the cycle length for the cycle
/// families and the vertex count otherwise.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenSpec {
    pub family: Family,
    pub n: usize,
    pub k: usize,
    pub t: usize,
    pub p: f64,
    pub seed: u64,
}

impl GenSpec {
    pub fn new(family: Family, n: usize) -> Self {
        GenSpec {
            family,
            n,
            k: 1,
            t: 1,
            p: 0.5,
            seed: 0,
        }
    }
}

pub fn generate(spec: &GenSpec) -> Result<OrientedDigraph, GraphError> {
    match spec.family {
        Family::Cycle => cycle(spec.n),
        Family::CyclePower => cycle_power(spec.n, spec.k),
        Family::BlowupCycle => blowup_cycle(spec.n, spec.t),
        Family::Random => random_oriented(spec.n, spec.p, spec.seed),
        Family::Tournament => random_tournament(spec.n, spec.seed),
    }
}

pub fn cycle(n: usize) -> Result<OrientedDigraph, GraphError> {
    cycle_power(n, 1)
}

/// Arcs `i → i+1, …, i+k (mod n)`.
pub fn cycle_power(n: usize, k: usize) -> Result<OrientedDigraph, GraphError> {
    if k < 1 || n < 2 * k + 1 {
        return Err(GraphError::InvalidParameter(format!(
            "cycle power needs k >= 1 and n >= 2k + 1 (n = {n}, k = {k})"
        )));
    }
    OrientedDigraph::from_arcs(n, (0..n).flat_map(|i| (1..=k).map(move |s| (i, (i + s) % n))))
}

/// Each vertex of the directed `len`-cycle replaced by an independent set
/// of size `t`; vertex `(i, a)` has index `i·t + a`.
pub fn blowup_cycle(len: usize, t: usize) -> Result<OrientedDigraph, GraphError> {
    if len < 3 || t < 1 {
        return Err(GraphError::InvalidParameter(format!(
            "blow-up needs len >= 3 and t >= 1 (len = {len}, t = {t})"
        )));
    }
    let arcs = (0..len).flat_map(|i| {
        let j = (i + 1) % len;
        (0..t).flat_map(move |a| (0..t).map(move |b| (i * t + a, j * t + b)))
    });
    OrientedDigraph::from_arcs(len * t, arcs)
}

fn unit_interval(r: u64) -> f64 {
    (r >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

pub fn random_oriented(n: usize, p: f64, seed: u64) -> Result<OrientedDigraph, GraphError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(GraphError::InvalidParameter(format!(
            "probability must lie in [0, 1], got {p}"
        )));
    }
    let mut rng = SplitMix64::seed_from_u64(seed);
    let mut g = OrientedDigraph::empty(n);
    for i in 0..n {
        for j in i + 1..n {
            if unit_interval(rng.next_u64()) < p {
                let (a, b) = if rng.next_u64() >> 63 == 0 { (i, j) } else { (j, i) };
                g.add_arc(a, b)?;
            }
        }
    }
    Ok(g)
}

pub fn random_tournament(n: usize, seed: u64) -> Result<OrientedDigraph, GraphError> {
    let mut rng = SplitMix64::seed_from_u64(seed);
    let mut g = OrientedDigraph::empty(n);
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = if rng.next_u64() >> 63 == 0 { (i, j) } else { (j, i) };
            g.add_arc(a, b)?;
        }
    }
    Ok(g)
}
