use super::{eval_f, AssignmentX, CspError};
use crate::digraph::{GraphError, OrientedDigraph, PartitionCounts};
use crate::field::{Rational, Sign};

/// The two selected vertices: `u` minimizes out-degree, `v ∈ N⁺(u)`
/// minimizes `w·d⁺_{X1}(v) + d⁺_{X2}(v)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Selection {
    pub u: usize,
    pub v: usize,
    pub w: Rational,
    pub counts: PartitionCounts,
}

/// Selects `u`, `v` and reads off the cell sizes `x_ij = |X_ij|`.
pub fn extract_assignment(
    g: &OrientedDigraph,
    w: &Rational,
) -> Result<(Selection, AssignmentX<Rational>), CspError> {
    let u = g.degree_minimizer()?;
    if g.out_degree(u) == 0 {
        return Err(GraphError::ZeroOutDegree(u).into());
    }
    let v = g.weighted_minimizer(u, w)?;
    let counts = g.partition_counts(u, v)?;
    let x = AssignmentX::from_counts(&counts);
    Ok((
        Selection {
            u,
            v,
            w: w.clone(),
            counts,
        },
        x,
    ))
}

/// The counting bound behind (7): whenever `x11 > 0`, `F > 0`.
///
/// `Ok(None)` when `x11 = 0`, where the bound says nothing.
pub fn counting_bound_holds(g: &OrientedDigraph, w: &Rational) -> Result<Option<bool>, CspError> {
    let (_, x) = extract_assignment(g, w)?;
    if x.x11 == Rational::from_integer(0.into()) {
        return Ok(None);
    }
    Ok(Some(Sign::of_rational(&eval_f(&x, w)) == Sign::Positive))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;
    use crate::generators::{blowup_cycle, cycle, random_oriented, random_tournament};
    use proptest::prelude::*;

    fn ints(x: &AssignmentX<Rational>) -> Vec<i64> {
        x.to_array()
            .iter()
            .map(|r| r.to_integer().try_into().unwrap())
            .collect()
    }

    #[test]
    fn c5() {
        let (s, x) = extract_assignment(&cycle(5).unwrap(), &rat(1, 1)).unwrap();
        assert_eq!((s.u, s.v), (0, 1));
        assert_eq!(ints(&x), [0, 0, 0, 1, 1, 0, 0, 0, 1, 0, 0]);
        assert_eq!(eval_f(&x, &rat(1, 1)), rat(1, 2));
    }

    #[test]
    fn c3() {
        let (s, x) = extract_assignment(&cycle(3).unwrap(), &rat(1, 1)).unwrap();
        assert_eq!((s.u, s.v), (0, 1));
        assert_eq!(ints(&x), [0, 0, 1, 0, 1, 0, 0, 0, 1, 0, 0]);
    }

    #[test]
    fn blowup_against_brute_force() {
        // vertex (i, a) is i·2 + a; arcs (i, a) → (i+1, b) for all a, b
        let g = blowup_cycle(3, 2).unwrap();
        let (s, x) = extract_assignment(&g, &rat(1, 1)).unwrap();
        assert_eq!((s.u, s.v), (0, 2));
        // N⁺(u) = {2, 3}, N⁺⁺(u) = {4, 5}, N⁺⁺⁺(u) = {0, 1}; from v = 2 the
        // distances are 2 → 3, 3 → 3, 4 → 1, 5 → 1, 0 → 2, 1 → 2.
        assert_eq!(ints(&x), [0, 0, 2, 0, 2, 0, 0, 0, 2, 0, 0]);
        let nb = g.neighborhoods(s.u).unwrap();
        assert_eq!(s.counts.row_sum(1), nb.first.len());
        assert_eq!(s.counts.row_sum(2), nb.second.len());
        assert_eq!(s.counts.row_sum(3), nb.third.len());
    }

    #[test]
    fn zero_out_degree_is_rejected() {
        let g = OrientedDigraph::from_arcs(3, [(0, 1), (1, 2)]).unwrap();
        assert!(matches!(
            extract_assignment(&g, &rat(1, 1)),
            Err(CspError::Graph(GraphError::ZeroOutDegree(2)))
        ));
    }

    #[test]
    fn counting_bound_on_random_digraphs() {
        let mut checked = 0;
        for seed in 0..400u64 {
            let g = if seed % 2 == 0 {
                random_oriented(10, 0.9, seed).unwrap()
            } else {
                random_tournament(9, seed).unwrap()
            };
            if g.min_out_degree() == Some(0) {
                continue;
            }
            for w in [rat(1, 1), rat(56, 45), rat(3, 2), rat(2, 1)] {
                if let Some(ok) = counting_bound_holds(&g, &w).unwrap() {
                    assert!(ok, "seed {seed}, w = {w}");
                    checked += 1;
                }
            }
        }
        assert!(checked >= 200, "only {checked} applicable cases");
    }

    proptest! {
        #[test]
        fn degree_identities(seed in any::<u64>(), n in 4usize..12, w in (45i64..=90).prop_map(|k| rat(k, 45))) {
            let g = random_tournament(n, seed).unwrap();
            prop_assume!(g.min_out_degree() != Some(0));
            let (s, x) = extract_assignment(&g, &w).unwrap();
            let su = g.stats(s.u).unwrap();
            let sv = g.stats(s.v).unwrap();
            let r = |k: usize| Rational::from_integer(k.into());
            prop_assert_eq!(x.first_row(), r(su.d1));
            prop_assert_eq!(x.second_row(), r(su.d2));
            prop_assert_eq!(x.third_row(), r(su.d3));
            prop_assert_eq!(x.x11.clone() + x.x21.clone(), r(sv.d1));
            prop_assert_eq!(x.x12.clone() + x.x22.clone() + x.x32.clone(), r(sv.d2));
            if x.x11 > rat(0, 1) {
                prop_assert!(eval_f(&x, &w) > rat(0, 1));
            }
        }
    }
}
