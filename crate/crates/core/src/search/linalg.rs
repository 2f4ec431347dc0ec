//! Exact Gaussian elimination for the tiny systems of face enumeration.

use crate::field::Scalar;

/// Solution set `{t0 + Σ s_k·basis_k}` of `A·t = b` over `n` unknowns, or
/// `None` if inconsistent.
pub(crate) fn solve_affine<S: Scalar>(
    a: &[Vec<S>],
    b: &[S],
    n: usize,
    like: &S,
) -> Option<(Vec<S>, Vec<Vec<S>>)> {
    let zero = like.zero_like();
    let mut rows: Vec<Vec<S>> = a
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut r = r.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero_value()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = like.one_like().try_div(&rows[r][c]).expect("nonzero pivot");
        for v in rows[r].iter_mut() {
            *v = v.clone() * inv.clone();
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero_value() {
                let f = rows[i][c].clone();
                for j in 0..=n {
                    rows[i][j] = rows[i][j].clone() - f.clone() * rows[r][j].clone();
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if rows[r..].iter().any(|row| !row[n].is_zero_value()) {
        return None;
    }
    let mut t0 = vec![zero.clone(); n];
    for (i, &c) in pivots.iter().enumerate() {
        t0[c] = rows[i][n].clone();
    }
    let basis = (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![zero.clone(); n];
            v[free] = like.one_like();
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = -rows[i][free].clone();
            }
            v
        })
        .collect();
    Some((t0, basis))
}

/// Unique solution of a square system, `None` if singular.
pub(crate) fn solve_unique<S: Scalar>(a: &[Vec<S>], b: &[S], like: &S) -> Option<Vec<S>> {
    let (x, basis) = solve_affine(a, b, b.len(), like)?;
    basis.is_empty().then_some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat, Rational};

    fn m(v: &[&[i64]]) -> Vec<Vec<Rational>> {
        v.iter().map(|r| r.iter().map(|&x| rat(x, 1)).collect()).collect()
    }

    #[test]
    fn unique_and_underdetermined() {
        let z = rat(0, 1);
        let x = solve_unique(&m(&[&[2, 1], &[1, 3]]), &[rat(3, 1), rat(5, 1)], &z).unwrap();
        assert_eq!(x, vec![rat(4, 5), rat(7, 5)]);
        assert!(solve_unique(&m(&[&[1, 2], &[2, 4]]), &[rat(1, 1), rat(2, 1)], &z).is_none());
        assert!(solve_affine(&m(&[&[1, 2], &[2, 4]]), &[rat(1, 1), rat(3, 1)], 2, &z).is_none());
        let (t0, basis) = solve_affine(&m(&[&[1, 1, 1]]), &[rat(1, 1)], 3, &z).unwrap();
        assert_eq!(basis.len(), 2);
        for v in &basis {
            assert_eq!(v.iter().cloned().sum::<Rational>(), z);
        }
        assert_eq!(t0.iter().cloned().sum::<Rational>(), rat(1, 1));
        let (_, basis) = solve_affine(&[], &[], 3, &z).unwrap();
        assert_eq!(basis.len(), 3);
    }
}
