use std::cmp::Ordering;

use super::{
    check_csp_a, check_csp_b, eval_f, AssignmentX, ConstraintReport, CspError, CspParams,
};
use crate::field::{min_scalar, Scalar, Sign};

/// One step of the adjustment with the F values around it.
#[derive(Debug, Clone, PartialEq)]
pub struct AdjustStep<S> {
    pub step: &'static str,
    /// Amounts moved; step 2 moves two (into `x23` and `x33`).
    pub deltas: Vec<S>,
    pub f_before: S,
    pub f_after: S,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AdjustOutcome<S> {
    pub x: AssignmentX<S>,
    pub trace: Vec<AdjustStep<S>>,
}

fn fail(step: &'static str, detail: impl Into<String>) -> CspError {
    CspError::Invariant {
        step,
        detail: detail.into(),
    }
}

fn require_groups<S>(
    step: &'static str,
    report: &ConstraintReport<S>,
    labels: &[u8],
) -> Result<(), CspError> {
    for &l in labels {
        if !report.group_holds(l) {
            return Err(fail(step, format!("{} constraint ({l}) violated", report.system)));
        }
    }
    Ok(())
}

fn require_gain<S: Scalar>(step: &'static str, before: &S, after: &S, gain: &S) -> Result<(), CspError> {
    if !(after.clone() - before.clone() - gain.clone()).is_zero_value() {
        return Err(fail(step, "F changed by an amount other than the predicted gain"));
    }
    if gain.sign() == Sign::Negative {
        return Err(fail(step, "F decreased"));
    }
    Ok(())
}

/// Turns a CSP-A solution into a CSP-B solution, verifying each step.
///
/// Requires `μ ≥ 0` and `1 < w < 1 + μ²`. Every step's change in F is
/// predicted in closed form and checked exactly, so this is meant for exact
/// scalars; with `f64` rounding can trip the checks.
pub fn adjust<S: Scalar>(x: &AssignmentX<S>, p: &CspParams<S>) -> Result<AdjustOutcome<S>, CspError> {
    let mu = &p.mu;
    let w = &p.w;
    let one = w.one_like();
    let mu2 = mu.clone() * mu.clone();
    if mu.sign() == Sign::Negative {
        return Err(CspError::Precondition("mu must be nonnegative".into()));
    }
    if w.cmp_to(&one) != Ordering::Greater || w.cmp_to(&(one.clone() + mu2.clone())) != Ordering::Less {
        return Err(CspError::Precondition("w must lie in (1, 1 + mu^2)".into()));
    }
    let start = check_csp_a(x, p);
    if !start.satisfied() {
        return Err(CspError::Precondition(format!(
            "input violates CSP-A constraints {:?}",
            start.failed_labels()
        )));
    }

    let mut x = x.clone();
    let mut trace = Vec::with_capacity(5);
    let zero = w.zero_like();

    // 1: fold x14 into x13, drop x24 and x34.
    let f0 = eval_f(&x, w);
    let d = x.x14.clone();
    let gain = (x.x12.clone() + x.x22.clone()) * d.clone();
    x.x13 = x.x13.clone() + d.clone();
    x.x14 = zero.clone();
    x.x24 = zero.clone();
    x.x34 = zero.clone();
    let f1 = eval_f(&x, w);
    require_gain("1", &f0, &f1, &gain)?;
    require_groups("1", &check_csp_a(&x, p), &[1, 2, 3, 4, 5, 6, 7])?;
    trace.push(AdjustStep { step: "1", deltas: vec![d], f_before: f0, f_after: f1.clone() });

    // 2: fill rows two and three up to equality.
    let row1 = x.first_row();
    let d23 = mu.clone() * row1.clone() - x.second_row();
    let d33 = mu2 * row1 - x.third_row();
    let gain = d23.clone() * (x.x22.clone() + x.x12.clone()) + d33.clone() * x.x22.clone();
    x.x23 = x.x23.clone() + d23.clone();
    x.x33 = x.x33.clone() + d33.clone();
    let f2 = eval_f(&x, w);
    require_gain("2", &f1, &f2, &gain)?;
    require_groups("2", &check_csp_b(&x, p), &[1, 2])?;
    require_groups("2", &check_csp_a(&x, p), &[3, 4, 5, 6, 7])?;
    trace.push(AdjustStep { step: "2", deltas: vec![d23, d33], f_before: f1, f_after: f2.clone() });

    // 3: move x23 into x13 and x22 at the expense of x12; F is linear here.
    let d = x.x23.clone();
    let slope = x.x32.clone() + x.x33.clone() - (w.clone() - one.clone()) * x.x11.clone();
    if slope.sign() != Sign::Positive {
        return Err(fail("3", "directional derivative of F is not positive"));
    }
    x.x13 = x.x13.clone() + d.clone();
    x.x22 = x.x22.clone() + d.clone();
    x.x12 = x.x12.clone() - d.clone();
    x.x23 = zero.clone();
    let f3 = eval_f(&x, w);
    require_gain("3", &f2, &f3, &(slope * d.clone()))?;
    require_groups("3", &check_csp_b(&x, p), &[1, 2, 5])?;
    require_groups("3", &check_csp_a(&x, p), &[3, 4, 6, 7])?;
    trace.push(AdjustStep { step: "3", deltas: vec![d], f_before: f2, f_after: f3.clone() });

    // 4a: shift x21 into x22 until (3) is tight or (4) is.
    let g = x.v_gap(mu);
    let room = x.x21.clone() - x.x12.clone() - x.x13.clone() - x.x14.clone();
    let d = min_scalar(g.try_div(&(one.clone() + mu.clone()))?, room);
    let slope = x.x11.clone() + x.x13.clone() + x.x23.clone() + x.x33.clone();
    x.x21 = x.x21.clone() - d.clone();
    x.x22 = x.x22.clone() + d.clone();
    let f4 = eval_f(&x, w);
    require_gain("4a", &f3, &f4, &(slope * d.clone()))?;
    require_groups("4a", &check_csp_b(&x, p), &[1, 2, 5])?;
    require_groups("4a", &check_csp_a(&x, p), &[4, 6, 7])?;
    if x.v_gap(mu).sign() == Sign::Negative {
        return Err(fail("4a", "overshot constraint (3)"));
    }
    trace.push(AdjustStep { step: "4a", deltas: vec![d], f_before: f3, f_after: f4.clone() });

    // 4b: close any remaining gap by moving x13 into x12.
    let d = x.v_gap(mu);
    if d.cmp_to(&x.x13) == Ordering::Greater {
        return Err(fail("4b", "remaining gap exceeds x13"));
    }
    let a = (w.clone() - one) * x.x11.clone() + x.x21.clone() - x.x12.clone() - x.x14.clone()
        + x.x23.clone();
    let half = w.embed(&crate::field::rat(1, 2));
    let gain = a * d.clone() - half * d.clone() * d.clone();
    x.x12 = x.x12.clone() + d.clone();
    x.x13 = x.x13.clone() - d.clone();
    let f5 = eval_f(&x, w);
    require_gain("4b", &f4, &f5, &gain)?;
    let end = check_csp_b(&x, p);
    if !end.satisfied() {
        return Err(fail("4b", format!("result violates CSP-B constraints {:?}", end.failed_labels())));
    }
    trace.push(AdjustStep { step: "4b", deltas: vec![d], f_before: f4, f_after: f5 });

    Ok(AdjustOutcome { x, trace })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat, Rational};
    use proptest::prelude::*;

    fn params() -> CspParams<Rational> {
        CspParams { mu: rat(3, 4), w: rat(5, 4) }
    }

    fn assignment(v: [(i64, i64); 11]) -> AssignmentX<Rational> {
        AssignmentX::from_array(v.map(|(n, d)| rat(n, d)))
    }

    // μ = 3/4, w = 5/4; F = 477/20000 and every strict slack is positive.
    fn strict_point() -> AssignmentX<Rational> {
        assignment([(1, 1), (0, 1), (0, 1), (1, 100), (1, 100), (18, 25), (1, 200), (0, 1), (1, 100), (27, 50), (1, 200)])
    }

    #[test]
    fn hand_point_is_csp_a() {
        let r = check_csp_a(&strict_point(), &params());
        assert!(r.satisfied(), "{:?}", r.failed_labels());
    }

    #[test]
    fn adjusts_hand_point() {
        let out = adjust(&strict_point(), &params()).unwrap();
        assert!(check_csp_b(&out.x, &params()).satisfied());
        let steps: Vec<_> = out.trace.iter().map(|s| s.step).collect();
        assert_eq!(steps, ["1", "2", "3", "4a", "4b"]);
        for s in &out.trace {
            assert!(s.f_after >= s.f_before);
        }
        assert!(eval_f(&out.x, &rat(5, 4)) > rat(0, 1));
    }

    #[test]
    fn rejects_bad_parameters() {
        let mut p = params();
        p.w = rat(2, 1);
        assert!(matches!(adjust(&strict_point(), &p), Err(CspError::Precondition(_))));
        p.w = rat(1, 1);
        assert!(matches!(adjust(&strict_point(), &p), Err(CspError::Precondition(_))));
    }

    #[test]
    fn rejects_infeasible_input() {
        let x = AssignmentX::zeros(&rat(0, 1));
        assert!(matches!(adjust(&x, &params()), Err(CspError::Precondition(_))));
    }

    fn small() -> impl Strategy<Value = Rational> {
        (0i64..=5).prop_map(|n| rat(n, 100))
    }

    // Points near the face where F is largest: x11 = 1, most of row two in
    // x22 and of row three in x33, everything else small.
    fn near_feasible(mu: Rational) -> impl Strategy<Value = AssignmentX<Rational>> {
        (prop::collection::vec(small(), 10), -2i64..=2).prop_map(move |(v, neg)| {
            let x13 = v[0].clone();
            let x12 = rat(neg, 100).max(-x13.clone());
            let x14 = v[1].clone();
            let x21 = x12.clone() + x13.clone() + x14.clone() + v[2].clone();
            let (x23, x24, x32, x34) = (v[3].clone(), v[4].clone(), v[5].clone(), v[6].clone());
            let row1 = rat(1, 1) + x12.clone() + x13.clone() + x14.clone();
            let x22 = mu.clone() * row1.clone() - x21.clone() - x23.clone() - x24.clone() - v[7].clone() - rat(1, 1000);
            let x33 = mu.clone() * mu.clone() * row1 - x32.clone() - x34.clone() - v[8].clone() - rat(1, 1000);
            AssignmentX { x11: rat(1, 1), x12, x13, x14, x21, x22, x23, x24, x32, x33, x34 }
        })
    }

    fn sample() -> impl Strategy<Value = (CspParams<Rational>, AssignmentX<Rational>)> {
        ((60i64..=95).prop_map(|n| rat(n, 100)), (1i64..=9).prop_map(|n| rat(n, 10)))
            .prop_flat_map(|(mu, wf)| {
                let w = rat(1, 1) + wf * mu.clone() * mu.clone();
                (Just(CspParams { mu: mu.clone(), w }), near_feasible(mu))
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig { cases: 300, max_global_rejects: 200_000, ..ProptestConfig::default() })]
        #[test]
        fn adjust_preserves_invariants((p, x) in sample()) {
            prop_assume!(check_csp_a(&x, &p).satisfied());
            let out = adjust(&x, &p).unwrap();
            prop_assert!(check_csp_b(&out.x, &p).satisfied());
            let mut prev = eval_f(&x, &p.w);
            for s in &out.trace {
                prop_assert_eq!(&s.f_before, &prev);
                prop_assert!(s.f_after >= s.f_before);
                prev = s.f_after.clone();
            }
        }
    }
}
