use super::{check_csp_b, AssignmentX, CspError, CspParams};
use crate::field::{FieldElement, FieldError, NumberField, Ring};
use crate::quadratic::QuadExpr;

#[derive(Debug, Clone, PartialEq)]
pub struct AssignmentY<S> {
    pub y1: S,
    pub y2: S,
    pub y3: S,
    pub y4: S,
}

impl<S: Clone> AssignmentY<S> {
    pub fn to_array(&self) -> [S; 4] {
        [self.y1.clone(), self.y2.clone(), self.y3.clone(), self.y4.clone()]
    }

    pub fn from_array([y1, y2, y3, y4]: [S; 4]) -> Self {
        AssignmentY { y1, y2, y3, y4 }
    }
}

/// The change of variables that solves the CSP-B equalities at `μ = γ`:
///
/// ```text
/// y1 = x32/(γθ) − x12/γ    y2 = x22/γ − x33/γ²    y3 = x32/(γθ)    y4 = x33/γ²
/// ```
#[derive(Debug, Clone)]
pub struct YSubstitution {
    gamma: FieldElement,
    theta: FieldElement,
    gamma_inv: FieldElement,
    gamma_theta_inv: FieldElement,
}

impl YSubstitution {
    pub fn new(gamma: FieldElement, theta: FieldElement) -> Result<Self, FieldError> {
        let gamma_inv = gamma.inverse()?;
        let gamma_theta_inv = (gamma.clone() * theta.clone()).inverse()?;
        Ok(YSubstitution {
            gamma,
            theta,
            gamma_inv,
            gamma_theta_inv,
        })
    }

    /// `γ` the root of `8x⁵+4x⁴−12x³−7x²+2x+4` in `[0,1]`, `θ = 2+2γ−4γ³`.
    pub fn standard() -> Self {
        let k = NumberField::gamma();
        let g = k.generator();
        let theta = k.from_int(2) + k.from_int(2) * g.clone() - k.from_int(4) * g.pow(3);
        Self::new(g, theta).expect("γ and θ are nonzero")
    }

    pub fn gamma(&self) -> &FieldElement {
        &self.gamma
    }

    pub fn theta(&self) -> &FieldElement {
        &self.theta
    }

    /// Parameters `μ = γ`, `w = γ² + 2γ³` under which the substitution applies.
    pub fn params(&self) -> CspParams<FieldElement> {
        let g = &self.gamma;
        CspParams {
            mu: g.clone(),
            w: g.pow(2) + g.embed_int(2) * g.pow(3),
        }
    }

    fn image<R: Ring>(&self, y: &[R; 4], lift: impl Fn(&FieldElement) -> R) -> AssignmentX<R> {
        let [y1, y2, y3, y4] = y.clone();
        let g = lift(&self.gamma);
        let t = lift(&self.theta);
        let one = g.one_like();
        let zero = g.zero_like();
        let c13 = lift(&(self.gamma_inv.clone() * self.theta.clone())) - g.clone() - one.clone();
        AssignmentX {
            x11: (one.clone() + g.clone()) * y2.clone() + y3.clone() + y4.clone() - y1.clone(),
            x12: g.clone() * (y3.clone() - y1.clone()),
            x13: (one + g.clone()) * (y1 - y2.clone()) + c13 * y3.clone(),
            x14: zero.clone(),
            x21: t.clone() * y3.clone() - g.clone() * y2.clone(),
            x22: g.clone() * (y2 + y4.clone()),
            x23: zero.clone(),
            x24: zero.clone(),
            x32: g.clone() * t * y3,
            x33: g.clone() * g * y4,
            x34: zero,
        }
    }

    /// Each `x_ij` as a linear form in `y1..y4`.
    pub fn x_forms(&self) -> AssignmentX<QuadExpr<FieldElement, 4>> {
        let zero = self.gamma.zero_like();
        let y = std::array::from_fn(|i| QuadExpr::var(i, &zero));
        self.image(&y, |c| QuadExpr::constant(c.clone()))
    }

    pub fn from_y(&self, y: &AssignmentY<FieldElement>) -> AssignmentX<FieldElement> {
        self.image(&y.to_array(), Clone::clone)
    }

    /// Requires (1=), (2=), (3=) and (5=) at `μ = γ`.
    pub fn to_y(&self, x: &AssignmentX<FieldElement>) -> Result<AssignmentY<FieldElement>, CspError> {
        let report = check_csp_b(x, &self.params());
        if let Some(r) = report
            .records
            .iter()
            .find(|r| matches!(r.label, 1 | 2 | 3 | 5) && !r.satisfied)
        {
            return Err(CspError::Precondition(format!("equality {} does not hold", r.name)));
        }
        let g2_inv = self.gamma_inv.clone() * self.gamma_inv.clone();
        let y3 = x.x32.clone() * self.gamma_theta_inv.clone();
        let y4 = x.x33.clone() * g2_inv.clone();
        Ok(AssignmentY {
            y1: y3.clone() - x.x12.clone() * self.gamma_inv.clone(),
            y2: x.x22.clone() * self.gamma_inv.clone() - x.x33.clone() * g2_inv,
            y3,
            y4,
        })
    }
}
