//! Assumption certification on random point clouds.
//!
//! Samples points uniformly from a centered box and checks the
//! structural inequalities an instance promises: the PL condition, the
//! quadratic-growth and error-bound consequences, Lipschitz joint
//! gradients, and envelope smoothness. Margins are normalized, so a
//! check passes when `lhs - rhs >= -tol * max(1, |lhs|, |rhs|)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::MinimaxProblem;
use crate::error::{Error, Result};
use crate::{Scalar, Vector};

/// Relative slack granted to every certified inequality.
pub const CERTIFY_TOLERANCE: f64 = 1e-9;

/// Outcome of one property over all sampled points.
#[derive(Debug, Clone)]
pub struct PropertyCheck<T: Scalar> {
    pub name: &'static str,
    pub passed: bool,
    /// Smallest normalized margin seen; negative means violated.
    pub worst_margin: T,
    pub points: usize,
}

impl<T: Scalar> PropertyCheck<T> {
    fn new(name: &'static str) -> Self {
        PropertyCheck { name, passed: true, worst_margin: T::max_value().unwrap(), points: 0 }
    }

    fn observe(&mut self, lhs: T, rhs: T) {
        let scale = T::one().max(lhs.abs()).max(rhs.abs());
        let margin = (lhs - rhs) / scale;
        self.worst_margin = self.worst_margin.min(margin);
        self.passed = self.passed && margin >= -T::c(CERTIFY_TOLERANCE);
        self.points += 1;
    }
}

/// Certification outcome over a sampled box.
#[derive(Debug, Clone)]
pub struct CertificationReport<T: Scalar> {
    pub n_points: usize,
    pub radius: T,
    /// `|grad_y f|^2 >= 2 mu (F - f)`.
    pub pl: PropertyCheck<T>,
    /// `F - f >= (mu/2) dist(y, argmax)^2`.
    pub quadratic_growth: PropertyCheck<T>,
    /// `|grad_y f| >= mu dist(y, argmax)`.
    pub error_bound: PropertyCheck<T>,
    /// `|grad f(z1) - grad f(z2)| <= L_f |z1 - z2|`.
    pub gradient_lipschitz: PropertyCheck<T>,
    /// `|grad F(x1) - grad F(x2)| <= L |x1 - x2|`.
    pub envelope_smoothness: PropertyCheck<T>,
}

impl<T: Scalar> CertificationReport<T> {
    pub fn all_passed(&self) -> bool {
        self.pl.passed
            && self.quadratic_growth.passed
            && self.error_bound.passed
            && self.gradient_lipschitz.passed
            && self.envelope_smoothness.passed
    }

    pub fn checks(&self) -> [&PropertyCheck<T>; 5] {
        [
            &self.pl,
            &self.quadratic_growth,
            &self.error_bound,
            &self.gradient_lipschitz,
            &self.envelope_smoothness,
        ]
    }
}

fn uniform_point<T: Scalar, R: Rng>(rng: &mut R, dim: usize, radius: T) -> Vector<T> {
    Vector::from_iterator(dim, (0..dim).map(|_| radius * T::c(rng.gen_range(-1.0..1.0))))
}

/// Checks the instance's assumptions at `n_points` uniform samples from
/// the box `[-radius, radius]^(dim_x + dim_y)`.
pub fn certify_assumptions<T: Scalar>(
    problem: &MinimaxProblem<T>,
    n_points: usize,
    radius: T,
    seed: u64,
) -> Result<CertificationReport<T>> {
    if n_points == 0 {
        return Err(Error::InvalidArgument("n_points must be at least 1".into()));
    }
    if radius <= T::zero() {
        return Err(Error::InvalidArgument("radius must be positive".into()));
    }
    let consts = problem.constants()?;
    let mu = consts.mu;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut pl = PropertyCheck::new("pl");
    let mut qg = PropertyCheck::new("quadratic-growth");
    let mut eb = PropertyCheck::new("error-bound");
    let mut lip = PropertyCheck::new("gradient-lipschitz");
    let mut env = PropertyCheck::new("envelope-smoothness");

    for _ in 0..n_points {
        let x = uniform_point(&mut rng, problem.dim_x(), radius);
        let y = uniform_point(&mut rng, problem.dim_y(), radius);
        let x2 = uniform_point(&mut rng, problem.dim_x(), radius);
        let y2 = uniform_point(&mut rng, problem.dim_y(), radius);

        let (gx, gy) = problem.exact_gradient(&x, &y)?;
        let gap = problem.gap(&x, &y)?;
        let dist = problem.argmax_distance(&x, &y)?;

        pl.observe(gy.norm_squared(), T::c(2.0) * mu * gap);
        qg.observe(gap, mu / T::c(2.0) * dist * dist);
        eb.observe(gy.norm(), mu * dist);

        let (hx, hy) = problem.exact_gradient(&x2, &y2)?;
        let dg = ((gx - hx).norm_squared() + (gy - hy).norm_squared()).sqrt();
        let dz = ((&x - &x2).norm_squared() + (&y - &y2).norm_squared()).sqrt();
        lip.observe(consts.l_f * dz, dg);

        let df = (problem.envelope_gradient(&x)? - problem.envelope_gradient(&x2)?).norm();
        env.observe(consts.l_envelope * (&x - &x2).norm(), df);
    }

    Ok(CertificationReport {
        n_points,
        radius,
        pl,
        quadratic_growth: qg,
        error_bound: eb,
        gradient_lipschitz: lip,
        envelope_smoothness: env,
    })
}
