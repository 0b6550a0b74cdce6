//! Synthetic minimax instance families with closed-form structure.
//!
//! Both families expose exact gradients, the best response `y*(x)`, the
//! envelope `F(x) = max_y f(x, y)` and its gradient, and curvature
//! constants, so optimizer trajectories can be judged against ground
//! truth instead of against themselves.
//!
//! * `quadratic-pl`: `f = x'Px/2 + x'Qy - y'Ry/2 + c'x + d'y` with `R`
//!   symmetric positive semidefinite and possibly singular. The dual
//!   problem satisfies the PL condition with `mu` equal to the smallest
//!   nonzero eigenvalue of `R`.
//! * `nonconvex-pl-leastsquares`: `f = sum_i x_i^2/(1+x_i^2)
//!   - |Ay - Bx|^2/2`, nonconvex in `x`, PL in `y` with `mu` the smallest
//!   nonzero eigenvalue of `A'A`.
//!
//! Stochastic gradients add isotropic Gaussian noise with total variance
//! `sigma^2` split evenly over the `dim_x + dim_y` coordinates. One
//! [`GradientSample`] can be applied at several points, which is how the
//! variance-reduced estimator evaluates old and new iterates under the
//! same draw.

mod certify;
mod file;

pub use certify::{certify_assumptions, CertificationReport, PropertyCheck};
pub use file::{load_instance, parse_instance_str};

use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::linalg;
use crate::{Matrix, Scalar, Vector};

/// Instance family tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InstanceKind {
    QuadraticPl,
    NonconvexPlLeastSquares,
}

impl InstanceKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            InstanceKind::QuadraticPl => "quadratic-pl",
            InstanceKind::NonconvexPlLeastSquares => "nonconvex-pl-leastsquares",
        }
    }
}

/// Curvature summary of an instance.
///
/// `l_envelope` is the smoothness constant of the envelope,
/// `L = L_f (1 + kappa/2)` with `kappa = L_f / mu`.
#[derive(Debug, Clone, Copy)]
pub struct ProblemConstants<T: Scalar> {
    pub mu: T,
    pub l_f: T,
    pub kappa: T,
    pub l_envelope: T,
}

/// One shared noise draw for a stochastic gradient evaluation.
///
/// Noise is additive, so evaluating several points under the same sample
/// just reuses these vectors.
#[derive(Debug, Clone)]
pub struct GradientSample<T: Scalar> {
    pub noise_x: Vector<T>,
    pub noise_y: Vector<T>,
}

struct QuadraticPl<T: Scalar> {
    p: Matrix<T>,
    q: Matrix<T>,
    r: Matrix<T>,
    c: Vector<T>,
    d_vec: Vector<T>,
    r_pinv: Matrix<T>,
    // Orthogonal projector onto range(R); kernel components of y are
    // irrelevant to f, so maximizer distances are measured through it.
    r_range_proj: Matrix<T>,
}

struct LeastSquaresPl<T: Scalar> {
    a: Matrix<T>,
    b: Matrix<T>,
    // y*(x) = best_map x, best_map = A^+ B.
    best_map: Matrix<T>,
    // residual_map = (I - A A^+) B; F(x) = sum s(x_i) - |residual_map x|^2 / 2.
    residual_map: Matrix<T>,
    // Projector onto range(A') = orthogonal complement of ker(A).
    row_proj: Matrix<T>,
    a_max_singular: T,
}

enum Inner<T: Scalar> {
    Quadratic(QuadraticPl<T>),
    LeastSquares(LeastSquaresPl<T>),
}

/// A minimax instance `min_x max_y f(x, y)` from one of the supported
/// families, with all derived operators precomputed at construction.
pub struct MinimaxProblem<T: Scalar> {
    dim_x: usize,
    dim_y: usize,
    sigma: T,
    inner: Inner<T>,
    // None when the dual curvature is entirely zero (degenerate).
    constants: Option<ProblemConstants<T>>,
}

fn check_symmetric<T: Scalar>(m: &Matrix<T>, name: &str) -> Result<()> {
    let scale = m.iter().fold(T::one(), |a, &v| a.max(v.abs()));
    let tol = T::c(1e-12) * scale;
    for i in 0..m.nrows() {
        for j in (i + 1)..m.ncols() {
            if (m[(i, j)] - m[(j, i)]).abs() > tol {
                return Err(Error::InvalidArgument(format!("{name} must be symmetric")));
            }
        }
    }
    Ok(())
}

// Saturating nonconvex term s(u) = u^2 / (1 + u^2) and derivatives.
fn sat<T: Scalar>(u: T) -> T {
    u * u / (T::one() + u * u)
}

fn sat_prime<T: Scalar>(u: T) -> T {
    let den = T::one() + u * u;
    T::c(2.0) * u / (den * den)
}

impl<T: Scalar> MinimaxProblem<T> {
    /// Builds a quadratic instance
    /// `f = x'Px/2 + x'Qy - y'Ry/2 + c'x + d'y`.
    ///
    /// Requires `P` and `R` symmetric, `R` positive semidefinite, and the
    /// attainability conditions `range(Q') <= range(R)` and
    /// `d in range(R)`, so the inner maximum exists for every `x`.
    pub fn quadratic_pl(
        p: Matrix<T>,
        q: Matrix<T>,
        r: Matrix<T>,
        c: Vector<T>,
        d_vec: Vector<T>,
        sigma: T,
    ) -> Result<Self> {
        let dim_x = p.nrows();
        let dim_y = r.nrows();
        if p.ncols() != dim_x {
            return Err(Error::DimensionMismatch("P must be square".into()));
        }
        if r.ncols() != dim_y {
            return Err(Error::DimensionMismatch("R must be square".into()));
        }
        if q.nrows() != dim_x || q.ncols() != dim_y {
            return Err(Error::DimensionMismatch(format!(
                "Q must be {dim_x}x{dim_y}, got {}x{}",
                q.nrows(),
                q.ncols()
            )));
        }
        if c.len() != dim_x {
            return Err(Error::DimensionMismatch(format!("c must have length {dim_x}")));
        }
        if d_vec.len() != dim_y {
            return Err(Error::DimensionMismatch(format!("d_vec must have length {dim_y}")));
        }
        if sigma < T::zero() {
            return Err(Error::InvalidArgument("sigma must be nonnegative".into()));
        }
        check_symmetric(&p, "P")?;
        check_symmetric(&r, "R")?;

        let parts = linalg::symmetric_parts(&r);
        let psd_tol = T::c(linalg::RELATIVE_CUTOFF) * parts.max_eigenvalue.abs().max(T::one());
        if parts.min_eigenvalue < -psd_tol {
            return Err(Error::InvalidArgument(format!(
                "R must be positive semidefinite (eigenvalue {:?})",
                parts.min_eigenvalue.to_f64()
            )));
        }

        // Attainability: columns of Q' and d must lie in range(R),
        // otherwise max_y f(x, y) is +infinity for some x.
        let scale_q = q.iter().fold(T::one(), |a, &v| a.max(v.abs()));
        let out_q = (&q.transpose() - &parts.range_proj * q.transpose()).abs().max();
        if out_q > T::c(1e-10) * scale_q {
            return Err(Error::InvalidArgument(
                "range(Q') must be contained in range(R); the inner maximum is unbounded".into(),
            ));
        }
        let scale_d = d_vec.iter().fold(T::one(), |a, &v| a.max(v.abs()));
        let out_d = (&d_vec - &parts.range_proj * &d_vec).abs().max();
        if out_d > T::c(1e-10) * scale_d {
            return Err(Error::InvalidArgument(
                "d_vec must lie in range(R); the inner maximum is unbounded".into(),
            ));
        }

        let constants = parts.min_nonzero.map(|mu| {
            let mut h = Matrix::<T>::zeros(dim_x + dim_y, dim_x + dim_y);
            h.view_mut((0, 0), (dim_x, dim_x)).copy_from(&p);
            h.view_mut((0, dim_x), (dim_x, dim_y)).copy_from(&q);
            h.view_mut((dim_x, 0), (dim_y, dim_x)).copy_from(&q.transpose());
            h.view_mut((dim_x, dim_x), (dim_y, dim_y)).copy_from(&(-&r));
            let l_f = linalg::symmetric_spectral_norm(&h);
            let kappa = l_f / mu;
            ProblemConstants { mu, l_f, kappa, l_envelope: l_f * (T::one() + kappa / T::c(2.0)) }
        });

        Ok(MinimaxProblem {
            dim_x,
            dim_y,
            sigma,
            inner: Inner::Quadratic(QuadraticPl {
                p,
                q,
                r,
                c,
                d_vec,
                r_pinv: parts.pinv,
                r_range_proj: parts.range_proj,
            }),
            constants,
        })
    }

    /// Builds a least-squares instance
    /// `f = sum_i x_i^2/(1+x_i^2) - |Ay - Bx|^2/2`.
    ///
    /// `A` and `B` must have the same number of rows; `A` may be rank
    /// deficient. The smoothness constant uses the analytic bound 2 on
    /// the saturating term's second derivative.
    pub fn least_squares_pl(a: Matrix<T>, b: Matrix<T>, sigma: T) -> Result<Self> {
        if a.nrows() != b.nrows() {
            return Err(Error::DimensionMismatch(format!(
                "A and B must have equal row counts, got {} and {}",
                a.nrows(),
                b.nrows()
            )));
        }
        if sigma < T::zero() {
            return Err(Error::InvalidArgument("sigma must be nonnegative".into()));
        }
        let dim_x = b.ncols();
        let dim_y = a.ncols();
        if dim_x == 0 || dim_y == 0 {
            return Err(Error::InvalidArgument("A and B must be nonempty".into()));
        }

        let parts = linalg::svd_parts(&a);
        let best_map = &parts.pinv * &b;
        let residual_map = &b - &parts.col_proj * &b;

        let constants = parts.min_nonzero.map(|smin| {
            let mu = smin * smin;
            // |Hessian| <= |diag s''| + |[-B A]' [-B A]| <= 2 + lmax(BB' + AA').
            let gram = &b * b.transpose() + &a * a.transpose();
            let l_f = T::c(2.0) + linalg::symmetric_spectral_norm(&gram);
            let kappa = l_f / mu;
            ProblemConstants { mu, l_f, kappa, l_envelope: l_f * (T::one() + kappa / T::c(2.0)) }
        });

        Ok(MinimaxProblem {
            dim_x,
            dim_y,
            sigma,
            inner: Inner::LeastSquares(LeastSquaresPl {
                a,
                b,
                best_map,
                residual_map,
                row_proj: parts.row_proj,
                a_max_singular: parts.max_singular,
            }),
            constants,
        })
    }

    /// The 1-by-1 quadratic instance `f = x^2/2 + xy - y^2`
    /// (`P=1, Q=1, R=2, c=d=0`), whose envelope is `F(x) = 3x^2/4`.
    /// The standard worked example throughout the test suite.
    pub fn scalar_quadratic(sigma: T) -> Self {
        MinimaxProblem::quadratic_pl(
            Matrix::from_element(1, 1, T::one()),
            Matrix::from_element(1, 1, T::one()),
            Matrix::from_element(1, 1, T::c(2.0)),
            Vector::zeros(1),
            Vector::zeros(1),
            sigma,
        )
        .expect("canonical instance is valid")
    }

    pub fn dim_x(&self) -> usize {
        self.dim_x
    }

    pub fn dim_y(&self) -> usize {
        self.dim_y
    }

    pub fn sigma(&self) -> T {
        self.sigma
    }

    pub fn kind(&self) -> InstanceKind {
        match self.inner {
            Inner::Quadratic(_) => InstanceKind::QuadraticPl,
            Inner::LeastSquares(_) => InstanceKind::NonconvexPlLeastSquares,
        }
    }

    fn check_dims(&self, x: &Vector<T>, y: &Vector<T>) -> Result<()> {
        if x.len() != self.dim_x {
            return Err(Error::DimensionMismatch(format!(
                "x has length {}, expected {}",
                x.len(),
                self.dim_x
            )));
        }
        if y.len() != self.dim_y {
            return Err(Error::DimensionMismatch(format!(
                "y has length {}, expected {}",
                y.len(),
                self.dim_y
            )));
        }
        Ok(())
    }

    fn check_x(&self, x: &Vector<T>) -> Result<()> {
        if x.len() != self.dim_x {
            return Err(Error::DimensionMismatch(format!(
                "x has length {}, expected {}",
                x.len(),
                self.dim_x
            )));
        }
        Ok(())
    }

    /// Objective value `f(x, y)`.
    pub fn objective(&self, x: &Vector<T>, y: &Vector<T>) -> Result<T> {
        self.check_dims(x, y)?;
        let half = T::c(0.5);
        Ok(match &self.inner {
            Inner::Quadratic(q) => {
                half * x.dot(&(&q.p * x)) + x.dot(&(&q.q * y)) - half * y.dot(&(&q.r * y))
                    + q.c.dot(x)
                    + q.d_vec.dot(y)
            }
            Inner::LeastSquares(ls) => {
                let sat_sum = x.iter().fold(T::zero(), |a, &v| a + sat(v));
                let r = &ls.a * y - &ls.b * x;
                sat_sum - half * r.norm_squared()
            }
        })
    }

    /// Exact joint gradient `(grad_x f, grad_y f)` at `(x, y)`.
    pub fn exact_gradient(&self, x: &Vector<T>, y: &Vector<T>) -> Result<(Vector<T>, Vector<T>)> {
        self.check_dims(x, y)?;
        Ok(match &self.inner {
            Inner::Quadratic(q) => {
                let gx = &q.p * x + &q.q * y + &q.c;
                let gy = q.q.transpose() * x - &q.r * y + &q.d_vec;
                (gx, gy)
            }
            Inner::LeastSquares(ls) => {
                let r = &ls.a * y - &ls.b * x;
                let gx = Vector::from_iterator(self.dim_x, x.iter().map(|&v| sat_prime(v)))
                    + ls.b.transpose() * &r;
                let gy = -(ls.a.transpose() * &r);
                (gx, gy)
            }
        })
    }

    /// Draws one additive-noise sample with per-coordinate variance
    /// `sigma^2 / (dim_x + dim_y)`, so the total noise second moment is
    /// `sigma^2`. With `sigma = 0` no randomness is consumed.
    pub fn draw_sample<R: Rng + ?Sized>(&self, rng: &mut R) -> GradientSample<T> {
        if self.sigma == T::zero() {
            return GradientSample {
                noise_x: Vector::zeros(self.dim_x),
                noise_y: Vector::zeros(self.dim_y),
            };
        }
        let total = self.dim_x + self.dim_y;
        let scale = self.sigma / T::c(total as f64).sqrt();
        // Fixed draw order (x block, then y block) pins byte-level
        // reproducibility of seeded runs.
        let noise_x = Vector::from_iterator(
            self.dim_x,
            (0..self.dim_x).map(|_| scale * T::c(rng.sample::<f64, _>(StandardNormal))),
        );
        let noise_y = Vector::from_iterator(
            self.dim_y,
            (0..self.dim_y).map(|_| scale * T::c(rng.sample::<f64, _>(StandardNormal))),
        );
        GradientSample { noise_x, noise_y }
    }

    /// Stochastic gradient at `(x, y)` under an already-drawn sample.
    pub fn gradient_with_sample(
        &self,
        x: &Vector<T>,
        y: &Vector<T>,
        sample: &GradientSample<T>,
    ) -> Result<(Vector<T>, Vector<T>)> {
        let (gx, gy) = self.exact_gradient(x, y)?;
        Ok((gx + &sample.noise_x, gy + &sample.noise_y))
    }

    /// Unbiased stochastic gradient; draws a fresh sample from `rng`.
    pub fn stochastic_gradient<R: Rng + ?Sized>(
        &self,
        x: &Vector<T>,
        y: &Vector<T>,
        rng: &mut R,
    ) -> Result<(Vector<T>, Vector<T>)> {
        let sample = self.draw_sample(rng);
        self.gradient_with_sample(x, y, &sample)
    }

    /// Minimum-norm maximizer `y*(x)` of `f(x, .)`, with a residual check
    /// that the dual gradient vanishes there.
    pub fn best_response(&self, x: &Vector<T>) -> Result<Vector<T>> {
        self.check_x(x)?;
        match &self.inner {
            Inner::Quadratic(q) => {
                let s = q.q.transpose() * x + &q.d_vec;
                let y_star = &q.r_pinv * &s;
                let residual = (&s - &q.r * &y_star).norm();
                let tol = T::c(1e-8) * (T::one() + s.norm());
                if residual > tol {
                    return Err(Error::InternalConsistency(format!(
                        "best response residual {:?} exceeds {:?}",
                        residual.to_f64(),
                        tol.to_f64()
                    )));
                }
                Ok(y_star)
            }
            Inner::LeastSquares(ls) => {
                let y_star = &ls.best_map * x;
                let r = &ls.a * &y_star - &ls.b * x;
                let residual = (ls.a.transpose() * r).norm();
                let tol = T::c(1e-8)
                    * (T::one() + (&ls.b * x).norm())
                    * (T::one() + ls.a_max_singular);
                if residual > tol {
                    return Err(Error::InternalConsistency(format!(
                        "best response residual {:?} exceeds {:?}",
                        residual.to_f64(),
                        tol.to_f64()
                    )));
                }
                Ok(y_star)
            }
        }
    }

    /// Envelope value `F(x) = max_y f(x, y)`, via the closed form.
    pub fn envelope_value(&self, x: &Vector<T>) -> Result<T> {
        self.check_x(x)?;
        let half = T::c(0.5);
        Ok(match &self.inner {
            Inner::Quadratic(q) => {
                let s = q.q.transpose() * x + &q.d_vec;
                half * x.dot(&(&q.p * x)) + q.c.dot(x) + half * s.dot(&(&q.r_pinv * &s))
            }
            Inner::LeastSquares(ls) => {
                let sat_sum = x.iter().fold(T::zero(), |a, &v| a + sat(v));
                sat_sum - half * (&ls.residual_map * x).norm_squared()
            }
        })
    }

    /// Envelope gradient `grad F(x) = grad_x f(x, y*(x))`, closed form.
    pub fn envelope_gradient(&self, x: &Vector<T>) -> Result<Vector<T>> {
        self.check_x(x)?;
        Ok(match &self.inner {
            Inner::Quadratic(q) => {
                let s = q.q.transpose() * x + &q.d_vec;
                &q.p * x + &q.c + &q.q * (&q.r_pinv * s)
            }
            Inner::LeastSquares(ls) => {
                let res = &ls.residual_map * x;
                Vector::from_iterator(self.dim_x, x.iter().map(|&v| sat_prime(v)))
                    - ls.residual_map.transpose() * res
            }
        })
    }

    /// Primal suboptimality of the inner problem, `F(x) - f(x, y)`.
    /// Nonnegative up to rounding.
    pub fn gap(&self, x: &Vector<T>, y: &Vector<T>) -> Result<T> {
        Ok(self.envelope_value(x)? - self.objective(x, y)?)
    }

    /// Distance from `y` to the maximizer set of `f(x, .)`, i.e. the norm
    /// of `y*(x) - y` projected onto the orthogonal complement of the
    /// dual kernel. Used by the error-bound and quadratic-growth checks.
    pub fn argmax_distance(&self, x: &Vector<T>, y: &Vector<T>) -> Result<T> {
        self.check_dims(x, y)?;
        let e = self.best_response(x)? - y;
        Ok(match &self.inner {
            Inner::Quadratic(q) => (&q.r_range_proj * e).norm(),
            Inner::LeastSquares(ls) => (&ls.row_proj * e).norm(),
        })
    }

    /// Curvature constants; errors when the dual curvature is entirely
    /// zero (for example `R = 0` or `A = 0`), since no PL modulus exists.
    pub fn constants(&self) -> Result<&ProblemConstants<T>> {
        self.constants.as_ref().ok_or_else(|| {
            Error::DegenerateInstance(
                "no nonzero dual curvature; PL modulus undefined".into(),
            )
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn vec1(v: f64) -> Vector<f64> {
        Vector::from_vec(vec![v])
    }

    #[test]
    fn scalar_quadratic_worked_values() {
        let prob = MinimaxProblem::scalar_quadratic(0.0);
        let x = vec1(1.0);
        let y = vec1(0.0);
        let (gx, gy) = prob.exact_gradient(&x, &y).unwrap();
        assert_abs_diff_eq!(gx[0], 1.0, epsilon = 1e-15); // x + y
        assert_abs_diff_eq!(gy[0], 1.0, epsilon = 1e-15); // x - 2y
        assert_abs_diff_eq!(prob.best_response(&x).unwrap()[0], 0.5, epsilon = 1e-14);
        assert_abs_diff_eq!(prob.envelope_value(&x).unwrap(), 0.75, epsilon = 1e-14);
        assert_abs_diff_eq!(prob.envelope_gradient(&x).unwrap()[0], 1.5, epsilon = 1e-14);
        assert_abs_diff_eq!(prob.objective(&x, &y).unwrap(), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(prob.gap(&x, &y).unwrap(), 0.25, epsilon = 1e-14);
    }

    #[test]
    fn scalar_quadratic_constants() {
        let prob = MinimaxProblem::scalar_quadratic(0.5);
        let k = prob.constants().unwrap();
        let lf = (1.0 + 13.0_f64.sqrt()) / 2.0;
        assert_abs_diff_eq!(k.mu, 2.0, epsilon = 1e-13);
        assert_abs_diff_eq!(k.l_f, lf, epsilon = 1e-12);
        assert_abs_diff_eq!(k.kappa, lf / 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(k.l_envelope, 3.628_469_547_164_993_7, epsilon = 1e-12);
    }

    #[test]
    fn identity_blocks_constants() {
        // Q = 0, P = I, R = I: L_f = 1, mu = 1, kappa = 1, L = 1.5.
        let prob = MinimaxProblem::quadratic_pl(
            Matrix::identity(2, 2),
            Matrix::zeros(2, 2),
            Matrix::identity(2, 2),
            Vector::zeros(2),
            Vector::zeros(2),
            0.0,
        )
        .unwrap();
        let k = prob.constants().unwrap();
        assert_abs_diff_eq!(k.l_f, 1.0, epsilon = 1e-13);
        assert_abs_diff_eq!(k.mu, 1.0, epsilon = 1e-13);
        assert_abs_diff_eq!(k.l_envelope, 1.5, epsilon = 1e-13);
    }

    #[test]
    fn singular_dual_curvature_takes_smallest_nonzero() {
        // d=1, p=2: R = diag(2, 0); Q = [1 0] keeps range(Q') in range(R).
        let prob = MinimaxProblem::quadratic_pl(
            Matrix::from_element(1, 1, 1.0),
            Matrix::from_row_slice(1, 2, &[1.0, 0.0]),
            Matrix::from_diagonal(&Vector::from_vec(vec![2.0, 0.0])),
            Vector::zeros(1),
            Vector::zeros(2),
            0.0,
        )
        .unwrap();
        assert_abs_diff_eq!(prob.constants().unwrap().mu, 2.0, epsilon = 1e-13);
        // y*(1) solves R y = Q' x: minimum-norm solution (0.5, 0).
        let y = prob.best_response(&vec1(1.0)).unwrap();
        assert_abs_diff_eq!(y[0], 0.5, epsilon = 1e-13);
        assert_abs_diff_eq!(y[1], 0.0, epsilon = 1e-13);
    }

    #[test]
    fn unattainable_maximum_is_rejected() {
        // Q = [0 1] pushes range(Q') into ker(R): inner sup is infinite.
        let err = MinimaxProblem::quadratic_pl(
            Matrix::from_element(1, 1, 1.0),
            Matrix::from_row_slice(1, 2, &[0.0, 1.0]),
            Matrix::from_diagonal(&Vector::from_vec(vec![2.0, 0.0])),
            Vector::zeros(1),
            Vector::zeros(2),
            0.0,
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidArgument(_)), "{err:?}");
    }

    #[test]
    fn non_psd_dual_block_is_rejected() {
        let err = MinimaxProblem::quadratic_pl(
            Matrix::from_element(1, 1, 1.0),
            Matrix::from_element(1, 1, 0.0),
            Matrix::from_element(1, 1, -1.0),
            Vector::zeros(1),
            Vector::zeros(1),
            0.0,
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidArgument(_)), "{err:?}");
    }

    #[test]
    fn degenerate_instance_defers_error_to_constants() {
        // A = 0 is allowed for gradient evaluation but has no PL modulus.
        let prob = MinimaxProblem::least_squares_pl(
            Matrix::zeros(2, 2),
            Matrix::zeros(2, 2),
            0.0,
        )
        .unwrap();
        let x = Vector::zeros(2);
        let y = Vector::zeros(2);
        let (gx, gy) = prob.exact_gradient(&x, &y).unwrap();
        assert_eq!(gx.norm(), 0.0);
        assert_eq!(gy.norm(), 0.0);
        assert!(matches!(prob.constants(), Err(Error::DegenerateInstance(_))));
    }

    #[test]
    fn least_squares_envelope_matches_composition() {
        let a = Matrix::from_row_slice(3, 3, &[1.0, 0.5, 0.0, 0.0, 1.0, 0.5, 1.0, 1.5, 0.5]);
        let b = Matrix::from_row_slice(
            3,
            4,
            &[0.5, -0.2, 0.1, 0.0, 0.3, 0.7, 0.0, -0.1, 0.0, 0.1, 0.4, 0.2],
        );
        let prob = MinimaxProblem::least_squares_pl(a, b, 0.0).unwrap();
        let x = Vector::from_vec(vec![0.7, -1.2, 0.4, 2.0]);
        let y_star = prob.best_response(&x).unwrap();
        let via_objective = prob.objective(&x, &y_star).unwrap();
        let via_closed_form = prob.envelope_value(&x).unwrap();
        assert_abs_diff_eq!(via_objective, via_closed_form, epsilon = 1e-12);
        // mu is the squared smallest nonzero singular value of A.
        assert_abs_diff_eq!(prob.constants().unwrap().mu, 0.75, epsilon = 1e-12);
    }

    #[test]
    fn envelope_gradient_matches_best_response_composition() {
        let prob = MinimaxProblem::scalar_quadratic(0.0);
        for xv in [-2.0, -0.3, 0.0, 0.9, 3.7] {
            let x = vec1(xv);
            let y_star = prob.best_response(&x).unwrap();
            let (gx, _) = prob.exact_gradient(&x, &y_star).unwrap();
            let gf = prob.envelope_gradient(&x).unwrap();
            assert_abs_diff_eq!(gf[0], gx[0], epsilon = 1e-13);
        }
    }

    #[test]
    fn stochastic_gradient_is_deterministic_per_stream_position() {
        let prob = MinimaxProblem::scalar_quadratic(1.0);
        let x = vec1(1.0);
        let y = vec1(0.0);
        let mut rng1 = ChaCha8Rng::seed_from_u64(7);
        let mut rng2 = ChaCha8Rng::seed_from_u64(7);
        let (a1, b1) = prob.stochastic_gradient(&x, &y, &mut rng1).unwrap();
        let (a2, b2) = prob.stochastic_gradient(&x, &y, &mut rng2).unwrap();
        assert_eq!(a1, a2);
        assert_eq!(b1, b2);
    }

    #[test]
    fn shared_sample_shifts_two_points_identically() {
        let prob = MinimaxProblem::scalar_quadratic(1.0);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let sample = prob.draw_sample(&mut rng);
        let (x1, y1) = (vec1(1.0), vec1(0.0));
        let (x2, y2) = (vec1(-0.5), vec1(2.0));
        let (g1x, g1y) = prob.gradient_with_sample(&x1, &y1, &sample).unwrap();
        let (e1x, e1y) = prob.exact_gradient(&x1, &y1).unwrap();
        let (g2x, g2y) = prob.gradient_with_sample(&x2, &y2, &sample).unwrap();
        let (e2x, e2y) = prob.exact_gradient(&x2, &y2).unwrap();
        assert_abs_diff_eq!(g1x[0] - e1x[0], g2x[0] - e2x[0], epsilon = 1e-15);
        assert_abs_diff_eq!(g1y[0] - e1y[0], g2y[0] - e2y[0], epsilon = 1e-15);
    }

    #[test]
    fn noise_second_moment_matches_sigma() {
        let prob = MinimaxProblem::scalar_quadratic(0.5);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let n = 100_000;
        let mut sum_sq = 0.0;
        let mut mean_x = 0.0;
        let mut mean_y = 0.0;
        for _ in 0..n {
            let s = prob.draw_sample(&mut rng);
            sum_sq += s.noise_x.norm_squared() + s.noise_y.norm_squared();
            mean_x += s.noise_x[0];
            mean_y += s.noise_y[0];
        }
        let second_moment: f64 = sum_sq / n as f64;
        assert!((second_moment - 0.25).abs() < 0.25 * 0.05, "{second_moment}");
        // Unbiasedness: per-coordinate std is sigma/sqrt(2).
        let bound = 4.0 * (0.5 / 2.0_f64.sqrt()) / (n as f64).sqrt();
        assert!((mean_x / n as f64).abs() < bound);
        assert!((mean_y / n as f64).abs() < bound);
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let prob = MinimaxProblem::scalar_quadratic(0.0);
        let err = prob.exact_gradient(&Vector::zeros(2), &vec1(0.0)).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch(_)));
    }

    #[test]
    fn f32_instance_evaluates() {
        let prob = MinimaxProblem::<f32>::scalar_quadratic(0.0);
        assert!((prob.envelope_value(&nalgebra::DVector::from_vec(vec![1.0_f32])).unwrap() - 0.75).abs() < 1e-6);
    }
}
