//! Manufactured test problem on the unit square:
//!
//! * `σ(s) = 1/(1+s²) + 1`
//! * `u = e^{-2t} sin(πx) sin(πy)`
//! * `φ = 1 + sin(x + y + t)`
//!
//! with `f1 = u_t - Δu - σ(u)|∇φ|²` and `f2 = -σ'(u)∇u·∇φ - σ(u)Δφ`.

use std::f64::consts::PI;

use crate::problem::ProblemData;

/// Lower and upper bounds of [`sigma`].
pub const SIGMA_BOUNDS: (f64, f64) = (1.0, 2.0);

pub fn sigma(s: f64) -> f64 {
    1.0 / (1.0 + s * s) + 1.0
}

pub fn sigma_prime(s: f64) -> f64 {
    let d = 1.0 + s * s;
    -2.0 * s / (d * d)
}

/// Exact fields and their derivatives at one space-time point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExactFields {
    pub u: f64,
    pub grad_u: [f64; 2],
    pub lap_u: f64,
    pub u_t: f64,
    pub phi: f64,
    pub grad_phi: [f64; 2],
    pub lap_phi: f64,
}

pub fn exact_fields(x: f64, y: f64, t: f64) -> ExactFields {
    let decay = (-2.0 * t).exp();
    let (sx, cx) = (PI * x).sin_cos();
    let (sy, cy) = (PI * y).sin_cos();
    let u = decay * sx * sy;
    let (s, c) = (x + y + t).sin_cos();
    ExactFields {
        u,
        grad_u: [decay * PI * cx * sy, decay * PI * sx * cy],
        lap_u: -2.0 * PI * PI * u,
        u_t: -2.0 * u,
        phi: 1.0 + s,
        grad_phi: [c, c],
        lap_phi: -2.0 * s,
    }
}

pub fn source_f1(x: f64, y: f64, t: f64) -> f64 {
    let f = exact_fields(x, y, t);
    let grad_phi_sq = f.grad_phi[0] * f.grad_phi[0] + f.grad_phi[1] * f.grad_phi[1];
    f.u_t - f.lap_u - sigma(f.u) * grad_phi_sq
}

pub fn source_f2(x: f64, y: f64, t: f64) -> f64 {
    let f = exact_fields(x, y, t);
    let grad_dot = f.grad_u[0] * f.grad_phi[0] + f.grad_u[1] * f.grad_phi[1];
    -sigma_prime(f.u) * grad_dot - sigma(f.u) * f.lap_phi
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ManufacturedProblem;

impl ProblemData for ManufacturedProblem {
    fn sigma(&self, s: f64) -> f64 {
        sigma(s)
    }

    fn exact_u(&self, x: f64, y: f64, t: f64) -> f64 {
        exact_fields(x, y, t).u
    }

    fn exact_u_grad(&self, x: f64, y: f64, t: f64) -> [f64; 2] {
        exact_fields(x, y, t).grad_u
    }

    fn exact_phi(&self, x: f64, y: f64, t: f64) -> f64 {
        1.0 + (x + y + t).sin()
    }

    fn exact_phi_grad(&self, x: f64, y: f64, t: f64) -> [f64; 2] {
        let c = (x + y + t).cos();
        [c, c]
    }

    fn f1(&self, x: f64, y: f64, t: f64) -> f64 {
        source_f1(x, y, t)
    }

    fn f2(&self, x: f64, y: f64, t: f64) -> f64 {
        source_f2(x, y, t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    // Closed forms written out independently of `exact_fields`.
    fn u(x: f64, y: f64, t: f64) -> f64 {
        (-2.0 * t).exp() * (PI * x).sin() * (PI * y).sin()
    }

    fn phi(x: f64, y: f64, t: f64) -> f64 {
        1.0 + (x + y + t).sin()
    }

    /// Centered difference with two levels of Richardson extrapolation
    /// (error O(h^6)); base step 1e-2 keeps roundoff near 1e-13 per level.
    fn deriv(f: impl Fn(f64) -> f64, x: f64) -> f64 {
        let central = |h: f64| (f(x + h) - f(x - h)) / (2.0 * h);
        let h = 1e-2;
        let (d1, d2, d4) = (central(h), central(h / 2.0), central(h / 4.0));
        let r1 = (4.0 * d2 - d1) / 3.0;
        let r2 = (4.0 * d4 - d2) / 3.0;
        (16.0 * r2 - r1) / 15.0
    }

    fn d_dx(f: impl Fn(f64, f64, f64) -> f64, x: f64, y: f64, t: f64) -> f64 {
        deriv(|s| f(s, y, t), x)
    }

    fn d_dy(f: impl Fn(f64, f64, f64) -> f64, x: f64, y: f64, t: f64) -> f64 {
        deriv(|s| f(x, s, t), y)
    }

    fn d_dt(f: impl Fn(f64, f64, f64) -> f64, x: f64, y: f64, t: f64) -> f64 {
        deriv(|s| f(x, y, s), t)
    }

    /// Residual of the heat equation with the source, by finite differences.
    fn heat_residual(x: f64, y: f64, t: f64) -> f64 {
        let ut = d_dt(u, x, y, t);
        let lap = d_dx(|x, y, t| d_dx(u, x, y, t), x, y, t) + d_dy(|x, y, t| d_dy(u, x, y, t), x, y, t);
        let gp = [d_dx(phi, x, y, t), d_dy(phi, x, y, t)];
        ut - lap - sigma(u(x, y, t)) * (gp[0] * gp[0] + gp[1] * gp[1]) - source_f1(x, y, t)
    }

    /// Residual of the potential equation: flux `σ(u)∇φ` differentiated numerically.
    fn potential_residual(x: f64, y: f64, t: f64) -> f64 {
        let flux_x = |x: f64, y: f64, t: f64| sigma(u(x, y, t)) * d_dx(phi, x, y, t);
        let flux_y = |x: f64, y: f64, t: f64| sigma(u(x, y, t)) * d_dy(phi, x, y, t);
        -(d_dx(flux_x, x, y, t) + d_dy(flux_y, x, y, t)) - source_f2(x, y, t)
    }

    #[test]
    fn sources_satisfy_pde_at_random_points() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let mut worst: f64 = 0.0;
        for _ in 0..1000 {
            let (x, y, t) = (rng.gen::<f64>(), rng.gen::<f64>(), rng.gen_range(0.0..1.0));
            worst = worst.max(heat_residual(x, y, t).abs());
            worst = worst.max(potential_residual(x, y, t).abs());
        }
        assert!(worst <= 1e-9, "worst residual {worst}");
    }

    #[test]
    fn late_time_source_is_joule_term_only() {
        // u is ~e^{-100} at t = 50, so f1 reduces to -σ(0)|∇φ|² = -4 cos²(x+y+50).
        for &(x, y) in &[(0.3, 0.7), (0.5, 0.5), (0.9, 0.1)] {
            let expected = -4.0 * (x + y + 50.0f64).cos().powi(2);
            assert!((source_f1(x, y, 50.0) - expected).abs() <= 1e-9);
            assert!(heat_residual(x, y, 50.0).abs() <= 1e-9);
        }
    }

    #[test]
    fn sigma_values() {
        assert_eq!(sigma(0.0), 2.0);
        assert_eq!(sigma(1.0), 1.5);
        assert_eq!(sigma_prime(0.0), 0.0);
        for s in [-3.0, -0.4, 0.2, 1.7] {
            let fd = (sigma(s + 1e-6) - sigma(s - 1e-6)) / 2e-6;
            assert!((sigma_prime(s) - fd).abs() < 1e-8);
        }
    }

    #[test]
    fn sigma_bounds_over_wide_range() {
        let (k1, k2) = SIGMA_BOUNDS;
        for k in -100..=100 {
            let mag = 10f64.powf(f64::from(k) / 10.0);
            for s in [mag, -mag, 0.0] {
                let v = sigma(s);
                assert!(v >= k1 && v <= k2, "σ({s}) = {v}");
                // 1/(1+s²) underflows against 1 in f64 beyond |s| ~ 1e8
                if mag <= 1e7 {
                    assert!(v > k1, "σ({s}) = {v}");
                }
            }
        }
    }

    #[test]
    fn exact_field_values() {
        assert!((exact_fields(0.5, 0.5, 0.0).u - 1.0).abs() < 1e-15);
        for &(x, t) in &[(0.3, 0.0), (0.77, 0.9)] {
            assert_eq!(exact_fields(x, 0.0, t).u, 0.0);
        }
        let f = exact_fields(0.0, 0.0, 0.0);
        assert_eq!(f.grad_phi[0] * f.grad_phi[0] + f.grad_phi[1] * f.grad_phi[1], 2.0);
        let f = exact_fields(0.2, 0.6, 0.4);
        assert!((f.u_t + 2.0 * f.u).abs() < 1e-15);
        assert!((f.lap_u + 2.0 * PI * PI * f.u).abs() < 1e-14);
        assert!((f.lap_phi + 2.0 * (1.2f64).sin()).abs() < 1e-15);
    }

    #[test]
    fn problem_trait_matches_free_functions() {
        let p = ManufacturedProblem;
        let (x, y, t) = (0.31, 0.64, 0.5);
        assert_eq!(p.exact_u(x, y, t), exact_fields(x, y, t).u);
        assert!((p.exact_phi(x, y, t) - exact_fields(x, y, t).phi).abs() < 1e-15);
        assert_eq!(p.exact_u_grad(x, y, t), exact_fields(x, y, t).grad_u);
        assert_eq!(p.g(x, y, t), p.exact_phi(x, y, t));
        assert_eq!(p.u0(x, y), p.exact_u(x, y, 0.0));
    }
}
