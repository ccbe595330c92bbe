//! Data of a thermistor problem: conductivity, sources, initial and boundary data.

/// Coefficients and data of
/// `u_t - Δu = σ(u)|∇φ|² + f1`, `-∇·(σ(u)∇φ) = f2`, `u = 0` and `φ = g` on the boundary.
///
/// `exact_u` / `exact_phi` supply the initial temperature, the potential
/// boundary data and (when known) the reference solution for error norms.
pub trait ProblemData: Sync {
    fn sigma(&self, s: f64) -> f64;

    fn exact_u(&self, x: f64, y: f64, t: f64) -> f64;
    fn exact_u_grad(&self, x: f64, y: f64, t: f64) -> [f64; 2];
    fn exact_phi(&self, x: f64, y: f64, t: f64) -> f64;
    fn exact_phi_grad(&self, x: f64, y: f64, t: f64) -> [f64; 2];

    fn f1(&self, x: f64, y: f64, t: f64) -> f64;
    fn f2(&self, x: f64, y: f64, t: f64) -> f64;

    /// Potential boundary data.
    fn g(&self, x: f64, y: f64, t: f64) -> f64 {
        self.exact_phi(x, y, t)
    }

    fn u0(&self, x: f64, y: f64) -> f64 {
        self.exact_u(x, y, 0.0)
    }
}
