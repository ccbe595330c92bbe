use std::collections::VecDeque;

/// Rolling window of nodal temperature and potential levels, newest first.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeState {
    u: VecDeque<Vec<f64>>,
    phi: VecDeque<Vec<f64>>,
    /// Index of the newest temperature level.
    pub n: usize,
    pub t: f64,
}

const U_DEPTH: usize = 4;
const PHI_DEPTH: usize = 3;

impl TimeState {
    pub fn new(u0: Vec<f64>) -> Self {
        TimeState {
            u: VecDeque::from([u0]),
            phi: VecDeque::new(),
            n: 0,
            t: 0.0,
        }
    }

    /// Temperature level `n - lag`.
    pub fn u(&self, lag: usize) -> &[f64] {
        &self.u[lag]
    }

    pub fn u_n(&self) -> &[f64] {
        self.u(0)
    }

    pub fn u_nm1(&self) -> &[f64] {
        self.u(1)
    }

    pub fn u_nm2(&self) -> &[f64] {
        self.u(2)
    }

    pub fn u_levels(&self) -> usize {
        self.u.len()
    }

    /// Potential level `n - lag`, if stored.
    pub fn phi(&self, lag: usize) -> Option<&[f64]> {
        self.phi.get(lag).map(|v| v.as_slice())
    }

    pub fn phi_n(&self) -> &[f64] {
        self.phi(0).expect("potential not yet computed")
    }

    pub fn phi_levels(&self) -> usize {
        self.phi.len()
    }

    /// Pushes a new temperature level, advancing `n` and `t` by one step.
    pub fn push_u(&mut self, u: Vec<f64>, tau: f64) {
        self.u.push_front(u);
        self.u.truncate(U_DEPTH);
        self.n += 1;
        self.t = self.n as f64 * tau;
    }

    /// Stores the potential of the newest level.
    pub fn push_phi(&mut self, phi: Vec<f64>) {
        self.phi.push_front(phi);
        self.phi.truncate(PHI_DEPTH);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn window_rolls() {
        let mut s = TimeState::new(vec![0.0]);
        for k in 1..=5 {
            s.push_u(vec![k as f64], 0.5);
            s.push_phi(vec![-(k as f64)]);
        }
        assert_eq!(s.n, 5);
        assert_eq!(s.t, 2.5);
        assert_eq!(s.u_n(), &[5.0]);
        assert_eq!(s.u_nm2(), &[3.0]);
        assert_eq!(s.u_levels(), 4);
        assert_eq!(s.phi(2), Some(&[-3.0][..]));
        assert_eq!(s.phi(3), None);
    }
}
