//! Backward difference operators.

/// Second-order BDF difference `(3 f^n - 4 f^{n-1} + f^{n-2}) / (2τ)`.
pub fn d_tau(f_n: &[f64], f_nm1: &[f64], f_nm2: &[f64], tau: f64) -> Vec<f64> {
    assert!(tau > 0.0);
    f_n.iter()
        .zip(f_nm1)
        .zip(f_nm2)
        .map(|((a, b), c)| (3.0 * a - 4.0 * b + c) / (2.0 * tau))
        .collect()
}

/// Third-order BDF difference `(11 f^n - 18 f^{n-1} + 9 f^{n-2} - 2 f^{n-3}) / (6τ)`.
pub fn d_tau3(f_n: &[f64], f_nm1: &[f64], f_nm2: &[f64], f_nm3: &[f64], tau: f64) -> Vec<f64> {
    assert!(tau > 0.0);
    f_n.iter()
        .zip(f_nm1)
        .zip(f_nm2)
        .zip(f_nm3)
        .map(|(((a, b), c), d)| (11.0 * a - 18.0 * b + 9.0 * c - 2.0 * d) / (6.0 * tau))
        .collect()
}

/// Implicit weight and history weights of a backward difference formula:
/// `D f^n = (lead f^n - sum_k history[k] f^{n-1-k}) / τ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BdfWeights {
    pub lead: f64,
    pub history: &'static [f64],
}

pub const EULER: BdfWeights = BdfWeights {
    lead: 1.0,
    history: &[1.0],
};

pub const BDF2: BdfWeights = BdfWeights {
    lead: 1.5,
    history: &[2.0, -0.5],
};

pub const BDF3: BdfWeights = BdfWeights {
    lead: 11.0 / 6.0,
    history: &[3.0, -1.5, 1.0 / 3.0],
};
