use crate::error::{Error, Result};

/// Empirical orders `log(e_{k-1}/e_k) / log(h_{k-1}/h_k)` of a refinement
/// sequence of `(h, e)` pairs.
pub fn eoc(errors: &[(f64, f64)]) -> Result<Vec<f64>> {
    if errors.len() < 2 {
        return Err(Error::InvalidEoc(format!("need at least 2 entries, got {}", errors.len())));
    }
    for (k, &(h, e)) in errors.iter().enumerate() {
        if !(e > 0.0 && e.is_finite()) {
            return Err(Error::InvalidEoc(format!("error #{k} must be positive and finite, got {e}")));
        }
        if !(h > 0.0 && h.is_finite()) {
            return Err(Error::InvalidEoc(format!("mesh size #{k} must be positive, got {h}")));
        }
    }
    errors
        .windows(2)
        .map(|w| {
            let ((h0, e0), (h1, e1)) = (w[0], w[1]);
            if h1 >= h0 {
                return Err(Error::InvalidEoc(format!("mesh sizes must decrease strictly ({h0} then {h1})")));
            }
            Ok((e0 / e1).ln() / (h0 / h1).ln())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn halving(es: &[f64]) -> Vec<(f64, f64)> {
        es.iter().enumerate().map(|(k, &e)| (0.125 / f64::from(1 << k), e)).collect()
    }

    #[test]
    fn exact_square_law() {
        let pts: Vec<_> = (0..5).map(|k| {
            let h = 0.3 / f64::from(1 << k);
            (h, 7.0 * h * h)
        }).collect();
        for o in eoc(&pts).unwrap() {
            assert!((o - 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn irregular_pattern_with_negative_order() {
        let o = eoc(&halving(&[8.168e-4, 1.503e-3, 8.062e-4, 3.051e-4])).unwrap();
        for (a, b) in o.iter().zip([-0.88, 0.90, 1.40]) {
            assert!((a - b).abs() < 0.005, "{a} vs {b}");
        }
    }

    #[test]
    fn degrading_pattern() {
        let o = eoc(&halving(&[1.307e-2, 2.807e-3, 7.290e-4, 2.208e-4])).unwrap();
        for (a, b) in o.iter().zip([2.22, 1.95, 1.72]) {
            assert!((a - b).abs() < 0.005, "{a} vs {b}");
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(eoc(&[(0.1, 1.0)]).is_err());
        assert!(eoc(&[(0.1, 1.0), (0.05, 0.0)]).is_err());
        assert!(eoc(&[(0.1, -1.0), (0.05, 0.5)]).is_err());
        assert!(eoc(&[(0.1, 1.0), (0.1, 0.5)]).is_err());
        assert!(eoc(&[(0.1, 1.0), (0.05, f64::NAN)]).is_err());
    }
}
