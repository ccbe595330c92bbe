use std::fmt::Write;

use super::{group_orders, Study};
use crate::analysis::ErrorReport;

const ROWS: [&str; 9] = [
    "||U - u||_0",
    "||U - u||_1",
    "||U - I_h u||_1",
    "||I_2h U - u||_1",
    "||Phi - phi||_0",
    "||Phi - phi||_1",
    "||Phi - I_h phi||_1",
    "||I_2h Phi - phi||_1",
    "combined L2",
];

/// Errors and orders laid out with one column per run.
///
/// Runs on a common mesh are labelled by τ and their orders are taken in τ;
/// otherwise columns are labelled `MxM` and orders are taken in h.
pub fn render_order_table(reports: &[ErrorReport]) -> String {
    let mut out = String::new();
    if reports.is_empty() {
        return out;
    }
    let temporal = reports.len() > 1 && reports.iter().all(|r| r.m == reports[0].m);
    let study = if temporal { Study::TemporalSweep } else { Study::SpatialSweep };
    let headers: Vec<String> = reports
        .iter()
        .map(|r| if temporal { format!("tau={}", sig4(r.tau)) } else { format!("{0}x{0}", r.m) })
        .collect();
    let width = 12;
    let label = 22;

    let _ = write!(out, "{:<label$}", if temporal { "step" } else { "mesh" });
    for h in &headers {
        let _ = write!(out, "{h:>width$}");
    }
    out.push('\n');
    let _ = writeln!(out, "{}", "-".repeat(label + width * headers.len()));

    let orders = group_orders(study, reports);
    for (k, name) in ROWS.iter().enumerate() {
        let _ = write!(out, "{name:<label$}");
        for r in reports {
            let _ = write!(out, "{:>width$}", sig4(r.numeric_fields()[k]));
        }
        out.push('\n');
        if !orders.is_empty() {
            let _ = write!(out, "{:<label$}{:>width$}", "  order", "--");
            for row in &orders {
                let cell = row[k].map_or("--".to_string(), |o| format!("{o:.2}"));
                let _ = write!(out, "{cell:>width$}");
            }
            out.push('\n');
        }
    }
    out
}

fn sig4(v: f64) -> String {
    format!("{v:.3e}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::FieldErrors;

    fn report(m: usize, tau: f64, e: f64) -> ErrorReport {
        let f = FieldErrors {
            l2: e,
            h1: e.sqrt(),
            superclose_h1: e,
            superconv_h1: e,

        };
        ErrorReport {
            scheme: "bdf2".into(),
            elem: "quad".into(),
            m,
            h: std::f64::consts::SQRT_2 / m as f64,
            tau,
            steps: 1,
            u: f,
            phi: f,
            combined_l2: e * std::f64::consts::SQRT_2,
        }
    }

    #[test]
    fn single_report_has_no_order_rows() {
        let t = render_order_table(&[report(8, 0.5, 1e-3)]);
        assert!(!t.contains("order"));
        assert!(t.contains("8x8"));
        assert!(t.contains("1.000e-3"));
    }

    #[test]
    fn spatial_orders() {
        let t = render_order_table(&[report(8, 0.5, 4e-3), report(16, 0.5, 1e-3)]);
        assert!(t.contains("2.00"));
        assert!(t.contains("1.00"));
        assert_eq!(t.matches("order").count(), 9);
    }

    #[test]
    fn temporal_columns() {
        let t = render_order_table(&[report(64, 0.1, 8e-3), report(64, 0.05, 1e-3)]);
        assert!(t.contains("tau=1.000e-1"));
        assert!(t.contains("3.00"));
    }
}
