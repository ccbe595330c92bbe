//! Quadrature on the reference elements.
//!
//! Reference quad is `[-1, 1]^2` (measure 4); reference triangle has vertices
//! `(0,0), (1,0), (0,1)` (measure 1/2).

use crate::mesh::ElemKind;

#[derive(Debug, Clone)]
pub struct QuadRule {
    pub points: Vec<[f64; 2]>,
    pub weights: Vec<f64>,
    /// Highest total polynomial degree integrated exactly.
    pub degree: usize,
}

impl QuadRule {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = ([f64; 2], f64)> + '_ {
        self.points.iter().copied().zip(self.weights.iter().copied())
    }

    /// Rule used for matrix and load assembly (degree >= 4).
    pub fn assembly(kind: ElemKind) -> Self {
        match kind {
            ElemKind::Quad => gauss_tensor(3),
            ElemKind::Triangle => triangle_degree5(),
        }
    }

    /// Rule used for error norms (degree >= 6).
    pub fn error_norm(kind: ElemKind) -> Self {
        match kind {
            ElemKind::Quad => gauss_tensor(4),
            ElemKind::Triangle => triangle_degree6(),
        }
    }
}

fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    match n {
        1 => (vec![0.0], vec![2.0]),
        2 => {
            let a = 1.0 / 3f64.sqrt();
            (vec![-a, a], vec![1.0, 1.0])
        }
        3 => {
            let a = (3.0f64 / 5.0).sqrt();
            (vec![-a, 0.0, a], vec![5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0])
        }
        4 => {
            let r = 2.0 / 7.0 * (6.0f64 / 5.0).sqrt();
            let inner = (3.0 / 7.0 - r).sqrt();
            let outer = (3.0 / 7.0 + r).sqrt();
            let s30 = 30f64.sqrt();
            let wi = (18.0 + s30) / 36.0;
            let wo = (18.0 - s30) / 36.0;
            (vec![-outer, -inner, inner, outer], vec![wo, wi, wi, wo])
        }
        _ => panic!("Gauss-Legendre rule with {n} points not tabulated"),
    }
}

/// `n x n` tensor Gauss rule on `[-1, 1]^2`, exact for `Q_{2n-1}`.
pub fn gauss_tensor(n: usize) -> QuadRule {
    let (x, w) = gauss_legendre(n);
    let mut points = Vec::with_capacity(n * n);
    let mut weights = Vec::with_capacity(n * n);
    for j in 0..n {
        for i in 0..n {
            points.push([x[i], x[j]]);
            weights.push(w[i] * w[j]);
        }
    }
    QuadRule {
        points,
        weights,
        degree: 2 * n - 1,
    }
}

fn push_orbit3(points: &mut Vec<[f64; 2]>, weights: &mut Vec<f64>, a: f64, w: f64) {
    let b = 1.0 - 2.0 * a;
    for p in [[a, a], [b, a], [a, b]] {
        points.push(p);
        weights.push(w);
    }
}

/// 7-point degree-5 rule (Radon).
pub fn triangle_degree5() -> QuadRule {
    let s15 = 15f64.sqrt();
    let mut points = vec![[1.0 / 3.0, 1.0 / 3.0]];
    let mut weights = vec![9.0 / 80.0];
    push_orbit3(&mut points, &mut weights, (6.0 - s15) / 21.0, (155.0 - s15) / 2400.0);
    push_orbit3(&mut points, &mut weights, (6.0 + s15) / 21.0, (155.0 + s15) / 2400.0);
    QuadRule {
        points,
        weights,
        degree: 5,
    }
}

/// 12-point degree-6 rule (Dunavant).
pub fn triangle_degree6() -> QuadRule {
    let mut points = Vec::with_capacity(12);
    let mut weights = Vec::with_capacity(12);
    push_orbit3(
        &mut points,
        &mut weights,
        0.063_089_014_491_502_228_340_331_602_870_819,
        0.5 * 0.050_844_906_370_206_816_920_936_809_106_869,
    );
    push_orbit3(
        &mut points,
        &mut weights,
        0.249_286_745_170_910_421_291_638_553_107_02,
        0.5 * 0.116_786_275_726_379_366_025_289_611_385_58,
    );
    let a = 0.053_145_049_844_816_947_353_249_671_631_398;
    let b = 0.310_352_451_033_784_405_416_607_733_956_55;
    let c = 1.0 - a - b;
    let w = 0.5 * 0.082_851_075_618_373_575_193_553_456_420_442;
    for p in [[a, b], [b, a], [a, c], [c, a], [b, c], [c, b]] {
        points.push(p);
        weights.push(w);
    }
    QuadRule {
        points,
        weights,
        degree: 6,
    }
}
