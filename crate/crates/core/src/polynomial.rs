use std::fmt;

use nalgebra::{Matrix4, Vector4};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `c0 + c1 t + c2 t² + c3 t³`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CubicPolynomial {
    pub coeffs: [f64; 4],
}

const BINOM3: [f64; 4] = [1.0, 3.0, 3.0, 1.0];

impl CubicPolynomial {
    pub fn new(coeffs: [f64; 4]) -> Self {
        CubicPolynomial { coeffs }
    }

    pub fn constant(c: f64) -> Self {
        Self::new([c, 0.0, 0.0, 0.0])
    }

    /// From the form `Σ_k C(3,k) t^k (1-t)^(3-k) b_k`: the natural shape of
    /// the volume of `t·A + (1-t)·B`, where `b_3 = V(A)` and `b_0 = V(B)`.
    pub fn from_bernstein(b: [f64; 4]) -> Self {
        // t^k (1-t)^(3-k) = Σ_j C(3-k, j-k) (-1)^(j-k) t^j
        let mut c = [0.0; 4];
        for k in 0..4 {
            for (j, cj) in c.iter_mut().enumerate().skip(k) {
                let sign = if (j - k) % 2 == 0 { 1.0 } else { -1.0 };
                *cj += BINOM3[k] * binom(3 - k, j - k) * sign * b[k];
            }
        }
        Self::new(c)
    }

    /// Inverse of [`from_bernstein`](Self::from_bernstein):
    /// `b_k = Σ_{j<=k} C(k,j)/C(3,j) c_j`.
    pub fn to_bernstein(&self) -> [f64; 4] {
        let mut b = [0.0; 4];
        for (k, bk) in b.iter_mut().enumerate() {
            *bk = (0..=k)
                .map(|j| binom(k, j) / BINOM3[j] * self.coeffs[j])
                .sum();
        }
        b
    }

    /// Exact interpolation through four distinct nodes.
    pub fn fit(nodes: [f64; 4], values: [f64; 4]) -> Result<Self> {
        let m = Matrix4::from_fn(|i, j| nodes[i].powi(j as i32));
        let c = m
            .lu()
            .solve(&Vector4::from(values))
            .ok_or_else(|| Error::invalid("fit nodes must be distinct"))?;
        Ok(Self::new([c[0], c[1], c[2], c[3]]))
    }

    pub fn eval(&self, t: f64) -> f64 {
        let [c0, c1, c2, c3] = self.coeffs;
        ((c3 * t + c2) * t + c1) * t + c0
    }

    /// Coefficients `[d0, d1, d2]` of the derivative.
    pub fn derivative(&self) -> [f64; 3] {
        let [_, c1, c2, c3] = self.coeffs;
        [c1, 2.0 * c2, 3.0 * c3]
    }

    pub fn eval_derivative(&self, t: f64) -> f64 {
        let [d0, d1, d2] = self.derivative();
        (d2 * t + d1) * t + d0
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::new(self.coeffs.map(|c| c * s))
    }
}

fn binom(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

impl fmt::Display for CubicPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [c0, c1, c2, c3] = self.coeffs;
        write!(f, "{c0} + {c1}·t + {c2}·t² + {c3}·t³")
    }
}
