//! The Guillemin symplectic potential of a Delzant polytope, its
//! inverse-Hessian matrix H (the toric metric data) and the Abreu scalar
//! curvature S = -Σ ∂²H^{ij}/∂x_i∂x_j.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::rat::{rat_to_f64, RatVec};
use crate::ratgeom::RationalPolytope;

/// Evaluation rule for u(x) = ½ Σ_k ℓ_k(x) log ℓ_k(x) and the associated
/// metric matrix H = (Hess u)^{-1}.
#[derive(Debug, Clone)]
pub struct SymplecticPotential {
    dim: usize,
    /// Facet data (normal, offset) as floats.
    facets: Vec<(Vec<f64>, f64)>,
    /// Per-axis (lo, hi) when the polytope is a box: H is then diagonal
    /// with closed-form entries.
    box_bounds: Option<Vec<(f64, f64)>>,
    diameter: f64,
}

impl SymplecticPotential {
    pub fn new(p: &RationalPolytope) -> Self {
        let facets = p
            .facets()
            .iter()
            .map(|f| {
                (
                    f.normal.iter().map(|&x| x as f64).collect(),
                    rat_to_f64(&f.offset),
                )
            })
            .collect();
        let box_bounds = p.as_box().map(|b| {
            b.iter()
                .map(|(lo, hi)| (rat_to_f64(lo), rat_to_f64(hi)))
                .collect()
        });
        SymplecticPotential {
            dim: p.dim(),
            facets,
            box_bounds,
            diameter: p.diameter(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_box(&self) -> bool {
        self.box_bounds.is_some()
    }

    fn ell(&self, k: usize, x: &[f64]) -> f64 {
        let (normal, offset) = &self.facets[k];
        normal.iter().zip(x).map(|(n, xi)| n * xi).sum::<f64>() + offset
    }

    /// Euclidean distance to the boundary (min over facets of ℓ_k/|v_k|).
    pub fn boundary_distance(&self, x: &[f64]) -> f64 {
        self.facets
            .iter()
            .enumerate()
            .map(|(k, (normal, _))| {
                let norm: f64 = normal.iter().map(|n| n * n).sum::<f64>().sqrt();
                self.ell(k, x) / norm
            })
            .fold(f64::INFINITY, f64::min)
    }

    /// Potential value u(x) at a strictly interior point.
    pub fn value(&self, x: &[f64]) -> f64 {
        0.5 * (0..self.facets.len())
            .map(|k| {
                let l = self.ell(k, x);
                l * l.ln()
            })
            .sum::<f64>()
    }

    /// Hessian of u at an interior point.
    pub fn hessian(&self, x: &[f64]) -> DMatrix<f64> {
        let n = self.dim;
        let mut h = DMatrix::zeros(n, n);
        for (normal, offset) in &self.facets {
            let l: f64 = normal.iter().zip(x).map(|(a, b)| a * b).sum::<f64>() + offset;
            for i in 0..n {
                for j in 0..n {
                    h[(i, j)] += 0.5 * normal[i] * normal[j] / l;
                }
            }
        }
        h
    }

    /// The metric matrix H(x) = (Hess u)^{-1}; positive-definite on the
    /// interior, degenerating conormally at the boundary.
    pub fn h_matrix(&self, x: &[f64]) -> Result<DMatrix<f64>> {
        if let Some(bounds) = &self.box_bounds {
            let n = self.dim;
            let mut h = DMatrix::zeros(n, n);
            for (i, (lo, hi)) in bounds.iter().enumerate() {
                let alpha = hi - lo;
                let t = x[i] - lo;
                h[(i, i)] = 2.0 * t * (alpha - t) / alpha;
            }
            return Ok(h);
        }
        self.hessian(x)
            .try_inverse()
            .ok_or_else(|| Error::DomainError("Hessian is singular at this point".into()))
    }

    /// Abreu scalar curvature S(x) = -Σ_{ij} ∂²H^{ij}/∂x_i∂x_j.
    ///
    /// Boxes are handled symbolically (S = Σ_i 4/α_i); otherwise H is
    /// differentiated by fourth-order centered stencils whose step
    /// adapts to the boundary distance.
    pub fn abreu_scalar(&self, x: &[f64]) -> Result<f64> {
        let dist = self.boundary_distance(x);
        if dist <= 0.0 {
            return Err(Error::DomainError(
                "Abreu curvature needs a strictly interior point".into(),
            ));
        }
        if let Some(bounds) = &self.box_bounds {
            return Ok(bounds.iter().map(|(lo, hi)| 4.0 / (hi - lo)).sum());
        }
        let n = self.dim;
        let h = (1e-4 * self.diameter).min(dist / 3.0);
        let entry = |y: &[f64], i: usize, j: usize| -> Result<f64> {
            Ok(self.h_matrix(y)?[(i, j)])
        };
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                s -= second_partial(x, i, j, h, &|y| entry(y, i, j))?;
            }
        }
        Ok(s)
    }
}

/// Fourth-order ∂²f/∂x_i∂x_j at `x` with step `h`.
fn second_partial(
    x: &[f64],
    i: usize,
    j: usize,
    h: f64,
    f: &dyn Fn(&[f64]) -> Result<f64>,
) -> Result<f64> {
    let shift = |di: f64, dj: f64| -> Vec<f64> {
        let mut y = x.to_vec();
        y[i] += di;
        if i == j {
            // dj accumulates on the same coordinate below.
        } else {
            y[j] += dj;
        }
        y
    };
    if i == j {
        let f2p = f(&shift(2.0 * h, 0.0))?;
        let f1p = f(&shift(h, 0.0))?;
        let f0 = f(x)?;
        let f1m = f(&shift(-h, 0.0))?;
        let f2m = f(&shift(-2.0 * h, 0.0))?;
        Ok((-f2p + 16.0 * f1p - 30.0 * f0 + 16.0 * f1m - f2m) / (12.0 * h * h))
    } else {
        let cross = |hh: f64| -> Result<f64> {
            let fpp = f(&shift(hh, hh))?;
            let fmm = f(&shift(-hh, -hh))?;
            let fpm = f(&shift(hh, -hh))?;
            let fmp = f(&shift(-hh, hh))?;
            Ok((fpp + fmm - fpm - fmp) / (4.0 * hh * hh))
        };
        // Richardson on the second-order cross stencil.
        let c1 = cross(h)?;
        let c2 = cross(h / 2.0)?;
        Ok((4.0 * c2 - c1) / 3.0)
    }
}

/// Pointwise Abreu scalar curvature of the Guillemin metric.
pub fn abreu_scalar(p: &RationalPolytope, x: &[RatVec]) -> Result<f64> {
    let xf: Vec<f64> = x.iter().flat_map(|v| v.iter().map(rat_to_f64)).collect();
    SymplecticPotential::new(p).abreu_scalar(&xf)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat_i;

    fn poly(points: &[&[i64]]) -> RationalPolytope {
        let pts: Vec<RatVec> = points
            .iter()
            .map(|p| p.iter().map(|&x| rat_i(x)).collect())
            .collect();
        RationalPolytope::from_vertices(&pts).unwrap()
    }

    #[test]
    fn interval_curvature() {
        let p = poly(&[&[0], &[2]]);
        let sp = SymplecticPotential::new(&p);
        for x in [0.3, 1.0, 1.7] {
            assert!((sp.abreu_scalar(&[x]).unwrap() - 2.0).abs() < 1e-12);
        }
        // H = x(2-x) on [0,2].
        let h = sp.h_matrix(&[0.5]).unwrap();
        assert!((h[(0, 0)] - 0.75).abs() < 1e-12);
    }

    #[test]
    fn box_curvature_additivity() {
        let p = poly(&[&[0, 0], &[2, 0], &[2, 2], &[0, 2]]);
        let sp = SymplecticPotential::new(&p);
        assert!((sp.abreu_scalar(&[0.7, 1.3]).unwrap() - 4.0).abs() < 1e-12);
    }

    #[test]
    fn simplex_curvature_is_constant_six() {
        // conv{(0,0),(2,0),(0,2)} carries the constant-curvature metric
        // with S = 6 (= sbar).
        let p = poly(&[&[0, 0], &[2, 0], &[0, 2]]);
        let sp = SymplecticPotential::new(&p);
        for pt in [[0.6667, 0.6667], [0.3, 0.4], [1.0, 0.5], [0.2, 1.4]] {
            let s = sp.abreu_scalar(&pt).unwrap();
            assert!((s - 6.0).abs() < 1e-6, "S({pt:?}) = {s}");
        }
    }

    #[test]
    fn hirzebruch_curvature_finite() {
        let p = poly(&[&[0, 0], &[2, 0], &[1, 1], &[0, 1]]);
        let sp = SymplecticPotential::new(&p);
        let s = sp.abreu_scalar(&[0.8, 0.4]).unwrap();
        assert!(s.is_finite());
        // The Guillemin metric on the first Hirzebruch surface is not
        // cscK; values just need to be stable.
        let s2 = sp.abreu_scalar(&[0.8, 0.4]).unwrap();
        assert_eq!(s, s2);
    }

    #[test]
    fn boundary_rejected() {
        let p = poly(&[&[0], &[2]]);
        let sp = SymplecticPotential::new(&p);
        assert!(sp.abreu_scalar(&[0.0]).is_err());
        assert!(sp.abreu_scalar(&[2.5]).is_err());
    }

    #[test]
    fn hessian_inverse_consistency() {
        let p = poly(&[&[0, 0], &[2, 0], &[1, 1], &[0, 1]]);
        let sp = SymplecticPotential::new(&p);
        let x = [0.5, 0.25];
        let h = sp.h_matrix(&x).unwrap();
        let hess = sp.hessian(&x);
        let prod = &h * &hess;
        for i in 0..2 {
            for j in 0..2 {
                let expect = f64::from(u8::from(i == j));
                assert!((prod[(i, j)] - expect).abs() < 1e-10);
            }
        }
    }
}
