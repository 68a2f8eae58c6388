//! Numerical quadrature over polytopes: composite Simpson on tensor
//! grids for axis boxes, midpoint rule with one Richardson step on
//! barycentric-type refinements for simplicial pieces.

use crate::error::{Error, Result};
use crate::rat::rat_to_f64;
use crate::ratgeom::RationalPolytope;

/// Uniform tensor grid over an axis box, including the endpoints.
#[derive(Debug, Clone)]
pub struct BoxGrid {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
    /// Nodes per axis (odd, at least 3).
    pub shape: Vec<usize>,
}

impl BoxGrid {
    pub fn new(p: &RationalPolytope, nodes_per_axis: usize) -> Result<Self> {
        let bounds = p
            .as_box()
            .ok_or_else(|| Error::InvalidInput("polytope is not an axis box".into()))?;
        let m = if nodes_per_axis % 2 == 0 {
            nodes_per_axis + 1
        } else {
            nodes_per_axis
        };
        if m < 3 {
            return Err(Error::InvalidInput("need at least 3 nodes per axis".into()));
        }
        Ok(BoxGrid {
            lo: bounds.iter().map(|(a, _)| rat_to_f64(a)).collect(),
            hi: bounds.iter().map(|(_, b)| rat_to_f64(b)).collect(),
            shape: vec![m; bounds.len()],
        })
    }

    pub fn dim(&self) -> usize {
        self.shape.len()
    }

    pub fn len(&self) -> usize {
        self.shape.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn step(&self, axis: usize) -> f64 {
        (self.hi[axis] - self.lo[axis]) / (self.shape[axis] - 1) as f64
    }

    /// Multi-index of a flat node index (row-major).
    pub fn unravel(&self, mut idx: usize) -> Vec<usize> {
        let mut out = vec![0; self.dim()];
        for axis in (0..self.dim()).rev() {
            out[axis] = idx % self.shape[axis];
            idx /= self.shape[axis];
        }
        out
    }

    pub fn ravel(&self, multi: &[usize]) -> usize {
        let mut idx = 0;
        for (axis, &i) in multi.iter().enumerate() {
            idx = idx * self.shape[axis] + i;
        }
        idx
    }

    pub fn node(&self, idx: usize) -> Vec<f64> {
        self.unravel(idx)
            .iter()
            .enumerate()
            .map(|(axis, &i)| self.lo[axis] + self.step(axis) * i as f64)
            .collect()
    }

    /// Composite-Simpson weight of a flat node.
    pub fn weight(&self, idx: usize) -> f64 {
        let multi = self.unravel(idx);
        let mut w = 1.0;
        for (axis, &i) in multi.iter().enumerate() {
            let m = self.shape[axis];
            let h = self.step(axis);
            let w1 = if i == 0 || i == m - 1 {
                1.0
            } else if i % 2 == 1 {
                4.0
            } else {
                2.0
            };
            w *= w1 * h / 3.0;
        }
        w
    }

    /// ∫ f over the box by composite Simpson.
    pub fn integrate(&self, f: impl Fn(&[f64]) -> f64) -> f64 {
        let mut total = 0.0;
        for idx in 0..self.len() {
            total += self.weight(idx) * f(&self.node(idx));
        }
        total
    }

    /// Evaluate a function on every node.
    pub fn sample(&self, f: impl Fn(&[f64]) -> f64) -> Vec<f64> {
        (0..self.len()).map(|i| f(&self.node(i))).collect()
    }
}

/// Midpoint rule over a refinement of the polytope's triangulation, with
/// one Richardson step between two refinement levels (error O(h⁴) for
/// smooth integrands on each simplex).
pub fn integrate_simplicial(
    p: &RationalPolytope,
    f: &dyn Fn(&[f64]) -> f64,
    levels: u32,
) -> f64 {
    let coarse = midpoint_sum(p, f, levels);
    let fine = midpoint_sum(p, f, levels + 1);
    fine + (fine - coarse) / 3.0
}

fn midpoint_sum(p: &RationalPolytope, f: &dyn Fn(&[f64]) -> f64, levels: u32) -> f64 {
    let n = p.dim();
    let mut total = 0.0;
    for s in p.simplices() {
        let verts: Vec<Vec<f64>> = s
            .iter()
            .map(|&i| p.vertices()[i].iter().map(rat_to_f64).collect())
            .collect();
        total += midpoint_simplex(&verts, f, levels, n);
    }
    total
}

fn midpoint_simplex(
    verts: &[Vec<f64>],
    f: &dyn Fn(&[f64]) -> f64,
    levels: u32,
    dim: usize,
) -> f64 {
    if levels == 0 {
        let c: Vec<f64> = (0..dim)
            .map(|j| verts.iter().map(|v| v[j]).sum::<f64>() / verts.len() as f64)
            .collect();
        return simplex_volume_f64(verts, dim) * f(&c);
    }
    match dim {
        1 => {
            let mid: Vec<f64> = vec![(verts[0][0] + verts[1][0]) / 2.0];
            midpoint_simplex(&[verts[0].clone(), mid.clone()], f, levels - 1, dim)
                + midpoint_simplex(&[mid, verts[1].clone()], f, levels - 1, dim)
        }
        2 => {
            let m01 = midpt(&verts[0], &verts[1]);
            let m02 = midpt(&verts[0], &verts[2]);
            let m12 = midpt(&verts[1], &verts[2]);
            let children = [
                vec![verts[0].clone(), m01.clone(), m02.clone()],
                vec![m01.clone(), verts[1].clone(), m12.clone()],
                vec![m02.clone(), m12.clone(), verts[2].clone()],
                vec![m01, m12, m02],
            ];
            children
                .iter()
                .map(|c| midpoint_simplex(c, f, levels - 1, dim))
                .sum()
        }
        _ => {
            // Refinement by barycentric split through the centroid: exact
            // coverage in any dimension, slower convergence than edgewise
            // subdivision but adequate for the tolerances used here.
            let c: Vec<f64> = (0..dim)
                .map(|j| verts.iter().map(|v| v[j]).sum::<f64>() / verts.len() as f64)
                .collect();
            let mut total = 0.0;
            for omit in 0..verts.len() {
                let mut child: Vec<Vec<f64>> = verts
                    .iter()
                    .enumerate()
                    .filter_map(|(i, v)| (i != omit).then(|| v.clone()))
                    .collect();
                child.push(c.clone());
                total += midpoint_simplex(&child, f, levels - 1, dim);
            }
            total
        }
    }
}

fn midpt(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| (x + y) / 2.0).collect()
}

fn simplex_volume_f64(verts: &[Vec<f64>], dim: usize) -> f64 {
    let mut m: Vec<Vec<f64>> = verts[1..]
        .iter()
        .map(|v| v.iter().zip(&verts[0]).map(|(a, b)| a - b).collect())
        .collect();
    // Gaussian elimination determinant.
    let mut det: f64 = 1.0;
    for col in 0..dim {
        let piv = (col..dim).max_by(|&a, &b| {
            m[a][col].abs().partial_cmp(&m[b][col].abs()).unwrap()
        });
        let piv = piv.unwrap();
        if m[piv][col] == 0.0 {
            return 0.0;
        }
        if piv != col {
            m.swap(piv, col);
            det = -det;
        }
        det *= m[col][col];
        for i in col + 1..dim {
            let factor = m[i][col] / m[col][col];
            for j in col..dim {
                m[i][j] -= factor * m[col][j];
            }
        }
    }
    let fact: f64 = (1..=dim).map(|i| i as f64).product();
    det.abs() / fact
}
