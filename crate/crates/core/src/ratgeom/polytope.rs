//! Rational polytopes with primitive inward facet normals, vertex/facet
//! cross-validation, Delzant classification and lattice-normalized facet
//! volumes.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rat::{
    clear_denominators, dot_rat, dot_rat_int, rat_i, rat_to_f64, LatticeVec, Rat, RatVec,
};
use crate::ratgeom::hull::cone_hull;
use crate::ratgeom::lp::{Cmp, LinearProgram, LpOutcome, Sense};
use crate::ratgeom::matrix::{int_kernel_basis, rat_det, rat_solve};

/// Facet `{x : ⟨normal, x⟩ + offset ≥ 0}` with a primitive integer inward
/// normal and the vertex indices saturating it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolytopeFacet {
    pub normal: LatticeVec,
    pub offset: Rat,
    pub vertices: Vec<usize>,
}

/// Bounded full-dimensional rational polytope.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPolytope {
    dim: usize,
    vertices: Vec<RatVec>,
    facets: Vec<PolytopeFacet>,
    /// Triangulation into vertex index tuples (placing order on the
    /// homogenization); covers the polytope with disjoint interiors.
    simplices: Vec<Vec<usize>>,
}

/// Vertex-level classification of a polytope.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DelzantClass {
    Delzant,
    Simplicial,
    Neither,
}

impl RationalPolytope {
    /// Canonical facet description of the convex hull of `points`.
    pub fn from_vertices(points: &[RatVec]) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidInput("no vertices provided".into()));
        }
        let n = points[0].len();
        for p in points {
            if p.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: p.len(),
                });
            }
        }
        // Homogenize each point p to the primitive ray along (p, 1).
        let rays: Vec<LatticeVec> = points
            .iter()
            .map(|p| {
                let mut h = p.clone();
                h.push(rat_i(1));
                clear_denominators(&h)
            })
            .collect();
        let hull = cone_hull(&rays).map_err(|e| match e {
            Error::NotFullDimensional => Error::NotFullDimensional,
            other => other,
        })?;
        // Dehomogenize extreme rays back to the vertex list.
        let mut vertices: Vec<RatVec> = Vec::with_capacity(hull.rays.len());
        for ray in &hull.rays {
            let h = ray[n];
            debug_assert!(h > 0, "homogenization height must be positive");
            let hr = rat_i(h);
            vertices.push(ray[..n].iter().map(|&x| rat_i(x) / &hr).collect());
        }
        let mut facets: Vec<PolytopeFacet> = Vec::with_capacity(hull.facets.len());
        for f in &hull.facets {
            let g = crate::rat::gcd_vec(&f.normal[..n]);
            if g == 0 {
                // Normal supported on the homogenizing coordinate only:
                // cannot happen for a cone over a bounded slice.
                return Err(Error::InvalidInput(
                    "homogenization produced a horizontal facet".into(),
                ));
            }
            let normal: LatticeVec = f.normal[..n].iter().map(|&x| x / g).collect();
            let offset = Rat::new(BigInt::from(f.normal[n]), BigInt::from(g));
            facets.push(PolytopeFacet {
                normal,
                offset,
                vertices: f.rays.clone(),
            });
        }
        facets.sort_by(|a, b| (&a.normal, &a.offset).cmp(&(&b.normal, &b.offset)));
        Ok(RationalPolytope {
            dim: n,
            vertices,
            facets,
            simplices: hull.simplices,
        })
    }

    /// Vertex enumeration from a facet description, then canonicalization
    /// through `from_vertices`.
    pub fn from_inequalities(halfspaces: &[(LatticeVec, Rat)]) -> Result<Self> {
        if halfspaces.is_empty() {
            return Err(Error::InvalidInput("no inequalities provided".into()));
        }
        let n = halfspaces[0].0.len();
        for (v, _) in halfspaces {
            if v.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: v.len(),
                });
            }
        }
        // Boundedness: no direction may satisfy all homogeneous inequalities.
        for j in 0..n {
            for sign in [1i64, -1] {
                let mut lp = LinearProgram::new(n);
                for (v, c) in halfspaces {
                    let coeffs: RatVec = v.iter().map(|&x| rat_i(x)).collect();
                    lp.constrain(coeffs, Cmp::Ge, -c.clone());
                }
                let mut obj = vec![Rat::zero(); n];
                obj[j] = rat_i(sign);
                match lp.solve(&obj, Sense::Maximize)? {
                    LpOutcome::Unbounded => return Err(Error::Unbounded),
                    LpOutcome::Infeasible => {
                        return Err(Error::InvalidInput("empty polytope".into()))
                    }
                    LpOutcome::Optimal { .. } => {}
                }
            }
        }
        // Enumerate candidate vertices over n-subsets of facets.
        let m = halfspaces.len();
        let mut candidates: Vec<RatVec> = Vec::new();
        let mut subset: Vec<usize> = (0..n).collect();
        loop {
            let a: Vec<RatVec> = subset
                .iter()
                .map(|&i| halfspaces[i].0.iter().map(|&x| rat_i(x)).collect())
                .collect();
            let b: RatVec = subset.iter().map(|&i| -halfspaces[i].1.clone()).collect();
            if let Some(x) = rat_solve(&a, &b) {
                let inside = halfspaces
                    .iter()
                    .all(|(v, c)| !(dot_rat_int(&x, v) + c).is_negative());
                if inside && !candidates.contains(&x) {
                    candidates.push(x);
                }
            }
            // Next combination.
            let mut i = n;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                if subset[i] != i + m - n {
                    subset[i] += 1;
                    for j in i + 1..n {
                        subset[j] = subset[j - 1] + 1;
                    }
                    break;
                }
                if i == 0 {
                    subset.clear();
                    break;
                }
            }
            if subset.is_empty() {
                break;
            }
        }
        if candidates.is_empty() {
            return Err(Error::InvalidInput("empty polytope".into()));
        }
        Self::from_vertices(&candidates)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[RatVec] {
        &self.vertices
    }

    pub fn facets(&self) -> &[PolytopeFacet] {
        &self.facets
    }

    /// Vertex index tuples of the deterministic triangulation.
    pub fn simplices(&self) -> &[Vec<usize>] {
        &self.simplices
    }

    /// Value of the affine function of facet `k` at `x`.
    pub fn facet_value(&self, k: usize, x: &[Rat]) -> Rat {
        dot_rat_int(x, &self.facets[k].normal) + &self.facets[k].offset
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        (0..self.facets.len()).all(|k| !self.facet_value(k, x).is_negative())
    }

    pub fn contains_strictly(&self, x: &[Rat]) -> bool {
        (0..self.facets.len()).all(|k| self.facet_value(k, x).is_positive())
    }

    /// Average of the vertices; interior for a full-dimensional polytope.
    pub fn centroid_of_vertices(&self) -> RatVec {
        let n = self.dim;
        let count = rat_i(self.vertices.len() as i64);
        (0..n)
            .map(|j| {
                let s: Rat = self.vertices.iter().map(|v| v[j].clone()).sum();
                s / &count
            })
            .collect()
    }

    /// Euclidean diameter (floating point).
    pub fn diameter(&self) -> f64 {
        let mut best = 0.0f64;
        for (i, a) in self.vertices.iter().enumerate() {
            for b in &self.vertices[i + 1..] {
                let d2: f64 = a
                    .iter()
                    .zip(b)
                    .map(|(x, y)| {
                        let d = rat_to_f64(x) - rat_to_f64(y);
                        d * d
                    })
                    .sum();
                best = best.max(d2.sqrt());
            }
        }
        best
    }

    /// Exact Lebesgue volume via the triangulation.
    pub fn volume(&self) -> Rat {
        let mut total = Rat::zero();
        for s in &self.simplices {
            total += self.simplex_volume(s);
        }
        total
    }

    fn simplex_volume(&self, simplex: &[usize]) -> Rat {
        let n = self.dim;
        debug_assert_eq!(simplex.len(), n + 1);
        let v0 = &self.vertices[simplex[0]];
        let rows: Vec<RatVec> = simplex[1..]
            .iter()
            .map(|&i| {
                self.vertices[i]
                    .iter()
                    .zip(v0)
                    .map(|(a, b)| a - b)
                    .collect()
            })
            .collect();
        let mut det = rat_det(&rows);
        if det.is_negative() {
            det = -det;
        }
        let mut fact = rat_i(1);
        for k in 2..=n as i64 {
            fact *= rat_i(k);
        }
        det / fact
    }

    /// The facet as a full-dimensional polytope in its lattice chart:
    /// returns `(basis, base_vertex, chart_polytope)` where `basis` spans
    /// the saturated lattice of the facet hyperplane and the chart sends
    /// `y` to `base_vertex + basis·y`. Lebesgue measure in the chart is
    /// the lattice-normalized facet measure. For 1-dimensional polytopes
    /// (facet = point) `chart_polytope` is `None`.
    pub fn facet_chart(
        &self,
        k: usize,
    ) -> Result<(Vec<LatticeVec>, RatVec, Option<RationalPolytope>)> {
        let f = &self.facets[k];
        let base = self.vertices[f.vertices[0]].clone();
        if self.dim == 1 {
            return Ok((Vec::new(), base, None));
        }
        let basis = int_kernel_basis(&[f.normal.clone()]);
        debug_assert_eq!(basis.len(), self.dim - 1);
        let basis_rat: Vec<RatVec> = basis
            .iter()
            .map(|b| b.iter().map(|&x| rat_i(x)).collect())
            .collect();
        let coords: Vec<RatVec> = f
            .vertices
            .iter()
            .map(|&vi| {
                let diff: RatVec = self.vertices[vi]
                    .iter()
                    .zip(&base)
                    .map(|(a, b)| a - b)
                    .collect();
                crate::ratgeom::matrix::coords_in_span(&basis_rat, &diff).ok_or_else(|| {
                    Error::InvalidInput("facet vertex outside facet hyperplane".into())
                })
            })
            .collect::<Result<_>>()?;
        let chart = RationalPolytope::from_vertices(&coords)?;
        Ok((basis, base, Some(chart)))
    }

    /// Lattice-normalized (d-1)-volume of facet `k`.
    pub fn facet_lattice_volume(&self, k: usize) -> Result<Rat> {
        let (_, _, chart) = self.facet_chart(k)?;
        Ok(match chart {
            None => rat_i(1),
            Some(p) => p.volume(),
        })
    }

    /// Sum of lattice-normalized facet volumes (the boundary measure of
    /// the polytope).
    pub fn lattice_perimeter(&self) -> Result<Rat> {
        let mut total = Rat::zero();
        for k in 0..self.facets.len() {
            total += self.facet_lattice_volume(k)?;
        }
        Ok(total)
    }

    /// Delzant / simplicial / neither classification by vertex normals.
    pub fn delzant_class(&self) -> DelzantClass {
        let n = self.dim;
        let mut simplicial = true;
        let mut unimodular = true;
        for (vi, _) in self.vertices.iter().enumerate() {
            let sat: Vec<usize> = (0..self.facets.len())
                .filter(|&k| self.facets[k].vertices.contains(&vi))
                .collect();
            if sat.len() != n {
                simplicial = false;
                unimodular = false;
                break;
            }
            let rows: Vec<LatticeVec> = sat.iter().map(|&k| self.facets[k].normal.clone()).collect();
            if crate::ratgeom::matrix::int_det(&rows).abs() != 1 {
                unimodular = false;
            }
        }
        if simplicial && unimodular {
            DelzantClass::Delzant
        } else if simplicial {
            DelzantClass::Simplicial
        } else {
            DelzantClass::Neither
        }
    }

    /// Per-axis bounds when the polytope is an axis box, i.e. every facet
    /// normal is ±e_i.
    pub fn as_box(&self) -> Option<Vec<(Rat, Rat)>> {
        let n = self.dim;
        let mut lo: Vec<Option<Rat>> = vec![None; n];
        let mut hi: Vec<Option<Rat>> = vec![None; n];
        for f in &self.facets {
            let nz: Vec<usize> = (0..n).filter(|&j| f.normal[j] != 0).collect();
            if nz.len() != 1 {
                return None;
            }
            let j = nz[0];
            match f.normal[j] {
                1 => lo[j] = Some(-f.offset.clone()),
                -1 => hi[j] = Some(f.offset.clone()),
                _ => return None,
            }
        }
        let mut out = Vec::with_capacity(n);
        for j in 0..n {
            out.push((lo[j].clone()?, hi[j].clone()?));
        }
        Some(out)
    }
}

/// The affine function `x ↦ ⟨coeffs, x⟩ + constant` used throughout the
/// integration and test-configuration layers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineForm {
    pub coeffs: RatVec,
    pub constant: Rat,
}

impl AffineForm {
    pub fn new(coeffs: RatVec, constant: Rat) -> Self {
        Self { coeffs, constant }
    }

    pub fn constant_form(dim: usize, value: Rat) -> Self {
        Self {
            coeffs: vec![Rat::zero(); dim],
            constant: value,
        }
    }

    pub fn eval(&self, x: &[Rat]) -> Rat {
        dot_rat(&self.coeffs, x) + &self.constant
    }

    pub fn eval_f64(&self, x: &[f64]) -> f64 {
        self.coeffs
            .iter()
            .zip(x)
            .map(|(c, xi)| rat_to_f64(c) * xi)
            .sum::<f64>()
            + rat_to_f64(&self.constant)
    }

    /// Restrict to a facet chart `y ↦ base + basis·y`.
    pub fn restrict(&self, basis: &[LatticeVec], base: &[Rat]) -> AffineForm {
        let coeffs: RatVec = basis
            .iter()
            .map(|b| dot_rat_int(&self.coeffs, b))
            .collect();
        AffineForm {
            coeffs,
            constant: self.eval(base),
        }
    }
}
