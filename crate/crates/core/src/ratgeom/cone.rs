//! Pointed rational convex cones: generator/inequality representations,
//! duality, and deterministic simplicial decomposition with lattice
//! normalization of faces.

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::rat::{dot_int, dot_rat_int, LatticeVec, Rat};
use crate::ratgeom::hull::{cone_hull, ConeHull};
use crate::ratgeom::matrix::{int_coords_in_basis, saturated_span_basis};

/// A pointed, full-dimensional rational convex cone, canonicalized so that
/// `generators` are the primitive extreme rays (lexicographically sorted)
/// and `inequalities` the primitive inward facet normals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvexCone {
    dim: usize,
    generators: Vec<LatticeVec>,
    inequalities: Vec<LatticeVec>,
    /// Facet ray-index sets, parallel to `inequalities`.
    facet_rays: Vec<Vec<usize>>,
    /// Placing triangulation from the hull, kept for determinism.
    simplices: Vec<Vec<usize>>,
}

/// One simplicial cone of a decomposition: its generator tuple and the
/// absolute determinant of the generator matrix relative to the ambient
/// (or face) lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialCone {
    pub generators: Vec<LatticeVec>,
    pub det: i128,
}

/// Deterministic simplicial decomposition of a cone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialDecomposition {
    pub simplices: Vec<SimplicialCone>,
}

impl SimplicialDecomposition {
    /// Σ |det| over the decomposition.
    pub fn total_det(&self) -> i128 {
        self.simplices.iter().map(|s| s.det).sum()
    }
}

impl ConvexCone {
    /// Build from generators (hull canonicalization).
    pub fn from_generators(rays: &[LatticeVec]) -> Result<Self> {
        let hull = cone_hull(rays)?;
        Ok(Self::from_hull(hull))
    }

    /// Build from inward inequality normals. The generators of
    /// `{x : ⟨n_k, x⟩ ≥ 0}` are the facet normals of the cone generated by
    /// the `n_k`, and the irredundant inequalities are its extreme rays.
    pub fn from_inequalities(normals: &[LatticeVec]) -> Result<Self> {
        let dual_hull = cone_hull(normals)?;
        let gens: Vec<LatticeVec> = dual_hull.facets.iter().map(|f| f.normal.clone()).collect();
        Self::from_generators(&gens)
    }

    fn from_hull(hull: ConeHull) -> Self {
        let mut order: Vec<usize> = (0..hull.facets.len()).collect();
        order.sort_by(|&a, &b| hull.facets[a].normal.cmp(&hull.facets[b].normal));
        let inequalities = order
            .iter()
            .map(|&i| hull.facets[i].normal.clone())
            .collect();
        let facet_rays = order.iter().map(|&i| hull.facets[i].rays.clone()).collect();
        ConvexCone {
            dim: hull.dim,
            generators: hull.rays,
            inequalities,
            facet_rays,
            simplices: hull.simplices,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[LatticeVec] {
        &self.generators
    }

    pub fn inequalities(&self) -> &[LatticeVec] {
        &self.inequalities
    }

    /// Ray index sets of the facets, parallel to `inequalities`.
    pub fn facet_ray_indices(&self) -> &[Vec<usize>] {
        &self.facet_rays
    }

    /// The dual cone. For a pointed full-dimensional cone this swaps the
    /// roles of generators and inequality normals.
    pub fn dual(&self) -> ConvexCone {
        ConvexCone::from_generators(&self.inequalities)
            .expect("dual of a pointed full-dimensional cone is again one")
    }

    /// Exact membership of a rational point.
    pub fn contains(&self, x: &[Rat]) -> Result<bool> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: x.len(),
            });
        }
        Ok(self
            .inequalities
            .iter()
            .all(|n| !dot_rat_int(x, n).is_negative()))
    }

    /// Deterministic triangulation into simplicial cones with ambient
    /// lattice determinants.
    pub fn triangulate(&self) -> SimplicialDecomposition {
        let simplices = self
            .simplices
            .iter()
            .map(|s| {
                let generators: Vec<LatticeVec> =
                    s.iter().map(|&i| self.generators[i].clone()).collect();
                let det = crate::ratgeom::matrix::int_det(&generators).abs();
                SimplicialCone { generators, det }
            })
            .collect();
        SimplicialDecomposition { simplices }
    }

    /// Triangulate the facet with the given index inside its own face
    /// lattice (Hermite-normal-form basis of the saturated hyperplane
    /// lattice). Generators are reported in ambient coordinates while the
    /// determinants refer to the face lattice.
    pub fn triangulate_facet(&self, facet: usize) -> Result<SimplicialDecomposition> {
        let rays: Vec<LatticeVec> = self.facet_rays[facet]
            .iter()
            .map(|&i| self.generators[i].clone())
            .collect();
        triangulate_in_face_lattice(&rays)
    }

    /// Facet count.
    pub fn num_facets(&self) -> usize {
        self.inequalities.len()
    }
}

/// Triangulate a (possibly lower-dimensional) cone relative to the
/// saturated lattice of its linear span. Returns ambient generator tuples
/// with face-lattice determinants.
pub fn triangulate_in_face_lattice(rays: &[LatticeVec]) -> Result<SimplicialDecomposition> {
    if rays.is_empty() {
        return Err(Error::InvalidInput("empty ray list".into()));
    }
    let basis = saturated_span_basis(rays);
    let r = basis.len();
    let coords: Vec<LatticeVec> = rays
        .iter()
        .map(|ray| {
            int_coords_in_basis(&basis, ray).ok_or_else(|| {
                Error::InvalidInput("ray not in saturated span lattice".into())
            })
        })
        .collect::<Result<_>>()?;
    if r == rays[0].len() {
        // Full-dimensional: plain hull.
        let hull = cone_hull(rays)?;
        return Ok(ConvexCone::from_hull(hull).triangulate());
    }
    let hull = cone_hull(&coords)?;
    let dec = ConvexCone::from_hull(hull);
    // Map generator tuples back to ambient vectors.
    let back = |v: &LatticeVec| -> LatticeVec {
        let d = basis[0].len();
        let mut out = vec![0i64; d];
        for (c, b) in v.iter().zip(&basis) {
            for (o, &x) in out.iter_mut().zip(b) {
                *o += c * x;
            }
        }
        out
    };
    let simplices = dec
        .triangulate()
        .simplices
        .into_iter()
        .map(|s| SimplicialCone {
            generators: s.generators.iter().map(back).collect(),
            det: s.det,
        })
        .collect();
    Ok(SimplicialDecomposition { simplices })
}

/// ⟨w, ξ⟩ for an integer lattice vector and a rational covector.
pub fn pair(w: &[i64], xi: &[Rat]) -> Rat {
    dot_rat_int(xi, w)
}

/// Integer pairing helper exposed for membership-style checks.
pub fn pair_int(w: &LatticeVec, xi: &LatticeVec) -> i128 {
    dot_int(w, xi)
}
