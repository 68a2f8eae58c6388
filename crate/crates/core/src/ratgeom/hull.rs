//! Incremental (beneath-beyond) hull for pointed rational cones, with a
//! deterministic placing triangulation as a by-product.
//!
//! Rays are primitivized, deduplicated and sorted lexicographically; the
//! initial simplicial cone is built greedily from the first linearly
//! independent rays and the remaining rays are placed in sorted order.
//! The boundary is maintained as a simplicial complex; coplanar boundary
//! simplices are merged into facets at the end. Identical input therefore
//! produces bit-identical output.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::rat::{dot_int, gcd_vec, primitivize, LatticeVec};
use crate::ratgeom::lp::{Cmp, LinearProgram};
use crate::ratgeom::matrix::{int_kernel_basis, int_rank};
use crate::rat::{rat_i, Rat};

/// A facet of a pointed cone: primitive inward normal plus the extreme
/// rays lying on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeFacet {
    pub normal: LatticeVec,
    pub rays: Vec<usize>,
}

/// Hull of a pointed full-dimensional cone.
#[derive(Debug, Clone)]
pub struct ConeHull {
    pub dim: usize,
    /// Extreme rays, primitive, lexicographically sorted.
    pub rays: Vec<LatticeVec>,
    /// Facets with primitive inward normals, sorted by normal.
    pub facets: Vec<ConeFacet>,
    /// Placing triangulation: tuples of `dim` ray indices whose simplicial
    /// cones cover the hull with disjoint interiors.
    pub simplices: Vec<Vec<usize>>,
}

/// Boundary simplex during construction.
#[derive(Debug, Clone)]
struct BSimplex {
    rays: Vec<usize>,
    normal: LatticeVec,
}

/// True when a strictly positive covector exists on all of `rays`,
/// i.e. the generated cone is pointed.
pub fn is_pointed(rays: &[LatticeVec]) -> Result<bool> {
    if rays.is_empty() {
        return Ok(true);
    }
    let d = rays[0].len();
    let mut lp = LinearProgram::new(d);
    for r in rays {
        let coeffs = r.iter().map(|&x| rat_i(x)).collect();
        lp.constrain(coeffs, Cmp::Ge, rat_i(1));
    }
    Ok(lp.feasible_point()?.is_some())
}

pub fn cone_hull(input_rays: &[LatticeVec]) -> Result<ConeHull> {
    if input_rays.is_empty() {
        return Err(Error::InvalidInput("no generators".into()));
    }
    let d = input_rays[0].len();
    for r in input_rays {
        if r.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: r.len(),
            });
        }
    }
    let mut rays: Vec<LatticeVec> = input_rays
        .iter()
        .map(|r| primitivize(r))
        .filter(|r| gcd_vec(r) != 0)
        .collect();
    rays.sort();
    rays.dedup();
    if rays.is_empty() {
        return Err(Error::InvalidInput("all generators are zero".into()));
    }
    if int_rank(&rays) < d {
        return Err(Error::NotFullDimensional);
    }
    if !is_pointed(&rays)? {
        return Err(Error::NotPointed);
    }
    if d == 1 {
        // Single ray (+1) or (-1); the facet is the apex inequality.
        let ray = rays[0].clone();
        return Ok(ConeHull {
            dim: 1,
            rays: vec![ray.clone()],
            facets: vec![ConeFacet {
                normal: ray,
                rays: vec![],
            }],
            simplices: vec![vec![0]],
        });
    }

    // Greedy initial independent subset in sorted order.
    let mut init: Vec<usize> = Vec::with_capacity(d);
    let mut chosen: Vec<LatticeVec> = Vec::new();
    for (i, r) in rays.iter().enumerate() {
        chosen.push(r.clone());
        if int_rank(&chosen) == chosen.len() {
            init.push(i);
        } else {
            chosen.pop();
        }
        if init.len() == d {
            break;
        }
    }
    debug_assert_eq!(init.len(), d);

    let mut inserted: Vec<usize> = init.clone();
    let mut interior: Vec<i64> = vec![0; d];
    for &i in &init {
        add_assign(&mut interior, &rays[i]);
    }

    // Facets of the initial simplicial cone.
    let mut boundary: Vec<BSimplex> = Vec::new();
    for omit in 0..d {
        let face: Vec<usize> = init
            .iter()
            .enumerate()
            .filter_map(|(k, &i)| (k != omit).then_some(i))
            .collect();
        let normal = hyperplane_normal(&rays, &face, &interior)?;
        boundary.push(BSimplex { rays: face, normal });
    }
    let mut simplices: Vec<Vec<usize>> = vec![init.clone()];

    for (idx, ray) in rays.iter().enumerate() {
        if inserted.contains(&idx) {
            continue;
        }
        let vis: Vec<bool> = boundary
            .iter()
            .map(|f| dot_int(&f.normal, ray) < 0)
            .collect();
        if vis.iter().all(|&v| !v) {
            // Inside the current hull: the ray is not extreme.
            continue;
        }
        inserted.push(idx);
        add_assign(&mut interior, ray);
        // Horizon ridges: (d-2)-subsets contained in exactly one visible
        // boundary simplex.
        let mut ridge_count: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        for (f, b) in boundary.iter().enumerate() {
            if vis[f] {
                for omit in 0..b.rays.len() {
                    let mut ridge = b.rays.clone();
                    ridge.remove(omit);
                    *ridge_count.entry(ridge).or_insert(0) += 1;
                }
            }
        }
        let mut new_boundary: Vec<BSimplex> = Vec::new();
        for (f, b) in boundary.iter().enumerate() {
            if vis[f] {
                let mut cell = b.rays.clone();
                cell.push(idx);
                cell.sort_unstable();
                simplices.push(cell);
            } else {
                new_boundary.push(b.clone());
            }
        }
        for (ridge, count) in ridge_count {
            if count == 1 {
                let mut face = ridge;
                face.push(idx);
                face.sort_unstable();
                let normal = hyperplane_normal(&rays, &face, &interior)?;
                new_boundary.push(BSimplex { rays: face, normal });
            }
        }
        boundary = new_boundary;
    }

    // Re-index onto the extreme rays only.
    inserted.sort_unstable();
    let extreme: Vec<LatticeVec> = inserted.iter().map(|&i| rays[i].clone()).collect();
    let reindex: BTreeMap<usize, usize> = inserted
        .iter()
        .enumerate()
        .map(|(new, &old)| (old, new))
        .collect();
    let remap = |v: &[usize]| -> Vec<usize> {
        let mut out: Vec<usize> = v.iter().map(|i| reindex[i]).collect();
        out.sort_unstable();
        out
    };
    let simplices: Vec<Vec<usize>> = simplices.iter().map(|s| remap(s)).collect();

    // Merge coplanar boundary simplices into facets, attaching every
    // extreme ray on the hyperplane.
    let mut by_normal: BTreeMap<LatticeVec, Vec<usize>> = BTreeMap::new();
    for b in &boundary {
        by_normal.entry(b.normal.clone()).or_default();
    }
    let mut facets: Vec<ConeFacet> = Vec::new();
    for (normal, _) in by_normal {
        let on: Vec<usize> = extreme
            .iter()
            .enumerate()
            .filter_map(|(i, r)| (dot_int(&normal, r) == 0).then_some(i))
            .collect();
        // Consistency: every extreme ray must be on the nonnegative side.
        if extreme.iter().any(|r| dot_int(&normal, r) < 0) {
            return Err(Error::InvalidInput(
                "hull construction produced an inconsistent facet".into(),
            ));
        }
        facets.push(ConeFacet { normal, rays: on });
    }

    Ok(ConeHull {
        dim: d,
        rays: extreme,
        facets,
        simplices,
    })
}

fn add_assign(acc: &mut [i64], v: &[i64]) {
    for (a, &x) in acc.iter_mut().zip(v) {
        *a = a.checked_add(x).expect("interior reference overflow");
    }
}

/// Primitive normal of the hyperplane spanned by `face` (d-1 independent
/// rays), oriented to be nonnegative on `reference`.
fn hyperplane_normal(
    rays: &[LatticeVec],
    face: &[usize],
    reference: &[i64],
) -> Result<LatticeVec> {
    let mat: Vec<LatticeVec> = face.iter().map(|&i| rays[i].clone()).collect();
    let kernel = int_kernel_basis(&mat);
    if kernel.len() != 1 {
        return Err(Error::InvalidInput(
            "degenerate ridge while building hull".into(),
        ));
    }
    let mut n = primitivize(&kernel[0]);
    let side = dot_int(&n, reference);
    if side < 0 {
        for x in n.iter_mut() {
            *x = -*x;
        }
    } else if side == 0 {
        return Err(Error::InvalidInput(
            "interior reference lies on a candidate facet".into(),
        ));
    }
    Ok(n)
}

impl ConeHull {
    /// |det| of the generator matrix of each triangulation simplex.
    pub fn simplex_det(&self, simplex: &[usize]) -> i128 {
        let rows: Vec<LatticeVec> = simplex.iter().map(|&i| self.rays[i].clone()).collect();
        crate::ratgeom::matrix::int_det(&rows).abs()
    }

    /// Exact membership test.
    pub fn contains(&self, x: &[Rat]) -> bool {
        self.facets.iter().all(|f| {
            let v: Rat = f
                .normal
                .iter()
                .zip(x)
                .map(|(&n, xi)| Rat::from_integer(n.into()) * xi)
                .sum();
            !num_traits::Signed::is_negative(&v)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sorted_normals(h: &ConeHull) -> Vec<LatticeVec> {
        h.facets.iter().map(|f| f.normal.clone()).collect()
    }

    #[test]
    fn orthant_2d() {
        let h = cone_hull(&[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(h.rays, vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(sorted_normals(&h), vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(h.simplices, vec![vec![0, 1]]);
        assert_eq!(h.simplex_det(&h.simplices[0]), 1);
    }

    #[test]
    fn cone_over_unit_square() {
        let h = cone_hull(&[
            vec![0, 0, 1],
            vec![1, 0, 1],
            vec![0, 1, 1],
            vec![1, 1, 1],
        ])
        .unwrap();
        assert_eq!(h.rays.len(), 4);
        assert_eq!(h.facets.len(), 4);
        assert_eq!(h.simplices.len(), 2);
        for s in &h.simplices {
            assert_eq!(h.simplex_det(s), 1);
        }
    }

    #[test]
    fn redundant_ray_dropped() {
        // (1,1) is inside the quadrant.
        let h = cone_hull(&[vec![1, 0], vec![1, 1], vec![0, 1]]).unwrap();
        assert_eq!(h.rays, vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn non_pointed_rejected() {
        assert!(matches!(
            cone_hull(&[vec![1, 0], vec![-1, 1], vec![0, -1]]),
            Err(Error::NotPointed)
        ));
        assert!(matches!(
            cone_hull(&[vec![1, 0], vec![-1, 0], vec![0, 1]]),
            Err(Error::NotPointed)
        ));
    }

    #[test]
    fn low_rank_rejected() {
        assert!(matches!(
            cone_hull(&[vec![1, 0], vec![2, 0]]),
            Err(Error::NotFullDimensional)
        ));
    }

    #[test]
    fn determinism_and_scaling() {
        let a = cone_hull(&[vec![0, 1], vec![2, 1]]).unwrap();
        let b = cone_hull(&[vec![4, 2], vec![0, 3]]).unwrap();
        assert_eq!(a.rays, b.rays);
        assert_eq!(sorted_normals(&a), sorted_normals(&b));
        assert_eq!(a.simplices, b.simplices);
    }

    #[test]
    fn octahedral_cone() {
        // Cone over a hexagon needs several placements.
        let rays: Vec<LatticeVec> = vec![
            vec![1, 0, 1],
            vec![0, 1, 1],
            vec![-1, 1, 1],
            vec![-1, 0, 1],
            vec![0, -1, 1],
            vec![1, -1, 1],
        ];
        let h = cone_hull(&rays).unwrap();
        assert_eq!(h.rays.len(), 6);
        assert_eq!(h.facets.len(), 6);
        assert_eq!(h.simplices.len(), 4);
        // Triangulation volumes add up to the hexagon area (slice at z=1
        // has area 3, and each simplex contributes |det|/2 there... the
        // cross-check lives in the cone layer; here just check coverage
        // by determinant positivity).
        for s in &h.simplices {
            assert!(h.simplex_det(s) > 0);
        }
    }
}
