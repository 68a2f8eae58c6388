//! The polarized toric manifold layer: exact volume, lattice perimeter
//! and average scalar curvature of a Delzant polytope, the Guillemin
//! metric machinery, the invariant spectrum, and the cone-over
//! construction linking polytopes to moment cones.

pub mod potential;
pub mod quad;
pub mod spectrum;

pub use potential::{abreu_scalar, SymplecticPotential};
pub use quad::{integrate_simplicial, BoxGrid};
pub use spectrum::{box_laplace_eigenvalues, invariant_lambda1, ritz_eigenvalues, Lambda1};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rat::{clear_denominators, rat_i, Rat, RatVec};
use crate::ratgeom::integrate::{boundary_integral_neg_power, integral_neg_power};
use crate::ratgeom::{AffineForm, ConvexCone, DelzantClass, RationalPolytope};

/// Exact numerical invariants of a polarized toric manifold or orbifold:
/// volume, lattice perimeter, and the average scalar curvature
/// sbar = 2·perim/vol.
#[derive(Debug, Clone)]
pub struct PolarizedToricData {
    pub polytope: RationalPolytope,
    pub vol: Rat,
    pub perim: Rat,
    pub sbar: Rat,
    pub class: DelzantClass,
}

/// Compute the exact invariants; errors on non-simplicial polytopes.
pub fn polarized_from_polytope(p: &RationalPolytope) -> Result<PolarizedToricData> {
    let class = p.delzant_class();
    if class == DelzantClass::Neither {
        return Err(Error::NotSimplicial);
    }
    let vol = p.volume();
    let perim = p.lattice_perimeter()?;
    if vol.is_zero() || perim.is_zero() {
        return Err(Error::NotFullDimensional);
    }
    let sbar = rat_i(2) * &perim / &vol;
    Ok(PolarizedToricData {
        polytope: p.clone(),
        vol,
        perim,
        sbar,
        class,
    })
}

/// The moment cone of the polarized cone over the polytope: the cone over
/// P × {1} in R^{n+1}, with distinguished Reeb vector ξ₀ = e_{n+1}.
pub fn cone_over(p: &RationalPolytope) -> ConvexCone {
    let rays: Vec<Vec<i64>> = p
        .vertices()
        .iter()
        .map(|v| {
            let mut h = v.clone();
            h.push(rat_i(1));
            clear_denominators(&h)
        })
        .collect();
    ConvexCone::from_generators(&rays).expect("cone over a valid polytope")
}

/// The distinguished Reeb vector ξ₀ = e_d pairing to 1 on the
/// characteristic slice P × {1}.
pub fn xi0(d: usize) -> RatVec {
    let mut v = vec![Rat::zero(); d];
    v[d - 1] = rat_i(1);
    v
}

/// The Reeb vector ξ₀ - s·(ζ_P, 0), whose pairing with a slice point
/// (x, 1) is 1 - s·⟨x, ζ_P⟩.
pub fn reeb_from_slice_form(dim: usize, zeta_p: &[Rat], s: &Rat) -> RatVec {
    let mut xi = xi0(dim + 1);
    for (i, z) in zeta_p.iter().enumerate() {
        let _ = i;
        xi[i] = -(s * z);
    }
    let _ = dim;
    xi
}

/// Exact ∫_P (1 - s⟨x, ζ_P⟩)^{-(n+1)} dx, the volume-side member of the
/// characteristic-slice identity for a0.
pub fn slice_a0_exact(p: &RationalPolytope, zeta_p: &[Rat], s: &Rat) -> Result<Rat> {
    let n = p.dim() as u32;
    let form = slice_weight_form(zeta_p, s);
    integral_neg_power(p, &form, n + 1)
}

/// Exact (1/2)∫_{∂P} (1 - s⟨x, ζ_P⟩)^{-n} dσ, the boundary-side member of
/// the slice identity for a1.
pub fn slice_a1_exact(p: &RationalPolytope, zeta_p: &[Rat], s: &Rat) -> Result<Rat> {
    let n = p.dim() as u32;
    let form = slice_weight_form(zeta_p, s);
    Ok(boundary_integral_neg_power(p, &form, n)? / rat_i(2))
}

/// The affine weight 1 - s·⟨x, ζ_P⟩ on the polytope.
pub fn slice_weight_form(zeta_p: &[Rat], s: &Rat) -> AffineForm {
    AffineForm::new(zeta_p.iter().map(|z| -(s * z)).collect(), rat_i(1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coneindex::index_coeffs;
    use crate::rat::rat;

    fn poly(points: &[&[i64]]) -> RationalPolytope {
        let pts: Vec<RatVec> = points
            .iter()
            .map(|p| p.iter().map(|&x| rat_i(x)).collect())
            .collect();
        RationalPolytope::from_vertices(&pts).unwrap()
    }

    #[test]
    fn interval_invariants() {
        let d = polarized_from_polytope(&poly(&[&[0], &[2]])).unwrap();
        assert_eq!((d.vol, d.perim, d.sbar), (rat_i(2), rat_i(2), rat_i(2)));
    }

    #[test]
    fn box_invariants() {
        let d = polarized_from_polytope(&poly(&[&[0, 0], &[2, 0], &[2, 4], &[0, 4]])).unwrap();
        assert_eq!((d.vol, d.perim, d.sbar), (rat_i(8), rat_i(12), rat_i(3)));
    }

    #[test]
    fn simplex_invariants() {
        let d = polarized_from_polytope(&poly(&[&[0, 0], &[2, 0], &[0, 2]])).unwrap();
        assert_eq!(&d.sbar * &d.vol, rat_i(2) * &d.perim);
        assert_eq!((d.vol, d.perim, d.sbar), (rat_i(2), rat_i(6), rat_i(6)));
    }

    #[test]
    fn non_simplicial_rejected() {
        // Octagon-like polytope with a 4-valent vertex pattern is hard to
        // arrange in 2D (all 2D polytopes are simplicial); use the pyramid
        // over a square in 3D.
        let p = poly(&[&[0, 0, 0], &[2, 0, 0], &[0, 2, 0], &[2, 2, 0], &[1, 1, 1]]);
        assert!(matches!(
            polarized_from_polytope(&p),
            Err(Error::NotSimplicial)
        ));
    }

    #[test]
    fn cone_over_interval() {
        let c = cone_over(&poly(&[&[0], &[2]]));
        assert_eq!(c.generators(), &[vec![0, 1], vec![2, 1]]);
        let ic = index_coeffs(&c, &xi0(2)).unwrap();
        assert_eq!((ic.a0, ic.a1), (rat_i(2), rat_i(1)));
    }

    #[test]
    fn cone_over_square() {
        let c = cone_over(&poly(&[&[0, 0], &[2, 0], &[2, 2], &[0, 2]]));
        let ic = index_coeffs(&c, &xi0(3)).unwrap();
        assert_eq!((ic.a0, ic.a1), (rat_i(4), rat_i(4)));
    }

    #[test]
    fn slice_identity_interval() {
        // a0(cone_over([0,2]), ξ₀ - s(ζ,0)) = ∫_0^2 (1-sζx)^{-2} dx and
        // a1 = ½∫_∂ (1-sζx)^{-1}, exactly, for rational s.
        let p = poly(&[&[0], &[2]]);
        let c = cone_over(&p);
        for (zeta, s) in [
            (rat(1, 2), rat(1, 3)),
            (rat(1, 3), rat(-2, 5)),
            (rat_i(1), rat(1, 4)),
        ] {
            let xi = reeb_from_slice_form(1, &[zeta.clone()], &s);
            let ic = index_coeffs(&c, &xi).unwrap();
            assert_eq!(ic.a0, slice_a0_exact(&p, &[zeta.clone()], &s).unwrap());
            assert_eq!(ic.a1, slice_a1_exact(&p, &[zeta.clone()], &s).unwrap());
        }
    }

    #[test]
    fn slice_identity_hirzebruch() {
        let p = poly(&[&[0, 0], &[2, 0], &[1, 1], &[0, 1]]);
        let c = cone_over(&p);
        let zeta = vec![rat(1, 3), rat(-1, 5)];
        for s in [rat(1, 7), rat(-1, 4), rat(2, 9)] {
            let xi = reeb_from_slice_form(2, &zeta, &s);
            let ic = index_coeffs(&c, &xi).unwrap();
            assert_eq!(ic.a0, slice_a0_exact(&p, &zeta, &s).unwrap());
            assert_eq!(ic.a1, slice_a1_exact(&p, &zeta, &s).unwrap());
        }
    }

    #[test]
    fn donaldson_identity_boxes_and_simplices() {
        // ∫_P S dx = 2·perim for the Guillemin metric.
        for (p, levels) in [
            (poly(&[&[0, 0], &[2, 0], &[2, 2], &[0, 2]]), 6u32),
            (poly(&[&[0, 0], &[2, 0], &[0, 2]]), 6),
        ] {
            let data = polarized_from_polytope(&p).unwrap();
            let sp = SymplecticPotential::new(&p);
            let integral = integrate_simplicial(&p, &|x| sp.abreu_scalar(x).unwrap(), levels);
            let expect = crate::rat::rat_to_f64(&(rat_i(2) * &data.perim));
            assert!(
                (integral - expect).abs() / expect.abs() < 1e-8,
                "{integral} vs {expect}"
            );
        }
    }

    #[test]
    fn lambda1_upper_bound_example() {
        // λ1([0,2a]×[0,2b]) ≤ 2/a, realized with equality for b ≥ a.
        let p = poly(&[&[0, 0], &[4, 0], &[4, 6], &[0, 6]]);
        let l = invariant_lambda1(&p, 3).unwrap();
        // a = 2, b = 3: λ1 = min(4/4, 4/6) = 2/3 ≤ 2/a = 1.
        assert_eq!(l.exact, Some(rat(2, 3)));
    }
}
