//! Equivariant index-character pole coefficients on the Reeb cone, their
//! directional derivatives, the affine Einstein-Hilbert functional, the
//! Donaldson-Futaki invariant of a polarized cone, and a lattice-point
//! summation cross-check.
//!
//! For a moment cone C ⊂ R^{n+1} and a Reeb vector ξ in the interior of
//! the dual cone, the character Σ_{α ∈ C ∩ Z^{n+1}} e^{-t⟨α,ξ⟩} has poles
//! F ~ a0·n!/t^{n+1} + a1·(n-1)!/t^n near t = 0 with
//!
//!   a0 = (1/n!)  Σ_σ |det W_σ| / Π_j ⟨w_j, ξ⟩          (triangulation of C)
//!   a1 = (1/(2(n-1)!)) Σ_F Σ_σ |det_F| / Π_j ⟨w_j, ξ⟩   (facet triangulations,
//!                                                        face-lattice dets)

mod lattice;

pub use lattice::{lattice_character, LatticeCharacter};

use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rat::{rat_i, rat_to_f64, Rat, RatVec};
use crate::ratgeom::cone::pair;
use crate::ratgeom::{ConvexCone, SimplicialCone};

/// A candidate Reeb vector: rational components, validated against a
/// moment cone at use sites.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReebVector(pub RatVec);

impl ReebVector {
    pub fn components(&self) -> &RatVec {
        &self.0
    }
}

/// The pole-coefficient pair of the index character at a Reeb vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexCoefficients {
    pub a0: Rat,
    pub a1: Rat,
}

/// True iff ⟨w, ξ⟩ > 0 for every generator of the moment cone, i.e. ξ is
/// in the open Reeb cone (interior of the dual).
pub fn reeb_cone_contains(c: &ConvexCone, xi: &[Rat]) -> Result<bool> {
    if xi.len() != c.dim() {
        return Err(Error::DimensionMismatch {
            expected: c.dim(),
            got: xi.len(),
        });
    }
    Ok(c.generators().iter().all(|w| pair(w, xi).is_positive()))
}

/// Precomputed triangulation data for repeated index evaluations on one
/// cone.
#[derive(Debug, Clone)]
pub struct IndexEvaluator {
    dim: usize,
    /// Triangulation of the cone with ambient determinants.
    interior: Vec<SimplicialCone>,
    /// Face-lattice triangulations of every facet.
    boundary: Vec<SimplicialCone>,
    generators: Vec<crate::rat::LatticeVec>,
}

impl IndexEvaluator {
    pub fn new(c: &ConvexCone) -> Result<Self> {
        if c.dim() < 2 {
            return Err(Error::InvalidInput(
                "index coefficients need a cone of dimension at least 2".into(),
            ));
        }
        let interior = c.triangulate().simplices;
        let mut boundary = Vec::new();
        for k in 0..c.num_facets() {
            boundary.extend(c.triangulate_facet(k)?.simplices);
        }
        Ok(Self {
            dim: c.dim(),
            interior,
            boundary,
            generators: c.generators().to_vec(),
        })
    }

    /// Complex dimension of the polarized base: cone dimension minus one.
    pub fn base_dim(&self) -> usize {
        self.dim - 1
    }

    fn check_reeb(&self, xi: &[Rat]) -> Result<()> {
        if xi.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: xi.len(),
            });
        }
        if self.generators.iter().all(|w| pair(w, xi).is_positive()) {
            Ok(())
        } else {
            Err(Error::ReebMembership)
        }
    }

    /// Exact pole coefficients (a0, a1) at a rational Reeb vector.
    pub fn coefficients(&self, xi: &[Rat]) -> Result<IndexCoefficients> {
        self.check_reeb(xi)?;
        let n = self.base_dim() as i64;
        let mut a0 = Rat::zero();
        for s in &self.interior {
            let mut denom = rat_i(1);
            for w in &s.generators {
                denom *= pair(w, xi);
            }
            a0 += rat_i(s.det.to_i64().expect("determinant fits i64")) / denom;
        }
        a0 /= factorial(n);
        let mut a1 = Rat::zero();
        for s in &self.boundary {
            let mut denom = rat_i(1);
            for w in &s.generators {
                denom *= pair(w, xi);
            }
            a1 += rat_i(s.det.to_i64().expect("determinant fits i64")) / denom;
        }
        a1 /= rat_i(2) * factorial(n - 1);
        Ok(IndexCoefficients { a0, a1 })
    }

    /// Exact first and second derivatives of (a0, a1) at s = 0 along the
    /// segment ξ - sζ, by term-by-term quotient rule. Returns
    /// ((Da0, Da1), (D²a0, D²a1)).
    pub fn derivatives(&self, xi: &[Rat], zeta: &[Rat]) -> Result<((Rat, Rat), (Rat, Rat))> {
        self.check_reeb(xi)?;
        if zeta.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: zeta.len(),
            });
        }
        let n = self.base_dim() as i64;
        let sum_derivs = |simplices: &[SimplicialCone]| -> (Rat, Rat) {
            let mut d1 = Rat::zero();
            let mut d2 = Rat::zero();
            for s in simplices {
                let mut value = rat_i(s.det.to_i64().expect("determinant fits i64"));
                let mut log_d1 = Rat::zero();
                let mut log_d2 = Rat::zero();
                for w in &s.generators {
                    let a = pair(w, xi);
                    let b = pair(w, zeta);
                    value /= &a;
                    let r = b / a;
                    log_d1 += &r;
                    log_d2 += &r * &r;
                }
                d1 += &value * &log_d1;
                d2 += value * (&log_d1 * &log_d1 + log_d2);
            }
            (d1, d2)
        };
        let (i1, i2) = sum_derivs(&self.interior);
        let (b1, b2) = sum_derivs(&self.boundary);
        let f_n = factorial(n);
        let f_b = rat_i(2) * factorial(n - 1);
        Ok((
            (i1 / &f_n, b1 / &f_b),
            (i2 / &f_n, b2 / &f_b),
        ))
    }

    /// Floating-point (a0, a1) together with first and second derivatives
    /// along ζ, for optimizer iterates that are not rational. Layout:
    /// (a0, a1, Da0, Da1, D²a0, D²a1).
    pub fn jet_f64(&self, xi: &[f64], zeta: &[f64]) -> Result<[f64; 6]> {
        if xi.len() != self.dim || zeta.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: xi.len().max(zeta.len()),
            });
        }
        let pair_f = |w: &[i64], v: &[f64]| -> f64 {
            w.iter().zip(v).map(|(&a, b)| a as f64 * b).sum()
        };
        for w in &self.generators {
            if pair_f(w, xi) <= 0.0 {
                return Err(Error::ReebMembership);
            }
        }
        let n = self.base_dim() as i64;
        let accum = |simplices: &[SimplicialCone]| -> [f64; 3] {
            let mut v = 0.0;
            let mut d1 = 0.0;
            let mut d2 = 0.0;
            for s in simplices {
                let mut value = s.det as f64;
                let mut l1 = 0.0;
                let mut l2 = 0.0;
                for w in &s.generators {
                    let a = pair_f(w, xi);
                    let b = pair_f(w, zeta);
                    value /= a;
                    let r = b / a;
                    l1 += r;
                    l2 += r * r;
                }
                v += value;
                d1 += value * l1;
                d2 += value * (l1 * l1 + l2);
            }
            [v, d1, d2]
        };
        let fi = rat_to_f64(&factorial(n));
        let fb = 2.0 * rat_to_f64(&factorial(n - 1));
        let [v0, v1, v2] = accum(&self.interior);
        let [w0, w1, w2] = accum(&self.boundary);
        Ok([v0 / fi, w0 / fb, v1 / fi, w1 / fb, v2 / fi, w2 / fb])
    }
}

fn factorial(n: i64) -> Rat {
    let mut f = rat_i(1);
    for i in 2..=n {
        f *= rat_i(i);
    }
    f
}

/// Exact pole coefficients at a rational Reeb vector.
pub fn index_coeffs(c: &ConvexCone, xi: &[Rat]) -> Result<IndexCoefficients> {
    IndexEvaluator::new(c)?.coefficients(xi)
}

/// Exact order-1 or order-2 derivatives of (a0, a1) at s = 0 along ξ - sζ.
pub fn index_coeffs_derivative(
    c: &ConvexCone,
    xi: &[Rat],
    zeta: &[Rat],
    order: u32,
) -> Result<(Rat, Rat)> {
    let ev = IndexEvaluator::new(c)?;
    let (d1, d2) = ev.derivatives(xi, zeta)?;
    match order {
        1 => Ok(d1),
        2 => Ok(d2),
        _ => Err(Error::InvalidInput("derivative order must be 1 or 2".into())),
    }
}

/// Affine Einstein-Hilbert functional 16π·a1/a0^{n/(n+1)}; invariant under
/// rescaling of ξ.
pub fn affine_eh(c: &ConvexCone, xi: &[Rat]) -> Result<f64> {
    let ev = IndexEvaluator::new(c)?;
    affine_eh_from(&ev, xi)
}

pub fn affine_eh_from(ev: &IndexEvaluator, xi: &[Rat]) -> Result<f64> {
    let n = ev.base_dim() as f64;
    let IndexCoefficients { a0, a1 } = ev.coefficients(xi)?;
    Ok(16.0 * std::f64::consts::PI * rat_to_f64(&a1) / rat_to_f64(&a0).powf(n / (n + 1.0)))
}

/// Donaldson-Futaki invariant of (C, ξ) along ζ in the normalized form
///
///   DF = (1/n)·(Da1 - (n/(n+1))·a1·Da0/a0),
///
/// an exact rational equal to a0^{n/(n+1)}/n times the derivative of
/// a1/a0^{n/(n+1)} at s = 0 along ξ - sζ.
pub fn df_cs(c: &ConvexCone, xi: &[Rat], zeta: &[Rat]) -> Result<Rat> {
    let ev = IndexEvaluator::new(c)?;
    df_cs_from(&ev, xi, zeta)
}

pub fn df_cs_from(ev: &IndexEvaluator, xi: &[Rat], zeta: &[Rat]) -> Result<Rat> {
    let n = ev.base_dim() as i64;
    let IndexCoefficients { a0, a1 } = ev.coefficients(xi)?;
    let ((da0, da1), _) = ev.derivatives(xi, zeta)?;
    Ok(df_from_parts(n, &a0, &a1, &da0, &da1))
}

pub(crate) fn df_from_parts(n: i64, a0: &Rat, a1: &Rat, da0: &Rat, da1: &Rat) -> Rat {
    (da1 - rat_i(n) / rat_i(n + 1) * a1 * da0 / a0) / rat_i(n)
}

/// The uncorrected two-term variant
///
///   DF' = (a0/n)·D(a1/a0) + a1·Da0/(n(n+1)),
///
/// which agrees with [`df_cs`] exactly when a0 = 1 and differs otherwise;
/// exposed for side-by-side reporting.
pub fn df_cs_unnormalized(c: &ConvexCone, xi: &[Rat], zeta: &[Rat]) -> Result<Rat> {
    let ev = IndexEvaluator::new(c)?;
    let n = ev.base_dim() as i64;
    let IndexCoefficients { a0, a1 } = ev.coefficients(xi)?;
    let ((da0, da1), _) = ev.derivatives(xi, zeta)?;
    let d_ratio = (&da1 * &a0 - &a1 * &da0) / (&a0 * &a0);
    Ok(&a0 / rat_i(n) * d_ratio + &a1 * &da0 / rat_i(n * (n + 1)))
}

/// Slope of the affine Einstein-Hilbert functional along ξ - sζ at s = 0:
/// 16π·n·DF/a0^{n/(n+1)}.
pub fn eh_slope(c: &ConvexCone, xi: &[Rat], zeta: &[Rat]) -> Result<f64> {
    let ev = IndexEvaluator::new(c)?;
    let n = ev.base_dim() as f64;
    let IndexCoefficients { a0, .. } = ev.coefficients(xi)?;
    let df = df_cs_from(&ev, xi, zeta)?;
    Ok(16.0 * std::f64::consts::PI * n * rat_to_f64(&df)
        / rat_to_f64(&a0).powf(n / (n + 1.0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_i};
    use crate::ratgeom::ConvexCone;

    fn orthant(d: usize) -> ConvexCone {
        let gens: Vec<Vec<i64>> = (0..d)
            .map(|i| (0..d).map(|j| i64::from(i == j)).collect())
            .collect();
        ConvexCone::from_generators(&gens).unwrap()
    }

    #[test]
    fn reeb_membership() {
        let c = orthant(2);
        assert!(reeb_cone_contains(&c, &[rat_i(1), rat_i(1)]).unwrap());
        assert!(!reeb_cone_contains(&c, &[rat_i(1), rat_i(0)]).unwrap());
        assert!(!reeb_cone_contains(&c, &[rat_i(-1), rat_i(3)]).unwrap());
        assert!(reeb_cone_contains(&c, &[rat_i(1)]).is_err());
    }

    #[test]
    fn orthant_coefficients() {
        let c = orthant(2);
        let ic = index_coeffs(&c, &[rat_i(1), rat_i(1)]).unwrap();
        assert_eq!((ic.a0, ic.a1), (rat_i(1), rat_i(1)));
        let ic = index_coeffs(&c, &[rat_i(1), rat_i(2)]).unwrap();
        assert_eq!((ic.a0, ic.a1), (rat(1, 2), rat(3, 4)));
        let c3 = orthant(3);
        let ic = index_coeffs(&c3, &[rat_i(1), rat_i(1), rat_i(1)]).unwrap();
        assert_eq!((ic.a0, ic.a1), (rat(1, 2), rat(3, 2)));
    }

    #[test]
    fn membership_errors() {
        let c = orthant(2);
        assert!(matches!(
            index_coeffs(&c, &[rat_i(1), rat_i(0)]),
            Err(Error::ReebMembership)
        ));
    }

    #[test]
    fn derivative_closed_forms() {
        // Along ξ = (1,1), ζ = (0,1): a0(s) = 1/(1-s), a1(s) = (2-s)/(2(1-s)).
        let c = orthant(2);
        let xi = [rat_i(1), rat_i(1)];
        let zeta = [rat_i(0), rat_i(1)];
        let (da0, da1) = index_coeffs_derivative(&c, &xi, &zeta, 1).unwrap();
        assert_eq!(da0, rat_i(1));
        assert_eq!(da1, rat(1, 2));
        // Second derivatives: a0'' = 2, a1'' = 1 at s=0.
        let (dda0, dda1) = index_coeffs_derivative(&c, &xi, &zeta, 2).unwrap();
        assert_eq!(dda0, rat_i(2));
        assert_eq!(dda1, rat_i(1));

        // Along ξ = (1,2), ζ = (0,1): a0(s) = 1/(2-s), a1(s) = (3-s)/(2(2-s)),
        // so (da0, da1) = (1/4, 1/8) at s = 0.
        let xi = [rat_i(1), rat_i(2)];
        let (da0, da1) = index_coeffs_derivative(&c, &xi, &zeta, 1).unwrap();
        assert_eq!(da0, rat(1, 4));
        assert_eq!(da1, rat(1, 8));
    }

    #[test]
    fn euler_relation() {
        // Along ζ = ξ the coefficients are homogeneous: Da0 = (n+1)a0, Da1 = n·a1.
        let c = orthant(3);
        let xi = [rat_i(1), rat(3, 2), rat_i(2)];
        let ic = index_coeffs(&c, &xi).unwrap();
        let (da0, da1) = index_coeffs_derivative(&c, &xi, &xi, 1).unwrap();
        assert_eq!(da0, rat_i(3) * &ic.a0);
        assert_eq!(da1, rat_i(2) * &ic.a1);
    }

    #[test]
    fn affine_eh_values() {
        let c = orthant(2);
        let pi = std::f64::consts::PI;
        let v = affine_eh(&c, &[rat_i(1), rat_i(1)]).unwrap();
        assert!((v - 16.0 * pi).abs() < 1e-12);
        let v = affine_eh(&c, &[rat_i(2), rat_i(2)]).unwrap();
        assert!((v - 16.0 * pi).abs() < 1e-12);
        let v = affine_eh(&c, &[rat_i(1), rat_i(2)]).unwrap();
        assert!((v - 12.0 * 2.0f64.sqrt() * pi).abs() < 1e-12);
    }

    #[test]
    fn df_values() {
        let c = orthant(2);
        let zeta = [rat_i(0), rat_i(1)];
        // Radial direction: degree-0 homogeneity kills the derivative.
        let xi = [rat(5, 3), rat(5, 3)];
        assert_eq!(df_cs(&c, &xi, &xi).unwrap(), rat_i(0));
        // Symmetric point along (0,1).
        let xi = [rat_i(1), rat_i(1)];
        assert_eq!(df_cs(&c, &xi, &zeta).unwrap(), rat_i(0));
        // Asymmetric point: derivative of (3-s)/(2√(2-s)) at 0 times √a0.
        let xi = [rat_i(1), rat_i(2)];
        assert_eq!(df_cs(&c, &xi, &zeta).unwrap(), rat(-1, 16));
    }

    #[test]
    fn df_variants_agree_when_a0_is_one() {
        let c = orthant(2);
        let xi = [rat_i(1), rat_i(1)];
        let zeta = [rat(1, 3), rat_i(1)];
        assert_eq!(
            df_cs(&c, &xi, &zeta).unwrap(),
            df_cs_unnormalized(&c, &xi, &zeta).unwrap()
        );
        // And they differ when a0 ≠ 1 (generic data).
        let xi = [rat_i(1), rat_i(2)];
        assert_ne!(
            df_cs(&c, &xi, &zeta).unwrap(),
            df_cs_unnormalized(&c, &xi, &zeta).unwrap()
        );
    }

    #[test]
    fn homogeneity_exact() {
        let c = orthant(3);
        let xi = [rat_i(1), rat(3, 2), rat_i(2)];
        let lam = rat(7, 3);
        let scaled: Vec<Rat> = xi.iter().map(|x| x * &lam).collect();
        let ic = index_coeffs(&c, &xi).unwrap();
        let ics = index_coeffs(&c, &scaled).unwrap();
        let lam2 = &lam * &lam;
        let lam3 = &lam2 * &lam;
        assert_eq!(ics.a0 * lam3, ic.a0);
        assert_eq!(ics.a1 * lam2, ic.a1);
    }

    #[test]
    fn slope_identity() {
        // d/ds EH(ξ-sζ)|_0 equals 16π·n·DF/a0^{n/(n+1)}; check against a
        // central difference of the exact evaluation.
        let c = orthant(2);
        let xi = [rat_i(1), rat_i(2)];
        let zeta = [rat_i(0), rat_i(1)];
        let slope = eh_slope(&c, &xi, &zeta).unwrap();
        let h = rat(1, 1024);
        let plus: Vec<Rat> = xi.iter().zip(&zeta).map(|(x, z)| x - &h * z).collect();
        let minus: Vec<Rat> = xi.iter().zip(&zeta).map(|(x, z)| x + &h * z).collect();
        let f_plus = affine_eh(&c, &plus).unwrap();
        let f_minus = affine_eh(&c, &minus).unwrap();
        let fd = (f_plus - f_minus) / (2.0 / 1024.0);
        assert!((slope - fd).abs() < 1e-4, "slope {slope} vs fd {fd}");
    }
}
