//! First nonzero eigenvalue (and low spectrum) of the torus-invariant
//! Laplacian Δf = -div(H ∇f) of the Guillemin metric.
//!
//! On a product of intervals Π[0,α_i] the invariant spectrum is the
//! Legendre spectrum Σ_i 2 j_i (j_i + 1)/α_i over integer tuples j, which
//! is exact; other Delzant polytopes go through a Rayleigh-Ritz bound on
//! a polynomial trial space (converging to the true value from above).

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::rat::{rat, rat_i, rat_to_f64, Rat};
use crate::ratgeom::{DelzantClass, RationalPolytope};
use crate::torickahler::potential::SymplecticPotential;
use crate::torickahler::quad::integrate_simplicial;

/// First nonzero invariant eigenvalue, exact on boxes.
#[derive(Debug, Clone)]
pub struct Lambda1 {
    pub value: f64,
    /// Set on boxes, where the Legendre spectrum is closed-form.
    pub exact: Option<Rat>,
}

/// Lowest `k` nonzero Legendre eigenvalues of a box Π[lo_i, hi_i],
/// sorted ascending (with multiplicity).
pub fn box_laplace_eigenvalues(p: &RationalPolytope, k: usize) -> Option<Vec<Rat>> {
    let bounds = p.as_box()?;
    let alphas: Vec<Rat> = bounds.iter().map(|(lo, hi)| hi - lo).collect();
    // Per-axis eigenvalues 2 j(j+1)/α; j up to a cap comfortably past k.
    let jmax = (k + 2) as i64;
    let mut spectrum: Vec<Rat> = vec![Rat::from_integer(0.into())];
    for alpha in &alphas {
        let mut next = Vec::new();
        for j in 0..=jmax {
            let lam = rat_i(2 * j * (j + 1)) / alpha;
            for base in &spectrum {
                next.push(base + &lam);
            }
        }
        spectrum = next;
    }
    spectrum.sort();
    let nonzero: Vec<Rat> = spectrum
        .into_iter()
        .filter(|l| l > &rat(0, 1))
        .take(k)
        .collect();
    (nonzero.len() == k).then_some(nonzero)
}

/// First nonzero eigenvalue of the invariant Laplacian. `resolution`
/// controls the Rayleigh-Ritz trial space (polynomial degree) and the
/// quadrature depth on non-box polytopes.
pub fn invariant_lambda1(p: &RationalPolytope, resolution: usize) -> Result<Lambda1> {
    if p.delzant_class() != DelzantClass::Delzant {
        return Err(Error::NotDelzant);
    }
    if let Some(eigs) = box_laplace_eigenvalues(p, 1) {
        return Ok(Lambda1 {
            value: rat_to_f64(&eigs[0]),
            exact: Some(eigs[0].clone()),
        });
    }
    let eigs = ritz_eigenvalues(p, 1, resolution.clamp(2, 6) as u32, 5)?;
    Ok(Lambda1 {
        value: eigs[0],
        exact: None,
    })
}

/// Rayleigh-Ritz upper bounds for the lowest `k` nonzero eigenvalues on a
/// polynomial trial space of the given total degree.
pub fn ritz_eigenvalues(
    p: &RationalPolytope,
    k: usize,
    degree: u32,
    quad_levels: u32,
) -> Result<Vec<f64>> {
    let n = p.dim();
    let sp = SymplecticPotential::new(p);
    // Monomial exponents 1 ≤ |a| ≤ degree.
    let mut exps: Vec<Vec<u32>> = Vec::new();
    gen_exponents(n, degree, &mut vec![0; n], 0, &mut exps);
    let m = exps.len();
    if m < k {
        return Err(Error::InvalidInput("trial space smaller than k".into()));
    }
    let vol = integrate_simplicial(p, &|_| 1.0, quad_levels);
    let mono = |e: &[u32], x: &[f64]| -> f64 {
        e.iter()
            .zip(x)
            .map(|(&a, xi)| xi.powi(a as i32))
            .product()
    };
    let grad_mono = |e: &[u32], x: &[f64], out: &mut [f64]| {
        for i in 0..x.len() {
            if e[i] == 0 {
                out[i] = 0.0;
            } else {
                let mut v = e[i] as f64 * x[i].powi(e[i] as i32 - 1);
                for (j, (&a, xi)) in e.iter().zip(x).enumerate() {
                    if j != i {
                        v *= xi.powi(a as i32);
                    }
                }
                out[i] = v;
            }
        }
    };
    // Means for the zero-average normalization.
    let means: Vec<f64> = exps
        .iter()
        .map(|e| integrate_simplicial(p, &|x| mono(e, x), quad_levels) / vol)
        .collect();
    let mut mass = DMatrix::zeros(m, m);
    let mut stiff = DMatrix::zeros(m, m);
    for i in 0..m {
        for j in i..m {
            let mij = integrate_simplicial(
                p,
                &|x| (mono(&exps[i], x) - means[i]) * (mono(&exps[j], x) - means[j]),
                quad_levels,
            );
            let kij = integrate_simplicial(
                p,
                &|x| {
                    let mut gi = vec![0.0; n];
                    let mut gj = vec![0.0; n];
                    grad_mono(&exps[i], x, &mut gi);
                    grad_mono(&exps[j], x, &mut gj);
                    let h = sp.h_matrix(x).expect("interior quadrature node");
                    let mut acc = 0.0;
                    for a in 0..n {
                        for b in 0..n {
                            acc += h[(a, b)] * gi[a] * gj[b];
                        }
                    }
                    acc
                },
                quad_levels,
            );
            mass[(i, j)] = mij;
            mass[(j, i)] = mij;
            stiff[(i, j)] = kij;
            stiff[(j, i)] = kij;
        }
    }
    // Generalized symmetric eigenproblem K c = λ M c via Cholesky.
    let chol = nalgebra::Cholesky::new(mass)
        .ok_or_else(|| Error::InvalidInput("mass matrix not positive definite".into()))?;
    let l_inv = chol
        .l()
        .clone()
        .try_inverse()
        .ok_or_else(|| Error::InvalidInput("mass factor not invertible".into()))?;
    let sym = &l_inv * stiff * l_inv.transpose();
    let sym = (&sym + sym.transpose()) * 0.5;
    let mut eigs: Vec<f64> = nalgebra::SymmetricEigen::new(sym)
        .eigenvalues
        .iter()
        .copied()
        .collect();
    eigs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(eigs.into_iter().take(k).collect())
}

fn gen_exponents(
    n: usize,
    degree: u32,
    current: &mut Vec<u32>,
    pos: usize,
    out: &mut Vec<Vec<u32>>,
) {
    if pos == n {
        if current.iter().sum::<u32>() >= 1 {
            out.push(current.clone());
        }
        return;
    }
    for a in 0..=degree - current[..pos].iter().sum::<u32>().min(degree) {
        current[pos] = a;
        gen_exponents(n, degree, current, pos + 1, out);
    }
    current[pos] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat_i;
    use crate::rat::RatVec;

    fn poly(points: &[&[i64]]) -> RationalPolytope {
        let pts: Vec<RatVec> = points
            .iter()
            .map(|p| p.iter().map(|&x| rat_i(x)).collect())
            .collect();
        RationalPolytope::from_vertices(&pts).unwrap()
    }

    #[test]
    fn interval_lambda1() {
        let p = poly(&[&[0], &[2]]);
        let l = invariant_lambda1(&p, 4).unwrap();
        assert_eq!(l.exact, Some(rat_i(2)));
    }

    #[test]
    fn long_box_lambda1() {
        let p = poly(&[&[0, 0], &[2, 0], &[2, 12], &[0, 12]]);
        let l = invariant_lambda1(&p, 4).unwrap();
        assert_eq!(l.exact, Some(rat(1, 3)));
        let p = poly(&[&[0, 0], &[2, 0], &[2, 4], &[0, 4]]);
        let l = invariant_lambda1(&p, 4).unwrap();
        assert_eq!(l.exact, Some(rat_i(1)));
    }

    #[test]
    fn box_spectrum_enumeration() {
        // [0,2]²: eigenvalues are 2(j(j+1)+k(k+1))/2 sums: 2, 2, 4, 6, 6, ...
        let p = poly(&[&[0, 0], &[2, 0], &[2, 2], &[0, 2]]);
        let eigs = box_laplace_eigenvalues(&p, 4).unwrap();
        assert_eq!(eigs, vec![rat_i(2), rat_i(2), rat_i(4), rat_i(6)]);
    }

    #[test]
    fn ritz_matches_exact_on_interval() {
        let p = poly(&[&[0], &[2]]);
        let eig = ritz_eigenvalues(&p, 1, 4, 7).unwrap();
        // The degree-4 trial space contains the first Legendre mode
        // exactly, so the Ritz value equals λ1 = 2 up to quadrature noise.
        assert!((eig[0] - 2.0).abs() < 1e-6, "{}", eig[0]);
    }

    #[test]
    fn ritz_upper_bound_on_square() {
        let p = poly(&[&[0, 0], &[2, 0], &[2, 2], &[0, 2]]);
        let eig = ritz_eigenvalues(&p, 1, 3, 5).unwrap();
        assert!(eig[0] >= 2.0 - 1e-6);
        assert!(eig[0] < 2.0 + 1e-4, "{}", eig[0]);
    }

    #[test]
    fn non_delzant_rejected() {
        let p = poly(&[&[0, 0], &[1, 0], &[0, 2]]);
        assert!(matches!(
            invariant_lambda1(&p, 3),
            Err(Error::NotDelzant)
        ));
    }

    #[test]
    fn hirzebruch_lambda1_numeric() {
        let p = poly(&[&[0, 0], &[2, 0], &[1, 1], &[0, 1]]);
        let l = invariant_lambda1(&p, 4).unwrap();
        assert!(l.exact.is_none());
        assert!(l.value > 0.0 && l.value.is_finite());
    }
}
