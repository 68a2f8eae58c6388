//! Exact integration of affine powers over rational polytopes.
//!
//! The one primitive everything reduces to: for a full-dimensional
//! simplex Δ = conv(v_0,…,v_k) and an affine form ℓ positive on Δ,
//!
//!   ∫_Δ ℓ(x)^{-m} dx = k! · vol(Δ) · Φ[ℓ(v_0),…,ℓ(v_k)]
//!
//! where Φ is the k-th iterated antiderivative of u ↦ u^{-m} and [·] is
//! the (confluent) divided difference over the vertex values. With
//! m ≥ k+1 the antiderivative is again a pure power, so every quantity
//! stays rational. Boundary integrals use the same machinery in the
//! facet's lattice chart, which realizes the lattice-normalized boundary
//! measure.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rat::{rat_i, Rat, RatVec};
use crate::ratgeom::polytope::{AffineForm, RationalPolytope};

/// r-th derivative of u^{-m} at `x`, divided by r!:
/// (-1)^r · C(m+r-1, r) · x^{-(m+r)}.
fn neg_power_deriv_over_factorial(m: u32, r: u32, x: &Rat) -> Rat {
    let mut coeff = rat_i(1);
    for i in 0..r {
        coeff *= rat_i((m + i) as i64);
        coeff /= rat_i((i + 1) as i64);
    }
    if r % 2 == 1 {
        coeff = -coeff;
    }
    let mut p = rat_i(1);
    for _ in 0..(m + r) {
        p *= x;
    }
    coeff / p
}

/// Confluent divided difference of u ↦ u^{-m} over `nodes` (all nonzero).
pub fn divided_difference_neg_power(m: u32, nodes: &[Rat]) -> Rat {
    let mut xs = nodes.to_vec();
    xs.sort();
    let n = xs.len();
    // table[i] holds dd over the window starting at i of the current width.
    let mut table: Vec<Rat> = xs
        .iter()
        .map(|x| neg_power_deriv_over_factorial(m, 0, x))
        .collect();
    for width in 1..n {
        let mut next: Vec<Rat> = Vec::with_capacity(n - width);
        for i in 0..n - width {
            let j = i + width;
            if xs[i] == xs[j] {
                next.push(neg_power_deriv_over_factorial(m, width as u32, &xs[i]));
            } else {
                let num = &table[i + 1] - &table[i];
                next.push(num / (&xs[j] - &xs[i]));
            }
        }
        table = next;
    }
    table.pop().expect("nonempty node list")
}

/// Exact volume of the full-dimensional simplex with the given vertices.
pub fn simplex_volume(verts: &[RatVec]) -> Rat {
    let k = verts.len() - 1;
    if k == 0 {
        return rat_i(1);
    }
    let v0 = &verts[0];
    let rows: Vec<RatVec> = verts[1..]
        .iter()
        .map(|v| v.iter().zip(v0).map(|(a, b)| a - b).collect())
        .collect();
    let mut det = crate::ratgeom::matrix::rat_det(&rows);
    if det.is_negative() {
        det = -det;
    }
    let mut fact = rat_i(1);
    for i in 2..=k as i64 {
        fact *= rat_i(i);
    }
    det / fact
}

/// ∫_Δ ℓ(x)^{-m} dx over a full-dimensional simplex, exact. Requires
/// ℓ > 0 on Δ and m ≥ dim(Δ)+1 (no logarithmic antiderivatives).
pub fn integral_neg_power_simplex(verts: &[RatVec], form: &AffineForm, m: u32) -> Result<Rat> {
    let k = (verts.len() - 1) as u32;
    if m < k + 1 {
        return Err(Error::InvalidInput(format!(
            "exponent {m} too small for an exact antiderivative in dimension {k}"
        )));
    }
    let nodes: Vec<Rat> = verts.iter().map(|v| form.eval(v)).collect();
    if nodes.iter().any(|x| !x.is_positive()) {
        return Err(Error::DomainError(
            "affine form must be positive on the simplex".into(),
        ));
    }
    if k == 0 {
        let mut p = rat_i(1);
        for _ in 0..m {
            p *= &nodes[0];
        }
        return Ok(rat_i(1) / p);
    }
    // k-fold antiderivative of u^{-m}: u^{-(m-k)} / Π_{i=1..k}(i-m).
    let mut scale = rat_i(1);
    for i in 1..=k as i64 {
        scale *= rat_i(i - m as i64);
    }
    let dd = divided_difference_neg_power(m - k, &nodes);
    let mut fact = rat_i(1);
    for i in 2..=k as i64 {
        fact *= rat_i(i);
    }
    Ok(fact * simplex_volume(verts) * dd / scale)
}

/// ∫_Δ ℓ(x) dx over a simplex: volume times the vertex mean of ℓ.
pub fn integral_affine_simplex(verts: &[RatVec], form: &AffineForm) -> Rat {
    let mean: Rat = verts.iter().map(|v| form.eval(v)).sum::<Rat>() / rat_i(verts.len() as i64);
    simplex_volume(verts) * mean
}

fn simplices_of(p: &RationalPolytope) -> Vec<Vec<RatVec>> {
    p.simplices()
        .iter()
        .map(|s| s.iter().map(|&i| p.vertices()[i].clone()).collect())
        .collect()
}

/// ∫_P ℓ^{-m} dx, exact. Requires ℓ > 0 on P.
pub fn integral_neg_power(p: &RationalPolytope, form: &AffineForm, m: u32) -> Result<Rat> {
    let mut total = Rat::zero();
    for verts in simplices_of(p) {
        total += integral_neg_power_simplex(&verts, form, m)?;
    }
    Ok(total)
}

/// ∫_P ℓ dx, exact.
pub fn integral_affine(p: &RationalPolytope, form: &AffineForm) -> Rat {
    let mut total = Rat::zero();
    for verts in simplices_of(p) {
        total += integral_affine_simplex(&verts, form);
    }
    total
}

/// ∫_{∂P} ℓ^{-m} dσ against the lattice-normalized boundary measure.
pub fn boundary_integral_neg_power(
    p: &RationalPolytope,
    form: &AffineForm,
    m: u32,
) -> Result<Rat> {
    let mut total = Rat::zero();
    for k in 0..p.facets().len() {
        total += facet_integral_neg_power(p, k, form, m)?;
    }
    Ok(total)
}

/// ∫_{F_k} ℓ^{-m} dσ over one facet in its lattice chart.
pub fn facet_integral_neg_power(
    p: &RationalPolytope,
    k: usize,
    form: &AffineForm,
    m: u32,
) -> Result<Rat> {
    let (basis, base, chart) = p.facet_chart(k)?;
    match chart {
        None => {
            // Point facet of an interval: measure 1.
            let v = form.eval(&base);
            if !v.is_positive() {
                return Err(Error::DomainError(
                    "affine form must be positive on the boundary".into(),
                ));
            }
            let mut pw = rat_i(1);
            for _ in 0..m {
                pw *= &v;
            }
            Ok(rat_i(1) / pw)
        }
        Some(chart) => {
            let restricted = form.restrict(&basis, &base);
            integral_neg_power(&chart, &restricted, m)
        }
    }
}

/// ∫_{∂P} ℓ dσ against the lattice-normalized boundary measure.
pub fn boundary_integral_affine(p: &RationalPolytope, form: &AffineForm) -> Result<Rat> {
    let mut total = Rat::zero();
    for k in 0..p.facets().len() {
        let (basis, base, chart) = p.facet_chart(k)?;
        total += match chart {
            None => form.eval(&base),
            Some(chart) => {
                let restricted = form.restrict(&basis, &base);
                integral_affine(&chart, &restricted)
            }
        };
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn interval(a: i64, b: i64) -> RationalPolytope {
        RationalPolytope::from_vertices(&[vec![rat_i(a)], vec![rat_i(b)]]).unwrap()
    }

    #[test]
    fn divided_differences() {
        // [1/u](1, 1/3) = (3 - 1)/(1/3 - 1) = -3.
        assert_eq!(
            divided_difference_neg_power(1, &[rat_i(1), rat(1, 3)]),
            rat_i(-3)
        );
        // Confluent: [1/u](a,a,a) = 1/a^3.
        assert_eq!(
            divided_difference_neg_power(1, &[rat_i(2), rat_i(2), rat_i(2)]),
            rat(1, 8)
        );
        // [1/u](1,2,2) = 1/4.
        assert_eq!(
            divided_difference_neg_power(1, &[rat_i(1), rat_i(2), rat_i(2)]),
            rat(1, 4)
        );
    }

    #[test]
    fn one_dimensional_integral() {
        // ∫_0^2 (1 - x/3)^{-2} dx = 6.
        let p = interval(0, 2);
        let form = AffineForm::new(vec![rat(-1, 3)], rat_i(1));
        assert_eq!(integral_neg_power(&p, &form, 2).unwrap(), rat_i(6));
        // ∫_0^2 (1 - x/2 + 1/2)^{-2} dx with f = 1-(x-1)/2: value 8/3.
        let form = AffineForm::new(vec![rat(-1, 2)], rat(3, 2));
        assert_eq!(integral_neg_power(&p, &form, 2).unwrap(), rat(8, 3));
    }

    #[test]
    fn two_dimensional_integral() {
        // ∫ over conv{(0,0),(1,0),(0,1)} of (1+x+y)^{-3} = 1/8.
        let p = RationalPolytope::from_vertices(&[
            vec![rat_i(0), rat_i(0)],
            vec![rat_i(1), rat_i(0)],
            vec![rat_i(0), rat_i(1)],
        ])
        .unwrap();
        let form = AffineForm::new(vec![rat_i(1), rat_i(1)], rat_i(1));
        assert_eq!(integral_neg_power(&p, &form, 3).unwrap(), rat(1, 8));
    }

    #[test]
    fn constant_integrand_gives_volume() {
        let p = RationalPolytope::from_vertices(&[
            vec![rat_i(0), rat_i(0)],
            vec![rat_i(2), rat_i(0)],
            vec![rat_i(2), rat_i(2)],
            vec![rat_i(0), rat_i(2)],
        ])
        .unwrap();
        let one = AffineForm::constant_form(2, rat_i(1));
        assert_eq!(integral_neg_power(&p, &one, 3).unwrap(), rat_i(4));
        assert_eq!(integral_affine(&p, &one), rat_i(4));
        assert_eq!(boundary_integral_affine(&p, &one).unwrap(), rat_i(8));
    }

    #[test]
    fn boundary_integrals() {
        // On [0,2] with f = 1-(x-1)/2: ∫_∂ f^{-1} = f(0)^{-1} + f(2)^{-1} = 2/3 + 2.
        let p = interval(0, 2);
        let form = AffineForm::new(vec![rat(-1, 2)], rat(3, 2));
        assert_eq!(
            boundary_integral_neg_power(&p, &form, 1).unwrap(),
            rat(8, 3)
        );
        // Hirzebruch boundary integral of x1: 4.
        let h = RationalPolytope::from_vertices(&[
            vec![rat_i(0), rat_i(0)],
            vec![rat_i(2), rat_i(0)],
            vec![rat_i(1), rat_i(1)],
            vec![rat_i(0), rat_i(1)],
        ])
        .unwrap();
        let x1 = AffineForm::new(vec![rat_i(1), rat_i(0)], rat_i(0));
        assert_eq!(boundary_integral_affine(&h, &x1).unwrap(), rat_i(4));
    }

    #[test]
    fn positivity_enforced() {
        let p = interval(0, 2);
        let form = AffineForm::new(vec![rat_i(-1)], rat_i(1));
        assert!(integral_neg_power(&p, &form, 2).is_err());
    }
}
