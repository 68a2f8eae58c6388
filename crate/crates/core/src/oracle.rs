//! Independent reference routes used by the verification suite and the
//! tests: exact Laurent coefficients of closed-form Hilbert series for
//! products of unimodular simplicial cones.
//!
//! For weights a_1, …, a_d > 0 the series Π_j 1/(1 - e^{-a_j t}) expands
//! as a0·n!/t^{n+1} + a1·(n-1)!/t^n + O(t^{1-n}) with n = d-1; the
//! coefficients are computed here by exact truncated power-series
//! arithmetic, never touching the triangulation route they are meant to
//! check.

use num_traits::Zero;

use crate::rat::{rat_i, Rat};

/// Truncated power series Σ_{i<len} c_i t^i over the rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSeries {
    pub coeffs: Vec<Rat>,
}

impl PowerSeries {
    pub fn one(len: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); len];
        coeffs[0] = rat_i(1);
        Self { coeffs }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn mul(&self, other: &PowerSeries) -> PowerSeries {
        let len = self.len().min(other.len());
        let mut coeffs = vec![Rat::zero(); len];
        for i in 0..len {
            for j in 0..=i {
                coeffs[i] += &self.coeffs[j] * &other.coeffs[i - j];
            }
        }
        PowerSeries { coeffs }
    }

    /// Multiplicative inverse of a unit series (nonzero constant term).
    pub fn inverse(&self) -> PowerSeries {
        let len = self.len();
        let mut inv = vec![Rat::zero(); len];
        let c0 = &self.coeffs[0];
        assert!(!c0.is_zero(), "series must be a unit");
        inv[0] = rat_i(1) / c0;
        for k in 1..len {
            let mut acc = Rat::zero();
            for i in 1..=k {
                acc += &self.coeffs[i] * &inv[k - i];
            }
            inv[k] = -acc / c0;
        }
        PowerSeries { coeffs: inv }
    }
}

/// Unit series U with 1 - e^{-a t} = a·t·U(t):
/// U_j = (-1)^j a^j / (j+1)!.
fn one_minus_exp_unit(a: &Rat, len: usize) -> PowerSeries {
    let mut coeffs = vec![Rat::zero(); len];
    let mut apow = rat_i(1);
    let mut fact = rat_i(1);
    for (j, c) in coeffs.iter_mut().enumerate() {
        fact *= rat_i(j as i64 + 1);
        let mut term = &apow / &fact;
        if j % 2 == 1 {
            term = -term;
        }
        *c = term;
        apow *= a;
    }
    PowerSeries { coeffs }
}

/// Exact (a0, a1) of Π_j 1/(1 - e^{-a_j t}) with strictly positive
/// rational weights `a_j`, normalized so that the series equals
/// a0·n!/t^{n+1} + a1·(n-1)!/t^n + O(t^{1-n}) with n = d-1.
pub fn hilbert_series_coefficients(weights: &[Rat]) -> (Rat, Rat) {
    let d = weights.len();
    assert!(d >= 2, "need at least a 2-dimensional cone");
    let n = (d - 1) as i64;
    // Π 1/(1-e^{-a_j t}) = t^{-d} · Π(1/a_j) · Π U_j(t)^{-1}.
    let len = 3;
    let mut unit = PowerSeries::one(len);
    let mut scale = rat_i(1);
    for a in weights {
        unit = unit.mul(&one_minus_exp_unit(a, len).inverse());
        scale /= a;
    }
    let mut n_fact = rat_i(1);
    for i in 2..=n {
        n_fact *= rat_i(i);
    }
    let a0 = &scale * &unit.coeffs[0] / &n_fact;
    let nm1_fact = if n >= 2 { &n_fact / rat_i(n) } else { rat_i(1) };
    let a1 = &scale * &unit.coeffs[1] / nm1_fact;
    (a0, a1)
}
