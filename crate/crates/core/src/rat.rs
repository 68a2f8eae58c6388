//! Exact rational scalars and integer lattice vectors.
//!
//! Every algebraic quantity in this crate (volumes, index-character pole
//! coefficients, Donaldson-Futaki invariants) is carried by [`Rat`], an
//! arbitrary-precision rational kept in canonical form (positive
//! denominator, coprime numerator/denominator). Floating point only enters
//! through the quadrature and optimization layers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational in canonical form.
pub type Rat = BigRational;

/// Integer lattice vector. Entries stay well within `i64` at the scales
/// this crate supports (ambient dimension at most 5, coordinates of
/// desk-size polytopes); determinant and Hermite-form internals widen to
/// `i128` where products accumulate.
pub type LatticeVec = Vec<i64>;

/// Rational vector.
pub type RatVec = Vec<Rat>;

/// `p` as a rational.
pub fn rat_i(p: i64) -> Rat {
    Rat::from(BigInt::from(p))
}

/// `p/q` as a rational. Panics on `q == 0`.
pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Parse `"p"` or `"p/q"` into a rational.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let mk_err = || Error::InvalidInput(format!("cannot parse rational from {s:?}"));
    match s.split_once('/') {
        None => {
            let p: BigInt = s.parse().map_err(|_| mk_err())?;
            Ok(Rat::from(p))
        }
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| mk_err())?;
            let q: BigInt = q.trim().parse().map_err(|_| mk_err())?;
            if q.is_zero() {
                return Err(Error::InvalidInput(format!("zero denominator in {s:?}")));
            }
            Ok(Rat::new(p, q))
        }
    }
}

/// Render a rational as `p` or `p/q`.
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Convert to `f64`. The quantities involved here are far from the
/// overflow range, so the conversion is always finite.
pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().expect("rational converts to f64")
}

/// Nearest rational to `x` with denominator bounded by `max_denom`,
/// via continued fractions. Used to snap floating iterates back onto
/// exact evaluation points.
pub fn rat_from_f64(x: f64, max_denom: u64) -> Rat {
    assert!(x.is_finite(), "cannot snap non-finite float");
    let negative = x < 0.0;
    let mut x = x.abs();
    // Continued fraction convergents p/q.
    let (mut p0, mut q0, mut p1, mut q1) = (0i128, 1i128, 1i128, 0i128);
    for _ in 0..64 {
        let a = x.floor();
        if a > i64::MAX as f64 {
            break;
        }
        let a_i = a as i128;
        let p2 = a_i * p1 + p0;
        let q2 = a_i * q1 + q0;
        if q2 > max_denom as i128 {
            break;
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let frac = x - a;
        if frac < 1e-15 {
            break;
        }
        x = 1.0 / frac;
    }
    let r = Rat::new(BigInt::from(p1), BigInt::from(q1.max(1)));
    if negative {
        -r
    } else {
        r
    }
}

/// Dot product of a rational covector with an integer vector.
pub fn dot_rat_int(a: &[Rat], b: &[i64]) -> Rat {
    assert_eq!(a.len(), b.len());
    let mut acc = Rat::zero();
    for (x, y) in a.iter().zip(b) {
        acc += x * rat_i(*y);
    }
    acc
}

/// Dot product of two rational vectors.
pub fn dot_rat(a: &[Rat], b: &[Rat]) -> Rat {
    assert_eq!(a.len(), b.len());
    let mut acc = Rat::zero();
    for (x, y) in a.iter().zip(b) {
        acc += x * y;
    }
    acc
}

/// Dot product of two integer vectors, accumulated in `i128`.
pub fn dot_int(a: &[i64], b: &[i64]) -> i128 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(&x, &y)| x as i128 * y as i128).sum()
}

/// gcd of the absolute values of the entries (0 for the zero vector).
pub fn gcd_vec(v: &[i64]) -> i64 {
    v.iter()
        .fold(0i64, |g, &x| num_integer::gcd(g, x.abs()))
}

/// Divide out the content so the vector becomes primitive. The zero
/// vector is returned unchanged.
pub fn primitivize(v: &[i64]) -> LatticeVec {
    let g = gcd_vec(v);
    if g <= 1 {
        v.to_vec()
    } else {
        v.iter().map(|&x| x / g).collect()
    }
}

/// Clear denominators of a rational vector to a primitive integer vector
/// pointing the same way.
pub fn clear_denominators(v: &[Rat]) -> LatticeVec {
    let mut lcm = BigInt::one();
    for x in v {
        lcm = num_integer::lcm(lcm, x.denom().clone());
    }
    let ints: Vec<i64> = v
        .iter()
        .map(|x| {
            let n = x.numer() * (&lcm / x.denom());
            n.to_i64().expect("cleared coordinate fits i64")
        })
        .collect();
    primitivize(&ints)
}

/// All entries strictly positive.
pub fn all_positive(v: &[Rat]) -> bool {
    v.iter().all(|x| x.is_positive())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_render() {
        assert_eq!(parse_rat("3/4").unwrap(), rat(3, 4));
        assert_eq!(parse_rat("-7").unwrap(), rat_i(-7));
        assert_eq!(parse_rat(" 6/-4 ").unwrap(), rat(-3, 2));
        assert_eq!(rat_to_string(&rat(6, 4)), "3/2");
        assert_eq!(rat_to_string(&rat_i(5)), "5");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn canonical_form() {
        let r = rat(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
    }

    #[test]
    fn snap_floats() {
        assert_eq!(rat_from_f64(0.5, 1 << 20), rat(1, 2));
        assert_eq!(rat_from_f64(-1.25, 1 << 20), rat(-5, 4));
        let x = 1.0 / 3.0;
        assert_eq!(rat_from_f64(x, 1 << 20), rat(1, 3));
    }

    #[test]
    fn primitivize_vectors() {
        assert_eq!(primitivize(&[4, -6, 2]), vec![2, -3, 1]);
        assert_eq!(primitivize(&[0, 0]), vec![0, 0]);
        assert_eq!(clear_denominators(&[rat(1, 2), rat_i(2), rat_i(1)]), vec![1, 4, 2]);
    }
}
