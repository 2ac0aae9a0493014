//! Description of Gamma(x) and Gamma(x)' by linear inequalities.
//!
//! With `W = {g : -1 <= g(inf) <= 0, g(x) > 1}` and
//! `W' = {g : g(inf) <= -1, g(x) > 0}`, the family Gamma(x) is `W` minus the
//! two exceptional sets `W1 = {g in W : g(inf) = 0, det g = 1}` and
//! `W2 = {g in W : g(inf) = -1, det g = -1}`, and Gamma(x)' is `W'` minus
//! `W1' = {g in W' : g(inf) = -1, det g = 1}`. For rational `x` the value
//! `g(x) = inf` is admitted.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::mat2::Mat2;
use crate::real::Real;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Membership {
    pub in_w: bool,
    pub in_w1: bool,
    pub in_w2: bool,
    pub in_w_prime: bool,
    pub in_w1_prime: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    InGamma,
    InW1,
    InW2,
    InGammaPrime,
    InW1Prime,
    Outside,
}

impl Membership {
    pub fn in_gamma(&self) -> bool {
        self.in_w && !self.in_w1 && !self.in_w2
    }

    pub fn in_gamma_prime(&self) -> bool {
        self.in_w_prime && !self.in_w1_prime
    }

    /// Single label; the two families overlap only in corner cases, where the
    /// Gamma(x) side wins.
    pub fn classify(&self) -> Classification {
        if self.in_gamma() {
            Classification::InGamma
        } else if self.in_w1 {
            Classification::InW1
        } else if self.in_w2 {
            Classification::InW2
        } else if self.in_gamma_prime() {
            Classification::InGammaPrime
        } else if self.in_w1_prime {
            Classification::InW1Prime
        } else {
            Classification::Outside
        }
    }
}

/// Certified sign of `g(x) - c`; infinity counts as above every `c`.
fn image_above(g: &Mat2, x: &Real, c: i64) -> Result<bool> {
    let c = BigInt::from(c);
    let num = x.affine(&(&g.s - &c * &g.u), &(&g.r - &c * &g.t));
    let den = x.affine(&g.u, &g.t);
    if den.is_zero() {
        return Ok(true);
    }
    let s = num.sign()?;
    let d = den.sign()?;
    Ok(s != Ordering::Equal && (s == d))
}

pub fn prop_membership(g: &Mat2, x: &Real) -> Result<Membership> {
    let mut m = Membership::default();
    let Some(inf) = g.at_infinity() else {
        return Ok(m);
    };
    let zero = BigRational::zero();
    let minus_one = -BigRational::one();
    let det = g.det();
    if inf >= minus_one && inf <= zero && image_above(g, x, 1)? {
        m.in_w = true;
        m.in_w1 = inf == zero && det.is_one();
        m.in_w2 = inf == minus_one && det == -BigInt::one();
    }
    if inf <= minus_one && image_above(g, x, 0)? {
        m.in_w_prime = true;
        m.in_w1_prime = inf == minus_one && det.is_one();
    }
    Ok(m)
}

/// Every element of PGL2(Z) with all entries at most `bound` in absolute
/// value, normalized and sorted.
pub fn pgl2_ball(bound: i64) -> Vec<Mat2> {
    let range: Vec<i64> = (-bound..=bound).collect();
    let mut out: Vec<Mat2> = range
        .par_iter()
        .flat_map_iter(|&r| {
            let range = &range;
            let mut v = Vec::new();
            for &s in range {
                for &t in range {
                    if r == 0 {
                        if (s * t).abs() == 1 {
                            for &u in range {
                                v.push(Mat2::new(r, s, t, u));
                            }
                        }
                        continue;
                    }
                    for det in [1i64, -1] {
                        let num = det + s * t;
                        if num % r == 0 {
                            let u = num / r;
                            if u.abs() <= bound {
                                v.push(Mat2::new(r, s, t, u));
                            }
                        }
                    }
                }
            }
            v
        })
        .map(|g| g.normalized())
        .collect();
    out.par_sort_unstable();
    out.dedup();
    out
}

/// Elements of the ball classified as in Gamma(x) and in Gamma(x)'.
pub fn membership_sets(x: &Real, bound: i64) -> Result<(Vec<Mat2>, Vec<Mat2>)> {
    let ball = pgl2_ball(bound);
    let tagged: Vec<(Mat2, Membership)> = ball
        .into_par_iter()
        .map(|g| prop_membership(&g, x).map(|m| (g, m)))
        .collect::<Result<_>>()?;
    let gamma = tagged.iter().filter(|(_, m)| m.in_gamma()).map(|(g, _)| g.clone()).collect();
    let prime = tagged
        .iter()
        .filter(|(_, m)| m.in_gamma_prime())
        .map(|(g, _)| g.clone())
        .collect();
    Ok((gamma, prime))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;
    use crate::real::parse_real;

    #[test]
    fn exceptional_elements() {
        let x = parse_real("1/pi").unwrap();
        let w1 = Mat2::new(0, -1, 1, -1);
        let m = prop_membership(&w1, &x).unwrap();
        assert_eq!(m.classify(), Classification::InW1);
        let m = prop_membership(&Mat2::identity(), &x).unwrap();
        assert_eq!(m.classify(), Classification::Outside);
        // n_1 = 3 >= 2, so W2 is {[[-1, 1], [1, 0]]}
        let w2 = Mat2::new(-1, 1, 1, 0);
        assert_eq!(prop_membership(&w2, &x).unwrap().classify(), Classification::InW2);
        let w1p = Mat2::new(1, 0, -1, 1);
        assert_eq!(prop_membership(&w1p, &x).unwrap().classify(), Classification::InW1Prime);
    }

    #[test]
    fn ball_is_closed_under_normalization() {
        let b = pgl2_ball(2);
        assert!(b.iter().all(|g| g.det().abs().is_one() && *g == g.normalized()));
        assert!(b.contains(&Mat2::identity()));
    }
}
