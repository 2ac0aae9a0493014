use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::Result;
use crate::mat2::Mat2;
use crate::real::Real;

/// One step of the regular continued fraction `x_{i+1} = 1/(x_i - n_i)`.
#[derive(Clone, Debug, Serialize)]
pub struct CFStepPlus {
    pub index: usize,
    /// `n_i = floor(x_i)`
    #[serde(serialize_with = "crate::ser::big")]
    pub digit: BigInt,
    pub state: Real,
    /// `gamma_i`, with `gamma_i(x) = x_i`
    pub gamma: Mat2,
    /// `p_{i-1}`
    #[serde(serialize_with = "crate::ser::big")]
    pub p: BigInt,
    /// `q_{i-1}`
    #[serde(serialize_with = "crate::ser::big")]
    pub q: BigInt,
    /// `delta_{i-1}`
    pub delta_prev: Real,
    /// `delta_i`
    pub delta: Real,
    /// Set on the last step of a rational expansion, where `x_i` is an integer.
    pub terminal: bool,
}

/// Iterator over the regular continued fraction of `x`.
///
/// Stops after the terminal step of a rational input, and after the first
/// error (an interval floor that cannot be certified).
pub struct PlusCf {
    x: Real,
    index: usize,
    state: Option<Real>,
    gamma: Mat2,
    p1: BigInt,
    p2: BigInt,
    q1: BigInt,
    q2: BigInt,
}

impl PlusCf {
    pub fn new(x: &Real) -> Self {
        PlusCf {
            x: x.clone(),
            index: 0,
            state: Some(x.clone()),
            gamma: Mat2::identity(),
            p1: BigInt::one(),
            p2: BigInt::zero(),
            q1: BigInt::zero(),
            q2: BigInt::one(),
        }
    }

    fn sign(i: usize) -> BigInt {
        if i % 2 == 0 {
            BigInt::one()
        } else {
            -BigInt::one()
        }
    }

    fn step(&mut self, state: Real) -> Result<CFStepPlus> {
        let i = self.index;
        let digit = state.floor()?;
        let terminal = state.is_integer();
        let sg = Self::sign(i);
        // delta_i = (-1)^i (p_{i-1} - q_{i-1} x), evaluated from x itself
        let delta = self.x.affine(&(&sg * &self.p1), &(-&sg * &self.q1));
        let delta_prev = self.x.affine(&(-&sg * &self.p2), &(&sg * &self.q2));
        let out = CFStepPlus {
            index: i,
            digit: digit.clone(),
            state: state.clone(),
            gamma: self.gamma.clone(),
            p: self.p1.clone(),
            q: self.q1.clone(),
            delta_prev,
            delta,
            terminal,
        };
        let p0 = &digit * &self.p1 + &self.p2;
        let q0 = &digit * &self.q1 + &self.q2;
        self.p2 = std::mem::replace(&mut self.p1, p0);
        self.q2 = std::mem::replace(&mut self.q1, q0);
        self.gamma = Mat2::epsilon().mul(&Mat2::t_pow(&-&digit)).mul(&self.gamma);
        self.index += 1;
        if !terminal {
            self.state = Some(next_state(&self.x, &state, &digit, &self.gamma)?);
        }
        Ok(out)
    }
}

/// `1/(x_i - n)`. Exact inputs use the recurrence; intervals are recomputed
/// from `x` through the accumulated matrix so the width stays proportional
/// to the input width.
fn next_state(x: &Real, state: &Real, digit: &BigInt, gamma: &Mat2) -> Result<Real> {
    match x {
        Real::Interval(_) => Ok(gamma
            .apply(x)?
            .expect("an irrational point is never sent to infinity")),
        _ => state.sub(&Real::from(digit.clone())).recip(),
    }
}

impl Iterator for PlusCf {
    type Item = Result<CFStepPlus>;

    fn next(&mut self) -> Option<Self::Item> {
        let state = self.state.take()?;
        match self.step(state) {
            Ok(s) => Some(Ok(s)),
            Err(e) => {
                self.state = None;
                Some(Err(e))
            }
        }
    }
}

/// The first `limit` steps of the regular continued fraction of `x`.
pub fn plus_cf(x: &Real, limit: usize) -> Result<Vec<CFStepPlus>> {
    PlusCf::new(x).take(limit).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::real::parse_real;

    fn digits(x: &str, n: usize) -> Vec<i64> {
        plus_cf(&parse_real(x).unwrap(), n)
            .unwrap()
            .iter()
            .map(|s| i64::try_from(&s.digit).unwrap())
            .collect()
    }

    #[test]
    fn known_expansions() {
        assert_eq!(digits("7/3", 10), vec![2, 3]);
        assert_eq!(digits("(1+sqrt(5))/2", 6), vec![1; 6]);
        assert_eq!(digits("1/pi", 5), vec![0, 3, 7, 15, 1]);
        assert_eq!(digits("-7/3", 10), vec![-3, 1, 2]);
    }

    #[test]
    fn pi_matrices() {
        let steps = plus_cf(&parse_real("1/pi").unwrap(), 6).unwrap();
        assert_eq!(steps[2].gamma, Mat2::new(1, 0, -3, 1));
        assert_eq!(steps[3].gamma, Mat2::new(-3, 1, 22, -7));
        assert_eq!(steps[5].gamma, Mat2::new(-333, 106, 355, -113));
    }

    #[test]
    fn interval_runs_out_of_precision() {
        let x = crate::real::parse_real_with_precision("1/pi", 40).unwrap();
        let res = plus_cf(&x, 200);
        assert!(res.unwrap_err().is_precision());
    }
}
