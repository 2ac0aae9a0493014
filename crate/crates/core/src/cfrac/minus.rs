use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::Result;
use crate::mat2::Mat2;
use crate::real::Real;

/// Digit rule for the negative (ceiling) continued fraction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MinusRule {
    /// `m_i = ceil(x_i)`, stopping once `x_i` is an integer.
    #[default]
    Ceil,
    /// `m_i = ceil(x_i) + 1` taken literally. Diagnostic only: the stream it
    /// produces has none of the usual invariants and never terminates.
    PaperLiteral,
}

/// One step of `x_{i+1} = 1/(m_i - x_i)`.
#[derive(Clone, Debug, Serialize)]
pub struct CFStepMinus {
    pub index: usize,
    #[serde(serialize_with = "crate::ser::big")]
    pub digit: BigInt,
    pub state: Real,
    /// `gamma~_i = [[-q~_{i-2}, p~_{i-2}], [-q~_{i-1}, p~_{i-1}]]`
    pub gamma: Mat2,
    /// `p~_{i-1}`
    #[serde(serialize_with = "crate::ser::big")]
    pub p: BigInt,
    /// `q~_{i-1}`
    #[serde(serialize_with = "crate::ser::big")]
    pub q: BigInt,
    pub delta_prev: Real,
    pub delta: Real,
    pub terminal: bool,
}

pub struct MinusCf {
    x: Real,
    rule: MinusRule,
    index: usize,
    state: Option<Real>,
    p1: BigInt,
    p2: BigInt,
    q1: BigInt,
    q2: BigInt,
}

impl MinusCf {
    pub fn new(x: &Real) -> Self {
        Self::with_rule(x, MinusRule::Ceil)
    }

    pub fn with_rule(x: &Real, rule: MinusRule) -> Self {
        MinusCf {
            x: x.clone(),
            rule,
            index: 0,
            state: Some(x.clone()),
            p1: BigInt::one(),
            p2: BigInt::zero(),
            q1: BigInt::zero(),
            q2: -BigInt::one(),
        }
    }

    fn gamma(&self) -> Mat2 {
        Mat2::new(-&self.q2, self.p2.clone(), -&self.q1, self.p1.clone())
    }

    fn step(&mut self, state: Real) -> Result<CFStepMinus> {
        let (digit, terminal) = match self.rule {
            MinusRule::Ceil => (state.ceil()?, state.is_integer()),
            MinusRule::PaperLiteral => (state.ceil()? + 1, false),
        };
        let delta = self.x.affine(&self.p1, &-&self.q1);
        let delta_prev = self.x.affine(&self.p2, &-&self.q2);
        let gamma = self.gamma();
        let out = CFStepMinus {
            index: self.index,
            digit: digit.clone(),
            state: state.clone(),
            gamma,
            p: self.p1.clone(),
            q: self.q1.clone(),
            delta_prev,
            delta,
            terminal,
        };
        let p0 = &digit * &self.p1 - &self.p2;
        let q0 = &digit * &self.q1 - &self.q2;
        self.p2 = std::mem::replace(&mut self.p1, p0);
        self.q2 = std::mem::replace(&mut self.q1, q0);
        self.index += 1;
        if !terminal {
            let next = match &self.x {
                Real::Interval(_) => self
                    .gamma()
                    .apply(&self.x)?
                    .expect("an irrational point is never sent to infinity"),
                _ => Real::from(digit).sub(&state).recip()?,
            };
            self.state = Some(next);
        }
        Ok(out)
    }
}

impl Iterator for MinusCf {
    type Item = Result<CFStepMinus>;

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

pub fn minus_cf(x: &Real, limit: usize) -> Result<Vec<CFStepMinus>> {
    MinusCf::new(x).take(limit).collect()
}

pub fn minus_cf_with_rule(x: &Real, limit: usize, rule: MinusRule) -> Result<Vec<CFStepMinus>> {
    MinusCf::with_rule(x, rule).take(limit).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::real::parse_real;

    fn digits(x: &str, n: usize) -> Vec<i64> {
        minus_cf(&parse_real(x).unwrap(), n)
            .unwrap()
            .iter()
            .map(|s| i64::try_from(&s.digit).unwrap())
            .collect()
    }

    #[test]
    fn known_expansions() {
        assert_eq!(digits("7/3", 10), vec![3, 2, 2]);
        assert_eq!(digits("4", 10), vec![4]);
        assert_eq!(digits("(3+sqrt(5))/2", 5), vec![3; 5]);
    }

    #[test]
    fn matrix_form_matches_the_product() {
        let x = parse_real("1/pi").unwrap();
        let steps = minus_cf(&x, 12).unwrap();
        let mut g = Mat2::identity();
        for s in &steps {
            assert!(s.gamma.pgl_eq(&g));
            assert_eq!(s.gamma.det(), BigInt::one());
            g = Mat2::s().mul(&Mat2::t_pow(&-&s.digit)).mul(&g);
        }
    }

    #[test]
    fn literal_rule_differs() {
        let x = parse_real("7/3").unwrap();
        let lit = minus_cf_with_rule(&x, 4, MinusRule::PaperLiteral).unwrap();
        let d: Vec<i64> = lit.iter().map(|s| i64::try_from(&s.digit).unwrap()).collect();
        assert_eq!(d[0], 4);
        assert_eq!(lit.len(), 4);
    }
}
