use std::cmp::Ordering;
use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::Result;
use crate::mat2::Mat2;
use crate::real::{QuadSurd, Real};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// `T`
    ShiftUp,
    /// `T^-1 eps` in the plus algorithm, `T^-1 S T^-1` in the simple one.
    Flip,
    /// `T^-1`
    ShiftDown,
}

impl Branch {
    pub fn as_str(self) -> &'static str {
        match self {
            Branch::ShiftUp => "shift_up",
            Branch::Flip => "flip",
            Branch::ShiftDown => "shift_down",
        }
    }
}

/// Position of a slow-plus matrix in the regular expansion: the matrix equals
/// `T^{-shift} gamma_block`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockPos {
    pub block: usize,
    #[serde(serialize_with = "crate::ser::big")]
    pub shift: BigInt,
}

/// One step of a three-branch algorithm. `state` and `matrix` describe the
/// situation after the branch has been applied, so `matrix(x) = state`.
#[derive(Clone, Debug, Serialize)]
pub struct SlowStep {
    pub index: usize,
    pub branch: Branch,
    pub state: Real,
    pub matrix: Mat2,
    /// Only for the slow-plus stream; `None` for the final flip of a rational
    /// input out of state 1, which lies outside the block description.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub block: Option<BlockPos>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum SlowEnd {
    Limit,
    /// Rational input: the state reached 0.
    ReachedZero,
    /// Surd input: the state after step `end` equals the state after step
    /// `start` (step `0` meaning the input itself).
    Cycle { start: usize, length: usize },
}

#[derive(Clone, Debug, Serialize)]
pub struct SlowRun {
    pub steps: Vec<SlowStep>,
    pub end: SlowEnd,
    /// False for interval inputs, whose states can never be compared exactly.
    pub cycle_detection: bool,
}

impl SlowRun {
    pub fn purely_periodic(&self) -> bool {
        matches!(self.end, SlowEnd::Cycle { start: 0, .. })
    }

    /// States visited, starting with the input.
    pub fn states<'a>(&'a self, x: &'a Real) -> impl Iterator<Item = &'a Real> + 'a {
        std::iter::once(x).chain(self.steps.iter().map(|s| &s.state))
    }
}

fn branch_matrix(b: Branch, simple: bool) -> Mat2 {
    match (b, simple) {
        (Branch::ShiftUp, _) => Mat2::t(),
        (Branch::ShiftDown, _) => Mat2::new(1, -1, 0, 1),
        (Branch::Flip, false) => Mat2::new(-1, 1, 1, 0),
        (Branch::Flip, true) => Mat2::new(-1, 0, 1, -1),
    }
}

fn choose_plus(x: &Real) -> Result<Branch> {
    if x.sign()? != Ordering::Greater {
        return Ok(Branch::ShiftUp);
    }
    Ok(match x.cmp_real(&Real::one())? {
        Ordering::Greater => Branch::ShiftDown,
        _ => Branch::Flip,
    })
}

fn choose_simple(x: &Real) -> Result<Branch> {
    if x.sign()? != Ordering::Greater {
        return Ok(Branch::ShiftUp);
    }
    Ok(match x.cmp_real(&Real::one())? {
        Ordering::Less => Branch::Flip,
        _ => Branch::ShiftDown,
    })
}

fn advance(x: &Real, state: &Real, g: &Mat2, acc: &Mat2) -> Result<Real> {
    let next = match x {
        Real::Interval(_) => acc.apply(x)?,
        _ => g.apply(state)?,
    };
    Ok(next.expect("the three-branch maps never reach infinity"))
}

/// The slow version of the regular expansion, whose matrices after the first
/// flip run through `T^{-k} gamma_i`, `1 <= k <= n_i`, `i >= 1`.
pub fn slow_plus(x: &Real, limit: usize) -> Result<SlowRun> {
    let mut steps = Vec::new();
    let mut state = x.clone();
    let mut acc = Mat2::identity();
    let mut block = 0usize;
    let mut shift = BigInt::zero();
    while steps.len() < limit {
        let b = choose_plus(&state)?;
        let g = branch_matrix(b, false);
        acc = g.mul(&acc);
        let from_one = b == Branch::Flip && state.is_exact() && state == Real::one();
        match b {
            Branch::ShiftUp => shift -= 1,
            Branch::ShiftDown => shift += 1,
            Branch::Flip => {
                block += 1;
                shift = BigInt::one();
            }
        }
        state = advance(x, &state, &g, &acc)?;
        let done = state.is_zero();
        steps.push(SlowStep {
            index: steps.len(),
            branch: b,
            state: state.clone(),
            matrix: acc.clone(),
            block: (!from_one).then(|| BlockPos {
                block,
                shift: shift.clone(),
            }),
        });
        if done {
            return Ok(SlowRun {
                steps,
                end: SlowEnd::ReachedZero,
                cycle_detection: x.is_exact(),
            });
        }
    }
    Ok(SlowRun {
        steps,
        end: SlowEnd::Limit,
        cycle_detection: x.is_exact(),
    })
}

/// The slow simple algorithm `x -> x + 1`, `x/(1 - x)`, `x - 1`.
///
/// Surd inputs stop at the first repeated state; rationals stop at 0.
pub fn slow_simple(x: &Real, limit: usize) -> Result<SlowRun> {
    let mut seen: HashMap<QuadSurd, usize> = HashMap::new();
    if let Some(s) = x.as_surd() {
        seen.insert(s.clone(), 0);
    }
    let mut steps = Vec::new();
    let mut state = x.clone();
    let mut acc = Mat2::identity();
    while steps.len() < limit {
        let b = choose_simple(&state)?;
        let g = branch_matrix(b, true);
        acc = g.mul(&acc);
        state = advance(x, &state, &g, &acc)?;
        let n = steps.len() + 1;
        steps.push(SlowStep {
            index: n - 1,
            branch: b,
            state: state.clone(),
            matrix: acc.clone(),
            block: None,
        });
        if state.is_zero() {
            return Ok(SlowRun {
                steps,
                end: SlowEnd::ReachedZero,
                cycle_detection: x.is_exact(),
            });
        }
        if let Some(s) = state.as_surd() {
            if let Some(&start) = seen.get(s) {
                return Ok(SlowRun {
                    steps,
                    end: SlowEnd::Cycle {
                        start,
                        length: n - start,
                    },
                    cycle_detection: true,
                });
            }
            seen.insert(s.clone(), n);
        }
    }
    Ok(SlowRun {
        steps,
        end: SlowEnd::Limit,
        cycle_detection: x.is_exact(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::real::parse_real;

    fn tags(run: &SlowRun) -> Vec<Branch> {
        run.steps.iter().map(|s| s.branch).collect()
    }

    #[test]
    fn slow_plus_rational() {
        let x = parse_real("7/3").unwrap();
        let run = slow_plus(&x, 100).unwrap();
        let t = tags(&run);
        assert_eq!(&t[..3], &[Branch::ShiftDown, Branch::ShiftDown, Branch::Flip]);
        assert_eq!(run.steps[0].state, Real::ratio(4, 3));
        assert_eq!(run.steps[1].state, Real::ratio(1, 3));
        assert_eq!(run.end, SlowEnd::ReachedZero);
        for s in &run.steps {
            assert_eq!(s.matrix.apply(&x).unwrap().unwrap(), s.state);
        }
    }

    #[test]
    fn slow_plus_from_zero() {
        let run = slow_plus(&Real::zero(), 10).unwrap();
        assert_eq!(run.steps[0].branch, Branch::ShiftUp);
        assert_eq!(run.steps[0].state, Real::one());
    }

    #[test]
    fn golden_ratio_cycle() {
        let x = parse_real("(1+sqrt(5))/2").unwrap();
        let run = slow_simple(&x, 50).unwrap();
        assert_eq!(run.end, SlowEnd::Cycle { start: 0, length: 2 });
        assert!(run.purely_periodic());
        assert_eq!(run.steps[0].state, parse_real("(-1+sqrt(5))/2").unwrap());

        let y = parse_real("(-1-sqrt(5))/2").unwrap();
        let run = slow_simple(&y, 50).unwrap();
        assert_eq!(run.end, SlowEnd::Cycle { start: 3, length: 2 });
        assert!(!run.purely_periodic());
    }

    #[test]
    fn integer_descent() {
        let run = slow_simple(&Real::from(5), 50).unwrap();
        assert_eq!(tags(&run), vec![Branch::ShiftDown; 5]);
        let states: Vec<Real> = run.steps.iter().map(|s| s.state.clone()).collect();
        assert_eq!(states, (0..5).rev().map(Real::from).collect::<Vec<_>>());
        assert_eq!(run.end, SlowEnd::ReachedZero);
    }
}
