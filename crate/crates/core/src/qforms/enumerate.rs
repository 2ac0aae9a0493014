use num_bigint::BigInt;
use num_integer::Roots;
use serde::{Deserialize, Serialize};

use super::form::{check_discriminant, QForm};
use crate::error::{Error, Result};
use crate::mat2::Mat2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FormKind {
    /// `a > 0 > c`
    Simple,
    /// `a, c > 0`, `b > a + c`
    Reduced,
}

fn positive_divisors(n: i64) -> impl Iterator<Item = i64> {
    (1..=n).filter(move |a| n % a == 0)
}

/// Every simple or reduced form of discriminant `d`, sorted.
///
/// Simple forms have `-d/4 <= ac <= -1`; reduced forms have
/// `b <= (d + 1)/2` because `(a + c)^2 >= 4ac = b^2 - d` and `a + c < b`.
pub fn enumerate_forms(d: i64, kind: FormKind) -> Result<Vec<QForm>> {
    check_discriminant(&BigInt::from(d))?;
    let mut out = Vec::new();
    match kind {
        FormKind::Simple => {
            for n in 1..=d / 4 {
                let b2 = d - 4 * n;
                let b = b2.sqrt();
                if b * b != b2 {
                    continue;
                }
                for a in positive_divisors(n) {
                    let c = -(n / a);
                    out.push(QForm::new(a, b, c));
                    if b != 0 {
                        out.push(QForm::new(a, -b, c));
                    }
                }
            }
        }
        FormKind::Reduced => {
            for b in 1..=(d + 1) / 2 {
                let n4 = b * b - d;
                if n4 <= 0 || n4 % 4 != 0 {
                    continue;
                }
                let n = n4 / 4;
                for a in positive_divisors(n) {
                    let c = n / a;
                    if a + c < b {
                        out.push(QForm::new(a, b, c));
                    }
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// reduced `[a, b, c]` to simple `[a, b - 2a, c - b + a]`
    Forward,
    Backward,
}

/// The bijection between reduced forms and simple forms with `a + b + c > 0`.
pub fn reduced_simple_bijection(q: &QForm, dir: Direction) -> Result<QForm> {
    match dir {
        Direction::Forward => {
            if !q.is_reduced() {
                return Err(Error::PreconditionViolated(format!("{q} is not reduced")));
            }
            Ok(q.act(&Mat2::new(1, -1, 0, 1)))
        }
        Direction::Backward => {
            let sum = &q.a + &q.b + &q.c;
            if !q.is_simple() || sum <= BigInt::from(0) {
                return Err(Error::PreconditionViolated(format!(
                    "{q} is not simple with a + b + c > 0"
                )));
            }
            Ok(q.act(&Mat2::t()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn forms(v: &[[i64; 3]]) -> Vec<QForm> {
        let mut out: Vec<QForm> = v.iter().map(|f| QForm::new(f[0], f[1], f[2])).collect();
        out.sort();
        out
    }

    #[test]
    fn small_discriminants() {
        assert_eq!(enumerate_forms(5, FormKind::Simple).unwrap(), forms(&[[1, 1, -1], [1, -1, -1]]));
        assert_eq!(enumerate_forms(5, FormKind::Reduced).unwrap(), forms(&[[1, 3, 1]]));
        assert_eq!(
            enumerate_forms(8, FormKind::Simple).unwrap(),
            forms(&[[1, 2, -1], [1, -2, -1], [1, 0, -2], [2, 0, -1]])
        );
        assert!(matches!(enumerate_forms(9, FormKind::Simple), Err(Error::SquareDiscriminant(_))));
        assert!(matches!(enumerate_forms(-3, FormKind::Simple), Err(Error::NonPositiveDiscriminant(_))));
    }

    #[test]
    fn bijection_examples() {
        let r = QForm::new(1, 3, 1);
        let s = reduced_simple_bijection(&r, Direction::Forward).unwrap();
        assert_eq!(s, QForm::new(1, 1, -1));
        assert_eq!(reduced_simple_bijection(&s, Direction::Backward).unwrap(), r);
        let bad = reduced_simple_bijection(&QForm::new(1, -1, -1), Direction::Backward);
        assert!(matches!(bad, Err(Error::PreconditionViolated(_))));
    }
}
