//! The matrix sets Gamma(x), Gamma(x)' and Gamma_1(x) as streams of elements
//! carrying everything the sums need.
//!
//! For rational `x` each family also contains the closing matrices that send
//! `x` to infinity (`delta = 0`); they are what makes the bijections with the
//! finite sets of forms exact.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use super::minus::MinusCf;
use super::plus::PlusCf;
use crate::error::Result;
use crate::mat2::Mat2;
use crate::real::Real;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// Gamma(x), from the regular expansion.
    Gamma,
    /// Gamma(x)', the shifted blocks `T^{-k} gamma_i`.
    GammaPrime,
    /// Gamma_1(x), from the negative expansion.
    Gamma1,
}

/// One matrix `g` of a family, together with `g (x, 1)^T = ±(v0, v1)^T`.
///
/// For a polynomial `P` of even degree `d`, `(P|g)(x) = P_hom(v0, v1)`.
#[derive(Clone, Debug, Serialize)]
pub struct FamilyElem {
    /// Index `i` of the underlying expansion step.
    pub index: usize,
    /// The `k` in `T^{-k} gamma_i`; zero outside Gamma(x)'.
    #[serde(serialize_with = "crate::ser::big")]
    pub shift: BigInt,
    pub matrix: Mat2,
    pub v0: Real,
    pub v1: Real,
    /// `floor(g(x))`, or `None` when `g(x)` is infinity.
    #[serde(serialize_with = "crate::ser::big_opt")]
    pub image_floor: Option<BigInt>,
    pub closing: bool,
}

impl FamilyElem {
    /// `g(x) = v0 / v1`, `None` for infinity.
    pub fn image(&self) -> Result<Option<Real>> {
        if self.v1.is_zero() {
            Ok(None)
        } else {
            Ok(Some(self.v0.div(&self.v1)?))
        }
    }
}

/// Gamma(x) = {gamma_1, gamma_2, ...}.
pub struct GammaFamily {
    inner: PlusCf,
    pending: Option<FamilyElem>,
    done: bool,
}

impl GammaFamily {
    pub fn new(x: &Real) -> Self {
        GammaFamily {
            inner: PlusCf::new(x),
            pending: None,
            done: false,
        }
    }
}

impl Iterator for GammaFamily {
    type Item = Result<FamilyElem>;

    fn next(&mut self) -> Option<Self::Item> {
        if let Some(e) = self.pending.take() {
            return Some(Ok(e));
        }
        if self.done {
            return None;
        }
        loop {
            let step = match self.inner.next() {
                None => {
                    self.done = true;
                    return None;
                }
                Some(Err(e)) => {
                    self.done = true;
                    return Some(Err(e));
                }
                Some(Ok(s)) => s,
            };
            if step.terminal {
                self.done = true;
                let closing = FamilyElem {
                    index: step.index + 1,
                    shift: BigInt::zero(),
                    matrix: Mat2::epsilon().mul(&Mat2::t_pow(&-&step.digit)).mul(&step.gamma),
                    v0: step.delta.clone(),
                    v1: Real::zero(),
                    image_floor: None,
                    closing: true,
                };
                if step.index == 0 {
                    return Some(Ok(closing));
                }
                self.pending = Some(closing);
            }
            if step.index == 0 {
                continue;
            }
            return Some(Ok(FamilyElem {
                index: step.index,
                shift: BigInt::zero(),
                matrix: step.gamma,
                v0: step.delta_prev,
                v1: step.delta,
                image_floor: Some(step.digit),
                closing: false,
            }));
        }
    }
}

/// Gamma_1(x) = {gamma~_1, gamma~_2, ...}.
pub struct Gamma1Family {
    inner: MinusCf,
    pending: Option<FamilyElem>,
    done: bool,
}

impl Gamma1Family {
    pub fn new(x: &Real) -> Self {
        Gamma1Family {
            inner: MinusCf::new(x),
            pending: None,
            done: false,
        }
    }
}

impl Iterator for Gamma1Family {
    type Item = Result<FamilyElem>;

    fn next(&mut self) -> Option<Self::Item> {
        if let Some(e) = self.pending.take() {
            return Some(Ok(e));
        }
        if self.done {
            return None;
        }
        loop {
            let step = match self.inner.next() {
                None => {
                    self.done = true;
                    return None;
                }
                Some(Err(e)) => {
                    self.done = true;
                    return Some(Err(e));
                }
                Some(Ok(s)) => s,
            };
            if step.terminal {
                self.done = true;
                let closing = FamilyElem {
                    index: step.index + 1,
                    shift: BigInt::zero(),
                    matrix: Mat2::s().mul(&Mat2::t_pow(&-&step.digit)).mul(&step.gamma),
                    v0: step.delta.clone(),
                    v1: Real::zero(),
                    image_floor: None,
                    closing: true,
                };
                if step.index == 0 {
                    return Some(Ok(closing));
                }
                self.pending = Some(closing);
            }
            if step.index == 0 {
                continue;
            }
            // floor(x_i) = m_i - 1 unless x_i is an integer
            let image_floor = if step.terminal {
                step.digit.clone()
            } else {
                &step.digit - 1
            };
            return Some(Ok(FamilyElem {
                index: step.index,
                shift: BigInt::zero(),
                matrix: step.gamma,
                v0: step.delta_prev,
                v1: step.delta,
                image_floor: Some(image_floor),
                closing: false,
            }));
        }
    }
}

/// Gamma(x)' = {T^{-k} gamma_i : 1 <= k <= n_i, i >= 1}.
///
/// For rational `x` the closing block `T^{-k} gamma_{N+1}` has no upper limit
/// on `k`; `closing_shifts` bounds how many of its elements are produced.
pub struct GammaPrimeFamily {
    inner: GammaFamily,
    current: Option<FamilyElem>,
    k: BigInt,
    closing_shifts: u64,
}

impl GammaPrimeFamily {
    pub fn new(x: &Real, closing_shifts: u64) -> Self {
        GammaPrimeFamily {
            inner: GammaFamily::new(x),
            current: None,
            k: BigInt::zero(),
            closing_shifts,
        }
    }
}

impl Iterator for GammaPrimeFamily {
    type Item = Result<FamilyElem>;

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            if let Some(base) = &self.current {
                let limit = match &base.image_floor {
                    Some(n) => n.clone(),
                    None => BigInt::from(self.closing_shifts),
                };
                if self.k < limit {
                    self.k += 1;
                    let k = self.k.clone();
                    let kr = Real::from(k.clone());
                    return Some(Ok(FamilyElem {
                        index: base.index,
                        shift: k.clone(),
                        matrix: Mat2::t_pow(&-&k).mul(&base.matrix),
                        v0: base.v0.sub(&kr.mul(&base.v1)),
                        v1: base.v1.clone(),
                        image_floor: base.image_floor.as_ref().map(|n| n - &k),
                        closing: base.closing,
                    }));
                }
                self.current = None;
            }
            match self.inner.next()? {
                Err(e) => return Some(Err(e)),
                Ok(e) => {
                    self.current = Some(e);
                    self.k = BigInt::zero();
                }
            }
        }
    }
}

pub fn family_iter(family: Family, x: &Real, closing_shifts: u64) -> Box<dyn Iterator<Item = Result<FamilyElem>>> {
    match family {
        Family::Gamma => Box::new(GammaFamily::new(x)),
        Family::GammaPrime => Box::new(GammaPrimeFamily::new(x, closing_shifts)),
        Family::Gamma1 => Box::new(Gamma1Family::new(x)),
    }
}

/// Exact consistency check used by tests and the audits: `g(x, 1) = ±(v0, v1)`.
pub fn check_elem(x: &Real, e: &FamilyElem) -> bool {
    let (a, b) = e.matrix.apply_vec(x, &Real::one());
    (a == e.v0 && b == e.v1) || (a.neg() == e.v0 && b.neg() == e.v1)
}
