//! The sums `A_{k,D}(x)`, `A_{k,A}(x)`, `A*_{k,B}(x)`, `P^Gamma(x)` and
//! `P^{Gamma_1}(x)` in every representation, with per-term ledgers.

mod audit;
mod direct;
mod lists;
mod stream;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::mat2::Mat2;
use crate::qforms::{enumerate_forms, FormClass, FormKind, Group, QForm};
use crate::error::{Error, Result};
use crate::real::Real;

pub use audit::{bijection_audit, quartic_sample_audit, AuditReport, QuarticAudit};
pub use direct::{a_sum_direct, a_sum_direct_rational, direct_members};
pub use lists::{zagier_lists, ListRow, ZagierList};

pub use stream::{a_star_sum, a_sum_stream, p_gamma_sum, AStarResult};

/// Which forms a sum runs over.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SumScope {
    /// Every form of discriminant `D`.
    Discriminant(BigInt),
    /// One Gamma- or Gamma_1-class.
    Class(FormClass),
}

impl SumScope {
    pub fn discriminant(&self) -> BigInt {
        match self {
            SumScope::Discriminant(d) => d.clone(),
            SumScope::Class(c) => c.discriminant(),
        }
    }

    pub fn group(&self) -> Option<Group> {
        match self {
            SumScope::Discriminant(_) => None,
            SumScope::Class(c) => Some(c.group),
        }
    }

    fn d_i64(&self) -> Result<i64> {
        let d = self.discriminant();
        i64::try_from(&d).map_err(|_| Error::InvalidArgument(format!("discriminant {d} too large")))
    }

    /// `A^Sim`.
    pub fn simple_forms(&self) -> Result<Vec<QForm>> {
        match self {
            SumScope::Discriminant(_) => enumerate_forms(self.d_i64()?, FormKind::Simple),
            SumScope::Class(c) => Ok(c.simple_members().cloned().collect()),
        }
    }

    /// `A^Red`.
    pub fn reduced_forms(&self) -> Result<Vec<QForm>> {
        match self {
            SumScope::Discriminant(_) => enumerate_forms(self.d_i64()?, FormKind::Reduced),
            SumScope::Class(c) => Ok(c.reduced_members().cloned().collect()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Representation {
    /// Finite enumeration of `Q(inf) < 0 < Q(x)`; rational `x` only.
    Direct,
    /// Simple forms against Gamma(x) with `Q(gamma(inf)) < 0 < Q(floor(gamma(x)))`.
    SimpleGamma,
    /// Reduced forms against Gamma(x)' with `R(gamma(inf)) < 0`.
    ReducedGammaPrime,
    /// Simple forms against Gamma(x), every pair kept.
    SimpleGammaUnconditioned,
    /// Simple forms against Gamma_1(x) with `Q(gamma(inf)) < 0 < Q(gamma(x))`.
    SimpleGamma1,
    /// Simple forms against Gamma_1(x), every pair kept.
    SimpleGamma1Unconditioned,
}

impl Representation {
    pub const ALL: [Representation; 6] = [
        Representation::Direct,
        Representation::SimpleGamma,
        Representation::ReducedGammaPrime,
        Representation::SimpleGammaUnconditioned,
        Representation::SimpleGamma1,
        Representation::SimpleGamma1Unconditioned,
    ];

    pub fn is_conditioned(self) -> bool {
        matches!(
            self,
            Representation::Direct
                | Representation::SimpleGamma
                | Representation::ReducedGammaPrime
                | Representation::SimpleGamma1
        )
    }
}

#[derive(Clone, Debug)]
pub struct SumRequest {
    pub scope: SumScope,
    pub k: u32,
    pub x: Real,
    pub representation: Representation,
    pub tol: f64,
    /// Maximal expansion index visited.
    pub depth: usize,
    /// Keep the per-term ledger.
    pub ledger: bool,
}

impl SumRequest {
    pub fn new(scope: SumScope, k: u32, x: Real, representation: Representation) -> Self {
        SumRequest {
            scope,
            k,
            x,
            representation,
            tol: 1e-12,
            depth: 200,
            ledger: false,
        }
    }

    pub fn tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn depth(mut self, depth: usize) -> Self {
        self.depth = depth;
        self
    }

    pub fn with_ledger(mut self) -> Self {
        self.ledger = true;
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SumStatus {
    /// Finite sum evaluated completely.
    Exact,
    /// Tail bound below the tolerance.
    Converged,
    /// Depth cap reached first; the value carries the achieved bound.
    DepthExceeded,
}

/// One `(Q, gamma)` pair, or one `gamma` for polynomial sums.
#[derive(Clone, Debug, Serialize)]
pub struct LedgerRow {
    pub step: usize,
    #[serde(serialize_with = "crate::ser::big")]
    pub shift: BigInt,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub form: Option<QForm>,
    /// `Q|gamma`
    #[serde(skip_serializing_if = "Option::is_none")]
    pub image: Option<QForm>,
    pub matrix: Mat2,
    /// `(Q|gamma)(x)`, or `(P|gamma)(x)`; the summand is its `(k-1)`-th
    /// power for form sums.
    pub value: Real,
    /// `Q(gamma(inf)) < 0`
    pub cond_infinity: bool,
    /// `Q(floor(gamma(x))) > 0` for Gamma(x), `Q(gamma(x)) > 0` for
    /// Gamma_1(x), true for Gamma(x)'.
    pub cond_x: bool,
    pub included: bool,
    pub closing: bool,
}

#[derive(Clone, Debug)]
pub struct SumResult {
    /// Certified enclosure of the sum (exact when the sum is finite and exact).
    pub value: Real,
    /// Upper bound on the discarded tail, already folded into `value`.
    pub bound: BigRational,
    /// Whether `bound` is proven; the Gamma_1 tail estimate is not.
    pub certified: bool,
    pub status: SumStatus,
    /// Summands accumulated.
    pub terms: usize,
    /// Deepest expansion index visited.
    pub depth: usize,
    pub ledger: Vec<LedgerRow>,
}

/// Decimal places in the JSON `value` field.
pub const VALUE_DIGITS: usize = 20;

impl Serialize for SumResult {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("SumResult", 8)?;
        st.serialize_field("value", &self.value_string())?;
        st.serialize_field("bound", &format!("{:e}", self.bound_f64()))?;
        st.serialize_field("enclosure", &self.value)?;
        st.serialize_field("certified", &self.certified)?;
        st.serialize_field("status", &self.status)?;
        st.serialize_field("terms", &self.terms)?;
        st.serialize_field("depth", &self.depth)?;
        if !self.ledger.is_empty() {
            st.serialize_field("ledger", &self.ledger)?;
        }
        st.end()
    }
}

impl SumResult {
    pub fn bound_f64(&self) -> f64 {
        crate::real::rational_to_f64(&self.bound)
    }

    pub fn to_f64(&self) -> f64 {
        self.value.to_f64()
    }

    /// Decimal places justified by the tail bound, at most `VALUE_DIGITS`.
    pub fn certified_digits(&self) -> usize {
        let b = self.bound_f64();
        if b <= 0.0 {
            return VALUE_DIGITS;
        }
        (-b.log10()).floor().clamp(0.0, VALUE_DIGITS as f64) as usize
    }

    /// The value rounded to `certified_digits` places.
    pub fn value_string(&self) -> String {
        self.value.to_decimal(self.certified_digits())
    }
}

fn check_k(scope: &SumScope, k: u32, rep: Representation) -> Result<()> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("k = {k} must be at least 2")));
    }
    let gamma1 = matches!(rep, Representation::SimpleGamma1 | Representation::SimpleGamma1Unconditioned)
        || scope.group() == Some(Group::Gamma1);
    if k % 2 == 1 && !gamma1 {
        return Err(Error::OddWeightForGammaScope(k));
    }
    Ok(())
}
