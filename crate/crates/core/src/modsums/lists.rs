use num_bigint::BigInt;
use serde::Serialize;

use super::{a_sum_stream, Representation, SumRequest, SumScope, SumStatus};
use crate::error::Result;
use crate::qforms::{class_decomposition, Group, QForm};
use crate::real::Real;

/// One row of a table: the form `Q|gamma_i` and its value at `x`.
#[derive(Clone, Debug, Serialize)]
pub struct ListRow {
    pub step: usize,
    pub form: QForm,
    pub value: Real,
    /// Passes `Q(gamma(inf)) < 0 < Q(floor(gamma(x)))`, i.e. belongs to `Q_D<x>`.
    pub included: bool,
    pub closing: bool,
}

/// The orbit of one simple form under Gamma(x).
#[derive(Clone, Debug, Serialize)]
pub struct ZagierList {
    pub simple: QForm,
    /// `-Q`; the table rows are the forms of negative leading coefficient
    /// reached from it.
    pub negated: QForm,
    pub rows: Vec<ListRow>,
    /// Sum of the included values.
    pub sum: Real,
    /// Sum of all values, included or not.
    pub sum_unconditioned: Real,
    pub status: SumStatus,
}

/// The lists of forms `Q|gamma_i`, one per simple form of discriminant `D`,
/// in class and cycle order, up to expansion index `depth`.
pub fn zagier_lists(d: &BigInt, x: &Real, depth: usize) -> Result<Vec<ZagierList>> {
    let classes = class_decomposition(d, Group::Gamma1)?;
    let mut out = Vec::new();
    for q in classes.iter().flat_map(|c| c.simple_cycle.iter()) {
        let scope = SumScope::Class(crate::qforms::FormClass {
            group: Group::Gamma1,
            canonical: q.clone(),
            simple_cycle: vec![q.clone()],
            reduced_cycle: Vec::new(),
            sigma_simple_cycle: Vec::new(),
            sigma_reduced_cycle: Vec::new(),
        });
        let req = SumRequest {
            scope,
            k: 2,
            x: x.clone(),
            representation: Representation::SimpleGammaUnconditioned,
            tol: f64::MIN_POSITIVE,
            depth,
            ledger: true,
        };
        let res = a_sum_stream(&req)?;
        let mut sum = Real::zero();
        let mut sum_all = Real::zero();
        let rows: Vec<ListRow> = res
            .ledger
            .into_iter()
            .map(|r| {
                let included = r.cond_infinity && r.cond_x;
                sum_all = sum_all.add(&r.value);
                if included {
                    sum = sum.add(&r.value);
                }
                ListRow {
                    step: r.step,
                    form: r.image.expect("form sums record images"),
                    value: r.value,
                    included,
                    closing: r.closing,
                }
            })
            .collect();
        out.push(ZagierList {
            simple: q.clone(),
            negated: q.neg(),
            rows,
            sum,
            sum_unconditioned: sum_all,
            status: res.status,
        });
    }
    Ok(out)
}
