//! Regular, negative and slow continued-fraction expansions, the matrix
//! families they generate, and their description by inequalities.

mod dump;
mod family;
mod minus;
mod plus;
mod prop;
mod slow;

pub use dump::{minus_steps_csv, plus_steps_csv, slow_steps_csv};
pub use family::{
    check_elem, family_iter, Family, FamilyElem, Gamma1Family, GammaFamily, GammaPrimeFamily,
};
pub use minus::{minus_cf, minus_cf_with_rule, CFStepMinus, MinusCf, MinusRule};
pub use plus::{plus_cf, CFStepPlus, PlusCf};
pub use prop::{membership_sets, pgl2_ball, prop_membership, Classification, Membership};
pub use slow::{slow_plus, slow_simple, BlockPos, Branch, SlowEnd, SlowRun, SlowStep};
