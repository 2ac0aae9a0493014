//! Binary quadratic forms and even-degree integer polynomials.

mod classes;
mod enumerate;
mod form;
mod poly;

pub use classes::{
    class_decomposition, class_decompositions, minus_purely_periodic, reduce_to_class, reduce_to_simple, reduced_cycle,
    simple_cycle, simple_purely_periodic, ClassDump, FormClass, Group,
};
pub use enumerate::{enumerate_forms, reduced_simple_bijection, Direction, FormKind};
pub use form::{check_discriminant, QForm};
pub use poly::{form_power_sum, IntPoly};
