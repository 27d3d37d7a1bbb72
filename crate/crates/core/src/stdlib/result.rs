//! A two-constructor sum type, the smallest example of exhaustive
//! relational matching.

use crate::goal::{successo, Goal};
use crate::matching::enter_tagged;
use crate::term::Term;
use crate::Logical;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Logical)]
pub enum Result<A, B> {
    Ok(A),
    Fail(B),
}

/// Succeeds once for each constructor `r` can take: exactly once for a
/// constructed value, twice for an unbound variable.
pub fn resulto<A: crate::Logical, B: crate::Logical>(r: Term<Result<A, B>>) -> Goal {
    enter_tagged::<Result<A, B>, ()>()
        .on_tagged(LogicResult::tagged_ok(), |_| successo(()))
        .on_tagged(LogicResult::tagged_fail(), |_| successo(()))
        .matche_exhaustive()
        .apply(r)
}
