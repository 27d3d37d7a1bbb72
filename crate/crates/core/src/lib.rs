//! A statically typed relational programming engine in the miniKanren
//! family.
//!
//! Terms are typed ([`Term<T>`]), goals are ordinary values ([`Goal`]),
//! algebraic types enter the relational world through
//! `#[derive(Logical)]`, and constructor patterns are first-class values
//! that can be checked for exhaustiveness.
//!
//! ```
//! use kanren::prelude::*;
//! use kanren::stdlib::list::{appendo, List};
//!
//! let splits: Vec<_> = run(|(xs, ys): (Term<List<i64>>, Term<List<i64>>)| {
//!     appendo(xs, ys, Term::inject(List::from(vec![1, 2])))
//! })
//! .map(|(xs, ys)| (xs.extract().unwrap(), ys.extract().unwrap()))
//! .collect();
//! assert_eq!(splits.len(), 3);
//! ```

extern crate self as kanren;

pub mod batch;
pub mod goal;
pub mod logicgen;
pub mod matching;
pub mod scheme;
pub mod state;
pub mod stdlib;
pub mod stream;
pub mod suites;
pub mod term;

pub use goal::{conde, conj, conj_many, disj, disj_many, eq, failo, fresh, neq, run, successo, Answers, Fresh, Goal};
pub use kanren_derive::{logic_types, Logical};
pub use logicgen::{Adt, ConstructorDescriptor, FieldDescriptor, FieldShape, TypeDescriptor};
pub use matching::{
    enter_checked, enter_tagged, matche, Checked, Exhaustive, ExhaustiveMatcher, MatchError, Matcher, MatcherBuilder,
    Pattern, Remaining, Tag, TaggedMatcher, TaggedPattern,
};
pub use state::{add_subst, disunify_terms, unify_terms, State};
pub use stream::{Lazy, StepLimitReached, Stream};
pub use term::{ErasedVar, Logical, Symbol, Term, VarId};

/// The names most programs need.
pub mod prelude {
    pub use crate::{
        conde, conj, conj_many, disj, disj_many, enter_checked, enter_tagged, eq, failo, fresh, matche, neq, run,
        successo, Adt, Fresh, Goal, Logical, Symbol, Term,
    };
}
