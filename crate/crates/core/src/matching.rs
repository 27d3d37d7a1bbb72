//! First-class bidirectional patterns and relational matching.
//!
//! [`matche`] builds an ordinary relational match: each branch allocates
//! fresh variables for the constructor's fields, unifies the scrutinee with
//! the constructed value and runs its handler.
//!
//! The exhaustive variant tracks which constructors have been claimed.
//! [`enter_tagged`] starts with every constructor `Remaining`, each
//! [`TaggedMatcher::on_tagged`] flips one to [`Checked`], and
//! [`TaggedMatcher::matche_exhaustive`] only type-checks once nothing is
//! left. [`enter_checked`] offers the same bookkeeping at construction time
//! for matchers assembled dynamically. Exhaustive matchers also dispatch
//! directly on ground scrutinees instead of trying every branch.

use std::fmt;
use std::marker::PhantomData;
use std::sync::Arc;

use crate::goal::{disj_many, eq, fresh, Fresh, Goal, GoalValue};
use crate::logicgen::Adt;
use crate::stream::Stream;
use crate::term::{Logical, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Tag {
    pub index: usize,
    pub name: &'static str,
}

/// A prism on logical values of `T`: matches a constructor and exposes its
/// fields as the binding `B`, and builds the constructor back from them.
pub struct Pattern<T: Logical, B> {
    tag: Tag,
    matcher: fn(&T::Logic) -> Option<B>,
    builder: fn(B) -> T::Logic,
}

impl<T: Logical, B> Clone for Pattern<T, B> {
    fn clone(&self) -> Self {
        *self
    }
}

impl<T: Logical, B> Copy for Pattern<T, B> {}

impl<T: Logical, B> fmt::Debug for Pattern<T, B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Pattern").field("tag", &self.tag).finish()
    }
}

impl<T: Logical, B> Pattern<T, B> {
    pub const fn new(tag: Tag, matcher: fn(&T::Logic) -> Option<B>, builder: fn(B) -> T::Logic) -> Self {
        Pattern { tag, matcher, builder }
    }

    pub fn tag(&self) -> Tag {
        self.tag
    }

    pub fn try_match(&self, value: &T::Logic) -> Option<B> {
        (self.matcher)(value)
    }

    pub fn build(&self, binding: B) -> T::Logic {
        (self.builder)(binding)
    }
}

type Handler<T, X> = Arc<dyn Fn(Term<T>) -> Goal<X> + Send + Sync>;
type Direct<T, X> = Arc<dyn Fn(&<T as Logical>::Logic) -> Option<Goal<X>> + Send + Sync>;

struct Branch<T: Logical, X> {
    tag: Tag,
    // fresh + unify + handler
    naive: Handler<T, X>,
    // handler applied to the fields of an already constructed value
    direct: Direct<T, X>,
}

impl<T: Logical, X> Clone for Branch<T, X> {
    fn clone(&self) -> Self {
        Branch {
            tag: self.tag,
            naive: Arc::clone(&self.naive),
            direct: Arc::clone(&self.direct),
        }
    }
}

fn branch<T, B, X>(pattern: Pattern<T, B>, handler: impl Fn(B) -> Goal<X> + Send + Sync + 'static) -> Branch<T, X>
where
    T: Logical,
    B: Fresh,
    X: GoalValue,
{
    let handler = Arc::new(handler);
    let direct_handler = Arc::clone(&handler);
    Branch {
        tag: pattern.tag,
        naive: Arc::new(move |term: Term<T>| {
            let handler = Arc::clone(&handler);
            fresh(move |binding: B| {
                let built = Term::value(pattern.build(binding.clone()));
                eq(term.clone(), built).and(handler(binding))
            })
        }),
        direct: Arc::new(move |value| pattern.try_match(value).map(|b| direct_handler(b))),
    }
}

fn naive_goal<T: Logical, X: GoalValue>(branches: &[Branch<T, X>], term: &Term<T>) -> Goal<X> {
    disj_many(branches.iter().map(|b| (b.naive)(term.clone())))
}

/// An ordinary relational match: the ordered disjunction of its branches.
pub struct Matcher<T: Logical, X = ()> {
    branches: Vec<Branch<T, X>>,
}

impl<T: Logical, X> Clone for Matcher<T, X> {
    fn clone(&self) -> Self {
        Matcher {
            branches: self.branches.clone(),
        }
    }
}

/// A match with no branches; applied to anything it fails.
pub fn matche<T: Logical, X: GoalValue>() -> Matcher<T, X> {
    Matcher { branches: Vec::new() }
}

impl<T: Logical, X: GoalValue> Matcher<T, X> {
    /// Adds one alternative.
    pub fn on<B: Fresh>(
        mut self,
        pattern: Pattern<T, B>,
        handler: impl Fn(B) -> Goal<X> + Send + Sync + 'static,
    ) -> Self {
        self.branches.push(branch(pattern, handler));
        self
    }

    pub fn len(&self) -> usize {
        self.branches.len()
    }

    pub fn is_empty(&self) -> bool {
        self.branches.is_empty()
    }

    pub fn apply(&self, term: Term<T>) -> Goal<X> {
        naive_goal(&self.branches, &term)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum MatchError {
    #[error("non-exhaustive match on `{type_name}`: constructor(s) {} not covered", .missing.join(", "))]
    NonExhaustive {
        type_name: &'static str,
        missing: Vec<&'static str>,
    },
    #[error("constructor `{constructor}` of `{type_name}` is matched more than once")]
    DuplicateClaim {
        type_name: &'static str,
        constructor: &'static str,
    },
}

/// Builder for exhaustive matchers with construction-time bookkeeping of
/// claimed constructors.
pub struct MatcherBuilder<T: Adt, X> {
    branches: Vec<Branch<T, X>>,
    covered: Vec<bool>,
    duplicate: Option<&'static str>,
}

/// Starts an exhaustive match with every constructor unclaimed.
pub fn enter_checked<T: Adt, X: GoalValue>() -> MatcherBuilder<T, X> {
    MatcherBuilder {
        branches: Vec::new(),
        covered: vec![false; T::DESCRIPTOR.constructors.len()],
        duplicate: None,
    }
}

impl<T: Adt, X: GoalValue> MatcherBuilder<T, X> {
    pub fn on<B: Fresh>(
        mut self,
        pattern: Pattern<T, B>,
        handler: impl Fn(B) -> Goal<X> + Send + Sync + 'static,
    ) -> Self {
        let claimed = &mut self.covered[pattern.tag.index];
        if *claimed {
            self.duplicate.get_or_insert(pattern.tag.name);
        }
        *claimed = true;
        self.branches.push(branch(pattern, handler));
        self
    }

    pub fn covered_tags(&self) -> Vec<&'static str> {
        self.tags_where(true)
    }

    pub fn remaining_tags(&self) -> Vec<&'static str> {
        self.tags_where(false)
    }

    fn tags_where(&self, covered: bool) -> Vec<&'static str> {
        T::DESCRIPTOR
            .constructor_names()
            .zip(&self.covered)
            .filter(|(_, c)| **c == covered)
            .map(|(name, _)| name)
            .collect()
    }

    /// Closes the match, failing if a constructor was claimed twice or not
    /// at all.
    pub fn matche(self) -> Result<ExhaustiveMatcher<T, X>, MatchError> {
        let type_name = T::DESCRIPTOR.name;
        if let Some(constructor) = self.duplicate {
            return Err(MatchError::DuplicateClaim { type_name, constructor });
        }
        let missing = self.remaining_tags();
        if !missing.is_empty() {
            return Err(MatchError::NonExhaustive { type_name, missing });
        }
        let mut by_tag = vec![usize::MAX; self.covered.len()];
        for (i, b) in self.branches.iter().enumerate() {
            by_tag[b.tag.index] = i;
        }
        Ok(ExhaustiveMatcher {
            branches: self.branches.into(),
            by_tag: by_tag.into(),
        })
    }
}

/// A match known to cover every constructor exactly once.
pub struct ExhaustiveMatcher<T: Adt, X = ()> {
    branches: Arc<[Branch<T, X>]>,
    by_tag: Arc<[usize]>,
}

impl<T: Adt, X> Clone for ExhaustiveMatcher<T, X> {
    fn clone(&self) -> Self {
        ExhaustiveMatcher {
            branches: Arc::clone(&self.branches),
            by_tag: Arc::clone(&self.by_tag),
        }
    }
}

impl<T: Adt, X> fmt::Debug for ExhaustiveMatcher<T, X> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ExhaustiveMatcher")
            .field("type", &T::DESCRIPTOR.name)
            .field(
                "branches",
                &self.branches.iter().map(|b| b.tag.name).collect::<Vec<_>>(),
            )
            .finish()
    }
}

impl<T: Adt, X: GoalValue> ExhaustiveMatcher<T, X> {
    /// If the scrutinee is already a constructed value, runs only the
    /// branch for its constructor, binding the fields directly. Otherwise
    /// behaves like the plain disjunction of branches.
    pub fn apply(&self, term: Term<T>) -> Goal<X> {
        let this = self.clone();
        Goal::new(move |state| match state.shallow_walk(&term) {
            Term::Value(value) => {
                let branch = &this.branches[this.by_tag[T::constructor_index(&value)]];
                match (branch.direct)(&value) {
                    Some(goal) => Stream::delay(move || goal.apply(state)),
                    None => Stream::Done,
                }
            }
            var => naive_goal(&this.branches, &var).apply(state),
        })
    }

    /// The same match without ground dispatch.
    pub fn apply_naive(&self, term: Term<T>) -> Goal<X> {
        naive_goal(&self.branches, &term)
    }

    /// Ground dispatch on its own: the branch a constructed scrutinee
    /// selects under `state`, or `None` when it is still a variable.
    pub fn dispatch(&self, term: &Term<T>, state: &crate::State) -> Option<Tag> {
        match state.shallow_walk(term) {
            Term::Value(value) => Some(self.branches[self.by_tag[T::constructor_index(&value)]].tag),
            Term::Var(_) => None,
        }
    }
}

/// Tag of a constructor that has not been matched yet. `C` is the marker
/// type the derive generates for that constructor, so diagnostics name it.
pub struct Remaining<C>(PhantomData<C>);

/// Tag of a constructor that already has a branch.
pub struct Checked;

/// Algebraic types whose matches can be checked for exhaustiveness at
/// compile time. `Tags` is a tuple with one `Remaining<_>` per constructor.
pub trait Exhaustive: Adt {
    type Tags;
}

/// Satisfied only by tag tuples in which every constructor is [`Checked`].
#[diagnostic::on_unimplemented(
    message = "relational match is not exhaustive: tag state `{Self}` still has unmatched constructors",
    label = "every `Remaining<..>` entry is a constructor without an `on_tagged` branch",
    note = "add an `on_tagged` branch for each constructor whose tag is still `Remaining`"
)]
pub trait Exhausted {}

macro_rules! exhausted_tuples {
    ($($($c:ident)*;)*) => {$(
        impl Exhausted for ($($c,)*) {}
    )*};
}

exhausted_tuples! {
    ;
    Checked;
    Checked Checked;
    Checked Checked Checked;
    Checked Checked Checked Checked;
    Checked Checked Checked Checked Checked;
    Checked Checked Checked Checked Checked Checked;
    Checked Checked Checked Checked Checked Checked Checked;
    Checked Checked Checked Checked Checked Checked Checked Checked;
    Checked Checked Checked Checked Checked Checked Checked Checked Checked;
    Checked Checked Checked Checked Checked Checked Checked Checked Checked Checked;
    Checked Checked Checked Checked Checked Checked Checked Checked Checked Checked Checked;
    Checked Checked Checked Checked Checked Checked Checked Checked Checked Checked Checked Checked;
}

/// Most constructors a type may have and still get tag-tracking patterns.
pub const MAX_TAGGED_CONSTRUCTORS: usize = 12;

/// A pattern that moves the tag state from `Before` to `After`.
pub struct TaggedPattern<T: Logical, B, Before, After> {
    pattern: Pattern<T, B>,
    _tags: PhantomData<fn(Before) -> After>,
}

impl<T: Logical, B, Before, After> TaggedPattern<T, B, Before, After> {
    #[doc(hidden)]
    pub const fn from_pattern(pattern: Pattern<T, B>) -> Self {
        TaggedPattern {
            pattern,
            _tags: PhantomData,
        }
    }

    pub fn pattern(&self) -> Pattern<T, B> {
        self.pattern
    }
}

/// An exhaustive match under construction whose tag state `S` lives in
/// the type.
pub struct TaggedMatcher<T: Adt, X, S> {
    inner: MatcherBuilder<T, X>,
    _tags: PhantomData<fn() -> S>,
}

/// Attaches the all-`Remaining` tag state to a new match on `T`.
pub fn enter_tagged<T: Exhaustive, X: GoalValue>() -> TaggedMatcher<T, X, T::Tags> {
    TaggedMatcher {
        inner: enter_checked(),
        _tags: PhantomData,
    }
}

impl<T: Exhaustive, X: GoalValue, S> TaggedMatcher<T, X, S> {
    /// Adds the branch for one `Remaining` constructor, marking it
    /// `Checked` for the rest of the chain.
    pub fn on_tagged<B: Fresh, S2>(
        self,
        pattern: TaggedPattern<T, B, S, S2>,
        handler: impl Fn(B) -> Goal<X> + Send + Sync + 'static,
    ) -> TaggedMatcher<T, X, S2> {
        TaggedMatcher {
            inner: self.inner.on(pattern.pattern, handler),
            _tags: PhantomData,
        }
    }

    /// Closes the match; only compiles once every constructor is `Checked`.
    pub fn matche_exhaustive(self) -> ExhaustiveMatcher<T, X>
    where
        S: Exhausted,
    {
        match self.inner.matche() {
            Ok(matcher) => matcher,
            Err(err) => panic!("tag state disagrees with claimed constructors: {err}"),
        }
    }
}
