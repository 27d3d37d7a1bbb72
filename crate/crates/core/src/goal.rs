//! Goals and the basic goal combinators.

use std::fmt;
use std::sync::Arc;

use crate::state::{disunify_terms, unify_terms, State};
use crate::stream::{self, interleave_lazy, Lazy, StepLimitReached, Stream, StreamIter};
use crate::term::{Logical, Term};

/// Values a goal may carry alongside each solution.
pub trait GoalValue: Clone + Send + Sync + 'static {}

impl<X: Clone + Send + Sync + 'static> GoalValue for X {}

type GoalFn<X> = dyn Fn(State) -> Stream<(State, X)> + Send + Sync;

/// A relational computation: maps a state to a stream of successor states,
/// each paired with a result value.
pub struct Goal<X = ()> {
    run: Arc<GoalFn<X>>,
}

impl<X> Clone for Goal<X> {
    fn clone(&self) -> Self {
        Goal {
            run: Arc::clone(&self.run),
        }
    }
}

impl<X> fmt::Debug for Goal<X> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Goal(..)")
    }
}

impl<X: GoalValue> Goal<X> {
    pub fn new(run: impl Fn(State) -> Stream<(State, X)> + Send + Sync + 'static) -> Self {
        Goal { run: Arc::new(run) }
    }

    pub fn apply(&self, state: State) -> Stream<(State, X)> {
        (self.run)(state)
    }

    /// Defers building the goal until it is run; recursive relations that
    /// do not go through [`fresh`] need this to stay finite.
    pub fn delay(make: impl Fn() -> Goal<X> + Send + Sync + 'static) -> Self {
        let make = Arc::new(make);
        Goal::new(move |state| {
            let make = Arc::clone(&make);
            Stream::delay(move || make().apply(state))
        })
    }

    /// Conjunction keeping the result of `next`.
    pub fn and<Y: GoalValue>(self, next: Goal<Y>) -> Goal<Y> {
        conj(self, next)
    }

    pub fn or(self, other: Goal<X>) -> Goal<X> {
        disj(self, other)
    }

    /// Sequencing with value passing.
    pub fn bind<Y: GoalValue>(self, next: impl Fn(X) -> Goal<Y> + Send + Sync + 'static) -> Goal<Y> {
        let next = Arc::new(next);
        Goal::new(move |state| {
            let next = Arc::clone(&next);
            stream::bind(self.apply(state), Arc::new(move |(state, x)| next(x).apply(state)))
        })
    }

    pub fn map<Y: GoalValue>(self, f: impl Fn(X) -> Y + Send + Sync + 'static) -> Goal<Y> {
        let f = Arc::new(f);
        Goal::new(move |state| {
            let f = Arc::clone(&f);
            stream::map(self.apply(state), Arc::new(move |(state, x)| (state, f(x))))
        })
    }

    /// Discards the result value.
    pub fn void(self) -> Goal<()> {
        self.map(|_| ())
    }
}

pub fn successo<X: GoalValue>(value: X) -> Goal<X> {
    Goal::new(move |state| Stream::single((state, value.clone())))
}

pub fn failo<X: GoalValue>() -> Goal<X> {
    Goal::new(|_| Stream::Done)
}

/// `===`: unifies two terms of the same type.
pub fn eq<T: Logical>(left: Term<T>, right: Term<T>) -> Goal {
    Goal::new(move |state| match unify_terms(&left, &right, state) {
        Some(state) => Stream::single((state, ())),
        None => Stream::Done,
    })
}

/// `=/=`: constrains two terms of the same type to stay different.
pub fn neq<T: Logical>(left: Term<T>, right: Term<T>) -> Goal {
    Goal::new(move |state| match disunify_terms(&left, &right, state) {
        Some(state) => Stream::single((state, ())),
        None => Stream::Done,
    })
}

pub fn conj<X: GoalValue, Y: GoalValue>(first: Goal<X>, second: Goal<Y>) -> Goal<Y> {
    Goal::new(move |state| {
        let second = second.clone();
        stream::bind(first.apply(state), Arc::new(move |(state, _)| second.apply(state)))
    })
}

pub fn conj_many(goals: impl IntoIterator<Item = Goal>) -> Goal {
    let mut goals: Vec<Goal> = goals.into_iter().collect();
    match goals.len() {
        0 => successo(()),
        1 => goals.pop().unwrap(),
        _ => {
            let last = goals.pop().unwrap();
            goals.into_iter().rev().fold(last, |acc, g| conj(g, acc))
        }
    }
}

pub fn disj<X: GoalValue>(first: Goal<X>, second: Goal<X>) -> Goal<X> {
    Goal::new(move |state| {
        let second = second.clone();
        let other = state.clone();
        interleave_lazy(first.apply(state), Lazy::new(move || second.apply(other)))
    })
}

pub fn disj_many<X: GoalValue>(goals: impl IntoIterator<Item = Goal<X>>) -> Goal<X> {
    let mut goals: Vec<Goal<X>> = goals.into_iter().collect();
    match goals.len() {
        0 => failo(),
        1 => goals.pop().unwrap(),
        _ => {
            let goals: Arc<[Goal<X>]> = goals.into();
            Goal::new(move |state| disj_slice(&goals, 0, state))
        }
    }
}

fn disj_slice<X: GoalValue>(goals: &Arc<[Goal<X>]>, from: usize, state: State) -> Stream<(State, X)> {
    let head = goals[from].apply(state.clone());
    if from + 1 == goals.len() {
        return head;
    }
    let goals = Arc::clone(goals);
    interleave_lazy(head, Lazy::new(move || disj_slice(&goals, from + 1, state)))
}

/// Disjunction of conjunctions.
pub fn conde(alternatives: impl IntoIterator<Item = Vec<Goal>>) -> Goal {
    disj_many(alternatives.into_iter().map(conj_many))
}

/// Shapes of fresh variables: a single term, `()`, or a tuple of them.
pub trait Fresh: Clone + Send + Sync + 'static {
    const ARITY: usize;

    fn allocate(state: &mut State) -> Self;

    /// Deep-walks every term under `state`.
    fn resolve(&self, state: &State) -> Self;
}

impl<T: Logical> Fresh for Term<T> {
    const ARITY: usize = 1;

    fn allocate(state: &mut State) -> Self {
        Term::Var(state.fresh_var())
    }

    fn resolve(&self, state: &State) -> Self {
        self.walk(state)
    }
}

impl Fresh for () {
    const ARITY: usize = 0;

    fn allocate(_state: &mut State) -> Self {}

    fn resolve(&self, _state: &State) -> Self {}
}

macro_rules! fresh_tuple {
    ($(($($name:ident $idx:tt),+))*) => {$(
        impl<$($name: Fresh),+> Fresh for ($($name,)+) {
            const ARITY: usize = 0 $(+ $name::ARITY)+;

            fn allocate(state: &mut State) -> Self {
                ($($name::allocate(state),)+)
            }

            fn resolve(&self, state: &State) -> Self {
                ($(self.$idx.resolve(state),)+)
            }
        }
    )*};
}

fresh_tuple! {
    (A 0)
    (A 0, B 1)
    (A 0, B 1, C 2)
    (A 0, B 1, C 2, D 3)
    (A 0, B 1, C 2, D 3, E 4)
    (A 0, B 1, C 2, D 3, E 4, F 5)
    (A 0, B 1, C 2, D 3, E 4, F 5, G 6)
}

/// Allocates fresh variables and hands them to `body`. The body is built
/// lazily, which is what keeps recursive relations productive.
pub fn fresh<V: Fresh, X: GoalValue>(body: impl Fn(V) -> Goal<X> + Send + Sync + 'static) -> Goal<X> {
    let body = Arc::new(body);
    Goal::new(move |mut state| {
        let vars = V::allocate(&mut state);
        let body = Arc::clone(&body);
        Stream::delay(move || body(vars).apply(state))
    })
}

/// Runs `relation` from the empty state and yields its query variables
/// deep-walked under each solution.
pub fn run<V: Fresh, X: GoalValue>(relation: impl FnOnce(V) -> Goal<X>) -> Answers<V, X> {
    let mut state = State::new();
    let vars = V::allocate(&mut state);
    let goal = relation(vars.clone());
    Answers {
        vars,
        stream: goal.apply(state).into_iter(),
    }
}

/// Lazy sequence of answers produced by [`run`].
pub struct Answers<V, X = ()> {
    vars: V,
    stream: StreamIter<(State, X)>,
}

impl<V: Fresh, X: GoalValue> Answers<V, X> {
    /// The next solution together with the raw (unwalked) query variables
    /// and the state they live in.
    pub fn next_state(&mut self) -> Option<(V, State, X)> {
        self.stream.next().map(|(state, x)| (self.vars.clone(), state, x))
    }

    /// Like [`Answers::next_state`], failing once `limit` stream steps have
    /// been forced in total.
    pub fn next_state_within(&mut self, limit: u64) -> Result<Option<(V, State, X)>, StepLimitReached> {
        Ok(self
            .stream
            .next_within(limit)?
            .map(|(state, x)| (self.vars.clone(), state, x)))
    }

    pub fn steps(&self) -> u64 {
        self.stream.steps()
    }
}

impl<V: Fresh, X: GoalValue> Iterator for Answers<V, X> {
    type Item = V;

    fn next(&mut self) -> Option<V> {
        self.stream.next().map(|(state, _)| self.vars.resolve(&state))
    }
}
