//! Search state: triangular substitution, disequality store and the
//! variable counter, plus typed unification and disunification.

use std::any::{Any, TypeId};
use std::fmt;
use std::sync::Arc;

use imbl::shared_ptr::DefaultSharedPtr;
use imbl::GenericHashMap;
use rustc_hash::FxBuildHasher;

use crate::term::{Logical, Term, VarId};

type IntMap<V> = GenericHashMap<u32, V, FxBuildHasher, DefaultSharedPtr>;

struct ErasedOps {
    type_id: fn() -> TypeId,
    type_name: fn() -> &'static str,
    unify_with_var: fn(u32, &ErasedTerm, State) -> Option<State>,
    fmt: fn(&ErasedTerm, &mut fmt::Formatter<'_>) -> fmt::Result,
}

#[derive(Clone)]
enum Repr {
    Var(u32),
    Value(Arc<dyn Any + Send + Sync>),
}

/// A term whose static type has been forgotten so that terms of all types
/// can share one substitution. It keeps enough of its type's [`Logical`]
/// operations to take part in disequality re-validation.
#[derive(Clone)]
pub struct ErasedTerm {
    repr: Repr,
    ops: &'static ErasedOps,
}

fn unify_with_var<T: Logical>(var: u32, term: &ErasedTerm, state: State) -> Option<State> {
    unify_terms(&Term::Var(VarId::<T>::new(var)), &term.recover::<T>(), state)
}

fn fmt_erased<T: Logical>(term: &ErasedTerm, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    fmt::Debug::fmt(&term.recover::<T>(), f)
}

impl ErasedTerm {
    pub fn erase<T: Logical>(term: Term<T>) -> Self {
        let ops = const {
            &ErasedOps {
                type_id: TypeId::of::<T>,
                type_name: std::any::type_name::<T>,
                unify_with_var: unify_with_var::<T>,
                fmt: fmt_erased::<T>,
            }
        };
        let repr = match term {
            Term::Var(var) => Repr::Var(var.index()),
            Term::Value(value) => Repr::Value(value),
        };
        ErasedTerm { repr, ops }
    }

    pub fn type_name(&self) -> &'static str {
        (self.ops.type_name)()
    }

    pub fn is_type<T: Logical>(&self) -> bool {
        (self.ops.type_id)() == TypeId::of::<T>()
    }

    /// Recovers the typed term. Terms only reach the store through typed
    /// variables, so a mismatch is an engine bug and panics.
    pub fn recover<T: Logical>(&self) -> Term<T> {
        debug_assert!(
            self.is_type::<T>(),
            "erased term of type {} recovered as {}",
            self.type_name(),
            std::any::type_name::<T>()
        );
        match &self.repr {
            Repr::Var(id) => Term::Var(VarId::new(*id)),
            Repr::Value(value) => match Arc::clone(value).downcast::<T::Logic>() {
                Ok(value) => Term::Value(value),
                Err(_) => panic!(
                    "engine invariant violated: erased {} recovered as {}",
                    self.type_name(),
                    std::any::type_name::<T>()
                ),
            },
        }
    }

    pub fn try_recover<T: Logical>(&self) -> Option<Term<T>> {
        self.is_type::<T>().then(|| self.recover())
    }

    fn var_index(&self) -> Option<u32> {
        match self.repr {
            Repr::Var(id) => Some(id),
            Repr::Value(_) => None,
        }
    }
}

impl fmt::Debug for ErasedTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        (self.ops.fmt)(self, f)
    }
}

/// Triangular substitution: bound terms may mention other bound variables.
#[derive(Clone, Default)]
pub struct Subst(IntMap<ErasedTerm>);

impl Subst {
    pub fn new() -> Self {
        Subst::default()
    }

    /// Looks up the direct binding of `var`, without following chains.
    pub fn lookup<T: Logical>(&self, var: VarId<T>) -> Option<Term<T>> {
        self.0.get(&var.index()).map(ErasedTerm::recover)
    }

    pub fn insert<T: Logical>(&mut self, var: VarId<T>, term: Term<T>) {
        self.0.insert(var.index(), ErasedTerm::erase(term));
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn max_index(&self) -> Option<u32> {
        self.0.keys().copied().max()
    }
}

impl fmt::Debug for Subst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut entries: Vec<_> = self.0.iter().collect();
        entries.sort_by_key(|(id, _)| **id);
        f.debug_map()
            .entries(entries.into_iter().map(|(id, t)| (format!("_.{id}"), t)))
            .finish()
    }
}

/// One pending disequality: the bindings that would make the two sides
/// equal. The constraint is violated once all of them hold.
type Prefix = Arc<[(u32, ErasedTerm)]>;

/// Disequality constraints, each filed under a variable whose binding may
/// decide it.
#[derive(Clone, Default)]
pub struct Disequalities(IntMap<Vec<Prefix>>);

impl Disequalities {
    pub fn len(&self) -> usize {
        self.0.values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn attach(&mut self, var: u32, prefix: Prefix) {
        let mut list = self.0.get(&var).cloned().unwrap_or_default();
        if !list.iter().any(|p| Arc::ptr_eq(p, &prefix)) {
            list.push(prefix);
        }
        self.0.insert(var, list);
    }

    fn prefixes(&self) -> impl Iterator<Item = &Prefix> {
        self.0.values().flatten()
    }
}

impl fmt::Debug for Disequalities {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut entries: Vec<_> = self.0.iter().collect();
        entries.sort_by_key(|(id, _)| **id);
        let mut map = f.debug_map();
        for (id, prefixes) in entries {
            let shown: Vec<Vec<(String, &ErasedTerm)>> = prefixes
                .iter()
                .map(|p| p.iter().map(|(v, t)| (format!("_.{v}"), t)).collect())
                .collect();
            map.entry(&format!("_.{id}"), &shown);
        }
        map.finish()
    }
}

/// The state threaded through a search.
#[derive(Clone, Default)]
pub struct State {
    subst: Subst,
    disequalities: Disequalities,
    max_var_id: u32,
    // Set while unifying in a sandbox: new bindings are recorded here and
    // the disequality store is left alone.
    log: Option<Vec<(u32, ErasedTerm)>>,
}

impl State {
    pub fn new() -> Self {
        State::default()
    }

    pub fn subst(&self) -> &Subst {
        &self.subst
    }

    pub fn disequalities(&self) -> &Disequalities {
        &self.disequalities
    }

    pub fn max_var_id(&self) -> u32 {
        self.max_var_id
    }

    pub fn fresh_var<T: Logical>(&mut self) -> VarId<T> {
        let var = VarId::new(self.max_var_id);
        self.max_var_id += 1;
        var
    }

    /// Functional form of [`State::fresh_var`].
    pub fn with_fresh_var<T: Logical>(mut self) -> (VarId<T>, State) {
        let var = self.fresh_var();
        (var, self)
    }

    pub fn lookup<T: Logical>(&self, var: VarId<T>) -> Option<Term<T>> {
        self.subst.lookup(var)
    }

    /// Follows variable bindings until reaching an unbound variable or a
    /// value. The fields of a value are left as they are.
    pub fn shallow_walk<T: Logical>(&self, term: &Term<T>) -> Term<T> {
        let mut current = term.clone();
        while let Term::Var(var) = current {
            match self.subst.lookup(var) {
                Some(next) => current = next,
                None => break,
            }
        }
        current
    }

    /// Checks every stored disequality against the current substitution.
    /// Holds for every state a goal can produce.
    pub fn constraints_hold(&self) -> bool {
        self.disequalities
            .prefixes()
            .all(|prefix| !matches!(self.sandbox_prefix(prefix), Some(ref log) if log.is_empty()))
    }

    /// Every variable mentioned in the store is below the counter.
    pub fn ids_in_range(&self) -> bool {
        let below = |id: u32| id < self.max_var_id;
        self.subst.max_index().is_none_or(below)
            && self.disequalities.0.keys().all(|id| below(*id))
            && self
                .disequalities
                .prefixes()
                .flat_map(|p| p.iter())
                .all(|(id, t)| below(*id) && t.var_index().is_none_or(below))
    }

    fn sandbox(&self) -> State {
        State {
            log: Some(Vec::new()),
            ..self.clone()
        }
    }

    /// Replays a prefix under the current substitution. `None` means it can
    /// never hold again; an empty log means it already holds.
    fn sandbox_prefix(&self, prefix: &[(u32, ErasedTerm)]) -> Option<Vec<(u32, ErasedTerm)>> {
        let mut sandbox = self.sandbox();
        for (var, term) in prefix {
            sandbox = (term.ops.unify_with_var)(*var, term, sandbox)?;
        }
        sandbox.log
    }

    /// Files a non-empty prefix under the variable with the lowest id, and
    /// also under the variable it is bound to if that is a variable: the
    /// prefix can only become entailed once one of the two gets bound.
    fn attach(mut self, prefix: Vec<(u32, ErasedTerm)>) -> State {
        debug_assert!(!prefix.is_empty());
        let (first, term) = prefix
            .iter()
            .min_by_key(|(id, _)| *id)
            .map(|(id, t)| (*id, t.var_index()))
            .expect("non-empty prefix");
        let prefix: Prefix = prefix.into();
        self.disequalities.attach(first, Arc::clone(&prefix));
        if let Some(other) = term {
            self.disequalities.attach(other, prefix);
        }
        self
    }
}

impl fmt::Debug for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("State")
            .field("subst", &self.subst)
            .field("disequalities", &self.disequalities)
            .field("max_var_id", &self.max_var_id)
            .finish()
    }
}

/// Binds `var` to `term` (the occurs check must already have passed) and
/// re-validates the disequalities filed under `var`.
pub fn add_subst<T: Logical>(var: VarId<T>, term: Term<T>, mut state: State) -> Option<State> {
    let id = var.index();
    let erased = ErasedTerm::erase(term);
    if let Some(log) = &mut state.log {
        log.push((id, erased.clone()));
        state.subst.0.insert(id, erased);
        return Some(state);
    }
    state.subst.0.insert(id, erased);
    let Some(pending) = state.disequalities.0.remove(&id) else {
        return Some(state);
    };
    for prefix in pending {
        state = match state.sandbox_prefix(&prefix) {
            None => state,
            Some(log) if log.is_empty() => return None,
            Some(log) => state.attach(log),
        };
    }
    Some(state)
}

/// Typed unification over triangular substitutions with occurs check.
pub fn unify_terms<T: Logical>(left: &Term<T>, right: &Term<T>, state: State) -> Option<State> {
    let left = state.shallow_walk(left);
    let right = state.shallow_walk(right);
    match (&left, &right) {
        (Term::Var(x), Term::Var(y)) if x == y => Some(state),
        (Term::Var(x), _) => {
            if right.occurs_check(x.erase(), &state) {
                None
            } else {
                add_subst(*x, right, state)
            }
        }
        (_, Term::Var(y)) => {
            if left.occurs_check(y.erase(), &state) {
                None
            } else {
                add_subst(*y, left, state)
            }
        }
        (Term::Value(l), Term::Value(r)) => {
            if Arc::ptr_eq(l, r) {
                Some(state)
            } else {
                T::unify(l, r, state)
            }
        }
    }
}

/// Records that `left` and `right` must never become equal. Fails if they
/// already are; leaves the state untouched if they never can be.
pub fn disunify_terms<T: Logical>(left: &Term<T>, right: &Term<T>, state: State) -> Option<State> {
    match unify_terms(left, right, state.sandbox()) {
        None => Some(state),
        Some(sandbox) => {
            let log = sandbox.log.unwrap_or_default();
            if log.is_empty() {
                None
            } else {
                Some(state.attach(log))
            }
        }
    }
}
