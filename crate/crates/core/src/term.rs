//! Typed unification terms and the [`Logical`] protocol.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::marker::PhantomData;
use std::sync::Arc;

use crate::state::{unify_terms, State};

/// A unification variable standing for a value of type `T`.
///
/// Only the engine allocates variables, so the type association of an id
/// is fixed for the whole lifetime of a search.
pub struct VarId<T> {
    id: u32,
    _type: PhantomData<fn() -> T>,
}

impl<T> VarId<T> {
    pub(crate) fn new(id: u32) -> Self {
        VarId { id, _type: PhantomData }
    }

    pub fn index(self) -> u32 {
        self.id
    }

    pub fn erase(self) -> ErasedVar {
        ErasedVar(self.id)
    }
}

impl<T> Clone for VarId<T> {
    fn clone(&self) -> Self {
        *self
    }
}

impl<T> Copy for VarId<T> {}

impl<T> PartialEq for VarId<T> {
    fn eq(&self, other: &Self) -> bool {
        self.id == other.id
    }
}

impl<T> Eq for VarId<T> {}

impl<T> Hash for VarId<T> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.id.hash(state)
    }
}

impl<T> fmt::Debug for VarId<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "_.{}", self.id)
    }
}

/// A variable id with its type forgotten; used by occurs checks, which look
/// for a variable of one type inside values of another.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ErasedVar(pub(crate) u32);

impl ErasedVar {
    pub fn index(self) -> u32 {
        self.0
    }
}

/// Types that can enter the relational world.
///
/// `Logic` is the counterpart of `Self` in which any field may be an unbound
/// variable. Atomic types use themselves; algebraic types get a generated
/// counterpart from `#[derive(Logical)]`.
pub trait Logical: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    type Logic: Clone + fmt::Debug + PartialEq + Send + Sync + 'static;

    /// Structural unification of two logical values; variables are handled
    /// by [`unify_terms`] before this is reached.
    fn unify(left: &Self::Logic, right: &Self::Logic, state: State) -> Option<State>;

    /// Replaces every bound variable inside `value` by its resolved term.
    fn walk(state: &State, value: &Self::Logic) -> Self::Logic;

    fn occurs_check(var: ErasedVar, value: &Self::Logic, state: &State) -> bool;

    fn inject(self) -> Self::Logic;

    /// `None` iff `value` still mentions a variable.
    fn extract(value: &Self::Logic) -> Option<Self>;
}

/// Either an unbound variable or a logical value of type `T`.
pub enum Term<T: Logical> {
    Var(VarId<T>),
    Value(Arc<T::Logic>),
}

impl<T: Logical> Term<T> {
    pub fn value(value: T::Logic) -> Self {
        Term::Value(Arc::new(value))
    }

    /// Injects a plain value; the result contains no variables.
    pub fn inject(plain: T) -> Self {
        Term::value(plain.inject())
    }

    pub fn extract(&self) -> Option<T> {
        match self {
            Term::Var(_) => None,
            Term::Value(value) => T::extract(value),
        }
    }

    pub fn as_var(&self) -> Option<VarId<T>> {
        match self {
            Term::Var(var) => Some(*var),
            Term::Value(_) => None,
        }
    }

    pub fn as_value(&self) -> Option<&T::Logic> {
        match self {
            Term::Var(_) => None,
            Term::Value(value) => Some(value),
        }
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }

    /// Deep walk: resolves this term and everything inside it.
    pub fn walk(&self, state: &State) -> Self {
        match state.shallow_walk(self) {
            var @ Term::Var(_) => var,
            Term::Value(value) => Term::value(T::walk(state, &value)),
        }
    }

    pub fn occurs_check(&self, var: ErasedVar, state: &State) -> bool {
        match state.shallow_walk(self) {
            Term::Var(other) => other.erase() == var,
            Term::Value(value) => T::occurs_check(var, &value, state),
        }
    }

    pub fn unify(&self, other: &Self, state: State) -> Option<State> {
        unify_terms(self, other, state)
    }
}

impl<T: Logical> Clone for Term<T> {
    fn clone(&self) -> Self {
        match self {
            Term::Var(var) => Term::Var(*var),
            Term::Value(value) => Term::Value(Arc::clone(value)),
        }
    }
}

impl<T: Logical> PartialEq for Term<T> {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Term::Var(x), Term::Var(y)) => x == y,
            (Term::Value(x), Term::Value(y)) => Arc::ptr_eq(x, y) || x == y,
            _ => false,
        }
    }
}

impl<T: Logical> fmt::Debug for Term<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(var) => var.fmt(f),
            Term::Value(value) => value.fmt(f),
        }
    }
}

impl<T: Logical> From<VarId<T>> for Term<T> {
    fn from(var: VarId<T>) -> Self {
        Term::Var(var)
    }
}

/// An interned-by-sharing symbol, the atomic name type of the object
/// languages built on the engine.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(Arc<str>);

impl Symbol {
    pub fn new(name: &str) -> Self {
        Symbol(Arc::from(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Symbol {
    fn from(name: &str) -> Self {
        Symbol::new(name)
    }
}

/// Implements [`Logical`] for a type whose logical counterpart is itself:
/// unification is equality, walking and injection are identities and
/// nothing can occur inside it.
#[macro_export]
macro_rules! atomic_logical {
    ($($ty:ty),* $(,)?) => {$(
        impl $crate::Logical for $ty {
            type Logic = $ty;

            fn unify(left: &$ty, right: &$ty, state: $crate::State) -> ::core::option::Option<$crate::State> {
                if left == right { ::core::option::Option::Some(state) } else { ::core::option::Option::None }
            }

            fn walk(_state: &$crate::State, value: &$ty) -> $ty {
                ::core::clone::Clone::clone(value)
            }

            fn occurs_check(_var: $crate::ErasedVar, _value: &$ty, _state: &$crate::State) -> bool {
                false
            }

            fn inject(self) -> $ty {
                self
            }

            fn extract(value: &$ty) -> ::core::option::Option<$ty> {
                ::core::option::Option::Some(::core::clone::Clone::clone(value))
            }
        }
    )*};
}

atomic_logical!(
    (),
    bool,
    char,
    i8,
    i16,
    i32,
    i64,
    i128,
    isize,
    u8,
    u16,
    u32,
    u64,
    u128,
    usize,
    String,
    Symbol,
);

macro_rules! tuple_logical {
    ($(($($name:ident $left:ident $right:ident $idx:tt),+))*) => {$(
        impl<$($name: Logical),+> Logical for ($($name,)+) {
            type Logic = ($(Term<$name>,)+);

            fn unify(left: &Self::Logic, right: &Self::Logic, state: State) -> Option<State> {
                let state = Some(state);
                $(let state = unify_terms(&left.$idx, &right.$idx, state?);)+
                state
            }

            fn walk(state: &State, value: &Self::Logic) -> Self::Logic {
                ($(value.$idx.walk(state),)+)
            }

            fn occurs_check(var: ErasedVar, value: &Self::Logic, state: &State) -> bool {
                $(value.$idx.occurs_check(var, state))||+
            }

            fn inject(self) -> Self::Logic {
                ($(Term::inject(self.$idx),)+)
            }

            fn extract(value: &Self::Logic) -> Option<Self> {
                Some(($(value.$idx.extract()?,)+))
            }
        }
    )*};
}

tuple_logical! {
    (A a0 b0 0, B a1 b1 1)
    (A a0 b0 0, B a1 b1 1, C a2 b2 2)
    (A a0 b0 0, B a1 b1 1, C a2 b2 2, D a3 b3 3)
}
