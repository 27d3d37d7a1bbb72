//! Cons lists.

use crate::goal::{eq, fresh, Goal};
use crate::matching::matche;
use crate::term::Term;
use crate::Logical;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Logical)]
pub enum List<A> {
    Nil,
    Cons(A, Box<List<A>>),
}

impl<A> List<A> {
    pub fn iter(&self) -> Iter<'_, A> {
        Iter { list: self }
    }

    pub fn len(&self) -> usize {
        self.iter().count()
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, List::Nil)
    }
}

impl<A: Clone> List<A> {
    pub fn to_vec(&self) -> Vec<A> {
        self.iter().cloned().collect()
    }
}

impl<A> From<Vec<A>> for List<A> {
    fn from(items: Vec<A>) -> Self {
        items
            .into_iter()
            .rev()
            .fold(List::Nil, |tail, head| List::Cons(head, Box::new(tail)))
    }
}

impl<A> FromIterator<A> for List<A> {
    fn from_iter<I: IntoIterator<Item = A>>(iter: I) -> Self {
        List::from(iter.into_iter().collect::<Vec<_>>())
    }
}

pub struct Iter<'a, A> {
    list: &'a List<A>,
}

impl<'a, A> Iterator for Iter<'a, A> {
    type Item = &'a A;

    fn next(&mut self) -> Option<&'a A> {
        match self.list {
            List::Nil => None,
            List::Cons(head, tail) => {
                self.list = tail;
                Some(head)
            }
        }
    }
}

impl<A: Logical> LogicList<A> {
    /// A list term with the given element terms ending in `tail`.
    pub fn prefix(items: impl IntoIterator<Item = Term<A>>, tail: Term<List<A>>) -> Term<List<A>> {
        let items: Vec<_> = items.into_iter().collect();
        items
            .into_iter()
            .rev()
            .fold(tail, |tail, head| LogicList::cons(head, tail))
    }

    /// A proper list term of the given element terms.
    pub fn of(items: impl IntoIterator<Item = Term<A>>) -> Term<List<A>> {
        Self::prefix(items, LogicList::nil())
    }
}

/// `zs` is `xs` followed by `ys`.
pub fn appendo<A: Logical>(xs: Term<List<A>>, ys: Term<List<A>>, zs: Term<List<A>>) -> Goal {
    let (ys2, zs2) = (ys.clone(), zs.clone());
    matche()
        .on(LogicList::pat_nil(), move |()| eq(ys2.clone(), zs2.clone()))
        .on(LogicList::pat_cons(), move |(head, tail): (Term<A>, Term<List<A>>)| {
            let (ys, zs) = (ys.clone(), zs.clone());
            fresh(move |res: Term<List<A>>| {
                eq(zs.clone(), LogicList::cons(head.clone(), res.clone())).and(appendo(tail.clone(), ys.clone(), res))
            })
        })
        .apply(xs)
}

/// `x` is an element of `xs`.
pub fn membero<A: Logical>(x: Term<A>, xs: Term<List<A>>) -> Goal {
    matche()
        .on(LogicList::pat_cons(), move |(head, tail): (Term<A>, Term<List<A>>)| {
            eq(x.clone(), head).or(membero(x.clone(), tail))
        })
        .apply(xs)
}
