//! Binary trees with values at the leaves.

use crate::goal::{disj_many, eq, fresh, Goal};
use crate::stdlib::list::{appendo, List, LogicList};
use crate::term::Term;
use crate::Logical;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Logical)]
pub enum Tree<A> {
    Empty,
    Leaf(A),
    Node(Box<Tree<A>>, Box<Tree<A>>),
}

impl<A: Clone> Tree<A> {
    pub fn leaves(&self) -> Vec<A> {
        match self {
            Tree::Empty => Vec::new(),
            Tree::Leaf(a) => vec![a.clone()],
            Tree::Node(l, r) => {
                let mut out = l.leaves();
                out.extend(r.leaves());
                out
            }
        }
    }
}

type Halves<A> = (Term<Tree<A>>, Term<Tree<A>>, Term<List<A>>, Term<List<A>>);

/// `list` holds the leaves of `tree` from left to right.
pub fn leaveso<A: Logical>(tree: Term<Tree<A>>, list: Term<List<A>>) -> Goal {
    let (t1, t2, l1, l2) = (tree.clone(), tree.clone(), list.clone(), list.clone());
    disj_many([
        eq(t1, LogicTree::empty()).and(eq(l1, LogicList::nil())),
        fresh(move |x: Term<A>| eq(t2.clone(), LogicTree::leaf(x.clone())).and(eq(l2.clone(), LogicList::of([x])))),
        fresh(move |(l, r, xs, ys): Halves<A>| {
            eq(tree.clone(), LogicTree::node(l.clone(), r.clone()))
                .and(leaveso(l, xs.clone()))
                .and(leaveso(r, ys.clone()))
                .and(appendo(xs, ys, list.clone()))
        }),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::goal::run;

    #[test]
    fn leaves_of_a_ground_tree() {
        let tree = Tree::Node(
            Box::new(Tree::Leaf(1)),
            Box::new(Tree::Node(Box::new(Tree::Empty), Box::new(Tree::Leaf(2)))),
        );
        let expected = tree.leaves();
        let t = Term::inject(tree);
        let out: Vec<_> = run(move |l: Term<List<i64>>| leaveso(t.clone(), l))
            .map(|l| l.extract().unwrap().to_vec())
            .collect();
        assert_eq!(out, vec![expected]);
    }

    #[test]
    fn trees_with_given_leaves() {
        let target = Term::inject(List::from(vec![1i64]));
        let trees: Vec<_> = run(move |t: Term<Tree<i64>>| leaveso(t, target.clone()))
            .take(4)
            .map(|t| t.extract().unwrap())
            .collect();
        assert_eq!(trees[0], Tree::Leaf(1));
        assert!(trees.iter().all(|t| t.leaves() == vec![1]));
    }
}
