//! Property suites shared by the `properties` and `acceptance` targets.
//! Each suite returns `Err` with the failing case on the first violation.

#![allow(dead_code)]

use std::collections::HashMap;
use std::fmt::Debug;
use std::sync::Arc;

use kanren::batch;
use kanren::goal::Fresh;
use kanren::prelude::*;
use kanren::scheme::{LogicSExpr, LogicVal, SExpr, Val};
use kanren::stdlib::arith::{lesso, multo, num, pluso, term_to_u64, Numeral};
use kanren::stdlib::list::{List, LogicList};
use kanren::stdlib::result::{LogicResult, Result as Res};
use kanren::stdlib::tree::{LogicTree, Tree};
use kanren::stream::{bind, interleave};
use kanren::{unify_terms, Lazy, Pattern, State, Stream, VarId};
use proptest::prelude::*;
use proptest::strategy::ValueTree;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

pub const CASES: u32 = 1000;

pub type Outcome = Result<(), String>;

fn runner() -> TestRunner {
    TestRunner::new(Config {
        cases: CASES,
        failure_persistence: None,
        ..Config::default()
    })
}

fn check<S: Strategy>(strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Outcome
where
    S::Value: Debug,
{
    runner().run(&strategy, test).map_err(|e| e.to_string())
}

/// Draws `n` independent cases without shrinking, for suites that are
/// evaluated as one parallel batch.
pub fn sample<S: Strategy>(strategy: S, n: usize) -> Vec<S::Value> {
    let mut runner = TestRunner::default();
    (0..n)
        .map(|_| strategy.new_tree(&mut runner).expect("strategy").current())
        .collect()
}

// Unification against a first-order MGU oracle.

#[derive(Clone, Debug, PartialEq, Eq, Hash, Logical)]
pub enum Shape {
    Nil,
    Atom(bool),
    Pair(Box<Shape>, Box<Shape>),
}

#[derive(Clone, Debug)]
pub enum BoolSpec {
    Var(usize),
    Lit(bool),
}

#[derive(Clone, Debug)]
pub enum ShapeSpec {
    Var(usize),
    Nil,
    Atom(BoolSpec),
    Pair(Box<ShapeSpec>, Box<ShapeSpec>),
}

pub fn shape_spec() -> impl Strategy<Value = ShapeSpec> {
    let boolean = prop_oneof![
        (0usize..2).prop_map(BoolSpec::Var),
        any::<bool>().prop_map(BoolSpec::Lit)
    ];
    let leaf = prop_oneof![
        (0usize..3).prop_map(ShapeSpec::Var),
        Just(ShapeSpec::Nil),
        boolean.prop_map(ShapeSpec::Atom),
    ];
    leaf.prop_recursive(3, 12, 2, |inner| {
        (inner.clone(), inner).prop_map(|(a, b)| ShapeSpec::Pair(Box::new(a), Box::new(b)))
    })
}

/// Untyped first-order terms: variables, boolean atoms and constructor
/// applications.
#[derive(Clone, Debug, PartialEq)]
pub enum Tm {
    V(u32),
    B(bool),
    N(u8, Vec<Tm>),
}

pub struct Pool {
    pub state: State,
    pub shapes: Vec<VarId<Shape>>,
    pub bools: Vec<VarId<bool>>,
}

impl Pool {
    pub fn new() -> Self {
        let mut state = State::new();
        let shapes = (0..3).map(|_| state.fresh_var()).collect();
        let bools = (0..2).map(|_| state.fresh_var()).collect();
        Pool { state, shapes, bools }
    }

    pub fn term(&self, spec: &ShapeSpec) -> Term<Shape> {
        match spec {
            ShapeSpec::Var(i) => Term::Var(self.shapes[*i]),
            ShapeSpec::Nil => LogicShape::nil(),
            ShapeSpec::Atom(BoolSpec::Var(i)) => LogicShape::atom(Term::Var(self.bools[*i])),
            ShapeSpec::Atom(BoolSpec::Lit(b)) => LogicShape::atom(Term::inject(*b)),
            ShapeSpec::Pair(a, b) => LogicShape::pair(self.term(a), self.term(b)),
        }
    }

    pub fn oracle(&self, spec: &ShapeSpec) -> Tm {
        match spec {
            ShapeSpec::Var(i) => Tm::V(self.shapes[*i].index()),
            ShapeSpec::Nil => Tm::N(0, vec![]),
            ShapeSpec::Atom(BoolSpec::Var(i)) => Tm::N(1, vec![Tm::V(self.bools[*i].index())]),
            ShapeSpec::Atom(BoolSpec::Lit(b)) => Tm::N(1, vec![Tm::B(*b)]),
            ShapeSpec::Pair(a, b) => Tm::N(2, vec![self.oracle(a), self.oracle(b)]),
        }
    }

    /// Every pool variable, fully resolved under `state`.
    pub fn resolved(&self, state: &State) -> Vec<Tm> {
        let shapes = self.shapes.iter().map(|v| shape_tm(&Term::Var(*v).walk(state)));
        let bools = self.bools.iter().map(|v| bool_tm(&Term::Var(*v).walk(state)));
        shapes.chain(bools).collect()
    }

    pub fn oracle_resolved(&self, subst: &HashMap<u32, Tm>) -> Vec<Tm> {
        let shapes = self.shapes.iter().map(|v| v.index());
        let bools = self.bools.iter().map(|v| v.index());
        shapes.chain(bools).map(|i| resolve(&Tm::V(i), subst)).collect()
    }
}

impl Default for Pool {
    fn default() -> Self {
        Self::new()
    }
}

fn bool_tm(t: &Term<bool>) -> Tm {
    match t {
        Term::Var(v) => Tm::V(v.index()),
        Term::Value(b) => Tm::B(**b),
    }
}

fn shape_tm(t: &Term<Shape>) -> Tm {
    match t {
        Term::Var(v) => Tm::V(v.index()),
        Term::Value(value) => match &**value {
            LogicShape::LogicNil => Tm::N(0, vec![]),
            LogicShape::LogicAtom(b) => Tm::N(1, vec![bool_tm(b)]),
            LogicShape::LogicPair(a, b) => Tm::N(2, vec![shape_tm(a), shape_tm(b)]),
        },
    }
}

fn walk_tm(t: &Tm, subst: &HashMap<u32, Tm>) -> Tm {
    let mut t = t.clone();
    while let Tm::V(i) = t {
        match subst.get(&i) {
            Some(next) => t = next.clone(),
            None => break,
        }
    }
    t
}

fn resolve(t: &Tm, subst: &HashMap<u32, Tm>) -> Tm {
    match walk_tm(t, subst) {
        Tm::N(c, args) => Tm::N(c, args.iter().map(|a| resolve(a, subst)).collect()),
        other => other,
    }
}

fn occurs(i: u32, t: &Tm, subst: &HashMap<u32, Tm>) -> bool {
    match walk_tm(t, subst) {
        Tm::V(j) => i == j,
        Tm::B(_) => false,
        Tm::N(_, args) => args.iter().any(|a| occurs(i, a, subst)),
    }
}

/// Textbook most general unifier with occurs check.
pub fn mgu(a: &Tm, b: &Tm, subst: &mut HashMap<u32, Tm>) -> bool {
    match (walk_tm(a, subst), walk_tm(b, subst)) {
        (Tm::V(i), Tm::V(j)) if i == j => true,
        (Tm::V(i), t) | (t, Tm::V(i)) => {
            if occurs(i, &t, subst) {
                return false;
            }
            subst.insert(i, t);
            true
        }
        (Tm::B(x), Tm::B(y)) => x == y,
        (Tm::N(c, xs), Tm::N(d, ys)) => c == d && xs.iter().zip(&ys).all(|(x, y)| mgu(x, y, subst)),
        _ => false,
    }
}

/// Equality up to a bijective renaming of variables.
pub fn alpha_eq(a: &[Tm], b: &[Tm]) -> bool {
    fn go(a: &Tm, b: &Tm, f: &mut HashMap<u32, u32>, g: &mut HashMap<u32, u32>) -> bool {
        match (a, b) {
            (Tm::V(i), Tm::V(j)) => *f.entry(*i).or_insert(*j) == *j && *g.entry(*j).or_insert(*i) == *i,
            (Tm::B(x), Tm::B(y)) => x == y,
            (Tm::N(c, xs), Tm::N(d, ys)) => {
                c == d && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| go(x, y, f, g))
            }
            _ => false,
        }
    }
    let (mut f, mut g) = (HashMap::new(), HashMap::new());
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| go(x, y, &mut f, &mut g))
}

pub fn unification() -> Outcome {
    check((shape_spec(), shape_spec()), |(l, r)| {
        let pool = Pool::new();
        let (lt, rt) = (pool.term(&l), pool.term(&r));
        let forward = unify_terms(&lt, &rt, pool.state.clone());
        let backward = unify_terms(&rt, &lt, pool.state.clone());
        let mut subst = HashMap::new();
        let unifiable = mgu(&pool.oracle(&l), &pool.oracle(&r), &mut subst);
        prop_assert_eq!(forward.is_some(), unifiable);
        prop_assert_eq!(backward.is_some(), unifiable);
        if let (Some(f), Some(b)) = (forward, backward) {
            let expected = pool.oracle_resolved(&subst);
            prop_assert!(alpha_eq(&pool.resolved(&f), &expected));
            prop_assert!(alpha_eq(&pool.resolved(&b), &expected));
            prop_assert_eq!(lt.walk(&f), rt.walk(&f));
            prop_assert!(f.ids_in_range());
        }
        Ok(())
    })
}

// Disequality constraints on an exhaustive three-valued domain.

#[derive(Clone, Copy, Debug)]
pub enum El {
    Var(usize),
    Const(u8),
}

#[derive(Clone, Debug)]
pub struct Constraint {
    pub equal: bool,
    pub left: (El, El),
    pub right: (El, El),
}

pub const DOMAIN: u8 = 3;

fn el() -> impl Strategy<Value = El> {
    prop_oneof![(0usize..3).prop_map(El::Var), (0..DOMAIN).prop_map(El::Const)]
}

pub fn constraint() -> impl Strategy<Value = Constraint> {
    (any::<bool>(), (el(), el()), (el(), el())).prop_map(|(equal, left, right)| Constraint { equal, left, right })
}

#[derive(Clone, Debug)]
pub enum Step {
    Check(Constraint),
    Choose(usize),
}

fn holds(c: &Constraint, assignment: [u8; 3]) -> bool {
    let value = |e: El| match e {
        El::Var(i) => assignment[i],
        El::Const(k) => k,
    };
    let same = (value(c.left.0), value(c.left.1)) == (value(c.right.0), value(c.right.1));
    same == c.equal
}

fn step_goal(step: &Step, vars: &[Term<u8>; 3]) -> Goal {
    let el_term = |e: El| match e {
        El::Var(i) => vars[i].clone(),
        El::Const(k) => Term::inject(k),
    };
    match step {
        Step::Check(c) => {
            let left: Term<(u8, u8)> = Term::value((el_term(c.left.0), el_term(c.left.1)));
            let right: Term<(u8, u8)> = Term::value((el_term(c.right.0), el_term(c.right.1)));
            if c.equal {
                eq(left, right)
            } else {
                neq(left, right)
            }
        }
        Step::Choose(i) => disj_many((0..DOMAIN).map(|k| eq(vars[*i].clone(), Term::inject(k)))),
    }
}

/// Constraints and variable enumerations in a random interleaving.
pub fn steps() -> impl Strategy<Value = Vec<Step>> {
    prop::collection::vec(constraint(), 1..6).prop_flat_map(|cs| {
        let mut all: Vec<Step> = cs.into_iter().map(Step::Check).collect();
        all.extend((0..3).map(Step::Choose));
        Just(all).prop_shuffle()
    })
}

pub fn disequality() -> Outcome {
    check(steps(), |steps| {
        let constraints: Vec<&Constraint> = steps
            .iter()
            .filter_map(|s| match s {
                Step::Check(c) => Some(c),
                Step::Choose(_) => None,
            })
            .collect();
        let mut expected = Vec::new();
        for a in 0..DOMAIN {
            for b in 0..DOMAIN {
                for c in 0..DOMAIN {
                    if constraints.iter().all(|k| holds(k, [a, b, c])) {
                        expected.push((a, b, c));
                    }
                }
            }
        }
        let goal_steps = steps.clone();
        let mut answers = run(move |(x, y, z): (Term<u8>, Term<u8>, Term<u8>)| {
            let vars = [x, y, z];
            conj_many(goal_steps.iter().map(|s| step_goal(s, &vars)))
        });
        let mut got = Vec::new();
        while let Some(((x, y, z), state, ())) = answers.next_state() {
            prop_assert!(state.constraints_hold());
            prop_assert!(state.ids_in_range());
            let value = |t: &Term<u8>| t.walk(&state).extract();
            got.push((value(&x).unwrap(), value(&y).unwrap(), value(&z).unwrap()));
        }
        got.sort();
        prop_assert_eq!(got, expected);
        Ok(())
    })
}

// Streams.

pub fn stream_spec() -> impl Strategy<Value = Vec<(u32, u8)>> {
    prop::collection::vec((0u32..1000, 0u8..4), 0..24)
}

/// A finite stream yielding the given items, each preceded by the given
/// number of immature steps.
pub fn build_stream(spec: &[(u32, u8)]) -> Stream<u32> {
    let mut stream = Stream::Done;
    for &(item, awaits) in spec.iter().rev() {
        stream = Stream::Yield(item, Lazy::ready(stream));
        for _ in 0..awaits {
            stream = Stream::Await(Lazy::ready(stream));
        }
    }
    stream
}

fn stream_steps(spec: &[(u32, u8)]) -> usize {
    spec.iter().map(|&(_, a)| a as usize + 1).sum::<usize>() + 1
}

const MARK: u32 = u32::MAX;

fn marks() -> Stream<u32> {
    Stream::Yield(MARK, Lazy::new(|| Stream::delay(marks)))
}

fn sorted(mut v: Vec<u32>) -> Vec<u32> {
    v.sort_unstable();
    v
}

pub fn streams() -> Outcome {
    check((stream_spec(), stream_spec()), |(a, b)| {
        let items = |s: &[(u32, u8)]| s.iter().map(|&(x, _)| x).collect::<Vec<_>>();
        let union: Vec<u32> = items(&a).into_iter().chain(items(&b)).collect();
        let merged: Vec<u32> = interleave(build_stream(&a), build_stream(&b)).into_iter().collect();
        prop_assert_eq!(sorted(merged), sorted(union));

        let next: Arc<dyn Fn(u32) -> Stream<u32> + Send + Sync> =
            Arc::new(|x| build_stream(&[(2 * x, 1), (2 * x + 1, 0)]));
        let bound: Vec<u32> = bind(build_stream(&a), next).into_iter().collect();
        let expected: Vec<u32> = items(&a).into_iter().flat_map(|x| [2 * x, 2 * x + 1]).collect();
        prop_assert_eq!(sorted(bound), sorted(expected));

        // An infinite partner delays the finite side by at most one step per step.
        let window = 2 * stream_steps(&b) + 2;
        for merged in [
            interleave(marks(), build_stream(&b)),
            interleave(build_stream(&b), marks()),
        ] {
            let seen: Vec<u32> = merged.take(window).into_iter().filter(|&x| x != MARK).collect();
            prop_assert_eq!(sorted(seen), sorted(items(&b)));
        }
        Ok(())
    })
}

// Prism laws for generated patterns.

fn prism_law<T: Adt, B: Fresh + PartialEq + Debug>(p: Pattern<T, B>, value: &T::Logic) -> Result<(), TestCaseError> {
    let matched = p.try_match(value);
    prop_assert_eq!(matched.is_some(), T::constructor_index(value) == p.tag().index);
    if let Some(b) = matched {
        prop_assert_eq!(&p.build(b.clone()), value);
        prop_assert_eq!(p.try_match(&p.build(b.clone())), Some(b));
    }
    let fresh = B::allocate(&mut State::new());
    prop_assert_eq!(p.try_match(&p.build(fresh.clone())), Some(fresh));
    Ok(())
}

fn logic_of<T: Logical>(t: Term<T>) -> T::Logic {
    t.as_value().expect("constructed term").clone()
}

pub fn tree_value() -> impl Strategy<Value = Tree<u8>> {
    let leaf = prop_oneof![Just(Tree::Empty), any::<u8>().prop_map(Tree::Leaf)];
    leaf.prop_recursive(4, 16, 2, |inner| {
        (inner.clone(), inner).prop_map(|(l, r)| Tree::Node(Box::new(l), Box::new(r)))
    })
}

pub fn symbol() -> impl Strategy<Value = Symbol> {
    prop::sample::select(vec!["a", "b", "quote", "list", "lambda", "x"]).prop_map(Symbol::new)
}

pub fn sexpr_value() -> impl Strategy<Value = SExpr> {
    let leaf = prop_oneof![Just(SExpr::Nil), symbol().prop_map(SExpr::Sym)];
    leaf.prop_recursive(4, 16, 2, |inner| {
        (inner.clone(), inner).prop_map(|(a, d)| SExpr::Cons(Box::new(a), Box::new(d)))
    })
}

pub fn val_value() -> impl Strategy<Value = Val> {
    let data = sexpr_value().prop_map(Val::Data);
    let env = prop::collection::vec((symbol(), sexpr_value().prop_map(Val::Data)), 0..3).prop_map(List::from);
    prop_oneof![
        data,
        (symbol(), sexpr_value(), env).prop_map(|(x, b, e)| Val::Closure(x, Box::new(b), Box::new(e))),
    ]
}

pub fn prisms() -> Outcome {
    let lists = prop::collection::vec(any::<u8>(), 0..5).prop_map(List::from);
    let results = prop_oneof![any::<u8>().prop_map(Res::Ok), any::<bool>().prop_map(Res::Fail)];
    let strategy = (lists, tree_value(), results, sexpr_value(), val_value(), shape_spec());
    check(strategy, |(list, tree, result, sexpr, val, shape)| {
        let v = logic_of(Term::inject(list));
        prism_law(LogicList::pat_nil(), &v)?;
        prism_law(LogicList::pat_cons(), &v)?;
        let v = logic_of(Term::inject(tree));
        prism_law(LogicTree::pat_empty(), &v)?;
        prism_law(LogicTree::pat_leaf(), &v)?;
        prism_law(LogicTree::pat_node(), &v)?;
        let v = logic_of(Term::inject(result));
        prism_law(LogicResult::pat_ok(), &v)?;
        prism_law(LogicResult::pat_fail(), &v)?;
        let v = logic_of(Term::inject(sexpr));
        prism_law(LogicSExpr::pat_sym(), &v)?;
        prism_law(LogicSExpr::pat_nil(), &v)?;
        prism_law(LogicSExpr::pat_cons(), &v)?;
        let v = logic_of(Term::inject(val));
        prism_law(LogicVal::pat_data(), &v)?;
        prism_law(LogicVal::pat_closure(), &v)?;
        let pool = Pool::new();
        if let Term::Value(v) = pool.term(&shape) {
            prism_law(LogicShape::pat_nil(), &v)?;
            prism_law(LogicShape::pat_atom(), &v)?;
            prism_law(LogicShape::pat_pair(), &v)?;
        }
        Ok(())
    })
}

// Ground dispatch against the naive disjunction.

#[derive(Clone, Debug)]
pub enum Handler {
    Succeed,
    Fail,
    Bind(u8),
    Either(u8, u8),
    /// Unifies the query with the first field, when there is one.
    Field,
}

fn handler() -> impl Strategy<Value = Handler> {
    prop_oneof![
        Just(Handler::Succeed),
        Just(Handler::Fail),
        any::<u8>().prop_map(Handler::Bind),
        (any::<u8>(), any::<u8>()).prop_map(|(a, b)| Handler::Either(a, b)),
        Just(Handler::Field),
    ]
}

#[derive(Clone, Debug)]
pub enum Scrutinee {
    Var,
    Empty,
    Leaf(Option<u8>),
    Node(Box<Scrutinee>, Box<Scrutinee>),
}

fn scrutinee() -> impl Strategy<Value = Scrutinee> {
    let leaf = prop_oneof![
        Just(Scrutinee::Var),
        Just(Scrutinee::Empty),
        prop::option::of(0u8..4).prop_map(Scrutinee::Leaf),
    ];
    leaf.prop_recursive(2, 6, 2, |inner| {
        (inner.clone(), inner).prop_map(|(l, r)| Scrutinee::Node(Box::new(l), Box::new(r)))
    })
}

#[derive(Clone, Debug)]
pub struct DispatchCase {
    pub handlers: [Handler; 3],
    pub scrutinee: Scrutinee,
    pub binding: Option<Tree<u8>>,
}

pub fn dispatch_case() -> impl Strategy<Value = DispatchCase> {
    (
        [handler(), handler(), handler()],
        scrutinee(),
        prop::option::of(tree_value()),
    )
        .prop_map(|(handlers, scrutinee, binding)| DispatchCase {
            handlers,
            scrutinee,
            binding,
        })
}

type Q = (Term<u8>, Term<Tree<u8>>, Term<u8>);

fn scrutinee_term(s: &Scrutinee, q: &Q) -> Term<Tree<u8>> {
    match s {
        Scrutinee::Var => q.1.clone(),
        Scrutinee::Empty => LogicTree::empty(),
        Scrutinee::Leaf(None) => LogicTree::leaf(q.2.clone()),
        Scrutinee::Leaf(Some(k)) => LogicTree::leaf(Term::inject(*k)),
        Scrutinee::Node(l, r) => LogicTree::node(scrutinee_term(l, q), scrutinee_term(r, q)),
    }
}

fn handler_goal(h: &Handler, q: Term<u8>, field: Option<Term<u8>>) -> Goal {
    match h {
        Handler::Succeed => successo(()),
        Handler::Fail => failo(),
        Handler::Bind(k) => eq(q, Term::inject(*k)),
        Handler::Either(a, b) => disj(eq(q.clone(), Term::inject(*a)), eq(q, Term::inject(*b))),
        Handler::Field => match field {
            Some(f) => eq(q, f),
            None => successo(()),
        },
    }
}

fn dispatch_matcher(handlers: &[Handler; 3], q: Term<u8>) -> ExhaustiveMatcherTree {
    let [h0, h1, h2] = handlers.clone();
    let (q0, q1, q2) = (q.clone(), q.clone(), q);
    enter_tagged::<Tree<u8>, ()>()
        .on_tagged(LogicTree::tagged_empty(), move |()| handler_goal(&h0, q0.clone(), None))
        .on_tagged(LogicTree::tagged_leaf(), move |x| {
            handler_goal(&h1, q1.clone(), Some(x))
        })
        .on_tagged(
            LogicTree::tagged_node(),
            move |(l, _r): (Term<Tree<u8>>, Term<Tree<u8>>)| {
                let q2 = q2.clone();
                match &h2 {
                    Handler::Field => {
                        fresh(move |x: Term<u8>| conj(eq(l.clone(), LogicTree::leaf(x.clone())), eq(q2.clone(), x)))
                    }
                    other => handler_goal(other, q2, None),
                }
            },
        )
        .matche_exhaustive()
}

type ExhaustiveMatcherTree = kanren::ExhaustiveMatcher<Tree<u8>, ()>;

/// Replaces variable ids by their order of first appearance.
pub fn normalize_vars(text: &str) -> String {
    let mut names: HashMap<String, usize> = HashMap::new();
    let mut out = String::new();
    let mut rest = text;
    while let Some(pos) = rest.find("_.") {
        out.push_str(&rest[..pos]);
        let digits: String = rest[pos + 2..].chars().take_while(|c| c.is_ascii_digit()).collect();
        let next = names.len();
        let id = *names.entry(digits.clone()).or_insert(next);
        out.push_str(&format!("_.{id}"));
        rest = &rest[pos + 2 + digits.len()..];
    }
    out.push_str(rest);
    out
}

fn dispatch_answers(case: &DispatchCase, naive: bool) -> Vec<String> {
    let case = case.clone();
    let mut answers: Vec<String> = run(move |q: Q| {
        let pre = match &case.binding {
            Some(tree) => eq(q.1.clone(), Term::inject(tree.clone())),
            None => successo(()),
        };
        let matcher = dispatch_matcher(&case.handlers, q.0.clone());
        let scrutinee = scrutinee_term(&case.scrutinee, &q);
        let goal = if naive {
            matcher.apply_naive(scrutinee)
        } else {
            matcher.apply(scrutinee)
        };
        conj(pre, goal)
    })
    .map(|q| normalize_vars(&format!("{q:?}")))
    .collect();
    answers.sort();
    answers
}

pub fn dispatch() -> Outcome {
    check(dispatch_case(), |case| {
        prop_assert_eq!(dispatch_answers(&case, false), dispatch_answers(&case, true));
        Ok(())
    })
}

// Binary arithmetic against machine integers.

fn value_of(t: &Term<Numeral>) -> Option<u64> {
    term_to_u64(t)
}

fn answers3(goal: impl FnOnce(Term<Numeral>, Term<Numeral>) -> Goal) -> Vec<(Option<u64>, Option<u64>)> {
    let mut out: Vec<_> = run(|(x, y): (Term<Numeral>, Term<Numeral>)| goal(x, y))
        .map(|(x, y)| (value_of(&x), value_of(&y)))
        .collect();
    out.sort();
    out
}

/// Every pair of operands below 32, forward mode.
pub fn arithmetic_forward() -> Outcome {
    let pairs: Vec<(u64, u64)> = (0..32).flat_map(|a| (0..32).map(move |b| (a, b))).collect();
    first_failure(batch::map(&pairs, |&(a, b)| {
        let sums: Vec<_> = run(|z: Term<Numeral>| pluso(num(a), num(b), z))
            .map(|z| value_of(&z))
            .collect();
        let products: Vec<_> = run(|z: Term<Numeral>| multo(num(a), num(b), z))
            .map(|z| value_of(&z))
            .collect();
        let less = run(|_: Term<Numeral>| lesso(num(a), num(b))).count();
        let ok = sums == [Some(a + b)] && products == [Some(a * b)] && (less > 0) == (a < b);
        (!ok).then(|| format!("a={a} b={b}: sums {sums:?} products {products:?} lesso answers {less}"))
    }))
}

fn backward_pair(c: u64) -> Option<String> {
    let sums = answers3(|x, y| pluso(x, y, num(c)));
    let expected_sums: Vec<_> = (0..=c).map(|a| (Some(a), Some(c - a))).collect();
    if sums != expected_sums {
        return Some(format!("pluso(x, y, {c}) gave {sums:?}"));
    }
    let products = answers3(|x, y| multo(x, y, num(c)));
    let expected_products: Vec<_> = (1..=c)
        .filter(|a| c.is_multiple_of(*a))
        .map(|a| (Some(a), Some(c / a)))
        .collect();
    (products != expected_products).then(|| format!("multo(x, y, {c}) gave {products:?}"))
}

fn backward_single(a: u64, c: u64) -> Option<String> {
    let solve = |goal: &dyn Fn(Term<Numeral>) -> Goal| -> Vec<Option<u64>> {
        let mut out: Vec<_> = run(|y: Term<Numeral>| goal(y)).map(|y| value_of(&y)).collect();
        out.sort();
        out
    };
    let diff: Vec<_> = c.checked_sub(a).map(Some).into_iter().collect();
    let sum = solve(&|y| pluso(num(a), y, num(c)));
    if sum != diff {
        return Some(format!("pluso({a}, y, {c}) gave {sum:?}"));
    }
    let quotient: Vec<_> = match (a, c) {
        (0, 0) => return None,
        (0, _) => vec![],
        _ => c.is_multiple_of(a).then_some(Some(c / a)).into_iter().collect(),
    };
    for (name, got) in [
        ("multo(a, y, c)", solve(&|y| multo(num(a), y, num(c)))),
        ("multo(y, a, c)", solve(&|y| multo(y, num(a), num(c)))),
    ] {
        if got != quotient {
            return Some(format!("{name} with a={a} c={c} gave {got:?}"));
        }
    }
    None
}

fn first_failure(failures: Vec<Option<String>>) -> Outcome {
    match failures.into_iter().flatten().next() {
        Some(message) => Err(message),
        None => Ok(()),
    }
}

/// Number of random two-unknown targets drawn from `64..1024`.
pub const LARGE_TARGETS: usize = 8;

/// Backward modes against brute force: one unknown operand for every pair
/// below 32, both operands unknown for every target below 64 and for
/// random targets below 1024.
pub fn arithmetic_backward() -> Outcome {
    let pairs: Vec<(u64, u64)> = (0..32).flat_map(|a| (0..32).map(move |c| (a, c))).collect();
    first_failure(batch::map(&pairs, |&(a, c)| backward_single(a, c)))?;
    let mut targets: Vec<u64> = (1..64).collect();
    targets.extend(sample(64u64..1024, LARGE_TARGETS));
    first_failure(batch::map(&targets, |&c| backward_pair(c)))
}

/// The full sweep of two-unknown targets below 1024.
pub fn arithmetic_backward_exhaustive() -> Outcome {
    let targets: Vec<u64> = (1..1024).collect();
    first_failure(batch::map(&targets, |&c| backward_pair(c)))
}

pub type Suite = (&'static str, fn() -> Outcome);

pub const SUITES: &[Suite] = &[
    ("unification", unification),
    ("disequality", disequality),
    ("streams", streams),
    ("prisms", prisms),
    ("dispatch", dispatch),
    ("arithmetic-forward", arithmetic_forward),
    ("arithmetic-backward", arithmetic_backward),
];
