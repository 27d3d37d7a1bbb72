//! Synthesis of quines, twines and thrines by running the interpreter
//! backwards, with every result checked by the forward evaluator.

use super::relational::evalo;
use super::{eval_det, LogicSExpr, LogicVal, SExpr, Val};
use crate::batch;
use crate::goal::{conj_many, neq, run, Answers, Fresh, Goal};
use crate::state::{unify_terms, State};
use crate::stdlib::list::LogicList;
use crate::term::{Symbol, Term};

type E = Term<SExpr>;

/// Outcome of a synthesis query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Synthesis<T> {
    pub found: Vec<T>,
    /// Verification verdict for each element of `found`.
    pub verified: Vec<bool>,
    /// Stream steps the search took.
    pub steps: u64,
    /// `false` if the step budget ran out before enough results appeared.
    pub complete: bool,
}

impl<T> Synthesis<T> {
    pub fn all_verified(&self) -> bool {
        self.verified.iter().all(|v| *v)
    }

    pub fn verified_count(&self) -> usize {
        self.verified.iter().filter(|v| **v).count()
    }
}

/// `i`-th name of the sequence a, b, ..., z, aa, ab, ...
fn name(mut i: usize) -> String {
    let mut out = Vec::new();
    loop {
        out.push(b'a' + (i % 26) as u8);
        if i < 26 {
            break;
        }
        i = i / 26 - 1;
    }
    out.reverse();
    String::from_utf8(out).unwrap()
}

/// Names tried for one variable before giving up; only finitely many can
/// be excluded by disequalities.
const NAME_ATTEMPTS: usize = 1024;

struct Grounder {
    next: usize,
}

impl Grounder {
    /// Binds the symbol variable behind `term` to the first unused name the
    /// constraint store accepts.
    fn name_symbol(&mut self, term: &Term<Symbol>, state: State) -> Option<(Symbol, State)> {
        for _ in 0..NAME_ATTEMPTS {
            let sym = Symbol::new(&name(self.next));
            self.next += 1;
            if let Some(state) = unify_terms(term, &Term::inject(sym.clone()), state.clone()) {
                return Some((sym, state));
            }
        }
        None
    }

    fn ground(&mut self, term: &E, state: State) -> Option<(SExpr, State)> {
        match state.shallow_walk(term) {
            Term::Var(var) => {
                let placeholder = state.clone().with_fresh_var::<Symbol>();
                let (sym_var, state) = placeholder;
                let sym = Term::Var(sym_var);
                let state = unify_terms(&Term::Var(var), &LogicSExpr::sym(sym.clone()), state)?;
                let (sym, state) = self.name_symbol(&sym, state)?;
                Some((SExpr::Sym(sym), state))
            }
            Term::Value(value) => match &*value {
                LogicSExpr::LogicNil => Some((SExpr::Nil, state)),
                LogicSExpr::LogicSym(s) => match state.shallow_walk(s) {
                    Term::Value(sym) => Some((SExpr::Sym((*sym).clone()), state)),
                    var => {
                        let (sym, state) = self.name_symbol(&var, state)?;
                        Some((SExpr::Sym(sym), state))
                    }
                },
                LogicSExpr::LogicCons(car, cdr) => {
                    let (car, state) = self.ground(car, state)?;
                    let (cdr, state) = self.ground(cdr, state)?;
                    Some((SExpr::cons(car, cdr), state))
                }
            },
        }
    }
}

/// Instantiates every variable left in `terms` (all under `state`) with
/// lowercase symbol names, respecting the disequality constraints. Fresh
/// S-expression variables become symbols too.
pub fn ground_sexpr(terms: &[E], state: State) -> Option<(Vec<SExpr>, State)> {
    let mut grounder = Grounder { next: 0 };
    let mut state = state;
    let mut out = Vec::with_capacity(terms.len());
    for term in terms {
        let (expr, next) = grounder.ground(term, state)?;
        out.push(expr);
        state = next;
    }
    Some((out, state))
}

fn evaluates_to(expr: &SExpr, expected: &SExpr) -> bool {
    matches!(eval_det(expr), Some(Val::Data(ref v)) if v == expected)
}

pub fn verify_quine(q: &SExpr) -> bool {
    evaluates_to(q, q)
}

pub fn verify_twine(pair: &(SExpr, SExpr)) -> bool {
    let (p, q) = pair;
    p != q && evaluates_to(p, q) && evaluates_to(q, p)
}

pub fn verify_thrine(triple: &(SExpr, SExpr, SExpr)) -> bool {
    let (p, q, r) = triple;
    p != q && q != r && p != r && evaluates_to(p, q) && evaluates_to(q, r) && evaluates_to(r, p)
}

fn nil_env() -> Term<super::Env> {
    LogicList::nil()
}

fn produces(p: &E, q: &E) -> Goal {
    evalo(p.clone(), nil_env(), LogicVal::data(q.clone()))
}

/// Pulls up to `n` answers, grounds them and verifies them in a batch.
fn collect<V, T>(
    mut answers: Answers<V>,
    n: usize,
    budget: Option<u64>,
    terms: impl Fn(&V) -> Vec<E>,
    assemble: impl Fn(Vec<SExpr>) -> T,
    verify: impl Fn(&T) -> bool + Sync + Send,
) -> Synthesis<T>
where
    V: Fresh,
    T: Sync + Send,
{
    let limit = budget.unwrap_or(u64::MAX);
    let mut found = Vec::with_capacity(n);
    let mut complete = true;
    while found.len() < n {
        match answers.next_state_within(limit) {
            Ok(Some((vars, state, ()))) => {
                if let Some((exprs, _)) = ground_sexpr(&terms(&vars), state) {
                    found.push(assemble(exprs));
                }
            }
            Ok(None) => break,
            Err(_) => {
                complete = false;
                break;
            }
        }
    }
    let verified = batch::map(&found, verify);
    Synthesis {
        found,
        verified,
        steps: answers.steps(),
        complete,
    }
}

/// Up to `n` programs that evaluate to themselves.
pub fn quineso(n: usize, budget: Option<u64>) -> Synthesis<SExpr> {
    collect(
        run(|q: E| produces(&q, &q)),
        n,
        budget,
        |q| vec![q.clone()],
        |mut v| v.remove(0),
        verify_quine,
    )
}

/// Up to `n` pairs of distinct programs evaluating to each other.
pub fn twineso(n: usize, budget: Option<u64>) -> Synthesis<(SExpr, SExpr)> {
    collect(
        run(|(p, q): (E, E)| conj_many([neq(p.clone(), q.clone()), produces(&p, &q), produces(&q, &p)])),
        n,
        budget,
        |(p, q)| vec![p.clone(), q.clone()],
        |v| (v[0].clone(), v[1].clone()),
        verify_twine,
    )
}

/// Up to `n` triples of pairwise distinct programs evaluating in a cycle.
pub fn thrineso(n: usize, budget: Option<u64>) -> Synthesis<(SExpr, SExpr, SExpr)> {
    collect(
        run(|(p, q, r): (E, E, E)| {
            conj_many([
                neq(p.clone(), q.clone()),
                neq(q.clone(), r.clone()),
                neq(p.clone(), r.clone()),
                produces(&p, &q),
                produces(&q, &r),
                produces(&r, &p),
            ])
        }),
        n,
        budget,
        |(p, q, r)| vec![p.clone(), q.clone(), r.clone()],
        |v| (v[0].clone(), v[1].clone(), v[2].clone()),
        verify_thrine,
    )
}
