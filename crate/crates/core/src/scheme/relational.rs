//! The interpreter as a relation.

use super::{Env, LogicSExpr, LogicVal, SExpr, Val};
use crate::goal::{conj_many, disj_many, eq, fresh, neq, Goal};
use crate::stdlib::list::LogicList;
use crate::term::{Symbol, Term};

type E = Term<SExpr>;
type V = Term<Val>;
type R = Term<Env>;
type S = Term<Symbol>;

fn sym(name: &str) -> S {
    Term::inject(Symbol::new(name))
}

fn list(items: impl IntoIterator<Item = E>) -> E {
    let items: Vec<_> = items.into_iter().collect();
    items
        .into_iter()
        .rev()
        .fold(LogicSExpr::nil(), |tail, head| LogicSExpr::cons(head, tail))
}

fn binding(x: S, v: V) -> Term<(Symbol, Val)> {
    Term::value((x, v))
}

/// `v` is the closure-free value that looks exactly like `s`.
pub fn mirroro(s: E, v: V) -> Goal {
    eq(v, LogicVal::data(s))
}

/// `x` is not bound anywhere in `env`.
pub fn not_in_envo(x: S, env: R) -> Goal {
    let x2 = x;
    let env2 = env.clone();
    disj_many([
        eq(env2, LogicList::nil()),
        fresh(move |(y, v, rest): (S, V, R)| {
            conj_many([
                eq(env.clone(), LogicList::cons(binding(y.clone(), v), rest.clone())),
                neq(x2.clone(), y),
                not_in_envo(x2.clone(), rest),
            ])
        }),
    ])
}

/// The first binding of `x` in `env` is `v`.
pub fn lookupo(x: S, env: R, v: V) -> Goal {
    fresh(move |(y, w, rest): (S, V, R)| {
        let (x, v) = (x.clone(), v.clone());
        conj_many([
            eq(
                env.clone(),
                LogicList::cons(binding(y.clone(), w.clone()), rest.clone()),
            ),
            disj_many([
                eq(x.clone(), y.clone()).and(eq(v.clone(), w)),
                neq(x.clone(), y).and(lookupo(x, rest, v)),
            ]),
        ])
    })
}

/// `exprs` is a proper list of expressions whose values, all data, form
/// the list `values`.
pub fn proper_listo(exprs: E, env: R, values: E) -> Goal {
    let (exprs2, values2) = (exprs.clone(), values.clone());
    disj_many([
        eq(exprs2, LogicSExpr::nil()).and(eq(values2, LogicSExpr::nil())),
        fresh(move |(a, d, va, vd): (E, E, E, E)| {
            conj_many([
                eq(exprs.clone(), LogicSExpr::cons(a.clone(), d.clone())),
                eq(values.clone(), LogicSExpr::cons(va.clone(), vd.clone())),
                evalo(a, env.clone(), LogicVal::data(va)),
                proper_listo(d, env.clone(), vd),
            ])
        }),
    ])
}

/// `expr` evaluates to `out` in `env`.
pub fn evalo(expr: E, env: R, out: V) -> Goal {
    let quote = {
        let (expr, env, out) = (expr.clone(), env.clone(), out.clone());
        fresh(move |d: E| {
            conj_many([
                eq(expr.clone(), list([LogicSExpr::sym(sym("quote")), d.clone()])),
                not_in_envo(sym("quote"), env.clone()),
                mirroro(d, out.clone()),
            ])
        })
    };
    let list_form = {
        let (expr, env, out) = (expr.clone(), env.clone(), out.clone());
        fresh(move |(args, values): (E, E)| {
            conj_many([
                eq(
                    expr.clone(),
                    LogicSExpr::cons(LogicSExpr::sym(sym("list")), args.clone()),
                ),
                not_in_envo(sym("list"), env.clone()),
                eq(out.clone(), LogicVal::data(values.clone())),
                proper_listo(args, env.clone(), values),
            ])
        })
    };
    let variable = {
        let (expr, env, out) = (expr.clone(), env.clone(), out.clone());
        fresh(move |x: S| eq(expr.clone(), LogicSExpr::sym(x.clone())).and(lookupo(x, env.clone(), out.clone())))
    };
    let lambda = {
        let (expr, env, out) = (expr.clone(), env.clone(), out.clone());
        fresh(move |(x, body): (S, E)| {
            conj_many([
                eq(
                    expr.clone(),
                    list([
                        LogicSExpr::sym(sym("lambda")),
                        list([LogicSExpr::sym(x.clone())]),
                        body.clone(),
                    ]),
                ),
                not_in_envo(sym("lambda"), env.clone()),
                eq(out.clone(), LogicVal::closure(x, body, env.clone())),
            ])
        })
    };
    let application = fresh(
        move |((rator, rand, arg), (x, body, closure_env)): ((E, E, V), (S, E, R))| {
            conj_many([
                eq(expr.clone(), list([rator.clone(), rand.clone()])),
                evalo(
                    rator,
                    env.clone(),
                    LogicVal::closure(x.clone(), body.clone(), closure_env.clone()),
                ),
                evalo(rand, env.clone(), arg.clone()),
                evalo(body, LogicList::cons(binding(x, arg), closure_env), out.clone()),
            ])
        },
    );
    disj_many([quote, list_form, variable, lambda, application])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::goal::run;
    use crate::scheme::{eval_det, parse_sexpr};
    use crate::stdlib::list::List;

    fn eval_all(text: &str) -> Vec<Val> {
        let expr = Term::inject(parse_sexpr(text).unwrap());
        run(move |v: V| evalo(expr.clone(), LogicList::nil(), v))
            .map(|v| v.extract().unwrap())
            .collect()
    }

    #[test]
    fn forms_agree_with_forward_evaluation() {
        for text in [
            "(quote a)",
            "(list)",
            "(list 'a (list 'b))",
            "((lambda (x) x) (quote a))",
            "((lambda (quote) (quote x)) (lambda (y) y))",
            "((lambda (quote) (quote (list))) (lambda (y) 'z))",
            "((lambda (x) ((lambda (y) x) 'b)) 'a)",
            "(lambda (x) x)",
        ] {
            let expected: Vec<Val> = eval_det(&parse_sexpr(text).unwrap()).into_iter().collect();
            assert_eq!(eval_all(text), expected, "{text}");
        }
    }

    #[test]
    fn stuck_programs_have_no_value() {
        assert!(eval_all("x").is_empty());
        assert!(eval_all("(list (lambda (x) x))").is_empty());
    }

    #[test]
    fn lookup_skips_other_names() {
        let env: Term<Env> = Term::inject(List::from(vec![
            (Symbol::new("y"), Val::Data(SExpr::sym("one"))),
            (Symbol::new("x"), Val::Data(SExpr::sym("two"))),
            (Symbol::new("x"), Val::Data(SExpr::sym("three"))),
        ]));
        let out: Vec<Val> = run(move |v: V| lookupo(sym("x"), env.clone(), v))
            .map(|v| v.extract().unwrap())
            .collect();
        assert_eq!(out, vec![Val::Data(SExpr::sym("two"))]);
        assert_eq!(run(|_: V| not_in_envo(sym("quote"), LogicList::nil())).count(), 1);
    }

    #[test]
    fn mirror_rejects_closures() {
        let closure = Term::inject(Val::Closure(
            Symbol::new("x"),
            Box::new(SExpr::sym("x")),
            Box::new(List::Nil),
        ));
        assert_eq!(run(move |s: E| mirroro(s, closure.clone())).count(), 0);
        let out: Vec<_> = run(|v: V| mirroro(Term::inject(SExpr::sym("a")), v))
            .map(|v| v.extract().unwrap())
            .collect();
        assert_eq!(out, vec![Val::Data(SExpr::sym("a"))]);
    }
}
