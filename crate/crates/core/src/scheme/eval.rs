//! Deterministic forward evaluator with the same semantics as `evalo`.

use super::{Env, SExpr, Val};
use crate::stdlib::list::List;
use crate::term::Symbol;

/// Evaluation steps allowed by [`eval_det`].
pub const DEFAULT_FUEL: u64 = 1_000_000;

/// Evaluates a closed expression in the empty environment. `None` if the
/// expression is stuck or runs out of fuel (or nests non-tail evaluations
/// too deeply).
pub fn eval_det(expr: &SExpr) -> Option<Val> {
    eval_det_with_fuel(expr, &List::Nil, DEFAULT_FUEL)
}

pub fn eval_det_with_fuel(expr: &SExpr, env: &Env, fuel: u64) -> Option<Val> {
    eval(expr, env, &mut Budget { fuel, depth: 0 })
}

fn lookup<'a>(env: &'a Env, name: &Symbol) -> Option<&'a Val> {
    env.iter().find(|(x, _)| x == name).map(|(_, v)| v)
}

fn is_bound(env: &Env, name: &str) -> bool {
    env.iter().any(|(x, _)| x.as_str() == name)
}

/// Nesting of non-tail evaluations beyond which evaluation gives up, like
/// running out of fuel.
const MAX_DEPTH: u32 = 2_000;

struct Budget {
    fuel: u64,
    depth: u32,
}

fn eval(expr: &SExpr, env: &Env, budget: &mut Budget) -> Option<Val> {
    if budget.depth >= MAX_DEPTH {
        return None;
    }
    budget.depth += 1;
    let result = eval_loop(expr.clone(), env.clone(), budget);
    budget.depth -= 1;
    result
}

/// Applications evaluate their body in a loop so that tail calls do not
/// grow the stack.
fn eval_loop(mut expr: SExpr, mut env: Env, budget: &mut Budget) -> Option<Val> {
    loop {
        budget.fuel = budget.fuel.checked_sub(1)?;
        match &expr {
            SExpr::Sym(x) => return lookup(&env, x).cloned(),
            SExpr::Nil => return None,
            SExpr::Cons(head, rest) => {
                if let SExpr::Sym(keyword) = &**head {
                    if !is_bound(&env, keyword.as_str()) {
                        return special_form(keyword.as_str(), rest, &env, budget);
                    }
                }
                let [rand] = rest.to_vec()?[..] else {
                    return None;
                };
                let Val::Closure(param, body, closure_env) = eval(head, &env, budget)? else {
                    return None;
                };
                let arg = eval(rand, &env, budget)?;
                env = List::Cons((param, arg), closure_env);
                expr = *body;
            }
        }
    }
}

/// `quote`, `list` and `lambda` when not shadowed; any other unbound head
/// symbol is stuck.
fn special_form(keyword: &str, rest: &SExpr, env: &Env, budget: &mut Budget) -> Option<Val> {
    let args = rest.to_vec()?;
    match (keyword, &args[..]) {
        ("quote", [datum]) => Some(Val::Data((*datum).clone())),
        ("list", items) => {
            let mut values = Vec::with_capacity(items.len());
            for item in items {
                match eval(item, env, budget)? {
                    Val::Data(d) => values.push(d),
                    Val::Closure(..) => return None,
                }
            }
            Some(Val::Data(SExpr::list(values)))
        }
        ("lambda", [params, body]) => match params.to_vec()?[..] {
            [SExpr::Sym(param)] => Some(Val::Closure(
                param.clone(),
                Box::new((*body).clone()),
                Box::new(env.clone()),
            )),
            _ => None,
        },
        _ => None,
    }
}
