//! A relational interpreter for a small Scheme subset (`quote`, `list`,
//! single-parameter `lambda`, variables and application), a deterministic
//! evaluator for the same language, and quine/twine/thrine synthesis.
//!
//! Values keep closures apart from data: a value is either a quoted-data
//! S-expression or a closure. No S-expression denotes a closure, so quoted
//! data can never forge one, and "the value of `q` is `q` itself" is a
//! single unification against `Data(q)`.

mod eval;
mod relational;
mod sexpr;
mod synth;

pub use eval::{eval_det, eval_det_with_fuel, DEFAULT_FUEL};
pub use relational::{evalo, lookupo, mirroro, not_in_envo, proper_listo};
pub use sexpr::{parse_sexpr, print_sexpr, ParseError};
pub use synth::{ground_sexpr, quineso, thrineso, twineso, verify_quine, verify_thrine, verify_twine, Synthesis};

use crate::stdlib::list::List;
use crate::term::Symbol;
use crate::Logical;

#[derive(Clone, PartialEq, Eq, Hash, Logical)]
pub enum SExpr {
    Sym(Symbol),
    Nil,
    Cons(Box<SExpr>, Box<SExpr>),
}

/// Result of evaluation: quoted data or a closure.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Logical)]
pub enum Val {
    Data(SExpr),
    Closure(Symbol, Box<SExpr>, Box<Env>),
}

/// Association list from variables to values, innermost binding first.
pub type Env = List<(Symbol, Val)>;

impl SExpr {
    pub fn sym(name: &str) -> Self {
        SExpr::Sym(Symbol::new(name))
    }

    pub fn cons(car: SExpr, cdr: SExpr) -> Self {
        SExpr::Cons(Box::new(car), Box::new(cdr))
    }

    /// The proper list of `items`.
    pub fn list(items: impl IntoIterator<Item = SExpr>) -> Self {
        let items: Vec<_> = items.into_iter().collect();
        items
            .into_iter()
            .rev()
            .fold(SExpr::Nil, |tail, head| SExpr::cons(head, tail))
    }

    /// The elements of a proper list; `None` for symbols and dotted lists.
    pub fn to_vec(&self) -> Option<Vec<&SExpr>> {
        let mut out = Vec::new();
        let mut cur = self;
        loop {
            match cur {
                SExpr::Nil => return Some(out),
                SExpr::Cons(car, cdr) => {
                    out.push(&**car);
                    cur = cdr;
                }
                SExpr::Sym(_) => return None,
            }
        }
    }
}

impl std::fmt::Debug for SExpr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&print_sexpr(self))
    }
}

impl std::fmt::Display for SExpr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&print_sexpr(self))
    }
}

impl std::fmt::Display for Val {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Val::Data(s) => write!(f, "{s}"),
            Val::Closure(..) => f.write_str("#closure"),
        }
    }
}
