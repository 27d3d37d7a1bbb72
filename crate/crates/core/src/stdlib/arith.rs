//! Natural numbers as little-endian binary numerals and the pure
//! arithmetic relations over them.
//!
//! A numeral is a list of bits, least significant first, without trailing
//! zeros; zero is the empty list. The relations follow Kiselyov et al.'s
//! construction, so every relation terminates when at most one argument is
//! fresh and the others are ground numerals.

use crate::goal::{conde, conj_many, eq, fresh, Goal};
use crate::stdlib::list::{appendo, List, LogicList};
use crate::term::Term;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Bit {
    Zero,
    One,
}

crate::atomic_logical!(Bit);

pub type Numeral = List<Bit>;

type N = Term<Numeral>;
type B = Term<Bit>;
type N3 = (N, N, N);
type N4 = (N, N, N, N);

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
pub enum NumeralError {
    #[error("numeral has a trailing zero bit")]
    TrailingZero,
    #[error("numeral does not fit in 64 bits")]
    Overflow,
}

/// Little-endian binary encoding of `n`.
pub fn to_binary(mut n: u64) -> Numeral {
    let mut bits = Vec::new();
    while n > 0 {
        bits.push(if n & 1 == 1 { Bit::One } else { Bit::Zero });
        n >>= 1;
    }
    List::from(bits)
}

/// Decodes a canonical numeral.
pub fn from_binary(numeral: &Numeral) -> Result<u64, NumeralError> {
    let bits: Vec<Bit> = numeral.to_vec();
    if bits.last() == Some(&Bit::Zero) {
        return Err(NumeralError::TrailingZero);
    }
    if bits.len() > 64 {
        return Err(NumeralError::Overflow);
    }
    Ok(bits
        .iter()
        .rev()
        .fold(0, |acc, b| (acc << 1) | u64::from(*b == Bit::One)))
}

/// The ground numeral term for `n`.
pub fn num(n: u64) -> N {
    Term::inject(to_binary(n))
}

/// Decodes a ground numeral term; `None` if it is not ground or not
/// canonical.
pub fn term_to_u64(term: &N) -> Option<u64> {
    from_binary(&term.extract()?).ok()
}

fn b0() -> B {
    Term::inject(Bit::Zero)
}

fn b1() -> B {
    Term::inject(Bit::One)
}

fn nil() -> N {
    LogicList::nil()
}

fn cons(a: B, d: N) -> N {
    LogicList::cons(a, d)
}

fn one() -> N {
    cons(b1(), nil())
}

/// Builds the relation body only when the goal is first run, so relations
/// may refer to themselves directly inside `conde`.
macro_rules! relation {
    ($body:ident($($arg:ident),*)) => {{
        Goal::delay(move || $body($($arg.clone()),*))
    }};
}

/// `n` is positive.
pub fn poso(n: N) -> Goal {
    fresh(move |(a, d)| eq(n.clone(), cons(a, d)))
}

/// `n` is greater than one.
pub fn gt1o(n: N) -> Goal {
    fresh(move |(a, ad, dd)| eq(n.clone(), cons(a, cons(ad, dd))))
}

fn cdro(p: N, d: N) -> Goal {
    fresh(move |a| eq(p.clone(), cons(a, d.clone())))
}

/// One-bit full adder: `b + x + y = r + 2c`.
pub fn full_addero(b: B, x: B, y: B, r: B, c: B) -> Goal {
    const TABLE: [[u8; 5]; 8] = [
        [0, 0, 0, 0, 0],
        [1, 0, 0, 1, 0],
        [0, 1, 0, 1, 0],
        [1, 1, 0, 0, 1],
        [0, 0, 1, 1, 0],
        [1, 0, 1, 0, 1],
        [0, 1, 1, 0, 1],
        [1, 1, 1, 1, 1],
    ];
    let bit = |v: u8| if v == 1 { b1() } else { b0() };
    conde(TABLE.iter().map(|row| {
        vec![
            eq(b.clone(), bit(row[0])),
            eq(x.clone(), bit(row[1])),
            eq(y.clone(), bit(row[2])),
            eq(r.clone(), bit(row[3])),
            eq(c.clone(), bit(row[4])),
        ]
    }))
}

/// `d + n + m = r` for a carry bit `d`.
pub fn addero(d: B, n: N, m: N, r: N) -> Goal {
    relation!(addero_body(d, n, m, r))
}

fn addero_body(d: B, n: N, m: N, r: N) -> Goal {
    let last = {
        let (d, r) = (d.clone(), r.clone());
        fresh(move |(a, c): (B, B)| {
            eq(r.clone(), cons(a.clone(), cons(c.clone(), nil()))).and(full_addero(d.clone(), b1(), b1(), a, c))
        })
    };
    conde([
        vec![eq(d.clone(), b0()), eq(m.clone(), nil()), eq(n.clone(), r.clone())],
        vec![
            eq(d.clone(), b0()),
            eq(n.clone(), nil()),
            eq(m.clone(), r.clone()),
            poso(m.clone()),
        ],
        vec![
            eq(d.clone(), b1()),
            eq(m.clone(), nil()),
            addero(b0(), n.clone(), one(), r.clone()),
        ],
        vec![
            eq(d.clone(), b1()),
            eq(n.clone(), nil()),
            poso(m.clone()),
            addero(b0(), one(), m.clone(), r.clone()),
        ],
        vec![eq(n.clone(), one()), eq(m.clone(), one()), last],
        vec![
            eq(n.clone(), one()),
            gen_addero(d.clone(), n.clone(), m.clone(), r.clone()),
        ],
        vec![
            eq(m.clone(), one()),
            gt1o(n.clone()),
            gt1o(r.clone()),
            addero(d.clone(), one(), n.clone(), r.clone()),
        ],
        vec![gt1o(n.clone()), gen_addero(d, n, m, r)],
    ])
}

fn gen_addero(d: B, n: N, m: N, r: N) -> Goal {
    fresh(move |(a, b, c, e, x, y, z): (B, B, B, B, N, N, N)| {
        conj_many([
            eq(n.clone(), cons(a.clone(), x.clone())),
            eq(m.clone(), cons(b.clone(), y.clone())),
            poso(y.clone()),
            eq(r.clone(), cons(c.clone(), z.clone())),
            poso(z.clone()),
            full_addero(d.clone(), a, b, c, e.clone()),
            addero(e, x, y, z),
        ])
    })
}

/// `n + m = k`.
pub fn pluso(n: N, m: N, k: N) -> Goal {
    addero(b0(), n, m, k)
}

/// `n - m = k`.
pub fn minuso(n: N, m: N, k: N) -> Goal {
    pluso(m, k, n)
}

/// `n * m = p`.
pub fn multo(n: N, m: N, p: N) -> Goal {
    relation!(multo_body(n, m, p))
}

fn multo_body(n: N, m: N, p: N) -> Goal {
    let even = {
        let (n, m, p) = (n.clone(), m.clone(), p.clone());
        fresh(move |(x, z): (N, N)| {
            conj_many([
                eq(n.clone(), cons(b0(), x.clone())),
                poso(x.clone()),
                eq(p.clone(), cons(b0(), z.clone())),
                poso(z.clone()),
                gt1o(m.clone()),
                multo(x, m.clone(), z),
            ])
        })
    };
    let swap = {
        let (n, m, p) = (n.clone(), m.clone(), p.clone());
        fresh(move |(x, y): (N, N)| {
            conj_many([
                eq(n.clone(), cons(b1(), x.clone())),
                poso(x),
                eq(m.clone(), cons(b0(), y.clone())),
                poso(y),
                multo(m.clone(), n.clone(), p.clone()),
            ])
        })
    };
    let odd = {
        let (n, m, p) = (n.clone(), m.clone(), p.clone());
        fresh(move |(x, y): (N, N)| {
            conj_many([
                eq(n.clone(), cons(b1(), x.clone())),
                poso(x.clone()),
                eq(m.clone(), cons(b1(), y.clone())),
                poso(y),
                odd_multo(x, n.clone(), m.clone(), p.clone()),
            ])
        })
    };
    conde([
        vec![eq(n.clone(), nil()), eq(p.clone(), nil())],
        vec![poso(n.clone()), eq(m.clone(), nil()), eq(p.clone(), nil())],
        vec![eq(n.clone(), one()), poso(m.clone()), eq(m.clone(), p.clone())],
        vec![gt1o(n.clone()), eq(m.clone(), one()), eq(n, p)],
        vec![even],
        vec![swap],
        vec![odd],
    ])
}

fn odd_multo(x: N, n: N, m: N, p: N) -> Goal {
    fresh(move |q: N| {
        conj_many([
            bound_multo(q.clone(), p.clone(), n.clone(), m.clone()),
            multo(x.clone(), m.clone(), q.clone()),
            pluso(cons(b0(), q), m.clone(), p.clone()),
        ])
    })
}

/// Bounds the length of the partial product `q` by those of `p`, `n` and
/// `m`, which is what makes multiplication terminate.
fn bound_multo(q: N, p: N, n: N, m: N) -> Goal {
    relation!(bound_multo_body(q, p, n, m))
}

fn bound_multo_body(q: N, p: N, n: N, m: N) -> Goal {
    let step = {
        let q = q.clone();
        let p = p.clone();
        fresh(move |(x, y, z): (N, N, N)| {
            conj_many([
                cdro(q.clone(), x.clone()),
                cdro(p.clone(), y.clone()),
                conde([
                    vec![
                        eq(n.clone(), nil()),
                        cdro(m.clone(), z.clone()),
                        bound_multo(x.clone(), y.clone(), z.clone(), nil()),
                    ],
                    vec![cdro(n.clone(), z.clone()), bound_multo(x, y, z, m.clone())],
                ]),
            ])
        })
    };
    conde([vec![eq(q, nil()), poso(p)], vec![step]])
}

/// `n` and `m` have the same length.
pub fn eqlo(n: N, m: N) -> Goal {
    relation!(eqlo_body(n, m))
}

fn eqlo_body(n: N, m: N) -> Goal {
    let step = {
        let (n, m) = (n.clone(), m.clone());
        fresh(move |(a, x, b, y): (B, N, B, N)| {
            conj_many([
                eq(n.clone(), cons(a, x.clone())),
                poso(x.clone()),
                eq(m.clone(), cons(b, y.clone())),
                poso(y.clone()),
                eqlo(x, y),
            ])
        })
    };
    conde([
        vec![eq(n.clone(), nil()), eq(m.clone(), nil())],
        vec![eq(n, one()), eq(m, one())],
        vec![step],
    ])
}

/// `n` is shorter than `m`.
pub fn ltlo(n: N, m: N) -> Goal {
    relation!(ltlo_body(n, m))
}

fn ltlo_body(n: N, m: N) -> Goal {
    let step = {
        let (n, m) = (n.clone(), m.clone());
        fresh(move |(a, x, b, y): (B, N, B, N)| {
            conj_many([
                eq(n.clone(), cons(a, x.clone())),
                poso(x.clone()),
                eq(m.clone(), cons(b, y.clone())),
                poso(y.clone()),
                ltlo(x, y),
            ])
        })
    };
    conde([
        vec![eq(n.clone(), nil()), poso(m.clone())],
        vec![eq(n, one()), gt1o(m)],
        vec![step],
    ])
}

/// `n` is not longer than `m`.
pub fn lelo(n: N, m: N) -> Goal {
    conde([vec![eqlo(n.clone(), m.clone())], vec![ltlo(n, m)]])
}

/// `n < m`.
pub fn lesso(n: N, m: N) -> Goal {
    let same_length = {
        let (n, m) = (n.clone(), m.clone());
        fresh(move |x: N| conj_many([poso(x.clone()), pluso(n.clone(), x, m.clone())]))
    };
    conde([vec![ltlo(n.clone(), m.clone())], vec![eqlo(n, m), same_length]])
}

/// `n <= m`.
pub fn leqo(n: N, m: N) -> Goal {
    conde([vec![eq(n.clone(), m.clone())], vec![lesso(n, m)]])
}

/// `n = m * q + r` with `r < m`.
pub(crate) fn divo(n: N, m: N, q: N, r: N) -> Goal {
    relation!(divo_body(n, m, q, r))
}

fn divo_body(n: N, m: N, q: N, r: N) -> Goal {
    let long = {
        let (n, m, q, r) = (n.clone(), m.clone(), q.clone(), r.clone());
        fresh(move |((nh, nl, qh, ql), (qlm, qlmr, rr, rh)): (N4, N4)| {
            conj_many([
                splito(n.clone(), r.clone(), nl.clone(), nh.clone()),
                splito(q.clone(), r.clone(), ql.clone(), qh.clone()),
                conde([
                    vec![
                        eq(nh.clone(), nil()),
                        eq(qh.clone(), nil()),
                        minuso(nl.clone(), r.clone(), qlm.clone()),
                        multo(ql.clone(), m.clone(), qlm.clone()),
                    ],
                    vec![
                        poso(nh.clone()),
                        multo(ql, m.clone(), qlm.clone()),
                        pluso(qlm, r.clone(), qlmr.clone()),
                        minuso(qlmr, nl, rr.clone()),
                        splito(rr, r.clone(), nil(), rh.clone()),
                        divo(nh, m.clone(), qh, rh),
                    ],
                ]),
            ])
        })
    };
    conde([
        vec![
            eq(r.clone(), n.clone()),
            eq(q.clone(), nil()),
            lesso(n.clone(), m.clone()),
        ],
        vec![
            eq(q.clone(), one()),
            eqlo(n.clone(), m.clone()),
            pluso(r.clone(), m.clone(), n.clone()),
            lesso(r.clone(), m.clone()),
        ],
        vec![ltlo(m.clone(), n), lesso(r, m), poso(q), long],
    ])
}

/// Splits `n` at the length of `r`: `n = l + 2^(|r|+1) * h`, with the bit
/// at position `|r|` dropped.
fn splito(n: N, r: N, l: N, h: N) -> Goal {
    relation!(splito_body(n, r, l, h))
}

fn splito_body(n: N, r: N, l: N, h: N) -> Goal {
    let (n2, r2, l2, h2) = (n.clone(), r.clone(), l.clone(), h.clone());
    let (n3, r3, l3, h3) = (n.clone(), r.clone(), l.clone(), h.clone());
    let (n4, r4, l4, h4) = (n.clone(), r.clone(), l.clone(), h.clone());
    let (n5, r5, l5, h5) = (n.clone(), r.clone(), l.clone(), h.clone());
    let (n6, r6, l6, h6) = (n.clone(), r.clone(), l.clone(), h.clone());
    conde([
        vec![eq(n.clone(), nil()), eq(h.clone(), nil()), eq(l.clone(), nil())],
        vec![fresh(move |(b, rest): (B, N)| {
            conj_many([
                eq(n2.clone(), cons(b0(), cons(b.clone(), rest.clone()))),
                eq(r2.clone(), nil()),
                eq(h2.clone(), cons(b, rest)),
                eq(l2.clone(), nil()),
            ])
        })],
        vec![fresh(move |rest: N| {
            conj_many([
                eq(n3.clone(), cons(b1(), rest.clone())),
                eq(r3.clone(), nil()),
                eq(rest, h3.clone()),
                eq(l3.clone(), one()),
            ])
        })],
        vec![fresh(move |(b, rest, a, rr): (B, N, B, N)| {
            conj_many([
                eq(n4.clone(), cons(b0(), cons(b.clone(), rest.clone()))),
                eq(r4.clone(), cons(a, rr.clone())),
                eq(l4.clone(), nil()),
                splito(cons(b, rest), rr, nil(), h4.clone()),
            ])
        })],
        vec![fresh(move |(rest, a, rr): (N, B, N)| {
            conj_many([
                eq(n5.clone(), cons(b1(), rest.clone())),
                eq(r5.clone(), cons(a, rr.clone())),
                eq(l5.clone(), one()),
                splito(rest, rr, nil(), h5.clone()),
            ])
        })],
        vec![fresh(move |(b, rest, a, rr, ll): (B, N, B, N, N)| {
            conj_many([
                eq(n6.clone(), cons(b.clone(), rest.clone())),
                eq(r6.clone(), cons(a, rr.clone())),
                eq(l6.clone(), cons(b, ll.clone())),
                poso(ll.clone()),
                splito(rest, rr, ll, h6.clone()),
            ])
        })],
    ])
}

/// `n = b^q + r` with `0 <= r` and `n < b^(q+1)`: `q` is the integer
/// logarithm of `n` in base `b` and `r` the remainder.
pub fn logo(n: N, b: N, q: N, r: N) -> Goal {
    relation!(logo_body(n, b, q, r))
}

fn logo_body(n: N, b: N, q: N, r: N) -> Goal {
    let base_two = {
        let (n, q, r) = (n.clone(), q.clone(), r.clone());
        fresh(move |(a, ad, dd, s): (B, B, N, N)| {
            conj_many([
                poso(dd.clone()),
                eq(n.clone(), cons(a, cons(ad, dd.clone()))),
                exp2o(n.clone(), nil(), q.clone()),
                splito(n.clone(), dd, r.clone(), s),
            ])
        })
    };
    let general = {
        let (n, b, q, r) = (n.clone(), b.clone(), q.clone(), r.clone());
        fresh(move |(a, ad, add, ddd): (B, B, B, N)| {
            let (n, b, q, r) = (n.clone(), b.clone(), q.clone(), r.clone());
            let (b_outer, n_outer) = (b.clone(), n.clone());
            let wide_base = conde([
                vec![eq(b.clone(), cons(b1(), one()))],
                vec![eq(b.clone(), cons(a, cons(ad, cons(add, ddd))))],
            ]);
            let search = fresh(move |((bw1, bw, nw, nw1), (ql1, ql, s)): (N4, N3)| {
                let bound = {
                    let (q, bw, nw1) = (q.clone(), bw.clone(), nw1.clone());
                    fresh(move |(q1, bwq1): (N, N)| {
                        conj_many([
                            pluso(q.clone(), one(), q1.clone()),
                            multo(bw.clone(), q1, bwq1.clone()),
                            lesso(nw1.clone(), bwq1),
                        ])
                    })
                };
                let refine = {
                    let (n, b, q, r) = (n.clone(), b.clone(), q.clone(), r.clone());
                    let (nw, bw1, ql) = (nw.clone(), bw1.clone(), ql.clone());
                    fresh(move |(bql, qh, s, qdh, qd): (N, N, N, N, N)| {
                        let (n, b, r) = (n.clone(), b.clone(), r.clone());
                        let (bql2, qd2) = (bql.clone(), qd.clone());
                        conj_many([
                            repeated_mulo(b.clone(), ql.clone(), bql.clone()),
                            divo(nw.clone(), bw1.clone(), qh.clone(), s),
                            pluso(ql.clone(), qdh.clone(), qh),
                            pluso(ql.clone(), qd.clone(), q.clone()),
                            leqo(qd, qdh),
                            fresh(move |(bqd, bq1, bq): (N, N, N)| {
                                conj_many([
                                    repeated_mulo(b.clone(), qd2.clone(), bqd.clone()),
                                    multo(bql2.clone(), bqd, bq.clone()),
                                    multo(b.clone(), bq.clone(), bq1.clone()),
                                    pluso(bq, r.clone(), n.clone()),
                                    lesso(n.clone(), bq1),
                                ])
                            }),
                        ])
                    })
                };
                conj_many([
                    exp2o(b.clone(), nil(), bw1.clone()),
                    pluso(bw1.clone(), one(), bw.clone()),
                    ltlo(q.clone(), n.clone()),
                    bound,
                    exp2o(n.clone(), nil(), nw1.clone()),
                    pluso(nw1, one(), nw.clone()),
                    divo(nw, bw, ql1.clone(), s),
                    pluso(ql.clone(), one(), ql1),
                    lelo(ql, q.clone()),
                    refine,
                ])
            });
            conj_many([wide_base, ltlo(b_outer, n_outer), search])
        })
    };
    conde([
        vec![
            eq(n.clone(), one()),
            poso(b.clone()),
            eq(q.clone(), nil()),
            eq(r.clone(), nil()),
        ],
        vec![
            eq(q.clone(), nil()),
            lesso(n.clone(), b.clone()),
            pluso(r.clone(), one(), n.clone()),
        ],
        vec![
            eq(q.clone(), one()),
            gt1o(b.clone()),
            eqlo(n.clone(), b.clone()),
            pluso(r.clone(), b.clone(), n.clone()),
        ],
        vec![
            eq(b.clone(), one()),
            poso(q.clone()),
            pluso(r.clone(), one(), n.clone()),
        ],
        vec![eq(b.clone(), nil()), poso(q.clone()), eq(r.clone(), n.clone())],
        vec![eq(b.clone(), cons(b0(), one())), base_two],
        vec![general],
    ])
}

/// `q` is the integer logarithm of `n` in base `2^(|b|+1)`.
fn exp2o(n: N, b: N, q: N) -> Goal {
    relation!(exp2o_body(n, b, q))
}

fn exp2o_body(n: N, b: N, q: N) -> Goal {
    let top = {
        let (n, b) = (n.clone(), b.clone());
        fresh(move |s: N| splito(n.clone(), b.clone(), s, one()))
    };
    let even = {
        let (n, b, q) = (n.clone(), b.clone(), q.clone());
        fresh(move |(q1, b2): (N, N)| {
            conj_many([
                eq(q.clone(), cons(b0(), q1.clone())),
                poso(q1.clone()),
                ltlo(b.clone(), n.clone()),
                appendo(b.clone(), cons(b1(), b.clone()), b2.clone()),
                exp2o(n.clone(), b2, q1),
            ])
        })
    };
    let odd = {
        let (n, b, q) = (n.clone(), b.clone(), q.clone());
        fresh(move |(q1, nh, b2, s): (N, N, N, N)| {
            conj_many([
                eq(q.clone(), cons(b1(), q1.clone())),
                poso(q1.clone()),
                poso(nh.clone()),
                splito(n.clone(), b.clone(), s, nh.clone()),
                appendo(b.clone(), cons(b1(), b.clone()), b2.clone()),
                exp2o(nh, b2, q1),
            ])
        })
    };
    conde([
        vec![eq(n.clone(), one()), eq(q.clone(), nil())],
        vec![gt1o(n), eq(q, one()), top],
        vec![even],
        vec![odd],
    ])
}

/// `nq = n^q`, by repeated multiplication.
fn repeated_mulo(n: N, q: N, nq: N) -> Goal {
    relation!(repeated_mulo_body(n, q, nq))
}

fn repeated_mulo_body(n: N, q: N, nq: N) -> Goal {
    let step = {
        let (n, q, nq) = (n.clone(), q.clone(), nq.clone());
        fresh(move |(q1, nq1): (N, N)| {
            conj_many([
                pluso(q1.clone(), one(), q.clone()),
                repeated_mulo(n.clone(), q1, nq1.clone()),
                multo(nq1, n.clone(), nq.clone()),
            ])
        })
    };
    conde([
        vec![poso(n.clone()), eq(q.clone(), nil()), eq(nq.clone(), one())],
        vec![eq(q.clone(), one()), eq(n, nq)],
        vec![gt1o(q), step],
    ])
}

/// `b^q = n`.
pub fn expo(b: N, q: N, n: N) -> Goal {
    logo(n, b, q, nil())
}
