use kanren::prelude::*;
use kanren::stdlib::result::{LogicResult, Result};

fn main() {
    let m = enter_tagged::<Result<i64, bool>, ()>()
        .on_tagged(LogicResult::tagged_fail(), |_| successo(()))
        .on_tagged(LogicResult::tagged_ok(), |_| successo(()))
        .matche_exhaustive();
    assert_eq!(run(|r: Term<Result<i64, bool>>| m.apply(r)).count(), 2);
}
