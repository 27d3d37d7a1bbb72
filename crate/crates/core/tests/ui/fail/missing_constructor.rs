use kanren::prelude::*;
use kanren::stdlib::result::{LogicResult, Result};

fn main() {
    let _ = enter_tagged::<Result<i64, bool>, ()>()
        .on_tagged(LogicResult::tagged_ok(), |_| successo(()))
        .matche_exhaustive();
}
