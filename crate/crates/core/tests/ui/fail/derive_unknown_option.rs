use kanren::Logical;

#[derive(Clone, Debug, PartialEq, Logical)]
#[logic(everything)]
enum Flag {
    On,
    Off,
}

fn main() {}
