use kanren::Logical;

#[derive(Clone, Debug, PartialEq, Logical)]
enum Named {
    Name(&'static str),
}

fn main() {}
