use kanren::Logical;

#[derive(Clone, Debug, PartialEq, Logical)]
struct Borrowed<'a> {
    text: std::marker::PhantomData<&'a str>,
}

fn main() {}
