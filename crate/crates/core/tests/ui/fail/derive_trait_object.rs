use kanren::Logical;

#[derive(Logical)]
enum Callback {
    Run(Box<dyn Fn() + Send + Sync>),
}

fn main() {}
