use kanren::Logical;

#[derive(Clone, Copy, Logical)]
union Bits {
    int: u32,
    float: f32,
}

fn main() {}
