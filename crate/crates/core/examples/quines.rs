//! Prints freshly synthesized quines, twines or thrines.
//!
//! `cargo run --release --example quines -- twines 15`

use std::time::Instant;

use kanren::batch::with_search_stack;
use kanren::scheme::{quineso, thrineso, twineso};

fn main() {
    let kind = std::env::args().nth(1).unwrap_or_else(|| "quines".into());
    let n = std::env::args().nth(2).and_then(|a| a.parse().ok()).unwrap_or(10);
    let start = Instant::now();
    let (lines, verified, steps) = with_search_stack(move || match kind.as_str() {
        "twines" => {
            let r = twineso(n, None);
            let lines: Vec<_> = r.found.iter().map(|(p, q)| format!("{p}\n  {q}")).collect();
            (lines, r.verified, r.steps)
        }
        "thrines" => {
            let r = thrineso(n, None);
            let lines: Vec<_> = r.found.iter().map(|(p, q, s)| format!("{p}\n  {q}\n  {s}")).collect();
            (lines, r.verified, r.steps)
        }
        _ => {
            let r = quineso(n, None);
            (r.found.iter().map(|q| q.to_string()).collect(), r.verified, r.steps)
        }
    });
    for (line, ok) in lines.iter().zip(&verified) {
        println!("{} {line}", if *ok { "ok " } else { "BAD" });
    }
    eprintln!("{} found, {} steps, {:?}", lines.len(), steps, start.elapsed());
}
