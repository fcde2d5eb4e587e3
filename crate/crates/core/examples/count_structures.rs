//! Exact counts of k-noncrossing structures with arc-length >= 3.
//!
//! Usage: `cargo run --example count_structures -- [k] [n_max]`

use crossing_count::structures::{isolated_histogram, structure_counts};

fn main() -> crossing_count::Result<()> {
    let mut args = std::env::args().skip(1);
    let k: usize = args.next().map_or(3, |s| s.parse().expect("k must be an integer"));
    let n_max: usize = args.next().map_or(20, |s| s.parse().expect("n_max must be an integer"));

    println!("S_{{{k},3}}(n) for n = 0..={n_max}");
    for (n, c) in structure_counts(k, n_max)?.iter().enumerate() {
        println!("{n:>4}  {c}");
    }

    let n = 7.min(n_max);
    println!("\nsplit by isolated vertices, n = {n}");
    for (ell, c) in isolated_histogram(k, n)?.iter().enumerate() {
        if !c.is_zero() {
            println!("  ell = {ell}: {c}");
        }
    }
    Ok(())
}
