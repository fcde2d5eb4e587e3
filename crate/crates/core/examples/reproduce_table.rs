//! Exact `S_{3,3}(n) / 4.5492^n` next to the asymptotic `K' 4! / (n)_5`.

use crossing_count::asymptotics::{subexp_table, PUBLISHED_GROWTH};

fn main() -> crossing_count::Result<()> {
    println!("{:>5}  {:>12}  {:>12}  {:>8}", "n", "exact", "asymptotic", "ratio");
    for row in subexp_table(100, 10, PUBLISHED_GROWTH)? {
        let asym = row.asymptotic.unwrap_or(f64::NAN);
        println!(
            "{:>5}  {:>12.4e}  {:>12.4e}  {:>8.4}",
            row.n,
            row.exact,
            asym,
            row.exact / asym
        );
    }
    Ok(())
}
