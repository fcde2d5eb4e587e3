//! Compare the recursive counts with brute-force enumeration of diagrams.

use crossing_count::oracle::{enumerate_count, EnumSpec};
use crossing_count::structures::{isolated_histogram, s_k3};

fn main() -> crossing_count::Result<()> {
    for k in [3, 4] {
        for n in 0..=12 {
            let brute = enumerate_count(&EnumSpec::new(n, 3, k).with_histogram())?;
            let fast = s_k3(k, n)?;
            let hist_ok = brute.histogram.as_deref() == Some(&isolated_histogram(k, n)?[..]);
            println!(
                "k = {k}  n = {n:>2}  oracle = {:>6}  recursion = {:>6}  {}",
                brute.total,
                fast,
                if brute.total == fast && hist_ok { "ok" } else { "MISMATCH" }
            );
        }
    }
    Ok(())
}
