use crossing_count::oracle::{enumerate_count, EnumSpec};
use crossing_count::structures::{isolated_histogram, s_k3, s_k3_by_isolated};

#[test]
fn recursion_matches_brute_force_with_histograms() {
    for k in [3, 4] {
        for n in 0..=12 {
            let brute = enumerate_count(&EnumSpec::new(n, 3, k).with_histogram()).unwrap();
            assert_eq!(brute.total, s_k3(k, n).unwrap(), "k = {k}, n = {n}");
            let hist = isolated_histogram(k, n).unwrap();
            assert_eq!(brute.histogram.as_deref(), Some(&hist[..]), "k = {k}, n = {n}");
        }
    }
}

#[test]
fn known_histogram_entry() {
    assert_eq!(s_k3_by_isolated(3, 7, 3).unwrap(), 24);
    let brute = enumerate_count(&EnumSpec::new(7, 3, 3).with_histogram()).unwrap();
    assert_eq!(brute.histogram.unwrap()[3], 24);
}

#[test]
fn small_structure_counts() {
    let expected = [1u64, 1, 1, 1, 2, 5, 14, 40, 119, 364, 1145, 3688];
    for (n, &e) in expected.iter().enumerate() {
        assert_eq!(s_k3(3, n).unwrap(), e, "n = {n}");
    }
}
