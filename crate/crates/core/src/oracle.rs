//! Brute-force ground truth by exhaustive enumeration of diagrams.
//!
//! The search walks the leftmost unmatched vertex and either isolates it or
//! pairs it with an admissible partner to its right. Because vertices are
//! processed left to right, a newly added arc always has the largest left
//! endpoint so far, so a forbidden crossing can be detected the moment the
//! arc is added.

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

use crate::count::Count;
use crate::error::{invalid, Error, Result};

/// Default cap on visited search nodes.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Vertices `1..=n` with a set of vertex-disjoint arcs `(i, j)`, `i < j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagram {
    n: usize,
    arcs: Vec<(usize, usize)>,
}

impl Diagram {
    pub fn new(n: usize, mut arcs: Vec<(usize, usize)>) -> Result<Self> {
        let mut degree = vec![0u8; n + 1];
        for &(i, j) in &arcs {
            if !(1 <= i && i < j && j <= n) {
                return Err(invalid(format!("arc ({i}, {j}) not inside 1..={n}")));
            }
            degree[i] += 1;
            degree[j] += 1;
            if degree[i] > 1 || degree[j] > 1 {
                return Err(invalid(format!("vertex of arc ({i}, {j}) has degree > 1")));
            }
        }
        arcs.sort_unstable();
        Ok(Diagram { n, arcs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    /// Relabel `i -> n + 1 - i`.
    pub fn mirror(&self) -> Diagram {
        let arcs = self
            .arcs
            .iter()
            .map(|&(i, j)| (self.n + 1 - j, self.n + 1 - i))
            .collect();
        Diagram::new(self.n, arcs).expect("mirror of a valid diagram is valid")
    }

    pub fn isolated(&self) -> usize {
        self.n - 2 * self.arcs.len()
    }
}

/// Length of the longest strictly increasing subsequence.
fn longest_increasing(values: impl IntoIterator<Item = usize>) -> usize {
    let mut tails: Vec<usize> = Vec::new();
    for v in values {
        let pos = tails.partition_point(|&t| t < v);
        if pos == tails.len() {
            tails.push(v);
        } else {
            tails[pos] = v;
        }
    }
    tails.len()
}

/// Size of the largest set of mutually crossing arcs.
///
/// Arcs `i_1 < ... < i_m < j_1 < ... < j_m` all contain the point `i_m`, and
/// their right endpoints increase with their left endpoints. So for each
/// cut point the answer is the longest increasing run of right endpoints
/// among the arcs spanning it.
pub fn crossing_number(d: &Diagram) -> usize {
    d.arcs
        .iter()
        .map(|&(p, _)| {
            longest_increasing(
                d.arcs
                    .iter()
                    .filter(|&&(a, b)| a <= p && p < b)
                    .map(|&(_, b)| b),
            )
        })
        .max()
        .unwrap_or(0)
}

/// Order in which the search tries the options for each vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BranchOrder {
    /// Isolate first, then partners in increasing order.
    #[default]
    Ascending,
    /// Partners in decreasing order, isolation last.
    Descending,
    /// Seeded random permutation of the options at every node.
    Shuffled(u64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumSpec {
    pub n: usize,
    /// Arcs `(i, j)` must satisfy `j - i >= min_arc_length`.
    pub min_arc_length: usize,
    /// Forbid `k` mutually crossing arcs.
    pub k: usize,
    pub by_isolated: bool,
    pub budget: u64,
    pub order: BranchOrder,
}

impl EnumSpec {
    pub fn new(n: usize, min_arc_length: usize, k: usize) -> Self {
        EnumSpec {
            n,
            min_arc_length,
            k,
            by_isolated: false,
            budget: DEFAULT_BUDGET,
            order: BranchOrder::Ascending,
        }
    }

    pub fn with_histogram(mut self) -> Self {
        self.by_isolated = true;
        self
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn with_order(mut self, order: BranchOrder) -> Self {
        self.order = order;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.min_arc_length < 1 {
            return Err(invalid("minimum arc length must be at least 1"));
        }
        if self.k < 2 {
            return Err(invalid(format!("k must be at least 2, got {}", self.k)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration {
    pub total: Count,
    /// `histogram[ell]` counts diagrams with `ell` isolated vertices.
    pub histogram: Option<Vec<Count>>,
}

struct Search<'a> {
    spec: &'a EnumSpec,
    matched: Vec<bool>,
    arcs: Vec<(usize, usize)>,
    histogram: Vec<u64>,
    nodes: u64,
    rng: Option<StdRng>,
}

enum Choice {
    Isolate,
    Pair(usize),
}

impl Search<'_> {
    /// Would adding `(i, j)` complete `k` mutually crossing arcs?
    fn completes_crossing(&self, i: usize, j: usize) -> bool {
        // existing arcs all start left of i; those crossing (i, j) end in (i, j)
        let chain = longest_increasing(
            self.arcs
                .iter()
                .filter(|&&(_, b)| i < b && b < j)
                .map(|&(_, b)| b),
        );
        chain + 1 >= self.spec.k
    }

    fn run(&mut self, from: usize) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.spec.budget {
            return Err(Error::BudgetExceeded {
                budget: self.spec.budget,
            });
        }
        let n = self.spec.n;
        let Some(i) = (from..=n).find(|&v| !self.matched[v]) else {
            self.histogram[n - 2 * self.arcs.len()] += 1;
            return Ok(());
        };

        let mut choices = vec![Choice::Isolate];
        choices.extend(
            (i + self.spec.min_arc_length..=n)
                .filter(|&j| !self.matched[j])
                .map(Choice::Pair),
        );
        match self.spec.order {
            BranchOrder::Ascending => {}
            BranchOrder::Descending => choices.reverse(),
            BranchOrder::Shuffled(_) => {
                choices.shuffle(self.rng.as_mut().expect("seeded for shuffled order"))
            }
        }

        for choice in choices {
            match choice {
                Choice::Isolate => {
                    self.matched[i] = true;
                    self.run(i + 1)?;
                    self.matched[i] = false;
                }
                Choice::Pair(j) => {
                    if self.completes_crossing(i, j) {
                        continue;
                    }
                    self.matched[i] = true;
                    self.matched[j] = true;
                    self.arcs.push((i, j));
                    self.run(i + 1)?;
                    self.arcs.pop();
                    self.matched[i] = false;
                    self.matched[j] = false;
                }
            }
        }
        Ok(())
    }
}

/// Count all diagrams on `[n]` meeting the arc-length and crossing limits.
///
/// Fails with [`Error::BudgetExceeded`] rather than returning a partial
/// count when the search visits more than `spec.budget` nodes.
pub fn enumerate_count(spec: &EnumSpec) -> Result<Enumeration> {
    spec.validate()?;
    let mut search = Search {
        spec,
        matched: vec![false; spec.n + 2],
        arcs: Vec::new(),
        histogram: vec![0; spec.n + 1],
        nodes: 0,
        rng: match spec.order {
            BranchOrder::Shuffled(seed) => Some(StdRng::seed_from_u64(seed)),
            _ => None,
        },
    };
    search.run(1)?;
    let total: u64 = search.histogram.iter().sum();
    Ok(Enumeration {
        total: Count::from(total),
        histogram: spec
            .by_isolated
            .then(|| search.histogram.into_iter().map(Count::from).collect()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Exhaustive search over arc subsets.
    fn crossing_number_by_subsets(d: &Diagram) -> usize {
        let arcs = d.arcs();
        let mut best = 0;
        for mask in 1u32..(1 << arcs.len()) {
            let chosen: Vec<_> = (0..arcs.len())
                .filter(|b| mask & (1 << b) != 0)
                .map(|b| arcs[b])
                .collect();
            let max_left = chosen.iter().map(|a| a.0).max().unwrap();
            let min_right = chosen.iter().map(|a| a.1).min().unwrap();
            let rights_sorted = chosen.windows(2).all(|w| w[0].1 < w[1].1);
            if max_left < min_right && rights_sorted {
                best = best.max(chosen.len());
            }
        }
        best
    }

    fn d(n: usize, arcs: &[(usize, usize)]) -> Diagram {
        Diagram::new(n, arcs.to_vec()).unwrap()
    }

    #[test]
    fn crossing_examples() {
        assert_eq!(crossing_number(&d(5, &[(1, 4), (2, 5)])), 2);
        assert_eq!(crossing_number(&d(8, &[(1, 4), (5, 8)])), 1);
        assert_eq!(crossing_number(&d(6, &[(1, 4), (2, 5), (3, 6)])), 3);
        assert_eq!(crossing_number(&d(3, &[])), 0);
        // nested, not crossing
        assert_eq!(crossing_number(&d(4, &[(1, 4), (2, 3)])), 1);
    }

    #[test]
    fn diagram_validation() {
        assert!(Diagram::new(4, vec![(1, 2), (2, 3)]).is_err());
        assert!(Diagram::new(4, vec![(3, 2)]).is_err());
        assert!(Diagram::new(4, vec![(1, 5)]).is_err());
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(enumerate_count(&EnumSpec::new(5, 3, 3)).unwrap().total, 5);
        assert_eq!(enumerate_count(&EnumSpec::new(4, 3, 3)).unwrap().total, 2);
        let e = enumerate_count(&EnumSpec::new(6, 1, 3).with_histogram()).unwrap();
        assert_eq!(e.histogram.unwrap()[0], 14);
        assert_eq!(e.total, 75);
    }

    #[test]
    fn budget_refusal() {
        let spec = EnumSpec::new(10, 1, 3).with_budget(100);
        assert_eq!(
            enumerate_count(&spec),
            Err(Error::BudgetExceeded { budget: 100 })
        );
    }

    #[test]
    fn rejects_bad_spec() {
        assert!(enumerate_count(&EnumSpec::new(4, 0, 3)).is_err());
        assert!(enumerate_count(&EnumSpec::new(4, 1, 1)).is_err());
    }

    /// Every partial matching on `[n]`, no filtering.
    fn all_diagrams(n: usize) -> Vec<Diagram> {
        fn rec(n: usize, i: usize, used: &mut Vec<bool>, arcs: &mut Vec<(usize, usize)>, out: &mut Vec<Diagram>) {
            let Some(i) = (i..=n).find(|&v| !used[v]) else {
                out.push(Diagram::new(n, arcs.clone()).unwrap());
                return;
            };
            used[i] = true;
            rec(n, i + 1, used, arcs, out);
            for j in i + 1..=n {
                if !used[j] {
                    used[j] = true;
                    arcs.push((i, j));
                    rec(n, i + 1, used, arcs, out);
                    arcs.pop();
                    used[j] = false;
                }
            }
            used[i] = false;
        }
        let mut out = Vec::new();
        rec(n, 1, &mut vec![false; n + 2], &mut Vec::new(), &mut out);
        out
    }

    #[test]
    fn crossing_number_matches_subset_search() {
        for n in 0..=9 {
            for dg in all_diagrams(n) {
                assert_eq!(crossing_number(&dg), crossing_number_by_subsets(&dg), "{dg:?}");
            }
        }
    }

    #[test]
    fn pruned_search_matches_filtered_listing() {
        for n in 0..=9 {
            let all = all_diagrams(n);
            for (min_arc, k) in [(1, 2), (1, 3), (3, 3), (2, 4)] {
                let expected = all
                    .iter()
                    .filter(|dg| dg.arcs().iter().all(|&(i, j)| j - i >= min_arc))
                    .filter(|dg| crossing_number_by_subsets(dg) < k)
                    .count() as u64;
                let got = enumerate_count(&EnumSpec::new(n, min_arc, k)).unwrap().total;
                assert_eq!(got, expected, "n = {n}, min_arc = {min_arc}, k = {k}");
            }
        }
    }
}
