//! Exact counts of k-noncrossing perfect and partial matchings.
//!
//! Perfect matchings on `[n]` with no `k` mutually crossing arcs are in
//! bijection with oscillating tableaux of length `n`: walks on Young
//! shapes with at most `k - 1` rows that start and end at the empty shape
//! and add or remove one square per step. [`fk_perfect`] counts these walks
//! with a dense dynamic program over all shapes reachable in the walk.
//!
//! A single forward pass of length `N` yields `f_k(t, 0)` for every
//! `t <= N` at once, so sequences are computed and cached per `k`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::count::Count;
use crate::error::{invalid, Result};

/// Young shape with a bounded number of rows.
///
/// Rows are stored without trailing zeros and are weakly decreasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Shape {
    rows: Vec<u32>,
    max_rows: usize,
}

impl Shape {
    pub fn empty(max_rows: usize) -> Self {
        Shape {
            rows: Vec::new(),
            max_rows,
        }
    }

    pub fn new(rows: Vec<u32>, max_rows: usize) -> Result<Self> {
        if rows.len() > max_rows {
            return Err(invalid(format!(
                "shape has {} rows, at most {max_rows} allowed",
                rows.len()
            )));
        }
        if rows.contains(&0) {
            return Err(invalid("shape rows must be positive"));
        }
        if rows.windows(2).any(|w| w[0] < w[1]) {
            return Err(invalid("shape rows must be weakly decreasing"));
        }
        Ok(Shape { rows, max_rows })
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    pub fn max_rows(&self) -> usize {
        self.max_rows
    }

    /// Number of squares.
    pub fn size(&self) -> u32 {
        self.rows.iter().sum()
    }

    /// Shapes obtained by adding one square.
    pub fn grow(&self) -> Vec<Shape> {
        let mut out = Vec::new();
        for r in 0..self.rows.len() {
            if r == 0 || self.rows[r - 1] > self.rows[r] {
                let mut rows = self.rows.clone();
                rows[r] += 1;
                out.push(Shape {
                    rows,
                    max_rows: self.max_rows,
                });
            }
        }
        if self.rows.len() < self.max_rows {
            let mut rows = self.rows.clone();
            rows.push(1);
            out.push(Shape {
                rows,
                max_rows: self.max_rows,
            });
        }
        out
    }

    /// Shapes obtained by removing one square.
    pub fn shrink(&self) -> Vec<Shape> {
        let mut out = Vec::new();
        let len = self.rows.len();
        for r in 0..len {
            if r + 1 == len || self.rows[r + 1] < self.rows[r] {
                let mut rows = self.rows.clone();
                rows[r] -= 1;
                if rows[r] == 0 {
                    rows.pop();
                }
                out.push(Shape {
                    rows,
                    max_rows: self.max_rows,
                });
            }
        }
        out
    }
}

/// All shapes with at most `max_rows` rows and at most `max_size` squares,
/// indexed densely, with their one-square neighbourhoods.
struct ShapeGraph {
    sizes: Vec<u32>,
    neighbours: Vec<Vec<usize>>,
    by_size: Vec<Vec<usize>>,
    empty: usize,
}

impl ShapeGraph {
    fn build(max_rows: usize, max_size: u32) -> Self {
        let mut index: HashMap<Shape, usize> = HashMap::new();
        let mut shapes: Vec<Shape> = Vec::new();
        let mut frontier = vec![Shape::empty(max_rows)];
        index.insert(frontier[0].clone(), 0);
        shapes.push(frontier[0].clone());
        for _ in 0..max_size {
            let mut next = Vec::new();
            for s in &frontier {
                for g in s.grow() {
                    if !index.contains_key(&g) {
                        index.insert(g.clone(), shapes.len());
                        shapes.push(g.clone());
                        next.push(g);
                    }
                }
            }
            frontier = next;
        }

        let sizes: Vec<u32> = shapes.iter().map(Shape::size).collect();
        let mut by_size = vec![Vec::new(); max_size as usize + 1];
        let mut neighbours = Vec::with_capacity(shapes.len());
        for (i, s) in shapes.iter().enumerate() {
            by_size[sizes[i] as usize].push(i);
            let adj: Vec<usize> = s
                .grow()
                .into_iter()
                .chain(s.shrink())
                .filter_map(|t| index.get(&t).copied())
                .collect();
            neighbours.push(adj);
        }
        ShapeGraph {
            sizes,
            neighbours,
            by_size,
            empty: 0,
        }
    }
}

/// Closed oscillating-tableaux walk counts for all lengths `0..=n_max`.
fn walk_counts(k: usize, n_max: usize) -> Vec<BigUint> {
    let half = (n_max / 2) as u32;
    let graph = ShapeGraph::build(k - 1, half);
    let mut cur = vec![BigUint::zero(); graph.sizes.len()];
    let mut next = cur.clone();
    cur[graph.empty] = BigUint::one();

    let mut out = Vec::with_capacity(n_max + 1);
    out.push(BigUint::one());
    for t in 0..n_max {
        // shapes alive after step t must be able to return within the walk
        let bound_cur = t.min(n_max - t) as u32;
        let bound_next = (t + 1).min(n_max - t - 1) as u32;
        let parity = ((t + 1) % 2) as u32;
        let mut s = parity;
        while s <= bound_next {
            for &sigma in &graph.by_size[s as usize] {
                let slot = &mut next[sigma];
                slot.set_zero();
                for &tau in &graph.neighbours[sigma] {
                    if graph.sizes[tau] <= bound_cur {
                        *slot += &cur[tau];
                    }
                }
            }
            s += 2;
        }
        out.push(next[graph.empty].clone());
        std::mem::swap(&mut cur, &mut next);
    }
    out
}

type SequenceCache = Mutex<HashMap<usize, Arc<Vec<BigUint>>>>;

fn perfect_cache() -> &'static SequenceCache {
    static CACHE: OnceLock<SequenceCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `f_k(t, 0)` for all `t <= n_max`, shared through a per-`k` cache.
///
/// The cache only ever grows a sequence; every prefix is identical across
/// calls.
pub fn perfect_matching_counts(k: usize, n_max: usize) -> Result<Arc<Vec<BigUint>>> {
    if k < 2 {
        return Err(invalid(format!("k must be at least 2, got {k}")));
    }
    let mut cache = perfect_cache().lock().unwrap_or_else(|e| e.into_inner());
    if let Some(seq) = cache.get(&k) {
        if seq.len() > n_max {
            return Ok(Arc::clone(seq));
        }
    }
    let target = n_max + (n_max % 2);
    let seq = Arc::new(walk_counts(k, target));
    cache.insert(k, Arc::clone(&seq));
    Ok(seq)
}

/// `binom(n, r)` by the multiplicative formula.
pub fn binomial(n: u64, r: u64) -> BigUint {
    if r > n {
        return BigUint::zero();
    }
    let r = r.min(n - r);
    let mut acc = BigUint::one();
    for i in 0..r {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// The `m`-th Catalan number `binom(2m, m) / (m + 1)`.
pub fn catalan(m: u64) -> Count {
    Count::from(binomial(2 * m, m) / (m + 1))
}

/// Number of `k`-noncrossing perfect matchings on `[n]`.
pub fn fk_perfect(k: usize, n: usize) -> Result<Count> {
    if k < 2 {
        return Err(invalid(format!("k must be at least 2, got {k}")));
    }
    if n % 2 == 1 {
        return Ok(Count::zero());
    }
    let seq = perfect_matching_counts(k, n)?;
    Ok(Count::from(seq[n].clone()))
}

/// `C_{m+2} C_m - C_{m+1}^2` with `m = n / 2`: the 3-noncrossing case in
/// closed form.
pub fn fk_closed_form_k3(n: usize) -> Result<Count> {
    if n % 2 == 1 {
        return Err(invalid(format!("closed form needs even n, got {n}")));
    }
    let m = (n / 2) as u64;
    let a = catalan(m + 2).into_inner() * catalan(m).into_inner();
    let b = catalan(m + 1).into_inner().pow(2);
    Ok(Count::from(a - b))
}

/// Number of `k`-noncrossing partial matchings on `[n]` with `ell`
/// isolated vertices: `binom(n, ell) f_k(n - ell, 0)`.
pub fn fk_partial(k: usize, n: usize, ell: usize) -> Result<Count> {
    if ell > n {
        return Err(invalid(format!("ell = {ell} exceeds n = {n}")));
    }
    let f = fk_perfect(k, n - ell)?;
    Ok(Count::from(binomial(n as u64, ell as u64) * f.into_inner()))
}

/// Total number of `k`-noncrossing partial matchings on `[n]`.
pub fn tk_total(k: usize, n: usize) -> Result<Count> {
    let seq = partial_matching_totals(k, n)?;
    Ok(Count::from(seq[n].clone()))
}

/// `T_k(n)` for all `n <= n_max`.
pub fn partial_matching_totals(k: usize, n_max: usize) -> Result<Vec<BigUint>> {
    let f = perfect_matching_counts(k, n_max)?;
    let mut out = Vec::with_capacity(n_max + 1);
    let mut row = vec![BigUint::one()];
    for n in 0..=n_max {
        if n > 0 {
            let mut next = Vec::with_capacity(n + 1);
            next.push(BigUint::one());
            for j in 1..n {
                next.push(&row[j - 1] + &row[j]);
            }
            next.push(BigUint::one());
            row = next;
        }
        let total = (0..=n)
            .step_by(2)
            .fold(BigUint::zero(), |acc, m| acc + &row[m] * &f[m]);
        out.push(total);
    }
    Ok(out)
}
