//! Marked-partition dynamic programs.
//!
//! Every block of a marked partition is flagged open or closed. Open blocks
//! are those that will still receive larger elements, which lets the
//! dimension and intertwining exponents be accumulated one element at a
//! time. Layer `n` of a table holds `f(n; A, B)`: the number of marked
//! partitions of `[n]` with `A` open blocks and marked weight `B`. The
//! `A = 0` slice is the distribution of the unmarked statistic.

use num_traits::{One, Zero};

use crate::exactnum::{binomial, Integer};
use crate::partitions::MarkedSetPartition;

/// One layer of `f(n; A, B)`: `rows[A][B]`, dense in `B`, trailing zeros
/// trimmed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistLayer {
    n: usize,
    rows: Vec<Vec<Integer>>,
}

impl DistLayer {
    fn initial() -> Self {
        DistLayer {
            n: 0,
            rows: vec![vec![Integer::one()]],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Largest `A` with a row (possibly empty).
    pub fn max_open(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn row(&self, a: usize) -> &[Integer] {
        self.rows.get(a).map_or(&[], |r| r.as_slice())
    }

    pub fn get(&self, a: usize, b: usize) -> Integer {
        self.row(a).get(b).cloned().unwrap_or_else(Integer::zero)
    }

    /// Nonzero cells `(A, B, count)` in row-major order.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize, &Integer)> {
        self.rows.iter().enumerate().flat_map(|(a, row)| {
            row.iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(move |(b, v)| (a, b, v))
        })
    }

    pub fn total(&self) -> Integer {
        self.rows.iter().flatten().sum()
    }

    /// The `A = 0` slice: index `B` holds the number of unmarked partitions
    /// with statistic value `B`.
    pub fn distribution(&self) -> Vec<Integer> {
        self.row(0).to_vec()
    }
}

fn trimmed(mut row: Vec<Integer>) -> Vec<Integer> {
    while row.last().is_some_and(|v| v.is_zero()) {
        row.pop();
    }
    row
}

fn add_at(row: &mut Vec<Integer>, b: usize, v: Integer) {
    if row.len() <= b {
        row.resize(b + 1, Integer::zero());
    }
    row[b] += v;
}

/// Layer-by-layer builder for the dimension table.
///
/// `f(n; A, B) = f(n-1; A-1, B-A+1) + f(n-1; A, B-A)
///             + A f(n-1; A, B-A+1) + (A+1) f(n-1; A+1, B-A)`,
/// the four terms being: `n` opens a new block, `n` is a closed singleton,
/// `n` joins an open block that stays open, `n` joins and closes one.
#[derive(Debug, Clone)]
pub struct DimensionLayers {
    current: DistLayer,
}

impl Default for DimensionLayers {
    fn default() -> Self {
        Self::new()
    }
}

impl DimensionLayers {
    pub fn new() -> Self {
        DimensionLayers {
            current: DistLayer::initial(),
        }
    }

    pub fn current(&self) -> &DistLayer {
        &self.current
    }

    pub fn advance(&mut self) -> &DistLayer {
        let old = &self.current;
        let n = old.n + 1;
        let mut rows: Vec<Vec<Integer>> = vec![Vec::new(); n + 1];
        for (a, row) in old.rows.iter().enumerate() {
            for (b, v) in row.iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                // B = b + A - 1 with A = a + 1
                add_at(&mut rows[a + 1], b + a, v.clone());
                // B = b + A with A = a
                add_at(&mut rows[a], b + a, v.clone());
                if a > 0 {
                    let w = v * a;
                    // B = b + A - 1 with A = a
                    add_at(&mut rows[a], b + a - 1, w.clone());
                    // B = b + A with A = a - 1
                    add_at(&mut rows[a - 1], b + a - 1, w);
                }
            }
        }
        let rows = rows.into_iter().map(trimmed).collect();
        self.current = DistLayer { n, rows };
        &self.current
    }

    pub fn advance_to(&mut self, n: usize) -> &DistLayer {
        while self.current.n < n {
            self.advance();
        }
        &self.current
    }
}

/// Layer-by-layer builder for the intertwining table.
///
/// `f(n+1, A, B) = f(n, A, B) + f(n, A-1, B)
///               + sum_{j=0}^{A} f(n, A+1, B-j) + sum_{j=0}^{A-1} f(n, A, B-j)`.
#[derive(Debug, Clone)]
pub struct IntertwiningLayers {
    current: DistLayer,
}

impl Default for IntertwiningLayers {
    fn default() -> Self {
        Self::new()
    }
}

/// `sum_{j=0}^{width-1} row[b - j]`, terms with negative index dropped,
/// for every `b`, via a sliding window.
fn window_sums(row: &[Integer], width: usize, len: usize) -> Vec<Integer> {
    let mut out = Vec::with_capacity(len);
    let mut acc = Integer::zero();
    for b in 0..len {
        if let Some(v) = row.get(b) {
            acc += v;
        }
        if b >= width {
            if let Some(v) = row.get(b - width) {
                acc -= v;
            }
        }
        out.push(acc.clone());
    }
    out
}

impl IntertwiningLayers {
    pub fn new() -> Self {
        IntertwiningLayers {
            current: DistLayer::initial(),
        }
    }

    pub fn current(&self) -> &DistLayer {
        &self.current
    }

    pub fn advance(&mut self) -> &DistLayer {
        let old = &self.current;
        let n = old.n + 1;
        let mut rows = Vec::with_capacity(n + 1);
        for a in 0..=n {
            let here = old.row(a);
            let below = if a > 0 { old.row(a - 1) } else { &[] };
            let above = old.row(a + 1);
            let len = here
                .len()
                .max(below.len())
                .max(if above.is_empty() { 0 } else { above.len() + a })
                .max(if here.is_empty() || a == 0 {
                    0
                } else {
                    here.len() + a - 1
                });
            let mut row: Vec<Integer> = vec![Integer::zero(); len];
            for (b, v) in here.iter().enumerate() {
                row[b] += v;
            }
            for (b, v) in below.iter().enumerate() {
                row[b] += v;
            }
            if !above.is_empty() {
                for (b, v) in window_sums(above, a + 1, len).into_iter().enumerate() {
                    row[b] += v;
                }
            }
            if a > 0 && !here.is_empty() {
                for (b, v) in window_sums(here, a, len).into_iter().enumerate() {
                    row[b] += v;
                }
            }
            rows.push(trimmed(row));
        }
        self.current = DistLayer { n, rows };
        &self.current
    }

    pub fn advance_to(&mut self, n: usize) -> &DistLayer {
        while self.current.n < n {
            self.advance();
        }
        &self.current
    }
}

pub fn dim_table(n: usize) -> DistLayer {
    DimensionLayers::new().advance_to(n).clone()
}

/// Number of partitions of `[n]` with dimension exponent `B`, indexed by `B`.
pub fn dim_distribution(n: usize) -> Vec<Integer> {
    DimensionLayers::new().advance_to(n).distribution()
}

pub fn int_table(n: usize) -> DistLayer {
    IntertwiningLayers::new().advance_to(n).clone()
}

/// Number of partitions of `[n]` with intertwining exponent `B`, indexed by `B`.
pub fn int_distribution(n: usize) -> Vec<Integer> {
    IntertwiningLayers::new().advance_to(n).distribution()
}

/// `sum_B B^k count[B]` for `k = 0..=kmax`.
pub fn moments_of_distribution(dist: &[Integer], kmax: usize) -> Vec<Integer> {
    (0..=kmax)
        .map(|k| {
            dist.iter()
                .enumerate()
                .map(|(b, c)| Integer::from(b).pow(k as u32) * c)
                .sum()
        })
        .collect()
}

/// `M_k(n, A)` for all `k <= kmax` and `A <= n`: sums of the `k`-th power
/// of the marked weight over marked partitions with `A` open blocks.
#[derive(Debug, Clone)]
pub struct MomentLayer {
    n: usize,
    /// values[A][k]
    values: Vec<Vec<Integer>>,
}

impl MomentLayer {
    fn initial(kmax: usize) -> Self {
        let mut base = vec![Integer::zero(); kmax + 1];
        base[0] = Integer::one();
        MomentLayer {
            n: 0,
            values: vec![base],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kmax(&self) -> usize {
        self.values[0].len() - 1
    }

    pub fn get(&self, k: usize, a: usize) -> Integer {
        self.values
            .get(a)
            .map_or_else(Integer::zero, |v| v[k].clone())
    }

    /// The unmarked moments `M(f^k; n)`, `k = 0..=kmax`.
    pub fn unmarked(&self) -> Vec<Integer> {
        self.values[0].clone()
    }
}

fn binomial_rows(kmax: usize) -> Vec<Vec<Integer>> {
    (0..=kmax)
        .map(|k| (0..=k).map(|j| binomial(k as u64, j as u64)).collect())
        .collect()
}

/// `sum_j C(k, j) s^{k-j} m[j]` for each `k`: the moments after adding `s`
/// to every weight.
fn shifted(m: &[Integer], s: &Integer, binom: &[Vec<Integer>]) -> Vec<Integer> {
    let kmax = m.len() - 1;
    let powers: Vec<Integer> = (0..=kmax).map(|e| s.pow(e as u32)).collect();
    (0..=kmax)
        .map(|k| (0..=k).map(|j| &binom[k][j] * &powers[k - j] * &m[j]).sum())
        .collect()
}

/// Moment recursion for the dimension exponent.
///
/// `M_k(n, A) = sum_j C(k,j) (A-1)^{k-j} M_j(n-1, A-1) + sum_j C(k,j) A^{k-j} M_j(n-1, A)
///            + A sum_j C(k,j) (A-1)^{k-j} M_j(n-1, A)
///            + (A+1) sum_j C(k,j) A^{k-j} M_j(n-1, A+1)`.
#[derive(Debug, Clone)]
pub struct DimensionMoments {
    current: MomentLayer,
    binom: Vec<Vec<Integer>>,
}

impl DimensionMoments {
    pub fn new(kmax: usize) -> Self {
        DimensionMoments {
            current: MomentLayer::initial(kmax),
            binom: binomial_rows(kmax),
        }
    }

    pub fn current(&self) -> &MomentLayer {
        &self.current
    }

    pub fn advance(&mut self) -> &MomentLayer {
        let old = &self.current;
        let kmax = old.kmax();
        let n = old.n + 1;
        let zero = vec![Integer::zero(); kmax + 1];
        let at = |a: usize| old.values.get(a).unwrap_or(&zero);
        let mut values = Vec::with_capacity(n + 1);
        for a in 0..=n {
            let big_a = Integer::from(a);
            let a_minus_1 = Integer::from(a as i64 - 1);
            let mut acc = zero.clone();
            if a > 0 {
                for (k, v) in shifted(at(a - 1), &a_minus_1, &self.binom)
                    .into_iter()
                    .enumerate()
                {
                    acc[k] += v;
                }
            }
            for (k, v) in shifted(at(a), &big_a, &self.binom).into_iter().enumerate() {
                acc[k] += v;
            }
            if a > 0 {
                for (k, v) in shifted(at(a), &a_minus_1, &self.binom)
                    .into_iter()
                    .enumerate()
                {
                    acc[k] += &big_a * v;
                }
            }
            let a_plus_1 = Integer::from(a + 1);
            for (k, v) in shifted(at(a + 1), &big_a, &self.binom)
                .into_iter()
                .enumerate()
            {
                acc[k] += &a_plus_1 * v;
            }
            values.push(acc);
        }
        self.current = MomentLayer { n, values };
        &self.current
    }

    pub fn advance_to(&mut self, n: usize) -> &MomentLayer {
        while self.current.n < n {
            self.advance();
        }
        &self.current
    }
}

/// Moment recursion for the intertwining exponent, obtained by taking
/// `sum_B B^k` of the intertwining table recursion:
///
/// `M_k(n+1, A) = M_k(n, A) + M_k(n, A-1)
///              + sum_t C(k,t) S_{k-t}(A) M_t(n, A+1)
///              + sum_t C(k,t) S_{k-t}(A-1) M_t(n, A)`
///
/// where `S_p(A) = sum_{j=0}^{A} j^p`.
#[derive(Debug, Clone)]
pub struct IntertwiningMoments {
    current: MomentLayer,
    binom: Vec<Vec<Integer>>,
}

fn power_sums(upto: usize, kmax: usize) -> Vec<Integer> {
    // S_p(upto) for p = 0..=kmax, with 0^0 = 1
    (0..=kmax)
        .map(|p| (0..=upto).map(|j| Integer::from(j).pow(p as u32)).sum())
        .collect()
}

impl IntertwiningMoments {
    pub fn new(kmax: usize) -> Self {
        IntertwiningMoments {
            current: MomentLayer::initial(kmax),
            binom: binomial_rows(kmax),
        }
    }

    pub fn current(&self) -> &MomentLayer {
        &self.current
    }

    pub fn advance(&mut self) -> &MomentLayer {
        let old = &self.current;
        let kmax = old.kmax();
        let n = old.n + 1;
        let zero = vec![Integer::zero(); kmax + 1];
        let at = |a: usize| old.values.get(a).unwrap_or(&zero);
        let spread = |m: &[Integer], sums: &[Integer]| -> Vec<Integer> {
            (0..=kmax)
                .map(|k| {
                    (0..=k)
                        .map(|t| &self.binom[k][t] * &sums[k - t] * &m[t])
                        .sum()
                })
                .collect()
        };
        let mut values = Vec::with_capacity(n + 1);
        for a in 0..=n {
            let mut acc = at(a).clone();
            if a > 0 {
                for (k, v) in at(a - 1).iter().enumerate() {
                    acc[k] += v;
                }
            }
            for (k, v) in spread(at(a + 1), &power_sums(a, kmax))
                .into_iter()
                .enumerate()
            {
                acc[k] += v;
            }
            if a > 0 {
                for (k, v) in spread(at(a), &power_sums(a - 1, kmax))
                    .into_iter()
                    .enumerate()
                {
                    acc[k] += v;
                }
            }
            values.push(acc);
        }
        self.current = MomentLayer { n, values };
        &self.current
    }

    pub fn advance_to(&mut self, n: usize) -> &MomentLayer {
        while self.current.n < n {
            self.advance();
        }
        &self.current
    }
}

/// `M(d^k; n)` for `k = 0..=kmax`, via the moment recursion.
pub fn dim_moments(kmax: usize, n: usize) -> Vec<Integer> {
    DimensionMoments::new(kmax).advance_to(n).unmarked()
}

/// `M(i^k; n)` for `k = 0..=kmax`, via the intertwining moment recursion.
pub fn int_moments(kmax: usize, n: usize) -> Vec<Integer> {
    IntertwiningMoments::new(kmax).advance_to(n).unmarked()
}

/// `series[n][k] = M(d^k; n)` for all `n <= nmax`.
pub fn dim_moment_series(kmax: usize, nmax: usize) -> Vec<Vec<Integer>> {
    let mut rec = DimensionMoments::new(kmax);
    let mut out = vec![rec.current().unmarked()];
    for _ in 0..nmax {
        out.push(rec.advance().unmarked());
    }
    out
}

/// `series[n][k] = M(i^k; n)` for all `n <= nmax`.
pub fn int_moment_series(kmax: usize, nmax: usize) -> Vec<Vec<Integer>> {
    let mut rec = IntertwiningMoments::new(kmax);
    let mut out = vec![rec.current().unmarked()];
    for _ in 0..nmax {
        out.push(rec.advance().unmarked());
    }
    out
}

/// Marked dimension: closed-block maxima minus all minima plus the block
/// count plus `n (o - 1)`. Equals the dimension exponent when no block is
/// open.
pub fn marked_dimension(mu: &MarkedSetPartition) -> i64 {
    let n = mu.base.n() as i64;
    let ext = mu.base.block_extrema();
    let closed_max: i64 = ext
        .maxes
        .iter()
        .zip(&mu.open)
        .filter(|(_, &open)| !open)
        .map(|(&m, _)| m as i64)
        .sum();
    let mins: i64 = ext.mins.iter().map(|&m| m as i64).sum();
    let l = ext.mins.len() as i64;
    closed_max - mins + l + n * (mu.open_count() as i64 - 1)
}

fn crossing_pairs(
    arcs: &[(usize, usize)],
) -> impl Iterator<Item = ((usize, usize), (usize, usize))> + '_ {
    arcs.iter().flat_map(move |&p| {
        arcs.iter()
            .filter(move |&&q| p.0 < q.0 && q.0 < p.1 && p.1 < q.1)
            .map(move |&q| (p, q))
    })
}

/// Marked intertwining weight consistent with the intertwining recursion:
/// crossing pairs of arcs, plus pairs (arc `i -> j`, open block) where the
/// open block's current maximum lies strictly between `i` and `j`. The
/// maximum of an open block is the left end of an arc still to come, so
/// each such pair is a crossing counted ahead of time.
pub fn marked_intertwining(mu: &MarkedSetPartition) -> u64 {
    let arcs = mu.base.arcs();
    let ext = mu.base.block_extrema();
    let crossings = crossing_pairs(&arcs).count() as u64;
    let pending = arcs
        .iter()
        .map(|&(i, j)| {
            ext.maxes
                .iter()
                .zip(&mu.open)
                .filter(|(&m, &open)| open && i < m && m < j)
                .count() as u64
        })
        .sum::<u64>();
    crossings + pending
}

/// An alternative marked weight: interlaced arc pairs whose second arc lies
/// in a closed block, plus triples `i < k < j` with `i -> j` an arc and `k`
/// any element of an open block. It does not satisfy the intertwining
/// recursion and is kept for comparison only.
pub fn marked_intertwining_literal(mu: &MarkedSetPartition) -> u64 {
    let arcs = mu.base.arcs();
    let open_of = |x: usize| mu.open[mu.base.block_of(x)];
    let crossings = crossing_pairs(&arcs).filter(|(_, q)| !open_of(q.0)).count() as u64;
    let triples = arcs
        .iter()
        .map(|&(i, j)| (i + 1..j).filter(|&k| open_of(k)).count() as u64)
        .sum::<u64>();
    crossings + triples
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{bell, catalan};
    use crate::partitions::{enumerate, marked_enumerate, SetPartition};
    use std::collections::BTreeMap;

    fn ints(v: &[i64]) -> Vec<Integer> {
        v.iter().map(|&x| Integer::from(x)).collect()
    }

    fn marked_histogram(
        n: usize,
        weight: impl Fn(&MarkedSetPartition) -> i64,
    ) -> BTreeMap<(usize, i64), Integer> {
        let mut h = BTreeMap::new();
        for mu in marked_enumerate(n) {
            *h.entry((mu.open_count(), weight(&mu)))
                .or_insert_with(Integer::zero) += 1;
        }
        h
    }

    fn layer_map(layer: &DistLayer) -> BTreeMap<(usize, i64), Integer> {
        layer
            .cells()
            .map(|(a, b, v)| ((a, b as i64), v.clone()))
            .collect()
    }

    #[test]
    fn marked_dimension_examples() {
        let lambda: SetPartition = "1356|27|4".parse().unwrap();
        let mu = MarkedSetPartition::new(lambda, vec![false; 3]).unwrap();
        assert_eq!(marked_dimension(&mu), 6);
        let one: SetPartition = "1".parse().unwrap();
        let open = MarkedSetPartition::new(one.clone(), vec![true]).unwrap();
        assert_eq!(marked_dimension(&open), 0);
        let closed = MarkedSetPartition::new(one, vec![false]).unwrap();
        assert_eq!(marked_dimension(&closed), 0);
    }

    #[test]
    fn dimension_table_matches_marked_oracle() {
        let mut layers = DimensionLayers::new();
        for n in 0..=7 {
            let layer = layers.advance_to(n);
            assert_eq!(
                layer_map(layer),
                marked_histogram(n, marked_dimension),
                "n={n}"
            );
        }
    }

    #[test]
    fn intertwining_table_matches_marked_oracle() {
        let mut layers = IntertwiningLayers::new();
        for n in 0..=7 {
            let layer = layers.advance_to(n);
            let oracle = marked_histogram(n, |mu| marked_intertwining(mu) as i64);
            assert_eq!(layer_map(layer), oracle, "n={n}");
        }
    }

    #[test]
    fn literal_intertwining_reading_disagrees() {
        let layer = int_table(4);
        let literal = marked_histogram(4, |mu| marked_intertwining_literal(mu) as i64);
        assert_ne!(layer_map(&layer), literal);
        // The readings agree once every block is closed.
        for lambda in enumerate(7) {
            let l = lambda.block_count();
            let mu = MarkedSetPartition::new(lambda, vec![false; l]).unwrap();
            assert_eq!(marked_intertwining(&mu), marked_intertwining_literal(&mu));
        }
    }

    #[test]
    fn dimension_rows() {
        assert_eq!(dim_distribution(1), ints(&[1]));
        assert_eq!(dim_distribution(3), ints(&[4, 1]));
        assert_eq!(dim_distribution(4), ints(&[8, 4, 3]));
        assert_eq!(dim_distribution(5), ints(&[16, 12, 13, 9, 2]));
        assert_eq!(dim_table(8).get(0, 12), Integer::from(30));
    }

    #[test]
    fn intertwining_rows() {
        assert_eq!(int_distribution(2), ints(&[2]));
        assert_eq!(int_distribution(6), ints(&[132, 55, 14, 2]));
        assert_eq!(
            int_distribution(8),
            ints(&[1430, 1365, 819, 364, 119, 35, 7, 1])
        );
    }

    #[test]
    fn totals() {
        let mut dim = DimensionLayers::new();
        let mut int = IntertwiningLayers::new();
        for n in 1..=25 {
            let d = dim.advance_to(n);
            let i = int.advance_to(n);
            assert_eq!(d.distribution().iter().sum::<Integer>(), bell(n));
            assert_eq!(i.distribution().iter().sum::<Integer>(), bell(n));
            assert_eq!(d.total(), i.total());
            assert_eq!(d.get(0, 0), Integer::from(2).pow(n as u32 - 1));
            assert_eq!(i.get(0, 0), catalan(n as u64));
        }
    }

    #[test]
    fn layer_total_counts_all_markings() {
        use crate::exactnum::stirling2;
        for n in 0..=15usize {
            let expect: Integer = (0..=n)
                .map(|k| stirling2(n, k) * Integer::from(2).pow(k as u32))
                .sum();
            assert_eq!(dim_table(n).total(), expect);
            assert_eq!(int_table(n).total(), expect);
        }
    }

    #[test]
    fn moment_recursions_match_distributions() {
        let mut dm = DimensionMoments::new(4);
        let mut im = IntertwiningMoments::new(4);
        for n in 0..=30 {
            let dmom = dm.advance_to(n).unmarked();
            let imom = im.advance_to(n).unmarked();
            assert_eq!(
                dmom,
                moments_of_distribution(&dim_distribution(n), 4),
                "dim n={n}"
            );
            assert_eq!(
                imom,
                moments_of_distribution(&int_distribution(n), 4),
                "int n={n}"
            );
        }
    }

    #[test]
    fn marked_moments_match_marked_table() {
        let layer = dim_table(9);
        let moments = DimensionMoments::new(3).advance_to(9).clone();
        for a in 0..=9 {
            let row = layer.row(a);
            for k in 0..=3 {
                let expect: Integer = row
                    .iter()
                    .enumerate()
                    .map(|(b, c)| Integer::from(b).pow(k as u32) * c)
                    .sum();
                assert_eq!(moments.get(k, a), expect);
            }
        }
    }

    #[test]
    fn moment_examples() {
        assert_eq!(dim_moments(1, 3)[1], Integer::from(1));
        assert_eq!(dim_moments(1, 4)[1], Integer::from(10));
        assert_eq!(dim_moments(2, 3)[2], Integer::from(1));
        assert_eq!(dim_moments(0, 7)[0], bell(7));
        let series = int_moment_series(2, 10);
        assert_eq!(series.len(), 11);
        assert_eq!(series[10], int_moments(2, 10));
    }
}
