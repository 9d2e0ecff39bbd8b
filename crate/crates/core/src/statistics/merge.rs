//! Pattern merges: the product of two simple statistics as a sum of
//! simple statistics on merged patterns.

use std::collections::BTreeMap;

use crate::exactnum::Rational;
use crate::partitions::{enumerate, SetPartition};

use super::{Pattern, SimpleStatistic, Statistic, WeightPolynomial};

/// A merge `m1, m2 : P1, P2 -> P3`. Index maps are 1-indexed and strictly
/// increasing; together they cover `[k3]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Merge {
    pub m1: Vec<usize>,
    pub m2: Vec<usize>,
    pub pattern: Pattern,
}

/// Label sequences over {only-1, only-2, both} of the given composition.
fn label_sequences(only1: usize, only2: usize, both: usize) -> Vec<Vec<u8>> {
    fn rec(a: usize, b: usize, c: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if a + b + c == 0 {
            out.push(cur.clone());
            return;
        }
        for (label, left) in [(1u8, a), (2, b), (3, c)] {
            if left == 0 {
                continue;
            }
            cur.push(label);
            match label {
                1 => rec(a - 1, b, c, cur, out),
                2 => rec(a, b - 1, c, cur, out),
                _ => rec(a, b, c - 1, cur, out),
            }
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(only1, only2, both, &mut Vec::new(), &mut out);
    out
}

fn pulls_back(target: &SetPartition, map: &[usize], source: &SetPartition) -> bool {
    (0..map.len()).all(|i| {
        (i + 1..map.len()).all(|j| {
            (target.block_of(map[i]) == target.block_of(map[j]))
                == (source.block_of(i + 1) == source.block_of(j + 1))
        })
    })
}

fn image<T: Copy>(items: &[T], f: impl Fn(T) -> T) -> Vec<T> {
    items.iter().map(|&x| f(x)).collect()
}

/// Every merge of `p1` and `p2`, including those whose merged pattern can
/// never occur.
pub fn merges(p1: &Pattern, p2: &Pattern) -> Vec<Merge> {
    let (k1, k2) = (p1.len(), p2.len());
    let mut out = Vec::new();
    for k3 in k1.max(k2)..=k1 + k2 {
        let both = k1 + k2 - k3;
        let equivs: Vec<SetPartition> = enumerate(k3).collect();
        for labels in label_sequences(k1 - both, k2 - both, both) {
            let m1: Vec<usize> = (1..=k3).filter(|&i| labels[i - 1] != 2).collect();
            let m2: Vec<usize> = (1..=k3).filter(|&i| labels[i - 1] != 1).collect();
            for eq in &equivs {
                if !pulls_back(eq, &m1, p1.equiv()) || !pulls_back(eq, &m2, p2.equiv()) {
                    continue;
                }
                let f1 = |i: usize| m1[i - 1];
                let f2 = |i: usize| m2[i - 1];
                let pair1 = |(a, b): (usize, usize)| (m1[a - 1], m1[b - 1]);
                let pair2 = |(a, b): (usize, usize)| (m2[a - 1], m2[b - 1]);
                let mut firsts = image(p1.firsts(), f1);
                firsts.extend(image(p2.firsts(), f2));
                let mut lasts = image(p1.lasts(), f1);
                lasts.extend(image(p2.lasts(), f2));
                let mut arcs = image(p1.arcs(), pair1);
                arcs.extend(image(p2.arcs(), pair2));
                let mut consecutive = image(p1.consecutive(), pair1);
                consecutive.extend(image(p2.consecutive(), pair2));
                let pattern = Pattern::new(eq.clone(), firsts, lasts, arcs, consecutive)
                    .expect("merged pattern preserves index ranges and arc equivalences");
                out.push(Merge {
                    m1: m1.clone(),
                    m2: m2.clone(),
                    pattern,
                });
            }
        }
    }
    out
}

/// A statistic equal pointwise to `f1 * f2`.
///
/// Weights are transported along the merge maps
/// (`y_i -> y_{m1(i)}` in `Q1`, `y_i -> y_{m2(i)}` in `Q2`) and summed per
/// merged pattern.
pub fn merge_product(f1: &SimpleStatistic, f2: &SimpleStatistic) -> Statistic {
    let mut by_pattern: BTreeMap<Pattern, WeightPolynomial> = BTreeMap::new();
    for m in merges(f1.pattern(), f2.pattern()) {
        let q1 = f1.weight().rename(|i| m.m1[i - 1]);
        let q2 = f2.weight().rename(|i| m.m2[i - 1]);
        let q = q1.mul(&q2);
        let slot = by_pattern
            .entry(m.pattern)
            .or_insert_with(WeightPolynomial::zero);
        *slot = slot.add(&q);
    }
    Statistic::from_terms(
        by_pattern
            .into_iter()
            .filter(|(_, q)| !q.is_zero())
            .map(|(p, q)| {
                let s = SimpleStatistic::new(p, q).expect("weight indices stay within the merge");
                (Rational::from_integer(1.into()), s)
            }),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{bell, Integer};
    use crate::partitions::enumerate;
    use crate::statistics::builtin;

    fn single(s: &Statistic) -> SimpleStatistic {
        assert_eq!(s.terms().len(), 1);
        s.terms()[0].1.clone()
    }

    #[test]
    fn singleton_square_has_five_merges() {
        let x1 = single(&builtin("blocks_of_size", Some(1)).unwrap());
        assert_eq!(merges(x1.pattern(), x1.pattern()).len(), 5);
        let sq = merge_product(&x1, &x1);
        let lambda: SetPartition = "1|2|3".parse().unwrap();
        assert_eq!(sq.eval(&lambda), Rational::from_integer(9.into()));
        let n = 3;
        let expected = Integer::from(n) * bell(n - 1) + Integer::from(n * (n - 1)) * bell(n - 2);
        assert_eq!(sq.aggregate(n), Rational::from_integer(expected));
    }

    #[test]
    fn label_sequence_counts() {
        // multinomial(k3; only1, only2, both)
        assert_eq!(label_sequences(1, 1, 0).len(), 2);
        assert_eq!(label_sequences(2, 1, 1).len(), 12);
        assert_eq!(label_sequences(0, 0, 3).len(), 1);
    }

    #[test]
    fn product_with_weights() {
        let firsts = single(&builtin("firsts_sum", None).unwrap());
        let lasts = single(&builtin("lasts_sum", None).unwrap());
        let prod = merge_product(&firsts, &lasts);
        for n in 0..=6 {
            for lambda in enumerate(n) {
                assert_eq!(
                    prod.eval(&lambda),
                    firsts.eval(&lambda) * lasts.eval(&lambda)
                );
            }
        }
        assert!(prod.degree() <= firsts.degree() + lasts.degree());
    }
}
