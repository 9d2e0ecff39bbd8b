//! Pattern-defined statistics on set partitions.
//!
//! A simple statistic pairs a [`Pattern`] with a [`WeightPolynomial`] `Q`
//! and sums `Q(x_1, .., x_k, n)` over all occurrences of the pattern. A
//! [`Statistic`] is a finite rational linear combination of simple ones;
//! products are realised through pattern merges (see [`merge_product`]).

mod builtin;
mod dsl;
mod merge;
mod pattern;
mod weight;

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rayon::prelude::*;

pub use builtin::{builtin, Builtin};
pub use dsl::{parse_pattern_document, PatternDocument};
pub use merge::{merge_product, merges, Merge};
pub use pattern::{PartitionView, Pattern};
pub use weight::WeightPolynomial;

use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::partitions::{rgs_prefixes, RgsEnumerator, SetPartition};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleStatistic {
    pattern: Pattern,
    q: WeightPolynomial,
}

impl SimpleStatistic {
    pub fn new(pattern: Pattern, q: WeightPolynomial) -> Result<Self> {
        if q.max_y_index() > pattern.len() {
            return Err(Error::InvalidPattern(format!(
                "weight uses y{} but the pattern has length {}",
                q.max_y_index(),
                pattern.len()
            )));
        }
        Ok(SimpleStatistic { pattern, q })
    }

    /// Counting statistic: `Q = 1`.
    pub fn counting(pattern: Pattern) -> Self {
        SimpleStatistic {
            pattern,
            q: WeightPolynomial::one(),
        }
    }

    pub fn pattern(&self) -> &Pattern {
        &self.pattern
    }

    pub fn weight(&self) -> &WeightPolynomial {
        &self.q
    }

    /// Pattern length plus total degree of the weight.
    pub fn degree(&self) -> u32 {
        self.pattern.len() as u32 + self.q.total_degree()
    }

    pub fn eval(&self, lambda: &SetPartition) -> Rational {
        self.eval_view(&PartitionView::new(lambda))
    }

    pub fn eval_view(&self, view: &PartitionView) -> Rational {
        if self.q.is_zero() {
            return Rational::zero();
        }
        if self.q.is_constant() {
            let mut count = 0u64;
            self.pattern.for_each_occurrence(view, |_| count += 1);
            return self.q.eval(view.n, &[]) * Rational::from_integer(count.into());
        }
        let mut acc = Rational::zero();
        self.pattern
            .for_each_occurrence(view, |s| acc += self.q.eval(view.n, s));
        acc
    }
}

/// A finite rational linear combination of simple statistics.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Statistic {
    terms: Vec<(Rational, SimpleStatistic)>,
}

impl From<SimpleStatistic> for Statistic {
    fn from(s: SimpleStatistic) -> Self {
        Statistic {
            terms: vec![(Rational::one(), s)],
        }
    }
}

impl Statistic {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Builds a statistic, merging identical simple statistics and dropping
    /// zero coefficients.
    pub fn from_terms(terms: impl IntoIterator<Item = (Rational, SimpleStatistic)>) -> Self {
        let mut merged: BTreeMap<SimpleStatistic, Rational> = BTreeMap::new();
        for (c, s) in terms {
            *merged.entry(s).or_insert_with(Rational::zero) += c;
        }
        Statistic {
            terms: merged
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(s, c)| (c, s))
                .collect(),
        }
    }

    pub fn terms(&self) -> &[(Rational, SimpleStatistic)] {
        &self.terms
    }

    pub fn add(&self, other: &Statistic) -> Statistic {
        Statistic::from_terms(self.terms.iter().chain(&other.terms).cloned())
    }

    pub fn scale(&self, c: &Rational) -> Statistic {
        Statistic::from_terms(self.terms.iter().map(|(a, s)| (a * c, s.clone())))
    }

    pub fn sub(&self, other: &Statistic) -> Statistic {
        self.add(&other.scale(&-Rational::one()))
    }

    /// Pointwise product, expanded bilinearly through pattern merges.
    pub fn mul(&self, other: &Statistic) -> Statistic {
        let mut terms = Vec::new();
        for (a, s) in &self.terms {
            for (b, t) in &other.terms {
                let c = a * b;
                for (d, u) in merge_product(s, t).terms {
                    terms.push((&c * d, u));
                }
            }
        }
        Statistic::from_terms(terms)
    }

    pub fn pow(&self, e: u32) -> Statistic {
        let mut out = Statistic::from(SimpleStatistic::counting(Pattern::free(0)));
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Maximum degree over the terms of this representation.
    pub fn degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|(_, s)| s.degree())
            .max()
            .unwrap_or(0)
    }

    /// Longest pattern among the terms.
    pub fn max_pattern_len(&self) -> usize {
        self.terms
            .iter()
            .map(|(_, s)| s.pattern().len())
            .max()
            .unwrap_or(0)
    }

    pub fn eval(&self, lambda: &SetPartition) -> Rational {
        self.eval_view(&PartitionView::new(lambda))
    }

    pub fn eval_view(&self, view: &PartitionView) -> Rational {
        self.terms.iter().map(|(c, s)| c * s.eval_view(view)).sum()
    }

    /// `M(f; n)`: the exact sum of `f` over every partition of `[n]`.
    pub fn aggregate(&self, n: usize) -> Rational {
        par_fold(
            n,
            Rational::zero,
            |acc, lambda| *acc += self.eval(lambda),
            |a, b| a + b,
        )
    }

    /// Number of partitions of `[n]` taking each value of `f`.
    pub fn distribution(&self, n: usize) -> BTreeMap<Rational, u64> {
        par_fold(
            n,
            BTreeMap::new,
            |acc, lambda| *acc.entry(self.eval(lambda)).or_insert(0) += 1,
            merge_counts,
        )
    }
}

pub(crate) fn merge_counts<K: Ord>(
    mut a: BTreeMap<K, u64>,
    b: BTreeMap<K, u64>,
) -> BTreeMap<K, u64> {
    for (k, v) in b {
        *a.entry(k).or_insert(0) += v;
    }
    a
}

/// Folds over every partition of `[n]` in parallel, splitting the stream on
/// RGS prefixes. `merge` must be associative for the result to be
/// schedule-independent.
pub fn par_fold<T, I, F, M>(n: usize, identity: I, fold: F, merge: M) -> T
where
    T: Send,
    I: Fn() -> T + Sync + Send,
    F: Fn(&mut T, &SetPartition) + Sync + Send,
    M: Fn(T, T) -> T + Sync + Send,
{
    let depth = if n > 9 { 6 } else { n.min(3) };
    rgs_prefixes(n, depth)
        .into_par_iter()
        .map(|prefix| {
            let mut acc = identity();
            for lambda in RgsEnumerator::with_prefix(n, &prefix).expect("valid prefix") {
                fold(&mut acc, &lambda);
            }
            acc
        })
        .reduce(&identity, &merge)
}
