//! Patterns and their occurrences in a set partition.

use std::fmt;

use crate::error::{Error, Result};
use crate::partitions::SetPartition;

/// A pattern of length `k`: an equivalence on `[k]` (stored as an RGS)
/// together with required firsts, lasts, arcs and consecutive pairs.
///
/// Index sets are sorted and deduplicated so that equal patterns compare
/// equal. Consecutive pairs are kept exactly as given; a pair that can
/// never be adjacent simply yields no occurrences.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pattern {
    equiv: SetPartition,
    firsts: Vec<usize>,
    lasts: Vec<usize>,
    arcs: Vec<(usize, usize)>,
    consecutive: Vec<(usize, usize)>,
}

fn sorted<T: Ord>(mut v: Vec<T>) -> Vec<T> {
    v.sort_unstable();
    v.dedup();
    v
}

impl Pattern {
    pub fn new(
        equiv: SetPartition,
        firsts: Vec<usize>,
        lasts: Vec<usize>,
        arcs: Vec<(usize, usize)>,
        consecutive: Vec<(usize, usize)>,
    ) -> Result<Self> {
        let k = equiv.n();
        let in_range = |i: usize| (1..=k).contains(&i);
        for &i in firsts.iter().chain(&lasts) {
            if !in_range(i) {
                return Err(Error::InvalidPattern(format!("index {i} outside [1..{k}]")));
            }
        }
        for &(i, j) in arcs.iter().chain(&consecutive) {
            if !in_range(i) || !in_range(j) {
                return Err(Error::InvalidPattern(format!(
                    "pair ({i},{j}) outside [1..{k}]"
                )));
            }
        }
        for &(i, j) in &arcs {
            if equiv.block_of(i) != equiv.block_of(j) {
                return Err(Error::InvalidPattern(format!(
                    "arc ({i},{j}) joins inequivalent indices"
                )));
            }
        }
        Ok(Pattern {
            equiv,
            firsts: sorted(firsts),
            lasts: sorted(lasts),
            arcs: sorted(arcs),
            consecutive: sorted(consecutive),
        })
    }

    /// Pattern with all indices pairwise inequivalent and no other constraints.
    pub fn free(k: usize) -> Self {
        let equiv = SetPartition::from_rgs((0..k as u32).collect()).unwrap();
        Pattern::new(equiv, vec![], vec![], vec![], vec![]).unwrap()
    }

    pub fn len(&self) -> usize {
        self.equiv.n()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn equiv(&self) -> &SetPartition {
        &self.equiv
    }

    pub fn firsts(&self) -> &[usize] {
        &self.firsts
    }

    pub fn lasts(&self) -> &[usize] {
        &self.lasts
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn consecutive(&self) -> &[(usize, usize)] {
        &self.consecutive
    }

    fn compile(&self) -> Compiled {
        let k = self.len();
        let mut steps = vec![Step::default(); k];
        for (i, step) in steps.iter_mut().enumerate() {
            step.class = self.equiv.rgs()[i] as usize;
        }
        let mut impossible = false;
        for &f in &self.firsts {
            steps[f - 1].first = true;
        }
        for &l in &self.lasts {
            steps[l - 1].last = true;
        }
        for &(i, j) in &self.arcs {
            // An arc runs left to right; x_i < x_j forces i < j.
            if i >= j {
                impossible = true;
            } else {
                steps[j - 1].arc_from.push(i - 1);
            }
        }
        for &(i, j) in &self.consecutive {
            if i == j {
                impossible = true;
            } else {
                let (lo, hi) = (i.min(j), i.max(j));
                steps[hi - 1].adjacent_to.push(lo - 1);
            }
        }
        Compiled { steps, impossible }
    }

    /// Calls `visit` with every occurrence `(x_1 < .. < x_k)` (1-indexed).
    pub fn for_each_occurrence(&self, view: &PartitionView, mut visit: impl FnMut(&[usize])) {
        let compiled = self.compile();
        if compiled.impossible || self.len() > view.n {
            return;
        }
        let k = self.len();
        let mut tuple = vec![0usize; k];
        let mut class_block = vec![usize::MAX; self.equiv.block_count()];
        search(
            &compiled.steps,
            view,
            0,
            &mut tuple,
            &mut class_block,
            &mut visit,
        );
    }

    pub fn occurrences(&self, lambda: &SetPartition) -> Vec<Vec<usize>> {
        let view = PartitionView::new(lambda);
        let mut out = Vec::new();
        self.for_each_occurrence(&view, |s| out.push(s.to_vec()));
        out
    }

    pub fn count_occurrences(&self, lambda: &SetPartition) -> usize {
        let view = PartitionView::new(lambda);
        let mut count = 0;
        self.for_each_occurrence(&view, |_| count += 1);
        count
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs = |v: &[(usize, usize)]| {
            v.iter()
                .map(|(a, b)| format!("({a},{b})"))
                .collect::<Vec<_>>()
                .join("")
        };
        let set = |v: &[usize]| {
            v.iter()
                .map(|a| a.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(
            f,
            "[{}] F={{{}}} L={{{}}} A={{{}}} C={{{}}}",
            self.equiv.to_rgs_string(),
            set(&self.firsts),
            set(&self.lasts),
            pairs(&self.arcs),
            pairs(&self.consecutive)
        )
    }
}

/// Precomputed per-element facts about a partition, indexed by element
/// (slot 0 unused).
#[derive(Debug, Clone)]
pub struct PartitionView {
    pub n: usize,
    block: Vec<usize>,
    is_first: Vec<bool>,
    is_last: Vec<bool>,
    /// Smallest larger element of the same block, 0 if none.
    next_in_block: Vec<usize>,
}

impl PartitionView {
    pub fn new(lambda: &SetPartition) -> Self {
        let n = lambda.n();
        let mut block = vec![usize::MAX; n + 1];
        let mut is_first = vec![false; n + 1];
        let mut is_last = vec![false; n + 1];
        let mut next_in_block = vec![0usize; n + 1];
        let mut last_seen = vec![0usize; lambda.block_count()];
        for x in 1..=n {
            let b = lambda.block_of(x);
            block[x] = b;
            if last_seen[b] == 0 {
                is_first[x] = true;
            } else {
                next_in_block[last_seen[b]] = x;
            }
            last_seen[b] = x;
        }
        for &x in &last_seen {
            is_last[x] = true;
        }
        PartitionView {
            n,
            block,
            is_first,
            is_last,
            next_in_block,
        }
    }
}

#[derive(Debug, Clone, Default)]
struct Step {
    class: usize,
    first: bool,
    last: bool,
    /// earlier positions p with (p, this) required to be an arc
    arc_from: Vec<usize>,
    /// earlier positions p with |x_p - x_this| = 1
    adjacent_to: Vec<usize>,
}

struct Compiled {
    steps: Vec<Step>,
    impossible: bool,
}

fn search(
    steps: &[Step],
    view: &PartitionView,
    pos: usize,
    tuple: &mut [usize],
    class_block: &mut [usize],
    visit: &mut impl FnMut(&[usize]),
) {
    let k = steps.len();
    if pos == k {
        visit(tuple);
        return;
    }
    let step = &steps[pos];
    let lo = if pos == 0 { 1 } else { tuple[pos - 1] + 1 };
    let hi = view.n - (k - pos - 1);
    if lo > hi {
        return;
    }
    // Forced values from earlier arc / adjacency constraints.
    let mut forced: Option<usize> = None;
    for &p in &step.arc_from {
        let v = view.next_in_block[tuple[p]];
        if v == 0 || forced.is_some_and(|f| f != v) {
            return;
        }
        forced = Some(v);
    }
    for &p in &step.adjacent_to {
        let v = tuple[p] + 1;
        if forced.is_some_and(|f| f != v) {
            return;
        }
        forced = Some(v);
    }
    let (from, to) = match forced {
        Some(v) if v < lo || v > hi => return,
        Some(v) => (v, v),
        None => (lo, hi),
    };
    let own_block = class_block[step.class];
    for x in from..=to {
        let b = view.block[x];
        if own_block != usize::MAX {
            if b != own_block {
                continue;
            }
        } else if class_block.contains(&b) {
            continue;
        }
        if step.first && !view.is_first[x] || step.last && !view.is_last[x] {
            continue;
        }
        tuple[pos] = x;
        let fresh = own_block == usize::MAX;
        if fresh {
            class_block[step.class] = b;
        }
        search(steps, view, pos + 1, tuple, class_block, visit);
        if fresh {
            class_block[step.class] = usize::MAX;
        }
    }
}
