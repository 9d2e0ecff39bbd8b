//! Set partitions of `[n] = {1, .., n}` in restricted-growth-string form.
//!
//! The RGS is the canonical representation: element `i` (1-indexed) lives in
//! block `rgs[i - 1]`, blocks are numbered in order of their minima, and
//! `rgs[j + 1] <= 1 + max(rgs[..=j])`. Blocks, arcs and extrema are derived
//! views. All element values in the public API are 1-indexed.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    rgs: Vec<u32>,
}

/// Arc set of a partition: pairs `(e, f)` of consecutive elements of a block.
pub type ArcSet = Vec<(usize, usize)>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockExtrema {
    pub firsts: Vec<usize>,
    pub lasts: Vec<usize>,
    /// Block minima, in block order.
    pub mins: Vec<usize>,
    /// Block maxima, in block order.
    pub maxes: Vec<usize>,
}

impl SetPartition {
    /// Validates a restricted growth string.
    pub fn from_rgs(rgs: Vec<u32>) -> Result<Self> {
        let mut next_block = 0u32;
        for (i, &b) in rgs.iter().enumerate() {
            if b > next_block {
                return Err(Error::InvalidPartition(format!(
                    "restricted growth violated at position {}: {} > {}",
                    i + 1,
                    b,
                    next_block
                )));
            }
            if b == next_block {
                next_block += 1;
            }
        }
        Ok(SetPartition { rgs })
    }

    pub(crate) fn from_rgs_unchecked(rgs: Vec<u32>) -> Self {
        SetPartition { rgs }
    }

    /// Builds the canonical partition from a list of blocks over `[1..n]`.
    pub fn from_blocks<B: AsRef<[usize]>>(blocks: &[B]) -> Result<Self> {
        let n: usize = blocks.iter().map(|b| b.as_ref().len()).sum();
        let mut owner = vec![usize::MAX; n];
        for (bi, block) in blocks.iter().enumerate() {
            let block = block.as_ref();
            if block.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            for &x in block {
                if x == 0 || x > n {
                    return Err(Error::InvalidPartition(format!(
                        "element {x} outside [1..{n}]"
                    )));
                }
                if owner[x - 1] != usize::MAX {
                    return Err(Error::InvalidPartition(format!(
                        "element {x} appears more than once"
                    )));
                }
                owner[x - 1] = bi;
            }
        }
        // Every slot is filled: n elements placed, no duplicates, all in range.
        let mut relabel = vec![u32::MAX; blocks.len()];
        let mut next = 0u32;
        let rgs = owner
            .iter()
            .map(|&b| {
                if relabel[b] == u32::MAX {
                    relabel[b] = next;
                    next += 1;
                }
                relabel[b]
            })
            .collect();
        Ok(SetPartition { rgs })
    }

    pub fn n(&self) -> usize {
        self.rgs.len()
    }

    pub fn rgs(&self) -> &[u32] {
        &self.rgs
    }

    pub fn block_count(&self) -> usize {
        self.rgs.iter().max().map_or(0, |&m| m as usize + 1)
    }

    /// Block (0-based, in order of minima) containing element `x` (1-indexed).
    pub fn block_of(&self, x: usize) -> usize {
        self.rgs[x - 1] as usize
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.block_count()];
        for (i, &b) in self.rgs.iter().enumerate() {
            blocks[b as usize].push(i + 1);
        }
        blocks
    }

    pub fn arcs(&self) -> ArcSet {
        let mut last = vec![0usize; self.block_count()];
        let mut arcs = Vec::with_capacity(self.n());
        for (i, &b) in self.rgs.iter().enumerate() {
            let b = b as usize;
            if last[b] != 0 {
                arcs.push((last[b], i + 1));
            }
            last[b] = i + 1;
        }
        arcs.sort_unstable();
        arcs
    }

    pub fn block_extrema(&self) -> BlockExtrema {
        let l = self.block_count();
        let mut mins = vec![0usize; l];
        let mut maxes = vec![0usize; l];
        for (i, &b) in self.rgs.iter().enumerate() {
            let b = b as usize;
            if mins[b] == 0 {
                mins[b] = i + 1;
            }
            maxes[b] = i + 1;
        }
        let mut firsts = mins.clone();
        firsts.sort_unstable();
        let mut lasts = maxes.clone();
        lasts.sort_unstable();
        BlockExtrema {
            firsts,
            lasts,
            mins,
            maxes,
        }
    }

    /// Renders blocks separated by `|`; contiguous digits when `n <= 9`,
    /// otherwise comma separated elements.
    pub fn to_block_string(&self) -> String {
        let compact = self.n() <= 9;
        let blocks: Vec<String> = self
            .blocks()
            .iter()
            .map(|b| {
                let parts: Vec<String> = b.iter().map(|x| x.to_string()).collect();
                if compact {
                    parts.concat()
                } else {
                    parts.join(",")
                }
            })
            .collect();
        blocks.join("|")
    }

    pub fn to_rgs_string(&self) -> String {
        let parts: Vec<String> = self.rgs.iter().map(|b| b.to_string()).collect();
        parts.join(",")
    }

    /// Parses either the block format (`1356|27|4`, `1,3,5,6|2,7|4`) or an
    /// RGS (`0,1,0,2,0,0,1`, or `0102001` for single-digit labels).
    pub fn parse(text: &str) -> Result<Self> {
        let text: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if text.is_empty() {
            return Ok(SetPartition { rgs: Vec::new() });
        }
        // An RGS always starts with 0, which is never an element of [n].
        if text.contains('|') || !text.starts_with('0') {
            return parse_blocks(&text);
        }
        let rgs = if text.contains(',') {
            text.split(',')
                .map(|t| {
                    t.parse::<u32>()
                        .map_err(|_| Error::Parse(format!("bad RGS entry `{t}`")))
                })
                .collect::<Result<Vec<_>>>()?
        } else {
            text.chars()
                .map(|c| {
                    c.to_digit(10)
                        .ok_or_else(|| Error::Parse(format!("bad RGS entry `{c}`")))
                })
                .collect::<Result<Vec<_>>>()?
        };
        Self::from_rgs(rgs)
    }
}

fn parse_blocks(text: &str) -> Result<SetPartition> {
    let mut blocks = Vec::new();
    for part in text.split('|') {
        if part.is_empty() {
            return Err(Error::Parse("empty block in partition text".into()));
        }
        let block: Vec<usize> = if part.contains(',') {
            part.split(',')
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad element `{t}`")))
                })
                .collect::<Result<_>>()?
        } else {
            part.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| Error::Parse(format!("bad element `{c}`")))
                })
                .collect::<Result<_>>()?
        };
        blocks.push(block);
    }
    SetPartition::from_blocks(&blocks)
}

impl FromStr for SetPartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SetPartition::parse(s)
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_block_string())
    }
}

/// Streaming enumerator of restricted growth strings in lexicographic order.
///
/// State is the current string plus prefix maxima; `advance` is the
/// successor function. A fixed prefix may be pinned so that disjoint
/// sub-streams can be processed independently.
#[derive(Debug, Clone)]
pub struct RgsEnumerator {
    rgs: Vec<u32>,
    /// prefix_max[i] = max(rgs[..i]) + 1, i.e. the largest value allowed at i.
    limit: Vec<u32>,
    fixed: usize,
    started: bool,
    done: bool,
}

impl RgsEnumerator {
    pub fn new(n: usize) -> Self {
        Self::with_prefix(n, &[]).expect("empty prefix is always valid")
    }

    /// Enumerates the partitions of `[n]` whose RGS starts with `prefix`.
    pub fn with_prefix(n: usize, prefix: &[u32]) -> Result<Self> {
        if prefix.len() > n {
            return Err(Error::InvalidPartition("prefix longer than n".into()));
        }
        SetPartition::from_rgs(prefix.to_vec())?;
        let mut rgs = prefix.to_vec();
        rgs.resize(n, 0);
        let mut limit = vec![0u32; n];
        let mut max_plus_one = 0u32;
        for i in 0..n {
            limit[i] = max_plus_one;
            max_plus_one = max_plus_one.max(rgs[i] + 1);
        }
        Ok(RgsEnumerator {
            rgs,
            limit,
            fixed: prefix.len(),
            started: false,
            done: false,
        })
    }

    /// Moves to the next string; returns `None` once exhausted.
    pub fn advance(&mut self) -> Option<&[u32]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.rgs);
        }
        let n = self.rgs.len();
        let mut i = n;
        while i > self.fixed.max(1) {
            i -= 1;
            if self.rgs[i] < self.limit[i] {
                self.rgs[i] += 1;
                let m = self.limit[i].max(self.rgs[i] + 1);
                for j in i + 1..n {
                    self.rgs[j] = 0;
                    self.limit[j] = m;
                }
                return Some(&self.rgs);
            }
        }
        self.done = true;
        None
    }

    pub fn current(&self) -> &[u32] {
        &self.rgs
    }
}

impl Iterator for RgsEnumerator {
    type Item = SetPartition;

    fn next(&mut self) -> Option<SetPartition> {
        self.advance()
            .map(|r| SetPartition::from_rgs_unchecked(r.to_vec()))
    }
}

/// Every partition of `[n]`, lexicographic in RGS order.
pub fn enumerate(n: usize) -> RgsEnumerator {
    RgsEnumerator::new(n)
}

/// Counts partitions by walking the successor function (no allocation per item).
pub fn count_by_enumeration(n: usize) -> u64 {
    let mut e = RgsEnumerator::new(n);
    let mut count = 0u64;
    while e.advance().is_some() {
        count += 1;
    }
    count
}

/// All valid RGS prefixes of length `min(depth, n)`; their sub-streams
/// partition the full enumeration.
pub fn rgs_prefixes(n: usize, depth: usize) -> Vec<Vec<u32>> {
    let depth = depth.min(n);
    enumerate(depth).map(|p| p.rgs).collect()
}

/// A set partition whose blocks are each flagged open (`true`) or closed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MarkedSetPartition {
    pub base: SetPartition,
    pub open: Vec<bool>,
}

impl MarkedSetPartition {
    pub fn new(base: SetPartition, open: Vec<bool>) -> Result<Self> {
        if open.len() != base.block_count() {
            return Err(Error::InvalidPartition(format!(
                "{} flags for {} blocks",
                open.len(),
                base.block_count()
            )));
        }
        Ok(MarkedSetPartition { base, open })
    }

    pub fn open_count(&self) -> usize {
        self.open.iter().filter(|&&o| o).count()
    }
}

/// Every marked partition of `[n]`; there are `sum_lambda 2^{l(lambda)}`.
pub fn marked_enumerate(n: usize) -> impl Iterator<Item = MarkedSetPartition> {
    enumerate(n).flat_map(|p| {
        let l = p.block_count();
        (0u64..1 << l).map(move |mask| MarkedSetPartition {
            base: p.clone(),
            open: (0..l).map(|b| mask >> b & 1 == 1).collect(),
        })
    })
}
