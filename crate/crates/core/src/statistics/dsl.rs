//! Text format for user-defined simple statistics.
//!
//! A pattern document is a single JSON object:
//!
//! ```json
//! { "length": 4, "blocks": [[1,3],[2,4]], "firsts": [], "lasts": [],
//!   "arcs": [[1,3],[2,4]], "consecutive": [], "q": "1" }
//! ```
//!
//! `blocks` defaults to all singletons, the index lists default to empty,
//! `q` defaults to `1`. An optional `coefficient` (rational literal)
//! scales the statistic.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::parse_rational;
use crate::partitions::SetPartition;

use super::{Pattern, SimpleStatistic, Statistic, WeightPolynomial};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PatternDocument {
    pub length: usize,
    #[serde(default)]
    pub blocks: Option<Vec<Vec<usize>>>,
    #[serde(default)]
    pub firsts: Vec<usize>,
    #[serde(default)]
    pub lasts: Vec<usize>,
    #[serde(default)]
    pub arcs: Vec<[usize; 2]>,
    #[serde(default)]
    pub consecutive: Vec<[usize; 2]>,
    #[serde(default)]
    pub q: Option<String>,
    #[serde(default)]
    pub coefficient: Option<String>,
}

impl PatternDocument {
    pub fn to_statistic(&self) -> Result<Statistic> {
        let equiv = match &self.blocks {
            None => SetPartition::from_rgs((0..self.length as u32).collect())?,
            Some(blocks) => {
                let p = SetPartition::from_blocks(blocks)
                    .map_err(|e| Error::InvalidPattern(format!("blocks: {e}")))?;
                if p.n() != self.length {
                    return Err(Error::InvalidPattern(format!(
                        "blocks cover [1..{}] but length is {}",
                        p.n(),
                        self.length
                    )));
                }
                p
            }
        };
        let pairs = |v: &[[usize; 2]]| v.iter().map(|p| (p[0], p[1])).collect::<Vec<_>>();
        let pattern = Pattern::new(
            equiv,
            self.firsts.clone(),
            self.lasts.clone(),
            pairs(&self.arcs),
            pairs(&self.consecutive),
        )?;
        let q = match &self.q {
            Some(text) => WeightPolynomial::parse(text)?,
            None => WeightPolynomial::one(),
        };
        let simple = SimpleStatistic::new(pattern, q)?;
        let stat = Statistic::from(simple);
        match &self.coefficient {
            None => Ok(stat),
            Some(c) => {
                let c = parse_rational(c)
                    .ok_or_else(|| Error::Parse(format!("bad coefficient `{c}`")))?;
                Ok(stat.scale(&c))
            }
        }
    }
}

/// Parses a pattern document into a statistic.
pub fn parse_pattern_document(text: &str) -> Result<Statistic> {
    let doc: PatternDocument =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("pattern document: {e}")))?;
    doc.to_statistic()
}
