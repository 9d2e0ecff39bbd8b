//! The named statistics: block counts, block sizes, crossings, nestings,
//! the dimension exponent and levels.

use std::fmt;
use std::str::FromStr;

use num_traits::One;

use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::partitions::SetPartition;

use super::{Pattern, SimpleStatistic, Statistic, WeightPolynomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Builtin {
    Blocks,
    BlocksChoose(usize),
    BlocksOfSize(usize),
    CrossingsK(usize),
    Nestings,
    Dimension,
    Intertwining,
    Levels,
    FirstsSum,
    LastsSum,
}

impl Builtin {
    pub fn from_name(name: &str, param: Option<usize>) -> Result<Self> {
        let need = |what: &str| {
            param.ok_or_else(|| Error::UnknownStatistic(format!("{name} needs parameter {what}")))
        };
        Ok(match name {
            "blocks" => Builtin::Blocks,
            "blocks_choose" => Builtin::BlocksChoose(need("k")?),
            "blocks_of_size" => Builtin::BlocksOfSize(need("i")?),
            "crossings_k" => Builtin::CrossingsK(need("k")?),
            "nestings" => Builtin::Nestings,
            "dimension" => Builtin::Dimension,
            "intertwining" => Builtin::Intertwining,
            "levels" => Builtin::Levels,
            "firsts_sum" => Builtin::FirstsSum,
            "lasts_sum" => Builtin::LastsSum,
            _ => return Err(Error::UnknownStatistic(name.to_string())),
        })
    }

    pub fn statistic(self) -> Result<Statistic> {
        let one = Rational::one;
        Ok(match self {
            Builtin::Blocks => simple(1, &[], &[1], &[], &[], &[], "1").into(),
            Builtin::BlocksChoose(k) => {
                let all: Vec<usize> = (1..=k).collect();
                SimpleStatistic::counting(Pattern::new(singletons(k), all, vec![], vec![], vec![])?)
                    .into()
            }
            Builtin::BlocksOfSize(i) => {
                if i == 0 {
                    return Err(Error::UnknownStatistic(
                        "blocks_of_size needs i >= 1".into(),
                    ));
                }
                let equiv = SetPartition::from_rgs(vec![0; i])?;
                let arcs = (1..i).map(|t| (t, t + 1)).collect();
                SimpleStatistic::counting(Pattern::new(equiv, vec![1], vec![i], arcs, vec![])?)
                    .into()
            }
            Builtin::CrossingsK(k) => crossings(k)?,
            Builtin::Intertwining => crossings(2)?,
            Builtin::Nestings => {
                simple(4, &[0, 1, 1, 0], &[], &[], &[(1, 4), (2, 3)], &[], "1").into()
            }
            Builtin::Levels => simple(2, &[0, 0], &[], &[], &[(1, 2)], &[(1, 2)], "1").into(),
            Builtin::FirstsSum => simple(1, &[], &[1], &[], &[], &[], "y1").into(),
            Builtin::LastsSum => simple(1, &[], &[], &[1], &[], &[], "y1").into(),
            Builtin::Dimension => {
                // d = lasts_sum - firsts_sum + blocks - n
                let n_term = SimpleStatistic::new(Pattern::free(0), WeightPolynomial::m())?;
                Statistic::from_terms([
                    (one(), single(Builtin::LastsSum)),
                    (-one(), single(Builtin::FirstsSum)),
                    (one(), single(Builtin::Blocks)),
                    (-one(), n_term),
                ])
            }
        })
    }
}

impl FromStr for Builtin {
    type Err = Error;

    /// Accepts `name` or `name:param`, e.g. `crossings_k:3`.
    fn from_str(s: &str) -> Result<Self> {
        match s.split_once(':') {
            Some((name, p)) => {
                let p = p
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad statistic parameter `{p}`")))?;
                Builtin::from_name(name, Some(p))
            }
            None => Builtin::from_name(s, None),
        }
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Builtin::Blocks => f.write_str("blocks"),
            Builtin::BlocksChoose(k) => write!(f, "blocks_choose:{k}"),
            Builtin::BlocksOfSize(i) => write!(f, "blocks_of_size:{i}"),
            Builtin::CrossingsK(k) => write!(f, "crossings_k:{k}"),
            Builtin::Nestings => f.write_str("nestings"),
            Builtin::Dimension => f.write_str("dimension"),
            Builtin::Intertwining => f.write_str("intertwining"),
            Builtin::Levels => f.write_str("levels"),
            Builtin::FirstsSum => f.write_str("firsts_sum"),
            Builtin::LastsSum => f.write_str("lasts_sum"),
        }
    }
}

/// Looks up a named statistic; `param` supplies `k` or `i` where needed.
pub fn builtin(name: &str, param: Option<usize>) -> Result<Statistic> {
    Builtin::from_name(name, param)?.statistic()
}

fn single(b: Builtin) -> SimpleStatistic {
    b.statistic().unwrap().terms()[0].1.clone()
}

fn singletons(k: usize) -> SetPartition {
    SetPartition::from_rgs((0..k as u32).collect()).unwrap()
}

fn simple(
    k: usize,
    equiv: &[u32],
    firsts: &[usize],
    lasts: &[usize],
    arcs: &[(usize, usize)],
    consecutive: &[(usize, usize)],
    q: &str,
) -> SimpleStatistic {
    let equiv = if equiv.is_empty() {
        singletons(k)
    } else {
        SetPartition::from_rgs(equiv.to_vec()).unwrap()
    };
    let pattern = Pattern::new(
        equiv,
        firsts.to_vec(),
        lasts.to_vec(),
        arcs.to_vec(),
        consecutive.to_vec(),
    )
    .unwrap();
    SimpleStatistic::new(pattern, q.parse().unwrap()).unwrap()
}

/// k-crossings: arcs `(x_t, x_{k+t})` with `x_1 < .. < x_k < x_{k+1} < .. < x_{2k}`.
fn crossings(k: usize) -> Result<Statistic> {
    if k == 0 {
        return Err(Error::UnknownStatistic("crossings_k needs k >= 1".into()));
    }
    let rgs: Vec<u32> = (0..2 * k).map(|i| (i % k) as u32).collect();
    let arcs = (1..=k).map(|t| (t, t + k)).collect();
    let pattern = Pattern::new(SetPartition::from_rgs(rgs)?, vec![], vec![], arcs, vec![])?;
    Ok(SimpleStatistic::counting(pattern).into())
}
