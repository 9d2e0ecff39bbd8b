//! Shifted Bell polynomials `R(n) = sum_j Q_j(n) B_{n+j}`.
//!
//! Aggregates of pattern statistics over all partitions of `[n]` have this
//! closed form, with known ranges for the shifts and degree bounds for the
//! `Q_j`. Given enough exact values the coefficients follow from linear
//! algebra, see [`fit`].

mod fit;
mod observations;
mod poly;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{bell, format_rational, parse_rational, Integer, Rational};

pub use fit::{default_sample_range, fit, fit_function, solve_exact};
pub use observations::{
    leading_power_check, next_order_constant, next_order_report, restricted_stirling,
    zero_shift_report, ObservationReport,
};
pub use poly::UniPoly;

/// `sum_{j in [lower, upper]} Q_j(n) B_{n+j}`. Shifts whose coefficient is
/// identically zero are not stored. Equality ignores the declared bounds.
#[derive(Debug, Clone, Default)]
pub struct ShiftedBellPolynomial {
    lower: i64,
    upper: i64,
    coeffs: BTreeMap<i64, UniPoly>,
}

impl ShiftedBellPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Builds from explicit shift bounds; every key must lie inside them.
    pub fn new(lower: i64, upper: i64, coeffs: BTreeMap<i64, UniPoly>) -> Result<Self> {
        if lower > upper {
            return Err(Error::Parse(format!(
                "lower shift {lower} exceeds upper shift {upper}"
            )));
        }
        if let Some(j) = coeffs.keys().find(|&&j| j < lower || j > upper) {
            return Err(Error::Parse(format!(
                "shift {j} outside [{lower}, {upper}]"
            )));
        }
        let coeffs = coeffs.into_iter().filter(|(_, p)| !p.is_zero()).collect();
        Ok(ShiftedBellPolynomial {
            lower,
            upper,
            coeffs,
        })
    }

    /// Builds with bounds taken from the smallest and largest shift given.
    pub fn from_terms(terms: impl IntoIterator<Item = (i64, UniPoly)>) -> Self {
        let mut coeffs: BTreeMap<i64, UniPoly> = BTreeMap::new();
        for (j, p) in terms {
            let slot = coeffs.entry(j).or_default();
            *slot = slot.add(&p);
        }
        let lower = coeffs.keys().next().copied().unwrap_or(0);
        let upper = coeffs.keys().next_back().copied().unwrap_or(0);
        Self::new(lower, upper, coeffs).expect("bounds taken from keys")
    }

    pub fn lower(&self) -> i64 {
        self.lower
    }

    pub fn upper(&self) -> i64 {
        self.upper
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Nonzero coefficients by ascending shift.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &UniPoly)> {
        self.coeffs.iter().map(|(&j, p)| (j, p))
    }

    /// `Q_j`, the zero polynomial when absent.
    pub fn coeff(&self, shift: i64) -> UniPoly {
        self.coeffs.get(&shift).cloned().unwrap_or_default()
    }

    pub fn evaluate(&self, n: u64) -> Result<Rational> {
        let mut total = Rational::zero();
        for (&j, p) in &self.coeffs {
            let index = n as i64 + j;
            if index < 0 {
                return Err(Error::Domain { n, shift: j, index });
            }
            total += p.eval_integer(n) * Rational::from_integer(bell(index as usize));
        }
        Ok(total)
    }

    /// Like [`evaluate`](Self::evaluate) but for aggregates known to be
    /// integers; panics otherwise.
    pub fn evaluate_integer(&self, n: u64) -> Result<Integer> {
        let v = self.evaluate(n)?;
        assert!(v.is_integer(), "non-integral value {v} at n = {n}");
        Ok(v.to_integer())
    }

    /// One-line rendering, e.g. `j=1: 4 + 1*n ; j=2: -2`, or `0`.
    pub fn canonical_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.coeffs
            .iter()
            .map(|(j, p)| format!("j={j}: {p}"))
            .collect::<Vec<_>>()
            .join(" ; ")
    }

    /// Line format: one `shift <j>: <c0> <c1> ... <cd>` line per nonzero
    /// shift, ascending.
    pub fn to_lines(&self) -> String {
        let mut out = String::new();
        for (j, p) in &self.coeffs {
            out.push_str(&format!("shift {j}:"));
            for c in p.coeffs() {
                out.push(' ');
                out.push_str(&format_rational(c));
            }
            out.push('\n');
        }
        out
    }

    /// Inverse of [`to_lines`](Self::to_lines). Blank lines are ignored.
    pub fn parse_lines(text: &str) -> Result<Self> {
        let mut terms = Vec::new();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            let rest = line
                .strip_prefix("shift")
                .ok_or_else(|| Error::Parse(format!("expected `shift <j>:` in `{line}`")))?;
            let (j, cs) = rest
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("missing `:` in `{line}`")))?;
            let j: i64 = j
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad shift in `{line}`")))?;
            let coeffs = cs
                .split_whitespace()
                .map(|c| {
                    parse_rational(c).ok_or_else(|| Error::Parse(format!("bad rational `{c}`")))
                })
                .collect::<Result<Vec<_>>>()?;
            terms.push((j, UniPoly::new(coeffs)));
        }
        Ok(Self::from_terms(terms))
    }

    pub fn to_structured(&self) -> StructuredPolynomial {
        StructuredPolynomial {
            lower_shift: self.lower,
            upper_shift: self.upper,
            terms: self
                .coeffs
                .iter()
                .map(|(&shift, p)| StructuredTerm {
                    shift,
                    coefficients: p.coeffs().iter().map(format_rational).collect(),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_structured()).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let s: StructuredPolynomial =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        s.try_into()
    }
}

impl PartialEq for ShiftedBellPolynomial {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl Eq for ShiftedBellPolynomial {}

impl fmt::Display for ShiftedBellPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_text())
    }
}

/// Machine-readable form; coefficients are `p/q` strings in ascending powers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructuredPolynomial {
    pub lower_shift: i64,
    pub upper_shift: i64,
    pub terms: Vec<StructuredTerm>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructuredTerm {
    pub shift: i64,
    pub coefficients: Vec<String>,
}

impl TryFrom<StructuredPolynomial> for ShiftedBellPolynomial {
    type Error = Error;

    fn try_from(s: StructuredPolynomial) -> Result<Self> {
        let mut coeffs = BTreeMap::new();
        for t in s.terms {
            let cs = t
                .coefficients
                .iter()
                .map(|c| {
                    parse_rational(c).ok_or_else(|| Error::Parse(format!("bad rational `{c}`")))
                })
                .collect::<Result<Vec<_>>>()?;
            if coeffs.insert(t.shift, UniPoly::new(cs)).is_some() {
                return Err(Error::Parse(format!("duplicate shift {}", t.shift)));
            }
        }
        ShiftedBellPolynomial::new(s.lower_shift, s.upper_shift, coeffs)
    }
}

/// Allowed shifts and the degree bound of each shift's coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FitProfile {
    shifts: Vec<i64>,
    degrees: Vec<usize>,
}

impl FitProfile {
    pub fn new(entries: impl IntoIterator<Item = (i64, usize)>) -> Result<Self> {
        let (shifts, degrees): (Vec<i64>, Vec<usize>) = entries.into_iter().unzip();
        if shifts.is_empty() {
            return Err(Error::Parse("empty fit profile".into()));
        }
        if shifts.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Parse(
                "profile shifts must be strictly increasing".into(),
            ));
        }
        Ok(FitProfile { shifts, degrees })
    }

    pub fn shifts(&self) -> &[i64] {
        &self.shifts
    }

    pub fn degree(&self, shift: i64) -> Option<usize> {
        self.shifts
            .iter()
            .position(|&s| s == shift)
            .map(|i| self.degrees[i])
    }

    /// `(shift, degree bound)` pairs, ascending.
    pub fn entries(&self) -> impl Iterator<Item = (i64, usize)> + '_ {
        self.shifts
            .iter()
            .copied()
            .zip(self.degrees.iter().copied())
    }

    pub fn min_shift(&self) -> i64 {
        self.shifts[0]
    }

    pub fn max_shift(&self) -> i64 {
        *self.shifts.last().expect("nonempty")
    }

    /// Number of unknown coefficients.
    pub fn unknowns(&self) -> usize {
        self.degrees.iter().map(|d| d + 1).sum()
    }
}

/// Bounds for a statistic of degree `N` whose patterns have length at most
/// `k`: shifts `-k..=N`, the coefficient of `B_{n+N-j}` of degree `j` for
/// `j <= N` and `j - 1` beyond.
pub fn profile_generic(big_n: usize, k: usize) -> FitProfile {
    let top = big_n as i64;
    FitProfile::new((-(k as i64)..=top).map(|s| {
        let j = (top - s) as usize;
        (s, if j <= big_n { j } else { j - 1 })
    }))
    .expect("increasing shifts")
}

/// Bounds for `M(d^k; n)`: shifts `0..=2k`, the coefficient of
/// `B_{n+2k-j}` of degree `j` for `j <= k`, else `k - ceil((j-k)/2)`.
pub fn profile_dim(k: usize) -> FitProfile {
    FitProfile::new((0..=2 * k).map(|s| {
        let j = 2 * k - s;
        let d = if j <= k { j } else { k - (j - k).div_ceil(2) };
        (s as i64, d)
    }))
    .expect("increasing shifts")
}

/// Bounds for `M(i^k; n)`: shifts `-k..=2k`, the coefficient of
/// `B_{n+2k-j}` of degree at most `j`.
pub fn profile_int(k: usize) -> FitProfile {
    let top = 2 * k as i64;
    FitProfile::new((-(k as i64)..=top).map(|s| (s, (top - s) as usize)))
        .expect("increasing shifts")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(cs: &[i64]) -> UniPoly {
        UniPoly::from_integers(cs)
    }

    fn mean_dim() -> ShiftedBellPolynomial {
        ShiftedBellPolynomial::from_terms([(2, poly(&[-2])), (1, poly(&[4, 1]))])
    }

    #[test]
    fn evaluate_examples() {
        let r = ShiftedBellPolynomial::from_terms([(1, poly(&[1])), (0, poly(&[-1]))]);
        assert_eq!(r.evaluate(3).unwrap(), Rational::from_integer(10.into()));
        assert_eq!(
            mean_dim().evaluate(4).unwrap(),
            Rational::from_integer(10.into())
        );
        assert!(ShiftedBellPolynomial::zero()
            .evaluate(17)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn evaluate_domain_error_names_shift() {
        let r = ShiftedBellPolynomial::from_terms([(-2, poly(&[1]))]);
        assert_eq!(
            r.evaluate(1),
            Err(Error::Domain {
                n: 1,
                shift: -2,
                index: -1
            })
        );
        assert!(r.evaluate(2).is_ok());
    }

    #[test]
    fn text_forms() {
        let r = mean_dim();
        assert_eq!(r.canonical_text(), "j=1: 4 + 1*n ; j=2: -2");
        assert_eq!(ShiftedBellPolynomial::zero().canonical_text(), "0");
        assert_eq!(r.to_lines(), "shift 1: 4 1\nshift 2: -2\n");
        assert_eq!(
            ShiftedBellPolynomial::parse_lines(&r.to_lines()).unwrap(),
            r
        );
        assert_eq!(ShiftedBellPolynomial::from_json(&r.to_json()).unwrap(), r);
        assert!(ShiftedBellPolynomial::parse_lines("shift x: 1").is_err());
    }

    fn entries(p: &FitProfile) -> Vec<(i64, usize)> {
        p.entries().collect()
    }

    #[test]
    fn profiles() {
        assert_eq!(
            entries(&profile_generic(1, 1)),
            vec![(-1, 1), (0, 1), (1, 0)]
        );
        assert_eq!(entries(&profile_generic(0, 0)), vec![(0, 0)]);
        assert_eq!(
            entries(&profile_generic(2, 2)),
            vec![(-2, 3), (-1, 2), (0, 2), (1, 1), (2, 0)]
        );
        assert_eq!(entries(&profile_dim(1)), vec![(0, 0), (1, 1), (2, 0)]);
        assert_eq!(
            entries(&profile_dim(2)),
            vec![(0, 1), (1, 1), (2, 2), (3, 1), (4, 0)]
        );
        let d3: Vec<usize> = entries(&profile_dim(3)).iter().rev().map(|e| e.1).collect();
        assert_eq!(d3, vec![0, 1, 2, 3, 2, 2, 1]);
        assert_eq!(
            entries(&profile_int(1)),
            vec![(-1, 3), (0, 2), (1, 1), (2, 0)]
        );
        let i2: Vec<usize> = entries(&profile_int(2)).iter().map(|e| e.1).collect();
        assert_eq!(i2, vec![6, 5, 4, 3, 2, 1, 0]);
        assert_eq!(profile_dim(1).unknowns(), 4);
        assert!(FitProfile::new([(1, 0), (0, 0)]).is_err());
    }
}
