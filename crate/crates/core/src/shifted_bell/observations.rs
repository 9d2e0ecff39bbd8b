//! Structural checks on fitted `M(d^k; n)` formulas.

use std::fmt;

use num_traits::{One, Zero};

use super::{ShiftedBellPolynomial, UniPoly};
use crate::exactnum::{binomial, format_rational, Integer, Rational};

/// Expected against found coefficient, one per line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObservationReport {
    pub title: String,
    pub lines: Vec<(String, Rational, Rational)>,
    pub note: Option<String>,
}

impl ObservationReport {
    pub fn holds(&self) -> bool {
        self.lines.iter().all(|(_, e, f)| e == f)
    }
}

impl fmt::Display for ObservationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{}: {}",
            self.title,
            if self.holds() { "holds" } else { "fails" }
        )?;
        for (label, e, found) in &self.lines {
            let mark = if e == found { "ok" } else { "MISMATCH" };
            writeln!(
                f,
                "  {label}: expected {} found {} {mark}",
                format_rational(e),
                format_rational(found)
            )?;
        }
        if let Some(note) = &self.note {
            writeln!(f, "  note: {note}")?;
        }
        Ok(())
    }
}

fn int(v: Integer) -> Rational {
    Rational::from_integer(v)
}

/// Leading powers: the top contribution of `M(d^k; n)` is `(n - 2T)^k B_{n+k}`
/// with `T B_m = B_{m+1}`, i.e. the `n^{k-t}` coefficient of `P_{k,k+t}` is
/// `C(k,t) (-2)^t`.
pub fn leading_power_check(r: &ShiftedBellPolynomial, k: usize) -> ObservationReport {
    let lines = (0..=k)
        .map(|t| {
            let expected = int(binomial(k as u64, t as u64) * Integer::from(-2).pow(t as u32));
            let found = r.coeff((k + t) as i64).coeff(k - t);
            (
                format!("P_{{{k},{}}} [n^{}]", k + t, k - t),
                expected,
                found,
            )
        })
        .collect();
    ObservationReport {
        title: format!("leading powers of M(d^{k})"),
        lines,
        note: None,
    }
}

/// `C_j = 2^{j-3} (17 - j) j`.
pub fn next_order_constant(j: usize) -> Rational {
    let two = Rational::from_integer(2.into());
    let pow = if j >= 3 {
        two.pow((j - 3) as i32)
    } else {
        Rational::one() / two.pow((3 - j) as i32)
    };
    pow * Rational::from_integer(Integer::from((17 - j as i64) * j as i64))
}

/// Next-order terms: the `n^{k-j}` coefficient of `P_{k,k+j-1}` against
/// `C_j (-1)^{j+1} C(k,j)`, for `1 <= j <= k`. Reported, not asserted.
pub fn next_order_report(r: &ShiftedBellPolynomial, k: usize) -> ObservationReport {
    let lines = (1..=k)
        .map(|j| {
            let sign = if j % 2 == 1 { 1 } else { -1 };
            let expected = next_order_constant(j) * int(binomial(k as u64, j as u64) * sign);
            let found = r.coeff((k + j - 1) as i64).coeff(k - j);
            (
                format!("P_{{{k},{}}} [n^{}]", k + j - 1, k - j),
                expected,
                found,
            )
        })
        .collect();
    ObservationReport {
        title: format!("next-order powers of M(d^{k})"),
        lines,
        note: None,
    }
}

/// Partitions of `[k]` into `j` blocks, all of size at least two.
pub fn restricted_stirling(k: usize, j: usize) -> Integer {
    // S'(k, j) = j S'(k-1, j) + (k-1) S'(k-2, j-1)
    let mut t = vec![vec![Integer::zero(); k + 1]; k + 1];
    t[0][0] = Integer::one();
    for m in 1..=k {
        for b in 1..=m / 2 {
            let mut v = &t[m - 1][b] * b;
            if m >= 2 {
                v += &t[m - 2][b - 1] * (m - 1);
            }
            t[m][b] = v;
        }
    }
    t[k].get(j).cloned().unwrap_or_default()
}

/// Compares the shift-0 coefficient of `M(d^k; n)` with `[X^k/k!]
/// exp((e^X - 1 - X) n) = sum_j S'(k,j) n^j`.
pub fn zero_shift_report(r: &ShiftedBellPolynomial, k: usize) -> ObservationReport {
    let expected = UniPoly::new((0..=k).map(|j| int(restricted_stirling(k, j))).collect());
    let found = r.coeff(0);
    let len = expected.coeffs().len().max(found.coeffs().len());
    let lines = (0..len)
        .map(|e| {
            (
                format!("P_{{{k},0}} [n^{e}]"),
                expected.coeff(e),
                found.coeff(e),
            )
        })
        .collect();
    ObservationReport {
        title: format!("shift-0 generating function for M(d^{k})"),
        lines,
        note: Some(
            "compared as the coefficient of B_n in M(d^k); read with the indices \
             the other way round the statement is about P_{0,k}, which is zero for k > 0"
                .into(),
        ),
    }
}
