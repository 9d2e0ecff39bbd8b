//! Exact integers, rationals and the classical sequences built on them.
//!
//! `Integer` and `Rational` are the arbitrary precision types from
//! `num-bigint` / `num-rational`; rationals are kept in lowest terms with a
//! positive denominator by construction.

use std::sync::{OnceLock, RwLock};

use num_bigint::{BigInt, Sign};
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Integer = BigInt;
pub type Rational = num_rational::BigRational;

/// Memoized Bell numbers `B_0..=B_max`, grown with the Bell triangle.
///
/// Only the last row of the triangle is retained, so extending the table
/// from `B_m` to `B_{m+1}` costs `m + 1` big-integer additions.
#[derive(Debug, Clone)]
pub struct BellTable {
    values: Vec<Integer>,
    row: Vec<Integer>,
}

impl Default for BellTable {
    fn default() -> Self {
        Self::new()
    }
}

impl BellTable {
    pub fn new() -> Self {
        // Triangle row 0 is [1]; its first entry is B_0 and its last is B_1.
        BellTable {
            values: vec![Integer::one(), Integer::one()],
            row: vec![Integer::one()],
        }
    }

    pub fn with_max(max_index: usize) -> Self {
        let mut table = Self::new();
        table.extend_to(max_index);
        table
    }

    pub fn max_index(&self) -> usize {
        self.values.len() - 1
    }

    pub fn values(&self) -> &[Integer] {
        &self.values
    }

    pub fn extend_to(&mut self, max_index: usize) {
        while self.max_index() < max_index {
            let mut next = Vec::with_capacity(self.row.len() + 1);
            next.push(self.row.last().cloned().unwrap_or_else(Integer::one));
            for (i, prev) in self.row.iter().enumerate() {
                let v = &next[i] + prev;
                next.push(v);
            }
            self.values.push(next.last().cloned().unwrap());
            self.row = next;
        }
    }

    /// `B_n`, extending the table when needed.
    pub fn get(&mut self, n: usize) -> &Integer {
        self.extend_to(n);
        &self.values[n]
    }

    /// `B_n` if it has already been computed.
    pub fn peek(&self, n: usize) -> Option<&Integer> {
        self.values.get(n)
    }
}

fn shared_table() -> &'static RwLock<BellTable> {
    static TABLE: OnceLock<RwLock<BellTable>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(BellTable::new()))
}

/// The Bell number `B_n`, served from a process-wide memo table.
pub fn bell(n: usize) -> Integer {
    {
        let table = shared_table().read().expect("bell table poisoned");
        if let Some(v) = table.peek(n) {
            return v.clone();
        }
    }
    let mut table = shared_table().write().expect("bell table poisoned");
    table.get(n).clone()
}

/// `B_0..=B_max` as a fresh vector.
pub fn bell_numbers(max: usize) -> Vec<Integer> {
    bell(max);
    let table = shared_table().read().expect("bell table poisoned");
    table.values()[..=max].to_vec()
}

/// Stirling number of the second kind `S(n, k)`.
pub fn stirling2(n: usize, k: usize) -> Integer {
    if k > n {
        return Integer::zero();
    }
    // row[j] = S(m, j) for the current m
    let mut row = vec![Integer::zero(); k + 1];
    row[0] = Integer::one();
    for _ in 0..n {
        for j in (1..=k).rev() {
            let v = &row[j] * j + &row[j - 1];
            row[j] = v;
        }
        row[0] = Integer::zero();
    }
    row[k].clone()
}

pub fn binomial(n: u64, k: u64) -> Integer {
    if k > n {
        return Integer::zero();
    }
    let k = k.min(n - k);
    let mut acc = Integer::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `B_n mod m` using the Bell triangle over `Z/mZ`.
pub fn bell_mod(n: usize, m: u64) -> u64 {
    assert!(m >= 2, "modulus must be at least 2");
    let m = m as u128;
    let mut row: Vec<u128> = vec![1 % m];
    if n == 0 {
        return (1 % m) as u64;
    }
    for _ in 1..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(*row.last().unwrap());
        for (i, prev) in row.iter().enumerate() {
            next.push((next[i] + prev) % m);
        }
        row = next;
    }
    *row.last().unwrap() as u64
}

/// The sequence `B_0 mod m, .., B_{count-1} mod m` in one pass.
pub fn bell_mod_sequence(count: usize, m: u64) -> Vec<u64> {
    assert!(m >= 2, "modulus must be at least 2");
    let m128 = m as u128;
    let mut out = Vec::with_capacity(count);
    if count == 0 {
        return out;
    }
    out.push(1 % m);
    let mut row: Vec<u128> = vec![1 % m128];
    while out.len() < count {
        out.push(*row.last().unwrap() as u64);
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(*row.last().unwrap());
        for (i, prev) in row.iter().enumerate() {
            next.push((next[i] + prev) % m128);
        }
        row = next;
    }
    out
}

pub fn catalan(n: u64) -> Integer {
    binomial(2 * n, n) / (n + 1)
}

/// Natural log of `|x|` for a nonzero big integer, accurate to double precision.
pub fn ln_abs(x: &Integer) -> f64 {
    assert!(!x.is_zero(), "logarithm of zero");
    let bits = x.bits();
    if bits <= 64 {
        return x.abs().to_f64().unwrap().ln();
    }
    let shift = bits - 64;
    let top = (x.abs() >> shift).to_f64().unwrap();
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// `num / den` as a double without overflowing on huge operands.
pub fn ratio_to_f64(num: &Integer, den: &Integer) -> f64 {
    assert!(!den.is_zero(), "division by zero");
    if num.is_zero() {
        return 0.0;
    }
    let negative = (num.sign() == Sign::Minus) != (den.sign() == Sign::Minus);
    let magnitude = (ln_abs(num) - ln_abs(den)).exp();
    if negative {
        -magnitude
    } else {
        magnitude
    }
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    ratio_to_f64(r.numer(), r.denom())
}

/// Parses `p`, `-p` or `p/q` into a reduced rational.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (text, "1"),
    };
    let num: Integer = num.parse().ok()?;
    let den: Integer = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// Renders a rational as `p` or `p/q`.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn gcd(a: &Integer, b: &Integer) -> Integer {
    a.gcd(b)
}
