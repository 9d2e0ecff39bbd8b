//! Multivariate weight polynomials over `y1..yk` and `m`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{format_rational, Integer, Rational};

/// Exponent vector: slot 0 is `m`, slot `i >= 1` is `y_i`. Trailing zeros
/// are trimmed so every monomial has exactly one representation.
type Monomial = Vec<u32>;

fn trim(mut mono: Monomial) -> Monomial {
    while mono.last() == Some(&0) {
        mono.pop();
    }
    mono
}

fn mono_mul(a: &[u32], b: &[u32]) -> Monomial {
    let mut out = vec![0u32; a.len().max(b.len())];
    for (i, e) in a.iter().enumerate() {
        out[i] += e;
    }
    for (i, e) in b.iter().enumerate() {
        out[i] += e;
    }
    out
}

/// A polynomial in `y1..yk, m` with rational coefficients, stored as a
/// sorted map from monomial to nonzero coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct WeightPolynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl WeightPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(Vec::new(), c);
        p
    }

    /// The variable `y_i` (1-indexed).
    pub fn y(i: usize) -> Self {
        assert!(i >= 1, "y variables are 1-indexed");
        let mut mono = vec![0u32; i + 1];
        mono[i] = 1;
        let mut p = Self::zero();
        p.add_term(mono, Rational::one());
        p
    }

    /// The ground-set size `m`.
    pub fn m() -> Self {
        let mut p = Self::zero();
        p.add_term(vec![1], Rational::one());
        p
    }

    fn add_term(&mut self, mono: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(trim(mono)) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_empty())
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    /// Largest `i` such that `y_i` occurs (0 if none).
    pub fn max_y_index(&self) -> usize {
        self.terms
            .keys()
            .map(|m| m.len().saturating_sub(1))
            .max()
            .unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Rational)> {
        self.terms.iter().map(|(m, c)| (m.as_slice(), c))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        WeightPolynomial {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(mono_mul(ma, mb), ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Substitutes `y_i -> y_{map(i)}`; `m` is untouched.
    pub fn rename(&self, map: impl Fn(usize) -> usize) -> Self {
        let mut out = Self::zero();
        for (mono, c) in &self.terms {
            let mut renamed: Monomial = vec![mono.first().copied().unwrap_or(0)];
            for (i, &e) in mono.iter().enumerate().skip(1) {
                if e == 0 {
                    continue;
                }
                let j = map(i);
                if renamed.len() <= j {
                    renamed.resize(j + 1, 0);
                }
                renamed[j] += e;
            }
            out.add_term(renamed, c.clone());
        }
        out
    }

    /// Evaluates at `m = n` and `y_i = ys[i - 1]`.
    pub fn eval(&self, n: usize, ys: &[usize]) -> Rational {
        let mut acc = Rational::zero();
        for (mono, c) in &self.terms {
            let mut v = Integer::one();
            for (i, &e) in mono.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let base = if i == 0 { n } else { ys[i - 1] };
                v *= Integer::from(base).pow(e);
            }
            acc += c * Rational::from_integer(v);
        }
        acc
    }

    /// Parses the weight grammar: rational literals, `y1..yk`, `m`,
    /// `+ - *`, `^` with a natural exponent, parentheses.
    pub fn parse(text: &str) -> Result<Self> {
        let tokens = tokenize(text)?;
        let mut parser = Parser { tokens, pos: 0 };
        let p = parser.expr()?;
        if parser.pos != parser.tokens.len() {
            return Err(Error::Parse(format!(
                "unexpected `{}` in weight polynomial",
                parser.tokens[parser.pos]
            )));
        }
        Ok(p)
    }
}

impl FromStr for WeightPolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        WeightPolynomial::parse(s)
    }
}

impl fmt::Display for WeightPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (mono, c)) in self.terms.iter().enumerate() {
            let mut factors = Vec::new();
            let mag = c.abs();
            if !mag.is_one() || mono.is_empty() {
                factors.push(format_rational(&mag));
            }
            for (i, &e) in mono.iter().enumerate().skip(1) {
                match e {
                    0 => {}
                    1 => factors.push(format!("y{i}")),
                    _ => factors.push(format!("y{i}^{e}")),
                }
            }
            match mono.first().copied().unwrap_or(0) {
                0 => {}
                1 => factors.push("m".into()),
                e => factors.push(format!("m^{e}")),
            }
            let body = factors.join("*");
            match (idx, c.is_negative()) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(Integer),
    Y(usize),
    M,
    Op(char),
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Num(v) => write!(f, "{v}"),
            Token::Y(i) => write!(f, "y{i}"),
            Token::M => f.write_str("m"),
            Token::Op(c) => write!(f, "{c}"),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            tokens.push(Token::Num(s.parse().unwrap()));
        } else if c == 'y' {
            i += 1;
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            let idx: usize = s
                .parse()
                .map_err(|_| Error::Parse("`y` must be followed by an index".into()))?;
            if idx == 0 {
                return Err(Error::Parse("variables are y1, y2, ...".into()));
            }
            tokens.push(Token::Y(idx));
        } else if c == 'm' {
            tokens.push(Token::M);
            i += 1;
        } else if "+-*/^()".contains(c) {
            tokens.push(Token::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character `{c}`")));
        }
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn eat_op(&mut self, op: char) -> bool {
        if self.peek() == Some(&Token::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<WeightPolynomial> {
        let mut acc = self.term()?;
        loop {
            if self.eat_op('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat_op('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<WeightPolynomial> {
        let mut acc = self.unary()?;
        while self.eat_op('*') {
            acc = acc.mul(&self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<WeightPolynomial> {
        if self.eat_op('-') {
            return Ok(self.unary()?.scale(&-Rational::one()));
        }
        if self.eat_op('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<WeightPolynomial> {
        let base = self.atom()?;
        if self.eat_op('^') {
            match self.tokens.get(self.pos).cloned() {
                Some(Token::Num(e)) => {
                    self.pos += 1;
                    let e: u32 = e
                        .try_into()
                        .map_err(|_| Error::Parse("exponent too large".into()))?;
                    Ok(base.pow(e))
                }
                _ => Err(Error::Parse("`^` needs a natural exponent".into())),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<WeightPolynomial> {
        match self.tokens.get(self.pos).cloned() {
            Some(Token::Num(v)) => {
                self.pos += 1;
                if self.eat_op('/') {
                    match self.tokens.get(self.pos).cloned() {
                        Some(Token::Num(d)) if !d.is_zero() => {
                            self.pos += 1;
                            Ok(WeightPolynomial::constant(Rational::new(v, d)))
                        }
                        _ => Err(Error::Parse("bad rational literal".into())),
                    }
                } else {
                    Ok(WeightPolynomial::constant(Rational::from_integer(v)))
                }
            }
            Some(Token::Y(i)) => {
                self.pos += 1;
                Ok(WeightPolynomial::y(i))
            }
            Some(Token::M) => {
                self.pos += 1;
                Ok(WeightPolynomial::m())
            }
            Some(Token::Op('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat_op(')') {
                    return Err(Error::Parse("missing `)`".into()));
                }
                Ok(inner)
            }
            Some(t) => Err(Error::Parse(format!("unexpected `{t}`"))),
            None => Err(Error::Parse("unexpected end of weight polynomial".into())),
        }
    }
}
