//! Exact arithmetic over the rationals extended by square roots.
//!
//! [`Surd`] is a single-radicand value `a + b*sqrt(D)`. Sums across several
//! radicands live in [`ExactValue`]. Signs and orderings are decided without
//! floating point: a sum `A + B*sqrt(p)` is resolved by recursing on the
//! signs of `A` and `B` and, when they differ, comparing `A^2` with `p*B^2`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Integer square root (floor).
pub fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u64;
    while x.checked_mul(x).is_none_or(|sq| sq > n) {
        x -= 1;
    }
    while (x + 1).checked_mul(x + 1).is_some_and(|sq| sq <= n) {
        x += 1;
    }
    x
}

pub fn exact_sqrt(n: u64) -> Option<u64> {
    let r = isqrt(n);
    (r * r == n).then_some(r)
}

/// Splits `n = s^2 * f` with `f` squarefree and returns `(s, f)`.
pub fn square_part(mut n: u64) -> (u64, u64) {
    if n == 0 {
        return (0, 0);
    }
    let mut s = 1u64;
    let mut f = 1u64;
    let mut p = 2u64;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        for _ in 0..e / 2 {
            s *= p;
        }
        if e % 2 == 1 {
            f *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    (s, f * n)
}

fn largest_prime_factor(mut n: u64) -> u64 {
    let mut best = 1;
    let mut p = 2u64;
    while p * p <= n {
        while n.is_multiple_of(p) {
            n /= p;
            best = p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        n
    } else {
        best
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

/// `a + b*sqrt(d)` in canonical form: `d` squarefree, and `b = 0, d = 1`
/// whenever the value is rational.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Surd {
    a: Rational,
    b: Rational,
    d: u64,
}

impl Surd {
    /// Builds the canonical form of `a + b*sqrt(d)`.
    pub fn new(a: Rational, b: Rational, d: u64) -> Surd {
        let (s, f) = square_part(d);
        let b = b * Rational::from_integer(BigInt::from(s));
        match f {
            0 => Surd {
                a,
                b: Rational::zero(),
                d: 1,
            },
            1 => Surd {
                a: a + b,
                b: Rational::zero(),
                d: 1,
            },
            _ if b.is_zero() => Surd { a, b, d: 1 },
            _ => Surd { a, b, d: f },
        }
    }

    pub fn rational(a: Rational) -> Surd {
        Surd {
            a,
            b: Rational::zero(),
            d: 1,
        }
    }

    pub fn integer(n: i64) -> Surd {
        Surd::rational(int(n))
    }

    pub fn zero() -> Surd {
        Surd::integer(0)
    }

    /// `sqrt(n)` for a nonnegative integer.
    pub fn sqrt(n: u64) -> Surd {
        Surd::new(Rational::zero(), Rational::one(), n)
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn radicand(&self) -> u64 {
        self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.is_rational() && self.a.is_integer()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.a)
    }

    pub fn to_f64(&self) -> f64 {
        rat_to_f64(&self.a) + rat_to_f64(&self.b) * (self.d as f64).sqrt()
    }

    pub fn to_exact(&self) -> ExactValue {
        let mut v = ExactValue::rational(self.a.clone());
        v.add_term(self.d, self.b.clone());
        v
    }

    pub fn signum(&self) -> Ordering {
        self.to_exact().sign()
    }

    pub fn abs(&self) -> Surd {
        surd_abs(self)
    }

    pub fn add_rational(&self, r: &Rational) -> Surd {
        Surd {
            a: &self.a + r,
            b: self.b.clone(),
            d: self.d,
        }
    }

    pub fn scale(&self, r: &Rational) -> Surd {
        if r.is_zero() {
            return Surd::zero();
        }
        Surd {
            a: &self.a * r,
            b: &self.b * r,
            d: self.d,
        }
    }

    /// Sum of two surds when they share a radicand (or one is rational).
    pub fn checked_add(&self, other: &Surd) -> Option<Surd> {
        Surd::try_from(&(self.to_exact() + other.to_exact())).ok()
    }

    /// Product of two surds when the result stays single-radicand.
    pub fn checked_mul(&self, other: &Surd) -> Option<Surd> {
        Surd::try_from(&(self.to_exact() * other.to_exact())).ok()
    }
}

/// Canonical form of `a + b*sqrt(d)`.
pub fn surd_normalize(a: Rational, b: Rational, d: u64) -> Surd {
    Surd::new(a, b, d)
}

/// Exact ordering of the real values.
pub fn surd_compare(x: &Surd, y: &Surd) -> Ordering {
    (x.to_exact() - y.to_exact()).sign()
}

pub fn surd_abs(x: &Surd) -> Surd {
    if x.signum() == Ordering::Less {
        -x.clone()
    } else {
        x.clone()
    }
}

/// Multiset sum grouped by radicand.
pub fn exact_sum<'a, I>(values: I) -> ExactValue
where
    I: IntoIterator<Item = (&'a Surd, u64)>,
{
    let mut acc = ExactValue::zero();
    for (x, m) in values {
        let m = Rational::from_integer(BigInt::from(m));
        acc.add_term(1, &x.a * &m);
        acc.add_term(x.d, &x.b * &m);
    }
    acc
}

impl Neg for Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        Surd {
            a: -self.a,
            b: -self.b,
            d: self.d,
        }
    }
}

impl PartialOrd for Surd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Surd {
    fn cmp(&self, other: &Self) -> Ordering {
        surd_compare(self, other)
    }
}

impl From<i64> for Surd {
    fn from(n: i64) -> Surd {
        Surd::integer(n)
    }
}

impl From<Rational> for Surd {
    fn from(r: Rational) -> Surd {
        Surd::rational(r)
    }
}

impl TryFrom<&ExactValue> for Surd {
    type Error = Error;
    fn try_from(v: &ExactValue) -> Result<Surd> {
        let a = v.rational_part();
        let mut irr = v.terms.iter().filter(|(d, _)| **d != 1);
        match (irr.next(), irr.next()) {
            (None, _) => Ok(Surd::rational(a)),
            (Some((d, b)), None) => Ok(Surd {
                a,
                b: b.clone(),
                d: *d,
            }),
            _ => Err(Error::InvalidParameter(format!(
                "{v} involves more than one radicand"
            ))),
        }
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_exact().fmt(f)
    }
}

impl FromStr for Surd {
    type Err = Error;
    fn from_str(s: &str) -> Result<Surd> {
        let v: ExactValue = s.parse()?;
        Surd::try_from(&v)
            .map_err(|_| Error::parse(1, 1, format!("`{s}` is not a single-radicand value")))
    }
}

/// A finite sum `sum c_D * sqrt(D)` over squarefree `D`, with `D = 1` the
/// rational part. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ExactValue {
    terms: BTreeMap<u64, Rational>,
}

impl ExactValue {
    pub fn zero() -> ExactValue {
        ExactValue::default()
    }

    pub fn rational(r: Rational) -> ExactValue {
        let mut v = ExactValue::zero();
        v.add_term(1, r);
        v
    }

    pub fn integer(n: i64) -> ExactValue {
        ExactValue::rational(int(n))
    }

    /// Adds `c * sqrt(d)` for any nonnegative `d`.
    pub fn add_term(&mut self, d: u64, c: Rational) {
        if c.is_zero() || d == 0 {
            return;
        }
        let (s, f) = square_part(d);
        let c = c * Rational::from_integer(BigInt::from(s));
        let slot = self.terms.entry(f).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&f);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, &Rational)> {
        self.terms.iter().map(|(d, c)| (*d, c))
    }

    pub fn coefficient(&self, d: u64) -> Rational {
        self.terms.get(&d).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn rational_part(&self) -> Rational {
        self.coefficient(1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_rational(&self) -> bool {
        self.terms.keys().all(|d| *d == 1)
    }

    pub fn as_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.rational_part())
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational()
            .filter(|r| r.is_integer())
            .map(|r| r.to_integer())
    }

    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(d, c)| rat_to_f64(c) * (*d as f64).sqrt())
            .sum()
    }

    pub fn scale(&self, r: &Rational) -> ExactValue {
        let mut out = ExactValue::zero();
        for (d, c) in &self.terms {
            out.add_term(*d, c * r);
        }
        out
    }

    pub fn sign(&self) -> Ordering {
        sign_of(self)
    }

    pub fn abs(&self) -> ExactValue {
        if self.sign() == Ordering::Less {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn cmp_rational(&self, r: &Rational) -> Ordering {
        (self.clone() - ExactValue::rational(r.clone())).sign()
    }
}

fn sign_of(v: &ExactValue) -> Ordering {
    let mut it = v.terms.iter();
    match (it.next(), it.next()) {
        (None, _) => return Ordering::Equal,
        (Some((_, c)), None) => return c.cmp(&Rational::zero()),
        _ => {}
    }
    let p = v
        .terms
        .keys()
        .map(|d| largest_prime_factor(*d))
        .max()
        .unwrap_or(1);
    let mut a = ExactValue::zero();
    let mut b = ExactValue::zero();
    for (d, c) in &v.terms {
        if d % p == 0 {
            b.add_term(d / p, c.clone());
        } else {
            a.add_term(*d, c.clone());
        }
    }
    let sa = sign_of(&a);
    let sb = sign_of(&b);
    if sb == Ordering::Equal || sa == sb {
        return sa;
    }
    if sa == Ordering::Equal {
        return sb;
    }
    let p_rat = Rational::from_integer(BigInt::from(p));
    let diff = a.clone() * a - (b.clone() * b).scale(&p_rat);
    match sign_of(&diff) {
        Ordering::Equal => Ordering::Equal,
        Ordering::Greater => sa,
        Ordering::Less => sb,
    }
}

impl PartialOrd for ExactValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExactValue {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.clone() - other.clone()).sign()
    }
}

impl Add for ExactValue {
    type Output = ExactValue;
    fn add(mut self, rhs: ExactValue) -> ExactValue {
        for (d, c) in rhs.terms {
            self.add_term(d, c);
        }
        self
    }
}

impl Sub for ExactValue {
    type Output = ExactValue;
    fn sub(self, rhs: ExactValue) -> ExactValue {
        self + (-rhs)
    }
}

impl Neg for ExactValue {
    type Output = ExactValue;
    fn neg(self) -> ExactValue {
        ExactValue {
            terms: self.terms.into_iter().map(|(d, c)| (d, -c)).collect(),
        }
    }
}

impl Mul for ExactValue {
    type Output = ExactValue;
    fn mul(self, rhs: ExactValue) -> ExactValue {
        let mut out = ExactValue::zero();
        for (d1, c1) in &self.terms {
            for (d2, c2) in &rhs.terms {
                let g = gcd(*d1, *d2);
                let coeff = c1 * c2 * Rational::from_integer(BigInt::from(g));
                out.add_term((d1 / g) * (d2 / g), coeff);
            }
        }
        out
    }
}

impl From<&Surd> for ExactValue {
    fn from(s: &Surd) -> ExactValue {
        s.to_exact()
    }
}

impl From<i64> for ExactValue {
    fn from(n: i64) -> ExactValue {
        ExactValue::integer(n)
    }
}

fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for ExactValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (d, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if *d == 1 {
                f.write_str(&fmt_rational(&mag))?;
            } else if mag.is_one() {
                write!(f, "sqrt({d})")?;
            } else {
                write!(f, "{}*sqrt({d})", fmt_rational(&mag))?;
            }
        }
        Ok(())
    }
}

impl FromStr for ExactValue {
    type Err = Error;
    fn from_str(s: &str) -> Result<ExactValue> {
        let mut p = Parser {
            src: s.as_bytes(),
            pos: 0,
        };
        let v = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.err("unexpected trailing input"));
        }
        Ok(v)
    }
}

/// Recursive-descent parser for sums of rational multiples of square roots.
/// Grammar: `expr = term (('+'|'-') term)*`, `term = ['-'] factor (('*'|'/') factor)*`,
/// `factor = integer | 'sqrt(' integer ')' | '(' expr ')'`.
struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::parse(1, self.pos + 1, msg)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected `{}`", c as char)))
        }
    }

    fn expr(&mut self) -> Result<ExactValue> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc + self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<ExactValue> {
        let neg = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc * self.factor()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let den = self.factor()?;
                    let den = den
                        .as_rational()
                        .filter(|r| !r.is_zero())
                        .ok_or(Error::parse(
                            1,
                            at + 1,
                            "divisor must be a nonzero rational",
                        ))?;
                    acc = acc.scale(&den.recip());
                }
                _ => break,
            }
        }
        Ok(if neg { -acc } else { acc })
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("digits parse"))
    }

    fn factor(&mut self) -> Result<ExactValue> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(b')')?;
                Ok(v)
            }
            Some(b's') => {
                if !self.src[self.pos..].starts_with(b"sqrt") {
                    return Err(self.err("expected `sqrt`"));
                }
                self.pos += 4;
                self.expect(b'(')?;
                let at = self.pos;
                let n = self.integer()?;
                self.expect(b')')?;
                let n = n
                    .to_u64()
                    .ok_or(Error::parse(1, at + 1, "radicand out of range"))?;
                let mut v = ExactValue::zero();
                v.add_term(n, Rational::one());
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(ExactValue::rational(Rational::from_integer(n)))
            }
            _ => Err(self.err("expected a number, `sqrt(` or `(`")),
        }
    }
}
