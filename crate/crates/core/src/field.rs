//! Exact ordered-field arithmetic.
//!
//! A [`Scalar`] is either a rational or an element of a square-root tower
//! over the rationals, written `a + b*sqrt(d)` with `a`, `b` and `d` built
//! from strictly lower radicals. The tower is not forced to be canonical
//! (two radicals may be algebraically dependent), so equality and order are
//! decided by exact sign computation rather than by comparing structure.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which ordered field the coordinates live in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldMode {
    /// The rationals. Square roots exist only for squares.
    Rational,
    /// The closure of the rationals under square roots of nonnegatives.
    Euclidean,
}

impl FieldMode {
    pub fn as_str(self) -> &'static str {
        match self {
            FieldMode::Rational => "rational",
            FieldMode::Euclidean => "euclidean",
        }
    }
}

impl fmt::Display for FieldMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FieldMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rational" => Ok(FieldMode::Rational),
            "euclidean" => Ok(FieldMode::Euclidean),
            other => Err(Error::Parse(format!("unknown field mode {other:?}"))),
        }
    }
}

/// A positive radicand adjoined as a generator.
struct Radical {
    radicand: Scalar,
    depth: u32,
    key: String,
}

impl Radical {
    fn new(radicand: Scalar) -> Arc<Radical> {
        let depth = radicand.depth() + 1;
        let key = radicand.to_string();
        Arc::new(Radical { radicand, depth, key })
    }
}

fn radical_cmp(a: &Arc<Radical>, b: &Arc<Radical>) -> Ordering {
    if Arc::ptr_eq(a, b) {
        return Ordering::Equal;
    }
    a.depth.cmp(&b.depth).then_with(|| a.key.cmp(&b.key))
}

/// `a + b*sqrt(root)` where everything in `a` and `b` sits below `root`.
struct Surd {
    a: Scalar,
    b: Scalar,
    root: Arc<Radical>,
}

#[derive(Clone)]
enum Repr {
    Rat(BigRational),
    Ext(Arc<Surd>),
}

/// An exact element of the active ordered field.
#[derive(Clone)]
pub struct Scalar(Repr);

impl Scalar {
    pub fn zero() -> Scalar {
        Scalar(Repr::Rat(BigRational::zero()))
    }

    pub fn one() -> Scalar {
        Scalar(Repr::Rat(BigRational::one()))
    }

    pub fn from_int(n: i64) -> Scalar {
        Scalar(Repr::Rat(BigRational::from_integer(BigInt::from(n))))
    }

    /// `p/q`; panics when `q = 0`.
    pub fn ratio(p: i64, q: i64) -> Scalar {
        assert!(q != 0, "zero denominator");
        Scalar(Repr::Rat(BigRational::new(BigInt::from(p), BigInt::from(q))))
    }

    pub fn from_rational(r: BigRational) -> Scalar {
        Scalar(Repr::Rat(r))
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.0 {
            Repr::Rat(r) => Some(r),
            Repr::Ext(_) => None,
        }
    }

    /// True when no radical is involved.
    pub fn is_rational(&self) -> bool {
        matches!(self.0, Repr::Rat(_))
    }

    fn depth(&self) -> u32 {
        match &self.0 {
            Repr::Rat(_) => 0,
            Repr::Ext(s) => s.root.depth,
        }
    }

    fn top(&self) -> Option<&Arc<Radical>> {
        match &self.0 {
            Repr::Rat(_) => None,
            Repr::Ext(s) => Some(&s.root),
        }
    }

    /// Coefficients of `self` over `root`, which must not sit below `self`'s top radical.
    fn split(&self, root: &Arc<Radical>) -> (Scalar, Scalar) {
        match &self.0 {
            Repr::Ext(s) if radical_cmp(&s.root, root) == Ordering::Equal => (s.a.clone(), s.b.clone()),
            _ => (self.clone(), Scalar::zero()),
        }
    }

    fn build(a: Scalar, b: Scalar, root: Arc<Radical>) -> Scalar {
        if b.signum() == 0 {
            a
        } else {
            Scalar(Repr::Ext(Arc::new(Surd { a, b, root })))
        }
    }

    fn higher_root<'a>(x: &'a Scalar, y: &'a Scalar) -> &'a Arc<Radical> {
        match (x.top(), y.top()) {
            (Some(p), Some(q)) => {
                if radical_cmp(p, q) == Ordering::Less {
                    q
                } else {
                    p
                }
            }
            (Some(p), None) => p,
            (None, Some(q)) => q,
            (None, None) => unreachable!("both operands rational"),
        }
    }

    /// Exact sign: -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        match &self.0 {
            Repr::Rat(r) => sign_of_rat(r),
            Repr::Ext(s) => {
                let sa = s.a.signum();
                let sb = s.b.signum();
                if sa == 0 {
                    return sb;
                }
                if sb == 0 || sa == sb {
                    return sa;
                }
                // a and b*sqrt(d) have opposite signs: compare a^2 with b^2 d.
                let norm = &(&s.a * &s.a) - &(&(&s.b * &s.b) * &s.root.radicand);
                sa * norm.signum()
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.signum() == 0
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> Scalar {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn square(&self) -> Scalar {
        self * self
    }

    /// Multiplicative inverse.
    pub fn recip(&self) -> Result<Scalar> {
        match &self.0 {
            Repr::Rat(r) => {
                if r.is_zero() {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(Scalar(Repr::Rat(r.recip())))
                }
            }
            Repr::Ext(s) => {
                let norm = &(&s.a * &s.a) - &(&(&s.b * &s.b) * &s.root.radicand);
                if norm.is_zero() {
                    // sqrt(d) = |a/b| lives below the root, so self is 0 or 2a.
                    if self.is_zero() {
                        return Err(Error::DivisionByZero);
                    }
                    return (&s.a + &s.a).recip();
                }
                let inv = norm.recip()?;
                let a = &s.a * &inv;
                let b = -&(&s.b * &inv);
                Ok(Scalar::build(a, b, s.root.clone()))
            }
        }
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar> {
        Ok(self * &rhs.recip()?)
    }

    pub fn compare(&self, rhs: &Scalar) -> Ordering {
        self.cmp(rhs)
    }

    pub fn min(self, other: Scalar) -> Scalar {
        if other < self {
            other
        } else {
            self
        }
    }

    pub fn max(self, other: Scalar) -> Scalar {
        if other > self {
            other
        } else {
            self
        }
    }

    /// The nonnegative square root.
    pub fn sqrt(&self, mode: FieldMode) -> Result<Scalar> {
        if self.is_negative() {
            return Err(Error::NegativeInput);
        }
        if let Some(r) = self.sqrt_in_place() {
            return Ok(r);
        }
        match mode {
            FieldMode::Rational => Err(Error::NotEuclidean(self.to_string())),
            FieldMode::Euclidean => Ok(self.sqrt_adjoin()),
        }
    }

    /// A square root that needs no new radical, when one is found.
    fn sqrt_in_place(&self) -> Option<Scalar> {
        match &self.0 {
            Repr::Rat(r) => rational_sqrt(r).map(|q| Scalar(Repr::Rat(q))),
            Repr::Ext(_) => None,
        }
    }

    fn sqrt_adjoin(&self) -> Scalar {
        if self.is_zero() {
            return Scalar::zero();
        }
        match &self.0 {
            Repr::Rat(r) => {
                let (outside, inside) = split_square(r);
                let root = Radical::new(Scalar(Repr::Rat(BigRational::from_integer(inside))));
                Scalar::build(Scalar::zero(), Scalar(Repr::Rat(outside)), root)
            }
            Repr::Ext(s) => {
                if let Some(r) = self.denest(s) {
                    return r;
                }
                Scalar::build(Scalar::zero(), Scalar::one(), Radical::new(self.clone()))
            }
        }
    }

    /// sqrt(a + b sqrt d) = sqrt((a+n)/2) + sign(b) sqrt((a-n)/2) when a^2 - b^2 d = n^2
    /// for some n already available below the root.
    fn denest(&self, s: &Surd) -> Option<Scalar> {
        let norm = &(&s.a * &s.a) - &(&(&s.b * &s.b) * &s.root.radicand);
        if norm.is_negative() {
            return None;
        }
        let n = norm.sqrt_in_place().or_else(|| norm.denest_lower())?;
        let half = Scalar::ratio(1, 2);
        let hi = &(&s.a + &n) * &half;
        let lo = &(&s.a - &n) * &half;
        if hi.is_negative() || lo.is_negative() {
            return None;
        }
        let p = hi.sqrt_adjoin();
        let q = lo.sqrt_adjoin();
        let r = if s.b.is_negative() { &p - &q } else { &p + &q };
        if (&r * &r) == *self {
            Some(r.abs())
        } else {
            None
        }
    }

    fn denest_lower(&self) -> Option<Scalar> {
        match &self.0 {
            Repr::Rat(_) => None,
            Repr::Ext(s) => self.denest(s),
        }
    }

    /// Integer power with nonnegative exponent.
    pub fn pow(&self, e: u32) -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Parse a literal in the euclidean grammar.
    pub fn parse(src: &str) -> Result<Scalar> {
        Parser::new(src).parse_all(FieldMode::Euclidean)
    }

    /// Parse a literal, refusing `sqrt` in rational mode.
    pub fn parse_in(src: &str, mode: FieldMode) -> Result<Scalar> {
        Parser::new(src).parse_all(mode)
    }
}

fn sign_of_rat(r: &BigRational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

fn bigint_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    let n = bigint_sqrt_exact(r.numer())?;
    let d = bigint_sqrt_exact(r.denom())?;
    Some(BigRational::new(n, d))
}

/// Write a positive rational as `outside * sqrt(inside)` with `inside` an integer
/// stripped of its small square factors.
fn split_square(r: &BigRational) -> (BigRational, BigInt) {
    let den = r.denom().clone();
    let mut m = r.numer() * &den;
    let mut outside = BigInt::one();
    let mut p: u32 = 2;
    while p < 2000 {
        let pp = BigInt::from(p * p);
        while (&m % &pp).is_zero() {
            m /= &pp;
            outside *= p;
        }
        if BigInt::from(p) * BigInt::from(p) > m {
            break;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if let Some(s) = bigint_sqrt_exact(&m) {
        outside *= s;
        m = BigInt::one();
    }
    (BigRational::new(outside, den), m)
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Scalar) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Scalar {}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Scalar) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Scalar) -> Ordering {
        if let (Repr::Rat(a), Repr::Rat(b)) = (&self.0, &other.0) {
            return a.cmp(b);
        }
        (self - other).signum().cmp(&0)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        if let (Repr::Rat(a), Repr::Rat(b)) = (&self.0, &rhs.0) {
            return Scalar(Repr::Rat(a + b));
        }
        let root = Scalar::higher_root(self, rhs).clone();
        let (a1, b1) = self.split(&root);
        let (a2, b2) = rhs.split(&root);
        Scalar::build(&a1 + &a2, &b1 + &b2, root)
    }
}

impl<'a> Neg for &'a Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match &self.0 {
            Repr::Rat(r) => Scalar(Repr::Rat(-r)),
            Repr::Ext(s) => Scalar(Repr::Ext(Arc::new(Surd { a: -&s.a, b: -&s.b, root: s.root.clone() }))),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        if let (Repr::Rat(a), Repr::Rat(b)) = (&self.0, &rhs.0) {
            return Scalar(Repr::Rat(a - b));
        }
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if let (Repr::Rat(a), Repr::Rat(b)) = (&self.0, &rhs.0) {
            return Scalar(Repr::Rat(a * b));
        }
        let root = Scalar::higher_root(self, rhs).clone();
        let (a1, b1) = self.split(&root);
        let (a2, b2) = rhs.split(&root);
        let a = &(&a1 * &a2) + &(&(&b1 * &b2) * &root.radicand);
        let b = &(&a1 * &b2) + &(&a2 * &b1);
        Scalar::build(a, b, root)
    }
}

/// Panics on division by zero; use [`Scalar::checked_div`] for a `Result`.
impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self.checked_div(rhs).expect("division by zero")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Scalar {
        Scalar::from_int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Scalar {
        Scalar(Repr::Rat(r))
    }
}

impl Default for Scalar {
    fn default() -> Scalar {
        Scalar::zero()
    }
}

fn write_rat(f: &mut fmt::Formatter<'_>, r: &BigRational) -> fmt::Result {
    if r.is_integer() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Rat(r) => write_rat(f, r),
            Repr::Ext(s) => {
                let has_a = !(s.a.is_rational() && s.a.is_zero());
                if has_a {
                    write!(f, "{}", s.a)?;
                }
                let key = &s.root.key;
                match &s.b.0 {
                    Repr::Rat(b) => {
                        let neg = b.is_negative();
                        let mag = b.abs();
                        match (has_a, neg) {
                            (true, true) => f.write_str(" - ")?,
                            (true, false) => f.write_str(" + ")?,
                            (false, true) => f.write_str("-")?,
                            (false, false) => {}
                        }
                        if !mag.is_one() {
                            write_rat(f, &mag)?;
                            f.write_str("*")?;
                        }
                        write!(f, "sqrt({key})")
                    }
                    Repr::Ext(_) => {
                        if has_a {
                            f.write_str(" + ")?;
                        }
                        write!(f, "({})*sqrt({key})", s.b)
                    }
                }
            }
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Scalar {
    type Err = Error;
    fn from_str(s: &str) -> Result<Scalar> {
        Scalar::parse(s)
    }
}

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Scalar, D::Error> {
        struct V;
        impl<'de> serde::de::Visitor<'de> for V {
            type Value = Scalar;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an exact scalar literal (integer, \"p/q\" or \"sqrt(...)\" expression)")
            }
            fn visit_str<E: serde::de::Error>(self, v: &str) -> std::result::Result<Scalar, E> {
                Scalar::parse(v).map_err(E::custom)
            }
            fn visit_i64<E: serde::de::Error>(self, v: i64) -> std::result::Result<Scalar, E> {
                Ok(Scalar::from_int(v))
            }
            fn visit_u64<E: serde::de::Error>(self, v: u64) -> std::result::Result<Scalar, E> {
                Ok(Scalar(Repr::Rat(BigRational::from_integer(BigInt::from(v)))))
            }
            fn visit_f64<E: serde::de::Error>(self, v: f64) -> std::result::Result<Scalar, E> {
                Err(E::custom(format!("decimal number {v} is not an exact literal")))
            }
        }
        d.deserialize_any(V)
    }
}

struct Parser<'s> {
    src: &'s str,
    bytes: &'s [u8],
    pos: usize,
    mode: FieldMode,
}

impl<'s> Parser<'s> {
    fn new(src: &'s str) -> Parser<'s> {
        Parser { src, bytes: src.as_bytes(), pos: 0, mode: FieldMode::Euclidean }
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {} in {:?}", self.pos, self.src))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn parse_all(mut self, mode: FieldMode) -> Result<Scalar> {
        self.mode = mode;
        if self.src.contains('.') {
            return Err(Error::Parse(format!("decimal literal {:?} is not exact", self.src)));
        }
        let v = self.expr()?;
        if self.peek().is_some() {
            return Err(self.err("unexpected trailing input"));
        }
        Ok(v)
    }

    fn expr(&mut self) -> Result<Scalar> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Scalar> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let d = self.factor()?;
                    acc = acc.checked_div(&d).map_err(|_| self.err("division by zero"))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Scalar> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.factor()?)
            }
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(b')')?;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let n: BigInt = self.src[start..self.pos].parse().map_err(|_| self.err("bad integer"))?;
                Ok(Scalar(Repr::Rat(BigRational::from_integer(n))))
            }
            Some(b's') if self.src[self.pos..].starts_with("sqrt") => {
                if self.mode == FieldMode::Rational {
                    return Err(self.err("sqrt literal not allowed in rational mode"));
                }
                self.pos += 4;
                self.expect(b'(')?;
                let v = self.expr()?;
                self.expect(b')')?;
                v.sqrt(FieldMode::Euclidean).map_err(|_| self.err("sqrt of a negative literal"))
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of literal")),
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }
}
