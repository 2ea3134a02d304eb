use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::scalar::Scalar;
use crate::space::SpaceError;

/// An infinite digit sequence with finite description: `prefix` followed by
/// `tail` repeated forever.
///
/// Kept canonical: the prefix never ends with the tail digit, so structural
/// equality is equality of sequences.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DigitSeq {
    prefix: Vec<u8>,
    tail: u8,
}

impl DigitSeq {
    pub fn new(mut prefix: Vec<u8>, tail: u8) -> Self {
        while prefix.last() == Some(&tail) {
            prefix.pop();
        }
        DigitSeq { prefix, tail }
    }

    pub fn constant(tail: u8) -> Self {
        DigitSeq { prefix: Vec::new(), tail }
    }

    pub fn prefix(&self) -> &[u8] {
        &self.prefix
    }

    pub fn tail(&self) -> u8 {
        self.tail
    }

    pub fn digit(&self, i: usize) -> u8 {
        self.prefix.get(i).copied().unwrap_or(self.tail)
    }

    /// First `k` digits followed by `tail` forever.
    pub fn truncate_with_tail(&self, k: usize, tail: u8) -> Self {
        let prefix = (0..k).map(|i| self.digit(i)).collect();
        DigitSeq::new(prefix, tail)
    }

    /// Same sequence with digit `i` replaced by `value`.
    pub fn with_digit(&self, i: usize, value: u8) -> Self {
        let mut prefix: Vec<u8> = (0..=i.max(self.prefix.len().saturating_sub(1)))
            .map(|j| self.digit(j))
            .collect();
        if prefix.len() <= i {
            prefix.resize(i + 1, self.tail);
        }
        prefix[i] = value;
        DigitSeq::new(prefix, self.tail)
    }

    /// Index of the first position where the sequences differ.
    pub fn first_difference(&self, other: &DigitSeq) -> Option<usize> {
        let n = self.prefix.len().max(other.prefix.len());
        (0..n)
            .find(|&i| self.digit(i) != other.digit(i))
            .or(if self.tail != other.tail { Some(n) } else { None })
    }

    fn check_alphabet(&self, allowed: &[u8]) -> bool {
        allowed.contains(&self.tail) && self.prefix.iter().all(|d| allowed.contains(d))
    }

    fn digits_str(&self) -> String {
        self.prefix.iter().map(|d| char::from(b'0' + d)).collect()
    }

    fn parse(body: &str, allowed: &[u8], default_tail: Option<u8>) -> Result<Self, SpaceError> {
        let bad = || SpaceError::Parse(body.to_string());
        let (digits, tail) = match body.split_once('|') {
            Some((d, t)) => (d, t),
            None => (body, ""),
        };
        let prefix = digits
            .chars()
            .map(|c| c.to_digit(10).map(|d| d as u8).ok_or_else(bad))
            .collect::<Result<Vec<u8>, _>>()?;
        let tail = if tail.is_empty() {
            default_tail.ok_or_else(bad)?
        } else {
            let t: u8 = tail.parse().map_err(|_| bad())?;
            t
        };
        let seq = DigitSeq::new(prefix, tail);
        if !seq.check_alphabet(allowed) {
            return Err(SpaceError::InvalidDigit(body.to_string()));
        }
        Ok(seq)
    }
}

impl fmt::Debug for DigitSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", self.digits_str(), self.tail)
    }
}

/// A point of one of the concrete spaces.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Point {
    /// Rational vector in `R^d` (max-norm).
    Euclidean(Vec<Scalar>),
    /// Point of the middle-thirds Cantor set given by ternary digits in
    /// `{0, 2}`; tail `0` is a left endpoint, tail `2` a right endpoint of a
    /// construction interval.
    Cantor(DigitSeq),
    /// Binary sequence `prefix` then `tail` repeated.
    BinarySeq(DigitSeq),
}

impl Point {
    pub fn real(x: Scalar) -> Self {
        Point::Euclidean(vec![x])
    }

    pub fn vector(coords: Vec<Scalar>) -> Self {
        Point::Euclidean(coords)
    }

    /// Cantor point from digits over `{0,2}` with trailing zeros.
    pub fn cantor(digits: &[u8]) -> Result<Self, SpaceError> {
        Self::cantor_with_tail(digits, 0)
    }

    pub fn cantor_with_tail(digits: &[u8], tail: u8) -> Result<Self, SpaceError> {
        let seq = DigitSeq::new(digits.to_vec(), tail);
        if !seq.check_alphabet(&[0, 2]) {
            return Err(SpaceError::InvalidDigit(format!("{seq:?}")));
        }
        Ok(Point::Cantor(seq))
    }

    pub fn binary(prefix: &[u8], tail: u8) -> Result<Self, SpaceError> {
        let seq = DigitSeq::new(prefix.to_vec(), tail);
        if !seq.check_alphabet(&[0, 1]) {
            return Err(SpaceError::InvalidDigit(format!("{seq:?}")));
        }
        Ok(Point::BinarySeq(seq))
    }

    pub fn coords(&self) -> Option<&[Scalar]> {
        match self {
            Point::Euclidean(c) => Some(c),
            _ => None,
        }
    }

    pub fn digits(&self) -> Option<&DigitSeq> {
        match self {
            Point::Cantor(s) | Point::BinarySeq(s) => Some(s),
            Point::Euclidean(_) => None,
        }
    }

    /// Exact real value of a Cantor point.
    pub fn cantor_value(&self) -> Option<Scalar> {
        match self {
            Point::Cantor(seq) => Some(cantor_value(seq)),
            _ => None,
        }
    }
}

pub(crate) fn cantor_value(seq: &DigitSeq) -> Scalar {
    let third = Scalar::new(1, 3);
    let mut value = Scalar::zero();
    let mut weight = third.clone();
    for &d in seq.prefix() {
        if d == 2 {
            value = value + &weight * Scalar::from_int(2);
        }
        weight = &weight * &third;
    }
    if seq.tail() == 2 {
        // 0.222... from position k+1 sums to 3^{-k}
        value = value + weight * Scalar::from_int(3);
    }
    value
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Euclidean(c) if c.len() == 1 => write!(f, "{}", c[0]),
            Point::Euclidean(c) => {
                write!(f, "(")?;
                for (i, x) in c.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
            Point::Cantor(seq) => {
                let digits = seq.digits_str();
                match (digits.is_empty(), seq.tail()) {
                    (true, 0) => write!(f, "c:0"),
                    (_, 0) => write!(f, "c:{digits}"),
                    (_, t) => write!(f, "c:{digits}|{t}"),
                }
            }
            Point::BinarySeq(seq) => write!(f, "b:{}|{}", seq.digits_str(), seq.tail()),
        }
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Point {
    type Err = SpaceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Some(body) = s.strip_prefix("c:") {
            return Ok(Point::Cantor(DigitSeq::parse(body, &[0, 2], Some(0))?));
        }
        if let Some(body) = s.strip_prefix("b:") {
            return Ok(Point::BinarySeq(DigitSeq::parse(body, &[0, 1], None)?));
        }
        let inner = s
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .unwrap_or(s);
        let coords = inner
            .split(',')
            .map(|c| c.parse::<Scalar>().map_err(|_| SpaceError::Parse(s.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Point::Euclidean(coords))
    }
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Point {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
