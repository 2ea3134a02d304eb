//! Concrete complete metric spaces with exact distances.
//!
//! Three spaces are provided:
//!
//! * `RealMax(d)`: `R^d` with the max-norm, so every distance between
//!   rational points is rational.
//! * `CantorTernary`: the middle-thirds Cantor set with the metric of `R`.
//!   Points are endpoints of construction intervals.
//! * `BinarySeq`: binary sequences with `d(s, t) = 4^{-k}`, `k` the first
//!   (0-based) index where they differ.
//!
//! Balls are closed. A [`FormalBall`] is a (center, radius) pair; the formal
//! order `(x2, r2) <=_s (x1, r1)` holds iff `r2 + d(x1, x2) <= r1`.

pub mod cantor;
mod picker;
mod point;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::scalar::Scalar;

pub use picker::disjoint_ball_picker;
pub(crate) use picker::pick_disjoint;
pub use point::{DigitSeq, Point};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpaceError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("point {point} does not belong to space {space}")]
    WrongSpace { point: String, space: String },
    #[error("radius must be positive, got {0}")]
    NonPositiveRadius(Scalar),
    #[error("invalid digit in {0}")]
    InvalidDigit(String),
    #[error("could not parse {0:?}")]
    Parse(String),
    #[error("no uniform-perfectness witness at center {center}, radius {radius}, c = {c}")]
    NoWitness {
        center: String,
        radius: Scalar,
        c: Scalar,
    },
    #[error("no disjoint ball found inside {outer}")]
    NotFound { outer: String },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpaceKind {
    RealMax(usize),
    CantorTernary,
    BinarySeq,
}

/// A metric space together with its declared uniform-perfectness constant.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Space {
    kind: SpaceKind,
    c: Scalar,
}

impl Space {
    /// `R^d` with the max-norm and declared constant `c = 1/2`.
    pub fn real(dim: usize) -> Self {
        assert!(dim >= 1, "dimension must be at least 1");
        Space {
            kind: SpaceKind::RealMax(dim),
            c: Scalar::new(1, 2),
        }
    }

    /// The Cantor ternary set with declared constant `c = 1/9`.
    pub fn cantor() -> Self {
        Space {
            kind: SpaceKind::CantorTernary,
            c: Scalar::new(1, 9),
        }
    }

    /// Binary sequences under `4^{-k}` with declared constant `c = 1/4`.
    pub fn binary() -> Self {
        Space {
            kind: SpaceKind::BinarySeq,
            c: Scalar::new(1, 4),
        }
    }

    pub fn with_constant(mut self, c: Scalar) -> Result<Self, SpaceError> {
        if !c.is_positive() || c >= Scalar::one() {
            return Err(SpaceError::InvalidParameter(format!(
                "uniform-perfectness constant must lie in (0,1), got {c}"
            )));
        }
        self.c = c;
        Ok(self)
    }

    pub fn kind(&self) -> SpaceKind {
        self.kind
    }

    /// Declared uniform-perfectness constant.
    pub fn constant(&self) -> &Scalar {
        &self.c
    }

    pub fn is_banach(&self) -> bool {
        matches!(self.kind, SpaceKind::RealMax(_))
    }

    pub fn dim(&self) -> Option<usize> {
        match self.kind {
            SpaceKind::RealMax(d) => Some(d),
            _ => None,
        }
    }

    /// A distinguished base point: the origin, `0` or `000...`.
    pub fn origin(&self) -> Point {
        match self.kind {
            SpaceKind::RealMax(d) => Point::Euclidean(vec![Scalar::zero(); d]),
            SpaceKind::CantorTernary => Point::Cantor(DigitSeq::constant(0)),
            SpaceKind::BinarySeq => Point::BinarySeq(DigitSeq::constant(0)),
        }
    }

    pub fn check_point(&self, p: &Point) -> Result<(), SpaceError> {
        match (self.kind, p) {
            (SpaceKind::RealMax(d), Point::Euclidean(c)) if c.len() == d => Ok(()),
            (SpaceKind::RealMax(d), Point::Euclidean(c)) => Err(SpaceError::DimensionMismatch {
                expected: d,
                got: c.len(),
            }),
            (SpaceKind::CantorTernary, Point::Cantor(_))
            | (SpaceKind::BinarySeq, Point::BinarySeq(_)) => Ok(()),
            _ => Err(SpaceError::WrongSpace {
                point: p.to_string(),
                space: self.to_string(),
            }),
        }
    }

    pub fn check_ball(&self, b: &FormalBall) -> Result<(), SpaceError> {
        self.check_point(&b.center)
    }

    /// Exact distance `d(p, q)`.
    pub fn distance(&self, p: &Point, q: &Point) -> Result<Scalar, SpaceError> {
        self.check_point(p)?;
        self.check_point(q)?;
        Ok(match (p, q) {
            (Point::Euclidean(a), Point::Euclidean(b)) => a
                .iter()
                .zip(b)
                .map(|(x, y)| (x - y).abs())
                .fold(Scalar::zero(), Scalar::max),
            (Point::Cantor(a), Point::Cantor(b)) => {
                (point::cantor_value(a) - point::cantor_value(b)).abs()
            }
            (Point::BinarySeq(a), Point::BinarySeq(b)) => match a.first_difference(b) {
                Some(k) => quarter_pow(k),
                None => Scalar::zero(),
            },
            _ => unreachable!("checked above"),
        })
    }

    /// `b2 <=_s b1`, i.e. `r2 + d(x1, x2) <= r1`.
    pub fn formal_leq(&self, b2: &FormalBall, b1: &FormalBall) -> Result<bool, SpaceError> {
        let d = self.distance(&b1.center, &b2.center)?;
        Ok(&b2.radius + d <= b1.radius)
    }

    pub fn ball_contains_point(&self, ball: &FormalBall, p: &Point) -> Result<bool, SpaceError> {
        Ok(self.distance(&ball.center, p)? <= ball.radius)
    }

    /// Set containment `B(inner) ⊂ B(outer)`.
    ///
    /// RealMax compares boxes coordinate by coordinate. CantorTernary
    /// compares the extreme points of the trace of `inner` on the Cantor set.
    /// BinarySeq compares prefix cylinders.
    pub fn ball_subset(&self, inner: &FormalBall, outer: &FormalBall) -> Result<bool, SpaceError> {
        self.check_ball(inner)?;
        self.check_ball(outer)?;
        Ok(match (&inner.center, &outer.center) {
            (Point::Euclidean(a), Point::Euclidean(b)) => a.iter().zip(b).all(|(x, y)| {
                x - &inner.radius >= y - &outer.radius && x + &inner.radius <= y + &outer.radius
            }),
            (Point::Cantor(a), Point::Cantor(b)) => {
                let x = point::cantor_value(a);
                let y = point::cantor_value(b);
                // x is in the Cantor set, so both extremes exist
                let lo = cantor::min_at_or_above(&(&x - &inner.radius)).expect("center in set");
                let hi = cantor::max_at_or_below(&(&x + &inner.radius)).expect("center in set");
                lo >= &y - &outer.radius && hi <= &y + &outer.radius
            }
            (Point::BinarySeq(a), Point::BinarySeq(b)) => {
                let m_inner = cylinder_depth(&inner.radius);
                let m_outer = cylinder_depth(&outer.radius);
                m_inner >= m_outer && a.first_difference(b).is_none_or(|k| k >= m_outer)
            }
            _ => unreachable!("checked above"),
        })
    }

    /// A point `p` with `c·ρ < d(x, p) <= ρ`.
    ///
    /// RealMax returns `x + ρ e1`. CantorTernary returns the endpoint of the
    /// level-`k` construction interval around `x` farther from `x`, where
    /// `3^{-k} <= ρ < 3^{-k+1}`. BinarySeq flips digit `m` with
    /// `4^{-m} <= ρ < 4^{-m+1}`.
    pub fn uniform_perfect_witness(
        &self,
        x: &Point,
        rho: &Scalar,
        c: &Scalar,
    ) -> Result<Point, SpaceError> {
        self.check_point(x)?;
        if !rho.is_positive() {
            return Err(SpaceError::NonPositiveRadius(rho.clone()));
        }
        let candidates: Vec<Point> = match x {
            Point::Euclidean(coords) => {
                let mut p = coords.clone();
                p[0] = &p[0] + rho;
                vec![Point::Euclidean(p)]
            }
            Point::Cantor(seq) => {
                let k = third_level(rho);
                let mut out = Vec::new();
                for level in [k, k + 1, k + 2] {
                    out.push(Point::Cantor(seq.truncate_with_tail(level, 0)));
                    out.push(Point::Cantor(seq.truncate_with_tail(level, 2)));
                }
                // farther endpoint of the level-k interval first
                let d0 = self.distance(x, &out[0])?;
                let d1 = self.distance(x, &out[1])?;
                if d0 < d1 {
                    out.swap(0, 1);
                }
                out
            }
            Point::BinarySeq(seq) => {
                let m = cylinder_depth(rho);
                vec![Point::BinarySeq(seq.with_digit(m, 1 - seq.digit(m)))]
            }
        };
        let lower = c * rho;
        for p in candidates {
            let d = self.distance(x, &p)?;
            if d > lower && &d <= rho {
                return Ok(p);
            }
        }
        Err(SpaceError::NoWitness {
            center: x.to_string(),
            radius: rho.clone(),
            c: c.clone(),
        })
    }
}

/// `4^{-k}`.
pub(crate) fn quarter_pow(k: usize) -> Scalar {
    Scalar::new(1, 4).pow(k as u32)
}

/// Smallest `m >= 0` with `4^{-m} <= ρ`; balls of radius `ρ` in `BinarySeq`
/// are the cylinders fixing the first `m` digits.
pub(crate) fn cylinder_depth(rho: &Scalar) -> usize {
    let mut m = 0;
    while quarter_pow(m) > *rho {
        m += 1;
    }
    m
}

/// Smallest `k >= 0` with `3^{-k} <= ρ`.
fn third_level(rho: &Scalar) -> usize {
    let third = Scalar::new(1, 3);
    let mut k = 0;
    while third.pow(k as u32) > *rho {
        k += 1;
    }
    k
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            SpaceKind::RealMax(d) => write!(f, "real:{d}"),
            SpaceKind::CantorTernary => write!(f, "cantor"),
            SpaceKind::BinarySeq => write!(f, "binary"),
        }
    }
}

impl FromStr for Space {
    type Err = SpaceError;

    /// `real:<d>`, `cantor` or `binary`, optionally followed by `;c=<p/q>`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (base, c) = match s.split_once(";c=") {
            Some((b, c)) => (b, Some(c)),
            None => (s, None),
        };
        let space = match base {
            "cantor" => Space::cantor(),
            "binary" => Space::binary(),
            "real" => Space::real(1),
            other => {
                let d = other
                    .strip_prefix("real:")
                    .and_then(|d| d.parse::<usize>().ok())
                    .filter(|&d| d >= 1)
                    .ok_or_else(|| SpaceError::Parse(s.to_string()))?;
                Space::real(d)
            }
        };
        match c {
            Some(c) => {
                let c = c.parse().map_err(|_| SpaceError::Parse(s.to_string()))?;
                space.with_constant(c)
            }
            None => Ok(space),
        }
    }
}

/// An element `(center, radius)` of `X × R_+`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FormalBall {
    pub center: Point,
    pub radius: Scalar,
}

impl FormalBall {
    pub fn new(center: Point, radius: Scalar) -> Result<Self, SpaceError> {
        if !radius.is_positive() {
            return Err(SpaceError::NonPositiveRadius(radius));
        }
        Ok(FormalBall { center, radius })
    }

    pub fn diameter_bound(&self) -> Scalar {
        &self.radius * Scalar::from_int(2)
    }
}

impl fmt::Display for FormalBall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.center, self.radius)
    }
}

impl fmt::Debug for FormalBall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for FormalBall {
    type Err = SpaceError;

    /// `<center>@<radius>`, e.g. `1/2@1/4` or `b:01|0@1/16`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (c, r) = s
            .trim()
            .rsplit_once('@')
            .ok_or_else(|| SpaceError::Parse(s.to_string()))?;
        let radius: Scalar = r.parse().map_err(|_| SpaceError::Parse(s.to_string()))?;
        FormalBall::new(c.parse()?, radius)
    }
}

impl Serialize for FormalBall {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FormalBall {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Unchecked constructor for radii already known to be positive.
pub(crate) fn ball(center: Point, radius: Scalar) -> FormalBall {
    debug_assert!(radius.is_positive());
    FormalBall { center, radius }
}

/// `x + t·v` in `R^d`.
pub(crate) fn translate(x: &Point, v: &[Scalar], t: &Scalar) -> Point {
    match x {
        Point::Euclidean(c) => Point::Euclidean(c.iter().zip(v).map(|(a, b)| a + t * b).collect()),
        _ => panic!("translate needs a Euclidean point"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    fn r(x: Scalar) -> Point {
        Point::real(x)
    }

    fn fb(s: &str) -> FormalBall {
        s.parse().unwrap()
    }

    #[test]
    fn distance_examples() {
        let s = Space::real(1);
        assert_eq!(s.distance(&r(q(1, 2)), &r(q(1, 4))).unwrap(), q(1, 4));
        let b = Space::binary();
        let p = Point::binary(&[0], 1).unwrap();
        let p2 = Point::binary(&[0, 1, 0], 1).unwrap();
        assert_eq!(b.distance(&p, &p2).unwrap(), q(1, 16));
        assert_eq!(b.distance(&p, &p).unwrap(), Scalar::zero());
        let c = Space::cantor();
        let x: Point = "c:02".parse().unwrap();
        assert_eq!(c.distance(&x, &x).unwrap(), Scalar::zero());
    }

    #[test]
    fn dimension_mismatch() {
        let s = Space::real(2);
        let err = s.distance(&r(q(0, 1)), &Point::vector(vec![q(0, 1), q(0, 1)]));
        assert!(matches!(err, Err(SpaceError::DimensionMismatch { expected: 2, got: 1 })));
        assert!(matches!(
            Space::cantor().distance(&r(q(0, 1)), &"c:0".parse().unwrap()),
            Err(SpaceError::WrongSpace { .. })
        ));
    }

    #[test]
    fn formal_order_examples() {
        let s = Space::real(1);
        assert!(s.formal_leq(&fb("1/2@1/2"), &fb("0@1")).unwrap());
        assert!(!s.formal_leq(&fb("1/2@3/4"), &fb("0@1")).unwrap());
        assert!(s.formal_leq(&fb("0@1"), &fb("0@1")).unwrap());
    }

    #[test]
    fn containment_examples() {
        let s = Space::real(1);
        assert!(s.ball_contains_point(&fb("0@1"), &r(q(1, 1))).unwrap());
        assert!(!s.ball_contains_point(&fb("0@1/4"), &r(q(1, 2))).unwrap());
        let c = Space::cantor();
        let two_thirds: Point = "c:2".parse().unwrap();
        assert!(!c.ball_contains_point(&fb("c:0@1/3"), &two_thirds).unwrap());
        assert_eq!(c.distance(&"c:0".parse().unwrap(), &two_thirds).unwrap(), q(2, 3));
    }

    #[test]
    fn subset_examples() {
        let s = Space::real(1);
        assert!(s.ball_subset(&fb("1/2@1/2"), &fb("0@1")).unwrap());
        assert!(!s.ball_subset(&fb("1/2@3/4"), &fb("0@1")).unwrap());
        // trace of [-1/2, 1/2] on the Cantor set is C ∩ [0, 1/3]
        let c = Space::cantor();
        assert!(c.ball_subset(&fb("c:0@1/2"), &fb("c:0@1/3")).unwrap());
        assert!(!c.formal_leq(&fb("c:0@1/2"), &fb("c:0@1/3")).unwrap());
        let b = Space::binary();
        assert!(b.ball_subset(&fb("b:01|0@1/16"), &fb("b:0|1@1/4")).unwrap());
        assert!(!b.ball_subset(&fb("b:1|0@1/16"), &fb("b:0|1@1/4")).unwrap());
    }

    #[test]
    fn witness_examples() {
        let s = Space::real(1);
        let p = s.uniform_perfect_witness(&r(q(0, 1)), &q(1, 1), &q(1, 2)).unwrap();
        assert_eq!(p, r(q(1, 1)));

        let c = Space::cantor();
        let zero: Point = "c:0".parse().unwrap();
        let p = c.uniform_perfect_witness(&zero, &q(1, 3), &q(1, 9)).unwrap();
        let d = c.distance(&zero, &p).unwrap();
        assert!(d > q(1, 27) && d <= q(1, 3));

        let b = Space::binary();
        let zero = Point::binary(&[], 0).unwrap();
        let p = b.uniform_perfect_witness(&zero, &q(1, 4), &q(1, 4)).unwrap();
        assert_eq!(p, Point::binary(&[0, 1], 0).unwrap());
        assert_eq!(b.distance(&zero, &p).unwrap(), q(1, 4));
    }

    #[test]
    fn witness_reports_violated_constant() {
        // c = 3/4 fails on BinarySeq at radius 1/5: the only distance in
        // (3/20, 1/5] would have to be a power of 1/4
        let b = Space::binary();
        let zero = Point::binary(&[], 0).unwrap();
        assert!(matches!(
            b.uniform_perfect_witness(&zero, &q(1, 5), &q(3, 4)),
            Err(SpaceError::NoWitness { .. })
        ));
    }

    #[test]
    fn zero_radius_rejected() {
        assert!(matches!(
            FormalBall::new(r(q(0, 1)), Scalar::zero()),
            Err(SpaceError::NonPositiveRadius(_))
        ));
        assert!("0@0".parse::<FormalBall>().is_err());
    }

    #[test]
    fn space_text() {
        for s in ["real:1", "real:3", "cantor", "binary"] {
            assert_eq!(s.parse::<Space>().unwrap().to_string(), s);
        }
        let s: Space = "cantor;c=1/10".parse().unwrap();
        assert_eq!(s.constant(), &q(1, 10));
        assert!("real:0".parse::<Space>().is_err());
    }
}
