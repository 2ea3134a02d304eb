use std::fmt::Debug;

use crate::scalar::Scalar;
use crate::space::{FormalBall, Point, Space};

/// How a ball sits relative to a target set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    /// The ball is contained in the set.
    Inside,
    /// The ball misses the set.
    Disjoint,
    /// Neither could be certified.
    Unknown,
}

/// A target set `S` given by oracles.
pub trait TargetSet: Send + Sync + Debug {
    fn name(&self) -> String;

    /// Declared density; lets the winner logic use "a dense set meets
    /// every ball of positive radius".
    fn is_dense(&self) -> bool;

    fn contains(&self, space: &Space, p: &Point) -> Option<bool>;

    fn relation(&self, space: &Space, ball: &FormalBall) -> Relation;
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Everything;

impl TargetSet for Everything {
    fn name(&self) -> String {
        "all".into()
    }
    fn is_dense(&self) -> bool {
        true
    }
    fn contains(&self, _: &Space, _: &Point) -> Option<bool> {
        Some(true)
    }
    fn relation(&self, _: &Space, _: &FormalBall) -> Relation {
        Relation::Inside
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Nothing;

impl TargetSet for Nothing {
    fn name(&self) -> String {
        "none".into()
    }
    fn is_dense(&self) -> bool {
        false
    }
    fn contains(&self, _: &Space, _: &Point) -> Option<bool> {
        Some(false)
    }
    fn relation(&self, _: &Space, _: &FormalBall) -> Relation {
        Relation::Disjoint
    }
}

/// Finite union of closed rational intervals on the real line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Intervals {
    parts: Vec<(Scalar, Scalar)>,
}

impl Intervals {
    /// Intervals with `lo > hi` are dropped; overlapping ones are merged so
    /// that containment of a ball can be decided piece by piece.
    pub fn new(mut parts: Vec<(Scalar, Scalar)>) -> Self {
        parts.retain(|(lo, hi)| lo <= hi);
        parts.sort();
        let mut merged: Vec<(Scalar, Scalar)> = Vec::new();
        for (lo, hi) in parts {
            match merged.last_mut() {
                Some((_, h)) if lo <= *h => {
                    if hi > *h {
                        *h = hi;
                    }
                }
                _ => merged.push((lo, hi)),
            }
        }
        Intervals { parts: merged }
    }

    pub fn parts(&self) -> &[(Scalar, Scalar)] {
        &self.parts
    }

    fn span(ball: &FormalBall) -> Option<(Scalar, Scalar)> {
        let c = ball.center.coords()?;
        if c.len() != 1 {
            return None;
        }
        Some((&c[0] - &ball.radius, &c[0] + &ball.radius))
    }
}

impl TargetSet for Intervals {
    fn name(&self) -> String {
        let parts: Vec<String> = self.parts.iter().map(|(a, b)| format!("{a}..{b}")).collect();
        format!("intervals:{}", parts.join(","))
    }

    fn is_dense(&self) -> bool {
        false
    }

    fn contains(&self, _: &Space, p: &Point) -> Option<bool> {
        let c = p.coords()?;
        if c.len() != 1 {
            return None;
        }
        Some(self.parts.iter().any(|(lo, hi)| lo <= &c[0] && &c[0] <= hi))
    }

    fn relation(&self, _: &Space, ball: &FormalBall) -> Relation {
        let Some((a, b)) = Self::span(ball) else {
            return Relation::Unknown;
        };
        if self.parts.iter().any(|(lo, hi)| lo <= &a && &b <= hi) {
            Relation::Inside
        } else if self.parts.iter().all(|(lo, hi)| hi < &a || &b < lo) {
            Relation::Disjoint
        } else {
            Relation::Unknown
        }
    }
}

/// A closed ball as a target set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BallTarget(pub FormalBall);

impl TargetSet for BallTarget {
    fn name(&self) -> String {
        format!("ball:{}", self.0)
    }
    fn is_dense(&self) -> bool {
        false
    }
    fn contains(&self, space: &Space, p: &Point) -> Option<bool> {
        space.ball_contains_point(&self.0, p).ok()
    }
    fn relation(&self, space: &Space, ball: &FormalBall) -> Relation {
        if space.ball_subset(ball, &self.0).unwrap_or(false) {
            return Relation::Inside;
        }
        match space.distance(&ball.center, &self.0.center) {
            Ok(d) if d > &ball.radius + &self.0.radius => Relation::Disjoint,
            _ => Relation::Unknown,
        }
    }
}

/// The complement `X \ B` of a closed ball.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BallComplement(pub FormalBall);

impl TargetSet for BallComplement {
    fn name(&self) -> String {
        format!("not-ball:{}", self.0)
    }
    fn is_dense(&self) -> bool {
        false
    }
    fn contains(&self, space: &Space, p: &Point) -> Option<bool> {
        space.ball_contains_point(&self.0, p).ok().map(|inside| !inside)
    }
    fn relation(&self, space: &Space, ball: &FormalBall) -> Relation {
        match BallTarget(self.0.clone()).relation(space, ball) {
            Relation::Inside => Relation::Disjoint,
            Relation::Disjoint => Relation::Inside,
            Relation::Unknown => Relation::Unknown,
        }
    }
}

/// `X \ {y}`; dense in every space here since none has isolated points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointComplement(pub Point);

impl TargetSet for PointComplement {
    fn name(&self) -> String {
        format!("not-point:{}", self.0)
    }
    fn is_dense(&self) -> bool {
        true
    }
    fn contains(&self, _: &Space, p: &Point) -> Option<bool> {
        Some(*p != self.0)
    }
    fn relation(&self, space: &Space, ball: &FormalBall) -> Relation {
        match space.ball_contains_point(ball, &self.0) {
            Ok(false) => Relation::Inside,
            _ => Relation::Unknown,
        }
    }
}

/// Binary sequences with infinitely many ones. Dense and co-dense, so no
/// ball is ever certified inside or outside.
#[derive(Debug, Clone, Copy, Default)]
pub struct InfinitelyManyOnes;

impl TargetSet for InfinitelyManyOnes {
    fn name(&self) -> String {
        "ones-infinitely".into()
    }
    fn is_dense(&self) -> bool {
        true
    }
    fn contains(&self, _: &Space, p: &Point) -> Option<bool> {
        match p {
            Point::BinarySeq(seq) => Some(seq.tail() == 1),
            _ => None,
        }
    }
    fn relation(&self, _: &Space, _: &FormalBall) -> Relation {
        Relation::Unknown
    }
}
