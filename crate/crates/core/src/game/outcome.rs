use crate::game::target::{Relation, TargetSet};
use crate::game::transcript::Transcript;
use crate::game::variant::{GameVariant, Role};
use crate::scalar::Scalar;
use crate::space::FormalBall;

/// `ρ∞ = lim ρ_n`, exact when the schedule is known to be geometric.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LimitRadius {
    Exact(Scalar),
    Bracket { lower: Scalar, upper: Scalar },
}

impl LimitRadius {
    pub fn upper(&self) -> &Scalar {
        match self {
            LimitRadius::Exact(r) => r,
            LimitRadius::Bracket { upper, .. } => upper,
        }
    }

    pub fn is_exactly_positive(&self) -> bool {
        matches!(self, LimitRadius::Exact(r) if r.is_positive())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Winner {
    Alice,
    Bob,
    UndecidedAtHorizon,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    /// A ball containing `I(ω)`.
    pub enclosure: FormalBall,
    pub limit_radius: LimitRadius,
    pub shrinking: bool,
    pub relation: Relation,
    pub winner: Winner,
}

/// Radii at or below this count as shrunk when the schedule is not exact.
pub fn default_tolerance() -> Scalar {
    Scalar::new(1, 1 << 20)
}

pub fn outcome(t: &Transcript, target: &dyn TargetSet) -> Outcome {
    outcome_with_tolerance(t, target, &default_tolerance())
}

/// Outcome at the horizon.
///
/// The winner is only decided from certified relations: Alice if the
/// enclosure lies in the target, Bob if it misses it, Alice again if the
/// target is dense and `ρ∞ > 0` exactly; otherwise undecided.
pub fn outcome_with_tolerance(t: &Transcript, target: &dyn TargetSet, tolerance: &Scalar) -> Outcome {
    let enclosure = t.enclosure().clone();
    let limit_radius = limit_radius(t);
    let shrinking = match &limit_radius {
        LimitRadius::Exact(r) => r.is_zero(),
        LimitRadius::Bracket { upper, .. } => upper <= tolerance,
    };
    let relation = target.relation(t.space(), &enclosure);
    let winner = match relation {
        Relation::Inside => Winner::Alice,
        Relation::Disjoint => Winner::Bob,
        Relation::Unknown if target.is_dense() && limit_radius.is_exactly_positive() => Winner::Alice,
        Relation::Unknown => Winner::UndecidedAtHorizon,
    };
    Outcome {
        enclosure,
        limit_radius,
        shrinking,
        relation,
        winner,
    }
}

/// Exact limit for Schmidt games, and for the others when both strategies
/// declared a fixed ratio and the transcript follows it; `[0, ρ_last]`
/// otherwise.
fn limit_radius(t: &Transcript) -> LimitRadius {
    let last = t.enclosure().radius.clone();
    let bracket = LimitRadius::Bracket {
        lower: Scalar::zero(),
        upper: last.clone(),
    };
    let moves = t.moves();
    let follows = |role: Role, ratio: &Scalar, step: usize| {
        (step..moves.len())
            .filter(|&i| Role::of_index(i + 1) == role)
            .all(|i| moves[i].ball().radius == ratio * &moves[i - step].ball().radius)
    };
    let product = match t.variant() {
        GameVariant::Schmidt { .. } => return LimitRadius::Exact(Scalar::zero()),
        GameVariant::Strong { .. } => match (&t.alice_ratio, &t.bob_ratio) {
            (Some(a), Some(b)) if follows(Role::Alice, a, 1) && follows(Role::Bob, b, 1) => a * b,
            _ => return bracket,
        },
        GameVariant::Absolute { .. } => match &t.bob_ratio {
            Some(b) if follows(Role::Bob, b, 2) => b.clone(),
            _ => return bracket,
        },
    };
    if product < Scalar::one() {
        LimitRadius::Exact(Scalar::zero())
    } else if product == Scalar::one() {
        LimitRadius::Exact(last)
    } else {
        bracket
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::target::{BallComplement, Everything, PointComplement};
    use crate::game::{run_game, Game};
    use crate::scalar::q;
    use crate::space::{Point, Space};
    use crate::strategy::{CopyBall, MinRadius, RandomLegal};

    fn fb(s: &str) -> FormalBall {
        s.parse().unwrap()
    }

    #[test]
    fn schmidt_last_radius() {
        let g = Game::new(GameVariant::schmidt(q(1, 2), q(1, 2)), Space::real(1)).unwrap();
        for k in 1..5 {
            let t = run_game(&g, &MinRadius::new(Role::Alice), &MinRadius::new(Role::Bob), fb("0@1"), 2 * k).unwrap();
            let o = outcome(&t, &Everything);
            assert_eq!(o.enclosure.radius, q(1, 4).pow(k as u32));
            assert_eq!(o.limit_radius, LimitRadius::Exact(Scalar::zero()));
            assert!(o.shrinking);
        }
    }

    #[test]
    fn copying_strong_game_with_dense_target() {
        let g = Game::new(GameVariant::strong(q(1, 2), q(1, 2)), Space::real(1)).unwrap();
        let t = run_game(&g, &CopyBall::new(Role::Alice), &CopyBall::new(Role::Bob), fb("0@1"), 10).unwrap();
        let o = outcome(&t, &PointComplement(Point::real(q(0, 1))));
        assert_eq!(o.limit_radius, LimitRadius::Exact(q(1, 1)));
        assert!(!o.shrinking);
        assert_eq!(o.winner, Winner::Alice);
    }

    #[test]
    fn complement_of_containing_ball() {
        let g = Game::new(GameVariant::strong(q(1, 2), q(1, 2)), Space::real(1)).unwrap();
        let t = run_game(&g, &RandomLegal::new(Role::Alice, 1), &RandomLegal::new(Role::Bob, 2), fb("0@1"), 6).unwrap();
        let o = outcome(&t, &BallComplement(fb("0@2")));
        assert_eq!(o.winner, Winner::Bob);
        assert!(matches!(o.limit_radius, LimitRadius::Bracket { .. }));
    }
}
