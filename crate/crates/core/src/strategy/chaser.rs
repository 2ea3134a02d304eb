use crate::game::{Game, Move, Role};
use crate::scalar::Scalar;
use crate::space::{ball, Point, SpaceKind};
use crate::strategy::{
    expect_turn, is_schmidt_or_strong, min_radius_for, outer_ball, unsupported, Strategy,
    StrategyError,
};

/// Re-centers as close to `t` as legality allows, with the smallest radius.
///
/// The feasible centers form the box `B(x, ρ - r)`; among the max-norm
/// nearest points of the box to `t` the lexicographically smallest is taken.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TargetChaser {
    pub role: Role,
    pub t: Point,
}

impl TargetChaser {
    pub fn new(role: Role, t: Point) -> Self {
        TargetChaser { role, t }
    }
}

/// Lexicographically smallest nearest point of `[x - reach, x + reach]` to `t`.
pub(crate) fn project_box(x: &[Scalar], reach: &Scalar, t: &[Scalar]) -> Vec<Scalar> {
    let clamp = |xi: &Scalar, ti: &Scalar| (xi - reach).max(ti.clone()).min(xi + reach);
    let dist = x
        .iter()
        .zip(t)
        .map(|(xi, ti)| (clamp(xi, ti) - ti).abs())
        .max()
        .unwrap_or_default();
    x.iter()
        .zip(t)
        .map(|(xi, ti)| (xi - reach).max(ti - &dist))
        .collect()
}

impl Strategy for TargetChaser {
    fn name(&self) -> String {
        format!("target-chaser(t={})", self.t)
    }

    fn role(&self) -> Role {
        self.role
    }

    fn check(&self, game: &Game) -> Result<(), StrategyError> {
        if !is_schmidt_or_strong(&game.variant) {
            return Err(unsupported(self, game.variant.to_string()));
        }
        if !matches!(game.space.kind(), SpaceKind::RealMax(_)) {
            return Err(unsupported(self, game.space.to_string()));
        }
        Ok(game.space.check_point(&self.t)?)
    }

    fn next_move(&self, game: &Game, history: &[Move]) -> Result<Move, StrategyError> {
        expect_turn(self.role, history)?;
        self.check(game)?;
        let outer = outer_ball(game, history);
        if !game.space.ball_contains_point(outer, &self.t)? {
            return Err(StrategyError::TargetOutside(self.t.to_string()));
        }
        let r = min_radius_for(game, history);
        let reach = &outer.radius - &r;
        let x = outer.center.coords().expect("checked Euclidean");
        let t = self.t.coords().expect("checked Euclidean");
        Ok(Move::Ball(ball(Point::Euclidean(project_box(x, &reach, t)), r)))
    }

    fn radius_ratio(&self, game: &Game) -> Option<Scalar> {
        Some(game.variant.factor(self.role).clone())
    }
}
