use crate::game::{Game, GameVariant, Move, Role};
use crate::scalar::Scalar;
use crate::space::{ball, disjoint_ball_picker, pick_disjoint, Point};
use crate::strategy::{expect_turn, unsupported, Strategy, StrategyError};

fn absolute_beta<'a>(s: &dyn Strategy, game: &'a Game) -> Result<&'a Scalar, StrategyError> {
    match &game.variant {
        GameVariant::Absolute { beta } => Ok(beta),
        v => Err(unsupported(s, v.to_string())),
    }
}

/// Alice deletes `B(x_n, βρ_n)` around Bob's center. Any legal reply then
/// has `ρ_{n+1} < d(x_n, x_{n+1}) <= ρ_n - ρ_{n+1}`, so `ρ_{n+1} < ρ_n/2`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CenterDelete;

impl Strategy for CenterDelete {
    fn name(&self) -> String {
        "center-delete".into()
    }

    fn role(&self) -> Role {
        Role::Alice
    }

    fn check(&self, game: &Game) -> Result<(), StrategyError> {
        absolute_beta(self, game).map(|_| ())
    }

    fn next_move(&self, game: &Game, history: &[Move]) -> Result<Move, StrategyError> {
        expect_turn(Role::Alice, history)?;
        let beta = absolute_beta(self, game)?;
        let bob = history[history.len() - 1].ball();
        Ok(Move::Delete(ball(bob.center.clone(), beta * &bob.radius)))
    }
}

/// Alice deletes `B(y, βρ_n)` while `y` is in Bob's ball, otherwise the
/// center.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbsoluteAvoidPoint {
    pub y: Point,
}

impl AbsoluteAvoidPoint {
    pub fn new(y: Point) -> Self {
        AbsoluteAvoidPoint { y }
    }
}

impl Strategy for AbsoluteAvoidPoint {
    fn name(&self) -> String {
        format!("absolute-avoid(y={})", self.y)
    }

    fn role(&self) -> Role {
        Role::Alice
    }

    fn check(&self, game: &Game) -> Result<(), StrategyError> {
        absolute_beta(self, game)?;
        Ok(game.space.check_point(&self.y)?)
    }

    fn next_move(&self, game: &Game, history: &[Move]) -> Result<Move, StrategyError> {
        expect_turn(Role::Alice, history)?;
        let beta = absolute_beta(self, game)?;
        let bob = history[history.len() - 1].ball();
        if game.space.ball_contains_point(bob, &self.y)? {
            Ok(Move::Delete(ball(self.y.clone(), beta * &bob.radius)))
        } else {
            CenterDelete.next_move(game, history)
        }
    }
}

/// Bob avoids `y` when `β < (c/5)^2`: pick `B(z,(c/5)ρ)` inside his ball and
/// away from the deletion, then `B(w,(c/5)^2 ρ)` inside that and away from
/// `y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbsoluteBobAvoid {
    pub y: Point,
}

impl AbsoluteBobAvoid {
    pub fn new(y: Point) -> Self {
        AbsoluteBobAvoid { y }
    }
}

impl Strategy for AbsoluteBobAvoid {
    fn name(&self) -> String {
        format!("absolute-avoid(y={})", self.y)
    }

    fn role(&self) -> Role {
        Role::Bob
    }

    fn check(&self, game: &Game) -> Result<(), StrategyError> {
        let beta = absolute_beta(self, game)?;
        game.space.check_point(&self.y)?;
        let bound = (game.space.constant() / Scalar::from_int(5)).pow(2);
        if *beta >= bound {
            return Err(StrategyError::PreconditionViolated(format!(
                "beta {beta} must be < (c/5)^2 = {bound}"
            )));
        }
        Ok(())
    }

    fn next_move(&self, game: &Game, history: &[Move]) -> Result<Move, StrategyError> {
        expect_turn(Role::Bob, history)?;
        self.check(game)?;
        let n = history.len();
        let outer = history[n - 2].ball();
        let deleted = history[n - 1].ball();
        let c = game.space.constant();
        let fifth = c / Scalar::from_int(5);
        let no_candidate = |e: crate::space::SpaceError| StrategyError::NoLegalCandidate(e.to_string());
        let z = disjoint_ball_picker(&game.space, outer, deleted, c).map_err(no_candidate)?;
        let radius = &fifth * &fifth * &outer.radius;
        let w = pick_disjoint(&game.space, &z, &self.y, &Scalar::zero(), &radius).map_err(no_candidate)?;
        Ok(Move::Ball(w))
    }

    fn radius_ratio(&self, game: &Game) -> Option<Scalar> {
        Some((game.space.constant() / Scalar::from_int(5)).pow(2))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{run_game, Transcript};
    use crate::scalar::q;
    use crate::space::{FormalBall, Space};

    fn fb(s: &str) -> FormalBall {
        s.parse().unwrap()
    }

    #[test]
    fn deletes_center() {
        let g = Game::new(GameVariant::absolute(q(1, 10)), Space::real(1)).unwrap();
        let mv = CenterDelete.next_move(&g, &[Move::Ball(fb("0@1"))]).unwrap();
        assert_eq!(mv, Move::Delete(fb("0@1/10")));
        let tiny = Move::Ball(fb("1/3@1/1000000"));
        let mv = CenterDelete.next_move(&g, std::slice::from_ref(&tiny)).unwrap();
        assert_eq!(mv.ball().radius, q(1, 10000000));
        assert!(g.validate(&[tiny], &mv).unwrap().holds());
    }

    #[test]
    fn avoid_falls_back_to_center() {
        let g = Game::new(GameVariant::absolute(q(1, 10)), Space::real(1)).unwrap();
        let h = [Move::Ball(fb("0@1"))];
        let far = AbsoluteAvoidPoint::new(Point::real(q(3, 1)));
        assert_eq!(far.next_move(&g, &h).unwrap(), CenterDelete.next_move(&g, &h).unwrap());
        let at = AbsoluteAvoidPoint::new(Point::real(q(0, 1)));
        assert_eq!(at.next_move(&g, &h).unwrap(), CenterDelete.next_move(&g, &h).unwrap());
    }

    #[test]
    fn bob_avoids_point_in_regime_three() {
        let space = Space::real(1);
        let g = Game::new(GameVariant::absolute(q(1, 200)), space.clone()).unwrap();
        let y = Point::real(q(1, 7));
        let bob = AbsoluteBobAvoid::new(y.clone());
        let t: Transcript = run_game(&g, &CenterDelete, &bob, fb("0@1"), 8).unwrap();
        assert!(t.abort.is_none());
        for b in t.bob_balls().skip(1) {
            assert!(!space.ball_contains_point(b, &y).unwrap());
        }
    }
}
