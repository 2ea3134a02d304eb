use crate::game::{Game, Move, Role};
use crate::scalar::Scalar;
use crate::space::{ball, Point};
use crate::strategy::{expect_turn, is_schmidt_or_strong, outer_ball, unsupported, Strategy, StrategyError};

/// Avoid a point `y` in Schmidt or strong games with radius factor
/// `γ < c/(1+2c)`.
///
/// Facing `B(x,ρ)`: if `d(x,y) > γρ` play `B(x,γρ)`; otherwise take a
/// witness `z ∈ B(y,(1-2γ)ρ) \ B(y,c(1-2γ)ρ)` and play `B(z,γρ)`. Then
/// `d(z,x) <= (1-γ)ρ` and `d(z,y) > c(1-2γ)ρ > γρ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchmidtAvoidPoint {
    pub role: Role,
    pub y: Point,
    /// Uniform-perfectness constant; the space's declared one when `None`.
    pub c: Option<Scalar>,
}

impl SchmidtAvoidPoint {
    pub fn new(role: Role, y: Point, c: Option<Scalar>) -> Self {
        SchmidtAvoidPoint { role, y, c }
    }

    fn constant<'a>(&'a self, game: &'a Game) -> &'a Scalar {
        self.c.as_ref().unwrap_or(game.space.constant())
    }

    /// `γ ρ` margin by which the move keeps `y` out: `d(z,y) - γρ`.
    pub fn margin(game: &Game, y: &Point, mv: &Move) -> Result<Scalar, StrategyError> {
        let b = mv.ball();
        Ok(game.space.distance(&b.center, y)? - &b.radius)
    }
}

impl Strategy for SchmidtAvoidPoint {
    fn name(&self) -> String {
        match &self.c {
            Some(c) => format!("avoid-point(y={},c={c})", self.y),
            None => format!("avoid-point(y={})", self.y),
        }
    }

    fn role(&self) -> Role {
        self.role
    }

    fn check(&self, game: &Game) -> Result<(), StrategyError> {
        if !is_schmidt_or_strong(&game.variant) {
            return Err(unsupported(self, game.variant.to_string()));
        }
        game.space.check_point(&self.y)?;
        let c = self.constant(game);
        let gamma = game.variant.factor(self.role);
        let bound = c / (Scalar::one() + Scalar::from_int(2) * c);
        if *gamma >= bound {
            return Err(StrategyError::PreconditionViolated(format!(
                "radius factor {gamma} must be < c/(1+2c) = {bound}"
            )));
        }
        Ok(())
    }

    fn next_move(&self, game: &Game, history: &[Move]) -> Result<Move, StrategyError> {
        expect_turn(self.role, history)?;
        self.check(game)?;
        let outer = outer_ball(game, history);
        let gamma = game.variant.factor(self.role);
        let rho = &outer.radius;
        let r = gamma * rho;
        let space = &game.space;
        if space.distance(&outer.center, &self.y)? > r {
            return Ok(Move::Ball(ball(outer.center.clone(), r)));
        }
        let reach = (Scalar::one() - Scalar::from_int(2) * gamma) * rho;
        let z = space.uniform_perfect_witness(&self.y, &reach, self.constant(game))?;
        Ok(Move::Ball(ball(z, r)))
    }

    fn radius_ratio(&self, game: &Game) -> Option<Scalar> {
        Some(game.variant.factor(self.role).clone())
    }
}
