use crate::game::{Game, GameVariant, Move, Role, Transcript};
use crate::scalar::Scalar;
use crate::space::{ball, cylinder_depth, quarter_pow, DigitSeq, Point, SpaceKind};
use crate::strategy::{expect_turn, outer_ball, unsupported, Strategy, StrategyError};

/// Threshold control in the `(1/2, 1/2)` strong game on binary sequences.
///
/// Let `4^{-k}` be the largest threshold `<= ρ`. If it can be crossed
/// (`ρ/2 < 4^{-k}`), play radius `ρ/2` with the center's digits from
/// `k + 1` on set to `desired`; otherwise copy the ball. The opponent then
/// never faces a crossable threshold, so every later good turn is ours.
///
/// Under the formal order the crossing move cannot change digit `k`; it
/// fixes it. What it sets is digit `k + 1` onwards.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThresholdControl {
    pub role: Role,
    pub desired: u8,
}

impl ThresholdControl {
    pub fn new(role: Role, desired: u8) -> Self {
        ThresholdControl { role, desired }
    }
}

impl Strategy for ThresholdControl {
    fn name(&self) -> String {
        format!("threshold-control(digit={})", self.desired)
    }

    fn role(&self) -> Role {
        self.role
    }

    fn check(&self, game: &Game) -> Result<(), StrategyError> {
        let half = Scalar::new(1, 2);
        match &game.variant {
            GameVariant::Strong { alpha, beta } if *alpha == half && *beta == half => {}
            v => return Err(unsupported(self, v.to_string())),
        }
        if game.space.kind() != SpaceKind::BinarySeq {
            return Err(unsupported(self, game.space.to_string()));
        }
        if self.desired > 1 {
            return Err(StrategyError::PreconditionViolated("digit must be 0 or 1".into()));
        }
        Ok(())
    }

    fn next_move(&self, game: &Game, history: &[Move]) -> Result<Move, StrategyError> {
        expect_turn(self.role, history)?;
        self.check(game)?;
        let outer = outer_ball(game, history);
        let rho = &outer.radius;
        let k = cylinder_depth(rho);
        if rho.half() >= quarter_pow(k) {
            return Ok(Move::Ball(outer.clone()));
        }
        let seq = outer.center.digits().expect("checked BinarySeq");
        let prefix: Vec<u8> = (0..=k).map(|i| seq.digit(i)).collect();
        let center = Point::BinarySeq(DigitSeq::new(prefix, self.desired));
        Ok(Move::Ball(ball(center, rho.half())))
    }
}

/// A move `n` with `ρ_n < 4^{-k} <= ρ_{n-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoodTurn {
    pub index: usize,
    /// Largest crossed threshold exponent.
    pub k: usize,
    pub owner: Role,
}

/// All good turns of a transcript.
pub fn good_turns(t: &Transcript) -> Vec<GoodTurn> {
    let radii: Vec<&Scalar> = t.moves().iter().map(|m| &m.ball().radius).collect();
    (1..radii.len())
        .filter_map(|i| {
            let k = cylinder_depth(radii[i - 1]);
            (*radii[i] < quarter_pow(k)).then(|| GoodTurn {
                index: i + 1,
                k,
                owner: Role::of_index(i + 1),
            })
        })
        .collect()
}
