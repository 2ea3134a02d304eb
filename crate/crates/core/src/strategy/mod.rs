//! Explicit strategies from the determinacy and indeterminacy arguments.

mod absolute;
mod attractor;
mod banach;
mod basic;
mod chaser;
mod schmidt_avoid;
mod threshold;

use std::fmt::Debug;

pub use absolute::{AbsoluteAvoidPoint, AbsoluteBobAvoid, CenterDelete};
pub use attractor::{attractor_centers, attractor_distance_bounds, AttractorSpec};
pub use banach::{distance_to_line, BanachBobAvoid};
pub use basic::{random_point, CopyBall, MinRadius, RandomLegal};
pub use chaser::TargetChaser;
pub use schmidt_avoid::SchmidtAvoidPoint;
pub use threshold::{good_turns, GoodTurn, ThresholdControl};

use crate::game::{Game, GameVariant, IllegalMove, Move, Role};
use crate::scalar::Scalar;
use crate::space::{FormalBall, SpaceError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StrategyError {
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("{strategy} does not support {what}")]
    Unsupported { strategy: String, what: String },
    #[error("target {0} is outside the current ball")]
    TargetOutside(String),
    #[error("no legal candidate: {0}")]
    NoLegalCandidate(String),
    #[error("asked to move at index {index} but plays {role}")]
    NotMyTurn { index: usize, role: Role },
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Illegal(#[from] IllegalMove),
}

/// A deterministic, stateless map from legal histories to moves.
pub trait Strategy: Send + Sync + Debug {
    /// Canonical text form, parseable by the scenario config.
    fn name(&self) -> String;

    fn role(&self) -> Role;

    /// Checks the strategy's hypotheses on the variant and space.
    fn check(&self, _game: &Game) -> Result<(), StrategyError> {
        Ok(())
    }

    /// The move at index `history.len() + 1`.
    fn next_move(&self, game: &Game, history: &[Move]) -> Result<Move, StrategyError>;

    /// Ratio `ρ_new / ρ_prev` this strategy always uses for its ball moves,
    /// if it has one. Lets outcomes certify geometric radius schedules.
    fn radius_ratio(&self, _game: &Game) -> Option<Scalar> {
        None
    }
}

fn unsupported(strategy: &dyn Strategy, what: impl Into<String>) -> StrategyError {
    StrategyError::Unsupported {
        strategy: strategy.name(),
        what: what.into(),
    }
}

fn expect_turn(role: Role, history: &[Move]) -> Result<usize, StrategyError> {
    let index = history.len() + 1;
    if history.is_empty() || Role::of_index(index) != role {
        return Err(StrategyError::NotMyTurn { index, role });
    }
    Ok(index)
}

/// The ball the mover must nest inside.
fn outer_ball<'a>(game: &Game, history: &'a [Move]) -> &'a FormalBall {
    let n = history.len() + 1;
    if game.variant.is_absolute() && Role::of_index(n) == Role::Bob {
        history[n - 3].ball()
    } else {
        history[n - 2].ball()
    }
}

/// Smallest radius the mover may use in Schmidt or strong games.
fn min_radius_for(game: &Game, history: &[Move]) -> Scalar {
    let role = Role::of_index(history.len() + 1);
    game.variant.factor(role) * &outer_ball(game, history).radius
}

fn is_schmidt_or_strong(v: &GameVariant) -> bool {
    !v.is_absolute()
}
