//! Rulesets, legality checking, play execution and outcomes.

mod engine;
mod legality;
mod outcome;
pub mod target;
mod transcript;
mod variant;

pub use engine::{compatible_plays, continue_game, play_until, run_game, FixedMenu, GameError, GridMenu, MoveMenu};
pub use legality::{validate_move, IllegalMove, Inequality, LegalityCertificate, Rel};
pub use outcome::{outcome, outcome_with_tolerance, LimitRadius, Outcome, Winner};
pub use target::{Relation, TargetSet};
pub use transcript::{Abort, Record, Transcript, TranscriptError};
pub use variant::{GameVariant, Move, Role, VariantError};

use crate::space::Space;

/// A variant together with the space it is played on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Game {
    pub variant: GameVariant,
    pub space: Space,
}

impl Game {
    pub fn new(variant: GameVariant, space: Space) -> Result<Self, VariantError> {
        variant.check_playable(&space)?;
        Ok(Game { variant, space })
    }

    pub fn validate(&self, history: &[Move], mv: &Move) -> Result<LegalityCertificate, IllegalMove> {
        validate_move(&self.variant, &self.space, history, mv)
    }

    pub fn is_legal(&self, history: &[Move], mv: &Move) -> bool {
        self.validate(history, mv).is_ok()
    }
}
