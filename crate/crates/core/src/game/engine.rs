use crate::game::transcript::{Abort, Transcript};
use crate::game::variant::{Move, Role, VariantError};
use crate::game::{Game, IllegalMove};
use crate::scalar::Scalar;
use crate::space::{ball, FormalBall, Point};
use crate::strategy::{Strategy, StrategyError};

#[derive(Debug, thiserror::Error)]
pub enum GameError {
    #[error(transparent)]
    Variant(#[from] VariantError),
    #[error("initial ball rejected: {0}")]
    Initial(IllegalMove),
    #[error("{strategy} plays {got} but was given the {expected} slot")]
    RoleMismatch {
        strategy: String,
        expected: Role,
        got: Role,
    },
    #[error("{strategy}: {source}")]
    Precondition {
        strategy: String,
        source: StrategyError,
    },
    #[error("{strategy} made an illegal move {proposed}: {source}")]
    StrategyIllegalMove {
        strategy: String,
        proposed: String,
        source: IllegalMove,
    },
}

fn check_slot(s: &dyn Strategy, slot: Role, game: &Game) -> Result<(), GameError> {
    if s.role() != slot {
        return Err(GameError::RoleMismatch {
            strategy: s.name(),
            expected: slot,
            got: s.role(),
        });
    }
    s.check(game).map_err(|source| GameError::Precondition {
        strategy: s.name(),
        source,
    })
}

/// Plays `horizon` moves after `initial`. A strategy error stops the play
/// and is recorded in [`Transcript::abort`]; an illegal move is an error.
pub fn run_game(
    game: &Game,
    alice: &dyn Strategy,
    bob: &dyn Strategy,
    initial: FormalBall,
    horizon: usize,
) -> Result<Transcript, GameError> {
    game.variant.check_playable(&game.space)?;
    let t = Transcript::new(game.clone(), initial).map_err(GameError::Initial)?;
    continue_game(&t, alice, bob, horizon)
}

/// Extends a transcript by `moves` moves.
pub fn continue_game(
    prefix: &Transcript,
    alice: &dyn Strategy,
    bob: &dyn Strategy,
    moves: usize,
) -> Result<Transcript, GameError> {
    play_until(prefix, alice, bob, moves, |_| false)
}

/// Extends a transcript until `stop` holds (checked before every move) or
/// `max_moves` moves have been added.
pub fn play_until(
    prefix: &Transcript,
    alice: &dyn Strategy,
    bob: &dyn Strategy,
    max_moves: usize,
    stop: impl Fn(&Transcript) -> bool,
) -> Result<Transcript, GameError> {
    let game = prefix.game().clone();
    check_slot(alice, Role::Alice, &game)?;
    check_slot(bob, Role::Bob, &game)?;
    let mut t = prefix.clone();
    t.alice = alice.name();
    t.bob = bob.name();
    t.horizon = prefix.rounds() + max_moves;
    t.alice_ratio = alice.radius_ratio(&game);
    t.bob_ratio = bob.radius_ratio(&game);
    t.abort = None;
    for _ in 0..max_moves {
        if stop(&t) {
            break;
        }
        let index = t.len() + 1;
        let mover = match Role::of_index(index) {
            Role::Alice => alice,
            Role::Bob => bob,
        };
        match mover.next_move(&game, t.moves()) {
            Ok(mv) => {
                let proposed = mv.ball().to_string();
                t.push(mv).map_err(|source| GameError::StrategyIllegalMove {
                    strategy: mover.name(),
                    proposed,
                    source,
                })?;
            }
            Err(e) => {
                t.abort = Some(Abort {
                    index,
                    strategy: mover.name(),
                    reason: e.to_string(),
                });
                break;
            }
        }
    }
    Ok(t)
}

/// Finite set of candidate moves offered to the enumerated player.
pub trait MoveMenu: Sync {
    fn options(&self, game: &Game, history: &[Move]) -> Vec<Move>;
}

impl<F> MoveMenu for F
where
    F: Fn(&Game, &[Move]) -> Vec<Move> + Sync,
{
    fn options(&self, game: &Game, history: &[Move]) -> Vec<Move> {
        self(game, history)
    }
}

/// The same list of moves at every turn; illegal ones are skipped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedMenu(pub Vec<Move>);

impl MoveMenu for FixedMenu {
    fn options(&self, _: &Game, _: &[Move]) -> Vec<Move> {
        self.0.clone()
    }
}

/// Centers `x + kδ` (per coordinate, `k` integer) within reach of the
/// current center `x`, radius on the minimal schedule. Schmidt and strong
/// games on `R^d` only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridMenu {
    pub step: Scalar,
}

impl GridMenu {
    pub fn new(step: Scalar) -> Self {
        GridMenu { step }
    }

    /// The offsets `kδ` with `|kδ| <= reach`, ascending.
    pub fn offsets(&self, reach: &Scalar) -> Vec<Scalar> {
        if !self.step.is_positive() || reach.is_negative() {
            return Vec::new();
        }
        let k_max = (reach / &self.step).floor_int();
        let k_max: i64 = k_max.try_into().unwrap_or(i64::MAX).min(1 << 20);
        (-k_max..=k_max).map(|k| &self.step * Scalar::from_int(k)).collect()
    }
}

impl MoveMenu for GridMenu {
    fn options(&self, game: &Game, history: &[Move]) -> Vec<Move> {
        if game.variant.is_absolute() {
            return Vec::new();
        }
        let Some(prev) = history.last().map(Move::ball) else {
            return Vec::new();
        };
        let Some(x) = prev.center.coords() else {
            return Vec::new();
        };
        let role = Role::of_index(history.len() + 1);
        let r = game.variant.factor(role) * &prev.radius;
        let offsets = self.offsets(&(&prev.radius - &r));
        let mut out: Vec<Vec<Scalar>> = vec![Vec::new()];
        for xi in x {
            out = out
                .into_iter()
                .flat_map(|p| {
                    offsets.iter().map(move |o| {
                        let mut p = p.clone();
                        p.push(xi + o);
                        p
                    })
                })
                .collect();
        }
        out.into_iter()
            .map(|c| Move::Ball(ball(Point::Euclidean(c), r.clone())))
            .collect()
    }
}

/// All `strategy`-compatible extensions of `prefix` by exactly `depth`
/// moves, the other player's moves drawn from `menu` (illegal entries are
/// skipped). Branches where the strategy aborts or the menu has no legal
/// move stop early and are returned as they are.
pub fn compatible_plays(
    strategy: &dyn Strategy,
    prefix: &Transcript,
    menu: &dyn MoveMenu,
    depth: usize,
) -> Result<Vec<Transcript>, GameError> {
    let game = prefix.game().clone();
    strategy.check(&game).map_err(|source| GameError::Precondition {
        strategy: strategy.name(),
        source,
    })?;
    let mut out = Vec::new();
    extend(strategy, &game, prefix.clone(), menu, depth, &mut out)?;
    Ok(out)
}

fn extend(
    strategy: &dyn Strategy,
    game: &Game,
    t: Transcript,
    menu: &dyn MoveMenu,
    depth: usize,
    out: &mut Vec<Transcript>,
) -> Result<(), GameError> {
    if depth == 0 {
        out.push(t);
        return Ok(());
    }
    let index = t.len() + 1;
    if Role::of_index(index) == strategy.role() {
        match strategy.next_move(game, t.moves()) {
            Ok(mv) => {
                let mut next = t.clone();
                let proposed = mv.ball().to_string();
                next.push(mv).map_err(|source| GameError::StrategyIllegalMove {
                    strategy: strategy.name(),
                    proposed,
                    source,
                })?;
                extend(strategy, game, next, menu, depth - 1, out)
            }
            Err(e) => {
                let mut t = t;
                t.abort = Some(Abort {
                    index,
                    strategy: strategy.name(),
                    reason: e.to_string(),
                });
                out.push(t);
                Ok(())
            }
        }
    } else {
        let legal: Vec<Move> = menu
            .options(game, t.moves())
            .into_iter()
            .filter(|m| game.is_legal(t.moves(), m))
            .collect();
        if legal.is_empty() {
            out.push(t);
            return Ok(());
        }
        for mv in legal {
            let mut next = t.clone();
            next.push(mv).expect("filtered for legality");
            extend(strategy, game, next, menu, depth - 1, out)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::GameVariant;
    use crate::scalar::q;
    use crate::space::Space;
    use crate::strategy::{CenterDelete, MinRadius, SchmidtAvoidPoint};

    fn fb(s: &str) -> FormalBall {
        s.parse().unwrap()
    }

    #[test]
    fn schmidt_min_radius_schedule() {
        let g = Game::new(GameVariant::schmidt(q(1, 2), q(1, 2)), Space::real(1)).unwrap();
        let t = run_game(&g, &MinRadius::new(Role::Alice), &MinRadius::new(Role::Bob), fb("0@1"), 4).unwrap();
        let radii: Vec<Scalar> = t.balls().map(|b| b.radius.clone()).collect();
        assert_eq!(radii, vec![q(1, 1), q(1, 2), q(1, 4), q(1, 8), q(1, 16)]);
        let t0 = run_game(&g, &MinRadius::new(Role::Alice), &MinRadius::new(Role::Bob), fb("0@1"), 0).unwrap();
        assert_eq!(t0.len(), 1);
    }

    #[test]
    fn role_mismatch() {
        let g = Game::new(GameVariant::schmidt(q(1, 2), q(1, 2)), Space::real(1)).unwrap();
        let r = run_game(&g, &MinRadius::new(Role::Bob), &MinRadius::new(Role::Bob), fb("0@1"), 2);
        assert!(matches!(r, Err(GameError::RoleMismatch { .. })));
    }

    #[test]
    fn center_delete_halves() {
        let g = Game::new(GameVariant::absolute(q(1, 10)), Space::real(1)).unwrap();
        let t = run_game(&g, &CenterDelete, &MinRadius::new(Role::Bob), fb("0@1"), 20).unwrap();
        assert!(t.abort.is_none());
        let bob: Vec<&FormalBall> = t.bob_balls().collect();
        assert_eq!(bob.len(), 11);
        for w in bob.windows(2) {
            assert!(w[1].radius < w[0].radius.half());
        }
    }

    #[test]
    fn enumeration_counts() {
        let g = Game::new(GameVariant::schmidt(q(1, 5), q(1, 5)), Space::real(1)).unwrap();
        let root = Transcript::new(g.clone(), fb("0@1")).unwrap();
        let alice = MinRadius::new(Role::Alice);
        let menu = FixedMenu(vec![
            Move::Ball(fb("0@1/25")),
            Move::Ball(fb("1/10@1/25")),
        ]);
        assert_eq!(compatible_plays(&alice, &root, &menu, 0).unwrap(), vec![root.clone()]);
        let plays = compatible_plays(&alice, &root, &menu, 2).unwrap();
        assert_eq!(plays.len(), 2);
        assert!(plays.iter().all(|p| p.moves()[1] == plays[0].moves()[1]));

        let avoid = SchmidtAvoidPoint::new(Role::Alice, Point::real(q(0, 1)), None);
        let mut prefix = root.clone();
        prefix.push(avoid.next_move(&g, root.moves()).unwrap()).unwrap();
        let menu = |_: &Game, h: &[Move]| {
            let x = h.last().unwrap().ball().center.coords().unwrap()[0].clone();
            [-1i64, 0, 1]
                .iter()
                .map(|k| Move::Ball(ball(Point::real(&x + q(*k, 10)), q(1, 25))))
                .collect()
        };
        assert_eq!(compatible_plays(&avoid, &prefix, &menu, 1).unwrap().len(), 3);
        let plays = compatible_plays(&avoid, &prefix, &menu, 2).unwrap();
        assert_eq!(plays.len(), 3);
        let space = Space::real(1);
        for p in plays {
            let b = p.moves()[3].ball();
            assert!(space.distance(&b.center, &Point::real(q(0, 1))).unwrap() > b.radius);
        }
    }

    #[test]
    fn grid_menu_counts() {
        let g = Game::new(GameVariant::schmidt(q(1, 2), q(1, 2)), Space::real(1)).unwrap();
        let opts = GridMenu::new(q(1, 8)).options(&g, &[Move::Ball(fb("0@1"))]);
        assert_eq!(opts.len(), 9);
    }
}
