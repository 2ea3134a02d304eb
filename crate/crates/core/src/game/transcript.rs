use serde::{Deserialize, Serialize};

use crate::game::legality::{IllegalMove, LegalityCertificate};
use crate::game::variant::{GameVariant, Move, Role, VariantError};
use crate::game::Game;
use crate::scalar::Scalar;
use crate::space::{FormalBall, Space, SpaceError};

/// A strategy gave up instead of moving.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Abort {
    pub index: usize,
    pub strategy: String,
    pub reason: String,
}

#[derive(Debug, thiserror::Error)]
pub enum TranscriptError {
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
    #[error("line {line}: {source}")]
    Illegal { line: usize, source: IllegalMove },
    #[error(transparent)]
    Variant(#[from] VariantError),
    #[error(transparent)]
    Space(#[from] SpaceError),
}

/// A legal finite play `ω_1 ... ω_n` with a certificate per move.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transcript {
    game: Game,
    moves: Vec<Move>,
    certificates: Vec<LegalityCertificate>,
    pub alice: String,
    pub bob: String,
    /// Number of moves after the initial ball that was asked for.
    pub horizon: usize,
    /// Radius ratios the two strategies declared they always use.
    pub alice_ratio: Option<Scalar>,
    pub bob_ratio: Option<Scalar>,
    pub abort: Option<Abort>,
}

impl Transcript {
    pub fn new(game: Game, initial: FormalBall) -> Result<Self, IllegalMove> {
        let mv = Move::Ball(initial);
        let cert = game.validate(&[], &mv)?;
        Ok(Transcript {
            game,
            moves: vec![mv],
            certificates: vec![cert],
            alice: String::new(),
            bob: String::new(),
            horizon: 0,
            alice_ratio: None,
            bob_ratio: None,
            abort: None,
        })
    }

    pub fn game(&self) -> &Game {
        &self.game
    }

    pub fn variant(&self) -> &GameVariant {
        &self.game.variant
    }

    pub fn space(&self) -> &Space {
        &self.game.space
    }

    pub fn moves(&self) -> &[Move] {
        &self.moves
    }

    pub fn certificates(&self) -> &[LegalityCertificate] {
        &self.certificates
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    /// Moves played after the initial ball.
    pub fn rounds(&self) -> usize {
        self.moves.len() - 1
    }

    pub fn initial(&self) -> &FormalBall {
        self.moves[0].ball()
    }

    /// Validates and appends a move.
    pub fn push(&mut self, mv: Move) -> Result<&LegalityCertificate, IllegalMove> {
        let cert = self.game.validate(&self.moves, &mv)?;
        self.moves.push(mv);
        self.certificates.push(cert);
        Ok(self.certificates.last().expect("just pushed"))
    }

    /// Bob's balls `ω_1, ω_3, ...` in order.
    pub fn bob_balls(&self) -> impl Iterator<Item = &FormalBall> {
        self.moves.iter().step_by(2).map(Move::ball)
    }

    /// Every ball move (excludes deletions).
    pub fn balls(&self) -> impl Iterator<Item = &FormalBall> {
        self.moves
            .iter()
            .filter(|m| !m.is_delete())
            .map(Move::ball)
    }

    /// The ball certified to contain the limit set: the last ball played.
    /// In the absolute game only Bob plays balls, so this is his.
    pub fn enclosure(&self) -> &FormalBall {
        self.balls().last().expect("transcript has an initial ball")
    }

    pub fn is_prefix_of(&self, other: &Transcript) -> bool {
        self.game == other.game
            && self.moves.len() <= other.moves.len()
            && other.moves[..self.moves.len()] == self.moves[..]
    }

    /// The first `len` moves (at least the initial ball).
    pub fn truncated(&self, len: usize) -> Transcript {
        let len = len.clamp(1, self.moves.len());
        let mut t = self.clone();
        t.moves.truncate(len);
        t.certificates.truncate(len);
        if t.abort.as_ref().is_some_and(|a| a.index > len) {
            t.abort = None;
        }
        t
    }

    pub fn header_record(&self) -> Record {
        Record::Header {
            variant: self.game.variant.to_string(),
            space: self.game.space.to_string(),
            c: self.game.space.constant().clone(),
            alice: self.alice.clone(),
            bob: self.bob.clone(),
            horizon: self.horizon,
            alice_ratio: self.alice_ratio.clone(),
            bob_ratio: self.bob_ratio.clone(),
        }
    }

    pub fn move_records(&self, path: Option<&str>) -> Vec<Record> {
        let mut out: Vec<Record> = self
            .moves
            .iter()
            .zip(&self.certificates)
            .enumerate()
            .map(|(i, (mv, cert))| Record::Move {
                index: i + 1,
                player: Role::of_index(i + 1),
                kind: mv.kind().to_string(),
                ball: mv.ball().clone(),
                certificate: cert.lines(),
                path: path.map(str::to_string),
            })
            .collect();
        if let Some(a) = &self.abort {
            out.push(Record::Abort {
                index: a.index,
                strategy: a.strategy.clone(),
                reason: a.reason.clone(),
            });
        }
        out
    }

    /// One JSON object per line: a header, then one line per move.
    pub fn to_jsonl(&self) -> String {
        let mut s = String::new();
        for r in std::iter::once(self.header_record()).chain(self.move_records(None)) {
            s.push_str(&serde_json::to_string(&r).expect("records serialize"));
            s.push('\n');
        }
        s
    }

    /// Parses and replays a transcript; every move is validated again.
    pub fn from_jsonl(text: &str) -> Result<Transcript, TranscriptError> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let parse = |line: usize, l: &str| {
            serde_json::from_str::<Record>(l).map_err(|e| TranscriptError::Format {
                line: line + 1,
                message: e.to_string(),
            })
        };
        let (n, first) = lines.next().ok_or(TranscriptError::Format {
            line: 1,
            message: "empty transcript".into(),
        })?;
        let Record::Header {
            variant,
            space,
            alice,
            bob,
            horizon,
            alice_ratio,
            bob_ratio,
            ..
        } = parse(n, first)?
        else {
            return Err(TranscriptError::Format {
                line: n + 1,
                message: "expected header".into(),
            });
        };
        let game = Game::new(variant.parse()?, space.parse()?)?;
        let mut t: Option<Transcript> = None;
        let mut abort = None;
        for (n, l) in lines {
            match parse(n, l)? {
                Record::Move { kind, ball, .. } => {
                    let mv = match kind.as_str() {
                        "ball" => Move::Ball(ball),
                        "delete" => Move::Delete(ball),
                        other => {
                            return Err(TranscriptError::Format {
                                line: n + 1,
                                message: format!("unknown move kind {other:?}"),
                            })
                        }
                    };
                    let illegal = |source| TranscriptError::Illegal { line: n + 1, source };
                    match t.as_mut() {
                        None => match mv {
                            Move::Ball(b) => t = Some(Transcript::new(game.clone(), b).map_err(illegal)?),
                            Move::Delete(_) => {
                                return Err(TranscriptError::Format {
                                    line: n + 1,
                                    message: "first move must be a ball".into(),
                                })
                            }
                        },
                        Some(t) => {
                            t.push(mv).map_err(illegal)?;
                        }
                    }
                }
                Record::Abort {
                    index,
                    strategy,
                    reason,
                } => {
                    abort = Some(Abort {
                        index,
                        strategy,
                        reason,
                    })
                }
                Record::Header { .. } => {
                    return Err(TranscriptError::Format {
                        line: n + 1,
                        message: "second header".into(),
                    })
                }
            }
        }
        let mut t = t.ok_or(TranscriptError::Format {
            line: n + 1,
            message: "no moves".into(),
        })?;
        t.alice = alice;
        t.bob = bob;
        t.horizon = horizon;
        t.alice_ratio = alice_ratio;
        t.bob_ratio = bob_ratio;
        t.abort = abort;
        Ok(t)
    }
}

/// One line of the JSONL format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Record {
    Header {
        variant: String,
        space: String,
        c: Scalar,
        alice: String,
        bob: String,
        horizon: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        alice_ratio: Option<Scalar>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        bob_ratio: Option<Scalar>,
    },
    Move {
        index: usize,
        player: Role,
        kind: String,
        ball: FormalBall,
        certificate: Vec<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        path: Option<String>,
    },
    Abort {
        index: usize,
        strategy: String,
        reason: String,
    },
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    fn fb(s: &str) -> FormalBall {
        s.parse().unwrap()
    }

    #[test]
    fn jsonl_round_trip() {
        let game = Game::new(GameVariant::absolute(q(1, 10)), Space::real(1)).unwrap();
        let mut t = Transcript::new(game, fb("0@1")).unwrap();
        t.push(Move::Delete(fb("0@1/10"))).unwrap();
        t.push(Move::Ball(fb("3/5@1/5"))).unwrap();
        t.alice = "center-delete".into();
        let text = t.to_jsonl();
        assert_eq!(text.lines().count(), 4);
        assert!(text.lines().nth(3).unwrap().contains("\"disjoint: 3/5 > 1/5 + 1/10\""));
        let back = Transcript::from_jsonl(&text).unwrap();
        assert_eq!(back, t);
        assert_eq!(back.enclosure(), &fb("3/5@1/5"));
    }

    #[test]
    fn replay_rejects_tampering() {
        let game = Game::new(GameVariant::schmidt(q(1, 2), q(1, 2)), Space::real(1)).unwrap();
        let mut t = Transcript::new(game, fb("0@1")).unwrap();
        t.push(Move::Ball(fb("0@1/2"))).unwrap();
        let text = t.to_jsonl().replace("\"ball\":\"0/1@1/2\"", "\"ball\":\"0/1@1/3\"");
        assert!(matches!(
            Transcript::from_jsonl(&text),
            Err(TranscriptError::Illegal { line: 3, .. })
        ));
    }

    #[test]
    fn truncation_and_prefix() {
        let game = Game::new(GameVariant::schmidt(q(1, 2), q(1, 2)), Space::real(1)).unwrap();
        let mut t = Transcript::new(game, fb("0@1")).unwrap();
        t.push(Move::Ball(fb("0@1/2"))).unwrap();
        t.push(Move::Ball(fb("1/4@1/4"))).unwrap();
        let p = t.truncated(2);
        assert!(p.is_prefix_of(&t));
        assert!(!t.is_prefix_of(&p));
        assert_eq!(t.bob_balls().count(), 2);
    }
}
