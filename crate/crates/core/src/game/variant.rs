use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;
use crate::space::{FormalBall, Space};

/// Which player makes a move. Bob makes the odd moves (`ω_1, ω_3, ...`),
/// Alice the even ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Alice,
    Bob,
}

impl Role {
    /// Role of the player making move number `index` (1-based).
    pub fn of_index(index: usize) -> Role {
        if index % 2 == 1 {
            Role::Bob
        } else {
            Role::Alice
        }
    }

    pub fn opponent(self) -> Role {
        match self {
            Role::Alice => Role::Bob,
            Role::Bob => Role::Alice,
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Role::Alice => "alice",
            Role::Bob => "bob",
        })
    }
}

impl FromStr for Role {
    type Err = VariantError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "alice" => Ok(Role::Alice),
            "bob" => Ok(Role::Bob),
            other => Err(VariantError::Parse(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VariantError {
    #[error("parameter {name} = {value} must lie in (0,1)")]
    OutOfRange { name: &'static str, value: Scalar },
    #[error("absolute game needs beta < c/5 = {bound} (or beta < 1/3 on a Banach space), got {beta}")]
    NotPlayable { beta: Scalar, bound: Scalar },
    #[error("could not parse {0:?}")]
    Parse(String),
}

/// The three games.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GameVariant {
    /// Radii follow `ρ'_n = α ρ_n`, `ρ_{n+1} = β ρ'_n` exactly.
    Schmidt { alpha: Scalar, beta: Scalar },
    /// Radii follow `ρ'_n >= α ρ_n`, `ρ_{n+1} >= β ρ'_n`.
    Strong { alpha: Scalar, beta: Scalar },
    /// Alice deletes a ball of radius `<= β ρ_n`; Bob answers with radius
    /// `>= β ρ_n` disjoint from it.
    Absolute { beta: Scalar },
}

impl GameVariant {
    pub fn schmidt(alpha: Scalar, beta: Scalar) -> Self {
        GameVariant::Schmidt { alpha, beta }
    }

    pub fn strong(alpha: Scalar, beta: Scalar) -> Self {
        GameVariant::Strong { alpha, beta }
    }

    pub fn absolute(beta: Scalar) -> Self {
        GameVariant::Absolute { beta }
    }

    pub fn alpha(&self) -> Option<&Scalar> {
        match self {
            GameVariant::Schmidt { alpha, .. } | GameVariant::Strong { alpha, .. } => Some(alpha),
            GameVariant::Absolute { .. } => None,
        }
    }

    pub fn beta(&self) -> &Scalar {
        match self {
            GameVariant::Schmidt { beta, .. }
            | GameVariant::Strong { beta, .. }
            | GameVariant::Absolute { beta } => beta,
        }
    }

    pub fn is_absolute(&self) -> bool {
        matches!(self, GameVariant::Absolute { .. })
    }

    /// Radius factor of `role`: `α` for Alice, `β` for Bob. In the absolute
    /// game both are `β` (deletion bound and Bob's lower bound).
    pub fn factor(&self, role: Role) -> &Scalar {
        match (self, role) {
            (GameVariant::Schmidt { alpha, .. }, Role::Alice)
            | (GameVariant::Strong { alpha, .. }, Role::Alice) => alpha,
            _ => self.beta(),
        }
    }

    /// Parameter ranges, plus the playability bound of the absolute game.
    pub fn check_playable(&self, space: &Space) -> Result<(), VariantError> {
        let unit = |name: &'static str, v: &Scalar| {
            if v.is_positive() && *v < Scalar::one() {
                Ok(())
            } else {
                Err(VariantError::OutOfRange {
                    name,
                    value: v.clone(),
                })
            }
        };
        if let Some(alpha) = self.alpha() {
            unit("alpha", alpha)?;
        }
        unit("beta", self.beta())?;
        if let GameVariant::Absolute { beta } = self {
            let bound = space.constant() / Scalar::from_int(5);
            let banach_ok = space.is_banach() && *beta < Scalar::new(1, 3);
            if *beta >= bound && !banach_ok {
                return Err(VariantError::NotPlayable {
                    beta: beta.clone(),
                    bound,
                });
            }
        }
        Ok(())
    }
}

impl fmt::Display for GameVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GameVariant::Schmidt { alpha, beta } => write!(f, "schmidt({alpha},{beta})"),
            GameVariant::Strong { alpha, beta } => write!(f, "strong({alpha},{beta})"),
            GameVariant::Absolute { beta } => write!(f, "absolute({beta})"),
        }
    }
}

impl FromStr for GameVariant {
    type Err = VariantError;

    /// `schmidt(a,b)`, `strong(a,b)` or `absolute(b)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || VariantError::Parse(s.to_string());
        let s = s.trim();
        let (name, rest) = s.split_once('(').ok_or_else(bad)?;
        let args = rest.strip_suffix(')').ok_or_else(bad)?;
        let params = args
            .split(',')
            .map(|a| a.trim().parse::<Scalar>().map_err(|_| bad()))
            .collect::<Result<Vec<_>, _>>()?;
        match (name.trim(), params.as_slice()) {
            ("schmidt", [a, b]) => Ok(GameVariant::schmidt(a.clone(), b.clone())),
            ("strong", [a, b]) => Ok(GameVariant::strong(a.clone(), b.clone())),
            ("absolute", [b]) => Ok(GameVariant::absolute(b.clone())),
            _ => Err(bad()),
        }
    }
}

/// A single move: a ball played by either player, or (absolute game only)
/// a ball deleted by Alice.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Move {
    Ball(FormalBall),
    Delete(FormalBall),
}

impl Move {
    /// The formal ball carried by the move, whatever its kind.
    pub fn ball(&self) -> &FormalBall {
        match self {
            Move::Ball(b) | Move::Delete(b) => b,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Move::Ball(_) => "ball",
            Move::Delete(_) => "delete",
        }
    }

    pub fn is_delete(&self) -> bool {
        matches!(self, Move::Delete(_))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    #[test]
    fn variant_text() {
        for s in ["schmidt(1/2,1/2)", "strong(1/3,1/5)", "absolute(1/10)"] {
            assert_eq!(s.parse::<GameVariant>().unwrap().to_string(), s);
        }
        assert!("absolute(1/2,1/3)".parse::<GameVariant>().is_err());
        assert!("schmidt(1/2".parse::<GameVariant>().is_err());
    }

    #[test]
    fn playability() {
        let real = Space::real(1);
        assert!(GameVariant::absolute(q(1, 10)).check_playable(&real).is_ok());
        // Banach exception allows beta up to 1/3
        assert!(GameVariant::absolute(q(1, 4)).check_playable(&real).is_ok());
        assert!(GameVariant::absolute(q(1, 3)).check_playable(&real).is_err());
        let cantor = Space::cantor();
        assert!(matches!(
            GameVariant::absolute(q(1, 40)).check_playable(&cantor),
            Err(VariantError::NotPlayable { .. })
        ));
        assert!(GameVariant::absolute(q(1, 50)).check_playable(&cantor).is_ok());
        assert!(GameVariant::schmidt(q(1, 1), q(1, 2)).check_playable(&real).is_err());
    }

    #[test]
    fn roles() {
        assert_eq!(Role::of_index(1), Role::Bob);
        assert_eq!(Role::of_index(2), Role::Alice);
        assert_eq!(Role::Alice.opponent(), Role::Bob);
    }
}
