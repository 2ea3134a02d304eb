use std::fmt;

use crate::game::variant::{GameVariant, Move, Role, VariantError};
use crate::scalar::Scalar;
use crate::space::{FormalBall, Space, SpaceError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rel {
    Eq,
    Lt,
    Le,
    Ge,
    Gt,
}

impl Rel {
    pub fn holds(self, lhs: &Scalar, rhs: &Scalar) -> bool {
        match self {
            Rel::Eq => lhs == rhs,
            Rel::Lt => lhs < rhs,
            Rel::Le => lhs <= rhs,
            Rel::Ge => lhs >= rhs,
            Rel::Gt => lhs > rhs,
        }
    }
}

impl fmt::Display for Rel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rel::Eq => "=",
            Rel::Lt => "<",
            Rel::Le => "<=",
            Rel::Ge => ">=",
            Rel::Gt => ">",
        })
    }
}

/// One instantiated inequality, e.g. `nested: 1/2 + 1/4 <= 1/1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Inequality {
    pub label: &'static str,
    pub lhs_text: String,
    pub lhs: Scalar,
    pub rel: Rel,
    pub rhs_text: String,
    pub rhs: Scalar,
}

impl Inequality {
    pub fn holds(&self) -> bool {
        self.rel.holds(&self.lhs, &self.rhs)
    }
}

impl fmt::Display for Inequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} {} {}", self.label, self.lhs_text, self.rel, self.rhs_text)
    }
}

/// The exact inequalities checked when accepting a move.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LegalityCertificate {
    pub inequalities: Vec<Inequality>,
}

impl LegalityCertificate {
    /// Re-evaluates every inequality.
    pub fn holds(&self) -> bool {
        self.inequalities.iter().all(Inequality::holds)
    }

    pub fn lines(&self) -> Vec<String> {
        self.inequalities.iter().map(|i| i.to_string()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IllegalMove {
    #[error("move {index}: expected a {expected} move from {player}")]
    WrongParity {
        index: usize,
        player: Role,
        expected: &'static str,
    },
    #[error("move {index}: wrong radius ({inequality})")]
    WrongRadius { index: usize, inequality: String },
    #[error("move {index}: not formally nested ({inequality})")]
    NotNested { index: usize, inequality: String },
    #[error("move {index}: meets the deleted ball ({inequality})")]
    IntersectsDeleted { index: usize, inequality: String },
    #[error("move {index}: {source}")]
    Space { index: usize, source: SpaceError },
    #[error(transparent)]
    Variant(#[from] VariantError),
}

fn ineq(
    label: &'static str,
    lhs_text: String,
    lhs: Scalar,
    rel: Rel,
    rhs_text: String,
    rhs: Scalar,
) -> Inequality {
    Inequality {
        label,
        lhs_text,
        lhs,
        rel,
        rhs_text,
        rhs,
    }
}

fn radius_law(rel: Rel, radius: &Scalar, factor: &Scalar, prev: &Scalar) -> Inequality {
    ineq(
        "radius",
        radius.to_string(),
        radius.clone(),
        rel,
        format!("{factor}*{prev}"),
        factor * prev,
    )
}

fn nested(space: &Space, inner: &FormalBall, outer: &FormalBall) -> Result<Inequality, SpaceError> {
    let d = space.distance(&outer.center, &inner.center)?;
    Ok(ineq(
        "nested",
        format!("{} + {}", inner.radius, d),
        &inner.radius + &d,
        Rel::Le,
        outer.radius.to_string(),
        outer.radius.clone(),
    ))
}

fn disjoint(space: &Space, ball: &FormalBall, deleted: &FormalBall) -> Result<Inequality, SpaceError> {
    let d = space.distance(&ball.center, &deleted.center)?;
    Ok(ineq(
        "disjoint",
        d.to_string(),
        d,
        Rel::Gt,
        format!("{} + {}", ball.radius, deleted.radius),
        &ball.radius + &deleted.radius,
    ))
}

/// An inequality and the error to raise when it fails.
type Check = (Inequality, fn(usize, String) -> IllegalMove);

/// Checks `mv` as move number `history.len() + 1` and returns the
/// instantiated inequalities.
///
/// Absolute-game disjointness is strict: `d(centers) > r1 + r2`.
pub fn validate_move(
    variant: &GameVariant,
    space: &Space,
    history: &[Move],
    mv: &Move,
) -> Result<LegalityCertificate, IllegalMove> {
    let index = history.len() + 1;
    let player = Role::of_index(index);
    let sp = |source| IllegalMove::Space { index, source };
    space.check_ball(mv.ball()).map_err(sp)?;

    let expect_delete = variant.is_absolute() && player == Role::Alice;
    if mv.is_delete() != expect_delete {
        return Err(IllegalMove::WrongParity {
            index,
            player,
            expected: if expect_delete { "delete" } else { "ball" },
        });
    }

    let ball = mv.ball();
    let mut cert = LegalityCertificate::default();
    if index == 1 {
        cert.inequalities.push(ineq(
            "radius",
            ball.radius.to_string(),
            ball.radius.clone(),
            Rel::Gt,
            Scalar::zero().to_string(),
            Scalar::zero(),
        ));
        return Ok(cert);
    }

    let checks: Vec<Check> = match variant {
        GameVariant::Schmidt { .. } | GameVariant::Strong { .. } => {
            let prev = history[index - 2].ball();
            let rel = if matches!(variant, GameVariant::Schmidt { .. }) {
                Rel::Eq
            } else {
                Rel::Ge
            };
            vec![
                (
                    radius_law(rel, &ball.radius, variant.factor(player), &prev.radius),
                    wrong_radius,
                ),
                (nested(space, ball, prev).map_err(sp)?, not_nested),
            ]
        }
        GameVariant::Absolute { beta } if player == Role::Alice => {
            let prev = history[index - 2].ball();
            vec![(radius_law(Rel::Le, &ball.radius, beta, &prev.radius), wrong_radius)]
        }
        GameVariant::Absolute { beta } => {
            let deleted = history[index - 2].ball();
            let prev = history[index - 3].ball();
            vec![
                (radius_law(Rel::Ge, &ball.radius, beta, &prev.radius), wrong_radius),
                (nested(space, ball, prev).map_err(sp)?, not_nested),
                (disjoint(space, ball, deleted).map_err(sp)?, intersects),
            ]
        }
    };
    for (inequality, err) in checks {
        if !inequality.holds() {
            return Err(err(index, inequality.to_string()));
        }
        cert.inequalities.push(inequality);
    }
    Ok(cert)
}

fn wrong_radius(index: usize, inequality: String) -> IllegalMove {
    IllegalMove::WrongRadius { index, inequality }
}

fn not_nested(index: usize, inequality: String) -> IllegalMove {
    IllegalMove::NotNested { index, inequality }
}

fn intersects(index: usize, inequality: String) -> IllegalMove {
    IllegalMove::IntersectsDeleted { index, inequality }
}
