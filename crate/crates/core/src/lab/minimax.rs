use std::fmt;

use rayon::prelude::*;

use crate::game::target::Intervals;
use crate::game::{Game, GameVariant, GridMenu, Move, Role, Relation, TargetSet};
use crate::lab::LabError;
use crate::scalar::Scalar;
use crate::space::{FormalBall, Point, Space};
use crate::strategy::Strategy;

/// Node budget for one search.
pub const NODE_BUDGET: u64 = 10_000_000;

/// Remaining depth from which children are searched in parallel.
const PARALLEL_FROM: usize = 4;

/// A finite subgame on the line: centers restricted to the grid
/// `x + kδ` around the current center, radii on the minimal schedule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscreteGameSpec {
    pub variant: GameVariant,
    pub step: Scalar,
    pub initial: FormalBall,
    pub target: Intervals,
    /// Moves after the initial ball.
    pub depth: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    AliceWins,
    BobWins,
    Gap,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::AliceWins => "AliceWins",
            Verdict::BobWins => "BobWins",
            Verdict::Gap => "Gap",
        })
    }
}

/// Game values under both horizon rules. Optimistic: Alice wins if the
/// final ball meets the target. Pessimistic: if it lies inside it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MinimaxValue {
    pub optimistic: bool,
    pub pessimistic: bool,
    pub nodes: u64,
}

impl MinimaxValue {
    pub fn verdict(&self) -> Verdict {
        match (self.optimistic, self.pessimistic) {
            (true, true) => Verdict::AliceWins,
            (false, false) => Verdict::BobWins,
            _ => Verdict::Gap,
        }
    }
}

struct Search<'a> {
    game: Game,
    grid: GridMenu,
    target: &'a Intervals,
    alice: Option<&'a dyn Strategy>,
}

impl DiscreteGameSpec {
    fn game(&self) -> Result<Game, LabError> {
        if self.variant.is_absolute() {
            return Err(LabError::InvalidParameter("grid games need a Schmidt or strong variant".into()));
        }
        if !self.step.is_positive() {
            return Err(LabError::InvalidParameter(format!("grid step {} must be positive", self.step)));
        }
        let game = Game::new(self.variant.clone(), Space::real(1))?;
        game.validate(&[], &Move::Ball(self.initial.clone()))
            .map_err(|e| LabError::InvalidParameter(e.to_string()))?;
        Ok(game)
    }

    /// Exact node count of the search tree, or `None` past `budget`.
    /// With a fixed Alice her nodes have one child.
    pub fn tree_size(&self, fixed_alice: bool, budget: u64) -> Option<u64> {
        let grid = GridMenu::new(self.step.clone());
        let mut rho = self.initial.radius.clone();
        let (mut width, mut total) = (1u64, 1u64);
        for i in 2..=self.depth + 1 {
            let role = Role::of_index(i);
            let r = self.variant.factor(role) * &rho;
            let m = if fixed_alice && role == Role::Alice {
                1
            } else {
                grid.offsets(&(&rho - &r)).len() as u64
            };
            width = width.checked_mul(m)?;
            total = total.checked_add(width)?;
            if total > budget {
                return None;
            }
            rho = r;
        }
        Some(total)
    }
}

impl Search<'_> {
    fn leaf(&self, ball: &FormalBall) -> (bool, bool) {
        match self.target.relation(&self.game.space, ball) {
            Relation::Inside => (true, true),
            Relation::Disjoint => (false, false),
            Relation::Unknown => (true, false),
        }
    }

    fn children(&self, history: &[Move]) -> Result<Vec<Move>, LabError> {
        let role = Role::of_index(history.len() + 1);
        match (role, self.alice) {
            (Role::Alice, Some(s)) => match s.next_move(&self.game, history) {
                Ok(mv) => {
                    self.game
                        .validate(history, &mv)
                        .map_err(|e| LabError::InvalidParameter(format!("{}: {e}", s.name())))?;
                    Ok(vec![mv])
                }
                // a strategy that gives up loses the branch
                Err(_) => Ok(Vec::new()),
            },
            _ => {
                let prev = history.last().expect("initial ball").ball();
                let r = self.game.variant.factor(role) * &prev.radius;
                let x = &prev.center.coords().expect("real line")[0];
                Ok(self
                    .grid
                    .offsets(&(&prev.radius - &r))
                    .into_iter()
                    .map(|o| Move::Ball(FormalBall { center: Point::real(x + o), radius: r.clone() }))
                    .collect())
            }
        }
    }

    fn solve(&self, history: &mut Vec<Move>, left: usize) -> Result<(bool, bool), LabError> {
        if left == 0 {
            return Ok(self.leaf(history.last().expect("initial ball").ball()));
        }
        let alice_moves = Role::of_index(history.len() + 1) == Role::Alice;
        let kids = self.children(history)?;
        if kids.is_empty() {
            return Ok(if alice_moves { (false, false) } else { (true, true) });
        }
        let values: Vec<(bool, bool)> = if left >= PARALLEL_FROM && kids.len() > 1 {
            kids.into_par_iter()
                .map(|mv| {
                    let mut h = history.clone();
                    h.push(mv);
                    self.solve(&mut h, left - 1)
                })
                .collect::<Result<_, _>>()?
        } else {
            let mut out = Vec::with_capacity(kids.len());
            for mv in kids {
                history.push(mv);
                out.push(self.solve(history, left - 1)?);
                history.pop();
            }
            out
        };
        let (opt, pess) = if alice_moves {
            (values.iter().any(|v| v.0), values.iter().any(|v| v.1))
        } else {
            (values.iter().all(|v| v.0), values.iter().all(|v| v.1))
        };
        Ok((opt, pess))
    }
}

fn run(spec: &DiscreteGameSpec, alice: Option<&dyn Strategy>, budget: u64) -> Result<MinimaxValue, LabError> {
    let game = spec.game()?;
    if let Some(s) = alice {
        if s.role() != Role::Alice {
            return Err(LabError::InvalidParameter(format!("{} is not an Alice strategy", s.name())));
        }
        s.check(&game).map_err(|e| LabError::InvalidParameter(e.to_string()))?;
    }
    let nodes = spec.tree_size(alice.is_some(), budget).ok_or(LabError::BudgetExceeded { budget })?;
    let search = Search {
        game,
        grid: GridMenu::new(spec.step.clone()),
        target: &spec.target,
        alice,
    };
    let (optimistic, pessimistic) = search.solve(&mut vec![Move::Ball(spec.initial.clone())], spec.depth)?;
    Ok(MinimaxValue {
        optimistic,
        pessimistic,
        nodes,
    })
}

/// Backward induction over the whole grid tree.
pub fn truncated_minimax(spec: &DiscreteGameSpec) -> Result<MinimaxValue, LabError> {
    truncated_minimax_with_budget(spec, NODE_BUDGET)
}

pub fn truncated_minimax_with_budget(spec: &DiscreteGameSpec, budget: u64) -> Result<MinimaxValue, LabError> {
    run(spec, None, budget)
}

/// Values when Alice plays `alice` and Bob ranges over the grid.
pub fn evaluate_fixed_alice(spec: &DiscreteGameSpec, alice: &dyn Strategy) -> Result<MinimaxValue, LabError> {
    run(spec, Some(alice), NODE_BUDGET)
}
