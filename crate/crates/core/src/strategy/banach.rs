use crate::game::{Game, GameVariant, Move, Role};
use crate::scalar::Scalar;
use crate::space::{ball, translate, FormalBall, Point, SpaceKind};
use crate::strategy::attractor::{attractor_distance_bounds, AttractorSpec};
use crate::strategy::basic::MinRadius;
use crate::strategy::{expect_turn, unsupported, Strategy, StrategyError};

/// Depth used to score phase-one candidates on the line.
const SCORE_DEPTH: usize = 10;
/// Phase-one candidates per side on the line.
const GRID: i64 = 16;

/// Bob avoids `x0` in the absolute game on `R^d` with `β < 1/3`.
///
/// Phase one (one move): play radius `βρ` with a center `x` such that
/// `x0 ∉ x + S`, i.e. `x ∉ S_{βρ}` anchored at `x0`. Phase two: play
/// `B(x_n ± (1-β)ρ_n v, βρ_n)`, whichever misses the deletion, `+v` first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BanachBobAvoid {
    pub x0: Point,
    pub v: Vec<Scalar>,
    /// Index of the phase-one move (rounded up to Bob's next move, at least 3).
    pub phase_one_at: usize,
}

impl BanachBobAvoid {
    /// `v` defaults to the first basis vector.
    pub fn new(x0: Point, v: Option<Vec<Scalar>>) -> Self {
        let dim = x0.coords().map_or(1, <[Scalar]>::len);
        let v = v.unwrap_or_else(|| {
            let mut e = vec![Scalar::zero(); dim];
            e[0] = Scalar::one();
            e
        });
        BanachBobAvoid { x0, v, phase_one_at: 3 }
    }

    pub fn starting_at(mut self, index: usize) -> Self {
        self.phase_one_at = index;
        self
    }

    /// The Bob move index where phase one happens.
    pub fn phase_one_index(&self) -> usize {
        let n = self.phase_one_at.max(3);
        if n.is_multiple_of(2) {
            n + 1
        } else {
            n
        }
    }

    fn beta<'a>(&self, game: &'a Game) -> Result<&'a Scalar, StrategyError> {
        match &game.variant {
            GameVariant::Absolute { beta } => Ok(beta),
            v => Err(unsupported(self, v.to_string())),
        }
    }

    /// The two phase-two candidates, `+v` first.
    pub fn candidates(&self, outer: &FormalBall, beta: &Scalar) -> [FormalBall; 2] {
        let r = beta * &outer.radius;
        let step = (Scalar::one() - beta) * &outer.radius;
        [
            ball(translate(&outer.center, &self.v, &step), r.clone()),
            ball(translate(&outer.center, &self.v, &-step), r),
        ]
    }

    fn phase_one(&self, game: &Game, history: &[Move], beta: &Scalar) -> Result<Move, StrategyError> {
        let n = history.len();
        let outer = history[n - 2].ball();
        let r = beta * &outer.radius;
        let reach = (Scalar::one() - beta) * &outer.radius;
        let x = outer.center.coords().expect("checked Euclidean");
        let dim = x.len();
        let candidates: Vec<Point> = if dim >= 2 {
            // vertices of the max-norm box of legal centers
            (0..1usize << dim)
                .map(|mask| {
                    Point::Euclidean(
                        (0..dim)
                            .map(|i| if mask >> i & 1 == 1 { &x[i] + &reach } else { &x[i] - &reach })
                            .collect(),
                    )
                })
                .collect()
        } else {
            (-GRID..=GRID)
                .map(|k| Point::real(&x[0] + &reach * Scalar::new(k, GRID)))
                .collect()
        };
        let attractor = AttractorSpec::new(&self.x0, self.v.clone(), beta.clone(), r.clone())?;
        let mut best: Option<(Scalar, Point)> = None;
        for z in candidates {
            let mv = Move::Ball(ball(z.clone(), r.clone()));
            if !game.is_legal(history, &mv) {
                continue;
            }
            let score = if dim >= 2 {
                distance_to_line(&z, &self.x0, &self.v)
            } else {
                attractor_distance_bounds(&attractor, &z, SCORE_DEPTH)?.0
            };
            // strict comparison keeps the lexicographically smallest on ties
            let better = match &best {
                None => true,
                Some((s, p)) => score > *s || (score == *s && z < *p),
            };
            if better {
                best = Some((score, z));
            }
        }
        match best {
            Some((score, z)) if score.is_positive() => Ok(Move::Ball(ball(z, r))),
            _ => Err(StrategyError::NoLegalCandidate(
                "no phase-one center off the attractor".into(),
            )),
        }
    }
}

/// Max-norm distance from `p` to the line `x0 + R v`, exactly.
///
/// `t ↦ max_i |w_i - t v_i|` is convex and piecewise linear, so its minimum
/// sits at a crossing of two of the lines `±(w_i - t v_i)`.
pub fn distance_to_line(p: &Point, x0: &Point, v: &[Scalar]) -> Scalar {
    let (Some(p), Some(x0)) = (p.coords(), x0.coords()) else {
        return Scalar::zero();
    };
    let w: Vec<Scalar> = p.iter().zip(x0).map(|(a, b)| a - b).collect();
    let f = |t: &Scalar| {
        w.iter()
            .zip(v)
            .map(|(wi, vi)| (wi - t * vi).abs())
            .max()
            .unwrap_or_default()
    };
    let mut ts = Vec::new();
    for i in 0..w.len() {
        if !v[i].is_zero() {
            ts.push(&w[i] / &v[i]);
        }
        for j in i + 1..w.len() {
            let dm = &v[i] - &v[j];
            if !dm.is_zero() {
                ts.push((&w[i] - &w[j]) / dm);
            }
            let dp = &v[i] + &v[j];
            if !dp.is_zero() {
                ts.push((&w[i] + &w[j]) / dp);
            }
        }
    }
    ts.iter().map(f).min().unwrap_or_else(|| f(&Scalar::zero()))
}

impl Strategy for BanachBobAvoid {
    fn name(&self) -> String {
        let v: Vec<String> = self.v.iter().map(Scalar::to_string).collect();
        let mut s = format!("banach-avoid(x0={},v=({})", self.x0, v.join(","));
        if self.phase_one_at != 3 {
            s.push_str(&format!(",from={}", self.phase_one_at));
        }
        s.push(')');
        s
    }

    fn role(&self) -> Role {
        Role::Bob
    }

    fn check(&self, game: &Game) -> Result<(), StrategyError> {
        let beta = self.beta(game)?;
        if !matches!(game.space.kind(), SpaceKind::RealMax(_)) {
            return Err(unsupported(self, game.space.to_string()));
        }
        game.space.check_point(&self.x0)?;
        if *beta >= Scalar::new(1, 3) {
            return Err(StrategyError::PreconditionViolated(format!("beta {beta} must be < 1/3")));
        }
        AttractorSpec::new(&self.x0, self.v.clone(), beta.clone(), Scalar::one())?;
        Ok(())
    }

    fn next_move(&self, game: &Game, history: &[Move]) -> Result<Move, StrategyError> {
        let index = expect_turn(Role::Bob, history)?;
        self.check(game)?;
        let beta = self.beta(game)?;
        let start = self.phase_one_index();
        if index < start {
            return MinRadius::new(Role::Bob).next_move(game, history);
        }
        if index == start {
            return self.phase_one(game, history, beta);
        }
        let n = history.len();
        for cand in self.candidates(history[n - 2].ball(), beta) {
            let mv = Move::Ball(cand);
            if game.is_legal(history, &mv) {
                return Ok(mv);
            }
        }
        Err(StrategyError::NoLegalCandidate(
            "both phase-two balls meet the deletion".into(),
        ))
    }

    fn radius_ratio(&self, game: &Game) -> Option<Scalar> {
        Some(game.variant.beta().clone())
    }
}
