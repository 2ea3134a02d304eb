use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::game::{Game, GameVariant, Move, Role};
use crate::scalar::Scalar;
use crate::space::{ball, cylinder_depth, pick_disjoint, DigitSeq, Point, Space};
use crate::strategy::{
    expect_turn, is_schmidt_or_strong, min_radius_for, outer_ball, unsupported, Strategy,
    StrategyError,
};

/// Smallest legal radius every turn. Schmidt and strong games keep the
/// center; Bob in the absolute game plays radius `βρ` away from the deletion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinRadius {
    pub role: Role,
}

impl MinRadius {
    pub fn new(role: Role) -> Self {
        MinRadius { role }
    }
}

impl Strategy for MinRadius {
    fn name(&self) -> String {
        "min-radius".into()
    }

    fn role(&self) -> Role {
        self.role
    }

    fn check(&self, game: &Game) -> Result<(), StrategyError> {
        if game.variant.is_absolute() && self.role == Role::Alice {
            return Err(unsupported(self, "Alice in the absolute game"));
        }
        Ok(())
    }

    fn next_move(&self, game: &Game, history: &[Move]) -> Result<Move, StrategyError> {
        expect_turn(self.role, history)?;
        self.check(game)?;
        let outer = outer_ball(game, history);
        let radius = min_radius_for(game, history);
        if is_schmidt_or_strong(&game.variant) {
            return Ok(Move::Ball(ball(outer.center.clone(), radius)));
        }
        let deleted = history[history.len() - 1].ball();
        let b = pick_disjoint(&game.space, outer, &deleted.center, &deleted.radius, &radius)
            .map_err(|e| StrategyError::NoLegalCandidate(e.to_string()))?;
        Ok(Move::Ball(b))
    }

    fn radius_ratio(&self, game: &Game) -> Option<Scalar> {
        Some(game.variant.factor(self.role).clone())
    }
}

/// Repeats the previous ball (strong game only).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CopyBall {
    pub role: Role,
}

impl CopyBall {
    pub fn new(role: Role) -> Self {
        CopyBall { role }
    }
}

impl Strategy for CopyBall {
    fn name(&self) -> String {
        "copy".into()
    }

    fn role(&self) -> Role {
        self.role
    }

    fn check(&self, game: &Game) -> Result<(), StrategyError> {
        match game.variant {
            GameVariant::Strong { .. } => Ok(()),
            _ => Err(unsupported(self, game.variant.to_string())),
        }
    }

    fn next_move(&self, game: &Game, history: &[Move]) -> Result<Move, StrategyError> {
        expect_turn(self.role, history)?;
        self.check(game)?;
        Ok(Move::Ball(outer_ball(game, history).clone()))
    }

    fn radius_ratio(&self, _: &Game) -> Option<Scalar> {
        Some(Scalar::one())
    }
}

/// A legal move drawn from a seeded generator. The generator is keyed by
/// the seed and the history, so the strategy stays a pure function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RandomLegal {
    pub role: Role,
    pub seed: u64,
}

const STEPS: i64 = 16;

impl RandomLegal {
    pub fn new(role: Role, seed: u64) -> Self {
        RandomLegal { role, seed }
    }

    fn rng(&self, history: &[Move]) -> ChaCha8Rng {
        // FNV-1a over the seed and the canonical text of the history
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        let mut eat = |bytes: &[u8]| {
            for b in bytes {
                h ^= u64::from(*b);
                h = h.wrapping_mul(0x0000_0100_0000_01b3);
            }
        };
        eat(&self.seed.to_le_bytes());
        for m in history {
            eat(m.kind().as_bytes());
            eat(m.ball().to_string().as_bytes());
        }
        ChaCha8Rng::seed_from_u64(h)
    }
}

fn fraction(rng: &mut ChaCha8Rng, lo: i64) -> Scalar {
    Scalar::new(rng.gen_range(lo..=STEPS), STEPS)
}

/// A point at distance at most `reach` from `x`.
pub fn random_point(space: &Space, x: &Point, reach: &Scalar, rng: &mut ChaCha8Rng) -> Point {
    if !reach.is_positive() {
        return x.clone();
    }
    let random_tail = |seq: &DigitSeq, keep: usize, alphabet: [u8; 2], rng: &mut ChaCha8Rng| {
        let mut digits: Vec<u8> = (0..keep).map(|i| seq.digit(i)).collect();
        digits.extend((0..6).map(|_| alphabet[rng.gen_range(0..2)]));
        DigitSeq::new(digits, alphabet[rng.gen_range(0..2)])
    };
    let z = match x {
        Point::Euclidean(c) => Point::Euclidean(
            c.iter()
                .map(|xi| xi + reach * Scalar::new(rng.gen_range(-STEPS..=STEPS), STEPS))
                .collect(),
        ),
        Point::Cantor(seq) => {
            // agreeing on the first j ternary digits keeps |x - z| <= 3^{-j}
            let third = Scalar::new(1, 3);
            let mut j = 0;
            while third.pow(j as u32) > *reach {
                j += 1;
            }
            Point::Cantor(random_tail(seq, j, [0, 2], rng))
        }
        Point::BinarySeq(seq) => Point::BinarySeq(random_tail(seq, cylinder_depth(reach), [0, 1], rng)),
    };
    match space.distance(x, &z) {
        Ok(d) if d <= *reach => z,
        _ => x.clone(),
    }
}

impl Strategy for RandomLegal {
    fn name(&self) -> String {
        format!("random(seed={})", self.seed)
    }

    fn role(&self) -> Role {
        self.role
    }

    fn next_move(&self, game: &Game, history: &[Move]) -> Result<Move, StrategyError> {
        expect_turn(self.role, history)?;
        let mut rng = self.rng(history);
        let outer = outer_ball(game, history).clone();
        let rho = &outer.radius;
        let space = &game.space;
        match (&game.variant, self.role) {
            (GameVariant::Schmidt { .. }, role) => {
                let r = game.variant.factor(role) * rho;
                let z = random_point(space, &outer.center, &(rho - &r), &mut rng);
                Ok(Move::Ball(ball(z, r)))
            }
            (GameVariant::Strong { .. }, role) => {
                let f = game.variant.factor(role);
                let r = f * rho + fraction(&mut rng, 0) * (rho - f * rho);
                let z = random_point(space, &outer.center, &(rho - &r), &mut rng);
                Ok(Move::Ball(ball(z, r)))
            }
            (GameVariant::Absolute { beta }, Role::Alice) => {
                if rng.gen_range(0..4) == 0 {
                    return Ok(Move::Delete(ball(outer.center.clone(), beta * rho)));
                }
                let r = beta * rho * fraction(&mut rng, 1);
                let z = random_point(space, &outer.center, rho, &mut rng);
                Ok(Move::Delete(ball(z, r)))
            }
            (GameVariant::Absolute { beta }, Role::Bob) => {
                let lo = beta * rho;
                let span = rho.half() - &lo;
                for _ in 0..64 {
                    let r = &lo + fraction(&mut rng, 0) * &span;
                    let z = random_point(space, &outer.center, &(rho - &r), &mut rng);
                    let mv = Move::Ball(ball(z, r));
                    if game.is_legal(history, &mv) {
                        return Ok(mv);
                    }
                }
                MinRadius::new(Role::Bob).next_move(game, history)
            }
        }
    }
}
