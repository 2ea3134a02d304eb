//! Seeded invariant suites behind `metric-games verify`.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::game::{outcome, run_game, Game, GameError, GameVariant, Role, Transcript};
use crate::lab::{
    attractor_samples, box_counting_estimate, classify_parameters, dimension_exact, measure_upper_bound,
    truncated_minimax, DiscreteGameSpec, Label, Verdict,
};
use crate::perfect::{build_perfect_tree, verify_tree_with};
use crate::scalar::Scalar;
use crate::space::{FormalBall, Point, Space};
use crate::strategy::{
    attractor_distance_bounds, good_turns, random_point, AbsoluteAvoidPoint, AbsoluteBobAvoid, AttractorSpec,
    BanachBobAvoid, CenterDelete, CopyBall, MinRadius, RandomLegal, SchmidtAvoidPoint, Strategy, TargetChaser,
    ThresholdControl,
};

pub const SUITES: [&str; 5] = ["geometry", "engine", "strategies", "tree", "lab"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Property {
    pub name: &'static str,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl Property {
    fn new(name: &'static str) -> Self {
        Property {
            name,
            cases: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.failures.len() < 5 {
            self.failures.push(what());
        } else if !ok {
            self.failures.push(String::new());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: String,
    pub properties: Vec<Property>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.properties.iter().all(Property::passed)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.properties {
            let status = if p.passed() { "PASS" } else { "FAIL" };
            writeln!(f, "{status} {}: {} cases, {} failures", p.name, p.cases, p.failures.len())?;
            for msg in p.failures.iter().filter(|m| !m.is_empty()) {
                writeln!(f, "    {msg}")?;
            }
        }
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{status} suite {}", self.suite)
    }
}

#[derive(Debug, thiserror::Error)]
#[error("unknown suite {0:?} (expected one of geometry, engine, strategies, tree, lab)")]
pub struct UnknownSuite(pub String);

/// Options shared by the suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteOptions {
    pub cases: usize,
    pub seed: u64,
    /// Tree depth for the `tree` suite.
    pub depth: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            cases: 200,
            seed: 0,
            depth: 4,
        }
    }
}

pub fn run_suite(name: &str, opts: SuiteOptions) -> Result<SuiteReport, UnknownSuite> {
    let properties = match name {
        "geometry" => geometry(opts),
        "engine" => engine(opts),
        "strategies" => strategies(opts),
        "tree" => tree(opts),
        "lab" => lab(opts),
        other => return Err(UnknownSuite(other.to_string())),
    };
    Ok(SuiteReport {
        suite: name.to_string(),
        properties,
    })
}

fn rng(opts: SuiteOptions, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(opts.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

fn fraction(rng: &mut ChaCha8Rng, den: i64) -> Scalar {
    Scalar::new(rng.gen_range(1..=den), den)
}

pub fn sample_spaces() -> Vec<Space> {
    vec![Space::real(1), Space::real(2), Space::cantor(), Space::binary()]
}

fn random_ball(space: &Space, rng: &mut ChaCha8Rng) -> FormalBall {
    let center = random_point(space, &space.origin(), &Scalar::one(), rng);
    FormalBall {
        center,
        radius: fraction(rng, 27),
    }
}

/// A ball and a second one centered near it, so that both nested and
/// non-nested pairs are common.
fn random_pair(space: &Space, rng: &mut ChaCha8Rng) -> (FormalBall, FormalBall) {
    let outer = random_ball(space, rng);
    let reach = &outer.radius * fraction(rng, 8);
    let center = random_point(space, &outer.center, &reach, rng);
    let inner = FormalBall {
        center,
        radius: &outer.radius * fraction(rng, 9),
    };
    (inner, outer)
}

fn geometry(opts: SuiteOptions) -> Vec<Property> {
    let mut order = Property::new("formal order implies containment");
    let mut equiv = Property::new("containment implies formal order on real spaces");
    let mut converse = Property::new("cantor containment without formal order found");
    let mut partial = Property::new("formal order is reflexive and transitive");
    let mut witness = Property::new("uniform-perfectness witness in (c rho, rho]");
    let mut counterexamples = 0;
    for (si, space) in sample_spaces().iter().enumerate() {
        let mut rng = rng(opts, 10 + si as u64);
        for _ in 0..opts.cases {
            let (a, b) = random_pair(space, &mut rng);
            let leq = space.formal_leq(&a, &b).expect("sampled in space");
            let sub = space.ball_subset(&a, &b).expect("sampled in space");
            order.check(!leq || sub, || format!("{space}: {a} <= {b} but not contained"));
            if space.is_banach() {
                equiv.check(leq == sub, || format!("{space}: {a}, {b}: leq {leq}, subset {sub}"));
            }
            if sub && !leq && space.kind() == crate::space::SpaceKind::CantorTernary {
                counterexamples += 1;
            }
            let (c, _) = random_pair(space, &mut rng);
            partial.check(space.formal_leq(&a, &a).unwrap_or(false), || format!("{a} not <= itself"));
            let chain = space.formal_leq(&c, &a).unwrap_or(false) && leq;
            partial.check(!chain || space.formal_leq(&c, &b).unwrap_or(false), || {
                format!("{c} <= {a} <= {b} but not {c} <= {b}")
            });
            let rho = fraction(&mut rng, 64);
            let cst = space.constant();
            let ok = match space.uniform_perfect_witness(&a.center, &rho, cst) {
                Ok(p) => {
                    let d = space.distance(&a.center, &p).expect("witness in space");
                    d > cst * &rho && d <= rho
                }
                Err(_) => false,
            };
            witness.check(ok, || format!("{space}: no witness at {}@{rho}", a.center));
        }
    }
    converse.check(counterexamples > 0, || "no counterexample sampled".into());
    vec![order, equiv, converse, partial, witness]
}

fn engine_games() -> Vec<Game> {
    let q = Scalar::new;
    let mut out = Vec::new();
    for space in sample_spaces() {
        let c = space.constant().clone();
        for v in [
            GameVariant::schmidt(q(1, 3), q(1, 5)),
            GameVariant::strong(q(1, 2), q(1, 2)),
            GameVariant::absolute(c / Scalar::from_int(6)),
        ] {
            out.push(Game::new(v, space.clone()).expect("playable"));
        }
    }
    out
}

fn initial(space: &Space) -> FormalBall {
    FormalBall {
        center: space.origin(),
        radius: Scalar::one(),
    }
}

fn transcript_audit(t: &Transcript, radius_law: &mut Property, cauchy: &mut Property) {
    let space = t.space();
    if let GameVariant::Schmidt { alpha, beta } = t.variant() {
        for (i, w) in t.moves().windows(2).enumerate() {
            let f = if Role::of_index(i + 2) == Role::Alice { alpha } else { beta };
            radius_law.check(w[1].ball().radius == f * &w[0].ball().radius, || {
                format!("move {}: {} != {f} * {}", i + 2, w[1].ball().radius, w[0].ball().radius)
            });
        }
    }
    let bob: Vec<&FormalBall> = t.bob_balls().collect();
    for (m, a) in bob.iter().enumerate() {
        for b in &bob[m + 1..] {
            let d = space.distance(&a.center, &b.center).expect("same space");
            cauchy.check(d <= &a.radius - &b.radius, || format!("{a} -> {b}: distance {d}"));
        }
    }
}

fn engine(opts: SuiteOptions) -> Vec<Property> {
    let mut certs = Property::new("certificates re-verify");
    let mut law = Property::new("Schmidt radius law is exact");
    let mut cauchy = Property::new("Cauchy estimate on Bob's centers");
    let mut jsonl = Property::new("JSONL round trip");
    let mut decay = Property::new("center deletion halves Bob's radius");
    let games = engine_games();
    for i in 0..opts.cases {
        let game = &games[i % games.len()];
        let seed = opts.seed.wrapping_add(i as u64);
        let alice: Box<dyn Strategy> = Box::new(RandomLegal::new(Role::Alice, seed));
        let bob = RandomLegal::new(Role::Bob, seed.wrapping_add(1 << 32));
        match run_game(game, alice.as_ref(), &bob, initial(&game.space), 10) {
            Ok(t) => {
                certs.check(t.certificates().iter().all(|c| c.holds()), || "certificate".into());
                transcript_audit(&t, &mut law, &mut cauchy);
                let back = Transcript::from_jsonl(&t.to_jsonl());
                jsonl.check(back.as_ref().is_ok_and(|b| *b == t), || format!("{}: round trip", game.variant));
            }
            Err(e) => certs.check(false, || e.to_string()),
        }
    }
    for (k, beta) in [(1, 10), (1, 20), (2, 25)].into_iter().enumerate() {
        let game = Game::new(GameVariant::absolute(Scalar::new(beta.0, beta.1)), Space::real(1)).expect("playable");
        for i in 0..opts.cases.div_ceil(3) {
            let bob = RandomLegal::new(Role::Bob, opts.seed.wrapping_add((k * 100_000 + i) as u64));
            match run_game(&game, &CenterDelete, &bob, initial(&game.space), 20) {
                Ok(t) => {
                    let radii: Vec<&Scalar> = t.bob_balls().map(|b| &b.radius).collect();
                    for w in radii.windows(2) {
                        decay.check(*w[1] < w[0].half(), || format!("{} -> {}", w[0], w[1]));
                    }
                }
                Err(e) => decay.check(false, || e.to_string()),
            }
        }
    }
    vec![certs, law, cauchy, jsonl, decay]
}

/// Named strategies paired with the games they are meant for.
fn strategy_fixtures() -> Vec<(Game, Box<dyn Strategy>)> {
    let q = Scalar::new;
    let real = Space::real(1);
    let game = |v: GameVariant, s: &Space| Game::new(v, s.clone()).expect("playable");
    let mut out: Vec<(Game, Box<dyn Strategy>)> = Vec::new();
    for space in sample_spaces() {
        for v in [GameVariant::schmidt(q(1, 5), q(1, 5)), GameVariant::strong(q(1, 5), q(1, 5))] {
            for role in [Role::Alice, Role::Bob] {
                out.push((game(v.clone(), &space), Box::new(MinRadius::new(role))));
                out.push((
                    game(v.clone(), &space),
                    Box::new(SchmidtAvoidPoint::new(role, space.origin(), None)),
                ));
            }
        }
        let abs = GameVariant::absolute(space.constant() / Scalar::from_int(6));
        out.push((game(abs.clone(), &space), Box::new(CenterDelete)));
        out.push((game(abs.clone(), &space), Box::new(AbsoluteAvoidPoint::new(space.origin()))));
        out.push((game(abs, &space), Box::new(MinRadius::new(Role::Bob))));
        let tiny = GameVariant::absolute((space.constant() / Scalar::from_int(5)).pow(2) / Scalar::from_int(2));
        out.push((game(tiny, &space), Box::new(AbsoluteBobAvoid::new(space.origin()))));
    }
    let strong = GameVariant::strong(q(1, 2), q(1, 2));
    for role in [Role::Alice, Role::Bob] {
        out.push((game(strong.clone(), &real), Box::new(CopyBall::new(role))));
        out.push((game(strong.clone(), &real), Box::new(TargetChaser::new(role, Point::real(q(0, 1))))));
        out.push((game(strong.clone(), &Space::binary()), Box::new(ThresholdControl::new(role, 1))));
    }
    for space in [Space::real(1), Space::real(2)] {
        out.push((
            game(GameVariant::absolute(q(1, 4)), &space),
            Box::new(BanachBobAvoid::new(space.origin(), None)),
        ));
    }
    out
}

fn strategies(opts: SuiteOptions) -> Vec<Property> {
    let q = Scalar::new;
    let mut legal = Property::new("named strategies only play legal moves");
    let mut margin = Property::new("avoid-point margin is positive");
    let mut gap = Property::new("candidate gap equals 2(1-2beta)rho");
    let mut banach = Property::new("banach-avoid outcome certified away from x0");
    let mut bounds = Property::new("attractor lower <= upper, explicit points at distance 0");
    let mut control = Property::new("threshold controller owns later good turns");
    let mut copy = Property::new("copying keeps radii constant");

    let fixtures = strategy_fixtures();
    let per = opts.cases.div_ceil(fixtures.len()).max(1);
    for (fi, (game, s)) in fixtures.iter().enumerate() {
        for i in 0..per {
            let seed = opts.seed.wrapping_add((fi * 10_000 + i) as u64);
            let other = RandomLegal::new(s.role().opponent(), seed);
            let (a, b): (&dyn Strategy, &dyn Strategy) = match s.role() {
                Role::Alice => (s.as_ref(), &other),
                Role::Bob => (&other, s.as_ref()),
            };
            let t = run_game(game, a, b, initial(&game.space), 12);
            legal.check(!matches!(t, Err(GameError::StrategyIllegalMove { .. })), || {
                format!("{} in {}: {}", s.name(), game.variant, t.as_ref().err().map(|e| e.to_string()).unwrap_or_default())
            });
            let Ok(t) = t else { continue };
            if s.name().starts_with("avoid-point") {
                let y = game.space.origin();
                for (j, mv) in t.moves().iter().enumerate().skip(1) {
                    if Role::of_index(j + 1) == s.role() {
                        let m = SchmidtAvoidPoint::margin(game, &y, mv).expect("same space");
                        margin.check(m.is_positive(), || format!("{} move {}: margin {m}", s.name(), j + 1));
                    }
                }
            }
        }
    }

    let mut rng = rng(opts, 3);
    for _ in 0..opts.cases {
        let beta = Scalar::new(rng.gen_range(1..1000), 3000);
        let rho = fraction(&mut rng, 1000);
        let s = BanachBobAvoid::new(Point::real(q(0, 1)), None);
        let x = Point::real(Scalar::new(rng.gen_range(-100..=100), 7));
        let [c1, c2] = s.candidates(&FormalBall { center: x, radius: rho.clone() }, &beta);
        let real = Space::real(1);
        let g = real.distance(&c1.center, &c2.center).expect("real") - &c1.radius - &c2.radius;
        let two = Scalar::from_int(2);
        let expected = &two * (Scalar::one() - &two * &beta) * &rho;
        gap.check(g == expected && g > &two * &beta * &rho, || format!("beta {beta}, rho {rho}: gap {g}"));
    }

    let game = Game::new(GameVariant::absolute(q(1, 4)), Space::real(1)).expect("playable");
    let x0 = Point::real(q(0, 1));
    let horizon = 24;
    for i in 0..opts.cases.div_ceil(2) {
        let bob = BanachBobAvoid::new(x0.clone(), None);
        let seed = opts.seed.wrapping_add(i as u64);
        let alice: Box<dyn Strategy> = if i % 2 == 0 {
            Box::new(RandomLegal::new(Role::Alice, seed))
        } else {
            Box::new(AbsoluteAvoidPoint::new(x0.clone()))
        };
        let ok = run_game(&game, alice.as_ref(), &bob, initial(&game.space), horizon).is_ok_and(|t| {
            let phase = t.moves()[bob.phase_one_index() - 1].ball();
            AttractorSpec::new(&phase.center, bob.v.clone(), q(1, 4), phase.radius.clone())
                .and_then(|a| attractor_distance_bounds(&a, &x0, horizon / 2))
                .is_ok_and(|(lo, _)| lo.is_positive())
        });
        banach.check(ok, || format!("seed {seed}: no certificate"));
    }

    for _ in 0..opts.cases.div_ceil(4) {
        let beta = Scalar::new(rng.gen_range(1..50), 101);
        let spec = AttractorSpec::new(&Point::real(q(0, 1)), vec![Scalar::one()], beta.clone(), Scalar::one())
            .expect("valid");
        let query = Point::real(Scalar::new(rng.gen_range(-40..=40), 20));
        let depth = rng.gen_range(0..8);
        let ok = attractor_distance_bounds(&spec, &query, depth).is_ok_and(|(lo, hi)| lo <= hi);
        bounds.check(ok, || format!("beta {beta}, q {query}, depth {depth}"));
        let signs: Vec<bool> = (0..6).map(|_| rng.gen()).collect();
        // x0 + Σ_{m<6} ε_m (1-β)β^m + β^6 (all plus afterwards)
        let mut p = Scalar::zero();
        for (m, s) in signs.iter().enumerate() {
            let step = (Scalar::one() - &beta) * beta.pow(m as u32);
            p = if *s { p + step } else { p - step };
        }
        p = p + beta.pow(6);
        let ok = attractor_distance_bounds(&spec, &Point::real(p), 6).is_ok_and(|(lo, _)| lo.is_zero());
        bounds.check(ok, || format!("beta {beta}, signs {signs:?}"));
    }

    let bin = Game::new(GameVariant::strong(q(1, 2), q(1, 2)), Space::binary()).expect("playable");
    let start: FormalBall = "b:|0@1".parse().expect("ball");
    for i in 0..opts.cases.div_ceil(4) {
        let seed = opts.seed.wrapping_add(i as u64);
        for role in [Role::Alice, Role::Bob] {
            let ctl = ThresholdControl::new(role, (i % 2) as u8);
            let other = RandomLegal::new(role.opponent(), seed);
            let (a, b): (&dyn Strategy, &dyn Strategy) = match role {
                Role::Alice => (&ctl, &other),
                Role::Bob => (&other, &ctl),
            };
            let Ok(t) = run_game(&bin, a, b, start.clone(), 32) else {
                control.check(false, || "game failed".into());
                continue;
            };
            let first = t.moves().iter().enumerate().skip(1).position(|(j, _)| Role::of_index(j + 1) == role);
            let first = first.map_or(usize::MAX, |p| p + 2);
            let ok = good_turns(&t).iter().filter(|g| g.index > first).all(|g| g.owner == role);
            control.check(ok, || format!("{role} controller, seed {seed}"));
        }
    }
    let t = run_game(&bin, &CopyBall::new(Role::Alice), &CopyBall::new(Role::Bob), start, 32);
    copy.check(t.is_ok_and(|t| t.balls().all(|b| b.radius == Scalar::one()) && !outcome(&t, &crate::game::target::Everything).shrinking), || "radii changed".into());
    vec![legal, margin, gap, banach, bounds, control, copy]
}

fn tree(opts: SuiteOptions) -> Vec<Property> {
    let q = Scalar::new;
    let mut built = Property::new("perfect tree builds");
    let mut audit = Property::new("tree audit");
    let game = Game::new(GameVariant::schmidt(q(1, 5), q(1, 5)), Space::real(1)).expect("playable");
    let root = Transcript::new(game, initial(&Space::real(1))).expect("initial ball");
    let alice = MinRadius::new(Role::Alice);
    match build_perfect_tree(&alice, &root, opts.depth) {
        Ok(tree) => {
            built.check(true, String::new);
            let rep = verify_tree_with(&tree, Some(&alice));
            audit.cases = rep.checks;
            audit.failures = rep.failures;
        }
        Err(e) => built.check(false, || e.to_string()),
    }
    vec![built, audit]
}

fn lab(opts: SuiteOptions) -> Vec<Property> {
    let q = Scalar::new;
    let mut fixtures = Property::new("classifier fixtures");
    let mut conflicts = Property::new("no conflicting labels, certificates re-verify");
    let mut measure = Property::new("measure bound and cover");
    let mut dimension = Property::new("dimension formula and box counting");
    let mut minimax = Property::new("minimax fixtures and optimistic >= pessimistic");

    let row = |v: GameVariant, banach| classify_parameters(&v, &q(1, 2), banach).map(|r| r.label).ok();
    fixtures.check(
        row(GameVariant::schmidt(q(1, 5), q(1, 5)), false) == Some(Label::UndeterminedOnBernstein(crate::lab::Clause::I)),
        || "clause (i) row".into(),
    );
    fixtures.check(
        row(GameVariant::schmidt(q(99, 100), q(1, 2)), true) == Some(Label::DeterminedForAllS),
        || "determined row".into(),
    );
    fixtures.check(
        row(GameVariant::absolute(q(1, 200)), false) == Some(Label::UndeterminedOnBernstein(crate::lab::Clause::III)),
        || "clause (iii) row".into(),
    );

    let mut rng = rng(opts, 5);
    for _ in 0..opts.cases {
        let a = fraction(&mut rng, 99).min(q(98, 99));
        let b = fraction(&mut rng, 99).min(q(98, 99));
        let c = fraction(&mut rng, 4).min(q(3, 4));
        let banach = rng.gen();
        let v = match rng.gen_range(0..3) {
            0 => GameVariant::schmidt(a, b),
            1 => GameVariant::strong(a, b),
            _ => GameVariant::absolute(b),
        };
        if let Ok(r) = classify_parameters(&v, &c, banach) {
            let clash = r.applicable.iter().any(|x| r.applicable.iter().any(|y| x.conflicts_with(*y)));
            conflicts.check(!clash && r.verify(), || {
                format!("{} c={c} banach={banach}: {:?}", v, r.applicable)
            });
        }
    }

    let m = measure_upper_bound(&q(1, 4), &q(1, 1), 3);
    measure.check(m.as_ref().is_ok_and(|m| m.bound == q(1, 4) && m.cover.len() == 8), || "(1/4, 1, 3)".into());
    for depth in 0..6 {
        let (Ok(m), Ok(samples)) = (measure_upper_bound(&q(1, 3), &q(1, 1), depth), attractor_samples(&q(1, 3), &q(1, 1), depth + 5)) else {
            measure.check(false, || "bad parameters".into());
            continue;
        };
        measure.check(samples.iter().all(|x| m.covers(x)), || format!("depth {depth}: sample outside cover"));
        let next = measure_upper_bound(&q(1, 4), &q(1, 1), depth + 1).map(|n| n.bound);
        let this = measure_upper_bound(&q(1, 4), &q(1, 1), depth).map(|n| n.bound.half());
        measure.check(next.ok() == this.ok(), || format!("depth {depth}: no halving"));
    }

    dimension.check(dimension_exact(&q(1, 4)) == Some(q(1, 2)), || "log_{1/4}(1/2)".into());
    let est = box_counting_estimate(&q(1, 3), 12).unwrap_or(f64::NAN);
    dimension.check((est - 2f64.ln() / 3f64.ln()).abs() <= 0.05, || format!("estimate {est}"));

    let spec = |lo: i64, hi: i64, den: i64, depth| DiscreteGameSpec {
        variant: GameVariant::schmidt(q(1, 2), q(1, 2)),
        step: q(1, 8),
        initial: initial(&Space::real(1)),
        target: crate::game::target::Intervals::new(if lo <= hi { vec![(q(lo, den), q(hi, den))] } else { vec![] }),
        depth,
    };
    minimax.check(truncated_minimax(&spec(-1, 1, 1, 3)).is_ok_and(|v| v.verdict() == Verdict::AliceWins), || "full target".into());
    minimax.check(truncated_minimax(&spec(1, 0, 1, 3)).is_ok_and(|v| v.verdict() == Verdict::BobWins), || "empty target".into());
    for _ in 0..opts.cases.div_ceil(20) {
        let lo = rng.gen_range(-8..8);
        let hi = lo + rng.gen_range(0..8);
        let s = spec(lo, hi, 8, rng.gen_range(1..4));
        minimax.check(truncated_minimax(&s).is_ok_and(|v| v.optimistic || !v.pessimistic), || format!("[{lo}/8, {hi}/8]"));
    }
    vec![fixtures, conflicts, measure, dimension, minimax]
}
