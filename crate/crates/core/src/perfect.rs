//! Finite-depth perfect-set construction: the split step and the binary
//! tree of σ_A-compatible prefixes with pairwise disjoint enclosures.

use std::collections::BTreeMap;

use crate::game::{play_until, GameError, GameVariant, Move, Record, Role, Transcript, TranscriptError};
use crate::scalar::Scalar;
use crate::space::{FormalBall, Point, Space, SpaceError, SpaceKind};
use crate::strategy::{AbsoluteBobAvoid, BanachBobAvoid, MinRadius, SchmidtAvoidPoint, Strategy};

/// Deepest tree [`build_perfect_tree`] will build.
pub const MAX_DEPTH: usize = 10;

#[derive(Debug, thiserror::Error)]
pub enum SplitError {
    #[error("no nondegenerate regime for {0}")]
    RegimeUnsupported(String),
    #[error("{rounds} rounds did not reach diameter below {target} and a positive gap")]
    PrecisionExhausted { rounds: usize, target: Scalar },
    #[error("depth {0} exceeds {MAX_DEPTH}")]
    DepthTooLarge(usize),
    #[error("{strategy} gave up at move {index}: {reason}")]
    Aborted {
        strategy: String,
        index: usize,
        reason: String,
    },
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Space(#[from] SpaceError),
}

/// Two extensions of a common prefix with small, disjoint enclosures.
#[derive(Debug, Clone)]
pub struct SplitPair {
    pub left: Transcript,
    pub right: Transcript,
    /// The point the right branch was steered away from.
    pub avoided: Point,
    /// `d(c_1, c_2) - r_1 - r_2`, positive.
    pub gap: Scalar,
    pub diameters: [Scalar; 2],
}

/// `d(c_1, c_2) - r_1 - r_2`; positive means the balls are disjoint.
pub fn ball_gap(space: &Space, a: &FormalBall, b: &FormalBall) -> Result<Scalar, SpaceError> {
    Ok(space.distance(&a.center, &b.center)? - &a.radius - &b.radius)
}

fn diameter(t: &Transcript) -> Scalar {
    t.enclosure().diameter_bound()
}

/// Least `n` with `q^n <= 1/2`.
fn halving_rounds(q: &Scalar) -> usize {
    let half = Scalar::new(1, 2);
    let mut n = 1;
    let mut p = q.clone();
    while p > half {
        p = p * q;
        n += 1;
    }
    n
}

/// Round cap for one split: `10 ⌈log_{1/q} 2⌉ ℓ` with `q` the per-round
/// radius factor and `ℓ = max(1, ⌈log_2(diam ω / r)⌉)`.
pub fn round_cap(variant: &GameVariant, prefix_diameter: &Scalar, r: &Scalar) -> usize {
    let q = match variant.alpha() {
        Some(a) => a * variant.beta(),
        None => variant.beta().clone(),
    };
    let mut levels = 0;
    let mut d = prefix_diameter.clone();
    while d > *r {
        d = d.half();
        levels += 1;
    }
    10 * halving_rounds(&q) * levels.max(1)
}

/// The Bob strategy that keeps `y` out of the play, if the regime has one.
pub fn avoiding_bob(game: &crate::game::Game, y: Point, from: usize) -> Result<Box<dyn Strategy>, SplitError> {
    let unsupported = || SplitError::RegimeUnsupported(format!("{} on {}", game.variant, game.space));
    let candidates: Vec<Box<dyn Strategy>> = match &game.variant {
        GameVariant::Absolute { .. } => {
            let mut v: Vec<Box<dyn Strategy>> = vec![Box::new(AbsoluteBobAvoid::new(y.clone()))];
            if matches!(game.space.kind(), SpaceKind::RealMax(_)) {
                v.push(Box::new(BanachBobAvoid::new(y, None).starting_at(from)));
            }
            v
        }
        _ => vec![Box::new(SchmidtAvoidPoint::new(Role::Bob, y, None))],
    };
    candidates
        .into_iter()
        .find(|s| s.check(game).is_ok())
        .ok_or_else(unsupported)
}

fn run(
    prefix: &Transcript,
    alice: &dyn Strategy,
    bob: &dyn Strategy,
    max_moves: usize,
    stop: impl Fn(&Transcript) -> bool,
) -> Result<Transcript, SplitError> {
    let t = play_until(prefix, alice, bob, max_moves, stop)?;
    match &t.abort {
        Some(a) => Err(SplitError::Aborted {
            strategy: a.strategy.clone(),
            index: a.index,
            reason: a.reason.clone(),
        }),
        None => Ok(t),
    }
}

/// Splits `omega` into two σ_A-compatible extensions with disjoint
/// enclosures of diameter `< r`.
///
/// The left branch plays Bob's minimal-radius continuation until its
/// enclosure is small; its center `y` stands in for the limit point. The
/// right branch plays Bob's avoid-`y` strategy. Both are then extended a
/// round at a time until the exact gap between the enclosures is positive.
/// Prefixes always end on a Bob move.
pub fn split(alice: &dyn Strategy, omega: &Transcript, r: &Scalar) -> Result<SplitPair, SplitError> {
    let cap = round_cap(omega.variant(), &diameter(omega), r);
    split_with_cap(alice, omega, r, cap)
}

pub fn split_with_cap(
    alice: &dyn Strategy,
    omega: &Transcript,
    r: &Scalar,
    cap_rounds: usize,
) -> Result<SplitPair, SplitError> {
    let game = omega.game();
    let space = &game.space;
    let start = omega.len();
    let cap_moves = 2 * cap_rounds + 1;
    let exhausted = || SplitError::PrecisionExhausted {
        rounds: cap_rounds,
        target: r.clone(),
    };
    let small = |t: &Transcript| t.len() > start && t.len() % 2 == 1 && diameter(t) < *r;

    let min_radius = MinRadius::new(Role::Bob);
    let mut left = run(omega, alice, &min_radius, cap_moves, small)?;
    if !small(&left) {
        return Err(exhausted());
    }
    let avoided = left.enclosure().center.clone();
    let avoid = avoiding_bob(game, avoided.clone(), start + 1)?;
    let mut right = run(omega, alice, avoid.as_ref(), cap_moves, small)?;
    if !small(&right) {
        return Err(exhausted());
    }
    loop {
        let gap = ball_gap(space, left.enclosure(), right.enclosure())?;
        if gap.is_positive() {
            return Ok(SplitPair {
                diameters: [diameter(&left), diameter(&right)],
                left,
                right,
                avoided,
                gap,
            });
        }
        if left.len() - start + 2 > cap_moves || right.len() - start + 2 > cap_moves {
            return Err(exhausted());
        }
        left = run(&left, alice, &min_radius, 2, |_| false)?;
        right = run(&right, alice, avoid.as_ref(), 2, |_| false)?;
    }
}

/// Binary tree `θ ↦ g(θ)` of prefixes, keyed by paths over `{0, 1}`.
#[derive(Debug, Clone)]
pub struct PerfectTree {
    pub depth: usize,
    pub alice: String,
    pub nodes: BTreeMap<String, Transcript>,
}

impl PerfectTree {
    pub fn root(&self) -> &Transcript {
        &self.nodes[""]
    }

    pub fn node(&self, path: &str) -> Option<&Transcript> {
        self.nodes.get(path)
    }

    /// Nodes at level `depth`, in path order.
    pub fn leaves(&self) -> impl Iterator<Item = (&String, &Transcript)> {
        self.nodes.iter().filter(move |(p, _)| p.len() == self.depth)
    }

    /// A header, then for every node the moves it adds to its parent,
    /// tagged with the node's path.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        let mut line = |r: &Record| {
            out.push_str(&serde_json::to_string(r).expect("records serialize"));
            out.push('\n');
        };
        let mut header = self.root().header_record();
        if let Record::Header { alice, .. } = &mut header {
            alice.clone_from(&self.alice);
        }
        line(&header);
        let mut paths: Vec<&String> = self.nodes.keys().collect();
        paths.sort_by_key(|p| (p.len(), p.as_str()));
        for path in paths {
            let t = &self.nodes[path];
            let skip = match parent(path) {
                Some(p) => self.nodes.get(p).map_or(0, Transcript::len),
                None => 0,
            };
            for r in t.move_records(Some(path)).into_iter().skip(skip) {
                line(&r);
            }
        }
        out
    }

    /// Rebuilds a tree written by [`PerfectTree::to_jsonl`]; every move is
    /// validated again.
    pub fn from_jsonl(text: &str) -> Result<PerfectTree, TranscriptError> {
        let format = |line: usize, message: String| TranscriptError::Format { line, message };
        let mut root_text = String::new();
        let mut extra: BTreeMap<String, Vec<(usize, Move)>> = BTreeMap::new();
        let mut alice = String::new();
        for (i, l) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
            let rec: Record = serde_json::from_str(l).map_err(|e| format(i + 1, e.to_string()))?;
            match &rec {
                Record::Header { alice: a, .. } => {
                    alice = a.clone();
                    root_text.push_str(l);
                    root_text.push('\n');
                }
                Record::Move { kind, ball, path, .. } => {
                    let path = path.clone().ok_or_else(|| format(i + 1, "move without path".into()))?;
                    if path.is_empty() {
                        root_text.push_str(l);
                        root_text.push('\n');
                    } else {
                        let mv = match kind.as_str() {
                            "delete" => Move::Delete(ball.clone()),
                            _ => Move::Ball(ball.clone()),
                        };
                        extra.entry(path).or_default().push((i + 1, mv));
                    }
                }
                Record::Abort { .. } => return Err(format(i + 1, "aborted play in a tree".into())),
            }
        }
        let root = Transcript::from_jsonl(&root_text)?;
        let mut nodes = BTreeMap::new();
        nodes.insert(String::new(), root);
        let mut paths: Vec<String> = extra.keys().cloned().collect();
        paths.sort_by_key(|p| (p.len(), p.clone()));
        let mut depth = 0;
        for path in paths {
            let p = parent(&path).expect("non-root path");
            let base: Transcript = nodes
                .get(p)
                .cloned()
                .ok_or_else(|| format(0, format!("node {path} has no parent")))?;
            let mut t = base;
            for (line, mv) in extra.remove(&path).unwrap_or_default() {
                t.push(mv).map_err(|source| TranscriptError::Illegal { line, source })?;
            }
            depth = depth.max(path.len());
            nodes.insert(path, t);
        }
        Ok(PerfectTree { depth, alice, nodes })
    }
}

fn parent(path: &str) -> Option<&str> {
    (!path.is_empty()).then(|| &path[..path.len() - 1])
}

/// `2^{-level}`.
fn dyadic(level: usize) -> Scalar {
    Scalar::new(1, 2).pow(level as u32)
}

/// Builds `g` down to `depth`, splitting node `θ` with `r = 2^{-|θ|}`.
/// Sibling subtrees are built in parallel; the result does not depend on
/// scheduling.
pub fn build_perfect_tree(alice: &dyn Strategy, initial: &Transcript, depth: usize) -> Result<PerfectTree, SplitError> {
    if depth > MAX_DEPTH {
        return Err(SplitError::DepthTooLarge(depth));
    }
    let nodes = grow(alice, initial.clone(), String::new(), depth)?;
    Ok(PerfectTree {
        depth,
        alice: alice.name(),
        nodes: nodes.into_iter().collect(),
    })
}

fn grow(
    alice: &dyn Strategy,
    node: Transcript,
    path: String,
    depth: usize,
) -> Result<Vec<(String, Transcript)>, SplitError> {
    if path.len() == depth {
        return Ok(vec![(path, node)]);
    }
    let pair = split(alice, &node, &dyadic(path.len()))?;
    let (a, b) = rayon::join(
        || grow(alice, pair.left, format!("{path}0"), depth),
        || grow(alice, pair.right, format!("{path}1"), depth),
    );
    let mut out = vec![(path, node)];
    out.extend(a?);
    out.extend(b?);
    Ok(out)
}

/// Per-level summary: the smallest sibling gap and the largest diameter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelRow {
    pub level: usize,
    pub nodes: usize,
    pub min_gap: Option<Scalar>,
    pub max_diameter: Scalar,
}

#[derive(Debug, Clone, Default)]
pub struct TreeReport {
    pub levels: Vec<LevelRow>,
    pub leaves: usize,
    /// Smallest gap over all pairs of distinct leaves.
    pub min_leaf_gap: Option<Scalar>,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl TreeReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["level", "nodes", "min_gap", "max_diameter"]).expect("in-memory write");
        for row in &self.levels {
            let gap = row.min_gap.as_ref().map(Scalar::to_string).unwrap_or_default();
            w.write_record([
                row.level.to_string(),
                row.nodes.to_string(),
                gap,
                row.max_diameter.to_string(),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8")
    }
}

/// Audits a tree: cardinality per level, monotonicity, containment,
/// sibling disjointness, the diameter schedule and leaf injectivity.
pub fn verify_tree(tree: &PerfectTree) -> TreeReport {
    verify_tree_with(tree, None)
}

/// As [`verify_tree`], also replaying `alice` at every Alice move below
/// the root.
pub fn verify_tree_with(tree: &PerfectTree, alice: Option<&dyn Strategy>) -> TreeReport {
    let mut rep = TreeReport::default();
    let Some(root) = tree.nodes.get("") else {
        rep.failures.push("missing root".into());
        return rep;
    };
    let space = root.space().clone();
    let check = |ok: bool, msg: String, rep: &mut TreeReport| {
        rep.checks += 1;
        if !ok {
            rep.failures.push(msg);
        }
    };

    for level in 0..=tree.depth {
        let at: Vec<(&String, &Transcript)> = tree.nodes.iter().filter(|(p, _)| p.len() == level).collect();
        check(
            at.len() == 1 << level,
            format!("level {level}: {} nodes, expected {}", at.len(), 1usize << level),
            &mut rep,
        );
        let max_diameter = at.iter().map(|(_, t)| diameter(t)).max().unwrap_or_default();
        let mut min_gap: Option<Scalar> = None;
        for (path, t) in &at {
            if path.bytes().any(|b| b != b'0' && b != b'1') {
                check(false, format!("path {path:?} is not binary"), &mut rep);
                continue;
            }
            if let Some(p) = parent(path) {
                match tree.nodes.get(p) {
                    Some(pt) => {
                        check(
                            pt.is_prefix_of(t) && t.len() > pt.len(),
                            format!("{path}: not a proper extension of its parent"),
                            &mut rep,
                        );
                        let inside = space.formal_leq(t.enclosure(), pt.enclosure()).unwrap_or(false);
                        check(inside, format!("{path}: enclosure not inside its parent's"), &mut rep);
                        check(
                            diameter(t) < dyadic(p.len()),
                            format!("{path}: diameter {} not below {}", diameter(t), dyadic(p.len())),
                            &mut rep,
                        );
                    }
                    None => check(false, format!("{path}: missing parent"), &mut rep),
                }
            }
            if path.ends_with('0') {
                let sibling = format!("{}1", &path[..path.len() - 1]);
                if let Some(s) = tree.nodes.get(&sibling) {
                    match ball_gap(&space, t.enclosure(), s.enclosure()) {
                        Ok(g) => {
                            check(g.is_positive(), format!("{path}/{sibling}: gap {g} not positive"), &mut rep);
                            min_gap = Some(min_gap.map_or(g.clone(), |m| m.min(g)));
                        }
                        Err(e) => check(false, format!("{path}: {e}"), &mut rep),
                    }
                }
            }
            if let Some(s) = alice {
                let from = parent(path).and_then(|p| tree.nodes.get(p)).map_or(t.len(), Transcript::len);
                for i in from..t.len() {
                    if Role::of_index(i + 1) != s.role() {
                        continue;
                    }
                    let ok = s.next_move(t.game(), &t.moves()[..i]).is_ok_and(|m| m == t.moves()[i]);
                    check(ok, format!("{path}: move {} is not {}'s", i + 1, s.name()), &mut rep);
                }
            }
        }
        rep.levels.push(LevelRow {
            level,
            nodes: at.len(),
            min_gap,
            max_diameter,
        });
    }

    let leaves: Vec<(&String, &Transcript)> = tree.leaves().collect();
    rep.leaves = leaves.len();
    for (i, (pa, a)) in leaves.iter().enumerate() {
        for (pb, b) in &leaves[i + 1..] {
            match ball_gap(&space, a.enclosure(), b.enclosure()) {
                Ok(g) => {
                    check(g.is_positive(), format!("leaves {pa}, {pb}: gap {g} not positive"), &mut rep);
                    rep.min_leaf_gap = Some(rep.min_leaf_gap.take().map_or(g.clone(), |m| m.min(g)));
                }
                Err(e) => check(false, format!("leaves {pa}, {pb}: {e}"), &mut rep),
            }
        }
    }
    rep
}
