//! Splitting Alice's strategy into a binary tree of disjoint plays.

use metric_games::game::{Game, GameVariant, Role, Transcript};
use metric_games::perfect::{build_perfect_tree, verify_tree_with};
use metric_games::scalar::q;
use metric_games::space::Space;
use metric_games::strategy::MinRadius;

fn main() {
    let game = Game::new(GameVariant::schmidt(q(1, 5), q(1, 5)), Space::real(1)).expect("playable");
    let root = Transcript::new(game, "0@1".parse().unwrap()).expect("initial ball");
    let alice = MinRadius::new(Role::Alice);
    let tree = build_perfect_tree(&alice, &root, 4).expect("tree");
    for (path, t) in tree.leaves() {
        println!("{path}: {} moves, enclosure {}", t.len(), t.enclosure());
    }
    let report = verify_tree_with(&tree, Some(&alice));
    print!("{}", report.to_csv());
    println!("passed {} with {} checks", report.passed(), report.checks);
}
