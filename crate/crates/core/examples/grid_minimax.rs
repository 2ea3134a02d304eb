//! Truncated game values on a finite grid of moves.

use metric_games::game::target::Intervals;
use metric_games::lab::{evaluate_fixed_alice, truncated_minimax, DiscreteGameSpec};
use metric_games::scalar::q;
use metric_games::space::Point;
use metric_games::strategy::TargetChaser;
use metric_games::game::{GameVariant, Role};

fn main() {
    let spec = DiscreteGameSpec {
        variant: GameVariant::schmidt(q(1, 2), q(1, 2)),
        step: q(1, 8),
        initial: "0@1".parse().unwrap(),
        target: Intervals::new(vec![(q(0, 1), q(1, 2))]),
        depth: 2,
    };
    let v = truncated_minimax(&spec).expect("within budget");
    println!("depth 2: optimistic {} pessimistic {} -> {} after {} nodes", v.optimistic, v.pessimistic, v.verdict(), v.nodes);

    let deeper = DiscreteGameSpec { depth: 4, ..spec.clone() };
    let v = truncated_minimax(&deeper).expect("within budget");
    println!("depth 4: {} after {} nodes", v.verdict(), v.nodes);

    let chase = DiscreteGameSpec {
        variant: GameVariant::schmidt(q(1, 2), q(99, 100)),
        step: q(1, 400),
        target: Intervals::new(vec![(q(-1, 10), q(1, 10))]),
        depth: 8,
        ..spec
    };
    let alice = TargetChaser::new(Role::Alice, Point::real(q(0, 1)));
    let v = evaluate_fixed_alice(&chase, &alice).expect("within budget");
    println!("chaser against every grid Bob: {} after {} nodes", v.verdict(), v.nodes);
}
