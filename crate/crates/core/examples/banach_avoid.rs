//! Bob's two-candidate strategy in a Banach space keeps the outcome away
//! from a line; the attractor bounds certify the distance.

use metric_games::game::{run_game, Game, GameVariant};
use metric_games::scalar::q;
use metric_games::space::{Point, Space};
use metric_games::strategy::{attractor_distance_bounds, AbsoluteAvoidPoint, AttractorSpec, BanachBobAvoid};

fn main() {
    let beta = q(1, 4);
    let game = Game::new(GameVariant::absolute(beta.clone()), Space::real(1)).expect("playable");
    let x0 = Point::real(q(0, 1));
    let bob = BanachBobAvoid::new(x0.clone(), None);
    // Alice deletes around x0 herself, which does not help her here.
    let alice = AbsoluteAvoidPoint::new(x0.clone());
    let t = run_game(&game, &alice, &bob, "0@1".parse().unwrap(), 24).expect("legal");

    let phase = t.moves()[bob.phase_one_index() - 1].ball();
    println!("phase-one ball {phase}");
    let spec = AttractorSpec::new(&phase.center, bob.v.clone(), beta, phase.radius.clone()).expect("spec");
    for depth in [2, 6, 12] {
        let (lo, hi) = attractor_distance_bounds(&spec, &x0, depth).expect("bounds");
        println!("depth {depth:>2}: {lo} <= dist(outcomes, x0) <= {hi}");
    }
    println!("final enclosure {}", t.enclosure());
}
