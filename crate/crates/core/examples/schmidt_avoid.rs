//! Alice keeps the outcome away from a point in the small-parameter regime.

use metric_games::game::target::PointComplement;
use metric_games::game::{outcome, run_game, Game, GameVariant, Role};
use metric_games::scalar::q;
use metric_games::space::{Point, Space};
use metric_games::strategy::{RandomLegal, SchmidtAvoidPoint};

fn main() {
    let game = Game::new(GameVariant::schmidt(q(1, 5), q(1, 5)), Space::real(1)).expect("playable");
    let y = Point::real(q(1, 3));
    let alice = SchmidtAvoidPoint::new(Role::Alice, y.clone(), None);
    let target = PointComplement(y.clone());

    for seed in 0..4 {
        let bob = RandomLegal::new(Role::Bob, seed);
        let t = run_game(&game, &alice, &bob, "0@1".parse().unwrap(), 16).expect("legal play");
        let o = outcome(&t, &target);
        let d = game.space.distance(&o.enclosure.center, &y).unwrap();
        println!(
            "seed {seed}: enclosure {} distance to y {} winner {:?}",
            o.enclosure, d, o.winner
        );
    }
}
