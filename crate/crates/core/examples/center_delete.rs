//! In the absolute game, deleting the center of each of Bob's balls forces
//! every radius to drop by more than half.

use metric_games::game::{run_game, Game, GameVariant, Role};
use metric_games::scalar::q;
use metric_games::space::Space;
use metric_games::strategy::{CenterDelete, RandomLegal};

fn main() {
    for beta in [q(1, 10), q(1, 20), q(2, 25)] {
        let game = Game::new(GameVariant::absolute(beta.clone()), Space::real(1)).expect("playable");
        let bob = RandomLegal::new(Role::Bob, 7);
        let t = run_game(&game, &CenterDelete, &bob, "0@1".parse().unwrap(), 12).expect("legal");
        let radii: Vec<_> = t.bob_balls().map(|b| b.radius.clone()).collect();
        let worst = radii.windows(2).map(|w| &w[1] / &w[0]).max().expect("several rounds");
        println!("beta {beta}: {} Bob balls, largest ratio {worst}, last radius {}", radii.len(), radii.last().unwrap());
    }
}
