//! Good turns in the binary sequence space: only moves that cross a
//! threshold 4^-k decide a digit of the limit point.

use metric_games::game::{run_game, Game, GameVariant, Role};
use metric_games::scalar::q;
use metric_games::space::Space;
use metric_games::strategy::{good_turns, CopyBall, RandomLegal, ThresholdControl};

fn main() {
    let game = Game::new(GameVariant::strong(q(1, 2), q(1, 2)), Space::binary()).expect("playable");
    let start = "b:|0@1".parse().unwrap();

    let alice = ThresholdControl::new(Role::Alice, 1);
    let bob = RandomLegal::new(Role::Bob, 3);
    let t = run_game(&game, &alice, &bob, start, 16).expect("legal");
    for g in good_turns(&t) {
        println!("move {:>2} crosses 4^-{} owned by {:?}", g.index, g.k, g.owner);
    }
    println!("enclosure {}", t.enclosure());

    let copy_a = CopyBall::new(Role::Alice);
    let copy_b = CopyBall::new(Role::Bob);
    let t = run_game(&game, &copy_a, &copy_b, t.initial().clone(), 16).expect("legal");
    let radii: Vec<String> = t.moves().iter().map(|m| m.ball().radius.to_string()).collect();
    println!("copying radii: {}", radii.join(" "));
}
