//! Which parameter regimes make the game undetermined on a Bernstein set.

use metric_games::game::GameVariant;
use metric_games::lab::classify_parameters;
use metric_games::scalar::q;

fn main() {
    let rows = [
        (GameVariant::schmidt(q(1, 5), q(1, 5)), q(1, 2), false),
        (GameVariant::absolute(q(1, 200)), q(1, 2), false),
        (GameVariant::schmidt(q(1, 2), q(1, 2)), q(1, 2), true),
        (GameVariant::strong(q(1, 3), q(2, 5)), q(1, 2), true),
        (GameVariant::schmidt(q(1, 3), q(1, 3)), q(1, 9), false),
    ];
    for (v, c, banach) in rows {
        let r = classify_parameters(&v, &c, banach).expect("variant");
        println!("{v} c={c} banach={banach}: {} [{}]", r.label, r.certificate_text());
    }
}
