//! A scenario from TOML, played and saved as JSONL, then read back.

use metric_games::config::ScenarioConfig;
use metric_games::game::{outcome, run_game, Transcript};

const SCENARIO: &str = r#"
variant = "absolute(1/10)"
space = "real:2"
initial = "(0,0)@1"
alice = "center-delete"
bob = "random(seed=11)"
horizon = 10
target = "not-point:(0,0)"
"#;

fn main() {
    let cfg = ScenarioConfig::from_toml(SCENARIO).expect("valid scenario");
    let game = cfg.game().expect("playable");
    let (alice, bob) = cfg.strategies().expect("known strategies");
    let t = run_game(&game, alice.as_ref(), bob.as_ref(), cfg.initial.clone(), cfg.horizon).expect("legal");

    let text = t.to_jsonl();
    println!("{}", text.lines().next().unwrap());
    let back = Transcript::from_jsonl(&text).expect("round trip");
    assert_eq!(back.moves(), t.moves());

    let o = outcome(&back, cfg.target.build().as_ref());
    println!("{} moves, enclosure {}, winner {:?}", back.len(), o.enclosure, o.winner);
    print!("{}", cfg.to_toml());
}
