//! Formal inclusion versus set containment.
//!
//! On the real line the two agree. In the Cantor set a ball can sit inside
//! another as a set while failing the formal order.

use metric_games::scalar::q;
use metric_games::space::{FormalBall, Space};

fn show(space: &Space, inner: &str, outer: &str) {
    let a: FormalBall = inner.parse().expect("ball");
    let b: FormalBall = outer.parse().expect("ball");
    let leq = space.formal_leq(&a, &b).expect("in space");
    let sub = space.ball_subset(&a, &b).expect("in space");
    println!("{space:<8} {a} vs {b}: formal {leq}, subset {sub}");
}

fn main() {
    let real = Space::real(1);
    show(&real, "1/4@1/4", "0@1/2");
    show(&real, "1/4@1/2", "0@1/2");

    // The closed ball of radius 1/3 around 0 in the Cantor set is [0, 1/3]
    // intersected with the set, which is also the radius-1/2 ball around 0.
    let cantor = Space::cantor();
    show(&cantor, "c:0@1/2", "c:0@1/3");

    let plane = Space::real(2);
    let x = plane.origin();
    let p = plane.uniform_perfect_witness(&x, &q(1, 3), plane.constant()).expect("witness");
    println!("witness at distance {} from {x}", plane.distance(&x, &p).unwrap());
}
