use proptest::prelude::*;

use metric_games::scalar::Scalar;
use metric_games::space::{disjoint_ball_picker, FormalBall, Point, Space};

fn scalar(den: i64) -> impl Strategy<Value = Scalar> {
    (-4 * den..=4 * den).prop_map(move |n| Scalar::new(n, den))
}

fn radius() -> impl Strategy<Value = Scalar> {
    (1i64..=64).prop_map(|n| Scalar::new(n, 64))
}

fn real_point(d: usize) -> impl Strategy<Value = Point> {
    prop::collection::vec(scalar(16), d).prop_map(Point::vector)
}

fn cantor_point() -> impl Strategy<Value = Point> {
    (prop::collection::vec(prop::bool::ANY, 0..8), prop::bool::ANY).prop_map(|(bits, tail)| {
        let digits: Vec<u8> = bits.iter().map(|&b| if b { 2 } else { 0 }).collect();
        Point::cantor_with_tail(&digits, if tail { 2 } else { 0 }).expect("digits 0 and 2")
    })
}

fn binary_point() -> impl Strategy<Value = Point> {
    (prop::collection::vec(0u8..=1, 0..8), 0u8..=1).prop_map(|(p, t)| Point::binary(&p, t).expect("binary"))
}

fn any_space() -> impl Strategy<Value = (Space, BoxedStrategy<Point>)> {
    prop_oneof![
        Just((Space::real(1), real_point(1).boxed())),
        Just((Space::real(2), real_point(2).boxed())),
        Just((Space::cantor(), cantor_point().boxed())),
        Just((Space::binary(), binary_point().boxed())),
    ]
}

fn three_balls() -> impl Strategy<Value = (Space, [FormalBall; 3])> {
    any_space().prop_flat_map(|(space, pt)| {
        let ball = (pt, radius()).prop_map(|(c, r)| FormalBall::new(c, r).expect("positive")).boxed();
        (Just(space), [ball.clone(), ball.clone(), ball])
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn scalar_text_round_trips(n in -1000i64..1000, d in 1i64..1000) {
        let s = Scalar::new(n, d);
        let text = s.to_string();
        prop_assert!(text.contains('/'));
        prop_assert_eq!(text.parse::<Scalar>().unwrap(), s);
    }

    #[test]
    fn ball_text_round_trips((_, [a, _, _]) in three_balls()) {
        let text = a.to_string();
        prop_assert_eq!(text.parse::<FormalBall>().unwrap(), a);
    }

    #[test]
    fn formal_order_implies_containment((space, [a, b, _]) in three_balls()) {
        if space.formal_leq(&a, &b).unwrap() {
            prop_assert!(space.ball_subset(&a, &b).unwrap());
        }
        if space.is_banach() {
            prop_assert_eq!(space.formal_leq(&a, &b).unwrap(), space.ball_subset(&a, &b).unwrap());
        }
    }

    #[test]
    fn formal_order_is_a_partial_order((space, [a, b, c]) in three_balls()) {
        prop_assert!(space.formal_leq(&a, &a).unwrap());
        if space.formal_leq(&a, &b).unwrap() && space.formal_leq(&b, &a).unwrap() {
            prop_assert_eq!(&a.radius, &b.radius);
            prop_assert!(space.distance(&a.center, &b.center).unwrap().is_zero());
        }
        if space.formal_leq(&a, &b).unwrap() && space.formal_leq(&b, &c).unwrap() {
            prop_assert!(space.formal_leq(&a, &c).unwrap());
        }
    }

    #[test]
    fn distance_is_a_metric((space, [a, b, c]) in three_balls()) {
        let d = |p: &Point, q: &Point| space.distance(p, q).unwrap();
        let (x, y, z) = (&a.center, &b.center, &c.center);
        prop_assert!(d(x, x).is_zero());
        prop_assert_eq!(d(x, y), d(y, x));
        prop_assert!(d(x, z) <= d(x, y) + d(y, z));
    }

    #[test]
    fn witness_is_in_the_annulus((space, [a, _, _]) in three_balls()) {
        let c = space.constant().clone();
        let p = space.uniform_perfect_witness(&a.center, &a.radius, &c).unwrap();
        let d = space.distance(&a.center, &p).unwrap();
        prop_assert!(d > &c * &a.radius && d <= a.radius);
    }

    #[test]
    fn picker_is_inside_and_disjoint((space, [outer, del, _]) in three_balls()) {
        let c = space.constant().clone();
        // deletions of the absolute game are small relative to the ball
        let del = FormalBall::new(del.center, &outer.radius * &c / Scalar::from_int(6)).unwrap();
        let picked = disjoint_ball_picker(&space, &outer, &del, &c).unwrap();
        prop_assert_eq!(&picked.radius, &(&c * &outer.radius / Scalar::from_int(5)));
        prop_assert!(space.formal_leq(&picked, &outer).unwrap());
        let gap = space.distance(&picked.center, &del.center).unwrap();
        prop_assert!(gap > &picked.radius + &del.radius);
    }
}

#[test]
fn cantor_converse_fails_on_a_known_pair() {
    let cantor = Space::cantor();
    let small: FormalBall = "c:0@1/3".parse().unwrap();
    let large: FormalBall = "c:0@1/2".parse().unwrap();
    assert!(cantor.ball_subset(&large, &small).unwrap());
    assert!(!cantor.formal_leq(&large, &small).unwrap());
}

#[test]
fn malformed_text_is_rejected() {
    assert!("1/0".parse::<Scalar>().is_err());
    assert!("c:1".parse::<Point>().is_err());
    assert!("b:2|0".parse::<Point>().is_err());
    assert!("0@0".parse::<FormalBall>().is_err());
    assert!("0@-1".parse::<FormalBall>().is_err());
    assert!("real:0".parse::<Space>().is_err());
}
