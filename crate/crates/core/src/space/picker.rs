use crate::scalar::Scalar;
use crate::space::{ball, cylinder_depth, FormalBall, Point, Space, SpaceError};

/// A ball of radius exactly `(c/5)·ρ_outer`, formally inside `outer` and
/// disjoint from `deleted` (center distance strictly above the radius sum).
///
/// Constructive replacement for the existence lemma used by the absolute
/// game: each space proposes finitely many candidate centers in tiers and the
/// legal candidate with the largest gap in the first non-empty tier wins.
pub fn disjoint_ball_picker(
    space: &Space,
    outer: &FormalBall,
    deleted: &FormalBall,
    c: &Scalar,
) -> Result<FormalBall, SpaceError> {
    let radius = c * &outer.radius / Scalar::from_int(5);
    pick_disjoint(space, outer, &deleted.center, &deleted.radius, &radius)
}

/// A ball of the given radius with `ball <=_s outer` and
/// `d(center, avoid) > avoid_radius + radius`. `avoid_radius` may be zero.
pub(crate) fn pick_disjoint(
    space: &Space,
    outer: &FormalBall,
    avoid: &Point,
    avoid_radius: &Scalar,
    radius: &Scalar,
) -> Result<FormalBall, SpaceError> {
    space.check_ball(outer)?;
    space.check_point(avoid)?;
    if !radius.is_positive() {
        return Err(SpaceError::NonPositiveRadius(radius.clone()));
    }
    let reach = &outer.radius - radius;
    if reach.is_negative() {
        return Err(SpaceError::NotFound {
            outer: outer.to_string(),
        });
    }
    let needed = avoid_radius + radius;
    for tier in candidate_tiers(outer, radius) {
        let mut best: Option<(Scalar, Point)> = None;
        for z in tier {
            if space.distance(&outer.center, &z)? > reach {
                continue;
            }
            let gap = space.distance(&z, avoid)? - &needed;
            if gap.is_positive() && best.as_ref().is_none_or(|(g, _)| gap > *g) {
                best = Some((gap, z));
            }
        }
        if let Some((_, z)) = best {
            return Ok(ball(z, radius.clone()));
        }
    }
    Err(SpaceError::NotFound {
        outer: outer.to_string(),
    })
}

fn candidate_tiers(outer: &FormalBall, radius: &Scalar) -> Vec<Vec<Point>> {
    let x = &outer.center;
    let rho = &outer.radius;
    match x {
        Point::Euclidean(coords) => {
            let half = rho.half();
            let reach = rho - radius;
            let mut tiers = Vec::new();
            for step in [half, reach] {
                let mut tier = Vec::new();
                for axis in 0..coords.len() {
                    for sign in [1i64, -1] {
                        let mut p = coords.clone();
                        p[axis] = &p[axis] + &step * Scalar::from_int(sign);
                        tier.push(Point::Euclidean(p));
                    }
                }
                tiers.push(tier);
            }
            tiers.push(vec![x.clone()]);
            tiers
        }
        Point::Cantor(seq) => {
            // endpoints of the construction intervals around x, one level per tier
            let third = Scalar::new(1, 3);
            let mut k = 0usize;
            while third.pow(k as u32) > *rho {
                k += 1;
            }
            let mut tiers: Vec<Vec<Point>> = (k + 1..k + 8)
                .map(|level| {
                    vec![
                        Point::Cantor(seq.truncate_with_tail(level, 0)),
                        Point::Cantor(seq.truncate_with_tail(level, 2)),
                    ]
                })
                .collect();
            tiers.push(vec![x.clone()]);
            tiers
        }
        Point::BinarySeq(seq) => {
            let m = cylinder_depth(rho);
            let flip = |j: usize| Point::BinarySeq(seq.with_digit(j, 1 - seq.digit(j)));
            let mut tiers = vec![vec![x.clone(), flip(m), flip(m + 1)]];
            tiers.extend((m + 2..m + 8).map(|j| vec![flip(j)]));
            tiers
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    fn fb(s: &str) -> FormalBall {
        s.parse().unwrap()
    }

    fn check(space: &Space, outer: &FormalBall, deleted: &FormalBall, c: &Scalar, got: &FormalBall) {
        assert_eq!(got.radius, c * &outer.radius / Scalar::from_int(5));
        assert!(space.formal_leq(got, outer).unwrap());
        let d = space.distance(&got.center, &deleted.center).unwrap();
        assert!(d > &deleted.radius + &got.radius);
    }

    #[test]
    fn real_line_examples() {
        let s = Space::real(1);
        let c = q(1, 2);
        let outer = fb("0@1");
        let got = disjoint_ball_picker(&s, &outer, &fb("0@1/5"), &c).unwrap();
        assert_eq!(got, fb("1/2@1/10"));
        let got = disjoint_ball_picker(&s, &outer, &fb("9/10@1/10"), &c).unwrap();
        assert_eq!(got, fb("-1/2@1/10"));
        let tiny = fb("0@1/100");
        let got = disjoint_ball_picker(&s, &outer, &tiny, &c).unwrap();
        check(&s, &outer, &tiny, &c, &got);
    }

    #[test]
    fn grid_oracle_agrees_existence() {
        // centers with denominator <= 20 confirm a compliant ball exists
        let s = Space::real(1);
        let c = q(1, 2);
        let outer = fb("0@1");
        for deleted in ["0@1/5", "9/10@1/10", "-1/2@1/20", "1/2@1/11"] {
            let deleted = fb(deleted);
            let r = q(1, 10);
            let exists = (-20..=20).any(|k| {
                let z = Point::real(q(k, 20));
                let cand = ball(z.clone(), r.clone());
                s.formal_leq(&cand, &outer).unwrap()
                    && s.distance(&z, &deleted.center).unwrap() > &deleted.radius + &r
            });
            assert!(exists);
            let got = disjoint_ball_picker(&s, &outer, &deleted, &c).unwrap();
            check(&s, &outer, &deleted, &c, &got);
        }
    }

    #[test]
    fn cantor_and_binary() {
        let c = Space::cantor();
        let cc = c.constant().clone();
        let outer = fb("c:0@1/3");
        let deleted = fb("c:0|2@1/200");
        let got = disjoint_ball_picker(&c, &outer, &deleted, &cc).unwrap();
        check(&c, &outer, &deleted, &cc, &got);

        let b = Space::binary();
        let bc = b.constant().clone();
        let outer = fb("b:|0@1/4");
        let deleted = fb("b:|0@1/100");
        let got = disjoint_ball_picker(&b, &outer, &deleted, &bc).unwrap();
        check(&b, &outer, &deleted, &bc, &got);
    }
}
