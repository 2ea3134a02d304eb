//! Trace of closed intervals on the middle-thirds Cantor set.

use crate::scalar::Scalar;

/// Smallest point of the Cantor set that is `>= a`, or `None` if `a > 1`.
///
/// Follows the ternary expansion of `a`; rational inputs have eventually
/// periodic expansions, so a revisited state closes the recursion as a
/// geometric series.
pub fn min_at_or_above(a: &Scalar) -> Option<Scalar> {
    let one = Scalar::one();
    let third = Scalar::new(1, 3);
    let two_thirds = Scalar::new(2, 3);
    let three = Scalar::from_int(3);

    // value(a0) = offset + scale * value(state)
    let mut state = a.clone();
    let mut offset = Scalar::zero();
    let mut scale = Scalar::one();
    let mut seen: Vec<(Scalar, Scalar, Scalar)> = Vec::new();

    if state > one {
        return None;
    }
    // every later state stays in (0, 1]
    loop {
        if !state.is_positive() {
            return Some(offset);
        }
        if state > third && state <= two_thirds {
            return Some(offset + scale * &two_thirds);
        }
        if let Some((_, off_j, scale_j)) = seen.iter().find(|(s, _, _)| *s == state) {
            // F = A + R F with A = (offset - off_j)/scale_j, R = scale/scale_j
            let a = (&offset - off_j) / scale_j;
            let r = &scale / scale_j;
            let fixed = a / (Scalar::one() - r);
            return Some(off_j + scale_j * &fixed);
        }
        seen.push((state.clone(), offset.clone(), scale.clone()));
        if state <= third {
            state = &state * &three;
            scale = &scale * &third;
        } else {
            offset = offset + &scale * &two_thirds;
            state = &state * &three - Scalar::from_int(2);
            scale = &scale * &third;
        }
    }
}

/// Largest point of the Cantor set that is `<= b`, or `None` if `b < 0`.
pub fn max_at_or_below(b: &Scalar) -> Option<Scalar> {
    let one = Scalar::one();
    min_at_or_above(&(&one - b)).map(|v| one - v)
}
