use crate::lab::LabError;
use crate::scalar::Scalar;
use crate::space::Point;
use crate::strategy::{attractor_centers, AttractorSpec};

/// Largest depth whose `2^M` cover is enumerated.
pub const MAX_COVER_DEPTH: usize = 20;

/// `(2β)^M 2ρ` with the cover realizing it: `2^M` intervals of diameter
/// `2β^M ρ` around the depth-`M` prefix centers of `S_ρ` (anchored at 0).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeasureBound {
    pub beta: Scalar,
    pub rho: Scalar,
    pub depth: usize,
    pub bound: Scalar,
    pub cover: Vec<(Scalar, Scalar)>,
}

impl MeasureBound {
    pub fn covers(&self, x: &Scalar) -> bool {
        self.cover.iter().any(|(lo, hi)| lo <= x && x <= hi)
    }
}

fn check_beta(beta: &Scalar) -> Result<(), LabError> {
    if beta.is_positive() && *beta < Scalar::new(1, 2) {
        Ok(())
    } else {
        Err(LabError::InvalidParameter(format!("beta {beta} must lie in (0, 1/2)")))
    }
}

fn spec(beta: &Scalar, rho: &Scalar) -> Result<AttractorSpec, LabError> {
    check_beta(beta)?;
    AttractorSpec::new(&Point::real(Scalar::zero()), vec![Scalar::one()], beta.clone(), rho.clone())
        .map_err(|e| LabError::InvalidParameter(e.to_string()))
}

fn check_depth(depth: usize) -> Result<(), LabError> {
    if depth > MAX_COVER_DEPTH {
        return Err(LabError::InvalidParameter(format!("depth {depth} exceeds {MAX_COVER_DEPTH}")));
    }
    Ok(())
}

pub fn measure_upper_bound(beta: &Scalar, rho: &Scalar, depth: usize) -> Result<MeasureBound, LabError> {
    let s = spec(beta, rho)?;
    check_depth(depth)?;
    let tail = s.tail_radius(depth);
    let cover = attractor_centers(&s, depth)
        .into_iter()
        .map(|c| (&c[0] - &tail, &c[0] + &tail))
        .collect();
    let bound = (Scalar::from_int(2) * beta).pow(depth as u32) * Scalar::from_int(2) * rho;
    Ok(MeasureBound {
        beta: beta.clone(),
        rho: rho.clone(),
        depth,
        bound,
        cover,
    })
}

/// Points of `S_ρ`: each depth-`M` prefix completed by all `+` or all `-`.
pub fn attractor_samples(beta: &Scalar, rho: &Scalar, depth: usize) -> Result<Vec<Scalar>, LabError> {
    let s = spec(beta, rho)?;
    check_depth(depth)?;
    let tail = s.tail_radius(depth);
    Ok(attractor_centers(&s, depth)
        .into_iter()
        .flat_map(|c| [&c[0] - &tail, &c[0] + &tail])
        .collect())
}

/// `log_β(1/2)` in floating point.
pub fn dimension_formula(beta: &Scalar) -> Result<f64, LabError> {
    if !(beta.is_positive() && *beta <= Scalar::new(1, 2)) {
        return Err(LabError::InvalidParameter(format!("beta {beta} must lie in (0, 1/2]")));
    }
    Ok(0.5f64.ln() / beta.to_f64().ln())
}

/// `log_β(1/2)` as an exact rational, which exists iff `β = 2^{-k}`.
pub fn dimension_exact(beta: &Scalar) -> Option<Scalar> {
    let mut k = 0;
    let mut p = Scalar::one();
    let half = Scalar::new(1, 2);
    while p > *beta {
        p = p * &half;
        k += 1;
    }
    (p == *beta && k > 0).then(|| Scalar::new(1, k))
}

/// Box-counting estimate `log N / log(1/ε)` (floating point) from the
/// depth-`M` cover of `S_1`: `N` distinct pieces of diameter `ε = 2β^M`.
pub fn box_counting_estimate(beta: &Scalar, depth: usize) -> Result<f64, LabError> {
    let m = measure_upper_bound(beta, &Scalar::one(), depth)?;
    if depth == 0 {
        return Err(LabError::InvalidParameter("box counting needs depth >= 1".into()));
    }
    let mut pieces = m.cover.clone();
    pieces.sort();
    pieces.dedup();
    let eps = Scalar::from_int(2) * beta.pow(depth as u32);
    Ok((pieces.len() as f64).ln() / (1.0 / eps.to_f64()).ln())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    #[test]
    fn footnote_value() {
        let m = measure_upper_bound(&q(1, 4), &q(1, 1), 3).unwrap();
        assert_eq!(m.bound, q(1, 4));
        assert_eq!(m.cover.len(), 8);
        assert!(m.cover.iter().all(|(a, b)| b - a == q(2, 64)));
        assert_eq!(measure_upper_bound(&q(1, 4), &q(3, 1), 0).unwrap().bound, q(6, 1));
    }

    #[test]
    fn halves_each_step() {
        let b: Vec<Scalar> = (0..8).map(|m| measure_upper_bound(&q(1, 4), &q(1, 1), m).unwrap().bound).collect();
        assert!(b.windows(2).all(|w| w[1] == w[0].half()));
    }

    #[test]
    fn cover_is_sound() {
        let m = measure_upper_bound(&q(1, 3), &q(1, 1), 3).unwrap();
        for x in attractor_samples(&q(1, 3), &q(1, 1), 8).unwrap() {
            assert!(m.covers(&x), "{x}");
        }
    }

    #[test]
    fn dimension() {
        assert_eq!(dimension_exact(&q(1, 4)), Some(q(1, 2)));
        assert_eq!(dimension_exact(&q(1, 3)), None);
        assert_eq!(dimension_formula(&q(1, 4)).unwrap(), 0.5);
        assert_eq!(dimension_formula(&q(1, 2)).unwrap(), 1.0);
        let est = box_counting_estimate(&q(1, 3), 12).unwrap();
        assert!((est - 2f64.ln() / 3f64.ln()).abs() < 0.05, "{est}");
    }
}
