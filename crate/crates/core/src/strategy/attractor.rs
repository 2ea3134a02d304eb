use crate::scalar::Scalar;
use crate::space::{Point, SpaceError};

/// `S_ρ = { x0 + Σ_m ε_m (1-β) β^m ρ v : ε_m = ±1 }` in `R^d` (max-norm).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttractorSpec {
    pub anchor: Vec<Scalar>,
    /// Unit vector in the max-norm.
    pub v: Vec<Scalar>,
    pub beta: Scalar,
    pub rho: Scalar,
}

impl AttractorSpec {
    pub fn new(anchor: &Point, v: Vec<Scalar>, beta: Scalar, rho: Scalar) -> Result<Self, SpaceError> {
        let anchor = anchor
            .coords()
            .ok_or_else(|| SpaceError::InvalidParameter("attractor needs a Euclidean anchor".into()))?
            .to_vec();
        if anchor.len() != v.len() {
            return Err(SpaceError::DimensionMismatch {
                expected: anchor.len(),
                got: v.len(),
            });
        }
        let norm = v.iter().map(Scalar::abs).max().unwrap_or_default();
        if norm != Scalar::one() {
            return Err(SpaceError::InvalidParameter(format!("v has max-norm {norm}, expected 1/1")));
        }
        if !(beta.is_positive() && beta < Scalar::new(1, 2)) || !rho.is_positive() {
            return Err(SpaceError::InvalidParameter("need 0 < beta < 1/2 and rho > 0".into()));
        }
        Ok(AttractorSpec { anchor, v, beta, rho })
    }

    /// `(1-β) β^m ρ`.
    fn step(&self, m: usize) -> Scalar {
        (Scalar::one() - &self.beta) * self.beta.pow(m as u32) * &self.rho
    }

    /// `β^M ρ`, the radius of each depth-`M` piece.
    pub fn tail_radius(&self, depth: usize) -> Scalar {
        self.beta.pow(depth as u32) * &self.rho
    }

    fn shift(&self, c: &[Scalar], t: &Scalar) -> Vec<Scalar> {
        c.iter().zip(&self.v).map(|(a, b)| a + t * b).collect()
    }
}

fn max_dist(a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).max().unwrap_or_default()
}

/// The `2^M` depth-`M` prefix centers, sign sequences in lexicographic
/// order with `-` before `+`.
pub fn attractor_centers(spec: &AttractorSpec, depth: usize) -> Vec<Vec<Scalar>> {
    let mut level = vec![spec.anchor.clone()];
    for m in 0..depth {
        let s = spec.step(m);
        let neg = -&s;
        level = level
            .iter()
            .flat_map(|c| [spec.shift(c, &neg), spec.shift(c, &s)])
            .collect();
    }
    level
}

/// Bounds `lower <= dist(q, S_ρ) <= upper` from the depth-`M` cover.
///
/// `S_ρ` lies in the union of the balls `B(c_i, β^M ρ)` over the prefix
/// centers `c_i`, which gives `lower`; the points `c_i + β^M ρ v` belong to
/// `S_ρ`, which gives `upper`. Equal to the plain enumeration over all `2^M`
/// prefixes; subtrees that cannot improve either bound are skipped.
pub fn attractor_distance_bounds(
    spec: &AttractorSpec,
    q: &Point,
    depth: usize,
) -> Result<(Scalar, Scalar), SpaceError> {
    let q = q
        .coords()
        .ok_or_else(|| SpaceError::InvalidParameter("attractor query must be Euclidean".into()))?;
    if q.len() != spec.anchor.len() {
        return Err(SpaceError::DimensionMismatch {
            expected: spec.anchor.len(),
            got: q.len(),
        });
    }
    let tail = spec.tail_radius(depth);
    let mut best_center: Option<Scalar> = None;
    let mut best_upper: Option<Scalar> = None;
    let mut stack = vec![(0usize, spec.anchor.clone())];
    while let Some((j, c)) = stack.pop() {
        let d = max_dist(q, &c);
        if j == depth {
            let u = max_dist(q, &spec.shift(&c, &tail));
            if best_center.as_ref().is_none_or(|b| d < *b) {
                best_center = Some(d);
            }
            if best_upper.as_ref().is_none_or(|b| u < *b) {
                best_upper = Some(u);
            }
            continue;
        }
        // leaves below lie within (β^j - β^M)ρ of c, their upper points within β^j ρ
        let spread = spec.tail_radius(j);
        let leaf_spread = &spread - &tail;
        let can_lower = best_center.as_ref().is_none_or(|b| &d - &leaf_spread < *b);
        let can_upper = best_upper.as_ref().is_none_or(|b| &d - &spread < *b);
        if !(can_lower || can_upper) {
            continue;
        }
        // nearer child on top, so good bounds are found first and prune
        let s = spec.step(j);
        let (a, b) = (spec.shift(&c, &-&s), spec.shift(&c, &s));
        if max_dist(q, &a) < max_dist(q, &b) {
            stack.push((j + 1, b));
            stack.push((j + 1, a));
        } else {
            stack.push((j + 1, a));
            stack.push((j + 1, b));
        }
    }
    let lower = (best_center.expect("at least one leaf") - tail).max(Scalar::zero());
    Ok((lower, best_upper.expect("at least one leaf")))
}
