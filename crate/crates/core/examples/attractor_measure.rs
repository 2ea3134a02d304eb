//! Covers of the attractor of Bob's two-candidate strategy, its measure
//! bound and its dimension.

use metric_games::lab::{attractor_samples, box_counting_estimate, dimension_exact, dimension_formula, measure_upper_bound};
use metric_games::scalar::{q, Scalar};

fn main() {
    let rho = Scalar::one();
    for m in 0..6 {
        let b = measure_upper_bound(&q(1, 4), &rho, m).expect("bound");
        println!("M={m}: {} pieces, measure <= {}", b.cover.len(), b.bound);
    }
    let cover = measure_upper_bound(&q(1, 4), &rho, 3).unwrap();
    let samples = attractor_samples(&q(1, 4), &rho, 8).unwrap();
    let inside = samples.iter().filter(|x| cover.covers(x)).count();
    println!("{inside} of {} depth-8 samples lie in the depth-3 cover", samples.len());

    for beta in [q(1, 4), q(1, 3), q(1, 8), q(1, 5)] {
        let exact = dimension_exact(&beta).map_or("-".to_string(), |d| d.to_string());
        println!(
            "beta {beta}: dimension {:.4} (exact {exact}), box count {:.4}",
            dimension_formula(&beta).unwrap(),
            box_counting_estimate(&beta, 12).unwrap()
        );
    }
}
