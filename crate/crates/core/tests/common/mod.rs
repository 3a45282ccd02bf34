#![allow(dead_code)]

use ck_entropy::matrix::TransitionMatrix;
use ck_entropy::validate;
use rand::Rng;

/// Rejection-sample an irreducible 0-1 matrix that is not a permutation.
pub fn random_irreducible<R: Rng>(rng: &mut R, n: usize) -> TransitionMatrix {
    loop {
        let density = rng.gen_range(0.2..0.7);
        let rows: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_bool(density) as i64).collect()).collect();
        if let Ok(a) = validate(&rows) {
            if a.is_irreducible() && !a.is_permutation() {
                return a;
            }
        }
    }
}

pub fn matrix(rows: &[&[i64]]) -> TransitionMatrix {
    validate(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
}
