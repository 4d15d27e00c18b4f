//! Seeded random cameras and coordinate changes with small integer entries.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::camera::{Arrangement, Camera};
use crate::error::Result;
use crate::linalg::QMatrix;
use crate::poly::Rational;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn int_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, bound: i64) -> QMatrix {
    let vals: Vec<Rational> = (0..rows * cols).map(|_| Rational::from_int(rng.gen_range(-bound..=bound))).collect();
    QMatrix::from_fn(rows, cols, |r, c| vals[r * cols + c].clone())
}

fn invertible<R: Rng>(rng: &mut R, n: usize, bound: i64) -> QMatrix {
    loop {
        let m = int_matrix(rng, n, n, bound);
        if !m.det().expect("square").is_zero() {
            return m;
        }
    }
}

/// Invertible `3 x 3` matrix with entries in `[-10, 10]`.
pub fn random_gl3<R: Rng>(rng: &mut R) -> QMatrix {
    invertible(rng, 3, 10)
}

/// Invertible `4 x 4` matrix with entries in `[-10, 10]`.
pub fn random_gl4<R: Rng>(rng: &mut R) -> QMatrix {
    invertible(rng, 4, 10)
}

/// One invertible `3 x 3` matrix per camera.
pub fn random_image_change<R: Rng>(rng: &mut R, n: usize) -> Vec<QMatrix> {
    (0..n).map(|_| random_gl3(rng)).collect()
}

/// `n` rank-3 cameras with entries in `[-bound, bound]` and pairwise
/// distinct foci.
pub fn random_arrangement<R: Rng>(rng: &mut R, n: usize, bound: i64) -> Result<Arrangement> {
    draw(rng, n, bound, false)
}

/// Like [`random_arrangement`], with every focus off the plane at infinity.
pub fn random_finite_arrangement<R: Rng>(rng: &mut R, n: usize, bound: i64) -> Result<Arrangement> {
    draw(rng, n, bound, true)
}

fn draw<R: Rng>(rng: &mut R, n: usize, bound: i64, finite: bool) -> Result<Arrangement> {
    loop {
        let mut cams = Vec::with_capacity(n);
        while cams.len() < n {
            if let Ok(c) = Camera::new(int_matrix(rng, 3, 4, bound)) {
                if !(finite && c.focus().is_at_infinity()) {
                    cams.push(c);
                }
            }
        }
        let arr = Arrangement::new(cams)?;
        if arr.distinct_foci() {
            return Ok(arr);
        }
    }
}

/// `n` translational cameras with distinct centers in `[-bound, bound]^3`.
pub fn random_translational<R: Rng>(rng: &mut R, n: usize, bound: i64) -> Result<Arrangement> {
    let mut ts: Vec<[i64; 3]> = Vec::with_capacity(n);
    while ts.len() < n {
        let t = [0; 3].map(|_| rng.gen_range(-bound..=bound));
        if !ts.contains(&t) {
            ts.push(t);
        }
    }
    Arrangement::translational_ints(&ts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_draws_are_reproducible() {
        let a = random_arrangement(&mut rng_from_seed(7), 3, 5).unwrap();
        let b = random_arrangement(&mut rng_from_seed(7), 3, 5).unwrap();
        assert_eq!(a, b);
        assert!(a.distinct_foci());
        let f = random_finite_arrangement(&mut rng_from_seed(1), 4, 3).unwrap();
        assert!(f.foci().iter().all(|p| !p.is_at_infinity()));
        let g = random_gl4(&mut rng_from_seed(2));
        assert!(!g.det().unwrap().is_zero());
    }
}
