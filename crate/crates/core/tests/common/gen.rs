//! Seeded random inputs shared by unit, property and acceptance tests.
#![allow(dead_code)]

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stmat::{Element, Matrix};

pub const SEED: u64 = 0x5eed_2010;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small integer values; roughly a fifth zero and a fifth ghost.
pub fn random_element(rng: &mut impl Rng) -> Element {
    let v = rng.gen_range(-3..=3);
    match rng.gen_range(0..10) {
        0 | 1 => Element::Zero,
        2 | 3 => Element::ghost(v),
        _ => Element::tangible(v),
    }
}

pub fn random_tangible(rng: &mut impl Rng) -> Element {
    Element::tangible(rng.gen_range(-3..=3))
}

pub fn random_matrix(rng: &mut impl Rng, n: usize) -> Matrix {
    let cells: Vec<Element> = (0..n * n).map(|_| random_element(rng)).collect();
    Matrix::from_fn(n, |i, j| cells[i * n + j].clone())
}

/// Tangible-or-zero entries only.
pub fn random_tangible_matrix(rng: &mut impl Rng, n: usize) -> Matrix {
    let cells: Vec<Element> = (0..n * n)
        .map(|_| if rng.gen_bool(0.2) { Element::Zero } else { random_tangible(rng) })
        .collect();
    Matrix::from_fn(n, |i, j| cells[i * n + j].clone())
}

pub fn matrix_from_seed(n: usize, seed: u64) -> Matrix {
    random_matrix(&mut rng(seed), n)
}

pub fn arb_matrix(n: std::ops::Range<usize>) -> impl Strategy<Value = Matrix> {
    (n, any::<u64>()).prop_map(|(n, seed)| matrix_from_seed(n, seed))
}

pub fn ghost_dependent_entrywise(a: &Matrix, b: &Matrix) -> bool {
    a.entries().iter().zip(b.entries()).all(|(x, y)| x.ghost_dependent(y))
}

/// Random quasi-identity: `𝟙` diagonal, ghost `-d(i,j)` off the diagonal for
/// a shortest-path metric `d` with positive distances.
pub fn random_quasi_identity(rng: &mut impl Rng, n: usize) -> Matrix {
    let mut d = vec![vec![0i64; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            if i != j {
                *x = rng.gen_range(1..=4);
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                d[i][j] = d[i][j].min(d[i][k] + d[k][j]);
            }
        }
    }
    Matrix::from_fn(n, |i, j| if i == j { Element::one() } else { Element::ghost(-d[i][j]) })
}

fn random_partition(rng: &mut impl Rng, n: usize) -> Vec<usize> {
    let mut sizes = Vec::new();
    let mut left = n;
    while left > 0 {
        let s = rng.gen_range(1..=left);
        sizes.push(s);
        left -= s;
    }
    sizes
}

/// Upper block triangular matrix whose diagonal blocks are tangible
/// multiples of quasi-identities (so nonsingular and semi-idempotent).
/// Returns the matrix and the number of blocks.
pub fn random_block_form(rng: &mut impl Rng, n: usize) -> (Matrix, usize) {
    let sizes = random_partition(rng, n);
    let mut starts = vec![0];
    for s in &sizes {
        starts.push(starts.last().unwrap() + s);
    }
    let mut a = Matrix::zero(n);
    for (b, &s) in sizes.iter().enumerate() {
        let beta = random_tangible(rng);
        let q = random_quasi_identity(rng, s).scale(&beta);
        for i in 0..s {
            for j in 0..s {
                a.set(starts[b] + i, starts[b] + j, q.get(i, j).clone());
            }
        }
        for c in b + 1..sizes.len() {
            for i in starts[b]..starts[b + 1] {
                for j in starts[c]..starts[c + 1] {
                    let e = if rng.gen_bool(0.3) { Element::Zero } else { random_element(rng) };
                    a.set(i, j, e);
                }
            }
        }
    }
    (a, sizes.len())
}

/// Nonsingular matrix in tangibly stable block triangular form, conjugated
/// by a random permutation.
pub fn random_nonsingular_stable(rng: &mut impl Rng, n: usize) -> Matrix {
    let (a, eta) = random_block_form(rng, n);
    let m = a.pow(2 * eta);
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    m.permuted(&perm)
}
