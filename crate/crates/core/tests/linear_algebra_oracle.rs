//! Hilbert functions of fat points computed directly: rank of the vanishing
//! conditions on degree-`t` forms at sampled points, over a large prime field.

use ginlab::hilbert::HilbertEngine;
use ginlab::PointConfig;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const P: u64 = 2_147_483_647;

fn mul(a: u64, b: u64) -> u64 {
    a * b % P
}

fn pow(mut b: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, b);
        }
        b = mul(b, b);
        e >>= 1;
    }
    acc
}

fn inv(a: u64) -> u64 {
    pow(a, P - 2)
}

fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1)) % P
}

fn rank(mut rows: Vec<Vec<u64>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let scale = inv(rows[rank][c]);
        for v in rows[rank].iter_mut() {
            *v = mul(*v, scale);
        }
        let pivot_row = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && row[c] != 0 {
                let f = row[c];
                for (v, &p) in row.iter_mut().zip(&pivot_row) {
                    *v = (*v + P - mul(f, p)) % P;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Dimension of degree-`t` forms vanishing to order `m` at every affine point `(a, b)`.
fn hilbert_by_rank(points: &[(u64, u64)], m: u64, t: u64) -> u64 {
    let monomials: Vec<(u64, u64)> = (0..=t)
        .flat_map(|i| (0..=t - i).map(move |j| (i, j)))
        .collect();
    let mut rows = Vec::new();
    for &(a, b) in points {
        for u in 0..m {
            for v in 0..m - u {
                // coefficient of (x-a)^u (y-b)^v in x^i y^j
                let row = monomials
                    .iter()
                    .map(|&(i, j)| {
                        if u > i || v > j {
                            0
                        } else {
                            mul(
                                mul(binom(i, u), pow(a, i - u)),
                                mul(binom(j, v), pow(b, j - v)),
                            )
                        }
                    })
                    .collect();
                rows.push(row);
            }
        }
    }
    monomials.len() as u64 - rank(rows) as u64
}

fn random_points(rng: &mut ChaCha8Rng, r: usize) -> Vec<(u64, u64)> {
    (0..r)
        .map(|_| (rng.gen_range(1..P), rng.gen_range(1..P)))
        .collect()
}

fn compare(config: PointConfig, points: &[(u64, u64)], max_m: u64) {
    let engine = HilbertEngine::new(config).unwrap();
    for m in 1..=max_m {
        let top = engine.alpha(m).unwrap() + m + 2;
        for t in 0..=top {
            let want = hilbert_by_rank(points, m, t);
            let got = engine.value(m, t).unwrap();
            assert_eq!(got, want, "{config} m={m} t={t}");
        }
    }
}

#[test]
fn general_points_match_rank_computation() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for r in 2..=8 {
        let pts = random_points(&mut rng, r);
        let max_m = if r <= 5 { 7 } else { 6 };
        compare(PointConfig::general(r).unwrap(), &pts, max_m);
    }
}

#[test]
fn collinear_points_match_rank_computation() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for l in 3..=5 {
        // l points on y = 0 and one point off it
        let mut pts: Vec<(u64, u64)> = (0..l).map(|_| (rng.gen_range(1..P), 0)).collect();
        pts.push((rng.gen_range(1..P), rng.gen_range(1..P)));
        compare(PointConfig::collinear(l).unwrap(), &pts, 6);
    }
}

#[test]
fn nine_and_ten_general_points_match_rank_computation() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for r in [9, 10] {
        let pts = random_points(&mut rng, r);
        compare(PointConfig::shgh(r).unwrap(), &pts, 4);
    }
}

#[test]
fn oracle_sees_special_position() {
    // three collinear points impose only two conditions on lines
    let pts = [(1, 0), (2, 0), (3, 0)];
    assert_eq!(hilbert_by_rank(&pts, 1, 1), 1);
    let general = [(1, 5), (2, 7), (3, 11)];
    assert_eq!(hilbert_by_rank(&general, 1, 1), 0);
}
