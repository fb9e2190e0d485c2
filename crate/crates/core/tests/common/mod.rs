//! Independent reference computations shared by the integration tests.
//! Nothing here goes through the library's bitmask or common-denominator
//! fast paths: sums are plain `BigRational` additions over index lists.

#![allow(dead_code)]

use hassett::WeightData;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn wd(g: u32, w: &[&str]) -> WeightData {
    WeightData::from_fractions(g, w).unwrap()
}

pub fn q(p: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(d))
}

/// Every subset of `{1..n}` as a sorted index list, built recursively.
pub fn all_subsets(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for k in 1..=n {
        let with_k: Vec<Vec<usize>> = out
            .iter()
            .map(|s| {
                let mut t = s.clone();
                t.push(k);
                t
            })
            .collect();
        out.extend(with_k);
    }
    out
}

pub fn direct_sum(a: &WeightData, s: &[usize]) -> BigRational {
    s.iter().fold(BigRational::from_integer(BigInt::from(0)), |acc, &i| {
        acc + a.weights()[i - 1].clone()
    })
}

pub fn direct_at_most_one(a: &WeightData, s: &[usize]) -> bool {
    direct_sum(a, s) <= BigRational::one()
}

/// Reference signature: subsets of size `>= m` with sum at most one, sorted.
pub fn brute_signature(a: &WeightData, m: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = all_subsets(a.len())
        .into_iter()
        .filter(|s| s.len() >= m && direct_at_most_one(a, s))
        .collect();
    out.sort();
    out
}

/// Reference admissibility straight from the definition.
pub fn brute_admissible(a: &WeightData, i: usize, j: usize) -> bool {
    let others: Vec<usize> = (1..=a.len()).filter(|&k| k != i && k != j).collect();
    all_subsets(others.len())
        .into_iter()
        .map(|pos| pos.iter().map(|&p| others[p - 1]).collect::<Vec<_>>())
        .filter(|h| h.len() >= 2)
        .all(|h| {
            let mut hi = h.clone();
            hi.push(i);
            let mut hj = h;
            hj.push(j);
            direct_at_most_one(a, &hi) == direct_at_most_one(a, &hj)
        })
}

/// Random valid weight data with `n <= max_n` markings, genus in
/// `0..=max_genus`, and denominators at most `max_den`.
pub fn random_weight_data(rng: &mut ChaCha8Rng, max_genus: u32, max_n: usize, max_den: i64) -> WeightData {
    loop {
        let g = rng.gen_range(0..=max_genus);
        let lo = if g == 0 { 3 } else { 1 };
        let n = rng.gen_range(lo..=max_n);
        let weights: Vec<BigRational> = (0..n)
            .map(|_| {
                let d = rng.gen_range(1..=max_den);
                q(rng.gen_range(1..=d), d)
            })
            .collect();
        if let Ok(a) = WeightData::new(g, weights) {
            return a;
        }
    }
}

/// A reproducible corpus of `count` random weight data.
pub fn corpus(seed: u64, count: usize, max_genus: u32, max_n: usize, max_den: i64) -> Vec<WeightData> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| random_weight_data(&mut rng, max_genus, max_n, max_den))
        .collect()
}

/// Weights drawn from a small pool so that ties and exact walls (sums equal
/// to 1) are common.
pub fn wall_heavy_weight_data(rng: &mut ChaCha8Rng, genus: u32, n: usize) -> Option<WeightData> {
    const POOL: [(i64, i64); 8] = [(1, 6), (1, 4), (1, 3), (1, 2), (2, 3), (3, 4), (5, 6), (1, 1)];
    let weights = (0..n)
        .map(|_| {
            let (p, d) = POOL[rng.gen_range(0..POOL.len())];
            q(p, d)
        })
        .collect();
    WeightData::new(genus, weights).ok()
}

pub fn factorial(k: usize) -> u128 {
    (1..=k as u128).product()
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}
