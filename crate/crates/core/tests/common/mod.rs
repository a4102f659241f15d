//! Independent oracles and samplers shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use gitnef_core::combinatorics::{CurveClass, WeightVector};
use gitnef_core::git_complex::WallSet;
use gitnef_core::linalg::{solve, QMatrix, Solution};
use gitnef_core::rational::{is_negative, q, qi};
use gitnef_core::Rational;
use itertools::Itertools;
use num_traits::One;
use rand::seq::SliceRandom;
use rand::Rng;

/// Every `(n−1)`-subset of walls and zeros, together with `Σ x = 2`, solved
/// exactly; unique solutions inside the unit box are the 0-cells.
pub fn brute_force_zero_cells(n: usize) -> BTreeSet<Vec<Rational>> {
    let mut constraints: Vec<(Vec<Rational>, Rational)> = WallSet::new(n)
        .unwrap()
        .walls
        .iter()
        .map(|&w| ((0..n).map(|i| qi((w >> i & 1) as i64)).collect(), qi(1)))
        .collect();
    for i in 0..n {
        let mut row = vec![qi(0); n];
        row[i] = qi(1);
        constraints.push((row, qi(0)));
    }
    let subsets: Vec<Vec<usize>> = (0..constraints.len()).combinations(n - 1).collect();
    let threads = std::thread::available_parallelism().map_or(4, |p| p.get());
    let chunk = subsets.len().div_ceil(threads).max(1);
    std::thread::scope(|s| {
        let handles: Vec<_> = subsets
            .chunks(chunk)
            .map(|part| {
                let constraints = &constraints;
                s.spawn(move || {
                    let mut found = BTreeSet::new();
                    for subset in part {
                        let mut rows = vec![vec![qi(1); n]];
                        let mut rhs = vec![qi(2)];
                        for &j in subset {
                            rows.push(constraints[j].0.clone());
                            rhs.push(constraints[j].1.clone());
                        }
                        let a = QMatrix::from_rows(rows).unwrap();
                        if let Solution::Unique(x) = solve(&a, &rhs).unwrap() {
                            if x.iter().all(|v| !is_negative(v) && *v <= Rational::one()) {
                                found.insert(x);
                            }
                        }
                    }
                    found
                })
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().unwrap()).collect()
    })
}

/// A random point of `Δ(2, n)` with small denominators (rejection sampled).
pub fn random_weight(rng: &mut impl Rng, n: usize) -> WeightVector {
    loop {
        let w: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=24)).collect();
        let total: i64 = w.iter().sum();
        if total == 0 || w.iter().any(|&v| 2 * v > total) {
            continue;
        }
        return WeightVector::new(w.iter().map(|&v| q(2 * v, total)).collect()).unwrap();
    }
}

/// A uniformly labelled partition of `0..n` into four nonempty blocks.
pub fn random_curve(rng: &mut impl Rng, n: usize) -> CurveClass {
    loop {
        let labels: Vec<usize> = (0..n).map(|_| rng.gen_range(0..4)).collect();
        let blocks: [Vec<usize>; 4] = std::array::from_fn(|b| (0..n).filter(|&i| labels[i] == b).collect());
        if blocks.iter().all(|b| !b.is_empty()) {
            return CurveClass::new(n, blocks).unwrap();
        }
    }
}

pub fn random_perm(rng: &mut impl Rng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// Both candidate values at a branch boundary, from the block sums alone.
pub fn branch_values(sums: &[Rational; 4]) -> (Rational, Rational, Rational) {
    let max = sums.iter().max().unwrap().clone();
    let min = sums.iter().min().unwrap().clone();
    (qi(0), qi(2) * (qi(1) - &max), qi(2) * min)
}

/// Splits `total` into `parts` nonnegative rationals, each at most 1.
pub fn split_sum(rng: &mut impl Rng, total: &Rational, parts: usize) -> Vec<Rational> {
    loop {
        let w: Vec<i64> = (0..parts).map(|_| rng.gen_range(1..=12)).collect();
        let s: i64 = w.iter().sum();
        let out: Vec<Rational> = w.iter().map(|&v| total * q(v, s)).collect();
        if out.iter().all(|v| *v <= Rational::one()) {
            return out;
        }
    }
}

/// A weight vector and consecutive curve realizing the given block sums.
pub fn realize(rng: &mut impl Rng, sums: &[Rational; 4], sizes: [usize; 4]) -> (WeightVector, CurveClass) {
    let n: usize = sizes.iter().sum();
    let mut entries = Vec::with_capacity(n);
    let mut start = 0;
    let blocks = std::array::from_fn(|b| {
        entries.extend(split_sum(rng, &sums[b], sizes[b]));
        let blk: Vec<usize> = (start..start + sizes[b]).collect();
        start += sizes[b];
        blk
    });
    (
        WeightVector::new(entries).unwrap(),
        CurveClass::new(n, blocks).unwrap(),
    )
}
