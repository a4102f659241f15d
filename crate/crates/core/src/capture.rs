//! Capture certificates: interior points of partition polytopes supplied by
//! the weights `L(a, i)`, and the width reduction to three blocks.

use std::collections::BTreeSet;

use num_traits::{One, Zero};

use crate::combinatorics::{floor_half, special_weight, WeightVector};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::rational::{fmt_q, q, qi, Rational};

/// `{x : Σ x = 2, 0 ≤ x_i ≤ β_i}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedHypersimplex {
    pub beta: Vec<Rational>,
}

impl WeightedHypersimplex {
    pub fn new(beta: Vec<Rational>) -> Result<Self> {
        if beta
            .iter()
            .any(|b| *b <= Rational::zero() || *b > Rational::one())
        {
            return Err(Error::Domain("weight bounds must lie in (0, 1]".into()));
        }
        let total: Rational = beta.iter().sum();
        if total < qi(2) {
            return Err(Error::Domain(format!(
                "weight bounds sum to {} < 2: empty",
                fmt_q(&total)
            )));
        }
        Ok(WeightedHypersimplex { beta })
    }

    /// `β = (1/k, …, 1/k)`.
    pub fn symmetric(n: usize, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::Domain("k must be positive".into()));
        }
        Self::new(vec![q(1, k as i64); n])
    }

    pub fn n(&self) -> usize {
        self.beta.len()
    }

    pub fn is_symmetric(&self) -> bool {
        self.beta.windows(2).all(|w| w[0] == w[1])
    }

    pub fn contains(&self, x: &WeightVector) -> bool {
        x.n() == self.n() && x.entries().iter().zip(&self.beta).all(|(a, b)| a <= b)
    }

    /// `min x_I` over the polytope: `max(0, 2 − Σ_{i ∉ I} β_i)`.
    pub fn min_block_sum(&self, block: &[usize]) -> Rational {
        let outside: Rational = (0..self.n())
            .filter(|i| !block.contains(i))
            .map(|i| self.beta[i].clone())
            .sum();
        (qi(2) - outside).max(Rational::zero())
    }
}

/// `{x ∈ Δ(2, n) : x_{I_j} ≤ 1 for every block}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionPolytope {
    pub n: usize,
    pub blocks: Vec<Vec<usize>>,
}

impl PartitionPolytope {
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        if blocks.len() < 3 {
            return Err(Error::Domain(format!("width {} < 3", blocks.len())));
        }
        let mut seen = BTreeSet::new();
        for b in &blocks {
            if b.is_empty() {
                return Err(Error::Domain("empty block".into()));
            }
            for &i in b {
                if i >= n || !seen.insert(i) {
                    return Err(Error::Domain(format!("blocks do not partition 0..{n}")));
                }
            }
        }
        if seen.len() != n {
            return Err(Error::Domain(format!("blocks do not cover 0..{n}")));
        }
        Ok(PartitionPolytope { n, blocks })
    }

    /// Consecutive blocks of the given sizes.
    pub fn consecutive(sizes: &[usize]) -> Result<Self> {
        let mut start = 0;
        let blocks = sizes
            .iter()
            .map(|&s| {
                let b: Vec<usize> = (start..start + s).collect();
                start += s;
                b
            })
            .collect();
        Self::new(start, blocks)
    }

    pub fn width(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_sums(&self, x: &WeightVector) -> Vec<Rational> {
        self.blocks.iter().map(|b| x.sum_over(b)).collect()
    }
}

/// Every block sum strictly below 1.
pub fn in_interior(x: &WeightVector, p: &PartitionPolytope) -> Result<bool> {
    if x.n() != p.n {
        return Err(Error::Usage(format!(
            "x has n = {} but the polytope has n = {}",
            x.n(),
            p.n
        )));
    }
    Ok(p.block_sums(x).iter().all(|s| *s < Rational::one()))
}

/// Width-3 shape `n1 ≥ n2 ≥ n3 ≥ 1`.
pub type Shape3 = [usize; 3];

/// All width-3 shapes of `n`, in descending lexicographic order.
pub fn width3_shapes(n: usize) -> Vec<Shape3> {
    let mut out = Vec::new();
    for n1 in (1..=n).rev() {
        for n2 in (1..=n1).rev() {
            if n1 + n2 >= n {
                continue;
            }
            let n3 = n - n1 - n2;
            if n3 <= n2 {
                out.push([n1, n2, n3]);
            }
        }
    }
    out
}

fn check_shape(shape: Shape3, n: usize) -> Result<()> {
    let [a, b, c] = shape;
    if a < b || b < c || c == 0 || a + b + c != n {
        return Err(Error::Domain(format!(
            "({a},{b},{c}) is not a sorted width-3 shape of {n}"
        )));
    }
    Ok(())
}

/// Necessary condition `n2 + n3 > k` for the interior to meet `Δ_β`.
pub fn is_candidate_shape(shape: Shape3, n: usize, k: usize) -> Result<bool> {
    check_shape(shape, n)?;
    if k < 2 {
        return Err(Error::Domain(format!("k = {k} < 2")));
    }
    Ok(shape[1] + shape[2] > k)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaptureCertificate {
    pub shape: Shape3,
    /// The witness is `L(a, i)` with `i` the first point of block 3.
    pub a: Rational,
    pub odd_entry: usize,
    pub witness: WeightVector,
    pub block_sums: [Rational; 3],
    /// Every coordinate of the witness is at most `1/k`.
    pub in_weighted_simplex: bool,
}

impl CaptureCertificate {
    /// `t` with `a = 1/t`.
    pub fn denominator(&self) -> usize {
        (self.a.denom() / self.a.numer())
            .try_into()
            .expect("witness weights are unit fractions")
    }
}

fn check_k(n: usize, k: usize) -> Result<()> {
    if k < 2 || k + 1 > floor_half(n) {
        return Err(Error::Domain(format!(
            "k = {k} outside 2..={} for n = {n}",
            floor_half(n).saturating_sub(1)
        )));
    }
    Ok(())
}

/// `a = 1/(n−1−n3)` if `n3 ≥ k`, else `a = 1/(n−k)`; the odd entry sits in block 3.
pub fn capture_witness(shape: Shape3, n: usize, k: usize) -> Result<CaptureCertificate> {
    check_k(n, k)?;
    if !is_candidate_shape(shape, n, k)? {
        return Err(Error::Domain(format!(
            "({},{},{}) is not a candidate for k = {k}",
            shape[0], shape[1], shape[2]
        )));
    }
    let [n1, n2, n3] = shape;
    let t = if n3 >= k { n - 1 - n3 } else { n - k };
    let a = q(1, t as i64);
    let odd_entry = n1 + n2;
    let witness = special_weight(&a, odd_entry, n)?.weight;
    let p = PartitionPolytope::consecutive(&shape)?;
    let sums = p.block_sums(&witness);
    if !in_interior(&witness, &p)? {
        return Err(Error::Certificate(format!(
            "L(1/{t}) misses the interior of ({n1},{n2},{n3}): block sums {}",
            sums.iter().map(fmt_q).collect::<Vec<_>>().join(", ")
        )));
    }
    let bound = q(1, k as i64);
    let in_weighted_simplex = witness.entries().iter().all(|v| *v <= bound);
    Ok(CaptureCertificate {
        shape,
        a,
        odd_entry,
        witness,
        block_sums: [sums[0].clone(), sums[1].clone(), sums[2].clone()],
        in_weighted_simplex,
    })
}

/// Coarsens a partition of width `≥ 4` to width 3 keeping `x` interior.
///
/// Blocks are sorted by descending sum; `j_2` is the first index whose suffix
/// sum is below 1, and `j_1 < j_2` the first index with `x_{I_{j_1}} + … +
/// x_{I_{j_2−1}} < 1`. The first group is never empty because the prefix
/// ending at `j_2 − 1` sums to more than 1.
pub fn reduce_width(p: &PartitionPolytope, x: &WeightVector) -> Result<PartitionPolytope> {
    if p.width() < 4 {
        return Err(Error::Usage(format!("width {} < 4", p.width())));
    }
    if !in_interior(x, p)? {
        return Err(Error::Usage("x is not in the interior of the polytope".into()));
    }
    let mut blocks: Vec<(Rational, Vec<usize>)> =
        p.blocks.iter().map(|b| (x.sum_over(b), b.clone())).collect();
    // Stable sort keeps ties in their input order.
    blocks.sort_by(|a, b| b.0.cmp(&a.0));
    let w = blocks.len();
    let one = Rational::one();
    let range_sum =
        |from: usize, to: usize| -> Rational { blocks[from..to].iter().map(|(s, _)| s.clone()).sum() };
    let j2 = (0..w)
        .find(|&j| range_sum(j, w) < one)
        .expect("last block is below 1");
    let j1 = (0..j2)
        .find(|&j| range_sum(j, j2) < one)
        .expect("block j2 − 1 is below 1");
    if j1 == 0 {
        return Err(Error::Certificate(
            "width reduction produced an empty first group".into(),
        ));
    }
    let merge = |from: usize, to: usize| -> Vec<usize> {
        let mut b: Vec<usize> = blocks[from..to].iter().flat_map(|(_, b)| b.clone()).collect();
        b.sort_unstable();
        b
    };
    let out = PartitionPolytope::new(p.n, vec![merge(0, j1), merge(j1, j2), merge(j2, w)])?;
    if !in_interior(x, &out)? {
        return Err(Error::Certificate("width reduction left the interior".into()));
    }
    Ok(out)
}

/// Capture certificates for every candidate width-3 shape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmplenessReport {
    pub n: usize,
    pub k: usize,
    pub certificates: Vec<CaptureCertificate>,
    pub excluded: Vec<Shape3>,
    /// `t` of the `V(1/t, n)` supplying witnesses, ascending.
    pub witness_denominators: Vec<usize>,
    /// The admissible range `⌊n/2⌋..=n−k`.
    pub allowed_denominators: (usize, usize),
    /// Shapes whose witness has a coordinate above `1/k`.
    pub outside_weighted_simplex: Vec<Shape3>,
}

impl AmplenessReport {
    pub fn all_captured(&self) -> bool {
        let (lo, hi) = self.allowed_denominators;
        self.witness_denominators.iter().all(|t| (lo..=hi).contains(t))
    }
}

pub fn ampleness_certificate_with(n: usize, k: usize, exec: Execution) -> Result<AmplenessReport> {
    check_k(n, k)?;
    let shapes = width3_shapes(n);
    let mut candidates = Vec::new();
    let mut excluded = Vec::new();
    for s in shapes {
        if is_candidate_shape(s, n, k)? {
            candidates.push(s);
        } else {
            excluded.push(s);
        }
    }
    let certificates = exec
        .map(candidates, |s| capture_witness(s, n, k))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let witness_denominators: BTreeSet<usize> =
        certificates.iter().map(CaptureCertificate::denominator).collect();
    let outside_weighted_simplex = certificates
        .iter()
        .filter(|c| !c.in_weighted_simplex)
        .map(|c| c.shape)
        .collect();
    Ok(AmplenessReport {
        n,
        k,
        certificates,
        excluded,
        witness_denominators: witness_denominators.into_iter().collect(),
        allowed_denominators: (floor_half(n), n - k),
        outside_weighted_simplex,
    })
}

pub fn ampleness_certificate(n: usize, k: usize) -> Result<AmplenessReport> {
    ampleness_certificate_with(n, k, Execution::default())
}
