//! Weight vectors on the hypersimplex, vital curve classes and shapes,
//! symmetric boundary divisors, and the special weights `L(a, i)`.
//!
//! Indices are 0-based in the API and 1-based in every text encoding.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, ParseError, Result};
use crate::rational::{fmt_q, parse_q, parse_q_list, q, qi, Rational};

/// A GIT linearization: `x ∈ Q^n` with `0 ≤ x_i ≤ 1` and `Σ x_i = 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightVector {
    entries: Vec<Rational>,
}

impl WeightVector {
    pub fn new(entries: Vec<Rational>) -> Result<Self> {
        if entries.len() < 4 {
            return Err(Error::Domain(format!(
                "weight vectors need n >= 4 entries, got {}",
                entries.len()
            )));
        }
        if let Some(bad) = entries.iter().find(|x| x.is_negative() || **x > Rational::one()) {
            return Err(Error::Domain(format!(
                "weight {} lies outside [0, 1]",
                fmt_q(bad)
            )));
        }
        let total: Rational = entries.iter().sum();
        if total != qi(2) {
            return Err(Error::Domain(format!("weights sum to {}, not 2", fmt_q(&total))));
        }
        Ok(WeightVector { entries })
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Rational> {
        self.entries
    }

    pub fn sum_over(&self, indices: &[usize]) -> Rational {
        indices.iter().map(|&i| &self.entries[i]).sum()
    }

    /// `x_I` for a subset given as a bitmask over positions.
    pub fn sum_mask(&self, mask: u64) -> Rational {
        self.entries
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, x)| x)
            .sum()
    }

    /// `(σx)_{σ(i)} = x_i`.
    pub fn permuted(&self, perm: &[usize]) -> WeightVector {
        let mut out = vec![Rational::zero(); self.n()];
        for (i, &p) in perm.iter().enumerate() {
            out[p] = self.entries[i].clone();
        }
        WeightVector { entries: out }
    }

    /// Entries sorted in descending order (the orbit representative form).
    pub fn sorted_descending(&self) -> WeightVector {
        let mut e = self.entries.clone();
        e.sort_by(|a, b| b.cmp(a));
        WeightVector { entries: e }
    }

    pub fn has_unit_entry(&self) -> bool {
        self.entries.iter().any(One::is_one)
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(fmt_q).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for WeightVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        WeightVector::new(parse_q_list(s)?)
    }
}

/// `L(a, i)`: every entry `a` except the odd entry `ā = 2 − (n−1)a` at `odd_entry`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialWeight {
    pub a: Rational,
    pub odd_entry: usize,
    pub weight: WeightVector,
}

/// `ā = 2 − (n−1)a`.
pub fn odd_value(a: &Rational, n: usize) -> Rational {
    qi(2) - qi(n as i64 - 1) * a
}

/// Checks `1/(n−1) ≤ a ≤ 2/(n−1)`, the range where `0 ≤ a ≤ ā ≤ 1`.
pub fn check_special_range(a: &Rational, n: usize) -> Result<()> {
    if n < 4 {
        return Err(Error::Domain(format!("n = {n} < 4")));
    }
    let lo = q(1, n as i64 - 1);
    let hi = q(2, n as i64 - 1);
    if *a < lo || *a > hi {
        return Err(Error::Domain(format!(
            "a = {} outside [{}, {}] for n = {n}",
            fmt_q(a),
            fmt_q(&lo),
            fmt_q(&hi)
        )));
    }
    Ok(())
}

pub fn special_weight(a: &Rational, odd_entry: usize, n: usize) -> Result<SpecialWeight> {
    check_special_range(a, n)?;
    if odd_entry >= n {
        return Err(Error::Usage(format!(
            "odd entry index {odd_entry} out of range for n = {n}"
        )));
    }
    let mut entries = vec![a.clone(); n];
    entries[odd_entry] = odd_value(a, n);
    Ok(SpecialWeight {
        a: a.clone(),
        odd_entry,
        weight: WeightVector::new(entries)?,
    })
}

/// Block sizes of a vital curve, sorted descending.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CurveShape {
    sizes: [usize; 4],
}

impl CurveShape {
    pub fn new(mut sizes: [usize; 4]) -> Result<Self> {
        if sizes.contains(&0) {
            return Err(Error::Domain("curve blocks must be nonempty".into()));
        }
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        Ok(CurveShape { sizes })
    }

    pub fn sizes(&self) -> [usize; 4] {
        self.sizes
    }

    pub fn n(&self) -> usize {
        self.sizes.iter().sum()
    }

    /// The curve class of this shape whose blocks are consecutive intervals.
    pub fn consecutive_class(&self) -> CurveClass {
        let mut start = 0;
        let blocks = self.sizes.map(|s| {
            let b: Vec<usize> = (start..start + s).collect();
            start += s;
            b
        });
        CurveClass { n: self.n(), blocks }
    }
}

impl fmt::Display for CurveShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.sizes;
        write!(f, "{a},{b},{c},{d}")
    }
}

impl FromStr for CurveShape {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        let err = |m: &str| ParseError::Shape(s.to_string(), m.to_string());
        let parts: Vec<usize> = s
            .split(',')
            .map(|p| p.trim().parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| err("expected four positive integers"))?;
        let sizes: [usize; 4] = parts.try_into().map_err(|_| err("expected exactly four parts"))?;
        CurveShape::new(sizes).map_err(|_| err("parts must be positive"))
    }
}

/// A vital curve: an ordered partition of `{0..n}` into four nonempty blocks.
/// Equality and hashing ignore block order.
#[derive(Debug, Clone)]
pub struct CurveClass {
    n: usize,
    blocks: [Vec<usize>; 4],
}

impl CurveClass {
    pub fn new(n: usize, blocks: [Vec<usize>; 4]) -> Result<Self> {
        let mut seen = vec![false; n];
        for b in &blocks {
            if b.is_empty() {
                return Err(Error::Domain("curve blocks must be nonempty".into()));
            }
            for &i in b {
                if i >= n || seen[i] {
                    return Err(Error::Domain(format!("blocks do not partition {{1..{n}}}")));
                }
                seen[i] = true;
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::Domain(format!("blocks do not cover {{1..{n}}}")));
        }
        Ok(CurveClass { n, blocks })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>; 4] {
        &self.blocks
    }

    pub fn shape(&self) -> CurveShape {
        CurveShape::new(self.blocks.clone().map(|b| b.len())).expect("blocks are nonempty")
    }

    /// Relabels points by `perm` (point `i` becomes `perm[i]`).
    pub fn permuted(&self, perm: &[usize]) -> CurveClass {
        let blocks = self
            .blocks
            .clone()
            .map(|b| b.into_iter().map(|i| perm[i]).collect());
        CurveClass { n: self.n, blocks }
    }

    fn canonical(&self) -> Vec<Vec<usize>> {
        let mut bs: Vec<Vec<usize>> = self
            .blocks
            .iter()
            .map(|b| {
                let mut b = b.clone();
                b.sort_unstable();
                b
            })
            .collect();
        bs.sort();
        bs
    }
}

impl PartialEq for CurveClass {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.canonical() == other.canonical()
    }
}

impl Eq for CurveClass {}

impl std::hash::Hash for CurveClass {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.canonical().hash(state);
    }
}

impl fmt::Display for CurveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|b| {
                b.iter()
                    .map(|i| (i + 1).to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        f.write_str(&parts.join(" | "))
    }
}

impl FromStr for CurveClass {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        let err = |m: String| ParseError::Curve(s.to_string(), m);
        let blocks: Vec<Vec<usize>> = s
            .split('|')
            .map(|b| {
                b.split_whitespace()
                    .map(|t| match t.parse::<usize>() {
                        Ok(v) if v >= 1 => Ok(v - 1),
                        _ => Err(err(format!("bad point label `{t}`"))),
                    })
                    .collect()
            })
            .collect::<std::result::Result<_, _>>()?;
        let blocks: [Vec<usize>; 4] = blocks
            .try_into()
            .map_err(|_| err("expected four blocks separated by `|`".into()))?;
        let n = blocks.iter().map(Vec::len).sum();
        CurveClass::new(n, blocks).map_err(|e| err(e.to_string()))
    }
}

/// All partitions of `n` into four positive parts, descending-lexicographic.
pub fn curve_shapes(n: usize) -> Vec<CurveShape> {
    let mut out = Vec::new();
    for a in (1..=n).rev() {
        for b in (1..=a.min(n.saturating_sub(a))).rev() {
            for c in (1..=b.min(n.saturating_sub(a + b))).rev() {
                let Some(d) = n.checked_sub(a + b + c) else {
                    continue;
                };
                if d >= 1 && d <= c {
                    out.push(CurveShape { sizes: [a, b, c, d] });
                }
            }
        }
    }
    out
}

/// `⌊n/2⌋`.
pub fn floor_half(n: usize) -> usize {
    n / 2
}

/// The curves `C_1..C_{f−1}` (`f = ⌊n/2⌋`) used for the decomposition systems:
/// `C(f+i−1, f−i, 1, 1)` for odd `n`, `C(f−2+i, f−i, 1, 1)` for even `n`.
pub fn basis_curves(n: usize) -> Result<Vec<CurveClass>> {
    if n < 5 {
        return Err(Error::Domain(format!("basis curves need n >= 5, got {n}")));
    }
    let f = floor_half(n);
    (1..f)
        .map(|i| {
            let (big, second) = if n % 2 == 1 {
                (f + i - 1, f - i)
            } else {
                (f - 2 + i, f - i)
            };
            let mut start = 0;
            let blocks = [big, second, 1, 1].map(|s| {
                let b: Vec<usize> = (start..start + s).collect();
                start += s;
                b
            });
            CurveClass::new(n, blocks)
        })
        .collect()
}

/// Distinct permutations of a weight vector with the stabilizer order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightOrbit {
    pub representatives: Vec<WeightVector>,
    pub multiplicity: u64,
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Next lexicographic permutation in place; false when already the last one.
fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len())
        .rev()
        .find(|&j| v[j] > v[i - 1])
        .expect("pivot exists");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Sorted list of the distinct permutations of `x`.
pub fn distinct_permutations(x: &WeightVector) -> Vec<WeightVector> {
    let mut e = x.entries.clone();
    e.sort();
    let mut out = vec![WeightVector { entries: e.clone() }];
    while next_permutation(&mut e) {
        out.push(WeightVector { entries: e.clone() });
    }
    out
}

pub fn orbit(x: &WeightVector) -> WeightOrbit {
    let representatives = distinct_permutations(x);
    let multiplicity = stabilizer_order(x);
    debug_assert_eq!(representatives.len() as u64 * multiplicity, factorial(x.n()));
    WeightOrbit {
        representatives,
        multiplicity,
    }
}

/// Product of `m!` over the multiplicities `m` of the distinct entries.
pub fn stabilizer_order(x: &WeightVector) -> u64 {
    let distinct: BTreeSet<&Rational> = x.entries.iter().collect();
    distinct
        .into_iter()
        .map(|v| factorial(x.entries.iter().filter(|e| *e == v).count()))
        .product()
}

/// `n! / |Stab(x)|`.
pub fn orbit_size(x: &WeightVector) -> u64 {
    factorial(x.n()) / stabilizer_order(x)
}

/// `Σ_j r_j D_j` over the symmetric boundary basis `D_2..D_{⌊n/2⌋}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymmetricDivisor {
    n: usize,
    coeffs: Vec<Rational>,
}

impl SymmetricDivisor {
    /// `coeffs[k]` is `r_{k+2}`; there must be exactly `⌊n/2⌋ − 1` of them.
    pub fn new(n: usize, coeffs: Vec<Rational>) -> Result<Self> {
        if n < 4 {
            return Err(Error::Domain(format!("n = {n} < 4")));
        }
        if coeffs.len() != floor_half(n) - 1 {
            return Err(Error::Usage(format!(
                "n = {n} needs coefficients r_2..r_{}, got {} values",
                floor_half(n),
                coeffs.len()
            )));
        }
        Ok(SymmetricDivisor { n, coeffs })
    }

    pub fn zero(n: usize) -> Result<Self> {
        Self::new(n, vec![Rational::zero(); floor_half(n).saturating_sub(1)])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// `r_j` with `r_0 = r_1 = 0` and `r_j = r_{n−j}`.
    pub fn r(&self, j: usize) -> Rational {
        let j = if j > self.n / 2 { self.n - j } else { j };
        if j < 2 {
            Rational::zero()
        } else {
            self.coeffs[j - 2].clone()
        }
    }

    pub fn scaled(&self, factor: &Rational) -> Self {
        SymmetricDivisor {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    pub fn plus(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::Usage("divisors on different n".into()));
        }
        Ok(SymmetricDivisor {
            n: self.n,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    /// Parses `"r2=3/5,r3=4/5"`; every key `2..⌊n/2⌋` must appear exactly once.
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let err = |m: String| Error::Parse(ParseError::Divisor(text.to_string(), m));
        let top = floor_half(n);
        let mut coeffs: Vec<Option<Rational>> = vec![None; top.saturating_sub(1)];
        for item in text.split(',').filter(|s| !s.trim().is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| err(format!("`{item}` is not rJ=value")))?;
            let j: usize = key
                .trim()
                .strip_prefix('r')
                .and_then(|k| k.parse().ok())
                .ok_or_else(|| err(format!("bad key `{key}`")))?;
            if j < 2 || j > top {
                return Err(err(format!("key r{j} outside r2..r{top}")));
            }
            if coeffs[j - 2].is_some() {
                return Err(err(format!("duplicate key r{j}")));
            }
            coeffs[j - 2] = Some(parse_q(value)?);
        }
        let coeffs = coeffs
            .into_iter()
            .enumerate()
            .map(|(k, c)| c.ok_or_else(|| err(format!("missing r{}", k + 2))))
            .collect::<Result<Vec<_>>>()?;
        SymmetricDivisor::new(n, coeffs)
    }
}

impl fmt::Display for SymmetricDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| format!("r{}={}", k + 2, fmt_q(c)))
            .collect();
        f.write_str(&parts.join(","))
    }
}
