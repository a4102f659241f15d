//! Decompositions of symmetric divisors over the `V(1/t, n)` basis.
//!
//! The triangular systems are assembled from the intersection engine and then
//! checked entry by entry against their closed forms. Solutions are checked
//! against the closed-form coefficients and reconstructed on every curve shape.

mod simplex;

pub use simplex::{nonneg_combination, nonneg_combination_vec, ConeMembershipCertificate};

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::combinatorics::{
    basis_curves, curve_shapes, floor_half, CurveClass, CurveShape, SymmetricDivisor, WeightVector,
};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::git_complex::enumerate_zero_cells;
use crate::intersection::{
    a_alpha, check_alpha_range, critical_alphas, intersect_symmetric, intersect_symmetrized, intersect_v,
    intersect_v_shape, is_critical, k_of_alpha,
};
use crate::linalg::{solve, QMatrix, QVector, Solution};
use crate::rational::{fmt_q, q, qi, Rational};

/// The basis `V(1/t, n)` for the listed `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionBasis {
    pub n: usize,
    pub denominators: Vec<usize>,
}

impl DecompositionBasis {
    /// `t = f+1..2f−1` for odd `n = 2f+1`, `t = f..2f−2` for even `n = 2f`.
    pub fn new(n: usize) -> Result<Self> {
        if n < 5 {
            return Err(Error::Domain(format!(
                "decomposition basis needs n >= 5, got {n}"
            )));
        }
        let f = floor_half(n);
        let denominators = if n % 2 == 1 {
            (f + 1..=2 * f - 1).collect()
        } else {
            (f..=2 * f - 2).collect()
        };
        Ok(DecompositionBasis { n, denominators })
    }

    pub fn weights(&self) -> Vec<Rational> {
        self.denominators.iter().map(|&t| q(1, t as i64)).collect()
    }
}

/// The upper-triangular system `U c = (C_i · D)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionSystem {
    pub u: QMatrix,
    pub curves: Vec<CurveClass>,
    pub basis: DecompositionBasis,
}

/// Closed-form `u_{ij}` (1-based), odd and even `n`.
pub fn closed_form_entry(n: usize, i: usize, j: usize) -> Rational {
    let f = floor_half(n) as i64;
    let (i, j) = (i as i64, j as i64);
    if i > j {
        return Rational::zero();
    }
    if n % 2 == 1 {
        if i < j {
            q(4, f + j)
        } else {
            q(2 * (f - j + 2), f + j)
        }
    } else if i == 1 && j == 1 {
        qi(4)
    } else if i < j {
        q(4, f + j - 1)
    } else {
        q(2 * (f - j + 2), f + j - 1)
    }
}

/// Builds `U_{ij} = V(1/t_j, n) · C_i` from the engine and checks every entry
/// against [`closed_form_entry`].
pub fn build_system(n: usize) -> Result<DecompositionSystem> {
    let basis = DecompositionBasis::new(n)?;
    let curves = basis_curves(n)?;
    let weights = basis.weights();
    let rows = curves
        .iter()
        .map(|c| weights.iter().map(|a| intersect_v(a, n, c)).collect())
        .collect::<Result<Vec<QVector>>>()?;
    for (i, row) in rows.iter().enumerate() {
        for (j, value) in row.iter().enumerate() {
            let expected = closed_form_entry(n, i + 1, j + 1);
            if *value != expected {
                return Err(Error::ClosedFormMismatch {
                    context: format!("u[{},{}] for n = {n}", i + 1, j + 1),
                    expected: fmt_q(&expected),
                    computed: fmt_q(value),
                });
            }
        }
    }
    Ok(DecompositionSystem {
        u: QMatrix::from_rows(rows)?,
        curves,
        basis,
    })
}

/// `D ≡ Σ c_i V(1/t_i, n)` on the basis curves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeDecomposition {
    pub basis: DecompositionBasis,
    pub coeffs: QVector,
    /// The combination agrees with the target on every curve shape, not only the basis curves.
    pub exact_on_all_shapes: bool,
}

/// Solves `U c = (C_i · D)` for any symmetric divisor.
pub fn decompose(d: &SymmetricDivisor) -> Result<ConeDecomposition> {
    let n = d.n();
    let sys = build_system(n)?;
    let rhs = sys
        .curves
        .iter()
        .map(|c| intersect_symmetric(d, c.shape()))
        .collect::<Result<Vec<_>>>()?;
    let coeffs = match solve(&sys.u, &rhs)? {
        Solution::Unique(c) => c,
        other => {
            return Err(Error::Domain(format!(
                "decomposition system for n = {n} is singular: {other:?}"
            )))
        }
    };
    let exact_on_all_shapes = reconstructs(n, &sys.basis, &coeffs, d)?;
    Ok(ConeDecomposition {
        basis: sys.basis,
        coeffs,
        exact_on_all_shapes,
    })
}

fn reconstructs(
    n: usize,
    basis: &DecompositionBasis,
    coeffs: &[Rational],
    d: &SymmetricDivisor,
) -> Result<bool> {
    let weights = basis.weights();
    for s in curve_shapes(n) {
        let mut total = Rational::zero();
        for (c, a) in coeffs.iter().zip(&weights) {
            if !c.is_zero() {
                total += c * intersect_v_shape(a, n, s)?;
            }
        }
        if total != intersect_symmetric(d, s)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Decomposes `A_α` for a critical `α` and insists on agreement with
/// [`closed_form_coeffs`] and on reconstruction over all shapes.
pub fn decompose_a_alpha(n: usize, alpha: &Rational) -> Result<ConeDecomposition> {
    check_alpha_range(n, alpha)?;
    if !is_critical(n, alpha) {
        return Err(Error::Domain(format!(
            "alpha = {} is not critical for n = {n}; use convex_split",
            fmt_q(alpha)
        )));
    }
    let d = a_alpha(n, alpha)?;
    let dec = decompose(&d)?;
    let closed = closed_form_coeffs(n, alpha)?;
    if dec.coeffs != closed {
        return Err(Error::ClosedFormMismatch {
            context: format!("A_{} for n = {n}", fmt_q(alpha)),
            expected: fmt_list(&closed),
            computed: fmt_list(&dec.coeffs),
        });
    }
    if !dec.exact_on_all_shapes {
        return Err(Error::ClosedFormMismatch {
            context: format!("reconstruction of A_{} for n = {n}", fmt_q(alpha)),
            expected: "agreement on every curve shape".into(),
            computed: "disagreement".into(),
        });
    }
    Ok(dec)
}

fn fmt_list(v: &[Rational]) -> String {
    format!("({})", v.iter().map(fmt_q).collect::<Vec<_>>().join(", "))
}

/// Published closed-form coefficients of `A_α` for critical `α = 2/(k+1)`,
/// with `ℓ = f + 1 − k`.
pub fn closed_form_coeffs(n: usize, alpha: &Rational) -> Result<QVector> {
    check_alpha_range(n, alpha)?;
    if !is_critical(n, alpha) {
        return Err(Error::Domain(format!(
            "closed forms exist only for critical alpha, got {}",
            fmt_q(alpha)
        )));
    }
    let f = floor_half(n) as i64;
    let l = f + 1 - k_of_alpha(alpha);
    let len = (f - 1) as usize;
    let mut c = vec![Rational::zero(); len];
    let a = alpha.clone();
    if n % 2 == 1 {
        for i in 1..=(f - 1) {
            let idx = (i - 1) as usize;
            if i < l {
                c[idx] = &a * q((f + i) * (f - l + 1), (f - i) * (f - i + 1) * (f - i + 2));
            } else if i == l {
                c[idx] = &a * q((f + l) * (f - l), 4 * (f - l + 2));
            }
        }
    } else {
        match l {
            1 => c[0] = q(f - 2, 2 * f + 2),
            2 => {
                c[0] = q(1, f * f);
                if len > 1 {
                    c[1] = q((f + 1) * (f - 2), 2 * f * f);
                }
            }
            _ => {
                c[0] = &a * q(f - l + 1, 2 * f * (f - 1));
                for i in 2..=(f - 1) {
                    let idx = (i - 1) as usize;
                    if i < l {
                        c[idx] = &a * q((f - l + 1) * (f - 1 + i), (f - i) * (f - i + 1) * (f - i + 2));
                    } else if i == l {
                        c[idx] = &a * q((f - l) * (f + l - 1), 4 * (f - l + 2));
                    }
                }
            }
        }
    }
    Ok(c)
}

/// `A_α = w_lo · A_{α_lo} + w_hi · A_{α_hi}` with neighbouring critical values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvexSplit {
    pub lo: (Rational, Rational),
    pub hi: (Rational, Rational),
}

/// Splits `α` between its neighbouring critical values. A critical `α` gets
/// weight 1 on itself. Below the smallest critical value the lower anchor is
/// `2/(n−1)`, where `A_α` vanishes.
pub fn convex_split(alpha: &Rational, n: usize) -> Result<ConvexSplit> {
    check_alpha_range(n, alpha)?;
    let crit = critical_alphas(n);
    if crit.contains(alpha) {
        return Ok(ConvexSplit {
            lo: (alpha.clone(), qi(1)),
            hi: (alpha.clone(), qi(0)),
        });
    }
    let hi = crit.iter().find(|c| *c > alpha).expect("1 is critical").clone();
    let lo = crit
        .iter()
        .rev()
        .find(|c| *c < alpha)
        .cloned()
        .unwrap_or_else(|| q(2, n as i64 - 1));
    let w_hi = (alpha - &lo) / (&hi - &lo);
    let split = ConvexSplit {
        lo: (lo, qi(1) - &w_hi),
        hi: (hi, w_hi),
    };
    let combined = split_divisor(n, &split)?;
    let direct = a_alpha(n, alpha)?;
    if combined != direct {
        return Err(Error::ClosedFormMismatch {
            context: format!("convex split of A_{} for n = {n}", fmt_q(alpha)),
            expected: direct.to_string(),
            computed: combined.to_string(),
        });
    }
    Ok(split)
}

fn anchor(n: usize, alpha: &Rational) -> Result<SymmetricDivisor> {
    if *alpha == q(2, n as i64 - 1) {
        SymmetricDivisor::zero(n)
    } else {
        a_alpha(n, alpha)
    }
}

/// `w_lo · A_{α_lo} + w_hi · A_{α_hi}`.
pub fn split_divisor(n: usize, split: &ConvexSplit) -> Result<SymmetricDivisor> {
    anchor(n, &split.lo.0)?
        .scaled(&split.lo.1)
        .plus(&anchor(n, &split.hi.0)?.scaled(&split.hi.1))
}

/// Checks `Σ_{p=1}^{m} 1/((y−p)(y−p+1)(y−p+2)) = (2ym − m² + m)/(2y(y+1)(y−m)(y−m+1))`.
pub fn verify_identity(y: &Rational, m: u32) -> Result<bool> {
    if m == 0 {
        return Err(Error::Domain("m must be positive".into()));
    }
    if y.is_integer() {
        let v = y.to_integer();
        if v >= (-1).into() && v <= m.into() {
            return Err(Error::Domain(format!("y = {} is a pole for m = {m}", fmt_q(y))));
        }
    }
    let mut lhs = Rational::zero();
    for p in 1..=m as i64 {
        let p = qi(p);
        lhs += qi(1) / ((y - &p) * (y - &p + qi(1)) * (y - &p + qi(2)));
    }
    let mq = qi(m as i64);
    let rhs = (qi(2) * y * &mq - &mq * &mq + &mq) / (qi(2) * y * (y + qi(1)) * (y - &mq) * (y - &mq + qi(1)));
    Ok(lhs == rhs)
}

/// Result of checking the identity on every `m ≤ max_m` with random rational `y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub checked: usize,
    pub failures: Vec<(Rational, u32)>,
}

/// `samples` non-pole values of `y` per `m`, drawn from a seeded generator.
pub fn verify_identity_samples(max_m: u32, samples: usize, seed: u64) -> Result<IdentityReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = IdentityReport {
        checked: 0,
        failures: Vec::new(),
    };
    for m in 1..=max_m {
        let mut done = 0;
        while done < samples {
            let y = q(rng.gen_range(-400..=400), rng.gen_range(1..=40));
            if y.is_integer() && y >= qi(-1) && y <= qi(m as i64) {
                continue;
            }
            if !verify_identity(&y, m)? {
                report.failures.push((y, m));
            }
            report.checked += 1;
            done += 1;
        }
    }
    Ok(report)
}

/// `(c_1, c_2)` with `D ≡ c_1 V(1/3, 6) + c_2 V(1/4, 6)`.
pub fn sgc_membership_n6(d: &SymmetricDivisor) -> Result<(Rational, Rational)> {
    if d.n() != 6 {
        return Err(Error::Domain(format!("expected n = 6, got {}", d.n())));
    }
    let a = intersect_symmetric(d, CurveShape::new([2, 2, 1, 1])?)?;
    let b = intersect_symmetric(d, CurveShape::new([3, 1, 1, 1])?)?;
    Ok((a / qi(4) - &b / qi(6), qi(2) * b / qi(3)))
}

/// `F(x) = (1/4) S_x · C(2,2,1,1) − (1/6) S_x · C(3,1,1,1)` at every 0-cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SgcReport {
    pub values: Vec<(WeightVector, Rational)>,
    pub min: Rational,
    pub argmin: Vec<WeightVector>,
}

impl SgcReport {
    pub fn verified(&self) -> bool {
        !self.min.is_negative()
    }
}

pub fn sgc_functional(x: &WeightVector) -> Result<Rational> {
    let a = intersect_symmetrized(x, CurveShape::new([2, 2, 1, 1])?)?;
    let b = intersect_symmetrized(x, CurveShape::new([3, 1, 1, 1])?)?;
    Ok(a / qi(4) - b / qi(6))
}

pub fn check_sgc_conjecture_n6_with(exec: Execution) -> Result<SgcReport> {
    let cells = enumerate_zero_cells(6)?;
    let values = exec
        .map(cells, |c| sgc_functional(&c.point).map(|v| (c.point, v)))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let min = values.iter().map(|(_, v)| v).min().expect("cells exist").clone();
    let argmin = values
        .iter()
        .filter(|(_, v)| *v == min)
        .map(|(x, _)| x.clone())
        .collect();
    Ok(SgcReport { values, min, argmin })
}

pub fn check_sgc_conjecture_n6() -> Result<SgcReport> {
    check_sgc_conjecture_n6_with(Execution::default())
}

/// One row of the solver / closed-form verification grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridEntry {
    pub n: usize,
    pub alpha: Rational,
    pub coeffs: QVector,
}

/// [`decompose_a_alpha`] over every critical `α` for each `n`; fails on the first mismatch.
pub fn verify_decomposition_grid(ns: &[usize], exec: Execution) -> Result<Vec<GridEntry>> {
    let tasks: Vec<(usize, Rational)> = ns
        .iter()
        .flat_map(|&n| critical_alphas(n).into_iter().map(move |a| (n, a)))
        .collect();
    exec.map(tasks, |(n, alpha)| {
        let dec = decompose_a_alpha(n, &alpha)?;
        if dec.coeffs.iter().any(Signed::is_negative) {
            return Err(Error::Domain(format!(
                "negative coefficient for n = {n}, alpha = {}",
                fmt_q(&alpha)
            )));
        }
        Ok(GridEntry {
            n,
            alpha,
            coeffs: dec.coeffs,
        })
    })
    .into_iter()
    .collect()
}
