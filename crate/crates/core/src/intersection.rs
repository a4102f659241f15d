//! Intersection numbers of `L_x`, `V(a, n)`, symmetrized bundles and
//! symmetric boundary divisors with vital curves, plus the divisors `A_α`.

use num_traits::{One, Signed, Zero};

use crate::combinatorics::{
    check_special_range, curve_shapes, factorial, floor_half, orbit, special_weight, CurveClass, CurveShape,
    SymmetricDivisor, WeightVector,
};
use crate::error::{Error, Result};
use crate::rational::{floor_i64, fmt_q, q, qi, Rational};

/// Degree of `L_x` on a vital curve, from the four block sums.
///
/// `0` if `max ≥ 1`, `2(1 − max)` if `max + min ≥ 1`, else `2·min`. The
/// branches agree on their overlaps, so the order of the tests is immaterial.
pub fn intersect_block_sums(sums: &[Rational; 4]) -> Rational {
    let max = sums.iter().max().expect("four sums");
    let min = sums.iter().min().expect("four sums");
    if *max >= Rational::one() {
        Rational::zero()
    } else if max + min >= Rational::one() {
        qi(2) * (Rational::one() - max)
    } else {
        qi(2) * min
    }
}

/// `L_x · C`. Zero weights need no special handling: only block sums enter,
/// which is exactly the pullback along the forgetful map.
pub fn intersect(x: &WeightVector, curve: &CurveClass) -> Result<Rational> {
    if x.n() != curve.n() {
        return Err(Error::Usage(format!(
            "weight vector has n = {} but curve has n = {}",
            x.n(),
            curve.n()
        )));
    }
    let b = curve.blocks();
    let sums = [
        x.sum_over(&b[0]),
        x.sum_over(&b[1]),
        x.sum_over(&b[2]),
        x.sum_over(&b[3]),
    ];
    Ok(intersect_block_sums(&sums))
}

/// `V(a, n) · C = Σ_i L(a, i) · C`.
pub fn intersect_v(a: &Rational, n: usize, curve: &CurveClass) -> Result<Rational> {
    check_special_range(a, n)?;
    if curve.n() != n {
        return Err(Error::Usage(format!(
            "curve has n = {} but V(a, n) has n = {n}",
            curve.n()
        )));
    }
    (0..n).try_fold(Rational::zero(), |acc, i| {
        Ok(acc + intersect(&special_weight(a, i, n)?.weight, curve)?)
    })
}

pub fn intersect_v_shape(a: &Rational, n: usize, shape: CurveShape) -> Result<Rational> {
    intersect_v(a, n, &shape.consecutive_class())
}

/// `S_x · C` with `S_x = ⊗_{σ ∈ S_n} L_{σx}`: the stabilizer order times the
/// sum over the distinct permutations of `x`.
pub fn intersect_symmetrized(x: &WeightVector, shape: CurveShape) -> Result<Rational> {
    let curve = shape.consecutive_class();
    let o = orbit(x);
    let mut total = Rational::zero();
    for y in &o.representatives {
        total += intersect(y, &curve)?;
    }
    Ok(total * qi(o.multiplicity as i64))
}

/// `S_x · C / (n−1)!`, which equals `V(a, n) · C` when `x` is `L(a, i)` with `a ≠ 2/n`.
pub fn intersect_symmetrized_reduced(x: &WeightVector, shape: CurveShape) -> Result<Rational> {
    Ok(intersect_symmetrized(x, shape)? / qi(factorial(x.n() - 1) as i64))
}

/// Boundary-divisor rule on a vital curve of shape `(n1, n2, n3, n4)`:
/// `r_{n1+n2} + r_{n1+n3} + r_{n1+n4} − r_{n1} − r_{n2} − r_{n3} − r_{n4}`.
pub fn intersect_symmetric(d: &SymmetricDivisor, shape: CurveShape) -> Result<Rational> {
    if shape.n() != d.n() {
        return Err(Error::Usage(format!(
            "shape {shape} is not a shape for n = {}",
            d.n()
        )));
    }
    let [a, b, c, e] = shape.sizes();
    Ok(d.r(a + b) + d.r(a + c) + d.r(a + e) - d.r(a) - d.r(b) - d.r(c) - d.r(e))
}

/// Values of a symmetric class on every curve shape, in [`curve_shapes`] order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionVector {
    pub n: usize,
    pub values: Vec<(CurveShape, Rational)>,
}

impl IntersectionVector {
    pub fn get(&self, shape: CurveShape) -> Option<&Rational> {
        self.values.iter().find(|(s, _)| *s == shape).map(|(_, v)| v)
    }

    pub fn entries(&self) -> Vec<Rational> {
        self.values.iter().map(|(_, v)| v.clone()).collect()
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(CurveShape) -> Result<Rational>) -> Result<Self> {
        let values = curve_shapes(n)
            .into_iter()
            .map(|s| Ok((s, f(s)?)))
            .collect::<Result<_>>()?;
        Ok(IntersectionVector { n, values })
    }

    pub fn of_divisor(d: &SymmetricDivisor) -> Result<Self> {
        Self::from_fn(d.n(), |s| intersect_symmetric(d, s))
    }

    pub fn of_v(a: &Rational, n: usize) -> Result<Self> {
        Self::from_fn(n, |s| intersect_v_shape(a, n, s))
    }
}

/// `k(α) = ⌊2/α⌋ − 1`.
pub fn k_of_alpha(alpha: &Rational) -> i64 {
    floor_i64(&(qi(2) / alpha)) - 1
}

/// `A_α` in the `D_j` basis. Requires `2/(n−1) < α ≤ 1`.
pub fn a_alpha(n: usize, alpha: &Rational) -> Result<SymmetricDivisor> {
    check_alpha_range(n, alpha)?;
    let k = k_of_alpha(alpha);
    let nm1 = qi(n as i64 - 1);
    let coeffs = (2..=floor_half(n) as i64)
        .map(|j| {
            if j <= k {
                qi(j * (j - 1) / 2) * alpha - qi(j * (j - 1)) / &nm1
            } else {
                qi((j - 2) * (n as i64 - 1) - j * (j - 1)) / &nm1 + alpha
            }
        })
        .collect();
    SymmetricDivisor::new(n, coeffs)
}

pub fn check_alpha_range(n: usize, alpha: &Rational) -> Result<()> {
    if n < 5 {
        return Err(Error::Domain(format!("A_alpha needs n >= 5, got {n}")));
    }
    let lo = q(2, n as i64 - 1);
    if *alpha <= lo || *alpha > Rational::one() {
        return Err(Error::Domain(format!(
            "alpha = {} outside ({}, 1] for n = {n}",
            fmt_q(alpha),
            fmt_q(&lo)
        )));
    }
    Ok(())
}

/// `{2/(k+1) : k = 1..⌊n/2⌋}` in ascending order of α.
pub fn critical_alphas(n: usize) -> Vec<Rational> {
    (1..=floor_half(n) as i64).rev().map(|k| q(2, k + 1)).collect()
}

pub fn is_critical(n: usize, alpha: &Rational) -> bool {
    critical_alphas(n).contains(alpha)
}

/// Outcome of evaluating a divisor on every vital curve shape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FnefCheck {
    pub values: IntersectionVector,
    /// Shapes with strictly negative intersection, in shape order.
    pub violations: Vec<(CurveShape, Rational)>,
}

impl FnefCheck {
    pub fn is_fnef(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn check_fnef(d: &SymmetricDivisor) -> Result<FnefCheck> {
    let values = IntersectionVector::of_divisor(d)?;
    let violations = values
        .values
        .iter()
        .filter(|(_, v)| v.is_negative())
        .cloned()
        .collect();
    Ok(FnefCheck { values, violations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::basis_curves;

    fn shape(s: [usize; 4]) -> CurveShape {
        CurveShape::new(s).unwrap()
    }

    #[test]
    fn lemma_branches() {
        let sums = [q(4, 5), q(3, 5), q(2, 5), q(1, 5)];
        assert_eq!(intersect_block_sums(&sums), q(2, 5));
        assert_eq!(intersect_block_sums(&[qi(1), q(1, 2), q(1, 4), q(1, 4)]), qi(0));
        assert_eq!(intersect_block_sums(&[q(6, 5), q(2, 5), q(1, 5), q(1, 5)]), qi(0));
        let x: WeightVector = "1/2,1/2,1/2,1/2".parse().unwrap();
        let c: CurveClass = "1 | 2 | 3 | 4".parse().unwrap();
        assert_eq!(intersect(&x, &c).unwrap(), qi(1));
    }

    #[test]
    fn mismatched_n_is_usage_error() {
        let x: WeightVector = "1/2,1/2,1/2,1/2".parse().unwrap();
        let c: CurveClass = "1 2 | 3 | 4 | 5".parse().unwrap();
        assert!(matches!(intersect(&x, &c), Err(Error::Usage(_))));
    }

    #[test]
    fn v_examples() {
        assert_eq!(
            intersect_v_shape(&q(1, 5), 9, shape([4, 3, 1, 1])).unwrap(),
            qi(2)
        );
        assert_eq!(
            intersect_v_shape(&q(1, 7), 9, shape([6, 1, 1, 1])).unwrap(),
            q(6, 7)
        );
        assert_eq!(
            intersect_v_shape(&q(1, 6), 8, shape([2, 2, 2, 2])).unwrap(),
            qi(0)
        );
        assert!(intersect_v_shape(&q(1, 9), 9, shape([6, 1, 1, 1])).is_err());
    }

    #[test]
    fn v_at_symmetric_point_is_n_copies() {
        for n in 5..10 {
            let a = q(2, n as i64);
            let x = WeightVector::new(vec![a.clone(); n]).unwrap();
            for s in curve_shapes(n) {
                let c = s.consecutive_class();
                assert_eq!(
                    intersect_v(&a, n, &c).unwrap(),
                    qi(n as i64) * intersect(&x, &c).unwrap()
                );
            }
        }
    }

    #[test]
    fn symmetric_rule_reproduces_six_point_pair() {
        for (r2, r3) in [(qi(1), qi(1)), (q(3, 5), q(4, 5)), (qi(-2), q(7, 3))] {
            let d = SymmetricDivisor::new(6, vec![r2.clone(), r3.clone()]).unwrap();
            assert_eq!(
                intersect_symmetric(&d, shape([2, 2, 1, 1])).unwrap(),
                qi(2) * &r3 - &r2
            );
            assert_eq!(
                intersect_symmetric(&d, shape([3, 1, 1, 1])).unwrap(),
                qi(3) * &r2 - &r3
            );
        }
    }

    #[test]
    fn a_alpha_examples() {
        let a1 = a_alpha(6, &qi(1)).unwrap();
        assert_eq!(a1.coeffs(), &[q(3, 5), q(4, 5)]);
        for s in curve_shapes(6) {
            assert_eq!(intersect_symmetric(&a1, s).unwrap(), qi(1));
        }
        let on_basis = |alpha: Rational| -> Vec<Rational> {
            let d = a_alpha(9, &alpha).unwrap();
            basis_curves(9)
                .unwrap()
                .iter()
                .map(|c| intersect_symmetric(&d, c.shape()).unwrap())
                .collect()
        };
        assert_eq!(on_basis(q(2, 5)), vec![q(3, 5), qi(0), qi(0)]);
        assert_eq!(on_basis(q(1, 2)), vec![q(1, 2), q(1, 2), qi(0)]);
        assert_eq!(on_basis(qi(1)), vec![qi(1); 3]);
        assert!(a_alpha(9, &q(1, 4)).is_err());
        assert!(a_alpha(9, &q(5, 4)).is_err());
    }

    #[test]
    fn a_one_meets_every_basis_curve_once() {
        for n in 5..16 {
            let d = a_alpha(n, &qi(1)).unwrap();
            for c in basis_curves(n).unwrap() {
                assert_eq!(intersect_symmetric(&d, c.shape()).unwrap(), qi(1), "n = {n}");
            }
        }
    }

    #[test]
    fn critical_pattern_for_odd_n() {
        for n in (5..20).step_by(2) {
            let f = n / 2;
            for l in 1..f {
                let alpha = q(2, (f - l + 2) as i64);
                let d = a_alpha(n, &alpha).unwrap();
                for (idx, c) in basis_curves(n).unwrap().iter().enumerate() {
                    let i = idx + 1;
                    let expected = match i.cmp(&l) {
                        std::cmp::Ordering::Less => alpha.clone(),
                        std::cmp::Ordering::Equal => qi(1) - &alpha,
                        std::cmp::Ordering::Greater => qi(0),
                    };
                    assert_eq!(intersect_symmetric(&d, c.shape()).unwrap(), expected);
                }
            }
        }
    }

    #[test]
    fn critical_alpha_lists() {
        assert_eq!(critical_alphas(9), vec![q(2, 5), q(1, 2), q(2, 3), qi(1)]);
        assert_eq!(critical_alphas(8), vec![q(2, 5), q(1, 2), q(2, 3), qi(1)]);
        assert_eq!(critical_alphas(5), vec![q(2, 3), qi(1)]);
        assert_eq!(k_of_alpha(&q(2, 5)), 4);
        assert_eq!(k_of_alpha(&q(9, 20)), 3);
    }

    #[test]
    fn fnef_checks() {
        let d = SymmetricDivisor::new(6, vec![qi(1), qi(1)]).unwrap();
        let chk = check_fnef(&d).unwrap();
        assert!(chk.is_fnef());
        assert_eq!(chk.values.get(shape([2, 2, 1, 1])), Some(&qi(1)));
        assert_eq!(chk.values.get(shape([3, 1, 1, 1])), Some(&qi(2)));

        let d = SymmetricDivisor::new(6, vec![qi(3), qi(1)]).unwrap();
        let chk = check_fnef(&d).unwrap();
        assert_eq!(chk.violations, vec![(shape([2, 2, 1, 1]), qi(-1))]);

        for n in 5..12 {
            let chk = check_fnef(&SymmetricDivisor::zero(n).unwrap()).unwrap();
            assert!(chk.is_fnef());
            assert!(chk.values.values.iter().all(|(_, v)| v.is_zero()));
        }
    }

    #[test]
    fn symmetrized_reduction_matches_v() {
        // S_x / (n-1)! for x = L(1/4, i) at n = 6 is V(1/4, 6).
        let x: WeightVector = "3/4,1/4,1/4,1/4,1/4,1/4".parse().unwrap();
        assert_eq!(
            intersect_symmetrized_reduced(&x, shape([2, 2, 1, 1])).unwrap(),
            qi(1)
        );
        assert_eq!(
            intersect_symmetrized_reduced(&x, shape([3, 1, 1, 1])).unwrap(),
            q(3, 2)
        );
    }
}
