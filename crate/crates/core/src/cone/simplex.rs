//! Exact phase-one simplex for `G λ = b, λ ≥ 0`, with Bland's rule.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::intersection::IntersectionVector;
use crate::linalg::{dot, QVector};
use crate::rational::Rational;

/// Outcome of a cone-membership question, verified before it is returned.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConeMembershipCertificate {
    /// `target = Σ coefficients[j] · generators[j]` with every coefficient `≥ 0`.
    Feasible {
        coefficients: QVector,
        /// Indices with a nonzero coefficient.
        used: Vec<usize>,
    },
    /// `witness · g ≥ 0` for every generator and `witness · target < 0`.
    Infeasible { witness: QVector },
}

impl ConeMembershipCertificate {
    pub fn is_feasible(&self) -> bool {
        matches!(self, ConeMembershipCertificate::Feasible { .. })
    }

    /// Rechecks the certificate from scratch.
    pub fn verify(&self, target: &[Rational], generators: &[QVector]) -> bool {
        match self {
            ConeMembershipCertificate::Feasible { coefficients, .. } => {
                if coefficients.len() != generators.len() || coefficients.iter().any(Signed::is_negative) {
                    return false;
                }
                (0..target.len()).all(|i| {
                    let s: Rational = generators.iter().zip(coefficients).map(|(g, c)| &g[i] * c).sum();
                    s == target[i]
                })
            }
            ConeMembershipCertificate::Infeasible { witness } => {
                witness.len() == target.len()
                    && generators.iter().all(|g| !dot(witness, g).is_negative())
                    && dot(witness, target).is_negative()
            }
        }
    }
}

/// Decides whether `target` is a nonnegative combination of `generators`.
pub fn nonneg_combination_vec(
    target: &[Rational],
    generators: &[QVector],
) -> Result<ConeMembershipCertificate> {
    let m = target.len();
    if let Some(bad) = generators.iter().position(|g| g.len() != m) {
        return Err(Error::Usage(format!(
            "generator {bad} has length {} but the target has length {m}",
            generators[bad].len()
        )));
    }
    let k = generators.len();
    // Rows flipped so the right-hand side is nonnegative.
    let sign: Vec<Rational> = target
        .iter()
        .map(|b| {
            if b.is_negative() {
                -Rational::one()
            } else {
                Rational::one()
            }
        })
        .collect();
    // Tableau columns: generators, then one artificial per row, then the rhs.
    let width = k + m + 1;
    let mut tab: Vec<QVector> = (0..m)
        .map(|i| {
            let mut row = vec![Rational::zero(); width];
            for (j, g) in generators.iter().enumerate() {
                row[j] = &g[i] * &sign[i];
            }
            row[k + i] = Rational::one();
            row[k + m] = &target[i] * &sign[i];
            row
        })
        .collect();
    let mut basis: Vec<usize> = (k..k + m).collect();
    // Reduced costs of "minimize Σ artificials" (last entry: minus the objective).
    let mut cost = vec![Rational::zero(); width];
    for j in (0..k).chain(std::iter::once(k + m)) {
        cost[j] = -tab.iter().map(|r| r[j].clone()).sum::<Rational>();
    }
    while let Some(enter) = (0..k + m).find(|&j| cost[j].is_negative()) {
        let mut leave: Option<(usize, Rational)> = None;
        for (i, row) in tab.iter().enumerate() {
            if row[enter].is_positive() {
                let ratio = &row[k + m] / &row[enter];
                let better = match &leave {
                    None => true,
                    Some((l, r)) => ratio < *r || (ratio == *r && basis[i] < basis[*l]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((pr, _)) = leave else {
            // Unbounded below is impossible for a sum of nonnegative artificials.
            unreachable!("phase-one objective is bounded");
        };
        let piv = tab[pr][enter].clone();
        tab[pr].iter_mut().for_each(|v| *v /= &piv);
        let pivot_row = tab[pr].clone();
        for (i, row) in tab.iter_mut().enumerate() {
            if i != pr && !row[enter].is_zero() {
                let f = row[enter].clone();
                for (v, p) in row.iter_mut().zip(&pivot_row) {
                    *v -= &f * p;
                }
            }
        }
        let f = cost[enter].clone();
        for (v, p) in cost.iter_mut().zip(&pivot_row) {
            *v -= &f * p;
        }
        basis[pr] = enter;
    }
    let objective = -cost[k + m].clone();
    let cert = if objective.is_zero() {
        let mut coefficients = vec![Rational::zero(); k];
        for (i, &b) in basis.iter().enumerate() {
            if b < k {
                coefficients[b] = tab[i][k + m].clone();
            }
        }
        let used = (0..k).filter(|&j| !coefficients[j].is_zero()).collect();
        ConeMembershipCertificate::Feasible { coefficients, used }
    } else {
        // Duals of the flipped rows are 1 − (reduced cost of the artificial);
        // the negated, unflipped duals separate the target from the cone.
        let witness = (0..m)
            .map(|i| -(Rational::one() - &cost[k + i]) * &sign[i])
            .collect();
        ConeMembershipCertificate::Infeasible { witness }
    };
    if !cert.verify(target, generators) {
        return Err(Error::Certificate(format!(
            "simplex produced an invalid certificate: {cert:?}"
        )));
    }
    Ok(cert)
}

/// [`nonneg_combination_vec`] over intersection vectors sharing one shape index set.
pub fn nonneg_combination(
    target: &IntersectionVector,
    generators: &[IntersectionVector],
) -> Result<ConeMembershipCertificate> {
    let shapes: Vec<_> = target.values.iter().map(|(s, _)| *s).collect();
    for g in generators {
        if g.values.iter().map(|(s, _)| *s).ne(shapes.iter().copied()) {
            return Err(Error::Usage(
                "generators and target index different curve shapes".into(),
            ));
        }
    }
    let gens: Vec<QVector> = generators.iter().map(IntersectionVector::entries).collect();
    nonneg_combination_vec(&target.entries(), &gens)
}
