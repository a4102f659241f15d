use serde_json::{json, Value};

use gitnef_core::capture::ampleness_certificate_with;
use gitnef_core::combinatorics::{CurveClass, CurveShape, SymmetricDivisor, WeightVector};
use gitnef_core::cone::{
    check_sgc_conjecture_n6_with, convex_split, decompose, decompose_a_alpha, nonneg_combination,
    sgc_membership_n6, verify_identity, verify_identity_samples, ConeMembershipCertificate,
    DecompositionBasis,
};
use gitnef_core::git_complex::{enumerate_zero_cells_with, fmt_subset, git_cone_generators, group_orbits};
use gitnef_core::intersection::{
    a_alpha, check_fnef, critical_alphas, intersect, intersect_symmetrized_reduced, intersect_v, is_critical,
    IntersectionVector,
};
use gitnef_core::rational::{fmt_q, fmt_q_list, parse_q, parse_q_list, qi};
use gitnef_core::{Error, Rational, Result};

use crate::report::{RunReport, Table};
use crate::{reproduce, Command, Context};

pub fn name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Intersect { .. } => "intersect",
        Command::IntersectV { .. } => "intersect-v",
        Command::AAlpha { .. } => "a-alpha",
        Command::CheckFnef { .. } => "check-fnef",
        Command::ZeroCells { .. } => "zero-cells",
        Command::Decompose { .. } => "decompose",
        Command::SgcCheck { .. } => "sgc-check",
        Command::VerifyIdentity { .. } => "verify-identity",
        Command::ConeMember { .. } => "cone-member",
        Command::Capture { .. } => "capture",
        Command::Reproduce { .. } => "reproduce",
    }
}

pub fn run(cmd: &Command, ctx: &Context) -> Result<RunReport> {
    match cmd {
        Command::Intersect { x, curve, shape } => run_intersect(x, curve.as_deref(), shape.as_deref()),
        Command::IntersectV { a, n, curve, shape } => {
            run_intersect_v(a, *n, curve.as_deref(), shape.as_deref())
        }
        Command::AAlpha { n, alpha } => run_a_alpha(*n, alpha),
        Command::CheckFnef { n, divisor } => run_check_fnef(*n, divisor),
        Command::ZeroCells { n, orbits, expensive } => run_zero_cells(*n, *orbits, *expensive, ctx),
        Command::Decompose { n, alpha, divisor } => run_decompose(*n, alpha.as_deref(), divisor.as_deref()),
        Command::SgcCheck { n, divisor } => run_sgc_check(*n, divisor.as_deref(), ctx),
        Command::VerifyIdentity { max_m, samples, y, m } => {
            run_verify_identity(*max_m, *samples, y.as_deref(), *m, ctx)
        }
        Command::ConeMember {
            n,
            target,
            generators,
        } => run_cone_member(*n, target, generators),
        Command::Capture { n, k, shapes } => run_capture(*n, *k, *shapes, ctx),
        Command::Reproduce { id, table } => {
            let id = id.as_deref().or(table.as_deref()).expect("clap requires one");
            reproduce::run(id, ctx)
        }
    }
}

fn q(text: &str) -> Result<Rational> {
    Ok(parse_q(text)?)
}

fn strs(v: &[Rational]) -> Value {
    json!(fmt_q_list(v))
}

fn resolve_curve(n: usize, curve: Option<&str>, shape: Option<&str>) -> Result<Option<CurveClass>> {
    let class = match (curve, shape) {
        (Some(c), _) => Some(c.parse::<CurveClass>()?),
        (None, Some(s)) => Some(s.parse::<CurveShape>()?.consecutive_class()),
        (None, None) => None,
    };
    if let Some(c) = &class {
        if c.n() != n {
            return Err(Error::Usage(format!(
                "curve has n = {} but expected n = {n}",
                c.n()
            )));
        }
    }
    Ok(class)
}

fn vector_table(v: &IntersectionVector) -> (Value, Table) {
    let mut table = Table::new(&["shape", "value"]);
    let mut values = Vec::new();
    for (s, x) in &v.values {
        table.push(vec![s.to_string(), fmt_q(x)]);
        values.push(json!({"shape": s.to_string(), "value": fmt_q(x)}));
    }
    (Value::Array(values), table)
}

fn run_intersect(x: &str, curve: Option<&str>, shape: Option<&str>) -> Result<RunReport> {
    let w: WeightVector = x.parse()?;
    let c = resolve_curve(w.n(), curve, shape)?
        .ok_or_else(|| Error::Usage("one of --curve or --shape is required".into()))?;
    let value = intersect(&w, &c)?;
    let mut table = Table::new(&["x", "curve", "value"]);
    table.push(vec![w.to_string(), c.to_string(), fmt_q(&value)]);
    Ok(RunReport::new(
        "intersect",
        json!({"x": w.to_string(), "curve": c.to_string()}),
        json!({"value": fmt_q(&value), "degenerate": w.has_unit_entry()}),
        table,
    ))
}

fn run_intersect_v(a: &str, n: usize, curve: Option<&str>, shape: Option<&str>) -> Result<RunReport> {
    let a = q(a)?;
    let params = json!({"a": fmt_q(&a), "n": n});
    match resolve_curve(n, curve, shape)? {
        Some(c) => {
            let value = intersect_v(&a, n, &c)?;
            let mut table = Table::new(&["curve", "value"]);
            table.push(vec![c.to_string(), fmt_q(&value)]);
            Ok(RunReport::new(
                "intersect-v",
                params,
                json!({"curve": c.to_string(), "value": fmt_q(&value)}),
                table,
            ))
        }
        None => {
            let (values, table) = vector_table(&IntersectionVector::of_v(&a, n)?);
            Ok(RunReport::new(
                "intersect-v",
                params,
                json!({"values": values}),
                table,
            ))
        }
    }
}

fn divisor_json(d: &SymmetricDivisor) -> Value {
    d.coeffs()
        .iter()
        .enumerate()
        .map(|(k, c)| json!({"j": k + 2, "r": fmt_q(c)}))
        .collect()
}

fn run_a_alpha(n: usize, alpha: &str) -> Result<RunReport> {
    let alpha = q(alpha)?;
    let d = a_alpha(n, &alpha)?;
    let (values, table) = vector_table(&IntersectionVector::of_divisor(&d)?);
    let split = convex_split(&alpha, n)?;
    Ok(RunReport::new(
        "a-alpha",
        json!({"n": n, "alpha": fmt_q(&alpha)}),
        json!({
            "coefficients": divisor_json(&d),
            "critical": is_critical(n, &alpha),
            "critical_values": fmt_q_list(&critical_alphas(n)),
            "convex_split": {
                "lo": {"alpha": fmt_q(&split.lo.0), "weight": fmt_q(&split.lo.1)},
                "hi": {"alpha": fmt_q(&split.hi.0), "weight": fmt_q(&split.hi.1)},
            },
            "values": values,
        }),
        table,
    ))
}

fn run_check_fnef(n: usize, divisor: &str) -> Result<RunReport> {
    let d = SymmetricDivisor::parse(n, divisor)?;
    let check = check_fnef(&d)?;
    let (values, table) = vector_table(&check.values);
    let violations: Vec<Value> = check
        .violations
        .iter()
        .map(|(s, v)| json!({"shape": s.to_string(), "value": fmt_q(v)}))
        .collect();
    Ok(RunReport::new(
        "check-fnef",
        json!({"n": n, "divisor": d.to_string()}),
        json!({"f_nef": check.is_fnef(), "values": values, "violations": violations}),
        table,
    ))
}

fn run_zero_cells(n: usize, orbits: bool, expensive: bool, ctx: &Context) -> Result<RunReport> {
    let cells = enumerate_zero_cells_with(n, expensive, ctx.exec)?;
    let params = json!({"n": n, "orbits": orbits, "expensive": expensive});
    if orbits {
        let groups = group_orbits(&cells);
        let mut table = Table::new(&["representative", "orbit_size"]);
        let list: Vec<Value> = groups
            .iter()
            .map(|o| {
                table.push(vec![o.representative.to_string(), o.orbit_size.to_string()]);
                json!({
                    "representative": fmt_q_list(o.representative.entries()),
                    "orbit_size": o.orbit_size,
                })
            })
            .collect();
        return Ok(RunReport::new(
            "zero-cells",
            params,
            json!({"cell_count": cells.len(), "orbit_count": groups.len(), "orbits": list}),
            table,
        ));
    }
    let mut table = Table::new(&["point", "active_walls", "active_zeros"]);
    let list: Vec<Value> = cells
        .iter()
        .map(|c| {
            let walls: Vec<String> = c.active_walls.iter().map(|&w| fmt_subset(w)).collect();
            let zeros: Vec<usize> = c.active_zeros.iter().map(|i| i + 1).collect();
            table.push(vec![
                c.point.to_string(),
                walls.join(" "),
                zeros.iter().map(|z| z.to_string()).collect::<Vec<_>>().join(" "),
            ]);
            json!({
                "point": fmt_q_list(c.point.entries()),
                "active_walls": walls,
                "active_zeros": zeros,
                "degenerate": c.is_degenerate(),
            })
        })
        .collect();
    Ok(RunReport::new(
        "zero-cells",
        params,
        json!({"cell_count": cells.len(), "cells": list}),
        table,
    ))
}

fn coeff_table(basis: &DecompositionBasis, coeffs: &[Rational]) -> (Value, Table) {
    let mut table = Table::new(&["basis", "coefficient"]);
    let list: Vec<Value> = basis
        .denominators
        .iter()
        .zip(coeffs)
        .map(|(t, c)| {
            let label = format!("V(1/{t},{})", basis.n);
            table.push(vec![label.clone(), fmt_q(c)]);
            json!({"basis": label, "coefficient": fmt_q(c)})
        })
        .collect();
    (Value::Array(list), table)
}

fn run_decompose(n: usize, alpha: Option<&str>, divisor: Option<&str>) -> Result<RunReport> {
    match (alpha, divisor) {
        (Some(alpha), _) => {
            let alpha = q(alpha)?;
            let params = json!({"n": n, "alpha": fmt_q(&alpha)});
            if is_critical(n, &alpha) {
                let dec = decompose_a_alpha(n, &alpha)?;
                let (basis, table) = coeff_table(&dec.basis, &dec.coeffs);
                return Ok(RunReport::new(
                    "decompose",
                    params,
                    json!({
                        "coefficients": fmt_q_list(&dec.coeffs),
                        "basis": basis,
                        "closed_form_agrees": true,
                        "exact_on_all_shapes": dec.exact_on_all_shapes,
                    }),
                    table,
                ));
            }
            let split = convex_split(&alpha, n)?;
            let dec = decompose(&a_alpha(n, &alpha)?)?;
            let (basis, table) = coeff_table(&dec.basis, &dec.coeffs);
            Ok(RunReport::new(
                "decompose",
                params,
                json!({
                    "coefficients": fmt_q_list(&dec.coeffs),
                    "basis": basis,
                    "critical": false,
                    "convex_split": {
                        "lo": {"alpha": fmt_q(&split.lo.0), "weight": fmt_q(&split.lo.1)},
                        "hi": {"alpha": fmt_q(&split.hi.0), "weight": fmt_q(&split.hi.1)},
                    },
                    "exact_on_all_shapes": dec.exact_on_all_shapes,
                }),
                table,
            ))
        }
        (None, Some(text)) => {
            let d = SymmetricDivisor::parse(n, text)?;
            let dec = decompose(&d)?;
            let (basis, table) = coeff_table(&dec.basis, &dec.coeffs);
            Ok(RunReport::new(
                "decompose",
                json!({"n": n, "divisor": d.to_string()}),
                json!({
                    "coefficients": fmt_q_list(&dec.coeffs),
                    "basis": basis,
                    "exact_on_all_shapes": dec.exact_on_all_shapes,
                }),
                table,
            ))
        }
        (None, None) => Err(Error::Usage("one of --alpha or --divisor is required".into())),
    }
}

fn run_sgc_check(n: usize, divisor: Option<&str>, ctx: &Context) -> Result<RunReport> {
    if n != 6 {
        return Err(Error::Usage(format!(
            "sgc-check is defined for n = 6 only, got {n}"
        )));
    }
    if let Some(text) = divisor {
        let d = SymmetricDivisor::parse(6, text)?;
        let (c1, c2) = sgc_membership_n6(&d)?;
        let member = c1 >= qi(0) && c2 >= qi(0);
        let mut table = Table::new(&["c1", "c2", "member"]);
        table.push(vec![fmt_q(&c1), fmt_q(&c2), member.to_string()]);
        return Ok(RunReport::new(
            "sgc-check",
            json!({"n": 6, "divisor": d.to_string()}),
            json!({"c1": fmt_q(&c1), "c2": fmt_q(&c2), "member": member}),
            table,
        ));
    }
    let report = check_sgc_conjecture_n6_with(ctx.exec)?;
    let mut table = Table::new(&["cell", "F"]);
    for (x, v) in &report.values {
        table.push(vec![x.to_string(), fmt_q(v)]);
    }
    let argmin: Vec<Value> = report.argmin.iter().map(|x| strs(x.entries())).collect();
    let mut per_orbit: Vec<(WeightVector, Rational)> = report
        .values
        .iter()
        .map(|(x, v)| (x.sorted_descending(), v.clone()))
        .collect();
    per_orbit.sort();
    per_orbit.dedup();
    per_orbit.reverse();
    let orbits: Vec<Value> = per_orbit
        .iter()
        .map(|(x, v)| json!({"representative": fmt_q_list(x.entries()), "F": fmt_q(v)}))
        .collect();
    Ok(RunReport::new(
        "sgc-check",
        json!({"n": 6}),
        json!({
            "cells": report.values.len(),
            "min": fmt_q(&report.min),
            "argmin": argmin,
            "orbits": orbits,
            "conjecture_holds": report.verified(),
        }),
        table,
    ))
}

fn run_verify_identity(
    max_m: u32,
    samples: usize,
    y: Option<&str>,
    m: Option<u32>,
    ctx: &Context,
) -> Result<RunReport> {
    if let (Some(y), Some(m)) = (y, m) {
        let y = q(y)?;
        let holds = verify_identity(&y, m)?;
        let mut table = Table::new(&["y", "m", "holds"]);
        table.push(vec![fmt_q(&y), m.to_string(), holds.to_string()]);
        return Ok(RunReport::new(
            "verify-identity",
            json!({"y": fmt_q(&y), "m": m}),
            json!({"holds": holds}),
            table,
        ));
    }
    let report = verify_identity_samples(max_m, samples, ctx.seed)?;
    let mut table = Table::new(&["checked", "failures"]);
    table.push(vec![
        report.checked.to_string(),
        report.failures.len().to_string(),
    ]);
    let failures: Vec<Value> = report
        .failures
        .iter()
        .map(|(y, m)| json!({"y": fmt_q(y), "m": m}))
        .collect();
    Ok(RunReport::new(
        "verify-identity",
        json!({"max_m": max_m, "samples": samples, "seed": ctx.seed}),
        json!({"checked": report.checked, "failures": failures, "holds": report.failures.is_empty()}),
        table,
    ))
}

/// `r2=..,r3=..`, `V(a)`, `A(alpha)` or `S(x1,..,xn)` as a vector over all shapes.
fn parse_class(n: usize, text: &str) -> Result<IntersectionVector> {
    let t = text.trim();
    let inner = |prefix: &str| {
        t.strip_prefix(prefix)
            .and_then(|r| r.strip_prefix('('))
            .and_then(|r| r.strip_suffix(')'))
    };
    if let Some(a) = inner("V") {
        return IntersectionVector::of_v(&q(a)?, n);
    }
    if let Some(a) = inner("A") {
        return IntersectionVector::of_divisor(&a_alpha(n, &q(a)?)?);
    }
    if let Some(x) = inner("S") {
        let x = WeightVector::new(parse_q_list(x)?)?;
        if x.n() != n {
            return Err(Error::Usage(format!("S(..) has {} weights, expected {n}", x.n())));
        }
        return IntersectionVector::from_fn(n, |s| intersect_symmetrized_reduced(&x, s));
    }
    IntersectionVector::of_divisor(&SymmetricDivisor::parse(n, t)?)
}

fn run_cone_member(n: usize, target: &str, generators: &str) -> Result<RunReport> {
    let tv = parse_class(n, target)?;
    let (labels, gens): (Vec<String>, Vec<IntersectionVector>) = if generators.trim() == "git" {
        git_cone_generators(n, true)?
            .into_iter()
            .filter(|g| !g.degenerate)
            .map(|g| (format!("S({})", g.cell), g.reduced.expect("symmetric mode")))
            .unzip()
    } else {
        generators
            .split(';')
            .filter(|s| !s.trim().is_empty())
            .map(|s| Ok((s.trim().to_string(), parse_class(n, s)?)))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .unzip()
    };
    let cert = nonneg_combination(&tv, &gens)?;
    let shapes: Vec<String> = tv.values.iter().map(|(s, _)| s.to_string()).collect();
    let params = json!({"n": n, "target": target, "generators": labels});
    let (results, table) = match &cert {
        ConeMembershipCertificate::Feasible { coefficients, used } => {
            let mut table = Table::new(&["generator", "coefficient"]);
            for (l, c) in labels.iter().zip(coefficients) {
                table.push(vec![l.clone(), fmt_q(c)]);
            }
            (
                json!({
                    "feasible": true,
                    "coefficients": fmt_q_list(coefficients),
                    "used": used.iter().map(|&i| labels[i].clone()).collect::<Vec<_>>(),
                    "shapes": shapes,
                    "verified": true,
                }),
                table,
            )
        }
        ConeMembershipCertificate::Infeasible { witness } => {
            let mut table = Table::new(&["shape", "witness"]);
            for (s, w) in shapes.iter().zip(witness) {
                table.push(vec![s.clone(), fmt_q(w)]);
            }
            (
                json!({
                    "feasible": false,
                    "witness": fmt_q_list(witness),
                    "shapes": shapes,
                    "verified": true,
                }),
                table,
            )
        }
    };
    Ok(RunReport::new("cone-member", params, results, table))
}

fn run_capture(n: usize, k: usize, shapes: bool, ctx: &Context) -> Result<RunReport> {
    let rep = ampleness_certificate_with(n, k, ctx.exec)?;
    let fmt_shape = |s: &[usize; 3]| format!("{},{},{}", s[0], s[1], s[2]);
    let mut table = Table::new(&["shape", "a", "odd_block", "block_sums", "in_weighted_simplex"]);
    let certs: Vec<Value> = rep
        .certificates
        .iter()
        .map(|c| {
            table.push(vec![
                fmt_shape(&c.shape),
                fmt_q(&c.a),
                "3".into(),
                fmt_q_list(&c.block_sums).join(" "),
                c.in_weighted_simplex.to_string(),
            ]);
            json!({
                "shape": fmt_shape(&c.shape),
                "a": fmt_q(&c.a),
                "odd_entry_block": 3,
                "witness": fmt_q_list(c.witness.entries()),
                "block_sums": fmt_q_list(&c.block_sums),
                "in_weighted_simplex": c.in_weighted_simplex,
            })
        })
        .collect();
    let mut results = json!({
        "all_captured": rep.all_captured(),
        "candidates": rep.certificates.len(),
        "excluded": rep.excluded.iter().map(fmt_shape).collect::<Vec<_>>(),
        "witness_bundles": rep.witness_denominators.iter().map(|t| format!("V(1/{t},{n})")).collect::<Vec<_>>(),
        "allowed_range": format!("V(1/{},{n}) .. V(1/{},{n})", rep.allowed_denominators.0, rep.allowed_denominators.1),
        "outside_weighted_simplex": rep.outside_weighted_simplex.iter().map(fmt_shape).collect::<Vec<_>>(),
        "scope": "partition polytopes only; each L_x is assumed to descend to the weighted moduli space",
    });
    if shapes {
        results["certificates"] = Value::Array(certs);
    }
    Ok(RunReport::new(
        "capture",
        json!({"n": n, "k": k, "shapes": shapes}),
        results,
        table,
    ))
}
