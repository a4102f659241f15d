//! Published tables recomputed from scratch and diffed against `data/expected.json`.

use std::collections::BTreeSet;

use serde_json::{json, Value};

use gitnef_core::combinatorics::{basis_curves, CurveShape, WeightVector};
use gitnef_core::cone::{build_system, decompose_a_alpha, DecompositionBasis};
use gitnef_core::git_complex::{enumerate_zero_cells_with, group_orbits};
use gitnef_core::intersection::{a_alpha, intersect_symmetric, intersect_v_shape};
use gitnef_core::rational::{fmt_q, parse_q, q};
use gitnef_core::{Error, Rational, Result};

use crate::report::{Mismatch, RunReport, Status, Table};
use crate::Context;

const EXPECTED: &str = include_str!("../data/expected.json");

pub const TABLES: [&str; 7] = [
    "n9-matrix",
    "n9-aalpha-vectors",
    "n9-decompositions",
    "n6-sgc-basis",
    "n6-decomposition",
    "n8-counterexample",
    "n6-zero-cells",
];

fn expected() -> Value {
    serde_json::from_str(EXPECTED).expect("shipped expected values are valid json")
}

fn curve_label(s: CurveShape) -> String {
    format!("C({s})")
}

fn alpha_label(alpha: &Rational) -> String {
    format!("A_{}", fmt_q(alpha))
}

fn v_label(t: usize, n: usize) -> String {
    format!("V(1/{t},{n})")
}

type Entries = Vec<(String, String)>;

fn matrix_entries(n: usize) -> Result<Entries> {
    let sys = build_system(n)?;
    let mut out = Vec::new();
    for (i, c) in sys.curves.iter().enumerate() {
        for (j, t) in sys.basis.denominators.iter().enumerate() {
            out.push((
                format!("{} . {}", curve_label(c.shape()), v_label(*t, n)),
                fmt_q(sys.u.get(i, j)),
            ));
        }
    }
    Ok(out)
}

fn alpha_vectors(n: usize, alphas: &[Rational]) -> Result<Entries> {
    let curves = basis_curves(n)?;
    let mut out = Vec::new();
    for a in alphas {
        let d = a_alpha(n, a)?;
        for c in &curves {
            out.push((
                format!("{} . {}", curve_label(c.shape()), alpha_label(a)),
                fmt_q(&intersect_symmetric(&d, c.shape())?),
            ));
        }
    }
    Ok(out)
}

fn decompositions(n: usize, alphas: &[Rational]) -> Result<Entries> {
    let basis = DecompositionBasis::new(n)?;
    let mut out = Vec::new();
    for a in alphas {
        let dec = decompose_a_alpha(n, a)?;
        for (t, c) in basis.denominators.iter().zip(&dec.coeffs) {
            out.push((format!("{} : {}", alpha_label(a), v_label(*t, n)), fmt_q(c)));
        }
    }
    Ok(out)
}

fn sgc_basis() -> Result<Entries> {
    let mut out = Vec::new();
    for s in [[2, 2, 1, 1], [3, 1, 1, 1]] {
        let s = CurveShape::new(s)?;
        for t in [3, 4] {
            out.push((
                format!("{} . {}", curve_label(s), v_label(t, 6)),
                fmt_q(&intersect_v_shape(&q(1, t as i64), 6, s)?),
            ));
        }
    }
    Ok(out)
}

fn counterexample() -> Result<Entries> {
    let alphas = [q(1, 1), q(1, 2), q(2, 5)];
    let mut out = Vec::new();
    for s in [
        [3, 3, 1, 1],
        [4, 2, 1, 1],
        [5, 1, 1, 1],
        [3, 2, 2, 1],
        [2, 2, 2, 2],
    ] {
        let s = CurveShape::new(s)?;
        for a in &alphas {
            out.push((
                format!("{} . {}", curve_label(s), alpha_label(a)),
                fmt_q(&intersect_symmetric(&a_alpha(8, a)?, s)?),
            ));
        }
        out.push((
            format!("{} . {}", curve_label(s), v_label(6, 8)),
            fmt_q(&intersect_v_shape(&q(1, 6), 8, s)?),
        ));
    }
    Ok(out)
}

fn parse_orbit_key(key: &str) -> Option<WeightVector> {
    let inner = key.strip_prefix("orbit (")?.strip_suffix(')')?;
    inner.parse().ok()
}

/// Listed orbit representatives looked up in the enumerator output, plus count notes.
fn zero_cells(shipped: &Value, ctx: &Context) -> Result<(Entries, Value)> {
    let cells = enumerate_zero_cells_with(6, false, ctx.exec)?;
    let orbits = group_orbits(&cells);
    let found: BTreeSet<WeightVector> = orbits.iter().map(|o| o.representative.clone()).collect();
    let mut listed = BTreeSet::new();
    let mut out = Vec::new();
    for item in shipped["entries"].as_array().into_iter().flatten() {
        let key = item[0].as_str().unwrap_or_default().to_string();
        let present = parse_orbit_key(&key).is_some_and(|x| {
            listed.insert(x.clone());
            found.contains(&x)
        });
        out.push((key, if present { "present" } else { "absent" }.to_string()));
    }
    let extra: Vec<String> = orbits
        .iter()
        .filter(|o| !listed.contains(&o.representative))
        .map(|o| format!("({})", o.representative))
        .collect();
    let listed_total: u64 = orbits
        .iter()
        .filter(|o| listed.contains(&o.representative))
        .map(|o| o.orbit_size)
        .sum();
    let published = shipped["published_count"].as_u64().unwrap_or_default();
    let notes = json!({
        "cell_count": cells.len(),
        "orbit_count": orbits.len(),
        "published_count": published,
        "listed_orbit_size_total": listed_total,
        "orbits_not_listed": extra,
        "count_agrees_with_published": cells.len() as u64 == published,
        "orbits": orbits.iter().map(|o| json!({
            "representative": o.representative.to_string(),
            "orbit_size": o.orbit_size,
        })).collect::<Vec<_>>(),
    });
    Ok((out, notes))
}

fn compute(id: &str, shipped: &Value, ctx: &Context) -> Result<(Entries, Option<Value>)> {
    let crit9 = [q(2, 5), q(1, 2), q(2, 3), q(1, 1)];
    Ok(match id {
        "n9-matrix" => (matrix_entries(9)?, None),
        "n9-aalpha-vectors" => (alpha_vectors(9, &crit9)?, None),
        "n9-decompositions" => (decompositions(9, &crit9)?, None),
        "n6-sgc-basis" => (sgc_basis()?, None),
        "n6-decomposition" => (decompositions(6, &[q(1, 1)])?, None),
        "n8-counterexample" => (counterexample()?, None),
        "n6-zero-cells" => {
            let (e, notes) = zero_cells(shipped, ctx)?;
            (e, Some(notes))
        }
        _ => unreachable!("checked by caller"),
    })
}

fn same(expected: &str, computed: &str) -> bool {
    match (parse_q(expected), parse_q(computed)) {
        (Ok(a), Ok(b)) => a == b,
        _ => expected == computed,
    }
}

pub fn run(id: &str, ctx: &Context) -> Result<RunReport> {
    let ids: Vec<&str> = if id == "all" {
        TABLES.to_vec()
    } else if TABLES.contains(&id) {
        vec![id]
    } else {
        return Err(Error::Usage(format!(
            "unknown table `{id}`; known: {}, all",
            TABLES.join(", ")
        )));
    };
    let data = expected();
    let mut table = Table::new(&["table", "item", "expected", "computed", "match"]);
    let mut mismatches = Vec::new();
    let mut results = Vec::new();
    for tid in &ids {
        let shipped = &data[*tid];
        let (computed, notes) = compute(tid, shipped, ctx)?;
        let expected: Vec<(String, String)> = shipped["entries"]
            .as_array()
            .into_iter()
            .flatten()
            .map(|e| {
                (
                    e[0].as_str().unwrap_or_default().to_string(),
                    e[1].as_str().unwrap_or_default().to_string(),
                )
            })
            .collect();
        let mut rows = Vec::new();
        for (key, exp) in &expected {
            let got = computed
                .iter()
                .find(|(k, _)| k == key)
                .map(|(_, v)| v.clone())
                .unwrap_or_else(|| "missing".to_string());
            let ok = same(exp, &got);
            if !ok {
                mismatches.push(Mismatch {
                    item: format!("{tid}: {key}"),
                    expected: exp.clone(),
                    computed: got.clone(),
                });
            }
            table.push(vec![
                tid.to_string(),
                key.clone(),
                exp.clone(),
                got.clone(),
                ok.to_string(),
            ]);
            rows.push(json!({"item": key, "expected": exp, "computed": got, "match": ok}));
        }
        let mut entry = json!({
            "table": tid,
            "anchor": shipped["anchor"],
            "entries": rows,
        });
        if let Some(n) = notes {
            entry["notes"] = n;
        }
        results.push(entry);
    }
    let mut report = RunReport::new("reproduce", json!({"table": id}), Value::Array(results), table);
    report.provenance = ids.iter().map(|s| s.to_string()).collect();
    report.status = if mismatches.is_empty() {
        Status::Match
    } else {
        Status::Mismatch(mismatches)
    };
    Ok(report)
}
