//! JSON report builders, one per subcommand.

use arrangement_core::lattice::IncidenceLattice;
use arrangement_core::linalg::ZSubgroup;
use arrangement_core::presentation::{GroupPresentation, StepRecord};
use arrangement_core::{
    AbelianInvariants, AffineReduction, BigInt, ClassificationOutcome, CycleWitness, FanConsistency, Location,
    MultiplePointGraph, PointQuotient, Rational, StabilizerCheck, Verdict, G2G3,
};
use serde_json::{json, Value};

fn int(x: &BigInt) -> Value {
    match i64::try_from(x) {
        Ok(n) => json!(n),
        Err(_) => json!(x.to_string()),
    }
}

pub fn vector(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(int).collect())
}

fn subgroup(s: &ZSubgroup<BigInt>) -> Value {
    json!({
        "ambient_rank": s.ambient_rank(),
        "rank": s.rank(),
        "basis": s.basis().to_rows().iter().map(|r| vector(r)).collect::<Vec<_>>(),
    })
}

fn location(l: &Location<Rational>) -> Value {
    match l {
        Location::Affine(x, y) => json!([x.to_string(), y.to_string()]),
        Location::Infinity(class) => json!({ "infinity": class }),
        Location::Unplaced => Value::Null,
    }
}

pub fn lattice_points(lat: &IncidenceLattice<Rational>) -> Value {
    Value::Array(
        lat.points()
            .iter()
            .map(|p| {
                json!({
                    "id": p.id(),
                    "lines": p.lines(),
                    "multiplicity": p.multiplicity(),
                    "multiple": p.is_multiple(),
                    "location": location(p.location()),
                })
            })
            .collect(),
    )
}

pub fn lattice(red: &AffineReduction) -> Value {
    let lat = red.model.base();
    json!({
        "n_lines": lat.n_lines(),
        "labels": lat.labels(),
        "chart_line": red.chart_line,
        "points": lattice_points(lat),
        "multiple_points": lat.multiple_points().count(),
        "closure": {
            "labels": red.closure.closed().labels(),
            "infinity_points": red.closure.infinity_points().iter().map(|p| json!({
                "id": p.id(),
                "lines": p.lines(),
                "multiplicity": p.multiplicity(),
            })).collect::<Vec<_>>(),
            "has_parallels": red.closure.has_parallels(),
        },
    })
}

pub fn cycle(c: &CycleWitness) -> Value {
    json!({ "points": c.points, "lines": c.lines, "length": c.len() })
}

pub fn graph(g: &MultiplePointGraph) -> Value {
    json!({
        "vertices": g.vertices().iter().map(|&v| json!({
            "id": v,
            "multiplicity": g.multiplicity(v),
        })).collect::<Vec<_>>(),
        "edges": g.edges(),
        "components": g.component_count(),
        "beta": g.beta(),
        "is_forest": g.is_forest(),
        "minimal_cycle": g.find_minimal_cycle().as_ref().map(cycle),
    })
}

pub fn invariants(a: &AbelianInvariants) -> Value {
    json!({ "free_rank": a.free_rank, "torsion": vector(&a.torsion), "text": a.to_string() })
}

pub fn steps(steps: &[StepRecord]) -> Value {
    Value::Array(
        steps
            .iter()
            .map(|s| json!({ "step": s.step, "before": s.before.to_string(), "after": s.after.to_string(), "preserved": s.preserved() }))
            .collect(),
    )
}

pub fn presentation(p: &GroupPresentation) -> Value {
    json!({
        "generators": p.labels(),
        "relators": p.relators().iter().map(|r| json!({
            "word": r.word.render(p.labels()),
            "redundant": r.redundant,
        })).collect::<Vec<_>>(),
        "text": p.render(),
        "abelianization": invariants(&p.abelian_invariants()),
        "audit": p.audit(),
    })
}

pub fn lcs(lat: &IncidenceLattice<Rational>, g: &G2G3) -> Value {
    let predicted: usize = lat.points().iter().map(|p| (p.multiplicity() - 1) * (p.multiplicity() - 2) / 2).sum();
    json!({
        "abelianization": { "rank": lat.n_lines(), "labels": lat.labels() },
        "summands": g.summands().iter().filter(|s| s.multiplicity() > 2).map(|s| json!({
            "point": s.point,
            "multiplicity": s.multiplicity(),
            "rank": s.rank,
            "basis": s.basis_pairs(),
        })).collect::<Vec<_>>(),
        "total_rank": g.total_rank(),
        "predicted_rank": predicted,
    })
}

pub fn stabilizer_check(c: &StabilizerCheck) -> Value {
    json!({ "point": c.point, "holds": c.holds, "lhs": subgroup(&c.lhs), "rhs": subgroup(&c.rhs) })
}

pub fn stabilizer(target: &[BigInt], s: &ZSubgroup<BigInt>) -> Value {
    json!({ "target": vector(target), "subgroup": subgroup(s), "full": s.is_full() })
}

pub fn quotient(q: &PointQuotient) -> Value {
    json!({
        "point": q.point,
        "multiplicity": q.multiplicity,
        "raw": q.raw.render(),
        "presentation": q.presentation().render(),
        "free_rank": q.free_rank(),
        "abelianization": invariants(&q.presentation().abelian_invariants()),
        "steps": steps(&q.simplification.steps),
        "all_preserved": q.simplification.all_preserved(),
    })
}

pub fn classification(out: &ClassificationOutcome, chart_line: Option<usize>, fan: Option<&FanConsistency>) -> Value {
    match &out.verdict {
        Verdict::DirectSum(r) => json!({
            "beta": out.beta,
            "verdict": "direct_sum",
            "chart_line": chart_line,
            "decomposition": {
                "summands": r.summands.iter().map(|s| s.1).collect::<Vec<_>>(),
                "summand_points": r.summands.iter().map(|s| s.0).collect::<Vec<_>>(),
                "l": r.free_abelian_rank,
                "n": r.total_lines,
                "consistent": r.is_consistent(),
            },
            "consistency": fan.map(|f| json!({
                "holds": f.holds,
                "abelian_rank": f.abelian_rank,
                "predicted_abelian_rank": f.predicted_abelian_rank,
                "g2g3_rank": f.g2g3_rank,
                "predicted_g2g3_rank": f.predicted_g2g3_rank,
                "point_quotients": f.point_quotients.iter().map(|(p, r)| json!({"point": p, "free_rank": r})).collect::<Vec<_>>(),
            })),
        }),
        Verdict::Obstructed(c) => json!({
            "beta": out.beta,
            "verdict": "obstructed",
            "chart_line": chart_line,
            "certificate": {
                "cycle": cycle(&c.cycle),
                "participating_lines": c.participating_lines,
                "b": c.b,
                "rank_H_ab": c.rank_h_ab,
                "abelianization": invariants(&c.abelianization),
                "quotient_presentation": c.quotient_presentation.render(),
                "tietze_steps": c.steps.len(),
                "all_steps_preserved": c.steps.iter().all(StepRecord::preserved),
                "gap_holds": c.gap_holds(),
            },
        }),
    }
}

/// Plain-text rendering of a report: nested keys become indented lines.
pub fn to_text(v: &Value) -> String {
    let mut out = String::new();
    write_text(v, 0, &mut out);
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.iter().all(|i| !i.is_object()) => {
            let parts: Option<Vec<String>> = items
                .iter()
                .map(|i| match i {
                    Value::Array(_) => Some(serde_json::to_string(i).expect("json")),
                    other => scalar(other),
                })
                .collect();
            parts.map(|p| format!("[{}]", p.join(", ")))
        }
        _ => None,
    }
}

fn write_text(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                match scalar(val) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        write_text(val, depth + 1, out);
                    }
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                match scalar(item) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        write_text(item, depth + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}
