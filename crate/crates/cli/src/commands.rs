use std::fmt::Write as _;
use std::path::Path;

use serde_json::{json, Value};
use thomschur::alphabet::VirtualAlphabet;
use thomschur::expansion::SchurExpansion;
use thomschur::thom::{
    appendix_uv, d_table, e_table, porteous_recursion_check, CandidateMode, CoeffTable, ThomError,
    VerificationReport,
};

use crate::target::Target;
use crate::{Candidates, CliError, Format, Outcome};

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON value serializes");
    s.push('\n');
    s
}

fn expansion_value(e: &SchurExpansion) -> Value {
    serde_json::to_value(e).expect("expansion serializes")
}

fn ok(output: String) -> Result<Outcome, CliError> {
    Ok(Outcome { output, ok: true })
}

fn need_r(target: &Target, r: Option<u32>) -> Result<u32, CliError> {
    let r = r.ok_or_else(|| usage("missing --r"))?;
    if r < target.min_r() {
        return Err(usage(format!("--r must be at least {}", target.min_r())));
    }
    Ok(r)
}

pub fn compute(
    target: &str,
    r: Option<u32>,
    i: Option<u32>,
    max_r: Option<u32>,
    format: Format,
) -> Result<Outcome, CliError> {
    let t = Target::parse(target, i).map_err(usage)?;
    let rs: Vec<u32> = match (r, max_r) {
        (_, Some(m)) => (t.min_r()..=m).collect(),
        (r, None) => vec![need_r(&t, r)?],
    };
    let mut list = Vec::with_capacity(rs.len());
    for &r in &rs {
        list.push((r, t.expansion(r).map_err(usage)?));
    }
    let output = match (format, max_r) {
        (Format::Json, None) => pretty(&expansion_value(&list[0].1)),
        (Format::Json, Some(_)) => pretty(&Value::Array(
            list.iter().map(|(_, e)| expansion_value(e)).collect(),
        )),
        (Format::Text, None) => format!("{}\n", list[0].1),
        (Format::Text, Some(_)) => list.iter().fold(String::new(), |mut s, (r, e)| {
            let _ = writeln!(s, "r={r}  {e}");
            s
        }),
    };
    ok(output)
}

fn read_expansion(
    input: Option<&Path>,
    expr: Option<&str>,
) -> Result<Option<SchurExpansion>, CliError> {
    let text = match (input, expr) {
        (Some(p), _) => std::fs::read_to_string(p)
            .map_err(|e| usage(format!("cannot read {}: {e}", p.display())))?,
        (None, Some(s)) => s.to_string(),
        (None, None) => return Ok(None),
    };
    let text = text.trim();
    let parsed = if text.starts_with('{') {
        SchurExpansion::from_json(text)
    } else {
        text.parse()
    };
    parsed
        .map(Some)
        .map_err(|e| usage(format!("cannot parse expansion: {e}")))
}

fn report_outcome(reports: &[VerificationReport], format: Format) -> Result<Outcome, CliError> {
    let output = match format {
        Format::Json => {
            let v: Vec<Value> = reports
                .iter()
                .map(|r| serde_json::from_str(&r.to_json()).expect("report JSON round-trips"))
                .collect();
            pretty(&if v.len() == 1 {
                v[0].clone()
            } else {
                Value::Array(v)
            })
        }
        Format::Text => reports.iter().map(VerificationReport::to_text).collect(),
    };
    Ok(Outcome {
        output,
        ok: reports.iter().all(VerificationReport::passed),
    })
}

fn thom_failure(e: ThomError, format: Format) -> CliError {
    CliError::Failed(match format {
        Format::Json => pretty(&json!({ "error": e.to_string() })),
        Format::Text => format!("error: {e}\n"),
    })
}

pub fn verify(
    target: &str,
    r: Option<u32>,
    i: Option<u32>,
    input: Option<&Path>,
    expr: Option<&str>,
    format: Format,
) -> Result<Outcome, CliError> {
    let t = Target::parse(target, i).map_err(usage)?;
    match t {
        Target::Porteous => {
            let i = i.ok_or_else(|| usage("porteous needs --i"))?;
            report_outcome(&[porteous_recursion_check(i)], format)
        }
        Target::Uv => {
            let r = need_r(&t, r)?;
            let a = appendix_uv(r).map_err(|e| thom_failure(e, format))?;
            report_outcome(&[a.report], format)
        }
        _ => {
            let r = need_r(&t, r)?;
            let id = t
                .singularity(r)
                .ok_or_else(|| usage(format!("{target} has no restriction equations")))?;
            let e = match read_expansion(input, expr)? {
                Some(e) => e,
                None => t.expansion(r).map_err(usage)?,
            };
            let rep = thomschur::thom::verify(&e, id).map_err(|e| usage(e.to_string()))?;
            report_outcome(&[rep], format)
        }
    }
}

pub fn solve(
    target: &str,
    r: Option<u32>,
    i: Option<u32>,
    candidates: Candidates,
    format: Format,
) -> Result<Outcome, CliError> {
    let t = Target::parse(target, i).map_err(usage)?;
    let r = need_r(&t, r)?;
    let id = t
        .singularity(r)
        .ok_or_else(|| usage(format!("{target} has no restriction equations")))?;
    let mode = match candidates {
        Candidates::Default => CandidateMode::Default,
        Candidates::All => CandidateMode::All,
    };
    let header = json!({ "target": id.to_string(), "r": r, "candidates_mode": mode });
    match thomschur::thom::solve(id, mode) {
        Ok(s) => {
            let output = match format {
                Format::Json => {
                    let mut v = header;
                    v["heuristic"] = json!(s.heuristic);
                    v["retried"] = json!(s.retried);
                    v["candidates"] = json!(s.candidates);
                    v["equations"] = json!(s.equations);
                    v["kernel_dim"] = json!(0);
                    v["expansion"] = expansion_value(&s.expansion);
                    pretty(&v)
                }
                Format::Text => {
                    let mut out = format!(
                        "{id} r={r}: {} candidates, {} equations, kernel dimension 0\n",
                        s.candidates, s.equations
                    );
                    if s.heuristic {
                        out.push_str("candidate filter: heuristic\n");
                    }
                    if s.retried {
                        out.push_str("retried with all partitions\n");
                    }
                    let _ = writeln!(out, "{}", s.expansion);
                    out
                }
            };
            ok(output)
        }
        Err(e @ ThomError::UnsupportedSingularity(_)) => Err(usage(e.to_string())),
        Err(e) => {
            let mut v = header;
            v["error"] = json!(e.to_string());
            if let ThomError::Underdetermined { kernel_dim } = e {
                v["kernel_dim"] = json!(kernel_dim);
            }
            Err(CliError::Failed(match format {
                Format::Json => pretty(&v),
                Format::Text => format!("{id} r={r}: {e}\n"),
            }))
        }
    }
}

pub fn table_value(t: &CoeffTable) -> Value {
    let rows: Vec<Vec<String>> = t
        .padded_rows()
        .iter()
        .map(|row| row.iter().map(ToString::to_string).collect())
        .collect();
    json!({
        "kind": t.kind,
        "first_row": t.first_row(),
        "first_col": t.first_col(),
        "rows": rows,
    })
}

pub fn table(kind: &str, rows: usize, format: Format) -> Result<Outcome, CliError> {
    let t = match kind.to_ascii_lowercase().as_str() {
        "d" if rows >= 1 => d_table(rows),
        "e" if rows >= 2 => e_table(rows),
        "d" | "e" => return Err(usage(format!("too few rows for the {kind} table"))),
        _ => return Err(usage(format!("unknown table {kind:?}; expected d or e"))),
    };
    ok(match format {
        Format::Json => pretty(&table_value(&t)),
        Format::Text => t.to_string(),
    })
}

pub fn eval(expr: &str, at: &str, format: Format) -> Result<Outcome, CliError> {
    let e: SchurExpansion = expr
        .parse()
        .map_err(|e| usage(format!("cannot parse expansion {expr:?}: {e}")))?;
    let v: VirtualAlphabet = at
        .parse()
        .map_err(|e| usage(format!("cannot parse alphabet {at:?}: {e}")))?;
    let value = e.evaluate(&v);
    ok(match format {
        Format::Json => pretty(&json!({
            "expression": e.to_string(),
            "at": v.to_string(),
            "value": value.to_string(),
        })),
        Format::Text => format!("{value}\n"),
    })
}
