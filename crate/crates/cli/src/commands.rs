use std::path::Path;

use katolab::dynamics::{
    certify_ball12_contraction, certify_contraction, contracts_unit_ball, eval_inverse, eval_map,
    fundamental_domain_membership, orbit_scan, perron_data, root_of_unity_orders,
    stable_membership, unit_ball_witness, Ball, GaussianRationalPoint, Membership, DEFAULT_TOL,
};
use katolab::formal::{
    function_nullity_note, independent_count, linear_invariant_fields, nullity_profile,
    one_form_nullity, pushforward_invariance, tangent_field_nullity, top_type_generators,
    MonomialVectorField,
};
use katolab::invariants::{
    build_report_for, hol_vf_dimension, multiplicity_one, verify_j0_relation, HolVfDimension,
};
use katolab::kato::{compose_factors, factorize, KatoMatrix};
use serde::Serialize;
use serde_json::{json, Value};

use crate::input::{parse_kato, parse_matrix, parse_point, parse_word, Failure};
use crate::{Action, Check, Format};

fn to_json<T: Serialize>(v: &T) -> Result<String, Failure> {
    serde_json::to_string_pretty(v).map_err(|e| Failure::Invalid(e.to_string()))
}

pub fn factor(input: &str, f: Format) -> Result<String, Failure> {
    let word = factorize(&parse_matrix(input)?)?;
    match f {
        Format::Text => Ok(word.to_string()),
        Format::Json => to_json(&word),
    }
}

pub fn compose(input: &str, f: Format) -> Result<String, Failure> {
    let a = compose_factors(&parse_word(input)?)?;
    match f {
        Format::Text => Ok(a.to_text()),
        Format::Json => to_json(&a),
    }
}

pub fn invariants(input: &str, f: Format) -> Result<String, Failure> {
    let report = build_report_for(&parse_kato(input)?)?;
    match f {
        Format::Text => Ok(report.to_text()),
        Format::Json => to_json(&report),
    }
}

/// One JSON record per non-blank line; failures become error records.
pub fn batch(path: &Path) -> Result<String, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Invalid(format!("cannot read {}: {e}", path.display())))?;
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let record = parse_kato(line)
            .and_then(|k| Ok(build_report_for(&k)?))
            .and_then(|r| serde_json::to_value(r).map_err(|e| Failure::Invalid(e.to_string())))
            .unwrap_or_else(|e| {
                json!({ "line": i + 1, "input": line, "error": e.message(), "kind": e.kind() })
            });
        out.push(record.to_string());
    }
    Ok(out.join("\n"))
}

pub struct DynamicsOpts {
    pub action: Action,
    pub point: Option<String>,
    pub max_iter: usize,
    pub samples: usize,
    pub seed: u64,
}

impl DynamicsOpts {
    fn point(&self) -> Result<GaussianRationalPoint, Failure> {
        let p = self
            .point
            .as_deref()
            .ok_or_else(|| Failure::Invalid("this action needs --point".into()))?;
        parse_point(p)
    }
}

fn render(f: Format, text: String, value: Value) -> Result<String, Failure> {
    match f {
        Format::Text => Ok(text),
        Format::Json => to_json(&value),
    }
}

pub fn dynamics(input: &str, o: &DynamicsOpts, f: Format) -> Result<String, Failure> {
    let k = parse_kato(input)?;
    let a = k.matrix();
    match o.action {
        Action::Eval | Action::Inverse => {
            let z = o.point()?;
            let w = if o.action == Action::Eval {
                eval_map(a, &z)?
            } else {
                eval_inverse(&k, &z)?
            };
            render(f, w.to_text(), json!({ "point": z, "image": w }))
        }
        Action::Contract => {
            if contracts_unit_ball(a)? {
                let rep = certify_contraction(&k, Ball::Unit, o.samples, o.seed)?;
                let text = format!(
                    "contracts the unit ball: yes\nsamples: {}\npassed: {}\nmax |F(z)|^2: {}",
                    rep.samples, rep.passed, rep.max_image_norm_sq
                );
                let passed = rep.passed;
                let out = render(f, text, json!({ "contracts": true, "certificate": rep }))?;
                if passed {
                    Ok(out)
                } else {
                    Err(Failure::CheckFailed(out))
                }
            } else {
                let (z, w) = unit_ball_witness(a)?
                    .ok_or_else(|| Failure::Invalid("no witness for an excluded word".into()))?;
                let text = format!(
                    "contracts the unit ball: no\nwitness: {} -> {} (norm 1)",
                    z.to_text(),
                    w.to_text()
                );
                render(
                    f,
                    text,
                    json!({ "contracts": false, "witness": { "point": z, "image": w } }),
                )
            }
        }
        Action::Contract12 => {
            let rep = certify_ball12_contraction(&k, o.samples, o.seed)?;
            let text = format!(
                "samples: {}\npassed: {}\nmax |F(z)|_(1,2)^2: {}",
                rep.samples, rep.passed, rep.max_image_norm_sq
            );
            let passed = rep.passed;
            let out = render(f, text, serde_json::to_value(&rep).unwrap_or(Value::Null))?;
            if passed {
                Ok(out)
            } else {
                Err(Failure::CheckFailed(out))
            }
        }
        Action::Perron => {
            let d = perron_data(&k, DEFAULT_TOL)?;
            let exact = d
                .exact
                .as_ref()
                .map(|s| format!(" = {s}"))
                .unwrap_or_default();
            let text = format!(
                "alpha: {}{exact}\npower used: {}\nalpha(B^p): {}\nresidual: {:e}\nvector: {:?}",
                d.value, d.power_used, d.power_value, d.residual, d.vector
            );
            render(f, text, serde_json::to_value(&d).unwrap_or(Value::Null))
        }
        Action::Stable => {
            let z = o.point()?;
            let m = stable_membership(&k, &z, o.max_iter)?;
            let text = match m {
                Membership::In(m) => format!("in W^s: F^{m}(z) lies in B*"),
                Membership::Undetermined => {
                    format!("undetermined after {} iterations", o.max_iter)
                }
            };
            render(f, text, json!({ "point": z, "membership": m }))
        }
        Action::Domain => {
            let z = o.point()?;
            let inside = fundamental_domain_membership(&k, &z)?;
            render(
                f,
                format!("in B* - F(B*): {inside}"),
                json!({ "point": z, "in_domain": inside }),
            )
        }
        Action::Orbit => {
            let z = o.point()?;
            let scan = orbit_scan(&k, &z, o.max_iter)?;
            let mut lines: Vec<String> = scan
                .orbit
                .iter()
                .enumerate()
                .map(|(j, p)| {
                    let mark = if scan.domain_hits.contains(&j) {
                        "  [domain]"
                    } else if scan.exit == Some(j) {
                        "  [outside]"
                    } else {
                        ""
                    };
                    format!("H^{j}: {}{mark}", p.to_text())
                })
                .collect();
            if scan.exit.is_none() {
                lines.push(format!("undetermined after {} steps", o.max_iter));
            }
            render(f, lines.join("\n"), serde_json::to_value(&scan).unwrap_or(Value::Null))
        }
        Action::Roots => {
            let orders = root_of_unity_orders(a)?;
            let note = function_nullity_note(a)?;
            let text = format!(
                "roots of unity (orders): {orders:?}\n{}",
                note.advice
            );
            render(f, text, json!({ "root_of_unity_orders": orders, "functions": note }))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Serialize)]
struct CheckResult {
    check: &'static str,
    status: Status,
    detail: String,
    #[serde(skip_serializing_if = "Value::is_null")]
    data: Value,
}

fn status(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

fn skipped(check: &'static str, why: String) -> CheckResult {
    CheckResult {
        check,
        status: Status::Skipped,
        detail: why,
        data: Value::Null,
    }
}

fn check_j0(k: &KatoMatrix) -> Result<CheckResult, Failure> {
    if k.l() == 0 {
        return Ok(skipped("j0", "needs type l >= 1".into()));
    }
    let ok = verify_j0_relation(k.form())?;
    Ok(CheckResult {
        check: "j0",
        status: status(ok),
        detail: format!("J0 B - J0 = {} L", k.n() - k.l() - 1),
        data: Value::Null,
    })
}

fn check_generators(k: &KatoMatrix) -> Result<CheckResult, Failure> {
    let (n, l) = (k.n(), k.l());
    let top = l + 2 == n;
    let fields: Vec<MonomialVectorField> = if top {
        top_type_generators(n)
    } else {
        linear_invariant_fields(k)
    };
    let mut passing = Vec::new();
    for x in &fields {
        if pushforward_invariance(k.matrix(), x)? {
            passing.push(x.clone());
        }
    }
    let count = independent_count(&passing);
    let all_pass = passing.len() == fields.len();
    let (ok, detail) = match hol_vf_dimension(k) {
        HolVfDimension::Exact(v) => (
            all_pass && count == v,
            format!("{count} independent invariant fields, h0(TM) = {v}"),
        ),
        HolVfDimension::LowerBound(v) => (
            all_pass,
            format!("{count} independent linear invariant fields, h0(TM) >= {v}"),
        ),
    };
    Ok(CheckResult {
        check: "generators",
        status: status(ok),
        detail,
        data: json!({ "tested": fields.len(), "invariant": passing.len(), "independent": count }),
    })
}

fn check_tangent(k: &KatoMatrix, degree: usize) -> Result<CheckResult, Failure> {
    if !k.matrix().is_positive() {
        return Ok(skipped("tangent-nullity", "needs a positive matrix".into()));
    }
    if k.l() != 0 {
        return Ok(skipped("tangent-nullity", "needs type l = 0".into()));
    }
    let (values, stable) = nullity_profile(k, degree, tangent_field_nullity)?;
    let m1 = multiplicity_one(k.matrix());
    Ok(CheckResult {
        check: "tangent-nullity",
        status: status(values.iter().all(|&v| v == m1)),
        detail: format!("nullity by degree {values:?}, m(1) = {m1}"),
        data: json!({ "nullity": values, "m1": m1, "stable": stable }),
    })
}

fn check_one_form(k: &KatoMatrix, degree: usize) -> Result<CheckResult, Failure> {
    if !k.form().b.is_positive() {
        return Ok(skipped("oneform-nullity", "needs an l-positive matrix".into()));
    }
    let (values, stable) = nullity_profile(k, degree, one_form_nullity)?;
    Ok(CheckResult {
        check: "oneform-nullity",
        status: status(values.iter().all(|&v| v == 0)),
        detail: format!("nullity by degree {values:?}"),
        data: json!({ "nullity": values, "stable": stable }),
    })
}

pub fn verify(input: &str, degree: usize, check: Check, f: Format) -> Result<String, Failure> {
    let k = parse_kato(input)?;
    let results = match check {
        Check::J0 => vec![check_j0(&k)?],
        Check::Generators => vec![check_generators(&k)?],
        Check::TangentNullity => vec![check_tangent(&k, degree)?],
        Check::OneformNullity => vec![check_one_form(&k, degree)?],
        Check::All => vec![
            check_j0(&k)?,
            check_generators(&k)?,
            check_tangent(&k, degree)?,
            check_one_form(&k, degree)?,
        ],
    };
    if check != Check::All {
        if let Some(r) = results.iter().find(|r| r.status == Status::Skipped) {
            return Err(Failure::Invalid(format!("{}: {}", r.check, r.detail)));
        }
    }
    let text = results
        .iter()
        .map(|r| {
            let s = match r.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skipped => "SKIP",
            };
            format!("{:<16} {s}  {}", r.check, r.detail)
        })
        .collect::<Vec<_>>()
        .join("\n");
    let value = json!({ "word": k.word(), "degree": degree, "checks": results });
    let out = render(f, text, value)?;
    if results.iter().any(|r| r.status == Status::Fail) {
        Err(Failure::CheckFailed(out))
    } else {
        Ok(out)
    }
}
