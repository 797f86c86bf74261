use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Duration;

use augalex::algebra::{MultiPoly, Symtab, UniPoly};
use augalex::augment::{verify_augmentation, AugFamily};
use augalex::dga::{builtin_dga, parse_dga, parse_expr, Dga};
use augalex::extract::{
    alexander_from_augpoly, alexander_from_dga, builtin_augpoly, detect_degenerate_branch, validate_augpoly, AugPoly,
    DEGENERATE_MESSAGE,
};
use augalex::groebner::{augpoly_from_dga, exact_quotient, Budget, Ideal, MonomialOrder};
use augalex::novikov::{
    check_instance, novikov_alexander, parse_orbits, zeta_from_orbits, zeta_from_traces, NovikovData,
};
use augalex::oracle::{alexander_from_braid, builtin_braid, reduced_burau, BraidWord};
use augalex::par::Execution;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::error::{CliError, EXIT_INAPPLICABLE, EXIT_INPUT};

/// What a successful command hands back for printing.
pub struct Report {
    pub json: Value,
    pub text: String,
}

pub fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Read { path: path.to_path_buf(), source })
}

pub fn budget(timeout_secs: f64) -> Result<Budget, CliError> {
    Duration::try_from_secs_f64(timeout_secs)
        .map(Budget::new)
        .map_err(|_| CliError::Usage(format!("invalid timeout {timeout_secs}")))
}

/// Exactly one of a file or a built-in name.
pub enum Source {
    File(PathBuf),
    Builtin(String),
}

impl Source {
    pub fn pick(input: Option<PathBuf>, builtin: Option<String>) -> Result<Self, CliError> {
        match (input, builtin) {
            (Some(p), None) => Ok(Source::File(p)),
            (None, Some(b)) => Ok(Source::Builtin(b)),
            _ => Err(CliError::Usage("give exactly one of --input or --builtin".into())),
        }
    }
}

fn load_dga(src: &Source) -> Result<Dga, CliError> {
    Ok(match src {
        Source::File(p) => parse_dga(&read(p)?)?,
        Source::Builtin(n) => builtin_dga(n)?,
    })
}

fn load_aug(src: &Source) -> Result<AugPoly, CliError> {
    Ok(match src {
        Source::File(p) => AugPoly::from_json(&read(p)?)?,
        Source::Builtin(n) => builtin_augpoly(n)?,
    })
}

fn load_braid(src: &Source) -> Result<BraidWord, CliError> {
    Ok(match src {
        Source::File(p) => BraidWord::from_json(&read(p)?)?,
        Source::Builtin(n) => builtin_braid(n)?,
    })
}

pub fn alex_dga(src: &Source, aug: Option<&Path>, budget: &Budget) -> Result<Report, CliError> {
    let dga = load_dga(src)?;
    let family = aug.map(|p| AugFamily::from_json(&read(p)?).map_err(CliError::from)).transpose()?;
    if let Some(f) = &family {
        let check = verify_augmentation(&dga, f)?;
        if !check.passed() {
            let residuals: BTreeMap<&str, String> =
                check.failures().map(|(g, r)| (g.as_str(), r.to_string())).collect();
            let names: Vec<&str> = residuals.keys().copied().collect();
            return Err(CliError::Rejected {
                code: EXIT_INPUT,
                message: format!("not an augmentation: nonzero residual on d of {}", names.join(", ")),
                report: json!({ "dga": dga.name(), "verified": false, "residuals": residuals }),
            });
        }
    }
    let out = alexander_from_dga(&dga, family, budget, Execution::Parallel)?;
    let cycles: Vec<Value> = out
        .cycles
        .iter()
        .map(|c| {
            json!({
                "index": c.index,
                "cycle": c.cycle.to_json(),
                "status": c.status,
                "f_x": c.f_first.to_string(),
                "f_t": c.f_t.to_string(),
                "branch_function": c.branch_function.function.to_string(),
            })
        })
        .collect();
    let reports: Vec<Value> = out
        .reports
        .iter()
        .map(|r| {
            let mut j = r.report.to_json();
            j["cycle_index"] = json!(r.cycle.index);
            j
        })
        .collect();
    let delta = out.delta().to_string();
    let text = format!("delta = {delta} (F-route, {} usable cycle(s) agree)", out.reports.len());
    Ok(Report {
        json: json!({
            "dga": dga.name(),
            "family": out.family.to_json(),
            "cycles": cycles,
            "reports": reports,
            "delta": delta,
        }),
        text,
    })
}

pub fn alex_aug(src: &Source) -> Result<Report, CliError> {
    let aug = load_aug(src)?;
    let validation = validate_augpoly(&aug)?;
    let validation_json = json!({
        "lambda_line": validation.lambda_line,
        "mu_line": validation.mu_line,
        "mu_partial": validation.mu_partial,
        "passed": validation.passed(),
    });
    if detect_degenerate_branch(&aug)? {
        return Err(CliError::Rejected {
            code: EXIT_INAPPLICABLE,
            message: DEGENERATE_MESSAGE.to_string(),
            report: json!({ "name": aug.name, "degenerate": true, "validation": validation_json, "message": DEGENERATE_MESSAGE }),
        });
    }
    let report = alexander_from_augpoly(&aug)?;
    let mut text = format!("delta = {} (Aug-route)", report.delta);
    if !validation.passed() {
        text.push_str("; warning: augmentation polynomial fails validation");
    }
    Ok(Report {
        json: json!({
            "name": aug.name,
            "degenerate": false,
            "validation": validation_json,
            "report": report.to_json(),
            "delta": report.delta.to_string(),
        }),
        text,
    })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct IdealDocument {
    variables: Vec<String>,
    generators: Vec<String>,
    #[serde(default)]
    order: Option<OrderSpec>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum OrderSpec {
    Named(String),
    Eliminate { eliminate: Vec<String> },
}

pub fn groebner(path: &Path, budget: &Budget) -> Result<Report, CliError> {
    let doc: IdealDocument = serde_json::from_str(&read(path)?).map_err(|e| CliError::Usage(format!("malformed ideal: {e}")))?;
    let mut seen = std::collections::BTreeSet::new();
    if let Some(v) = doc.variables.iter().find(|v| !seen.insert(v.as_str())) {
        return Err(CliError::Usage(format!("variable `{v}` listed twice")));
    }
    let symtab = Symtab::plain(&doc.variables);
    let gens = doc.generators.iter().map(|g| parse_expr(g, &symtab)).collect::<Result<Vec<MultiPoly>, _>>()?;
    let ideal = Ideal::new(&symtab, gens)?;
    let render = |b: &[MultiPoly]| b.iter().map(|g| g.to_string()).collect::<Vec<_>>();
    let (order_name, json) = match doc.order.unwrap_or(OrderSpec::Named("lex".into())) {
        OrderSpec::Named(n) => {
            let order = match n.as_str() {
                "lex" => MonomialOrder::Lex,
                "grevlex" => MonomialOrder::GrevLex,
                other => return Err(CliError::Usage(format!("unknown order `{other}`"))),
            };
            let basis = ideal.groebner_basis(&order, budget)?;
            (n.clone(), json!({ "variables": doc.variables, "order": n, "basis": render(&basis) }))
        }
        OrderSpec::Eliminate { eliminate } => {
            let drop: Vec<&str> = eliminate.iter().map(String::as_str).collect();
            let elim = ideal.eliminate(&drop, budget)?;
            (
                format!("eliminate {}", eliminate.join(", ")),
                json!({
                    "variables": doc.variables,
                    "order": { "eliminate": eliminate },
                    "basis": render(elim.generators()),
                }),
            )
        }
    };
    let basis = json["basis"].as_array().map(|b| b.len()).unwrap_or(0);
    Ok(Report { text: format!("reduced basis under {order_name}: {basis} element(s)\n{}", lines(&json["basis"])), json })
}

fn lines(v: &Value) -> String {
    v.as_array().into_iter().flatten().filter_map(Value::as_str).map(|s| format!("  {s}")).collect::<Vec<_>>().join("\n")
}

pub fn augpoly(src: &Source, reference: Option<&Path>, budget: &Budget) -> Result<Report, CliError> {
    let dga = load_dga(src)?;
    let cand = augpoly_from_dga(&dga, budget)?;
    let mut json = json!({
        "dga": dga.name(),
        "candidate": cand.poly.to_string(),
        "principal": cand.principal,
        "basis_size": cand.basis_size,
        "warning": cand.warning,
    });
    let mut text = format!("candidate: {}", cand.poly);
    if let Some(w) = &cand.warning {
        text.push_str(&format!("\nwarning: {w}"));
    }
    if let Some(path) = reference {
        let reference = AugPoly::from_json(&read(path)?)?;
        let quotient = exact_quotient(&cand.poly, reference.poly())?;
        json["reference"] = json!(reference.poly().to_string());
        json["divisible"] = json!(quotient.is_some());
        json["quotient"] = json!(quotient.as_ref().map(|q| q.to_string()));
        json["quotient_degree"] = json!(quotient.as_ref().and_then(|q| q.total_degree()));
        text.push_str(&match &quotient {
            Some(q) => format!("\ndivisible by the reference, quotient {q} of degree {}", q.total_degree().unwrap_or(0)),
            None => "\nnot divisible by the reference".to_string(),
        });
    }
    Ok(Report { json, text })
}

fn series_json(coeffs: &[augalex::algebra::Rational]) -> Vec<String> {
    coeffs.iter().map(|c| c.to_string()).collect()
}

pub fn novikov(path: &Path, order: usize, orbits: Option<&Path>) -> Result<Report, CliError> {
    if order == 0 {
        return Err(CliError::Usage("--order must be positive".into()));
    }
    let nov = NovikovData::from_json(&read(path)?)?;
    let verdicts = check_instance(&nov, order)?;
    let mut json = json!({
        "r": nov.r(),
        "s": nov.s(),
        "order": order,
        "factorization": verdicts.factorization,
        "det_tr": verdicts.det_tr,
        "det_at_zero_matches_det_d0": verdicts.det_at_zero,
        "zeta_traces": series_json(zeta_from_traces(&nov.psi_f, order)?.coeffs()),
    });
    if let Some(p) = orbits {
        let orbits = parse_orbits(&read(p)?)?;
        json["zeta_orbits"] = json!(series_json(zeta_from_orbits(&orbits, order)?.coeffs()));
    }
    let verdict_text = format!(
        "factorization {}, det-tr identity {}, det D(0) = det d0 {}",
        verdicts.factorization, verdicts.det_tr, verdicts.det_at_zero
    );
    match novikov_alexander(&nov) {
        Ok(out) => {
            json["det"] = json!(out.det.to_string());
            json["det_at_zero"] = json!(out.det_at_zero.to_string());
            json["report"] = out.report.to_json();
            json["delta"] = json!(out.report.delta.to_string());
            Ok(Report { text: format!("det D = {}, delta = {}\n{verdict_text}", out.det, out.report.delta), json })
        }
        Err(e) => {
            let err = CliError::from(e);
            json["error"] = json!(err.to_string());
            Err(CliError::Rejected { code: err.exit_code(), message: err.to_string(), report: json })
        }
    }
}

pub fn burau(src: &Source) -> Result<Report, CliError> {
    let braid = load_braid(src)?;
    let report = alexander_from_braid(&braid)?;
    let matrix = if braid.strands >= 2 {
        let m = reduced_burau(&braid)?;
        json!((0..m.rows()).map(|i| m.row(i).iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>())
    } else {
        json!([])
    };
    Ok(Report {
        text: format!("delta = {} (Burau, {} strands)", report.delta, braid.strands),
        json: json!({
            "strands": braid.strands,
            "word": braid.word,
            "burau": matrix,
            "report": report.to_json(),
            "delta": report.delta.to_string(),
        }),
    })
}

/// F-route, Aug-route and Burau on one built-in knot; all must agree.
pub fn check(knot: &str, budget: &Budget) -> Result<Report, CliError> {
    let dga = builtin_dga(knot)?;
    let f_route = alexander_from_dga(&dga, None, budget, Execution::Parallel)?.delta().clone();
    let aug_route = alexander_from_augpoly(&builtin_augpoly(knot)?)?.delta;
    let burau_route = alexander_from_braid(&builtin_braid(knot)?)?.delta;
    let deltas: BTreeMap<&str, String> = [("F-route", &f_route), ("Aug-route", &aug_route), ("Burau", &burau_route)]
        .into_iter()
        .map(|(k, v): (&str, &UniPoly)| (k, v.to_string()))
        .collect();
    let agree = f_route == aug_route && aug_route == burau_route;
    let json = json!({ "knot": knot, "deltas": deltas, "agree": agree, "delta": agree.then(|| f_route.to_string()) });
    if !agree {
        return Err(CliError::Rejected { code: EXIT_INAPPLICABLE, message: "routes disagree".into(), report: json });
    }
    Ok(Report { text: format!("{knot}: F-route, Aug-route and Burau agree on delta = {f_route}"), json })
}
