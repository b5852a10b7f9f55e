use std::collections::BTreeMap;
use std::path::Path;

use mirrorkit::ainfty::{
    coderivation_square, cohomology_category, fixtures, mc_check, stasheff_check, twisted_complex_category,
    unit_violations, AInftyCategory, AInftyDocument, AInftyError, Vector, DEFAULT_ARITY,
};
use mirrorkit::rational::to_canonical;
use serde_json::{json, Value};

use crate::report::{selftest_report, Check, Report};
use crate::CliError;

/// Failures listed individually before the rest are only counted.
const LISTED: usize = 20;

fn vector_json(cat: &AInftyCategory, v: &Vector) -> Value {
    v.iter()
        .map(|(&g, c)| (cat.generator(g).name.clone(), Value::from(to_canonical(c))))
        .collect::<serde_json::Map<_, _>>()
        .into()
}

struct Section {
    name: String,
    pass: bool,
    summary: String,
    json: Value,
}

fn category_sections(cat: &AInftyCategory, arity: usize, coderivation_length: usize, label: &str) -> Vec<Section> {
    let residuals = stasheff_check(cat, arity);
    let stasheff = Section {
        name: format!("{label}stasheff"),
        pass: residuals.is_empty(),
        summary: format!("{} failing input tuples up to arity {arity}", residuals.len()),
        json: json!({
            "pass": residuals.is_empty(),
            "arity": arity,
            "failures": residuals.len(),
            "examples": residuals.iter().take(LISTED).map(|r| json!({
                "inputs": cat.names(&r.inputs),
                "value": vector_json(cat, &r.value),
            })).collect::<Vec<_>>(),
        }),
    };
    let bar = coderivation_square(cat, coderivation_length);
    let coderivation = Section {
        name: format!("{label}coderivation"),
        pass: bar.is_zero(),
        summary: format!("D² vanishes on words of length <= {}: {}", bar.length, bar.is_zero()),
        json: json!({
            "pass": bar.is_zero(),
            "length": bar.length,
            "failing_words": bar.full_support.len(),
            "examples": bar.full_support.iter().take(LISTED).map(|w| cat.names(w)).collect::<Vec<_>>(),
        }),
    };
    let units = unit_violations(cat, arity);
    let unit_section = Section {
        name: format!("{label}units"),
        pass: units.is_empty(),
        summary: format!("{} strict-unit violations", units.len()),
        json: json!({"pass": units.is_empty(), "violations": units.iter().take(LISTED).collect::<Vec<_>>()}),
    };
    let cohomology = match cohomology_category(cat) {
        Ok(h) => {
            let laws = h.law_violations();
            let dims: BTreeMap<String, usize> =
                h.homs.keys().map(|&(x, y)| (format!("{}->{}", h.objects[x], h.objects[y]), h.hom_dim(x, y))).collect();
            Section {
                name: format!("{label}cohomology"),
                pass: laws.is_empty(),
                summary: format!("H0 dims {dims:?}, {} law violations", laws.len()),
                json: json!({"pass": laws.is_empty(), "dims": dims, "violations": laws}),
            }
        }
        Err(e) => Section {
            name: format!("{label}cohomology"),
            pass: false,
            summary: e.to_string(),
            json: json!({"pass": false, "error": e.to_string()}),
        },
    };
    vec![stasheff, coderivation, unit_section, cohomology]
}

fn evaluate(doc: &AInftyDocument, arity: usize) -> Result<(Vec<Section>, Value), AInftyError> {
    let cat = doc.to_category()?;
    let mut sections = category_sections(&cat, arity, arity, "");
    let complexes = doc.twisted(&cat)?;
    let mut twisted_json = Vec::new();
    for t in &complexes {
        let mc = mc_check(t, &cat);
        twisted_json.push(json!({
            "name": t.name(),
            "maurer_cartan": mc.is_empty(),
            "residual": mc.iter().map(|(&(i, j), v)| json!({"from": i, "to": j, "value": vector_json(&cat, v)})).collect::<Vec<_>>(),
        }));
        sections.push(Section {
            name: format!("maurer-cartan {}", t.name()),
            pass: mc.is_empty(),
            summary: format!("{} nonzero components", mc.len()),
            json: Value::Null,
        });
    }
    if !complexes.is_empty() && sections.iter().all(|s| s.pass) {
        let tw = twisted_complex_category(&cat, &complexes)?;
        // Words in Tw grow quickly; the Stasheff check covers the full arity.
        sections.extend(category_sections(&tw, arity, arity.min(3), "twisted "));
    }
    let mut json = json!({
        "objects": cat.objects(),
        "generators": cat.generators().len(),
        "pass": sections.iter().all(|s| s.pass),
        "twisted_complexes": twisted_json,
    });
    for s in sections.iter().filter(|s| !s.json.is_null()) {
        json[s.name.replace(' ', "_")] = s.json.clone();
    }
    Ok((sections, json))
}

pub fn check(path: &Path, arity: usize) -> Result<Report, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    let doc = AInftyDocument::from_json(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    let (sections, json) = evaluate(&doc, arity).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    let mut out = String::new();
    for s in &sections {
        out += &format!("{}  {}: {}\n", if s.pass { "PASS" } else { "FAIL" }, s.name, s.summary);
    }
    let mut report = Report::new(json, out);
    report.ok = sections.iter().all(|s| s.pass);
    Ok(report)
}

pub fn selftest() -> Report {
    let mut checks = Vec::new();
    for (name, doc) in fixtures::passing() {
        match evaluate(&doc, DEFAULT_ARITY) {
            Ok((sections, _)) => {
                let failed: Vec<&str> = sections.iter().filter(|s| !s.pass).map(|s| s.name.as_str()).collect();
                checks.push(Check::new(
                    name,
                    failed.is_empty(),
                    format!("{} checks, failing {failed:?}", sections.len()),
                ));
            }
            Err(e) => checks.push(Check::new(name, false, e.to_string())),
        }
    }
    for (name, doc) in fixtures::failing() {
        let caught = match evaluate(&doc, DEFAULT_ARITY) {
            Ok((sections, _)) => sections.iter().any(|s| !s.pass),
            Err(AInftyError::MaurerCartanViolated { .. }) => true,
            Err(_) => false,
        };
        checks.push(Check::new(name, caught, "negative control detected"));
    }
    selftest_report("ainfty", checks)
}
