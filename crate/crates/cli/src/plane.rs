use mirrorkit::quantum_p2::{all_wdvv_residuals, counts_from_associativity, plane_curve_recursion, PlanePotential};
use mirrorkit::rational::{big, int};
use mirrorkit::Rational;
use serde_json::json;

use crate::report::{selftest_report, table, Check, Report};
use crate::CliError;

fn as_rationals<T: Clone + Into<Rational>>(counts: &[T]) -> Vec<Rational> {
    counts.iter().cloned().map(Into::into).collect()
}

pub fn run(dmax: usize, residual: bool) -> Result<Report, CliError> {
    let counts = plane_curve_recursion(dmax);
    let rows: Vec<Vec<String>> =
        counts.iter().enumerate().map(|(i, n)| vec![(i + 1).to_string(), n.to_string()]).collect();
    let json_rows: serde_json::Value =
        counts.iter().enumerate().map(|(i, n)| json!({"d": i + 1, "N_d": n.to_string()})).collect();
    let mut text = table(&["d", "N_d"], &rows);
    if !residual {
        return Ok(Report::new(json_rows, text));
    }
    let residuals = all_wdvv_residuals(&PlanePotential::new(as_rationals(&counts)));
    if residuals.is_empty() {
        text += &format!("all 81 associativity residuals vanish through q^{dmax}\n");
    }
    for (idx, poly) in &residuals {
        text += &format!("residual {idx:?}: {poly}\n");
    }
    let json = json!({
        "rows": json_rows,
        "residuals": residuals
            .iter()
            .map(|(idx, poly)| json!({"indices": idx, "polynomial": poly.to_string()}))
            .collect::<Vec<_>>(),
    });
    let mut report = Report::new(json, text);
    report.ok = residuals.is_empty();
    Ok(report)
}

pub fn selftest() -> Report {
    let dmax = 6;
    let counts = plane_curve_recursion(dmax);
    let mut checks = vec![Check::new(
        "small degrees",
        counts[..4].iter().map(|n| n.to_string()).eq(["1", "1", "12", "620"]),
        "N_1..N_4 = 1, 1, 12, 620",
    )];
    let from_wdvv = counts_from_associativity(dmax);
    let agree = from_wdvv.as_ref().is_ok_and(|v| v.iter().zip(&counts).all(|(a, b)| *a == big(b.clone())));
    checks.push(Check::new(
        "associativity solve",
        agree,
        format!("degree-by-degree solve matches the recursion through d = {dmax}"),
    ));
    let residuals = all_wdvv_residuals(&PlanePotential::new(as_rationals(&counts)));
    checks.push(Check::new("residuals", residuals.is_empty(), format!("{} nonzero of 81", residuals.len())));
    let detected = (0..dmax)
        .filter(|&d| {
            let mut bumped = as_rationals(&counts);
            bumped[d] += int(1);
            !all_wdvv_residuals(&PlanePotential::new(bumped)).is_empty()
        })
        .count();
    checks.push(Check::new(
        "perturbations",
        detected == dmax,
        format!("{detected}/{dmax} single-count perturbations break associativity"),
    ));
    selftest_report("plane-curves", checks)
}
