use std::collections::BTreeMap;

use mirrorkit::hurwitz::{
    connected_counts, connected_series, covers_bruteforce, covers_disconnected_weighted,
    eisenstein as eisenstein_series, quasimodular_fit, tuple_count, Connectivity, FitError, HurwitzSeries,
    QuasiModularForm, BRUTEFORCE_BUDGET,
};
use mirrorkit::rational::{int, rat, to_canonical};
use mirrorkit::TruncatedSeries;
use serde_json::json;

use crate::report::{selftest_report, table, Check, Report};
use crate::{compute, CliError, HurwitzArgs};

fn form_text(form: &QuasiModularForm) -> String {
    let terms: Vec<String> = form
        .coeffs
        .iter()
        .rev()
        .map(|(m, c)| format!("({}) {}", to_canonical(c), QuasiModularForm::monomial_name(*m)))
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

pub fn run(args: &HurwitzArgs, threads: usize) -> Result<Report, CliError> {
    let series = connected_series(args.genus, args.dmax).map_err(compute)?;
    let b = 2 * args.genus - 2;
    let mut json = json!({
        "g": args.genus,
        "coeffs": series.coeffs.iter().map(to_canonical).collect::<Vec<_>>(),
    });
    let mut headers = vec!["d", "count"];
    let mut rows: Vec<Vec<String>> =
        series.coeffs.iter().enumerate().map(|(i, c)| vec![(i + 1).to_string(), to_canonical(c)]).collect();
    let mut ok = true;
    let mut notes = String::new();

    if args.bruteforce {
        headers.push("bruteforce");
        let mut brute = Vec::new();
        for d in 1..=args.dmax {
            if tuple_count(d, b) > BRUTEFORCE_BUDGET {
                brute.push(None);
                continue;
            }
            brute.push(Some(covers_bruteforce(d, b, Connectivity::Connected, threads).map_err(compute)?));
        }
        let mismatched: Vec<usize> = brute
            .iter()
            .zip(&series.coeffs)
            .enumerate()
            .filter(|(_, (x, c))| x.as_ref().is_some_and(|x| x != *c))
            .map(|(i, _)| i + 1)
            .collect();
        ok &= mismatched.is_empty();
        for (row, x) in rows.iter_mut().zip(&brute) {
            row.push(x.as_ref().map_or_else(|| "-".into(), to_canonical));
        }
        let skipped = brute.iter().filter(|x| x.is_none()).count();
        if skipped > 0 {
            notes +=
                &format!("bruteforce skipped {skipped} degree(s) above the budget of {BRUTEFORCE_BUDGET} tuples\n");
        }
        if !mismatched.is_empty() {
            notes += &format!("bruteforce disagrees at d = {mismatched:?}\n");
        }
        json["bruteforce"] = brute.iter().map(|x| x.as_ref().map(to_canonical)).collect();
        json["bruteforce_agrees"] = mismatched.is_empty().into();
    }

    if args.fit {
        let form = quasimodular_fit(&series).map_err(compute)?;
        notes += &format!("F_{} = {}\n", args.genus, form_text(&form));
        json["fit"] = serde_json::to_value(&form).expect("form serializes");
    }

    let mut report = Report::new(json, table(&headers, &rows) + &notes);
    report.ok = ok;
    Ok(report)
}

pub fn eisenstein(k: u32, order: usize) -> Result<Report, CliError> {
    let e = eisenstein_series(k, order).map_err(compute)?;
    let coeffs: Vec<String> = e.coeffs().iter().map(to_canonical).collect();
    Ok(Report::new(json!({"k": k, "coeffs": coeffs}), coeffs.join(", ") + "\n"))
}

fn sigma(n: usize, k: u32) -> i64 {
    (1..=n).filter(|d| n.is_multiple_of(*d)).map(|d| (d as i64).pow(k)).sum()
}

/// `θE_2 = (E_2² − E_4)/12`, `θE_4 = (E_2E_4 − E_6)/3`, `θE_6 = (E_2E_6 − E_4²)/2`.
fn ramanujan(e2: &TruncatedSeries, e4: &TruncatedSeries, e6: &TruncatedSeries) -> bool {
    e2.theta() == (&(e2 * e2) - e4).scale(&rat(1, 12))
        && e4.theta() == (&(e2 * e4) - e6).scale(&rat(1, 3))
        && e6.theta() == (&(e2 * e6) - &(e4 * e4)).scale(&rat(1, 2))
}

pub fn eisenstein_selftest() -> Report {
    let order = 30;
    let mut checks = Vec::new();
    let series: BTreeMap<u32, TruncatedSeries> =
        [2, 4, 6].into_iter().filter_map(|k| eisenstein_series(k, order).ok().map(|e| (k, e))).collect();
    if series.len() != 3 {
        return selftest_report("eisenstein", vec![Check::new("construction", false, "E2, E4 or E6 unavailable")]);
    }
    for (k, scale) in [(2, -24), (4, 240), (6, -504)] {
        let e = &series[&k];
        let ok = *e.coeff(0) == int(1) && (1..=order).all(|n| *e.coeff(n) == int(scale * sigma(n, k - 1)));
        checks.push(Check::new(&format!("E{k}"), ok, format!("1 + {scale} Σ σ_{}(n) q^n through q^{order}", k - 1)));
    }
    checks.push(Check::new("Ramanujan", ramanujan(&series[&2], &series[&4], &series[&6]), "θE2, θE4, θE6 identities"));
    selftest_report("eisenstein", checks)
}

pub fn selftest(threads: usize) -> Report {
    let mut checks = Vec::new();
    let mut agree = true;
    let mut compared = 0;
    for b in [2, 4] {
        let formula = connected_counts(b, 4);
        for d in 1..=4 {
            let one = covers_bruteforce(d, b, Connectivity::Connected, 1);
            let many = covers_bruteforce(d, b, Connectivity::Connected, threads.max(2));
            agree &= one.as_ref().ok() == Some(&formula[d as usize - 1]) && one == many;
            compared += 1;
        }
    }
    checks.push(Check::new(
        "bruteforce",
        agree,
        format!("{compared} (d, b) pairs match the character formula for 1 and several workers"),
    ));
    checks.push(Check::new("disconnected", covers_disconnected_weighted(2, 2) == int(2), "d = 2, b = 2 gives 2"));
    match connected_series(2, 10)
        .map_err(|e| e.to_string())
        .and_then(|s| quasimodular_fit(&s).map(|f| (s, f)).map_err(|e| e.to_string()))
    {
        Ok((series, form)) => {
            let want =
                BTreeMap::from([([3, 0, 0], rat(1, 5184)), ([1, 1, 0], rat(-1, 8640)), ([0, 0, 1], rat(-1, 12960))]);
            checks.push(Check::new("genus 2 fit", form.coeffs == want, form_text(&form)));
            let mut bad = series.coeffs.clone();
            bad[6] += int(1);
            let rejected =
                matches!(quasimodular_fit(&HurwitzSeries { genus: 2, coeffs: bad }), Err(FitError::NoSolution { .. }));
            checks.push(Check::new("perturbed fit", rejected, "adding 1 at q^7 leaves no quasimodular solution"));
        }
        Err(e) => checks.push(Check::new("genus 2 fit", false, e)),
    }
    selftest_report("hurwitz", checks)
}
