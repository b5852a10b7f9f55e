use mirrorkit::mirror_quintic::{am_forward, am_inversion, am_toy_model, mirror_map, quintic_instantons};
use mirrorkit::picard_fuchs::{frobenius_family, quintic_operator};
use mirrorkit::rational::{factorial, int, to_canonical};
use mirrorkit::Rational;
use serde_json::json;

use crate::report::{selftest_report, table, Check, Report};
use crate::{compute, CliError};

pub fn run(dmax: usize) -> Result<Report, CliError> {
    let numbers = quintic_instantons(dmax).map_err(compute)?;
    let rows: Vec<Vec<String>> = (0..dmax)
        .map(|i| vec![(i + 1).to_string(), to_canonical(&numbers.n_virt[i]), to_canonical(&numbers.n_int[i])])
        .collect();
    let json = (0..dmax).map(|i| json!({"d": i + 1, "n_virt": rows[i][1], "n_int": rows[i][2]})).collect();
    let mut report = Report::new(json, table(&["d", "n_virt", "n_int"], &rows));
    report.ok = numbers.all_positive_integers();
    Ok(report)
}

pub fn selftest() -> Report {
    let mut checks = Vec::new();
    match frobenius_family(&quintic_operator(), 10) {
        Ok(fam) => {
            let psi0 = fam.psi[0].part(0);
            let hyper = (0..=10u64).all(|n| {
                let want = factorial(5 * n) / factorial(n).pow(5);
                *psi0.coeff(n as usize) == Rational::from_integer(want)
            });
            checks.push(Check::new("holomorphic period", hyper, "ψ0 = Σ (5n)!/(n!)^5 z^n through z^10"));
            match mirror_map(&fam) {
                Ok(map) => {
                    let q = map.q_series();
                    let ok = map.non_integral_degrees(10).is_empty() && *q.coeff(2) == int(770);
                    checks.push(Check::new(
                        "mirror map",
                        ok,
                        format!("integral through z^10, [z^2]q = {}", q.coeff(2)),
                    ));
                }
                Err(e) => checks.push(Check::new("mirror map", false, e.to_string())),
            }
        }
        Err(e) => checks.push(Check::new("holomorphic period", false, e.to_string())),
    }
    match quintic_instantons(10) {
        Ok(n) => {
            let known = [int(2875), int(609250), int(317206375)];
            let ok = n.all_positive_integers() && n.n_int[..3] == known;
            checks.push(Check::new(
                "instanton numbers",
                ok,
                format!("N_1..N_3 = {}, {}, {}; N_1..N_10 positive integers", n.n_int[0], n.n_int[1], n.n_int[2]),
            ));
            let round = am_forward(&am_inversion(&n.n_virt)) == n.n_virt;
            checks.push(Check::new("multiple covers", round, "inversion and forward sum are mutually inverse"));
        }
        Err(e) => checks.push(Check::new("instanton numbers", false, e.to_string())),
    }
    match am_toy_model(20) {
        Ok(r) => {
            checks.push(Check::new("trilogarithm", r.passed(), format!("mismatches {:?} through z^20", r.mismatches)))
        }
        Err(e) => checks.push(Check::new("trilogarithm", false, e.to_string())),
    }
    selftest_report("quintic", checks)
}
