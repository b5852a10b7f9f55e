use mirrorkit::fukaya_torus::{
    associativity_residual, intersection_basis, m2_constants, theta_sum, Geodesic, HomBasis, ThetaSum,
};
use mirrorkit::rational::{parse, rat, to_canonical};
use serde_json::json;

use crate::report::{selftest_report, table, Check, Report};
use crate::{compute, CliError, FukayaArgs};

fn three<T>(list: &str, what: &str, parse_one: impl Fn(&str) -> Option<T>) -> Result<[T; 3], CliError> {
    let items = list
        .split(',')
        .map(|s| parse_one(s.trim()).ok_or_else(|| CliError::Usage(format!("cannot parse {what} {s:?}"))))
        .collect::<Result<Vec<T>, _>>()?;
    items.try_into().map_err(|v: Vec<T>| CliError::Usage(format!("expected 3 {what}s, got {}", v.len())))
}

fn slope(s: &str) -> Option<(i64, i64)> {
    let (p, q) = s.split_once('/')?;
    Some((p.trim().parse().ok()?, q.trim().parse().ok()?))
}

fn basis_text(label: &str, h: &HomBasis) -> String {
    let points: Vec<String> = h
        .points
        .iter()
        .zip(&h.gradings)
        .enumerate()
        .map(|(i, (p, g))| format!("  {i}: ({}, {}) degree {g}", to_canonical(&p[0]), to_canonical(&p[1])))
        .collect();
    format!("{label}: {} point(s)\n{}\n", h.len(), points.join("\n"))
}

pub fn run(args: &FukayaArgs) -> Result<Report, CliError> {
    if !(args.area.is_finite() && args.area > 0.0) {
        return Err(CliError::Usage("--area must be positive".into()));
    }
    if !(args.tol.is_finite() && args.tol > 0.0) {
        return Err(CliError::Usage("--tol must be positive".into()));
    }
    let slopes = three(&args.slopes, "slope", slope)?;
    let offsets = three(&args.offsets, "offset", |s| parse(s).ok())?;
    let lifts = three(&args.lifts, "lift index", |s| s.parse::<i64>().ok())?;
    let mut lines = Vec::new();
    for i in 0..3 {
        lines.push(Geodesic::new(slopes[i], offsets[i].clone(), lifts[i]).map_err(|e| CliError::Usage(e.to_string()))?);
    }
    let tensor = m2_constants(&lines[0], &lines[1], &lines[2], args.area, args.tol)
        .map_err(|e| CliError::Usage(e.to_string()))?;

    let mut text = String::new();
    for (label, h) in [("Hom(L1, L2)", &tensor.hom12), ("Hom(L2, L3)", &tensor.hom23), ("Hom(L1, L3)", &tensor.hom13)] {
        text += &basis_text(label, h);
    }
    let rows: Vec<Vec<String>> = tensor
        .entries
        .iter()
        .map(|(&(i, j, k), e)| {
            vec![
                format!("{i},{j}"),
                k.to_string(),
                format!("{:.6}", e.theta.a),
                format!("{:.6}", e.theta.b),
                format!("{:+}", e.sign),
                format!("{:.15e}", e.coefficient()),
                format!("{:.1e}", e.bound()),
            ]
        })
        .collect();
    text += &table(&["input", "output", "a", "b", "sign", "coefficient", "bound"], &rows);
    if rows.is_empty() {
        text += "m2 vanishes: no holomorphic triangles in this orientation\n";
    }
    let json = json!({
        "lines": lines.iter().map(|l| json!({
            "slope": [l.slope().0, l.slope().1],
            "offset": to_canonical(l.offset()),
            "lift_index": l.lift_index(),
        })).collect::<Vec<_>>(),
        "area": args.area,
        "tol": args.tol,
        "m2": serde_json::to_value(&tensor).map_err(compute)?,
    });
    Ok(Report::new(json, text))
}

pub fn selftest() -> Report {
    let mut checks = Vec::new();
    let slopes: Vec<(i64, i64)> = vec![(1, 0), (0, 1), (1, 1), (1, -1), (2, 1), (1, 3), (3, -2)];
    let mut counts_ok = true;
    for &a in &slopes {
        for &b in &slopes {
            let det = (a.0 * b.1 - a.1 * b.0).unsigned_abs() as usize;
            if det == 0 {
                continue;
            }
            let l1 = Geodesic::new(a, rat(1, 3), 0).expect("primitive");
            let l2 = Geodesic::new(b, rat(1, 5), 0).expect("primitive");
            counts_ok &= intersection_basis(&l1, &l2).is_ok_and(|h| h.len() == det);
        }
    }
    checks.push(Check::new("intersection counts", counts_ok, "|L1 ∩ L2| = |det| over a grid of slopes"));

    let lines = [((1, 0), rat(1, 7)), ((0, 1), rat(1, 3)), ((1, 1), rat(1, 2)), ((1, -1), rat(1, 5))]
        .map(|(s, c)| Geodesic::new(s, c, 0).expect("primitive"));
    let mut worst = 0.0f64;
    let mut nontrivial = 0;
    let mut failure = None;
    for scale in [1.0, 10.0] {
        for order in permutations() {
            match associativity_residual(order.map(|i| &lines[i]), scale, 1e-12) {
                Ok(r) => {
                    worst = worst.max(r.max_residual);
                    nontrivial += usize::from(!r.is_trivial());
                }
                Err(e) => failure = Some(e.to_string()),
            }
        }
    }
    let ok = failure.is_none() && nontrivial > 0 && worst < 1e-9;
    let detail = failure.unwrap_or_else(|| format!("48 orderings, {nontrivial} nontrivial, max residual {worst:.1e}"));
    checks.push(Check::new("associativity", ok, detail));

    let shift_ok = [(0.3, 0.1), (1.7, -0.4), (3.0, 2.2)].iter().all(|&(a, b)| {
        let x = theta_sum(ThetaSum::new(a, b), 1e-12);
        let y = theta_sum(ThetaSum::new(a, b + a), 1e-12);
        (x.value - y.value).abs() <= x.bound + y.bound
    });
    checks.push(Check::new("theta periodicity", shift_ok, "b -> b + a leaves the sum unchanged within bounds"));
    selftest_report("fukaya-torus", checks)
}

fn permutations() -> Vec<[usize; 4]> {
    (0..256usize).map(|n| [n % 4, n / 4 % 4, n / 16 % 4, n / 64]).filter(|p| (0..4).all(|i| p.contains(&i))).collect()
}
