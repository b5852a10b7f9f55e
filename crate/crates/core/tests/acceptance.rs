//! Acceptance criteria 1-10, one PASS/FAIL line each. Exits nonzero when any
//! criterion fails. Oracles live here and share no code paths with the
//! library beyond its public entry points.

use std::collections::BTreeMap;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use mirrorkit::ainfty::{
    coderivation_square, cohomology_category, fixtures, stasheff_check, twisted_complex_category, unit_violations,
    AInftyCategory, AInftyDocument, Generator, Vector, DEFAULT_ARITY,
};
use mirrorkit::fukaya_torus::{
    associativity_residual, intersection_basis, maslov_index, theta_sum, Geodesic, ThetaSum,
};
use mirrorkit::hurwitz::{
    connected_counts, connected_series, covers_bruteforce, covers_disconnected_weighted, eisenstein, quasimodular_fit,
    Connectivity, FitError, HurwitzSeries,
};
use mirrorkit::linalg::Matrix;
use mirrorkit::mirror_quintic::{am_toy_model, mirror_map, quintic_instantons, yukawa_series};
use mirrorkit::picard_fuchs::{frobenius_family, quintic_operator, verify_annihilation};
use mirrorkit::quantum_p2::{all_wdvv_residuals, plane_curve_recursion, PlanePotential};
use mirrorkit::rational::{int, rat};
use mirrorkit::{LogSeries, Rational};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 0x5eed_2875;

/// Pinned tolerances.
const ASSOCIATIVITY_TOL: f64 = 1e-9;
const THETA_TOL: f64 = 1e-12;
const PLANE_CURVE_BUDGET: Duration = Duration::from_secs(60);

type Check = Result<String, String>;
type Criterion = fn() -> Check;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn factorial(n: u64) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

// ---------------------------------------------------------------- 1

/// `(θ⁴ − 5z(5θ+1)(5θ+2)(5θ+3)(5θ+4)) ψ` on a dictionary `(n, k) -> [z^n L^k]`.
fn apply_quintic(psi: &BTreeMap<(usize, usize), Rational>) -> BTreeMap<(usize, usize), Rational> {
    let theta = |s: &BTreeMap<(usize, usize), Rational>| {
        let mut out: BTreeMap<(usize, usize), Rational> = BTreeMap::new();
        for (&(n, k), c) in s {
            *out.entry((n, k)).or_insert_with(Rational::zero) += c * int(n as i64);
            if k > 0 {
                *out.entry((n, k - 1)).or_insert_with(Rational::zero) += c * int(k as i64);
            }
        }
        out
    };
    let affine = |s: &BTreeMap<(usize, usize), Rational>, b: i64| {
        let t = theta(s);
        let mut out: BTreeMap<(usize, usize), Rational> = BTreeMap::new();
        for (key, c) in t {
            *out.entry(key).or_insert_with(Rational::zero) += c * int(5);
        }
        for (&key, c) in s {
            *out.entry(key).or_insert_with(Rational::zero) += c * int(b);
        }
        out
    };
    let mut left = psi.clone();
    for _ in 0..4 {
        left = theta(&left);
    }
    let mut right = psi.clone();
    for b in 1..=4 {
        right = affine(&right, b);
    }
    for (&(n, k), c) in &right {
        *left.entry((n + 1, k)).or_insert_with(Rational::zero) -= c * int(5);
    }
    left.retain(|_, c| !c.is_zero());
    left
}

fn as_dict(s: &LogSeries) -> BTreeMap<(usize, usize), Rational> {
    let mut out = BTreeMap::new();
    for (k, part) in s.parts().iter().enumerate() {
        for (n, c) in part.coeffs().iter().enumerate() {
            if !c.is_zero() {
                out.insert((n, k), c.clone());
            }
        }
    }
    out
}

fn criterion_1() -> Check {
    let fam = frobenius_family(&quintic_operator(), 12).map_err(|e| e.to_string())?;
    let psi0 = fam.psi[0].as_series().ok_or("ψ0 has log terms")?;
    for n in 0..=12u64 {
        let want = factorial(5 * n) / factorial(n).pow(5);
        ensure(*psi0.coeff(n as usize) == Rational::from_integer(want), format!("ψ0 coefficient {n}"))?;
    }
    let fam = frobenius_family(&quintic_operator(), 10).map_err(|e| e.to_string())?;
    ensure(fam.psi.len() == 4, "expected four solutions")?;
    for (i, psi) in fam.psi.iter().enumerate() {
        ensure(verify_annihilation(&quintic_operator(), psi).is_zero(), format!("library residual of ψ{i}"))?;
        let residual = apply_quintic(&as_dict(psi));
        ensure(residual.keys().all(|&(n, _)| n > 10), format!("independent residual of ψ{i} below z^11"))?;
    }
    Ok("ψ0 = (5n)!/(n!)^5 for n <= 12; L ψ0..ψ3 = 0 through z^10 (library and direct θ-expansion)".into())
}

// ---------------------------------------------------------------- 2

fn criterion_2() -> Check {
    let fam = frobenius_family(&quintic_operator(), 10).map_err(|e| e.to_string())?;
    let map = mirror_map(&fam).map_err(|e| e.to_string())?;
    let q = map.q_series();
    let bad = map.non_integral_degrees(10);
    ensure(bad.is_empty(), format!("non-integral degrees {bad:?}"))?;
    ensure(q.coeffs().iter().take(11).all(|c| c.is_integer()), "integrality by direct inspection")?;
    ensure(*q.coeff(2) == int(770), format!("[z^2] q = {}", q.coeff(2)))?;
    Ok(format!("q(z) integral through z^10; [z^2]q = 770, [z^3]q = {}", q.coeff(3)))
}

// ---------------------------------------------------------------- 3

/// Sum of `x` and `y` exponents is the degree; the symmetric polynomial is
/// given as a map from `(i, j)` to the coefficient of `x^i y^j`.
fn to_elementary(mut p: BTreeMap<(u32, u32), BigInt>) -> BTreeMap<(u32, u32), BigInt> {
    // Result keyed by (power of e1, power of e2).
    let mut out = BTreeMap::new();
    while let Some((&(i, j), c)) = p.iter().rev().find(|(_, c)| !c.is_zero()) {
        let c = c.clone();
        assert!(i >= j, "symmetric leading term has i >= j");
        // e1^(i−j) e2^j has leading monomial x^i y^j.
        let mut term: BTreeMap<(u32, u32), BigInt> = BTreeMap::from([((j, j), BigInt::one())]);
        for _ in 0..i - j {
            let mut next = BTreeMap::new();
            for (&(a, b), v) in &term {
                *next.entry((a + 1, b)).or_insert_with(BigInt::zero) += v;
                *next.entry((a, b + 1)).or_insert_with(BigInt::zero) += v;
            }
            term = next;
        }
        for (k, v) in term {
            *p.entry(k).or_insert_with(BigInt::zero) -= &c * v;
        }
        p.retain(|_, v| !v.is_zero());
        *out.entry((i - j, j)).or_insert_with(BigInt::zero) += c;
    }
    out
}

/// Schubert classes on `G(2, 5)` are partitions in a 2×3 box.
fn schubert_integral(sigma1: u32, sigma11: u32) -> BigInt {
    let mut classes: BTreeMap<(u32, u32), BigInt> = BTreeMap::from([((0, 0), BigInt::one())]);
    for _ in 0..sigma1 {
        let mut next = BTreeMap::new();
        for (&(a, b), c) in &classes {
            if a < 3 {
                *next.entry((a + 1, b)).or_insert_with(BigInt::zero) += c;
            }
            if b < a {
                *next.entry((a, b + 1)).or_insert_with(BigInt::zero) += c;
            }
        }
        classes = next;
    }
    for _ in 0..sigma11 {
        classes = classes.into_iter().filter(|&((a, _), _)| a < 3).map(|((a, b), c)| ((a + 1, b + 1), c)).collect();
    }
    classes.get(&(3, 3)).cloned().unwrap_or_default()
}

/// Lines on a quintic threefold: `∫_{G(2,5)} c_6(Sym⁵ S*)`.
fn lines_on_quintic() -> BigInt {
    let mut poly: BTreeMap<(u32, u32), BigInt> = BTreeMap::from([((0, 0), BigInt::one())]);
    for a in 0..=5u32 {
        let mut next = BTreeMap::new();
        for (&(i, j), c) in &poly {
            *next.entry((i + 1, j)).or_insert_with(BigInt::zero) += c * BigInt::from(a);
            *next.entry((i, j + 1)).or_insert_with(BigInt::zero) += c * BigInt::from(5 - a);
        }
        poly = next;
    }
    poly.retain(|_, c| !c.is_zero());
    to_elementary(poly).into_iter().map(|((e1, e2), c)| c * schubert_integral(e1, e2)).sum()
}

fn criterion_3() -> Check {
    let fam = frobenius_family(&quintic_operator(), 10).map_err(|e| e.to_string())?;
    let map = mirror_map(&fam).map_err(|e| e.to_string())?;
    let k = yukawa_series(&fam, &map).map_err(|e| e.to_string())?;
    ensure(k.coeff(0, 0) == int(5), format!("K constant term {}", k.coeff(0, 0)))?;
    ensure(k.parts().iter().skip(1).all(|p| p.is_zero()), "log q parts survive")?;
    let inst = quintic_instantons(10).map_err(|e| e.to_string())?;
    ensure(inst.all_positive_integers(), "some N_d is not a positive integer")?;
    let schubert = lines_on_quintic();
    ensure(schubert == BigInt::from(2875), format!("Schubert oracle gave {schubert}"))?;
    ensure(inst.n_int[0] == Rational::from_integer(schubert), "N_1 differs from the Schubert count")?;
    ensure(inst.n_int[1] == int(609250), "N_2")?;
    Ok(format!("K_0 = 5, no log terms, N_1..N_10 positive integers, N_1 = 2875 = Schubert, N_10 = {}", inst.n_int[9]))
}

// ---------------------------------------------------------------- 4

fn criterion_4() -> Check {
    let report = am_toy_model(20).map_err(|e| e.to_string())?;
    ensure(report.passed(), format!("mismatch at {:?}", report.mismatches))?;
    for n in 1..=20i64 {
        ensure(*report.expected.coeff(n as usize) == rat(1, n * n * n), format!("Li3 coefficient {n}"))?;
    }
    ensure(report.expected.coeff(0).is_zero(), "Li3 constant term")?;
    Ok("Σ q^d/d³ = ψ3/ψ0 = Li3(z) through z^20".into())
}

// ---------------------------------------------------------------- 5

/// Conics through five integer points: rank of the evaluation matrix on
/// `x², xy, y², x, y, 1`, and smoothness of the unique solution.
fn conics_through_points(points: &[(i64, i64)]) -> Result<usize, String> {
    let rows = points.iter().map(|&(x, y)| vec![int(x * x), int(x * y), int(y * y), int(x), int(y), int(1)]).collect();
    let kernel = Matrix::from_rows(rows).nullspace();
    if kernel.len() != 1 {
        return Ok(0);
    }
    let c = &kernel[0];
    // Symmetric matrix of a x² + b xy + c y² + d x + e y + f.
    let h = |r: &Rational| r / int(2);
    let m = Matrix::from_rows(vec![
        vec![c[0].clone(), h(&c[1]), h(&c[3])],
        vec![h(&c[1]), c[2].clone(), h(&c[4])],
        vec![h(&c[3]), h(&c[4]), c[5].clone()],
    ]);
    Ok(usize::from(m.rank() == 3))
}

fn criterion_5() -> Check {
    let start = Instant::now();
    let n = plane_curve_recursion(6);
    ensure(n[0] == BigInt::one(), "N_1")?;
    let conics = conics_through_points(&[(0, 0), (1, 3), (4, -1), (-2, 5), (7, 2)])?;
    ensure(conics == 1, format!("conic oracle found {conics} smooth conics"))?;
    ensure(n[1] == BigInt::from(conics), "N_2 differs from the conic count")?;
    let counts: Vec<Rational> = n.iter().map(|x| Rational::from_integer(x.clone())).collect();
    let residuals = all_wdvv_residuals(&PlanePotential::new(counts.clone()));
    ensure(residuals.is_empty(), format!("{} nonzero residuals", residuals.len()))?;
    for d in 0..counts.len() {
        let mut bumped = counts.clone();
        bumped[d] += Rational::one();
        ensure(
            !all_wdvv_residuals(&PlanePotential::new(bumped)).is_empty(),
            format!("perturbing N_{} went unnoticed", d + 1),
        )?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < PLANE_CURVE_BUDGET, format!("took {elapsed:?}"))?;
    Ok(format!("N = {n:?}; all 81 residuals vanish through q^6; 6/6 perturbations detected; {elapsed:.1?}"))
}

// ---------------------------------------------------------------- 6

/// `#{(α, β, τ_1, τ_2) : [α, β] τ_1 τ_2 = 1} / 2` in `S_2` by listing.
fn degree_two_hand_count() -> Rational {
    let perms: [[usize; 2]; 2] = [[0, 1], [1, 0]];
    let compose = |a: [usize; 2], b: [usize; 2]| [b[a[0]], b[a[1]]];
    let inverse = |a: [usize; 2]| {
        let mut out = [0; 2];
        out[a[0]] = 0;
        out[a[1]] = 1;
        out
    };
    let mut count = 0;
    for &a in &perms {
        for &b in &perms {
            let comm = compose(compose(compose(a, b), inverse(a)), inverse(b));
            let tau = perms[1];
            if compose(compose(comm, tau), tau) == perms[0] {
                count += 1;
            }
        }
    }
    rat(count, 2)
}

fn criterion_6() -> Check {
    let workers = std::thread::available_parallelism().map_or(2, |n| n.get());
    let mut compared = 0;
    for b in [2u32, 4] {
        let formula = connected_counts(b, 5);
        for d in 1..=5u32 {
            let brute = covers_bruteforce(d, b, Connectivity::Connected, workers).map_err(|e| e.to_string())?;
            ensure(
                brute == formula[d as usize - 1],
                format!("d = {d}, b = {b}: {brute} vs {}", formula[d as usize - 1]),
            )?;
            let all = covers_bruteforce(d, b, Connectivity::All, workers).map_err(|e| e.to_string())?;
            ensure(all == covers_disconnected_weighted(d, b), format!("disconnected d = {d}, b = {b}"))?;
            compared += 1;
        }
    }
    let hand = degree_two_hand_count();
    ensure(hand == int(2), format!("hand count {hand}"))?;
    ensure(covers_disconnected_weighted(2, 2) == hand, "d = 2, b = 2 disconnected count")?;
    Ok(format!("{compared} (d, b) pairs agree exactly (connected and disconnected); d = 2, b = 2 gives 2"))
}

// ---------------------------------------------------------------- 7

fn criterion_7() -> Check {
    let f2 = connected_series(2, 10).map_err(|e| e.to_string())?;
    let form = quasimodular_fit(&f2).map_err(|e| e.to_string())?;
    let expansion = form.q_expansion(10);
    for d in 1..=10 {
        ensure(expansion.coeff(d) == &f2.coeffs[d - 1], format!("coefficient {d}"))?;
    }
    let want = BTreeMap::from([([3, 0, 0], rat(1, 5184)), ([1, 1, 0], rat(-1, 8640)), ([0, 0, 1], rat(-1, 12960))]);
    ensure(form.coeffs == want, "unexpected weight-6 combination")?;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let index = rng.random_range(0..10);
    let delta = rng.random_range(1..=50i64);
    let mut perturbed = f2.coeffs.clone();
    perturbed[index] += int(delta);
    let result = quasimodular_fit(&HurwitzSeries { genus: 2, coeffs: perturbed });
    ensure(matches!(result, Err(FitError::NoSolution { .. })), format!("perturbation gave {result:?}"))?;
    Ok(format!("F_2 = E2³/5184 − E2E4/8640 − E6/12960 through q^10; +{delta} at q^{} -> NoSolution", index + 1))
}

// ---------------------------------------------------------------- 8

fn sigma(n: u64, k: u32) -> i64 {
    (1..=n).filter(|d| n.is_multiple_of(*d)).map(|d| d.pow(k) as i64).sum()
}

fn criterion_8() -> Check {
    let e2 = eisenstein(2, 10).map_err(|e| e.to_string())?;
    let e4 = eisenstein(4, 10).map_err(|e| e.to_string())?;
    let e6 = eisenstein(6, 10).map_err(|e| e.to_string())?;
    ensure(e2.coeffs()[..3] == [int(1), int(-24), int(-72)], "E2 prefix")?;
    ensure(e4.coeffs()[..2] == [int(1), int(240)], "E4 prefix")?;
    for n in 1..=10u64 {
        ensure(*e2.coeff(n as usize) == int(-24 * sigma(n, 1)), format!("E2 at {n}"))?;
        ensure(*e4.coeff(n as usize) == int(240 * sigma(n, 3)), format!("E4 at {n}"))?;
        ensure(*e6.coeff(n as usize) == int(-504 * sigma(n, 5)), format!("E6 at {n}"))?;
    }
    Ok("E2 = 1 − 24q − 72q² ..., E4 = 1 + 240q ..., E2/E4/E6 match divisor sums through q^10".into())
}

// ---------------------------------------------------------------- 9

/// Both formulations must agree; returns whether they pass.
fn verdicts(cat: &AInftyCategory) -> Result<bool, String> {
    let stasheff = stasheff_check(cat, DEFAULT_ARITY).is_empty();
    let bar = coderivation_square(cat, DEFAULT_ARITY).is_zero();
    ensure(stasheff == bar, format!("Stasheff says {stasheff}, coderivation says {bar}"))?;
    Ok(stasheff)
}

/// Random invertible change of basis preserving degree and hom space.
fn random_basis_change(cat: &AInftyCategory, rng: &mut ChaCha8Rng) -> Matrix {
    let n = cat.generators().len();
    loop {
        let mut p = Matrix::identity(n);
        for i in 0..n {
            for j in 0..n {
                let (a, b) = (cat.generator(i), cat.generator(j));
                if (a.source, a.target, a.degree) == (b.source, b.target, b.degree) && rng.random_bool(0.5) {
                    p[(i, j)] = rat(rng.random_range(-3..=3), rng.random_range(1..=2));
                }
            }
        }
        if p.rank() == n {
            return p;
        }
    }
}

fn random_structure(rng: &mut ChaCha8Rng) -> AInftyCategory {
    let degrees: Vec<i64> = (0..rng.random_range(2..=4)).map(|_| rng.random_range(-1..=2)).collect();
    let gens: Vec<Generator> = degrees
        .iter()
        .enumerate()
        .map(|(i, &d)| Generator { name: format!("g{i}"), source: 0, target: 0, degree: d })
        .collect();
    let shell = AInftyCategory::new(vec!["*".into()], gens.clone(), [], BTreeMap::new()).expect("valid shell");
    let mut ops = Vec::new();
    for k in 1..=3 {
        for t in shell.composable_tuples(k) {
            let want = t.iter().map(|&g| degrees[g]).sum::<i64>() + 2 - k as i64;
            for (o, &d) in degrees.iter().enumerate() {
                if d == want && rng.random_bool(0.4) {
                    ops.push((t.clone(), Vector::from([(o, int(rng.random_range(-2..=2)))])));
                }
            }
        }
    }
    AInftyCategory::new(vec!["*".into()], gens, ops, BTreeMap::new()).expect("degrees respected")
}

/// `(i, i + 1, a + b e)`: the differential from position `i` is `a + b e`.
type ModuleDifferential = (i64, i64, [i64; 2]);

/// Classical `H⁰ Hom` between complexes of free rank-one modules over
/// `Q[e]/(e²)`; a complex is a list of differentials `(i, i + 1, a + b e)`.
fn dual_numbers_h0(src: &[ModuleDifferential], src_len: i64, tgt: &[ModuleDifferential], tgt_len: i64) -> usize {
    // A-linear maps A -> A are multiplication by x0 + x1 e.
    let mul = |a: [i64; 2], b: [i64; 2]| [a[0] * b[0], a[0] * b[1] + a[1] * b[0]];
    let d_of = |c: &[ModuleDifferential], i: i64| c.iter().find(|d| d.0 == i).map(|d| d.2);
    let basis = |n: i64| -> Vec<(i64, i64, usize)> {
        let mut out = Vec::new();
        for i in 0..src_len {
            let j = i + n;
            if (0..tgt_len).contains(&j) {
                out.push((i, j, 0));
                out.push((i, j, 1));
            }
        }
        out
    };
    // d f = d_T ∘ f − (−1)^n f ∘ d_S in composition order "first f".
    let differential = |n: i64| -> Matrix {
        let (from, to) = (basis(n), basis(n + 1));
        let mut m = Matrix::zeros(to.len(), from.len());
        for (col, &(i, j, k)) in from.iter().enumerate() {
            let f = if k == 0 { [1, 0] } else { [0, 1] };
            let mut add = |ii: i64, jj: i64, v: [i64; 2], s: i64| {
                for (kk, &x) in v.iter().enumerate() {
                    if x != 0 {
                        let row = to.iter().position(|&t| t == (ii, jj, kk)).expect("in range");
                        m[(row, col)] += int(s * x);
                    }
                }
            };
            if let Some(dt) = d_of(tgt, j) {
                add(i, j + 1, mul(f, dt), 1);
            }
            if i >= 1 {
                if let Some(ds) = d_of(src, i - 1) {
                    add(i - 1, j, mul(ds, f), -if n % 2 == 0 { 1 } else { -1 });
                }
            }
        }
        m
    };
    let d0 = differential(0);
    let dm1 = differential(-1);
    let kernel = basis(0).len() - d0.rank();
    kernel - dm1.rank()
}

fn criterion_9() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut twisted_checked = 0;
    for (name, doc) in fixtures::passing() {
        let cat = doc.to_category().map_err(|e| format!("{name}: {e}"))?;
        ensure(verdicts(&cat)?, format!("{name} fails"))?;
        ensure(unit_violations(&cat, DEFAULT_ARITY).is_empty(), format!("{name}: unit"))?;
        let h = cohomology_category(&cat).map_err(|e| format!("{name}: {e}"))?;
        ensure(h.law_violations().is_empty(), format!("{name}: H laws"))?;
        let tw = doc.twisted(&cat).map_err(|e| format!("{name}: {e}"))?;
        if !tw.is_empty() {
            let twc = twisted_complex_category(&cat, &tw).map_err(|e| format!("{name}: {e}"))?;
            ensure(stasheff_check(&twc, DEFAULT_ARITY).is_empty(), format!("{name}: Tw Stasheff"))?;
            ensure(coderivation_square(&twc, 3).is_zero(), format!("{name}: Tw coderivation"))?;
            ensure(unit_violations(&twc, DEFAULT_ARITY).is_empty(), format!("{name}: Tw units"))?;
            let h = cohomology_category(&twc).map_err(|e| format!("{name}: Tw {e}"))?;
            ensure(h.law_violations().is_empty(), format!("{name}: H(Tw) laws"))?;
            twisted_checked += 1;
        }
    }

    // H⁰ of twisted complexes over the dual numbers against the classical
    // Hom complexes of the same module complexes.
    let doc = fixtures::dual_numbers_twisted();
    let cat = doc.to_category().map_err(|e| e.to_string())?;
    let tw = doc.twisted(&cat).map_err(|e| e.to_string())?;
    let twc = twisted_complex_category(&cat, &tw).map_err(|e| e.to_string())?;
    let h = cohomology_category(&twc).map_err(|e| e.to_string())?;
    let classical: BTreeMap<&str, (Vec<ModuleDifferential>, i64)> = BTreeMap::from([
        ("P", (vec![], 1)),
        ("Ce", (vec![(0, 1, [0, 1])], 2)),
        ("C1", (vec![(0, 1, [1, 0])], 2)),
        ("E3", (vec![(0, 1, [0, 1]), (1, 2, [0, 1])], 3)),
    ]);
    for (s, (ds, ls)) in &classical {
        for (t, (dt, lt)) in &classical {
            let (x, y) = (twc.object_index(s).unwrap(), twc.object_index(t).unwrap());
            let want = dual_numbers_h0(ds, *ls, dt, *lt);
            ensure(h.hom_dim(x, y) == want, format!("H0({s}, {t}) = {} vs classical {want}", h.hom_dim(x, y)))?;
        }
    }

    // Negative controls.
    for (name, doc) in fixtures::failing() {
        let cat = doc.to_category().map_err(|e| format!("{name}: {e}"))?;
        let tw = doc.twisted(&cat).map_err(|e| format!("{name}: {e}"))?;
        let caught = !verdicts(&cat)?
            || !unit_violations(&cat, DEFAULT_ARITY).is_empty()
            || twisted_complex_category(&cat, &tw).is_err();
        ensure(caught, format!("negative control {name} passed"))?;
    }

    // Randomized: basis changes of passing fixtures stay valid; single
    // perturbations are judged identically by both formulations; arbitrary
    // random structures likewise.
    let algebras: Vec<(String, AInftyCategory)> = fixtures::passing()
        .into_iter()
        .filter(|(_, d)| d.twisted_complexes.is_empty())
        .map(|(n, d)| (n.to_string(), d.to_category().expect("fixture")))
        .collect();
    let mut detected = 0;
    let mut perturbations = 0;
    for round in 0..100 {
        match round % 3 {
            0 => {
                let (name, cat) = &algebras[rng.random_range(0..algebras.len())];
                let moved = cat.change_basis(&random_basis_change(cat, &mut rng)).ok_or("basis change failed")?;
                ensure(verdicts(&moved)?, format!("{name} fails after a change of basis"))?;
                let round_trip = AInftyDocument::from_json(&AInftyDocument::from_category(&moved).to_json())
                    .map_err(|e| e.to_string())?
                    .to_category()
                    .map_err(|e| e.to_string())?;
                ensure(round_trip == moved, "JSON round trip")?;
            }
            1 => {
                let (name, cat) = &algebras[rng.random_range(0..algebras.len())];
                let ops: Vec<(Vec<usize>, Vector)> = cat.operations().map(|(k, v)| (k.clone(), v.clone())).collect();
                let (inputs, out) = &ops[rng.random_range(0..ops.len())];
                let target = *out.keys().next().expect("nonzero output");
                let bad = cat.perturbed(inputs, target, &int(rng.random_range(1..=3))).map_err(|e| e.to_string())?;
                perturbations += 1;
                let failed = !verdicts(&bad).map_err(|e| format!("{name}: {e}"))?
                    || !unit_violations(&bad, DEFAULT_ARITY).is_empty();
                detected += usize::from(failed);
            }
            _ => {
                verdicts(&random_structure(&mut rng))?;
            }
        }
    }
    Ok(format!(
        "{} fixtures pass (incl. {twisted_checked} with twisted complexes), H0 matches classical Hom over Q[e]/e², {} negative controls caught, 100 random rounds agree ({detected}/{perturbations} perturbations fail)",
        fixtures::passing().len(),
        fixtures::failing().len()
    ))
}

// ---------------------------------------------------------------- 10

fn criterion_10() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut pairs = 0;
    while pairs < 20 {
        let mut slope = || loop {
            let (p, q) = (rng.random_range(-6i64..=6), rng.random_range(-6i64..=6));
            if num_integer::Integer::gcd(&p, &q) == 1 {
                return (p, q);
            }
        };
        let (a, b) = (slope(), slope());
        let det = a.0 * b.1 - a.1 * b.0;
        if det == 0 {
            continue;
        }
        let offset = |rng: &mut ChaCha8Rng| rat(rng.random_range(0..12), 12);
        let l1 = Geodesic::new(a, offset(&mut rng), rng.random_range(-2..=2)).map_err(|e| e.to_string())?;
        let l2 = Geodesic::new(b, offset(&mut rng), rng.random_range(-2..=2)).map_err(|e| e.to_string())?;
        let h = intersection_basis(&l1, &l2).map_err(|e| e.to_string())?;
        ensure(h.len() as i64 == det.abs(), format!("{a:?} {b:?}: {} points, det {det}", h.len()))?;
        for x in &h.points {
            for l in [&l1, &l2] {
                let (p, q) = l.slope();
                let level = int(p) * &x[1] - int(q) * &x[0] - l.offset();
                ensure(level.is_integer(), format!("point off the geodesic {l}"))?;
            }
        }
        let back = intersection_basis(&l2, &l1).map_err(|e| e.to_string())?;
        for (i, g) in h.gradings.iter().enumerate() {
            let j = back.points.iter().position(|p| *p == h.points[i]).ok_or("point missing in reverse")?;
            ensure(g + back.gradings[j] == 1, "grading complementarity")?;
        }
        ensure(maslov_index(&l1, &l2) + maslov_index(&l2, &l1) == 1, "Maslov complementarity")?;
        pairs += 1;
    }

    let lines = [
        Geodesic::new((1, 0), rat(1, 7), 0),
        Geodesic::new((0, 1), rat(1, 3), 0),
        Geodesic::new((1, 1), rat(1, 2), 0),
        Geodesic::new((1, -1), rat(1, 5), 0),
    ]
    .map(|g| g.expect("primitive"));
    let mut worst = 0.0f64;
    let mut nontrivial = 0;
    let mut orderings = 0;
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let order = [a, b, c, d];
                    if (0..4).any(|i| !order.contains(&i)) {
                        continue;
                    }
                    orderings += 1;
                    let r =
                        associativity_residual(order.map(|i| &lines[i]), 1.0, THETA_TOL).map_err(|e| e.to_string())?;
                    ensure(
                        r.max_residual <= r.bound,
                        format!("{order:?}: residual {} above bound {}", r.max_residual, r.bound),
                    )?;
                    worst = worst.max(r.max_residual);
                    nontrivial += usize::from(!r.is_trivial());
                }
            }
        }
    }
    ensure(orderings == 24, "ordering enumeration")?;
    ensure(nontrivial > 0, "every ordering is trivial")?;
    ensure(worst < ASSOCIATIVITY_TOL, format!("associativity residual {worst:e}"))?;

    for _ in 0..20 {
        let a = rng.random_range(0.05..4.0);
        let b = rng.random_range(-3.0..3.0);
        let base = theta_sum(ThetaSum::new(a, b), THETA_TOL);
        let shifted = theta_sum(ThetaSum::new(a, b + a), THETA_TOL);
        let reflected = theta_sum(ThetaSum::new(a, -b), THETA_TOL);
        ensure((base.value - shifted.value).abs() <= base.bound + shifted.bound, format!("shift at a = {a}"))?;
        ensure((base.value - reflected.value).abs() <= base.bound + reflected.bound, format!("reflection at a = {a}"))?;
        let finer = theta_sum(ThetaSum::new(a, b), THETA_TOL / 10.0);
        ensure((base.value - finer.value).abs() <= base.bound, format!("bound at a = {a}"))?;
    }
    Ok(format!(
        "20 slope pairs: |points| = |det|, μ + μ' = 1; 24 orderings of (1,0),(0,1),(1,1),(1,-1): {nontrivial} nontrivial, max residual {worst:.1e}; theta shift/reflection within bounds"
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, Criterion); 10] = [
        ("quintic periods", criterion_1),
        ("mirror map integrality", criterion_2),
        ("instanton numbers", criterion_3),
        ("trilogarithm toy model", criterion_4),
        ("plane curves", criterion_5),
        ("Hurwitz cross-oracle", criterion_6),
        ("quasimodularity", criterion_7),
        ("Eisenstein series", criterion_8),
        ("A-infinity suite", criterion_9),
        ("Fukaya torus", criterion_10),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS  {:>2}. {name} ({secs:.1}s): {detail}", i + 1),
            Err(detail) => {
                failures += 1;
                println!("FAIL  {:>2}. {name} ({secs:.1}s): {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
