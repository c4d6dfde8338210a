//! Acceptance criteria. Runs without the libtest harness so every criterion
//! prints exactly one PASS/FAIL line; any failure makes the process exit 1.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use clap::Parser;
use isodyn::cli::{builtin, builtins, run, Cli, Scenario};
use isodyn::exactlinalg::{det, exterior_trace_sum, smith_normal_form, IntegerMatrix};
use isodyn::fixpoint::{
    brute_force_count, count_fixed, eigenvalue_modulus_check, enumerate_fixed, growth_table, lefschetz_number,
    periodic_subvariety_count, GrowthRow, DEFAULT_BUDGET,
};
use isodyn::intersect_sym::{expand_sum_power, pullback_degree_check, sum_power_comparison};
use isodyn::lattice_av::{standard_riemann_form, LatticeEndomorphism};
use isodyn::quotient_dyn::quotient_fixed_lower_bound;
use isodyn::Error;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Tolerance on `|ratio - 1|` for the asymptotic growth checks.
const GROWTH_TOLERANCE: (i64, i64) = (5, 1000);
/// Tolerance on `| |λ|^2 - q |` for the eigenvalue check.
const EIGENVALUE_TOLERANCE: f64 = 1e-9;
const SEED: u64 = 0x5eed_2026;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

fn growth_tolerance() -> BigRational {
    BigRational::new(big(GROWTH_TOLERANCE.0), big(GROWTH_TOLERANCE.1))
}

fn within_time(start: Instant, limit: Duration) -> Result<Duration, String> {
    let elapsed = start.elapsed();
    ensure(elapsed < limit, || format!("took {elapsed:?}, limit {limit:?}"))?;
    Ok(elapsed)
}

fn random_matrix(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> IntegerMatrix {
    let rows: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(-bound..=bound)).collect()).collect();
    IntegerMatrix::from_rows(&rows)
}

fn polarized_builtins() -> Vec<(Scenario, BigInt)> {
    builtins()
        .into_iter()
        .filter_map(|s| {
            let q = s.endomorphism.polarization_multiplier(&s.torus).unwrap()?;
            Some((s, q))
        })
        .collect()
}

fn torsion_law() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for m in [2i64, 3, 4] {
        for g in [1usize, 2] {
            let f = LatticeEndomorphism::multiplication(m, g);
            for l in 1..=5u32 {
                let expected = (big(m).pow(l) - 1i32).pow(2 * g as u32);
                let got = count_fixed(&f, l).map_err(|e| e.to_string())?;
                ensure(got == expected, || format!("[{m}] g = {g} l = {l}: {got} != {expected}"))?;
                checked += 1;
            }
        }
    }
    let t = within_time(start, Duration::from_secs(1))?;
    Ok(format!("{checked} cases in {t:.2?}"))
}

fn triple_path() -> Outcome {
    let start = Instant::now();
    let mut scenarios = builtins();
    scenarios.extend(["mult-by-3", "mult-by-3-g2", "mult-by-5"].map(|n| builtin(n).unwrap()));
    let mut checked = Vec::new();
    let mut excluded = Vec::new();
    for s in &scenarios {
        let f = &s.endomorphism;
        let g = s.torus.half_dimension() as u32;
        for l in 1..=4u32 {
            let a = f.matrix().pow(l).unwrap().minus_identity().unwrap();
            let d = smith_normal_form(&a).largest_divisor();
            if d.is_zero() {
                excluded.push(format!("{} (degenerate)", s.name));
                break;
            }
            if d.pow(2 * g) > big(1_000_000) {
                continue;
            }
            let count = count_fixed(f, l).map_err(|e| format!("{} l = {l}: {e}", s.name))?;
            let listed = BigInt::from(enumerate_fixed(f, l).map_err(|e| e.to_string())?.len());
            let brute = brute_force_count(f, l, DEFAULT_BUDGET).map_err(|e| format!("{} l = {l}: {e}", s.name))?;
            ensure(count == listed && listed == brute, || {
                format!("{} l = {l}: det {count}, enumerate {listed}, brute force {brute}", s.name)
            })?;
            checked.push(format!("{}@{l}", s.name));
        }
    }
    ensure(checked.len() >= 12, || format!("only {} cases within budget", checked.len()))?;
    let t = within_time(start, Duration::from_secs(30))?;
    Ok(format!("{} cases in {t:.2?}; excluded {}", checked.len(), excluded.join(", ")))
}

fn asymptotic_growth() -> Outcome {
    let start = Instant::now();
    let mut details = Vec::new();
    for (name, g) in [("mult-by-2", 1u32), ("gaussian-cm", 1)] {
        let s = builtin(name).unwrap();
        let q = s.endomorphism.polarization_multiplier(&s.torus).unwrap().unwrap();
        let table = growth_table(&s.endomorphism, &q, g, 20).map_err(|e| e.to_string())?;
        let last = table.last().unwrap();
        ensure(last.l == 20 && last.deviation() <= growth_tolerance(), || {
            format!("{name}: |ratio - 1| = {} at l = 20", last.deviation())
        })?;
        details.push(format!("{name} q = {q} ratio {}", last.ratio));
    }
    let t = within_time(start, Duration::from_secs(1))?;
    Ok(format!("{} in {t:.2?}", details.join("; ")))
}

fn eigenvalue_moduli() -> Outcome {
    let mut worst = 0.0f64;
    let scenarios = polarized_builtins();
    ensure(scenarios.len() >= 5, || "expected five polarized builtins".into())?;
    for (s, q) in &scenarios {
        let r = eigenvalue_modulus_check(&s.endomorphism, q, EIGENVALUE_TOLERANCE).map_err(|e| e.to_string())?;
        ensure(r.passed, || format!("{}: residual {:e}", s.name, r.max_residual))?;
        worst = worst.max(r.max_residual);
    }
    Ok(format!("{} scenarios, worst residual {worst:.1e}", scenarios.len()))
}

fn lefschetz_identity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for i in 0..100 {
        let n = rng.gen_range(1..=8);
        let m = random_matrix(&mut rng, n, 3);
        let lhs = exterior_trace_sum(&m).map_err(|e| e.to_string())?;
        let rhs = det(&(&IntegerMatrix::identity(n) - &m)).map_err(|e| e.to_string())?;
        ensure(lhs == rhs, || format!("matrix {i} ({n}x{n}): {lhs} != {rhs}"))?;
    }
    let mut cases = 0;
    for s in builtins() {
        for l in 1..=5 {
            match count_fixed(&s.endomorphism, l) {
                Ok(c) => {
                    let lef = lefschetz_number(&s.endomorphism, l).map_err(|e| e.to_string())?;
                    ensure(lef.abs() == c, || format!("{} l = {l}: L = {lef}, #Fix = {c}", s.name))?;
                    cases += 1;
                }
                Err(Error::Degenerate { .. }) => {}
                Err(e) => return Err(e.to_string()),
            }
        }
    }
    Ok(format!("100 random matrices; {cases} scenario iterates"))
}

fn pullback_degree() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    for g in [2usize, 3] {
        let s = standard_riemann_form(g);
        for i in 0..100 {
            let m = random_matrix(&mut rng, 2 * g, 5);
            let r = pullback_degree_check(&m, &s).map_err(|e| e.to_string())?;
            ensure(r.holds, || {
                format!("{}x{} matrix {i}: {} != {}", 2 * g, 2 * g, r.pulled_back, r.degree_times_original)
            })?;
        }
    }
    Ok("100 4x4 and 100 6x6 matrices".into())
}

fn polarization_examples() -> Outcome {
    let q_of = |name: &str| {
        let s = builtin(name).unwrap();
        (s.endomorphism.degree(), s.endomorphism.polarization_multiplier(&s.torus).unwrap())
    };
    let (_, q) = q_of("silverman-sumdiff");
    ensure(q == Some(big(2)), || format!("sum/difference q = {q:?}"))?;
    let (deg, q) = q_of("unpolarizable-1x4");
    ensure(deg == big(16) && q.is_none(), || format!("[1] x [4]: degree {deg}, q = {q:?}"))?;
    for m in 2..=5i64 {
        for g in 1..=3 {
            let (_, q) = q_of(&format!("mult-by-{m}-g{g}"));
            ensure(q == Some(big(m * m)), || format!("[{m}] on E^{g}: q = {q:?}"))?;
        }
    }
    Ok("sum/difference q = 2; [1] x [4] degree 16, no q; [m] q = m^2".into())
}

fn quotient_bound() -> Outcome {
    let s = builtin("bielliptic-quotient").unwrap();
    let action = s.action.as_ref().unwrap();
    let q = big(9);
    let mut details = Vec::new();
    for l in 1..=2u32 {
        let r = quotient_fixed_lower_bound(&s.endomorphism, action, &q, l).map_err(|e| e.to_string())?;
        let expected = (big(3).pow(l) - 1i32).pow(4) / 2;
        ensure(r.orbit_count == expected, || format!("l = {l}: {} orbits, expected {expected}", r.orbit_count))?;
        let half_upstairs = BigRational::new(r.upstairs_count.clone(), big(2));
        ensure(BigRational::from(r.orbit_count.clone()) >= half_upstairs && r.bound_holds, || {
            format!("l = {l}: {} < {half_upstairs}", r.orbit_count)
        })?;
        details.push(format!("l = {l}: {} orbits of {}", r.orbit_count, r.upstairs_count));
    }
    Ok(details.join("; "))
}

fn dual_isogeny() -> Outcome {
    let s = builtin("gaussian-cm").unwrap();
    let (dual, m) = s.endomorphism.complementary_isogeny().map_err(|e| e.to_string())?;
    let two = IntegerMatrix::scalar(2, 2);
    ensure(m == big(2), || format!("m = {m}"))?;
    ensure(dual.matrix() * s.endomorphism.matrix() == two && s.endomorphism.matrix() * dual.matrix() == two, || {
        format!("dual {} does not compose to [2]", dual.matrix())
    })?;

    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 2);
    for n in [2usize, 4] {
        let mut done = 0;
        while done < 50 {
            let mat = random_matrix(&mut rng, n, 4);
            if det(&mat).unwrap().is_zero() {
                continue;
            }
            let f = LatticeEndomorphism::linear(mat).unwrap();
            let (dual, m) = f.complementary_isogeny().map_err(|e| e.to_string())?;
            ensure(m.pow(n as u32) == f.degree() * dual.degree(), || {
                format!("{}: m = {m}, degrees {} and {}", f.matrix(), f.degree(), dual.degree())
            })?;
            done += 1;
        }
    }
    Ok("gaussian m = 2; 50 random 2x2 and 50 random 4x4".into())
}

fn proddiv_comparison() -> Outcome {
    for (r, n, want) in [(2, 1, 2), (3, 1, 6), (2, 2, 6)] {
        let got = expand_sum_power(r, n).map_err(|e| e.to_string())?;
        ensure(got == big(want), || format!("r = {r}, n = {n}: {got} != {want}"))?;
    }
    let side_by_side: Vec<String> = [(2, 1), (3, 1), (2, 2)]
        .iter()
        .map(|&(r, n)| {
            let c = sum_power_comparison(r, n).unwrap();
            format!("({r},{n}): {} vs r!^n = {}", c.expansion, c.factorial_power)
        })
        .collect();
    Ok(side_by_side.join("; "))
}

fn factor_formula_report() -> Outcome {
    let args = ["isodyn", "compare", "--scenario", "mult-by-2", "--lmax", "5"];
    let report = run(&Cli::try_parse_from(args).unwrap()).map_err(|e| e.to_string())?;
    let again = run(&Cli::try_parse_from(args).unwrap()).map_err(|e| e.to_string())?;
    ensure(report == again, || "report is not deterministic".into())?;
    let table = &report.tables[0];
    ensure(table.header == ["l", "exact_count", "formula_value", "difference"], || format!("{:?}", table.header))?;
    ensure(table.rows.len() == 5, || format!("{} rows", table.rows.len()))?;
    for (i, row) in table.rows.iter().enumerate() {
        let l = i as u32 + 1;
        let exact = (big(2).pow(l) - 1i32).pow(2);
        let formula = big(4).pow(l) - 1i32;
        let diff = &exact - &formula;
        let want = [l.to_string(), exact.to_string(), formula.to_string(), diff.to_string()];
        ensure(*row == want, || format!("row {l}: {row:?} != {want:?}"))?;
    }
    Ok("5 rows of exact count, formula value and difference".into())
}

fn subvariety_growth() -> Outcome {
    let s = builtin("diagonal-subvariety").unwrap();
    let sub = s.subvariety.as_ref().unwrap();
    let q = s.endomorphism.polarization_multiplier(&s.torus).unwrap().unwrap();
    let r = (sub.basis.cols() / 2) as u32;
    let mut last = None;
    for l in 1..=20u32 {
        let count = periodic_subvariety_count(&s.endomorphism, &sub.basis, &sub.translate, sub.period, l)
            .map_err(|e| e.to_string())?;
        let expected = (big(2).pow(l) - 1i32).pow(2);
        ensure(count == expected, || format!("l = {l}: {count} != {expected}"))?;
        last = Some(GrowthRow::new(l, count, &q, r * sub.period));
    }
    let last = last.unwrap();
    ensure(last.asymptote == big(4).pow(20), || format!("asymptote {}", last.asymptote))?;
    ensure(last.deviation() <= growth_tolerance(), || format!("|ratio - 1| = {}", last.deviation()))?;
    let one = BigRational::one();
    Ok(format!("ratio at l = 20 is 1 - {}", &one - &last.ratio))
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("torsion law for [m]", torsion_law),
        ("count, enumeration and brute force agree", triple_path),
        ("asymptotic growth at l = 20", asymptotic_growth),
        ("eigenvalue moduli |λ|^2 = q", eigenvalue_moduli),
        ("Lefschetz identity", lefschetz_identity),
        ("pullback-degree identity", pullback_degree),
        ("polarization examples", polarization_examples),
        ("quotient orbit bound", quotient_bound),
        ("complementary isogeny", dual_isogeny),
        ("product-of-divisors expansion", proddiv_comparison),
        ("simple-factor formula report", factor_formula_report),
        ("periodic points on the diagonal", subvariety_growth),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failures += 1;
                println!("criterion {:>2} FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
