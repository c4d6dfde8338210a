//! Scenario-driven command line: parses arguments, loads a scenario, runs
//! one subcommand and renders a [`Report`].
//!
//! Exit codes: 0 on success, 1 on invalid input, 2 when a computation is
//! refused (degenerate iterate, budget or size cap).

mod report;
mod scenario;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

pub use report::{parse_csv, OutputFormat, Report, Table};
pub use scenario::{builtin, builtins, Scenario, SubvarietySpec, BUILTIN_NAMES};

use crate::error::{Error, Result};
use crate::exactlinalg::IntegerMatrix;
use crate::fixpoint::{
    brute_force_count, compare_exact, count_fixed, eigenvalue_modulus_check, enumerate_fixed_with_cap,
    lefschetz_number, periodic_subvariety_count, GrowthRow, DEFAULT_BUDGET, DEFAULT_TOLERANCE,
};
use crate::intersect_sym::{pullback_degree_check, sum_power_comparison};
use crate::quotient_dyn::quotient_fixed_lower_bound;

#[derive(Clone, Debug, Parser)]
#[command(name = "isodyn", version, about = "Fixed points, degrees and polarizations of lattice endomorphisms")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub flags: Flags,
}

#[derive(Clone, Debug, Args)]
pub struct Flags {
    /// Builtin scenario name or path to a scenario JSON file.
    #[arg(long, global = true)]
    pub scenario: Option<String>,
    /// Iterate to evaluate.
    #[arg(long = "l", global = true)]
    pub l: Option<u32>,
    /// Evaluate every iterate 1..=lmax.
    #[arg(long, global = true)]
    pub lmax: Option<u32>,
    /// Largest grid or point set a brute-force scan or enumeration may visit.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    /// Allowed | |λ|^2 - q | in the eigenvalue check.
    #[arg(long, global = true, default_value_t = DEFAULT_TOLERANCE)]
    pub tolerance: f64,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Table)]
    pub format: OutputFormat,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Debug, Subcommand)]
pub enum Command {
    /// Number of fixed points of f^l, with a brute-force cross-check.
    Count,
    /// List the fixed points of f^l.
    Enumerate,
    /// Fixed-point counts against q^{gl}.
    Growth,
    /// Exact counts next to the simple-factor product formula.
    Compare,
    /// Fixed points of f^l grouped into orbits of the scenario's action.
    Quotient,
    /// Periodic points on the scenario's translated sub-torus.
    Subvariety,
    /// Run consistency checks on the scenario.
    Verify {
        #[arg(value_enum)]
        target: Option<VerifyTarget>,
        /// Run every target.
        #[arg(long)]
        all: bool,
    },
    /// List the builtin scenarios.
    Scenarios,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VerifyTarget {
    Polarization,
    Serre,
    Lefschetz,
    Pfaffian,
    Proddiv,
    DualIsogeny,
    All,
}

const ALL_TARGETS: [VerifyTarget; 6] = [
    VerifyTarget::Polarization,
    VerifyTarget::Serre,
    VerifyTarget::Lefschetz,
    VerifyTarget::Pfaffian,
    VerifyTarget::Proddiv,
    VerifyTarget::DualIsogeny,
];

pub fn exit_code(error: &Error) -> i32 {
    if error.is_refusal() {
        2
    } else {
        1
    }
}

/// Parses `args` (program name first), runs the command and writes the
/// report. Returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code(&e);
        }
    };
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    let text = match report.render(cli.flags.format) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return 1;
        }
    };
    let written = match &cli.flags.out {
        Some(path) => std::fs::write(path, &text).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| e.to_string()),
    };
    match written {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

/// Runs a parsed command. Deterministic for a given scenario and flags.
pub fn run(cli: &Cli) -> Result<Report> {
    let mut report = Report::new(echo(cli));
    if let Command::Scenarios = cli.command {
        list_scenarios(&mut report);
        return Ok(report);
    }
    let name = cli.flags.scenario.as_deref().ok_or_else(|| Error::InvalidArgument("--scenario is required".into()))?;
    let scenario = Scenario::load(name)?;
    let flags = &cli.flags;
    match &cli.command {
        Command::Count => count(&scenario, flags, &mut report)?,
        Command::Enumerate => enumerate(&scenario, flags, &mut report)?,
        Command::Growth => growth(&scenario, flags, &mut report)?,
        Command::Compare => compare(&scenario, flags, &mut report)?,
        Command::Quotient => quotient(&scenario, flags, &mut report)?,
        Command::Subvariety => subvariety(&scenario, flags, &mut report)?,
        Command::Verify { target, all } => {
            let targets: Vec<VerifyTarget> = match target {
                _ if *all => ALL_TARGETS.to_vec(),
                None | Some(VerifyTarget::All) => ALL_TARGETS.to_vec(),
                Some(t) => vec![*t],
            };
            let lenient = targets.len() > 1;
            for t in targets {
                match verify(t, &scenario, flags, &mut report) {
                    Ok(()) => {}
                    Err(e) if lenient => report.warnings.push(format!("{}: skipped: {e}", target_name(t))),
                    Err(e) => return Err(e),
                }
            }
        }
        Command::Scenarios => unreachable!(),
    }
    Ok(report)
}

fn echo(cli: &Cli) -> String {
    let f = &cli.flags;
    let mut parts = vec!["isodyn".to_string()];
    match &cli.command {
        Command::Count => parts.push("count".into()),
        Command::Enumerate => parts.push("enumerate".into()),
        Command::Growth => parts.push("growth".into()),
        Command::Compare => parts.push("compare".into()),
        Command::Quotient => parts.push("quotient".into()),
        Command::Subvariety => parts.push("subvariety".into()),
        Command::Scenarios => parts.push("scenarios".into()),
        Command::Verify { target, all } => {
            parts.push("verify".into());
            match target {
                _ if *all => parts.push("--all".into()),
                Some(t) => parts.push(target_name(*t).into()),
                None => parts.push("all".into()),
            }
        }
    }
    if let Some(s) = &f.scenario {
        parts.push(format!("--scenario {s}"));
    }
    if let Some(l) = f.l {
        parts.push(format!("--l {l}"));
    }
    if let Some(l) = f.lmax {
        parts.push(format!("--lmax {l}"));
    }
    parts.push(format!("--budget {}", f.budget));
    parts.push(format!("--tolerance {:e}", f.tolerance));
    parts.push(format!(
        "--format {}",
        match f.format {
            OutputFormat::Table => "table",
            OutputFormat::Csv => "csv",
        }
    ));
    parts.join(" ")
}

fn target_name(t: VerifyTarget) -> &'static str {
    match t {
        VerifyTarget::Polarization => "polarization",
        VerifyTarget::Serre => "serre",
        VerifyTarget::Lefschetz => "lefschetz",
        VerifyTarget::Pfaffian => "pfaffian",
        VerifyTarget::Proddiv => "proddiv",
        VerifyTarget::DualIsogeny => "dual-isogeny",
        VerifyTarget::All => "all",
    }
}

/// `--lmax` gives `1..=lmax`; otherwise the single iterate `--l`, or
/// `default` when neither is set.
fn iterates(flags: &Flags, default: Iterates) -> Result<Vec<u32>> {
    let range = |n: u32| -> Result<Vec<u32>> {
        if n == 0 {
            Err(Error::InvalidArgument("--lmax must be >= 1".into()))
        } else {
            Ok((1..=n).collect())
        }
    };
    match (flags.l, flags.lmax) {
        (Some(_), Some(_)) => Err(Error::InvalidArgument("give --l or --lmax, not both".into())),
        (Some(0), None) => Err(Error::InvalidArgument("--l must be >= 1".into())),
        (Some(l), None) => Ok(vec![l]),
        (None, Some(n)) => range(n),
        (None, None) => match default {
            Iterates::Single(l) => Ok(vec![l]),
            Iterates::UpTo(n) => range(n),
        },
    }
}

#[derive(Clone, Copy)]
enum Iterates {
    Single(u32),
    UpTo(u32),
}

fn ratio_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn ratio_approx(r: &BigRational) -> String {
    r.to_f64().map_or_else(|| "nan".into(), |x| format!("{x:.12}"))
}

/// Twelve decimals, without a sign on a value that rounds to zero.
fn fixed(x: f64) -> String {
    let s = format!("{x:.12}");
    match s.strip_prefix('-') {
        Some(rest) if rest.bytes().all(|b| b == b'0' || b == b'.') => rest.to_string(),
        _ => s,
    }
}

fn multiplier(scenario: &Scenario) -> Result<BigInt> {
    scenario.endomorphism.polarization_multiplier(&scenario.torus)?.ok_or_else(|| {
        Error::InvalidArgument(format!(
            "scenario '{}': M^T S M is not a multiple of S, so there is no multiplier q",
            scenario.name
        ))
    })
}

fn count(scenario: &Scenario, flags: &Flags, report: &mut Report) -> Result<()> {
    let ls = iterates(flags, Iterates::Single(1))?;
    let single = ls.len() == 1;
    let f = &scenario.endomorphism;
    let mut table = Table::new("fixed points", &["l", "fixed_points", "brute_force"]);
    for l in ls {
        let exact = match count_fixed(f, l) {
            Ok(c) => c,
            Err(e @ Error::Degenerate { .. }) if !single => {
                report.warnings.push(format!("l = {l}: {e}"));
                table.push(vec![l.to_string(), "degenerate".into(), "degenerate".into()]);
                continue;
            }
            Err(e) => return Err(e),
        };
        let brute = match brute_force_count(f, l, flags.budget) {
            Ok(b) => {
                if b != exact {
                    report.warnings.push(format!("l = {l}: brute force found {b}, determinant gives {exact}"));
                }
                b.to_string()
            }
            Err(e @ Error::BudgetExceeded { .. }) => {
                report.warnings.push(format!("l = {l}: brute force skipped: {e}"));
                "skipped".into()
            }
            Err(e) => return Err(e),
        };
        table.push(vec![l.to_string(), exact.to_string(), brute]);
    }
    report.tables.push(table);
    Ok(())
}

fn enumerate(scenario: &Scenario, flags: &Flags, report: &mut Report) -> Result<()> {
    let l = single_iterate(flags)?;
    let points = enumerate_fixed_with_cap(&scenario.endomorphism, l, flags.budget)?;
    let rank = scenario.endomorphism.rank();
    let mut header = vec!["index".to_string()];
    header.extend((1..=rank).map(|i| format!("x{i}")));
    header.push("order".into());
    let mut table = Table { title: format!("fixed points of f^{l}"), header, rows: Vec::new() };
    for (i, p) in points.iter().enumerate() {
        let mut row = vec![i.to_string()];
        row.extend(p.coordinates().iter().map(ToString::to_string));
        row.push(p.order().to_string());
        table.push(row);
    }
    report.tables.push(table);
    Ok(())
}

fn single_iterate(flags: &Flags) -> Result<u32> {
    if flags.lmax.is_some() {
        return Err(Error::InvalidArgument("this command takes --l, not --lmax".into()));
    }
    match flags.l.unwrap_or(1) {
        0 => Err(Error::InvalidArgument("--l must be >= 1".into())),
        l => Ok(l),
    }
}

fn growth(scenario: &Scenario, flags: &Flags, report: &mut Report) -> Result<()> {
    let q = multiplier(scenario)?;
    let g = scenario.torus.half_dimension() as u32;
    let mut table = Table::new(
        format!("growth against q^(gl), q = {q}, g = {g}"),
        &["l", "exact_count", "asymptote", "ratio", "ratio_approx"],
    );
    for l in iterates(flags, Iterates::UpTo(10))? {
        let row = GrowthRow::new(l, count_fixed(&scenario.endomorphism, l)?, &q, g);
        table.push(vec![
            l.to_string(),
            row.exact_count.to_string(),
            row.asymptote.to_string(),
            ratio_string(&row.ratio),
            ratio_approx(&row.ratio),
        ]);
    }
    report.tables.push(table);
    Ok(())
}

fn compare(scenario: &Scenario, flags: &Flags, report: &mut Report) -> Result<()> {
    if scenario.factors.is_empty() {
        return Err(Error::InvalidArgument(format!("scenario '{}' declares no factors", scenario.name)));
    }
    let ls = iterates(flags, Iterates::UpTo(5))?;
    let l_max = *ls.last().expect("nonempty");
    let comparison = compare_exact(&scenario.endomorphism, &scenario.factors, l_max)?;
    let mut table = Table::new(
        format!("exact count vs {}", comparison.formula),
        &["l", "exact_count", "formula_value", "difference"],
    );
    for row in comparison.rows.iter().filter(|r| ls.contains(&r.l)) {
        let show = |v: &Option<BigInt>| v.as_ref().map_or_else(|| "degenerate".to_string(), ToString::to_string);
        if row.exact_count.is_none() {
            report.warnings.push(format!("l = {}: M^l - I is singular", row.l));
        }
        table.push(vec![
            row.l.to_string(),
            show(&row.exact_count),
            row.formula_value.to_string(),
            show(&row.difference),
        ]);
    }
    report.tables.push(table);
    Ok(())
}

fn quotient(scenario: &Scenario, flags: &Flags, report: &mut Report) -> Result<()> {
    let action = scenario
        .action
        .as_ref()
        .ok_or_else(|| Error::InvalidArgument(format!("scenario '{}' declares no action", scenario.name)))?;
    let q = multiplier(scenario)?;
    let mut table = Table::new(
        format!("fixed points on the quotient, q = {q}"),
        &[
            "l",
            "group_order",
            "upstairs_count",
            "orbit_count",
            "bound",
            "bound_holds",
            "formula_bound",
            "downstairs_count",
        ],
    );
    for l in iterates(flags, Iterates::Single(1))? {
        let r = quotient_fixed_lower_bound(&scenario.endomorphism, action, &q, l)?;
        if !r.bound_holds {
            report.warnings.push(format!("l = {l}: orbit count {} is below {}", r.orbit_count, r.bound));
        }
        if let Some(down) = &r.downstairs_count {
            if BigRational::from(down.clone()) < r.formula_bound {
                report.warnings.push(format!(
                    "l = {l}: downstairs count {down} is below (q^l - 1)^n / |G| = {}",
                    ratio_string(&r.formula_bound)
                ));
            }
        }
        table.push(vec![
            l.to_string(),
            r.group_order.to_string(),
            r.upstairs_count.to_string(),
            r.orbit_count.to_string(),
            ratio_string(&r.bound),
            r.bound_holds.to_string(),
            ratio_string(&r.formula_bound),
            r.downstairs_count.map_or_else(|| "degenerate".into(), |c| c.to_string()),
        ]);
    }
    report.tables.push(table);
    Ok(())
}

fn subvariety(scenario: &Scenario, flags: &Flags, report: &mut Report) -> Result<()> {
    let sub = scenario
        .subvariety
        .as_ref()
        .ok_or_else(|| Error::InvalidArgument(format!("scenario '{}' declares no subvariety", scenario.name)))?;
    let q = match scenario.endomorphism.polarization_multiplier(&scenario.torus)? {
        Some(q) => Some(q),
        None => {
            report.warnings.push("no multiplier q: asymptote column omitted".into());
            None
        }
    };
    let r = sub.basis.cols() / 2;
    let title = match &q {
        Some(q) => format!("periodic points on the sub-torus, r = {r}, m = {}, q = {q}", sub.period),
        None => format!("periodic points on the sub-torus, r = {r}, m = {}", sub.period),
    };
    let mut table = Table::new(title, &["l", "count", "asymptote", "ratio", "ratio_approx"]);
    for l in iterates(flags, Iterates::UpTo(5))? {
        let count = periodic_subvariety_count(&scenario.endomorphism, &sub.basis, &sub.translate, sub.period, l)?;
        let mut row = vec![l.to_string(), count.to_string()];
        match &q {
            Some(q) => {
                let asymptote = q.pow(r as u32 * sub.period * l);
                let ratio = BigRational::new(count, asymptote.clone());
                row.extend([asymptote.to_string(), ratio_string(&ratio), ratio_approx(&ratio)]);
            }
            None => row.extend(["n/a".to_string(), "n/a".into(), "n/a".into()]),
        }
        table.push(row);
    }
    report.tables.push(table);
    Ok(())
}

fn verify(target: VerifyTarget, scenario: &Scenario, flags: &Flags, report: &mut Report) -> Result<()> {
    let f = &scenario.endomorphism;
    let fail = |report: &mut Report, what: &str| report.warnings.push(format!("check failed: {what}"));
    match target {
        VerifyTarget::All => unreachable!("expanded by the caller"),
        VerifyTarget::Polarization => {
            let s = scenario.torus.riemann_form().ok_or(Error::MissingRiemannForm)?;
            let q = f.polarization_multiplier(&scenario.torus)?;
            let degree = f.degree();
            let mut t = Table::new("polarization", &["quantity", "value"]);
            t.push(vec!["degree".into(), degree.to_string()]);
            t.push(vec!["multiplier_q".into(), q.as_ref().map_or_else(|| "none".into(), ToString::to_string)]);
            let analytic = match scenario.torus.complex_structure() {
                Some(_) => f.is_analytic_on(&scenario.torus)?.to_string(),
                None => "unknown".into(),
            };
            t.push(vec!["analytic".into(), analytic]);
            if let Some(q) = &q {
                let g = scenario.torus.half_dimension() as u32;
                let holds = degree == q.pow(g);
                t.push(vec!["degree_equals_q^g".into(), holds.to_string()]);
                if !holds {
                    fail(report, "deg = q^g");
                }
            } else {
                let pulled = &(&f.matrix().transpose() * s) * f.matrix();
                t.push(vec!["pullback_form".into(), pulled.to_string()]);
            }
            report.tables.push(t);
        }
        VerifyTarget::Serre => {
            let q = multiplier(scenario)?;
            let check = eigenvalue_modulus_check(f, &q, flags.tolerance)?;
            let mut t = Table::new(
                format!("eigenvalue moduli, |λ|^2 against q = {q}, tolerance {:e}", check.tolerance),
                &["root", "re", "im", "modulus_squared", "residual"],
            );
            let qf = q.to_f64().unwrap_or(f64::INFINITY);
            for (i, z) in check.roots.iter().enumerate() {
                t.push(vec![
                    i.to_string(),
                    fixed(z.re),
                    fixed(z.im),
                    fixed(z.norm_sqr()),
                    format!("{:.3e}", (z.norm_sqr() - qf).abs()),
                ]);
            }
            report.tables.push(t);
            if !check.passed {
                fail(report, &format!("max residual {:e} exceeds {:e}", check.max_residual, check.tolerance));
            }
        }
        VerifyTarget::Lefschetz => {
            let mut t = Table::new("lefschetz", &["l", "lefschetz_number", "fixed_points", "abs_equal"]);
            for l in iterates(flags, Iterates::UpTo(5))? {
                let lef = lefschetz_number(f, l)?;
                let (count, equal) = match count_fixed(f, l) {
                    Ok(c) => {
                        let eq = num_traits::Signed::abs(&lef) == c;
                        if !eq {
                            fail(report, &format!("|L(f^{l})| = fixed points"));
                        }
                        (c.to_string(), eq.to_string())
                    }
                    Err(Error::Degenerate { .. }) => ("degenerate".into(), "n/a".into()),
                    Err(e) => return Err(e),
                };
                t.push(vec![l.to_string(), lef.to_string(), count, equal]);
            }
            report.tables.push(t);
        }
        VerifyTarget::Pfaffian => {
            let s = scenario.torus.riemann_form().ok_or(Error::MissingRiemannForm)?;
            let r = pullback_degree_check(f.matrix(), s)?;
            let mut t = Table::new("pullback degree", &["quantity", "value"]);
            t.push(vec!["pf_of_pullback".into(), r.pulled_back.to_string()]);
            t.push(vec!["det_times_pf".into(), r.degree_times_original.to_string()]);
            t.push(vec!["holds".into(), r.holds.to_string()]);
            report.tables.push(t);
            if !r.holds {
                fail(report, "Pf(M^T S M) = det(M) Pf(S)");
            }
        }
        VerifyTarget::Proddiv => {
            let mut t = Table::new(
                "top coefficient of (F_1 + ... + F_r)^(rn) against (r!)^n",
                &["r", "n", "expansion", "factorial_power", "agrees"],
            );
            for r in 1..=4 {
                for n in 1..=3 {
                    let c = sum_power_comparison(r, n)?;
                    t.push(vec![
                        r.to_string(),
                        n.to_string(),
                        c.expansion.to_string(),
                        c.factorial_power.to_string(),
                        c.agrees().to_string(),
                    ]);
                }
            }
            report.tables.push(t);
        }
        VerifyTarget::DualIsogeny => {
            let (dual, m) = f.complementary_isogeny()?;
            let n = f.rank();
            let mi = IntegerMatrix::scalar(n, m.clone());
            let left = dual.matrix() * f.matrix() == mi;
            let right = f.matrix() * dual.matrix() == mi;
            let product = m.pow(n as u32) == f.degree() * dual.degree();
            let mut t = Table::new("complementary isogeny", &["quantity", "value"]);
            t.push(vec!["m".into(), m.to_string()]);
            t.push(vec!["dual_matrix".into(), dual.matrix().to_string()]);
            t.push(vec!["deg_f".into(), f.degree().to_string()]);
            t.push(vec!["deg_dual".into(), dual.degree().to_string()]);
            t.push(vec!["dual_after_f_is_m".into(), left.to_string()]);
            t.push(vec!["f_after_dual_is_m".into(), right.to_string()]);
            t.push(vec!["m^(2g)_is_deg_product".into(), product.to_string()]);
            report.tables.push(t);
            if !(left && right && product) {
                fail(report, "complementary isogeny identities");
            }
        }
    }
    Ok(())
}

fn list_scenarios(report: &mut Report) {
    let mut t = Table::new("builtin scenarios", &["name", "g", "factors", "action", "subvariety", "description"]);
    let mut row = |s: &Scenario| {
        let factors: Vec<String> = s
            .factors
            .iter()
            .map(|f| format!("{}x(dim {}, q {})", f.multiplicity(), f.dimension(), f.multiplier()))
            .collect();
        t.push(vec![
            s.name.clone(),
            s.torus.half_dimension().to_string(),
            if factors.is_empty() { "-".into() } else { factors.join(" ") },
            s.action.as_ref().map_or_else(|| "-".into(), |a| format!("order {}", a.order())),
            s.subvariety.as_ref().map_or_else(|| "-".into(), |v| format!("rank {}", v.basis.cols())),
            s.description.clone(),
        ]);
    };
    for s in builtins() {
        row(&s);
    }
    t.push(vec![
        "mult-by-<m>[-g<g>]".into(),
        "g".into(),
        "gx(dim 1, q m^2)".into(),
        "-".into(),
        "-".into(),
        "multiplication by m on E^g (parametric)".into(),
    ]);
    report.tables.push(t);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Result<Report> {
        let cli = Cli::try_parse_from(std::iter::once("isodyn").chain(args.iter().copied())).unwrap();
        run(&cli)
    }

    #[test]
    fn count_mult_by_two() {
        let r = run_args(&["count", "--scenario", "mult-by-2", "--l", "3"]).unwrap();
        let t = &r.tables[0];
        assert_eq!(t.column("fixed_points").unwrap(), vec!["49"]);
        assert_eq!(t.column("brute_force").unwrap(), vec!["49"]);
        assert!(r.warnings.is_empty());
    }

    #[test]
    fn growth_csv_has_one_row_per_iterate() {
        let r = run_args(&["growth", "--scenario", "gaussian-cm", "--lmax", "10", "--format", "csv"]).unwrap();
        let csv = r.to_csv().unwrap();
        let back = parse_csv(&csv).unwrap();
        assert_eq!(back[0].rows.len(), 10);
        assert_eq!(back[0].header, r.tables[0].header);
        assert_eq!(back[0].rows, r.tables[0].rows);
        assert!(back[0].column("ratio").unwrap().iter().all(|x| x.contains('/')));
        // 1 + i: |det(M^4 - I)| = |(-4) - 1|^... = 25 against 2^4.
        assert_eq!(back[0].rows[3][1], "25");
        assert_eq!(back[0].rows[3][3], "25/16");
    }

    #[test]
    fn verify_all_reports_the_multiplier() {
        let r = run_args(&["verify", "--all", "--scenario", "silverman-sumdiff"]).unwrap();
        let pol = r.table("polarization").unwrap();
        assert_eq!(pol.rows[1], vec!["multiplier_q".to_string(), "2".into()]);
        assert!(r.warnings.iter().all(|w| !w.starts_with("check failed")), "{:?}", r.warnings);
    }

    #[test]
    fn unpolarizable_has_no_multiplier() {
        let r = run_args(&["verify", "polarization", "--scenario", "unpolarizable-1x4"]).unwrap();
        let pol = r.table("polarization").unwrap();
        assert_eq!(pol.rows[0][1], "16");
        assert_eq!(pol.rows[1][1], "none");
        let err = run_args(&["growth", "--scenario", "unpolarizable-1x4"]).unwrap_err();
        assert_eq!(exit_code(&err), 1);
    }

    #[test]
    fn degenerate_single_iterate_is_refused() {
        let err = run_args(&["count", "--scenario", "unpolarizable-1x4", "--l", "1"]).unwrap_err();
        assert_eq!(exit_code(&err), 2);
        let r = run_args(&["compare", "--scenario", "mult-by-1"]);
        assert!(r.is_err(), "mult-by-1 declares no factors");
    }

    #[test]
    fn missing_scenario_is_a_validation_error() {
        let err = run_args(&["count"]).unwrap_err();
        assert_eq!(exit_code(&err), 1);
        let err = run_args(&["count", "--scenario", "/nonexistent/file.json"]).unwrap_err();
        assert_eq!(exit_code(&err), 1);
    }

    #[test]
    fn reports_are_deterministic() {
        let args = ["quotient", "--scenario", "bielliptic-quotient", "--lmax", "2"];
        assert_eq!(run_args(&args).unwrap(), run_args(&args).unwrap());
    }

    #[test]
    fn quotient_columns() {
        let r = run_args(&["quotient", "--scenario", "bielliptic-quotient", "--l", "1"]).unwrap();
        let t = &r.tables[0];
        assert_eq!(t.column("upstairs_count").unwrap(), vec!["16"]);
        assert_eq!(t.column("orbit_count").unwrap(), vec!["8"]);
        assert_eq!(t.column("bound").unwrap(), vec!["8/1"]);
        assert_eq!(t.column("formula_bound").unwrap(), vec!["32/1"]);
    }

    #[test]
    fn usage_errors_exit_with_one() {
        assert_eq!(main_with_args(["isodyn", "frobnicate"]), 1);
        assert_eq!(main_with_args(["isodyn", "count", "--l", "x"]), 1);
    }
}
