//! Acceptance gate: runs every criterion, printing one `PASS`/`FAIL` line
//! each, and exits nonzero if any fails. All comparisons are exact; only
//! wall-clock budgets carry a threshold.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use whittaker_cli::catalog;
use whittaker_cli::format::Report;
use whittaker_cli::verify::{self, dominant_up_to_dimension, lambda_generators, Options};
use whittaker_core::whittaker::uniqueness_rank;
use whittaker_core::{CartanSpec, LatticeChoice, RootDatum};

const SEED: u64 = 0;

/// Catalog data exercised by the sweeps.
const SWEEP: &[&str] = catalog::DEFAULT_SWEEP;

fn load(name: &str) -> RootDatum {
    catalog::load(name, &BTreeMap::new()).unwrap()
}

fn opts(box_size: i64, lambda_max: i64, samples: usize) -> Options {
    Options { box_size, lambda_max, seed: SEED, samples, timing: false }
}

/// Prints the verdict line.
fn gate(n: u32, name: &str, budget_s: u64, start: Instant, reports: &[Report]) -> bool {
    let elapsed = start.elapsed();
    let cases: usize = reports.iter().map(|r| r.cases).sum();
    let failures: Vec<String> = reports
        .iter()
        .filter(|r| !r.passed())
        .map(|r| format!("{}/{}: {} of {} (first {})", r.check, r.datum, r.failures.len(), r.cases, r.failures[0]))
        .collect();
    let in_time = elapsed <= Duration::from_secs(budget_s);
    let ok = failures.is_empty() && in_time && cases > 0;
    println!(
        "{} criterion {n:>2} {name}: {cases} cases, {} failing reports, {:.2}s (budget {budget_s}s)",
        if ok { "PASS" } else { "FAIL" },
        failures.len(),
        elapsed.as_secs_f64()
    );
    for f in &failures {
        println!("    {f}");
    }
    ok
}

fn sweep(names: &[&str], checks: &[&str], o: &Options) -> Vec<Report> {
    let mut out = Vec::new();
    for n in names {
        let d = load(n);
        for c in checks {
            out.push(verify::run_check(c, &d, o).unwrap());
        }
    }
    out
}

fn criterion_01_character_oracles() -> bool {
    let start = Instant::now();
    let mut reports = Vec::new();
    for n in SWEEP {
        let dual = load(n).dual_datum().unwrap();
        let mut r = Report::new("characters<=500", n);
        for lam in dominant_up_to_dimension(&dual, 500).unwrap() {
            verify::character_case(&mut r, &dual, &lam).unwrap();
        }
        reports.push(r);
    }
    gate(1, "character oracle equivalence", 60, start, &reports)
}

fn criterion_02_dual_group() -> bool {
    let start = Instant::now();
    let mut reports = sweep(SWEEP, &["dual"], &opts(1, 1, 0));
    let mut r = Report::new("bc-dual-is-c", "BC1,BC2");
    for n in 1..=2usize {
        let bc = load(&format!("BC{n}-adjoint")).dual_datum().unwrap();
        // C1 = A1; compare against an independently built C_n datum
        let ty = if n == 1 { "A1".to_string() } else { format!("C{n}") };
        let c = RootDatum::build(&CartanSpec::parse(&ty, LatticeChoice::Adjoint).unwrap()).unwrap();
        let got = bc.as_root_datum().unwrap();
        r.case(got.cartan_matrix() == c.cartan_matrix(), || serde_json::json!({"n": n, "cartan": got.cartan_matrix()}));
        r.case(got.roots().len() == 2 * n * n, || serde_json::json!({"n": n, "roots": got.roots().len()}));
    }
    reports.push(r);
    gate(2, "dual-group construction", 5, start, &reports)
}

fn criterion_03_bernstein_relations() -> bool {
    let start = Instant::now();
    let reports = sweep(SWEEP, &["bernstein"], &opts(4, 0, 200));
    gate(3, "Bernstein relations", 60, start, &reports)
}

fn criterion_04_savin_exactness() -> bool {
    let start = Instant::now();
    let reports = sweep(SWEEP, &["savin"], &opts(3, 0, 0));
    gate(4, "Savin and twisted Satake exactness", 30, start, &reports)
}

fn criterion_05_module_isomorphism() -> bool {
    let start = Instant::now();
    let reports = sweep(SWEEP, &["module"], &opts(5, 5, 0));
    gate(5, "module isomorphism", 60, start, &reports)
}

fn criterion_06_whittaker_recursion() -> bool {
    let start = Instant::now();
    let reports = sweep(SWEEP, &["recursion"], &opts(4, 2, 0));
    gate(6, "Whittaker recursion", 60, start, &reports)
}

fn criterion_07_adjoint_ratio_and_swap() -> bool {
    let start = Instant::now();
    let reports = sweep(&["A1-adjoint", "A2-adjoint", "B2-adjoint"], &["ratio", "swap"], &opts(4, 2, 0));
    gate(7, "adjoint ratio and conductor swap", 30, start, &reports)
}

fn criterion_08_uniqueness() -> bool {
    let start = Instant::now();
    let mut reports = Vec::new();
    for n in ["A1-adjoint", "A2-adjoint"] {
        let d = load(n);
        let dual = d.dual_datum().unwrap();
        let mut r = Report::new("uniqueness", n);
        for box_size in 4..=5 {
            let rep =
                uniqueness_rank(&d, &dual, &d.strictly_dominant_height_box(box_size), &lambda_generators(&d)).unwrap();
            r.case(rep.rank == 1 && rep.certified, || {
                serde_json::json!({"box": box_size, "rank": rep.rank, "unknowns": rep.unknowns})
            });
        }
        reports.push(r);
    }
    gate(8, "uniqueness", 30, start, &reports)
}

fn criterion_09_general_reduction() -> bool {
    let start = Instant::now();
    let d = load("A1-sc");
    assert!(d.rho_vee().is_none());
    let reports = vec![verify::run_check("general", &d, &opts(6, 2, 0)).unwrap()];
    gate(9, "general-group reduction", 30, start, &reports)
}

fn criterion_10_split_sanity() -> bool {
    let start = Instant::now();
    let reports = sweep(&["A1-adjoint"], &["split"], &opts(4, 0, 20));
    gate(10, "split sanity against the Schur sum", 10, start, &reports)
}

fn main() {
    let criteria: [fn() -> bool; 10] = [
        criterion_01_character_oracles,
        criterion_02_dual_group,
        criterion_03_bernstein_relations,
        criterion_04_savin_exactness,
        criterion_05_module_isomorphism,
        criterion_06_whittaker_recursion,
        criterion_07_adjoint_ratio_and_swap,
        criterion_08_uniqueness,
        criterion_09_general_reduction,
        criterion_10_split_sanity,
    ];
    let failed = criteria.iter().filter(|c| !c()).count();
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
