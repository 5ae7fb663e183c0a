//! Acceptance gate for the workspace: ten criteria, one test each. Every
//! test prints a single `acceptance NN (<name>): PASS|FAIL` line (run with
//! `--nocapture` to see the lines on success) and then asserts, so the suite
//! fails loudly if any criterion regresses. A shared lock serializes the
//! tests so the runtime criterion never competes with other work.

use std::process::{Command, Output};
use std::sync::{Mutex, MutexGuard, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use squareplus::activations::{
    sigmoid, softplus_stable, squareplus, squareplus_d1, squareplus_d2, Activation,
    B_SOFTPLUS_MATCH, B_UNIT,
};
use squareplus::bench::{format_report, parse_report_csv, run_bench, BenchConfig, ReportFormat};
use squareplus::kernels::{apply, apply_fused, apply_in_place, Exec};
use squareplus::real::Precision;
use squareplus::verify::{
    check_bound_vs_softplus, check_gradients, check_origin_identities, check_relu_reduction,
    check_scale_identity, check_student_t_pdf, find_naive_breakdown, GridSpec,
};

fn serialize() -> MutexGuard<'static, ()> {
    static LOCK: OnceLock<Mutex<()>> = OnceLock::new();
    LOCK.get_or_init(|| Mutex::new(()))
        .lock()
        .unwrap_or_else(|poisoned| poisoned.into_inner())
}

fn report(number: usize, slug: &str, ok: bool, detail: &str) {
    println!(
        "acceptance {number:02} ({slug}): {}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "acceptance {number:02} ({slug}): {detail}");
}

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_squareplus"))
        .args(args)
        .output()
        .expect("binary spawns")
}

#[test]
fn acceptance_01_origin_identities() {
    let _serial = serialize();
    let reports = check_origin_identities(&[0.5, B_SOFTPLUS_MATCH, B_UNIT, 100.0]);
    let ok = !reports.is_empty() && reports.iter().all(|r| r.passed);
    let detail = reports
        .iter()
        .map(|r| r.to_string())
        .collect::<Vec<_>>()
        .join("; ");
    report(1, "origin-identities", ok, &detail);
}

#[test]
fn acceptance_02_relu_reduction() {
    let _serial = serialize();
    let grid = GridSpec::default_verification();
    let rep = check_relu_reduction(&grid);
    report(2, "relu-reduction", rep.passed, &rep.to_string());
}

#[test]
fn acceptance_03_softplus_bound() {
    let _serial = serialize();
    let grid = GridSpec::default_verification();
    let matched = check_bound_vs_softplus(B_SOFTPLUS_MATCH, &grid);
    let unit = check_bound_vs_softplus(B_UNIT, &grid);
    // Negative control: below the matched b the bound must visibly break,
    // and it must break where the gap is largest — near the origin.
    let control = check_bound_vs_softplus(1.0, &grid);
    let ok = matched.passed
        && unit.passed
        && !control.passed
        && control.worst_error > 0.1
        && control.worst_x.abs() < 0.5;
    let detail = format!("{matched}; {unit}; control: {control}");
    report(3, "softplus-bound", ok, &detail);
}

#[test]
fn acceptance_04_scale_identity() {
    let _serial = serialize();
    let grid = GridSpec::default_verification();
    let rep = check_scale_identity(&[0.5, 2.0, 3.0, 10.0], &[B_SOFTPLUS_MATCH, B_UNIT], &grid);
    report(4, "scale-identity", rep.passed, &rep.to_string());
}

#[test]
fn acceptance_05_gradient_check() {
    let _serial = serialize();
    let grid = GridSpec::linear(-10.0, 10.0, 401).unwrap();
    let reports: Vec<_> = [0.5, B_SOFTPLUS_MATCH, B_UNIT]
        .iter()
        .map(|&b| check_gradients(b, &grid))
        .collect();
    let ok = reports.iter().all(|r| r.passed);
    let detail = reports
        .iter()
        .map(|r| r.to_string())
        .collect::<Vec<_>>()
        .join("; ");
    report(5, "gradient-check", ok, &detail);
}

#[test]
fn acceptance_06_student_t_tail() {
    let _serial = serialize();
    let grid = GridSpec::linear(-8.0, 8.0, 1601).unwrap();
    let rep = check_student_t_pdf(&grid);
    report(6, "student-t-tail", rep.passed, &rep.to_string());
}

#[test]
fn acceptance_07_naive_breakdown() {
    let _serial = serialize();
    let found = find_naive_breakdown(Precision::Single);
    let ok = matches!(found, Some(x) if (13.0..=18.0).contains(&x));
    let detail = format!("single-precision collapse at {found:?}, expected within [13, 18]");
    report(7, "naive-breakdown", ok, &detail);
}

#[test]
fn acceptance_08_runtime_comparison() {
    let _serial = serialize();
    let config = BenchConfig {
        activations: vec![
            Activation::Squareplus { b: B_UNIT },
            Activation::SoftplusStable,
            Activation::Relu,
        ],
        n: 1_000_000,
        reps: 50,
        warmup: 5,
        ..BenchConfig::default()
    };
    let records = run_bench(&config).expect("bench runs");
    let median = |name: &str| {
        records
            .iter()
            .find(|r| r.name == name)
            .unwrap_or_else(|| panic!("record {name} present"))
            .median_ns_per_elem
    };
    let sq = median("squareplus(b=4)");
    let stable = median("softplus_stable");
    let relu = median("relu");
    let ok = sq < stable && sq <= 2.0 * relu && stable / sq >= 2.0;
    let detail = format!(
        "medians ns/elem: squareplus {sq:.4}, softplus_stable {stable:.4}, relu {relu:.4} \
         (need squareplus < softplus_stable, squareplus <= 2x relu, stable/squareplus >= 2)"
    );
    report(8, "runtime-comparison", ok, &detail);
}

#[test]
fn acceptance_09_kernel_determinism() {
    let _serial = serialize();
    let n = 1_000_000;
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let input: Vec<f64> = (0..n).map(|_| rng.gen_range(-5.0..5.0)).collect();
    let act = Activation::Squareplus { b: B_UNIT };

    let mut seq = vec![0.0f64; n];
    let mut par = vec![0.0f64; n];
    apply(&act, Exec::Sequential, &input, &mut seq).unwrap();
    apply(&act, Exec::Parallel, &input, &mut par).unwrap();
    let values_match = seq
        .iter()
        .zip(&par)
        .all(|(a, b)| a.to_bits() == b.to_bits());

    let mut seq_d1 = vec![0.0f64; n];
    let mut par_d1 = vec![0.0f64; n];
    let mut seq_v = vec![0.0f64; n];
    let mut par_v = vec![0.0f64; n];
    apply_fused(&act, Exec::Sequential, &input, &mut seq_v, &mut seq_d1).unwrap();
    apply_fused(&act, Exec::Parallel, &input, &mut par_v, &mut par_d1).unwrap();
    let fused_match = seq_v
        .iter()
        .zip(&par_v)
        .chain(seq_d1.iter().zip(&par_d1))
        .all(|(a, b)| a.to_bits() == b.to_bits());

    let mut in_place = input.clone();
    apply_in_place(&act, Exec::Parallel, &mut in_place).unwrap();
    let in_place_match = in_place
        .iter()
        .zip(&seq)
        .all(|(a, b)| a.to_bits() == b.to_bits());

    // Same seed, two independent bench runs, sequential and parallel: every
    // checksum must come back bit-identical.
    let base = BenchConfig {
        activations: vec![Activation::Squareplus { b: B_UNIT }, Activation::Swish],
        n,
        reps: 2,
        warmup: 1,
        ..BenchConfig::default()
    };
    let parallel = BenchConfig {
        parallel: true,
        ..base.clone()
    };
    let first = run_bench(&base).unwrap();
    let second = run_bench(&base).unwrap();
    let threaded = run_bench(&parallel).unwrap();
    let checksum_of = |records: &[squareplus::bench::BenchRecord], name: &str| {
        records
            .iter()
            .find(|r| r.name == name)
            .unwrap_or_else(|| panic!("record {name} present"))
            .checksum
    };
    let checksums_stable = base.activations.iter().all(|act| {
        let name = act.name();
        let a = checksum_of(&first, &name);
        a.to_bits() == checksum_of(&second, &name).to_bits()
            && a.to_bits() == checksum_of(&threaded, &name).to_bits()
    });

    let ok = values_match && fused_match && in_place_match && checksums_stable;
    let detail = format!(
        "values_match={values_match} fused_match={fused_match} \
         in_place_match={in_place_match} checksums_stable={checksums_stable}"
    );
    report(9, "kernel-determinism", ok, &detail);
}

#[test]
fn acceptance_10_cli_round_trip() {
    let _serial = serialize();
    let mut failures: Vec<String> = Vec::new();

    // eval: exact origin row, and every printed cell parses back to the
    // bit-exact library value.
    let out = cli(&["eval", "--b", "4", "--", "0", "1", "-3", "17.25"]);
    if out.status.code() != Some(0) {
        failures.push(format!("eval exited {:?}", out.status.code()));
    }
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = text.lines().collect();
    if rows.get(1) != Some(&"0,1,0.5,0.25") {
        failures.push(format!("origin row was {:?}", rows.get(1)));
    }
    for row in rows.iter().skip(1) {
        let cells: Vec<&str> = row.split(',').collect();
        let x: f64 = cells[0].parse().unwrap();
        let (v, d1, d2): (f64, f64, f64) = (
            cells[1].parse().unwrap(),
            cells[2].parse().unwrap(),
            cells[3].parse().unwrap(),
        );
        if v.to_bits() != squareplus(x, 4.0).to_bits()
            || d1.to_bits() != squareplus_d1(x, 4.0).to_bits()
            || d2.to_bits() != squareplus_d2(x, 4.0).to_bits()
        {
            failures.push(format!("eval row {row:?} does not round-trip"));
        }
    }

    // bench: the CSV report reparses losslessly and reformats byte-for-byte.
    let out = cli(&[
        "bench", "--n", "50000", "--reps", "3", "--warmup", "1", "--format", "csv",
    ]);
    if out.status.code() != Some(0) {
        failures.push(format!("bench exited {:?}", out.status.code()));
    }
    let csv = String::from_utf8(out.stdout).unwrap();
    match parse_report_csv(&csv) {
        Ok(records) => {
            if format_report(&records, ReportFormat::Csv) != csv {
                failures.push("bench CSV did not reformat byte-for-byte".into());
            }
        }
        Err(e) => failures.push(format!("bench CSV failed to parse: {e}")),
    }

    // figures: sampled cells match the scalar oracles bit-for-bit, and the
    // naive single-precision column is exactly zero past its collapse.
    let dir = tempfile::tempdir().unwrap();
    let out = cli(&[
        "figures",
        "--start",
        "-20",
        "--stop",
        "20",
        "--count",
        "81",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    if out.status.code() != Some(0) {
        failures.push(format!("figures exited {:?}", out.status.code()));
    }
    let fig1 = std::fs::read_to_string(dir.path().join("fig1.csv")).unwrap();
    for row in fig1.lines().skip(1).step_by(10) {
        let cells: Vec<f64> = row.split(',').map(|c| c.parse().unwrap()).collect();
        let x = cells[0];
        let sig = sigmoid(x);
        let expect = [
            softplus_stable(x),
            sig,
            sig * (1.0 - sig),
            squareplus(x, B_SOFTPLUS_MATCH),
            squareplus_d1(x, B_SOFTPLUS_MATCH),
            squareplus_d2(x, B_SOFTPLUS_MATCH),
            squareplus(x, B_UNIT),
            squareplus_d1(x, B_UNIT),
            squareplus_d2(x, B_UNIT),
        ];
        for (i, want) in expect.iter().enumerate() {
            if cells[i + 1].to_bits() != want.to_bits() {
                failures.push(format!("fig1 column {} at x={x} is off", i + 1));
            }
        }
    }
    let breakdown = find_naive_breakdown(Precision::Single).unwrap_or(f64::INFINITY);
    let fig2 = std::fs::read_to_string(dir.path().join("fig2.csv")).unwrap();
    let mut collapsed_rows = 0;
    for row in fig2.lines().skip(1) {
        let cells: Vec<&str> = row.split(',').collect();
        let x: f64 = cells[0].parse().unwrap();
        if x > breakdown + 0.5 {
            collapsed_rows += 1;
            let naive: f64 = cells[2].parse().unwrap();
            let stable: f64 = cells[1].parse().unwrap();
            if naive != 0.0 {
                failures.push(format!("fig2 naive column at x={x} is {naive}, not 0"));
            }
            if stable <= 0.0 {
                failures.push(format!("fig2 stable column at x={x} lost the tail"));
            }
        }
    }
    if collapsed_rows == 0 {
        failures.push("fig2 grid never crossed the collapse point".into());
    }

    // verify: the whole registry passes through the CLI.
    let out = cli(&["verify", "all"]);
    if out.status.code() != Some(0) {
        failures.push(format!("verify all exited {:?}", out.status.code()));
    }
    let text = String::from_utf8(out.stdout).unwrap();
    if !(text.lines().count() == 15 && text.lines().all(|l| l.starts_with("PASS "))) {
        failures.push(format!("verify all output unexpected:\n{text}"));
    }

    let ok = failures.is_empty();
    report(10, "cli-round-trip", ok, &failures.join("; "));
}
