//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use koszulkit_core::sl2::{
    anti_automorphism_check, build_regular_block, build_singular_block, cartan_matches_quiver,
    displayed_ext_tables, frobenius_form, koszulity_probe, poincare_symmetry, sl2_report,
    QuiverAlgebra,
};
use koszulkit_core::suites::{run_suite, Suite, SuiteConfig};
use koszulkit_core::Fp;

const SEED: u64 = 7;

type Criterion = (
    u32,
    &'static str,
    Option<Duration>,
    Box<dyn Fn() -> Outcome>,
);

struct Outcome {
    pass: bool,
    detail: String,
}

fn configs() -> Vec<(usize, usize, u32)> {
    let mut out = Vec::new();
    for p in [3, 5] {
        for e in 0..=3 {
            for f in 0..=e {
                out.push((e, f, p));
            }
        }
    }
    out
}

fn cfg(e: usize, f: usize, p: u32, trials: usize) -> SuiteConfig {
    SuiteConfig {
        e,
        f,
        p,
        trials,
        seed: SEED,
        window: None,
    }
}

/// Run a suite over the whole grid.
fn grid(suite: Suite, trials: usize) -> Outcome {
    let mut instances = 0;
    let mut failures = Vec::new();
    for (e, f, p) in configs() {
        match run_suite(suite, &cfg(e, f, p, trials)) {
            Ok(r) => {
                instances += r.trials;
                for t in r.records.iter().filter(|t| !t.pass) {
                    let names: Vec<&str> = t
                        .checks
                        .iter()
                        .filter(|c| !c.pass)
                        .map(|c| c.name.as_str())
                        .collect();
                    failures.push(format!(
                        "e={e} f={f} p={p} trial {}: {}",
                        t.trial,
                        names.join(", ")
                    ));
                }
            }
            Err(err) => failures.push(format!("e={e} f={f} p={p}: {err}")),
        }
    }
    let configs = configs().len();
    if failures.is_empty() {
        Outcome {
            pass: true,
            detail: format!("{instances} instances over {configs} configurations"),
        }
    } else {
        Outcome {
            pass: false,
            detail: format!("{} failing, first: {}", failures.len(), failures[0]),
        }
    }
}

fn all(checks: Vec<(String, bool)>) -> Outcome {
    let failed: Vec<String> = checks
        .iter()
        .filter(|c| !c.1)
        .map(|c| c.0.clone())
        .collect();
    Outcome {
        pass: failed.is_empty(),
        detail: if failed.is_empty() {
            format!("{} checks", checks.len())
        } else {
            format!("failed: {}", failed.join("; "))
        },
    }
}

fn regular_grid() -> Vec<(u32, u32)> {
    [3u32, 5, 7]
        .iter()
        .flat_map(|&p| (0..=(p - 3) / 2).map(move |l| (p, l)))
        .collect()
}

fn regular_blocks() -> Outcome {
    let mut checks = Vec::new();
    let tables: Vec<Vec<(i32, usize)>> = displayed_ext_tables()
        .iter()
        .map(|t| t.dims.iter().map(|(&i, &n)| (i, n)).collect())
        .collect();
    checks.push((
        format!("ext tables {tables:?}"),
        tables == [vec![(0, 1), (2, 1)], vec![(0, 2)], vec![(2, 2)]],
    ));
    let q = QuiverAlgebra::new(Fp::new(3).unwrap(), 4);
    checks.push((
        format!("quiver dims {:?}", q.degree_dims()),
        q.degree_dims() == [2, 4, 2, 0, 0],
    ));
    for (p, l) in regular_grid() {
        let a = match build_regular_block(p, l) {
            Ok(a) => a,
            Err(e) => {
                checks.push((format!("p={p} lambda={l}: {e}"), false));
                continue;
            }
        };
        let (m1, m2) = ((l + 1) as usize, (p - 1 - l) as usize);
        let outer = m1 * m1 + m2 * m2;
        checks.push((
            format!("p={p} lambda={l} dimension {}", a.dim()),
            a.dim() == 2 * (p * p) as usize,
        ));
        checks.push((
            format!("p={p} lambda={l} degree dims {:?}", a.degree_dims()),
            a.degree_dims() == [outer, 4 * m1 * m2, outer],
        ));
        checks.push((
            format!("p={p} lambda={l} associative"),
            a.associativity_witness().is_none(),
        ));
        checks.push((
            format!("p={p} lambda={l} cartan"),
            cartan_matches_quiver(&a, &q),
        ));
    }
    all(checks)
}

fn frobenius() -> Outcome {
    let mut checks = Vec::new();
    for (p, l) in regular_grid() {
        let a = build_regular_block(p, l).unwrap();
        checks.push((
            format!("p={p} lambda={l} trace form"),
            frobenius_form(&a, 2).pass(),
        ));
        checks.push((
            format!("p={p} lambda={l} anti-automorphism"),
            anti_automorphism_check(&a).pass(),
        ));
        checks.push((
            format!("p={p} lambda={l} palindromic"),
            poincare_symmetry(&a, 1).palindromic,
        ));
    }
    for p in [3, 5, 7] {
        let a = build_singular_block(p).unwrap();
        checks.push((
            format!("p={p} singular trace form"),
            frobenius_form(&a, 0).pass(),
        ));
        checks.push((
            format!("p={p} singular anti-automorphism"),
            anti_automorphism_check(&a).pass(),
        ));
        checks.push((
            format!("p={p} singular palindromic"),
            poincare_symmetry(&a, 0).palindromic,
        ));
    }
    all(checks)
}

fn koszulity() -> Outcome {
    let mut checks = Vec::new();
    for (p, l) in regular_grid() {
        let r = koszulity_probe(&build_regular_block(p, l).unwrap(), 4);
        checks.push((
            format!("p={p} lambda={l} witness {:?}", r.witness),
            r.linear && r.betti.iter().all(|b| b.len() == 5),
        ));
    }
    for p in [3, 5, 7] {
        let r = koszulity_probe(&build_singular_block(p).unwrap(), 4);
        checks.push((
            format!("p={p} singular"),
            r.linear && r.betti == vec![vec![1]],
        ));
    }
    all(checks)
}

fn singular() -> Outcome {
    let mut checks = Vec::new();
    for p in [3, 5, 7] {
        let r = sl2_report(p, None, 4).unwrap();
        let pp = (p * p) as usize;
        checks.push((
            format!("p={p} dimension {}", r.dimension),
            r.dimension == pp,
        ));
        checks.push((
            format!("p={p} degrees {:?}", r.degree_dims),
            r.degree_dims == [pp],
        ));
        checks.push((
            format!("p={p} one simple of dimension p"),
            r.simple_dims == [p as usize],
        ));
        let mat = r
            .checks
            .iter()
            .any(|c| c.name == "matrix algebra" && c.pass);
        checks.push((format!("p={p} matrix units"), mat));
    }
    all(checks)
}

fn determinism() -> Outcome {
    let serial = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .expect("thread pool");
    let mut checks = Vec::new();
    for suite in Suite::ALL {
        for (e, f, p) in [(3, 2, 5), (2, 1, 3)] {
            let c = cfg(e, f, p, 10);
            let run = || serde_json::to_string(&run_suite(suite, &c).unwrap()).unwrap();
            let first = run();
            let again = run();
            let one_thread = serial.install(run);
            checks.push((
                format!("{suite} e={e} f={f} p={p}"),
                first == again && first == one_thread,
            ));
        }
    }
    for (p, l) in [(5, Some(1)), (7, None)] {
        let run = || serde_json::to_string(&sl2_report(p, l, 4).unwrap()).unwrap();
        checks.push((format!("sl2 p={p} lambda={l:?}"), run() == run()));
    }
    all(checks)
}

fn main() -> ExitCode {
    let criteria: Vec<Criterion> = vec![
        (
            1,
            "kappa round trip: unit and counit are quasi-isomorphisms",
            Some(Duration::from_secs(30)),
            Box::new(|| grid(Suite::RoundTrip, 25)),
        ),
        (
            2,
            "exactness: F and G of acyclic modules are acyclic",
            None,
            Box::new(|| grid(Suite::Exactness, 10)),
        ),
        (
            3,
            "duality oracle: semifree D_T agrees with the closed formula",
            None,
            Box::new(|| grid(Suite::DualityOracle, 25)),
        ),
        (
            4,
            "biduality: D_T D_T quasi-iso, D_S D_S identity",
            None,
            Box::new(|| grid(Suite::Biduality, 25)),
        ),
        (
            5,
            "compatibility: D_T(kappa M) = kappa(D_S M)[n]<2n>",
            None,
            Box::new(|| grid(Suite::Compat, 25)),
        ),
        (
            6,
            "fbot: Rp(D_Q M) = D_P(Rp M)[m]<2m>",
            None,
            Box::new(|| grid(Suite::Fbot, 10)),
        ),
        (
            7,
            "shift identities for xi and kappa",
            None,
            Box::new(|| grid(Suite::Shifts, 10)),
        ),
        (
            8,
            "SL(2) regular blocks: dimensions, Ext tables, quiver",
            Some(Duration::from_secs(10)),
            Box::new(regular_blocks),
        ),
        (
            9,
            "SL(2) Frobenius form, anti-automorphism, palindromy",
            None,
            Box::new(frobenius),
        ),
        (
            10,
            "SL(2) Koszulity: linear resolutions to degree 4",
            Some(Duration::from_secs(60)),
            Box::new(koszulity),
        ),
        (
            11,
            "SL(2) singular block is Mat_p in degree 0",
            None,
            Box::new(singular),
        ),
        (
            12,
            "determinism: identical JSON on reruns and thread counts",
            None,
            Box::new(determinism),
        ),
    ];
    let mut failed = 0;
    for (n, name, budget, run) in criteria {
        let start = Instant::now();
        let mut out = run();
        let elapsed = start.elapsed();
        if let Some(limit) = budget {
            if elapsed > limit {
                out.pass = false;
                out.detail = format!("{}; over the {} s budget", out.detail, limit.as_secs());
            }
        }
        if !out.pass {
            failed += 1;
        }
        println!(
            "{} {n:>2} {name} ({}; {:.2} s)",
            if out.pass { "PASS" } else { "FAIL" },
            out.detail,
            elapsed.as_secs_f64()
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
