//! Randomized verification suites with deterministic JSON reports.
//!
//! Trial `t` of suite `s` draws from the stream `(seed, s/e/f/p, t)`, so the
//! report does not depend on how many threads ran the trials.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{Algebra, AlgebraKind};
use crate::bigraded::{BigradedDims, Window, SHIFT_CONVENTION};
use crate::complex::{DgObject, SliceChainMap};
use crate::error::{Error, Result};
use crate::homdual::{biduality_map, check_compat, dualize_s, oracle_compare_t, DualityReport};
use crate::lkd::{counit, functor_f, functor_g, regrade_xi, unit, xi_dims};
use crate::module::SemifreeDgModule;
use crate::qmodel::check_fbot;
use crate::random::{random_acyclic, random_module, trial_rng, RandomShape};

pub const SCHEMA: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    RoundTrip,
    Exactness,
    DualityOracle,
    Biduality,
    Compat,
    Fbot,
    Shifts,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::RoundTrip,
        Suite::Exactness,
        Suite::DualityOracle,
        Suite::Biduality,
        Suite::Compat,
        Suite::Fbot,
        Suite::Shifts,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::RoundTrip => "round-trip",
            Suite::Exactness => "exactness",
            Suite::DualityOracle => "duality-oracle",
            Suite::Biduality => "biduality",
            Suite::Compat => "compat",
            Suite::Fbot => "fbot",
            Suite::Shifts => "shifts",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Input(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub e: usize,
    pub f: usize,
    pub p: u32,
    pub trials: usize,
    pub seed: u64,
    /// Further restricts every comparison window.
    pub window: Option<Window>,
}

/// One random instance.
#[derive(Clone, Debug, Serialize)]
pub struct TrialRecord {
    pub trial: usize,
    pub pass: bool,
    pub checks: Vec<CheckRecord>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    /// Tables are attached only on failure.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<DualityReport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub schema: u32,
    pub convention: &'static str,
    pub certification: &'static str,
    pub suite: Suite,
    pub e: usize,
    pub f: usize,
    pub p: u32,
    pub seed: u64,
    pub trials: usize,
    pub passed: usize,
    pub failed: usize,
    pub records: Vec<TrialRecord>,
}

impl SuiteReport {
    pub fn pass(&self) -> bool {
        self.failed == 0
    }
}

const CERTIFICATION: &str =
    "derived isomorphisms are certified by equal cohomology tables on the window; \
     unit, counit and biduality are certified by acyclic cones";

struct Ctx<'a> {
    cfg: &'a SuiteConfig,
}

impl Ctx<'_> {
    fn alg(&self, kind: AlgebraKind) -> Algebra {
        Algebra::new(kind, self.cfg.e, self.cfg.f, self.cfg.p).expect("validated config")
    }

    fn clip(&self, w: Window) -> Window {
        match self.cfg.window {
            None => w,
            Some(u) => Window::new(
                w.i0.max(u.i0),
                w.i1.min(u.i1),
                w.j0.max(u.j0),
                w.j1.min(u.j1),
            ),
        }
    }

    fn report(&self, name: &str, r: DualityReport) -> CheckRecord {
        let w = self.clip(r.window);
        let r = DualityReport::new(&r.check, w, r.lhs, r.rhs);
        let pass = r.is_equal();
        CheckRecord {
            name: name.into(),
            pass,
            detail: r.first_mismatch.map(|b| format!("first mismatch at {b}")),
            report: (!pass).then_some(r),
        }
    }

    fn tables(&self, name: &str, w: Window, lhs: BigradedDims, rhs: BigradedDims) -> CheckRecord {
        self.report(name, DualityReport::new(name, w, lhs, rhs))
    }

    fn quasi_iso(&self, name: &str, map: &impl SliceChainMap, w: Window) -> CheckRecord {
        let w = self.clip(w);
        let outcome = map.check_chain_on(&w).map(|_| map.cone_cohomology(&w));
        match outcome {
            Err(e) => fail(name, e.to_string()),
            Ok(h) if h.is_empty() => ok(name),
            Ok(h) => fail(name, format!("cone cohomology {h}")),
        }
    }

    fn euler(&self, name: &str, a: &impl DgObject, b: &impl DgObject, w: Window) -> CheckRecord {
        let w = self.clip(w);
        let (ea, eb) = (
            a.cohomology(&w).euler_by_internal(),
            b.cohomology(&w).euler_by_internal(),
        );
        if ea == eb {
            ok(name)
        } else {
            fail(
                name,
                format!("euler characteristics differ: {ea:?} vs {eb:?}"),
            )
        }
    }
}

fn ok(name: &str) -> CheckRecord {
    CheckRecord {
        name: name.into(),
        pass: true,
        detail: None,
        report: None,
    }
}

fn fail(name: &str, detail: String) -> CheckRecord {
    CheckRecord {
        name: name.into(),
        pass: false,
        detail: Some(detail),
        report: None,
    }
}

fn attempt(name: &str, r: Result<CheckRecord>) -> CheckRecord {
    r.unwrap_or_else(|e| fail(name, e.to_string()))
}

fn round_trip(cx: &Ctx, rng: &mut impl rand::Rng) -> Vec<CheckRecord> {
    let m = random_module(&cx.alg(AlgebraKind::S), RandomShape::default(), rng);
    let n = random_module(&cx.alg(AlgebraKind::T), RandomShape::default(), rng);
    let mut out = Vec::new();
    out.push(attempt(
        "counit",
        counit(&m, 1).map(|(map, w)| {
            let mut r = cx.quasi_iso("counit", &map, w);
            if r.pass {
                r = cx.euler("counit euler", map.source(), map.target(), w);
            }
            r
        }),
    ));
    out.push(attempt(
        "unit",
        unit(&n, 1).map(|(map, w)| match map.check_chain_map() {
            Err(e) => fail("unit", e.to_string()),
            Ok(()) => {
                let r = cx.quasi_iso("unit", &map, w);
                if r.pass {
                    cx.euler("unit euler", map.source(), map.target(), w)
                } else {
                    r
                }
            }
        }),
    ));
    out
}

fn exactness(cx: &Ctx, rng: &mut impl rand::Rng) -> Vec<CheckRecord> {
    let m = random_acyclic(&cx.alg(AlgebraKind::S), RandomShape::default(), rng);
    let n = random_acyclic(&cx.alg(AlgebraKind::T), RandomShape::default(), rng);
    let empty = |name: &str, h: BigradedDims| {
        if h.is_empty() {
            ok(name)
        } else {
            fail(name, format!("cohomology {h}"))
        }
    };
    let (lo, hi) = m.internal_range().unwrap_or((0, 0));
    let f_check = functor_f(&m, lo - 4).map(|fm| {
        empty(
            "F(acyclic)",
            fm.module.cohomology(&cx.clip(Window::internal(lo - 4, hi))),
        )
    });
    let (lo, hi) = n.internal_range().unwrap_or((0, 0));
    let g_check = functor_g(&n).map(|gn| {
        empty(
            "G(acyclic)",
            gn.cohomology(&cx.clip(Window::internal(lo - 6, hi + 2))),
        )
    });
    vec![
        attempt("F(acyclic)", f_check),
        attempt("G(acyclic)", g_check),
    ]
}

fn duality_oracle(cx: &Ctx, rng: &mut impl rand::Rng) -> Vec<CheckRecord> {
    let m = random_module(&cx.alg(AlgebraKind::T), RandomShape::default(), rng);
    vec![attempt(
        "oracle",
        oracle_compare_t(&m).map(|r| cx.report("oracle", r)),
    )]
}

fn biduality(cx: &Ctx, rng: &mut impl rand::Rng) -> Vec<CheckRecord> {
    let n = random_module(&cx.alg(AlgebraKind::T), RandomShape::default(), rng);
    let m = random_module(&cx.alg(AlgebraKind::S), RandomShape::default(), rng);
    let t_check = biduality_map(&n).map(|ev| match ev.check_chain_map() {
        Err(e) => fail("D_T biduality", e.to_string()),
        Ok(()) => {
            let (lo, hi) = n.internal_range().unwrap_or((0, 0));
            let n2 = 2 * cx.cfg.f as i32;
            cx.quasi_iso("D_T biduality", &ev, Window::internal(lo - 2, hi + n2 + 2))
        }
    });
    let s_check = dualize_s(&m).and_then(|d| {
        d.validate()?;
        Ok(if dualize_s(&d)? == m {
            ok("D_S involution")
        } else {
            fail("D_S involution", "D_S(D_S M) differs from M".into())
        })
    });
    vec![
        attempt("D_T biduality", t_check),
        attempt("D_S involution", s_check),
    ]
}

fn compat(cx: &Ctx, rng: &mut impl rand::Rng) -> Vec<CheckRecord> {
    let m = random_module(&cx.alg(AlgebraKind::S), RandomShape::default(), rng);
    vec![attempt(
        "compat",
        check_compat(&m).map(|r| cx.report("compat", r)),
    )]
}

fn fbot(cx: &Ctx, rng: &mut impl rand::Rng) -> Vec<CheckRecord> {
    let m = random_module(&cx.alg(AlgebraKind::Q), RandomShape::default(), rng);
    vec![attempt(
        "fbot",
        check_fbot(&m).map(|r| cx.report("fbot", r)),
    )]
}

fn shifts(cx: &Ctx, rng: &mut impl rand::Rng) -> Vec<CheckRecord> {
    let m = random_module(&cx.alg(AlgebraKind::S), RandomShape::default(), rng);
    let (lo, hi) = m.internal_range().unwrap_or((0, 0));
    let mut out = Vec::new();
    for s in -2..=2 {
        let w = Window::internal(lo - 6 + s, hi + s);
        let xi = (|| -> Result<CheckRecord> {
            let lhs = regrade_xi(&m.shift(0, s))?.cohomology(&w);
            let base = regrade_xi(&m)?.cohomology(&Window::internal(w.j0 - s, w.j1 - s));
            // table identity first, then the module identity through the shifted presentation
            let rhs = base.shift(-s, s);
            let via_module = regrade_xi(&m)?.shift(0, s).shift(-s, 0).cohomology(&w);
            let mut r = cx.tables(&format!("xi(M<{s}>)"), w, lhs.clone(), rhs);
            if r.pass && via_module != lhs {
                r = fail(&r.name, "module-level shift disagrees".into());
            }
            Ok(r)
        })();
        out.push(attempt(&format!("xi(M<{s}>)"), xi));
        let kappa = (|| -> Result<CheckRecord> {
            let exact = lo - 4;
            let lhs = functor_f(&m.shift(0, s), exact + s)?
                .module
                .cohomology(&Window::internal(exact + s, hi + s));
            let rhs = functor_f(&m, exact)?
                .module
                .cohomology(&Window::internal(exact, hi))
                .shift(0, s);
            Ok(cx.tables(
                &format!("kappa(M<{s}>)"),
                Window::internal(exact + s, hi + s),
                lhs,
                rhs,
            ))
        })();
        out.push(attempt(&format!("kappa(M<{s}>)"), kappa));
    }
    let xi_table = (|| -> Result<CheckRecord> {
        let w = Window::internal(lo - 6, hi);
        Ok(cx.tables(
            "xi on tables",
            w,
            regrade_xi(&m)?.cohomology(&w),
            xi_dims(&m.cohomology(&w)),
        ))
    })();
    out.push(attempt("xi on tables", xi_table));
    out
}

/// Run one suite on one configuration.
pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> Result<SuiteReport> {
    Algebra::new(AlgebraKind::Q, cfg.e, cfg.f, cfg.p)?;
    let cx = Ctx { cfg };
    let label = format!("{suite}/e{}/f{}/p{}", cfg.e, cfg.f, cfg.p);
    let records: Vec<TrialRecord> = (0..cfg.trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(cfg.seed, &label, t as u64);
            let checks = match suite {
                Suite::RoundTrip => round_trip(&cx, &mut rng),
                Suite::Exactness => exactness(&cx, &mut rng),
                Suite::DualityOracle => duality_oracle(&cx, &mut rng),
                Suite::Biduality => biduality(&cx, &mut rng),
                Suite::Compat => compat(&cx, &mut rng),
                Suite::Fbot => fbot(&cx, &mut rng),
                Suite::Shifts => shifts(&cx, &mut rng),
            };
            TrialRecord {
                trial: t,
                pass: checks.iter().all(|c| c.pass),
                checks,
            }
        })
        .collect();
    let passed = records.iter().filter(|r| r.pass).count();
    Ok(SuiteReport {
        schema: SCHEMA,
        convention: SHIFT_CONVENTION,
        certification: CERTIFICATION,
        suite,
        e: cfg.e,
        f: cfg.f,
        p: cfg.p,
        seed: cfg.seed,
        trials: cfg.trials,
        passed,
        failed: records.len() - passed,
        records,
    })
}

/// Random module over `kind` for trial `t`, exposed for tests and the CLI.
pub fn sample_module(kind: AlgebraKind, cfg: &SuiteConfig, t: u64) -> Result<SemifreeDgModule> {
    let a = Algebra::new(kind, cfg.e, cfg.f, cfg.p)?;
    Ok(random_module(
        &a,
        RandomShape::default(),
        &mut trial_rng(cfg.seed, &format!("sample/{kind}"), t),
    ))
}
