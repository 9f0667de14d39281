//! The acceptance checks, one function per criterion, shared by the test suite and
//! the `verify` command.

mod checks;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};
use std::time::Instant;

use serde::Serialize;

use crate::arquiver::{ArCoordinate, Chart};
use crate::error::Result;
use crate::gentle::{AlgebraParams, GentlePresentation};
use crate::homlab::Oracle;
use crate::linalg::PrimeBackend;

pub use checks::hammock_disagreements;

/// The algebras every criterion runs on.
pub const TEST_ALGEBRAS: [(u32, u32, u32); 6] = [(1, 1, 0), (2, 2, 0), (1, 2, 0), (2, 3, 0), (2, 3, 1), (3, 3, 1)];

pub const CRITERIA: [(u8, &str); 11] = [
    (1, "master-word fragments realize with d^2 = 0"),
    (2, "Hom dimension bounds"),
    (3, "hammock membership agrees with the oracle"),
    (4, "suspension is the shift"),
    (5, "boundary triangles"),
    (6, "maps factor through hammock members"),
    (7, "composites along extended rays and corays are nonzero"),
    (8, "Cantor-Bendixson strata"),
    (9, "global dimension picks the chart"),
    (10, "X_{a,inf} as a homotopy colimit"),
    (11, "prime-field dimensions agree"),
];

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    /// Index bound of the coordinate windows.
    pub bound: i64,
    pub seed: u64,
    pub prime: u64,
    /// Admissible triples per algebra in the factorization check.
    pub triples: usize,
    /// Sampled coordinates per algebra in the suspension check.
    pub suspensions: usize,
    /// Range of `a` in the boundary triangles.
    pub triangle_range: i64,
    /// Longest composite along a ray or coray.
    pub chain_length: usize,
    pub algebras: Vec<AlgebraParams>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            bound: 4,
            seed: 0x6b70_726f_6a00,
            prime: 32003,
            triples: 200,
            suspensions: 50,
            triangle_range: 3,
            chain_length: 6,
            algebras: TEST_ALGEBRAS.iter().map(|&(r, n, m)| AlgebraParams::new(r, n, m).unwrap()).collect(),
        }
    }
}

/// One algebra with its chart and oracle.
pub struct Lab {
    pub pres: Arc<GentlePresentation>,
    pub chart: Chart,
    pub oracle: Oracle,
}

impl Lab {
    pub fn new(params: AlgebraParams) -> Result<Self> {
        let pres = Arc::new(GentlePresentation::build(params)?);
        Ok(Self { chart: Chart::new(pres.clone()), oracle: Oracle::new(pres.clone()), pres })
    }

    pub fn params(&self) -> AlgebraParams {
        self.pres.params()
    }
}

/// Hom dimensions between all pairs of a window; `None` where the oracle failed.
pub struct Sweep {
    pub window: Vec<ArCoordinate>,
    pub dims: Vec<Option<usize>>,
    pub errors: Vec<String>,
}

impl Sweep {
    pub fn dim(&self, a: usize, b: usize) -> Option<usize> {
        self.dims[a * self.window.len() + b]
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CriterionReport {
    pub id: u8,
    pub title: String,
    pub passed: bool,
    pub checks: usize,
    pub failure_count: usize,
    /// The first few failures.
    pub failures: Vec<String>,
    pub notes: Vec<String>,
    pub seconds: f64,
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "criterion {:>2} {} {}: {} checks, {} failures ({:.1}s)",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.title,
            self.checks,
            self.failure_count,
            self.seconds
        )
    }
}

/// Collects checks and failures for one criterion.
#[derive(Default)]
pub(crate) struct Tally {
    pub checks: usize,
    pub failure_count: usize,
    pub failures: Vec<String>,
    pub notes: Vec<String>,
}

impl Tally {
    pub fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.fail(what());
        }
    }

    pub fn fail(&mut self, what: String) {
        self.failure_count += 1;
        if self.failures.len() < 20 {
            self.failures.push(what);
        }
    }

    pub fn note(&mut self, what: String) {
        self.notes.push(what);
    }
}

type SweepKey = (usize, &'static str);

/// Labs for every configured algebra, and the Hom sweeps shared between criteria.
pub struct Session {
    pub config: VerifyConfig,
    pub labs: Vec<Lab>,
    prime_oracles: Vec<Oracle>,
    sweeps: Mutex<HashMap<SweepKey, Arc<OnceLock<Arc<Sweep>>>>>,
}

impl Session {
    pub fn new(config: VerifyConfig) -> Result<Self> {
        let labs = config.algebras.iter().map(|&p| Lab::new(p)).collect::<Result<Vec<_>>>()?;
        let backend = Arc::new(PrimeBackend::new(config.prime)?);
        let prime_oracles = labs.iter().map(|l| Oracle::with_backend(l.pres.clone(), backend.clone())).collect();
        Ok(Self { config, labs, prime_oracles, sweeps: Mutex::new(HashMap::new()) })
    }

    /// The pair sweep on the configured window, with the exact or the prime-field oracle.
    pub fn sweep(&self, lab: usize, prime: bool) -> Arc<Sweep> {
        let key = (lab, if prime { "prime" } else { "exact" });
        let cell = self.sweeps.lock().unwrap().entry(key).or_default().clone();
        cell.get_or_init(|| {
            let oracle = if prime { &self.prime_oracles[lab] } else { &self.labs[lab].oracle };
            Arc::new(checks::sweep(&self.labs[lab].chart, oracle, self.config.bound))
        })
        .clone()
    }

    pub fn run(&self, id: u8) -> CriterionReport {
        let start = Instant::now();
        let mut t = Tally::default();
        match id {
            1 => checks::fragments(self, &mut t),
            2 => checks::hom_bounds(self, &mut t),
            3 => checks::hammocks(self, &mut t),
            4 => checks::suspension(self, &mut t),
            5 => checks::triangles(self, &mut t),
            6 => checks::factorization(self, &mut t),
            7 => checks::rays(self, &mut t),
            8 => checks::strata(self, &mut t),
            9 => checks::regimes(self, &mut t),
            10 => checks::colimits(self, &mut t),
            11 => checks::prime_field(self, &mut t),
            _ => t.fail(format!("no criterion {id}")),
        }
        let title = CRITERIA.iter().find(|c| c.0 == id).map_or("unknown", |c| c.1).to_string();
        CriterionReport {
            id,
            title,
            passed: t.failure_count == 0 && t.checks > 0,
            checks: t.checks,
            failure_count: t.failure_count,
            failures: t.failures,
            notes: t.notes,
            seconds: start.elapsed().as_secs_f64(),
        }
    }

    pub fn run_all(&self) -> Vec<CriterionReport> {
        CRITERIA.iter().map(|&(id, _)| self.run(id)).collect()
    }
}
