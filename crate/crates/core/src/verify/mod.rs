//! A registry of named checks that exercise the other modules on concrete
//! algebras and seeded random samples, producing pass/fail reports.

mod checks;

use std::fmt::Debug;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::complex::ChainComplex;
use crate::error::{Error, Result};
use crate::linalg::{size_guard, with_size_guard};

/// Seed used by `verify all` when none is given.
pub const DEFAULT_SEED: u64 = 1;

/// Samples drawn by every randomized check.
pub const SAMPLES: usize = 100;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckDescriptor {
    pub id: &'static str,
    /// The identity or vanishing statement being tested.
    pub statement: &'static str,
    /// Algebras, degree caps and sample counts.
    pub parameters: &'static str,
    pub expected: &'static str,
    pub randomized: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    /// Aborted by the size guard; the message names the offending step.
    Skipped(String),
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Skipped(_) => "skipped",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub id: String,
    pub seed: u64,
    pub verdict: Verdict,
    /// Computed values against expected ones, plus any narrowing of the claim.
    pub details: Vec<String>,
    /// Set exactly when the verdict is `Fail`; names the input that fails.
    pub counterexample: Option<String>,
    pub millis: u128,
    /// Chain-group dimensions and boundary sizes of the complexes built.
    pub stats: Vec<String>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

type CheckFn = fn(&mut Ctx) -> Result<()>;

struct Check {
    descriptor: CheckDescriptor,
    run: CheckFn,
}

/// Accumulates details while a check runs. The first failed expectation is
/// kept as the counterexample; later ones only add detail lines.
pub(crate) struct Ctx {
    seed: u64,
    details: Vec<String>,
    stats: Vec<String>,
    counterexample: Option<String>,
}

impl Ctx {
    fn new(seed: u64) -> Self {
        Self {
            seed,
            details: Vec::new(),
            stats: Vec::new(),
            counterexample: None,
        }
    }

    pub(crate) fn detail(&mut self, line: impl Into<String>) {
        self.details.push(line.into());
    }

    pub(crate) fn stat(&mut self, line: impl Into<String>) {
        self.stats.push(line.into());
    }

    pub(crate) fn complex_stats(&mut self, name: &str, c: &ChainComplex) {
        let nnz: Vec<usize> = (1..=c.cap())
            .map(|p| c.boundary_ref(p).map_or(0, |b| b.nnz()))
            .collect();
        self.stat(format!("{name}: dims {:?}, boundary nnz {:?}", c.dims(), nnz));
    }

    /// Records a failure unless `ok`; returns `ok`.
    pub(crate) fn require(&mut self, ok: bool, counterexample: impl FnOnce() -> String) -> bool {
        if !ok {
            let cx = counterexample();
            self.details.push(format!("FAILED: {cx}"));
            if self.counterexample.is_none() {
                self.counterexample = Some(cx);
            }
        }
        ok
    }

    pub(crate) fn compare<T: Debug + PartialEq>(&mut self, what: &str, got: T, want: T) -> bool {
        let ok = got == want;
        self.detail(format!("{what}: computed {got:?}, expected {want:?}"));
        self.require(ok, || format!("{what}: computed {got:?}, expected {want:?}"))
    }

    /// An independent stream per sub-check, so adding samples to one part
    /// does not shift the others.
    pub(crate) fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }

    pub(crate) fn seed(&self) -> u64 {
        self.seed
    }
}

fn registry() -> &'static [Check] {
    checks::REGISTRY
}

/// All checks in a fixed order.
pub fn list_checks() -> Vec<CheckDescriptor> {
    registry().iter().map(|c| c.descriptor.clone()).collect()
}

pub fn describe(id: &str) -> Result<CheckDescriptor> {
    find(id).map(|c| c.descriptor.clone())
}

fn find(id: &str) -> Result<&'static Check> {
    registry()
        .iter()
        .find(|c| c.descriptor.id == id)
        .ok_or_else(|| Error::UnknownCheck(id.to_string()))
}

/// Runs one check. Errors other than the size guard become failures whose
/// counterexample is the error message.
pub fn run_check(id: &str, seed: u64) -> Result<CheckReport> {
    let check = find(id)?;
    let mut ctx = Ctx::new(seed);
    let start = Instant::now();
    let outcome = (check.run)(&mut ctx);
    let millis = start.elapsed().as_millis();
    let verdict = match outcome {
        Err(Error::SizeGuard { .. }) => {
            let msg = outcome.unwrap_err().to_string();
            ctx.detail(format!("aborted: {msg}"));
            ctx.counterexample = None;
            Verdict::Skipped(msg)
        }
        Err(e) => {
            ctx.require(false, || format!("error: {e}"));
            Verdict::Fail
        }
        Ok(()) if ctx.counterexample.is_some() => Verdict::Fail,
        Ok(()) => Verdict::Pass,
    };
    Ok(CheckReport {
        id: id.to_string(),
        seed,
        verdict,
        details: ctx.details,
        counterexample: ctx.counterexample,
        millis,
        stats: ctx.stats,
    })
}

/// Runs several checks on up to `threads` worker threads. Every worker uses
/// the caller's size guard; reports come back in the order of `ids`.
pub fn run_checks(ids: &[String], seed: u64, threads: usize) -> Result<Vec<CheckReport>> {
    for id in ids {
        find(id)?;
    }
    let guard = size_guard();
    let threads = threads.clamp(1, ids.len().max(1));
    if threads == 1 {
        return ids.iter().map(|id| run_check(id, seed)).collect();
    }
    let next = std::sync::atomic::AtomicUsize::new(0);
    let results: std::sync::Mutex<Vec<Option<Result<CheckReport>>>> = std::sync::Mutex::new(vec![None; ids.len()]);
    std::thread::scope(|s| {
        for _ in 0..threads {
            s.spawn(|| with_size_guard(guard, || loop {
                let k = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                if k >= ids.len() {
                    break;
                }
                let r = run_check(&ids[k], seed);
                results.lock().expect("no panics while holding the lock")[k] = Some(r);
            }));
        }
    });
    let slots = results.into_inner().expect("workers finished");
    slots.into_iter().map(|r| r.expect("every slot filled")).collect()
}

/// A human-readable block.
pub fn format_text(r: &CheckReport, with_timing: bool) -> String {
    let mut out = format!("{} [{}] seed {}", r.id, r.verdict.label().to_uppercase(), r.seed);
    if with_timing {
        out.push_str(&format!(" ({} ms)", r.millis));
    }
    out.push('\n');
    if let Verdict::Skipped(msg) = &r.verdict {
        out.push_str(&format!("  skipped: {msg}\n"));
    }
    if let Some(cx) = &r.counterexample {
        out.push_str(&format!("  counterexample: {cx}\n"));
    }
    for d in &r.details {
        out.push_str(&format!("  {d}\n"));
    }
    for s in &r.stats {
        out.push_str(&format!("  [stats] {s}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique_and_ordered() {
        let ids: Vec<_> = list_checks().iter().map(|d| d.id).collect();
        let mut sorted = ids.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), ids.len());
        assert_eq!(ids, list_checks().iter().map(|d| d.id).collect::<Vec<_>>());
        for id in ["HH-UNIT-K", "COCYCLE-JACOBI", "APPENDIX-HOMOTOPY"] {
            assert!(ids.contains(&id));
        }
    }

    #[test]
    fn unknown_id() {
        assert_eq!(run_check("NOPE", 0), Err(Error::UnknownCheck("NOPE".into())));
        assert!(run_checks(&["HH-UNIT-K".into(), "NOPE".into()], 0, 2).is_err());
    }

    #[test]
    fn unit_field() {
        let r = run_check("HH-UNIT-K", 5).unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "{r:?}");
        assert!(r.details[0].contains("[1, 0, 0, 0]"));
        assert!(r.counterexample.is_none());
    }

    #[test]
    fn size_guard_skips() {
        let r = with_size_guard(10, || run_check("MORITA-N2", 1)).unwrap();
        assert!(matches!(r.verdict, Verdict::Skipped(_)));
        assert!(r.counterexample.is_none());
    }

    #[test]
    fn threaded_run_keeps_order() {
        let ids: Vec<String> = ["SMASH-ISO", "HH-UNIT-K", "AFFINE-BRACKET"].map(String::from).to_vec();
        let rs = run_checks(&ids, 3, 3).unwrap();
        assert_eq!(rs.iter().map(|r| r.id.as_str()).collect::<Vec<_>>(), ["SMASH-ISO", "HH-UNIT-K", "AFFINE-BRACKET"]);
        assert!(rs.iter().all(|r| r.passed()));
        let one = run_checks(&ids, 3, 1).unwrap();
        let strip = |v: Vec<CheckReport>| v.into_iter().map(|r| (r.id, r.verdict, r.details)).collect::<Vec<_>>();
        assert_eq!(strip(rs), strip(one));
    }
}
