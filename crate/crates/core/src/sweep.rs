//! Exhaustive parameter-space sweeps with parallel execution, deterministic
//! output ordering and counterexample capture.
//!
//! A sweep enumerates every parameter point of an identity's domain within
//! bounds, evaluates each point through the registry, and aggregates the
//! failures. Work is partitioned into contiguous chunks of the enumeration
//! order; workers claim chunks freely but results are buffered and released
//! strictly in order, so two runs of the same spec produce byte-identical
//! record streams for any worker count.
//!
//! Failing in-domain records are counterexample candidates. They are always
//! re-evaluated single-threaded ([`recheck_failure`]) before the report is
//! returned, and where the point is small enough the independent enumeration
//! oracles are consulted as well — a falsification claim must never rest on
//! one code path.

use std::io;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::{Condvar, Mutex};
use std::thread;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::dyadic::{DyadicCase, MAX_J};
use crate::exact::falling_factorial;
use crate::identities::{
    registry_lookup, EvalError, IdentityId, ParamPoint, VerificationRecord,
};
use crate::oracles;

/// Whether a sweep visits only in-domain points or also the boundary shell
/// (points where exactly one domain inequality is violated by exactly 1,
/// preconditions intact).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstraintMode {
    InDomainOnly,
    IncludeBoundary,
}

/// Requested rendering of a sweep's record stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Jsonl,
    Csv,
    Summary,
}

/// A bounded sweep over one identity's parameter domain.
///
/// `n_max` is the mandatory primary bound: the largest `n` for the
/// permutation-style identities, the largest width `j` for `dyadic`.
/// `k_max` / `m_max` tighten the other parameters when present; by default
/// the domain constraints themselves are the only cap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepSpec {
    pub identity: IdentityId,
    pub n_max: u64,
    pub k_max: Option<u64>,
    pub m_max: Option<u64>,
    pub mode: ConstraintMode,
    pub workers: usize,
    pub output: OutputFormat,
}

impl SweepSpec {
    /// A single-worker, in-domain, summary-output sweep; adjust fields as
    /// needed.
    pub fn new(identity: IdentityId, n_max: u64) -> Self {
        SweepSpec {
            identity,
            n_max,
            k_max: None,
            m_max: None,
            mode: ConstraintMode::InDomainOnly,
            workers: 1,
            output: OutputFormat::Summary,
        }
    }
}

/// Aggregate outcome of a sweep. The full record stream is not retained here;
/// it is delivered in enumeration order to the sink passed to
/// [`run_sweep_with`].
#[derive(Debug, Clone)]
pub struct SweepReport {
    pub spec: SweepSpec,
    pub points_evaluated: u64,
    /// In-domain records with a nonzero residual, re-verified single-threaded.
    pub failures: Vec<VerificationRecord>,
    /// Boundary-shell records with a nonzero residual (only in
    /// [`ConstraintMode::IncludeBoundary`]); these are observations, never
    /// counted as identity failures.
    pub boundary_failures: Vec<VerificationRecord>,
    pub wall_time: Duration,
}

/// A sweep that could not run or was aborted.
#[derive(Debug, Error)]
pub enum SweepError {
    #[error("invalid sweep: {0}")]
    Spec(String),
    #[error("evaluation aborted at point ({point}): {source}")]
    Eval {
        point: ParamPoint,
        #[source]
        source: EvalError,
    },
    #[error("output sink failed: {0}")]
    Sink(#[from] io::Error),
}

/// Every enumeration is materialized; refuse domains that would not fit in
/// memory rather than thrashing.
pub const MAX_POINTS: usize = 5_000_000;

fn classify(slacks: &[i64], mode: ConstraintMode) -> bool {
    if slacks.iter().all(|&s| s >= 0) {
        return true;
    }
    if mode != ConstraintMode::IncludeBoundary {
        return false;
    }
    // Boundary shell: exactly one constraint missed, by exactly one.
    let violated: Vec<i64> = slacks.iter().copied().filter(|&s| s < 0).collect();
    violated == [-1]
}

fn push_point(points: &mut Vec<ParamPoint>, point: ParamPoint) -> Result<(), SweepError> {
    if points.len() >= MAX_POINTS {
        return Err(SweepError::Spec(format!(
            "domain exceeds {MAX_POINTS} points; tighten the bounds"
        )));
    }
    points.push(point);
    Ok(())
}

/// Every parameter point the sweep will evaluate, in lexicographic
/// `(k, m, n, i)` order (`(j, k)` for `dyadic`). The order is identical
/// across runs and worker counts.
///
/// Errors if the spec is malformed or admits no points at all (`n_max` below
/// the smallest `n` with an in-domain point).
pub fn enumerate_domain(spec: &SweepSpec) -> Result<Vec<ParamPoint>, SweepError> {
    if spec.workers < 1 {
        return Err(SweepError::Spec("workers must be >= 1".to_string()));
    }
    if spec.n_max > (1 << 30) {
        return Err(SweepError::Spec(format!(
            "n_max={} exceeds the supported range (2^30)",
            spec.n_max
        )));
    }
    let k_cap = spec.k_max.unwrap_or(spec.n_max);
    let m_cap = spec.m_max.unwrap_or(spec.n_max);
    let n_max = spec.n_max;
    let mode = spec.mode;
    let mut points = Vec::new();

    match spec.identity {
        IdentityId::Vandermonde => {
            for k in 0..=k_cap {
                for m in 0..=m_cap {
                    for n in 0..=n_max {
                        push_point(&mut points, ParamPoint::kmn(k, m, n))?;
                    }
                }
            }
        }
        IdentityId::LiShanlan => {
            for k in 0..=k_cap {
                for n in 0..=n_max {
                    push_point(&mut points, ParamPoint::nk(n, k))?;
                }
            }
        }
        IdentityId::InjectionDiff => {
            for k in 1..=k_cap {
                for m in 0..=m_cap {
                    for n in m..=n_max {
                        let slack = n as i64 - k as i64;
                        if classify(&[slack], mode) {
                            push_point(&mut points, ParamPoint::kmn(k, m, n))?;
                        }
                    }
                }
            }
        }
        IdentityId::TheoremPerm => {
            for k in 1..=k_cap {
                for m in 1..=m_cap {
                    for n in (m + 1)..=n_max {
                        let slacks = [m as i64 - 2 * k as i64, (n - m) as i64 - k as i64];
                        if classify(&slacks, mode) {
                            push_point(&mut points, ParamPoint::kmn(k, m, n))?;
                        }
                    }
                }
            }
        }
        IdentityId::ConjectureGen => {
            for k in 1..=k_cap {
                for m in 1..=m_cap {
                    // n >= k + m keeps the evaluator precondition n-k-m >= 0.
                    for n in (k + m)..=n_max {
                        let slacks =
                            [m as i64 - 2 * k as i64, (n - m) as i64 - 2 * k as i64];
                        if classify(&slacks, mode) {
                            for i in 1..=k {
                                push_point(&mut points, ParamPoint::kmni(k, m, n, i))?;
                            }
                        }
                    }
                }
            }
        }
        IdentityId::ProofReindex => {
            for k in 1..=k_cap {
                for m in 2..=m_cap {
                    for n in (m + 1)..=n_max {
                        let slacks =
                            [m as i64 - (2 * k as i64 + 2), (n - m) as i64 - k as i64];
                        if classify(&slacks, mode) {
                            push_point(&mut points, ParamPoint::kmn(k, m, n))?;
                        }
                    }
                }
            }
        }
        IdentityId::Dyadic => {
            let j_max = spec.n_max;
            if j_max > MAX_J {
                return Err(SweepError::Spec(format!(
                    "dyadic width bound j_max={j_max} exceeds the supported {MAX_J}"
                )));
            }
            // The primary bound caps j here; k is cut only by an explicit cap.
            let k_cap = spec.k_max.unwrap_or(u64::MAX);
            for j in 1..=j_max {
                let eta = (1u64 << (j + 1)) - 1;
                for k in 1..=(eta - 1).min(k_cap) {
                    push_point(&mut points, ParamPoint::jk(j, k))?;
                }
            }
        }
    }

    if points.is_empty() {
        return Err(SweepError::Spec(format!(
            "no {} points within n_max={} (and the given caps); raise the bounds",
            spec.identity, spec.n_max
        )));
    }
    Ok(points)
}

/// Runs the sweep, discarding the record stream (failures are still captured
/// in the report).
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepReport, SweepError> {
    run_sweep_with(spec, |_| Ok(()))
}

/// Runs the sweep, delivering every record to `sink` in enumeration order
/// regardless of how chunks were scheduled across workers.
pub fn run_sweep_with<F>(spec: &SweepSpec, sink: F) -> Result<SweepReport, SweepError>
where
    F: FnMut(&VerificationRecord) -> io::Result<()>,
{
    run_sweep_inner(spec, sink, false)
}

/// Counterexample hunt: like [`run_sweep_with`], but `on_failure` receives
/// each re-verified in-domain failure as it is released, and with
/// `stop_on_first` the sweep halts after the first one.
pub fn run_search<F>(
    spec: &SweepSpec,
    stop_on_first: bool,
    mut on_failure: F,
) -> Result<SweepReport, SweepError>
where
    F: FnMut(&Recheck) -> io::Result<()>,
{
    run_sweep_inner(
        spec,
        |record| {
            if !record.holds && record.in_domain {
                on_failure(&recheck_failure(record))?;
            }
            Ok(())
        },
        stop_on_first,
    )
}

enum ChunkOutcome {
    Records(Vec<VerificationRecord>),
    Aborted { point: ParamPoint, source: EvalError },
}

fn evaluate_chunk(identity: IdentityId, chunk: &[ParamPoint]) -> ChunkOutcome {
    let entry = registry_lookup(identity);
    let mut records = Vec::with_capacity(chunk.len());
    for point in chunk {
        match entry.eval(point) {
            Ok(record) => records.push(record),
            Err(source) => return ChunkOutcome::Aborted { point: *point, source },
        }
    }
    ChunkOutcome::Records(records)
}

fn run_sweep_inner<F>(
    spec: &SweepSpec,
    mut sink: F,
    stop_on_first: bool,
) -> Result<SweepReport, SweepError>
where
    F: FnMut(&VerificationRecord) -> io::Result<()>,
{
    let started = Instant::now();
    let points = enumerate_domain(spec)?;

    let mut points_evaluated: u64 = 0;
    let mut failures: Vec<VerificationRecord> = Vec::new();
    let mut boundary_failures: Vec<VerificationRecord> = Vec::new();
    let mut error: Option<SweepError> = None;

    {
        // Releases one record; Ok(false) means "stop scheduling" (only for
        // stop-on-first), Err carries a sink failure.
        let mut release_record = |record: &VerificationRecord| -> Result<bool, io::Error> {
            sink(record)?;
            points_evaluated += 1;
            if !record.holds {
                if record.in_domain {
                    failures.push(record.clone());
                    if stop_on_first {
                        return Ok(false);
                    }
                } else {
                    boundary_failures.push(record.clone());
                }
            }
            Ok(true)
        };

        if spec.workers == 1 {
            let entry = registry_lookup(spec.identity);
            'serial: for point in &points {
                match entry.eval(point) {
                    Ok(record) => match release_record(&record) {
                        Ok(true) => {}
                        Ok(false) => break 'serial,
                        Err(e) => {
                            error = Some(SweepError::Sink(e));
                            break 'serial;
                        }
                    },
                    Err(source) => {
                        error = Some(SweepError::Eval { point: *point, source });
                        break 'serial;
                    }
                }
            }
        } else {
            let chunk_size = (points.len() / (spec.workers * 8)).clamp(1, 8192);
            let chunks: Vec<&[ParamPoint]> = points.chunks(chunk_size).collect();
            let next_chunk = AtomicUsize::new(0);
            let cancelled = AtomicBool::new(false);
            let slots: Mutex<Vec<Option<ChunkOutcome>>> =
                Mutex::new((0..chunks.len()).map(|_| None).collect());
            let released = Condvar::new();
            let identity = spec.identity;

            thread::scope(|scope| {
                for _ in 0..spec.workers {
                    scope.spawn(|| loop {
                        if cancelled.load(Ordering::Relaxed) {
                            break;
                        }
                        let index = next_chunk.fetch_add(1, Ordering::Relaxed);
                        if index >= chunks.len() {
                            break;
                        }
                        let outcome = evaluate_chunk(identity, chunks[index]);
                        let mut guard = slots.lock().unwrap();
                        guard[index] = Some(outcome);
                        released.notify_all();
                    });
                }

                // Collector: hand chunks to the sink strictly in enumeration
                // order, whatever order the workers finish in.
                'collect: for index in 0..chunks.len() {
                    let outcome = {
                        let mut guard = slots.lock().unwrap();
                        loop {
                            if let Some(outcome) = guard[index].take() {
                                break outcome;
                            }
                            guard = released.wait(guard).unwrap();
                        }
                    };
                    match outcome {
                        ChunkOutcome::Records(records) => {
                            for record in &records {
                                match release_record(record) {
                                    Ok(true) => {}
                                    Ok(false) => break 'collect,
                                    Err(e) => {
                                        error = Some(SweepError::Sink(e));
                                        break 'collect;
                                    }
                                }
                            }
                        }
                        ChunkOutcome::Aborted { point, source } => {
                            error = Some(SweepError::Eval { point, source });
                            break 'collect;
                        }
                    }
                }
                cancelled.store(true, Ordering::Relaxed);
            });
        }
    }

    if let Some(e) = error {
        return Err(e);
    }

    // Counterexample candidates never rest on one code path: re-verify each
    // single-threaded before reporting.
    let failures = failures
        .iter()
        .map(|record| recheck_failure(record).record)
        .collect();

    Ok(SweepReport {
        spec: spec.clone(),
        points_evaluated,
        failures,
        boundary_failures,
        wall_time: started.elapsed(),
    })
}

/// A re-verified failure candidate.
#[derive(Debug, Clone)]
pub struct Recheck {
    /// The fresh single-threaded re-evaluation of the same point.
    pub record: VerificationRecord,
    /// Whether the re-evaluation still fails (a candidate that stops failing
    /// would indicate a transient defect, not mathematics).
    pub reproduced: bool,
    /// Verdict of the independent enumeration oracle where one applies
    /// (small points only): `Some(true)` means the oracle reproduces the
    /// evaluator's reference side at this point.
    pub oracle_agrees: Option<bool>,
}

/// Re-evaluates a failing record in a fresh single-threaded context and
/// attaches the oracle verdict where the point is small enough (`n <= 8` for
/// the injection-counting identities, any in-range width for `dyadic`).
pub fn recheck_failure(record: &VerificationRecord) -> Recheck {
    let entry = registry_lookup(record.identity);
    let fresh = entry
        .eval(&record.params)
        .expect("recheck re-evaluates a point that already evaluated");
    let reproduced = !fresh.holds;
    let oracle_agrees = oracle_verdict(&fresh);
    Recheck { record: fresh, reproduced, oracle_agrees }
}

/// `Some(agrees)` when an independent oracle covers this point: the
/// enumeration count is compared against the record's left side, the digit
/// string sum against the dyadic record's right side.
fn oracle_verdict(record: &VerificationRecord) -> Option<bool> {
    match record.identity {
        IdentityId::TheoremPerm | IdentityId::InjectionDiff => {
            let p = record.params;
            let (k, m, n) = (p.k?, p.m?, p.n?);
            if n > 8 {
                return None;
            }
            let counted = oracles::count_injections_hitting(k, m, n).ok()?;
            Some(counted == record.lhs)
        }
        IdentityId::ConjectureGen => {
            let p = record.params;
            let (k, m, n, i) = (p.k?, p.m?, p.n?, p.i?);
            if n > 8 || n < k {
                return None;
            }
            let hits = oracles::count_injections_hitting(i, m, n - k).ok()?;
            let prefix = falling_factorial(k as i64, (k - i) as i64)
                .expect("k >= i >= 0 on a conjecture record");
            Some(prefix * hits == record.lhs)
        }
        IdentityId::Dyadic => {
            let p = record.params;
            let case = DyadicCase::new(p.j?, p.k?).ok()?;
            let summed = oracles::dyadic_sum_by_strings(&case).ok()?;
            Some(summed == record.rhs)
        }
        _ => None,
    }
}
