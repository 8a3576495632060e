//! Task dispatch and the run report.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use gifpsi::alpha::{check_ascending_family, check_crisp_norm_axioms, estimate_collinearity_constant};
use gifpsi::continuity::{check_compact_image, check_ifc_iff_sequential, check_strong_implies_sequential, ContinuityConfig};
use gifpsi::norm::{check_extra_conditions, validate_axioms};
use gifpsi::sequence::{
    check_cauchy_implies_bounded, check_convergent_implies_cauchy, extract_with_grid, reconstruct_with_grid,
    BoundSearch,
};
use gifpsi::sets::check_compact;
use gifpsi::{AlphaNormFamily, Basis, Error, SequenceSpec};
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::{
    AlphaNormTask, AnalyzeSequenceTask, CheckCompactTask, CheckContinuityTask, RunConfig, TaskDef, TaskKind,
    ValidateAxiomsTask,
};

pub const ARTIFACT_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TaskStatus {
    Ok,
    Violation,
    Error,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TaskOutcome {
    pub id: String,
    pub kind: TaskKind,
    pub status: TaskStatus,
    /// One line per violated property.
    pub violations: Vec<String>,
    pub error: Option<String>,
    pub result: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub tasks: usize,
    pub ok: usize,
    pub violations: usize,
    pub errors: usize,
}

/// Everything in the report except wall time; byte-reproducible.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Payload {
    pub schema_version: u32,
    pub artifact_version: &'static str,
    pub config: RunConfig,
    pub tasks: Vec<TaskOutcome>,
    pub summary: Summary,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TaskTiming {
    pub id: String,
    pub seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Timing {
    pub total_seconds: f64,
    pub tasks: Vec<TaskTiming>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub payload: Payload,
    pub timing: Timing,
}

impl RunReport {
    /// 0 clean, 1 when any task has a violation or failed to run.
    pub fn exit_code(&self) -> i32 {
        if self.payload.summary.ok == self.payload.summary.tasks {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn payload_json(&self) -> String {
        serde_json::to_string_pretty(&self.payload).expect("reports serialize")
    }
}

/// Runs every task, in order or on scoped worker threads. The payload is the
/// same either way.
pub fn run(config: &RunConfig, parallel: bool) -> RunReport {
    let start = Instant::now();
    let n = config.tasks.len();
    let timed: Vec<(TaskOutcome, f64)> = if parallel && n > 1 {
        let workers = std::thread::available_parallelism().map_or(1, |p| p.get()).min(n);
        let next = AtomicUsize::new(0);
        let slots: Mutex<Vec<Option<(TaskOutcome, f64)>>> = Mutex::new(vec![None; n]);
        std::thread::scope(|s| {
            for _ in 0..workers {
                s.spawn(|| loop {
                    let i = next.fetch_add(1, Ordering::Relaxed);
                    if i >= n {
                        break;
                    }
                    let out = timed_task(config, &config.tasks[i]);
                    slots.lock().expect("no worker panicked")[i] = Some(out);
                });
            }
        });
        slots
            .into_inner()
            .expect("no worker panicked")
            .into_iter()
            .map(|o| o.expect("every task ran"))
            .collect()
    } else {
        config.tasks.iter().map(|t| timed_task(config, t)).collect()
    };
    let (tasks, secs): (Vec<_>, Vec<_>) = timed.into_iter().unzip();
    let count = |s: TaskStatus| tasks.iter().filter(|t| t.status == s).count();
    let summary = Summary {
        tasks: n,
        ok: count(TaskStatus::Ok),
        violations: count(TaskStatus::Violation),
        errors: count(TaskStatus::Error),
    };
    let timing = Timing {
        total_seconds: start.elapsed().as_secs_f64(),
        tasks: tasks
            .iter()
            .zip(secs)
            .map(|(t, seconds)| TaskTiming {
                id: t.id.clone(),
                seconds,
            })
            .collect(),
    };
    RunReport {
        payload: Payload {
            schema_version: config.schema_version,
            artifact_version: ARTIFACT_VERSION,
            config: config.clone(),
            tasks,
            summary,
        },
        timing,
    }
}

fn timed_task(config: &RunConfig, task: &TaskDef) -> (TaskOutcome, f64) {
    let start = Instant::now();
    let out = run_task(config, task);
    (out, start.elapsed().as_secs_f64())
}

/// A task result plus the properties it found violated.
struct Findings {
    result: Value,
    violations: Vec<String>,
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

pub fn run_task(config: &RunConfig, task: &TaskDef) -> TaskOutcome {
    let found = match task {
        TaskDef::ValidateAxioms(t) => validate_task(config, t),
        TaskDef::AlphaNorm(t) => alpha_task(config, t),
        TaskDef::AnalyzeSequence(t) => sequence_task(config, t),
        TaskDef::CheckContinuity(t) => continuity_task(config, t),
        TaskDef::CheckCompact(t) => compact_task(config, t),
    };
    let (status, violations, error, result) = match found {
        Ok(f) if f.violations.is_empty() => (TaskStatus::Ok, f.violations, None, f.result),
        Ok(f) => (TaskStatus::Violation, f.violations, None, f.result),
        Err(e) => (TaskStatus::Error, Vec::new(), Some(e.to_string()), Value::Null),
    };
    TaskOutcome {
        id: task.id().to_string(),
        kind: task.kind(),
        status,
        violations,
        error,
        result,
    }
}

fn validate_task(config: &RunConfig, t: &ValidateAxiomsTask) -> gifpsi::Result<Findings> {
    let norm = config.space.build();
    let sampler = t.sampler.build();
    let axioms = validate_axioms(&norm, &sampler)?;
    let mut violations: Vec<String> = axioms
        .failures()
        .map(|e| format!("axiom {} fails", e.axiom))
        .collect();
    let extra = if t.extra_conditions {
        Some(check_extra_conditions(&norm, &sampler)?)
    } else {
        None
    };
    let connectives = if t.connectives {
        let reports = norm.connectives.check(&sampler)?;
        for r in &reports {
            violations.extend(r.failures().map(|e| format!("{}: {} fails", r.subject, e.axiom)));
        }
        Some(reports)
    } else {
        None
    };
    Ok(Findings {
        result: json!({
            "axioms": to_value(&axioms),
            "extra_conditions": to_value(&extra),
            "connectives": to_value(&connectives),
        }),
        violations,
    })
}

fn alpha_task(config: &RunConfig, t: &AlphaNormTask) -> gifpsi::Result<Findings> {
    let norm = config.space.build();
    let sampler = t.sampler.build();
    let mut violations = Vec::new();
    let mut families = Vec::new();
    for &variant in &t.variants {
        let fam = AlphaNormFamily::new(norm.clone(), variant.into());
        let name = to_value(&variant);
        let name = name.as_str().unwrap_or_default();
        let axioms = check_crisp_norm_axioms(&fam, t.alpha, &sampler)?;
        violations.extend(
            axioms
                .failures()
                .map(|e| format!("{name}-variant α-norm at α = {}: {} fails", t.alpha, e.axiom)),
        );
        let mut profiles = Vec::new();
        for x in &t.vectors {
            let asc = check_ascending_family(&fam, x, &t.alpha_grid)?;
            if !asc.nondecreasing {
                violations.push(format!("{name}-variant profile of {x:?} decreases"));
            }
            profiles.push(json!({
                "x": x,
                "nondecreasing": asc.nondecreasing,
                "decreasing_at": asc.violations,
                "table": {"columns": ["alpha", "value"], "rows": asc.profile},
            }));
        }
        let collinearity = match &t.collinearity {
            Some(vs) => Some(estimate_collinearity_constant(&fam, vs, t.alpha, &sampler)?),
            None => None,
        };
        families.push(json!({
            "variant": name,
            "crisp_norm_axioms": to_value(&axioms),
            "profiles": profiles,
            "collinearity": to_value(&collinearity),
        }));
    }
    Ok(Findings {
        result: json!({ "alpha": t.alpha, "nu_convention": gifpsi::alpha::NU_CONVENTION, "families": families }),
        violations,
    })
}

/// Runs a diagnostic whose inapplicability is an answer rather than a fault.
/// Self-verification failures still count as violations.
fn optional<T: Serialize>(r: gifpsi::Result<T>, what: &str, violations: &mut Vec<String>) -> Value {
    match r {
        Ok(v) => to_value(&v),
        Err(e @ Error::Unverified(_)) => {
            violations.push(format!("{what}: {e}"));
            json!({ "error": e.to_string() })
        }
        Err(e) => json!({ "skipped": e.to_string() }),
    }
}

fn sequence_task(config: &RunConfig, t: &AnalyzeSequenceTask) -> gifpsi::Result<Findings> {
    let norm = config.space.build();
    let seq = config.sequences[&t.sequence].build()?;
    let grid = t.grid.build();
    let basis = match &t.basis {
        Some(b) => Basis::new(b.clone())?,
        None => Basis::standard(norm.dimension()),
    };
    let mut violations = Vec::new();
    let paired = match &t.limit {
        Some(x) => Some(check_convergent_implies_cauchy(&norm, &seq, x, &grid, t.horizon, t.p_max)?),
        None => None,
    };
    let cb = check_cauchy_implies_bounded(&norm, &seq, &grid, t.horizon, t.p_max, &BoundSearch::default())?;
    if paired.as_ref().is_some_and(|p| p.violation) {
        violations.push("convergent sequence rejected by the Cauchy detector".to_string());
    }
    if cb.violation {
        violations.push("Cauchy sequence without a boundedness certificate".to_string());
    }
    let extraction = t.extract.then(|| {
        optional(
            extract_with_grid(&norm, &seq, t.horizon, &basis, &grid),
            "extraction",
            &mut violations,
        )
    });
    let reconstruction = t.reconstruct.map(|n| {
        optional(
            reconstruct_with_grid(&norm, &seq, &basis, n, &grid),
            "reconstruction",
            &mut violations,
        )
    });
    Ok(Findings {
        result: json!({
            "sequence": t.sequence,
            "horizon": t.horizon,
            "convergence": paired.as_ref().map(|p| to_value(&p.convergence)),
            "cauchy": to_value(&cb.cauchy),
            "bounded": to_value(&cb.bounded),
            "consistency": {
                "convergent_implies_cauchy": paired.as_ref().map(|p| p.violation),
                "cauchy_implies_bounded": cb.violation,
            },
            "extraction": extraction,
            "reconstruction": reconstruction,
        }),
        violations,
    })
}

fn family(config: &RunConfig, ids: &[String]) -> gifpsi::Result<Vec<SequenceSpec>> {
    ids.iter().map(|id| config.sequences[id].build()).collect()
}

fn continuity_task(config: &RunConfig, t: &CheckContinuityTask) -> gifpsi::Result<Findings> {
    let u = config.space.build();
    let v = config.target().build();
    let f = config.maps[&t.map].build(u.dimension())?;
    let fam = family(config, &t.family)?;
    let grid = t.grid.build();
    let mut cfg = ContinuityConfig::with_seed(t.sampler.seed);
    cfg.samples = t.sampler.samples;
    cfg.form = t.form.into();
    let iff = check_ifc_iff_sequential(&f, &t.x0, &u, &v, &fam, &grid, t.horizon, &cfg)?;
    let strong = check_strong_implies_sequential(&f, &t.x0, &u, &v, &fam, &grid, t.horizon, &cfg)?;
    let mut violations = Vec::new();
    if iff.violation {
        violations.push("IFC and sequential IFC disagree".to_string());
    }
    if strong.violation {
        violations.push("strongly IFC map is not sequentially IFC".to_string());
    }
    Ok(Findings {
        result: json!({
            "map": t.map,
            "x0": t.x0,
            "verdicts": {
                "strongly_ifc": strong.strong.positive,
                "ifc": iff.ifc_positive,
                "sequentially_ifc": iff.sequential.positive,
            },
            "consistency": {
                "ifc_iff_sequential": iff.violation,
                "strong_implies_sequential": strong.violation,
            },
            "strong": to_value(&strong.strong),
            "ifc": to_value(&iff.ifc),
            "sequential": to_value(&iff.sequential),
        }),
        violations,
    })
}

fn compact_task(config: &RunConfig, t: &CheckCompactTask) -> gifpsi::Result<Findings> {
    let u = config.space.build();
    let set = config.sets[&t.set].build(config.space.crisp())?;
    let probes = family(config, &t.probes)?;
    let mut violations = Vec::new();
    let result = match &t.map {
        None => {
            let r = check_compact(&u, &set, &probes, t.horizon)?;
            if r.violation {
                violations.push("closed bounded set lost a probe limit".to_string());
            }
            json!({ "set": t.set, "report": to_value(&r) })
        }
        Some(m) => {
            let v = config.target().build();
            let f = config.maps[m].build(u.dimension())?;
            let r = check_compact_image(&f, &u, &v, &set, &probes, t.horizon)?;
            if r.image.violation {
                violations.push("closed bounded image set lost a probe limit".to_string());
            }
            json!({ "set": t.set, "map": m, "report": to_value(&r) })
        }
    };
    Ok(Findings { result, violations })
}
