use std::path::Path;

use serde_json::{json, Value};

use imprecise::assessment::ConditioningFamily;
use imprecise::error::ModelError;
use imprecise::instance::{self, Diagnostics, Instance, PairInstance, Validated};
use imprecise::lowprev::{check_coherence, check_coherence_direct, CoherenceReport, NaturalExtension, Verdict};
use imprecise::measurable::{is_simple_measurable, threshold_condition_capped, Measurability};
use imprecise::product::{
    closure_invariance_check, joint_value, marginal_consistency_check, JointModel, MarginalQuery, QueryCheck,
};
use imprecise::rational::{format_rational, to_f64, Rational};
use imprecise::space::{Event, Gamble};
use imprecise::verify::{
    check_external_additivity, check_factorisation, check_subjects, run_property_suite, CheckStatus, SuiteConfig,
    TheoremReport,
};

use crate::report::{Failure, Report, EXIT_INCOHERENT, EXIT_OK, EXIT_VIOLATION};
use crate::{Common, PropertyGroup};

fn r(v: &Rational) -> Value {
    json!(format_rational(v))
}

fn labels(e: &Event) -> Value {
    json!(e.labels())
}

fn from_diagnostics(path: &Path, d: Diagnostics) -> Failure {
    let diagnostics = d
        .0
        .into_iter()
        .map(|d| json!({"file": path.display().to_string(), "location": d.location, "message": d.message}))
        .collect();
    Failure { code: crate::report::EXIT_INPUT, diagnostics }
}

fn load(path: &Path) -> Result<Validated, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    instance::load(&text).map_err(|d| from_diagnostics(path, d))
}

fn load_local(path: &Path) -> Result<Instance, Failure> {
    match load(path)? {
        Validated::Local(i) => Ok(i),
        Validated::Pair(_) => Err(Failure::input(format!("{}: expected a single-space instance", path.display()))),
    }
}

fn model_failure(e: ModelError) -> Failure {
    match e {
        ModelError::Incoherent(m) => Failure::incoherent(m),
        other => Failure::input(other.to_string()),
    }
}

fn verdict_name(v: &Verdict) -> &'static str {
    match v {
        Verdict::Coherent => "coherent",
        Verdict::IncursPartialLoss { .. } => "incurs-partial-loss",
        Verdict::DominatedAssessment { .. } => "dominated-assessment",
    }
}

fn coherence_entry(name: Option<&str>, inst: &Instance, cap: usize, out: &mut Report) -> bool {
    let set = &inst.assessments;
    let report: CoherenceReport = check_coherence(set);
    let direct = if set.len() <= cap {
        match check_coherence_direct(set, cap) {
            Ok(d) if d.verdict.kind() == report.verdict.kind() => "agrees",
            Ok(_) => "disagrees",
            Err(_) => "skipped",
        }
    } else {
        "skipped"
    };
    let prefix = name.map(|n| format!("{n}: ")).unwrap_or_default();
    out.line(format!("{prefix}{}", report.summary()));
    for d in &report.details {
        let nx = d.natural_extension.as_ref().map(format_rational).unwrap_or_else(|| "-".into());
        out.line(format!("  #{} lower {} natural extension {}", d.index, format_rational(&d.lower_bound), nx));
    }
    let mut entry = json!({
        "name": name,
        "verdict": verdict_name(&report.verdict),
        "summary": report.summary(),
        "assessments": report.details.iter().map(|d| json!({
            "index": d.index,
            "lower": r(&d.lower_bound),
            "natural_extension": d.natural_extension.as_ref().map(r),
        })).collect::<Vec<_>>(),
        "direct_route": direct,
    });
    match &report.verdict {
        Verdict::IncursPartialLoss { weights, margin } => {
            let w: Vec<String> = weights.iter().map(format_rational).collect();
            out.line(format!("  certificate weights [{}] margin {}", w.join(", "), format_rational(margin)));
            entry["certificate"] = json!({"weights": w, "margin": r(margin)});
        }
        Verdict::DominatedAssessment { index, value } => {
            entry["dominated"] = json!({"index": index, "natural_extension": r(value)});
        }
        Verdict::Coherent => {}
    }
    out.line(format!("  direct route: {direct}"));
    out.fields.entry("instances").or_insert_with(|| json!([])).as_array_mut().expect("array").push(entry);
    report.is_coherent()
}

pub fn check(common: &Common, file: &Path) -> Result<Report, Failure> {
    let mut out = Report::new(EXIT_OK);
    let coherent = match load(file)? {
        Validated::Local(i) => coherence_entry(None, &i, common.max_subsets, &mut out),
        Validated::Pair(p) => {
            let a = coherence_entry(Some("factor1"), &p.factor1, common.max_subsets, &mut out);
            let b = coherence_entry(Some("factor2"), &p.factor2, common.max_subsets, &mut out);
            a && b
        }
    };
    out.field("coherent", json!(coherent));
    if !coherent {
        out.code = EXIT_INCOHERENT;
    }
    Ok(out)
}

pub fn natex(file: &Path, gamble: Option<&str>, event: &str, decimal: bool) -> Result<Report, Failure> {
    let inst = load_local(file)?;
    let ne = NaturalExtension::new(&inst.assessments).map_err(model_failure)?;
    let queries: Vec<(Gamble, Event)> = match gamble {
        Some(spec) => {
            let g = inst.gamble(spec).map_err(|e| Failure::located("--gamble", e))?;
            let e = inst.event(event).map_err(|e| Failure::located("--event", e))?;
            vec![(g, e)]
        }
        None if inst.queries.is_empty() => {
            return Err(Failure::input("no --gamble given and the file has no queries"));
        }
        None => inst.queries.clone(),
    };
    let single = gamble.is_some();
    let mut out = Report::new(EXIT_OK);
    let mut values = Vec::new();
    for (g, e) in &queries {
        let v = ne.lower(g, e).map_err(|e| Failure::input(e.to_string()))?;
        let exact = format_rational(&v);
        let text = if single { exact.clone() } else { format!("E({g} | {e}) = {exact}") };
        out.line(text);
        if decimal {
            out.line(format!("  decimal {}", to_f64(&v)));
        }
        let mut entry = json!({"gamble": g.to_string(), "event": labels(e), "value": exact});
        if decimal {
            entry["decimal"] = json!(to_f64(&v));
        }
        values.push(entry);
    }
    out.field("values", Value::Array(values));
    Ok(out)
}

fn family(inst: &Instance, spec: &str, flag: &str) -> Result<ConditioningFamily, Failure> {
    inst.family(spec).map_err(|e| Failure::located(flag, e))
}

pub fn product(
    file1: &Path,
    file2: &Path,
    fam1: &str,
    fam2: &str,
    query: &Path,
) -> Result<Report, Failure> {
    let i1 = load_local(file1)?;
    let i2 = load_local(file2)?;
    let f1 = family(&i1, fam1, "--fam1")?;
    let f2 = family(&i2, fam2, "--fam2")?;
    let jm = JointModel::new(&i1.assessments, &i2.assessments, &f1, &f2).map_err(model_failure)?;
    let text = std::fs::read_to_string(query).map_err(|e| Failure::input(format!("{}: {e}", query.display())))?;
    let docs = instance::parse_query_file(&text).map_err(|d| from_diagnostics(query, d))?;
    let queries = instance::parse_joint_queries(&docs.queries, &i1, &i2).map_err(|d| from_diagnostics(query, d))?;
    let mut out = Report::new(EXIT_OK);
    out.line(format!("joint model: {} generators", jm.cone().len()));
    let mut values = Vec::new();
    for (k, q) in queries.iter().enumerate() {
        let v = joint_value(&jm, &q.gamble, &q.event).map_err(model_failure)?;
        let event = if q.event.is_full() { "all".to_string() } else { q.event.size().to_string() + " outcomes" };
        out.line(format!("query {k}: {} given {event} = {}", q.gamble, format_rational(&v)));
        values.push(json!({"index": k, "gamble": q.gamble.to_string(), "event_size": q.event.size(), "value": r(&v)}));
    }
    out.field("generators", json!(jm.cone().len()));
    out.field("values", Value::Array(values));
    Ok(out)
}

/// Named gambles, then query gambles, else the singleton indicators.
fn gamble_pool(inst: &Instance) -> Vec<Gamble> {
    let mut pool: Vec<Gamble> = Vec::new();
    for g in inst.gambles.values().chain(inst.queries.iter().map(|(g, _)| g)) {
        if !pool.contains(g) {
            pool.push(g.clone());
        }
    }
    if pool.is_empty() {
        pool = inst.space().singletons().iter().map(Event::indicator).collect();
    }
    pool
}

struct FileCheck {
    group: &'static str,
    status: CheckStatus,
    check: QueryCheck,
}

fn asserted(group: &'static str, check: QueryCheck) -> FileCheck {
    let status = if check.holds { CheckStatus::Holds } else { CheckStatus::Violated };
    FileCheck { group, status, check }
}

fn theorem(group: &'static str, t: TheoremReport) -> FileCheck {
    FileCheck { group, status: t.status, check: t.check }
}

fn pair_checks(p: &PairInstance, jm: &JointModel, property: PropertyGroup) -> Result<Vec<FileCheck>, ModelError> {
    let pools = [gamble_pool(&p.factor1), gamble_pool(&p.factor2)];
    let mut out = Vec::new();
    if property.includes("additivity") {
        for f in &pools[0] {
            for h in &pools[1] {
                out.push(theorem("additivity", check_external_additivity(jm, f, h)?));
            }
        }
    }
    if property.includes("factorisation") {
        for i in [1, 2] {
            for g in &pools[i - 1] {
                for h in &pools[2 - i] {
                    out.push(theorem("factorisation", check_factorisation(jm, i, g, h)?));
                }
            }
        }
    }
    if property.includes("marginals") {
        let mut queries = Vec::new();
        for i in [1, 2] {
            let space = jm.product().factor(i);
            let others = jm.family(3 - i).with_full_space();
            for f in &pools[i - 1] {
                for other in &others {
                    queries.push(MarginalQuery {
                        factor: i,
                        gamble: f.clone(),
                        event: space.full_event(),
                        other: other.clone(),
                    });
                }
            }
        }
        for c in marginal_consistency_check(jm, &queries)?.checks {
            out.push(asserted("marginals", c));
        }
    }
    if property.includes("invariance") && !p.queries.is_empty() {
        for c in closure_invariance_check(jm, &p.queries)?.checks {
            out.push(asserted("invariance", c));
        }
    }
    Ok(out)
}

fn status_name(s: CheckStatus) -> &'static str {
    match s {
        CheckStatus::Holds => "holds",
        CheckStatus::Violated => "violated",
        CheckStatus::HypothesisNotMet => "hypothesis-not-met",
    }
}

pub fn verify(
    common: &Common,
    files: &[std::path::PathBuf],
    property: PropertyGroup,
    samples: usize,
    subjects: usize,
) -> Result<Report, Failure> {
    let mut locals = Vec::new();
    let mut joints = Vec::new();
    let mut checks = Vec::new();
    for path in files {
        match load(path)? {
            Validated::Local(i) => {
                let report = check_coherence(&i.assessments);
                if !report.is_coherent() {
                    return Err(Failure::incoherent(format!("{}: {}", path.display(), report.summary())));
                }
                locals.push(i.assessments);
            }
            Validated::Pair(p) => {
                let jm = p.model().map_err(|e| match e {
                    ModelError::Incoherent(m) => Failure::incoherent(format!("{}: {m}", path.display())),
                    other => Failure::input(format!("{}: {other}", path.display())),
                })?;
                checks.extend(pair_checks(&p, &jm, property).map_err(model_failure)?);
                locals.push(p.factor1.assessments.clone());
                locals.push(p.factor2.assessments.clone());
                joints.push(jm);
            }
        }
    }
    let cfg = SuiteConfig {
        seed: common.seed,
        samples,
        subjects,
        only: if property == PropertyGroup::All { Vec::new() } else { vec![property.name().to_string()] },
        ..SuiteConfig::default()
    };
    let suite = if files.is_empty() { run_property_suite(&cfg) } else { check_subjects(&cfg, &locals, &joints) };

    let mut out = Report::new(EXIT_OK);
    for c in &checks {
        out.line(format!("{:<18} {:<13} {}", status_name(c.status), c.group, c.check.describe()));
    }
    out.text.push_str(&suite.human());
    let violated = checks.iter().any(|c| c.status == CheckStatus::Violated);
    let passed = suite.passed && !violated;
    if !passed {
        out.code = EXIT_VIOLATION;
    }
    let file_checks: Vec<Value> = checks
        .iter()
        .map(|c| {
            json!({
                "group": c.group,
                "status": status_name(c.status),
                "query": c.check.query,
                "values": c.check.values.iter().map(|(k, v)| json!([k, format_rational(v)])).collect::<Vec<_>>(),
            })
        })
        .collect();
    out.field("property", json!(property.name()));
    out.field("passed", json!(passed));
    out.field("file_checks", Value::Array(file_checks));
    out.field("suite", suite.structured());
    Ok(out)
}

pub fn measurable(common: &Common, file: &Path, gamble: &str, family_spec: &str) -> Result<Report, Failure> {
    let inst = load_local(file)?;
    let g = inst.gamble(gamble).map_err(|e| Failure::located("--gamble", e))?;
    let fam = family(&inst, family_spec, "--family")?;
    let verdict = is_simple_measurable(&g, &fam).map_err(|e| Failure::input(e.to_string()))?;
    let threshold = match threshold_condition_capped(&g, &fam, common.max_subsets) {
        Ok(true) => "passes",
        Ok(false) => "fails",
        Err(_) => "skipped",
    };
    let mut out = Report::new(EXIT_OK);
    match &verdict {
        Measurability::Simple(d) => {
            out.line("measurable");
            let mut expr = format_rational(&d.c0);
            for (c, e) in &d.terms {
                expr.push_str(&format!(" + {}·I{e}", format_rational(c)));
            }
            out.line(format!("  g = {expr}"));
            out.field(
                "decomposition",
                json!({
                    "c0": r(&d.c0),
                    "terms": d.terms.iter().map(|(c, e)| json!({"coefficient": r(c), "event": labels(e)})).collect::<Vec<_>>(),
                }),
            );
        }
        Measurability::NotMeasurable => {
            out.line("not measurable");
            out.field("decomposition", Value::Null);
        }
    }
    out.line(format!("  threshold test: {threshold}"));
    out.field("measurable", json!(verdict.is_measurable()));
    out.field("threshold", json!(threshold));
    Ok(out)
}
