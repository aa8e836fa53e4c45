//! Seeded randomized property suite.
//!
//! Every property draws its own subjects (assessment sets or joint models)
//! from a generator seeded by the suite seed, the property and the subject
//! index, so shards run in parallel and the merged report is deterministic.

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{centred, check_external_additivity, check_factorisation, check_theorem_factadd, factorising_gamble};
use super::{CheckStatus, TheoremReport};
use crate::assessment::{AssessmentSet, ConditionalAssessment, ConditioningFamily};
use crate::envelope::{credal_vertices, linear_prevision_from_mass, lower_envelope_value, p_axiom_suite, MassFunction};
use crate::error::ModelError;
use crate::lowprev::{
    check_coherence, check_coherence_direct, lp_axiom_suite, verify_loss_certificate, AxiomReport, NaturalExtension,
    Verdict, DEFAULT_MAX_ASSESSMENTS,
};
use crate::measurable::{is_measurable, is_simple_measurable, threshold_condition, Measurability};
use crate::product::{
    closure_invariance_check, independence_check, joint_value, marginal_consistency_check, product_expectation,
    JointModel, JointQuery, MarginalQuery, QueryCheck,
};
use crate::rational::{format_rational, Rational};
use crate::sample::{self, Rejections, SuiteRng};
use crate::space::{Event, Gamble, Space};

/// How conditioning families of generated joint models are chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyMode {
    /// A rotation of empty, all-subsets, and random families.
    Mixed,
    AllSubsets,
    Empty,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Generated spaces have between two and this many outcomes.
    pub max_outcomes: usize,
    /// Generated local models have at most this many assessments.
    pub max_assessments: usize,
    /// Subjects per property.
    pub subjects: usize,
    /// Queries per subject.
    pub samples: usize,
    pub families: FamilyMode,
    /// Property names or groups to run; empty runs everything.
    pub only: Vec<String>,
    /// Test mode: perturbs the oracle of the named property.
    pub corrupt: Option<String>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 0,
            max_outcomes: 4,
            max_assessments: 3,
            subjects: 12,
            samples: 8,
            families: FamilyMode::Mixed,
            only: Vec::new(),
            corrupt: None,
        }
    }
}

type LocalCheck = fn(&mut Ctx, &AssessmentSet) -> Result<(), ModelError>;
type JointCheck = fn(&mut Ctx, &JointModel) -> Result<(), ModelError>;

#[derive(Clone, Copy)]
enum Kind {
    Local { unconditional: bool, run: LocalCheck },
    Joint(JointCheck),
}

#[derive(Clone, Copy)]
pub struct Property {
    pub name: &'static str,
    pub group: &'static str,
    /// The result the property exercises.
    pub result: &'static str,
    kind: Kind,
}

impl Property {
    pub fn is_joint(&self) -> bool {
        matches!(self.kind, Kind::Joint(_))
    }

    fn selected(&self, only: &[String]) -> bool {
        only.is_empty() || only.iter().any(|o| o == "all" || o == self.name || o == self.group)
    }
}

impl std::fmt::Debug for Property {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Property({})", self.name)
    }
}

pub const GROUPS: [&str; 6] = ["factorisation", "additivity", "marginals", "invariance", "envelope", "axioms"];

const fn local(name: &'static str, group: &'static str, result: &'static str, run: LocalCheck) -> Property {
    Property { name, group, result, kind: Kind::Local { unconditional: false, run } }
}

const fn unconditional(name: &'static str, group: &'static str, result: &'static str, run: LocalCheck) -> Property {
    Property { name, group, result, kind: Kind::Local { unconditional: true, run } }
}

const fn joint(name: &'static str, group: &'static str, result: &'static str, run: JointCheck) -> Property {
    Property { name, group, result, kind: Kind::Joint(run) }
}

static PROPERTIES: [Property; 21] = [
    local(
        "coherence-routes-agree",
        "axioms",
        "cone coherence criterion equals the structure-free subset criterion",
        coherence_routes_agree,
    ),
    local(
        "natural-extension-extends",
        "axioms",
        "natural extension reproduces coherent assessments and stays coherent",
        natural_extension_extends,
    ),
    local("lower-prevision-axioms", "axioms", "LP1-LP7 for coherent lower previsions", lower_prevision_axioms),
    local("linear-prevision-axioms", "axioms", "P1-P5 for linear previsions", linear_prevision_axioms),
    local(
        "measurability-threshold",
        "axioms",
        "superlevel sets from the family imply measurability",
        measurability_threshold,
    ),
    local(
        "measurability-totality",
        "axioms",
        "every non-negative gamble is measurable for the family of all subsets",
        measurability_totality,
    ),
    local(
        "decomposition-soundness",
        "axioms",
        "measurability decompositions reconstruct the gamble from family events",
        decomposition_soundness,
    ),
    unconditional("envelope-unconditional", "envelope", "lower envelope theorem", envelope_unconditional),
    unconditional(
        "envelope-conditional",
        "envelope",
        "lower envelope theorem on events of positive mass",
        envelope_conditional,
    ),
    joint(
        "joint-avoids-partial-loss",
        "marginals",
        "existence of the independent natural extension",
        joint_avoids_partial_loss,
    ),
    joint(
        "marginal-consistency",
        "marginals",
        "independent natural extension has the given marginals",
        marginal_consistency,
    ),
    joint(
        "epistemic-independence",
        "marginals",
        "independent natural extension is epistemically independent",
        epistemic_independence,
    ),
    joint("external-additivity", "additivity", "external additivity", external_additivity),
    joint("factorisation", "factorisation", "factorisation theorem for f + g·h", factorisation),
    joint(
        "sign-split-factorisation",
        "factorisation",
        "factorisation with lower or upper prevision by sign",
        sign_split_factorisation,
    ),
    joint(
        "precise-product",
        "factorisation",
        "precise marginals give product expectations on factorising gambles",
        precise_product,
    ),
    joint(
        "disjoint-union-invariance",
        "invariance",
        "closing families under disjoint unions leaves the extension unchanged",
        disjoint_union_invariance,
    ),
    joint(
        "family-monotonicity",
        "invariance",
        "larger conditioning families give larger joint lower previsions",
        family_monotonicity,
    ),
    joint(
        "value-subset-collapse",
        "invariance",
        "value and subset independence coincide on finite spaces",
        value_subset_collapse,
    ),
    joint("vacuous-product", "invariance", "product of vacuous models is vacuous", vacuous_product),
    joint("factor-symmetry", "invariance", "independent natural extension is symmetric", factor_symmetry),
];

pub fn properties() -> &'static [Property] {
    &PROPERTIES
}

const MAX_EXAMPLES: usize = 5;

#[derive(Clone, Debug, Default)]
struct Tally {
    checks: usize,
    failed: usize,
    examples: Vec<String>,
    unasserted: usize,
    unasserted_agreeing: usize,
    skipped: usize,
    attempts: usize,
    rejected: usize,
}

impl Tally {
    fn absorb(&mut self, other: Tally) {
        self.checks += other.checks;
        self.failed += other.failed;
        for e in other.examples {
            if self.examples.len() < MAX_EXAMPLES {
                self.examples.push(e);
            }
        }
        self.unasserted += other.unasserted;
        self.unasserted_agreeing += other.unasserted_agreeing;
        self.skipped += other.skipped;
        self.attempts += other.attempts;
        self.rejected += other.rejected;
    }
}

struct Ctx {
    rng: SuiteRng,
    samples: usize,
    corrupt: bool,
    tally: Tally,
}

impl Ctx {
    fn record(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.tally.checks += 1;
        if !ok {
            self.tally.failed += 1;
            if self.tally.examples.len() < MAX_EXAMPLES {
                self.tally.examples.push(detail());
            }
        }
    }

    fn holds(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        let corrupt = self.corrupt;
        self.record(ok && !corrupt, detail);
    }

    fn equal(&mut self, actual: &Rational, oracle: &Rational, detail: impl FnOnce() -> String) {
        let oracle = if self.corrupt { oracle + Rational::new(1.into(), 997.into()) } else { oracle.clone() };
        let ok = actual == &oracle;
        self.record(ok, || format!("{}: {} vs oracle {}", detail(), format_rational(actual), format_rational(&oracle)));
    }

    fn query(&mut self, check: &QueryCheck) {
        self.holds(check.holds, || check.describe());
    }

    fn theorem(&mut self, report: &TheoremReport) {
        match report.status {
            CheckStatus::HypothesisNotMet => self.unasserted(report.check.holds),
            _ => self.query(&report.check),
        }
    }

    fn axioms(&mut self, report: &AxiomReport) {
        for check in &report.checks {
            self.tally.checks += check.checked;
            for v in &check.violations {
                self.tally.failed += 1;
                if self.tally.examples.len() < MAX_EXAMPLES {
                    self.tally.examples.push(format!("{}: {v}", check.name));
                }
            }
        }
        if self.corrupt && report.total_checked() > 0 {
            self.record(false, || "corrupted oracle".into());
        }
    }

    fn unasserted(&mut self, agrees: bool) {
        self.tally.unasserted += 1;
        if agrees {
            self.tally.unasserted_agreeing += 1;
        }
    }

    fn skip(&mut self) {
        self.tally.skipped += 1;
    }
}

/// Outcome of one property over all its subjects.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyOutcome {
    pub name: &'static str,
    pub group: &'static str,
    pub result: &'static str,
    pub status: &'static str,
    pub subjects: usize,
    pub checks: usize,
    pub failed: usize,
    pub examples: Vec<String>,
    /// Comparisons made outside the hypotheses of the result.
    pub unasserted: usize,
    pub unasserted_agreeing: usize,
    pub skipped: usize,
    pub sampling_attempts: usize,
    pub sampling_rejected: usize,
}

impl PropertyOutcome {
    fn new(p: &Property, subjects: usize, t: Tally) -> Self {
        let status = if t.failed > 0 {
            "fail"
        } else if t.checks == 0 {
            "not-run"
        } else {
            "pass"
        };
        PropertyOutcome {
            name: p.name,
            group: p.group,
            result: p.result,
            status,
            subjects,
            checks: t.checks,
            failed: t.failed,
            examples: t.examples,
            unasserted: t.unasserted,
            unasserted_agreeing: t.unasserted_agreeing,
            skipped: t.skipped,
            sampling_attempts: t.attempts,
            sampling_rejected: t.rejected,
        }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub passed: bool,
    pub total_checks: usize,
    pub corrupted: Option<String>,
    pub properties: Vec<PropertyOutcome>,
}

impl SuiteReport {
    fn new(seed: u64, corrupted: Option<String>, properties: Vec<PropertyOutcome>) -> Self {
        SuiteReport {
            seed,
            passed: properties.iter().all(PropertyOutcome::passed),
            total_checks: properties.iter().map(|p| p.checks).sum(),
            corrupted,
            properties,
        }
    }

    pub fn property(&self, name: &str) -> Option<&PropertyOutcome> {
        self.properties.iter().find(|p| p.name == name)
    }

    /// Line-oriented log: one line per property, failures indented below.
    pub fn human(&self) -> String {
        let mut out = String::new();
        for p in &self.properties {
            let mut line = format!(
                "{:<7} {:<28} subjects={} checks={} failed={}",
                p.status.to_uppercase(),
                p.name,
                p.subjects,
                p.checks,
                p.failed
            );
            if p.unasserted > 0 {
                line.push_str(&format!(" unasserted={} (agreeing {})", p.unasserted, p.unasserted_agreeing));
            }
            if p.skipped > 0 {
                line.push_str(&format!(" skipped={}", p.skipped));
            }
            out.push_str(&line);
            out.push('\n');
            if p.failed > 0 {
                out.push_str(&format!("        violated: {}\n", p.result));
                for e in &p.examples {
                    out.push_str(&format!("        - {e}\n"));
                }
            }
        }
        out.push_str(&format!(
            "{} properties, {} checks, {}\n",
            self.properties.len(),
            self.total_checks,
            if self.passed { "all passed" } else { "FAILURES" }
        ));
        out
    }

    pub fn structured(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report is serializable")
    }
}

fn subject_seed(seed: u64, property: usize, subject: usize) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ ((property as u64) << 40) ^ subject as u64
}

fn run_subject<T>(cfg: &SuiteConfig, p: &Property, rng: SuiteRng, subject: &T, run: fn(&mut Ctx, &T) -> Result<(), ModelError>, tally: Tally) -> Tally {
    let corrupt = cfg.corrupt.as_deref() == Some(p.name);
    let mut ctx = Ctx { rng, samples: cfg.samples, corrupt, tally };
    if let Err(e) = run(&mut ctx, subject) {
        ctx.record(false, || format!("error: {e}"));
    }
    ctx.tally
}

/// Runs every selected property on freshly generated subjects.
pub fn run_property_suite(cfg: &SuiteConfig) -> SuiteReport {
    let outcomes = PROPERTIES
        .iter()
        .enumerate()
        .filter(|(_, p)| p.selected(&cfg.only))
        .map(|(pi, p)| {
            let tallies: Vec<Tally> = (0..cfg.subjects)
                .into_par_iter()
                .map(|k| {
                    let mut rng = sample::rng(subject_seed(cfg.seed, pi, k));
                    let mut tally = Tally::default();
                    match p.kind {
                        Kind::Local { unconditional, run } => {
                            let set = local_subject(&mut rng, cfg, unconditional, &mut tally);
                            run_subject(cfg, p, rng, &set, run, tally)
                        }
                        Kind::Joint(run) => {
                            let jm = joint_subject(&mut rng, cfg, k, &mut tally);
                            run_subject(cfg, p, rng, &jm, run, tally)
                        }
                    }
                })
                .collect();
            merge(p, cfg.subjects, tallies)
        })
        .collect();
    SuiteReport::new(cfg.seed, cfg.corrupt.clone(), outcomes)
}

/// Runs every selected property on the given subjects: local properties on
/// each assessment set, joint properties on each joint model.
pub fn check_subjects(cfg: &SuiteConfig, locals: &[AssessmentSet], joints: &[JointModel]) -> SuiteReport {
    let outcomes = PROPERTIES
        .iter()
        .enumerate()
        .filter(|(_, p)| p.selected(&cfg.only))
        .map(|(pi, p)| match p.kind {
            Kind::Local { unconditional, run } => {
                let tallies: Vec<Tally> = locals
                    .par_iter()
                    .enumerate()
                    .map(|(k, set)| {
                        let rng = sample::rng(subject_seed(cfg.seed, pi, k));
                        if unconditional && !set.is_unconditional() {
                            return Tally { skipped: 1, ..Tally::default() };
                        }
                        run_subject(cfg, p, rng, set, run, Tally::default())
                    })
                    .collect();
                merge(p, locals.len(), tallies)
            }
            Kind::Joint(run) => {
                let tallies: Vec<Tally> = joints
                    .par_iter()
                    .enumerate()
                    .map(|(k, jm)| {
                        let rng = sample::rng(subject_seed(cfg.seed, pi, k));
                        run_subject(cfg, p, rng, jm, run, Tally::default())
                    })
                    .collect();
                merge(p, joints.len(), tallies)
            }
        })
        .collect();
    SuiteReport::new(cfg.seed, cfg.corrupt.clone(), outcomes)
}

fn merge(p: &Property, subjects: usize, tallies: Vec<Tally>) -> PropertyOutcome {
    let mut total = Tally::default();
    for t in tallies {
        total.absorb(t);
    }
    PropertyOutcome::new(p, subjects, total)
}

const RETRIES: usize = 20;

fn local_subject(rng: &mut SuiteRng, cfg: &SuiteConfig, unconditional: bool, tally: &mut Tally) -> AssessmentSet {
    let n = rng.gen_range(2..=cfg.max_outcomes.max(2));
    let count = rng.gen_range(1..=cfg.max_assessments.max(1));
    let mut stats = Rejections::default();
    let set = sample::coherent_set(rng, &sample::space("x", n), count, !unconditional, RETRIES, &mut stats);
    tally.attempts += stats.attempts;
    tally.rejected += stats.rejected;
    set
}

fn joint_subject(rng: &mut SuiteRng, cfg: &SuiteConfig, k: usize, tally: &mut Tally) -> JointModel {
    let mut stats = Rejections::default();
    let mut local = |rng: &mut SuiteRng, prefix: &str| {
        let n = rng.gen_range(2..=cfg.max_outcomes.max(2));
        let count = rng.gen_range(0..=cfg.max_assessments);
        sample::coherent_set(rng, &sample::space(prefix, n), count, true, RETRIES, &mut stats)
    };
    let l1 = local(rng, "a");
    let l2 = local(rng, "b");
    tally.attempts += stats.attempts;
    tally.rejected += stats.rejected;
    let (s1, s2) = (l1.space().clone(), l2.space().clone());
    let all = |s: &Space| ConditioningFamily::all_subsets(s).expect("small space");
    let (f1, f2) = match cfg.families {
        FamilyMode::Empty => (ConditioningFamily::empty(&s1), ConditioningFamily::empty(&s2)),
        FamilyMode::AllSubsets => (all(&s1), all(&s2)),
        FamilyMode::Mixed => match k % 4 {
            0 => (ConditioningFamily::empty(&s1), ConditioningFamily::empty(&s2)),
            1 => (all(&s1), all(&s2)),
            _ => (sample::family_mix(rng, &s1), sample::family_mix(rng, &s2)),
        },
    };
    JointModel::new(&l1, &l2, &f1, &f2).expect("coherent locals")
}

fn gamble(rng: &mut SuiteRng, space: &Space) -> Gamble {
    sample::gamble(rng, space, 3)
}

fn joint_query(rng: &mut SuiteRng, jm: &JointModel) -> JointQuery {
    let joint = jm.product().joint();
    JointQuery { gamble: gamble(rng, joint), event: sample::event(rng, joint) }
}

fn factor_query(rng: &mut SuiteRng, jm: &JointModel) -> MarginalQuery {
    let factor = rng.gen_range(1..=2);
    let space = jm.product().factor(factor);
    let others = jm.family(3 - factor).with_full_space();
    MarginalQuery {
        factor,
        gamble: gamble(rng, space),
        event: sample::event(rng, space),
        other: others.choose(rng).expect("includes the full space").clone(),
    }
}

/// A non-negative gamble on factor `i`, measurable for its family most of the time.
fn factor_g(rng: &mut SuiteRng, jm: &JointModel, i: usize) -> Gamble {
    if rng.gen_bool(0.8) {
        sample::measurable_gamble(rng, jm.family(i), 3)
    } else {
        sample::nonnegative_gamble(rng, jm.product().factor(i), 3)
    }
}

fn coherence_routes_agree(ctx: &mut Ctx, set: &AssessmentSet) -> Result<(), ModelError> {
    let space = set.space().clone();
    let mut candidates = vec![set.clone()];
    for _ in 0..ctx.samples {
        if ctx.rng.gen_bool(0.5) {
            let mut raised = AssessmentSet::vacuous(&space);
            for a in set.assessments() {
                let bound = if ctx.rng.gen_bool(0.5) {
                    sample::rational_between(&mut ctx.rng, a.lower_bound(), &a.gamble().max_on(a.event()), 20)
                } else {
                    a.lower_bound().clone()
                };
                raised.push(ConditionalAssessment::new(a.gamble().clone(), a.event().clone(), bound)?)?;
            }
            if ctx.rng.gen_bool(0.5) {
                raised.push(sample::assessment(&mut ctx.rng, &space, true))?;
            }
            candidates.push(raised);
        } else {
            let count = ctx.rng.gen_range(1..=6);
            candidates.push(sample::assessment_set(&mut ctx.rng, &space, count, true));
        }
    }
    for c in &candidates {
        if c.len() > DEFAULT_MAX_ASSESSMENTS {
            ctx.skip();
            continue;
        }
        let cone = check_coherence(c);
        let direct = check_coherence_direct(c, DEFAULT_MAX_ASSESSMENTS)?;
        ctx.holds(cone.verdict.kind() == direct.verdict.kind(), || {
            format!("{c:?}: cone says {}, direct says {}", cone.summary(), direct.summary())
        });
        for report in [&cone, &direct] {
            if let Verdict::IncursPartialLoss { weights, margin } = &report.verdict {
                ctx.holds(verify_loss_certificate(c, weights, margin), || format!("{c:?}: invalid certificate"));
            }
        }
    }
    Ok(())
}

fn natural_extension_extends(ctx: &mut Ctx, set: &AssessmentSet) -> Result<(), ModelError> {
    let ne = NaturalExtension::new(set)?;
    for a in set.assessments() {
        let v = ne.lower(a.gamble(), a.event())?;
        ctx.equal(&v, a.lower_bound(), || format!("E({}|{})", a.gamble(), a.event()));
    }
    for _ in 0..ctx.samples {
        let f = gamble(&mut ctx.rng, set.space());
        let b = sample::event(&mut ctx.rng, set.space());
        let v = ne.lower(&f, &b)?;
        let mut extended = set.clone();
        extended.push(ConditionalAssessment::new(f.clone(), b.clone(), v.clone())?)?;
        ctx.holds(check_coherence(&extended).is_coherent(), || {
            format!("adding E({f}|{b}) = {} breaks coherence", format_rational(&v))
        });
    }
    Ok(())
}

fn lower_prevision_axioms(ctx: &mut Ctx, set: &AssessmentSet) -> Result<(), ModelError> {
    let report = lp_axiom_suite(set, ctx.samples, &mut ctx.rng)?;
    ctx.axioms(&report);
    Ok(())
}

fn linear_prevision_axioms(ctx: &mut Ctx, set: &AssessmentSet) -> Result<(), ModelError> {
    let space = set.space();
    let masses = sample::mass_function(&mut ctx.rng, space.len(), 24, true);
    let prev = linear_prevision_from_mass(&MassFunction::new(space, masses)?)?;
    let report = p_axiom_suite(&prev, ctx.samples, &mut ctx.rng);
    ctx.axioms(&report);
    Ok(())
}

fn nonnegative_sample(ctx: &mut Ctx, family: &ConditioningFamily) -> Gamble {
    if ctx.rng.gen_bool(0.5) {
        sample::measurable_gamble(&mut ctx.rng, family, 3)
    } else {
        sample::nonnegative_gamble(&mut ctx.rng, family.space(), 3)
    }
}

fn measurability_threshold(ctx: &mut Ctx, set: &AssessmentSet) -> Result<(), ModelError> {
    for _ in 0..ctx.samples {
        let family = sample::family_mix(&mut ctx.rng, set.space());
        let g = nonnegative_sample(ctx, &family);
        let threshold = match threshold_condition(&g, &family) {
            Ok(t) => t,
            Err(ModelError::SizeCap { .. }) => {
                ctx.skip();
                continue;
            }
            Err(e) => return Err(e),
        };
        let measurable = is_measurable(&g, &family)?;
        if threshold {
            ctx.holds(measurable, || format!("{g} passes the threshold test but is not measurable"));
        } else {
            ctx.unasserted(!measurable);
        }
    }
    Ok(())
}

fn measurability_totality(ctx: &mut Ctx, set: &AssessmentSet) -> Result<(), ModelError> {
    let all = ConditioningFamily::all_subsets(set.space())?;
    for _ in 0..ctx.samples {
        let g = sample::nonnegative_gamble(&mut ctx.rng, set.space(), 4);
        ctx.holds(is_measurable(&g, &all)?, || format!("{g} is not measurable for all subsets"));
    }
    Ok(())
}

fn decomposition_soundness(ctx: &mut Ctx, set: &AssessmentSet) -> Result<(), ModelError> {
    for _ in 0..ctx.samples {
        let family = sample::family_mix(&mut ctx.rng, set.space());
        let built = sample::measurable_gamble(&mut ctx.rng, &family, 3);
        let other = sample::nonnegative_gamble(&mut ctx.rng, set.space(), 3);
        for (g, must_be_measurable) in [(built, true), (other, false)] {
            match is_simple_measurable(&g, &family)? {
                Measurability::Simple(d) => {
                    ctx.holds(d.reconstruct(&g) == g && d.uses_only(&family), || {
                        format!("decomposition {d:?} does not reconstruct {g}")
                    });
                }
                Measurability::NotMeasurable => {
                    ctx.holds(!must_be_measurable, || format!("{g} was built from the family but rejected"));
                }
            }
        }
    }
    Ok(())
}

fn envelope_unconditional(ctx: &mut Ctx, set: &AssessmentSet) -> Result<(), ModelError> {
    let ne = NaturalExtension::new(set)?;
    let cp = credal_vertices(set)?;
    let full = set.space().full_event();
    for _ in 0..ctx.samples {
        let f = gamble(&mut ctx.rng, set.space());
        let oracle = lower_envelope_value(&cp, &f, &full)?;
        ctx.equal(&ne.lower(&f, &full)?, &oracle, || format!("E({f})"));
    }
    Ok(())
}

fn envelope_conditional(ctx: &mut Ctx, set: &AssessmentSet) -> Result<(), ModelError> {
    let ne = NaturalExtension::new(set)?;
    let cp = credal_vertices(set)?;
    for _ in 0..ctx.samples {
        let f = gamble(&mut ctx.rng, set.space());
        let b = sample::event(&mut ctx.rng, set.space());
        if cp.min_vertex_mass(&b) == Rational::from_integer(0.into()) {
            ctx.skip();
            continue;
        }
        let oracle = lower_envelope_value(&cp, &f, &b)?;
        ctx.equal(&ne.lower(&f, &b)?, &oracle, || format!("E({f}|{b})"));
    }
    Ok(())
}

fn joint_avoids_partial_loss(ctx: &mut Ctx, jm: &JointModel) -> Result<(), ModelError> {
    ctx.holds(jm.avoids_partial_loss(), || "joint generators incur partial loss".into());
    Ok(())
}

fn marginal_consistency(ctx: &mut Ctx, jm: &JointModel) -> Result<(), ModelError> {
    for _ in 0..ctx.samples {
        let q = factor_query(&mut ctx.rng, jm);
        for c in &marginal_consistency_check(jm, &[q])?.checks {
            ctx.query(c);
        }
    }
    Ok(())
}

fn epistemic_independence(ctx: &mut Ctx, jm: &JointModel) -> Result<(), ModelError> {
    for _ in 0..ctx.samples {
        let q = factor_query(&mut ctx.rng, jm);
        for c in &independence_check(jm, &[q])?.checks {
            ctx.query(c);
        }
    }
    Ok(())
}

fn external_additivity(ctx: &mut Ctx, jm: &JointModel) -> Result<(), ModelError> {
    for _ in 0..ctx.samples {
        let f = gamble(&mut ctx.rng, jm.product().factor(1));
        let h = gamble(&mut ctx.rng, jm.product().factor(2));
        ctx.theorem(&check_external_additivity(jm, &f, &h)?);
    }
    Ok(())
}

/// `h` on the opposite factor, centred to lower prevision zero every fourth draw.
fn factor_h(ctx: &mut Ctx, jm: &JointModel, j: usize, s: usize) -> Result<Gamble, ModelError> {
    let h = gamble(&mut ctx.rng, jm.product().factor(j));
    if s.is_multiple_of(4) {
        centred(jm, j, &h)
    } else {
        Ok(h)
    }
}

fn factorisation(ctx: &mut Ctx, jm: &JointModel) -> Result<(), ModelError> {
    for s in 0..ctx.samples {
        let i = ctx.rng.gen_range(1..=2);
        let f = gamble(&mut ctx.rng, jm.product().factor(i));
        let g = factor_g(&mut ctx.rng, jm, i);
        let h = factor_h(ctx, jm, 3 - i, s)?;
        ctx.theorem(&check_theorem_factadd(jm, i, &f, &g, &h)?);
    }
    Ok(())
}

fn sign_split_factorisation(ctx: &mut Ctx, jm: &JointModel) -> Result<(), ModelError> {
    for s in 0..ctx.samples {
        let i = ctx.rng.gen_range(1..=2);
        let g = factor_g(&mut ctx.rng, jm, i);
        let h = factor_h(ctx, jm, 3 - i, s)?;
        ctx.theorem(&check_factorisation(jm, i, &g, &h)?);
    }
    Ok(())
}

fn precise_product(ctx: &mut Ctx, jm: &JointModel) -> Result<(), ModelError> {
    let p = jm.product();
    let m1 = MassFunction::new(p.factor(1), sample::mass_function(&mut ctx.rng, p.factor(1).len(), 12, false))?;
    let m2 = MassFunction::new(p.factor(2), sample::mass_function(&mut ctx.rng, p.factor(2).len(), 12, false))?;
    let precise = jm.with_locals(
        &AssessmentSet::precise(p.factor(1), m1.probabilities())?,
        &AssessmentSet::precise(p.factor(2), m2.probabilities())?,
    )?;
    let full = p.joint().full_event();
    for _ in 0..ctx.samples {
        let i = ctx.rng.gen_range(1..=2);
        let f = gamble(&mut ctx.rng, p.factor(i));
        let g = sample::measurable_gamble(&mut ctx.rng, jm.family(i), 3);
        let h = gamble(&mut ctx.rng, p.factor(3 - i));
        let joint = factorising_gamble(&precise, i, &f, &g, &h)?;
        let oracle = product_expectation(p, &m1, &m2, &joint);
        ctx.equal(&joint_value(&precise, &joint, &full)?, &oracle, || format!("factor {i} f={f} g={g} h={h}"));

        let arbitrary = gamble(&mut ctx.rng, p.joint());
        let v = joint_value(&precise, &arbitrary, &full)?;
        ctx.unasserted(v == product_expectation(p, &m1, &m2, &arbitrary));
    }
    Ok(())
}

fn disjoint_union_invariance(ctx: &mut Ctx, jm: &JointModel) -> Result<(), ModelError> {
    let queries: Vec<JointQuery> = (0..ctx.samples).map(|_| joint_query(&mut ctx.rng, jm)).collect();
    for c in &closure_invariance_check(jm, &queries)?.checks {
        ctx.query(c);
    }
    Ok(())
}

fn family_monotonicity(ctx: &mut Ctx, jm: &JointModel) -> Result<(), ModelError> {
    let enlarge = |ctx: &mut Ctx, i: usize| {
        let fam = jm.family(i);
        let extra = sample::family(&mut ctx.rng, fam.space(), 2);
        ConditioningFamily::new(fam.space(), fam.events().iter().chain(extra.events()).cloned()).expect("same space")
    };
    let f1 = enlarge(ctx, 1);
    let f2 = enlarge(ctx, 2);
    let larger = jm.with_families(&f1, &f2)?;
    for _ in 0..ctx.samples {
        let q = joint_query(&mut ctx.rng, jm);
        let small = joint_value(jm, &q.gamble, &q.event)?;
        let big = joint_value(&larger, &q.gamble, &q.event)?;
        ctx.holds(big >= small, || {
            format!("f={} B={}: {} drops to {}", q.gamble, q.event, format_rational(&small), format_rational(&big))
        });
    }
    Ok(())
}

const COLLAPSE_MAX_OUTCOMES: usize = 4;

fn value_subset_collapse(ctx: &mut Ctx, jm: &JointModel) -> Result<(), ModelError> {
    let (s1, s2) = (jm.product().factor(1), jm.product().factor(2));
    if s1.len() > COLLAPSE_MAX_OUTCOMES || s2.len() > COLLAPSE_MAX_OUTCOMES {
        ctx.skip();
        return Ok(());
    }
    let value = jm.with_families(&ConditioningFamily::singletons(s1), &ConditioningFamily::singletons(s2))?;
    let subset = jm.with_families(&ConditioningFamily::all_subsets(s1)?, &ConditioningFamily::all_subsets(s2)?)?;
    for _ in 0..ctx.samples {
        let q = joint_query(&mut ctx.rng, jm);
        let oracle = joint_value(&subset, &q.gamble, &q.event)?;
        ctx.equal(&joint_value(&value, &q.gamble, &q.event)?, &oracle, || format!("f={} B={}", q.gamble, q.event));
    }
    Ok(())
}

fn vacuous_product(ctx: &mut Ctx, jm: &JointModel) -> Result<(), ModelError> {
    let p = jm.product();
    let vacuous = jm.with_locals(&AssessmentSet::vacuous(p.factor(1)), &AssessmentSet::vacuous(p.factor(2)))?;
    for _ in 0..ctx.samples {
        let q = joint_query(&mut ctx.rng, jm);
        let oracle = q.gamble.min_on(&q.event);
        ctx.equal(&joint_value(&vacuous, &q.gamble, &q.event)?, &oracle, || format!("f={} B={}", q.gamble, q.event));
    }
    Ok(())
}

fn factor_symmetry(ctx: &mut Ctx, jm: &JointModel) -> Result<(), ModelError> {
    let swapped = jm.swapped();
    let (p, sp) = (jm.product(), swapped.product());
    for _ in 0..ctx.samples {
        let q = joint_query(&mut ctx.rng, jm);
        let f = p.transpose(&q.gamble, sp);
        let mask = p.transpose(&q.event.indicator(), sp).values().iter().map(|v| v == &Rational::from_integer(1.into())).collect();
        let b = Event::from_mask(sp.joint(), mask)?;
        let oracle = joint_value(jm, &q.gamble, &q.event)?;
        ctx.equal(&joint_value(&swapped, &f, &b)?, &oracle, || format!("f={} B={}", q.gamble, q.event));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> SuiteConfig {
        SuiteConfig { subjects: 3, samples: 3, max_outcomes: 3, max_assessments: 2, ..SuiteConfig::default() }
    }

    #[test]
    fn default_suite_passes_and_is_deterministic() {
        let cfg = small();
        let a = run_property_suite(&cfg);
        assert!(a.passed, "{}", a.human());
        assert_eq!(a.properties.len(), PROPERTIES.len());
        assert!(a.total_checks > 0);
        let b = run_property_suite(&cfg);
        assert_eq!(a, b);
    }

    #[test]
    fn corrupted_oracle_is_attributed() {
        for name in ["external-additivity", "envelope-unconditional", "lower-prevision-axioms"] {
            let cfg = SuiteConfig { corrupt: Some(name.into()), only: vec![name.into()], ..small() };
            let report = run_property_suite(&cfg);
            assert!(!report.passed);
            let p = report.property(name).unwrap();
            assert_eq!(p.status, "fail");
            assert!(report.human().contains(p.result));
        }
    }

    #[test]
    fn two_outcome_spaces_still_cover_every_property() {
        let cfg = SuiteConfig { max_outcomes: 2, ..small() };
        let report = run_property_suite(&cfg);
        assert!(report.passed, "{}", report.human());
        assert!(report.properties.iter().all(|p| p.checks > 0), "{}", report.human());
    }

    #[test]
    fn groups_select_properties() {
        let cfg = SuiteConfig { only: vec!["additivity".into()], ..small() };
        let report = run_property_suite(&cfg);
        assert_eq!(report.properties.len(), 1);
        assert_eq!(report.properties[0].name, "external-additivity");
        for group in GROUPS {
            assert!(PROPERTIES.iter().any(|p| p.group == group));
        }
    }
}
