//! The independent natural extension of two marginal models.
//!
//! Each local assessment `P(f|B)` on factor `i` is called off on `B` and
//! multiplied by the cylinder of every conditioning event of the other factor
//! (and of the whole other factor). The joint model is the natural extension
//! of all these generators on the product space.

use crate::assessment::{AssessmentSet, ConditioningFamily};
use crate::envelope::MassFunction;
use crate::error::{InstanceError, ModelError};
use crate::lowprev::{check_coherence, NaturalExtension};
use crate::rational::{format_rational, Rational};
use crate::space::{Event, Gamble, ProductSpace};
use crate::strict::{StrictCone, StrictValue};

/// Where a joint generator comes from: assessment `index` of local `factor`,
/// multiplied by the indicator of `other` on the opposite factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorOrigin {
    pub factor: usize,
    pub index: usize,
    pub other: Event,
}

#[derive(Clone, Debug)]
pub struct JointCone {
    gambles: Vec<Gamble>,
    origins: Vec<GeneratorOrigin>,
    cone: StrictCone,
}

impl JointCone {
    pub fn gambles(&self) -> &[Gamble] {
        &self.gambles
    }

    pub fn origins(&self) -> &[GeneratorOrigin] {
        &self.origins
    }

    pub fn len(&self) -> usize {
        self.gambles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gambles.is_empty()
    }

    pub fn strict_cone(&self) -> &StrictCone {
        &self.cone
    }
}

#[derive(Clone, Debug)]
pub struct JointModel {
    local1: NaturalExtension,
    local2: NaturalExtension,
    fam1: ConditioningFamily,
    fam2: ConditioningFamily,
    product: ProductSpace,
    cone: JointCone,
}

impl JointModel {
    /// Both locals must be coherent and each family must live on its factor.
    pub fn new(
        local1: &AssessmentSet,
        local2: &AssessmentSet,
        fam1: &ConditioningFamily,
        fam2: &ConditioningFamily,
    ) -> Result<Self, ModelError> {
        for (i, local) in [(1, local1), (2, local2)] {
            let report = check_coherence(local);
            if !report.is_coherent() {
                return Err(ModelError::Incoherent(format!("local model {i}: {}", report.summary())));
            }
        }
        if !fam1.space().same_as(local1.space()) {
            return Err(InstanceError::FactorMismatch(1).into());
        }
        if !fam2.space().same_as(local2.space()) {
            return Err(InstanceError::FactorMismatch(2).into());
        }
        Ok(Self::assemble(
            NaturalExtension::trusted(local1),
            NaturalExtension::trusted(local2),
            fam1.clone(),
            fam2.clone(),
        ))
    }

    fn assemble(
        local1: NaturalExtension,
        local2: NaturalExtension,
        fam1: ConditioningFamily,
        fam2: ConditioningFamily,
    ) -> Self {
        let product = ProductSpace::new(local1.source().space(), local2.source().space());
        let cone = generators(&product, local1.source(), local2.source(), &fam1, &fam2);
        JointModel { local1, local2, fam1, fam2, product, cone }
    }

    /// The same locals with different families; coherence is not re-checked.
    pub fn with_families(&self, fam1: &ConditioningFamily, fam2: &ConditioningFamily) -> Result<Self, ModelError> {
        if !fam1.space().same_as(self.product.factor(1)) {
            return Err(InstanceError::FactorMismatch(1).into());
        }
        if !fam2.space().same_as(self.product.factor(2)) {
            return Err(InstanceError::FactorMismatch(2).into());
        }
        Ok(Self::assemble(self.local1.clone(), self.local2.clone(), fam1.clone(), fam2.clone()))
    }

    /// Different local models on the same factors, with the same families.
    pub fn with_locals(&self, local1: &AssessmentSet, local2: &AssessmentSet) -> Result<Self, ModelError> {
        if !local1.space().same_as(self.product.factor(1)) {
            return Err(InstanceError::FactorMismatch(1).into());
        }
        if !local2.space().same_as(self.product.factor(2)) {
            return Err(InstanceError::FactorMismatch(2).into());
        }
        JointModel::new(local1, local2, &self.fam1, &self.fam2)
    }

    /// Factors exchanged.
    pub fn swapped(&self) -> JointModel {
        Self::assemble(self.local2.clone(), self.local1.clone(), self.fam2.clone(), self.fam1.clone())
    }

    pub fn local(&self, factor: usize) -> &NaturalExtension {
        match factor {
            1 => &self.local1,
            2 => &self.local2,
            _ => panic!("factor index must be 1 or 2, got {factor}"),
        }
    }

    pub fn family(&self, factor: usize) -> &ConditioningFamily {
        match factor {
            1 => &self.fam1,
            2 => &self.fam2,
            _ => panic!("factor index must be 1 or 2, got {factor}"),
        }
    }

    pub fn product(&self) -> &ProductSpace {
        &self.product
    }

    pub fn cone(&self) -> &JointCone {
        &self.cone
    }

    /// Whether the joint generators avoid partial loss.
    pub fn avoids_partial_loss(&self) -> bool {
        self.cone.cone.partial_loss().is_none()
    }

    /// Local natural extension `E_i(f | B)`.
    pub fn local_value(&self, factor: usize, f: &Gamble, event: &Event) -> Result<Rational, ModelError> {
        Ok(self.local(factor).lower(f, event)?)
    }

    pub fn local_upper(&self, factor: usize, f: &Gamble, event: &Event) -> Result<Rational, ModelError> {
        Ok(self.local(factor).upper(f, event)?)
    }
}

fn generators(
    product: &ProductSpace,
    local1: &AssessmentSet,
    local2: &AssessmentSet,
    fam1: &ConditioningFamily,
    fam2: &ConditioningFamily,
) -> JointCone {
    let mut out = JointCone { gambles: Vec::new(), origins: Vec::new(), cone: StrictCone::new(product.len()) };
    for (factor, local, other_fam) in [(1, local1, fam2), (2, local2, fam1)] {
        let other = 3 - factor;
        for (index, a) in local.assessments().iter().enumerate() {
            let called_off = product.cylindrical_extension(&a.marginal_gamble(), factor).expect("factor space");
            let strict = product.cylinder(a.event(), factor).expect("factor space");
            for b in other_fam.with_full_space() {
                let cyl = product.cylinder(&b, other).expect("factor space");
                let payoff = called_off.times(&cyl.indicator());
                let region = strict.intersect(&cyl).expect("rectangles of non-empty events");
                if out.cone.push(payoff.values().to_vec(), region.mask().to_vec()) {
                    out.gambles.push(payoff);
                    out.origins.push(GeneratorOrigin { factor, index, other: b });
                }
            }
        }
    }
    out
}

/// The joint generators of a model, with pointwise non-negative ones pruned.
pub fn build_joint_generators(jm: &JointModel) -> JointCone {
    jm.cone.clone()
}

/// `(P1 ⊗ P2)(f | B)`.
pub fn joint_value(jm: &JointModel, f: &Gamble, event: &Event) -> Result<Rational, ModelError> {
    let joint = jm.product.joint();
    if !f.space().same_as(joint) || !event.space().same_as(joint) {
        return Err(InstanceError::SpaceMismatch.into());
    }
    match jm.cone.cone.lower_value(f.values(), event.mask()) {
        StrictValue::Finite { value, .. } => Ok(value),
        StrictValue::Unbounded => Err(ModelError::Incoherent("joint model incurs partial loss".into())),
    }
}

/// Expectation under the product of two mass functions, by direct summation.
pub fn product_expectation(product: &ProductSpace, p1: &MassFunction, p2: &MassFunction, f: &Gamble) -> Rational {
    let mut total = Rational::from_integer(0.into());
    for k in 0..product.len() {
        let (i, j) = product.pair(k);
        total += &p1.probabilities()[i] * &p2.probabilities()[j] * f.value(k);
    }
    total
}

/// One exact comparison: every listed value must coincide.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QueryCheck {
    pub query: String,
    pub values: Vec<(String, Rational)>,
    pub holds: bool,
}

impl QueryCheck {
    pub fn equality(query: String, values: Vec<(String, Rational)>) -> Self {
        let holds = values.windows(2).all(|w| w[0].1 == w[1].1);
        QueryCheck { query, values, holds }
    }

    pub fn describe(&self) -> String {
        let parts: Vec<String> = self.values.iter().map(|(k, v)| format!("{k} = {}", format_rational(v))).collect();
        format!("{}: {}", self.query, parts.join(", "))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckReport {
    pub checks: Vec<QueryCheck>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &QueryCheck> {
        self.checks.iter().filter(|c| !c.holds)
    }
}

/// A local gamble `f` on factor `factor`, conditioned on `event` there and on
/// `other` (a family member or the whole space) on the opposite factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarginalQuery {
    pub factor: usize,
    pub gamble: Gamble,
    pub event: Event,
    pub other: Event,
}

struct LiftedQuery {
    f: Gamble,
    b_i: Event,
    b_ij: Event,
    label: String,
}

fn lift(jm: &JointModel, q: &MarginalQuery) -> Result<LiftedQuery, ModelError> {
    if q.factor != 1 && q.factor != 2 {
        return Err(InstanceError::FactorMismatch(q.factor).into());
    }
    let other = 3 - q.factor;
    if !q.event.space().same_as(jm.product.factor(q.factor)) {
        return Err(InstanceError::FactorMismatch(q.factor).into());
    }
    if !q.other.space().same_as(jm.product.factor(other)) {
        return Err(InstanceError::FactorMismatch(other).into());
    }
    if !q.other.is_full() && !jm.family(other).contains(&q.other) {
        return Err(ModelError::NotInFamily(q.other.to_string()));
    }
    let f = jm.product.cylindrical_extension(&q.gamble, q.factor)?;
    let b_i = jm.product.cylinder(&q.event, q.factor)?;
    let b_ij = b_i.intersect(&jm.product.cylinder(&q.other, other)?).expect("rectangle");
    let label = format!("factor {} f={} B_i={} B_j={}", q.factor, q.gamble, q.event, q.other);
    Ok(LiftedQuery { f, b_i, b_ij, label })
}

/// Joint value given `B_i ∩ B_j`, joint value given `B_i`, and the local
/// natural extension must all coincide.
pub fn marginal_consistency_check(jm: &JointModel, queries: &[MarginalQuery]) -> Result<CheckReport, ModelError> {
    let mut report = CheckReport::default();
    for q in queries {
        let l = lift(jm, q)?;
        let values = vec![
            ("joint(f|B_i∩B_j)".to_string(), joint_value(jm, &l.f, &l.b_ij)?),
            ("joint(f|B_i)".to_string(), joint_value(jm, &l.f, &l.b_i)?),
            ("local(f|B_i)".to_string(), jm.local_value(q.factor, &q.gamble, &q.event)?),
        ];
        report.checks.push(QueryCheck::equality(l.label, values));
    }
    Ok(report)
}

/// Epistemic irrelevance on the supplied queries: conditioning on `B_j` does
/// not change the joint value.
pub fn independence_check(jm: &JointModel, queries: &[MarginalQuery]) -> Result<CheckReport, ModelError> {
    let mut report = CheckReport::default();
    for q in queries {
        let l = lift(jm, q)?;
        let values = vec![
            ("joint(f|B_i)".to_string(), joint_value(jm, &l.f, &l.b_i)?),
            ("joint(f|B_i∩B_j)".to_string(), joint_value(jm, &l.f, &l.b_ij)?),
        ];
        report.checks.push(QueryCheck::equality(l.label, values));
    }
    Ok(report)
}

/// A joint query `(f, B)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JointQuery {
    pub gamble: Gamble,
    pub event: Event,
}

pub const DISJOINT_UNION_PARTS: usize = 3;

/// Adds every disjoint union of at most three members to both families and
/// compares joint values.
pub fn closure_invariance_check(jm: &JointModel, queries: &[JointQuery]) -> Result<CheckReport, ModelError> {
    let enlarged = jm.with_families(
        &jm.fam1.with_disjoint_unions(DISJOINT_UNION_PARTS),
        &jm.fam2.with_disjoint_unions(DISJOINT_UNION_PARTS),
    )?;
    let mut report = CheckReport::default();
    for q in queries {
        let values = vec![
            ("original".to_string(), joint_value(jm, &q.gamble, &q.event)?),
            ("enlarged".to_string(), joint_value(&enlarged, &q.gamble, &q.event)?),
        ];
        report.checks.push(QueryCheck::equality(format!("f={} B={}", q.gamble, q.event), values));
    }
    Ok(report)
}
