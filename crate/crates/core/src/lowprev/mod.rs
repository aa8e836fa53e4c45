//! Williams-coherent conditional lower previsions on finite domains.
//!
//! An assessment set is coherent when the cone generated by its called-off
//! gambles `[f_i - μ] I_{B_i}`, `μ < P(f_i|B_i)`, avoids partial loss and
//! gives back every assessed bound. Its natural extension is the lower
//! prevision that cone induces on every `(f, B)`.

mod axioms;
mod direct;

pub use axioms::{lp_axiom_suite, AxiomCheck, AxiomReport};
pub use direct::{check_coherence_direct, DEFAULT_MAX_ASSESSMENTS};

use crate::assessment::AssessmentSet;
use crate::error::{InstanceError, ModelError};
use crate::rational::{format_rational, Rational};
use crate::space::{Event, Gamble};
use crate::strict::{StrictCone, StrictValue};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Coherent,
    /// `weights ≥ 0` over the assessments, summing to one, with
    /// `Σ w_i (f_i - P_i + margin) I_{B_i} ≤ 0` and `margin > 0`.
    IncursPartialLoss { weights: Vec<Rational>, margin: Rational },
    /// The other assessments force a strictly larger value for this one.
    DominatedAssessment { index: usize, value: Rational },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerdictKind {
    Coherent,
    IncursPartialLoss,
    DominatedAssessment,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssessmentDetail {
    pub index: usize,
    pub lower_bound: Rational,
    /// `None` when partial loss already stopped the check.
    pub natural_extension: Option<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoherenceReport {
    pub verdict: Verdict,
    pub details: Vec<AssessmentDetail>,
}

impl Verdict {
    pub fn kind(&self) -> VerdictKind {
        match self {
            Verdict::Coherent => VerdictKind::Coherent,
            Verdict::IncursPartialLoss { .. } => VerdictKind::IncursPartialLoss,
            Verdict::DominatedAssessment { .. } => VerdictKind::DominatedAssessment,
        }
    }
}

impl CoherenceReport {
    pub fn is_coherent(&self) -> bool {
        self.verdict == Verdict::Coherent
    }

    pub fn summary(&self) -> String {
        match &self.verdict {
            Verdict::Coherent => format!("coherent ({} assessments)", self.details.len()),
            Verdict::IncursPartialLoss { margin, .. } => {
                format!("incoherent: incurs partial loss (margin {})", format_rational(margin))
            }
            Verdict::DominatedAssessment { index, value } => format!(
                "incoherent: assessment #{index} is dominated, natural extension gives {}",
                format_rational(value)
            ),
        }
    }
}

/// The strict cone `E(A_P)` of an assessment set, with the assessment index
/// of each kept generator.
fn assessment_cone(set: &AssessmentSet) -> (StrictCone, Vec<usize>) {
    let mut cone = StrictCone::new(set.space().len());
    let mut origin = Vec::new();
    for (i, a) in set.assessments().iter().enumerate() {
        if cone.push(a.marginal_gamble().into_values(), a.event().mask().to_vec()) {
            origin.push(i);
        }
    }
    (cone, origin)
}

/// Coherence through the cone: strict partial loss first, then each bound
/// against the natural extension.
pub fn check_coherence(set: &AssessmentSet) -> CoherenceReport {
    let (cone, origin) = assessment_cone(set);
    let mut details: Vec<AssessmentDetail> = set
        .assessments()
        .iter()
        .enumerate()
        .map(|(index, a)| AssessmentDetail { index, lower_bound: a.lower_bound().clone(), natural_extension: None })
        .collect();
    if let Some(cert) = cone.partial_loss() {
        let mut weights = vec![Rational::from_integer(0.into()); set.len()];
        for (w, &i) in cert.weights.iter().zip(&origin) {
            weights[i] = w.clone();
        }
        return CoherenceReport { verdict: Verdict::IncursPartialLoss { weights, margin: cert.margin }, details };
    }
    let mut verdict = Verdict::Coherent;
    for (i, a) in set.assessments().iter().enumerate() {
        let value = match cone.lower_value(a.gamble().values(), a.event().mask()) {
            StrictValue::Finite { value, .. } => value,
            StrictValue::Unbounded => unreachable!("bounded once partial loss is excluded"),
        };
        if verdict == Verdict::Coherent && &value != a.lower_bound() {
            debug_assert!(&value > a.lower_bound());
            verdict = Verdict::DominatedAssessment { index: i, value: value.clone() };
        }
        details[i].natural_extension = Some(value);
    }
    CoherenceReport { verdict, details }
}

/// Checks `Σ w_i (f_i - P_i + margin) I_{B_i} ≤ 0` pointwise with
/// `w ≥ 0` non-zero and `margin > 0`.
pub fn verify_loss_certificate(set: &AssessmentSet, weights: &[Rational], margin: &Rational) -> bool {
    use num_traits::{Signed, Zero};
    if weights.len() != set.len() || !margin.is_positive() {
        return false;
    }
    if weights.iter().any(Signed::is_negative) || weights.iter().all(Zero::is_zero) {
        return false;
    }
    (0..set.space().len()).all(|x| {
        let total: Rational = set
            .assessments()
            .iter()
            .zip(weights)
            .filter(|(a, _)| a.event().contains(x))
            .map(|(a, w)| w * (a.gamble().value(x) - a.lower_bound() + margin))
            .sum();
        !total.is_positive()
    })
}

/// A coherent assessment set together with its cone, ready for queries.
#[derive(Clone, Debug)]
pub struct NaturalExtension {
    source: AssessmentSet,
    cone: StrictCone,
}

impl NaturalExtension {
    /// Refuses incoherent input.
    pub fn new(source: &AssessmentSet) -> Result<Self, ModelError> {
        let report = check_coherence(source);
        if !report.is_coherent() {
            return Err(ModelError::Incoherent(report.summary()));
        }
        Ok(NaturalExtension::trusted(source))
    }

    /// Skips the coherence gate; for callers that already ran it.
    pub(crate) fn trusted(source: &AssessmentSet) -> Self {
        let (cone, _) = assessment_cone(source);
        NaturalExtension { source: source.clone(), cone }
    }

    pub fn source(&self) -> &AssessmentSet {
        &self.source
    }

    pub fn cone(&self) -> &StrictCone {
        &self.cone
    }

    /// `E(f | B)`.
    pub fn lower(&self, f: &Gamble, event: &Event) -> Result<Rational, InstanceError> {
        let space = self.source.space();
        if !f.space().same_as(space) || !event.space().same_as(space) {
            return Err(InstanceError::SpaceMismatch);
        }
        match self.cone.lower_value(f.values(), event.mask()) {
            StrictValue::Finite { value, .. } => Ok(value),
            StrictValue::Unbounded => unreachable!("coherent models have bounded natural extension"),
        }
    }

    /// Conjugate upper prevision `-E(-f | B)`.
    pub fn upper(&self, f: &Gamble, event: &Event) -> Result<Rational, InstanceError> {
        Ok(-self.lower(&-f, event)?)
    }

    /// Unconditional `E(f)`.
    pub fn lower_unconditional(&self, f: &Gamble) -> Result<Rational, InstanceError> {
        self.lower(f, &self.source.space().full_event())
    }
}

/// One-shot `E(f | B)`; checks coherence first.
pub fn natural_extension_value(set: &AssessmentSet, f: &Gamble, event: &Event) -> Result<Rational, ModelError> {
    Ok(NaturalExtension::new(set)?.lower(f, event)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, q};
    use crate::space::Space;

    fn ab() -> Space {
        Space::new(["a", "b"]).unwrap()
    }

    fn lower_probs(s: &Space, bounds: &[(&str, Rational)]) -> AssessmentSet {
        let mut set = AssessmentSet::vacuous(s);
        for (label, b) in bounds {
            let ind = Event::from_labels(s, [*label]).unwrap().indicator();
            set = set.with(ind, s.full_event(), b.clone()).unwrap();
        }
        set
    }

    #[test]
    fn empty_set_is_coherent() {
        assert!(check_coherence(&AssessmentSet::vacuous(&ab())).is_coherent());
    }

    #[test]
    fn lower_probabilities_summing_above_one_incur_partial_loss() {
        let s = ab();
        let set = lower_probs(&s, &[("a", q(4, 5)), ("b", q(1, 2))]);
        // Equal weights witness the loss: 1/5 - 1/2 < 0 at a, -4/5 + 1/2 < 0 at b.
        assert!(verify_loss_certificate(&set, &[int(1), int(1)], &q(3, 20)));
        assert!(!verify_loss_certificate(&set, &[int(1), int(0)], &q(1, 100)));
        match check_coherence(&set).verdict {
            Verdict::IncursPartialLoss { weights, margin } => {
                assert_eq!(weights.iter().sum::<Rational>(), int(1));
                assert!(verify_loss_certificate(&set, &weights, &margin));
            }
            other => panic!("unexpected verdict {other:?}"),
        }
    }

    #[test]
    fn dominated_but_loss_free_assessment() {
        // P(I_a) = 1/2 implies P(I_a + I_b... ) style: P(I_{a,b}) is at least 1/2 on {a,b,c}.
        let s = Space::new(["a", "b", "c"]).unwrap();
        let ia = Event::from_labels(&s, ["a"]).unwrap().indicator();
        let iab = Event::from_labels(&s, ["a", "b"]).unwrap().indicator();
        let set = AssessmentSet::vacuous(&s)
            .with(ia, s.full_event(), q(1, 2))
            .unwrap()
            .with(iab, s.full_event(), q(1, 4))
            .unwrap();
        let report = check_coherence(&set);
        assert_eq!(report.verdict, Verdict::DominatedAssessment { index: 1, value: q(1, 2) });
    }

    #[test]
    fn coherent_interval_instance() {
        let s = ab();
        let set = lower_probs(&s, &[("a", q(3, 10)), ("b", q(3, 5))]);
        let report = check_coherence(&set);
        assert!(report.is_coherent());
        assert_eq!(report.details[0].natural_extension, Some(q(3, 10)));
        assert_eq!(report.details[1].natural_extension, Some(q(3, 5)));
    }

    #[test]
    fn natural_extension_examples() {
        let s = ab();
        let vac = AssessmentSet::vacuous(&s);
        let f = Gamble::from_ints(&s, &[4, -2]).unwrap();
        assert_eq!(natural_extension_value(&vac, &f, &s.full_event()).unwrap(), int(-2));

        let interval = lower_probs(&s, &[("a", q(3, 10))]);
        let ib = Event::from_labels(&s, ["b"]).unwrap().indicator();
        assert_eq!(natural_extension_value(&interval, &ib, &s.full_event()).unwrap(), int(0));

        let abc = Space::new(["a", "b", "c"]).unwrap();
        let half = lower_probs(&abc, &[("a", q(1, 2))]);
        let ia = Event::from_labels(&abc, ["a"]).unwrap().indicator();
        let cond = Event::from_labels(&abc, ["a", "b"]).unwrap();
        assert_eq!(natural_extension_value(&half, &ia, &cond).unwrap(), q(1, 2));
    }

    #[test]
    fn natural_extension_refuses_incoherent_input() {
        let s = ab();
        let bad = lower_probs(&s, &[("a", q(4, 5)), ("b", q(1, 2))]);
        let f = Gamble::from_ints(&s, &[1, 0]).unwrap();
        assert!(matches!(natural_extension_value(&bad, &f, &s.full_event()), Err(ModelError::Incoherent(_))));
    }

    #[test]
    fn certain_event_conditions_to_vacuous_elsewhere() {
        let s = Space::new(["a", "b", "c"]).unwrap();
        let set = lower_probs(&s, &[("a", int(1))]);
        let ne = NaturalExtension::new(&set).unwrap();
        let ib = Event::from_labels(&s, ["b"]).unwrap().indicator();
        let bc = Event::from_labels(&s, ["b", "c"]).unwrap();
        assert_eq!(ne.lower(&ib, &bc).unwrap(), int(0));
        assert_eq!(ne.upper(&ib, &bc).unwrap(), int(1));
        assert_eq!(ne.lower(&ib, &s.full_event()).unwrap(), int(0));
        assert_eq!(ne.upper(&ib, &s.full_event()).unwrap(), int(0));
    }
}
