//! Conditional lower prevision assessments and conditioning families.

use crate::error::InstanceError;
use crate::rational::{format_rational, Rational};
use crate::space::{Event, Gamble, Space};

/// A lower prevision `P(f | B) = lower_bound`: the supremum price for
/// buying `f`, called off outside `B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionalAssessment {
    gamble: Gamble,
    event: Event,
    lower_bound: Rational,
}

impl ConditionalAssessment {
    /// Bounds below `min_B f` are raised to it (they carry no information);
    /// bounds above `max_B f` are rejected.
    pub fn new(gamble: Gamble, event: Event, lower_bound: Rational) -> Result<Self, InstanceError> {
        if !gamble.space().same_as(event.space()) {
            return Err(InstanceError::SpaceMismatch);
        }
        let max = gamble.max_on(&event);
        if lower_bound > max {
            return Err(InstanceError::BoundAboveMax {
                bound: format_rational(&lower_bound),
                max: format_rational(&max),
            });
        }
        let min = gamble.min_on(&event);
        let lower_bound = if lower_bound < min { min } else { lower_bound };
        Ok(ConditionalAssessment { gamble, event, lower_bound })
    }

    pub fn unconditional(gamble: Gamble, lower_bound: Rational) -> Result<Self, InstanceError> {
        let event = gamble.space().full_event();
        ConditionalAssessment::new(gamble, event, lower_bound)
    }

    pub fn gamble(&self) -> &Gamble {
        &self.gamble
    }

    pub fn event(&self) -> &Event {
        &self.event
    }

    pub fn lower_bound(&self) -> &Rational {
        &self.lower_bound
    }

    /// The called-off gamble `[f - P(f|B)] I_B`.
    pub fn marginal_gamble(&self) -> Gamble {
        self.gamble.called_off(&self.lower_bound, &self.event)
    }
}

/// A conditional lower prevision on a finite domain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssessmentSet {
    space: Space,
    assessments: Vec<ConditionalAssessment>,
}

impl AssessmentSet {
    pub fn vacuous(space: &Space) -> Self {
        AssessmentSet { space: space.clone(), assessments: Vec::new() }
    }

    pub fn new(
        space: &Space,
        assessments: impl IntoIterator<Item = ConditionalAssessment>,
    ) -> Result<Self, InstanceError> {
        let mut set = AssessmentSet::vacuous(space);
        for a in assessments {
            set.push(a)?;
        }
        Ok(set)
    }

    /// Adds an assessment; a repeated `(gamble, event)` pair keeps the larger bound.
    pub fn push(&mut self, assessment: ConditionalAssessment) -> Result<(), InstanceError> {
        if !assessment.gamble.space().same_as(&self.space) {
            return Err(InstanceError::SpaceMismatch);
        }
        if let Some(existing) = self
            .assessments
            .iter_mut()
            .find(|a| a.gamble == assessment.gamble && a.event == assessment.event)
        {
            if assessment.lower_bound > existing.lower_bound {
                existing.lower_bound = assessment.lower_bound;
            }
            return Ok(());
        }
        self.assessments.push(assessment);
        Ok(())
    }

    /// Convenience for tests and presets: `P(f | B) = bound`.
    pub fn with(mut self, gamble: Gamble, event: Event, bound: Rational) -> Result<Self, InstanceError> {
        self.push(ConditionalAssessment::new(gamble, event, bound)?)?;
        Ok(self)
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn assessments(&self) -> &[ConditionalAssessment] {
        &self.assessments
    }

    pub fn len(&self) -> usize {
        self.assessments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assessments.is_empty()
    }

    pub fn is_unconditional(&self) -> bool {
        self.assessments.iter().all(|a| a.event.is_full())
    }

    /// A precise model: `P(I_x) = p(x)` and `P(-I_x) = -p(x)` for every outcome.
    pub fn precise(space: &Space, mass: &[Rational]) -> Result<Self, InstanceError> {
        if mass.len() != space.len() {
            return Err(InstanceError::ArityMismatch { expected: space.len(), found: mass.len() });
        }
        let mut set = AssessmentSet::vacuous(space);
        for (event, p) in space.singletons().into_iter().zip(mass) {
            let ind = event.indicator();
            set.push(ConditionalAssessment::unconditional(ind.clone(), p.clone())?)?;
            set.push(ConditionalAssessment::unconditional(-&ind, -p)?)?;
        }
        Ok(set)
    }
}

/// A finite set of conditioning events on one space (possibly empty).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditioningFamily {
    space: Space,
    events: Vec<Event>,
}

impl ConditioningFamily {
    pub fn new(space: &Space, events: impl IntoIterator<Item = Event>) -> Result<Self, InstanceError> {
        let mut family = ConditioningFamily { space: space.clone(), events: Vec::new() };
        for e in events {
            if !e.space().same_as(space) {
                return Err(InstanceError::SpaceMismatch);
            }
            if !family.events.contains(&e) {
                family.events.push(e);
            }
        }
        Ok(family)
    }

    pub fn empty(space: &Space) -> Self {
        ConditioningFamily { space: space.clone(), events: Vec::new() }
    }

    pub fn singletons(space: &Space) -> Self {
        ConditioningFamily { space: space.clone(), events: space.singletons() }
    }

    /// Every non-empty subset; refused above twelve outcomes.
    pub fn all_subsets(space: &Space) -> Result<Self, InstanceError> {
        if space.len() > 12 {
            return Err(InstanceError::Other(format!(
                "family preset `all` is limited to 12 outcomes, space has {}",
                space.len()
            )));
        }
        Ok(ConditioningFamily { space: space.clone(), events: space.all_nonempty_events() })
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn contains(&self, event: &Event) -> bool {
        self.events.contains(event)
    }

    /// The events of the family together with the whole space.
    pub fn with_full_space(&self) -> Vec<Event> {
        let mut events = self.events.clone();
        let full = self.space.full_event();
        if !events.contains(&full) {
            events.push(full);
        }
        events
    }

    /// The family extended by every union of at most `max_parts` pairwise
    /// disjoint members.
    pub fn with_disjoint_unions(&self, max_parts: usize) -> ConditioningFamily {
        let mut out = self.events.clone();
        let n = self.events.len();
        let mut stack: Vec<(usize, Event, usize)> =
            (0..n).map(|i| (i, self.events[i].clone(), 1)).collect();
        while let Some((last, union, parts)) = stack.pop() {
            if !out.contains(&union) {
                out.push(union.clone());
            }
            if parts == max_parts {
                continue;
            }
            for j in last + 1..n {
                if union.is_disjoint_from(&self.events[j]) {
                    stack.push((j, union.union(&self.events[j]), parts + 1));
                }
            }
        }
        ConditioningFamily { space: self.space.clone(), events: out }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, q};

    fn ab() -> Space {
        Space::new(["a", "b"]).unwrap()
    }

    #[test]
    fn low_bounds_are_raised_and_high_bounds_rejected() {
        let s = ab();
        let f = Gamble::from_ints(&s, &[2, -1]).unwrap();
        let a = ConditionalAssessment::unconditional(f.clone(), int(-5)).unwrap();
        assert_eq!(a.lower_bound(), &int(-1));
        assert!(matches!(
            ConditionalAssessment::unconditional(f, int(3)),
            Err(InstanceError::BoundAboveMax { .. })
        ));
    }

    #[test]
    fn duplicates_keep_the_larger_bound() {
        let s = ab();
        let ia = Event::from_labels(&s, ["a"]).unwrap().indicator();
        let set = AssessmentSet::vacuous(&s)
            .with(ia.clone(), s.full_event(), q(1, 5))
            .unwrap()
            .with(ia, s.full_event(), q(3, 10))
            .unwrap();
        assert_eq!(set.len(), 1);
        assert_eq!(set.assessments()[0].lower_bound(), &q(3, 10));
    }

    #[test]
    fn disjoint_unions_of_singletons() {
        let s = Space::new(["a", "b", "c"]).unwrap();
        let fam = ConditioningFamily::singletons(&s).with_disjoint_unions(3);
        assert_eq!(fam.len(), 7);
        assert!(ConditioningFamily::empty(&s).with_disjoint_unions(3).is_empty());
        let overlapping = ConditioningFamily::new(
            &s,
            [Event::from_labels(&s, ["a", "b"]).unwrap(), Event::from_labels(&s, ["b", "c"]).unwrap()],
        )
        .unwrap();
        assert_eq!(overlapping.with_disjoint_unions(3).len(), 2);
    }
}
