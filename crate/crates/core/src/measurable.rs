//! Measurability of non-negative gambles with respect to a conditioning
//! family, specialised to finite spaces.
//!
//! On a finite space the non-negative simple measurable gambles form a
//! finitely generated cone shifted by constants, which is closed, so uniform
//! limits add nothing: [`is_measurable`] and [`is_simple_measurable`] agree.

use num_traits::{One, Signed, Zero};

use crate::assessment::ConditioningFamily;
use crate::error::{InstanceError, ModelError};
use crate::lp::{Feasibility, LinearProgram, Relation, Sense};
use crate::rational::Rational;
use crate::space::{Event, Gamble};

pub const DEFAULT_FAMILY_CAP: usize = 16;

/// `g = c0 + Σ c_i I_{B_i}` with non-negative coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleDecomposition {
    pub c0: Rational,
    pub terms: Vec<(Rational, Event)>,
}

impl SimpleDecomposition {
    pub fn reconstruct(&self, like: &Gamble) -> Gamble {
        let mut g = like.space().constant(self.c0.clone());
        for (c, e) in &self.terms {
            g = &g + &e.indicator().scale(c);
        }
        g
    }

    pub fn scale(&self, factor: &Rational) -> SimpleDecomposition {
        SimpleDecomposition {
            c0: &self.c0 * factor,
            terms: self.terms.iter().map(|(c, e)| (c * factor, e.clone())).collect(),
        }
    }

    pub fn combine(&self, other: &SimpleDecomposition) -> SimpleDecomposition {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        SimpleDecomposition { c0: &self.c0 + &other.c0, terms }
    }

    pub fn uses_only(&self, family: &ConditioningFamily) -> bool {
        self.terms.iter().all(|(c, e)| !c.is_negative() && family.contains(e)) && !self.c0.is_negative()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Measurability {
    Simple(SimpleDecomposition),
    NotMeasurable,
}

impl Measurability {
    pub fn is_measurable(&self) -> bool {
        matches!(self, Measurability::Simple(_))
    }
}

fn check(g: &Gamble, family: &ConditioningFamily) -> Result<(), InstanceError> {
    if !g.space().same_as(family.space()) {
        return Err(InstanceError::SpaceMismatch);
    }
    if !g.is_nonnegative() {
        return Err(InstanceError::NegativeGamble);
    }
    Ok(())
}

fn distinct_values(g: &Gamble) -> Vec<Rational> {
    let mut values = g.values().to_vec();
    values.sort();
    values.dedup();
    values
}

/// Tries the layered decomposition `min g + Σ_k (v_k - v_{k-1}) I_{g ≥ v_k}`
/// first, then falls back to a feasibility program over all family events.
pub fn is_simple_measurable(g: &Gamble, family: &ConditioningFamily) -> Result<Measurability, InstanceError> {
    check(g, family)?;
    let values = distinct_values(g);
    let mut layered = SimpleDecomposition { c0: values[0].clone(), terms: Vec::new() };
    let mut ok = true;
    for w in values.windows(2) {
        let level = g.superlevel(&w[1]).expect("attained value");
        if !family.contains(&level) {
            ok = false;
            break;
        }
        layered.terms.push((&w[1] - &w[0], level));
    }
    if ok {
        return Ok(Measurability::Simple(layered));
    }

    let events = family.events();
    let mut lp = LinearProgram::new(events.len() + 1, Sense::Minimize);
    for x in 0..g.space().len() {
        let mut row = vec![Rational::one()];
        row.extend(events.iter().map(|e| if e.contains(x) { Rational::one() } else { Rational::zero() }));
        lp.add_constraint(row, Relation::Eq, g.value(x).clone());
    }
    Ok(match lp.feasible() {
        Feasibility::Feasible(c) => Measurability::Simple(SimpleDecomposition {
            c0: c[0].clone(),
            terms: events
                .iter()
                .zip(&c[1..])
                .filter(|(_, v)| !v.is_zero())
                .map(|(e, v)| (v.clone(), e.clone()))
                .collect(),
        }),
        Feasibility::Infeasible => Measurability::NotMeasurable,
    })
}

/// Uniform-limit measurability; equal to simple measurability on finite spaces.
pub fn is_measurable(g: &Gamble, family: &ConditioningFamily) -> Result<bool, InstanceError> {
    Ok(is_simple_measurable(g, family)?.is_measurable())
}

/// Sufficient condition: every superlevel set `{g ≥ r}`, `r ≥ 0`, is a finite
/// disjoint union of events from the family, the whole space, or empty.
/// The superlevel map is a step function, so distinct values, midpoints
/// between them and zero are an exhaustive set of thresholds.
pub fn threshold_condition(g: &Gamble, family: &ConditioningFamily) -> Result<bool, ModelError> {
    threshold_condition_capped(g, family, DEFAULT_FAMILY_CAP)
}

pub fn threshold_condition_capped(g: &Gamble, family: &ConditioningFamily, cap: usize) -> Result<bool, ModelError> {
    check(g, family)?;
    if family.len() > cap {
        return Err(ModelError::SizeCap { found: family.len(), cap });
    }
    let values = distinct_values(g);
    let mut thresholds = vec![Rational::zero()];
    thresholds.extend(values.iter().cloned());
    thresholds.extend(values.windows(2).map(|w| (&w[0] + &w[1]) / Rational::from_integer(2.into())));
    for r in &thresholds {
        let Some(level) = g.superlevel(r) else { continue };
        if level.is_full() {
            continue;
        }
        if !is_disjoint_union(&level, family.events()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Exact-cover search: can `target` be written as a disjoint union of `events`?
pub fn is_disjoint_union(target: &Event, events: &[Event]) -> bool {
    let parts: Vec<&Event> = events.iter().filter(|e| e.is_subset_of(target)).collect();
    let members: Vec<usize> = target.members().collect();
    let mut covered = vec![false; target.space().len()];
    cover(&members, &parts, &mut covered)
}

fn cover(members: &[usize], parts: &[&Event], covered: &mut [bool]) -> bool {
    let Some(&next) = members.iter().find(|&&x| !covered[x]) else {
        return true;
    };
    for part in parts.iter().filter(|p| p.contains(next)) {
        if part.members().any(|x| covered[x]) {
            continue;
        }
        for x in part.members() {
            covered[x] = true;
        }
        if cover(members, parts, covered) {
            return true;
        }
        for x in part.members() {
            covered[x] = false;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use crate::space::Space;

    fn setup() -> (Space, ConditioningFamily) {
        let s = Space::new(["a", "b", "c"]).unwrap();
        let fam = ConditioningFamily::new(
            &s,
            [Event::from_labels(&s, ["a"]).unwrap(), Event::from_labels(&s, ["b", "c"]).unwrap()],
        )
        .unwrap();
        (s, fam)
    }

    #[test]
    fn decomposition_examples() {
        let (s, fam) = setup();
        let g = Gamble::from_ints(&s, &[2, 1, 1]).unwrap();
        assert_eq!(
            is_simple_measurable(&g, &fam).unwrap(),
            Measurability::Simple(SimpleDecomposition {
                c0: int(1),
                terms: vec![(int(1), Event::from_labels(&s, ["a"]).unwrap())]
            })
        );
        let h = Gamble::from_ints(&s, &[0, 1, 2]).unwrap();
        assert_eq!(is_simple_measurable(&h, &fam).unwrap(), Measurability::NotMeasurable);
        assert!(!is_measurable(&h, &fam).unwrap());

        let all = ConditioningFamily::all_subsets(&s).unwrap();
        assert_eq!(
            is_simple_measurable(&h, &all).unwrap(),
            Measurability::Simple(SimpleDecomposition {
                c0: int(0),
                terms: vec![
                    (int(1), Event::from_labels(&s, ["b", "c"]).unwrap()),
                    (int(1), Event::from_labels(&s, ["c"]).unwrap()),
                ]
            })
        );
    }

    #[test]
    fn negative_gambles_are_rejected() {
        let (s, fam) = setup();
        let g = Gamble::from_ints(&s, &[1, -1, 0]).unwrap();
        assert_eq!(is_simple_measurable(&g, &fam), Err(InstanceError::NegativeGamble));
        assert!(matches!(threshold_condition(&g, &fam), Err(ModelError::Instance(InstanceError::NegativeGamble))));
    }

    #[test]
    fn lp_fallback_finds_non_layered_decompositions() {
        let (s, _) = setup();
        // [1,2,1] = I_{a,b} + I_{b,c}; its top level {b} is not in the family.
        let fam = ConditioningFamily::new(
            &s,
            [Event::from_labels(&s, ["a", "b"]).unwrap(), Event::from_labels(&s, ["b", "c"]).unwrap()],
        )
        .unwrap();
        let g = Gamble::from_ints(&s, &[1, 2, 1]).unwrap();
        let Measurability::Simple(d) = is_simple_measurable(&g, &fam).unwrap() else { panic!() };
        assert_eq!(d.reconstruct(&g), g);
        assert!(d.uses_only(&fam));
    }

    #[test]
    fn threshold_examples() {
        let s = Space::new(["a", "b", "c"]).unwrap();
        let only_a = ConditioningFamily::new(&s, [Event::from_labels(&s, ["a"]).unwrap()]).unwrap();
        assert!(threshold_condition(&Gamble::from_ints(&s, &[2, 1, 1]).unwrap(), &only_a).unwrap());
        assert!(!threshold_condition(&Gamble::from_ints(&s, &[0, 1, 2]).unwrap(), &only_a).unwrap());
        let ab = Space::new(["a", "b"]).unwrap();
        assert!(threshold_condition(&Gamble::from_ints(&ab, &[3, 3]).unwrap(), &ConditioningFamily::empty(&ab)).unwrap());
    }

    #[test]
    fn threshold_uses_disjoint_unions() {
        let s = Space::new(["a", "b", "c"]).unwrap();
        let fam = ConditioningFamily::singletons(&s);
        // {g ≥ 1} = {b, c} = {b} ∪ {c}.
        assert!(threshold_condition(&Gamble::from_ints(&s, &[0, 1, 2]).unwrap(), &fam).unwrap());
        let big = ConditioningFamily::all_subsets(&sample_space(5)).unwrap();
        assert!(matches!(
            threshold_condition(&sample_space(5).zero_gamble(), &big),
            Err(ModelError::SizeCap { found: 31, cap: 16 })
        ));
    }

    fn sample_space(n: usize) -> Space {
        crate::sample::space("x", n)
    }
}
