//! Exact checks of the identities satisfied by the independent natural
//! extension, and a seeded randomized property suite over every module.

mod suite;

pub use suite::{
    check_subjects, properties, run_property_suite, FamilyMode, Property, PropertyOutcome, SuiteConfig,
    SuiteReport, GROUPS,
};

use num_traits::Signed;
use serde::Serialize;

use crate::error::{InstanceError, ModelError};
use crate::measurable::is_measurable;
use crate::product::{joint_value, JointModel, QueryCheck};
use crate::space::Gamble;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckStatus {
    Holds,
    Violated,
    /// The hypotheses fail; the values are reported but nothing is asserted.
    HypothesisNotMet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremReport {
    pub status: CheckStatus,
    pub check: QueryCheck,
}

impl TheoremReport {
    fn asserted(check: QueryCheck) -> Self {
        let status = if check.holds { CheckStatus::Holds } else { CheckStatus::Violated };
        TheoremReport { status, check }
    }

    fn unasserted(check: QueryCheck) -> Self {
        TheoremReport { status: CheckStatus::HypothesisNotMet, check }
    }
}

fn other(factor: usize) -> Result<usize, ModelError> {
    match factor {
        1 => Ok(2),
        2 => Ok(1),
        _ => Err(InstanceError::FactorMismatch(factor).into()),
    }
}

fn on_factor(jm: &JointModel, g: &Gamble, factor: usize) -> Result<(), ModelError> {
    if g.space().same_as(jm.product().factor(factor)) {
        Ok(())
    } else {
        Err(InstanceError::FactorMismatch(factor).into())
    }
}

/// The joint gamble `f(x_i) + g(x_i) h(x_j)`.
pub fn factorising_gamble(jm: &JointModel, i: usize, f: &Gamble, g: &Gamble, h: &Gamble) -> Result<Gamble, ModelError> {
    let j = other(i)?;
    let p = jm.product();
    let f = p.cylindrical_extension(f, i)?;
    let g = p.cylindrical_extension(g, i)?;
    let h = p.cylindrical_extension(h, j)?;
    Ok(&f + &g.times(&h))
}

fn hypotheses_met(jm: &JointModel, i: usize, g: &Gamble) -> Result<bool, ModelError> {
    Ok(g.is_nonnegative() && is_measurable(g, jm.family(i))?)
}

/// `(P1 ⊗ P2)(f + g h) = E_i(f + g E_j(h))` for non-negative `g` measurable
/// with respect to the family of factor `i`.
pub fn check_theorem_factadd(
    jm: &JointModel,
    i: usize,
    f: &Gamble,
    g: &Gamble,
    h: &Gamble,
) -> Result<TheoremReport, ModelError> {
    let j = other(i)?;
    on_factor(jm, f, i)?;
    on_factor(jm, g, i)?;
    on_factor(jm, h, j)?;
    let joint = factorising_gamble(jm, i, f, g, h)?;
    let lhs = joint_value(jm, &joint, &jm.product().joint().full_event())?;
    let xi = jm.product().factor(i).full_event();
    let eh = jm.local_value(j, h, &jm.product().factor(j).full_event())?;
    let rhs = jm.local_value(i, &(f + &g.scale(&eh)), &xi)?;
    let check = QueryCheck::equality(
        format!("factor {i} f={f} g={g} h={h}"),
        vec![("joint(f+gh)".into(), lhs), ("E_i(f+g·E_j(h))".into(), rhs)],
    );
    Ok(if hypotheses_met(jm, i, g)? { TheoremReport::asserted(check) } else { TheoremReport::unasserted(check) })
}

/// `(P1 ⊗ P2)(g h) = E_i(g E_j(h))`, which is `E_i(g) E_j(h)` when
/// `E_j(h) ≥ 0` and `U_i(g) E_j(h)` when `E_j(h) ≤ 0`.
pub fn check_factorisation(jm: &JointModel, i: usize, g: &Gamble, h: &Gamble) -> Result<TheoremReport, ModelError> {
    let j = other(i)?;
    on_factor(jm, g, i)?;
    on_factor(jm, h, j)?;
    let zero = jm.product().factor(i).zero_gamble();
    let joint = factorising_gamble(jm, i, &zero, g, h)?;
    let lhs = joint_value(jm, &joint, &jm.product().joint().full_event())?;
    let xi = jm.product().factor(i).full_event();
    let eh = jm.local_value(j, h, &jm.product().factor(j).full_event())?;
    let middle = jm.local_value(i, &g.scale(&eh), &xi)?;
    let mut values = vec![("joint(gh)".to_string(), lhs), ("E_i(g·E_j(h))".to_string(), middle)];
    if !eh.is_negative() {
        values.push(("E_i(g)·E_j(h)".into(), jm.local_value(i, g, &xi)? * &eh));
    }
    if !eh.is_positive() {
        values.push(("U_i(g)·E_j(h)".into(), jm.local_upper(i, g, &xi)? * &eh));
    }
    let check = QueryCheck::equality(format!("factor {i} g={g} h={h}"), values);
    Ok(if hypotheses_met(jm, i, g)? { TheoremReport::asserted(check) } else { TheoremReport::unasserted(check) })
}

/// `(P1 ⊗ P2)(f + h) = E_1(f) + E_2(h)` for any families.
pub fn check_external_additivity(jm: &JointModel, f: &Gamble, h: &Gamble) -> Result<TheoremReport, ModelError> {
    on_factor(jm, f, 1)?;
    on_factor(jm, h, 2)?;
    let p = jm.product();
    let joint = &p.cylindrical_extension(f, 1)? + &p.cylindrical_extension(h, 2)?;
    let lhs = joint_value(jm, &joint, &p.joint().full_event())?;
    let rhs = jm.local_value(1, f, &p.factor(1).full_event())? + jm.local_value(2, h, &p.factor(2).full_event())?;
    Ok(TheoremReport::asserted(QueryCheck::equality(
        format!("f={f} h={h}"),
        vec![("joint(f+h)".into(), lhs), ("E_1(f)+E_2(h)".into(), rhs)],
    )))
}

/// Shifts `h` so that its lower prevision under factor `j` is zero.
pub fn centred(jm: &JointModel, j: usize, h: &Gamble) -> Result<Gamble, ModelError> {
    let e = jm.local_value(j, h, &jm.product().factor(j).full_event())?;
    Ok(h.shift(&-e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assessment::{AssessmentSet, ConditioningFamily};
    use crate::rational::{int, q};
    use crate::space::{Event, Space};

    fn ab() -> Space {
        Space::new(["a", "b"]).unwrap()
    }

    fn cd() -> Space {
        Space::new(["c", "d"]).unwrap()
    }

    fn precise() -> JointModel {
        JointModel::new(
            &AssessmentSet::precise(&ab(), &[q(1, 2), q(1, 2)]).unwrap(),
            &AssessmentSet::precise(&cd(), &[q(1, 3), q(2, 3)]).unwrap(),
            &ConditioningFamily::singletons(&ab()),
            &ConditioningFamily::singletons(&cd()),
        )
        .unwrap()
    }

    fn interval_pair() -> JointModel {
        let s = ab();
        let local1 = AssessmentSet::vacuous(&s)
            .with(Event::from_labels(&s, ["a"]).unwrap().indicator(), s.full_event(), q(3, 10))
            .unwrap()
            .with(Event::from_labels(&s, ["b"]).unwrap().indicator(), s.full_event(), q(3, 5))
            .unwrap();
        JointModel::new(
            &local1,
            &AssessmentSet::vacuous(&cd()),
            &ConditioningFamily::singletons(&s),
            &ConditioningFamily::singletons(&cd()),
        )
        .unwrap()
    }

    fn ind(s: &Space, label: &str) -> Gamble {
        Event::from_labels(s, [label]).unwrap().indicator()
    }

    #[test]
    fn factadd_examples() {
        let vac = JointModel::new(
            &AssessmentSet::vacuous(&ab()),
            &AssessmentSet::vacuous(&cd()),
            &ConditioningFamily::empty(&ab()),
            &ConditioningFamily::empty(&cd()),
        )
        .unwrap();
        let f = Gamble::from_ints(&ab(), &[2, -1]).unwrap();
        let h = Gamble::from_ints(&cd(), &[3, 1]).unwrap();
        let one = ab().constant(int(1));
        let r = check_theorem_factadd(&vac, 1, &f, &one, &h).unwrap();
        assert_eq!(r.status, CheckStatus::Holds);
        assert_eq!(r.check.values[0].1, int(0));

        let h = Gamble::from_ints(&cd(), &[1, -1]).unwrap();
        let r = check_theorem_factadd(&precise(), 1, &ab().zero_gamble(), &ind(&ab(), "a"), &h).unwrap();
        assert_eq!(r.status, CheckStatus::Holds);
        assert_eq!(r.check.values[0].1, q(-1, 6));

        let r = check_theorem_factadd(&interval_pair(), 1, &ab().zero_gamble(), &ind(&ab(), "a"), &ind(&cd(), "c"))
            .unwrap();
        assert_eq!(r.status, CheckStatus::Holds);
        assert_eq!(r.check.values[0].1, int(0));
    }

    #[test]
    fn factorisation_examples() {
        let jm = precise();
        let h = Gamble::from_ints(&cd(), &[1, -1]).unwrap();
        let r = check_factorisation(&jm, 1, &ind(&ab(), "a"), &h).unwrap();
        assert_eq!(r.status, CheckStatus::Holds);
        assert!(r.check.values.iter().all(|(_, v)| v == &q(-1, 6)));

        let r = check_factorisation(&jm, 1, &ind(&ab(), "a"), &ind(&cd(), "d")).unwrap();
        assert_eq!(r.check.values[0].1, q(1, 3));
        assert_eq!(r.status, CheckStatus::Holds);

        let zeroed = centred(&jm, 2, &Gamble::from_ints(&cd(), &[4, 1]).unwrap()).unwrap();
        let r = check_factorisation(&jm, 1, &ind(&ab(), "a"), &zeroed).unwrap();
        assert_eq!(r.check.values.len(), 4);
        assert!(r.check.values.iter().all(|(_, v)| v == &int(0)));
    }

    #[test]
    fn additivity_examples() {
        let r = check_external_additivity(&precise(), &ind(&ab(), "a"), &ind(&cd(), "d")).unwrap();
        assert_eq!(r.status, CheckStatus::Holds);
        assert_eq!(r.check.values[0].1, q(7, 6));
        let r = check_external_additivity(&interval_pair(), &ind(&ab(), "a"), &cd().zero_gamble()).unwrap();
        assert_eq!(r.check.values[1].1, q(3, 10));
        assert_eq!(r.status, CheckStatus::Holds);
    }

    #[test]
    fn non_measurable_g_is_only_reported() {
        let s = Space::new(["a", "b", "c"]).unwrap();
        let jm = JointModel::new(
            &AssessmentSet::vacuous(&s),
            &AssessmentSet::vacuous(&cd()),
            &ConditioningFamily::new(&s, [Event::from_labels(&s, ["a"]).unwrap()]).unwrap(),
            &ConditioningFamily::empty(&cd()),
        )
        .unwrap();
        let g = Gamble::from_ints(&s, &[0, 1, 2]).unwrap();
        let h = Gamble::from_ints(&cd(), &[1, -1]).unwrap();
        let r = check_theorem_factadd(&jm, 1, &s.zero_gamble(), &g, &h).unwrap();
        assert_eq!(r.status, CheckStatus::HypothesisNotMet);
    }

    #[test]
    fn factor_mismatch_is_an_error() {
        let jm = precise();
        assert!(check_external_additivity(&jm, &ind(&cd(), "c"), &ind(&cd(), "d")).is_err());
        assert!(check_factorisation(&jm, 3, &ind(&ab(), "a"), &ind(&cd(), "d")).is_err());
    }
}
