//! Credal sets: probability mass functions dominating an unconditional
//! assessment set, their vertices, and the lower envelope over them.
//!
//! This is an independent code path for the natural extension: no cone, only
//! exact vertex enumeration and expectation ratios.

use num_traits::{One, Signed, Zero};

use crate::assessment::AssessmentSet;
use crate::error::{InstanceError, ModelError};
use crate::lowprev::{AxiomCheck, AxiomReport};
use crate::rational::{format_rational, Rational};
use crate::sample::{self, SuiteRng};
use crate::space::{Event, Gamble, Space};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MassFunction {
    space: Space,
    probabilities: Vec<Rational>,
}

impl MassFunction {
    pub fn new(space: &Space, probabilities: Vec<Rational>) -> Result<Self, InstanceError> {
        if probabilities.len() != space.len() {
            return Err(InstanceError::ArityMismatch { expected: space.len(), found: probabilities.len() });
        }
        if let Some(p) = probabilities.iter().find(|p| p.is_negative()) {
            return Err(InstanceError::NotAMassFunction(format!("negative mass {}", format_rational(p))));
        }
        let total: Rational = probabilities.iter().sum();
        if !total.is_one() {
            return Err(InstanceError::NotAMassFunction(format!("masses sum to {}", format_rational(&total))));
        }
        Ok(MassFunction { space: space.clone(), probabilities })
    }

    pub fn uniform(space: &Space) -> Self {
        let p = Rational::new(1.into(), space.len().into());
        MassFunction { space: space.clone(), probabilities: vec![p; space.len()] }
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn probabilities(&self) -> &[Rational] {
        &self.probabilities
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.probabilities.len()).filter(|&x| self.probabilities[x].is_positive()).collect()
    }

    pub fn has_full_support(&self) -> bool {
        self.probabilities.iter().all(Signed::is_positive)
    }

    pub fn mass(&self, event: &Event) -> Rational {
        event.members().map(|x| &self.probabilities[x]).sum()
    }

    pub fn expectation(&self, f: &Gamble) -> Rational {
        self.probabilities.iter().zip(f.values()).map(|(p, v)| p * v).sum()
    }

    /// `Σ_{x∈B} p(x) f(x) / p(B)`, or `None` when `p(B) = 0`.
    pub fn conditional_expectation(&self, f: &Gamble, event: &Event) -> Option<Rational> {
        let mass = self.mass(event);
        if mass.is_zero() {
            return None;
        }
        let num: Rational = event.members().map(|x| &self.probabilities[x] * f.value(x)).sum();
        Some(num / mass)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CredalPolytope {
    source: AssessmentSet,
    vertices: Vec<MassFunction>,
}

impl CredalPolytope {
    pub fn source(&self) -> &AssessmentSet {
        &self.source
    }

    pub fn vertices(&self) -> &[MassFunction] {
        &self.vertices
    }

    /// Whether `p` satisfies every assessment.
    pub fn contains(&self, p: &MassFunction) -> bool {
        self.source.assessments().iter().all(|a| &p.expectation(a.gamble()) >= a.lower_bound())
    }

    pub fn min_vertex_mass(&self, event: &Event) -> Rational {
        self.vertices.iter().map(|v| v.mass(event)).min().expect("non-empty polytope")
    }
}

/// One row `coeffs · p ≥ rhs` of the polytope description.
struct Halfspace {
    coeffs: Vec<Rational>,
    rhs: Rational,
}

fn halfspaces(set: &AssessmentSet) -> Vec<Halfspace> {
    let n = set.space().len();
    let mut rows: Vec<Halfspace> = (0..n)
        .map(|x| {
            let mut coeffs = vec![Rational::zero(); n];
            coeffs[x] = Rational::one();
            Halfspace { coeffs, rhs: Rational::zero() }
        })
        .collect();
    rows.extend(
        set.assessments()
            .iter()
            .map(|a| Halfspace { coeffs: a.gamble().values().to_vec(), rhs: a.lower_bound().clone() }),
    );
    rows
}

/// Exact Gaussian elimination; `None` for singular systems.
fn solve_square(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = a[col][col].recip();
        for k in col..n {
            a[col][k] = &a[col][k] * &inv;
        }
        b[col] = &b[col] * &inv;
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for k in col..n {
                    let delta = &factor * &a[col][k];
                    a[r][k] -= delta;
                }
                let delta = &factor * &b[col];
                b[r] -= delta;
            }
        }
    }
    Some(b)
}

fn combinations(n: usize, k: usize, mut visit: impl FnMut(&[usize])) {
    let mut idx: Vec<usize> = (0..k).collect();
    if k > n {
        return;
    }
    loop {
        visit(&idx);
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else { return };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Vertices of `{p ≥ 0, Σ p = 1, E_p(f_i) ≥ P_i}` by exhaustive basis
/// enumeration. Only unconditional assessments are in scope.
pub fn credal_vertices(set: &AssessmentSet) -> Result<CredalPolytope, ModelError> {
    if !set.is_unconditional() {
        return Err(ModelError::Scope("credal vertices need unconditional assessments".into()));
    }
    let space = set.space();
    let n = space.len();
    let rows = halfspaces(set);
    let mut found: Vec<Vec<Rational>> = Vec::new();
    combinations(rows.len(), n - 1, |basis| {
        let mut a = vec![vec![Rational::one(); n]];
        let mut b = vec![Rational::one()];
        for &r in basis {
            a.push(rows[r].coeffs.clone());
            b.push(rows[r].rhs.clone());
        }
        let Some(p) = solve_square(a, b) else { return };
        let feasible = rows.iter().all(|h| {
            let lhs: Rational = h.coeffs.iter().zip(&p).map(|(c, v)| c * v).sum();
            lhs >= h.rhs
        });
        if feasible && !found.contains(&p) {
            found.push(p);
        }
    });
    if found.is_empty() {
        return Err(ModelError::Incoherent("no mass function dominates the assessments".into()));
    }
    found.sort();
    let vertices = found.into_iter().map(|p| MassFunction { space: space.clone(), probabilities: p }).collect();
    Ok(CredalPolytope { source: set.clone(), vertices })
}

/// `min` over vertices of `E_p(f | B)`; every vertex must give `B` positive mass.
pub fn lower_envelope_value(cp: &CredalPolytope, f: &Gamble, event: &Event) -> Result<Rational, ModelError> {
    let space = cp.source.space();
    if !f.space().same_as(space) || !event.space().same_as(space) {
        return Err(InstanceError::SpaceMismatch.into());
    }
    let mut best: Option<Rational> = None;
    for v in &cp.vertices {
        let value = v.conditional_expectation(f, event).ok_or_else(|| {
            ModelError::Scope(format!("conditioning event {event} has zero mass at a vertex of the credal set"))
        })?;
        if best.as_ref().is_none_or(|b| &value < b) {
            best = Some(value);
        }
    }
    Ok(best.expect("non-empty polytope"))
}

/// The conditional linear prevision induced by a full-support mass function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearPrevision {
    mass: MassFunction,
}

pub fn linear_prevision_from_mass(p: &MassFunction) -> Result<LinearPrevision, ModelError> {
    if !p.has_full_support() {
        return Err(ModelError::Scope("linear prevision needs a full-support mass function".into()));
    }
    Ok(LinearPrevision { mass: p.clone() })
}

impl LinearPrevision {
    pub fn mass(&self) -> &MassFunction {
        &self.mass
    }

    /// `P(f | B)`.
    pub fn value(&self, f: &Gamble, event: &Event) -> Rational {
        self.mass.conditional_expectation(f, event).expect("full support")
    }

    pub fn probability(&self, event: &Event, given: &Event) -> Rational {
        self.value(&event.indicator(), given)
    }
}

pub const P_AXIOMS: [&str; 5] =
    ["P1 bounds", "P2 homogeneity", "P3 additivity", "P4 Bayes rule", "P5 perturbation bound"];

/// Checks the linear-prevision axioms on `samples` random draws.
pub fn p_axiom_suite(prev: &LinearPrevision, samples: usize, rng: &mut SuiteRng) -> AxiomReport {
    use rand::Rng;
    let space = prev.mass.space().clone();
    let mut checks: Vec<AxiomCheck> =
        P_AXIOMS.iter().map(|&name| AxiomCheck { name, checked: 0, violations: Vec::new() }).collect();
    let mut record = |idx: usize, ok: bool, detail: &dyn Fn() -> String| {
        checks[idx].checked += 1;
        if !ok {
            checks[idx].violations.push(detail());
        }
    };
    let fmt = format_rational;
    for _ in 0..samples {
        let f = sample::gamble(rng, &space, 4);
        let g = sample::gamble(rng, &space, 4);
        let a = sample::event(rng, &space);
        let b = sample::event(rng, &space);
        let pf = prev.value(&f, &b);

        record(0, f.min_on(&b) <= pf && pf <= f.max_on(&b), &|| format!("P({f:?}|{b}) = {}", fmt(&pf)));

        let lambda = Rational::new(rng.gen_range(-6i64..=6).into(), rng.gen_range(1i64..=4).into());
        let scaled = prev.value(&f.scale(&lambda), &b);
        record(1, scaled == &lambda * &pf, &|| format!("P({}·{f:?}|{b}) = {}", fmt(&lambda), fmt(&scaled)));

        let sum = prev.value(&(&f + &g), &b);
        let pg = prev.value(&g, &b);
        record(2, sum == &pf + &pg, &|| format!("P({f:?}+{g:?}|{b}) = {}", fmt(&sum)));

        let lhs = prev.value(&b.indicator().times(&f), &a);
        let rhs = match a.intersect(&b) {
            Some(ab) => prev.value(&f, &ab) * prev.probability(&b, &a),
            None => Rational::zero(),
        };
        record(3, lhs == rhs, &|| format!("P(I_{b}·{f:?}|{a}) = {} vs {}", fmt(&lhs), fmt(&rhs)));

        let diff = &pf - &pg;
        let bound = (&f - &g).max_on(&b);
        record(4, diff <= bound, &|| format!("P(f|{b}) - P(g|{b}) = {} above {}", fmt(&diff), fmt(&bound)));
    }
    AxiomReport { checks }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lowprev::natural_extension_value;
    use crate::rational::{int, q};

    fn lower_prob(s: &Space, label: &str, p: Rational) -> AssessmentSet {
        let ind = Event::from_labels(s, [label]).unwrap().indicator();
        AssessmentSet::vacuous(s).with(ind, s.full_event(), p).unwrap()
    }

    fn vertex_values(cp: &CredalPolytope) -> Vec<Vec<Rational>> {
        cp.vertices().iter().map(|v| v.probabilities().to_vec()).collect()
    }

    #[test]
    fn vertex_examples() {
        let ab = Space::new(["a", "b"]).unwrap();
        let full = credal_vertices(&AssessmentSet::vacuous(&ab)).unwrap();
        assert_eq!(vertex_values(&full), vec![vec![int(0), int(1)], vec![int(1), int(0)]]);

        let interval = credal_vertices(&lower_prob(&ab, "a", q(3, 10))).unwrap();
        assert_eq!(vertex_values(&interval), vec![vec![q(3, 10), q(7, 10)], vec![int(1), int(0)]]);

        let abc = Space::new(["a", "b", "c"]).unwrap();
        let half = credal_vertices(&lower_prob(&abc, "a", q(1, 2))).unwrap();
        assert_eq!(
            vertex_values(&half),
            vec![
                vec![q(1, 2), int(0), q(1, 2)],
                vec![q(1, 2), q(1, 2), int(0)],
                vec![int(1), int(0), int(0)]
            ]
        );
    }

    #[test]
    fn envelope_examples() {
        let ab = Space::new(["a", "b"]).unwrap();
        let full = credal_vertices(&AssessmentSet::vacuous(&ab)).unwrap();
        let fa = Gamble::from_ints(&ab, &[1, 0]).unwrap();
        assert_eq!(lower_envelope_value(&full, &fa, &ab.full_event()).unwrap(), int(0));

        let interval = credal_vertices(&lower_prob(&ab, "a", q(3, 10))).unwrap();
        let fb = Gamble::from_ints(&ab, &[0, 1]).unwrap();
        assert_eq!(lower_envelope_value(&interval, &fb, &ab.full_event()).unwrap(), int(0));

        let abc = Space::new(["a", "b", "c"]).unwrap();
        let half = credal_vertices(&lower_prob(&abc, "a", q(1, 2))).unwrap();
        let ia = Event::from_labels(&abc, ["a"]).unwrap().indicator();
        let b = Event::from_labels(&abc, ["a", "b"]).unwrap();
        assert_eq!(lower_envelope_value(&half, &ia, &b).unwrap(), q(1, 2));
        let c = Event::from_labels(&abc, ["c"]).unwrap();
        assert!(matches!(lower_envelope_value(&half, &ia, &c), Err(ModelError::Scope(_))));
    }

    #[test]
    fn conditional_assessments_are_out_of_scope() {
        let abc = Space::new(["a", "b", "c"]).unwrap();
        let ia = Event::from_labels(&abc, ["a"]).unwrap().indicator();
        let b = Event::from_labels(&abc, ["a", "b"]).unwrap();
        let set = AssessmentSet::vacuous(&abc).with(ia, b, q(1, 2)).unwrap();
        assert!(matches!(credal_vertices(&set), Err(ModelError::Scope(_))));
    }

    #[test]
    fn prevision_examples() {
        let ab = Space::new(["a", "b"]).unwrap();
        let uniform = linear_prevision_from_mass(&MassFunction::uniform(&ab)).unwrap();
        assert_eq!(uniform.value(&Gamble::from_ints(&ab, &[1, 0]).unwrap(), &ab.full_event()), q(1, 2));
        let p = linear_prevision_from_mass(&MassFunction::new(&ab, vec![q(1, 3), q(2, 3)]).unwrap()).unwrap();
        assert_eq!(p.value(&Gamble::from_ints(&ab, &[1, -1]).unwrap(), &ab.full_event()), q(-1, 3));

        let abc = Space::new(["a", "b", "c"]).unwrap();
        let m = MassFunction::new(&abc, vec![q(1, 4), q(1, 4), q(1, 2)]).unwrap();
        let p = linear_prevision_from_mass(&m).unwrap();
        let ia = Event::from_labels(&abc, ["a"]).unwrap().indicator();
        assert_eq!(p.value(&ia, &Event::from_labels(&abc, ["a", "b"]).unwrap()), q(1, 2));

        let partial = MassFunction::new(&ab, vec![int(1), int(0)]).unwrap();
        assert!(matches!(linear_prevision_from_mass(&partial), Err(ModelError::Scope(_))));
        assert!(MassFunction::new(&ab, vec![q(1, 2), q(1, 3)]).is_err());
        assert!(MassFunction::new(&ab, vec![int(2), int(-1)]).is_err());
    }

    #[test]
    fn p_axioms_hold() {
        let abc = Space::new(["a", "b", "c"]).unwrap();
        let m = MassFunction::new(&abc, vec![q(1, 6), q(1, 3), q(1, 2)]).unwrap();
        let p = linear_prevision_from_mass(&m).unwrap();
        let report = p_axiom_suite(&p, 200, &mut sample::rng(3));
        assert!(report.passed(), "{:?}", report.violations().collect::<Vec<_>>());
        assert_eq!(report.total_checked(), 1000);
        let f = Gamble::from_ints(&abc, &[1, 0, 0]).unwrap();
        let g = Gamble::from_ints(&abc, &[0, 1, 1]).unwrap();
        assert_eq!(p.value(&(&f + &g), &abc.full_event()), int(1));
    }

    #[test]
    fn envelope_matches_natural_extension_on_examples() {
        let abc = Space::new(["a", "b", "c"]).unwrap();
        let set = lower_prob(&abc, "a", q(1, 2))
            .with(Event::from_labels(&abc, ["b"]).unwrap().indicator(), abc.full_event(), q(1, 5))
            .unwrap();
        let cp = credal_vertices(&set).unwrap();
        for values in [[1, 0, 0], [0, 1, -1], [2, -3, 1]] {
            let f = Gamble::from_ints(&abc, &values).unwrap();
            assert_eq!(
                lower_envelope_value(&cp, &f, &abc.full_event()).unwrap(),
                natural_extension_value(&set, &f, &abc.full_event()).unwrap()
            );
        }
    }
}
