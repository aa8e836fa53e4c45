//! Coherence by direct evaluation of the structure-free condition: for every
//! choice of assessments `S`, an optional distinguished one `j`, and weights
//! `λ ≥ 0`,
//!
//! `max_{x ∈ B_S} ( Σ_{i∈S} λ_i I_{B_i}(x)[f_i(x) - P_i] - λ_0 I_{B_j}(x)[f_j(x) - P_j] ) ≥ 0`,
//!
//! where `B_S` is the union of the conditioning events in `S`. Each `(S, j)`
//! is one small program; a negative optimum is a violation.

use num_traits::{One, Signed, Zero};

use super::{CoherenceReport, Verdict};
use crate::assessment::AssessmentSet;
use crate::error::ModelError;
use crate::lp::{LinearProgram, LpOutcome, Relation, Sense};
use crate::rational::Rational;

pub const DEFAULT_MAX_ASSESSMENTS: usize = 10;

enum Probe {
    Fine,
    Violated { lambda: Vec<Rational>, optimum: Option<Rational> },
}

/// `min z` s.t. `z ≥ Σ_{i∈S} λ_i g_i(x) - [j] g_j(x)` on `B_S`.
fn probe(gambles: &[Vec<Rational>], events: &[Vec<bool>], subset: &[usize], distinguished: Option<usize>) -> Probe {
    let dim = events[0].len();
    let k = subset.len();
    let mut lp = LinearProgram::new(k + 1, Sense::Minimize);
    lp.set_free(k).set_objective_coeff(k, Rational::one());
    for x in 0..dim {
        if !subset.iter().any(|&i| events[i][x]) {
            continue;
        }
        // z - Σ λ_i g_i(x) ≥ -g_j(x)
        let mut row: Vec<Rational> = subset.iter().map(|&i| -&gambles[i][x]).collect();
        row.push(Rational::one());
        let rhs = distinguished.map_or_else(Rational::zero, |j| -&gambles[j][x]);
        lp.add_constraint(row, Relation::Ge, rhs);
    }
    if distinguished.is_none() {
        let mut sum = vec![Rational::one(); k];
        sum.push(Rational::zero());
        lp.add_constraint(sum, Relation::Eq, Rational::one());
    }
    match lp.solve() {
        LpOutcome::Optimal { value, mut witness } if value.is_negative() => {
            witness.pop();
            Probe::Violated { lambda: witness, optimum: Some(value) }
        }
        LpOutcome::Optimal { .. } => Probe::Fine,
        LpOutcome::Unbounded => Probe::Violated { lambda: vec![Rational::zero(); k], optimum: None },
        LpOutcome::Infeasible => unreachable!("z is free"),
    }
}

/// Enumerates every subset of assessments (so the cost is exponential in
/// their number, capped by `max_assessments`). Partial-loss violations are
/// looked for first, over all subsets, then dominance violations.
pub fn check_coherence_direct(set: &AssessmentSet, max_assessments: usize) -> Result<CoherenceReport, ModelError> {
    let n = set.len();
    if n > max_assessments {
        return Err(ModelError::SizeCap { found: n, cap: max_assessments });
    }
    let details = set
        .assessments()
        .iter()
        .enumerate()
        .map(|(index, a)| super::AssessmentDetail {
            index,
            lower_bound: a.lower_bound().clone(),
            natural_extension: None,
        })
        .collect();
    let gambles: Vec<Vec<Rational>> = set.assessments().iter().map(|a| a.marginal_gamble().into_values()).collect();
    let events: Vec<Vec<bool>> = set.assessments().iter().map(|a| a.event().mask().to_vec()).collect();
    let subsets = || (1u32..(1u32 << n)).map(|bits| (0..n).filter(|i| bits & (1 << i) != 0).collect::<Vec<_>>());

    for subset in subsets() {
        if let Probe::Violated { lambda, optimum } = probe(&gambles, &events, &subset, None) {
            let mut weights = vec![Rational::zero(); n];
            for (w, &i) in lambda.iter().zip(&subset) {
                weights[i] = w.clone();
            }
            let margin = optimum.map_or_else(Rational::one, |z| -z);
            return Ok(CoherenceReport { verdict: Verdict::IncursPartialLoss { weights, margin }, details });
        }
    }
    for subset in subsets() {
        for &j in &subset {
            if let Probe::Violated { optimum, .. } = probe(&gambles, &events, &subset, Some(j)) {
                // The violating combination shows E(f_j|B_j) ≥ P_j - z > P_j.
                let bound = set.assessments()[j].lower_bound();
                let value = match optimum {
                    Some(z) => bound - z,
                    None => bound + Rational::one(),
                };
                return Ok(CoherenceReport { verdict: Verdict::DominatedAssessment { index: j, value }, details });
            }
        }
    }
    Ok(CoherenceReport { verdict: Verdict::Coherent, details })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lowprev::{check_coherence, VerdictKind};
    use crate::rational::q;
    use crate::space::{Event, Space};

    fn lower_probs(s: &Space, bounds: &[(&str, Rational)]) -> AssessmentSet {
        let mut set = AssessmentSet::vacuous(s);
        for (label, b) in bounds {
            let ind = Event::from_labels(s, [*label]).unwrap().indicator();
            set = set.with(ind, s.full_event(), b.clone()).unwrap();
        }
        set
    }

    #[test]
    fn examples_agree_with_cone_route() {
        let s = Space::new(["a", "b"]).unwrap();
        let cases = [
            AssessmentSet::vacuous(&s),
            lower_probs(&s, &[("a", q(4, 5)), ("b", q(1, 2))]),
            lower_probs(&s, &[("a", q(3, 10)), ("b", q(3, 5))]),
        ];
        let expected = [VerdictKind::Coherent, VerdictKind::IncursPartialLoss, VerdictKind::Coherent];
        for (set, kind) in cases.iter().zip(expected) {
            let direct = check_coherence_direct(set, DEFAULT_MAX_ASSESSMENTS).unwrap();
            assert_eq!(direct.verdict.kind(), kind);
            assert_eq!(check_coherence(set).verdict.kind(), kind);
        }
    }

    #[test]
    fn size_cap_is_enforced() {
        let s = Space::new(["a", "b", "c"]).unwrap();
        let set = lower_probs(&s, &[("a", q(1, 10)), ("b", q(1, 10)), ("c", q(1, 10))]);
        assert_eq!(check_coherence_direct(&set, 2), Err(ModelError::SizeCap { found: 3, cap: 2 }));
    }

    #[test]
    fn direct_margin_is_a_valid_certificate() {
        let s = Space::new(["a", "b"]).unwrap();
        let set = lower_probs(&s, &[("a", q(4, 5)), ("b", q(1, 2))]);
        let report = check_coherence_direct(&set, 10).unwrap();
        let Verdict::IncursPartialLoss { weights, margin } = report.verdict else { panic!() };
        for x in 0..2 {
            let total: Rational = set
                .assessments()
                .iter()
                .zip(&weights)
                .map(|(a, w)| {
                    let shifted = a.gamble().value(x) - a.lower_bound() + &margin;
                    if a.event().contains(x) { w * shifted } else { Rational::zero() }
                })
                .sum();
            assert!(!total.is_positive());
        }
    }
}
