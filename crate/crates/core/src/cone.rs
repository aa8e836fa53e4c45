//! Finitely generated sets of desirable gambles.
//!
//! A [`ConeSpec`] with generators `A` stands for `E(A) = posi(A ∪ G>0)`,
//! i.e. every `Σ λ_i a_i + h` with `λ ≥ 0`, `h ≥ 0` and `(λ, h) ≠ 0`.

use num_traits::{One, Signed, Zero};

use crate::error::InstanceError;
use crate::lp::{LinearProgram, LpOutcome, Relation, Sense};
use crate::rational::Rational;
use crate::space::{Event, Gamble, Space};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeSpec {
    space: Space,
    generators: Vec<Gamble>,
}

/// Witness that `f = Σ λ_i a_i + slack` with `slack ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub lambda: Vec<Rational>,
    pub slack: Gamble,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipReport {
    pub member: bool,
    pub certificate: Option<Certificate>,
    /// For non-members: a non-negative normalized weighting `p` with
    /// `p·a_i ≥ 0` for every generator and `p·f < 0` (or, for `f = 0`,
    /// `p·a_i > 0` for every generator).
    pub separator: Option<Vec<Rational>>,
    pub reason: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LossReport {
    pub avoids_partial_loss: bool,
    /// `λ ≥ 0`, `Σ λ = 1`, `Σ λ_i a_i ≤ 0` when partial loss is incurred.
    pub certificate: Option<Vec<Rational>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConeValue {
    Finite(Rational),
    /// The supremum is unbounded: the cone contains a non-positive gamble.
    PlusInfinity,
}

impl ConeValue {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            ConeValue::Finite(v) => Some(v),
            ConeValue::PlusInfinity => None,
        }
    }
}

/// Builds `E(A)`. Zero gambles are dropped and generators that are positive
/// multiples of an earlier one are merged.
pub fn natex_cone(generators: &[Gamble], space: &Space) -> Result<ConeSpec, InstanceError> {
    let mut kept: Vec<Gamble> = Vec::new();
    let mut canon: Vec<Vec<Rational>> = Vec::new();
    for g in generators {
        if !g.space().same_as(space) {
            return Err(InstanceError::SpaceMismatch);
        }
        if g.is_zero() {
            continue;
        }
        let c = canonical_direction(g.values());
        if !canon.contains(&c) {
            canon.push(c);
            kept.push(g.clone());
        }
    }
    Ok(ConeSpec { space: space.clone(), generators: kept })
}

/// Scales a non-zero vector so that its largest absolute entry is one.
pub(crate) fn canonical_direction(values: &[Rational]) -> Vec<Rational> {
    let scale = values.iter().map(|v| v.abs()).max().expect("non-empty");
    values.iter().map(|v| v / &scale).collect()
}

impl ConeSpec {
    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn generators(&self) -> &[Gamble] {
        &self.generators
    }

    /// Indices of generators that are not absorbed by the non-negative orthant.
    fn active(&self) -> Vec<usize> {
        (0..self.generators.len()).filter(|&k| !self.generators[k].is_nonnegative()).collect()
    }

    fn check(&self, g: &Gamble) -> Result<(), InstanceError> {
        if g.space().same_as(&self.space) {
            Ok(())
        } else {
            Err(InstanceError::SpaceMismatch)
        }
    }

    pub fn membership(&self, f: &Gamble) -> Result<MembershipReport, InstanceError> {
        self.check(f)?;
        let active = self.active();
        let n = self.space.len();
        let mut lp = LinearProgram::new(active.len(), Sense::Minimize);
        for x in 0..n {
            let row = active.iter().map(|&k| self.generators[k].value(x).clone()).collect();
            lp.add_constraint(row, Relation::Le, f.value(x).clone());
        }
        if f.is_zero() {
            lp.add_constraint(vec![Rational::one(); active.len()], Relation::Eq, Rational::one());
        }
        match lp.solve() {
            LpOutcome::Optimal { witness, .. } => {
                let mut lambda = vec![Rational::zero(); self.generators.len()];
                let mut combo = self.space.zero_gamble();
                for (w, &k) in witness.iter().zip(&active) {
                    lambda[k] = w.clone();
                    combo = &combo + &self.generators[k].scale(w);
                }
                let slack = f - &combo;
                debug_assert!(slack.is_nonnegative());
                Ok(MembershipReport {
                    member: true,
                    certificate: Some(Certificate { lambda, slack }),
                    separator: None,
                    reason: None,
                })
            }
            LpOutcome::Infeasible => Ok(MembershipReport {
                member: false,
                certificate: None,
                separator: self.separator(f, &active),
                reason: Some(if f.is_zero() {
                    "no normalized non-negative combination of generators is pointwise non-positive".into()
                } else {
                    "no non-negative combination of generators lies pointwise below the gamble".into()
                }),
            }),
            LpOutcome::Unbounded => unreachable!("feasibility program has zero objective"),
        }
    }

    fn separator(&self, f: &Gamble, active: &[usize]) -> Option<Vec<Rational>> {
        let n = self.space.len();
        // Variables p_0..p_{n-1}, plus t for the f = 0 case.
        let zero_case = f.is_zero();
        let vars = n + usize::from(zero_case);
        let mut lp = LinearProgram::new(vars, if zero_case { Sense::Maximize } else { Sense::Minimize });
        let mut sum = vec![Rational::one(); vars];
        if zero_case {
            sum[n] = Rational::zero();
            lp.set_free(n).set_objective_coeff(n, Rational::one());
        } else {
            lp.set_objective(f.values().to_vec());
        }
        lp.add_constraint(sum, Relation::Eq, Rational::one());
        for &k in active {
            let mut row = self.generators[k].values().to_vec();
            if zero_case {
                row.push(-Rational::one());
            }
            lp.add_constraint(row, Relation::Ge, Rational::zero());
        }
        if zero_case {
            lp.set_bounds(n, None, Some(Rational::one()));
        }
        let witness = lp.solve().witness()?.to_vec();
        let good = if zero_case { witness[n].is_positive() } else { lp.objective_at(&witness).is_negative() };
        good.then(|| witness[..n].to_vec())
    }

    /// D4 check: partial loss iff some normalized non-negative combination
    /// of generators is pointwise `≤ 0`.
    pub fn avoids_partial_loss(&self) -> LossReport {
        let active = self.active();
        let mut lp = LinearProgram::new(active.len(), Sense::Minimize);
        for x in 0..self.space.len() {
            let row = active.iter().map(|&k| self.generators[k].value(x).clone()).collect();
            lp.add_constraint(row, Relation::Le, Rational::zero());
        }
        lp.add_constraint(vec![Rational::one(); active.len()], Relation::Eq, Rational::one());
        match lp.solve() {
            LpOutcome::Optimal { witness, .. } => {
                let mut lambda = vec![Rational::zero(); self.generators.len()];
                for (w, &k) in witness.iter().zip(&active) {
                    lambda[k] = w.clone();
                }
                LossReport { avoids_partial_loss: false, certificate: Some(lambda) }
            }
            _ => LossReport { avoids_partial_loss: true, certificate: None },
        }
    }

    /// `sup { μ : [f - μ] I_B ∈ E(A) }`, attained by the closed program.
    pub fn lower_prevision(&self, f: &Gamble, event: &Event) -> Result<ConeValue, InstanceError> {
        self.check(f)?;
        if !event.space().same_as(&self.space) {
            return Err(InstanceError::SpaceMismatch);
        }
        let active = self.active();
        let payoffs: Vec<&[Rational]> = active.iter().map(|&k| self.generators[k].values()).collect();
        Ok(match closed_lower_value(&payoffs, f.values(), event.mask()) {
            Some((value, _)) => ConeValue::Finite(value),
            None => ConeValue::PlusInfinity,
        })
    }
}

/// `max μ` s.t. `[f - μ] I_B - Σ λ_k a_k ≥ 0`, `λ ≥ 0`. Returns the value and
/// `λ`, or `None` when unbounded.
pub(crate) fn closed_lower_value(
    payoffs: &[&[Rational]],
    f: &[Rational],
    event: &[bool],
) -> Option<(Rational, Vec<Rational>)> {
    let k = payoffs.len();
    let mut lp = LinearProgram::new(k + 1, Sense::Maximize);
    lp.set_free(k).set_objective_coeff(k, Rational::one());
    for (x, &in_event) in event.iter().enumerate() {
        let mut row: Vec<Rational> = payoffs.iter().map(|a| a[x].clone()).collect();
        if in_event {
            row.push(Rational::one());
            lp.add_constraint(row, Relation::Le, f[x].clone());
        } else {
            if row.iter().all(Zero::is_zero) {
                continue;
            }
            row.push(Rational::zero());
            lp.add_constraint(row, Relation::Le, Rational::zero());
        }
    }
    match lp.solve() {
        LpOutcome::Optimal { value, mut witness } => {
            witness.pop();
            Some((value, witness))
        }
        LpOutcome::Unbounded => None,
        LpOutcome::Infeasible => unreachable!("μ → -∞ with λ = 0 is always feasible"),
    }
}
